//! `Zie` in right-comb coordinates: reduction, bracket and the embedding into
//! `Σ`.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::composition::{factorial, SetComposition, SetPartition};
use crate::error::{Error, Result};
use crate::labels::{LabelSet, Relabel, Relabeling};
use crate::rational::Rational;
use crate::sigma::{Basis, Element};

use super::tree::Tree;

/// A combination `Σ a_F [F]` of standard right combs, `F ∈ Σ_{i0}` with `i0`
/// the lowest label of the ground.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZieElement {
    ground: LabelSet,
    terms: BTreeMap<SetComposition, Rational>,
}

/// Whether `f` has the lowest label of its ground in its first lump.
pub fn is_based(f: &SetComposition) -> bool {
    match (f.lumps().first(), f.ground().lowest()) {
        (Some(first), Some(i0)) => first.contains(i0),
        _ => false,
    }
}

/// `Σ_{i0}` over `ground`.
pub fn based_compositions(ground: LabelSet) -> Vec<SetComposition> {
    SetComposition::enumerate(ground).into_iter().filter(is_based).collect()
}

/// `dim Zie[I] = Σ_P (l(P) - 1)!` over set partitions; 0 for the empty set.
pub fn dimension(ground: LabelSet) -> u128 {
    if ground.is_empty() {
        return 0;
    }
    SetPartition::enumerate(ground).iter().map(|p| factorial(p.len() - 1)).sum()
}

impl ZieElement {
    pub fn zero(ground: LabelSet) -> Self {
        ZieElement { ground, terms: BTreeMap::new() }
    }

    /// The standard comb `[F]`; `F` must have `i0` in its first lump.
    pub fn comb(f: SetComposition) -> Result<Self> {
        if !is_based(&f) {
            return Err(Error::InvalidComposition(format!("{f:?} does not start with the lowest label")));
        }
        let mut z = ZieElement::zero(f.ground());
        z.terms.insert(f, Rational::one());
        Ok(z)
    }

    pub fn from_terms<I: IntoIterator<Item = (SetComposition, Rational)>>(ground: LabelSet, it: I) -> Result<Self> {
        let mut z = ZieElement::zero(ground);
        for (f, c) in it {
            if f.ground() != ground {
                return Err(Error::GroundMismatch(f.ground(), ground));
            }
            if !is_based(&f) {
                return Err(Error::InvalidComposition(format!("{f:?} does not start with the lowest label")));
            }
            z.add_term(f, c);
        }
        Ok(z)
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn terms(&self) -> &BTreeMap<SetComposition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, f: &SetComposition) -> Rational {
        self.terms.get(f).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, f: SetComposition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(f.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn add(&self, other: &ZieElement) -> Result<ZieElement> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        let mut z = self.clone();
        for (f, c) in &other.terms {
            z.add_term(f.clone(), c.clone());
        }
        Ok(z)
    }

    pub fn scale(&self, k: &Rational) -> ZieElement {
        let mut z = ZieElement::zero(self.ground);
        for (f, c) in &self.terms {
            z.add_term(f.clone(), c * k);
        }
        z
    }
}

/// `[[F], [G]]` in comb coordinates, for combs over disjoint grounds, keeping
/// the first lump of `F` first. Uses `[S,[T,U]] = [[S,T],U] - [[S,U],T]`.
fn comb_bracket(f: &[LabelSet], g: &[LabelSet], sign: &Rational, out: &mut BTreeMap<Vec<LabelSet>, Rational>) {
    match g.split_last() {
        None => unreachable!("combs have at least one lump"),
        Some((&u, [])) => {
            let mut key = f.to_vec();
            key.push(u);
            *out.entry(key).or_insert_with(Rational::zero) += sign;
        }
        Some((&u, rest)) => {
            // [[C, G'], U]: bracket then append U to every resulting comb.
            let mut inner = BTreeMap::new();
            comb_bracket(f, rest, sign, &mut inner);
            for (mut key, c) in inner {
                key.push(u);
                *out.entry(key).or_insert_with(Rational::zero) += c;
            }
            // -[[C, U], G'].
            let mut cu = f.to_vec();
            cu.push(u);
            comb_bracket(&cu, rest, &-sign, out);
        }
    }
}

fn comb_terms_bracket(a: &ZieElement, b: &ZieElement) -> ZieElement {
    let mut raw = BTreeMap::new();
    for (f, x) in &a.terms {
        for (g, y) in &b.terms {
            comb_bracket(f.lumps(), g.lumps(), &(x * y), &mut raw);
        }
    }
    let mut z = ZieElement::zero(a.ground | b.ground);
    for (lumps, c) in raw {
        z.add_term(SetComposition::new(lumps).expect("disjoint lumps"), c);
    }
    z
}

/// The Lie bracket `[a, b]` over disjoint grounds.
pub fn bracket(a: &ZieElement, b: &ZieElement) -> Result<ZieElement> {
    if !a.ground.is_disjoint(b.ground) {
        return Err(Error::OverlappingGrounds(a.ground, b.ground));
    }
    if a.ground.is_empty() || b.ground.is_empty() {
        return Err(Error::EmptyGround);
    }
    let i0 = (a.ground | b.ground).lowest().unwrap();
    if a.ground.contains(i0) {
        Ok(comb_terms_bracket(a, b))
    } else {
        Ok(comb_terms_bracket(b, a).scale(&-Rational::one()))
    }
}

/// Rewrites a tree in standard right-comb coordinates.
pub fn reduce(t: &Tree) -> Result<ZieElement> {
    match t {
        Tree::Leaf(l) => ZieElement::comb(SetComposition::new(vec![*l])?),
        Tree::Node(a, b) => bracket(&reduce(a)?, &reduce(b)?),
    }
}

/// Reduces a combination of trees over a common ground.
pub fn reduce_combination(ground: LabelSet, terms: &[(Tree, Rational)]) -> Result<ZieElement> {
    let mut z = ZieElement::zero(ground);
    for (t, c) in terms {
        if t.ground() != ground {
            return Err(Error::GroundMismatch(t.ground(), ground));
        }
        z = z.add(&reduce(t)?.scale(c))?;
    }
    Ok(z)
}

/// `Q_T = Σ_{T' ∈ antisym(T)} ± Q_{F_{T'}}`.
pub fn embed_tree(t: &Tree) -> Element {
    let mut e = Element::zero(t.ground(), Basis::Q);
    for (u, s) in t.antisym() {
        e.add_term(u.debracket(), Rational::from_integer(s.into()));
    }
    e
}

/// Debracketings of the switchings of the comb `[F]`: each later lump is
/// appended or (with a sign change) prepended.
pub(crate) fn comb_switchings(f: &SetComposition) -> Vec<(Vec<LabelSet>, i64)> {
    let lumps = f.lumps();
    let mut out: Vec<(std::collections::VecDeque<LabelSet>, i64)> = vec![(std::iter::once(lumps[0]).collect(), 1)];
    for &l in &lumps[1..] {
        let mut next = Vec::with_capacity(out.len() * 2);
        for (seq, s) in out {
            let mut a = seq.clone();
            a.push_back(l);
            next.push((a, s));
            let mut b = seq;
            b.push_front(l);
            next.push((b, -s));
        }
        out = next;
    }
    out.into_iter().map(|(q, s)| (q.into_iter().collect(), s)).collect()
}

/// `U: Zie → Σ`, landing in the `Q` basis.
pub fn embed(z: &ZieElement) -> Element {
    let mut e = Element::zero(z.ground, Basis::Q);
    for (f, c) in &z.terms {
        for (lumps, s) in comb_switchings(f) {
            e.add_term(SetComposition::new(lumps).expect("disjoint"), c * Rational::from_integer(s.into()));
        }
    }
    e
}

/// `p_F(T)`: the sign of the switching that turns `T` into a tree with
/// debracketing `F`, or 0.
pub fn p_eval(f: &SetComposition, t: &Tree) -> Result<Rational> {
    if f.ground() != t.ground() {
        return Err(Error::GroundMismatch(f.ground(), t.ground()));
    }
    Ok(Rational::from_integer(p_sign(f.lumps(), t).into()))
}

fn p_sign(lumps: &[LabelSet], t: &Tree) -> i64 {
    match t {
        Tree::Leaf(l) => (lumps.len() == 1 && lumps[0] == *l) as i64,
        Tree::Node(a, b) => {
            let ga = a.ground();
            let gb = b.ground();
            let mut acc = LabelSet::EMPTY;
            for (k, &l) in lumps.iter().enumerate() {
                acc = acc | l;
                if acc == ga {
                    return p_sign(&lumps[..=k], a) * p_sign(&lumps[k + 1..], b);
                }
                if acc == gb {
                    return -p_sign(&lumps[..=k], b) * p_sign(&lumps[k + 1..], a);
                }
                if !acc.is_subset(ga) && !acc.is_subset(gb) {
                    return 0;
                }
            }
            0
        }
    }
}

impl Relabel for ZieElement {
    /// Transports coefficients of combs; relabelings that move the basepoint
    /// are re-reduced through trees.
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        r.check_onto(self.ground)?;
        let mut z = ZieElement::zero(r.domain());
        for (f, c) in &self.terms {
            let t = Tree::comb(&f.relabel(r)?)?;
            z = z.add(&reduce(&t)?.scale(c))?;
        }
        Ok(z)
    }
}
