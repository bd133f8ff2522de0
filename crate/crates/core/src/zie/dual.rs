//! `Zie*` in the `p`, `m` and `c` coordinates over `Σ*_{i0}`, the quotient
//! `U*: Σ* → Zie*`, the pairing with `Zie` and the cobracket.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::composition::SetComposition;
use crate::error::{Error, Result};
use crate::labels::LabelSet;
use crate::rational::{sign_power, Rational};
use crate::sigma::{change_basis, Basis, Element};

use super::lie::{is_based, ZieElement};

/// Coordinates on `Zie*`, images of `P`, `M` and `C` under `U*`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DualBasis {
    P,
    M,
    C,
}

impl DualBasis {
    pub const ALL: [DualBasis; 3] = [DualBasis::P, DualBasis::M, DualBasis::C];

    pub fn sigma(self) -> Basis {
        match self {
            DualBasis::P => Basis::P,
            DualBasis::M => Basis::M,
            DualBasis::C => Basis::C,
        }
    }

    pub fn of_sigma(b: Basis) -> Result<DualBasis> {
        match b {
            Basis::P => Ok(DualBasis::P),
            Basis::M => Ok(DualBasis::M),
            Basis::C => Ok(DualBasis::C),
            other => Err(Error::CrossAlgebra { from: other.to_string(), to: "Zie*".into() }),
        }
    }

    pub fn parse(s: &str) -> Result<DualBasis> {
        match s {
            "p" | "P" => Ok(DualBasis::P),
            "m" | "M" => Ok(DualBasis::M),
            "c" | "C" => Ok(DualBasis::C),
            _ => Err(Error::Parse(format!("unknown Zie* basis {s:?}"))),
        }
    }
}

impl fmt::Display for DualBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualBasis::P => "p",
            DualBasis::M => "m",
            DualBasis::C => "c",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZieDualElement {
    ground: LabelSet,
    basis: DualBasis,
    terms: BTreeMap<SetComposition, Rational>,
}

impl ZieDualElement {
    pub fn zero(ground: LabelSet, basis: DualBasis) -> Self {
        ZieDualElement { ground, basis, terms: BTreeMap::new() }
    }

    /// `p_F`, `m_F` or `c_F` for a based `F`.
    pub fn basis_vector(basis: DualBasis, f: SetComposition) -> Result<Self> {
        ZieDualElement::from_terms(f.ground(), basis, [(f, Rational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (SetComposition, Rational)>>(
        ground: LabelSet,
        basis: DualBasis,
        it: I,
    ) -> Result<Self> {
        let mut d = ZieDualElement::zero(ground, basis);
        for (f, c) in it {
            if f.ground() != ground {
                return Err(Error::GroundMismatch(f.ground(), ground));
            }
            if !is_based(&f) {
                return Err(Error::InvalidComposition(format!("{f:?} does not start with the lowest label")));
            }
            d.add_term(f, c);
        }
        Ok(d)
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn basis(&self) -> DualBasis {
        self.basis
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

    fn add_term(&mut self, f: SetComposition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(f.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn add(&self, other: &ZieDualElement) -> Result<ZieDualElement> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        let other = other.to_basis(self.basis)?;
        let mut d = self.clone();
        for (f, c) in other.terms {
            d.add_term(f, c);
        }
        Ok(d)
    }

    pub fn scale(&self, k: &Rational) -> ZieDualElement {
        let mut d = ZieDualElement::zero(self.ground, self.basis);
        for (f, c) in &self.terms {
            d.add_term(f.clone(), c * k);
        }
        d
    }

    /// The same coordinates read as an element of `Σ*`.
    pub fn lift(&self) -> Element {
        let mut e = Element::zero(self.ground, self.basis.sigma());
        for (f, c) in &self.terms {
            e.add_term(f.clone(), c.clone());
        }
        e
    }

    /// Coarsenings of a based composition are based, so the triangular
    /// changes of basis of `Σ*` restrict to `Σ*_{i0}`.
    pub fn to_basis(&self, target: DualBasis) -> Result<ZieDualElement> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let e = change_basis(&self.lift(), target.sigma())?;
        Ok(ZieDualElement { ground: self.ground, basis: target, terms: e.terms().clone() })
    }
}

fn shuffles(a: &[LabelSet], b: &[LabelSet], prefix: &mut Vec<LabelSet>, out: &mut Vec<Vec<LabelSet>>) {
    match (a.split_first(), b.split_first()) {
        (None, None) => out.push(prefix.clone()),
        (Some((&x, rest)), None) | (None, Some((&x, rest))) => {
            prefix.push(x);
            shuffles(rest, &[], prefix, out);
            prefix.pop();
        }
        (Some((&x, ra)), Some((&y, rb))) => {
            prefix.push(x);
            shuffles(ra, b, prefix, out);
            prefix.pop();
            prefix.push(y);
            shuffles(a, rb, prefix, out);
            prefix.pop();
        }
    }
}

/// `p_F` in based coordinates. With `i0` in lump `T_m` of `F`,
/// `p_F = (-1)^{m-1} Σ p_G` over `G = (T_m, …)` where the tail shuffles
/// `(T_{m-1}, …, T_1)` with `(T_{m+1}, …, T_k)`.
pub fn rebase(f: &SetComposition) -> Vec<(SetComposition, Rational)> {
    let i0 = match f.ground().lowest() {
        Some(i) => i,
        None => return vec![(f.clone(), Rational::one())],
    };
    let m = f.lump_of(i0).expect("i0 in ground");
    if m == 0 {
        return vec![(f.clone(), Rational::one())];
    }
    let lumps = f.lumps();
    let before: Vec<LabelSet> = lumps[..m].iter().rev().copied().collect();
    let after = &lumps[m + 1..];
    let mut tails = Vec::new();
    shuffles(&before, after, &mut vec![lumps[m]], &mut tails);
    let sign = sign_power(m);
    tails.into_iter().map(|g| (SetComposition::from_lumps_unchecked(g), sign.clone())).collect()
}

/// `U*: Σ* → Zie*`; the result is in the basis matching `x`.
pub fn project(x: &Element) -> Result<ZieDualElement> {
    let target = DualBasis::of_sigma(x.basis())?;
    let p = change_basis(x, Basis::P)?;
    let mut d = ZieDualElement::zero(x.ground(), DualBasis::P);
    for (f, c) in p.iter() {
        for (g, s) in rebase(f) {
            d.add_term(g, c * s);
        }
    }
    d.to_basis(target)
}

/// `⟨d, z⟩`, with the `p` coordinates dual to the right combs.
pub fn pair(d: &ZieDualElement, z: &ZieElement) -> Result<Rational> {
    if d.ground != z.ground() {
        return Err(Error::GroundMismatch(d.ground, z.ground()));
    }
    let p = d.to_basis(DualBasis::P)?;
    Ok(p.terms.iter().map(|(f, c)| c * z.coeff(f)).sum())
}

/// An element of `Zie*[S] ⊗ Zie*[T]` in `p` coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZieTensor {
    grounds: (LabelSet, LabelSet),
    terms: BTreeMap<(SetComposition, SetComposition), Rational>,
}

impl ZieTensor {
    pub fn zero(s: LabelSet, t: LabelSet) -> Self {
        ZieTensor { grounds: (s, t), terms: BTreeMap::new() }
    }

    pub fn grounds(&self) -> (LabelSet, LabelSet) {
        self.grounds
    }

    pub fn terms(&self) -> &BTreeMap<(SetComposition, SetComposition), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &SetComposition, b: &SetComposition) -> Rational {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, key: (SetComposition, SetComposition), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, k: &Rational) -> ZieTensor {
        let mut out = ZieTensor::zero(self.grounds.0, self.grounds.1);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c * k);
        }
        out
    }

    /// The flip `Zie*[S] ⊗ Zie*[T] → Zie*[T] ⊗ Zie*[S]`.
    pub fn swap(&self) -> ZieTensor {
        let mut out = ZieTensor::zero(self.grounds.1, self.grounds.0);
        for ((a, b), c) in &self.terms {
            out.add_term((b.clone(), a.clone()), c.clone());
        }
        out
    }

    /// `⟨t, a ⊗ b⟩`.
    pub fn pair(&self, a: &ZieElement, b: &ZieElement) -> Result<Rational> {
        if (a.ground(), b.ground()) != self.grounds {
            return Err(Error::GroundMismatch(a.ground() | b.ground(), self.grounds.0 | self.grounds.1));
        }
        Ok(self.terms.iter().map(|((f, g), c)| c * a.coeff(f) * b.coeff(g)).sum())
    }
}

/// `∂_{[S,T]}(p_F) = p_{F|S} ⊗ p_{F|T} - p_{F|T} ⊗ p_{F|S}`, the second term
/// read in `S ⊗ T` order; both factors re-based.
pub fn cobracket(d: &ZieDualElement, s: LabelSet) -> Result<ZieTensor> {
    let ground = d.ground;
    let t = ground - s;
    if s.is_empty() || t.is_empty() || !s.is_subset(ground) {
        return Err(Error::BadSplit(format!("{s} does not split {ground} into two non-empty parts")));
    }
    let p = d.to_basis(DualBasis::P)?;
    let mut out = ZieTensor::zero(s, t);
    for (f, c) in &p.terms {
        let sign = if f.is_initial(s) {
            c.clone()
        } else if f.is_initial(t) {
            -c.clone()
        } else {
            continue;
        };
        let left = rebase(&f.restrict_unchecked(s));
        let right = rebase(&f.restrict_unchecked(t));
        for (a, x) in &left {
            for (b, y) in &right {
                out.add_term((a.clone(), b.clone()), &sign * x * y);
            }
        }
    }
    Ok(out)
}
