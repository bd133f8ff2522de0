//! Preposets as relations, two-block splits, and adjoint families.

use std::collections::BTreeSet;
use std::fmt;

use crate::composition::{SetComposition, SetPartition};
use crate::error::{Error, Result};
use crate::labels::{LabelSet, Relabel, Relabeling, MAX_LABELS};
use crate::ratgeom::{cone_member, Point};
use crate::rational::Rational;

/// A reflexive transitive relation, stored by its non-identity pairs.
///
/// `(i, j)` is in the relation iff `rows[i]` contains `j`. For the preposet of
/// a composition this means the lump of `i` is weakly left of the lump of `j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preposet {
    ground: LabelSet,
    rows: [LabelSet; MAX_LABELS],
}

impl Preposet {
    /// The discrete preposet (no pairs).
    pub fn discrete(ground: LabelSet) -> Self {
        Preposet { ground, rows: [LabelSet::EMPTY; MAX_LABELS] }
    }

    /// The one-lump preposet (all pairs).
    pub fn full(ground: LabelSet) -> Self {
        let mut p = Preposet::discrete(ground);
        for i in ground.iter() {
            p.rows[i] = ground - LabelSet::singleton(i);
        }
        p
    }

    /// Transitive closure of a set of pairs.
    pub fn closure<I: IntoIterator<Item = (usize, usize)>>(ground: LabelSet, pairs: I) -> Result<Self> {
        let mut p = Preposet::discrete(ground);
        for (i, j) in pairs {
            if !ground.contains(i) || !ground.contains(j) {
                return Err(Error::InvalidPreposet(format!("pair ({i},{j}) leaves the ground {ground}")));
            }
            if i == j {
                return Err(Error::InvalidPreposet(format!("identity pair ({i},{i})")));
            }
            p.rows[i] = p.rows[i] | LabelSet::singleton(j);
        }
        p.close();
        Ok(p)
    }

    fn close(&mut self) {
        for k in self.ground.iter() {
            for i in self.ground.iter() {
                if self.rows[i].contains(k) {
                    self.rows[i] = self.rows[i] | self.rows[k];
                }
            }
        }
        for i in self.ground.iter() {
            self.rows[i] = self.rows[i] - LabelSet::singleton(i);
        }
    }

    pub fn of_composition(f: &SetComposition) -> Self {
        let mut p = Preposet::discrete(f.ground());
        let mut right = f.ground();
        for &l in f.lumps() {
            for i in l.iter() {
                p.rows[i] = right - LabelSet::singleton(i);
            }
            right = right - l;
        }
        p
    }

    /// Every preposet over `ground`, sorted; grows fast (355 at four labels,
    /// 4231 at five).
    pub fn enumerate(ground: LabelSet) -> Vec<Preposet> {
        let mut seen = BTreeSet::from([Preposet::discrete(ground)]);
        let mut frontier = vec![Preposet::discrete(ground)];
        while let Some(p) = frontier.pop() {
            for i in ground.iter() {
                for j in ground.iter() {
                    if i == j || p.contains(i, j) {
                        continue;
                    }
                    let mut q = p.clone();
                    q.rows[i] = q.rows[i] | LabelSet::singleton(j);
                    q.close();
                    if seen.insert(q.clone()) {
                        frontier.push(q);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < MAX_LABELS && self.rows[i].contains(j)
    }

    /// The set of `j` with `(i, j)` in the relation.
    pub fn row(&self, i: usize) -> LabelSet {
        self.rows[i]
    }

    /// The set of `i` with `(i, j)` in the relation.
    pub fn column(&self, j: usize) -> LabelSet {
        LabelSet::from_indices(self.ground.iter().filter(|&i| self.rows[i].contains(j)))
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.ground.iter().flat_map(|i| self.rows[i].iter().map(move |j| (i, j))).collect()
    }

    pub fn num_pairs(&self) -> usize {
        self.ground.iter().map(|i| self.rows[i].len()).sum()
    }

    pub fn is_subset(&self, other: &Preposet) -> bool {
        self.ground == other.ground && self.ground.iter().all(|i| self.rows[i].is_subset(other.rows[i]))
    }

    fn check_same(&self, other: &Preposet) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        Ok(())
    }

    /// `p ∪ q`, the closure of the union.
    pub fn union(&self, other: &Preposet) -> Result<Preposet> {
        self.check_same(other)?;
        let mut p = self.clone();
        for i in self.ground.iter() {
            p.rows[i] = p.rows[i] | other.rows[i];
        }
        p.close();
        Ok(p)
    }

    /// `(p | q)`, the disjoint union over disjoint grounds.
    pub fn juxtapose(&self, other: &Preposet) -> Result<Preposet> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(Error::OverlappingGrounds(self.ground, other.ground));
        }
        let mut p = self.clone();
        p.ground = self.ground | other.ground;
        for i in other.ground.iter() {
            p.rows[i] = other.rows[i];
        }
        Ok(p)
    }

    /// Rows of the nonsymmetric part `p_>`.
    fn strict_rows(&self) -> [LabelSet; MAX_LABELS] {
        let mut out = [LabelSet::EMPTY; MAX_LABELS];
        for i in self.ground.iter() {
            out[i] = LabelSet::from_indices(self.rows[i].iter().filter(|&j| !self.rows[j].contains(i)));
        }
        out
    }

    /// Nonsymmetric pairs `p_>`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let s = self.strict_rows();
        self.ground.iter().flat_map(|i| s[i].iter().map(move |j| (i, j))).collect()
    }

    /// `self ≤ p`, i.e. `p ⊆ self`.
    pub fn leq(&self, p: &Preposet) -> Result<bool> {
        self.check_same(p)?;
        Ok(p.is_subset(self))
    }

    /// `self ⪯ p`: `self ≤ p` and `p_> ⊆ self_>`.
    pub fn preceq(&self, p: &Preposet) -> Result<bool> {
        if !self.leq(p)? {
            return Ok(false);
        }
        let (a, b) = (p.strict_rows(), self.strict_rows());
        Ok(self.ground.iter().all(|i| a[i].is_subset(b[i])))
    }

    /// `self ⪯_l p`: `self ⪯ p` with equally many lumps.
    pub fn preceq_l(&self, p: &Preposet) -> Result<bool> {
        Ok(self.preceq(p)? && self.num_lumps() == p.num_lumps())
    }

    /// Classes of mutually related labels.
    pub fn lumps(&self) -> SetPartition {
        let mut left = self.ground;
        let mut blocks = Vec::new();
        while let Some(i) = left.lowest() {
            let class = LabelSet::from_indices(self.rows[i].iter().filter(|&j| self.rows[j].contains(i)))
                | LabelSet::singleton(i);
            blocks.push(class);
            left = left - class;
        }
        SetPartition::new(blocks).expect("lumps partition the ground")
    }

    /// `l(p)`.
    pub fn num_lumps(&self) -> usize {
        self.lumps().len()
    }

    /// Connected components of the comparability graph.
    pub fn blocks(&self) -> SetPartition {
        let mut left = self.ground;
        let mut blocks = Vec::new();
        while let Some(i) = left.lowest() {
            let mut comp = LabelSet::singleton(i);
            loop {
                let mut next = comp;
                for k in comp.iter() {
                    next = next | self.rows[k] | self.column(k);
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            blocks.push(comp);
            left = left - comp;
        }
        SetPartition::new(blocks).expect("blocks partition the ground")
    }

    pub fn opposite(&self) -> Preposet {
        let mut p = Preposet::discrete(self.ground);
        for (i, j) in self.pairs() {
            p.rows[j] = p.rows[j] | LabelSet::singleton(i);
        }
        p
    }

    pub fn restrict(&self, s: LabelSet) -> Result<Preposet> {
        if !s.is_subset(self.ground) {
            return Err(Error::NotASubset(s, self.ground));
        }
        let mut p = Preposet::discrete(s);
        for i in s.iter() {
            p.rows[i] = self.rows[i] & s;
        }
        Ok(p)
    }

    pub fn is_total(&self) -> bool {
        self.ground.iter().all(|i| (self.rows[i] | self.column(i) | LabelSet::singleton(i)) == self.ground)
    }

    pub fn is_totally_nonsymmetric(&self) -> bool {
        self.is_total() && self.num_lumps() == self.ground.len()
    }

    /// The composition encoded by a total preposet.
    pub fn as_composition(&self) -> Option<SetComposition> {
        if !self.is_total() {
            return None;
        }
        let mut lumps: Vec<LabelSet> = self.lumps().blocks().to_vec();
        // A lump is left of another iff it relates to it; the left lump has
        // the larger row.
        lumps.sort_by_key(|l| std::cmp::Reverse(self.rows[l.lowest().unwrap()].len()));
        Some(SetComposition::from_lumps_unchecked(lumps))
    }

    /// Whether `(S, T) ≤ p`: no pair runs from `T` back into `S`.
    pub fn admits_split(&self, s: LabelSet) -> bool {
        let t = self.ground - s;
        t.iter().all(|i| self.rows[i].is_disjoint(s))
    }

    /// Deconcatenation `(p|_S, p|_T)` when `(S, T) ≤ p`.
    pub fn deconcat(&self, s: LabelSet) -> Result<Option<(Preposet, Preposet)>> {
        if !s.is_subset(self.ground) {
            return Err(Error::NotASubset(s, self.ground));
        }
        if !self.admits_split(s) {
            return Ok(None);
        }
        Ok(Some((self.restrict(s)?, self.restrict(self.ground - s)?)))
    }

    /// All compositions `F ≤ p`, i.e. total preposets containing `p`, in
    /// increasing order.
    pub fn total_extensions(&self) -> Vec<SetComposition> {
        let cols: Vec<LabelSet> =
            (0..MAX_LABELS).map(|j| if self.ground.contains(j) { self.column(j) } else { LabelSet::EMPTY }).collect();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        extensions_into(&cols, self.ground, &mut stack, &mut out);
        out.sort();
        out
    }

    /// All compositions `G ⪯ p`.
    pub fn preceq_compositions(&self) -> Vec<SetComposition> {
        let strict = self.strict_rows();
        self.total_extensions()
            .into_iter()
            .filter(|g| {
                let q = Preposet::of_composition(g);
                let qs = q.strict_rows();
                self.ground.iter().all(|i| strict[i].is_subset(qs[i]))
            })
            .collect()
    }

    /// The surjective two-block coprobes `{(S,T) : (S,T) ≤ p}`.
    pub fn coprobes(&self) -> AdjointFamily {
        let members = proper_subsets(self.ground)
            .filter(|&s| self.admits_split(s))
            .map(|s| TwoBlock { s, t: self.ground - s })
            .collect();
        AdjointFamily { ground: self.ground, members }
    }
}

fn extensions_into(cols: &[LabelSet], rest: LabelSet, stack: &mut Vec<LabelSet>, out: &mut Vec<SetComposition>) {
    if rest.is_empty() {
        out.push(SetComposition::from_lumps_unchecked(stack.clone()));
        return;
    }
    for sub in rest.subsets().skip(1) {
        if sub.iter().all(|j| (cols[j] & rest).is_subset(sub)) {
            stack.push(sub);
            extensions_into(cols, rest - sub, stack, out);
            stack.pop();
        }
    }
}

impl fmt::Debug for Preposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preposet{}{{", self.ground)?;
        for (k, (i, j)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", i + 1, j + 1)?;
        }
        write!(f, "}}")
    }
}

impl Relabel for Preposet {
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        r.check_onto(self.ground)?;
        let mut p = Preposet::discrete(r.domain());
        for (i, j) in self.pairs() {
            let (a, b) = (r.new_of(i).unwrap(), r.new_of(j).unwrap());
            p.rows[a] = p.rows[a] | LabelSet::singleton(b);
        }
        Ok(p)
    }
}

/// Proper non-empty subsets of `ground`, in increasing bitmask order.
pub fn proper_subsets(ground: LabelSet) -> impl Iterator<Item = LabelSet> {
    ground.subsets().filter(move |&s| !s.is_empty() && s != ground)
}

/// A two-lump composition `(S, T)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TwoBlock {
    s: LabelSet,
    t: LabelSet,
}

/// Result of the partial product on two-block splits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartialProduct {
    Defined(TwoBlock),
    Undefined,
}

impl TwoBlock {
    pub fn new(s: LabelSet, t: LabelSet) -> Result<Self> {
        if s.is_empty() || t.is_empty() {
            return Err(Error::BadSplit("both sides must be non-empty".into()));
        }
        if !s.is_disjoint(t) {
            return Err(Error::BadSplit(format!("{s} and {t} overlap")));
        }
        Ok(TwoBlock { s, t })
    }

    pub fn s(&self) -> LabelSet {
        self.s
    }

    pub fn t(&self) -> LabelSet {
        self.t
    }

    pub fn ground(&self) -> LabelSet {
        self.s | self.t
    }

    pub fn opposite(&self) -> TwoBlock {
        TwoBlock { s: self.t, t: self.s }
    }

    pub fn composition(&self) -> SetComposition {
        SetComposition::from_lumps_unchecked(vec![self.s, self.t])
    }

    /// `(S,T)∘(U,V)`, matching the addition of fundamental weights.
    pub fn product(&self, other: &TwoBlock) -> Result<PartialProduct> {
        if self.ground() != other.ground() {
            return Err(Error::GroundMismatch(self.ground(), other.ground()));
        }
        let (s, t, u, v) = (self.s, self.t, other.s, other.t);
        if u.is_subset(t) && u != t {
            return Ok(PartialProduct::Defined(TwoBlock { s: s | u, t: t & v }));
        }
        if v.is_subset(s) && v != s {
            return Ok(PartialProduct::Defined(TwoBlock { s: s & u, t: t | v }));
        }
        Ok(PartialProduct::Undefined)
    }
}

impl Relabel for TwoBlock {
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        r.check_onto(self.ground())?;
        Ok(TwoBlock { s: r.map_set(self.s), t: r.map_set(self.t) })
    }
}

/// All two-block splits of `ground`.
pub fn all_two_blocks(ground: LabelSet) -> Vec<TwoBlock> {
    proper_subsets(ground).map(|s| TwoBlock { s, t: ground - s }).collect()
}

/// A set of two-block splits of one ground.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AdjointFamily {
    ground: LabelSet,
    members: BTreeSet<TwoBlock>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub total: bool,
    pub totally_nonsymmetric: bool,
    pub symmetric_part: AdjointFamily,
    pub nonsymmetric_part: AdjointFamily,
}

impl AdjointFamily {
    pub fn new<I: IntoIterator<Item = TwoBlock>>(ground: LabelSet, members: I) -> Result<Self> {
        let members: BTreeSet<TwoBlock> = members.into_iter().collect();
        for m in &members {
            if m.ground() != ground {
                return Err(Error::GroundMismatch(m.ground(), ground));
            }
        }
        Ok(AdjointFamily { ground, members })
    }

    pub fn empty(ground: LabelSet) -> Self {
        AdjointFamily { ground, members: BTreeSet::new() }
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn contains(&self, b: &TwoBlock) -> bool {
        self.members.contains(b)
    }

    /// Whether the split with left side `s` belongs to the family.
    pub fn contains_left(&self, s: LabelSet) -> bool {
        self.members.contains(&TwoBlock { s, t: self.ground - s })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TwoBlock> {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &AdjointFamily) -> bool {
        self.ground == other.ground && self.members.is_subset(&other.members)
    }

    pub fn opposite(&self) -> AdjointFamily {
        AdjointFamily { ground: self.ground, members: self.members.iter().map(TwoBlock::opposite).collect() }
    }

    pub fn symmetric_part(&self) -> AdjointFamily {
        let members = self.members.iter().filter(|m| self.contains(&m.opposite())).copied().collect();
        AdjointFamily { ground: self.ground, members }
    }

    pub fn nonsymmetric_part(&self) -> AdjointFamily {
        let members = self.members.iter().filter(|m| !self.contains(&m.opposite())).copied().collect();
        AdjointFamily { ground: self.ground, members }
    }

    pub fn is_total(&self) -> bool {
        all_two_blocks(self.ground).iter().all(|b| self.contains(b) || self.contains(&b.opposite()))
    }

    pub fn is_totally_nonsymmetric(&self) -> bool {
        all_two_blocks(self.ground).iter().all(|b| self.contains(b) != self.contains(&b.opposite()))
    }

    pub fn classify(&self) -> Classification {
        Classification {
            total: self.is_total(),
            totally_nonsymmetric: self.is_totally_nonsymmetric(),
            symmetric_part: self.symmetric_part(),
            nonsymmetric_part: self.nonsymmetric_part(),
        }
    }

    /// `Cl(X)`: every split whose fundamental weight is a non-negative
    /// combination of the weights of `x`, decided by exact cone membership.
    pub fn closure<I: IntoIterator<Item = TwoBlock>>(ground: LabelSet, x: I) -> Result<AdjointFamily> {
        let x = AdjointFamily::new(ground, x)?;
        let gens: Vec<Vec<Rational>> = x.iter().map(|b| Point::weight(ground, b.s).into_coords()).collect();
        let mut members = BTreeSet::new();
        for b in all_two_blocks(ground) {
            if x.contains(&b) {
                members.insert(b);
                continue;
            }
            let target = Point::weight(ground, b.s).into_coords();
            if cone_member(&target, &gens, false, true)?.is_some() {
                members.insert(b);
            }
        }
        Ok(AdjointFamily { ground, members })
    }

    pub fn is_closed(&self) -> Result<bool> {
        Ok(AdjointFamily::closure(self.ground, self.members.iter().copied())? == *self)
    }

    /// Whether the family is closed under every defined partial product.
    pub fn is_pre_adjoint(&self) -> bool {
        self.members.iter().all(|a| {
            self.members.iter().all(|b| match a.product(b) {
                Ok(PartialProduct::Defined(c)) => self.contains(&c),
                _ => true,
            })
        })
    }
}

impl Relabel for AdjointFamily {
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        r.check_onto(self.ground)?;
        let members = self.members.iter().map(|m| m.relabel(r)).collect::<Result<_>>()?;
        Ok(AdjointFamily { ground: r.domain(), members })
    }
}
