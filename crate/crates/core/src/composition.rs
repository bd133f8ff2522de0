//! Set compositions and set partitions.

use std::fmt;

use crate::error::{Error, Result};
use crate::labels::{GroundSet, LabelSet, Relabel, Relabeling};

/// An ordered sequence of non-empty, pairwise disjoint lumps. The ground is
/// the union of the lumps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetComposition {
    lumps: Vec<LabelSet>,
}

impl SetComposition {
    pub fn new(lumps: Vec<LabelSet>) -> Result<Self> {
        let mut seen = LabelSet::EMPTY;
        for &l in &lumps {
            if l.is_empty() {
                return Err(Error::InvalidComposition("empty lump".into()));
            }
            if !l.is_disjoint(seen) {
                return Err(Error::InvalidComposition(format!("lump {l} overlaps an earlier lump")));
            }
            seen = seen | l;
        }
        Ok(SetComposition { lumps })
    }

    /// Builds from lumps already known to be valid.
    pub(crate) fn from_lumps_unchecked(lumps: Vec<LabelSet>) -> Self {
        debug_assert!(SetComposition::new(lumps.clone()).is_ok());
        SetComposition { lumps }
    }

    /// Drops empty lumps; the remaining ones must be disjoint.
    pub fn collapse(lumps: impl IntoIterator<Item = LabelSet>) -> Result<Self> {
        SetComposition::new(lumps.into_iter().filter(|l| !l.is_empty()).collect())
    }

    pub fn empty() -> Self {
        SetComposition { lumps: Vec::new() }
    }

    /// The one-lump composition `(I)`, or the empty composition if `ground`
    /// is empty.
    pub fn one_lump(ground: LabelSet) -> Self {
        if ground.is_empty() {
            SetComposition::empty()
        } else {
            SetComposition { lumps: vec![ground] }
        }
    }

    /// The linear order listing `ground` by position.
    pub fn singletons(ground: LabelSet) -> Self {
        SetComposition { lumps: ground.iter().map(LabelSet::singleton).collect() }
    }

    pub fn lumps(&self) -> &[LabelSet] {
        &self.lumps
    }

    /// `l(F)`, the number of lumps.
    pub fn len(&self) -> usize {
        self.lumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lumps.is_empty()
    }

    pub fn ground(&self) -> LabelSet {
        self.lumps.iter().fold(LabelSet::EMPTY, |a, &l| a | l)
    }

    pub fn is_linear(&self) -> bool {
        self.lumps.iter().all(|l| l.len() == 1)
    }

    /// Index of the lump containing position `i`.
    pub fn lump_of(&self, i: usize) -> Option<usize> {
        self.lumps.iter().position(|l| l.contains(i))
    }

    /// Every composition of `ground`, each once, in increasing order.
    pub fn enumerate(ground: LabelSet) -> Vec<SetComposition> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        enumerate_into(ground, &mut stack, &mut out);
        out
    }

    pub fn concat(&self, other: &SetComposition) -> Result<SetComposition> {
        let (a, b) = (self.ground(), other.ground());
        if !a.is_disjoint(b) {
            return Err(Error::OverlappingGrounds(a, b));
        }
        let mut lumps = self.lumps.clone();
        lumps.extend_from_slice(&other.lumps);
        Ok(SetComposition { lumps })
    }

    /// `F|_S`.
    pub fn restrict(&self, s: LabelSet) -> Result<SetComposition> {
        let g = self.ground();
        if !s.is_subset(g) {
            return Err(Error::NotASubset(s, g));
        }
        Ok(self.restrict_unchecked(s))
    }

    pub(crate) fn restrict_unchecked(&self, s: LabelSet) -> SetComposition {
        SetComposition { lumps: self.lumps.iter().map(|&l| l & s).filter(|l| !l.is_empty()).collect() }
    }

    pub fn opposite(&self) -> SetComposition {
        let mut lumps = self.lumps.clone();
        lumps.reverse();
        SetComposition { lumps }
    }

    /// Whether `s` is the union of an initial run of lumps, i.e. `(S,T) ≤ F`
    /// with `T` the complement. Both `∅` and the whole ground qualify.
    pub fn is_initial(&self, s: LabelSet) -> bool {
        let mut acc = LabelSet::EMPTY;
        if acc == s {
            return true;
        }
        for &l in &self.lumps {
            acc = acc | l;
            if acc == s {
                return true;
            }
            if !acc.is_subset(s) {
                return false;
            }
        }
        false
    }

    /// Whether `s` is a union of lumps (in any positions).
    pub fn is_union_of_lumps(&self, s: LabelSet) -> bool {
        self.lumps.iter().all(|&l| l.is_subset(s) || l.is_disjoint(s))
    }

    /// `G ≤ F`: `self` is obtained from `f` by merging contiguous lumps.
    pub fn leq(&self, f: &SetComposition) -> Result<bool> {
        check_same(self, f)?;
        Ok(self.merge_blocks(f).is_some())
    }

    /// For `self ≤ f`, the number of lumps of `f` merged into each lump of
    /// `self`.
    fn merge_blocks(&self, f: &SetComposition) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(self.len());
        let mut it = f.lumps.iter();
        for &g in &self.lumps {
            let mut acc = LabelSet::EMPTY;
            let mut count = 0;
            while acc != g {
                let &l = it.next()?;
                if !l.is_subset(g) {
                    return None;
                }
                acc = acc | l;
                count += 1;
            }
            out.push(count);
        }
        Some(out)
    }

    /// `(l(F/G), (F/G)!)` for `G = self ≤ f`.
    pub fn quotient_factors(&self, f: &SetComposition) -> Result<(u128, u128)> {
        check_same(self, f)?;
        let blocks = self.merge_blocks(f).ok_or_else(|| Error::NotCoarsening(format!("{self:?}"), format!("{f:?}")))?;
        let mut l = 1u128;
        let mut fact = 1u128;
        for k in blocks {
            l *= k as u128;
            fact *= factorial(k);
        }
        Ok((l, fact))
    }

    /// All `G ≤ self`, each once. There are `2^(l(F)-1)` of them.
    pub fn coarsenings(&self) -> Vec<SetComposition> {
        let k = self.len();
        if k == 0 {
            return vec![SetComposition::empty()];
        }
        let gaps = k - 1;
        let mut out = Vec::with_capacity(1 << gaps);
        for cut in 0u32..(1u32 << gaps) {
            let mut lumps = Vec::new();
            let mut acc = self.lumps[0];
            for j in 1..k {
                if cut & (1 << (j - 1)) != 0 {
                    lumps.push(acc);
                    acc = self.lumps[j];
                } else {
                    acc = acc | self.lumps[j];
                }
            }
            lumps.push(acc);
            out.push(SetComposition { lumps });
        }
        out.sort();
        out
    }

    /// All `G ≥ self`: each lump replaced by a composition of it.
    pub fn refinements(&self) -> Vec<SetComposition> {
        let mut out = vec![Vec::new()];
        for &l in &self.lumps {
            let parts = SetComposition::enumerate(l);
            let mut next = Vec::with_capacity(out.len() * parts.len());
            for prefix in &out {
                for p in &parts {
                    let mut v: Vec<LabelSet> = prefix.clone();
                    v.extend_from_slice(&p.lumps);
                    next.push(v);
                }
            }
            out = next;
        }
        let mut out: Vec<SetComposition> = out.into_iter().map(|lumps| SetComposition { lumps }).collect();
        out.sort();
        out
    }

    /// Tits product `F·G = (S_1∩T_1, …, S_1∩T_m, …, S_k∩T_m)_+`.
    pub fn tits(&self, g: &SetComposition) -> Result<SetComposition> {
        check_same(self, g)?;
        Ok(SetComposition {
            lumps: self
                .lumps
                .iter()
                .flat_map(|&s| g.lumps.iter().map(move |&t| s & t))
                .filter(|l| !l.is_empty())
                .collect(),
        })
    }

    pub fn partition(&self) -> SetPartition {
        SetPartition::from_blocks_unchecked(self.lumps.clone())
    }

    /// The lump sets as label names.
    pub fn names(&self, g: &GroundSet) -> Vec<Vec<String>> {
        self.lumps.iter().map(|&l| g.names(l)).collect()
    }

    /// Compact human form such as `(12,3)`.
    pub fn show(&self, g: &GroundSet) -> String {
        let parts: Vec<String> = self.lumps.iter().map(|&l| g.show(l)).collect();
        format!("({})", parts.join(","))
    }
}

fn check_same(a: &SetComposition, b: &SetComposition) -> Result<()> {
    let (x, y) = (a.ground(), b.ground());
    if x != y {
        return Err(Error::GroundMismatch(x, y));
    }
    Ok(())
}

fn enumerate_into(rest: LabelSet, stack: &mut Vec<LabelSet>, out: &mut Vec<SetComposition>) {
    if rest.is_empty() {
        out.push(SetComposition { lumps: stack.clone() });
        return;
    }
    for sub in rest.subsets().skip(1) {
        stack.push(sub);
        enumerate_into(rest - sub, stack, out);
        stack.pop();
    }
}

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

impl fmt::Debug for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.lumps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            for i in l.iter() {
                write!(f, "{}", i + 1)?;
            }
        }
        write!(f, ")")
    }
}

impl Relabel for SetComposition {
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        r.check_onto(self.ground())?;
        Ok(SetComposition { lumps: self.lumps.iter().map(|&l| r.map_set(l)).collect() })
    }
}

/// An unordered collection of non-empty disjoint blocks, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct SetPartition {
    blocks: Vec<LabelSet>,
}

impl SetPartition {
    pub fn new(blocks: Vec<LabelSet>) -> Result<Self> {
        SetComposition::new(blocks.clone())?;
        Ok(SetPartition::from_blocks_unchecked(blocks))
    }

    fn from_blocks_unchecked(mut blocks: Vec<LabelSet>) -> Self {
        blocks.sort_by_key(|b| b.lowest());
        SetPartition { blocks }
    }

    /// Blocks ordered by their smallest member.
    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground(&self) -> LabelSet {
        self.blocks.iter().fold(LabelSet::EMPTY, |a, &b| a | b)
    }

    /// Every partition of `ground`, each once.
    pub fn enumerate(ground: LabelSet) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        partitions_into(ground, &mut stack, &mut out);
        out
    }

    pub fn names(&self, g: &GroundSet) -> Vec<Vec<String>> {
        self.blocks.iter().map(|&b| g.names(b)).collect()
    }
}

fn partitions_into(rest: LabelSet, stack: &mut Vec<LabelSet>, out: &mut Vec<SetPartition>) {
    let Some(m) = rest.lowest() else {
        out.push(SetPartition { blocks: stack.clone() });
        return;
    };
    let pivot = LabelSet::singleton(m);
    for sub in (rest - pivot).subsets() {
        stack.push(sub | pivot);
        partitions_into(rest - sub - pivot, stack, out);
        stack.pop();
    }
}

impl Relabel for SetPartition {
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        r.check_onto(self.ground())?;
        Ok(SetPartition::from_blocks_unchecked(self.blocks.iter().map(|&b| r.map_set(b)).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(lumps: &[&[usize]]) -> SetComposition {
        SetComposition::new(lumps.iter().map(|l| LabelSet::from_indices(l.iter().map(|i| i - 1))).collect()).unwrap()
    }

    #[test]
    fn two_labels() {
        let all = SetComposition::enumerate(LabelSet::first(2));
        assert_eq!(all.len(), 3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(SetComposition::enumerate(LabelSet::EMPTY), vec![SetComposition::empty()]);
    }

    #[test]
    fn leq_merges_contiguous_lumps() {
        assert!(comp(&[&[1, 2], &[3]]).leq(&comp(&[&[2], &[1], &[3]])).unwrap());
        assert!(!comp(&[&[1, 3], &[2]]).leq(&comp(&[&[1], &[2], &[3]])).unwrap());
        assert!(comp(&[&[1]]).leq(&comp(&[&[1, 2]])).is_err());
    }

    #[test]
    fn factors() {
        let f = comp(&[&[1], &[2], &[3]]);
        assert_eq!(comp(&[&[1, 2], &[3]]).quotient_factors(&f).unwrap(), (2, 2));
        assert_eq!(comp(&[&[1, 2, 3]]).quotient_factors(&f).unwrap(), (3, 6));
        assert_eq!(f.quotient_factors(&f).unwrap(), (1, 1));
        assert!(comp(&[&[1, 3], &[2]]).quotient_factors(&f).is_err());
    }

    #[test]
    fn initial_unions() {
        let f = comp(&[&[1, 2], &[3]]);
        assert!(f.is_initial(LabelSet::from_indices([0, 1])));
        assert!(!f.is_initial(LabelSet::from_indices([0, 2])));
        assert!(f.is_initial(LabelSet::EMPTY));
        assert!(f.is_initial(f.ground()));
    }

    #[test]
    fn tits_example() {
        let f = comp(&[&[1, 2], &[3]]);
        let g = comp(&[&[3], &[1, 2]]);
        assert_eq!(f.tits(&g).unwrap(), f);
    }

    #[test]
    fn partition_counts() {
        let bell: Vec<usize> = (0..6).map(|n| SetPartition::enumerate(LabelSet::first(n)).len()).collect();
        assert_eq!(bell, [1, 1, 2, 5, 15, 52]);
    }
}
