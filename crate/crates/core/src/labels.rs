//! Ground sets and label subsets.
//!
//! A computation runs over one [`GroundSet`]: a finite, totally ordered list
//! of distinct label names. Every subset of it is a [`LabelSet`], a bitmask
//! over label positions, so the position order is the canonical order used
//! everywhere downstream (lump sorting, enumeration, the basepoint `i0`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};

/// Hard ceiling on the number of labels a ground set may carry.
pub const MAX_LABELS: usize = 32;

/// A subset of label positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabelSet(u32);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        LabelSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_LABELS, "label position {i} out of range");
        LabelSet(1 << i)
    }

    /// Positions `0..n`.
    pub fn first(n: usize) -> Self {
        assert!(n <= MAX_LABELS, "{n} labels exceed the maximum");
        if n == MAX_LABELS {
            LabelSet(u32::MAX)
        } else {
            LabelSet((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(LabelSet::EMPTY, |acc, i| acc | LabelSet::singleton(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_LABELS && self.0 & (1 << i) != 0
    }

    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// One past the largest position, or 0 for the empty set.
    pub fn bound(self) -> usize {
        (32 - self.0.leading_zeros()) as usize
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: LabelSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> LabelIter {
        LabelIter(self.0)
    }

    /// Every subset of `self`, in increasing bitmask order (starting at the
    /// empty set, ending at `self`).
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }

    /// Sorted positions, used for lexicographic comparisons of sets.
    pub fn positions(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Position of `i` among the members of `self` (rank in ascending order).
    pub fn rank_of(self, i: usize) -> Option<usize> {
        self.contains(i).then(|| (self.0 & ((1u32 << i) - 1)).count_ones() as usize)
    }
}

impl BitOr for LabelSet {
    type Output = LabelSet;
    fn bitor(self, rhs: LabelSet) -> LabelSet {
        LabelSet(self.0 | rhs.0)
    }
}

impl BitAnd for LabelSet {
    type Output = LabelSet;
    fn bitand(self, rhs: LabelSet) -> LabelSet {
        LabelSet(self.0 & rhs.0)
    }
}

impl Sub for LabelSet {
    type Output = LabelSet;
    fn sub(self, rhs: LabelSet) -> LabelSet {
        LabelSet(self.0 & !rhs.0)
    }
}

impl Not for LabelSet {
    type Output = LabelSet;
    fn not(self) -> LabelSet {
        LabelSet(!self.0)
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct LabelIter(u32);

impl Iterator for LabelIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = LabelSet;
    fn next(&mut self) -> Option<LabelSet> {
        let cur = self.next?;
        self.next = if cur == self.mask { None } else { Some(cur.wrapping_sub(self.mask) & self.mask) };
        Some(LabelSet(cur))
    }
}

/// Natural label order: integers numerically, then other strings
/// lexicographically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// The labels of a computation, in their fixed total order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    /// Keeps the given order. Labels must be distinct and non-empty.
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_LABELS {
            return Err(Error::ResourceLimit { n: labels.len(), max: MAX_LABELS });
        }
        for (k, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Parse("empty label".into()));
            }
            if labels[..k].contains(l) {
                return Err(Error::Parse(format!("duplicate label {l:?}")));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Labels `"1"`, …, `"n"`.
    pub fn numbered(n: usize) -> Result<Self> {
        GroundSet::new((1..=n).map(|i| i.to_string()))
    }

    /// Deduplicates and sorts in natural order.
    pub fn natural<S: AsRef<str>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self> {
        let mut v: Vec<String> = labels.into_iter().map(|s| s.as_ref().to_string()).collect();
        v.sort_by(|a, b| natural_cmp(a, b));
        v.dedup();
        GroundSet::new(v)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn all(&self) -> LabelSet {
        LabelSet::first(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Subset from label names; repeated names are rejected.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<LabelSet> {
        let mut set = LabelSet::EMPTY;
        for n in names {
            let i = self.index_of(n.as_ref())?;
            if set.contains(i) {
                return Err(Error::Parse(format!("label {:?} repeated", n.as_ref())));
            }
            set = set | LabelSet::singleton(i);
        }
        Ok(set)
    }

    pub fn names(&self, set: LabelSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn show(&self, set: LabelSet) -> String {
        set.iter().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join("")
    }
}

/// A bijection from a new ground onto an old one, used to transport
/// structures along relabelings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    to_old: [u8; MAX_LABELS],
    to_new: [u8; MAX_LABELS],
    domain: LabelSet,
    codomain: LabelSet,
}

const NONE: u8 = u8::MAX;

impl Relabeling {
    /// `pairs` lists `(new, old)` position pairs.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut r = Relabeling {
            to_old: [NONE; MAX_LABELS],
            to_new: [NONE; MAX_LABELS],
            domain: LabelSet::EMPTY,
            codomain: LabelSet::EMPTY,
        };
        for (new, old) in pairs {
            if new >= MAX_LABELS || old >= MAX_LABELS {
                return Err(Error::InvalidBijection(format!("position out of range in ({new},{old})")));
            }
            if r.to_old[new] != NONE {
                return Err(Error::InvalidBijection(format!("{new} mapped twice")));
            }
            if r.to_new[old] != NONE {
                return Err(Error::InvalidBijection(format!("{old} hit twice")));
            }
            r.to_old[new] = old as u8;
            r.to_new[old] = new as u8;
            r.domain = r.domain | LabelSet::singleton(new);
            r.codomain = r.codomain | LabelSet::singleton(old);
        }
        Ok(r)
    }

    /// The order-preserving bijection from `new` onto `old`.
    pub fn monotone(new: LabelSet, old: LabelSet) -> Result<Self> {
        if new.len() != old.len() {
            return Err(Error::InvalidBijection(format!("{new} and {old} differ in size")));
        }
        Relabeling::new(new.iter().zip(old.iter()))
    }

    pub fn identity(set: LabelSet) -> Self {
        Relabeling::new(set.iter().map(|i| (i, i))).expect("identity is a bijection")
    }

    /// The new ground.
    pub fn domain(&self) -> LabelSet {
        self.domain
    }

    /// The old ground.
    pub fn codomain(&self) -> LabelSet {
        self.codomain
    }

    pub fn new_of(&self, old: usize) -> Option<usize> {
        match self.to_new.get(old) {
            Some(&v) if v != NONE => Some(v as usize),
            _ => None,
        }
    }

    pub fn old_of(&self, new: usize) -> Option<usize> {
        match self.to_old.get(new) {
            Some(&v) if v != NONE => Some(v as usize),
            _ => None,
        }
    }

    /// Transports a subset of the old ground to the new ground.
    pub fn map_set(&self, old: LabelSet) -> LabelSet {
        debug_assert!(old.is_subset(self.codomain));
        LabelSet::from_indices(old.iter().map(|i| self.to_new[i] as usize))
    }

    /// `self ∘ inner`, where `inner` maps a newer ground onto `self`'s domain.
    pub fn compose(&self, inner: &Relabeling) -> Result<Relabeling> {
        if inner.codomain != self.domain {
            return Err(Error::InvalidBijection("composition of incompatible relabelings".into()));
        }
        Relabeling::new(inner.domain.iter().map(|k| (k, self.to_old[inner.to_old[k] as usize] as usize)))
    }

    pub fn inverse(&self) -> Relabeling {
        Relabeling::new(self.codomain.iter().map(|old| (old, self.to_new[old] as usize)))
            .expect("inverse of a bijection")
    }

    pub(crate) fn check_onto(&self, ground: LabelSet) -> Result<()> {
        if self.codomain != ground {
            return Err(Error::InvalidBijection(format!(
                "relabeling lands on {} but the ground is {}",
                self.codomain, ground
            )));
        }
        Ok(())
    }
}

/// Transport of structure along a relabeling (species functoriality).
pub trait Relabel: Sized {
    fn relabel(&self, r: &Relabeling) -> Result<Self>;
}

impl Relabel for LabelSet {
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        if !self.is_subset(r.codomain()) {
            return Err(Error::NotASubset(*self, r.codomain()));
        }
        Ok(r.map_set(*self))
    }
}
