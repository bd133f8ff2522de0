#![allow(dead_code)]

pub mod oracles;

use steinmann_core::{LabelSet, Rational, SetComposition};

/// Set from 1-based labels.
pub fn set(v: &[usize]) -> LabelSet {
    LabelSet::from_indices(v.iter().map(|i| i - 1))
}

/// Composition from 1-based labels, e.g. `comp(&[&[1, 2], &[3]])`.
pub fn comp(lumps: &[&[usize]]) -> SetComposition {
    SetComposition::new(lumps.iter().map(|l| set(l)).collect()).unwrap()
}

pub fn r(p: i64, q: i64) -> Rational {
    steinmann_core::rational::ratio(p, q)
}

pub fn n_set(n: usize) -> LabelSet {
    LabelSet::first(n)
}
