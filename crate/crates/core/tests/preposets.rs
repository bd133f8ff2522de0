mod common;

use std::collections::BTreeSet;

use common::{comp, n_set, set};
use proptest::prelude::*;
use steinmann_core::preposet::all_two_blocks;
use steinmann_core::ratgeom::Point;
use steinmann_core::{
    AdjointFamily, LabelSet, PartialProduct, Preposet, Relabel, Relabeling, SetComposition, TwoBlock,
};

fn pairs_of(v: &[(usize, usize)]) -> Vec<(usize, usize)> {
    v.iter().map(|&(i, j)| (i - 1, j - 1)).collect()
}

/// Naive fixpoint closure of a pair relation.
fn closure_oracle(pairs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut out: BTreeSet<_> = pairs.iter().copied().collect();
    loop {
        let mut grew = false;
        let snapshot: Vec<_> = out.iter().copied().collect();
        for &(a, b) in &snapshot {
            for &(c, d) in &snapshot {
                if b == c && a != d && out.insert((a, d)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return out;
        }
    }
}

/// Splits `(S,T)` with no pair of `p` going from `T` into `S`.
fn coprobe_oracle(p: &Preposet) -> BTreeSet<TwoBlock> {
    all_two_blocks(p.ground())
        .into_iter()
        .filter(|b| p.pairs().iter().all(|&(i, j)| !(b.t().contains(i) && b.s().contains(j))))
        .collect()
}

#[test]
fn preposet_of_compositions() {
    assert_eq!(Preposet::of_composition(&comp(&[&[1, 2]])).pairs(), pairs_of(&[(1, 2), (2, 1)]));
    assert_eq!(Preposet::of_composition(&comp(&[&[1], &[2]])).pairs(), pairs_of(&[(1, 2)]));
    let p = Preposet::of_composition(&comp(&[&[2], &[1], &[3]]));
    let got: BTreeSet<_> = p.pairs().into_iter().collect();
    assert_eq!(got, pairs_of(&[(2, 1), (2, 3), (1, 3)]).into_iter().collect());
}

#[test]
fn closure_and_union() {
    let g = set(&[1, 2, 3]);
    let p = Preposet::closure(g, pairs_of(&[(1, 2), (2, 3)])).unwrap();
    assert_eq!(p.pairs(), pairs_of(&[(1, 2), (1, 3), (2, 3)]));
    assert_eq!(p.union(&Preposet::discrete(g)).unwrap(), p);
    let q = Preposet::closure(set(&[1, 2]), pairs_of(&[(1, 2), (2, 1)])).unwrap();
    assert_eq!(q.num_lumps(), 1);
    assert!(p.union(&Preposet::discrete(set(&[1, 2]))).is_err());
}

#[test]
fn closure_matches_fixpoint() {
    let g = n_set(4);
    let all_pairs: Vec<(usize, usize)> =
        g.iter().flat_map(|i| g.iter().filter(move |&j| j != i).map(move |j| (i, j))).collect();
    // Every subset of a fixed spread of six candidate pairs.
    let pick: Vec<(usize, usize)> = all_pairs.iter().step_by(2).copied().collect();
    for mask in 0u32..1 << pick.len() {
        let chosen: Vec<_> = pick.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &x)| x).collect();
        let p = Preposet::closure(g, chosen.clone()).unwrap();
        let got: BTreeSet<_> = p.pairs().into_iter().collect();
        assert_eq!(got, closure_oracle(&chosen));
    }
}

#[test]
fn order_examples() {
    let q = Preposet::of_composition(&comp(&[&[1, 2]]));
    let p = Preposet::of_composition(&comp(&[&[1], &[2]]));
    assert!(q.leq(&p).unwrap());
    assert!(!q.preceq(&p).unwrap());
    assert!(p.preceq_l(&p).unwrap());
    let r = Preposet::closure(set(&[1, 2, 3]), pairs_of(&[(1, 2), (2, 1), (1, 3), (2, 3)])).unwrap();
    assert_eq!(r.num_lumps(), 2);
    assert_eq!(r.as_composition(), Some(comp(&[&[1, 2], &[3]])));
}

#[test]
fn preposet_of_intertwines_orders() {
    let all = SetComposition::enumerate(n_set(4));
    for f in &all {
        for g in &all {
            let lhs = g.leq(f).unwrap();
            let rhs = Preposet::of_composition(g).leq(&Preposet::of_composition(f)).unwrap();
            assert_eq!(lhs, rhs, "{g:?} {f:?}");
        }
    }
}

#[test]
fn two_block_products() {
    let a = TwoBlock::new(set(&[1, 2, 3]), set(&[4, 5, 6, 7])).unwrap();
    let b = TwoBlock::new(set(&[6, 7]), set(&[1, 2, 3, 4, 5])).unwrap();
    let ab = TwoBlock::new(set(&[1, 2, 3, 6, 7]), set(&[4, 5])).unwrap();
    assert_eq!(a.product(&b).unwrap(), PartialProduct::Defined(ab));
    let c = TwoBlock::new(set(&[1, 2]), set(&[3, 4])).unwrap();
    let d = TwoBlock::new(set(&[1, 3]), set(&[2, 4])).unwrap();
    assert_eq!(c.product(&d).unwrap(), PartialProduct::Undefined);
}

/// Weight addition modulo the all-ones vector.
fn weight_sum_is(g: LabelSet, a: &TwoBlock, b: &TwoBlock, c: &TwoBlock) -> bool {
    let x = Point::weight(g, a.s()).add(&Point::weight(g, b.s())).unwrap();
    x.weight_eq(&Point::weight(g, c.s()))
}

#[test]
fn products_add_weights_and_stay_in_closure() {
    for n in 2..=4 {
        let g = n_set(n);
        let blocks = all_two_blocks(g);
        for a in &blocks {
            for b in &blocks {
                if let PartialProduct::Defined(c) = a.product(b).unwrap() {
                    assert!(weight_sum_is(g, a, b, &c), "{a:?} {b:?}");
                    assert!(AdjointFamily::closure(g, [*a, *b]).unwrap().contains(&c));
                }
            }
        }
    }
}

#[test]
fn coprobes_by_definition() {
    for n in 1..=4 {
        for p in Preposet::enumerate(n_set(n)) {
            let got: BTreeSet<TwoBlock> = p.coprobes().iter().copied().collect();
            assert_eq!(got, coprobe_oracle(&p));
        }
    }
    let g = set(&[1, 2]);
    let p = Preposet::of_composition(&comp(&[&[1], &[2]]));
    assert_eq!(p.coprobes().iter().copied().collect::<Vec<_>>(), vec![TwoBlock::new(set(&[1]), set(&[2])).unwrap()]);
    assert!(Preposet::full(g).coprobes().is_empty());
    assert_eq!(Preposet::discrete(g).coprobes().len(), 2);
}

#[test]
fn coprobes_reverse_order_and_commute_with_opposite() {
    let all = Preposet::enumerate(n_set(3));
    for p in &all {
        assert_eq!(p.opposite().opposite(), *p);
        assert_eq!(p.opposite().coprobes(), p.coprobes().opposite());
        assert!(p.coprobes().is_closed().unwrap());
        for q in &all {
            assert_eq!(q.leq(p).unwrap(), q.coprobes().is_subset(&p.coprobes()), "{q:?} {p:?}");
        }
    }
}

#[test]
fn closure_examples() {
    let g = set(&[1, 2, 3]);
    assert!(AdjointFamily::closure(g, []).unwrap().is_empty());
    let x = [TwoBlock::new(set(&[1]), set(&[2, 3])).unwrap(), TwoBlock::new(set(&[2]), set(&[1, 3])).unwrap()];
    let cl = AdjointFamily::closure(g, x).unwrap();
    let want: BTreeSet<TwoBlock> = x.into_iter().chain([TwoBlock::new(set(&[1, 2]), set(&[3])).unwrap()]).collect();
    assert_eq!(cl.iter().copied().collect::<BTreeSet<_>>(), want);
}

#[test]
fn totally_nonsymmetric_closed_families_at_four() {
    let g = n_set(4);
    // Each mask picks one side of each of the seven hyperplanes.
    let halves: Vec<TwoBlock> = all_two_blocks(g).into_iter().filter(|b| b.s().contains(0)).collect();
    assert_eq!(halves.len(), 7);
    let mut count = 0;
    for mask in 0u32..1 << halves.len() {
        let fam: Vec<TwoBlock> =
            halves.iter().enumerate().map(|(k, b)| if mask >> k & 1 == 1 { *b } else { b.opposite() }).collect();
        let f = AdjointFamily::new(g, fam).unwrap();
        let c = f.classify();
        assert!(c.totally_nonsymmetric && c.total);
        if f.is_closed().unwrap() {
            count += 1;
        }
    }
    assert_eq!(count, 32);
    assert!(!Preposet::full(g).coprobes().classify().total);
}

fn family(n: usize) -> impl Strategy<Value = (LabelSet, Vec<TwoBlock>)> {
    let g = n_set(n);
    let blocks = all_two_blocks(g);
    proptest::sample::subsequence(blocks.clone(), 0..=blocks.len().min(4)).prop_map(move |x| (g, x))
}

proptest! {
    #[test]
    fn closure_is_a_closure_operator((g, x) in family(4), (_, y) in family(4)) {
        let cx = AdjointFamily::closure(g, x.clone()).unwrap();
        let x_set = AdjointFamily::new(g, x.clone()).unwrap();
        prop_assert!(x_set.is_subset(&cx));
        prop_assert_eq!(AdjointFamily::closure(g, cx.iter().copied()).unwrap(), cx.clone());
        let xy: Vec<TwoBlock> = x.iter().chain(&y).copied().collect();
        prop_assert!(cx.is_subset(&AdjointFamily::closure(g, xy).unwrap()));
    }

    #[test]
    fn coprobes_commute_with_relabel(k in 0usize..355, perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let p = &Preposet::enumerate(n_set(4))[k];
        let r = Relabeling::new(perm.iter().copied().enumerate()).unwrap();
        prop_assert_eq!(p.relabel(&r).unwrap().coprobes(), p.coprobes().relabel(&r).unwrap());
    }
}
