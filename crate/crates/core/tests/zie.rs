mod common;

use common::{comp, n_set, r, set};
use num::{One, Zero};
use steinmann_core::composition::SetPartition;
use steinmann_core::sigma::{comultiply, multiply, Basis, Element};
use steinmann_core::zie::*;
use steinmann_core::{LabelSet, Rational, SetComposition};

fn leaf(v: &[usize]) -> Tree {
    Tree::leaf(set(v)).unwrap()
}

fn node(a: Tree, b: Tree) -> Tree {
    Tree::node(a, b).unwrap()
}

fn comb(f: SetComposition) -> ZieElement {
    ZieElement::comb(f).unwrap()
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Every tree over `ground` whose leaves are singletons or lumps.
fn all_trees(ground: LabelSet) -> Vec<Tree> {
    let mut out = vec![Tree::leaf(ground).unwrap()];
    for s in ground.subsets() {
        let t = ground - s;
        if s.is_empty() || t.is_empty() {
            continue;
        }
        for a in all_trees(s) {
            for b in all_trees(t) {
                out.push(node(a.clone(), b));
            }
        }
    }
    out
}

fn comb_basis(ground: LabelSet) -> Vec<ZieElement> {
    based_compositions(ground).into_iter().map(comb).collect()
}

#[test]
fn debracket_and_antisym() {
    let t = node(node(leaf(&[2, 4]), node(leaf(&[1]), leaf(&[9]))), leaf(&[6, 7, 8]));
    assert_eq!(t.debracket(), comp(&[&[2, 4], &[1], &[9], &[6, 7, 8]]));
    let three = node(leaf(&[1]), node(leaf(&[2]), leaf(&[3])));
    assert_eq!(three.antisym().len(), 4);
    assert_eq!(leaf(&[1, 2]).antisym(), vec![(leaf(&[1, 2]), 1)]);
    assert_eq!(format!("{three:?}"), "[1,[2,3]]");
}

#[test]
fn reduce_examples() {
    assert_eq!(reduce(&node(leaf(&[1]), leaf(&[2]))).unwrap(), comb(comp(&[&[1], &[2]])));
    assert_eq!(reduce(&node(leaf(&[2]), leaf(&[1]))).unwrap(), comb(comp(&[&[1], &[2]])).scale(&-Rational::one()));
    let z = reduce(&node(leaf(&[1]), node(leaf(&[2]), leaf(&[3])))).unwrap();
    let expect =
        ZieElement::from_terms(n_set(3), [(comp(&[&[1], &[2], &[3]]), r(1, 1)), (comp(&[&[1], &[3], &[2]]), r(-1, 1))])
            .unwrap();
    assert_eq!(z, expect);
}

#[test]
fn dimension_counts() {
    let expected = [1, 2, 6, 26, 150];
    for n in 1..=5 {
        let by_partitions: usize = SetPartition::enumerate(n_set(n)).iter().map(|p| factorial(p.len() - 1)).sum();
        assert_eq!(by_partitions, expected[n - 1]);
        assert_eq!(based_compositions(n_set(n)).len(), expected[n - 1]);
    }
}

#[test]
fn reduce_agrees_with_embedding() {
    // U(reduce(T)) = Q_T for every tree over a small ground.
    for n in 1..=4 {
        for t in all_trees(n_set(n)) {
            assert_eq!(embed(&reduce(&t).unwrap()), embed_tree(&t), "{t:?}");
        }
    }
}

#[test]
fn embedding_examples_and_primitivity() {
    let e = embed(&comb(comp(&[&[1], &[2]])));
    let expect =
        Element::from_terms(n_set(2), Basis::Q, [(comp(&[&[1], &[2]]), r(1, 1)), (comp(&[&[2], &[1]]), r(-1, 1))])
            .unwrap();
    assert_eq!(e, expect);
    assert_eq!(embed(&comb(comp(&[&[1, 2, 3]]))), Element::basis_vector(Basis::Q, comp(&[&[1, 2, 3]])));
    for n in 1..=4 {
        let g = n_set(n);
        for z in comb_basis(g) {
            let u = embed(&z);
            for s in g.subsets() {
                if s.is_empty() || s == g {
                    continue;
                }
                assert!(comultiply(&u, s).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn p_eval_examples() {
    let f = comp(&[&[1], &[2]]);
    assert_eq!(p_eval(&f, &node(leaf(&[2]), leaf(&[1]))).unwrap(), r(-1, 1));
    for n in 1..=4 {
        let based = based_compositions(n_set(n));
        for f in &based {
            for g in &based {
                let v = p_eval(f, &Tree::comb(g).unwrap()).unwrap();
                assert_eq!(v, if f == g { Rational::one() } else { Rational::zero() });
            }
        }
    }
}

#[test]
fn rebase_matches_tree_functionals() {
    for n in 1..=5 {
        let g = n_set(n);
        let based = based_compositions(g);
        for f in SetComposition::enumerate(g) {
            let d = rebase(&f);
            for h in &based {
                let coeff: Rational = d.iter().filter(|(k, _)| k == h).map(|(_, c)| c.clone()).sum();
                assert_eq!(coeff, p_eval(&f, &Tree::comb(h).unwrap()).unwrap(), "{f:?} at {h:?}");
            }
        }
    }
}

#[test]
fn projection_examples() {
    let p12 = project(&Element::basis_vector(Basis::P, comp(&[&[1], &[2]]))).unwrap();
    assert_eq!(p12, ZieDualElement::basis_vector(DualBasis::P, comp(&[&[1], &[2]])).unwrap());
    let p21 = project(&Element::basis_vector(Basis::P, comp(&[&[2], &[1]]))).unwrap();
    assert_eq!(p21, p12.scale(&-Rational::one()));
    let m21 = project(&Element::basis_vector(Basis::M, comp(&[&[2], &[1]]))).unwrap();
    assert_eq!(m21.basis(), DualBasis::M);
    // m_(2,1) = U*(P_(2,1) - 1/2 P_(12)) = -p_(1,2) - 1/2 p_(12) = -m_(1,2)
    assert_eq!(
        m21.to_basis(DualBasis::P).unwrap(),
        ZieDualElement::from_terms(
            n_set(2),
            DualBasis::P,
            [(comp(&[&[1], &[2]]), r(-1, 1)), (comp(&[&[1, 2]]), r(-1, 2))],
        )
        .unwrap()
    );
}

#[test]
fn projection_dual_to_embedding() {
    for n in 1..=3 {
        let g = n_set(n);
        for basis in [Basis::M, Basis::P, Basis::C] {
            for f in SetComposition::enumerate(g) {
                let x = Element::basis_vector(basis, f);
                let d = project(&x).unwrap();
                for z in comb_basis(g) {
                    let lhs = pair(&d, &z).unwrap();
                    let rhs = steinmann_core::sigma::pairing(&x, &embed(&z)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn dual_bases_round_trip() {
    for n in 1..=4 {
        for f in based_compositions(n_set(n)) {
            for from in DualBasis::ALL {
                let d = ZieDualElement::basis_vector(from, f.clone()).unwrap();
                for to in DualBasis::ALL {
                    let back = d.to_basis(to).unwrap().to_basis(from).unwrap();
                    assert_eq!(back, d);
                }
                // Coordinates agree with projecting the lift.
                assert_eq!(project(&d.lift()).unwrap(), d);
            }
        }
    }
}

#[test]
fn bracket_properties() {
    let a = comb(comp(&[&[1]]));
    let b = comb(comp(&[&[2]]));
    assert_eq!(bracket(&a, &b).unwrap(), comb(comp(&[&[1], &[2]])));
    assert!(bracket(&a, &a).is_err());
    let g = n_set(4);
    for s in g.subsets() {
        let t = g - s;
        if s.is_empty() || t.is_empty() {
            continue;
        }
        for x in comb_basis(s) {
            for y in comb_basis(t) {
                let xy = bracket(&x, &y).unwrap();
                assert_eq!(xy, bracket(&y, &x).unwrap().scale(&-Rational::one()));
                let (ux, uy) = (embed(&x), embed(&y));
                let comm = multiply(&ux, &uy).unwrap().sub(&multiply(&uy, &ux).unwrap()).unwrap();
                assert_eq!(embed(&xy), comm);
            }
        }
    }
}

#[test]
fn jacobi_identity() {
    let g = n_set(4);
    for s in g.subsets() {
        for t in (g - s).subsets() {
            let u = g - s - t;
            if s.is_empty() || t.is_empty() || u.is_empty() {
                continue;
            }
            for x in comb_basis(s) {
                for y in comb_basis(t) {
                    for z in comb_basis(u) {
                        let a = bracket(&x, &bracket(&y, &z).unwrap()).unwrap();
                        let b = bracket(&y, &bracket(&z, &x).unwrap()).unwrap();
                        let c = bracket(&z, &bracket(&x, &y).unwrap()).unwrap();
                        assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn cobracket_examples_and_duality() {
    let d = ZieDualElement::basis_vector(DualBasis::P, comp(&[&[1], &[2]])).unwrap();
    let t = cobracket(&d, set(&[1])).unwrap();
    assert_eq!(t.terms().len(), 1);
    assert_eq!(t.coeff(&comp(&[&[1]]), &comp(&[&[2]])), r(1, 1));
    let whole = ZieDualElement::basis_vector(DualBasis::P, comp(&[&[1, 2, 3]])).unwrap();
    assert!(cobracket(&whole, set(&[1])).unwrap().is_zero());
    assert!(cobracket(&d, LabelSet::EMPTY).is_err());

    for n in 2..=4 {
        let g = n_set(n);
        for basis in DualBasis::ALL {
            for f in based_compositions(g) {
                let d = ZieDualElement::basis_vector(basis, f).unwrap();
                for s in g.subsets() {
                    let t = g - s;
                    if s.is_empty() || t.is_empty() {
                        continue;
                    }
                    let cb = cobracket(&d, s).unwrap();
                    assert_eq!(cobracket(&d, t).unwrap(), cb.swap().scale(&-Rational::one()));
                    for x in comb_basis(s) {
                        for y in comb_basis(t) {
                            let lhs = cb.pair(&x, &y).unwrap();
                            let rhs = pair(&d, &bracket(&x, &y).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn three_relation_families_vanish() {
    // quasishuffles on M, shuffles on P, signed quasishuffles on C
    for n in 2..=4 {
        let g = n_set(n);
        for s in g.subsets() {
            let t = g - s;
            if s.is_empty() || t.is_empty() {
                continue;
            }
            for a in SetComposition::enumerate(s) {
                for b in SetComposition::enumerate(t) {
                    for basis in [Basis::M, Basis::P, Basis::C] {
                        let x = multiply(
                            &Element::basis_vector(basis, a.clone()),
                            &Element::basis_vector(basis, b.clone()),
                        )
                        .unwrap();
                        assert!(project(&x).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
