mod common;

use common::{n_set, r};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use steinmann_core::adjoint::{c_functional, Atlas, ChamberFunctional};
use steinmann_core::braid::PwcFunction;
use steinmann_core::json;
use steinmann_core::preposet::all_two_blocks;
use steinmann_core::sigma::{cone_in_m, Basis};
use steinmann_core::verify::random_element;
use steinmann_core::zie::{project, reduce, Tree};
use steinmann_core::{GroundSet, Preposet, SetComposition};

/// Printing, reparsing from text and printing again gives the same bytes.
fn stable(v: &Value) -> Value {
    let text = v.to_string();
    let back = json::parse_value(&text).unwrap();
    assert_eq!(back.to_string(), text);
    back
}

#[test]
fn rationals_are_strings() {
    assert_eq!(json::rational(&r(-3, 6)), json!("-1/2"));
    assert_eq!(json::rational(&r(4, 2)), json!("2"));
    assert_eq!(json::parse_rational(&json!("6/4")).unwrap(), r(3, 2));
    assert_eq!(json::parse_rational(&json!(5)).unwrap(), r(5, 1));
    assert!(json::parse_rational(&json!("1/0")).is_err());
    assert!(json::parse_rational(&json!(0.5)).is_err());
}

#[test]
fn named_ground_sets() {
    let g = GroundSet::new(["a", "b", "c"].map(String::from)).unwrap();
    let f = json::parse_composition(&g, &json!([["b"], ["c", "a"]])).unwrap();
    assert_eq!(json::composition(&g, &f), json!([["b"], ["a", "c"]]));
    assert!(json::parse_composition(&g, &json!([["d"]])).is_err());
    assert!(json::parse_composition(&g, &json!([["a"], ["a"]])).is_err());
    let numbered = GroundSet::numbered(3).unwrap();
    assert_eq!(json::parse_labels(&numbered, &json!([1, "3"])).unwrap(), common::set(&[1, 3]));
}

#[test]
fn combinatorial_round_trips() {
    let g = GroundSet::numbered(4).unwrap();
    for f in SetComposition::enumerate(n_set(4)) {
        let v = stable(&json::composition(&g, &f));
        assert_eq!(json::parse_composition(&g, &v).unwrap(), f);
    }
    for p in Preposet::enumerate(n_set(3)) {
        let v = stable(&json::preposet(&g, &p));
        assert_eq!(json::parse_preposet(&g, &v).unwrap(), p);
    }
    for b in all_two_blocks(n_set(4)) {
        let v = stable(&json::two_block(&g, &b));
        assert_eq!(json::parse_two_block(&g, &v).unwrap(), b);
    }
}

#[test]
fn element_round_trips() {
    let g = GroundSet::numbered(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for basis in Basis::ALL {
        for _ in 0..20 {
            let n = rng.gen_range(0..=4);
            let x = random_element(&mut rng, n_set(n), basis, 5);
            let v = stable(&json::element(&g, &x));
            assert_eq!(json::parse_element(&g, &v).unwrap(), x);
        }
    }
    let bad = json!({"ground": ["1"], "basis": "Z", "terms": []});
    assert!(json::parse_element(&g, &bad).is_err());
}

#[test]
fn geometric_round_trips() {
    let g = GroundSet::numbered(3).unwrap();
    for p in Preposet::enumerate(n_set(3)) {
        let f = PwcFunction::cone(&p);
        let v = stable(&json::pwc(&g, &f));
        assert_eq!(json::parse_pwc(&g, &v).unwrap(), f);
        let x = cone_in_m(&p);
        assert_eq!(json::parse_element(&g, &json::element(&g, &x)).unwrap(), x);
    }
}

#[test]
fn zie_round_trips() {
    let g = GroundSet::numbered(4).unwrap();
    for f in SetComposition::enumerate(n_set(4)) {
        let t = Tree::comb(&f).unwrap();
        let v = stable(&json::tree(&g, &t));
        assert_eq!(json::parse_tree(&g, &v).unwrap(), t);
        let z = reduce(&t).unwrap();
        let v = stable(&json::zie(&g, &z));
        assert_eq!(json::parse_zie(&g, &v).unwrap(), z);
        let d = project(&steinmann_core::sigma::Element::basis_vector(Basis::M, f)).unwrap();
        let v = stable(&json::zie_dual(&g, &d));
        assert_eq!(json::parse_zie_dual(&g, &v).unwrap(), d);
    }
}

#[test]
fn functional_round_trips() {
    let g = GroundSet::numbered(4).unwrap();
    let atlas = Atlas::new(None, 6);
    let arr = atlas.arrangement(n_set(4)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in Preposet::enumerate(n_set(4)).into_iter().step_by(7) {
        let f = c_functional(&arr, &p).unwrap().scale(&r(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
        let v = stable(&json::functional(&g, &arr, &f));
        assert_eq!(json::parse_functional(&arr, &v).unwrap(), f);
    }
    let zero = ChamberFunctional::zero(&arr);
    assert_eq!(json::parse_functional(&arr, &json::functional(&g, &arr, &zero)).unwrap(), zero);
    let bad = json!({"ground": ["1", "2", "3", "4"], "values": {"+": "1"}});
    assert!(json::parse_functional(&arr, &bad).is_err());
}
