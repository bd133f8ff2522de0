use std::collections::BTreeMap;

use num::{One, Zero};
use steinmann_core::adjoint::{c_of, steinmann_coords, Atlas, ChamberFunctional, ChamberTensor};
use steinmann_core::ratgeom::Point;
use steinmann_core::zie::{DualBasis, ZieDualElement};
use steinmann_core::{LabelSet, Preposet, Rational, SetComposition};

/// Coroots `e_i - e_j` for the pairs `(i, j)` of a preposet.
pub fn coroots(p: &Preposet) -> Vec<Vec<Rational>> {
    p.pairs().into_iter().map(|(i, j)| Point::coroot(p.ground(), i, j).into_coords()).collect()
}

/// `č_{F|S} ⊗ č_{F|T}` if `S` is initial in `F`, minus the same if `T` is.
pub fn derivative_formula(a: &Atlas, f: &SetComposition, s: LabelSet) -> ChamberTensor {
    let t = f.ground() - s;
    let (arr_s, arr_t) = (a.arrangement(s).unwrap(), a.arrangement(t).unwrap());
    let term = || {
        ChamberTensor::product(
            &c_of(&arr_s, &f.restrict(s).unwrap()).unwrap(),
            &c_of(&arr_t, &f.restrict(t).unwrap()).unwrap(),
        )
    };
    let mut out = ChamberTensor::zero(&arr_s, &arr_t);
    if f.is_initial(s) {
        out = out.add(&term()).unwrap();
    }
    if f.is_initial(t) {
        out = out.add(&term().scale(&-Rational::one())).unwrap();
    }
    out
}

/// Coordinates of a tensor of Steinmann functionals in `č ⊗ č`, converted to
/// `p ⊗ p`.
pub fn tensor_p_coords(a: &Atlas, d: &ChamberTensor) -> BTreeMap<(SetComposition, SetComposition), Rational> {
    let (s, t) = d.grounds();
    let (arr_s, arr_t) = (a.arrangement(s).unwrap(), a.arrangement(t).unwrap());
    // Right factor first: for each chamber over S, c-coordinates over T.
    let mut by_left: BTreeMap<SetComposition, Vec<Rational>> = BTreeMap::new();
    for i in 0..arr_s.len() {
        let row = steinmann_coords(&arr_t, &d.slice_left(&arr_t, i).unwrap()).unwrap().unwrap();
        for (g, c) in row {
            by_left.entry(g).or_insert_with(|| vec![Rational::zero(); arr_s.len()])[i] = c;
        }
    }
    let mut out = BTreeMap::new();
    for (g, column) in by_left {
        let left = steinmann_coords(&arr_s, &ChamberFunctional::new(&arr_s, column).unwrap()).unwrap().unwrap();
        let right_p = ZieDualElement::basis_vector(DualBasis::C, g).unwrap().to_basis(DualBasis::P).unwrap();
        for (f, c) in left {
            let left_p = ZieDualElement::basis_vector(DualBasis::C, f).unwrap().to_basis(DualBasis::P).unwrap();
            for (x, u) in left_p.terms() {
                for (y, v) in right_p.terms() {
                    *out.entry((x.clone(), y.clone())).or_insert_with(Rational::zero) += &c * u * v;
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}
