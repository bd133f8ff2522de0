//! Dynkin elements of adjoint chambers.

use num::{One, Zero};

use crate::composition::SetComposition;
use crate::error::Result;
use crate::preposet::Preposet;
use crate::rational::{sign_power, Rational};
use crate::sigma::{tits_h, Basis, Element};

use super::arrangement::Arrangement;

/// `č_F` at one chamber.
pub fn c_value(arr: &Arrangement, f: &SetComposition, id: usize) -> bool {
    let c = arr.chamber(id);
    Preposet::of_composition(f).coprobes().iter().all(|b| {
        let k = arr.hyperplane_of(b.s()).expect("proper split");
        c.positive(k) == (arr.hyperplanes()[k] == b.s())
    })
}

/// `m̌_F` at one chamber.
pub fn m_value(arr: &Arrangement, f: &SetComposition, id: usize) -> Rational {
    let mut v = Rational::zero();
    for g in f.coarsenings() {
        if c_value(arr, &g, id) {
            v += sign_power(f.len() - g.len());
        }
    }
    v
}

/// `D_C = Σ_F m̌_F(C) H_F`.
pub fn dynkin(arr: &Arrangement, id: usize) -> Element {
    let mut out = Element::zero(arr.ground(), Basis::H);
    for f in SetComposition::enumerate(arr.ground()) {
        let v = m_value(arr, &f, id);
        out.add_term(f, v);
    }
    out
}

/// The Epstein–Glaser–Stora product `∏ (H_(I) - H_(T,S))` over the signature
/// `(S,T)` of the chamber, folded left to right in hyperplane order.
pub fn egs_expansion(arr: &Arrangement, id: usize) -> Result<Element> {
    let ground = arr.ground();
    let whole = SetComposition::one_lump(ground);
    let mut acc = Element::basis_vector(Basis::H, whole.clone());
    for b in arr.signature_blocks(id) {
        let mut factor = Element::basis_vector(Basis::H, whole.clone());
        factor.add_term(b.opposite().composition(), -Rational::one());
        acc = tits_h(&acc, &factor)?;
    }
    Ok(acc)
}
