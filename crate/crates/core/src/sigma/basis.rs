//! Changes of basis, the preposet cones `C_p`, the Tits product and the
//! Eulerian series.

use num::Zero;

use crate::composition::SetComposition;
use crate::error::{Error, Result};
use crate::labels::LabelSet;
use crate::preposet::Preposet;
use crate::rational::{from_u128, sign_power, Rational};

use super::element::{Basis, Element};

fn one_over(k: u128) -> Rational {
    Rational::from_integer(1.into()) / from_u128(k)
}

/// Expresses `x` in the `target` basis of the same algebra.
pub fn change_basis(x: &Element, target: Basis) -> Result<Element> {
    let from = x.basis();
    if from.algebra() != target.algebra() {
        return Err(Error::CrossAlgebra { from: from.to_string(), to: target.to_string() });
    }
    if from == target {
        return Ok(x.clone());
    }
    match (from, target) {
        (Basis::P, Basis::M) => Ok(expand(x, Basis::M, |f| {
            f.coarsenings()
                .into_iter()
                .map(|g| {
                    let (_, fact) = g.quotient_factors(f).expect("coarsening");
                    (g, one_over(fact))
                })
                .collect()
        })),
        (Basis::M, Basis::P) => Ok(expand(x, Basis::P, |f| {
            f.coarsenings()
                .into_iter()
                .map(|g| {
                    let (l, _) = g.quotient_factors(f).expect("coarsening");
                    let c = sign_power(f.len() - g.len()) * one_over(l);
                    (g, c)
                })
                .collect()
        })),
        (Basis::C, Basis::M) => Ok(expand(x, Basis::M, |f| {
            f.coarsenings().into_iter().map(|g| (g, Rational::from_integer(1.into()))).collect()
        })),
        (Basis::M, Basis::C) => Ok(expand(x, Basis::C, |f| {
            f.coarsenings()
                .into_iter()
                .map(|g| {
                    let c = sign_power(f.len() - g.len());
                    (g, c)
                })
                .collect()
        })),
        (Basis::P, Basis::C) | (Basis::C, Basis::P) => change_basis(&change_basis(x, Basis::M)?, target),
        (Basis::H, Basis::Q) => Ok(expand(x, Basis::Q, |f| {
            f.refinements()
                .into_iter()
                .map(|g| {
                    let (_, fact) = f.quotient_factors(&g).expect("refinement");
                    (g, one_over(fact))
                })
                .collect()
        })),
        (Basis::Q, Basis::H) => Ok(expand(x, Basis::H, |f| {
            f.refinements()
                .into_iter()
                .map(|g| {
                    let (l, _) = f.quotient_factors(&g).expect("refinement");
                    let c = sign_power(g.len() - f.len()) * one_over(l);
                    (g, c)
                })
                .collect()
        })),
        _ => unreachable!("same-algebra pairs are covered above"),
    }
}

fn expand<F>(x: &Element, target: Basis, mut image: F) -> Element
where
    F: FnMut(&SetComposition) -> Vec<(SetComposition, Rational)>,
{
    let mut out = Element::zero(x.ground(), target);
    for (f, c) in x.iter() {
        for (g, d) in image(f) {
            out.add_term(g, c * d);
        }
    }
    out
}

/// `C_p = Σ_{F ≤ p} M_F`, in the `M` basis.
pub fn cone_in_m(p: &Preposet) -> Element {
    let mut out = Element::zero(p.ground(), Basis::M);
    for f in p.total_extensions() {
        out.add_term(f, Rational::from_integer(1.into()));
    }
    out
}

/// `C_p = Σ_{G ⪯ p} (-1)^{l(p)-l(G)} C_G`, in the `C` basis.
pub fn cone_element(p: &Preposet) -> Element {
    let lp = p.num_lumps();
    let mut out = Element::zero(p.ground(), Basis::C);
    for g in p.preceq_compositions() {
        let sign = if (lp + g.len()).is_multiple_of(2) { 1 } else { -1 };
        out.add_term(g, Rational::from_integer(sign.into()));
    }
    out
}

/// The Tits product extended bilinearly to `Σ` (`H` basis).
pub fn tits_h(a: &Element, b: &Element) -> Result<Element> {
    if a.basis() != Basis::H || b.basis() != Basis::H {
        return Err(Error::BasisMismatch("H".into(), format!("{}/{}", a.basis(), b.basis())));
    }
    if a.ground() != b.ground() {
        return Err(Error::GroundMismatch(a.ground(), b.ground()));
    }
    let mut out = Element::zero(a.ground(), Basis::H);
    for (f, x) in a.iter() {
        for (g, y) in b.iter() {
            out.add_term(f.tits(g)?, x * y);
        }
    }
    Ok(out)
}

/// `E_I = -Σ_F (-1)^{l(F)}/l(F) H_F`, with `E_∅ = 0`.
pub fn eulerian_series(ground: LabelSet) -> Element {
    let mut out = Element::zero(ground, Basis::H);
    if ground.is_empty() {
        return out;
    }
    for f in SetComposition::enumerate(ground) {
        let c = -sign_power(f.len()) / Rational::from_integer((f.len() as i64).into());
        if !c.is_zero() {
            out.add_term(f, c);
        }
    }
    out
}
