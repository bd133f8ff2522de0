//! Products, coproducts, antipodes and the pairing of `Σ*` and `Σ`.

use num::Zero;

use crate::composition::SetComposition;
use crate::error::{Error, Result};
use crate::labels::LabelSet;
use crate::rational::{sign_power, Rational};

use super::basis::change_basis;
use super::element::{Algebra, Basis, Element, TensorElement};

/// Quasishuffles of `f` and `g` over disjoint grounds, each with its number
/// of merged lump pairs. Plain shuffles are those with zero merges.
pub fn quasishuffles(f: &SetComposition, g: &SetComposition) -> Vec<(SetComposition, usize)> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    walk(f.lumps(), g.lumps(), 0, &mut stack, &mut out);
    out
}

fn walk(
    f: &[LabelSet],
    g: &[LabelSet],
    merges: usize,
    stack: &mut Vec<LabelSet>,
    out: &mut Vec<(SetComposition, usize)>,
) {
    match (f.split_first(), g.split_first()) {
        (None, None) => out.push((SetComposition::new(stack.clone()).expect("disjoint lumps"), merges)),
        (Some((&a, fr)), None) => {
            stack.push(a);
            walk(fr, g, merges, stack, out);
            stack.pop();
        }
        (None, Some((&b, gr))) => {
            stack.push(b);
            walk(f, gr, merges, stack, out);
            stack.pop();
        }
        (Some((&a, fr)), Some((&b, gr))) => {
            stack.push(a);
            walk(fr, g, merges, stack, out);
            stack.pop();
            stack.push(b);
            walk(f, gr, merges, stack, out);
            stack.pop();
            stack.push(a | b);
            walk(fr, gr, merges + 1, stack, out);
            stack.pop();
        }
    }
}

/// `μ_{S,T}(a ⊗ b)` for elements over disjoint grounds in the same basis.
pub fn multiply(a: &Element, b: &Element) -> Result<Element> {
    if a.basis() != b.basis() {
        return Err(Error::BasisMismatch(a.basis().to_string(), b.basis().to_string()));
    }
    if !a.ground().is_disjoint(b.ground()) {
        return Err(Error::OverlappingGrounds(a.ground(), b.ground()));
    }
    let basis = a.basis();
    let mut out = Element::zero(a.ground() | b.ground(), basis);
    for (f, x) in a.iter() {
        for (g, y) in b.iter() {
            let c = x * y;
            match basis {
                Basis::H | Basis::Q => out.add_term(f.concat(g)?, c),
                Basis::M => {
                    for (h, _) in quasishuffles(f, g) {
                        out.add_term(h, c.clone());
                    }
                }
                Basis::P => {
                    for (h, merges) in quasishuffles(f, g) {
                        if merges == 0 {
                            out.add_term(h, c.clone());
                        }
                    }
                }
                Basis::C => {
                    for (h, merges) in quasishuffles(f, g) {
                        out.add_term(h, &c * sign_power(merges));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Δ_{S,T}(x)` with `T` the complement of `s`. Either side may be empty.
pub fn comultiply(x: &Element, s: LabelSet) -> Result<TensorElement> {
    let ground = x.ground();
    if !s.is_subset(ground) {
        return Err(Error::BadSplit(format!("{s} is not a subset of {ground}")));
    }
    let t = ground - s;
    let mut out = TensorElement::zero(vec![s, t], x.basis());
    for (f, c) in x.iter() {
        let survives = match x.basis() {
            Basis::M | Basis::P | Basis::C => f.is_initial(s),
            Basis::H => true,
            Basis::Q => f.is_union_of_lumps(s),
        };
        if survives {
            out.add_term(vec![f.restrict_unchecked(s), f.restrict_unchecked(t)], c.clone());
        }
    }
    Ok(out)
}

/// Applies `μ` to every term of a 2-fold tensor.
pub fn multiply_tensor(t: &TensorElement) -> Result<Element> {
    let g = t.grounds();
    if g.len() != 2 {
        return Err(Error::InvalidComposition("expected a 2-fold tensor".into()));
    }
    let mut out = Element::zero(g[0] | g[1], t.basis());
    for (keys, c) in t.iter() {
        let a = Element::basis_vector(t.basis(), keys[0].clone());
        let b = Element::basis_vector(t.basis(), keys[1].clone());
        for (h, d) in multiply(&a, &b)?.iter() {
            out.add_term(h.clone(), c * d);
        }
    }
    Ok(out)
}

/// The antipode, by the closed formulas in `M` and `H` and by change of
/// basis elsewhere.
pub fn antipode(x: &Element) -> Result<Element> {
    match x.basis() {
        Basis::M => {
            let mut out = Element::zero(x.ground(), Basis::M);
            for (f, c) in x.iter() {
                let sign = sign_power(f.len());
                for g in f.opposite().coarsenings() {
                    out.add_term(g, c * &sign);
                }
            }
            Ok(out)
        }
        Basis::H => {
            let mut out = Element::zero(x.ground(), Basis::H);
            for (f, c) in x.iter() {
                for g in f.opposite().refinements() {
                    let sign = sign_power(g.len());
                    out.add_term(g, c * sign);
                }
            }
            Ok(out)
        }
        Basis::P | Basis::C => change_basis(&antipode(&change_basis(x, Basis::M)?)?, x.basis()),
        Basis::Q => change_basis(&antipode(&change_basis(x, Basis::H)?)?, Basis::Q),
    }
}

/// `⟨a, b⟩` with `a ∈ Σ*` and `b ∈ Σ`, from `⟨M_F, H_G⟩ = δ_FG`.
pub fn pairing(a: &Element, b: &Element) -> Result<Rational> {
    if a.basis().algebra() != Algebra::Dual || b.basis().algebra() != Algebra::Primal {
        return Err(Error::CrossAlgebra { from: a.basis().to_string(), to: b.basis().to_string() });
    }
    if a.ground() != b.ground() {
        return Err(Error::GroundMismatch(a.ground(), b.ground()));
    }
    let (m, h) = (change_basis(a, Basis::M)?, change_basis(b, Basis::H)?);
    let mut total = Rational::zero();
    for (f, c) in m.iter() {
        let d = h.coeff(f);
        if !d.is_zero() {
            total += c * d;
        }
    }
    Ok(total)
}

/// Pairing of 2-fold tensors factorwise.
pub fn pairing_tensor(a: &TensorElement, b: &TensorElement) -> Result<Rational> {
    if a.grounds() != b.grounds() {
        return Err(Error::InvalidComposition("tensor grounds differ".into()));
    }
    let mut total = Rational::zero();
    for (ka, x) in a.iter() {
        for (kb, y) in b.iter() {
            let mut term = x * y;
            for (f, g) in ka.iter().zip(kb) {
                term *= pairing(
                    &Element::basis_vector(a.basis(), f.clone()),
                    &Element::basis_vector(b.basis(), g.clone()),
                )?;
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
    }
    Ok(total)
}

/// The counit: the coefficient of the empty composition.
pub fn counit(x: &Element) -> Rational {
    if x.ground().is_empty() {
        x.coeff(&SetComposition::empty())
    } else {
        Rational::zero()
    }
}

/// Whether `Δ_{S,T}(x) = 0` for every proper split.
pub fn is_primitive(x: &Element) -> Result<bool> {
    let g = x.ground();
    for s in g.subsets() {
        if s.is_empty() || s == g {
            continue;
        }
        if !comultiply(x, s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
