//! Discrete derivatives across special hyperplanes, the Eulerian element and
//! the expansion of Steinmann functionals in the `p̌` basis.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num::{One, Signed, Zero};

use crate::composition::SetComposition;
use crate::error::{Error, Result};
use crate::labels::LabelSet;
use crate::ratgeom::{solve, Point};
use crate::rational::{int, Rational};
use crate::zie::based_compositions;

use super::arrangement::{Arrangement, Atlas};
use super::functional::{is_steinmann, p_functional, ChamberFunctional};

/// A functional on pairs of chambers over `S` and over `T`:
/// `values[i][j]` at chamber `i` of `S` and chamber `j` of `T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChamberTensor {
    s: LabelSet,
    t: LabelSet,
    values: Vec<Vec<Rational>>,
}

impl ChamberTensor {
    pub fn zero(a: &Arrangement, b: &Arrangement) -> Self {
        ChamberTensor { s: a.ground(), t: b.ground(), values: vec![vec![Rational::zero(); b.len()]; a.len()] }
    }

    /// `f ⊗ g`.
    pub fn product(f: &ChamberFunctional, g: &ChamberFunctional) -> Self {
        let values = f.values().iter().map(|a| g.values().iter().map(|b| a * b).collect()).collect();
        ChamberTensor { s: f.ground(), t: g.ground(), values }
    }

    pub fn grounds(&self) -> (LabelSet, LabelSet) {
        (self.s, self.t)
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.values[i][j]
    }

    pub fn add(&self, other: &ChamberTensor) -> Result<ChamberTensor> {
        if self.grounds() != other.grounds() {
            return Err(Error::GroundMismatch(self.s | self.t, other.s | other.t));
        }
        let values =
            self.values.iter().zip(&other.values).map(|(r, q)| r.iter().zip(q).map(|(a, b)| a + b).collect()).collect();
        Ok(ChamberTensor { s: self.s, t: self.t, values })
    }

    pub fn scale(&self, k: &Rational) -> ChamberTensor {
        let values = self.values.iter().map(|r| r.iter().map(|a| a * k).collect()).collect();
        ChamberTensor { s: self.s, t: self.t, values }
    }

    /// The flip to `T ⊗ S`.
    pub fn swap(&self) -> ChamberTensor {
        let rows = self.values.first().map_or(0, |r| r.len());
        let values = (0..rows).map(|j| self.values.iter().map(|r| r[j].clone()).collect()).collect();
        ChamberTensor { s: self.t, t: self.s, values }
    }

    /// Contracts the right factor with a chamber combination over `T`.
    pub fn eval_right(&self, arr_s: &Arrangement, e: &[Rational]) -> Result<ChamberFunctional> {
        let values = self.values.iter().map(|r| r.iter().zip(e).map(|(a, b)| a * b).sum()).collect();
        ChamberFunctional::new(arr_s, values)
    }

    /// The right factor at chamber `i` of `S`, as a functional over `T`.
    pub fn slice_left(&self, arr_t: &Arrangement, i: usize) -> Result<ChamberFunctional> {
        ChamberFunctional::new(arr_t, self.values[i].clone())
    }
}

/// A point on the flat `H_(S|T)` from witnesses over `S` and `T`, strict on
/// every other hyperplane; `h_S ⊕ t·h_T` for the first suitable `t ≥ seed+1`.
fn flat_point(arr: &Arrangement, k: usize, hs: &Point, ht: &Point, seed: u32) -> Result<Point> {
    for t in (seed as i64 + 1)..(seed as i64 + 1000) {
        let h = hs.direct_sum(&ht.scale(&int(t)))?;
        let strict = arr.hyperplanes().iter().enumerate().all(|(c, &u)| c == k || !h.sum_over(u).is_zero());
        if strict {
            return Ok(h);
        }
    }
    Err(Error::InvalidPoint("no generic point found on the flat".into()))
}

/// `∂_{[S,T]} f` without checking the Steinmann relations; `seed` selects the
/// points used on the hyperplane.
pub fn derivative_with_seed(atlas: &Atlas, f: &ChamberFunctional, s: LabelSet, seed: u32) -> Result<ChamberTensor> {
    let ground = f.ground();
    let t = ground - s;
    if s.is_empty() || t.is_empty() || !s.is_subset(ground) {
        return Err(Error::BadSplit(format!("{s} does not split {ground} into two non-empty parts")));
    }
    let arr = atlas.arrangement(ground)?;
    let (arr_s, arr_t) = (atlas.arrangement(s)?, atlas.arrangement(t)?);
    let k = arr.hyperplane_of(s).expect("proper split");
    let w = Point::coroot(ground, s.lowest().unwrap(), t.lowest().unwrap());
    let mut out = ChamberTensor::zero(&arr_s, &arr_t);
    for (i, cs) in arr_s.chambers().iter().enumerate() {
        for (j, ct) in arr_t.chambers().iter().enumerate() {
            let h = flat_point(&arr, k, cs.witness(), ct.witness(), seed)?;
            let mut eps: Option<Rational> = None;
            for (c, &u) in arr.hyperplanes().iter().enumerate() {
                if c == k {
                    continue;
                }
                let bound = h.sum_over(u).abs() / (int(2) * w.sum_over(u).abs() + int(1));
                eps = Some(match eps {
                    Some(e) if e <= bound => e,
                    _ => bound,
                });
            }
            let eps = eps.unwrap_or_else(Rational::one);
            let plus = arr.locate(&h.add(&w.scale(&eps))?)?;
            let minus = arr.locate(&h.add(&w.scale(&-eps))?)?;
            out.values[i][j] = f.at(plus) - f.at(minus);
        }
    }
    Ok(out)
}

/// The discrete derivative `∂_{[S,T]} f` of a Steinmann functional: the jump of
/// `f` across `H_(S|T)` from the side `⟨h, λ_S⟩ < 0` to `⟨h, λ_S⟩ > 0`, as a
/// function of the facet `C_S × C_T`.
pub fn derivative(atlas: &Atlas, f: &ChamberFunctional, s: LabelSet) -> Result<ChamberTensor> {
    if !is_steinmann(&atlas.relations(f.ground())?, f) {
        return Err(Error::NotSteinmann);
    }
    derivative_with_seed(atlas, f, s, 0)
}

/// A chamber combination `Ě_I` with `p̌_F(Ě_I) = [F = (I)]` for every
/// `F ∈ Σ*_{i0}`.
pub fn eulerian_element(arr: &Arrangement) -> Result<Vec<Rational>> {
    let ground = arr.ground();
    if ground.is_empty() {
        return Err(Error::EmptyGround);
    }
    let based = based_compositions(ground);
    let whole = SetComposition::one_lump(ground);
    let mut rows = Vec::with_capacity(based.len());
    let mut rhs = Vec::with_capacity(based.len());
    for f in &based {
        rows.push(p_functional(arr, f)?.values().to_vec());
        rhs.push(if *f == whole { Rational::one() } else { Rational::zero() });
    }
    solve(&rows, &rhs, arr.len())?.ok_or_else(|| Error::InvalidPoint("the Eulerian system is inconsistent".into()))
}

/// Chambers lying over a facet of the root polytope `conv{e_i - e_j}`: the
/// facet with normal `λ_U`, `U = {i : h_i > 0}`, grouped by `|U|`.
pub fn chambers_by_facet_size(arr: &Arrangement) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (id, c) in arr.chambers().iter().enumerate() {
        let k = c.witness().coords().iter().filter(|x| x.is_positive()).count();
        out.entry(k).or_default().push(id);
    }
    out
}

/// Whether a chamber combination satisfies the defining property of `Ě_I`
/// for every composition (not only the based ones).
pub fn is_eulerian(arr: &Arrangement, e: &[Rational]) -> Result<bool> {
    let whole = SetComposition::one_lump(arr.ground());
    for f in SetComposition::enumerate(arr.ground()) {
        let v = p_functional(arr, &f)?.eval(e)?;
        if v != if f == whole { Rational::one() } else { Rational::zero() } {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a_F = ∂_{[F]} f (Ě_{S_1} ⊗ … ⊗ Ě_{S_k})` for every `F ∈ Σ_{i0}`, peeling
/// the last lump with a derivative and evaluating it at `Ě`.
pub fn comb_coefficients(atlas: &Atlas, f: &ChamberFunctional) -> Result<BTreeMap<SetComposition, Rational>> {
    let ground = f.ground();
    if ground.is_empty() {
        return Err(Error::EmptyGround);
    }
    if !is_steinmann(&atlas.relations(ground)?, f) {
        return Err(Error::NotSteinmann);
    }
    let mut eulerian: HashMap<LabelSet, Vec<Rational>> = HashMap::new();
    let mut out = BTreeMap::new();
    peel(atlas, f, &mut Vec::new(), &mut eulerian, &mut out)?;
    Ok(out)
}

fn eulerian_of<'a>(
    atlas: &Atlas,
    g: LabelSet,
    memo: &'a mut HashMap<LabelSet, Vec<Rational>>,
) -> Result<&'a Vec<Rational>> {
    if let Entry::Vacant(slot) = memo.entry(g) {
        slot.insert(eulerian_element(&*atlas.arrangement(g)?)?);
    }
    Ok(&memo[&g])
}

fn peel(
    atlas: &Atlas,
    g: &ChamberFunctional,
    suffix: &mut Vec<LabelSet>,
    memo: &mut HashMap<LabelSet, Vec<Rational>>,
    out: &mut BTreeMap<SetComposition, Rational>,
) -> Result<()> {
    let r = g.ground();
    let a = g.eval(eulerian_of(atlas, r, memo)?)?;
    if !a.is_zero() {
        let lumps: Vec<LabelSet> = std::iter::once(r).chain(suffix.iter().rev().copied()).collect();
        out.insert(SetComposition::new(lumps)?, a);
    }
    let i0 = r.lowest().expect("non-empty");
    let arr_rest_of = |rest: LabelSet| atlas.arrangement(rest);
    for last in r.subsets() {
        if last.is_empty() || last.contains(i0) {
            continue;
        }
        let rest = r - last;
        let d = derivative_with_seed(atlas, g, rest, 0)?;
        let e = eulerian_of(atlas, last, memo)?.clone();
        let h = d.eval_right(&*arr_rest_of(rest)?, &e)?;
        if h.is_zero() {
            continue;
        }
        suffix.push(last);
        peel(atlas, &h, suffix, memo, out)?;
        suffix.pop();
    }
    Ok(())
}

/// `Σ a_F p̌_F`.
pub fn reconstruct(arr: &Arrangement, coeffs: &BTreeMap<SetComposition, Rational>) -> Result<ChamberFunctional> {
    let mut out = ChamberFunctional::zero(arr);
    for (f, a) in coeffs {
        if f.ground() != arr.ground() {
            return Err(Error::GroundMismatch(f.ground(), arr.ground()));
        }
        out.add_scaled(&p_functional(arr, f)?, a);
    }
    Ok(out)
}
