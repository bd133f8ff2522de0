//! Functionals on adjoint chambers: the characteristic functionals of
//! permutohedral tangent cones, their Möbius inversions, and the Steinmann
//! relations.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::composition::SetComposition;
use crate::error::{Error, Result};
use crate::labels::LabelSet;
use crate::preposet::Preposet;
use crate::ratgeom::{feasible, rank, solve, sparse_rank};
use crate::rational::{from_u128, int, sign_power, Rational};
use crate::zie::based_compositions;

use super::arrangement::{face_system, Arrangement};

/// A rational value on every chamber of one arrangement, indexed by chamber
/// id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChamberFunctional {
    ground: LabelSet,
    values: Vec<Rational>,
}

impl ChamberFunctional {
    pub fn zero(arr: &Arrangement) -> Self {
        ChamberFunctional { ground: arr.ground(), values: vec![Rational::zero(); arr.len()] }
    }

    pub fn new(arr: &Arrangement, values: Vec<Rational>) -> Result<Self> {
        if values.len() != arr.len() {
            return Err(Error::Dimension { expected: arr.len(), got: values.len() });
        }
        Ok(ChamberFunctional { ground: arr.ground(), values })
    }

    /// The indicator of a single chamber.
    pub fn indicator(arr: &Arrangement, id: usize) -> Self {
        let mut f = ChamberFunctional::zero(arr);
        f.values[id] = Rational::one();
        f
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, id: usize) -> &Rational {
        &self.values[id]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &ChamberFunctional) -> Result<ChamberFunctional> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ChamberFunctional { ground: self.ground, values })
    }

    pub fn scale(&self, k: &Rational) -> ChamberFunctional {
        ChamberFunctional { ground: self.ground, values: self.values.iter().map(|v| v * k).collect() }
    }

    pub(crate) fn add_scaled(&mut self, other: &ChamberFunctional, k: &Rational) {
        debug_assert_eq!(self.values.len(), other.values.len());
        if k.is_zero() {
            return;
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b * k;
        }
    }

    /// `Σ_C f(C) e_C` for a chamber combination `e`.
    pub fn eval(&self, e: &[Rational]) -> Result<Rational> {
        if e.len() != self.values.len() {
            return Err(Error::Dimension { expected: self.values.len(), got: e.len() });
        }
        Ok(self.values.iter().zip(e).map(|(a, b)| a * b).sum())
    }

    fn check(&self, other: &ChamberFunctional) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        if self.values.len() != other.values.len() {
            return Err(Error::Dimension { expected: self.values.len(), got: other.values.len() });
        }
        Ok(())
    }
}

fn same_ground(arr: &Arrangement, g: LabelSet) -> Result<()> {
    if arr.ground() != g {
        return Err(Error::GroundMismatch(g, arr.ground()));
    }
    Ok(())
}

/// `č_p`: 1 on chambers whose signature contains every coprobe of `p`, i.e.
/// whose witness lies in the cone spanned by the coroots of `p`.
pub fn c_functional(arr: &Arrangement, p: &Preposet) -> Result<ChamberFunctional> {
    same_ground(arr, p.ground())?;
    let (mut mask, mut want) = (0u64, 0u64);
    for b in p.coprobes().iter() {
        let k = arr.hyperplane_of(b.s()).expect("proper split");
        let bit = ((arr.hyperplanes()[k] == b.s()) as u64) << k;
        if mask >> k & 1 == 1 && want & (1 << k) != bit {
            // Both sides of one hyperplane: the dual cone has empty interior.
            return Ok(ChamberFunctional::zero(arr));
        }
        mask |= 1 << k;
        want |= bit;
    }
    let values = arr.chambers().iter().map(|c| int((c.signs() & mask == want) as i64)).collect();
    Ok(ChamberFunctional { ground: arr.ground(), values })
}

/// `č_F` for a composition.
pub fn c_of(arr: &Arrangement, f: &SetComposition) -> Result<ChamberFunctional> {
    c_functional(arr, &Preposet::of_composition(f))
}

/// `m̌_F = Σ_{G ≤ F} (-1)^{l(F)-l(G)} č_G`.
pub fn m_functional(arr: &Arrangement, f: &SetComposition) -> Result<ChamberFunctional> {
    same_ground(arr, f.ground())?;
    let mut out = ChamberFunctional::zero(arr);
    for g in f.coarsenings() {
        out.add_scaled(&c_of(arr, &g)?, &sign_power(f.len() - g.len()));
    }
    Ok(out)
}

/// `p̌_F = Σ_{G ≤ F} 1/(F/G)! m̌_G`.
pub fn p_functional(arr: &Arrangement, f: &SetComposition) -> Result<ChamberFunctional> {
    same_ground(arr, f.ground())?;
    let mut out = ChamberFunctional::zero(arr);
    for g in f.coarsenings() {
        let (_, fact) = g.quotient_factors(f)?;
        out.add_scaled(&m_functional(arr, &g)?, &(Rational::one() / from_u128(fact)));
    }
    Ok(out)
}

/// A four-term relation `f(++) - f(+-) - f(-+) + f(--) = 0` around a face of
/// codimension two lying on exactly two hyperplanes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SteinmannRelation {
    /// The two hyperplanes, by index.
    pub hyperplanes: (usize, usize),
    /// Chamber ids with signs, in the order `++`, `+-`, `-+`, `--`.
    pub terms: [(usize, i8); 4],
}

impl SteinmannRelation {
    pub fn apply(&self, f: &ChamberFunctional) -> Rational {
        self.terms.iter().map(|&(id, s)| f.at(id) * int(s as i64)).sum()
    }
}

/// Pairs of hyperplanes whose intersection lies in no third one: `λ_c` is not
/// in the span of `λ_a`, `λ_b` and the all-ones vector.
pub fn transversal_pairs(arr: &Arrangement) -> Vec<(usize, usize)> {
    let ground = arr.ground();
    let vec_of = |s: LabelSet| -> Vec<Rational> { ground.iter().map(|i| int(s.contains(i) as i64)).collect() };
    let hs = arr.hyperplanes();
    let n = ground.len();
    let mut out = Vec::new();
    for a in 0..hs.len() {
        for b in a + 1..hs.len() {
            let base = vec![vec_of(hs[a]), vec_of(hs[b]), vec_of(ground)];
            let r = rank(&base, n);
            let clean = (0..hs.len()).filter(|&c| c != a && c != b).all(|c| {
                let mut rows = base.clone();
                rows.push(vec_of(hs[c]));
                rank(&rows, n) > r
            });
            if clean {
                out.push((a, b));
            }
        }
    }
    out
}

/// All Steinmann relations of the arrangement, one per codimension-two face,
/// sorted by hyperplane pair and then by the `++` chamber.
pub fn steinmann_relations(arr: &Arrangement) -> Vec<SteinmannRelation> {
    let ground = arr.ground();
    let mut out = Vec::new();
    for (a, b) in transversal_pairs(arr) {
        let (ba, bb) = (1u64 << a, 1u64 << b);
        for (id, c) in arr.chambers().iter().enumerate() {
            let s = c.signs();
            if s & ba == 0 || s & bb == 0 {
                continue;
            }
            let ids = (arr.id_of(s ^ bb), arr.id_of(s ^ ba), arr.id_of(s ^ ba ^ bb));
            let (Some(pm), Some(mp), Some(mm)) = ids else { continue };
            if !feasible(&face_system(ground, arr.hyperplanes(), s, &[a, b])).is_feasible() {
                continue;
            }
            out.push(SteinmannRelation { hyperplanes: (a, b), terms: [(id, 1), (pm, -1), (mp, -1), (mm, 1)] });
        }
    }
    out
}

/// Relation vectors as rows over the chambers.
pub fn relation_matrix(arr: &Arrangement, rels: &[SteinmannRelation]) -> Vec<Vec<Rational>> {
    rels.iter()
        .map(|r| {
            let mut row = vec![Rational::zero(); arr.len()];
            for &(id, s) in &r.terms {
                row[id] += int(s as i64);
            }
            row
        })
        .collect()
}

pub fn relation_rank(_arr: &Arrangement, rels: &[SteinmannRelation]) -> usize {
    sparse_rank(rels.iter().map(|r| r.terms.iter().map(|&(id, s)| (id, int(s as i64))).collect()))
}

/// `dim Žie[I] = #chambers - rank(Stein)`.
pub fn stein_quotient_dim(arr: &Arrangement) -> usize {
    arr.len() - relation_rank(arr, &steinmann_relations(arr))
}

pub fn is_steinmann(rels: &[SteinmannRelation], f: &ChamberFunctional) -> bool {
    rels.iter().all(|r| r.apply(f).is_zero())
}

/// Solves `f = Σ a_F č_F` over `F ∈ Σ*_{i0}`; `None` if `f` is not Steinmann.
pub fn steinmann_coords(
    arr: &Arrangement,
    f: &ChamberFunctional,
) -> Result<Option<BTreeMap<SetComposition, Rational>>> {
    same_ground(arr, f.ground())?;
    let based = based_compositions(arr.ground());
    let columns: Vec<ChamberFunctional> = based.iter().map(|g| c_of(arr, g)).collect::<Result<_>>()?;
    let rows: Vec<Vec<Rational>> =
        (0..arr.len()).map(|id| columns.iter().map(|c| c.at(id).clone()).collect()).collect();
    let sol = solve(&rows, f.values(), based.len())?;
    Ok(sol.map(|x| based.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect()))
}

/// Rebuilds `Σ a_F č_F`.
pub fn from_c_coords(arr: &Arrangement, coords: &BTreeMap<SetComposition, Rational>) -> Result<ChamberFunctional> {
    let mut out = ChamberFunctional::zero(arr);
    for (f, a) in coords {
        out.add_scaled(&c_of(arr, f)?, a);
    }
    Ok(out)
}
