//! Piecewise-constant functions on the braid arrangement.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::composition::SetComposition;
use crate::error::{Error, Result};
use crate::labels::LabelSet;
use crate::preposet::Preposet;
use crate::ratgeom::{cone_member, Point};
use crate::rational::{int, Rational};
use crate::sigma::{change_basis, Basis, Element};

/// The braid signature of a weight: its level sets by decreasing value.
pub fn braid_signature(lambda: &Point) -> SetComposition {
    let ground = lambda.ground();
    let mut labels: Vec<usize> = ground.iter().collect();
    labels.sort_by(|&a, &b| lambda.at(b).cmp(lambda.at(a)).then(a.cmp(&b)));
    let mut lumps: Vec<LabelSet> = Vec::new();
    let mut last: Option<&Rational> = None;
    for i in labels {
        let v = lambda.at(i);
        match (last, lumps.last_mut()) {
            (Some(prev), Some(lump)) if prev == v => *lump = *lump | LabelSet::singleton(i),
            _ => lumps.push(LabelSet::singleton(i)),
        }
        last = Some(v);
    }
    SetComposition::new(lumps).expect("level sets are disjoint")
}

/// Interior point of the face of `F = (S_1, …, S_k)`: value `k - j + 1` on
/// `S_j`.
pub fn face_witness(f: &SetComposition) -> Point {
    let ground = f.ground();
    let k = f.len() as i64;
    let coords = ground.iter().map(|i| int(k - f.lump_of(i).unwrap() as i64)).collect();
    Point::new(ground, coords).expect("one coordinate per label")
}

/// A function on `T^I` constant on braid faces, in the face basis `M̂_F`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PwcFunction {
    ground: LabelSet,
    coeffs: BTreeMap<SetComposition, Rational>,
}

impl PwcFunction {
    pub fn zero(ground: LabelSet) -> Self {
        PwcFunction { ground, coeffs: BTreeMap::new() }
    }

    /// The constant function 1, equal to `cone(∅)`.
    pub fn one(ground: LabelSet) -> Self {
        PwcFunction::cone(&Preposet::discrete(ground))
    }

    /// The indicator `M̂_F` of one face.
    pub fn face(f: &SetComposition) -> Self {
        let mut p = PwcFunction::zero(f.ground());
        p.coeffs.insert(f.clone(), Rational::one());
        p
    }

    /// `Ĉ_p = Σ_{F ≤ p} M̂_F`.
    pub fn cone(p: &Preposet) -> Self {
        let coeffs = p.total_extensions().into_iter().map(|f| (f, Rational::one())).collect();
        PwcFunction { ground: p.ground(), coeffs }
    }

    /// The geometric image of an element of `Σ*`, via `M_F ↦ M̂_F`.
    pub fn realize(x: &Element) -> Result<Self> {
        let m = change_basis(x, Basis::M)?;
        Ok(PwcFunction { ground: m.ground(), coeffs: m.terms().clone() })
    }

    pub fn from_coeffs<I: IntoIterator<Item = (SetComposition, Rational)>>(ground: LabelSet, it: I) -> Result<Self> {
        let mut p = PwcFunction::zero(ground);
        for (f, c) in it {
            if f.ground() != ground {
                return Err(Error::GroundMismatch(f.ground(), ground));
            }
            if !c.is_zero() {
                *p.coeffs.entry(f).or_insert_with(Rational::zero) += c;
            }
        }
        p.coeffs.retain(|_, c| !c.is_zero());
        Ok(p)
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn coeffs(&self) -> &BTreeMap<SetComposition, Rational> {
        &self.coeffs
    }

    pub fn eval(&self, lambda: &Point) -> Result<Rational> {
        if lambda.ground() != self.ground {
            return Err(Error::GroundMismatch(lambda.ground(), self.ground));
        }
        Ok(self.coeffs.get(&braid_signature(lambda)).cloned().unwrap_or_else(Rational::zero))
    }

    /// Pointwise product; faces are disjointly supported, so coordinatewise.
    pub fn pointwise_product(&self, other: &PwcFunction) -> Result<PwcFunction> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(f, a)| other.coeffs.get(f).map(|b| (f.clone(), a * b)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(PwcFunction { ground: self.ground, coeffs })
    }
}

/// Checks that `Ĉ_p` is the indicator of the cone generated by the weights
/// `λ_ST` with `(S,T) ≤ p`, at the interior point of every face.
pub fn support_matches_cone(p: &Preposet) -> Result<bool> {
    let ground = p.ground();
    let cone = PwcFunction::cone(p);
    let gens: Vec<Vec<Rational>> = p.coprobes().iter().map(|b| Point::weight(ground, b.s()).into_coords()).collect();
    for f in SetComposition::enumerate(ground) {
        let w = face_witness(&f);
        let inside = !cone.eval(&w)?.is_zero();
        let member = cone_member(w.coords(), &gens, false, true)?.is_some();
        if inside != member {
            return Ok(false);
        }
    }
    Ok(true)
}
