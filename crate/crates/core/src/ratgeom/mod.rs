//! Exact rational geometry: points, pairings, linear algebra and
//! feasibility.

pub mod cone;
pub mod linalg;
pub mod simplex;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::labels::LabelSet;
use crate::rational::{int, Rational};

pub use cone::cone_member;
pub use linalg::{kernel_basis, rank, solve, sparse_rank};
pub use simplex::{feasible, maximize, Constraint, Feasibility, LinearSystem, LpOutcome, Relation};

/// A vector in `ℝI`, one coordinate per label of the ground (in position
/// order). Coweights sum to zero; weights are compared modulo constants.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    ground: LabelSet,
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(ground: LabelSet, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != ground.len() {
            return Err(Error::Dimension { expected: ground.len(), got: coords.len() });
        }
        Ok(Point { ground, coords })
    }

    pub fn zero(ground: LabelSet) -> Self {
        Point { ground, coords: vec![Rational::zero(); ground.len()] }
    }

    /// The indicator vector of `s`, a lift of the fundamental weight `λ_S`.
    pub fn weight(ground: LabelSet, s: LabelSet) -> Self {
        Point { ground, coords: ground.iter().map(|i| int(s.contains(i) as i64)).collect() }
    }

    /// The coroot `e_i - e_j`.
    pub fn coroot(ground: LabelSet, i: usize, j: usize) -> Self {
        let mut p = Point::zero(ground);
        p.coords[ground.rank_of(i).expect("label in ground")] += int(1);
        p.coords[ground.rank_of(j).expect("label in ground")] -= int(1);
        p
    }

    /// A generic coweight: `h_i = n·b^i - Σ_j b^j` over label ranks, with base
    /// `b = 3 + seed`. All subset sums are distinct, so no special hyperplane
    /// vanishes on it.
    pub fn generic_coweight(ground: LabelSet, seed: u32) -> Self {
        let n = ground.len() as i64;
        let base = 3 + seed as i64;
        let powers: Vec<i64> = (0..n).map(|k| base.pow(k as u32)).collect();
        let total: i64 = powers.iter().sum();
        Point { ground, coords: powers.iter().map(|&p| int(n * p - total)).collect() }
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    /// Coordinate at label position `i`.
    pub fn at(&self, i: usize) -> &Rational {
        &self.coords[self.ground.rank_of(i).expect("label in ground")]
    }

    pub fn sum(&self) -> Rational {
        self.coords.iter().sum()
    }

    pub fn is_coweight(&self) -> bool {
        self.sum().is_zero()
    }

    /// `Σ_{i∈S} h_i`, i.e. `⟨h, λ_S⟩`.
    pub fn sum_over(&self, s: LabelSet) -> Rational {
        self.ground.iter().zip(&self.coords).filter(|(i, _)| s.contains(*i)).map(|(_, c)| c).sum()
    }

    /// `⟨h, λ⟩ = Σ h_i λ_i` for a coweight `h`.
    pub fn pair(&self, weight: &Point) -> Result<Rational> {
        if self.ground != weight.ground {
            return Err(Error::GroundMismatch(self.ground, weight.ground));
        }
        if !self.is_coweight() {
            return Err(Error::InvalidPoint("coweight coordinates must sum to zero".into()));
        }
        Ok(self.coords.iter().zip(&weight.coords).map(|(a, b)| a * b).sum())
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        Ok(Point { ground: self.ground, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point { ground: self.ground, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// Concatenates coordinates over disjoint grounds.
    pub fn direct_sum(&self, other: &Point) -> Result<Point> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(Error::OverlappingGrounds(self.ground, other.ground));
        }
        let ground = self.ground | other.ground;
        let coords = ground
            .iter()
            .map(|i| if self.ground.contains(i) { self.at(i).clone() } else { other.at(i).clone() })
            .collect();
        Ok(Point { ground, coords })
    }

    /// Two weight lifts are equal modulo the all-ones vector.
    pub fn weight_eq(&self, other: &Point) -> bool {
        if self.ground != other.ground || self.coords.is_empty() {
            return self.ground == other.ground;
        }
        let d = &self.coords[0] - &other.coords[0];
        self.coords.iter().zip(&other.coords).all(|(a, b)| a - b == d)
    }

    pub fn max_abs(&self) -> Rational {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}
