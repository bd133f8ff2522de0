//! Cone membership by exact feasibility.

use num::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::simplex::{feasible, LinearSystem, Relation};

/// Coefficients `c` with `Σ c_i g_i = target` and `c ≥ 0` (closed) or `c > 0`
/// (open, relative interior). With `modulo_ones` the equation is taken
/// modulo the all-ones vector, as for weights.
///
/// An empty generator list spans only the origin, which is also its relative
/// interior.
pub fn cone_member(
    target: &[Rational],
    generators: &[Vec<Rational>],
    open: bool,
    modulo_ones: bool,
) -> Result<Option<Vec<Rational>>> {
    let d = target.len();
    for g in generators {
        if g.len() != d {
            return Err(Error::Dimension { expected: d, got: g.len() });
        }
    }
    if generators.is_empty() {
        let zero =
            if modulo_ones { target.windows(2).all(|w| w[0] == w[1]) } else { target.iter().all(|v| v.is_zero()) };
        return Ok(zero.then(Vec::new));
    }
    let k = generators.len();
    let vars = k + modulo_ones as usize;
    let mut sys = LinearSystem::new(vars);
    for r in 0..d {
        let mut row: Vec<Rational> = generators.iter().map(|g| g[r].clone()).collect();
        if modulo_ones {
            row.push(Rational::from_integer(1.into()));
        }
        sys.add(row, Relation::Eq, target[r].clone())?;
    }
    for i in 0..k {
        let mut row = vec![Rational::zero(); vars];
        row[i] = Rational::from_integer(1.into());
        sys.add(row, if open { Relation::Gt } else { Relation::Ge }, Rational::zero())?;
    }
    let Some(mut x) = feasible(&sys).point() else {
        return Ok(None);
    };
    x.truncate(k);
    // Substitution check.
    for r in 0..d {
        let lhs: Rational = generators.iter().zip(&x).map(|(g, c)| &g[r] * c).sum();
        let diff = &target[r] - lhs;
        if modulo_ones {
            let first: Rational = &target[0] - generators.iter().zip(&x).map(|(g, c)| &g[0] * c).sum::<Rational>();
            assert_eq!(diff, first, "cone certificate fails");
        } else {
            assert!(diff.is_zero(), "cone certificate fails");
        }
    }
    Ok(Some(x))
}
