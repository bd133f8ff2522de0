//! Exact Gaussian elimination.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Reduced row echelon form with pivots chosen left to right, top to bottom.
/// Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][col];
        for v in m[r].iter_mut().skip(col) {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut m[r]);
        let nz: Vec<usize> = (col..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        }
        m[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Rank of a sparse matrix given as `(column, value)` rows, by incremental
/// echelon reduction keyed on leading columns.
pub fn sparse_rank<I>(rows: I) -> usize
where
    I: IntoIterator<Item = Vec<(usize, Rational)>>,
{
    let mut basis: HashMap<usize, BTreeMap<usize, Rational>> = HashMap::new();
    for r in rows {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in r {
            *row.entry(c).or_insert_with(Rational::zero) += v;
        }
        row.retain(|_, v| !v.is_zero());
        while let Some((lead, f)) = row.iter().next().map(|(c, v)| (*c, v.clone())) {
            let Some(piv) = basis.get(&lead) else {
                let inv = Rational::one() / f;
                row.values_mut().for_each(|x| *x *= &inv);
                basis.insert(lead, row);
                break;
            };
            for (c, x) in piv {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }
    basis.len()
}

/// A basis of `{x : Ax = 0}`, one vector per free column, in column order.
pub fn kernel_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (m, pivots) = rref(rows, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..ncols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `Ax = b` (free variables set to zero), or `None`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Result<Option<Vec<Rational>>> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), got: b.len() });
    }
    let mut aug = Vec::with_capacity(a.len());
    for (row, rhs) in a.iter().zip(b) {
        if row.len() != ncols {
            return Err(Error::Dimension { expected: ncols, got: row.len() });
        }
        let mut r = row.clone();
        r.push(rhs.clone());
        aug.push(r);
    }
    let (m, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Ok(Some(x))
}
