//! Exact simplex method over the rationals with Bland's rule.
//!
//! Problems are stated over free variables with `≥`, `>` and `=` rows. They
//! are rewritten into the dictionary form `max c·y, Ay ≤ b, y ≥ 0` by splitting
//! each free variable, and solved with the one-variable auxiliary problem when
//! the starting dictionary is infeasible.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Ge,
    Gt,
    Eq,
}

/// `coeffs · x  rel  rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.rel {
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinearSystem {
    dim: usize,
    rows: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn push(&mut self, c: Constraint) -> Result<()> {
        if c.coeffs.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: c.coeffs.len() });
        }
        self.rows.push(c);
        Ok(())
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Result<()> {
        self.push(Constraint::new(coeffs, rel, rhs))
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        x.len() == self.dim && self.rows.iter().all(|r| r.holds(x))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn point(self) -> Option<Vec<Rational>> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded,
    Infeasible,
}

/// Finds a point satisfying every row, strict rows strictly.
///
/// Homogeneous systems replace `a·x > 0` by `a·x ≥ 1`. Otherwise strict rows
/// get a shared margin `t ≤ 1` that is maximized; a positive optimum gives a
/// strict point.
pub fn feasible(sys: &LinearSystem) -> Feasibility {
    let x = solve_feasible(sys);
    if let Some(x) = &x {
        assert!(sys.holds(x), "simplex returned a point violating the system");
    }
    match x {
        Some(x) => Feasibility::Feasible(x),
        None => Feasibility::Infeasible,
    }
}

fn solve_feasible(sys: &LinearSystem) -> Option<Vec<Rational>> {
    let d = sys.dim;
    let strict = sys.rows.iter().any(|r| r.rel == Relation::Gt);
    let homogeneous = sys.rows.iter().all(|r| r.rhs.is_zero());
    if !strict || homogeneous {
        let rows: Vec<Constraint> = sys
            .rows
            .iter()
            .map(|r| match r.rel {
                Relation::Gt => Constraint::new(r.coeffs.clone(), Relation::Ge, Rational::one()),
                _ => r.clone(),
            })
            .collect();
        return match optimize(d, &rows, &vec![Rational::zero(); d]) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        };
    }
    // Margin variable t in the last position.
    let mut rows = Vec::with_capacity(sys.rows.len() + 1);
    for r in &sys.rows {
        let mut coeffs = r.coeffs.clone();
        let rel = if r.rel == Relation::Gt {
            coeffs.push(-Rational::one());
            Relation::Ge
        } else {
            coeffs.push(Rational::zero());
            r.rel
        };
        rows.push(Constraint::new(coeffs, rel, r.rhs.clone()));
    }
    let mut cap = vec![Rational::zero(); d];
    cap.push(-Rational::one());
    rows.push(Constraint::new(cap, Relation::Ge, -Rational::one()));
    let mut obj = vec![Rational::zero(); d];
    obj.push(Rational::one());
    match optimize(d + 1, &rows, &obj) {
        LpOutcome::Optimal { mut x, value } if value.is_positive() => {
            x.pop();
            Some(x)
        }
        _ => None,
    }
}

/// Maximizes `objective · x` over a system without strict rows.
pub fn maximize(sys: &LinearSystem, objective: &[Rational]) -> Result<LpOutcome> {
    if objective.len() != sys.dim {
        return Err(Error::Dimension { expected: sys.dim, got: objective.len() });
    }
    if sys.rows.iter().any(|r| r.rel == Relation::Gt) {
        return Err(Error::InvalidPoint("strict rows have no optimum".into()));
    }
    let out = optimize(sys.dim, &sys.rows, objective);
    if let LpOutcome::Optimal { x, .. } = &out {
        assert!(sys.holds(x), "simplex returned a point violating the system");
    }
    Ok(out)
}

/// Core solver over free variables with `≥`/`=` rows.
fn optimize(d: usize, rows: &[Constraint], objective: &[Rational]) -> LpOutcome {
    // Dictionary rows  Σ a_j y_j ≤ b  over y = (x⁺, x⁻).
    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    let mut push = |coeffs: &[Rational], rhs: &Rational, negate: bool| {
        let mut row = Vec::with_capacity(2 * d);
        for c in coeffs {
            row.push(if negate { -c } else { c.clone() });
        }
        for c in coeffs {
            row.push(if negate { c.clone() } else { -c });
        }
        a.push(row);
        b.push(if negate { -rhs } else { rhs.clone() });
    };
    for r in rows {
        match r.rel {
            Relation::Ge => push(&r.coeffs, &r.rhs, true),
            Relation::Eq => {
                push(&r.coeffs, &r.rhs, true);
                push(&r.coeffs, &r.rhs, false);
            }
            Relation::Gt => unreachable!("strict rows are rewritten before solving"),
        }
    }
    let mut c: Vec<Rational> = objective.to_vec();
    c.extend(objective.iter().map(|v| -v));
    match Tableau::solve(a, b, c) {
        LpOutcome::Optimal { x: y, value } => {
            let x = (0..d).map(|j| &y[j] - &y[d + j]).collect();
            LpOutcome::Optimal { x, value }
        }
        other => other,
    }
}

/// Dense tableau for `max c·y, Ay ≤ b, y ≥ 0`.
///
/// Columns: the `n` structural variables, then `m` slacks, then (during the
/// auxiliary phase) the artificial `x0`. Row `m` holds the objective as
/// reduced costs; the last column holds the right-hand side.
struct Tableau {
    m: usize,
    n: usize,
    width: usize,
    cells: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn solve(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: Vec<Rational>) -> LpOutcome {
        let m = a.len();
        let n = c.len();
        let x0 = n + m;
        let width = n + m + 2;
        let rhs = width - 1;
        let mut cells = Vec::with_capacity(m + 1);
        for (i, row) in a.into_iter().enumerate() {
            let mut r = row;
            r.resize(width, Rational::zero());
            r[n + i] = Rational::one();
            r[x0] = -Rational::one();
            r[rhs] = b[i].clone();
            cells.push(r);
        }
        cells.push(vec![Rational::zero(); width]);
        let mut t = Tableau { m, n, width, cells, basis: (n..n + m).collect() };

        let worst = (0..m)
            .filter(|&i| t.cells[i][rhs].is_negative())
            .min_by(|&i, &j| t.cells[i][rhs].cmp(&t.cells[j][rhs]).then(i.cmp(&j)));
        if let Some(r) = worst {
            // Auxiliary problem: maximize -x0.
            t.cells[m][x0] = Rational::one();
            t.pivot(r, x0);
            if t.run(true).is_err() {
                unreachable!("auxiliary problem is bounded");
            }
            if !t.cells[m][rhs].is_zero() {
                return LpOutcome::Infeasible;
            }
            if let Some(row) = t.basis.iter().position(|&v| v == x0) {
                // Degenerate: x0 basic at zero; pivot it out on any nonzero.
                if let Some(col) = (0..n + m).find(|&j| !t.cells[row][j].is_zero()) {
                    t.pivot(row, col);
                }
            }
        }
        // Drop x0 from consideration and install the real objective.
        for i in 0..=m {
            t.cells[i][x0] = Rational::zero();
        }
        let mut obj = vec![Rational::zero(); width];
        for (j, cj) in c.iter().enumerate() {
            obj[j] = -cj;
        }
        for (i, &v) in t.basis.iter().enumerate() {
            if v < n && !c[v].is_zero() {
                let f = c[v].clone();
                for (o, cell) in obj.iter_mut().zip(&t.cells[i]) {
                    if !cell.is_zero() {
                        *o += &f * cell;
                    }
                }
            }
        }
        t.cells[m] = obj;
        if t.run(false).is_err() {
            return LpOutcome::Unbounded;
        }
        let mut y = vec![Rational::zero(); n];
        for (i, &v) in t.basis.iter().enumerate() {
            if v < n {
                y[v] = t.cells[i][rhs].clone();
            }
        }
        let value = t.cells[m][rhs].clone();
        LpOutcome::Optimal { x: y, value }
    }

    /// Runs Bland-rule pivots until optimal. `Err` signals unboundedness.
    fn run(&mut self, allow_x0: bool) -> std::result::Result<(), ()> {
        let m = self.m;
        let rhs = self.width - 1;
        let limit = if allow_x0 { self.n + m + 1 } else { self.n + m };
        loop {
            let Some(col) = (0..limit).find(|&j| self.cells[m][j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..m {
                let a = &self.cells[i][col];
                if a.is_positive() {
                    let ratio = &self.cells[i][rhs] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Err(()),
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = Rational::one() / &self.cells[row][col];
        for v in self.cells[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.cells[row]);
        let nz: Vec<usize> = (0..self.width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, r) in self.cells.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                r[j] -= delta;
            }
        }
        self.cells[row] = pivot_row;
        self.basis[row] = col;
    }
}

/// Convenience: `x ≥ 0`-style unit row.
pub fn unit(dim: usize, k: usize, value: Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[k] = value;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn opposite_strict_rows_are_infeasible() {
        let mut s = LinearSystem::new(1);
        s.add(v(&[1]), Relation::Gt, int(0)).unwrap();
        s.add(v(&[-1]), Relation::Gt, int(0)).unwrap();
        assert_eq!(feasible(&s), Feasibility::Infeasible);
    }

    #[test]
    fn strict_with_equality() {
        let mut s = LinearSystem::new(2);
        s.add(v(&[1, 1]), Relation::Eq, int(0)).unwrap();
        s.add(v(&[1, 0]), Relation::Gt, int(0)).unwrap();
        let x = feasible(&s).point().unwrap();
        assert!(x[0] > int(0));
        assert_eq!(&x[0] + &x[1], int(0));
    }

    #[test]
    fn margin_with_offsets() {
        // 1 < x < 2 needs the margin path.
        let mut s = LinearSystem::new(1);
        s.add(v(&[1]), Relation::Gt, int(1)).unwrap();
        s.add(v(&[-1]), Relation::Gt, int(-2)).unwrap();
        let x = feasible(&s).point().unwrap();
        assert!(x[0] > int(1) && x[0] < int(2));
        let mut s = LinearSystem::new(1);
        s.add(v(&[1]), Relation::Gt, int(1)).unwrap();
        s.add(v(&[-1]), Relation::Ge, int(-1)).unwrap();
        assert_eq!(feasible(&s), Feasibility::Infeasible);
    }

    #[test]
    fn small_lp() {
        // max x + y, x ≤ 2, y ≤ 3, x + 2y ≤ 7.
        let mut s = LinearSystem::new(2);
        s.add(v(&[-1, 0]), Relation::Ge, int(-2)).unwrap();
        s.add(v(&[0, -1]), Relation::Ge, int(-3)).unwrap();
        s.add(v(&[-1, -2]), Relation::Ge, int(-7)).unwrap();
        match maximize(&s, &v(&[1, 1])).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, crate::rational::ratio(9, 2)),
            other => panic!("{other:?}"),
        }
        let mut s = LinearSystem::new(1);
        s.add(v(&[1]), Relation::Ge, int(0)).unwrap();
        assert_eq!(maximize(&s, &v(&[1])).unwrap(), LpOutcome::Unbounded);
    }
}
