//! Dense two-phase simplex with Bland's rule.
//!
//! Sized for the small programs built by the finiteness test and the
//! polyhedral hull check: a handful of variables, a few dozen rows.

use crate::error::{Error, LpFailure, Result};

const PIVOT_TOL: f64 = 1e-12;
const FEAS_TOL: f64 = 1e-9;

/// `maximize objective·y  subject to  rows[i].0 · y <= rows[i].1`, with
/// per-variable bounds (`None` is unbounded on that side).
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<(Vec<f64>, f64)>,
    pub bounds: Vec<(Option<f64>, Option<f64>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub optimum: f64,
    pub argmax: Vec<f64>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![0.0; num_vars],
            rows: Vec::new(),
            bounds: vec![(None, None); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn le(&mut self, coeffs: Vec<f64>, rhs: f64) -> &mut Self {
        self.rows.push((coeffs, rhs));
        self
    }

    pub fn eq(&mut self, coeffs: Vec<f64>, rhs: f64) -> &mut Self {
        let neg: Vec<f64> = coeffs.iter().map(|v| -v).collect();
        self.rows.push((coeffs, rhs));
        self.rows.push((neg, -rhs));
        self
    }

    pub fn bound(&mut self, var: usize, lower: Option<f64>, upper: Option<f64>) -> &mut Self {
        self.bounds[var] = (lower, upper);
        self
    }
}

/// How an original variable is expressed through nonnegative columns.
enum VarMap {
    /// y = lower + x[col]
    Shift(usize, f64),
    /// y = upper - x[col]
    Mirror(usize, f64),
    /// y = x[pos] - x[neg]
    Split(usize, usize),
}

pub fn lp_solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.num_vars();
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0;
    let mut extra_rows: Vec<(usize, f64)> = Vec::new();
    for &(lo, hi) in &lp.bounds {
        match (lo, hi) {
            (Some(l), h) => {
                maps.push(VarMap::Shift(ncols, l));
                if let Some(h) = h {
                    extra_rows.push((ncols, h - l));
                }
                ncols += 1;
            }
            (None, Some(h)) => {
                maps.push(VarMap::Mirror(ncols, h));
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split(ncols, ncols + 1));
                ncols += 2;
            }
        }
    }

    let mut a: Vec<Vec<f64>> = Vec::new();
    let mut b: Vec<f64> = Vec::new();
    for (coeffs, rhs) in &lp.rows {
        let mut row = vec![0.0; ncols];
        let mut r = *rhs;
        for (j, &cj) in coeffs.iter().enumerate() {
            match maps[j] {
                VarMap::Shift(c, l) => {
                    row[c] += cj;
                    r -= cj * l;
                }
                VarMap::Mirror(c, h) => {
                    row[c] -= cj;
                    r -= cj * h;
                }
                VarMap::Split(p, q) => {
                    row[p] += cj;
                    row[q] -= cj;
                }
            }
        }
        a.push(row);
        b.push(r);
    }
    for (c, ub) in extra_rows {
        let mut row = vec![0.0; ncols];
        row[c] = 1.0;
        a.push(row);
        b.push(ub);
    }
    let mut cost = vec![0.0; ncols];
    let mut offset = 0.0;
    for (j, &cj) in lp.objective.iter().enumerate() {
        match maps[j] {
            VarMap::Shift(c, l) => {
                cost[c] += cj;
                offset += cj * l;
            }
            VarMap::Mirror(c, h) => {
                cost[c] -= cj;
                offset += cj * h;
            }
            VarMap::Split(p, q) => {
                cost[p] += cj;
                cost[q] -= cj;
            }
        }
    }

    let x = standard_form_max(&a, &b, &cost)?;
    let argmax: Vec<f64> = maps
        .iter()
        .map(|m| match *m {
            VarMap::Shift(c, l) => l + x[c],
            VarMap::Mirror(c, h) => h - x[c],
            VarMap::Split(p, q) => x[p] - x[q],
        })
        .collect();
    let optimum = cost.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>() + offset;
    Ok(LpSolution { optimum, argmax })
}

struct Tableau {
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.t[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v /= p;
        }
        for i in 0..self.t.len() {
            if i != r {
                let f = self.t[i][c];
                if f != 0.0 {
                    for k in 0..=self.width {
                        self.t[i][k] -= f * self.t[r][k];
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland-rule simplex for `max cost·x` over columns `< allowed`.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<()> {
        let cap = 200 * (self.t.len() + self.width + 1);
        for _ in 0..cap {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = cost[j]
                    - self
                        .basis
                        .iter()
                        .enumerate()
                        .map(|(i, &bj)| cost[bj] * self.t[i][j])
                        .sum::<f64>();
                reduced > PIVOT_TOL
            });
            let Some(c) = entering else { return Ok(()) };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.t.len() {
                let e = self.t[i][c];
                if e > PIVOT_TOL {
                    let ratio = self.rhs(i) / e;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - PIVOT_TOL
                                || (ratio <= lr + PIVOT_TOL && self.basis[i] < self.basis[li])
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::Lp(LpFailure::Unbounded));
            };
            self.pivot(r, c);
        }
        Err(Error::Lp(LpFailure::IterationLimit))
    }
}

/// `max cost·x  s.t.  a x <= b, x >= 0`.
fn standard_form_max(a: &[Vec<f64>], b: &[f64], cost: &[f64]) -> Result<Vec<f64>> {
    let m = a.len();
    let n = cost.len();
    let n_art = b.iter().filter(|&&v| v < 0.0).count();
    // columns: structural | slacks | artificials | rhs
    let width = n + m + n_art;
    let mut t = vec![vec![0.0; width + 1]; m];
    let mut basis = vec![0; m];
    let mut art = n + m;
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * a[i][j];
        }
        t[i][n + i] = sign;
        t[i][width] = sign * b[i];
        if sign < 0.0 {
            t[i][art] = 1.0;
            basis[i] = art;
            art += 1;
        } else {
            basis[i] = n + i;
        }
    }
    let mut tab = Tableau { t, basis, width };

    if n_art > 0 {
        let mut phase1 = vec![0.0; width];
        for v in phase1.iter_mut().skip(n + m) {
            *v = -1.0;
        }
        tab.optimize(&phase1, width)?;
        let infeasibility: f64 = (0..m)
            .filter(|&i| tab.basis[i] >= n + m)
            .map(|i| tab.rhs(i))
            .sum();
        if infeasibility > FEAS_TOL * (1.0 + b.iter().map(|v| v.abs()).fold(0.0, f64::max)) {
            return Err(Error::Lp(LpFailure::Infeasible));
        }
        // drive degenerate artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= n + m {
                match (0..n + m).find(|&j| tab.t[i][j].abs() > 1e-9) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut phase2 = vec![0.0; width];
    phase2[..n].copy_from_slice(cost);
    tab.optimize(&phase2, n + m)?;

    let mut x = vec![0.0; n];
    for (i, &bj) in tab.basis.iter().enumerate() {
        if bj < n {
            x[bj] = tab.rhs(i).max(0.0);
        }
    }
    Ok(x)
}
