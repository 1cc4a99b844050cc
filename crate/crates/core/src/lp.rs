//! A small exact simplex solver for `max c·x  s.t.  A x = b, x >= 0`.
//!
//! Bland's rule throughout, so it always terminates. Meant for the tiny
//! systems that arise from semigroup membership questions.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, x: Vec<Q> },
}

struct Tableau {
    /// `rows[i]` = coefficients over all columns followed by the rhs.
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximises `obj` over the columns in `allowed`. Returns false if unbounded.
    fn optimise(&mut self, obj: &[Q], allowed: &[bool]) -> bool {
        loop {
            // reduced cost of column j: obj_j - Σ obj_basis * row_j
            let reduced = |t: &Tableau, j: usize| {
                let mut v = obj[j].clone();
                for (row, &b) in t.rows.iter().zip(&t.basis) {
                    if !obj[b].is_zero() && !row[j].is_zero() {
                        v -= &obj[b] * &row[j];
                    }
                }
                v
            };
            let entering = (0..self.ncols).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && reduced(self, j).is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let rhs = self.ncols;
            let mut best: Option<(Q, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((q, bi)) => {
                            ratio < *q || (ratio == *q && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            let Some((_, r)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// Solves `max objective·x` subject to `a x = b`, `x >= 0`.
pub fn maximise(a: &[Vec<Q>], b: &[Q], objective: &[Q]) -> LpOutcome {
    let m = a.len();
    let nvars = objective.len();
    let ncols = nvars + m;
    // phase one: artificial column per row, rhs made nonnegative
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<Q> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        r.resize(ncols, Q::zero());
        r[nvars + i] = Q::one();
        r.push(if flip { -rhs.clone() } else { rhs.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (nvars..ncols).collect(),
        ncols,
    };
    let mut phase_one = vec![Q::zero(); ncols];
    for x in phase_one.iter_mut().skip(nvars) {
        *x = -Q::one();
    }
    let all = vec![true; ncols];
    t.optimise(&phase_one, &all);
    let infeasibility: Q = t
        .rows
        .iter()
        .zip(&t.basis)
        .filter(|(_, &bcol)| bcol >= nvars)
        .map(|(row, _)| row[ncols].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis, or drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= nvars {
            if let Some(c) = (0..nvars).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
                i += 1;
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut obj = objective.to_vec();
    obj.resize(ncols, Q::zero());
    let mut allowed = vec![true; ncols];
    for flag in allowed.iter_mut().skip(nvars) {
        *flag = false;
    }
    if !t.optimise(&obj, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); nvars];
    for (row, &bcol) in t.rows.iter().zip(&t.basis) {
        if bcol < nvars {
            x[bcol] = row[ncols].clone();
        }
    }
    let value = x.iter().zip(objective).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { value, x }
}

/// Feasibility of `a x = b, x >= 0`.
pub fn feasible(a: &[Vec<Q>], b: &[Q], nvars: usize) -> Option<Vec<Q>> {
    match maximise(a, b, &vec![Q::zero(); nvars]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
