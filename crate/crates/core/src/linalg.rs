//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational_row(v: &[i64]) -> Vec<Rational> {
    v.iter()
        .map(|&x| Rational::from_integer(BigInt::from(x)))
        .collect()
}

/// Reduced row echelon form. Returns the non-zero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i][c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<V: AsRef<[i64]>>(rows: &[V]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let ncols = first.as_ref().len();
    let m = rows.iter().map(|r| rational_row(r.as_ref())).collect();
    rref(m, ncols).1.len()
}

/// Basis of `{x : M x = 0}` where `M` has the given rows.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset<V: AsRef<[i64]>>(rows: &[V]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v = rational_row(row.as_ref());
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone() / &b[p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            chosen.push(i);
            basis.push(v);
            pivots.push(p);
        }
    }
    chosen
}

/// Coordinates `λ` with `Σ λ_k basis_k = target`, if the target lies in the
/// span of the (independent) basis rows.
pub fn coordinates<V: AsRef<[i64]>>(basis: &[V], target: &[i64]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = target.len();
    // columns: basis vectors, then the target; rows: coordinates
    let mut rows = vec![vec![Rational::zero(); k + 1]; n];
    for (j, b) in basis.iter().enumerate() {
        for (i, &x) in b.as_ref().iter().enumerate() {
            rows[i][j] = Rational::from_integer(x.into());
        }
    }
    for (i, &x) in target.iter().enumerate() {
        rows[i][k] = Rational::from_integer(x.into());
    }
    let (reduced, pivots) = rref(rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut lambda = vec![Rational::zero(); k];
    for (row, &p) in reduced.iter().zip(&pivots) {
        lambda[p] = row[k].clone();
    }
    Some(lambda)
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction. The zero vector maps to itself.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Internal(format!("integer {} exceeds 64 bits", x)))
        })
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A vector in the span of `span_basis` orthogonal to every `constraint`,
/// as a primitive integer vector. `None` unless the solution space is a line.
pub fn normal_in_span<V: AsRef<[i64]>, W: AsRef<[i64]>>(
    span_basis: &[V],
    constraints: &[W],
) -> Result<Option<Vec<i64>>> {
    let d = span_basis.len();
    // u = Σ β_k b_k; constraint c gives Σ β_k <b_k, c> = 0
    let system: Vec<Vec<Rational>> = constraints
        .iter()
        .map(|c| {
            span_basis
                .iter()
                .map(|b| Rational::from_integer(dot(b.as_ref(), c.as_ref()).into()))
                .collect()
        })
        .collect();
    let kernel = nullspace(&system, d);
    if kernel.len() != 1 {
        return Ok(None);
    }
    let beta = &kernel[0];
    let n = span_basis.first().map_or(0, |b| b.as_ref().len());
    let mut u = vec![Rational::zero(); n];
    for (coef, b) in beta.iter().zip(span_basis) {
        for (x, &y) in u.iter_mut().zip(b.as_ref()) {
            *x += coef * Rational::from_integer(y.into());
        }
    }
    Ok(Some(to_i64(&primitive(&u))?))
}

pub fn is_integral(x: &Rational) -> bool {
    x.is_integer()
}

pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
