//! Integer lattices generated by exponent vectors, the parity/balance
//! membership criterion for graph lattices, and semigroup membership.
//!
//! Lattices are represented by their row Hermite normal form: echelon rows
//! with positive pivots and entries above each pivot reduced into
//! `[0, pivot)`. The form is unique for the lattice, so equality is a direct
//! comparison.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::rational_cone_member;
use crate::error::{Error, Result};
use crate::graph::{ExponentVector, MixedGraph};
use crate::linalg::{primitive, to_i64};
use crate::lp::{self, LpOutcome};

#[derive(Clone, Debug)]
pub(crate) struct Hermite {
    pub(crate) rows: Vec<Vec<BigInt>>,
    pub(crate) pivots: Vec<usize>,
    /// `rows[i] = Σ_k transform[i][k] * generator_k`
    transform: Vec<Vec<BigInt>>,
}

/// Row Hermite normal form of `matrix`, tracking the unimodular transform.
pub(crate) fn hermite_form(matrix: &[Vec<BigInt>], ncols: usize) -> Hermite {
    let m = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let best = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = best else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                subtract_multiple(&mut a, i, r, &q);
                subtract_multiple(&mut u, i, r, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if a[r][c].is_negative() {
            a[r].iter_mut().for_each(|x| *x = -&*x);
            u[r].iter_mut().for_each(|x| *x = -&*x);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                subtract_multiple(&mut a, i, r, &q);
                subtract_multiple(&mut u, i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    u.truncate(r);
    Hermite {
        rows: a,
        pivots,
        transform: u,
    }
}

fn subtract_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (lo, hi) = m.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

pub(crate) fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The subgroup of `Z^n` generated by a list of integer vectors.
#[derive(Debug)]
pub struct Lattice {
    ambient_dim: usize,
    generators: Vec<ExponentVector>,
    hermite: OnceLock<Hermite>,
}

impl Clone for Lattice {
    fn clone(&self) -> Self {
        let hermite = OnceLock::new();
        if let Some(h) = self.hermite.get() {
            let _ = hermite.set(h.clone());
        }
        Lattice {
            ambient_dim: self.ambient_dim,
            generators: self.generators.clone(),
            hermite,
        }
    }
}

impl Lattice {
    pub fn new(ambient_dim: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        for g in &generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    actual: g.len(),
                });
            }
        }
        Ok(Lattice {
            ambient_dim,
            generators,
            hermite: OnceLock::new(),
        })
    }

    /// `Zρ(E(g))`.
    pub fn of_graph(g: &MixedGraph) -> Self {
        Lattice {
            ambient_dim: g.n(),
            generators: g.exponent_vectors(),
            hermite: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    fn hermite(&self) -> &Hermite {
        self.hermite.get_or_init(|| {
            let m: Vec<Vec<BigInt>> = self.generators.iter().map(|g| big(&g.0)).collect();
            hermite_form(&m, self.ambient_dim)
        })
    }

    /// Canonical basis rows.
    pub fn hermite_basis(&self) -> &[Vec<BigInt>] {
        &self.hermite().rows
    }

    pub fn rank(&self) -> usize {
        self.hermite().rows.len()
    }

    fn check_dim(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                actual: a.len(),
            });
        }
        Ok(())
    }

    /// Coefficients over the Hermite rows, if `a` lies in the lattice.
    pub(crate) fn basis_coefficients(&self, a: &[i64]) -> Option<Vec<BigInt>> {
        let h = self.hermite();
        let mut rem = big(a);
        let mut y = Vec::with_capacity(h.rows.len());
        for (row, &c) in h.rows.iter().zip(&h.pivots) {
            let (q, r) = rem[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, b) in rem.iter_mut().zip(row) {
                    *x -= &q * b;
                }
            }
            y.push(q);
        }
        rem.iter().all(Zero::is_zero).then_some(y)
    }

    /// Whether `a` is an integer combination of the generators.
    pub fn contains(&self, a: &[i64]) -> Result<bool> {
        self.check_dim(a)?;
        Ok(self.basis_coefficients(a).is_some())
    }

    /// Integer coefficients over the generators expressing `a`, if any.
    pub fn solve(&self, a: &[i64]) -> Result<Option<Vec<BigInt>>> {
        self.check_dim(a)?;
        let Some(y) = self.basis_coefficients(a) else {
            return Ok(None);
        };
        let h = self.hermite();
        let mut coeffs = vec![BigInt::zero(); self.generators.len()];
        for (yi, urow) in y.iter().zip(&h.transform) {
            for (c, u) in coeffs.iter_mut().zip(urow) {
                *c += yi * u;
            }
        }
        Ok(Some(coeffs))
    }

    /// Equality of lattices via their canonical forms.
    pub fn equals(&self, other: &Lattice) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                actual: other.ambient_dim,
            });
        }
        Ok(self.hermite_basis() == other.hermite_basis())
    }

    /// The sublattice on which the integer form vanishes.
    pub fn kernel_of_form(&self, form: &[i64]) -> Result<Lattice> {
        self.check_dim(form)?;
        let basis = self.hermite_basis();
        let r = basis.len();
        let f = big(form);
        let rows: Vec<Vec<BigInt>> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let value: BigInt = b.iter().zip(&f).map(|(x, y)| x * y).sum();
                let mut row = vec![value];
                row.extend((0..r).map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                }));
                row
            })
            .collect();
        let reduced = hermite_form(&rows, r + 1);
        let mut gens = Vec::new();
        for row in reduced.rows.iter().filter(|row| row[0].is_zero()) {
            let mut v = vec![BigInt::zero(); self.ambient_dim];
            for (k, b) in row[1..].iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += k * y;
                }
            }
            gens.push(ExponentVector(to_i64(&v)?));
        }
        Lattice::new(self.ambient_dim, gens)
    }
}

/// Free-function form of [`Lattice::contains`].
pub fn lattice_member(l: &Lattice, a: &ExponentVector) -> Result<bool> {
    l.contains(&a.0)
}

pub fn lattice_equal(l1: &Lattice, l2: &Lattice) -> Result<bool> {
    l1.equals(l2)
}

/// Membership in `Zρ(E(g))` for a connected signed graph, by the
/// parity/balance criterion: coordinate sum even when `g` is not bipartite,
/// balanced sides when it is.
pub fn lemma_lattice_member(g: &MixedGraph, a: &ExponentVector) -> Result<bool> {
    if !g.is_signed() {
        return Err(Error::domain("criterion applies to signed graphs only"));
    }
    if a.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: a.len(),
        });
    }
    let census = g.component_census();
    if census.comp() != 1 {
        return Err(Error::domain(format!(
            "criterion needs a connected graph, got {} components",
            census.comp()
        )));
    }
    let c = &census.components[0];
    Ok(match &c.bipartition {
        None => a.coordinate_sum().rem_euclid(2) == 0,
        Some(bp) => {
            let l: i64 = bp.left.iter().map(|&v| a.0[v - 1]).sum();
            let r: i64 = bp.right.iter().map(|&v| a.0[v - 1]).sum();
            l == r
        }
    })
}

/// Membership in `Zρ(E(g))` for any mixed graph: lift `a` with zero weights on
/// the artificial vertices and apply the connected criterion to each
/// component of the augmented graph (the lattice is their direct sum).
pub fn mixed_lattice_member(g: &MixedGraph, a: &ExponentVector) -> Result<bool> {
    if a.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: a.len(),
        });
    }
    let aug = g.augment();
    let lifted = aug.lift(a);
    let census = g.component_census();
    for comp in &census.components {
        let (sub, local) = induced_component(&aug.base, &comp.augmented_vertices);
        if !lemma_lattice_member(&sub, &local_vector(&lifted, &local))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The subgraph induced on `vertices`, relabelled to `1..=k` in order.
fn induced_component(g: &MixedGraph, vertices: &[usize]) -> (MixedGraph, Vec<usize>) {
    let index = |v: usize| vertices.binary_search(&v).ok().map(|i| i + 1);
    let edges = g.edges().iter().filter_map(|e| {
        let (a, b) = e.endpoints();
        let (ia, ib) = (index(a)?, index(b)?);
        let mut perm = vec![0; g.n()];
        perm[a - 1] = ia;
        perm[b - 1] = ib;
        Some(e.relabel(&perm))
    });
    let sub = MixedGraph::new(vertices.len(), edges).expect("induced subgraph is valid");
    (sub, vertices.to_vec())
}

fn local_vector(a: &ExponentVector, vertices: &[usize]) -> ExponentVector {
    ExponentVector(vertices.iter().map(|&v| a.0[v - 1]).collect())
}

/// A nonnegative integer representation of `target` over a generator list,
/// or `None` when none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupMembershipCertificate {
    pub target: ExponentVector,
    pub coefficients: Option<Vec<u64>>,
}

impl SemigroupMembershipCertificate {
    pub fn is_member(&self) -> bool {
        self.coefficients.is_some()
    }

    /// Checks `Σ c_e g_e = target` for a positive certificate.
    pub fn verify(&self, gens: &[ExponentVector]) -> bool {
        let Some(c) = &self.coefficients else {
            return true;
        };
        if c.len() != gens.len() {
            return false;
        }
        let mut sum = vec![0i128; self.target.len()];
        for (k, g) in c.iter().zip(gens) {
            for (s, &x) in sum.iter_mut().zip(&g.0) {
                *s += *k as i128 * x as i128;
            }
        }
        sum.iter()
            .zip(&self.target.0)
            .all(|(&s, &t)| s == t as i128)
    }
}

pub fn default_coeff_bound(ambient_dim: usize) -> usize {
    2 * (ambient_dim + 1)
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Decides `a ∈ Z₊{gens}`.
///
/// Rational infeasibility settles non-membership at once. Otherwise each
/// generator gets the rational upper bound on its coefficient; generators with
/// unbounded coefficient span the lineality space, whose generated semigroup is
/// a group, so only the bounded ones need enumerating. `coeff_bound` caps the
/// total coefficient of the bounded generators; if the rational bound on that
/// total exceeds it and no representation was found, the answer is
/// [`Error::Inconclusive`].
pub fn semigroup_member(
    gens: &[ExponentVector],
    a: &ExponentVector,
    coeff_bound: usize,
) -> Result<SemigroupMembershipCertificate> {
    let n = a.len();
    for g in gens {
        if g.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: g.len(),
            });
        }
    }
    let absent = || SemigroupMembershipCertificate {
        target: a.clone(),
        coefficients: None,
    };
    let found = |c: Vec<u64>| SemigroupMembershipCertificate {
        target: a.clone(),
        coefficients: Some(c),
    };
    if a.is_zero() {
        return Ok(found(vec![0; gens.len()]));
    }
    if let Some(i) = gens.iter().position(|g| g == a) {
        let mut c = vec![0; gens.len()];
        c[i] = 1;
        return Ok(found(c));
    }
    if !rational_cone_member(gens, a)? {
        return Ok(absent());
    }

    // constraint matrix: one row per coordinate, one column per generator
    let m = gens.len();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| gens.iter().map(|g| q(g.0[i])).collect())
        .collect();
    let rhs: Vec<BigRational> = a.0.iter().map(|&x| q(x)).collect();

    let mut upper: Vec<Option<u64>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut obj = vec![BigRational::zero(); m];
        obj[i] = BigRational::one();
        upper.push(match lp::maximise(&rows, &rhs, &obj) {
            LpOutcome::Unbounded => None,
            LpOutcome::Optimal { value, .. } => Some(bound_u64(&value)?),
            LpOutcome::Infeasible => return Ok(absent()),
        });
    }
    let bounded: Vec<usize> = (0..m).filter(|&i| upper[i].is_some()).collect();
    let lineality: Vec<usize> = (0..m).filter(|&i| upper[i].is_none()).collect();

    let obj: Vec<BigRational> = (0..m)
        .map(|i| {
            if upper[i].is_some() {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let total = match lp::maximise(&rows, &rhs, &obj) {
        LpOutcome::Optimal { value, .. } => bound_u64(&value)?,
        LpOutcome::Unbounded => {
            return Err(Error::Internal(
                "bounded generators have unbounded total".into(),
            ))
        }
        LpOutcome::Infeasible => return Ok(absent()),
    };
    let complete = total as usize <= coeff_bound;
    let budget = if complete {
        total as usize
    } else {
        coeff_bound
    };

    let lin_lattice = Lattice::new(n, lineality.iter().map(|&i| gens[i].clone()).collect())?;
    let mut order = bounded.clone();
    order.sort_by_key(|&i| std::cmp::Reverse(gens[i].coordinate_sum()));

    let mut search = Search {
        gens,
        order: &order,
        upper: &upper,
        lineality: &lin_lattice,
        failed: HashMap::new(),
        chosen: vec![0; m],
    };
    let Some(remainder) = search.run(0, a.0.clone(), budget) else {
        if complete {
            return Ok(absent());
        }
        return Err(Error::Inconclusive(format!(
            "no representation of {} with total coefficient <= {} (rational bound {})",
            a, coeff_bound, total
        )));
    };
    let mut coeffs = search.chosen;
    if !lineality.is_empty() {
        let z = lin_lattice
            .solve(&remainder)?
            .ok_or_else(|| Error::Internal("lineality remainder left the lattice".into()))?;
        let p = positive_relation(gens, &lineality)?;
        // shift by a multiple of the positive relation until all are >= 0
        let mut k = BigInt::zero();
        for (zi, pi) in z.iter().zip(&p) {
            if zi.is_negative() {
                k = k.max((-zi).div_ceil(pi));
            }
        }
        for ((zi, pi), &idx) in z.iter().zip(&p).zip(&lineality) {
            let v = zi + &k * pi;
            coeffs[idx] = v
                .to_u64()
                .ok_or_else(|| Error::Internal("certificate coefficient overflow".into()))?;
        }
    }
    let cert = found(coeffs);
    debug_assert!(cert.verify(gens));
    Ok(cert)
}

fn bound_u64(value: &BigRational) -> Result<u64> {
    value
        .floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("coefficient bound {} out of range", value)))
}

/// Strictly positive integer weights `p` with `Σ p_i g_i = 0` over the
/// lineality generators.
fn positive_relation(gens: &[ExponentVector], lineality: &[usize]) -> Result<Vec<BigInt>> {
    let n = gens[lineality[0]].len();
    let k = lineality.len();
    // p = 1 + s, s >= 0:  Σ s_i g_i = -Σ g_i
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|r| lineality.iter().map(|&i| q(gens[i].0[r])).collect())
        .collect();
    let rhs: Vec<BigRational> = (0..n)
        .map(|r| {
            -lineality
                .iter()
                .map(|&i| q(gens[i].0[r]))
                .sum::<BigRational>()
        })
        .collect();
    let s = lp::feasible(&rows, &rhs, k)
        .ok_or_else(|| Error::Internal("lineality generators admit no positive relation".into()))?;
    let p: Vec<BigRational> = s.into_iter().map(|x| x + BigRational::one()).collect();
    Ok(primitive(&p))
}

struct Search<'a> {
    gens: &'a [ExponentVector],
    order: &'a [usize],
    upper: &'a [Option<u64>],
    lineality: &'a Lattice,
    /// (position, remainder) -> largest budget already known to fail
    failed: HashMap<(usize, Vec<i64>), usize>,
    chosen: Vec<u64>,
}

impl Search<'_> {
    /// Returns the lineality remainder on success; `chosen` then holds the
    /// coefficients of the bounded generators.
    fn run(&mut self, pos: usize, rem: Vec<i64>, budget: usize) -> Option<Vec<i64>> {
        let done = if self.lineality.generators().is_empty() {
            rem.iter().all(|&x| x == 0)
        } else {
            self.lineality.contains(&rem).unwrap_or(false)
        };
        if done {
            return Some(rem);
        }
        if pos == self.order.len() || budget == 0 {
            return None;
        }
        let key = (pos, rem);
        if self.failed.get(&key).is_some_and(|&b| b >= budget) {
            return None;
        }
        let rem = key.1;
        let idx = self.order[pos];
        let g = &self.gens[idx].0;
        let max_c = self.upper[idx].unwrap_or(0).min(budget as u64);
        for c in (0..=max_c).rev() {
            let next: Vec<i64> = rem.iter().zip(g).map(|(r, x)| r - c as i64 * x).collect();
            self.chosen[idx] = c;
            if let Some(out) = self.run(pos + 1, next, budget - c as usize) {
                return Some(out);
            }
        }
        self.chosen[idx] = 0;
        let entry = self.failed.entry((pos, rem)).or_insert(0);
        *entry = (*entry).max(budget);
        None
    }
}
