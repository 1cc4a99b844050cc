//! Exact polyhedral geometry of `cone(P_G)`: dimension, dual vectors of
//! bipartite components, brute-force facet enumeration, support-form
//! normalisation, and a placing triangulation used by the normality search.

mod triangulation;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::{ComponentCensus, Edge, ExponentVector, MixedGraph};
use crate::linalg::{self, dot};
use crate::lp;

pub use triangulation::{
    parallelepiped_points, placing_triangulation, triangulate_and_collect, SimplicialPiece,
};

/// Hard cap on the generator count accepted by the brute-force facet search.
pub const ORACLE_GENERATOR_CAP: usize = 24;

/// Integer linear functional `x ↦ Σ coeffs_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVector(pub Vec<i64>);

impl DualVector {
    pub fn eval(&self, x: &[i64]) -> i64 {
        dot(&self.0, x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn negated(&self) -> DualVector {
        DualVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ExponentVector(self.0.clone()))
    }
}

/// A facet of `cone(P_G)` found by the polyhedral search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive, nonnegative on the cone, lying in the cone's linear span.
    pub support: DualVector,
    pub zero_edges: Vec<Edge>,
    pub dim: usize,
}

/// A facet of the cone over a bare generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFacet {
    pub support: DualVector,
    /// Indices of generators on the facet, ascending.
    pub zero: Vec<usize>,
}

/// A support form divided by the gcd of its values on the generators; it takes
/// integer values on the generated lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportForm {
    pub form: DualVector,
    pub divisor: i64,
}

impl SupportForm {
    /// Value on a lattice point; `None` if not integral there.
    pub fn value(&self, x: &[i64]) -> Option<i64> {
        let (q, r) = self.form.eval(x).div_rem(&self.divisor);
        (r == 0).then_some(q)
    }
}

/// `dim cone(P_G) = n - bicomp(G)`, checked against the exact rank of the
/// exponent matrix.
pub fn cone_dim(g: &MixedGraph) -> Result<usize> {
    let formula = g.n() - g.bicomp();
    let rank = linalg::rank(
        &g.exponent_vectors()
            .iter()
            .map(|v| v.0.clone())
            .collect::<Vec<_>>(),
    );
    if formula != rank {
        return Err(Error::Internal(format!(
            "dimension formula gives {} but the exponent matrix has rank {} for {}",
            formula, rank, g
        )));
    }
    Ok(formula)
}

/// `e*_{π(L)} - e*_{π(R)}` for a bipartite component; it vanishes on every
/// generator of the graph.
pub fn bipartite_dual(census: &ComponentCensus, component_index: usize) -> Result<DualVector> {
    let comp = census
        .components
        .get(component_index)
        .ok_or_else(|| Error::domain(format!("no component {}", component_index)))?;
    let bp = comp
        .bipartition
        .as_ref()
        .ok_or_else(|| Error::domain(format!("component {} is not bipartite", component_index)))?;
    let mut coeffs = vec![0; census.n];
    for &v in &bp.left {
        coeffs[v - 1] = 1;
    }
    for &v in &bp.right {
        coeffs[v - 1] = -1;
    }
    Ok(DualVector(coeffs))
}

/// Whether `a` lies in the rational cone spanned by `gens`.
pub fn rational_cone_member(gens: &[ExponentVector], a: &ExponentVector) -> Result<bool> {
    let n = a.len();
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: g.len(),
        });
    }
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| gens.iter().map(|g| q(g.0[i])).collect())
        .collect();
    let rhs: Vec<BigRational> = a.0.iter().map(|&x| q(x)).collect();
    Ok(lp::feasible(&rows, &rhs, gens.len()).is_some())
}

/// All facets of `cone(gens)`, by exhaustive search over `(d-1)`-subsets of
/// generators. The support of each facet is primitive, nonnegative on the
/// cone, and taken inside the linear span of the generators.
pub fn facets_of_generators(gens: &[ExponentVector]) -> Result<Vec<GeneratorFacet>> {
    if gens.len() > ORACLE_GENERATOR_CAP {
        return Err(Error::ScaleExceeded {
            what: "facet oracle generator count",
            limit: ORACLE_GENERATOR_CAP,
            actual: gens.len(),
        });
    }
    let rows: Vec<&[i64]> = gens.iter().map(|g| g.coords()).collect();
    let basis_idx = linalg::independent_subset(&rows);
    let d = basis_idx.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let span: Vec<&[i64]> = basis_idx.iter().map(|&i| rows[i]).collect();

    let mut found: BTreeMap<Vec<usize>, DualVector> = BTreeMap::new();
    for subset in Combinations::new(gens.len(), d - 1) {
        if found
            .keys()
            .any(|z| subset.iter().all(|i| z.binary_search(i).is_ok()))
        {
            continue;
        }
        let constraints: Vec<&[i64]> = subset.iter().map(|&i| rows[i]).collect();
        let Some(u) = linalg::normal_in_span(&span, &constraints)? else {
            continue;
        };
        let values: Vec<i64> = rows.iter().map(|g| dot(&u, g)).collect();
        let pos = values.iter().any(|&v| v > 0);
        let neg = values.iter().any(|&v| v < 0);
        let support = match (pos, neg) {
            (true, true) | (false, false) => continue,
            (true, false) => DualVector(u),
            (false, true) => DualVector(u).negated(),
        };
        let zero: Vec<usize> = (0..gens.len()).filter(|&i| values[i] == 0).collect();
        found.entry(zero).or_insert(support);
    }
    Ok(found
        .into_iter()
        .map(|(zero, support)| GeneratorFacet { support, zero })
        .collect())
}

/// Ground-truth facet enumeration for `cone(P_G)`, sorted by
/// `(|zero_edges|, zero_edges)`.
pub fn facet_oracle(g: &MixedGraph) -> Result<Vec<Facet>> {
    let gens = g.exponent_vectors();
    let d = linalg::rank(&gens.iter().map(|v| v.0.clone()).collect::<Vec<_>>());
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut facets: Vec<Facet> = facets_of_generators(&gens)?
        .into_iter()
        .map(|f| Facet {
            support: f.support,
            zero_edges: f.zero.iter().map(|&i| g.edges()[i]).collect(),
            dim: d - 1,
        })
        .collect();
    facets.sort_by(|a, b| {
        (a.zero_edges.len(), &a.zero_edges).cmp(&(b.zero_edges.len(), &b.zero_edges))
    });
    Ok(facets)
}

/// Divides a support form by the gcd of its values on the generators.
pub fn normalize_support_form(g: &MixedGraph, support: &DualVector) -> Result<SupportForm> {
    if support.0.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: support.0.len(),
        });
    }
    let divisor = g
        .exponent_vectors()
        .iter()
        .map(|v| support.eval(&v.0))
        .fold(0i64, |acc, x| acc.gcd(&x));
    if divisor == 0 {
        return Err(Error::domain("support form vanishes on every generator"));
    }
    Ok(SupportForm {
        form: support.clone(),
        divisor,
    })
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
