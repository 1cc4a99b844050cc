//! Cross-checks between independent routes for a single graph.
//!
//! The routes are passed in as plain function pointers so tests can swap in a
//! deliberately broken one and watch the check fail.

use crate::cone::{cone_dim, facet_oracle, rational_cone_member};
use crate::error::{Error, Result};
use crate::facets::enumerate_facet_subgraphs;
use crate::graph::{Edge, ExponentVector, MixedGraph};
use crate::lattice::{lattice_member, mixed_lattice_member, semigroup_member, Lattice};
use crate::linalg;
use crate::serre::{
    check_augmented_equivalence, normality_fast_path, normality_oracle, r1_by_support_forms,
    r1_by_theorem,
};

/// Largest vertex count for which lattice membership is swept over the box
/// `[-1, 1]^n`.
pub const LATTICE_SWEEP_VERTEX_CAP: usize = 8;

#[derive(Clone, Copy)]
pub struct Routes {
    pub facet_subgraphs: fn(&MixedGraph) -> Result<Vec<Vec<Edge>>>,
    pub oracle_facets: fn(&MixedGraph) -> Result<Vec<Vec<Edge>>>,
    pub r1_combinatorial: fn(&MixedGraph) -> Result<bool>,
    pub r1_support_forms: fn(&MixedGraph) -> Result<bool>,
    pub lattice_criterion: fn(&MixedGraph, &ExponentVector) -> Result<bool>,
}

impl Default for Routes {
    fn default() -> Self {
        Routes {
            facet_subgraphs: |g| {
                Ok(enumerate_facet_subgraphs(g)?
                    .into_iter()
                    .map(|f| f.edges)
                    .collect())
            },
            oracle_facets: |g| Ok(facet_oracle(g)?.into_iter().map(|f| f.zero_edges).collect()),
            r1_combinatorial: |g| Ok(r1_by_theorem(g)?.satisfied),
            r1_support_forms: |g| Ok(r1_by_support_forms(g)?.satisfied),
            lattice_criterion: mixed_lattice_member,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Runs every cross-check. Scale caps propagate as errors.
pub fn verify_graph(g: &MixedGraph, routes: &Routes) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();

    let rank = linalg::rank(
        &g.exponent_vectors()
            .iter()
            .map(|v| v.0.clone())
            .collect::<Vec<_>>(),
    );
    let formula = g.n() - g.bicomp();
    out.push(outcome(
        "dimension formula",
        formula == rank && cone_dim(g).is_ok(),
        format!("n - bicomp = {}, rank = {}", formula, rank),
    ));

    let dim = rank;
    let (mut ours, mut theirs) = if dim == 0 {
        (Vec::new(), Vec::new())
    } else {
        ((routes.facet_subgraphs)(g)?, (routes.oracle_facets)(g)?)
    };
    ours.sort();
    theirs.sort();
    out.push(outcome(
        "facet correspondence",
        ours == theirs,
        format!(
            "{} facet subgraphs, {} polyhedral facets",
            ours.len(),
            theirs.len()
        ),
    ));

    let a = (routes.r1_combinatorial)(g)?;
    let b = (routes.r1_support_forms)(g)?;
    out.push(outcome(
        "R1 method agreement",
        a == b,
        format!("facet subgraphs: {}, supporting forms: {}", a, b),
    ));

    out.push(outcome(
        "R1 of the augmented graph",
        check_augmented_equivalence(g)?,
        "compares G with its augmented signed graph",
    ));

    if g.n() <= LATTICE_SWEEP_VERTEX_CAP {
        let lattice = Lattice::of_graph(g);
        let mut mismatches = 0;
        let total = 3usize.pow(g.n() as u32);
        for code in 0..total {
            let mut c = code;
            let v: Vec<i64> = (0..g.n())
                .map(|_| {
                    let x = (c % 3) as i64 - 1;
                    c /= 3;
                    x
                })
                .collect();
            let v = ExponentVector(v);
            if (routes.lattice_criterion)(g, &v)? != lattice_member(&lattice, &v)? {
                mismatches += 1;
            }
        }
        out.push(outcome(
            "lattice criterion vs Hermite form",
            mismatches == 0,
            format!("{} mismatches over {} vectors", mismatches, total),
        ));
    }

    let oracle = normality_oracle(g)?;
    let fast = normality_fast_path(g);
    let sound = match oracle.hole() {
        None => true,
        Some(h) => {
            let gens = g.exponent_vectors();
            lattice_member(&Lattice::of_graph(g), h)?
                && rational_cone_member(&gens, h)?
                && matches!(semigroup_member(&gens, h, 1 << 12), Ok(c) if !c.is_member())
        }
    };
    out.push(outcome(
        "normality certificate",
        sound,
        match oracle.hole() {
            Some(h) => format!("hole {}", h),
            None => "no hole".to_string(),
        },
    ));
    if let Some(fp) = fast {
        out.push(outcome(
            "normality fast path",
            oracle.is_normal() == Some(true),
            format!("{} applies; search says {:?}", fp, oracle.is_normal()),
        ));
    }
    Ok(out)
}

/// Turns failed checks into an [`Error::OracleDisagreement`].
pub fn require_all(outcomes: &[CheckOutcome]) -> Result<()> {
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{} ({})", o.name, o.detail))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::OracleDisagreement(failed.join("; ")))
    }
}
