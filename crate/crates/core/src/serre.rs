//! Serre's `R1` condition, normality and the Cohen-Macaulay verdict.
//!
//! `R1` is decided combinatorially (every facet subgraph `H` has
//! `comp(H) <= comp(G) + 1`) and cross-checked facet by facet against the
//! three conditions on supporting forms: integrality, value 1 attained, and
//! `Z(C ∩ F) = ZC ∩ H_F`. Normality is decided by testing every lattice point
//! in the fundamental parallelepipeds of a triangulation for membership in the
//! semigroup.

use std::collections::BTreeSet;
use std::fmt;

use crate::cone::{
    self, facet_oracle, normalize_support_form, triangulate_and_collect, SupportForm,
};
use crate::error::{Error, Result};
use crate::facets::{enumerate_facet_subgraphs, FacetSubgraph};
use crate::graph::{Edge, ExponentVector, MixedGraph};
use crate::lattice::{default_coeff_bound, lattice_equal, semigroup_member, Lattice};

/// Per-facet-subgraph data for the combinatorial test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCheck {
    pub edges: Vec<Edge>,
    pub comp_h: usize,
    pub comp_g: usize,
    /// `Z rho(E(H)) = Z rho(E(G)) ∩ ker(e*_L - e*_R)` for the first witness.
    pub lattice_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R1Verdict {
    pub satisfied: bool,
    /// First facet subgraph (in canonical order) with `comp(H) > comp(G) + 1`.
    pub violating_subgraph: Option<FacetSubgraph>,
    pub per_facet_report: Vec<FacetCheck>,
}

/// The three supporting-form conditions evaluated on one polyhedral facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFormCheck {
    pub zero_edges: Vec<Edge>,
    pub form: SupportForm,
    pub value_one_attained: bool,
    pub lattice_equal: bool,
    /// Normalised generator values outside `{0, 1, 2}`.
    pub anomalous: bool,
}

impl SupportFormCheck {
    pub fn passes(&self) -> bool {
        self.value_one_attained && self.lattice_equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFormVerdict {
    pub satisfied: bool,
    pub facets: Vec<SupportFormCheck>,
}

/// `R1` via facet subgraphs.
pub fn r1_by_theorem(g: &MixedGraph) -> Result<R1Verdict> {
    if cone::cone_dim(g)? == 0 {
        return Ok(R1Verdict {
            satisfied: true,
            violating_subgraph: None,
            per_facet_report: Vec::new(),
        });
    }
    let lattice = Lattice::of_graph(g);
    let comp_g = g.comp();
    let mut report = Vec::new();
    let mut violator = None;
    for h in enumerate_facet_subgraphs(g)? {
        let w = h.witnesses.first().ok_or_else(|| {
            Error::Internal(format!("facet subgraph {:?} has no witness", h.edges))
        })?;
        let sub = Lattice::new(g.n(), h.edges.iter().map(|e| e.exponent(g.n())).collect())?;
        let equal = lattice_equal(&sub, &lattice.kernel_of_form(&w.dual(g.n()))?)?;
        report.push(FacetCheck {
            edges: h.edges.clone(),
            comp_h: h.comp(),
            comp_g,
            lattice_equal: equal,
        });
        if violator.is_none() && h.comp() > comp_g + 1 {
            violator = Some(h);
        }
    }
    Ok(R1Verdict {
        satisfied: violator.is_none(),
        violating_subgraph: violator,
        per_facet_report: report,
    })
}

/// `R1` via the supporting-form conditions on every polyhedral facet.
pub fn r1_by_support_forms(g: &MixedGraph) -> Result<SupportFormVerdict> {
    let lattice = Lattice::of_graph(g);
    let gens = g.exponent_vectors();
    let mut facets = Vec::new();
    for f in facet_oracle(g)? {
        let form = normalize_support_form(g, &f.support)?;
        let values: Vec<i64> = gens
            .iter()
            .map(|x| {
                form.value(&x.0)
                    .ok_or_else(|| Error::Internal("normalised form is not integral".into()))
            })
            .collect::<Result<_>>()?;
        let sub = Lattice::new(
            g.n(),
            f.zero_edges.iter().map(|e| e.exponent(g.n())).collect(),
        )?;
        let on_hyperplane = lattice.kernel_of_form(&form.form.0)?;
        facets.push(SupportFormCheck {
            value_one_attained: values.contains(&1),
            lattice_equal: lattice_equal(&sub, &on_hyperplane)?,
            anomalous: values.iter().any(|v| !(0..=2).contains(v)),
            zero_edges: f.zero_edges,
            form,
        });
    }
    Ok(SupportFormVerdict {
        satisfied: facets.iter().all(SupportFormCheck::passes),
        facets,
    })
}

/// Combinatorial verdict, cross-checked against the supporting-form route.
pub fn r1(g: &MixedGraph) -> Result<R1Verdict> {
    let theorem = r1_by_theorem(g)?;
    let direct = r1_by_support_forms(g)?;
    if theorem.satisfied != direct.satisfied {
        return Err(Error::OracleDisagreement(format!(
            "R1 for {}: facet subgraphs say {}, supporting forms say {}",
            g, theorem.satisfied, direct.satisfied
        )));
    }
    Ok(theorem)
}

/// Whether `R1` agrees for `G` and its augmented signed graph.
pub fn check_augmented_equivalence(g: &MixedGraph) -> Result<bool> {
    let aug = g.augment().base;
    Ok(r1_by_theorem(g)?.satisfied == r1_by_theorem(&aug)?.satisfied)
}

/// Cheap sufficient conditions for normality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FastPath {
    /// Every component is bipartite.
    NoOddCycles,
    /// No component holds two vertex-disjoint odd cycles.
    OddCyclesUnlinked,
}

impl fmt::Display for FastPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FastPath::NoOddCycles => "no odd cycles",
            FastPath::OddCyclesUnlinked => "no two disjoint odd cycles in one component",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal { fast_path: Option<FastPath> },
    NotNormal { hole: ExponentVector },
    Undetermined { reason: String },
}

impl Normality {
    pub fn is_normal(&self) -> Option<bool> {
        match self {
            Normality::Normal { .. } => Some(true),
            Normality::NotNormal { .. } => Some(false),
            Normality::Undetermined { .. } => None,
        }
    }

    pub fn hole(&self) -> Option<&ExponentVector> {
        match self {
            Normality::NotNormal { hole } => Some(hole),
            _ => None,
        }
    }
}

/// Largest component size for which the disjoint-odd-cycle check runs.
const FAST_PATH_COMPONENT_CAP: usize = 14;

/// Which fast path applies, if any.
pub fn normality_fast_path(g: &MixedGraph) -> Option<FastPath> {
    let census = g.component_census();
    if census.components.iter().all(|c| c.is_bipartite()) {
        return Some(FastPath::NoOddCycles);
    }
    for c in census.components.iter().filter(|c| !c.is_bipartite()) {
        if c.vertices.len() > FAST_PATH_COMPONENT_CAP || has_disjoint_odd_cycles(g, &c.vertices) {
            return None;
        }
    }
    Some(FastPath::OddCyclesUnlinked)
}

/// Whether the vertex set splits into two parts each inducing a subgraph
/// with an odd cycle (in the augmented sense).
fn has_disjoint_odd_cycles(g: &MixedGraph, vertices: &[usize]) -> bool {
    let k = vertices.len();
    for mask in 1u32..(1u32 << k) - 1 {
        // each unordered split once
        if mask & 1 == 0 {
            continue;
        }
        let inside = |v: usize, m: u32| {
            vertices
                .iter()
                .position(|&x| x == v)
                .is_some_and(|i| m & (1 << i) != 0)
        };
        let odd = |m: u32| {
            let part: Vec<usize> = (0..k)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| vertices[i])
                .collect();
            let h = g.spanning_subgraph(|e| {
                let (a, b) = e.endpoints();
                inside(a, m) && inside(b, m)
            });
            let census = h.component_census();
            part.iter().any(|&v| {
                census
                    .component_of(v)
                    .is_some_and(|i| !census.components[i].is_bipartite())
            })
        };
        let rest = ((1u32 << k) - 1) & !mask;
        if odd(mask) && odd(rest) {
            return true;
        }
    }
    false
}

/// Normality by exhaustive search, without fast paths.
pub fn normality_oracle(g: &MixedGraph) -> Result<Normality> {
    if cone::cone_dim(g)? == 0 {
        return Ok(Normality::Normal { fast_path: None });
    }
    let gens = g.exponent_vectors();
    let bound = default_coeff_bound(g.n());
    let mut seen = BTreeSet::new();
    let mut undetermined = None;
    for piece in triangulate_and_collect(g)? {
        for p in piece.parallelepiped_points {
            if p.is_zero() || !seen.insert(p.0.clone()) {
                continue;
            }
            match semigroup_member(&gens, &p, bound) {
                Ok(cert) if cert.is_member() => {}
                Ok(_) => return Ok(Normality::NotNormal { hole: p }),
                Err(Error::Inconclusive(msg)) => {
                    undetermined.get_or_insert(msg);
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(match undetermined {
        Some(reason) => Normality::Undetermined { reason },
        None => Normality::Normal { fast_path: None },
    })
}

/// Normality, trying the fast paths before the exhaustive search.
pub fn normality(g: &MixedGraph) -> Result<Normality> {
    if let Some(fp) = normality_fast_path(g) {
        return Ok(Normality::Normal {
            fast_path: Some(fp),
        });
    }
    normality_oracle(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmStatus {
    NotCohenMacaulay,
    NormalHenceCm,
    Undetermined,
}

impl CmStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CmStatus::NotCohenMacaulay => "NOT_COHEN_MACAULAY",
            CmStatus::NormalHenceCm => "NORMAL_HENCE_CM",
            CmStatus::Undetermined => "UNDETERMINED",
        }
    }
}

impl fmt::Display for CmStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmVerdict {
    pub status: CmStatus,
    pub rationale: String,
}

/// Combines an `R1` answer and a normality answer.
pub fn cm_from(r1: bool, normality: &Normality) -> CmVerdict {
    let (status, rationale) = match (normality.is_normal(), r1) {
        (Some(true), _) => (
            CmStatus::NormalHenceCm,
            "normal affine semigroup rings are Cohen-Macaulay",
        ),
        (Some(false), true) => (
            CmStatus::NotCohenMacaulay,
            "R1 holds but the ring is not normal, so S2 fails",
        ),
        (Some(false), false) => (CmStatus::Undetermined, "R1 fails; S2 is not decided"),
        (None, _) => (CmStatus::Undetermined, "normality could not be decided"),
    };
    CmVerdict {
        status,
        rationale: rationale.to_string(),
    }
}

pub fn cm_verdict(g: &MixedGraph) -> Result<CmVerdict> {
    let r1 = r1_by_theorem(g)?.satisfied;
    Ok(cm_from(r1, &normality(g)?))
}

/// Everything computed for one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub graph: MixedGraph,
    pub comp: usize,
    pub bicomp: usize,
    pub cone_dim: usize,
    pub facet_subgraphs: Vec<FacetSubgraph>,
    pub r1: R1Verdict,
    /// Whether the supporting-form cross-check ran (it is skipped above the
    /// polyhedral search's generator cap).
    pub r1_cross_checked: bool,
    pub normality: Normality,
    pub cm: CmVerdict,
}

pub fn analyze(g: &MixedGraph) -> Result<AnalysisReport> {
    let cone_dim = cone::cone_dim(g)?;
    let facet_subgraphs = if cone_dim == 0 {
        Vec::new()
    } else {
        enumerate_facet_subgraphs(g)?
    };
    let theorem = r1_by_theorem(g)?;
    let cross_checked = match r1_by_support_forms(g) {
        Ok(direct) => {
            if direct.satisfied != theorem.satisfied {
                return Err(Error::OracleDisagreement(format!(
                    "R1 for {}: facet subgraphs say {}, supporting forms say {}",
                    g, theorem.satisfied, direct.satisfied
                )));
            }
            true
        }
        Err(Error::ScaleExceeded { .. }) => false,
        Err(e) => return Err(e),
    };
    let normality = normality(g)?;
    let cm = cm_from(theorem.satisfied, &normality);
    Ok(AnalysisReport {
        graph: g.clone(),
        comp: g.comp(),
        bicomp: g.bicomp(),
        cone_dim,
        facet_subgraphs,
        r1: theorem,
        r1_cross_checked: cross_checked,
        normality,
        cm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::rational_cone_member;
    use crate::lattice::lattice_member;

    fn six_cycle() -> MixedGraph {
        MixedGraph::new(
            6,
            [
                Edge::positive(1, 2),
                Edge::negative(2, 3),
                Edge::positive(3, 4),
                Edge::positive(4, 5),
                Edge::negative(5, 6),
                Edge::positive(1, 6),
            ],
        )
        .unwrap()
    }

    fn r1_not_normal() -> MixedGraph {
        MixedGraph::new(
            4,
            [
                Edge::positive(1, 1),
                Edge::negative(1, 2),
                Edge::positive(1, 3),
                Edge::directed(2, 3),
                Edge::negative(2, 4),
                Edge::positive(3, 4),
                Edge::positive(4, 4),
            ],
        )
        .unwrap()
    }

    fn two_loops_on_a_path() -> MixedGraph {
        MixedGraph::new(
            3,
            [
                Edge::positive(1, 1),
                Edge::positive(1, 2),
                Edge::positive(2, 3),
                Edge::positive(3, 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn r1_holds_both_ways_on_non_normal_example() {
        let g = r1_not_normal();
        assert!(r1_by_theorem(&g).unwrap().satisfied);
        let direct = r1_by_support_forms(&g).unwrap();
        assert!(direct.satisfied);
        assert!(direct.facets.iter().all(|f| !f.anomalous));
        assert!(r1(&g).unwrap().satisfied);
    }

    #[test]
    fn single_edge_is_r1() {
        let g = MixedGraph::new(2, [Edge::positive(1, 2)]).unwrap();
        let v = r1(&g).unwrap();
        assert!(v.satisfied);
        assert_eq!(v.per_facet_report.len(), 1);
        assert_eq!(v.per_facet_report[0].comp_h, 2);
    }

    #[test]
    fn r1_violation_is_found_both_ways() {
        let g = two_loops_on_a_path();
        let v = r1_by_theorem(&g).unwrap();
        assert!(!v.satisfied);
        let h = v.violating_subgraph.unwrap();
        assert!(h.comp() > g.comp() + 1);
        assert!(!r1_by_support_forms(&g).unwrap().satisfied);
        // e_1 + e_3 lies in the lattice of G but not in that of H
        let a = ExponentVector(vec![1, 0, 1]);
        assert!(lattice_member(&Lattice::of_graph(&g), &a).unwrap());
        assert!(!lattice_member(&Lattice::of_graph(&h.subgraph(3)), &a).unwrap());
        // per-facet lattice equality fails exactly on the violator
        for c in &v.per_facet_report {
            assert_eq!(c.lattice_equal, c.comp_h <= c.comp_g + 1);
        }
    }

    #[test]
    fn augmented_equivalence_examples() {
        assert!(check_augmented_equivalence(&r1_not_normal()).unwrap());
        let g = MixedGraph::new(2, [Edge::directed(1, 2)]).unwrap();
        assert!(check_augmented_equivalence(&g).unwrap());
    }

    #[test]
    fn r1_not_normal_has_a_hole() {
        let g = r1_not_normal();
        let v = normality(&g).unwrap();
        let hole = v.hole().expect("not normal").clone();
        let gens = g.exponent_vectors();
        assert!(lattice_member(&Lattice::of_graph(&g), &hole).unwrap());
        assert!(rational_cone_member(&gens, &hole).unwrap());
        let cert = semigroup_member(&gens, &hole, 10_000).unwrap();
        assert!(!cert.is_member());
        assert_eq!(cm_verdict(&g).unwrap().status, CmStatus::NotCohenMacaulay);
    }

    #[test]
    fn six_cycle_is_normal() {
        let g = six_cycle();
        assert_eq!(
            normality(&g).unwrap(),
            Normality::Normal {
                fast_path: Some(FastPath::NoOddCycles)
            }
        );
        assert_eq!(normality_oracle(&g).unwrap().is_normal(), Some(true));
        assert_eq!(cm_verdict(&g).unwrap().status, CmStatus::NormalHenceCm);
    }

    #[test]
    fn disjoint_triangles_are_normal() {
        let mut edges = Vec::new();
        for (a, b, c) in [(1, 2, 3), (4, 5, 6)] {
            edges.extend([
                Edge::positive(a, b),
                Edge::positive(a, c),
                Edge::positive(b, c),
            ]);
        }
        let g = MixedGraph::new(6, edges).unwrap();
        assert_eq!(normality_fast_path(&g), Some(FastPath::OddCyclesUnlinked));
        assert_eq!(normality_oracle(&g).unwrap().is_normal(), Some(true));
    }

    #[test]
    fn fast_path_does_not_fire_on_linked_odd_cycles() {
        assert_eq!(normality_fast_path(&r1_not_normal()), None);
        assert_eq!(normality_fast_path(&two_loops_on_a_path()), None);
    }

    #[test]
    fn empty_graph_is_trivially_fine() {
        let g = MixedGraph::empty(3);
        let r = analyze(&g).unwrap();
        assert_eq!(r.cone_dim, 0);
        assert!(r.r1.satisfied);
        assert_eq!(r.cm.status, CmStatus::NormalHenceCm);
        assert_eq!(normality_oracle(&g).unwrap().is_normal(), Some(true));
    }

    #[test]
    fn cm_combinations() {
        let hole = Normality::NotNormal {
            hole: ExponentVector(vec![1]),
        };
        assert_eq!(cm_from(true, &hole).status, CmStatus::NotCohenMacaulay);
        assert_eq!(cm_from(false, &hole).status, CmStatus::Undetermined);
        let unknown = Normality::Undetermined {
            reason: String::new(),
        };
        assert_eq!(cm_from(true, &unknown).status, CmStatus::Undetermined);
        assert_eq!(
            cm_from(false, &Normality::Normal { fast_path: None }).status,
            CmStatus::NormalHenceCm
        );
    }
}
