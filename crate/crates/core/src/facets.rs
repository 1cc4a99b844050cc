//! Facet subgraphs: recognition, enumeration and the split classification.
//!
//! A facet subgraph `H` of `G` keeps every vertex and drops some edges. It has
//! exactly one more bipartite component than `G`, and each bipartite component
//! of `H` touched by a removed edge has an oriented bipartition `L | R` such
//! that every removed edge is
//!
//! * positive and incident to `L` but not `R`,
//! * negative and incident to `R` but not `L`,
//! * directed `(i, j)` with `j ∈ L`, `i ∉ L`, or
//! * directed `(i, j)` with `i ∈ R`, `j ∉ R`.
//!
//! `L` and `R` are the source vertices of the two colour classes of the
//! augmented component.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, ComponentCensus, Edge, MixedGraph, Sign};

/// Largest vertex count accepted by [`enumerate_facet_subgraphs`].
pub const ENUMERATION_VERTEX_CAP: usize = 12;

/// An oriented bipartition of one component of `H` satisfying the incidence
/// rules for every removed edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Index into `FacetSubgraph::census`.
    pub component: usize,
    pub bipartition: Bipartition,
}

impl Witness {
    /// `e*_L - e*_R` on `n` coordinates.
    pub fn dual(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for &x in &self.bipartition.left {
            v[x - 1] = 1;
        }
        for &x in &self.bipartition.right {
            v[x - 1] = -1;
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSubgraph {
    /// Edges kept, sorted.
    pub edges: Vec<Edge>,
    /// Edges of `G` not in `H`, sorted.
    pub removed: Vec<Edge>,
    /// One witness per bipartite component of `H` that is not a component of `G`.
    pub witnesses: Vec<Witness>,
    /// Components of `H` on the full vertex set of `G`.
    pub census: ComponentCensus,
}

impl FacetSubgraph {
    pub fn comp(&self) -> usize {
        self.census.comp()
    }

    pub fn bicomp(&self) -> usize {
        self.census.bicomp()
    }

    pub fn subgraph(&self, n: usize) -> MixedGraph {
        MixedGraph::new(n, self.edges.iter().copied()).expect("edges come from a valid graph")
    }
}

fn fits(e: &Edge, bp: &Bipartition) -> bool {
    let in_l = |v: usize| bp.left.binary_search(&v).is_ok();
    let in_r = |v: usize| bp.right.binary_search(&v).is_ok();
    match *e {
        Edge::Signed {
            sign: Sign::Positive,
            u,
            v,
        } => (in_l(u) || in_l(v)) && !(in_r(u) || in_r(v)),
        Edge::Signed {
            sign: Sign::Negative,
            u,
            v,
        } => (in_r(u) || in_r(v)) && !(in_l(u) || in_l(v)),
        Edge::Directed { from, to } => (in_l(to) && !in_l(from)) || (in_r(from) && !in_r(to)),
    }
}

/// Checks whether the spanning subgraph on `edge_subset` is a facet subgraph
/// of `g`, returning its witnesses if so. Edges not in `g` are a domain error.
pub fn is_facet_subgraph(g: &MixedGraph, edge_subset: &[Edge]) -> Result<Option<FacetSubgraph>> {
    if let Some(e) = edge_subset.iter().find(|e| !g.contains(e)) {
        return Err(Error::domain(format!("edge {} is not in the graph", e)));
    }
    let h = MixedGraph::new(g.n(), edge_subset.iter().copied())?;
    let census = h.component_census();
    if census.bicomp() != g.bicomp() + 1 {
        return Ok(None);
    }
    let removed: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !h.contains(e))
        .copied()
        .collect();

    let mut witnesses = Vec::new();
    for (idx, comp) in census.bipartite_components() {
        let touched = removed
            .iter()
            .any(|e| comp.contains(e.endpoints().0) || comp.contains(e.endpoints().1));
        if !touched {
            continue;
        }
        let bp = comp.bipartition.as_ref().expect("bipartite component");
        let chosen = [bp.clone(), bp.swapped()]
            .into_iter()
            .find(|b| removed.iter().all(|e| fits(e, b)));
        match chosen {
            Some(bipartition) => witnesses.push(Witness {
                component: idx,
                bipartition,
            }),
            None => return Ok(None),
        }
    }
    Ok(Some(FacetSubgraph {
        edges: h.edges().to_vec(),
        removed,
        witnesses,
        census,
    }))
}

/// All facet subgraphs of `g`, sorted by `(|edges|, edges)`.
///
/// Every facet subgraph is the kernel of some `e*_L - e*_R` with `L`, `R`
/// disjoint, so it suffices to run through sign vectors in `{-1,0,1}^n` up to
/// a global sign and validate each kernel.
pub fn enumerate_facet_subgraphs(g: &MixedGraph) -> Result<Vec<FacetSubgraph>> {
    let n = g.n();
    if n > ENUMERATION_VERTEX_CAP {
        return Err(Error::ScaleExceeded {
            what: "facet subgraph enumeration vertex count",
            limit: ENUMERATION_VERTEX_CAP,
            actual: n,
        });
    }
    let gens = g.exponent_vectors();
    let words = g.edge_count().div_ceil(64).max(1);
    let mut kernels: HashSet<Vec<u64>> = HashSet::new();
    let mut v = vec![0i64; n];
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % 3) as i64 - 1;
            c /= 3;
        }
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut mask = vec![0u64; words];
        let mut full = true;
        for (i, r) in gens.iter().enumerate() {
            if crate::linalg::dot(&v, &r.0) == 0 {
                mask[i / 64] |= 1 << (i % 64);
            } else {
                full = false;
            }
        }
        if !full {
            kernels.insert(mask);
        }
    }
    let mut kernels: Vec<Vec<Edge>> = kernels
        .into_iter()
        .map(|mask| {
            (0..g.edge_count())
                .filter(|&i| mask[i / 64] >> (i % 64) & 1 == 1)
                .map(|i| g.edges()[i])
                .collect()
        })
        .collect();
    kernels.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));

    let mut out = Vec::new();
    for k in kernels {
        if let Some(f) = is_facet_subgraph(g, &k)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// How a facet subgraph changes the one component of `G` it touches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitCase {
    /// The changed component stays connected and becomes bipartite.
    Connected,
    /// The changed component splits into a bipartite `h1` and one more piece `h2`.
    TwoPieces {
        h1: Vec<usize>,
        h2: Vec<usize>,
        g1_bipartite: bool,
        h2_bipartite: bool,
    },
    /// Three or more pieces: `comp(H) > comp(G) + 1`.
    ManyPieces { pieces: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDescription {
    /// Vertices of the changed component of `G`.
    pub changed_component: Vec<usize>,
    pub case: SplitCase,
}

impl SplitDescription {
    /// For two pieces, whether `G1` is bipartite exactly when `H2` is.
    pub fn bipartite_iff_holds(&self) -> Option<bool> {
        match &self.case {
            SplitCase::TwoPieces {
                g1_bipartite,
                h2_bipartite,
                ..
            } => Some(g1_bipartite == h2_bipartite),
            _ => None,
        }
    }
}

/// Identifies the single component of `G` changed by `h` and how it splits.
pub fn classify_split(g: &MixedGraph, h: &FacetSubgraph) -> Result<SplitDescription> {
    let Some(checked) = is_facet_subgraph(g, &h.edges)? else {
        return Err(Error::domain("not a facet subgraph"));
    };
    let gc = g.component_census();
    let mut touched: Vec<usize> = checked
        .removed
        .iter()
        .filter_map(|e| gc.component_of(e.endpoints().0))
        .collect();
    touched.sort_unstable();
    touched.dedup();
    let changed = match touched.as_slice() {
        [one] => *one,
        _ => {
            return Err(Error::Internal(format!(
                "facet subgraph changes {} components",
                touched.len()
            )))
        }
    };
    let g1 = &gc.components[changed];
    let pieces: Vec<&crate::graph::Component> = checked
        .census
        .components
        .iter()
        .filter(|c| g1.contains(c.vertices[0]))
        .collect();
    let case = match pieces.len() {
        1 => SplitCase::Connected,
        2 => {
            let (a, b) = (pieces[0], pieces[1]);
            // prefer the witnessed piece as H1
            let witnessed = |c: &crate::graph::Component| {
                checked
                    .witnesses
                    .iter()
                    .any(|w| checked.census.components[w.component].vertices == c.vertices)
            };
            let (h1, h2) = if a.is_bipartite() && (witnessed(a) || !b.is_bipartite()) {
                (a, b)
            } else {
                (b, a)
            };
            SplitCase::TwoPieces {
                h1: h1.vertices.clone(),
                h2: h2.vertices.clone(),
                g1_bipartite: g1.is_bipartite(),
                h2_bipartite: h2.is_bipartite(),
            }
        }
        _ => SplitCase::ManyPieces {
            pieces: pieces.iter().map(|c| c.vertices.clone()).collect(),
        },
    };
    Ok(SplitDescription {
        changed_component: g1.vertices.clone(),
        case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::facet_oracle;

    fn triangle() -> MixedGraph {
        MixedGraph::new(
            3,
            [
                Edge::positive(1, 2),
                Edge::positive(1, 3),
                Edge::positive(2, 3),
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

    #[test]
    fn single_edge_empty_subgraph() {
        let g = MixedGraph::new(2, [Edge::positive(1, 2)]).unwrap();
        let f = is_facet_subgraph(&g, &[]).unwrap().unwrap();
        assert_eq!(f.bicomp(), 2);
        // both isolated vertices are new bipartite components, each witnessed
        assert_eq!(f.witnesses.len(), 2);
        assert_eq!(f.witnesses[0].bipartition.left, vec![1]);
        assert!(f.witnesses[0].bipartition.right.is_empty());
    }

    #[test]
    fn rejects_the_alternating_split() {
        // {2,3} joined only by (2,3): -12 wants 2 in R, +13 wants 3 in L
        let g = r1_not_normal();
        let keep = [
            Edge::positive(1, 1),
            Edge::positive(4, 4),
            Edge::directed(2, 3),
        ];
        assert!(is_facet_subgraph(&g, &keep).unwrap().is_none());
    }

    #[test]
    fn edges_outside_the_graph_are_rejected() {
        assert!(is_facet_subgraph(&triangle(), &[Edge::negative(1, 2)]).is_err());
    }

    #[test]
    fn triangle_facet_subgraphs_match_oracle() {
        let g = triangle();
        let fs = enumerate_facet_subgraphs(&g).unwrap();
        assert_eq!(fs.len(), 3);
        let oracle: Vec<Vec<Edge>> = facet_oracle(&g)
            .unwrap()
            .into_iter()
            .map(|f| f.zero_edges)
            .collect();
        let ours: Vec<Vec<Edge>> = fs.iter().map(|f| f.edges.clone()).collect();
        assert_eq!(ours, oracle);
        // the cone is simplicial of dimension 3, so facets hold two edges
        assert!(fs.iter().all(|f| f.edges.len() == 2));
        assert!(is_facet_subgraph(&g, &[Edge::positive(1, 2)])
            .unwrap()
            .is_none());
    }

    #[test]
    fn non_normal_example_matches_oracle() {
        let g = r1_not_normal();
        let fs = enumerate_facet_subgraphs(&g).unwrap();
        let oracle: Vec<Vec<Edge>> = facet_oracle(&g)
            .unwrap()
            .into_iter()
            .map(|f| f.zero_edges)
            .collect();
        let ours: Vec<Vec<Edge>> = fs.iter().map(|f| f.edges.clone()).collect();
        assert_eq!(ours, oracle);
        assert!(fs.iter().all(|f| f.comp() <= g.comp() + 1));
    }

    #[test]
    fn witness_values_are_zero_one_two() {
        let g = r1_not_normal();
        for f in enumerate_facet_subgraphs(&g).unwrap() {
            for w in &f.witnesses {
                let d = w.dual(g.n());
                for e in g.edges() {
                    let val = crate::linalg::dot(&d, &e.exponent(g.n()).0);
                    assert!((0..=2).contains(&val));
                    assert_eq!(val > 0, f.removed.contains(e));
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        let g = MixedGraph::new(2, [Edge::positive(1, 2)]).unwrap();
        let f = is_facet_subgraph(&g, &[]).unwrap().unwrap();
        let s = classify_split(&g, &f).unwrap();
        assert_eq!(s.changed_component, vec![1, 2]);
        assert_eq!(
            s.case,
            SplitCase::TwoPieces {
                h1: vec![1],
                h2: vec![2],
                g1_bipartite: true,
                h2_bipartite: true
            }
        );
        assert_eq!(s.bipartite_iff_holds(), Some(true));

        // the path 2-1-3 stays connected and becomes bipartite
        let g = triangle();
        let f = is_facet_subgraph(&g, &[Edge::positive(1, 2), Edge::positive(1, 3)])
            .unwrap()
            .unwrap();
        assert_eq!(classify_split(&g, &f).unwrap().case, SplitCase::Connected);
        assert_eq!(f.witnesses[0].bipartition.left, vec![2, 3]);

        let g = MixedGraph::new(2, [Edge::positive(1, 1), Edge::positive(1, 2)]).unwrap();
        let f = is_facet_subgraph(&g, &[Edge::positive(1, 2)])
            .unwrap()
            .unwrap();
        assert_eq!(classify_split(&g, &f).unwrap().case, SplitCase::Connected);
    }

    #[test]
    fn split_of_an_r1_violation() {
        // two loops joined through vertex 2: dropping both +12 and +23 leaves
        // two odd pieces and an isolated vertex
        let g = MixedGraph::new(
            3,
            [
                Edge::positive(1, 1),
                Edge::positive(1, 2),
                Edge::positive(2, 3),
                Edge::positive(3, 3),
            ],
        )
        .unwrap();
        let f = is_facet_subgraph(&g, &[Edge::positive(1, 1), Edge::positive(3, 3)])
            .unwrap()
            .unwrap();
        assert!(matches!(
            classify_split(&g, &f).unwrap().case,
            SplitCase::ManyPieces { .. }
        ));
        let not_facet = FacetSubgraph {
            edges: g.edges().to_vec(),
            ..f
        };
        assert!(classify_split(&g, &not_facet).is_err());
    }
}
