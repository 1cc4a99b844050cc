//! Mixed signed, directed graphs, their augmented signed graphs and the
//! exponent map.
//!
//! Vertices are labelled `1..=n` everywhere in the public API.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One edge of a mixed graph. Signed edges keep `u <= v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    Signed { sign: Sign, u: usize, v: usize },
    Directed { from: usize, to: usize },
}

impl Edge {
    pub fn signed(sign: Sign, u: usize, v: usize) -> Edge {
        Edge::Signed {
            sign,
            u: u.min(v),
            v: u.max(v),
        }
    }

    pub fn positive(u: usize, v: usize) -> Edge {
        Edge::signed(Sign::Positive, u, v)
    }

    pub fn negative(u: usize, v: usize) -> Edge {
        Edge::signed(Sign::Negative, u, v)
    }

    pub fn directed(from: usize, to: usize) -> Edge {
        Edge::Directed { from, to }
    }

    /// Endpoints in the stored order (`u <= v` for signed edges).
    pub fn endpoints(&self) -> (usize, usize) {
        match *self {
            Edge::Signed { u, v, .. } => (u, v),
            Edge::Directed { from, to } => (from, to),
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, Edge::Directed { .. })
    }

    pub fn is_loop(&self) -> bool {
        let (a, b) = self.endpoints();
        a == b
    }

    pub fn touches(&self, vertex: usize) -> bool {
        let (a, b) = self.endpoints();
        a == vertex || b == vertex
    }

    /// Exponent vector in `Z^n`, without checking membership in any graph.
    pub fn exponent(&self, n: usize) -> ExponentVector {
        let mut coords = vec![0i64; n];
        match *self {
            Edge::Signed { sign, u, v } => {
                coords[u - 1] += sign.value();
                coords[v - 1] += sign.value();
            }
            Edge::Directed { from, to } => {
                coords[from - 1] -= 1;
                coords[to - 1] += 1;
            }
        }
        ExponentVector(coords)
    }

    /// Relabels vertices, `perm[v - 1]` being the new label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Edge {
        match *self {
            Edge::Signed { sign, u, v } => Edge::signed(sign, perm[u - 1], perm[v - 1]),
            Edge::Directed { from, to } => Edge::directed(perm[from - 1], perm[to - 1]),
        }
    }

    fn sort_key(&self) -> (usize, usize, u8) {
        match *self {
            Edge::Signed { sign, u, v } => (u, v, if sign == Sign::Positive { 0 } else { 1 }),
            Edge::Directed { from, to } if from < to => (from, to, 2),
            Edge::Directed { from, to } => (to, from, 3),
        }
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Edge::Signed { sign, u, v } if u < 10 && v < 10 => {
                write!(f, "{}{}{}", sign.symbol(), u, v)
            }
            Edge::Signed { sign, u, v } => write!(f, "{}{}.{}", sign.symbol(), u, v),
            Edge::Directed { from, to } => write!(f, "({},{})", from, to),
        }
    }
}

/// An integer vector; the image of an edge or a lattice element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, vertex: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[vertex - 1] = 1;
        v
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl std::ops::Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// A mixed signed, directed graph on vertices `1..=n`.
///
/// Edges are kept sorted and free of duplicates. The four kinds `+uv`, `-uv`,
/// `(u,v)` and `(v,u)` may coexist on one pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl MixedGraph {
    /// Builds a graph, rejecting out-of-range vertices and directed loops.
    /// Identical edges are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for e in edges {
            let e = match e {
                Edge::Signed { sign, u, v } => Edge::signed(sign, u, v),
                d => d,
            };
            let (a, b) = e.endpoints();
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidGraph(format!(
                    "edge {} has a vertex outside 1..={}",
                    e, n
                )));
            }
            if let Edge::Directed { from, to } = e {
                if from == to {
                    return Err(Error::InvalidGraph(format!(
                        "directed loop ({},{}) is not allowed",
                        from, to
                    )));
                }
            }
            list.push(e);
        }
        list.sort();
        list.dedup();
        Ok(MixedGraph { n, edges: list })
    }

    pub fn empty(n: usize) -> Self {
        MixedGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_directed())
    }

    /// True iff the graph has no directed edges.
    pub fn is_signed(&self) -> bool {
        self.edges.iter().all(|e| !e.is_directed())
    }

    /// The exponent vector of an edge of this graph.
    pub fn rho(&self, e: &Edge) -> Result<ExponentVector> {
        if !self.contains(e) {
            return Err(Error::domain(format!("{} is not an edge of the graph", e)));
        }
        Ok(e.exponent(self.n))
    }

    /// Exponent vectors of all edges, in edge order.
    pub fn exponent_vectors(&self) -> Vec<ExponentVector> {
        self.edges.iter().map(|e| e.exponent(self.n)).collect()
    }

    /// The vertex-spanning subgraph keeping the edges selected by `keep`.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(&Edge) -> bool) -> MixedGraph {
        MixedGraph {
            n: self.n,
            edges: self.edges.iter().copied().filter(|e| keep(e)).collect(),
        }
    }

    /// Adds an edge; returns an error for invalid edges.
    pub fn with_edge(&self, e: Edge) -> Result<MixedGraph> {
        MixedGraph::new(self.n, self.edges.iter().copied().chain(Some(e)))
    }

    /// Relabels vertices, `perm[v - 1]` being the new label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> MixedGraph {
        let mut edges: Vec<Edge> = self.edges.iter().map(|e| e.relabel(perm)).collect();
        edges.sort();
        MixedGraph { n: self.n, edges }
    }

    /// Replaces each directed edge `(i,j)` by an artificial vertex `t` and
    /// the pair `-it`, `+tj`.
    pub fn augment(&self) -> AugmentedGraph {
        let mut next = self.n;
        let mut artificial = Vec::new();
        let mut edges = Vec::with_capacity(self.edges.len() * 2);
        for e in &self.edges {
            match *e {
                Edge::Signed { .. } => edges.push(*e),
                Edge::Directed { from, to } => {
                    next += 1;
                    artificial.push((*e, next));
                    edges.push(Edge::negative(from, next));
                    edges.push(Edge::positive(next, to));
                }
            }
        }
        edges.sort();
        AugmentedGraph {
            base: MixedGraph { n: next, edges },
            source_n: self.n,
            artificial,
        }
    }

    /// Components and bipartite components, computed on the augmented graph.
    pub fn component_census(&self) -> ComponentCensus {
        ComponentCensus::of(&self.augment())
    }

    pub fn comp(&self) -> usize {
        self.component_census().comp()
    }

    pub fn bicomp(&self) -> usize {
        self.component_census().bicomp()
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "}}")
    }
}

/// The augmented signed graph of a mixed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGraph {
    /// Signed graph on `source_n + artificial.len()` vertices.
    pub base: MixedGraph,
    pub source_n: usize,
    /// Each source directed edge with its artificial vertex, in edge order.
    pub artificial: Vec<(Edge, usize)>,
}

impl AugmentedGraph {
    /// The projection forgetting artificial vertices.
    pub fn project(&self, vertex: usize) -> Option<usize> {
        (vertex >= 1 && vertex <= self.source_n).then_some(vertex)
    }

    pub fn artificial_vertex(&self, e: &Edge) -> Option<usize> {
        self.artificial
            .iter()
            .find(|(d, _)| d == e)
            .map(|&(_, t)| t)
    }

    /// Pads a source vector with zeros on the artificial coordinates.
    pub fn lift(&self, a: &ExponentVector) -> ExponentVector {
        let mut coords = a.0.clone();
        coords.resize(self.base.n(), 0);
        ExponentVector(coords)
    }
}

/// A 2-colouring of a bipartite component; `left` holds the component's
/// smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub augmented_left: Vec<usize>,
    pub augmented_right: Vec<usize>,
}

impl Bipartition {
    pub fn swapped(&self) -> Bipartition {
        Bipartition {
            left: self.right.clone(),
            right: self.left.clone(),
            augmented_left: self.augmented_right.clone(),
            augmented_right: self.augmented_left.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    /// Source (non-artificial) vertices, sorted.
    pub vertices: Vec<usize>,
    /// All vertices of the augmented component, sorted.
    pub augmented_vertices: Vec<usize>,
    pub bipartition: Option<Bipartition>,
}

impl Component {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.vertices.binary_search(&vertex).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCensus {
    pub n: usize,
    /// Sorted by smallest vertex.
    pub components: Vec<Component>,
}

impl ComponentCensus {
    fn of(aug: &AugmentedGraph) -> ComponentCensus {
        let total = aug.base.n();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); total + 1];
        let mut has_loop = vec![false; total + 1];
        for e in aug.base.edges() {
            let (a, b) = e.endpoints();
            if a == b {
                has_loop[a] = true;
            } else {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }

        let mut colour: Vec<Option<bool>> = vec![None; total + 1];
        let mut components = Vec::new();
        for start in 1..=total {
            if colour[start].is_some() {
                continue;
            }
            let mut members = vec![start];
            let mut bipartite = !has_loop[start];
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].unwrap();
                for &y in &adjacency[x] {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            bipartite &= !has_loop[y];
                            members.push(y);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => bipartite = false,
                        Some(_) => {}
                    }
                }
            }
            members.sort_unstable();
            let bipartition = bipartite.then(|| {
                let (l, r): (Vec<usize>, Vec<usize>) =
                    members.iter().partition(|&&v| colour[v] == Some(false));
                Bipartition {
                    left: l
                        .iter()
                        .copied()
                        .filter(|&v| aug.project(v).is_some())
                        .collect(),
                    right: r
                        .iter()
                        .copied()
                        .filter(|&v| aug.project(v).is_some())
                        .collect(),
                    augmented_left: l,
                    augmented_right: r,
                }
            });
            components.push(Component {
                vertices: members
                    .iter()
                    .copied()
                    .filter(|&v| aug.project(v).is_some())
                    .collect(),
                augmented_vertices: members,
                bipartition,
            });
        }
        // artificial vertices always sit in a component with a source vertex
        components.retain(|c| !c.vertices.is_empty());
        ComponentCensus {
            n: aug.source_n,
            components,
        }
    }

    pub fn comp(&self) -> usize {
        self.components.len()
    }

    pub fn bicomp(&self) -> usize {
        self.components.iter().filter(|c| c.is_bipartite()).count()
    }

    /// Index of the component containing a source vertex.
    pub fn component_of(&self, vertex: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(vertex))
    }

    pub fn bipartite_components(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_bipartite())
    }
}
