//! Isomorphism-class census of small mixed graphs.
//!
//! Every unordered vertex pair carries any subset of `{+, -, →, ←}` and every
//! vertex any subset of `{+loop, -loop}`. Classes are identified by the
//! lexicographically smallest sorted edge list over all vertex relabellings.

use std::collections::BTreeSet;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::cone_dim;
use crate::error::{Error, Result};
use crate::graph::{Edge, MixedGraph, Sign};
use crate::serre::{cm_from, normality, r1_by_support_forms, r1_by_theorem, CmStatus, Normality};

/// Largest vertex count enumerated exhaustively.
pub const EXHAUSTIVE_VERTEX_CAP: usize = 3;
/// Largest vertex count accepted at all (canonical forms cost `n!`).
pub const CANONICAL_VERTEX_CAP: usize = 7;

fn pair_edges(u: usize, v: usize) -> [Edge; 4] {
    [
        Edge::positive(u, v),
        Edge::negative(u, v),
        Edge::directed(u, v),
        Edge::directed(v, u),
    ]
}

fn slots(n: usize) -> Vec<Vec<Edge>> {
    let mut out = Vec::new();
    for u in 1..=n {
        out.push(vec![Edge::positive(u, u), Edge::negative(u, u)]);
    }
    for u in 1..=n {
        for v in u + 1..=n {
            out.push(pair_edges(u, v).to_vec());
        }
    }
    out
}

/// Number of raw labelled graphs on exactly `n` vertices.
pub fn raw_count(n: usize) -> u64 {
    slots(n).iter().map(|s| 1u64 << s.len()).product()
}

fn graph_from_bits(n: usize, slots: &[Vec<Edge>], mut bits: u64) -> MixedGraph {
    let mut edges = Vec::new();
    for s in slots {
        for e in s {
            if bits & 1 == 1 {
                edges.push(*e);
            }
            bits >>= 1;
        }
    }
    MixedGraph::new(n, edges).expect("census edges are valid")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (1..=n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// The class representative: minimal sorted edge list over all relabellings.
pub fn canonical_form(g: &MixedGraph) -> Result<MixedGraph> {
    if g.n() > CANONICAL_VERTEX_CAP {
        return Err(Error::ScaleExceeded {
            what: "canonical form vertex count",
            limit: CANONICAL_VERTEX_CAP,
            actual: g.n(),
        });
    }
    Ok(canonical_with(g, &permutations(g.n())))
}

fn canonical_with(g: &MixedGraph, perms: &[Vec<usize>]) -> MixedGraph {
    perms
        .iter()
        .map(|p| g.relabel(p))
        .min_by(|a, b| a.edges().cmp(b.edges()))
        .unwrap_or_else(|| g.clone())
}

pub fn canonical_key(g: &MixedGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|e| e.to_string()).collect();
    format!("{}:{}", g.n(), edges.join(","))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSummary {
    pub positive: usize,
    pub negative: usize,
    pub loops: usize,
    pub directed: usize,
}

impl EdgeSummary {
    fn of(g: &MixedGraph) -> Self {
        let mut s = EdgeSummary::default();
        for e in g.edges() {
            match e {
                Edge::Directed { .. } => s.directed += 1,
                Edge::Signed { sign, .. } => {
                    if e.is_loop() {
                        s.loops += 1;
                    }
                    if sign.value() > 0 {
                        s.positive += 1;
                    } else {
                        s.negative += 1;
                    }
                }
            }
        }
        s
    }
}

/// `true`, `false` or `"undetermined"` in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormalField {
    Known(bool),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub canonical_form: String,
    pub n: usize,
    pub edges: EdgeSummary,
    pub comp: usize,
    pub bicomp: usize,
    pub cone_dim: usize,
    pub r1: bool,
    /// `R1` as decided by the supporting-form conditions.
    pub r1_support_forms: bool,
    pub normal: NormalField,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hole: Option<Vec<i64>>,
    pub cm: String,
}

impl CensusRecord {
    pub fn is_normal(&self) -> Option<bool> {
        match self.normal {
            NormalField::Known(b) => Some(b),
            NormalField::Unknown(_) => None,
        }
    }
}

/// Classifies one graph (already in canonical form).
pub fn classify(g: &MixedGraph) -> Result<CensusRecord> {
    let r1 = r1_by_theorem(g)?.satisfied;
    let r1_support_forms = r1_by_support_forms(g)?.satisfied;
    let norm = normality(g)?;
    let cm = cm_from(r1, &norm);
    Ok(CensusRecord {
        canonical_form: canonical_key(g),
        n: g.n(),
        edges: EdgeSummary::of(g),
        comp: g.comp(),
        bicomp: g.bicomp(),
        cone_dim: cone_dim(g)?,
        r1,
        r1_support_forms,
        normal: match &norm {
            Normality::Normal { .. } => NormalField::Known(true),
            Normality::NotNormal { .. } => NormalField::Known(false),
            Normality::Undetermined { .. } => NormalField::Unknown("undetermined".into()),
        },
        hole: norm.hole().map(|h| h.0.clone()),
        cm: cm.status.as_str().to_string(),
    })
}

/// Census options.
#[derive(Clone, Debug, Default)]
pub struct CensusConfig {
    pub max_n: usize,
    /// Random raw graphs per vertex count instead of exhaustive enumeration.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Extra graphs classified alongside the enumeration.
    pub inject: Vec<MixedGraph>,
}

/// Canonical representatives of every class covered by the configuration,
/// sorted by `(n, edges)`.
pub fn enumerate_classes(cfg: &CensusConfig) -> Result<Vec<MixedGraph>> {
    if cfg.max_n > CANONICAL_VERTEX_CAP {
        return Err(Error::ScaleExceeded {
            what: "census vertex count",
            limit: CANONICAL_VERTEX_CAP,
            actual: cfg.max_n,
        });
    }
    if cfg.sample.is_none() && cfg.max_n > EXHAUSTIVE_VERTEX_CAP {
        return Err(Error::ScaleExceeded {
            what: "exhaustive census vertex count (use sampling)",
            limit: EXHAUSTIVE_VERTEX_CAP,
            actual: cfg.max_n,
        });
    }
    let mut classes: BTreeSet<(usize, Vec<Edge>)> = BTreeSet::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 1..=cfg.max_n {
        let s = slots(n);
        let perms = permutations(n);
        let raw: Vec<MixedGraph> = match cfg.sample {
            None => (0..raw_count(n))
                .map(|bits| graph_from_bits(n, &s, bits))
                .collect(),
            Some(p) => (0..p)
                .map(|_| {
                    let edges = s.iter().flatten().filter(|_| rng.gen_bool(0.5)).copied();
                    MixedGraph::new(n, edges).expect("census edges are valid")
                })
                .collect(),
        };
        let reps: BTreeSet<Vec<Edge>> = raw
            .par_iter()
            .map(|g| canonical_with(g, &perms).edges().to_vec())
            .collect();
        classes.extend(reps.into_iter().map(|e| (n, e)));
    }
    for g in &cfg.inject {
        let c = canonical_form(g)?;
        classes.insert((c.n(), c.edges().to_vec()));
    }
    Ok(classes
        .into_iter()
        .map(|(n, e)| MixedGraph::new(n, e).expect("valid"))
        .collect())
}

/// Classifies every class in parallel; records come back sorted.
pub fn run_census(cfg: &CensusConfig) -> Result<Vec<CensusRecord>> {
    let classes = enumerate_classes(cfg)?;
    classes.par_iter().map(classify).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub classes: usize,
    pub r1: usize,
    pub normal: usize,
    pub undetermined: usize,
    pub r1_and_not_normal: usize,
    pub normal_and_not_r1: usize,
    pub method_disagreements: usize,
    pub not_cohen_macaulay: usize,
}

pub fn summarize(records: &[CensusRecord]) -> CensusSummary {
    let mut s = CensusSummary {
        classes: records.len(),
        ..Default::default()
    };
    for r in records {
        s.r1 += r.r1 as usize;
        match r.is_normal() {
            Some(true) => {
                s.normal += 1;
                s.normal_and_not_r1 += !r.r1 as usize;
            }
            Some(false) => s.r1_and_not_normal += r.r1 as usize,
            None => s.undetermined += 1,
        }
        s.method_disagreements += (r.r1 != r.r1_support_forms) as usize;
        s.not_cohen_macaulay += (r.cm == CmStatus::NotCohenMacaulay.as_str()) as usize;
    }
    s
}

/// Writes one JSON record per line.
pub fn write_json_lines<W: Write>(records: &[CensusRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// A random mixed graph on `n` vertices with at most `max_edges` edges.
/// Directed edges appear only when `directed` is set.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, max_edges: usize, directed: bool) -> MixedGraph {
    let k = rng.gen_range(0..=max_edges);
    let kinds = if directed { 3 } else { 2 };
    let mut edges = Vec::with_capacity(k);
    while edges.len() < k {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        let e = match rng.gen_range(0..kinds) {
            0 => Edge::positive(u, v),
            1 => Edge::negative(u, v),
            _ if u != v => Edge::directed(u, v),
            _ => continue,
        };
        edges.push(e);
    }
    MixedGraph::new(n, edges).expect("random edges are valid")
}

/// A random connected signed graph: a random spanning tree plus up to
/// `extra` further signed edges or loops.
pub fn random_connected_signed_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> MixedGraph {
    let sign = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    };
    let mut edges = Vec::new();
    for v in 2..=n {
        let u = rng.gen_range(1..v);
        edges.push(Edge::signed(sign(rng), u, v));
    }
    for _ in 0..rng.gen_range(0..=extra) {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        edges.push(Edge::signed(sign(rng), u, v));
    }
    MixedGraph::new(n, edges).expect("random edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_connected_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let g = random_connected_signed_graph(&mut rng, n, 4);
            assert_eq!(g.comp(), 1);
            assert!(g.is_signed());
        }
    }

    #[test]
    fn raw_counts() {
        assert_eq!(raw_count(1), 4);
        assert_eq!(raw_count(2), 256);
        assert_eq!(raw_count(3), 262_144);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let g = MixedGraph::new(3, [Edge::directed(3, 1), Edge::positive(2, 2)]).unwrap();
        let h = g.relabel(&[2, 3, 1]);
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert_eq!(canonical_key(&canonical_form(&g).unwrap()), "3:+11,(2,3)");
    }

    #[test]
    fn one_vertex_census() {
        let cfg = CensusConfig {
            max_n: 1,
            ..Default::default()
        };
        let recs = run_census(&cfg).unwrap();
        assert_eq!(recs.len(), 4);
        let plus = recs.iter().find(|r| r.canonical_form == "1:+11").unwrap();
        assert_eq!(plus.bicomp, 0);
        assert_eq!(plus.cone_dim, 1);
        assert!(plus.r1);
        assert_eq!(plus.normal, NormalField::Known(true));
    }

    #[test]
    fn two_vertex_census_has_no_r1_non_normal_class() {
        let cfg = CensusConfig {
            max_n: 2,
            ..Default::default()
        };
        let recs = run_census(&cfg).unwrap();
        let s = summarize(&recs);
        assert_eq!(s.r1_and_not_normal, 0);
        assert_eq!(s.method_disagreements, 0);
        assert_eq!(s.undetermined, 0);
    }

    #[test]
    fn exhaustive_refuses_four_vertices() {
        let cfg = CensusConfig {
            max_n: 4,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_classes(&cfg),
            Err(Error::ScaleExceeded { .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let cfg = CensusConfig {
            max_n: 3,
            sample: Some(50),
            seed: 7,
            inject: Vec::new(),
        };
        assert_eq!(
            enumerate_classes(&cfg).unwrap(),
            enumerate_classes(&cfg).unwrap()
        );
    }

    #[test]
    fn sampling_reaches_larger_graphs() {
        let cfg = CensusConfig {
            max_n: 6,
            sample: Some(3),
            seed: 1,
            inject: Vec::new(),
        };
        let classes = enumerate_classes(&cfg).unwrap();
        assert!(classes.iter().any(|g| g.n() == 6));
    }

    #[test]
    fn json_lines_round_trip() {
        let cfg = CensusConfig {
            max_n: 1,
            ..Default::default()
        };
        let recs = run_census(&cfg).unwrap();
        let mut buf = Vec::new();
        write_json_lines(&recs, &mut buf).unwrap();
        let back: Vec<CensusRecord> = String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(back, recs);
    }
}
