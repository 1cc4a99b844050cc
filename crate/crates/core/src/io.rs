//! JSON graph documents and report serialisation.
//!
//! ```json
//! {"vertices": 4,
//!  "edges": [{"kind": "signed", "sign": 1, "u": 1, "v": 1},
//!            {"kind": "directed", "from": 2, "to": 3}],
//!  "name": "optional"}
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::facets::FacetSubgraph;
use crate::graph::{Edge, MixedGraph, Sign};
use crate::serre::{AnalysisReport, Normality, R1Verdict, SupportFormVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: usize,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EdgeRecord {
    Signed { sign: i64, u: usize, v: usize },
    Directed { from: usize, to: usize },
}

impl From<&Edge> for EdgeRecord {
    fn from(e: &Edge) -> Self {
        match *e {
            Edge::Signed { sign, u, v } => EdgeRecord::Signed {
                sign: sign.value(),
                u,
                v,
            },
            Edge::Directed { from, to } => EdgeRecord::Directed { from, to },
        }
    }
}

/// A parsed document with any non-fatal diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: MixedGraph,
    pub name: Option<String>,
    pub warnings: Vec<String>,
}

pub fn parse_graph(bytes: &[u8]) -> Result<ParsedGraph> {
    let doc: GraphDocument =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    graph_from_document(&doc)
}

pub fn graph_from_document(doc: &GraphDocument) -> Result<ParsedGraph> {
    let n = doc.vertices;
    let mut edges = Vec::with_capacity(doc.edges.len());
    let mut seen = BTreeSet::new();
    let mut warnings = Vec::new();
    for (idx, rec) in doc.edges.iter().enumerate() {
        let edge = match *rec {
            EdgeRecord::Signed { sign, u, v } => {
                let sign = Sign::from_value(sign).ok_or_else(|| {
                    Error::Parse(format!(
                        "edges[{}]: sign must be 1 or -1, got {}",
                        idx, sign
                    ))
                })?;
                Edge::signed(sign, u, v)
            }
            EdgeRecord::Directed { from, to } => {
                if from == to {
                    return Err(Error::Parse(format!(
                        "edges[{}]: directed loop ({},{}) is not allowed",
                        idx, from, to
                    )));
                }
                Edge::directed(from, to)
            }
        };
        let (a, b) = edge.endpoints();
        for x in [a, b] {
            if x == 0 || x > n {
                return Err(Error::Parse(format!(
                    "edges[{}]: vertex {} outside 1..={}",
                    idx, x, n
                )));
            }
        }
        if !seen.insert(edge) {
            warnings.push(format!("edges[{}]: duplicate edge {} merged", idx, edge));
        }
        edges.push(edge);
    }
    let graph = MixedGraph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(ParsedGraph {
        graph,
        name: doc.name.clone(),
        warnings,
    })
}

pub fn to_document(g: &MixedGraph, name: Option<&str>) -> GraphDocument {
    GraphDocument {
        vertices: g.n(),
        edges: g.edges().iter().map(EdgeRecord::from).collect(),
        name: name.map(str::to_string),
    }
}

pub fn serialize_graph(g: &MixedGraph, name: Option<&str>) -> String {
    serde_json::to_string_pretty(&to_document(g, name)).expect("documents always serialise")
}

fn edge_labels(edges: &[Edge]) -> Value {
    Value::from(edges.iter().map(|e| e.to_string()).collect::<Vec<_>>())
}

pub fn facet_subgraph_json(n: usize, f: &FacetSubgraph) -> Value {
    json!({
        "edges": edge_labels(&f.edges),
        "removed": edge_labels(&f.removed),
        "comp": f.comp(),
        "bicomp": f.bicomp(),
        "witnesses": f.witnesses.iter().map(|w| json!({
            "L": w.bipartition.left,
            "R": w.bipartition.right,
            "augmented_L": w.bipartition.augmented_left,
            "augmented_R": w.bipartition.augmented_right,
            "dual": w.dual(n),
        })).collect::<Vec<_>>(),
    })
}

pub fn r1_json(v: &R1Verdict) -> Value {
    json!({
        "satisfied": v.satisfied,
        "violating_subgraph": v.violating_subgraph.as_ref().map(|h| edge_labels(&h.edges)),
        "facets": v.per_facet_report.iter().map(|c| json!({
            "edges": edge_labels(&c.edges),
            "comp_h": c.comp_h,
            "comp_g": c.comp_g,
            "lattice_equal": c.lattice_equal,
        })).collect::<Vec<_>>(),
    })
}

pub fn support_forms_json(v: &SupportFormVerdict) -> Value {
    json!({
        "satisfied": v.satisfied,
        "facets": v.facets.iter().map(|f| json!({
            "zero_edges": edge_labels(&f.zero_edges),
            "form": f.form.form.0,
            "divisor": f.form.divisor,
            "value_one_attained": f.value_one_attained,
            "lattice_equal": f.lattice_equal,
            "anomalous": f.anomalous,
        })).collect::<Vec<_>>(),
    })
}

pub fn normality_json(v: &Normality) -> Value {
    match v {
        Normality::Normal { fast_path } => json!({
            "normal": true,
            "fast_path": fast_path.map(|f| f.to_string()),
        }),
        Normality::NotNormal { hole } => json!({"normal": false, "hole": hole.0}),
        Normality::Undetermined { reason } => json!({"normal": "undetermined", "reason": reason}),
    }
}

pub fn report_json(r: &AnalysisReport, name: Option<&str>) -> Value {
    json!({
        "name": name,
        "vertices": r.graph.n(),
        "edges": edge_labels(r.graph.edges()),
        "comp": r.comp,
        "bicomp": r.bicomp,
        "cone_dim": r.cone_dim,
        "facet_subgraphs": r.facet_subgraphs.iter().map(|f| facet_subgraph_json(r.graph.n(), f)).collect::<Vec<_>>(),
        "r1": r1_json(&r.r1),
        "r1_cross_checked": r.r1_cross_checked,
        "normality": normality_json(&r.normality),
        "cm": {"status": r.cm.status.as_str(), "rationale": r.cm.rationale},
    })
}

pub fn report_text(r: &AnalysisReport, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(name) = name {
        out.push_str(&format!("graph: {}\n", name));
    }
    out.push_str(&format!("edges: {}\n", r.graph));
    out.push_str(&format!(
        "vertices {}  comp {}  bicomp {}  cone dim {}\n",
        r.graph.n(),
        r.comp,
        r.bicomp,
        r.cone_dim
    ));
    out.push_str(&format!("facet subgraphs: {}\n", r.facet_subgraphs.len()));
    for f in &r.facet_subgraphs {
        out.push_str(&format!(
            "  H = {}  comp {}\n",
            MixedGraph::new(r.graph.n(), f.edges.iter().copied()).expect("subgraph"),
            f.comp()
        ));
    }
    out.push_str(&format!(
        "R1: {}{}\n",
        r.r1.satisfied,
        if r.r1_cross_checked {
            " (cross-checked)"
        } else {
            ""
        }
    ));
    if let Some(h) = &r.r1.violating_subgraph {
        out.push_str(&format!("  violated by H = {}\n", h.subgraph(r.graph.n())));
    }
    match &r.normality {
        Normality::Normal {
            fast_path: Some(fp),
        } => out.push_str(&format!("normal: true ({})\n", fp)),
        Normality::Normal { fast_path: None } => out.push_str("normal: true\n"),
        Normality::NotNormal { hole } => out.push_str(&format!("normal: false, hole {}\n", hole)),
        Normality::Undetermined { reason } => {
            out.push_str(&format!("normal: undetermined ({})\n", reason))
        }
    }
    out.push_str(&format!("CM: {} ({})\n", r.cm.status, r.cm.rationale));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const R1_NOT_NORMAL: &str = r#"{"vertices":4,"edges":[
        {"kind":"signed","sign":1,"u":1,"v":1},
        {"kind":"signed","sign":-1,"u":1,"v":2},
        {"kind":"signed","sign":1,"u":1,"v":3},
        {"kind":"directed","from":2,"to":3},
        {"kind":"signed","sign":-1,"u":2,"v":4},
        {"kind":"signed","sign":1,"u":3,"v":4},
        {"kind":"signed","sign":1,"u":4,"v":4}],"name":"r1_not_normal"}"#;

    #[test]
    fn parses_r1_not_normal() {
        let p = parse_graph(R1_NOT_NORMAL.as_bytes()).unwrap();
        let labels: Vec<String> = p.graph.edges().iter().map(|e| e.to_string()).collect();
        assert_eq!(labels, ["+11", "-12", "+13", "(2,3)", "-24", "+34", "+44"]);
        assert_eq!(p.name.as_deref(), Some("r1_not_normal"));
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn parses_a_single_vertex() {
        let p = parse_graph(br#"{"vertices":1,"edges":[]}"#).unwrap();
        assert_eq!(p.graph, MixedGraph::empty(1));
    }

    #[test]
    fn rejects_bad_documents() {
        let err = parse_graph(br#"{"vertices":2,"edges":[{"kind":"directed","from":2,"to":2}]}"#)
            .unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("edges[0]")));
        assert!(
            parse_graph(br#"{"vertices":2,"edges":[{"kind":"signed","sign":2,"u":1,"v":2}]}"#)
                .is_err()
        );
        assert!(
            parse_graph(br#"{"vertices":2,"edges":[{"kind":"signed","sign":1,"u":1,"v":3}]}"#)
                .is_err()
        );
        assert!(parse_graph(br#"{"vertices":2,"edges":[{"kind":"weird"}]}"#).is_err());
        assert!(parse_graph(b"not json").is_err());
    }

    #[test]
    fn duplicates_are_merged_with_a_warning() {
        let p = parse_graph(
            br#"{"vertices":2,"edges":[{"kind":"signed","sign":1,"u":2,"v":1},{"kind":"signed","sign":1,"u":1,"v":2}]}"#,
        )
        .unwrap();
        assert_eq!(p.graph.edge_count(), 1);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn round_trip() {
        let p = parse_graph(R1_NOT_NORMAL.as_bytes()).unwrap();
        let text = serialize_graph(&p.graph, p.name.as_deref());
        let q = parse_graph(text.as_bytes()).unwrap();
        assert_eq!(p, q);
    }
}
