use edgering::cone::{cone_dim, facet_oracle, triangulate_and_collect};
use edgering::facets::enumerate_facet_subgraphs;
use edgering::io::{parse_graph, report_json};
use edgering::lattice::{lattice_member, Lattice};
use edgering::serre::{analyze, r1, CmStatus};
use edgering::verify::{require_all, verify_graph, Routes};
use edgering::{Edge, Error, ExponentVector, MixedGraph};

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
    parse_graph(
        br#"{"vertices":4,"edges":[
        {"kind":"signed","sign":1,"u":1,"v":1},{"kind":"signed","sign":-1,"u":1,"v":2},
        {"kind":"signed","sign":1,"u":1,"v":3},{"kind":"directed","from":2,"to":3},
        {"kind":"signed","sign":-1,"u":2,"v":4},{"kind":"signed","sign":1,"u":3,"v":4},
        {"kind":"signed","sign":1,"u":4,"v":4}]}"#,
    )
    .unwrap()
    .graph
}

#[test]
fn six_cycle_report() {
    let r = analyze(&six_cycle()).unwrap();
    assert_eq!((r.comp, r.bicomp, r.cone_dim), (1, 1, 5));
    assert!(r.r1.satisfied);
    assert_eq!(r.cm.status, CmStatus::NormalHenceCm);
    assert_eq!(
        enumerate_facet_subgraphs(&six_cycle()).unwrap().len(),
        facet_oracle(&six_cycle()).unwrap().len()
    );
}

#[test]
fn r1_not_normal_report_json() {
    let r = analyze(&r1_not_normal()).unwrap();
    let v = report_json(&r, Some("r1_not_normal"));
    assert_eq!(v["cone_dim"], 4);
    assert_eq!(v["r1"]["satisfied"], true);
    assert_eq!(v["normality"]["normal"], false);
    assert_eq!(v["normality"]["hole"], serde_json::json!([1, 0, 0, 1]));
    assert_eq!(v["cm"]["status"], "NOT_COHEN_MACAULAY");
}

#[test]
fn r1_not_normal_hole_lies_in_a_parallelepiped() {
    let pieces = triangulate_and_collect(&r1_not_normal()).unwrap();
    let hole = ExponentVector(vec![1, 0, 0, 1]);
    assert!(pieces
        .iter()
        .any(|p| p.parallelepiped_points.contains(&hole)));
    assert!(lattice_member(&Lattice::of_graph(&r1_not_normal()), &hole).unwrap());
}

#[test]
fn verification_passes_on_known_graphs() {
    for g in [six_cycle(), r1_not_normal(), MixedGraph::empty(2)] {
        let out = verify_graph(&g, &Routes::default()).unwrap();
        assert!(out.iter().all(|o| o.passed), "{:?}", out);
        require_all(&out).unwrap();
    }
}

#[test]
fn verification_catches_a_broken_facet_route() {
    let routes = Routes {
        facet_subgraphs: |g| {
            let mut v: Vec<Vec<Edge>> = enumerate_facet_subgraphs(g)?
                .into_iter()
                .map(|f| f.edges)
                .collect();
            v.pop();
            Ok(v)
        },
        ..Routes::default()
    };
    let out = verify_graph(&r1_not_normal(), &routes).unwrap();
    let failed: Vec<&str> = out.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    assert_eq!(failed, ["facet correspondence"]);
    assert!(matches!(
        require_all(&out),
        Err(Error::OracleDisagreement(_))
    ));
}

#[test]
fn verification_catches_a_broken_lattice_route() {
    let routes = Routes {
        lattice_criterion: |_, a| Ok(a.coordinate_sum() % 2 == 0),
        ..Routes::default()
    };
    let out = verify_graph(&six_cycle(), &routes).unwrap();
    assert!(out
        .iter()
        .any(|o| o.name == "lattice criterion vs Hermite form" && !o.passed));
}

#[test]
fn r1_failure_is_consistent() {
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
    let v = r1(&g).unwrap();
    assert!(!v.satisfied);
    let r = analyze(&g).unwrap();
    assert!(!r.r1.satisfied);
    assert_ne!(r.cm.status, CmStatus::NotCohenMacaulay);
}

#[test]
fn directed_only_graphs() {
    // a directed triangle spans the plane x1 + x2 + x3 = 0
    let g = MixedGraph::new(
        3,
        [
            Edge::directed(1, 2),
            Edge::directed(2, 3),
            Edge::directed(3, 1),
        ],
    )
    .unwrap();
    assert_eq!(cone_dim(&g).unwrap(), 2);
    let r = analyze(&g).unwrap();
    assert!(r.r1.satisfied);
    assert_eq!(r.normality.is_normal(), Some(true));
}
