use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, ExponentVector, MixedGraph};
use crate::lattice::{hermite_form, Lattice};
use crate::linalg::{self, dot};

/// Upper limit on the total number of parallelepiped points collected.
pub const PARALLELEPIPED_POINT_CAP: usize = 100_000;

/// A full-dimensional simplicial cone of the triangulation together with the
/// lattice points of its half-open fundamental parallelepiped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPiece {
    /// Indices into the graph's edge list, ascending.
    pub generator_subset: Vec<usize>,
    pub edges: Vec<Edge>,
    /// Includes the origin.
    pub parallelepiped_points: Vec<ExponentVector>,
}

/// Placing triangulation of `cone(gens)`, inserting generators in
/// lexicographic order. Each simplex is a sorted list of generator indices
/// whose vectors form a basis of the linear span of `gens`.
pub fn placing_triangulation(gens: &[ExponentVector]) -> Result<Vec<Vec<usize>>> {
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    order.sort_by(|&a, &b| gens[a].0.cmp(&gens[b].0).then(a.cmp(&b)));

    let mut simplices: Vec<Vec<usize>> = vec![Vec::new()];
    let mut span: Vec<usize> = Vec::new();
    for p in order {
        let mut trial: Vec<&[i64]> = span.iter().map(|&i| gens[i].coords()).collect();
        trial.push(gens[p].coords());
        if linalg::rank(&trial) > span.len() {
            span.push(p);
            for s in simplices.iter_mut() {
                s.push(p);
                s.sort_unstable();
            }
            continue;
        }
        let span_basis: Vec<&[i64]> = span.iter().map(|&i| gens[i].coords()).collect();
        let mut facet_count: HashMap<Vec<usize>, (usize, usize, usize)> = HashMap::new();
        for (si, s) in simplices.iter().enumerate() {
            for (k, &opposite) in s.iter().enumerate() {
                let mut tau = s.clone();
                tau.remove(k);
                facet_count
                    .entry(tau)
                    .and_modify(|e| e.0 += 1)
                    .or_insert((1, si, opposite));
            }
        }
        let mut added = Vec::new();
        for (tau, (count, _, opposite)) in facet_count {
            if count != 1 {
                continue;
            }
            let constraints: Vec<&[i64]> = tau.iter().map(|&i| gens[i].coords()).collect();
            let u = linalg::normal_in_span(&span_basis, &constraints)?
                .ok_or_else(|| Error::Internal("degenerate simplex in triangulation".into()))?;
            let side = dot(&u, gens[opposite].coords()).signum();
            if side == 0 {
                return Err(Error::Internal(
                    "degenerate simplex in triangulation".into(),
                ));
            }
            if side * dot(&u, gens[p].coords()) < 0 {
                let mut s = tau;
                s.push(p);
                s.sort_unstable();
                added.push(s);
            }
        }
        added.sort();
        simplices.extend(added);
    }
    simplices.retain(|s| !s.is_empty());
    simplices.sort();
    Ok(simplices)
}

/// Points of `L ∩ {Σ λ_i g_i : 0 <= λ_i < 1}` where `L` is the lattice
/// generated by all of `gens` and `g_i` are the generators in `simplex`.
pub fn parallelepiped_points(
    gens: &[ExponentVector],
    lattice: &Lattice,
    simplex: &[usize],
) -> Result<Vec<ExponentVector>> {
    let basis = lattice.hermite_basis();
    let d = basis.len();
    if simplex.len() != d {
        return Err(Error::domain(format!(
            "simplex has {} generators but the lattice has rank {}",
            simplex.len(),
            d
        )));
    }
    let mut m = Vec::with_capacity(d);
    for &i in simplex {
        m.push(
            lattice
                .basis_coefficients(gens[i].coords())
                .ok_or_else(|| Error::Internal("generator outside its own lattice".into()))?,
        );
    }
    let h = hermite_form(&m, d);
    if h.rows.len() != d {
        return Err(Error::domain("simplex generators are linearly dependent"));
    }
    let diag: Vec<usize> = (0..d)
        .map(|k| h.rows[k][k].to_usize().unwrap_or(usize::MAX))
        .collect();
    let volume = diag.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x));
    match volume {
        Some(v) if v <= PARALLELEPIPED_POINT_CAP => {}
        _ => {
            return Err(Error::ScaleExceeded {
                what: "parallelepiped points",
                limit: PARALLELEPIPED_POINT_CAP,
                actual: volume.unwrap_or(usize::MAX),
            })
        }
    }

    let simplex_gens: Vec<&[i64]> = simplex.iter().map(|&i| gens[i].coords()).collect();
    let n = lattice.ambient_dim();
    let mut points = Vec::new();
    let mut c = vec![0usize; d];
    loop {
        let mut x = vec![num_bigint::BigInt::zero(); n];
        for (ck, b) in c.iter().zip(basis) {
            if *ck != 0 {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += bi * *ck;
                }
            }
        }
        let x = linalg::to_i64(&x)?;
        let lambda = linalg::coordinates(&simplex_gens, &x)
            .ok_or_else(|| Error::Internal("lattice point outside the simplex span".into()))?;
        let mut point = x;
        for (l, g) in lambda.iter().zip(&simplex_gens) {
            let f = linalg::floor(l)
                .to_i64()
                .ok_or_else(|| Error::Internal("coefficient exceeds 64 bits".into()))?;
            if f != 0 {
                for (pi, gi) in point.iter_mut().zip(*g) {
                    *pi -= f * gi;
                }
            }
        }
        points.push(ExponentVector(point));

        // odometer over 0 <= c_k < diag_k
        let mut k = 0;
        loop {
            if k == d {
                points.sort_by(|a, b| a.0.cmp(&b.0));
                points.dedup();
                return Ok(points);
            }
            c[k] += 1;
            if c[k] < diag[k] {
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

/// Triangulates `cone(P_G)` and collects every simplex's parallelepiped
/// points. Empty for a zero-dimensional cone.
pub fn triangulate_and_collect(g: &MixedGraph) -> Result<Vec<SimplicialPiece>> {
    let gens = g.exponent_vectors();
    let lattice = Lattice::new(g.n(), gens.clone())?;
    if lattice.rank() == 0 {
        return Ok(Vec::new());
    }
    let mut total = 0usize;
    let mut pieces = Vec::new();
    for simplex in placing_triangulation(&gens)? {
        let points = parallelepiped_points(&gens, &lattice, &simplex)?;
        total += points.len();
        if total > PARALLELEPIPED_POINT_CAP {
            return Err(Error::ScaleExceeded {
                what: "parallelepiped points",
                limit: PARALLELEPIPED_POINT_CAP,
                actual: total,
            });
        }
        pieces.push(SimplicialPiece {
            edges: simplex.iter().map(|&i| g.edges()[i]).collect(),
            generator_subset: simplex,
            parallelepiped_points: points,
        });
    }
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::rational_cone_member;
    use num_rational::BigRational;
    use num_traits::{One, Signed};

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn triangulating_a_square_cone() {
        // cone over a square has two triangles
        let gens = [
            ev(&[1, 0, 1]),
            ev(&[0, 1, 1]),
            ev(&[-1, 0, 1]),
            ev(&[0, -1, 1]),
        ];
        let t = placing_triangulation(&gens).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|s| s.len() == 3));
    }

    #[test]
    fn triangulating_a_line_and_the_plane() {
        let t = placing_triangulation(&[ev(&[1]), ev(&[-1])]).unwrap();
        assert_eq!(t, vec![vec![0], vec![1]]);
        let gens = [ev(&[1, 0]), ev(&[0, 1]), ev(&[-1, 0]), ev(&[0, -1])];
        assert_eq!(placing_triangulation(&gens).unwrap().len(), 4);
    }

    #[test]
    fn triangle_graph_parallelepiped() {
        // the triangle's exponent vectors generate an index-2 sublattice of Z^3
        // and form a lattice basis of it, so the origin is the only point
        let g = MixedGraph::new(
            3,
            [
                Edge::positive(1, 2),
                Edge::positive(1, 3),
                Edge::positive(2, 3),
            ],
        )
        .unwrap();
        let pieces = triangulate_and_collect(&g).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].parallelepiped_points, vec![ev(&[0, 0, 0])]);
    }

    #[test]
    fn points_lie_in_the_half_open_parallelepiped() {
        let gens = [ev(&[2, 0]), ev(&[1, 2]), ev(&[0, 1])];
        let l = Lattice::new(2, gens.to_vec()).unwrap();
        let pts = parallelepiped_points(&gens, &l, &[0, 1]).unwrap();
        // |det [[2,0],[1,2]]| = 4 over Z^2
        assert_eq!(pts.len(), 4);
        let simplex: Vec<&[i64]> = vec![&[2, 0], &[1, 2]];
        for p in &pts {
            let lam = linalg::coordinates(&simplex, &p.0).unwrap();
            assert!(lam
                .iter()
                .all(|x| !x.is_negative() && x < &BigRational::one()));
        }
    }

    #[test]
    fn simplices_cover_random_cone_points() {
        let g = MixedGraph::new(
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
        .unwrap();
        let gens = g.exponent_vectors();
        let t = placing_triangulation(&gens).unwrap();
        // sums of pairs of generators lie in some simplex
        for a in &gens {
            for b in &gens {
                let x = a + b;
                let hit = t.iter().any(|s| {
                    let sg: Vec<ExponentVector> = s.iter().map(|&i| gens[i].clone()).collect();
                    rational_cone_member(&sg, &x).unwrap()
                });
                assert!(hit, "{} not covered", x);
            }
        }
    }
}
