//! Exact spanning-tree counts, edge densities and resistance distances.
//!
//! Everything is computed from the Laplacian with multiplicities as integer
//! weights and one vertex grounded. Determinants use fraction-free
//! (Bareiss) elimination over `BigInt`, so no value is ever rounded.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeRef, GraphError, Multigraph, VertexId};
use crate::rational::format_ratio;

/// Number of spanning trees; zero exactly when the graph is disconnected.
pub type TreeCount = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KirchhoffError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
}

pub type Result<T> = std::result::Result<T, KirchhoffError>;

/// Laplacian with the last vertex's row and column removed.
pub fn reduced_laplacian(g: &Multigraph) -> Vec<Vec<BigInt>> {
    let n = g.vertex_count() - 1;
    let mut lap = vec![vec![0i64; n]; n];
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let w = e.multiplicity() as i64;
        if u < n {
            lap[u][u] += w;
        }
        if v < n {
            lap[v][v] += w;
        }
        if u < n && v < n {
            lap[u][v] -= w;
            lap[v][u] -= w;
        }
    }
    lap.into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect()
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let mut t = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    t -= &factor * &pivot_row[j];
                }
                row[j] = t / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant and adjugate of a matrix whose leading principal minors are
/// all non-zero (true for the reduced Laplacian of a connected graph), by
/// fraction-free Gauss-Jordan elimination on `[A | I]`.
///
/// Returns `None` if a zero pivot shows up.
pub fn determinant_and_adjugate(a: &[Vec<BigInt>]) -> Option<(BigInt, Vec<Vec<BigInt>>)> {
    let n = a.len();
    if n == 0 {
        return Some((BigInt::one(), Vec::new()));
    }
    let width = 2 * n;
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = Vec::with_capacity(width);
            r.extend(row.iter().cloned());
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            return None;
        }
        let pivot_row = std::mem::take(&mut m[k]);
        let pivot = &pivot_row[k];
        // Columns where the pivot row is zero only need the p/prev rescale.
        let live: Vec<usize> = (0..width)
            .filter(|&j| j != k && !pivot_row[j].is_zero())
            .collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = std::mem::take(&mut row[k]);
            if factor.is_zero() {
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * pivot / &prev;
                    }
                }
            } else {
                let mut is_live = live.iter().peekable();
                for (j, x) in row.iter_mut().enumerate() {
                    if j == k {
                        continue;
                    }
                    let hit = is_live.peek() == Some(&&j);
                    if hit {
                        is_live.next();
                        let t = &*x * pivot - &factor * &pivot_row[j];
                        *x = t / &prev;
                    } else if !x.is_zero() {
                        *x = &*x * pivot / &prev;
                    }
                }
            }
        }
        prev = pivot.clone();
        m[k] = pivot_row;
    }
    let det = prev;
    let adj = m.into_iter().map(|row| row[n..].to_vec()).collect();
    Some((det, adj))
}

fn to_count(x: BigInt) -> TreeCount {
    match x.sign() {
        Sign::Minus => panic!("negative spanning tree count {x}"),
        _ => x.magnitude().clone(),
    }
}

/// Number of spanning trees, with every unit of a parallel bundle counted as
/// a distinct edge.
pub fn tau(g: &Multigraph) -> TreeCount {
    if g.vertex_count() == 1 {
        return TreeCount::one();
    }
    to_count(determinant(reduced_laplacian(g)))
}

/// Spanning trees containing one fixed unit of `e`, as `tau(g / e)`.
pub fn tau_edge(g: &Multigraph, e: EdgeRef) -> Result<TreeCount> {
    Ok(tau(&g.contract(e)?))
}

pub fn density(g: &Multigraph, e: EdgeRef) -> Result<BigRational> {
    g.edge(e)?;
    let total = tau(g);
    if total.is_zero() {
        return Err(KirchhoffError::Disconnected);
    }
    let inside = tau_edge(g, e)?;
    Ok(BigRational::new(inside.into(), total.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDensity {
    pub edge: EdgeRef,
    /// Spanning trees through one unit of the bundle.
    pub tau_edge: TreeCount,
    pub density: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub tau: TreeCount,
    pub per_edge: Vec<EdgeDensity>,
    pub dep: BigRational,
    /// Every record attaining `dep`, in ascending index order.
    pub argmax: Vec<EdgeRef>,
}

impl DensityReport {
    pub fn density_of(&self, e: EdgeRef) -> &BigRational {
        &self.per_edge[e.0].density
    }

    pub fn tau_edge_of(&self, e: EdgeRef) -> &TreeCount {
        &self.per_edge[e.0].tau_edge
    }

    /// Sum of densities over all edge units of `g` (Foster's sum).
    pub fn unit_density_sum(&self, g: &Multigraph) -> BigRational {
        self.per_edge
            .iter()
            .zip(g.edges())
            .map(|(d, rec)| &d.density * BigRational::from_integer(rec.multiplicity().into()))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn to_json(&self, g: &Multigraph) -> DensityReportJson {
        DensityReportJson {
            tau: self.tau.to_string(),
            edges: self
                .per_edge
                .iter()
                .zip(g.edges())
                .map(|(d, rec)| EdgeDensityJson {
                    u: rec.u(),
                    v: rec.v(),
                    mult: rec.multiplicity(),
                    tau_e: d.tau_edge.to_string(),
                    density: format_ratio(&d.density),
                })
                .collect(),
            dep: format_ratio(&self.dep),
            argmax: self.argmax.iter().map(|e| e.0).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDensityJson {
    pub u: usize,
    pub v: usize,
    pub mult: u64,
    pub tau_e: String,
    pub density: String,
}

/// Wire form of a [`DensityReport`]: big integers as decimal strings and
/// densities as reduced `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReportJson {
    pub tau: String,
    pub edges: Vec<EdgeDensityJson>,
    pub dep: String,
    pub argmax: Vec<usize>,
}

/// Densities of every edge record from a single adjugate of the reduced
/// Laplacian: with `M = adj(L0)`, the trees through a unit `uv` number
/// `M[u][u] + M[v][v] - 2 M[u][v]` (grounded entries read as zero).
pub fn density_report(g: &Multigraph) -> Result<DensityReport> {
    if g.edges().is_empty() {
        return Err(KirchhoffError::NoEdges);
    }
    if !g.is_connected() {
        return Err(KirchhoffError::Disconnected);
    }
    // The Bareiss determinant is authoritative; the per-edge counts come
    // from the modular route, which must reproduce it.
    let tau_total = tau(g);
    let (modular_total, through) = crate::modular::edge_tree_counts(g);
    assert_eq!(modular_total, tau_total, "modular determinant disagrees with Bareiss");
    let total = BigInt::from(tau_total.clone());
    let per_edge: Vec<EdgeDensity> = through
        .into_iter()
        .enumerate()
        .map(|(idx, count)| EdgeDensity {
            edge: EdgeRef(idx),
            density: BigRational::new(BigInt::from(count.clone()), total.clone()),
            tau_edge: count,
        })
        .collect();
    let dep = per_edge
        .iter()
        .map(|d| &d.density)
        .max()
        .cloned()
        .expect("at least one edge");
    let argmax = per_edge
        .iter()
        .filter(|d| d.density == dep)
        .map(|d| d.edge)
        .collect();
    Ok(DensityReport {
        tau: tau_total,
        per_edge,
        dep,
        argmax,
    })
}

/// Spanning 2-component forests that separate `u` from `v` and contain one
/// fixed unit of `e`. An edge joining `u` and `v` can never lie in such a
/// forest, so that case returns zero.
pub fn thicket_count(g: &Multigraph, e: EdgeRef, u: VertexId, v: VertexId) -> Result<TreeCount> {
    let rec = g.edge(e)?;
    for w in [u.0, v.0] {
        if w >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange(w).into());
        }
    }
    if u == v {
        return Err(GraphError::SameVertex(u.0).into());
    }
    if rec.joins(u.0, v.0) {
        return Ok(TreeCount::zero());
    }
    let (merged, map) = g.identify_mapped(u.0, v.0);
    let image = map[e.0].expect("only u-v edges become loops");
    tau_edge(&merged, EdgeRef(image))
}

/// Effective resistance between `u` and `v` with unit resistors on every
/// edge unit: `tau(g with u, v identified) / tau(g)`.
pub fn resistance(g: &Multigraph, u: VertexId, v: VertexId) -> Result<BigRational> {
    let merged = g.identify(u, v)?;
    let total = tau(g);
    if total.is_zero() {
        return Err(KirchhoffError::Disconnected);
    }
    Ok(BigRational::new(tau(&merged).into(), total.into()))
}

/// Lower bound on the dependence from averaging Foster's sum:
/// `dep(G) >= (|V| - 1) / |E|`.
pub fn average_density(g: &Multigraph) -> BigRational {
    BigRational::new(
        BigInt::from(g.vertex_count() - 1),
        BigInt::from(g.edge_units()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::rational::ratio;

    fn count(n: u64) -> TreeCount {
        TreeCount::from(n)
    }

    #[test]
    fn tau_small_graphs() {
        assert_eq!(tau(&complete(3)), count(3));
        assert_eq!(tau(&complete_bipartite(2, 3)), count(12));
        assert_eq!(tau(&bond(3)), count(3));
        assert_eq!(tau(&complete(5)), count(125));
        assert_eq!(tau(&Multigraph::new(1).unwrap()), count(1));
        assert_eq!(tau(&Multigraph::new(3).unwrap()), count(0));
    }

    #[test]
    fn tau_theta_123() {
        // u=0, v=1; paths of length 1, 2, 3
        let g = Multigraph::from_pairs(5, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]).unwrap();
        assert_eq!(tau(&g), count(11));
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1)],
        ];
        assert_eq!(determinant(m), BigInt::from(-6));
        let singular = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert_eq!(determinant(singular), BigInt::zero());
    }

    #[test]
    fn adjugate_inverts() {
        let lap = reduced_laplacian(&complete_bipartite(3, 3));
        let (det, adj) = determinant_and_adjugate(&lap).unwrap();
        assert_eq!(det, determinant(lap.clone()));
        let n = lap.len();
        for i in 0..n {
            for j in 0..n {
                let s: BigInt = (0..n).map(|k| &lap[i][k] * &adj[k][j]).sum();
                let want = if i == j { det.clone() } else { BigInt::zero() };
                assert_eq!(s, want);
            }
        }
    }

    #[test]
    fn tau_edge_examples() {
        assert_eq!(tau_edge(&complete(3), EdgeRef(1)).unwrap(), count(2));
        // pendant edge 3-0 on a triangle is a cut edge
        let mut g = complete(4).delete_bundle(EdgeRef(5)).unwrap();
        g = g.delete_bundle(EdgeRef(4)).unwrap();
        let t = tau(&g);
        assert_eq!(tau_edge(&g, EdgeRef(2)).unwrap(), t);
        assert_eq!(tau_edge(&complete_bipartite(4, 3), EdgeRef(5)).unwrap(), count(216));
        assert!(tau_edge(&g, EdgeRef(9)).is_err());
    }

    #[test]
    fn cycle_report() {
        let g = cycle(4);
        let r = density_report(&g).unwrap();
        assert!(r.per_edge.iter().all(|d| d.density == ratio(3, 4)));
        assert_eq!(r.dep, ratio(3, 4));
        assert_eq!(r.argmax.len(), 4);
        assert_eq!(r.unit_density_sum(&g), ratio(3, 1));
    }

    #[test]
    fn k4_report() {
        let r = density_report(&complete(4)).unwrap();
        assert_eq!(r.tau, count(16));
        assert_eq!(r.dep, ratio(1, 2));
        assert!(r.per_edge.iter().all(|d| d.density == ratio(1, 2)));
    }

    #[test]
    fn report_matches_contraction_route() {
        let g = Multigraph::from_edges(4, [(0, 1, 2), (1, 2, 1), (2, 3, 3), (3, 0, 1), (0, 2, 1)]).unwrap();
        let r = density_report(&g).unwrap();
        assert_eq!(r.tau, tau(&g));
        for e in g.edge_refs() {
            assert_eq!(r.tau_edge_of(e), &tau_edge(&g, e).unwrap());
            assert_eq!(r.density_of(e), &density(&g, e).unwrap());
        }
    }

    #[test]
    fn report_errors() {
        let split = Multigraph::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(density_report(&split), Err(KirchhoffError::Disconnected));
        assert_eq!(density(&split, EdgeRef(0)), Err(KirchhoffError::Disconnected));
        let lonely = Multigraph::new(1).unwrap();
        assert_eq!(density_report(&lonely), Err(KirchhoffError::NoEdges));
    }

    #[test]
    fn bundle_units_share_density() {
        let g = bond(3);
        let r = density_report(&g).unwrap();
        assert_eq!(r.per_edge[0].density, ratio(1, 3));
        assert_eq!(r.per_edge[0].tau_edge, count(1));
    }

    #[test]
    fn thicket_examples() {
        // triangle on a=0, b=1, c=2; edge ac is index 1
        let g = complete(3);
        assert_eq!(thicket_count(&g, EdgeRef(1), VertexId(0), VertexId(1)).unwrap(), count(1));
        assert_eq!(thicket_count(&g, EdgeRef(0), VertexId(0), VertexId(1)).unwrap(), count(0));
        // K_{4,3}: key edge u=0 (X side), v=4 (Y side); e = u-5 is adjacent at u
        let k = complete_bipartite(4, 3);
        let e = EdgeRef(1);
        assert_eq!(k.edges()[1].endpoints(), (0, 5));
        assert_eq!(thicket_count(&k, e, VertexId(0), VertexId(4)).unwrap(), count(81));
    }

    #[test]
    fn resistance_examples() {
        let g = complete(3);
        assert_eq!(resistance(&g, VertexId(0), VertexId(2)).unwrap(), ratio(2, 3));
        assert!(resistance(&g, VertexId(1), VertexId(1)).is_err());
        let c4 = cycle(4);
        assert_eq!(resistance(&c4, VertexId(0), VertexId(2)).unwrap(), ratio(1, 1));
        // adjacent pair: resistance equals the density of the joining edge
        assert_eq!(
            resistance(&c4, VertexId(0), VertexId(1)).unwrap(),
            density(&c4, EdgeRef(0)).unwrap()
        );
        // Θ(1,3,3) hubs 0 and 1
        let theta = Multigraph::from_pairs(
            6,
            &[(0, 1), (0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1)],
        )
        .unwrap();
        assert_eq!(resistance(&theta, VertexId(0), VertexId(1)).unwrap(), ratio(3, 5));
    }

    #[test]
    fn identify_c4_opposite() {
        let h = cycle(4).identify(VertexId(0), VertexId(2)).unwrap();
        assert_eq!(tau(&h), count(4));
    }

    #[test]
    fn json_shape() {
        let g = complete(3);
        let r = density_report(&g).unwrap();
        let text = serde_json::to_string(&r.to_json(&g)).unwrap();
        assert_eq!(
            text,
            r#"{"tau":"3","edges":[{"u":0,"v":1,"mult":1,"tau_e":"2","density":"2/3"},{"u":0,"v":2,"mult":1,"tau_e":"2","density":"2/3"},{"u":1,"v":2,"mult":1,"tau_e":"2","density":"2/3"}],"dep":"2/3","argmax":[0,1,2]}"#
        );
    }
}
