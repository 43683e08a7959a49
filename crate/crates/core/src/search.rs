//! Best-effort exploration of dependences of small simple planar graphs.
//!
//! Candidates come from planar-safe moves only: random stacked
//! triangulations (insert a vertex into a face), edge flips inside the
//! triangulation, and deletions of edges. Every candidate is therefore a
//! subgraph of a planar triangulation, hence simple and planar. Nothing here
//! claims completeness; the output is data.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{named, Multigraph};
use crate::kirchhoff::density_report;

/// A simple planar graph and its dependence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarCandidate {
    pub graph: Multigraph,
    pub dep: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Random triangulations to grow.
    pub rounds: usize,
    /// Edge-deletion variants tried per triangulation.
    pub deletions: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 1,
            rounds: 200,
            deletions: 8,
        }
    }
}

/// Octahedron: all pairs except the three antipodal ones.
pub fn octahedron() -> Multigraph {
    let mut pairs = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            if b != a + 1 || a % 2 == 1 {
                pairs.push((a, b));
            }
        }
    }
    Multigraph::from_pairs(6, &pairs).expect("valid")
}

/// Icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> Multigraph {
    let mut pairs = Vec::new();
    for j in 0..5 {
        let (up, up_next) = (1 + j, 1 + (j + 1) % 5);
        let (low, low_next) = (6 + j, 6 + (j + 1) % 5);
        pairs.extend([(0, up), (up, up_next), (low, low_next), (low, 11)]);
        pairs.extend([(up, low), (up, low_next)]);
    }
    Multigraph::from_pairs(12, &pairs).expect("valid")
}

/// Cube graph `Q_3`.
pub fn cube() -> Multigraph {
    let mut pairs = Vec::new();
    for a in 0..8usize {
        for bit in [1, 2, 4] {
            if a & bit == 0 {
                pairs.push((a, a | bit));
            }
        }
    }
    Multigraph::from_pairs(8, &pairs).expect("valid")
}

/// Wheel: hub 0 joined to every vertex of the rim cycle `1..=n`.
pub fn wheel(n: usize) -> Multigraph {
    assert!(n >= 3);
    let mut pairs: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    pairs.extend((1..=n).map(|i| (i, i % n + 1)));
    Multigraph::from_pairs(n + 1, &pairs).expect("valid")
}

/// Triangular prism.
pub fn prism() -> Multigraph {
    Multigraph::from_pairs(
        6,
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
    .expect("valid")
}

/// Well-known simple planar graphs.
pub fn planar_seeds() -> Vec<(String, Multigraph)> {
    let mut out = vec![
        ("K_4".to_string(), named::complete(4)),
        ("octahedron".to_string(), octahedron()),
        ("icosahedron".to_string(), icosahedron()),
        ("cube".to_string(), cube()),
        ("prism".to_string(), prism()),
    ];
    for n in 3..=8 {
        out.push((format!("W_{n}"), wheel(n)));
    }
    out
}

type Fingerprint = (Vec<u64>, Vec<BigRational>);

/// A planar triangulation as its face list.
struct Triangulation {
    n: usize,
    faces: Vec<[usize; 3]>,
    edges: BTreeSet<(usize, usize)>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Triangulation {
    fn k4() -> Self {
        let faces = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let edges = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        Triangulation { n: 4, faces, edges }
    }

    fn stack(&mut self, f: usize) {
        let [a, b, c] = self.faces[f];
        let w = self.n;
        self.n += 1;
        self.faces[f] = [a, b, w];
        self.faces.push([b, c, w]);
        self.faces.push([a, c, w]);
        self.edges.extend([key(a, w), key(b, w), key(c, w)]);
    }

    /// Replaces edge `ab` by the other diagonal `cd` of its two faces.
    fn flip(&mut self, a: usize, b: usize) -> bool {
        let sides: Vec<usize> = (0..self.faces.len())
            .filter(|&i| self.faces[i].contains(&a) && self.faces[i].contains(&b))
            .collect();
        let [f, g] = sides[..] else { return false };
        let third = |face: [usize; 3]| *face.iter().find(|&&x| x != a && x != b).expect("triangle");
        let (c, d) = (third(self.faces[f]), third(self.faces[g]));
        if c == d || self.edges.contains(&key(c, d)) {
            return false;
        }
        self.edges.remove(&key(a, b));
        self.edges.insert(key(c, d));
        self.faces[f] = [a, c, d];
        self.faces[g] = [b, c, d];
        true
    }

    fn graph(&self, skip: &BTreeSet<(usize, usize)>) -> Multigraph {
        let pairs: Vec<(usize, usize)> = self.edges.iter().copied().filter(|e| !skip.contains(e)).collect();
        Multigraph::from_pairs(self.n, &pairs).expect("valid")
    }
}

fn random_triangulation(rng: &mut ChaCha8Rng, n: usize) -> Triangulation {
    let mut t = Triangulation::k4();
    while t.n < n {
        let f = rng.random_range(0..t.faces.len());
        t.stack(f);
    }
    for _ in 0..3 * n {
        let edges: Vec<(usize, usize)> = t.edges.iter().copied().collect();
        let &(a, b) = edges.choose(rng).expect("edges");
        t.flip(a, b);
    }
    t
}

/// Deletes random edges (keeping the graph connected) until at most
/// `max_edges` remain, then `extra` more where possible.
fn thin(rng: &mut ChaCha8Rng, t: &Triangulation, max_edges: usize, extra: usize) -> Option<Multigraph> {
    let mut skip = BTreeSet::new();
    let mut order: Vec<(usize, usize)> = t.edges.iter().copied().collect();
    let mut removed_extra = 0;
    while t.edges.len() - skip.len() > max_edges || removed_extra < extra {
        let over = t.edges.len() - skip.len() > max_edges;
        let mut progressed = false;
        while let Some(i) = (!order.is_empty()).then(|| rng.random_range(0..order.len())) {
            let e = order.swap_remove(i);
            skip.insert(e);
            if t.graph(&skip).is_connected() {
                progressed = true;
                break;
            }
            skip.remove(&e);
        }
        if !progressed {
            break;
        }
        if !over {
            removed_extra += 1;
        }
    }
    (t.edges.len() - skip.len() <= max_edges).then(|| t.graph(&skip))
}

/// Simple planar graphs with at most `max_vertices` vertices and
/// `max_edges` edges whose dependence lies in `(lo, hi]`, sorted by
/// dependence and then size. Best effort only; graphs sharing their degree
/// sequence and multiset of edge densities are reported once, since such
/// candidates are almost always isomorphic copies.
pub fn search_planar_dep(
    max_vertices: usize,
    max_edges: usize,
    lo: &BigRational,
    hi: &BigRational,
    config: &SearchConfig,
) -> Vec<PlanarCandidate> {
    let mut candidates: Vec<Multigraph> = planar_seeds()
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| g.vertex_count() <= max_vertices && g.edge_units() as usize <= max_edges)
        .collect();
    if max_vertices >= 4 {
        let grown: Vec<Vec<Multigraph>> = (0..config.rounds)
            .into_par_iter()
            .map(|round| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(round as u64));
                let n = rng.random_range(4..=max_vertices);
                let t = random_triangulation(&mut rng, n);
                (0..=config.deletions)
                    .filter_map(|extra| thin(&mut rng, &t, max_edges, extra))
                    .collect()
            })
            .collect();
        candidates.extend(grown.into_iter().flatten());
    }
    let mut seen = BTreeSet::new();
    candidates.retain(|g| seen.insert(g.canonical_edges()));
    let analyzed: Vec<(Fingerprint, PlanarCandidate)> = candidates
        .into_par_iter()
        .filter(|g| g.vertex_count() >= 2 && g.is_connected())
        .filter_map(|graph| {
            let report = density_report(&graph).ok()?;
            let dep = report.dep.clone();
            if !(&dep > lo && &dep <= hi) {
                return None;
            }
            let mut degrees: Vec<u64> = (0..graph.vertex_count()).map(|w| graph.degree(w)).collect();
            degrees.sort();
            let mut densities: Vec<BigRational> = report.per_edge.into_iter().map(|d| d.density).collect();
            densities.sort();
            Some(((degrees, densities), PlanarCandidate { graph, dep }))
        })
        .collect();
    let mut fingerprints = BTreeSet::new();
    let mut found: Vec<PlanarCandidate> = analyzed
        .into_iter()
        .filter(|(f, _)| fingerprints.insert(f.clone()))
        .map(|(_, c)| c)
        .collect();
    found.sort_by(|a, b| {
        a.dep
            .cmp(&b.dep)
            .then(a.graph.vertex_count().cmp(&b.graph.vertex_count()))
            .then(a.graph.edge_units().cmp(&b.graph.edge_units()))
            .then(a.graph.canonical_edges().cmp(&b.graph.canonical_edges()))
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn seeds_have_expected_shapes() {
        let counts: Vec<(usize, u64)> = planar_seeds()
            .iter()
            .map(|(_, g)| (g.vertex_count(), g.edge_units()))
            .take(5)
            .collect();
        assert_eq!(counts, vec![(4, 6), (6, 12), (12, 30), (8, 12), (6, 9)]);
        for (_, g) in planar_seeds() {
            assert!(g.is_simple() && g.is_connected());
            let (n, m) = (g.vertex_count() as u64, g.edge_units());
            assert!(m + 6 <= 3 * n);
        }
        assert!(octahedron().edges().iter().all(|e| octahedron().degree(e.u()) == 4));
    }

    #[test]
    fn known_dependences() {
        assert_eq!(density_report(&named::complete(4)).unwrap().dep, ratio(1, 2));
        assert_eq!(density_report(&octahedron()).unwrap().dep, ratio(5, 12));
        assert_eq!(density_report(&icosahedron()).unwrap().dep, ratio(11, 30));
    }

    #[test]
    fn triangulations_stay_maximal_planar() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 4..12 {
            let t = random_triangulation(&mut rng, n);
            assert_eq!(t.edges.len(), 3 * n - 6);
            assert_eq!(t.faces.len(), 2 * n - 4);
            for f in &t.faces {
                for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
                    assert!(t.edges.contains(&key(a, b)));
                }
            }
        }
    }

    #[test]
    fn search_finds_k4_and_respects_bounds() {
        let out = search_planar_dep(6, 12, &ratio(1, 3), &ratio(1, 2), &SearchConfig::default());
        assert!(out.iter().any(|c| c.graph.vertex_count() == 4 && c.dep == ratio(1, 2)));
        for c in &out {
            assert!(c.graph.is_simple());
            assert!(c.graph.vertex_count() <= 6 && c.graph.edge_units() <= 12);
            assert!(c.dep > ratio(1, 3) && c.dep <= ratio(1, 2));
        }
        assert!(out.windows(2).all(|w| w[0].dep <= w[1].dep));
        let narrow = search_planar_dep(5, 9, &ratio(1, 3), &ratio(17, 50), &SearchConfig::default());
        assert!(narrow.is_empty());
    }
}
