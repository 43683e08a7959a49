//! Exact per-edge spanning-tree counts by sparse elimination modulo primes.
//!
//! For the reduced Laplacian `L0` (last vertex grounded) every quantity we
//! need is a non-negative integer bounded in advance: `det L0 = τ(G)` and the
//! trees through an edge unit `uv`, `τ_G(uv) = M[u][u] + M[v][v] - 2M[u][v]`
//! with `M = adj(L0)`, both lie in `[0, Π_{w ≠ ground} deg(w)]` (a spanning
//! tree is fixed by each non-ground vertex's edge towards the ground). So it
//! suffices to compute them modulo enough 62-bit primes and reassemble by
//! the Chinese remainder theorem.
//!
//! Per prime, `L0 = L D Lᵀ` is factored along a minimum-degree ordering and
//! only the entries of `L0⁻¹` on the filled pattern are formed (Takahashi's
//! recurrence). Every edge lies on that pattern, so this yields all edge
//! counts without ever forming the dense inverse.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::graph::Multigraph;
use crate::kirchhoff::TreeCount;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, largest first.
fn primes() -> impl Iterator<Item = u64> {
    let top = (1u64 << 62) - 1;
    (0..).map(move |i| top - 2 * i).filter(|&n| is_prime(n))
}

/// Elimination order and filled pattern of the reduced Laplacian.
struct Symbolic {
    /// Unknowns in elimination order.
    order: Vec<usize>,
    /// For each unknown: the neighbours still present when it is eliminated.
    later: Vec<Vec<usize>>,
}

fn symbolic(size: usize, adjacency: &[BTreeSet<usize>]) -> Symbolic {
    let mut adj: Vec<BTreeSet<usize>> = adjacency.to_vec();
    let mut alive = vec![true; size];
    let mut order = Vec::with_capacity(size);
    let mut later = vec![Vec::new(); size];
    for _ in 0..size {
        let k = (0..size)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("an unknown remains");
        alive[k] = false;
        let nbrs: Vec<usize> = adj[k].iter().copied().collect();
        for &i in &nbrs {
            adj[i].remove(&k);
            for &j in &nbrs {
                if i != j {
                    adj[i].insert(j);
                }
            }
        }
        later[k] = nbrs;
        order.push(k);
    }
    Symbolic { order, later }
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// The reduced Laplacian as a sparse symmetric matrix over the unknowns
/// `0..n-1` (the last vertex is grounded).
struct Sparse {
    size: usize,
    diagonal: Vec<u64>,
    off: HashMap<(usize, usize), u64>,
}

impl Sparse {
    fn from_graph(g: &Multigraph) -> Sparse {
        let size = g.vertex_count() - 1;
        let mut diagonal = vec![0u64; size];
        let mut off: HashMap<(usize, usize), u64> = HashMap::new();
        for e in g.edges() {
            let (u, v) = e.endpoints();
            let m = e.multiplicity();
            if u < size {
                diagonal[u] += m;
            }
            if v < size {
                diagonal[v] += m;
            }
            if u < size && v < size {
                *off.entry(key(u, v)).or_default() += m;
            }
        }
        Sparse { size, diagonal, off }
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.size];
        for &(i, j) in self.off.keys() {
            adj[i].insert(j);
            adj[j].insert(i);
        }
        adj
    }
}

/// `det L0 mod p` and the entries of `L0⁻¹ mod p` on the filled pattern, or
/// `None` if a pivot vanishes modulo `p`.
fn inverse_on_pattern(a: &Sparse, sym: &Symbolic, p: u64) -> Option<(u64, HashMap<(usize, usize), u64>)> {
    // Off-diagonal entries hold -m; store them reduced mod p.
    let mut work: HashMap<(usize, usize), u64> = HashMap::new();
    for (&k, &m) in &a.off {
        work.insert(k, (p - m % p) % p);
    }
    let mut diag: Vec<u64> = a.diagonal.iter().map(|&d| d % p).collect();
    let mut pivots = vec![0u64; a.size];
    let mut columns: Vec<Vec<(usize, u64)>> = vec![Vec::new(); a.size];
    let mut det = 1u64;
    for &k in &sym.order {
        let d = diag[k];
        if d == 0 {
            return None;
        }
        det = mul_mod(det, d, p);
        let d_inv = inv_mod(d, p);
        let col: Vec<(usize, u64)> = sym.later[k]
            .iter()
            .map(|&i| {
                let aik = work.get(&key(i, k)).copied().unwrap_or(0);
                (i, mul_mod(aik, d_inv, p))
            })
            .collect();
        for (x, &(i, lik)) in col.iter().enumerate() {
            // Schur update: A[i][j] -= l_ik d l_jk.
            let scaled = mul_mod(lik, d, p);
            diag[i] = (diag[i] + p - mul_mod(scaled, lik, p)) % p;
            for &(j, ljk) in &col[x + 1..] {
                let entry = work.entry(key(i, j)).or_insert(0);
                *entry = (*entry + p - mul_mod(scaled, ljk, p)) % p;
            }
        }
        pivots[k] = d;
        columns[k] = col;
    }
    let mut z: HashMap<(usize, usize), u64> = HashMap::new();
    for &k in sym.order.iter().rev() {
        let col = &columns[k];
        for &(j, _) in col {
            let mut acc = 0u64;
            for &(i, lik) in col {
                let zij = if i == j {
                    z[&(i, i)]
                } else {
                    z[&key(i, j)]
                };
                acc = (acc + mul_mod(lik, zij, p)) % p;
            }
            z.insert(key(k, j), (p - acc) % p);
        }
        let mut acc = 0u64;
        for &(i, lik) in col {
            acc = (acc + mul_mod(lik, z[&key(k, i)], p)) % p;
        }
        z.insert((k, k), (inv_mod(pivots[k], p) + p - acc) % p);
    }
    Some((det, z))
}

/// Incremental Chinese remaindering of non-negative integers.
struct Crt {
    modulus: BigUint,
    values: Vec<BigUint>,
}

impl Crt {
    fn new(len: usize) -> Crt {
        Crt {
            modulus: BigUint::one(),
            values: vec![BigUint::zero(); len],
        }
    }

    fn add(&mut self, p: u64, residues: &[u64]) {
        let m_mod_p = (&self.modulus % p).iter_u64_digits().next().unwrap_or(0);
        let m_inv = inv_mod(m_mod_p, p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let x_mod_p = (&*x % p).iter_u64_digits().next().unwrap_or(0);
            let t = mul_mod((r + p - x_mod_p) % p, m_inv, p);
            *x += &self.modulus * t;
        }
        self.modulus *= p;
    }
}

/// `τ(G)` and, for each edge record, the spanning trees through one unit of
/// it. `g` must be connected with at least two vertices.
pub fn edge_tree_counts(g: &Multigraph) -> (TreeCount, Vec<TreeCount>) {
    let n = g.vertex_count();
    assert!(n >= 2 && g.is_connected(), "needs a connected graph on two or more vertices");
    let ground = n - 1;
    let a = Sparse::from_graph(g);
    let sym = symbolic(a.size, &a.adjacency());
    let bound: BigUint = (0..ground).map(|w| BigUint::from(g.degree(w))).product();
    let mut crt = Crt::new(g.edges().len() + 1);
    let mut residues = vec![0u64; g.edges().len() + 1];
    for p in primes() {
        if crt.modulus > bound {
            break;
        }
        let Some((det, z)) = inverse_on_pattern(&a, &sym, p) else {
            continue;
        };
        let entry = |i: usize, j: usize| -> u64 {
            if i == ground || j == ground {
                0
            } else {
                z[&key(i, j)]
            }
        };
        residues[0] = det;
        for (slot, e) in residues[1..].iter_mut().zip(g.edges()) {
            let (u, v) = e.endpoints();
            let inv_through = (entry(u, u) + entry(v, v) + 2 * (p - entry(u, v))) % p;
            *slot = mul_mod(det, inv_through, p);
        }
        crt.add(p, &residues);
    }
    let mut values = crt.values.into_iter();
    let total = values.next().expect("determinant slot");
    (total, values.collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{complete, complete_bipartite, cycle};
    use crate::kirchhoff::{tau, tau_edge};

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        let first = primes().next().unwrap();
        assert!(first < 1 << 62 && is_prime(first));
    }

    #[test]
    fn counts_match_contraction() {
        let graphs = vec![
            cycle(5),
            complete(5),
            complete_bipartite(3, 4),
            Multigraph::from_edges(4, [(0, 1, 3), (1, 2, 1), (2, 3, 2), (0, 3, 1), (0, 2, 4)]).unwrap(),
            Multigraph::from_edges(2, [(0, 1, 5)]).unwrap(),
        ];
        for g in graphs {
            let (total, per_edge) = edge_tree_counts(&g);
            assert_eq!(total, tau(&g));
            for e in g.edge_refs() {
                assert_eq!(per_edge[e.0], tau_edge(&g, e).unwrap());
            }
        }
    }

    #[test]
    fn big_values_need_several_primes() {
        let g = complete(30);
        let (total, per_edge) = edge_tree_counts(&g);
        // Cayley: 30^28, and every edge lies in 2/30 of the trees.
        let expected = BigUint::from(30u32).pow(28);
        assert!(expected.bits() > 130);
        assert_eq!(total, expected);
        assert!(per_edge.iter().all(|c| c * 30u32 == &expected * 2u32));
    }
}
