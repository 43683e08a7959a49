//! Builders that turn a target rational `p/q` into a concrete graph whose
//! designated key edge has density `p/q` and, for the dependence families,
//! is the unique densest edge.
//!
//! Four families are provided:
//!
//! * bipartite necklaces `N(K_{1,1}, K_{2t_2, 2t_2-1}, ...)` with
//!   `sum 1/t_i = p/(q-p)` and `t_i >= q/p`; dependence `p/q`, always
//!   bipartite because the block count is forced even;
//! * theta graphs `Θ(1, r_2, ...)` with `sum 1/r_i = (q-p)/p`; the hub edge
//!   has density `p/q` (it is the sparsest edge, so this is a density only);
//! * the planar dual of `Θ(1, r_2, ...)` with `sum 1/r_i = p/(q-p)`, built
//!   directly as a cycle of parallel bundles; dependence `p/q`, planar
//!   multigraph;
//! * `H`-gadget necklaces `N(H_0, H_{r_2}, ...)` with
//!   `sum 2/(r_i+2) = p/(q-p)` and `r_i >= (4q-6p)/(2p-q)`; dependence `p/q`
//!   on a simple planar graph, only for `p/q > 1/2`.
//!
//! The unit-fraction style decompositions are found by [`decompose`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_forms::EdgeClass;
use crate::graph::{EdgeRef, Multigraph};
use crate::rational::{ceil, format_ratio, parse_ratio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("target must satisfy 0 < p/q < 1, got {0}")]
    Target(String),
    #[error("no admissible decomposition: {0}")]
    Infeasible(String),
    #[error("{0} is not a dependence of any simple planar graph: every simple planar graph has dep(G) > 1/3")]
    PlanarImpossible(String),
    #[error("{0} lies in (1/3, 1/2]; whether it is the dependence of a simple planar graph is an open problem (try `search-planar`)")]
    PlanarOpen(String),
    #[error("decomposition term exceeds the supported range")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

/// Reduced fraction `p/q` with `0 < p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetRational {
    p: u64,
    q: u64,
}

impl TargetRational {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 || p >= q {
            return Err(ConstructionError::Target(format!("{p}/{q}")));
        }
        let g = p.gcd(&q);
        Ok(TargetRational { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.into(), self.q.into())
    }

    /// `p/(q-p)`.
    pub fn odds(&self) -> BigRational {
        BigRational::new(self.p.into(), (self.q - self.p).into())
    }

    /// Every reduced `p/q` in (0, 1) with `q <= max_q`, ordered by `q` then `p`.
    pub fn all_up_to(max_q: u64) -> Vec<TargetRational> {
        let mut out = Vec::new();
        for q in 2..=max_q {
            for p in 1..q {
                if p.gcd(&q) == 1 {
                    out.push(TargetRational { p, q });
                }
            }
        }
        out
    }
}

impl fmt::Display for TargetRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for TargetRational {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self> {
        let x = parse_ratio(s).map_err(|_| ConstructionError::Target(s.to_string()))?;
        match (x.numer().to_u64(), x.denom().to_u64()) {
            (Some(p), Some(q)) => TargetRational::new(p, q),
            _ => Err(ConstructionError::Target(s.to_string())),
        }
    }
}

/// Shape of each summand in a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermShape {
    /// `1/t`
    Reciprocal,
    /// `2/(r+2)`
    Shifted,
}

impl TermShape {
    pub fn value(&self, x: u64) -> BigRational {
        match self {
            TermShape::Reciprocal => BigRational::new(BigInt::one(), x.into()),
            TermShape::Shifted => BigRational::new(2.into(), (x + 2).into()),
        }
    }

    /// Replaces one term by two equal terms of half its value.
    fn halve(&self, x: u64) -> Option<u64> {
        match self {
            TermShape::Reciprocal => x.checked_mul(2),
            TermShape::Shifted => x.checked_mul(2)?.checked_add(2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionConstraint {
    pub target: BigRational,
    pub shape: TermShape,
    pub lower_bound: u64,
    /// Required parity of the number of terms.
    pub parity: Option<Parity>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Repeatedly take the largest admissible term. Usually 2-4 terms.
    #[default]
    Greedy,
    /// Equal terms; always valid but produces many large blocks.
    Uniform,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "greedy" => Ok(Strategy::Greedy),
            "uniform" => Ok(Strategy::Uniform),
            other => Err(format!("unknown strategy {other:?} (expected greedy or uniform)")),
        }
    }
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or(ConstructionError::Overflow)
}

const MAX_TERMS: usize = 100_000;

fn greedy(c: &DecompositionConstraint) -> Result<Vec<u64>> {
    let mut rest = c.target.clone();
    let mut terms = Vec::new();
    while rest.is_positive() {
        if terms.len() >= MAX_TERMS {
            return Err(ConstructionError::Infeasible(format!(
                "more than {MAX_TERMS} terms needed"
            )));
        }
        let term = match c.shape {
            TermShape::Reciprocal => to_u64(&ceil(&rest.recip()))?.max(c.lower_bound),
            TermShape::Shifted => {
                let m = to_u64(&ceil(&(BigRational::from_integer(2.into()) / &rest)))?;
                m.saturating_sub(2).max(c.lower_bound)
            }
        };
        rest -= c.shape.value(term);
        terms.push(term);
    }
    Ok(terms)
}

fn uniform(c: &DecompositionConstraint) -> Result<Vec<u64>> {
    // target a/b = (a m) / (b m): a*m copies of 1/(b m), with m = a + b
    // unless the lower bound forces a larger denominator.
    let a = to_u64(c.target.numer())?;
    let b = to_u64(c.target.denom())?;
    let min_t = match c.shape {
        TermShape::Reciprocal => c.lower_bound,
        TermShape::Shifted => (c.lower_bound + 2).div_ceil(2),
    };
    let m = (a + b).max(min_t.div_ceil(b));
    let t = b.checked_mul(m).ok_or(ConstructionError::Overflow)?;
    let count = a.checked_mul(m).ok_or(ConstructionError::Overflow)? as usize;
    if count > MAX_TERMS {
        return Err(ConstructionError::Infeasible(format!(
            "uniform decomposition needs {count} terms"
        )));
    }
    let term = match c.shape {
        TermShape::Reciprocal => t,
        TermShape::Shifted => 2 * t - 2,
    };
    Ok(vec![term; count])
}

/// Finds `x_1..x_k >= lower_bound` with `sum shape(x_i) = target` exactly.
/// When a parity is demanded and missed, the largest term is split in half,
/// which keeps the lower bound and flips the count's parity.
pub fn decompose(c: &DecompositionConstraint, strategy: Strategy) -> Result<Vec<u64>> {
    if !c.target.is_positive() {
        return Err(ConstructionError::Infeasible("target must be positive".into()));
    }
    if c.lower_bound == 0 {
        return Err(ConstructionError::Infeasible("lower bound must be at least 1".into()));
    }
    let mut terms = match strategy {
        Strategy::Greedy => greedy(c)?,
        Strategy::Uniform => uniform(c)?,
    };
    terms.sort_unstable();
    let wrong_parity = match c.parity {
        Some(Parity::Even) => terms.len() % 2 == 1,
        Some(Parity::Odd) => terms.len() % 2 == 0,
        None => false,
    };
    if wrong_parity {
        let half = c.shape.halve(terms[0]).ok_or(ConstructionError::Overflow)?;
        terms[0] = half;
        terms.push(half);
        terms.sort_unstable();
    }
    check_decomposition(c, &terms)?;
    Ok(terms)
}

fn check_decomposition(c: &DecompositionConstraint, terms: &[u64]) -> Result<()> {
    let total = terms
        .iter()
        .map(|&x| c.shape.value(x))
        .fold(BigRational::zero(), |acc, x| acc + x);
    if total != c.target {
        return Err(ConstructionError::Infeasible(format!(
            "terms sum to {total}, not {}",
            c.target
        )));
    }
    if let Some(&x) = terms.iter().find(|&&x| x < c.lower_bound) {
        return Err(ConstructionError::Infeasible(format!(
            "term {x} below bound {}",
            c.lower_bound
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    BipartiteNecklace,
    ThetaDensity,
    ThetaDualMultigraph,
    HNecklace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    Density,
    Dependence,
}

/// What a construction promises about its key edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub kind: ClaimKind,
    pub value: BigRational,
    /// Result the guarantee comes from, in the recipe wire format.
    pub theorem: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub family: Family,
    pub target: TargetRational,
    /// The decomposition: `t_2..t_n` for bipartite necklaces, `r_2..r_n`
    /// for the other families.
    pub params: Vec<u64>,
    pub key_edge: EdgeRef,
    pub claim: Claim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimJson {
    pub kind: ClaimKind,
    pub value: String,
    pub theorem: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeJson {
    pub family: Family,
    pub p: u64,
    pub q: u64,
    pub params: Vec<u64>,
    pub claim: ClaimJson,
}

impl Recipe {
    pub fn to_json(&self) -> RecipeJson {
        RecipeJson {
            family: self.family,
            p: self.target.p,
            q: self.target.q,
            params: self.params.clone(),
            claim: ClaimJson {
                kind: self.claim.kind,
                value: format_ratio(&self.claim.value),
                theorem: self.claim.theorem.to_string(),
            },
        }
    }

    /// The decomposition constraint this recipe's parameters must satisfy.
    pub fn constraint(&self) -> DecompositionConstraint {
        constraint_for(self.family, self.target)
    }

    /// Re-checks the parameter sum in exact arithmetic, and the lower bounds
    /// required for a dependence claim.
    pub fn validate(&self) -> Result<()> {
        check_decomposition(&self.constraint(), &self.params)
    }
}

/// Smallest gadget size `r >= 1` with `r > (4q - 6p) / (2p - q)`; requires
/// `2p > q`. At `r` equal to that ratio the non-key edges of the block tie
/// with the key edge, so the inequality has to be strict for the key edge to
/// be the unique densest edge.
pub fn h_lower_bound(t: TargetRational) -> u64 {
    let (p, q) = (t.p as i64, t.q as i64);
    let bound = BigRational::new((4 * q - 6 * p).into(), (2 * p - q).into());
    (bound.floor().to_integer().to_i64().unwrap_or(0) + 1).max(1) as u64
}

fn constraint_for(family: Family, t: TargetRational) -> DecompositionConstraint {
    match family {
        Family::BipartiteNecklace => DecompositionConstraint {
            target: t.odds(),
            shape: TermShape::Reciprocal,
            lower_bound: t.q.div_ceil(t.p),
            // n = 1 + terms blocks, even so the necklace cycle is even
            parity: Some(Parity::Odd),
        },
        Family::ThetaDensity => DecompositionConstraint {
            target: t.odds().recip(),
            shape: TermShape::Reciprocal,
            lower_bound: 1,
            parity: None,
        },
        Family::ThetaDualMultigraph => DecompositionConstraint {
            target: t.odds(),
            shape: TermShape::Reciprocal,
            lower_bound: 1,
            parity: None,
        },
        Family::HNecklace => DecompositionConstraint {
            target: t.odds(),
            shape: TermShape::Shifted,
            lower_bound: h_lower_bound(t),
            parity: None,
        },
    }
}

/// A necklace `N(G_1, ..., G_n)`: block `k`'s key edge runs from hub `k` to
/// hub `k+1 (mod n)`. Hubs are vertices `0..n`; each block's remaining
/// vertices follow in block order.
#[derive(Debug, Clone)]
pub struct Necklace {
    pub graph: Multigraph,
    pub blocks: Vec<Multigraph>,
    pub key_edges: Vec<EdgeRef>,
    /// For each edge record of `graph`: owning block and record index there.
    pub origin: Vec<(usize, usize)>,
}

impl Necklace {
    /// Glues blocks whose key edge is record 0 joining vertices 0 (`u`) and
    /// 1 (`v`). Labels become `<block label>:<k>` with `k` counted from 1,
    /// and the key edges are labelled `key:<k>`.
    pub fn assemble(blocks: Vec<Multigraph>) -> Necklace {
        assert!(blocks.len() >= 2, "a necklace needs at least two blocks");
        let n = blocks.len();
        let internal: usize = blocks.iter().map(|b| b.vertex_count() - 2).sum();
        let mut graph = Multigraph::new(n + internal).expect("non-empty");
        let mut key_edges = Vec::with_capacity(n);
        let mut origin = Vec::new();
        let mut next = n;
        for (k, block) in blocks.iter().enumerate() {
            let base = next;
            next += block.vertex_count() - 2;
            let place = |w: usize| match w {
                0 => k,
                1 => (k + 1) % n,
                w => base + w - 2,
            };
            for (idx, rec) in block.edges().iter().enumerate() {
                let label = if idx == 0 {
                    format!("key:{}", k + 1)
                } else {
                    format!("{}:{}", rec.label().unwrap_or("edge"), k + 1)
                };
                let e = graph
                    .add_labeled_edge(place(rec.u()), place(rec.v()), rec.multiplicity(), label)
                    .expect("block edges stay valid");
                if idx == 0 {
                    key_edges.push(e);
                }
                origin.push((k, idx));
            }
        }
        Necklace {
            graph,
            blocks,
            key_edges,
            origin,
        }
    }

    /// Class of a bipartite-necklace edge, read from its label.
    pub fn edge_class(&self, e: EdgeRef) -> Option<EdgeClass> {
        let label = self.graph.edges().get(e.0)?.label()?;
        match label.split(':').next()? {
            "key" => Some(EdgeClass::Key),
            "type1u" => Some(EdgeClass::Type1AtU),
            "type1v" => Some(EdgeClass::Type1AtV),
            "type2" => Some(EdgeClass::Type2),
            _ => None,
        }
    }
}

/// `K_{r,s}` with key vertices `u = 0` in the `r`-part and `v = 1` in the
/// `s`-part, key edge first.
pub fn bipartite_block(r: usize, s: usize) -> Multigraph {
    assert!(r >= 1 && s >= 1);
    // X = {0} + 2..r+1, Y = {1} + r+1..r+s
    let xs: Vec<usize> = std::iter::once(0).chain(2..r + 1).collect();
    let ys: Vec<usize> = std::iter::once(1).chain(r + 1..r + s).collect();
    let mut g = Multigraph::new(r + s).expect("non-empty");
    g.add_labeled_edge(0, 1, 1, "key").unwrap();
    for &x in &xs {
        for &y in &ys {
            let label = match (x == 0, y == 1) {
                (true, true) => continue,
                (true, false) => "type1u",
                (false, true) => "type1v",
                (false, false) => "type2",
            };
            g.add_labeled_edge(x, y, 1, label).unwrap();
        }
    }
    g
}

/// `H_r`: key edge `uv` plus `r` disjoint two-edge paths from `u` to `v`.
pub fn h_block(r: usize) -> Multigraph {
    let mut g = Multigraph::new(r + 2).expect("non-empty");
    g.add_labeled_edge(0, 1, 1, "key").unwrap();
    for m in 2..r + 2 {
        g.add_labeled_edge(0, m, 1, "nonkey").unwrap();
        g.add_labeled_edge(m, 1, 1, "nonkey").unwrap();
    }
    g
}

/// `N(K_{1,1}, K_{2t_2, 2t_2-1}, ...)` for the given `t_i`.
pub fn bipartite_necklace(ts: &[u64]) -> Necklace {
    let mut blocks = vec![bipartite_block(1, 1)];
    blocks.extend(ts.iter().map(|&t| bipartite_block(2 * t as usize, 2 * t as usize - 1)));
    Necklace::assemble(blocks)
}

/// `N(H_0, H_{r_2}, ...)` for the given `r_i`.
pub fn h_necklace(rs: &[u64]) -> Necklace {
    let mut blocks = vec![h_block(0)];
    blocks.extend(rs.iter().map(|&r| h_block(r as usize)));
    Necklace::assemble(blocks)
}

/// `Θ(r_1, ..., r_n)` with hubs `u = 0`, `v = 1`. Each edge is its own
/// record, labelled `path:<k>`; the edges of path 1 are `key:1` when it has
/// length one.
pub fn theta_graph(paths: &[u64]) -> Multigraph {
    assert!(paths.len() >= 2 && !paths.contains(&0));
    let internal: u64 = paths.iter().map(|r| r - 1).sum();
    let mut g = Multigraph::new(2 + internal as usize).expect("non-empty");
    let mut next = 2;
    for (k, &r) in paths.iter().enumerate() {
        let label = if k == 0 && r == 1 {
            "key:1".to_string()
        } else {
            format!("path:{}", k + 1)
        };
        let mut prev = 0;
        for step in 0..r {
            let to = if step + 1 == r {
                1
            } else {
                next += 1;
                next - 1
            };
            g.add_labeled_edge(prev, to, 1, label.clone()).unwrap();
            prev = to;
        }
    }
    g
}

/// Which path of `Θ(paths)` each edge record of [`theta_graph`] lies on.
pub fn theta_edge_paths(paths: &[u64]) -> Vec<usize> {
    paths
        .iter()
        .enumerate()
        .flat_map(|(k, &r)| std::iter::repeat_n(k, r as usize))
        .collect()
}

/// Planar dual of `Θ(paths)` drawn with its paths in the given cyclic order:
/// one vertex per face (the face between paths `k` and `k+1` is vertex `k`),
/// and path `k` becomes a bundle of `r_k` parallel edges between the faces on
/// either side of it. Bundle `k` is edge record `k`.
pub fn theta_dual(paths: &[u64]) -> Multigraph {
    assert!(paths.len() >= 2 && !paths.contains(&0));
    let n = paths.len();
    let mut g = Multigraph::new(n).expect("non-empty");
    for (k, &r) in paths.iter().enumerate() {
        let label = if k == 0 {
            "key:1".to_string()
        } else {
            format!("bundle:{}", k + 1)
        };
        g.add_labeled_edge((k + n - 1) % n, k, r, label).unwrap();
    }
    g
}

/// Dual edge pairs `(theta edge, dual bundle)` for [`theta_graph`] and
/// [`theta_dual`] of the same paths.
pub fn theta_dual_pairs(paths: &[u64]) -> Vec<(EdgeRef, EdgeRef)> {
    theta_edge_paths(paths)
        .into_iter()
        .enumerate()
        .map(|(e, k)| (EdgeRef(e), EdgeRef(k)))
        .collect()
}

fn recipe(family: Family, t: TargetRational, params: Vec<u64>) -> Recipe {
    let (kind, theorem) = match family {
        Family::BipartiteNecklace => (ClaimKind::Dependence, "2.5"),
        Family::ThetaDensity => (ClaimKind::Density, "3.1"),
        Family::ThetaDualMultigraph => (ClaimKind::Dependence, "3.2"),
        Family::HNecklace => (ClaimKind::Dependence, "3.6"),
    };
    Recipe {
        family,
        target: t,
        params,
        key_edge: EdgeRef(0),
        claim: Claim {
            kind,
            value: t.value(),
            theorem,
        },
    }
}

/// Bipartite graph with `dep(G) = p/q`, attained only at the `K_{1,1}` edge.
pub fn build_bipartite_necklace(t: TargetRational, strategy: Strategy) -> Result<(Multigraph, Recipe)> {
    let ts = decompose(&constraint_for(Family::BipartiteNecklace, t), strategy)?;
    let necklace = bipartite_necklace(&ts);
    Ok((necklace.graph, recipe(Family::BipartiteNecklace, t, ts)))
}

/// Planar graph whose hub edge has density `p/q`.
pub fn build_theta(t: TargetRational, strategy: Strategy) -> Result<(Multigraph, Recipe)> {
    let rs = decompose(&constraint_for(Family::ThetaDensity, t), strategy)?;
    let paths: Vec<u64> = std::iter::once(1).chain(rs.iter().copied()).collect();
    Ok((theta_graph(&paths), recipe(Family::ThetaDensity, t, rs)))
}

/// Planar multigraph with `dep(G) = p/q` at the dual of the theta hub edge.
/// The third value is that dual edge.
pub fn build_theta_dual(t: TargetRational, strategy: Strategy) -> Result<(Multigraph, Recipe, EdgeRef)> {
    let rs = decompose(&constraint_for(Family::ThetaDualMultigraph, t), strategy)?;
    let paths: Vec<u64> = std::iter::once(1).chain(rs.iter().copied()).collect();
    Ok((
        theta_dual(&paths),
        recipe(Family::ThetaDualMultigraph, t, rs),
        EdgeRef(0),
    ))
}

/// Rejects targets outside `(1/2, 1)` with the reason they cannot (or are
/// not known to) be realized on simple planar graphs.
pub fn check_planar_target(t: TargetRational) -> Result<()> {
    if 3 * t.p <= t.q {
        return Err(ConstructionError::PlanarImpossible(t.to_string()));
    }
    if 2 * t.p <= t.q {
        return Err(ConstructionError::PlanarOpen(t.to_string()));
    }
    Ok(())
}

/// Simple planar graph with `dep(G) = p/q` for `1/2 < p/q < 1`.
pub fn build_h_necklace(t: TargetRational, strategy: Strategy) -> Result<(Multigraph, Recipe)> {
    check_planar_target(t)?;
    let rs = decompose(&constraint_for(Family::HNecklace, t), strategy)?;
    let necklace = h_necklace(&rs);
    Ok((necklace.graph, recipe(Family::HNecklace, t, rs)))
}
