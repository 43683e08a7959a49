//! Independent oracles and property suites.
//!
//! The oracle is a brute-force forest enumerator that knows nothing about
//! Laplacians: it walks the edge units in order and branches on including or
//! excluding each one, tracking components with a relabelling array. Pinning
//! units (forcing them in) and keeping vertex pairs apart turns the same
//! walk into a counter of trees containing a subgraph and of thickets.
//!
//! Property checks return a [`PropertyOutcome`]; failures carry a
//! [`Witness`] that holds everything needed to re-run the check.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_forms::{
    bipartite_key_edge_tau, bipartite_necklace_tau, bipartite_type_edge_tau, gd_matching_count,
    gd_tree_count, h_necklace_key_tau, h_necklace_nonkey_tau, h_necklace_tau, theta_tau,
    theta_tau_edge, BipartiteBlockParams, FormError, SubtreeProfile,
};
use crate::constructions::{
    bipartite_necklace, build_bipartite_necklace, build_h_necklace, build_theta, build_theta_dual,
    h_necklace, theta_dual, theta_dual_pairs, theta_edge_paths, theta_graph, ClaimKind,
    ConstructionError, Family, Necklace, Recipe, Strategy, TargetRational,
};
use crate::graph::{named, parse_graph, serialize_graph, EdgeRef, GraphError, Multigraph, VertexId};
use crate::kirchhoff::{
    average_density, density_report, tau, thicket_count, DensityReport, KirchhoffError, TreeCount,
};
use crate::rational::{format_ratio, ratio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("outside the enumeration budget: {0}")]
    OverBudget(String),
    #[error("graph is not simple: vertices {u} and {v} are joined by {multiplicity} parallel edges")]
    NotSimple { u: usize, v: usize, multiplicity: u64 },
    #[error("{0}")]
    Domain(String),
    #[error("malformed witness: {0}")]
    Witness(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Kirchhoff(#[from] KirchhoffError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

pub type Result<T> = std::result::Result<T, VerifyError>;

/// Limits on what the enumerator will attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edge_units: u64,
    pub max_trees: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 9,
            max_edge_units: 18,
            max_trees: 1_000_000,
        }
    }
}

impl OracleBudget {
    /// Componentwise maximum of two budgets.
    pub fn max(self, other: OracleBudget) -> OracleBudget {
        OracleBudget {
            max_vertices: self.max_vertices.max(other.max_vertices),
            max_edge_units: self.max_edge_units.max(other.max_edge_units),
            max_trees: self.max_trees.max(other.max_trees),
        }
    }

    pub fn admits(&self, g: &Multigraph) -> bool {
        g.vertex_count() <= self.max_vertices && g.edge_units() <= self.max_edge_units
    }

    fn check(&self, g: &Multigraph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(VerifyError::OverBudget(format!(
                "{} vertices > {}",
                g.vertex_count(),
                self.max_vertices
            )));
        }
        if g.edge_units() > self.max_edge_units {
            return Err(VerifyError::OverBudget(format!(
                "{} edge units > {}",
                g.edge_units(),
                self.max_edge_units
            )));
        }
        Ok(())
    }
}

impl fmt::Display for OracleBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.max_vertices, self.max_edge_units, self.max_trees)
    }
}

/// Parses `V,E,T` (vertices, edge units, trees).
impl FromStr for OracleBudget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || format!("budget {s:?}: expected V,E,T with positive integers");
        if parts.len() != 3 {
            return Err(bad());
        }
        let max_vertices: usize = parts[0].parse().map_err(|_| bad())?;
        let max_edge_units: u64 = parts[1].parse().map_err(|_| bad())?;
        let max_trees: u64 = parts[2].parse().map_err(|_| bad())?;
        if max_vertices == 0 || max_edge_units == 0 || max_trees == 0 {
            return Err(bad());
        }
        Ok(OracleBudget {
            max_vertices,
            max_edge_units,
            max_trees,
        })
    }
}

/// One unit of a parallel bundle: copy `copy` of record `edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeUnit {
    pub edge: EdgeRef,
    pub copy: u64,
}

impl EdgeUnit {
    pub fn first(edge: EdgeRef) -> EdgeUnit {
        EdgeUnit { edge, copy: 0 }
    }
}

/// Every edge unit of `g`, bundle by bundle.
pub fn edge_units(g: &Multigraph) -> Vec<EdgeUnit> {
    g.edge_refs()
        .flat_map(|e| {
            let m = g.edges()[e.0].multiplicity();
            (0..m).map(move |copy| EdgeUnit { edge: e, copy })
        })
        .collect()
}

/// Which spanning forests to enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestFilter {
    /// Number of trees in the forest; 1 for spanning trees.
    pub components: usize,
    /// Units every listed forest must contain.
    pub required: Vec<EdgeUnit>,
    /// Vertex pairs that must end up in different trees.
    pub separated: Vec<(VertexId, VertexId)>,
}

impl ForestFilter {
    pub fn spanning_trees() -> Self {
        ForestFilter {
            components: 1,
            required: Vec::new(),
            separated: Vec::new(),
        }
    }

    /// Spanning trees containing all of `required`.
    pub fn containing(required: Vec<EdgeUnit>) -> Self {
        ForestFilter {
            required,
            ..ForestFilter::spanning_trees()
        }
    }

    /// Two-tree spanning forests through one unit of `e` with `u`, `v` in
    /// different trees.
    pub fn thickets(e: EdgeRef, u: VertexId, v: VertexId) -> Self {
        ForestFilter {
            components: 2,
            required: vec![EdgeUnit::first(e)],
            separated: vec![(u, v)],
        }
    }
}

struct Walk<'a, F: FnMut(&[EdgeUnit])> {
    ends: Vec<(usize, usize)>,
    units: Vec<EdgeUnit>,
    target: usize,
    separated: &'a [(VertexId, VertexId)],
    pinned: Vec<EdgeUnit>,
    chosen: Vec<EdgeUnit>,
    count: u64,
    max: u64,
    visit: F,
}

impl<F: FnMut(&[EdgeUnit])> Walk<'_, F> {
    fn keeps_apart(&self, labels: &[usize], a: usize, b: usize) -> bool {
        self.separated.iter().all(|&(x, y)| {
            let (lx, ly) = (labels[x.0], labels[y.0]);
            !((lx == a && ly == b) || (lx == b && ly == a))
        })
    }

    /// Can the units from `i` on still bring the component count down to
    /// the target?
    fn can_finish(&self, i: usize, labels: &[usize], comps: usize) -> bool {
        let mut parent: Vec<usize> = labels.to_vec();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut left = comps;
        for &(a, b) in &self.ends[i..] {
            let (ra, rb) = (root(&mut parent, labels[a]), root(&mut parent, labels[b]));
            if ra != rb {
                parent[rb] = ra;
                left -= 1;
                if left <= self.target {
                    return true;
                }
            }
        }
        left <= self.target
    }

    fn go(&mut self, i: usize, labels: &mut Vec<usize>, comps: usize) -> Result<()> {
        if comps == self.target {
            self.count += 1;
            if self.count > self.max {
                return Err(VerifyError::OverBudget(format!("more than {} forests", self.max)));
            }
            let mut all = self.pinned.clone();
            all.extend_from_slice(&self.chosen);
            (self.visit)(&all);
            return Ok(());
        }
        if i == self.units.len() || !self.can_finish(i, labels, comps) {
            return Ok(());
        }
        let (a, b) = self.ends[i];
        let (la, lb) = (labels[a], labels[b]);
        if la != lb && self.keeps_apart(labels, la, lb) {
            let saved = labels.clone();
            for l in labels.iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
            self.chosen.push(self.units[i]);
            self.go(i + 1, labels, comps - 1)?;
            self.chosen.pop();
            *labels = saved;
        }
        self.go(i + 1, labels, comps)
    }
}

/// Enumerates the spanning forests selected by `filter`, handing each one's
/// unit set to `visit`, and returns how many there were.
pub fn enumerate_forests(
    g: &Multigraph,
    budget: &OracleBudget,
    filter: &ForestFilter,
    visit: impl FnMut(&[EdgeUnit]),
) -> Result<TreeCount> {
    budget.check(g)?;
    let n = g.vertex_count();
    if filter.components == 0 || filter.components > n {
        return Err(VerifyError::Domain(format!(
            "cannot split {n} vertices into {} trees",
            filter.components
        )));
    }
    for &(x, y) in &filter.separated {
        if x.0 >= n || y.0 >= n {
            return Err(GraphError::VertexOutOfRange(x.0.max(y.0)).into());
        }
    }
    let mut pinned = filter.required.clone();
    pinned.sort();
    pinned.dedup();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut comps = n;
    for unit in &pinned {
        let rec = g.edge(unit.edge)?;
        if unit.copy >= rec.multiplicity() {
            return Err(VerifyError::Domain(format!(
                "edge {} has no copy {}",
                unit.edge.0, unit.copy
            )));
        }
        let (la, lb) = (labels[rec.u()], labels[rec.v()]);
        if la == lb {
            return Ok(TreeCount::zero());
        }
        for l in labels.iter_mut() {
            if *l == lb {
                *l = la;
            }
        }
        comps -= 1;
    }
    if filter.separated.iter().any(|&(x, y)| labels[x.0] == labels[y.0]) || comps < filter.components {
        return Ok(TreeCount::zero());
    }
    let units: Vec<EdgeUnit> = edge_units(g)
        .into_iter()
        .filter(|u| pinned.binary_search(u).is_err())
        .collect();
    let ends = units.iter().map(|u| g.edges()[u.edge.0].endpoints()).collect();
    let mut walk = Walk {
        ends,
        units,
        target: filter.components,
        separated: &filter.separated,
        pinned,
        chosen: Vec::new(),
        count: 0,
        max: budget.max_trees,
        visit,
    };
    walk.go(0, &mut labels, comps)?;
    Ok(TreeCount::from(walk.count))
}

/// Number of forests selected by `filter`.
pub fn count_forests(g: &Multigraph, budget: &OracleBudget, filter: &ForestFilter) -> Result<TreeCount> {
    enumerate_forests(g, budget, filter, |_| {})
}

/// Number of spanning trees by enumeration.
pub fn enumerate_spanning_trees(g: &Multigraph, budget: &OracleBudget) -> Result<TreeCount> {
    count_forests(g, budget, &ForestFilter::spanning_trees())
}

/// Spanning trees through each edge record, by enumeration: entry `e`
/// counts the trees using copy 0 of bundle `e`. Also returns the total.
pub fn enumerate_edge_tree_counts(
    g: &Multigraph,
    budget: &OracleBudget,
) -> Result<(TreeCount, Vec<TreeCount>)> {
    let mut per_unit: BTreeMap<EdgeUnit, u64> = BTreeMap::new();
    let total = enumerate_forests(g, budget, &ForestFilter::spanning_trees(), |tree| {
        for &u in tree {
            *per_unit.entry(u).or_default() += 1;
        }
    })?;
    let per_edge = g
        .edge_refs()
        .map(|e| TreeCount::from(per_unit.get(&EdgeUnit::first(e)).copied().unwrap_or(0)))
        .collect();
    Ok((total, per_edge))
}

/// Counterexample data: enough to re-run the failing check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub property: String,
    /// The graph in text form.
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edge: Option<usize>,
    /// Extra integer parameters (path lengths, a vertex pair, ...).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub params: Vec<u64>,
    /// Necklace blocks in text form, for ordering checks.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub blocks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<Family>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub instance: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl PropertyOutcome {
    fn pass(property: &str, instance: String) -> Self {
        PropertyOutcome {
            property: property.to_string(),
            instance,
            passed: true,
            witness: None,
        }
    }

    fn fail(instance: String, witness: Witness) -> Self {
        PropertyOutcome {
            property: witness.property.clone(),
            instance,
            passed: false,
            witness: Some(witness),
        }
    }

    fn decide(property: &str, instance: String, ok: bool, witness: impl FnOnce() -> Witness) -> Self {
        if ok {
            Self::pass(property, instance)
        } else {
            let w = witness();
            debug_assert_eq!(w.property, property);
            Self::fail(instance, w)
        }
    }

    /// Replaces the instance descriptor.
    pub fn named(mut self, instance: impl Into<String>) -> Self {
        self.instance = instance.into();
        self
    }
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} [{}]", self.property, self.instance)?;
        if let Some(w) = &self.witness {
            write!(f, ": expected {}, got {}", w.expected, w.actual)?;
            if let Some(e) = w.edge {
                write!(f, " (edge {e})")?;
            }
        }
        Ok(())
    }
}

fn describe(g: &Multigraph) -> String {
    format!("|V|={} |E|={}", g.vertex_count(), g.edge_units())
}

fn witness(property: &str, g: &Multigraph, edge: Option<EdgeRef>, expected: String, actual: String) -> Witness {
    Witness {
        property: property.to_string(),
        graph: serialize_graph(g),
        edge: edge.map(|e| e.0),
        params: Vec::new(),
        blocks: Vec::new(),
        family: None,
        expected,
        actual,
    }
}

pub const FOSTER: &str = "foster";
pub const DUAL_IDENTITY: &str = "dual_identity";
pub const DUAL_TREE_COUNT: &str = "dual_tree_count";
pub const PLANAR_BOUND: &str = "planar_bound";
pub const KEY_ORDERING: &str = "key_ordering";
pub const ORACLE_TAU: &str = "oracle_tau";
pub const ORACLE_EDGE: &str = "oracle_edge";
pub const ORACLE_THICKET: &str = "oracle_thicket";
pub const REPORT_ROUTES: &str = "report_routes";
pub const GD_SUBTREE: &str = "gd_subtree";
pub const GD_MATCHING: &str = "gd_matching";
pub const NECKLACE_FORMS: &str = "necklace_forms";
pub const THETA_FORMS: &str = "theta_forms";
pub const RECIPE_CLAIM: &str = "recipe_claim";

/// Density sum over all edge units equals `|V| - 1`.
pub fn check_foster(g: &Multigraph) -> Result<PropertyOutcome> {
    Ok(check_foster_with(g, &density_report(g)?))
}

/// [`check_foster`] with a precomputed report of `g`.
pub fn check_foster_with(g: &Multigraph, report: &DensityReport) -> PropertyOutcome {
    let sum = report.unit_density_sum(g);
    let expected = BigRational::from_integer(BigInt::from(g.vertex_count() - 1));
    PropertyOutcome::decide(FOSTER, describe(g), sum == expected, || {
        witness(FOSTER, g, None, format_ratio(&expected), format_ratio(&sum))
    })
}

/// Every edge of `Θ(paths)` and its dual unit in the bundle cycle have
/// densities summing to exactly 1, and both graphs have the same tree count.
pub fn check_dual_identity(paths: &[u64]) -> Result<Vec<PropertyOutcome>> {
    if paths.len() < 2 || paths.contains(&0) {
        return Err(VerifyError::Domain(
            "a theta graph needs at least two paths of positive length".into(),
        ));
    }
    let theta = theta_graph(paths);
    let dual = theta_dual(paths);
    let primal = density_report(&theta)?;
    let starred = density_report(&dual)?;
    let instance = format!("Θ{paths:?}");
    let with_params = |mut w: Witness| {
        w.params = paths.to_vec();
        w
    };
    let mut out = vec![PropertyOutcome::decide(
        DUAL_TREE_COUNT,
        instance.clone(),
        primal.tau == starred.tau,
        || {
            with_params(witness(
                DUAL_TREE_COUNT,
                &theta,
                None,
                primal.tau.to_string(),
                starred.tau.to_string(),
            ))
        },
    )];
    let mut bad = None;
    for (e, b) in theta_dual_pairs(paths) {
        let total = primal.density_of(e) + starred.density_of(b);
        if !total.is_one() {
            bad = Some((e, total));
            break;
        }
    }
    out.push(PropertyOutcome::decide(DUAL_IDENTITY, instance, bad.is_none(), || {
        let (e, total) = bad.clone().expect("failure recorded");
        with_params(witness(DUAL_IDENTITY, &theta, Some(e), "1/1".into(), format_ratio(&total)))
    }));
    Ok(out)
}

fn parallel_bundle(g: &Multigraph) -> Option<VerifyError> {
    g.edges().iter().find(|r| r.multiplicity() > 1).map(|r| VerifyError::NotSimple {
        u: r.u(),
        v: r.v(),
        multiplicity: r.multiplicity(),
    })
}

/// For a graph the caller certifies as simple and planar: `dep(G)` is at
/// least the average density `(|V|-1)/|E|`, strictly above `1/3`, and
/// `|E| <= 3|V| - 6`.
pub fn check_planar_bound(g: &Multigraph) -> Result<PropertyOutcome> {
    if let Some(err) = parallel_bundle(g) {
        return Err(err);
    }
    if !g.is_simple() {
        return Err(VerifyError::Domain("graph is not simple".into()));
    }
    let report = density_report(g)?;
    check_planar_bound_with(g, &report)
}

/// [`check_planar_bound`] with a precomputed report of `g`.
pub fn check_planar_bound_with(g: &Multigraph, report: &DensityReport) -> Result<PropertyOutcome> {
    if let Some(err) = parallel_bundle(g) {
        return Err(err);
    }
    let (n, m) = (g.vertex_count() as u64, g.edge_units());
    let edge_bound = n < 3 || m + 6 <= 3 * n;
    let average = average_density(g);
    let ok = edge_bound && report.dep >= average && report.dep > ratio(1, 3);
    Ok(PropertyOutcome::decide(PLANAR_BOUND, describe(g), ok, || {
        witness(
            PLANAR_BOUND,
            g,
            report.argmax.first().copied(),
            format!("dep >= {} and dep > 1/3 and |E| <= 3|V|-6", format_ratio(&average)),
            format!("dep = {}, |E| = {m}, |V| = {n}", format_ratio(&report.dep)),
        )
    }))
}

/// Key-edge densities in the necklace are ordered exactly as the key-edge
/// densities of the blocks on their own.
pub fn check_key_ordering(necklace: &Necklace) -> Result<PropertyOutcome> {
    let report = density_report(&necklace.graph)?;
    check_key_ordering_with(necklace, &report)
}

/// [`check_key_ordering`] with a precomputed report of the necklace graph.
pub fn check_key_ordering_with(necklace: &Necklace, report: &DensityReport) -> Result<PropertyOutcome> {
    let local: Vec<BigRational> = necklace
        .blocks
        .iter()
        .map(|b| Ok(density_report(b)?.density_of(EdgeRef(0)).clone()))
        .collect::<Result<_>>()?;
    let global: Vec<&BigRational> = necklace.key_edges.iter().map(|&e| report.density_of(e)).collect();
    let n = local.len();
    let mut bad = None;
    'outer: for k in 0..n {
        for l in 0..n {
            if (global[k] <= global[l]) != (local[k] <= local[l]) {
                bad = Some((k, l));
                break 'outer;
            }
        }
    }
    let instance = format!("{}-block necklace, {}", n, describe(&necklace.graph));
    Ok(PropertyOutcome::decide(KEY_ORDERING, instance, bad.is_none(), || {
        let (k, l) = bad.expect("failure recorded");
        let mut w = witness(
            KEY_ORDERING,
            &necklace.graph,
            Some(necklace.key_edges[k]),
            format!(
                "blocks {} vs {}: local {} vs {}",
                k + 1,
                l + 1,
                format_ratio(&local[k]),
                format_ratio(&local[l])
            ),
            format!("global {} vs {}", format_ratio(global[k]), format_ratio(global[l])),
        );
        w.params = vec![k as u64, l as u64];
        w.blocks = necklace.blocks.iter().map(serialize_graph).collect();
        w
    }))
}

/// Determinant tree count equals the enumerated count.
pub fn check_oracle_tau(g: &Multigraph, budget: &OracleBudget) -> Result<PropertyOutcome> {
    let enumerated = enumerate_spanning_trees(g, budget)?;
    let det = tau(g);
    Ok(PropertyOutcome::decide(ORACLE_TAU, describe(g), det == enumerated, || {
        witness(ORACLE_TAU, g, None, enumerated.to_string(), det.to_string())
    }))
}

/// Per-edge tree counts of the density report equal enumerated counts, and
/// the report agrees with the contraction route `τ(G/e)`.
pub fn check_oracle_edges(g: &Multigraph, budget: &OracleBudget) -> Result<Vec<PropertyOutcome>> {
    let (total, per_edge) = enumerate_edge_tree_counts(g, budget)?;
    let report = density_report(g)?;
    let mut out = Vec::new();
    let mut bad = None;
    if report.tau != total {
        bad = Some((None, total.to_string(), report.tau.to_string()));
    }
    for (e, count) in g.edge_refs().zip(&per_edge) {
        if bad.is_none() && report.tau_edge_of(e) != count {
            bad = Some((Some(e), count.to_string(), report.tau_edge_of(e).to_string()));
        }
    }
    out.push(PropertyOutcome::decide(ORACLE_EDGE, describe(g), bad.is_none(), || {
        let (e, expected, actual) = bad.clone().expect("failure recorded");
        witness(ORACLE_EDGE, g, e, expected, actual)
    }));
    out.push(check_report_routes_with(g, &report)?);
    Ok(out)
}

/// The adjugate-based report agrees with contracting each edge.
pub fn check_report_routes_with(g: &Multigraph, report: &DensityReport) -> Result<PropertyOutcome> {
    let mut bad = None;
    for e in g.edge_refs() {
        let contracted = tau(&g.contract(e)?);
        if &contracted != report.tau_edge_of(e) {
            bad = Some((e, contracted, report.tau_edge_of(e).clone()));
            break;
        }
    }
    Ok(PropertyOutcome::decide(REPORT_ROUTES, describe(g), bad.is_none(), || {
        let (e, contracted, reported) = bad.clone().expect("failure recorded");
        witness(REPORT_ROUTES, g, Some(e), contracted.to_string(), reported.to_string())
    }))
}

/// `thicket_count(g, e, u, v)` equals the enumerated number of two-tree
/// forests through `e` separating `u` and `v`.
pub fn check_oracle_thicket(
    g: &Multigraph,
    e: EdgeRef,
    u: VertexId,
    v: VertexId,
    budget: &OracleBudget,
) -> Result<PropertyOutcome> {
    let fast = thicket_count(g, e, u, v)?;
    let slow = count_forests(g, budget, &ForestFilter::thickets(e, u, v))?;
    let instance = format!("{} e={} u={} v={}", describe(g), e.0, u.0, v.0);
    Ok(PropertyOutcome::decide(ORACLE_THICKET, instance, fast == slow, || {
        let mut w = witness(ORACLE_THICKET, g, Some(e), slow.to_string(), fast.to_string());
        w.params = vec![u.0 as u64, v.0 as u64];
        w
    }))
}

fn bipartite_unit(g: &Multigraph, x: usize, y: usize) -> EdgeUnit {
    let e = g
        .edge_refs()
        .find(|&e| g.edges()[e.0].joins(x, y))
        .expect("complete bipartite graphs contain every cross pair");
    EdgeUnit::first(e)
}

/// A subtree of `K_{r,s}` with `m` vertices in the first part and `n` in the
/// second: `x_0` joined to `y_0..y_{n-1}`, and `y_0` to `x_1..x_{m-1}`.
pub fn bipartite_subtree(r: u64, s: u64, profile: SubtreeProfile) -> (Multigraph, Vec<EdgeUnit>) {
    let g = named::complete_bipartite(r as usize, s as usize);
    let x = |i: u64| i as usize;
    let y = |j: u64| (r + j) as usize;
    let mut units = Vec::new();
    if profile.m >= 1 && profile.n >= 1 {
        units.extend((0..profile.n).map(|j| bipartite_unit(&g, x(0), y(j))));
        units.extend((1..profile.m).map(|i| bipartite_unit(&g, x(i), y(0))));
    }
    (g, units)
}

/// Subtree closed form against filtered enumeration on `K_{r,s}`.
pub fn check_gd_subtree(r: u64, s: u64, profile: SubtreeProfile, budget: &OracleBudget) -> Result<PropertyOutcome> {
    let formula = gd_tree_count(r, s, profile)?;
    let (g, units) = bipartite_subtree(r, s, profile);
    let counted = count_forests(&g, budget, &ForestFilter::containing(units))?;
    let instance = format!("K_({r},{s}) subtree m={} n={}", profile.m, profile.n);
    Ok(PropertyOutcome::decide(GD_SUBTREE, instance, formula == counted, || {
        let mut w = witness(GD_SUBTREE, &g, None, counted.to_string(), formula.to_string());
        w.params = vec![r, s, profile.m, profile.n];
        w
    }))
}

/// Matching closed form against filtered enumeration on `K_{r,s}`.
pub fn check_gd_matching(r: u64, s: u64, l: u64, budget: &OracleBudget) -> Result<PropertyOutcome> {
    let formula = gd_matching_count(r, s, l)?;
    let g = named::complete_bipartite(r as usize, s as usize);
    let units = (0..l).map(|i| bipartite_unit(&g, i as usize, (r + i) as usize)).collect();
    let counted = count_forests(&g, budget, &ForestFilter::containing(units))?;
    let instance = format!("K_({r},{s}) matching l={l}");
    Ok(PropertyOutcome::decide(GD_MATCHING, instance, formula == counted, || {
        let mut w = witness(GD_MATCHING, &g, None, counted.to_string(), formula.to_string());
        w.params = vec![r, s, l];
        w
    }))
}

/// Closed-form tree counts of a bipartite or `H` necklace (whole graph, key
/// edges, and every other edge by class) against the determinant report.
pub fn check_necklace_forms_with(family: Family, params: &[u64], report: &DensityReport) -> Result<PropertyOutcome> {
    let necklace = match family {
        Family::BipartiteNecklace => bipartite_necklace(params),
        Family::HNecklace => h_necklace(params),
        _ => {
            return Err(VerifyError::Domain(format!(
                "{family:?} is not a necklace family"
            )))
        }
    };
    let g = &necklace.graph;
    let blocks: Vec<BipartiteBlockParams> = std::iter::once(BipartiteBlockParams::new(1, 1))
        .chain(params.iter().map(|&t| BipartiteBlockParams::new(2 * t, 2 * t - 1)))
        .collect();
    let rs: Vec<u64> = std::iter::once(0).chain(params.iter().copied()).collect();
    let total = match family {
        Family::BipartiteNecklace => bipartite_necklace_tau(&blocks)?,
        _ => h_necklace_tau(&rs)?,
    };
    let mut bad = None;
    if total != report.tau {
        bad = Some((None, total.to_string(), report.tau.to_string()));
    }
    for e in g.edge_refs() {
        if bad.is_some() {
            break;
        }
        let (k, idx) = necklace.origin[e.0];
        let formula = match (family, idx) {
            (Family::BipartiteNecklace, 0) => bipartite_key_edge_tau(&blocks, k)?,
            (Family::BipartiteNecklace, _) => {
                let class = necklace
                    .edge_class(e)
                    .ok_or_else(|| VerifyError::Domain(format!("edge {} has no class", e.0)))?;
                bipartite_type_edge_tau(&blocks, k, class)?
            }
            (_, 0) => h_necklace_key_tau(&rs, k)?,
            _ => h_necklace_nonkey_tau(&rs, k)?,
        };
        if &formula != report.tau_edge_of(e) {
            bad = Some((Some(e), formula.to_string(), report.tau_edge_of(e).to_string()));
        }
    }
    let instance = format!("{family:?}{params:?}");
    Ok(PropertyOutcome::decide(NECKLACE_FORMS, instance, bad.is_none(), || {
        let (e, formula, det) = bad.clone().expect("failure recorded");
        let mut w = witness(NECKLACE_FORMS, g, e, formula, det);
        w.params = params.to_vec();
        w.family = Some(family);
        w
    }))
}

/// Theta closed forms against the determinant report of `Θ(paths)`.
pub fn check_theta_forms(paths: &[u64]) -> Result<PropertyOutcome> {
    let g = theta_graph(paths);
    let report = density_report(&g)?;
    let mut bad = None;
    let total = theta_tau(paths)?;
    if total != report.tau {
        bad = Some((None, total.to_string(), report.tau.to_string()));
    }
    for (idx, k) in theta_edge_paths(paths).into_iter().enumerate() {
        let formula = theta_tau_edge(paths, k)?;
        if bad.is_none() && &formula != report.tau_edge_of(EdgeRef(idx)) {
            bad = Some((
                Some(EdgeRef(idx)),
                formula.to_string(),
                report.tau_edge_of(EdgeRef(idx)).to_string(),
            ));
        }
    }
    Ok(PropertyOutcome::decide(THETA_FORMS, format!("Θ{paths:?}"), bad.is_none(), || {
        let (e, formula, det) = bad.clone().expect("failure recorded");
        let mut w = witness(THETA_FORMS, &g, e, formula, det);
        w.params = paths.to_vec();
        w
    }))
}

/// Whether `report` of a built graph confirms the recipe's claim exactly.
/// For the bipartite and `H` necklaces the key edge must be the only
/// densest edge.
pub fn check_recipe_claim(g: &Multigraph, recipe: &Recipe, report: &DensityReport) -> PropertyOutcome {
    let key = recipe.key_edge;
    let target = &recipe.claim.value;
    let ok = match recipe.claim.kind {
        ClaimKind::Density => report.density_of(key) == target,
        ClaimKind::Dependence => {
            let unique = matches!(recipe.family, Family::BipartiteNecklace | Family::HNecklace);
            &report.dep == target
                && report.density_of(key) == target
                && (!unique || report.argmax == [key])
        }
    };
    let instance = format!("{:?} {} {:?}", recipe.family, recipe.target, recipe.params);
    PropertyOutcome::decide(RECIPE_CLAIM, instance, ok, || {
        let argmax: Vec<String> = report.argmax.iter().map(|e| e.0.to_string()).collect();
        let mut w = witness(
            RECIPE_CLAIM,
            g,
            Some(key),
            format!("{:?} {} at edge {}", recipe.claim.kind, format_ratio(target), key.0),
            format!(
                "density {}, dep {}, argmax [{}]",
                format_ratio(report.density_of(key)),
                format_ratio(&report.dep),
                argmax.join(",")
            ),
        );
        w.params = vec![recipe.target.p(), recipe.target.q()];
        w
    })
}

/// Re-runs the check recorded in a witness.
pub fn replay(w: &Witness) -> Result<Vec<PropertyOutcome>> {
    let g = parse_graph(&w.graph)?;
    let edge = || {
        w.edge
            .map(EdgeRef)
            .ok_or_else(|| VerifyError::Witness("missing edge".into()))
    };
    let param = |i: usize| {
        w.params
            .get(i)
            .copied()
            .ok_or_else(|| VerifyError::Witness(format!("missing parameter {i}")))
    };
    let budget = OracleBudget::default().max(OracleBudget {
        max_vertices: g.vertex_count(),
        max_edge_units: g.edge_units(),
        max_trees: 1_000_000,
    });
    let one = |o: PropertyOutcome| vec![o];
    Ok(match w.property.as_str() {
        FOSTER => one(check_foster(&g)?),
        PLANAR_BOUND => one(check_planar_bound(&g)?),
        DUAL_IDENTITY | DUAL_TREE_COUNT => check_dual_identity(&w.params)?,
        ORACLE_TAU => one(check_oracle_tau(&g, &budget)?),
        ORACLE_EDGE => check_oracle_edges(&g, &budget)?,
        REPORT_ROUTES => one(check_report_routes_with(&g, &density_report(&g)?)?),
        ORACLE_THICKET => one(check_oracle_thicket(
            &g,
            edge()?,
            VertexId(param(0)? as usize),
            VertexId(param(1)? as usize),
            &budget,
        )?),
        GD_SUBTREE => one(check_gd_subtree(
            param(0)?,
            param(1)?,
            SubtreeProfile {
                m: param(2)?,
                n: param(3)?,
            },
            &budget,
        )?),
        GD_MATCHING => one(check_gd_matching(param(0)?, param(1)?, param(2)?, &budget)?),
        THETA_FORMS => one(check_theta_forms(&w.params)?),
        NECKLACE_FORMS => {
            let family = w
                .family
                .ok_or_else(|| VerifyError::Witness("missing family".into()))?;
            one(check_necklace_forms_with(family, &w.params, &density_report(&g)?)?)
        }
        KEY_ORDERING => {
            let blocks = w
                .blocks
                .iter()
                .map(|b| parse_graph(b))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            one(check_key_ordering(&Necklace::assemble(blocks))?)
        }
        RECIPE_CLAIM => {
            return Err(VerifyError::Witness(
                "recipe claims are replayed with `construct`".into(),
            ))
        }
        other => return Err(VerifyError::Witness(format!("unknown property {other:?}"))),
    })
}

/// Seeded corpus of connected multigraphs within `budget`: a random tree on
/// `2..=max_vertices` vertices plus random extra units, parallel ones
/// included.
pub fn random_corpus(seed: u64, count: usize, budget: &OracleBudget) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_n = budget.max_vertices.max(2);
    (0..count)
        .map(|_| loop {
            let n = rng.random_range(2..=max_n);
            if (n as u64 - 1) > budget.max_edge_units {
                continue;
            }
            let units = rng.random_range(n as u64 - 1..=budget.max_edge_units);
            let mut bundles: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            for w in 1..n {
                let u = rng.random_range(0..w);
                *bundles.entry((u, w)).or_default() += 1;
            }
            for _ in (n as u64 - 1)..units {
                let a = rng.random_range(0..n);
                let mut b = rng.random_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                *bundles.entry((a.min(b), a.max(b))).or_default() += 1;
            }
            let g = Multigraph::from_edges(n, bundles.into_iter().map(|((u, v), m)| (u, v, m)))
                .expect("generated edges are valid");
            let trees = tau(&g);
            if trees <= TreeCount::from(budget.max_trees) {
                break g;
            }
        })
        .collect()
}

/// The property suites the CLI can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Foster,
    Dual,
    Bound,
    Forms,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Foster, Suite::Dual, Suite::Bound, Suite::Forms, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Foster => "foster",
            Suite::Dual => "dual",
            Suite::Bound => "bound",
            Suite::Forms => "forms",
            Suite::Oracle => "oracle",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?} (expected foster, dual, bound, forms or oracle)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub budget: OracleBudget,
    pub corpus_size: usize,
    /// Constructions are built for every target with denominator up to this.
    pub max_q: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            budget: OracleBudget::default(),
            corpus_size: 500,
            max_q: 6,
        }
    }
}

/// A built construction together with its determinant report.
#[derive(Debug, Clone)]
pub struct ConstructionInstance {
    pub graph: Multigraph,
    pub recipe: Recipe,
    pub report: DensityReport,
}

impl ConstructionInstance {
    pub fn name(&self) -> String {
        format!("{:?} {} {:?}", self.recipe.family, self.recipe.target, self.recipe.params)
    }
}

/// Builds one construction of `family` for `t`.
pub fn build_construction(family: Family, t: TargetRational, strategy: Strategy) -> Result<(Multigraph, Recipe)> {
    Ok(match family {
        Family::BipartiteNecklace => build_bipartite_necklace(t, strategy)?,
        Family::ThetaDensity => build_theta(t, strategy)?,
        Family::ThetaDualMultigraph => {
            let (g, r, _) = build_theta_dual(t, strategy)?;
            (g, r)
        }
        Family::HNecklace => build_h_necklace(t, strategy)?,
    })
}

/// Builds and analyzes one construction.
pub fn build_instance(family: Family, t: TargetRational, strategy: Strategy) -> Result<ConstructionInstance> {
    let (graph, recipe) = build_construction(family, t, strategy)?;
    let report = density_report(&graph)?;
    Ok(ConstructionInstance { graph, recipe, report })
}

/// Whether the family can realize `t` at all.
pub fn family_accepts(family: Family, t: TargetRational) -> bool {
    match family {
        Family::HNecklace => 2 * t.p() > t.q(),
        _ => true,
    }
}

/// Every construction of every family for every `p/q` in `(0, 1)` with
/// `q <= max_q`, analyzed in parallel.
pub fn construction_instances(max_q: u64) -> Result<Vec<ConstructionInstance>> {
    let jobs: Vec<(Family, TargetRational)> = TargetRational::all_up_to(max_q)
        .into_iter()
        .flat_map(|t| {
            [
                Family::BipartiteNecklace,
                Family::ThetaDensity,
                Family::ThetaDualMultigraph,
                Family::HNecklace,
            ]
            .into_iter()
            .filter(move |&f| family_accepts(f, t))
            .map(move |f| (f, t))
        })
        .collect();
    jobs.into_par_iter()
        .map(|(f, t)| build_instance(f, t, Strategy::Greedy))
        .collect()
}

/// Small graphs drawn from the usual named families.
pub fn named_graphs() -> Vec<(String, Multigraph)> {
    let mut out = Vec::new();
    for n in 3..=7 {
        out.push((format!("C_{n}"), named::cycle(n)));
        out.push((format!("K_{n}"), named::complete(n)));
    }
    for n in 2..=6 {
        out.push((format!("P_{n}"), named::path(n)));
    }
    for (r, s) in [(1, 3), (2, 3), (3, 3), (3, 4), (4, 4)] {
        out.push((format!("K_({r},{s})"), named::complete_bipartite(r, s)));
    }
    for m in 1..=4 {
        out.push((format!("bond_{m}"), named::bond(m)));
    }
    out
}

/// Theta path lists: every sequence of 2 or 3 paths of length 1 to 4, and
/// every non-decreasing sequence of 4 such paths.
pub fn theta_parameter_sets() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for a in 1..=4 {
        for b in 1..=4 {
            out.push(vec![a, b]);
            for c in 1..=4 {
                out.push(vec![a, b, c]);
            }
        }
    }
    for a in 1..=4 {
        for b in a..=4 {
            for c in b..=4 {
                for d in c..=4 {
                    out.push(vec![a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Planar instances for the bound check, built from known simple planar
/// graphs.
pub fn planar_instances() -> Vec<(String, Multigraph)> {
    let mut out: Vec<(String, Multigraph)> = crate::search::planar_seeds();
    for n in 3..=8 {
        out.push((format!("C_{n}"), named::cycle(n)));
    }
    for n in 2..=6 {
        out.push((format!("P_{n}"), named::path(n)));
    }
    out.push(("K_(2,5)".into(), named::complete_bipartite(2, 5)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub property: String,
    pub instances: usize,
    pub failures: usize,
}

/// Outcomes of one suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub outcomes: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    /// Per-property counts, in first-seen order.
    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut rows: Vec<SummaryRow> = Vec::new();
        for o in &self.outcomes {
            let row = match rows.iter_mut().find(|r| r.property == o.property) {
                Some(row) => row,
                None => {
                    rows.push(SummaryRow {
                        property: o.property.clone(),
                        instances: 0,
                        failures: 0,
                    });
                    rows.last_mut().expect("just pushed")
                }
            };
            row.instances += 1;
            row.failures += usize::from(!o.passed);
        }
        rows
    }

    /// `property\tinstances\tfailures` with a header line.
    pub fn summary_tsv(&self) -> String {
        let mut out = String::from("property\tinstances\tfailures\n");
        for r in self.summary() {
            out.push_str(&format!("{}\t{}\t{}\n", r.property, r.instances, r.failures));
        }
        out
    }

    /// The witnesses of all failures as a JSON array.
    pub fn witnesses_json(&self) -> String {
        let ws: Vec<&Witness> = self.failures().filter_map(|o| o.witness.as_ref()).collect();
        serde_json::to_string_pretty(&ws).expect("witnesses serialize")
    }
}

fn flatten(results: Vec<Result<Vec<PropertyOutcome>>>) -> Result<Vec<PropertyOutcome>> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Runs one suite.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let outcomes = match suite {
        Suite::Foster => foster_suite(config)?,
        Suite::Dual => dual_suite(config)?,
        Suite::Bound => bound_suite(config)?,
        Suite::Forms => forms_suite(config)?,
        Suite::Oracle => oracle_suite(config)?,
    };
    Ok(SuiteReport { suite, outcomes })
}

fn foster_suite(config: &SuiteConfig) -> Result<Vec<PropertyOutcome>> {
    let corpus = random_corpus(config.seed, config.corpus_size, &config.budget);
    let mut out: Vec<PropertyOutcome> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, g)| Ok(check_foster(g)?.named(format!("corpus #{i}"))))
        .collect::<Result<_>>()?;
    for (name, g) in named_graphs() {
        out.push(check_foster(&g)?.named(name));
    }
    for inst in construction_instances(config.max_q)? {
        out.push(check_foster_with(&inst.graph, &inst.report).named(inst.name()));
    }
    Ok(out)
}

fn dual_suite(config: &SuiteConfig) -> Result<Vec<PropertyOutcome>> {
    let mut sets = theta_parameter_sets();
    for t in TargetRational::all_up_to(config.max_q) {
        for family in [Family::ThetaDensity, Family::ThetaDualMultigraph] {
            let (_, recipe) = match family {
                Family::ThetaDensity => build_theta(t, Strategy::Greedy)?,
                _ => {
                    let (g, r, _) = build_theta_dual(t, Strategy::Greedy)?;
                    (g, r)
                }
            };
            sets.push(std::iter::once(1).chain(recipe.params).collect());
        }
    }
    sets.sort();
    sets.dedup();
    flatten(sets.par_iter().map(|p| check_dual_identity(p)).collect())
}

fn bound_suite(config: &SuiteConfig) -> Result<Vec<PropertyOutcome>> {
    let mut out = Vec::new();
    for (name, g) in planar_instances() {
        out.push(check_planar_bound(&g)?.named(name));
    }
    let targets: Vec<TargetRational> = TargetRational::all_up_to(config.max_q)
        .into_iter()
        .filter(|&t| family_accepts(Family::HNecklace, t))
        .collect();
    let built: Vec<Result<PropertyOutcome>> = targets
        .par_iter()
        .map(|&t| {
            let inst = build_instance(Family::HNecklace, t, Strategy::Greedy)?;
            Ok(check_planar_bound_with(&inst.graph, &inst.report)?.named(inst.name()))
        })
        .collect();
    for r in built {
        out.push(r?);
    }
    Ok(out)
}

/// Subtree profiles with at most four vertices that fit in `K_{r,s}`.
pub fn small_profiles(r: u64, s: u64) -> Vec<SubtreeProfile> {
    let mut out = vec![SubtreeProfile { m: 1, n: 0 }, SubtreeProfile { m: 0, n: 1 }];
    for m in 1..=3 {
        for n in 1..=3 {
            if m + n <= 4 && m <= r && n <= s {
                out.push(SubtreeProfile { m, n });
            }
        }
    }
    out
}

fn forms_suite(config: &SuiteConfig) -> Result<Vec<PropertyOutcome>> {
    let budget = config.budget.max(OracleBudget {
        max_vertices: 10,
        max_edge_units: 25,
        max_trees: 1_000_000,
    });
    let mut jobs: Vec<(u64, u64, Option<SubtreeProfile>, u64)> = Vec::new();
    for r in 1..=5u64 {
        for s in 1..=5u64 {
            for p in small_profiles(r, s) {
                jobs.push((r, s, Some(p), 0));
            }
            for l in 1..r.min(s) {
                jobs.push((r, s, None, l));
            }
        }
    }
    let mut out: Vec<PropertyOutcome> = jobs
        .par_iter()
        .map(|&(r, s, p, l)| match p {
            Some(p) => check_gd_subtree(r, s, p, &budget),
            None => check_gd_matching(r, s, l, &budget),
        })
        .collect::<Result<_>>()?;
    out.extend(flatten(
        theta_parameter_sets()
            .par_iter()
            .map(|p| Ok(vec![check_theta_forms(p)?]))
            .collect(),
    )?);
    for inst in construction_instances(config.max_q)? {
        out.push(check_recipe_claim(&inst.graph, &inst.recipe, &inst.report));
        let family = inst.recipe.family;
        if matches!(family, Family::BipartiteNecklace | Family::HNecklace) && inst.graph.vertex_count() <= 150 {
            out.push(check_necklace_forms_with(family, &inst.recipe.params, &inst.report)?);
            let necklace = match family {
                Family::BipartiteNecklace => bipartite_necklace(&inst.recipe.params),
                _ => h_necklace(&inst.recipe.params),
            };
            out.push(check_key_ordering_with(&necklace, &inst.report)?);
        }
    }
    Ok(out)
}

fn oracle_suite(config: &SuiteConfig) -> Result<Vec<PropertyOutcome>> {
    let corpus = random_corpus(config.seed, config.corpus_size, &config.budget);
    let budget = config.budget;
    let seed = config.seed;
    flatten(
        corpus
            .par_iter()
            .enumerate()
            .map(|(i, g)| {
                let name = format!("corpus #{i}");
                let mut out = vec![check_oracle_tau(g, &budget)?.named(name.clone())];
                out.extend(
                    check_oracle_edges(g, &budget)?
                        .into_iter()
                        .map(|o| o.named(name.clone())),
                );
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let n = g.vertex_count();
                let e = EdgeRef(rng.random_range(0..g.edges().len()));
                let u = rng.random_range(0..n);
                let v = (u + rng.random_range(1..n)) % n;
                out.push(check_oracle_thicket(g, e, VertexId(u), VertexId(v), &budget)?);
                Ok(out)
            })
            .collect(),
    )
}

/// Density of one edge computed purely by enumeration.
pub fn enumerated_density(g: &Multigraph, e: EdgeRef, budget: &OracleBudget) -> Result<BigRational> {
    let total = enumerate_spanning_trees(g, budget)?;
    let through = count_forests(g, budget, &ForestFilter::containing(vec![EdgeUnit::first(e)]))?;
    if total.is_zero() {
        return Err(KirchhoffError::Disconnected.into());
    }
    Ok(BigRational::new(through.into(), total.into()))
}
