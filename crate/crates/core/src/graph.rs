//! Multigraph carrier shared by every other module.
//!
//! Parallel edges are stored as one [`EdgeRecord`] with a multiplicity rather
//! than as repeated records. Self-loops are never stored: they cannot appear in
//! a spanning tree, so contraction and identification drop them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("endpoint out of range: edge {u}-{v} in a graph with {n} vertices")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge {u}-{v} has zero multiplicity")]
    ZeroMultiplicity { u: usize, v: usize },
    #[error("no edge with index {0}")]
    InvalidEdge(usize),
    #[error("cannot identify vertex {0} with itself")]
    SameVertex(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// Dense vertex index in `0..vertex_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Index of an edge record. Every unit of a parallel bundle has the same
/// density, so one reference stands for any unit of the bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef(pub usize);

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

impl From<usize> for EdgeRef {
    fn from(e: usize) -> Self {
        EdgeRef(e)
    }
}

/// A bundle of `multiplicity` parallel edges between two distinct vertices.
/// Endpoints are kept normalized so that `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeRecord {
    u: usize,
    v: usize,
    multiplicity: u64,
    label: Option<String>,
}

impl EdgeRecord {
    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn joins(&self, a: usize, b: usize) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<EdgeRecord>,
}

impl Multigraph {
    /// Edgeless graph on `vertex_count` vertices.
    pub fn new(vertex_count: usize) -> Result<Self> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Multigraph {
            vertex_count,
            edges: Vec::new(),
        })
    }

    /// Builds a graph from `(u, v, multiplicity)` triples.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut g = Multigraph::new(vertex_count)?;
        for (u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    /// Simple graph from a list of vertex pairs.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Multigraph::from_edges(vertex_count, pairs.iter().map(|&(u, v)| (u, v, 1)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize, multiplicity: u64) -> Result<EdgeRef> {
        self.push_record(u, v, multiplicity, None)
    }

    pub fn add_labeled_edge(
        &mut self,
        u: usize,
        v: usize,
        multiplicity: u64,
        label: impl Into<String>,
    ) -> Result<EdgeRef> {
        self.push_record(u, v, multiplicity, Some(label.into()))
    }

    fn push_record(
        &mut self,
        u: usize,
        v: usize,
        multiplicity: u64,
        label: Option<String>,
    ) -> Result<EdgeRef> {
        let n = self.vertex_count;
        if u >= n || v >= n {
            return Err(GraphError::EndpointOutOfRange { u, v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if multiplicity == 0 {
            return Err(GraphError::ZeroMultiplicity { u, v });
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.push(EdgeRecord {
            u,
            v,
            multiplicity,
            label,
        });
        Ok(EdgeRef(self.edges.len() - 1))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeRef) -> Result<&EdgeRecord> {
        self.edges.get(e.0).ok_or(GraphError::InvalidEdge(e.0))
    }

    pub fn edge_refs(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.edges.len()).map(EdgeRef)
    }

    /// Number of edges counting every unit of every bundle.
    pub fn edge_units(&self) -> u64 {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    /// First edge record carrying `label`.
    pub fn find_label(&self, label: &str) -> Option<EdgeRef> {
        self.edges
            .iter()
            .position(|e| e.label.as_deref() == Some(label))
            .map(EdgeRef)
    }

    pub fn degree(&self, w: usize) -> u64 {
        self.edges
            .iter()
            .filter(|e| e.touches(w))
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count;
        let mut adjacency = vec![Vec::new(); n];
        for e in &self.edges {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(w) = stack.pop() {
            for &x in &adjacency[w] {
                if !seen[x] {
                    seen[x] = true;
                    reached += 1;
                    stack.push(x);
                }
            }
        }
        reached == n
    }

    /// True when no vertex pair carries more than one edge unit.
    pub fn is_simple(&self) -> bool {
        let mut pairs = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|e| e.multiplicity == 1 && pairs.insert((e.u, e.v)))
    }

    /// Proper 2-colouring of the vertices, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count;
        let mut adjacency = vec![Vec::new(); n];
        for e in &self.edges {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(w) = stack.pop() {
                let c = colour[w].unwrap();
                for &x in &adjacency[w] {
                    match colour[x] {
                        None => {
                            colour[x] = Some(!c);
                            stack.push(x);
                        }
                        Some(cx) if cx == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Contracts edge `e`: its endpoints are identified, the bundle (and any
    /// other loop) is dropped and parallel records are merged.
    pub fn contract(&self, e: EdgeRef) -> Result<Multigraph> {
        let rec = self.edge(e)?;
        Ok(self.identify_mapped(rec.u, rec.v).0)
    }

    /// Identifies `u` and `v`. Any `u`-`v` edges become loops and are dropped.
    pub fn identify(&self, u: VertexId, v: VertexId) -> Result<Multigraph> {
        for w in [u.0, v.0] {
            if w >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange(w));
            }
        }
        if u == v {
            return Err(GraphError::SameVertex(u.0));
        }
        Ok(self.identify_mapped(u.0, v.0).0)
    }

    /// Identification that also reports where each old edge record went
    /// (`None` when it became a loop). The higher index collapses into the
    /// lower one and every index above it shifts down by one.
    pub(crate) fn identify_mapped(&self, a: usize, b: usize) -> (Multigraph, Vec<Option<usize>>) {
        let (keep, gone) = if a < b { (a, b) } else { (b, a) };
        let relabel = |w: usize| -> usize {
            match w.cmp(&gone) {
                std::cmp::Ordering::Less => w,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => w - 1,
            }
        };
        let mut out = Multigraph {
            vertex_count: self.vertex_count - 1,
            edges: Vec::with_capacity(self.edges.len()),
        };
        let mut slot: HashMap<(usize, usize), usize> = HashMap::new();
        let mut map = Vec::with_capacity(self.edges.len());
        for rec in &self.edges {
            let (x, y) = (relabel(rec.u), relabel(rec.v));
            if x == y {
                map.push(None);
                continue;
            }
            let key = if x < y { (x, y) } else { (y, x) };
            let idx = *slot.entry(key).or_insert_with(|| {
                out.edges.push(EdgeRecord {
                    u: key.0,
                    v: key.1,
                    multiplicity: 0,
                    label: rec.label.clone(),
                });
                out.edges.len() - 1
            });
            out.edges[idx].multiplicity += rec.multiplicity;
            map.push(Some(idx));
        }
        (out, map)
    }

    /// Removes one unit of `e`. The record disappears once its multiplicity
    /// reaches zero; the result may be disconnected.
    pub fn delete(&self, e: EdgeRef) -> Result<Multigraph> {
        self.edge(e)?;
        let mut out = self.clone();
        out.edges[e.0].multiplicity -= 1;
        if out.edges[e.0].multiplicity == 0 {
            out.edges.remove(e.0);
        }
        Ok(out)
    }

    /// Removes every unit of `e`.
    pub fn delete_bundle(&self, e: EdgeRef) -> Result<Multigraph> {
        self.edge(e)?;
        let mut out = self.clone();
        out.edges.remove(e.0);
        Ok(out)
    }

    /// Same graph with record order and labels normalized away, for
    /// comparisons up to edge order.
    pub fn canonical_edges(&self) -> Vec<(usize, usize, u64, Option<String>)> {
        let mut v: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.multiplicity, e.label.clone()))
            .collect();
        v.sort();
        v
    }
}

/// Parses the text edge-list format: a vertex count line, then one
/// `u v multiplicity [label]` line per record. Blank lines and lines starting
/// with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_line, header) = lines.next().ok_or(GraphError::Parse {
        line: 0,
        message: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| GraphError::Parse {
        line: first_line,
        message: format!("bad vertex count {header:?}"),
    })?;
    let mut g = Multigraph::new(n).map_err(|e| GraphError::Parse {
        line: first_line,
        message: e.to_string(),
    })?;

    for (line, text) in lines {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() < 3 || tokens.len() > 4 {
            return Err(GraphError::Parse {
                line,
                message: format!("expected `u v m [label]`, got {text:?}"),
            });
        }
        let num = |tok: &str| -> Result<u64> {
            tok.parse().map_err(|_| GraphError::Parse {
                line,
                message: format!("bad integer {tok:?}"),
            })
        };
        let (u, v, m) = (num(tokens[0])? as usize, num(tokens[1])? as usize, num(tokens[2])?);
        let pushed = match tokens.get(3) {
            Some(label) => g.add_labeled_edge(u, v, m, *label),
            None => g.add_edge(u, v, m),
        };
        pushed.map_err(|e| GraphError::Parse {
            line,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

pub fn serialize_graph(g: &Multigraph) -> String {
    g.to_string()
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.vertex_count)?;
        for e in &self.edges {
            match &e.label {
                Some(label) => writeln!(f, "{} {} {} {}", e.u, e.v, e.multiplicity, label)?,
                None => writeln!(f, "{} {} {}", e.u, e.v, e.multiplicity)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Multigraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// Small named graphs used throughout the tests and the CLI examples.
pub mod named {
    use super::Multigraph;

    pub fn cycle(n: usize) -> Multigraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_pairs(n, &pairs).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Multigraph {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::from_pairs(n, &pairs).expect("path needs n >= 1")
    }

    pub fn complete(n: usize) -> Multigraph {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        Multigraph::from_pairs(n, &pairs).expect("complete graph needs n >= 1")
    }

    /// `K_{r,s}` with parts `0..r` and `r..r+s`.
    pub fn complete_bipartite(r: usize, s: usize) -> Multigraph {
        let mut pairs = Vec::new();
        for i in 0..r {
            for j in 0..s {
                pairs.push((i, r + j));
            }
        }
        Multigraph::from_pairs(r + s, &pairs).expect("parts must be non-empty")
    }

    /// Two vertices joined by `m` parallel edges.
    pub fn bond(m: u64) -> Multigraph {
        Multigraph::from_edges(2, [(0, 1, m)]).expect("bond needs m >= 1")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn contract_triangle_leaves_double_edge() {
        let g = complete(3);
        let h = g.contract(EdgeRef(0)).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edges().len(), 1);
        assert_eq!(h.edges()[0].endpoints(), (0, 1));
        assert_eq!(h.edges()[0].multiplicity(), 2);
    }

    #[test]
    fn contract_path_edge() {
        let h = path(3).contract(EdgeRef(0)).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.canonical_edges(), vec![(0, 1, 1, None)]);
    }

    #[test]
    fn contract_rejects_bad_index() {
        assert_eq!(complete(3).contract(EdgeRef(3)), Err(GraphError::InvalidEdge(3)));
    }

    #[test]
    fn contraction_relabels_high_into_low() {
        // path 0-1-2-3, contract 1-2: vertex 3 becomes 2
        let h = path(4).contract(EdgeRef(1)).unwrap();
        assert_eq!(h.canonical_edges(), vec![(0, 1, 1, None), (1, 2, 1, None)]);
    }

    #[test]
    fn identify_path_ends() {
        let h = path(3).identify(VertexId(0), VertexId(2)).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.canonical_edges(), vec![(0, 1, 2, None)]);
    }

    #[test]
    fn identify_adjacent_matches_contract() {
        let g = complete(3);
        assert_eq!(
            g.identify(VertexId(0), VertexId(1)).unwrap(),
            g.contract(EdgeRef(0)).unwrap()
        );
    }

    #[test]
    fn identify_same_vertex_fails() {
        assert_eq!(
            cycle(4).identify(VertexId(2), VertexId(2)),
            Err(GraphError::SameVertex(2))
        );
    }

    #[test]
    fn delete_units() {
        let p = complete(3).delete(EdgeRef(1)).unwrap();
        assert_eq!(p.edges().len(), 2);
        assert!(p.is_connected());
        let single = bond(2).delete(EdgeRef(0)).unwrap();
        assert_eq!(single.canonical_edges(), vec![(0, 1, 1, None)]);
        let none = bond(1).delete(EdgeRef(0)).unwrap();
        assert!(none.edges().is_empty());
        assert!(!none.is_connected());
    }

    #[test]
    fn parse_bundle() {
        let g = parse_graph("2\n0 1 3\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_units(), 3);
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn serialize_triangle() {
        assert_eq!(serialize_graph(&complete(3)), "3\n0 1 1\n0 2 1\n1 2 1\n");
    }

    #[test]
    fn parse_errors() {
        let err = parse_graph("2\n0 5 1\n").unwrap_err();
        assert!(err.to_string().contains("endpoint out of range"), "{err}");
        assert!(matches!(parse_graph("2\n0 1 0\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3\n0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph("x\n"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("# only a comment\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph("0\n"), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn parse_comments_and_labels() {
        let g = parse_graph("# theta\n3\n\n0 1 1 key:1\n1 2 2\n").unwrap();
        assert_eq!(g.edges()[0].label(), Some("key:1"));
        assert_eq!(g.find_label("key:1"), Some(EdgeRef(0)));
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn bipartite_detection() {
        assert!(cycle(4).bipartition().is_some());
        assert!(cycle(5).bipartition().is_none());
        assert!(complete_bipartite(3, 2).bipartition().is_some());
    }

    #[test]
    fn simplicity() {
        assert!(complete(4).is_simple());
        assert!(!bond(2).is_simple());
        let twin = Multigraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!twin.is_simple());
    }
}
