//! Finite directed multigraphs, paths, and hereditary/saturated vertex sets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ident {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// A finite directed multigraph. Vertices and edges keep their declaration
/// order; identifiers are unique across both.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    names: HashMap<String, Ident>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

pub type VertexSubset = BTreeSet<VertexId>;

/// Incremental graph construction with validation.
#[derive(Default)]
pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn vertex(&mut self, name: &str) -> Result<VertexId> {
        let g = &mut self.graph;
        if g.names.contains_key(name) {
            return Err(Error::DuplicateId(name.into()));
        }
        let id = VertexId(g.vertices.len() as u32);
        g.vertices.push(name.into());
        g.out_edges.push(Vec::new());
        g.in_edges.push(Vec::new());
        g.names.insert(name.into(), Ident::Vertex(id));
        Ok(id)
    }

    pub fn edge(&mut self, name: &str, source: &str, range: &str) -> Result<EdgeId> {
        let g = &mut self.graph;
        if g.names.contains_key(name) {
            return Err(Error::DuplicateId(name.into()));
        }
        let s = g.vertex(source)?;
        let r = g.vertex(range)?;
        let id = EdgeId(g.edges.len() as u32);
        g.edges.push(Edge {
            name: name.into(),
            source: s,
            range: r,
        });
        g.out_edges[s.index()].push(id);
        g.in_edges[r.index()].push(id);
        g.names.insert(name.into(), Ident::Edge(id));
        Ok(id)
    }

    pub fn build(self) -> Graph {
        self.graph
    }
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Builds a graph from vertex names and `(edge, source, range)` triples.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph> {
        let mut b = Graph::builder();
        for v in vertices {
            b.vertex(v)?;
        }
        for (e, s, r) in edges {
            b.edge(e, s, r)?;
        }
        Ok(b.build())
    }

    /// Parses the line-based graph format:
    ///
    /// ```text
    /// # comment
    /// vertex v
    /// edge c v v
    /// ```
    pub fn parse(text: &str) -> Result<Graph> {
        let mut b = Graph::builder();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            let at_line = |e: Error| match e {
                Error::Parse { msg, .. } => Error::Parse { line, msg },
                other => Error::Parse {
                    line,
                    msg: other.to_string(),
                },
            };
            match words.as_slice() {
                ["vertex", id] => {
                    b.vertex(id).map_err(at_line)?;
                }
                ["edge", id, s, r] => {
                    b.edge(id, s, r).map_err(at_line)?;
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected `vertex <id>` or `edge <id> <source> <range>`, found `{content}`"),
                    })
                }
            }
        }
        Ok(b.build())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.name, self.vertices[e.source.index()], self.vertices[e.range.index()]));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        match self.names.get(name) {
            Some(Ident::Vertex(v)) => Ok(*v),
            _ => Err(Error::UnknownVertex(name.into())),
        }
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId> {
        match self.names.get(name) {
            Some(Ident::Edge(e)) => Ok(*e),
            _ => Err(Error::UnknownEdge(name.into())),
        }
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    /// `s⁻¹(v)` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    /// `r⁻¹(v)` in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.index()].is_empty()
    }

    /// Ranges of the edges leaving `v`.
    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges(v).iter().map(|&e| self.range(e))
    }

    pub fn all_vertices(&self) -> VertexSubset {
        self.vertices().collect()
    }

    pub fn subset(&self, names: &[&str]) -> Result<VertexSubset> {
        names.iter().map(|n| self.vertex(n)).collect()
    }

    pub fn subset_names(&self, w: &VertexSubset) -> Vec<String> {
        w.iter().map(|&v| self.vertex_name(v).to_string()).collect()
    }

    fn check_subset(&self, w: &VertexSubset) -> Result<()> {
        match w.iter().find(|v| v.index() >= self.vertices.len()) {
            Some(v) => Err(Error::UnknownVertex(format!("#{}", v.0))),
            None => Ok(()),
        }
    }

    /// Whether `w` is (hereditary, saturated).
    pub fn hereditary_saturated_check(&self, w: &VertexSubset) -> Result<(bool, bool)> {
        self.check_subset(w)?;
        let hereditary = w.iter().all(|&v| self.out_neighbors(v).all(|u| w.contains(&u)));
        let saturated = self
            .vertices()
            .filter(|v| !self.is_sink(*v) && !w.contains(v))
            .all(|v| !self.out_neighbors(v).all(|u| w.contains(&u)));
        Ok((hereditary, saturated))
    }

    pub fn is_hereditary_saturated(&self, w: &VertexSubset) -> Result<bool> {
        let (h, s) = self.hereditary_saturated_check(w)?;
        Ok(h && s)
    }

    /// Least hereditary saturated superset of `w`.
    pub fn hsat_closure(&self, w: &VertexSubset) -> Result<VertexSubset> {
        self.check_subset(w)?;
        let mut cur = w.clone();
        loop {
            let mut changed = false;
            // downstream closure
            let mut stack: Vec<VertexId> = cur.iter().copied().collect();
            while let Some(v) = stack.pop() {
                for u in self.out_neighbors(v) {
                    if cur.insert(u) {
                        stack.push(u);
                        changed = true;
                    }
                }
            }
            // saturation
            for v in self.vertices() {
                if !cur.contains(&v) && !self.is_sink(v) && self.out_neighbors(v).all(|u| cur.contains(&u)) {
                    cur.insert(v);
                    changed = true;
                }
            }
            if !changed {
                return Ok(cur);
            }
        }
    }

    pub const DEFAULT_HSAT_BOUND: usize = 16;

    /// All hereditary saturated subsets, by exhaustive enumeration, sorted by
    /// size and then by vertex order.
    pub fn enumerate_hsat(&self, bound: usize) -> Result<Vec<VertexSubset>> {
        let n = self.vertex_count();
        if n > bound {
            return Err(Error::BoundExceeded { got: n, bound });
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let w: VertexSubset = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| VertexId(i as u32)).collect();
            if self.is_hereditary_saturated(&w)? {
                out.push(w);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
        Ok(out)
    }

    fn induced(&self, keep_vertex: impl Fn(VertexId) -> bool, keep_edge: impl Fn(EdgeId) -> bool) -> Graph {
        let mut b = Graph::builder();
        for v in self.vertices().filter(|v| keep_vertex(*v)) {
            b.vertex(self.vertex_name(v)).expect("names unique in source graph");
        }
        for e in self.edges().filter(|e| keep_edge(*e)) {
            b.edge(self.edge_name(e), self.vertex_name(self.source(e)), self.vertex_name(self.range(e)))
                .expect("endpoints kept");
        }
        b.build()
    }

    /// `Γ(W) = (W, E(W, W))`.
    pub fn restrict(&self, w: &VertexSubset) -> Result<Graph> {
        self.check_subset(w)?;
        Ok(self.induced(|v| w.contains(&v), |e| w.contains(&self.source(e)) && w.contains(&self.range(e))))
    }

    /// `Γ/W = (V∖W, E∖E(V, W))`; `w` must be hereditary and saturated.
    pub fn quotient(&self, w: &VertexSubset) -> Result<Graph> {
        if !self.is_hereditary_saturated(w)? {
            return Err(Error::NotHereditarySaturated);
        }
        Ok(self.induced(|v| !w.contains(&v), |e| !w.contains(&self.range(e))))
    }

    /// Whether `v` is a balloon over `w`: `v ∉ W`, exactly one loop `C` at
    /// `v`, `E(v, W) ≠ ∅`, `E(v, V) = {C} ∪ E(v, W)` and `E(V, v) = {C}`.
    pub fn is_balloon(&self, v: VertexId, w: &VertexSubset) -> Result<bool> {
        self.check_subset(w)?;
        if v.index() >= self.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", v.0)));
        }
        if w.is_empty() || w.contains(&v) {
            return Ok(false);
        }
        let loops: Vec<EdgeId> = self.out_edges(v).iter().copied().filter(|&e| self.range(e) == v).collect();
        let [c] = loops.as_slice() else { return Ok(false) };
        let into_w = self.out_edges(v).iter().filter(|&&e| w.contains(&self.range(e))).count();
        if into_w == 0 {
            return Ok(false);
        }
        if self.out_edges(v).len() != 1 + into_w {
            return Ok(false);
        }
        Ok(self.in_edges(v) == [*c])
    }

    /// All paths of length at most `max_len`: vertices first in declaration
    /// order, then by length and lexicographically by edge name.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self.vertices().map(Path::vertex).collect();
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range()) {
                    next.push(p.extended(self, e));
                }
            }
            next.sort_by(|a, b| self.path_cmp(a, b));
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Paths starting at `v` of length exactly `len`.
    pub fn paths_from(&self, v: VertexId, len: usize) -> Vec<Path> {
        let mut frontier = vec![Path::vertex(v)];
        for _ in 0..len {
            frontier = frontier
                .iter()
                .flat_map(|p| self.out_edges(p.range()).iter().map(move |&e| p.extended(self, e)))
                .collect();
        }
        frontier
    }

    /// Canonical comparison: length, then edge names lexicographically, then
    /// the source vertex position.
    pub fn path_cmp(&self, a: &Path, b: &Path) -> std::cmp::Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| {
                let an = a.edges().iter().map(|&e| self.edge_name(e));
                let bn = b.edges().iter().map(|&e| self.edge_name(e));
                an.cmp(bn)
            })
            .then_with(|| a.source().cmp(&b.source()))
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.is_vertex() {
            self.vertex_name(p.source()).to_string()
        } else {
            p.edges().iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join(".")
        }
    }

    /// Parses `v` (a vertex) or `e1.e2.…` (a path of edges).
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Ok(v) = self.vertex(text) {
            return Ok(Path::vertex(v));
        }
        let edges: Vec<EdgeId> = text.split('.').map(|n| self.edge(n.trim())).collect::<Result<_>>()?;
        Path::from_edges(self, &edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A path `e₁…eₙ` with `r(eᵢ) = s(eᵢ₊₁)`; length 0 paths are vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path {
            source: g.source(e),
            range: g.range(e),
            edges: vec![e],
        }
    }

    /// Validates the adjacency chain; `edges` must be nonempty.
    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Result<Path> {
        let (&first, rest) = edges.split_first().ok_or_else(|| Error::InvalidPath("empty edge list".into()))?;
        let mut p = Path::edge(g, first);
        for &e in rest {
            if g.source(e) != p.range {
                return Err(Error::InvalidPath(format!(
                    "`{}` does not start where `{}` ends",
                    g.edge_name(e),
                    g.format_path(&p)
                )));
            }
            p.edges.push(e);
            p.range = g.range(e);
        }
        Ok(p)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// Appends `e`; caller guarantees `s(e) = r(self)`.
    pub fn extended(&self, g: &Graph, e: EdgeId) -> Path {
        debug_assert_eq!(g.source(e), self.range);
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            source: self.source,
            range: g.range(e),
            edges,
        }
    }

    /// Drops the last edge; the result ends at that edge's source.
    pub fn without_last(&self, g: &Graph) -> Option<Path> {
        let e = self.last_edge()?;
        let mut edges = self.edges.clone();
        edges.pop();
        Some(Path {
            source: self.source,
            range: g.source(e),
            edges,
        })
    }

    /// `self · other`, or `None` when `r(self) ≠ s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.range != other.source {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            source: self.source,
            range: other.range,
            edges,
        })
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.source != prefix.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            source: prefix.range,
            range: self.range,
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }

    /// The initial segment with `n` edges.
    pub fn prefix(&self, g: &Graph, n: usize) -> Path {
        let edges = self.edges[..n].to_vec();
        let range = edges.last().map_or(self.source, |&e| g.range(e));
        Path {
            source: self.source,
            range,
            edges,
        }
    }

    /// The final segment after the first `n` edges.
    pub fn suffix(&self, g: &Graph, n: usize) -> Path {
        let source = if n == 0 { self.source } else { g.range(self.edges[n - 1]) };
        Path {
            source,
            range: self.range,
            edges: self.edges[n..].to_vec(),
        }
    }

    /// Vertices visited, in order (`len + 1` entries).
    pub fn vertices<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = VertexId> + 'a {
        std::iter::once(self.source).chain(self.edges.iter().map(|&e| g.range(e)))
    }
}

/// Small graphs used throughout the tests, examples and CLI.
pub mod samples {
    use super::Graph;

    /// One vertex `v` with a loop `c`.
    pub fn loop_graph() -> Graph {
        Graph::from_parts(&["v"], &[("c", "v", "v")]).expect("valid")
    }

    /// `u` with a loop `c` and an edge `f: u → v`; `v` is a sink.
    pub fn toeplitz() -> Graph {
        Graph::from_parts(&["u", "v"], &[("c", "u", "u"), ("f", "u", "v")]).expect("valid")
    }

    /// `f: u → v`.
    pub fn line() -> Graph {
        Graph::from_parts(&["u", "v"], &[("f", "u", "v")]).expect("valid")
    }

    /// `e: u → v`, `g: v → u`.
    pub fn two_cycle() -> Graph {
        Graph::from_parts(&["u", "v"], &[("e", "u", "v"), ("g", "v", "u")]).expect("valid")
    }

    /// `u` with loop `c`, `f: u → v`, `h: v → w`; `w` is a sink.
    pub fn three_vertex() -> Graph {
        Graph::from_parts(&["u", "v", "w"], &[("c", "u", "u"), ("f", "u", "v"), ("h", "v", "w")]).expect("valid")
    }

    pub fn all() -> Vec<(&'static str, Graph)> {
        vec![
            ("loop", loop_graph()),
            ("line", line()),
            ("toeplitz", toeplitz()),
            ("two-cycle", two_cycle()),
            ("three-vertex", three_vertex()),
        ]
    }
}
