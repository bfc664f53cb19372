//! Simple graphs over opaque string labels, their orientations and colorings.
//!
//! Vertices are stored by index in declaration order; adjacency is a `u64`
//! bitmask per vertex, so graphs hold at most [`MAX_VERTICES`] vertices.

mod algo;
mod canon;
pub mod format;
pub mod generate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use algo::{
    color_with_at_most, find_triangle, girth, independence_number, is_connected, least_coloring,
    neighborhood, ColoringSearch, Girth,
};
pub use canon::{
    canonical_form, canonical_form_with_limit, canonical_labeling, orientation_canonical_form,
    DEFAULT_CANON_LIMIT,
};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Undirected simple graph with unique string labels.
#[derive(Clone)]
pub struct LabeledGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<u64>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for LabeledGraph {}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.labels[u], self.labels[v]))
            .collect();
        f.debug_struct("LabeledGraph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

impl LabeledGraph {
    /// Edgeless graph on the given labels.
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut g = LabeledGraph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        };
        for l in labels {
            g.add_vertex(l)?;
        }
        Ok(g)
    }

    /// Edgeless graph with labels `"0"`, `"1"`, ...
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    /// Builds a graph from labels and label pairs. Every edge endpoint must be listed.
    pub fn from_edges<S: AsRef<str>>(labels: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Self::new(labels.iter().map(|s| s.as_ref().to_string()))?;
        for (u, v) in edges {
            let (u, v) = (g.vertex(u.as_ref())?, g.vertex(v.as_ref())?);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph on indexed labels from index pairs.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::indexed(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_parts(labels: Vec<String>, adj: Vec<u64>) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        LabeledGraph { labels, index, adj }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(Error::LabelCollision(label));
        }
        if self.labels.len() == MAX_VERTICES {
            return Err(Error::TooManyVertices(MAX_VERTICES + 1, MAX_VERTICES));
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        self.adj.push(0);
        Ok(i)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_index(u)?;
        self.check_index(v)?;
        if u == v {
            return Err(Error::Loop(self.labels[u].clone()));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(
                self.labels[u].clone(),
                self.labels[v].clone(),
            ));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    /// Removes an edge if present; returns whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.has_edge(u, v);
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        had
    }

    fn check_index(&self, v: usize) -> Result<()> {
        if v < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Index of a label, or [`Error::UnknownVertex`].
    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in VertexSet(self.adj[u] >> u >> 1 << u << 1).iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn labels_of(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Same vertices; `uv` is an edge iff it is not an edge here.
    pub fn complement(&self) -> LabeledGraph {
        let full = VertexSet::full(self.n()).0;
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, a)| !a & full & !(1 << v))
            .collect();
        LabeledGraph::from_parts(self.labels.clone(), adj)
    }

    /// Subgraph induced on `set`, keeping the vertex order.
    pub fn induced(&self, set: VertexSet) -> LabeledGraph {
        let keep: Vec<usize> = set.iter().collect();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v] & set.0)
                    .iter()
                    .fold(0u64, |acc, w| acc | 1 << pos[w])
            })
            .collect();
        LabeledGraph::from_parts(keep.iter().map(|&v| self.labels[v].clone()).collect(), adj)
    }

    /// Graph with vertex `v` moved to position `perm[v]`; labels travel with their vertices.
    pub fn permuted(&self, perm: &[usize]) -> LabeledGraph {
        let n = self.n();
        let mut labels = vec![String::new(); n];
        let mut adj = vec![0u64; n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
            adj[perm[v]] = VertexSet(self.adj[v])
                .iter()
                .fold(0u64, |acc, w| acc | 1 << perm[w]);
        }
        LabeledGraph::from_parts(labels, adj)
    }

    /// Same structure with new labels (by index).
    pub fn relabeled<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n() {
            return Err(Error::OutOfRange(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        let mut g = LabeledGraph::new(labels)?;
        g.adj = self.adj.clone();
        Ok(g)
    }

    /// Same structure with labels `"0"`, `"1"`, ...
    pub fn with_indexed_labels(&self) -> LabeledGraph {
        LabeledGraph::from_parts((0..self.n()).map(|i| i.to_string()).collect(), self.adj.clone())
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

/// An orientation of a simple graph: exactly one arc per underlying edge.
#[derive(Clone, PartialEq, Eq)]
pub struct Orientation {
    graph: LabeledGraph,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .arcs()
            .into_iter()
            .map(|(u, v)| format!("{}>{}", self.label(u), self.label(v)))
            .collect();
        f.debug_struct("Orientation")
            .field("vertices", &self.graph.labels)
            .field("arcs", &arcs)
            .finish()
    }
}

/// Direction of a directed neighborhood.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Vertices with a directed path *into* the given vertex.
    In,
    /// Vertices reachable *from* the given vertex.
    Out,
}

impl Orientation {
    /// Arc-free orientation on the given labels.
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let graph = LabeledGraph::new(labels)?;
        let n = graph.n();
        Ok(Orientation {
            graph,
            out: vec![0; n],
            inn: vec![0; n],
        })
    }

    pub fn from_arcs<S: AsRef<str>>(labels: &[S], arcs: &[(S, S)]) -> Result<Self> {
        let mut o = Self::new(labels.iter().map(|s| s.as_ref().to_string()))?;
        for (u, v) in arcs {
            let (u, v) = (o.graph.vertex(u.as_ref())?, o.graph.vertex(v.as_ref())?);
            o.add_arc(u, v)?;
        }
        Ok(o)
    }

    pub fn from_index_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut o = Self::new((0..n).map(|i| i.to_string()))?;
        for &(u, v) in arcs {
            o.add_arc(u, v)?;
        }
        Ok(o)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let v = self.graph.add_vertex(label)?;
        self.out.push(0);
        self.inn.push(0);
        Ok(v)
    }

    /// Adds `u -> v`. Fails on loops and on pairs that are already joined either way.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.graph.add_edge(u, v)?;
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
        Ok(())
    }

    /// Orients every edge of `g` by `towards(u, v)`: true means `u -> v`.
    pub fn orient(g: &LabeledGraph, mut towards: impl FnMut(usize, usize) -> bool) -> Orientation {
        let n = g.n();
        let mut out = vec![0u64; n];
        let mut inn = vec![0u64; n];
        for (u, v) in g.edges() {
            let (a, b) = if towards(u, v) { (u, v) } else { (v, u) };
            out[a] |= 1 << b;
            inn[b] |= 1 << a;
        }
        Orientation {
            graph: g.clone(),
            out,
            inn,
        }
    }

    pub fn underlying(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn labels(&self) -> &[String] {
        self.graph.labels()
    }

    pub fn label(&self, v: usize) -> &str {
        self.graph.label(v)
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.graph.vertex(label)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.out[v])
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.inn[v])
    }

    pub fn out_masks(&self) -> &[u64] {
        &self.out
    }

    pub fn in_masks(&self) -> &[u64] {
        &self.inn
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones() as usize
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    /// Arcs `(from, to)` sorted by index.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::new();
        for u in 0..self.n() {
            for v in VertexSet(self.out[u]).iter() {
                arcs.push((u, v));
            }
        }
        arcs
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|a| a.count_ones() as usize).sum()
    }

    /// Vertices whose shortest directed path to (`In`) or from (`Out`) `v` has exactly `k` arcs.
    pub fn directed_neighborhood(&self, v: usize, k: usize, dir: Direction) -> VertexSet {
        let step = match dir {
            Direction::In => &self.inn,
            Direction::Out => &self.out,
        };
        let mut seen = 1u64 << v;
        let mut frontier = 1u64 << v;
        for _ in 0..k {
            let mut next = 0u64;
            for w in VertexSet(frontier).iter() {
                next |= step[w];
            }
            frontier = next & !seen;
            seen |= frontier;
            if frontier == 0 {
                break;
            }
        }
        VertexSet(frontier)
    }

    /// Label-based form of [`Orientation::directed_neighborhood`].
    pub fn directed_neighborhood_of(
        &self,
        v: &str,
        k: usize,
        dir: Direction,
    ) -> Result<Vec<String>> {
        let v = self.vertex(v)?;
        Ok(self.graph.labels_of(self.directed_neighborhood(v, k, dir)))
    }

    /// Same orientation with vertex `v` moved to position `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Orientation {
        let graph = self.graph.permuted(perm);
        let n = self.n();
        let mut out = vec![0u64; n];
        let mut inn = vec![0u64; n];
        for (u, v) in self.arcs() {
            out[perm[u]] |= 1 << perm[v];
            inn[perm[v]] |= 1 << perm[u];
        }
        Orientation { graph, out, inn }
    }

    /// Same arcs with new labels (by index).
    pub fn relabeled<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        Ok(Orientation {
            graph: self.graph.relabeled(labels)?,
            out: self.out.clone(),
            inn: self.inn.clone(),
        })
    }
}

/// Vertex coloring aligned with a graph's vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    /// Builds a coloring of `g` from a label map that must cover every vertex.
    pub fn from_labels(g: &LabeledGraph, map: &BTreeMap<String, usize>) -> Result<Self> {
        let mut colors = vec![usize::MAX; g.n()];
        for (label, &c) in map {
            colors[g.vertex(label)?] = c;
        }
        if let Some(v) = colors.iter().position(|&c| c == usize::MAX) {
            return Err(Error::ColoringMismatch(format!(
                "vertex `{}` has no color",
                g.label(v)
            )));
        }
        Ok(Coloring { colors })
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of colors in the palette, i.e. one more than the largest index used.
    pub fn palette_size(&self) -> usize {
        self.colors.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    /// First monochromatic edge of `g`, if any.
    pub fn conflict(&self, g: &LabeledGraph) -> Option<(usize, usize)> {
        g.edges()
            .into_iter()
            .find(|&(u, v)| self.colors[u] == self.colors[v])
    }

    pub fn is_proper(&self, g: &LabeledGraph) -> bool {
        self.colors.len() == g.n() && self.conflict(g).is_none()
    }

    pub fn to_labels(&self, g: &LabeledGraph) -> BTreeMap<String, usize> {
        self.colors
            .iter()
            .enumerate()
            .map(|(v, &c)| (g.label(v).to_string(), c))
            .collect()
    }

    pub fn class(&self, color: usize) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == color)
            .map(|(v, _)| v)
            .collect()
    }
}
