//! Realizability of a graph as the prime graph of a solvable group, Frobenius
//! orientations of the complement, and the girth classification.

use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{
    self, color_with_at_most, find_triangle, generate, independence_number, Coloring, Girth,
    LabeledGraph, Orientation, VertexSet,
};

/// Why a graph is not realizable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Three pairwise non-adjacent vertices (a triangle of the complement).
    Triangle([String; 3]),
    /// The complement is triangle-free but no 3-coloring exists; `search_nodes` is the
    /// size of the exhausted search tree.
    NotThreeColorable { search_nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityVerdict {
    pub realizable: bool,
    /// Proper coloring of the complement with at most 3 colors, in vertex order.
    pub certificate: Option<Coloring>,
    pub violation: Option<Violation>,
    pub search_nodes: u64,
}

impl RealizabilityVerdict {
    /// JSON document; `g` supplies the labels for the certificate.
    pub fn to_json(&self, g: &LabeledGraph) -> Value {
        let mut doc = serde_json::Map::new();
        doc.insert("schema_version".into(), json!(1));
        doc.insert("realizable".into(), json!(self.realizable));
        if let Some(c) = &self.certificate {
            doc.insert("coloring".into(), json!(c.to_labels(g)));
        }
        match &self.violation {
            Some(Violation::Triangle(t)) => {
                doc.insert(
                    "violation".into(),
                    json!({"kind": "complement_triangle", "vertices": t}),
                );
            }
            Some(Violation::NotThreeColorable { search_nodes }) => {
                doc.insert(
                    "violation".into(),
                    json!({"kind": "complement_not_3_colorable", "search_nodes": search_nodes}),
                );
            }
            None => {}
        }
        doc.insert("search_nodes".into(), json!(self.search_nodes));
        Value::Object(doc)
    }
}

/// Fast yes/no form of [`is_solvable_prime_graph`] for internal loops.
pub(crate) fn realizable(g: &LabeledGraph) -> bool {
    let c = g.complement();
    find_triangle(&c).is_none() && color_with_at_most(&c, 3).coloring.is_some()
}

/// Decides whether `g` is the prime graph of some solvable group: its complement must be
/// triangle-free and 3-colorable.
pub fn is_solvable_prime_graph(g: &LabeledGraph) -> Result<RealizabilityVerdict> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let c = g.complement();
    if let Some((a, b, d)) = find_triangle(&c) {
        let labels = [a, b, d].map(|v| g.label(v).to_string());
        return Ok(RealizabilityVerdict {
            realizable: false,
            certificate: None,
            violation: Some(Violation::Triangle(labels)),
            search_nodes: 0,
        });
    }
    let search = color_with_at_most(&c, 3);
    Ok(match search.coloring {
        Some(col) => RealizabilityVerdict {
            realizable: true,
            certificate: Some(col),
            violation: None,
            search_nodes: search.nodes,
        },
        None => RealizabilityVerdict {
            realizable: false,
            certificate: None,
            violation: Some(Violation::NotThreeColorable {
                search_nodes: search.nodes,
            }),
            search_nodes: search.nodes,
        },
    })
}

/// Orients every edge of `f` from the lower color to the higher one.
pub fn orient_from_coloring(f: &LabeledGraph, c: &Coloring) -> Result<Orientation> {
    if c.len() != f.n() {
        return Err(Error::ColoringMismatch(format!(
            "{} colors for {} vertices",
            c.len(),
            f.n()
        )));
    }
    if c.palette_size() > 3 {
        return Err(Error::TooManyColors(c.palette_size()));
    }
    if let Some((u, v)) = c.conflict(f) {
        return Err(Error::ImproperColoring(
            f.label(u).to_string(),
            f.label(v).to_string(),
        ));
    }
    Ok(Orientation::orient(f, |u, v| c.color(u) < c.color(v)))
}

/// A reason an orientation is not a Frobenius digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientationViolation {
    /// Directed cycle, listed from its smallest vertex.
    DirectedCycle(Vec<String>),
    /// Directed path with three arcs.
    DirectedPath3([String; 4]),
    /// Triangle in the underlying graph.
    Triangle([String; 3]),
}

impl std::fmt::Display for OrientationViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrientationViolation::DirectedCycle(c) => {
                write!(f, "directed cycle {} > {}", c.join(" > "), c[0])
            }
            OrientationViolation::DirectedPath3(p) => write!(f, "directed 3-path {}", p.join(" > ")),
            OrientationViolation::Triangle(t) => write!(f, "triangle {}", t.join(" ")),
        }
    }
}

impl OrientationViolation {
    pub fn to_json(&self) -> Value {
        match self {
            OrientationViolation::DirectedCycle(c) => json!({"kind": "directed_cycle", "vertices": c}),
            OrientationViolation::DirectedPath3(p) => {
                json!({"kind": "directed_3_path", "vertices": p})
            }
            OrientationViolation::Triangle(t) => json!({"kind": "triangle", "vertices": t}),
        }
    }
}

/// Lexicographically least directed cycle (as an index sequence starting at its minimum).
fn least_cycle(o: &Orientation) -> Option<Vec<usize>> {
    let n = o.n();
    for s in 0..n {
        // Vertices >= s that can reach s inside the subgraph on {s, s+1, ...}.
        let allowed = VertexSet::full(n).difference(VertexSet::full(s));
        let mut reach = VertexSet::singleton(s);
        let mut frontier = reach;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for w in frontier.iter() {
                next = next.union(o.in_neighbors(w));
            }
            frontier = next.intersection(allowed).difference(reach);
            reach = reach.union(frontier);
        }
        if o.out_neighbors(s).intersection(reach).is_empty() {
            continue;
        }
        let mut path = vec![s];
        if dfs_cycle(o, s, reach, &mut path) {
            return Some(path);
        }
    }
    None
}

fn dfs_cycle(o: &Orientation, s: usize, reach: VertexSet, path: &mut Vec<usize>) -> bool {
    let last = *path.last().expect("nonempty path");
    for w in o.out_neighbors(last).intersection(reach).iter() {
        if w == s {
            return true;
        }
        if path.contains(&w) {
            continue;
        }
        path.push(w);
        if dfs_cycle(o, s, reach, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Lexicographically least directed path `a > b > c > d` on four distinct vertices.
fn least_path3(o: &Orientation) -> Option<[usize; 4]> {
    for a in 0..o.n() {
        for b in o.out_neighbors(a).iter() {
            for c in o.out_neighbors(b).iter().filter(|&c| c != a) {
                if let Some(d) = o.out_neighbors(c).iter().find(|&d| d != a && d != b) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// Checks acyclicity, absence of directed 3-paths and triangle-freeness of the underlying
/// graph. Each failed condition contributes its lexicographically least witness.
pub fn validate_frobenius_orientation(o: &Orientation) -> Vec<OrientationViolation> {
    let label = |v: usize| o.label(v).to_string();
    let mut out = Vec::new();
    if let Some(c) = least_cycle(o) {
        out.push(OrientationViolation::DirectedCycle(c.into_iter().map(label).collect()));
    }
    if let Some(p) = least_path3(o) {
        out.push(OrientationViolation::DirectedPath3(p.map(label)));
    }
    if let Some((a, b, c)) = find_triangle(o.underlying()) {
        out.push(OrientationViolation::Triangle([a, b, c].map(label)));
    }
    out
}

/// Error for callers that need a valid orientation.
pub(crate) fn require_valid(o: &Orientation) -> Result<()> {
    let v = validate_frobenius_orientation(o);
    if v.is_empty() {
        Ok(())
    } else {
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        Err(Error::InvalidOrientation(text.join("; ")))
    }
}

/// The girth exceptions among realizable graphs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExceptionKind {
    C4,
    C5,
    /// One of the seven exceptional forests, numbered 1 to 7 in the order of
    /// [`exceptional_forests`], with a descriptive name.
    Forest { index: usize, name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GirthClass {
    Girth3,
    Exceptional(ExceptionKind),
    /// Realizable with girth other than 3 but matching no known exception.
    Anomalous(Girth),
    NotRealizable,
}

impl std::fmt::Display for GirthClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GirthClass::Girth3 => f.write_str("girth3"),
            GirthClass::Exceptional(ExceptionKind::C4) => f.write_str("exceptional C4"),
            GirthClass::Exceptional(ExceptionKind::C5) => f.write_str("exceptional C5"),
            GirthClass::Exceptional(ExceptionKind::Forest { index, name }) => {
                write!(f, "exceptional forest-{index} {name}")
            }
            GirthClass::Anomalous(g) => write!(f, "anomalous girth {g}"),
            GirthClass::NotRealizable => f.write_str("not_realizable"),
        }
    }
}

fn is_forest(g: &LabeledGraph) -> bool {
    graph::girth(g) == Girth::Infinite
}

/// Name of a forest whose components are paths, e.g. `K2+K1` or `2K2`.
fn path_forest_name(g: &LabeledGraph) -> String {
    let mut seen = VertexSet::EMPTY;
    let mut sizes = Vec::new();
    for v in 0..g.n() {
        if seen.contains(v) {
            continue;
        }
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(VertexSet::EMPTY, |acc, w| acc.union(g.neighbors(w)));
            frontier = next.difference(comp);
            comp = comp.union(frontier);
        }
        seen = seen.union(comp);
        sizes.push(comp.len());
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sizes.len() {
        let k = sizes[i];
        let count = sizes[i..].iter().take_while(|&&s| s == k).count();
        let base = match k {
            1 => "K1".to_string(),
            2 => "K2".to_string(),
            k => format!("P{k}"),
        };
        parts.push(if count > 1 { format!("{count}{base}") } else { base });
        i += count;
    }
    parts.join("+")
}

/// The forests with no independent set of size 3, up to isomorphism, found by exhaustive
/// generation. Ordered by vertex count, then edge count.
pub fn exceptional_forests() -> Vec<LabeledGraph> {
    static FORESTS: OnceLock<Vec<LabeledGraph>> = OnceLock::new();
    FORESTS
        .get_or_init(|| {
            // The class is closed under induced subgraphs; five vertices already yield nothing.
            let levels = generate::hereditary_classes(5, 5, |g| {
                is_forest(g) && independence_number(g) < 3
            })
            .expect("within limit");
            let mut all: Vec<LabeledGraph> =
                levels.into_iter().flatten().filter(|g| !g.is_empty()).collect();
            all.sort_by_key(|g| (g.n(), g.edge_count()));
            all
        })
        .clone()
}

/// Names of [`exceptional_forests`], e.g. `["K1", "2K1", ...]`.
pub fn exceptional_forest_names() -> Vec<String> {
    exceptional_forests().iter().map(path_forest_name).collect()
}

/// Classifies a realizable graph by girth: girth 3, or one of the exceptions.
pub fn classify_girth(g: &LabeledGraph) -> Result<GirthClass> {
    if !is_solvable_prime_graph(g)?.realizable {
        return Ok(GirthClass::NotRealizable);
    }
    let gi = graph::girth(g);
    if gi == Girth::Finite(3) {
        return Ok(GirthClass::Girth3);
    }
    let form = graph::canonical_form_with_limit(g, g.n().max(graph::DEFAULT_CANON_LIMIT))?;
    let named = [
        (crate::named::cycle(4), ExceptionKind::C4),
        (crate::named::cycle(5), ExceptionKind::C5),
    ];
    for (h, kind) in named {
        if graph::canonical_form(&h)? == form {
            return Ok(GirthClass::Exceptional(kind));
        }
    }
    for (i, f) in exceptional_forests().iter().enumerate() {
        if graph::canonical_form(f)? == form {
            return Ok(GirthClass::Exceptional(ExceptionKind::Forest {
                index: i + 1,
                name: path_forest_name(f),
            }));
        }
    }
    Ok(GirthClass::Anomalous(gi))
}

/// Representatives of all realizable graphs on `0..=max_n` vertices (`max_n <= 9`), grouped
/// by vertex count. Computed once and cached.
pub fn realizable_classes(max_n: usize) -> Result<Vec<Vec<LabeledGraph>>> {
    const CACHED: usize = 9;
    static LEVELS: OnceLock<Vec<Vec<LabeledGraph>>> = OnceLock::new();
    if max_n > CACHED {
        return Err(Error::OutOfRange(format!(
            "realizable graphs are enumerated up to {CACHED} vertices"
        )));
    }
    let levels = LEVELS.get_or_init(|| {
        generate::hereditary_classes(CACHED, graph::DEFAULT_CANON_LIMIT, realizable)
            .expect("within limit")
    });
    Ok(levels[..=max_n].to_vec())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::named;

    fn c5() -> LabeledGraph {
        crate::graph::tests::c5()
    }

    #[test]
    fn pentagon_is_realizable() {
        let g = c5();
        let v = is_solvable_prime_graph(&g).unwrap();
        assert!(v.realizable);
        assert!(v.certificate.unwrap().is_proper(&g.complement()));
    }

    #[test]
    fn three_isolated_vertices_give_a_complement_triangle() {
        let g = LabeledGraph::new(["a", "b", "c"]).unwrap();
        let v = is_solvable_prime_graph(&g).unwrap();
        assert!(!v.realizable);
        assert_eq!(
            v.violation,
            Some(Violation::Triangle(["a".into(), "b".into(), "c".into()]))
        );
    }

    #[test]
    fn six_cycle_is_not_realizable() {
        let v = is_solvable_prime_graph(&named::cycle(6)).unwrap();
        assert!(matches!(v.violation, Some(Violation::Triangle(_))));
    }

    #[test]
    fn grotzsch_complement_fails_on_coloring() {
        let g = named::grotzsch().complement();
        let v = is_solvable_prime_graph(&g).unwrap();
        assert!(matches!(v.violation, Some(Violation::NotThreeColorable { search_nodes }) if search_nodes > 0));
        let doc = v.to_json(&g);
        assert_eq!(doc["violation"]["kind"], "complement_not_3_colorable");
    }

    #[test]
    fn single_vertex_and_empty_input() {
        assert!(is_solvable_prime_graph(&named::empty(1)).unwrap().realizable);
        assert_eq!(is_solvable_prime_graph(&named::empty(0)), Err(Error::EmptyGraph));
    }

    #[test]
    fn orientation_from_colorings() {
        let f = LabeledGraph::from_edges(&["u", "v"], &[("u", "v")]).unwrap();
        let o = orient_from_coloring(&f, &Coloring::new(vec![0, 1])).unwrap();
        assert_eq!(o.arcs(), vec![(0, 1)]);

        let k3 = named::complete(3);
        let o = orient_from_coloring(&k3, &Coloring::new(vec![2, 0, 1])).unwrap();
        assert!(o.has_arc(1, 2) && o.has_arc(1, 0) && o.has_arc(2, 0));
        // A transitive triangle has no cycle and no 3-path; only the triangle is reported.
        let v = validate_frobenius_orientation(&o);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], OrientationViolation::Triangle(_)));

        let fc = c5().complement();
        let good: BTreeMap<String, usize> =
            [("a", 0), ("b", 1), ("c", 1), ("d", 2), ("e", 2)].map(|(k, c)| (k.to_string(), c)).into();
        let o = orient_from_coloring(&fc, &Coloring::from_labels(&fc, &good).unwrap()).unwrap();
        assert!(validate_frobenius_orientation(&o).is_empty());
        for (u, v) in o.arcs() {
            assert!(good[o.label(u)] < good[o.label(v)]);
        }
    }

    #[test]
    fn rejects_bad_colorings() {
        let fc = c5().complement();
        // c-e and b-d are complement edges, so this assignment is not proper.
        let bad: BTreeMap<String, usize> =
            [("a", 0), ("c", 1), ("e", 1), ("b", 2), ("d", 2)].map(|(k, c)| (k.to_string(), c)).into();
        let col = Coloring::from_labels(&fc, &bad).unwrap();
        assert!(matches!(orient_from_coloring(&fc, &col), Err(Error::ImproperColoring(..))));
        let four = Coloring::new(vec![0, 1, 2, 3, 0]);
        assert_eq!(orient_from_coloring(&fc, &four), Err(Error::TooManyColors(4)));
        assert!(matches!(
            orient_from_coloring(&fc, &Coloring::new(vec![0])),
            Err(Error::ColoringMismatch(_))
        ));
    }

    #[test]
    fn validator_examples() {
        assert!(validate_frobenius_orientation(&named::pentagon_digraph()).is_empty());
        assert!(validate_frobenius_orientation(&named::six_prime_digraph()).is_empty());

        let chain =
            Orientation::from_arcs(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])
                .unwrap();
        assert_eq!(
            validate_frobenius_orientation(&chain),
            vec![OrientationViolation::DirectedPath3(["a", "b", "c", "d"].map(String::from))]
        );

        let cyc = Orientation::from_arcs(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
            .unwrap();
        let v = validate_frobenius_orientation(&cyc);
        assert_eq!(v[0], OrientationViolation::DirectedCycle(["a", "b", "c"].map(String::from).to_vec()));
        assert!(matches!(v[1], OrientationViolation::Triangle(_)));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn least_cycle_prefers_small_vertices() {
        // Two 4-cycles: 0>1>2>3>0 and 0>4>5>6>0; the least is through 1.
        let o = Orientation::from_index_arcs(
            7,
            &[(0, 4), (4, 5), (5, 6), (6, 0), (0, 1), (1, 2), (2, 3), (3, 0)],
        )
        .unwrap();
        assert_eq!(least_cycle(&o), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn girth_classes() {
        assert_eq!(
            classify_girth(&named::cycle(4)).unwrap(),
            GirthClass::Exceptional(ExceptionKind::C4)
        );
        assert_eq!(
            classify_girth(&named::cycle(5)).unwrap(),
            GirthClass::Exceptional(ExceptionKind::C5)
        );
        assert!(matches!(
            classify_girth(&named::path(4)).unwrap(),
            GirthClass::Exceptional(ExceptionKind::Forest { ref name, .. }) if name == "P4"
        ));
        let mut chord = named::cycle(5);
        chord.add_edge(0, 2).unwrap();
        assert_eq!(classify_girth(&chord).unwrap(), GirthClass::Girth3);
        assert_eq!(classify_girth(&named::cycle(6)).unwrap(), GirthClass::NotRealizable);
    }

    #[test]
    fn seven_forests() {
        let forests = exceptional_forests();
        assert_eq!(forests.len(), 7);
        assert!(forests.iter().all(|f| independence_number(f) <= 2 && is_forest(f)));
        assert_eq!(
            exceptional_forest_names(),
            vec!["K1", "2K1", "K2", "K2+K1", "P3", "2K2", "P4"]
        );
    }
}
