//! Minimal prime graphs: the predicate, linked vertex duplication, enumeration
//! and the structural checks every minimal graph satisfies.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analysis::{analyze, DigraphAnalysis};
use crate::error::{Error, Result};
use crate::graph::{
    color_with_at_most, find_triangle, is_connected, least_coloring, Direction, LabeledGraph, Orientation,
    VertexSet,
};
use crate::realizability::{orient_from_coloring, realizable, realizable_classes};

/// Largest vertex count accepted by [`enumerate_minimal`].
pub const MAX_ENUMERATION: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// First edge, in vertex order, whose removal leaves a realizable graph.
    pub failing_edge: Option<(String, String)>,
    pub connectivity_ok: bool,
    pub nontrivial_ok: bool,
}

impl MinimalityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": 1,
            "minimal": self.minimal,
            "failing_edge": self.failing_edge.as_ref().map(|(u, v)| [u, v]),
            "connected": self.connectivity_ok,
            "more_than_one_vertex": self.nontrivial_ok,
        })
    }
}

/// Decides minimality of a realizable graph: more than one vertex, connected, and no
/// single edge can be removed with the result still realizable.
pub fn is_minimal(g: &LabeledGraph) -> Result<MinimalityReport> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !realizable(g) {
        return Err(Error::NotRealizable);
    }
    let nontrivial_ok = g.n() > 1;
    let connectivity_ok = is_connected(g);
    let failing_edge = g.edges().into_iter().find(|&(u, v)| {
        let mut h = g.clone();
        h.remove_edge(u, v);
        realizable(&h)
    });
    Ok(MinimalityReport {
        minimal: nontrivial_ok && connectivity_ok && failing_edge.is_none(),
        failing_edge: failing_edge.map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string())),
        connectivity_ok,
        nontrivial_ok,
    })
}

fn minimal(g: &LabeledGraph) -> bool {
    is_minimal(g).is_ok_and(|r| r.minimal)
}

/// Adds a vertex `u` joined to `v` and to every neighbor of `v`.
///
/// `new_label` defaults to the label of `v` with enough `'` marks appended to be fresh.
pub fn linked_vertex_duplication(
    g: &LabeledGraph,
    v: &str,
    new_label: Option<&str>,
) -> Result<LabeledGraph> {
    let vi = g.vertex(v)?;
    let label = match new_label {
        Some(l) => l.to_string(),
        None => {
            let mut l = format!("{v}'");
            while g.index_of(&l).is_some() {
                l.push('\'');
            }
            l
        }
    };
    let mut h = g.clone();
    let u = h.add_vertex(label)?;
    h.add_edge(u, vi)?;
    for w in g.neighbors(vi).iter() {
        h.add_edge(u, w)?;
    }
    Ok(h)
}

/// All minimal prime graphs on exactly `n` vertices (`1 <= n <= 9`) up to isomorphism,
/// as canonical representatives sorted by canonical form.
pub fn enumerate_minimal(n: usize) -> Result<Vec<LabeledGraph>> {
    if !(1..=MAX_ENUMERATION).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "minimal graphs are enumerated for 1 <= n <= {MAX_ENUMERATION}, got {n}"
        )));
    }
    let classes = realizable_classes(n)?.pop().unwrap_or_default();
    Ok(classes.into_par_iter().filter(minimal).collect())
}

/// Some 5-vertex set inducing a 5-cycle, first in lexicographic order.
pub fn contains_induced_c5(g: &LabeledGraph) -> Option<Vec<String>> {
    let n = g.n();
    let mut pick = [0usize; 5];
    fn go(g: &LabeledGraph, start: usize, depth: usize, pick: &mut [usize; 5]) -> bool {
        if depth == 5 {
            let set: VertexSet = pick.iter().copied().collect();
            let h = g.induced(set);
            return h.edge_count() == 5 && (0..5).all(|v| h.degree(v) == 2) && is_connected(&h);
        }
        for v in start..g.n() {
            pick[depth] = v;
            if go(g, v + 1, depth + 1, pick) {
                return true;
            }
        }
        false
    }
    if n >= 5 && go(g, 0, 0, &mut pick) {
        Some(pick.iter().map(|&v| g.label(v).to_string()).collect())
    } else {
        None
    }
}

/// Orientation of the complement of `g` from the lexicographically least proper
/// 3-coloring; color 0 vertices become sources.
pub fn canonical_orientation(g: &LabeledGraph) -> Result<Orientation> {
    let f = g.complement();
    if find_triangle(&f).is_some() {
        return Err(Error::NotRealizable);
    }
    let c = least_coloring(&f, 3).ok_or(Error::NotRealizable)?;
    orient_from_coloring(&f, &c)
}

/// Outcome of the structural checks on a minimal graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub complement_not_2_colorable: bool,
    pub complement_no_isolated: bool,
    pub induced_c5: Option<Vec<String>>,
    pub odi_nonempty: bool,
    pub pi_subset_i: bool,
    /// Every sink sees every source within two steps.
    pub sources_within_two: bool,
    /// Every sink outside `pi` sees every source in one step.
    pub phi_sources_adjacent: bool,
    /// Every source in `o2` has an arc to every middle vertex.
    pub o2_covers_middle: bool,
    pub analysis: DigraphAnalysis,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.complement_not_2_colorable
            && self.complement_no_isolated
            && self.induced_c5.is_some()
            && self.odi_nonempty
            && self.pi_subset_i
            && self.sources_within_two
            && self.phi_sources_adjacent
            && self.o2_covers_middle
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": 1,
            "all_pass": self.all_pass(),
            "complement_not_2_colorable": self.complement_not_2_colorable,
            "complement_no_isolated": self.complement_no_isolated,
            "induced_c5": self.induced_c5,
            "odi_nonempty": self.odi_nonempty,
            "pi_subset_i": self.pi_subset_i,
            "sinks_see_sources_within_two": self.sources_within_two,
            "phi_sees_sources_directly": self.phi_sources_adjacent,
            "o2_dominates_middle": self.o2_covers_middle,
            "analysis": self.analysis.to_json(),
        })
    }
}

/// Sink/source checks on an analyzed orientation.
pub fn sink_source_checks(o: &Orientation, a: &DigraphAnalysis) -> (bool, bool, bool) {
    let sources_within_two = a.i.iter().all(|p| {
        let near = o
            .directed_neighborhood(p, 1, Direction::In)
            .union(o.directed_neighborhood(p, 2, Direction::In));
        a.o.is_subset(near)
    });
    let phi_sources_adjacent = a
        .phi
        .iter()
        .all(|p| a.o.is_subset(o.directed_neighborhood(p, 1, Direction::In)));
    let o2_covers_middle = a
        .o2
        .iter()
        .all(|s| a.d.is_subset(o.directed_neighborhood(s, 1, Direction::Out)));
    (sources_within_two, phi_sources_adjacent, o2_covers_middle)
}

/// Runs the structural checks on a minimal graph, using [`canonical_orientation`].
pub fn check_minimal_lemmas(g: &LabeledGraph) -> Result<LemmaReport> {
    if !is_minimal(g)?.minimal {
        return Err(Error::NotMinimal);
    }
    let f = g.complement();
    let o = canonical_orientation(g)?;
    let a = analyze(&o)?;
    let (sources_within_two, phi_sources_adjacent, o2_covers_middle) = sink_source_checks(&o, &a);
    Ok(LemmaReport {
        complement_not_2_colorable: color_with_at_most(&f, 2).coloring.is_none(),
        complement_no_isolated: (0..f.n()).all(|v| f.degree(v) > 0),
        induced_c5: contains_induced_c5(g),
        odi_nonempty: !a.o.is_empty() && !a.d.is_empty() && !a.i.is_empty(),
        pi_subset_i: a.pi.is_subset(a.i),
        sources_within_two,
        phi_sources_adjacent,
        o2_covers_middle,
        analysis: a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;
    use crate::named;

    #[test]
    fn pentagon_is_minimal() {
        let r = is_minimal(&named::cycle(5)).unwrap();
        assert!(r.minimal);
        assert_eq!(r.failing_edge, None);
    }

    #[test]
    fn an_edge_is_not_minimal() {
        let r = is_minimal(&named::complete(2)).unwrap();
        assert!(!r.minimal);
        assert_eq!(r.failing_edge, Some(("0".into(), "1".into())));
        assert!(r.connectivity_ok && r.nontrivial_ok);
    }

    #[test]
    fn six_prime_graph_is_minimal() {
        let g = named::six_prime_graph();
        let mut edges: Vec<(String, String)> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect();
        edges.sort();
        let mut expected: Vec<(String, String)> = [
            ("2", "3"), ("2", "5"), ("2", "11"), ("3", "5"),
            ("3", "11"), ("5", "23"), ("11", "31"), ("23", "31"),
        ]
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect();
        expected.sort();
        assert_eq!(edges, expected);
        assert!(is_minimal(&g).unwrap().minimal);
    }

    #[test]
    fn non_realizable_input_is_an_error() {
        assert_eq!(is_minimal(&named::cycle(6)), Err(Error::NotRealizable));
        assert_eq!(is_minimal(&named::empty(0)), Err(Error::EmptyGraph));
    }

    #[test]
    fn duplication() {
        let c5 = crate::graph::tests::c5();
        let h = linked_vertex_duplication(&c5, "a", Some("f")).unwrap();
        assert_eq!(h.n(), 6);
        assert_eq!(h.edge_count(), c5.edge_count() + 3);
        let f = h.vertex("f").unwrap();
        assert_eq!(h.labels_of(h.neighbors(f)), ["a", "b", "e"]);
        let h2 = linked_vertex_duplication(&h, "f", None).unwrap();
        assert_eq!(h2.n(), 7);
        assert!(h2.index_of("f'").is_some());
        let again = linked_vertex_duplication(&h2, "f", None).unwrap();
        assert!(again.index_of("f''").is_some());

        let k2 = LabeledGraph::from_edges(&["u", "v"], &[("u", "v")]).unwrap();
        let t = linked_vertex_duplication(&k2, "v", Some("w")).unwrap();
        assert_eq!(canonical_form(&t), canonical_form(&named::complete(3)));

        assert!(matches!(
            linked_vertex_duplication(&k2, "q", None),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(
            linked_vertex_duplication(&k2, "v", Some("u")),
            Err(Error::LabelCollision(_))
        ));
    }

    #[test]
    fn small_enumerations() {
        for n in 1..=4 {
            assert!(enumerate_minimal(n).unwrap().is_empty(), "n = {n}");
        }
        let five = enumerate_minimal(5).unwrap();
        assert_eq!(five.len(), 1);
        assert_eq!(canonical_form(&five[0]), canonical_form(&named::cycle(5)));
        let six = enumerate_minimal(6).unwrap();
        let dup = linked_vertex_duplication(&named::cycle(5), "0", None).unwrap();
        assert!(six.iter().any(|g| canonical_form(g) == canonical_form(&dup)));
        assert!(enumerate_minimal(0).is_err());
        assert!(enumerate_minimal(10).is_err());
    }

    #[test]
    fn induced_pentagons() {
        let c5 = crate::graph::tests::c5();
        assert_eq!(contains_induced_c5(&c5).unwrap(), ["a", "b", "c", "d", "e"]);
        assert_eq!(contains_induced_c5(&named::complete(4)), None);
        let mut g = named::grotzsch();
        g.remove_edge(0, 1);
        assert!(contains_induced_c5(&g).is_some());
    }

    #[test]
    fn lemma_reports() {
        assert!(check_minimal_lemmas(&named::cycle(5)).unwrap().all_pass());
        assert!(check_minimal_lemmas(&named::six_prime_graph()).unwrap().all_pass());
        assert_eq!(check_minimal_lemmas(&named::cycle(4)), Err(Error::NotMinimal));
    }

    #[test]
    fn canonical_orientation_of_the_pentagon() {
        let o = canonical_orientation(&named::cycle(5)).unwrap();
        let a = analyze(&o).unwrap();
        assert_eq!((a.o.len(), a.d.len(), a.i.len()), (2, 1, 2));
    }

    #[test]
    fn complement_triangle_has_no_canonical_orientation() {
        let g = LabeledGraph::indexed(3).unwrap();
        assert_eq!(canonical_orientation(&g), Err(Error::NotRealizable));
    }
}
