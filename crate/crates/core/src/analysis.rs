//! Structure of a Frobenius digraph: the source/middle/sink partition and the
//! derived sets used to study minimal prime graphs.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{self, Direction, LabeledGraph, Orientation, VertexSet};
use crate::realizability::require_valid;

/// Vertex sets of a validated orientation, all as index sets over its vertex order.
///
/// `o` holds sources, `d` vertices with both in- and out-arcs, `i` sinks and isolated
/// vertices. `pi` are the sinks at the end of some 2-path, `phi` the other sinks.
/// For a sink `p`, `o1_of[p]` is the set of sources with an arc into `p`.
/// Over `pi`, `o1` and `o2_star` are unions of `o1_of[p]` and of the 2-in-neighborhoods,
/// `o1_star` and `o2` the matching intersections; an intersection over an empty `pi` is `o`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphAnalysis {
    pub labels: Vec<String>,
    pub o: VertexSet,
    pub d: VertexSet,
    pub i: VertexSet,
    pub pi: VertexSet,
    pub phi: VertexSet,
    pub o1_of: BTreeMap<usize, VertexSet>,
    pub o1: VertexSet,
    pub o1_star: VertexSet,
    pub o2: VertexSet,
    pub o2_star: VertexSet,
}

impl DigraphAnalysis {
    pub fn names(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.labels[v].clone()).collect()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn to_json(&self) -> Value {
        let o1_of: BTreeMap<&str, Vec<String>> = self
            .o1_of
            .iter()
            .map(|(&p, &s)| (self.labels[p].as_str(), self.names(s)))
            .collect();
        json!({
            "schema_version": 1,
            "vertices": self.labels,
            "O": self.names(self.o),
            "D": self.names(self.d),
            "I": self.names(self.i),
            "Pi": self.names(self.pi),
            "Phi": self.names(self.phi),
            "O1_of": o1_of,
            "O1": self.names(self.o1),
            "O1_star": self.names(self.o1_star),
            "O2": self.names(self.o2),
            "O2_star": self.names(self.o2_star),
        })
    }
}

/// Computes the partition and derived sets of a valid Frobenius orientation.
pub fn analyze(o: &Orientation) -> Result<DigraphAnalysis> {
    require_valid(o)?;
    let n = o.n();
    let mut src = VertexSet::EMPTY;
    let mut mid = VertexSet::EMPTY;
    let mut sink = VertexSet::EMPTY;
    for v in 0..n {
        match (o.in_degree(v) > 0, o.out_degree(v) > 0) {
            (false, true) => src.insert(v),
            (true, true) => mid.insert(v),
            _ => sink.insert(v),
        }
    }
    let n2 = |p| o.directed_neighborhood(p, 2, Direction::In);
    let pi: VertexSet = sink.iter().filter(|&p| !n2(p).is_empty()).collect();
    let o1_of: BTreeMap<usize, VertexSet> = sink
        .iter()
        .map(|p| (p, o.in_neighbors(p).intersection(src)))
        .collect();
    let mut o1 = VertexSet::EMPTY;
    let mut o1_star = src;
    let mut o2 = src;
    let mut o2_star = VertexSet::EMPTY;
    for p in pi.iter() {
        o1 = o1.union(o1_of[&p]);
        o1_star = o1_star.intersection(o1_of[&p]);
        o2 = o2.intersection(n2(p));
        o2_star = o2_star.union(n2(p));
    }
    Ok(DigraphAnalysis {
        labels: o.labels().to_vec(),
        o: src,
        d: mid,
        i: sink,
        pi,
        phi: sink.difference(pi),
        o1_of,
        o1,
        o1_star,
        o2,
        o2_star,
    })
}

/// Reported Fitting-length interval for groups with a given minimal prime graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingBounds {
    pub low: u32,
    pub high: u32,
    /// Known exact value, when the graph pins it down.
    pub exact: Option<u32>,
    pub note: String,
}

impl FittingBounds {
    pub fn to_json(&self) -> Value {
        json!({"low": self.low, "high": self.high, "exact": self.exact, "note": self.note})
    }
}

/// Fitting-length bounds for solvable groups whose prime graph is the minimal graph `g`.
///
/// This is a lookup of known results, not a computation on any group.
pub fn fitting_bounds(g: &LabeledGraph) -> Result<FittingBounds> {
    if !crate::minimality::is_minimal(g)?.minimal {
        return Err(Error::NotMinimal);
    }
    let pentagon = graph::canonical_form(&crate::named::cycle(5))?;
    let is_pentagon =
        g.n() == 5 && graph::canonical_form(g)? == pentagon;
    let mut note = String::from(
        "Fitting length is 3 or 4 for every solvable group with a minimal prime graph; \
         length 4 forces a normal section isomorphic to the binary octahedral group 2O.",
    );
    if is_pentagon {
        note.push_str(" For the 5-cycle the Fitting length is exactly 3.");
    }
    Ok(FittingBounds {
        low: 3,
        high: 4,
        exact: is_pentagon.then_some(3),
        note,
    })
}

/// Graph-level check that `n <= 3 * max(|O|, |D|, |I|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionBound {
    pub n_vertices: usize,
    pub bound: usize,
    pub holds: bool,
}

pub fn sigma_partition_bound(a: &DigraphAnalysis) -> PartitionBound {
    let bound = 3 * a.o.len().max(a.d.len()).max(a.i.len());
    PartitionBound {
        n_vertices: a.n(),
        bound,
        holds: a.n() <= bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn set(a: &DigraphAnalysis, s: VertexSet) -> Vec<String> {
        a.names(s)
    }

    #[test]
    fn pentagon_digraph() {
        let a = analyze(&named::pentagon_digraph()).unwrap();
        assert_eq!(set(&a, a.o), ["p1", "p2"]);
        assert_eq!(set(&a, a.d), ["p3"]);
        assert_eq!(set(&a, a.i), ["p4", "p5"]);
        assert_eq!(set(&a, a.pi), ["p4"]);
        assert_eq!(set(&a, a.phi), ["p5"]);
        // p4 is reached by p2 directly and by p1 through p3.
        assert_eq!(set(&a, a.o1), ["p2"]);
        assert_eq!(set(&a, a.o2), ["p1"]);
        assert_eq!(set(&a, a.o1_star), ["p2"]);
        assert_eq!(set(&a, a.o2_star), ["p1"]);
        assert_eq!(
            sigma_partition_bound(&a),
            PartitionBound { n_vertices: 5, bound: 6, holds: true }
        );
    }

    #[test]
    fn six_prime_digraph() {
        let a = analyze(&named::six_prime_digraph()).unwrap();
        assert_eq!(set(&a, a.o), ["2", "3", "5"]);
        assert_eq!(set(&a, a.d), ["11"]);
        assert_eq!(set(&a, a.i), ["23", "31"]);
        assert_eq!(set(&a, a.pi), ["23"]);
        assert_eq!(set(&a, a.phi), ["31"]);
        assert_eq!(
            sigma_partition_bound(&a),
            PartitionBound { n_vertices: 6, bound: 9, holds: true }
        );
        let doc = a.to_json();
        assert_eq!(doc["Pi"], json!(["23"]));
        assert_eq!(doc["O1_of"]["31"], json!(["2", "3", "5"]));
    }

    #[test]
    fn single_arc_and_isolated_vertices() {
        let o = Orientation::from_arcs(&["a", "b", "z"], &[("a", "b")]).unwrap();
        let a = analyze(&o).unwrap();
        assert_eq!(set(&a, a.o), ["a"]);
        assert!(a.d.is_empty());
        assert_eq!(set(&a, a.i), ["b", "z"]);
        assert!(a.pi.is_empty());
        assert_eq!(set(&a, a.phi), ["b", "z"]);
        assert_eq!(a.o2, a.o);
        assert!(a.o1.is_empty());
    }

    #[test]
    fn partition_bound_arithmetic() {
        let o = Orientation::from_arcs(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let a = analyze(&o).unwrap();
        assert_eq!(
            sigma_partition_bound(&a),
            PartitionBound { n_vertices: 3, bound: 3, holds: true }
        );
    }

    #[test]
    fn invalid_orientation_is_rejected() {
        let chain =
            Orientation::from_arcs(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])
                .unwrap();
        assert!(matches!(analyze(&chain), Err(Error::InvalidOrientation(_))));
    }

    #[test]
    fn fitting_bound_lookup() {
        let c5 = fitting_bounds(&named::cycle(5)).unwrap();
        assert_eq!((c5.low, c5.high, c5.exact), (3, 4, Some(3)));
        let six = fitting_bounds(&named::six_prime_graph()).unwrap();
        assert_eq!((six.low, six.high, six.exact), (3, 4, None));
        assert_eq!(fitting_bounds(&named::complete(2)), Err(Error::NotMinimal));
    }
}
