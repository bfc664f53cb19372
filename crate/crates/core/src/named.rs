//! Small named graphs and digraphs used throughout the crate and its tests.

use crate::graph::{LabeledGraph, Orientation};

/// Cycle `0-1-...-(n-1)-0` (for `n >= 3`).
pub fn cycle(n: usize) -> LabeledGraph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    LabeledGraph::from_index_edges(n, &edges).expect("cycle")
}

/// Path `0-1-...-(n-1)`.
pub fn path(n: usize) -> LabeledGraph {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    LabeledGraph::from_index_edges(n, &edges).expect("path")
}

pub fn complete(n: usize) -> LabeledGraph {
    LabeledGraph::indexed(n).expect("size").complement()
}

pub fn empty(n: usize) -> LabeledGraph {
    LabeledGraph::indexed(n).expect("size")
}

/// The Grötzsch graph (Mycielskian of the 5-cycle): outer cycle `0..5`,
/// shadow vertices `5..10` (vertex `5+i` sees the cycle neighbours of `i`), hub `10`.
pub fn grotzsch() -> LabeledGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, (i + 1) % 5));
        edges.push((5 + i, (i + 4) % 5));
        edges.push((10, 5 + i));
    }
    LabeledGraph::from_index_edges(11, &edges).expect("grotzsch")
}

/// The unique (up to isomorphism) Frobenius orientation of the pentagon complement,
/// with sources `p1, p2`, middle vertex `p3` and sinks `p4, p5`.
pub fn pentagon_digraph() -> Orientation {
    Orientation::from_arcs(
        &["p1", "p2", "p3", "p4", "p5"],
        &[("p1", "p3"), ("p3", "p4"), ("p1", "p5"), ("p2", "p4"), ("p2", "p5")],
    )
    .expect("pentagon digraph")
}

/// A six-prime digraph obtained from the pentagon by duplicating a sink; its
/// complement graph is a minimal prime graph of a group of Fitting length 4.
pub fn six_prime_digraph() -> Orientation {
    Orientation::from_arcs(
        &["2", "3", "5", "11", "23", "31"],
        &[
            ("2", "23"),
            ("3", "23"),
            ("2", "31"),
            ("3", "31"),
            ("5", "11"),
            ("5", "31"),
            ("11", "23"),
        ],
    )
    .expect("six prime digraph")
}

/// Prime graph whose complement is [`six_prime_digraph`].
pub fn six_prime_graph() -> LabeledGraph {
    six_prime_digraph().underlying().complement()
}
