#![allow(dead_code)]

use primegraph_core::graph::{LabeledGraph, Orientation};
use proptest::prelude::*;

/// Adjacency as a dense boolean matrix.
pub fn matrix(g: &LabeledGraph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn brute_has_triangle(g: &LabeledGraph) -> bool {
    let a = matrix(g);
    let n = g.n();
    (0..n).any(|x| (x + 1..n).any(|y| a[x][y] && (y + 1..n).any(|z| a[x][z] && a[y][z])))
}

/// Tries every assignment of `k` colors.
pub fn brute_colorable(g: &LabeledGraph, k: usize) -> bool {
    let n = g.n();
    let edges = g.edges();
    let total = (k as u64).pow(n as u32);
    (0..total).any(|mut code| {
        let colors: Vec<u64> = (0..n)
            .map(|_| {
                let c = code % k as u64;
                code /= k as u64;
                c
            })
            .collect();
        edges.iter().all(|&(u, v)| colors[u] != colors[v])
    })
}

/// Realizability straight from the definition, by exhaustive coloring.
pub fn brute_realizable(g: &LabeledGraph) -> bool {
    let f = g.complement();
    !brute_has_triangle(&f) && brute_colorable(&f, 3)
}

/// Length of a shortest cycle, found by extending simple paths from their least vertex.
pub fn brute_girth(g: &LabeledGraph) -> Option<usize> {
    let a = matrix(g);
    let n = g.n();
    let mut best: Option<usize> = None;
    fn extend(a: &[Vec<bool>], path: &mut Vec<usize>, best: &mut Option<usize>) {
        let start = path[0];
        let last = *path.last().unwrap();
        if path.len() >= 3 && a[last][start] {
            *best = Some(best.map_or(path.len(), |b| b.min(path.len())));
        }
        if best.is_some_and(|b| path.len() >= b) {
            return;
        }
        for w in start + 1..a.len() {
            if a[last][w] && !path.contains(&w) {
                path.push(w);
                extend(a, path, best);
                path.pop();
            }
        }
    }
    for s in 0..n {
        extend(&a, &mut vec![s], &mut best);
    }
    best
}

/// Graph on `n` vertices labeled `0..n` whose complement is a random 3-partite,
/// triangle-free graph; such graphs are realizable.
pub fn realizable_graph(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(0usize..3, n),
                proptest::collection::vec(any::<bool>(), n * n),
            )
        })
        .prop_map(|(colors, coins)| {
            let n = colors.len();
            let mut f = LabeledGraph::indexed(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if colors[u] != colors[v] && coins[u * n + v] {
                        f.add_edge(u, v).unwrap();
                        if brute_has_triangle(&f) {
                            f.remove_edge(u, v);
                        }
                    }
                }
            }
            f.complement()
        })
}

pub fn any_graph(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, coins)| {
            let mut g = LabeledGraph::indexed(n).unwrap();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if coins[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            g
        })
}

/// A graph together with a permutation of its vertices.
pub fn graph_and_permutation(
    g: impl Strategy<Value = LabeledGraph>,
) -> impl Strategy<Value = (LabeledGraph, Vec<usize>)> {
    g.prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<usize>>()).prop_shuffle();
        (Just(g), perm)
    })
}

/// Frobenius orientation built from a random 3-coloring: arcs go from lower to higher color.
pub fn valid_orientation(max_n: usize) -> impl Strategy<Value = Orientation> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(0usize..3, n),
                proptest::collection::vec(any::<bool>(), n * n),
            )
        })
        .prop_map(|(colors, coins)| {
            let n = colors.len();
            let mut f = LabeledGraph::indexed(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if colors[u] != colors[v] && coins[u * n + v] {
                        f.add_edge(u, v).unwrap();
                        if brute_has_triangle(&f) {
                            f.remove_edge(u, v);
                        }
                    }
                }
            }
            Orientation::orient(&f, |u, v| colors[u] < colors[v])
        })
}
