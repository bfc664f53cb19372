use super::{LabeledGraph, VertexSet};
use crate::error::Result;

/// Lexicographically least triangle `(a, b, c)` with `a < b < c`, if any.
pub fn find_triangle(g: &LabeledGraph) -> Option<(usize, usize, usize)> {
    let adj = g.adjacency();
    for a in 0..g.n() {
        let later = |v: usize| VertexSet(adj[v] >> v >> 1 << v << 1);
        for b in later(a).iter() {
            if let Some(c) = later(b).intersection(VertexSet(adj[a])).iter().next() {
                return Some((a, b, c));
            }
        }
    }
    None
}

/// Outcome of an exact coloring search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSearch {
    pub coloring: Option<super::Coloring>,
    /// Number of search-tree nodes visited.
    pub nodes: u64,
}

/// Exact `k`-coloring by backtracking in saturation-degree (DSATUR) order.
///
/// `None` means the whole tree was exhausted, i.e. `g` is not `k`-colorable.
pub fn color_with_at_most(g: &LabeledGraph, k: usize) -> ColoringSearch {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut nodes = 0u64;
    let found = k > 0 || n == 0;
    let ok = found && dsatur(g, k, &mut colors, n, 0, &mut nodes);
    ColoringSearch {
        coloring: ok.then(|| super::Coloring::new(colors)),
        nodes,
    }
}

fn dsatur(
    g: &LabeledGraph,
    k: usize,
    colors: &mut [usize],
    remaining: usize,
    used: usize,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if remaining == 0 {
        return true;
    }
    // Pick the uncolored vertex with the most distinct neighbor colors, ties by degree then index.
    let mut best = usize::MAX;
    let mut best_key = (0usize, 0usize);
    let mut best_forbidden = 0u64;
    for v in 0..g.n() {
        if colors[v] != usize::MAX {
            continue;
        }
        let forbidden = g
            .neighbors(v)
            .iter()
            .filter(|&w| colors[w] != usize::MAX)
            .fold(0u64, |acc, w| acc | 1 << colors[w]);
        let key = (forbidden.count_ones() as usize, g.degree(v));
        if best == usize::MAX || key > best_key {
            best = v;
            best_key = key;
            best_forbidden = forbidden;
        }
    }
    // Colors beyond `used` are interchangeable, so only the first fresh one is tried.
    let limit = k.min(used + 1);
    for c in 0..limit {
        if best_forbidden >> c & 1 == 1 {
            continue;
        }
        colors[best] = c;
        if dsatur(g, k, colors, remaining - 1, used.max(c + 1), nodes) {
            return true;
        }
    }
    colors[best] = usize::MAX;
    false
}

/// Lexicographically least proper coloring with at most `k` colors (vertex order, smallest color first).
pub fn least_coloring(g: &LabeledGraph, k: usize) -> Option<super::Coloring> {
    fn go(g: &LabeledGraph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        let forbidden = g
            .neighbors(v)
            .iter()
            .filter(|&w| w < v)
            .fold(0u64, |acc, w| acc | 1 << colors[w]);
        for c in 0..k {
            if forbidden >> c & 1 == 0 {
                colors[v] = c;
                if go(g, k, v + 1, colors) {
                    return true;
                }
            }
        }
        false
    }
    let mut colors = vec![0; g.n()];
    go(g, k, 0, &mut colors).then(|| super::Coloring::new(colors))
}

/// Length of a shortest cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    /// The graph is a forest.
    Infinite,
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Shortest cycle length via a breadth-first search from every vertex.
pub fn girth(g: &LabeledGraph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u).iter() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Vertices at shortest-path distance exactly `k` from `v` (label-based).
pub fn neighborhood(g: &LabeledGraph, v: &str, k: usize) -> Result<Vec<String>> {
    let v = g.vertex(v)?;
    Ok(g.labels_of(distance_layer(g, v, k)))
}

pub(crate) fn distance_layer(g: &LabeledGraph, v: usize, k: usize) -> VertexSet {
    let mut seen = 1u64 << v;
    let mut frontier = 1u64 << v;
    for _ in 0..k {
        let next = VertexSet(frontier)
            .iter()
            .fold(0u64, |acc, w| acc | g.adjacency()[w]);
        frontier = next & !seen;
        seen |= frontier;
    }
    VertexSet(frontier)
}

pub fn is_connected(g: &LabeledGraph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let next = VertexSet(frontier)
            .iter()
            .fold(0u64, |acc, w| acc | g.adjacency()[w]);
        frontier = next & !seen;
        seen |= frontier;
    }
    seen == g.vertex_set().0
}

/// Size of a largest independent set (exact branch and bound; small graphs only).
pub fn independence_number(g: &LabeledGraph) -> usize {
    fn go(adj: &[u64], candidates: u64, size: usize, best: &mut usize) {
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        go(adj, candidates & !(1 << v) & !adj[v], size + 1, best);
        go(adj, candidates & !(1 << v), size, best);
    }
    let mut best = 0;
    go(g.adjacency(), g.vertex_set().0, 0, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn triangles() {
        assert_eq!(find_triangle(&named::complete(3)), Some((0, 1, 2)));
        assert_eq!(find_triangle(&named::cycle(5)), None);
        let t = find_triangle(&named::cycle(6).complement()).unwrap();
        // The complement of a 6-cycle is two triangles on {0,2,4} and {1,3,5}.
        assert_eq!(t, (0, 2, 4));
    }

    #[test]
    fn colorings() {
        let c5 = named::cycle(5);
        let s = color_with_at_most(&c5, 3);
        assert!(s.coloring.as_ref().unwrap().is_proper(&c5));
        assert!(color_with_at_most(&c5, 2).coloring.is_none());
        assert!(color_with_at_most(&named::complete(4), 3).coloring.is_none());
        assert!(color_with_at_most(&named::grotzsch(), 3).coloring.is_none());
        assert!(color_with_at_most(&named::grotzsch(), 4).coloring.is_some());
        assert!(color_with_at_most(&LabeledGraph::indexed(0).unwrap(), 1).coloring.is_some());
        assert!(color_with_at_most(&LabeledGraph::indexed(1).unwrap(), 0).coloring.is_none());
    }

    #[test]
    fn least_coloring_is_lexicographic() {
        let c = least_coloring(&named::cycle(5), 3).unwrap();
        assert_eq!(c.colors(), &[0, 1, 0, 1, 2]);
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&named::cycle(5)), Girth::Finite(5));
        assert_eq!(girth(&named::path(4)), Girth::Infinite);
        assert_eq!(girth(&named::complete(3)), Girth::Finite(3));
        assert_eq!(girth(&named::grotzsch()), Girth::Finite(4));
        assert_eq!(girth(&LabeledGraph::indexed(0).unwrap()), Girth::Infinite);
    }

    #[test]
    fn neighborhoods() {
        let c5 = crate::graph::tests::c5();
        assert_eq!(neighborhood(&c5, "a", 1).unwrap(), vec!["b", "e"]);
        assert_eq!(neighborhood(&c5, "a", 2).unwrap(), vec!["c", "d"]);
        let two = LabeledGraph::from_edges(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap();
        assert!(neighborhood(&two, "a", 2).unwrap().is_empty());
        assert!(neighborhood(&two, "q", 1).is_err());
    }

    #[test]
    fn independence() {
        assert_eq!(independence_number(&named::cycle(5)), 2);
        assert_eq!(independence_number(&named::path(4)), 2);
        assert_eq!(independence_number(&LabeledGraph::indexed(3).unwrap()), 3);
        assert_eq!(independence_number(&named::grotzsch()), 5);
    }
}
