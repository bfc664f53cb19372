//! Canonical labeling by individualization and refinement.
//!
//! Graphs are handled as digraphs with symmetric adjacency, so one search
//! serves both [`LabeledGraph`] and [`Orientation`].

use super::{format, LabeledGraph, Orientation};
use crate::error::{Error, Result};

pub const DEFAULT_CANON_LIMIT: usize = 10;

struct Search<'a> {
    out: &'a [u64],
    inn: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn n(&self) -> usize {
        self.out.len()
    }

    /// Splits cells by neighbor counts into every cell until stable.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let masks: Vec<u64> = cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect();
            let mut next = Vec::with_capacity(self.n());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let key = masks
                            .iter()
                            .flat_map(|&m| {
                                [(self.out[v] & m).count_ones(), (self.inn[v] & m).count_ones()]
                            })
                            .collect();
                        (key, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn twins(&self, u: usize, w: usize) -> bool {
        let strip = !(1u64 << u | 1u64 << w);
        self.out[u] & strip == self.out[w] & strip
            && self.inn[u] & strip == self.inn[w] & strip
            && (self.out[u] >> w & 1) == (self.out[w] >> u & 1)
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = &cells[target];
        let mut tried: Vec<usize> = Vec::new();
        for &v in cell {
            // Swapping twins is an automorphism fixing this node, so their subtrees coincide.
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..target].iter().cloned());
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&w| w != v).collect());
            child.extend(cells[target + 1..].iter().cloned());
            let refined = self.refine(child);
            self.descend(refined);
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.n();
        let mut perm = vec![0; n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let mut cert = vec![0u64; n];
        for v in 0..n {
            let mut row = 0u64;
            let mut bits = self.out[v];
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                row |= 1 << perm[w];
            }
            cert[perm[v]] = row;
        }
        if self.best.as_ref().is_none_or(|(b, _)| cert > *b) {
            self.best = Some((cert, perm));
        }
    }
}

fn labeling(out: &[u64], inn: &[u64]) -> Vec<usize> {
    let n = out.len();
    if n == 0 {
        return Vec::new();
    }
    let mut search = Search {
        out,
        inn,
        best: None,
    };
    let start = search.refine(vec![(0..n).collect()]);
    search.descend(start);
    search.best.expect("search reaches a leaf").1
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeBoundExceeded { n, limit })
    } else {
        Ok(())
    }
}

/// Canonical relabeling: vertex `v` goes to position `perm[v]`.
pub fn canonical_labeling(g: &LabeledGraph, limit: usize) -> Result<Vec<usize>> {
    check_limit(g.n(), limit)?;
    Ok(labeling(g.adjacency(), g.adjacency()))
}

/// graph6 encoding of the canonically relabeled graph; equal iff isomorphic.
pub fn canonical_form(g: &LabeledGraph) -> Result<String> {
    canonical_form_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_with_limit(g: &LabeledGraph, limit: usize) -> Result<String> {
    let perm = canonical_labeling(g, limit)?;
    Ok(format::to_graph6(&g.permuted(&perm)))
}

/// digraph6 encoding of the canonically relabeled orientation; equal iff isomorphic as digraphs.
pub fn orientation_canonical_form(o: &Orientation, limit: usize) -> Result<String> {
    check_limit(o.n(), limit)?;
    let perm = labeling(o.out_masks(), o.in_masks());
    Ok(format::to_digraph6(&o.permuted(&perm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Least graph6 string over all relabelings; an isomorphism invariant by construction.
    fn brute_invariant(g: &LabeledGraph) -> String {
        permutations(g.n())
            .iter()
            .map(|p| format::to_graph6(&g.permuted(p)))
            .min()
            .unwrap()
    }

    #[test]
    fn relabeled_pentagons_agree() {
        let a = crate::graph::tests::c5();
        let b = a.relabeled(["v", "w", "x", "y", "z"]).unwrap();
        let c = a.permuted(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&c).unwrap());
    }

    #[test]
    fn distinguishes_small_graphs() {
        let k3 = named::complete(3);
        let p3 = named::path(3);
        assert_ne!(canonical_form(&k3).unwrap(), canonical_form(&p3).unwrap());
        let two_k2 = LabeledGraph::from_index_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let p4 = named::path(4);
        assert_ne!(canonical_form(&two_k2).unwrap(), canonical_form(&p4).unwrap());
    }

    #[test]
    fn size_bound() {
        assert_eq!(
            canonical_form(&named::grotzsch()),
            Err(Error::SizeBoundExceeded { n: 11, limit: 10 })
        );
        assert!(canonical_form_with_limit(&named::grotzsch(), 11).is_ok());
    }

    #[test]
    fn agrees_with_permutation_minimum_up_to_five_vertices() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let mut by_canon = std::collections::HashMap::new();
            let mut by_brute = std::collections::HashMap::new();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = LabeledGraph::from_index_edges(n, &edges).unwrap();
                let c = canonical_form(&g).unwrap();
                let b = brute_invariant(&g);
                // The two invariants must induce the same partition into classes.
                assert_eq!(*by_canon.entry(c.clone()).or_insert(b.clone()), b);
                assert_eq!(*by_brute.entry(b).or_insert(c.clone()), c);
            }
            let expected = [1, 1, 2, 4, 11, 34][n];
            assert_eq!(by_canon.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn orientation_forms() {
        let a = Orientation::from_index_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Orientation::from_index_arcs(3, &[(2, 0), (0, 1)]).unwrap();
        let c = Orientation::from_index_arcs(3, &[(1, 0), (1, 2)]).unwrap();
        let f = |o: &Orientation| orientation_canonical_form(o, 10).unwrap();
        assert_eq!(f(&a), f(&b));
        assert_ne!(f(&a), f(&c));
        assert!(f(&a).starts_with('&'));
    }
}
