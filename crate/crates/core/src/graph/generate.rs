//! Exhaustive generation of graphs up to isomorphism.
//!
//! Classes closed under induced subgraphs are grown one vertex at a time:
//! every member on `n` vertices extends a member on `n - 1` vertices, so
//! joining a new vertex to each subset of an `(n - 1)`-class representative
//! and deduplicating by canonical form reaches every class.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{canonical_labeling, format, LabeledGraph};
use crate::error::{Error, Result};

/// Canonically relabeled copy of `g` with labels `"0"`, `"1"`, ...
pub fn canonical_representative(g: &LabeledGraph, limit: usize) -> Result<LabeledGraph> {
    let perm = canonical_labeling(g, limit)?;
    Ok(g.permuted(&perm).with_indexed_labels())
}

/// Representatives of every isomorphism class on `0..=max_n` vertices satisfying a
/// hereditary predicate, grouped by vertex count and sorted by canonical form.
///
/// `keep` must be closed under taking induced subgraphs; otherwise classes are missed.
pub fn hereditary_classes<F>(max_n: usize, limit: usize, keep: F) -> Result<Vec<Vec<LabeledGraph>>>
where
    F: Fn(&LabeledGraph) -> bool + Sync,
{
    if max_n > limit {
        return Err(Error::SizeBoundExceeded { n: max_n, limit });
    }
    let empty = LabeledGraph::indexed(0)?;
    let mut levels = vec![if keep(&empty) { vec![empty] } else { vec![] }];
    for n in 1..=max_n {
        let parents = &levels[n - 1];
        let found: Vec<BTreeMap<String, LabeledGraph>> = parents
            .par_iter()
            .map(|parent| {
                let mut local = BTreeMap::new();
                for mask in 0u64..1 << (n - 1) {
                    let mut g = parent.clone();
                    let v = g.add_vertex((n - 1).to_string()).expect("fresh label");
                    for w in (0..n - 1).filter(|w| mask >> w & 1 == 1) {
                        g.add_edge(v, w).expect("new edge");
                    }
                    if !keep(&g) {
                        continue;
                    }
                    let rep = canonical_representative(&g, limit).expect("within limit");
                    local.entry(format::to_graph6(&rep)).or_insert(rep);
                }
                local
            })
            .collect();
        let mut merged = BTreeMap::new();
        for map in found {
            merged.extend(map);
        }
        levels.push(merged.into_values().collect());
    }
    Ok(levels)
}

/// All graphs on exactly `n` vertices up to isomorphism.
pub fn all_graphs(n: usize) -> Result<Vec<LabeledGraph>> {
    Ok(hereditary_classes(n, n.max(super::DEFAULT_CANON_LIMIT), |_| true)?
        .pop()
        .unwrap_or_default())
}
