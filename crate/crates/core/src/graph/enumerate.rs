//! Exhaustive enumeration of dual graphs up to label-preserving isomorphism.
//!
//! Graphs for (g, n) are grown from smaller ones: a leaf labeled `n` is
//! inserted on every edge of every (g, n-1) graph, and closed graphs are
//! obtained by gluing the two leaves of every (g-1, 2) graph. Duplicates are
//! removed by canonical key.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{CanonicalKey, PantGraph};
use crate::error::DomainError;

/// Whether Σ_{g,n} admits a pant decomposition.
pub fn is_admissible(g: u32, n: u32) -> bool {
    2 * g as i64 - 2 + n as i64 >= 1 && !matches!((g, n), (0, 0) | (0, 1) | (0, 2) | (1, 0))
}

/// One canonical representative per isomorphism class, sorted by key.
pub fn enumerate_graphs(g: u32, n: u32) -> Result<Vec<PantGraph>, DomainError> {
    if !is_admissible(g, n) {
        return Err(DomainError { g, n });
    }
    Ok(enumerate_keyed(g, n).into_values().collect())
}

fn enumerate_keyed(g: u32, n: u32) -> BTreeMap<CanonicalKey, PantGraph> {
    let seeds: Vec<PantGraph> = match (g, n) {
        (0, 3) => vec![super::samples::tripod()],
        (1, 1) => vec![super::samples::loop_leaf()],
        (_, 0) => enumerate_keyed(g - 1, 2)
            .into_values()
            .map(|h| crate::maps::psi_vertex(&h).expect("two leaves"))
            .collect(),
        _ => {
            let smaller = enumerate_keyed(g, n - 1);
            smaller
                .into_values()
                .collect::<Vec<_>>()
                .par_iter()
                .flat_map_iter(|h| {
                    (0..h.edges().len())
                        .map(|e| h.insert_leaf(e, n))
                        .collect::<Vec<_>>()
                })
                .collect()
        }
    };
    let keyed: Vec<(CanonicalKey, PantGraph)> = seeds
        .par_iter()
        .map(|s| {
            let k = s.canonical_key();
            let rep = PantGraph::from_key(&k).0;
            (k, rep)
        })
        .collect();
    keyed.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluded_surfaces() {
        for (g, n) in [(0, 0), (0, 1), (0, 2), (1, 0)] {
            assert_eq!(enumerate_graphs(g, n), Err(DomainError { g, n }));
        }
    }

    #[test]
    fn small_counts() {
        let count = |g, n| enumerate_graphs(g, n).unwrap().len();
        assert_eq!(count(0, 3), 1);
        assert_eq!(count(1, 1), 1);
        assert_eq!(count(0, 4), 3);
        assert_eq!(count(0, 5), 15);
        assert_eq!(count(1, 2), 2);
        assert_eq!(count(2, 0), 2);
    }

    #[test]
    fn enumerated_graphs_are_valid_with_requested_parameters() {
        for (g, n) in [(0, 4), (0, 5), (1, 2), (2, 0), (1, 3), (2, 1)] {
            for graph in enumerate_graphs(g, n).unwrap() {
                assert!(graph.validate().is_empty(), "{graph}");
                let c = graph.counts();
                assert_eq!((c.genus, c.boundary), (g, n));
            }
        }
    }
}
