//! Bounded van Kampen search: shows a closed edge-walk is null-homotopic by
//! repeatedly replacing a piece `u` of a cell boundary `u v` with `v⁻¹`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::complex::{cyclic_normal_form, cyclically_reduce, Letter, TwoComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FillingLimits {
    pub max_area: usize,
    pub max_states: usize,
}

impl Default for FillingLimits {
    fn default() -> Self {
        FillingLimits {
            max_area: 64,
            max_states: 200_000,
        }
    }
}

fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(e, s)| (e, -s)).collect()
}

/// Every rotation of every cell boundary and its inverse, indexed by first
/// letter.
pub struct Relators {
    by_first: BTreeMap<Letter, Vec<Vec<Letter>>>,
}

impl Relators {
    pub fn of(complex: &TwoComplex) -> Relators {
        let mut by_first: BTreeMap<Letter, Vec<Vec<Letter>>> = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for c in &complex.cells {
            let r = cyclically_reduce(&c.boundary);
            if r.is_empty() || !seen.insert(cyclic_normal_form(&r)) {
                continue;
            }
            for w in [r.clone(), inverse(&r)] {
                for k in 0..w.len() {
                    let rot: Vec<Letter> = w[k..].iter().chain(&w[..k]).copied().collect();
                    by_first.entry(rot[0]).or_default().push(rot);
                }
            }
        }
        for v in by_first.values_mut() {
            v.sort();
            v.dedup();
        }
        Relators { by_first }
    }
}

/// Smallest area found for a filling of `word`, or `None` if none exists
/// within the limits.
pub fn fill(rels: &Relators, word: &[Letter], limits: FillingLimits) -> Option<usize> {
    let start = cyclically_reduce(word);
    if start.is_empty() {
        return Some(0);
    }
    let max_len = start.len().max(8) + 4;
    let mut best: HashMap<Vec<Letter>, usize> = HashMap::new();
    let mut heap = BinaryHeap::new();
    best.insert(cyclic_normal_form(&start), 0);
    heap.push(Reverse((start.len(), 0usize, start)));
    let mut expanded = 0;
    while let Some(Reverse((_, area, w))) = heap.pop() {
        if best.get(&cyclic_normal_form(&w)).is_some_and(|&a| a < area) {
            continue;
        }
        expanded += 1;
        if expanded > limits.max_states {
            return None;
        }
        if area >= limits.max_area {
            continue;
        }
        let n = w.len();
        for p in 0..n {
            let Some(cands) = rels.by_first.get(&w[p]) else {
                continue;
            };
            for rho in cands {
                let mut k = 0;
                while k < rho.len() && k < n && w[(p + k) % n] == rho[k] {
                    k += 1;
                    // replace w[p..p+k] by (rho[k..])^-1
                    let repl = inverse(&rho[k..]);
                    let mut next: Vec<Letter> = Vec::with_capacity(n - k + repl.len());
                    next.extend_from_slice(&repl);
                    for i in k..n {
                        next.push(w[(p + i) % n]);
                    }
                    let next = cyclically_reduce(&next);
                    if next.is_empty() {
                        return Some(area + 1);
                    }
                    if next.len() > max_len {
                        continue;
                    }
                    let nf = cyclic_normal_form(&next);
                    if best.get(&nf).is_some_and(|&a| a <= area + 1) {
                        continue;
                    }
                    best.insert(nf, area + 1);
                    heap.push(Reverse((next.len(), area + 1, next)));
                }
            }
        }
    }
    None
}
