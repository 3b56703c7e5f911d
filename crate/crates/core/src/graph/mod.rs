//! Dual graphs of pant decompositions.
//!
//! A [`PantGraph`] is stored as darts (half-edges): `edges[i]` pairs two
//! darts into edge `i`, `vertices` partitions the darts into vertex blocks,
//! and every univalent block carries a boundary label. No cyclic order is
//! kept at vertices; the order of darts inside a block is only used to name
//! the two variants of an F move.

pub mod canon;
mod enumerate;
mod text;

use std::collections::BTreeMap;
use std::fmt;

pub use canon::{CanonicalKey, ColoredDartGraph};
pub use enumerate::{enumerate_graphs, is_admissible};

use crate::error::StructuralError;

pub type Dart = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PantGraph {
    edges: Vec<[Dart; 2]>,
    vertices: Vec<Vec<Dart>>,
    leaves: Vec<(u32, Dart)>,
    dart_vertex: Vec<usize>,
    dart_edge: Vec<usize>,
}

/// A violated graph invariant, as reported by [`PantGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    Disconnected {
        components: usize,
    },
    Degree {
        vertex: usize,
        degree: usize,
    },
    UnlabeledLeaf {
        vertex: usize,
    },
    LabelOnNonLeaf {
        label: u32,
    },
    LabelOutOfRange {
        label: u32,
    },
    DuplicateLabel {
        label: u32,
    },
    /// Edge/leaf/trivalent counts disagree with 3g-3+2n and 2g-2+n.
    Counts {
        edges: usize,
        trivalent: usize,
        genus: i64,
        boundary: usize,
    },
    /// The surface parameters admit no pant decomposition.
    Excluded {
        genus: i64,
        boundary: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
            Violation::Degree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}, expected 1 or 3")
            }
            Violation::UnlabeledLeaf { vertex } => write!(f, "leaf vertex {vertex} has no label"),
            Violation::LabelOnNonLeaf { label } => {
                write!(f, "label {label} is attached to a non-leaf vertex")
            }
            Violation::LabelOutOfRange { label } => write!(f, "label {label} is out of range"),
            Violation::DuplicateLabel { label } => write!(f, "label {label} is used twice"),
            Violation::Counts {
                edges,
                trivalent,
                genus,
                boundary,
            } => write!(
                f,
                "counts mismatch: {edges} edges and {trivalent} trivalent vertices for g={genus} n={boundary}"
            ),
            Violation::Excluded { genus, boundary } => {
                write!(f, "(g={genus}, n={boundary}) admits no pant decomposition")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    pub genus: u32,
    pub boundary: u32,
    pub internal_edges: u32,
}

impl PantGraph {
    /// Builds a graph from raw dart data, checking only structural
    /// well-formedness. Use [`validate`](Self::validate) for the pant-graph
    /// invariants.
    pub fn new(
        edges: Vec<[Dart; 2]>,
        vertices: Vec<Vec<Dart>>,
        mut leaves: Vec<(u32, Dart)>,
    ) -> Result<Self, StructuralError> {
        let nd = 2 * edges.len();
        let mut dart_edge = vec![usize::MAX; nd];
        for (i, &[a, b]) in edges.iter().enumerate() {
            for d in [a, b] {
                if d >= nd {
                    return Err(StructuralError::DartOutOfRange(d));
                }
            }
            if a == b {
                return Err(StructuralError::FixedPoint(a));
            }
            for d in [a, b] {
                if dart_edge[d] != usize::MAX {
                    return Err(StructuralError::DartReused(d));
                }
                dart_edge[d] = i;
            }
        }
        if let Some(d) = dart_edge.iter().position(|&e| e == usize::MAX) {
            return Err(StructuralError::Unpaired(d));
        }
        let mut dart_vertex = vec![usize::MAX; nd];
        for (v, block) in vertices.iter().enumerate() {
            if block.is_empty() {
                return Err(StructuralError::EmptyVertex(v));
            }
            for &d in block {
                if d >= nd {
                    return Err(StructuralError::DartOutOfRange(d));
                }
                if dart_vertex[d] != usize::MAX {
                    return Err(StructuralError::VertexOverlap(d));
                }
                dart_vertex[d] = v;
            }
        }
        if let Some(d) = dart_vertex.iter().position(|&v| v == usize::MAX) {
            return Err(StructuralError::VertexUncovered(d));
        }
        let mut seen = vec![false; nd];
        for &(_, d) in &leaves {
            if d >= nd {
                return Err(StructuralError::DartOutOfRange(d));
            }
            if seen[d] {
                return Err(StructuralError::LeafDartRepeated(d));
            }
            seen[d] = true;
        }
        leaves.sort();
        Ok(PantGraph {
            edges,
            vertices,
            leaves,
            dart_vertex,
            dart_edge,
        })
    }

    pub fn edges(&self) -> &[[Dart; 2]] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vec<Dart>] {
        &self.vertices
    }

    /// `(label, dart)` pairs sorted by label.
    pub fn leaves(&self) -> &[(u32, Dart)] {
        &self.leaves
    }

    pub fn num_darts(&self) -> usize {
        self.dart_vertex.len()
    }

    pub fn partner(&self, d: Dart) -> Dart {
        let [a, b] = self.edges[self.dart_edge[d]];
        if a == d {
            b
        } else {
            a
        }
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.dart_vertex[d]
    }

    pub fn edge_of(&self, d: Dart) -> usize {
        self.dart_edge[d]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    pub fn leaf_dart(&self, label: u32) -> Option<Dart> {
        self.leaves
            .iter()
            .find(|&&(l, _)| l == label)
            .map(|&(_, d)| d)
    }

    pub fn num_trivalent(&self) -> usize {
        self.vertices.iter().filter(|b| b.len() == 3).count()
    }

    /// Both endpoints trivalent.
    pub fn is_internal(&self, edge: usize) -> bool {
        let [a, b] = self.edges[edge];
        self.degree(self.vertex_of(a)) == 3 && self.degree(self.vertex_of(b)) == 3
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let [a, b] = self.edges[edge];
        self.vertex_of(a) == self.vertex_of(b)
    }

    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.is_internal(e))
            .collect()
    }

    /// Darts at the same vertex as `d`, other than `d`, in block order.
    pub fn siblings(&self, d: Dart) -> Vec<Dart> {
        self.vertices[self.vertex_of(d)]
            .iter()
            .copied()
            .filter(|&x| x != d)
            .collect()
    }

    fn component_count(&self) -> usize {
        let nv = self.vertices.len();
        let mut seen = vec![false; nv];
        let mut components = 0;
        for start in 0..nv {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &d in &self.vertices[v] {
                    let w = self.vertex_of(self.partner(d));
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    pub fn cycle_rank(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    /// Lists every violated invariant; empty iff this is a valid dual graph.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let components = self.component_count();
        if components != 1 {
            out.push(Violation::Disconnected { components });
        }
        for (v, block) in self.vertices.iter().enumerate() {
            if block.len() != 1 && block.len() != 3 {
                out.push(Violation::Degree {
                    vertex: v,
                    degree: block.len(),
                });
            }
        }
        let univalent: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| self.degree(v) == 1)
            .collect();
        let n = univalent.len();
        let mut label_of_vertex: BTreeMap<usize, u32> = BTreeMap::new();
        let mut labels_seen = BTreeMap::new();
        for &(label, d) in &self.leaves {
            let v = self.vertex_of(d);
            if self.degree(v) != 1 {
                out.push(Violation::LabelOnNonLeaf { label });
                continue;
            }
            if label == 0 || label as usize > n {
                out.push(Violation::LabelOutOfRange { label });
            }
            if labels_seen.insert(label, v).is_some() || label_of_vertex.insert(v, label).is_some()
            {
                out.push(Violation::DuplicateLabel { label });
            }
        }
        for &v in &univalent {
            if !label_of_vertex.contains_key(&v) {
                out.push(Violation::UnlabeledLeaf { vertex: v });
            }
        }
        let genus = self.cycle_rank();
        let trivalent = self.num_trivalent();
        let expect_edges = 3 * genus - 3 + 2 * n as i64;
        let expect_trivalent = 2 * genus - 2 + n as i64;
        if self.edges.len() as i64 != expect_edges || trivalent as i64 != expect_trivalent {
            out.push(Violation::Counts {
                edges: self.edges.len(),
                trivalent,
                genus,
                boundary: n,
            });
        }
        if genus < 0 || !is_admissible(genus.max(0) as u32, n as u32) {
            out.push(Violation::Excluded { genus, boundary: n });
        }
        out
    }

    /// Genus, boundary count and internal edge count. Assumes a valid graph.
    pub fn counts(&self) -> Counts {
        let n = self.leaves.len() as u32;
        let g = self.cycle_rank().max(0) as u32;
        Counts {
            genus: g,
            boundary: n,
            internal_edges: (self.edges.len() as u32).saturating_sub(n),
        }
    }

    /// The colored form used for canonical labeling: leaves are colored by
    /// label, trivalent vertices by 0, darts by `dart_color`.
    pub fn colored(&self, dart_color: impl Fn(Dart) -> u32) -> ColoredDartGraph {
        let mut vertex_color = vec![0u32; self.vertices.len()];
        for &(label, d) in &self.leaves {
            vertex_color[self.vertex_of(d)] = label;
        }
        ColoredDartGraph {
            vertex_color,
            dart_vertex: self.dart_vertex.clone(),
            dart_color: (0..self.num_darts()).map(dart_color).collect(),
            partner: (0..self.num_darts()).map(|d| self.partner(d)).collect(),
        }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canon::canonicalize(&self.colored(|_| 0)).key
    }

    /// Order of the group of label-preserving dart automorphisms.
    pub fn automorphism_count(&self) -> u64 {
        canon::canonicalize(&self.colored(|_| 0)).automorphisms
    }

    pub fn is_isomorphic(&self, other: &PantGraph) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// The canonical representative of this graph's isomorphism class: a
    /// function of the canonical key alone.
    pub fn canonical_form(&self) -> PantGraph {
        let key = self.canonical_key();
        Self::from_key(&key).0
    }

    /// Rebuilds the representative encoded by a key, returning the dart
    /// colors as well (nonzero for decorated keys).
    pub fn from_key(key: &CanonicalKey) -> (PantGraph, Vec<u32>) {
        Self::try_from_key(key).expect("well-formed canonical key")
    }

    /// As [`from_key`](Self::from_key), but `None` on bytes that do not
    /// encode a structurally valid graph.
    pub fn try_from_key(key: &CanonicalKey) -> Option<(PantGraph, Vec<u32>)> {
        let dec = canon::decode(key)?;
        let mut vertices = vec![Vec::new(); dec.vertex_color.len()];
        let mut edges = Vec::with_capacity(dec.edges.len());
        let mut dart_color = vec![0u32; 2 * dec.edges.len()];
        for (i, [(pu, cu), (pv, cv)]) in dec.edges.iter().copied().enumerate() {
            vertices[pu].push(2 * i);
            vertices[pv].push(2 * i + 1);
            dart_color[2 * i] = cu;
            dart_color[2 * i + 1] = cv;
            edges.push([2 * i, 2 * i + 1]);
        }
        let mut leaves = Vec::new();
        for (p, &c) in dec.vertex_color.iter().enumerate() {
            if c != 0 {
                leaves.push((c, *vertices[p].first()?));
            }
        }
        let g = PantGraph::new(edges, vertices, leaves).ok()?;
        Some((g, dart_color))
    }

    /// Inserts a new leaf with `label` on `edge`, subdividing it. All existing
    /// darts keep their ids and vertices; four darts are appended.
    pub fn insert_leaf(&self, edge: usize, label: u32) -> PantGraph {
        let [x, y] = self.edges[edge];
        let base = self.num_darts();
        let (x2, y2, stem, tip) = (base, base + 1, base + 2, base + 3);
        let mut edges = self.edges.clone();
        edges[edge] = [x, x2];
        edges.push([y2, y]);
        edges.push([stem, tip]);
        let mut vertices = self.vertices.clone();
        vertices.push(vec![x2, y2, stem]);
        vertices.push(vec![tip]);
        let mut leaves = self.leaves.clone();
        leaves.push((label, tip));
        PantGraph::new(edges, vertices, leaves).expect("insertion preserves structure")
    }

    /// Renumbers darts densely, dropping those in `removed`; returns the new
    /// graph and the old-to-new dart map.
    pub(crate) fn rebuild(
        edges: Vec<[Dart; 2]>,
        vertices: Vec<Vec<Dart>>,
        leaves: Vec<(u32, Dart)>,
        old_darts: usize,
    ) -> (PantGraph, Vec<Option<Dart>>) {
        let mut used = vec![false; old_darts];
        for e in &edges {
            used[e[0]] = true;
            used[e[1]] = true;
        }
        let mut map = vec![None; old_darts];
        let mut next = 0;
        for d in 0..old_darts {
            if used[d] {
                map[d] = Some(next);
                next += 1;
            }
        }
        let m = |d: Dart| map[d].expect("surviving dart");
        let edges = edges.into_iter().map(|[a, b]| [m(a), m(b)]).collect();
        let vertices = vertices
            .into_iter()
            .map(|b| b.into_iter().map(m).collect())
            .collect();
        let leaves = leaves.into_iter().map(|(l, d)| (l, m(d))).collect();
        let g = PantGraph::new(edges, vertices, leaves).expect("rebuild preserves structure");
        (g, map)
    }

    pub fn to_text(&self) -> String {
        text::write_graph(self)
    }

    pub fn parse(s: &str) -> Result<PantGraph, crate::error::ParseError> {
        text::parse_graph(s)
    }

    pub fn parse_many(s: &str) -> Result<Vec<PantGraph>, crate::error::ParseError> {
        text::parse_graphs(s)
    }

    pub(crate) fn with_vertices(&self, vertices: Vec<Vec<Dart>>) -> PantGraph {
        PantGraph::new(self.edges.clone(), vertices, self.leaves.clone())
            .expect("same darts, new partition")
    }
}

impl fmt::Display for PantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn are_isomorphic(a: &PantGraph, b: &PantGraph) -> bool {
    a.is_isomorphic(b)
}

/// Hand-built graphs used throughout the tests and examples.
pub mod samples {
    use super::PantGraph;

    /// (0,3): one trivalent vertex with three labeled leaves.
    pub fn tripod() -> PantGraph {
        PantGraph::new(
            vec![[0, 1], [2, 3], [4, 5]],
            vec![vec![0, 2, 4], vec![1], vec![3], vec![5]],
            vec![(1, 1), (2, 3), (3, 5)],
        )
        .unwrap()
    }

    /// (1,1): one trivalent vertex with a loop and a leaf.
    pub fn loop_leaf() -> PantGraph {
        PantGraph::new(
            vec![[0, 1], [2, 3]],
            vec![vec![0, 1, 2], vec![3]],
            vec![(1, 3)],
        )
        .unwrap()
    }

    /// (0,4) coupling `(p q)(r s)`: leaves p,q on one vertex, r,s on the other.
    pub fn coupling(p: u32, q: u32, r: u32, s: u32) -> PantGraph {
        PantGraph::new(
            vec![[0, 1], [2, 3], [4, 5], [6, 7], [8, 9]],
            vec![
                vec![0, 2, 8],
                vec![4, 6, 9],
                vec![1],
                vec![3],
                vec![5],
                vec![7],
            ],
            vec![(p, 1), (q, 3), (r, 5), (s, 7)],
        )
        .unwrap()
    }

    /// (2,0): two trivalent vertices joined by three parallel edges.
    pub fn theta() -> PantGraph {
        PantGraph::new(
            vec![[0, 1], [2, 3], [4, 5]],
            vec![vec![0, 2, 4], vec![1, 3, 5]],
            vec![],
        )
        .unwrap()
    }

    /// (2,0): two loops joined by a bridge.
    pub fn dumbbell() -> PantGraph {
        PantGraph::new(
            vec![[0, 1], [2, 3], [4, 5]],
            vec![vec![0, 1, 4], vec![2, 3, 5]],
            vec![],
        )
        .unwrap()
    }

    /// (1,2) case a: two vertices joined by two parallel edges, one leaf each.
    pub fn parallel_pair() -> PantGraph {
        PantGraph::new(
            vec![[0, 1], [2, 3], [4, 5], [6, 7]],
            vec![vec![0, 2, 4], vec![1, 3, 6], vec![5], vec![7]],
            vec![(1, 5), (2, 7)],
        )
        .unwrap()
    }

    /// (1,2) case b: a loop, a bridge, and both leaves on the far vertex.
    pub fn loop_bridge() -> PantGraph {
        PantGraph::new(
            vec![[0, 1], [2, 3], [4, 5], [6, 7]],
            vec![vec![0, 1, 2], vec![3, 4, 6], vec![5], vec![7]],
            vec![(1, 5), (2, 7)],
        )
        .unwrap()
    }

    /// (0,5) caterpillar `(a b) - c - (d e)`.
    pub fn caterpillar(a: u32, b: u32, c: u32, d: u32, e: u32) -> PantGraph {
        // vertices: u = [la, lb, x0], v = [x1, lc, y0], w = [y1, ld, le]
        PantGraph::new(
            vec![[0, 1], [2, 3], [4, 5], [6, 7], [8, 9], [10, 11], [12, 13]],
            vec![
                vec![0, 2, 10],
                vec![11, 4, 12],
                vec![13, 6, 8],
                vec![1],
                vec![3],
                vec![5],
                vec![7],
                vec![9],
            ],
            vec![(a, 1), (b, 3), (c, 5), (d, 7), (e, 9)],
        )
        .unwrap()
    }

    /// A 2-regular cycle on `k` vertices: not a pant graph.
    pub fn cycle(k: usize) -> PantGraph {
        let edges = (0..k).map(|i| [2 * i, (2 * i + 3) % (2 * k)]).collect();
        let vertices = (0..k).map(|i| vec![2 * i, 2 * i + 1]).collect();
        PantGraph::new(edges, vertices, vec![]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn base_graphs_are_valid() {
        assert!(tripod().validate().is_empty());
        assert!(loop_leaf().validate().is_empty());
        assert!(theta().validate().is_empty());
        assert!(dumbbell().validate().is_empty());
        assert!(parallel_pair().validate().is_empty());
        assert!(loop_bridge().validate().is_empty());
        assert!(caterpillar(1, 2, 3, 4, 5).validate().is_empty());
    }

    #[test]
    fn cycle_violates_degree_and_counts() {
        let v = cycle(4).validate();
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::Degree { degree: 2, .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::Counts { .. })));
        assert!(!v
            .iter()
            .any(|x| matches!(x, Violation::Disconnected { .. })));
    }

    #[test]
    fn structural_errors_are_distinct_from_violations() {
        assert_eq!(
            PantGraph::new(vec![[0, 0]], vec![vec![0]], vec![]),
            Err(StructuralError::FixedPoint(0))
        );
        assert_eq!(
            PantGraph::new(vec![[0, 1]], vec![vec![0]], vec![]),
            Err(StructuralError::VertexUncovered(1))
        );
        assert_eq!(
            PantGraph::new(vec![[0, 1], [1, 2]], vec![vec![0, 1, 2, 3]], vec![]),
            Err(StructuralError::DartReused(1))
        );
    }

    #[test]
    fn counts_of_small_graphs() {
        let c = |g: PantGraph| {
            let c = g.counts();
            (c.genus, c.boundary, c.internal_edges)
        };
        assert_eq!(c(tripod()), (0, 3, 0));
        assert_eq!(c(loop_leaf()), (1, 1, 1));
        assert_eq!(c(theta()), (2, 0, 3));
    }

    #[test]
    fn disconnected_graph_is_reported() {
        let g = PantGraph::new(
            vec![[0, 1], [2, 3], [4, 5], [6, 7]],
            vec![vec![0, 2, 4], vec![1, 3, 5], vec![6], vec![7]],
            vec![(1, 6), (2, 7)],
        )
        .unwrap();
        assert!(g
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::Disconnected { components: 2 })));
    }

    #[test]
    fn couplings_are_distinguished() {
        let a = coupling(1, 2, 3, 4);
        assert!(are_isomorphic(&a, &coupling(2, 1, 4, 3)));
        assert!(are_isomorphic(&a, &coupling(3, 4, 1, 2)));
        assert!(!are_isomorphic(&a, &coupling(1, 3, 2, 4)));
        assert!(!are_isomorphic(&a, &coupling(1, 4, 2, 3)));
        assert!(!are_isomorphic(&theta(), &dumbbell()));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(tripod().automorphism_count(), 1);
        assert_eq!(theta().automorphism_count(), 12);
        assert_eq!(loop_leaf().automorphism_count(), 2);
        assert_eq!(dumbbell().automorphism_count(), 8);
        assert_eq!(parallel_pair().automorphism_count(), 2);
    }

    #[test]
    fn canonical_form_is_isomorphic_and_stable() {
        for g in [
            theta(),
            dumbbell(),
            caterpillar(2, 5, 1, 3, 4),
            parallel_pair(),
        ] {
            let c = g.canonical_form();
            assert!(c.validate().is_empty());
            assert!(are_isomorphic(&g, &c));
            assert_eq!(c, c.canonical_form());
        }
    }

    #[test]
    fn insert_leaf_on_loop_gives_parallel_pair() {
        let g = loop_leaf().insert_leaf(0, 2);
        assert!(g.validate().is_empty());
        assert!(are_isomorphic(&g, &parallel_pair()));
        let h = loop_leaf().insert_leaf(1, 2);
        assert!(are_isomorphic(&h, &loop_bridge()));
    }
}
