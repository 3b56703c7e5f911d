//! F moves, their decorated lifts, and τ transpositions.
//!
//! Moves never renumber darts. An F move on edge `e` only repartitions the
//! six darts at its two endpoints, and the new edge reuses the darts of `e`,
//! so dart ids can be tracked along any sequence of moves.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{MoveError, ParseError};
use crate::graph::canon::{canonicalize, CanonicalKey};
use crate::graph::{Dart, PantGraph};

/// Which recoupling of `(ab)(cd)` an F move produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// `(ab)(cd) -> (ad)(bc)`
    CrossAd,
    /// `(ab)(cd) -> (ac)(bd)`
    CrossAc,
}

impl Variant {
    pub const BOTH: [Variant; 2] = [Variant::CrossAd, Variant::CrossAc];

    fn tag(self) -> &'static str {
        match self {
            Variant::CrossAd => "AD",
            Variant::CrossAc => "AC",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveSpec {
    F { edge: usize, variant: Variant },
    Tau { i: u32, j: u32 },
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveSpec::F { edge, variant } => write!(f, "F e={edge} v={}", variant.tag()),
            MoveSpec::Tau { i, j } => write!(f, "tau {i} {j}"),
        }
    }
}

/// Parses a whitespace-separated move word such as `F e=3 v=AD tau 1 2`.
pub fn parse_moves(s: &str) -> Result<Vec<MoveSpec>, ParseError> {
    let toks: Vec<(usize, &str)> = s
        .split_whitespace()
        .map(|t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
        .collect();
    let err = |i: usize, m: &str| {
        let col = toks.get(i).map_or(s.len(), |t| t.0);
        ParseError::new(1, col + 1, m)
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        match toks[i].1 {
            "F" => {
                let edge = toks
                    .get(i + 1)
                    .and_then(|t| t.1.strip_prefix("e="))
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| err(i + 1, "expected `e=<edge>`"))?;
                let variant = match toks.get(i + 2).map(|t| t.1) {
                    Some("v=AD") => Variant::CrossAd,
                    Some("v=AC") => Variant::CrossAc,
                    _ => return Err(err(i + 2, "expected `v=AD` or `v=AC`")),
                };
                out.push(MoveSpec::F { edge, variant });
                i += 3;
            }
            "tau" => {
                let num = |k: usize| {
                    toks.get(k)
                        .and_then(|t| t.1.parse().ok())
                        .ok_or_else(|| err(k, "expected a position"))
                };
                out.push(MoveSpec::Tau {
                    i: num(i + 1)?,
                    j: num(i + 2)?,
                });
                i += 3;
            }
            _ => return Err(err(i, "expected `F` or `tau`")),
        }
    }
    Ok(out)
}

impl FromStr for MoveSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_moves(s)?.as_slice() {
            [m] => Ok(*m),
            _ => Err(ParseError::new(1, 1, "expected exactly one move")),
        }
    }
}

/// The darts around an eligible edge: `e1` at `v1` with outer darts `a, b`,
/// `e2` at `v2` with outer darts `c, d`, both in block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frame {
    pub v1: usize,
    pub v2: usize,
    pub e1: Dart,
    pub e2: Dart,
    pub a: Dart,
    pub b: Dart,
    pub c: Dart,
    pub d: Dart,
}

impl Frame {
    pub fn outer(&self) -> [Dart; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The two new vertex blocks produced by `variant`.
    fn blocks(&self, variant: Variant) -> [Vec<Dart>; 2] {
        match variant {
            Variant::CrossAd => [vec![self.a, self.d, self.e1], vec![self.c, self.b, self.e2]],
            Variant::CrossAc => [vec![self.a, self.c, self.e1], vec![self.b, self.d, self.e2]],
        }
    }

    /// The two outer dart pairs that share a vertex after `variant`.
    pub fn target_pairs(&self, variant: Variant) -> [[Dart; 2]; 2] {
        match variant {
            Variant::CrossAd => [[self.a, self.d], [self.c, self.b]],
            Variant::CrossAc => [[self.a, self.c], [self.b, self.d]],
        }
    }
}

pub fn frame(graph: &PantGraph, edge: usize) -> Result<Frame, MoveError> {
    let &[e1, e2] = graph.edges().get(edge).ok_or(MoveError::NoSuchEdge(edge))?;
    if !graph.is_internal(edge) {
        return Err(MoveError::LeafEdge(edge));
    }
    if graph.is_loop(edge) {
        return Err(MoveError::LoopEdge(edge));
    }
    let (ab, cd) = (graph.siblings(e1), graph.siblings(e2));
    Ok(Frame {
        v1: graph.vertex_of(e1),
        v2: graph.vertex_of(e2),
        e1,
        e2,
        a: ab[0],
        b: ab[1],
        c: cd[0],
        d: cd[1],
    })
}

/// Internal edges with two distinct endpoints, in edge-id order.
pub fn eligible_edges(graph: &PantGraph) -> Vec<usize> {
    (0..graph.edges().len())
        .filter(|&e| graph.is_internal(e) && !graph.is_loop(e))
        .collect()
}

pub fn apply_f(graph: &PantGraph, edge: usize, variant: Variant) -> Result<PantGraph, MoveError> {
    let fr = frame(graph, edge)?;
    let [n1, n2] = fr.blocks(variant);
    let mut vertices = graph.vertices().to_vec();
    vertices[fr.v1] = n1;
    vertices[fr.v2] = n2;
    Ok(graph.with_vertices(vertices))
}

/// The variant after which outer darts `x` and `y` share a vertex.
pub fn variant_joining(
    graph: &PantGraph,
    edge: usize,
    x: Dart,
    y: Dart,
) -> Result<Variant, MoveError> {
    let fr = frame(graph, edge)?;
    for v in Variant::BOTH {
        if fr
            .target_pairs(v)
            .iter()
            .any(|p| (p[0] == x && p[1] == y) || (p[0] == y && p[1] == x))
        {
            return Ok(v);
        }
    }
    Err(MoveError::BadRecoupling(x, y))
}

/// The move undoing `(edge, variant)`: applied to the result it restores the
/// original vertex partition around `edge`. With the block order used here
/// this is always `variant` itself.
pub fn reverse_variant(
    graph: &PantGraph,
    edge: usize,
    variant: Variant,
) -> Result<(PantGraph, Variant), MoveError> {
    let fr = frame(graph, edge)?;
    let result = apply_f(graph, edge, variant)?;
    let back = variant_joining(&result, edge, fr.a, fr.b)?;
    Ok((result, back))
}

pub fn all_moves(graph: &PantGraph) -> Vec<(MoveSpec, PantGraph)> {
    eligible_edges(graph)
        .into_iter()
        .flat_map(|edge| {
            Variant::BOTH.into_iter().map(move |variant| {
                (
                    MoveSpec::F { edge, variant },
                    apply_f(graph, edge, variant).expect("eligible"),
                )
            })
        })
        .collect()
}

/// A pant graph whose internal edges are numbered `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedPantGraph {
    base: PantGraph,
    /// Position per edge id; 0 on leaf edges.
    position: Vec<u32>,
}

impl DecoratedPantGraph {
    /// Decorates `base` by numbering its internal edges in the given order.
    pub fn new(base: PantGraph, internal_order: &[usize]) -> Result<Self, MoveError> {
        let internal = base.internal_edges();
        let mut sorted = internal_order.to_vec();
        sorted.sort_unstable();
        if sorted != internal {
            return Err(MoveError::NoSuchPosition(internal_order.len() as u32));
        }
        let mut position = vec![0; base.edges().len()];
        for (i, &e) in internal_order.iter().enumerate() {
            position[e] = i as u32 + 1;
        }
        Ok(DecoratedPantGraph { base, position })
    }

    /// Numbers internal edges in edge-id order.
    pub fn natural(base: PantGraph) -> Self {
        let order = base.internal_edges();
        Self::new(base, &order).expect("internal edges")
    }

    pub fn base(&self) -> &PantGraph {
        &self.base
    }

    pub fn positions(&self) -> &[u32] {
        &self.position
    }

    pub fn position_of(&self, edge: usize) -> u32 {
        self.position[edge]
    }

    pub fn edge_at(&self, pos: u32) -> Option<usize> {
        if pos == 0 {
            return None;
        }
        self.position.iter().position(|&p| p == pos)
    }

    pub fn num_positions(&self) -> u32 {
        self.position.iter().filter(|&&p| p > 0).count() as u32
    }

    /// Internal edges listed by position.
    pub fn ordering(&self) -> Vec<usize> {
        (1..=self.num_positions())
            .map(|p| self.edge_at(p).expect("bijective"))
            .collect()
    }

    pub(crate) fn dart_colors(&self) -> impl Fn(Dart) -> u32 + '_ {
        move |d| 4 * self.position[self.base.edge_of(d)]
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canonicalize(&self.base.colored(self.dart_colors())).key
    }

    pub fn automorphism_count(&self) -> u64 {
        canonicalize(&self.base.colored(self.dart_colors())).automorphisms
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    pub fn from_key(key: &CanonicalKey) -> Self {
        Self::try_from_key(key).expect("well-formed canonical key")
    }

    pub fn try_from_key(key: &CanonicalKey) -> Option<Self> {
        let (base, colors) = PantGraph::try_from_key(key)?;
        let position = base.edges().iter().map(|&[a, _]| colors[a] / 4).collect();
        Some(DecoratedPantGraph { base, position })
    }

    pub fn canonical_form(&self) -> Self {
        Self::from_key(&self.canonical_key())
    }

    pub(crate) fn with_base(&self, base: PantGraph) -> Self {
        DecoratedPantGraph {
            base,
            position: self.position.clone(),
        }
    }
}

/// Decorated F move on `edge`; the new edge keeps the old edge's number.
pub fn apply_decorated_f(
    graph: &DecoratedPantGraph,
    edge: usize,
    variant: Variant,
) -> Result<DecoratedPantGraph, MoveError> {
    Ok(graph.with_base(apply_f(&graph.base, edge, variant)?))
}

/// `F_i`: the decorated F move on the edge at position `i`.
pub fn apply_decorated_f_at(
    graph: &DecoratedPantGraph,
    i: u32,
    variant: Variant,
) -> Result<DecoratedPantGraph, MoveError> {
    let edge = graph.edge_at(i).ok_or(MoveError::NoSuchPosition(i))?;
    apply_decorated_f(graph, edge, variant)
}

pub fn apply_tau(
    graph: &DecoratedPantGraph,
    i: u32,
    j: u32,
) -> Result<DecoratedPantGraph, MoveError> {
    let k = graph.num_positions();
    if i == j || i == 0 || j == 0 || i > k || j > k {
        return Err(MoveError::BadTransposition(i, j, k));
    }
    let position = graph
        .position
        .iter()
        .map(|&p| {
            if p == i {
                j
            } else if p == j {
                i
            } else {
                p
            }
        })
        .collect();
    Ok(DecoratedPantGraph {
        base: graph.base.clone(),
        position,
    })
}

/// Every decoration of `base`, one per decoration-preserving isomorphism
/// class, sorted by key. Returns `None` once more than `cap` classes exist.
pub fn decorations(base: &PantGraph, cap: usize) -> Option<Vec<DecoratedPantGraph>> {
    let internal = base.internal_edges();
    let mut out = BTreeMap::new();
    let mut perm = internal.clone();
    let mut c = vec![0usize; perm.len()];
    let mut visit = |p: &[usize]| {
        let d = DecoratedPantGraph::new(base.clone(), p).expect("permutation of internal edges");
        let k = d.canonical_key();
        out.entry(k)
            .or_insert_with_key(DecoratedPantGraph::from_key);
        out.len() <= cap
    };
    if !visit(&perm) {
        return None;
    }
    // Heap's algorithm
    let mut i = 0;
    while i < perm.len() {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if !visit(&perm) {
                return None;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Some(out.into_values().collect())
}

/// Orbit key of a directed F move: the source graph with the move edge and
/// the target coupling painted on its darts. Two move instances get equal
/// keys iff an isomorphism of their sources carries one to the other.
pub fn f_move_key(
    graph: &PantGraph,
    positions: Option<&[u32]>,
    edge: usize,
    variant: Variant,
) -> Result<CanonicalKey, MoveError> {
    let fr = frame(graph, edge)?;
    let [p, q] = fr.target_pairs(variant);
    let base = |d: Dart| positions.map_or(0, |pos| 4 * pos[graph.edge_of(d)]);
    let paint = |first: [Dart; 2], second: [Dart; 2]| {
        canonicalize(&graph.colored(|d| {
            let mark = if d == fr.e1 || d == fr.e2 {
                1
            } else if first.contains(&d) {
                2
            } else if second.contains(&d) {
                3
            } else {
                0
            };
            base(d) + mark
        }))
        .key
    };
    Ok(paint(p, q).min(paint(q, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;

    fn partition(g: &PantGraph) -> Vec<Vec<Dart>> {
        g.vertices()
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect()
    }

    #[test]
    fn eligible_edges_skip_loops_and_leaves() {
        assert!(eligible_edges(&loop_leaf()).is_empty());
        assert_eq!(eligible_edges(&coupling(1, 2, 3, 4)), vec![4]);
        assert_eq!(eligible_edges(&dumbbell()), vec![2]);
        assert_eq!(eligible_edges(&theta()).len(), 3);
    }

    #[test]
    fn f_on_four_holed_sphere_recouples() {
        let g = coupling(1, 2, 3, 4);
        let ad = apply_f(&g, 4, Variant::CrossAd).unwrap();
        let ac = apply_f(&g, 4, Variant::CrossAc).unwrap();
        assert!(ad.is_isomorphic(&coupling(1, 4, 2, 3)));
        assert!(ac.is_isomorphic(&coupling(1, 3, 2, 4)));
    }

    #[test]
    fn f_on_theta_gives_dumbbell_or_theta() {
        let t = theta();
        let results: Vec<bool> = Variant::BOTH
            .iter()
            .map(|&v| apply_f(&t, 0, v).unwrap().is_isomorphic(&dumbbell()))
            .collect();
        // one variant pulls both other edges into loops, the other keeps a theta
        assert_eq!(results.iter().filter(|&&b| b).count(), 1);
    }

    #[test]
    fn errors_on_ineligible_edges() {
        assert_eq!(
            apply_f(&loop_leaf(), 0, Variant::CrossAd),
            Err(MoveError::LoopEdge(0))
        );
        assert_eq!(
            apply_f(&loop_leaf(), 1, Variant::CrossAd),
            Err(MoveError::LeafEdge(1))
        );
        assert_eq!(
            apply_f(&loop_leaf(), 7, Variant::CrossAd),
            Err(MoveError::NoSuchEdge(7))
        );
    }

    #[test]
    fn reverse_restores_partition() {
        for g in [
            coupling(1, 2, 3, 4),
            theta(),
            caterpillar(1, 2, 3, 4, 5),
            parallel_pair(),
        ] {
            for (spec, _) in all_moves(&g) {
                let MoveSpec::F { edge, variant } = spec else {
                    unreachable!()
                };
                let (r, back) = reverse_variant(&g, edge, variant).unwrap();
                assert_eq!(partition(&apply_f(&r, edge, back).unwrap()), partition(&g));
            }
        }
    }

    #[test]
    fn each_variant_is_an_involution() {
        for g in [
            coupling(1, 2, 3, 4),
            theta(),
            caterpillar(1, 2, 3, 4, 5),
            parallel_pair(),
        ] {
            for e in eligible_edges(&g) {
                for v in Variant::BOTH {
                    let twice = apply_f(&apply_f(&g, e, v).unwrap(), e, v).unwrap();
                    assert_eq!(partition(&twice), partition(&g));
                }
            }
        }
    }

    #[test]
    fn all_moves_counts() {
        assert!(all_moves(&loop_leaf()).is_empty());
        assert_eq!(all_moves(&coupling(1, 2, 3, 4)).len(), 2);
        assert_eq!(all_moves(&caterpillar(1, 2, 3, 4, 5)).len(), 4);
    }

    #[test]
    fn tau_is_an_involution_and_conjugates() {
        let d = DecoratedPantGraph::natural(theta());
        assert_eq!(d.ordering(), vec![0, 1, 2]);
        let t = apply_tau(&d, 1, 2).unwrap();
        assert_eq!(t.ordering(), vec![1, 0, 2]);
        assert_eq!(apply_tau(&t, 1, 2).unwrap(), d);
        let conj = apply_tau(
            &apply_tau(&apply_tau(&d, 1, 2).unwrap(), 2, 3).unwrap(),
            1,
            2,
        )
        .unwrap();
        assert_eq!(conj, apply_tau(&d, 1, 3).unwrap());
        assert!(apply_tau(&d, 1, 1).is_err());
        assert!(apply_tau(&d, 1, 4).is_err());
    }

    #[test]
    fn decorated_f_keeps_number() {
        let d = DecoratedPantGraph::natural(coupling(1, 2, 3, 4));
        let r = apply_decorated_f_at(&d, 1, Variant::CrossAd).unwrap();
        assert_eq!(r.edge_at(1), Some(4));
        assert!(r
            .base()
            .is_isomorphic(&apply_f(d.base(), 4, Variant::CrossAd).unwrap()));
    }

    #[test]
    fn theta_decorations_collapse_under_symmetry() {
        assert_eq!(decorations(&theta(), 100).unwrap().len(), 1);
        assert_eq!(decorations(&dumbbell(), 100).unwrap().len(), 3);
        assert_eq!(
            decorations(&caterpillar(1, 2, 3, 4, 5), 100).unwrap().len(),
            2
        );
        assert!(decorations(&dumbbell(), 2).is_none());
    }

    #[test]
    fn move_text_round_trip() {
        let w = parse_moves("F e=3 v=AD  tau 1 2\nF e=0 v=AC").unwrap();
        assert_eq!(
            w,
            vec![
                MoveSpec::F {
                    edge: 3,
                    variant: Variant::CrossAd
                },
                MoveSpec::Tau { i: 1, j: 2 },
                MoveSpec::F {
                    edge: 0,
                    variant: Variant::CrossAc
                },
            ]
        );
        let s: Vec<String> = w.iter().map(|m| m.to_string()).collect();
        assert_eq!(parse_moves(&s.join(" ")).unwrap(), w);
        assert_eq!(parse_moves("F e=x v=AD").unwrap_err().column, 3);
    }
}
