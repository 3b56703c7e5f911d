//! The complexes S_{g,n} and their decorated lifts as explicit finite CW
//! 2-complexes.

mod build;
mod text;

use std::collections::BTreeMap;
use std::fmt;

pub use build::{build_s, build_s_decorated, build_with, detect_cells, BuildOptions};
pub(crate) use build::{Skeleton, State};

use crate::graph::{CanonicalKey, PantGraph};
use crate::moves::{DecoratedPantGraph, MoveSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexType {
    S,
    Sdec,
}

impl ComplexType {
    pub fn name(self) -> &'static str {
        match self {
            ComplexType::S => "S",
            ComplexType::Sdec => "Sdec",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    F,
    Tau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKind {
    Bigon,
    Triangle,
    DcSquare,
    Pentagon,
    AlgebraicSquare,
    MixedSquare,
}

impl CellKind {
    pub const ALL: [CellKind; 6] = [
        CellKind::Bigon,
        CellKind::Triangle,
        CellKind::DcSquare,
        CellKind::Pentagon,
        CellKind::AlgebraicSquare,
        CellKind::MixedSquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CellKind::Bigon => "bigon",
            CellKind::Triangle => "triangle",
            CellKind::DcSquare => "dcsquare",
            CellKind::Pentagon => "pentagon",
            CellKind::AlgebraicSquare => "algebraic",
            CellKind::MixedSquare => "mixed",
        }
    }

    pub fn from_name(s: &str) -> Option<CellKind> {
        CellKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Boundary length in S; decorated bigons and pentagons gain a τ edge.
    pub fn base_length(self) -> usize {
        match self {
            CellKind::Bigon => 2,
            CellKind::Triangle => 3,
            CellKind::DcSquare | CellKind::AlgebraicSquare | CellKind::MixedSquare => 4,
            CellKind::Pentagon => 5,
        }
    }
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub key: CanonicalKey,
    pub graph: PantGraph,
    /// Ordering position per edge of `graph`; empty in undecorated complexes.
    pub positions: Vec<u32>,
}

impl Vertex {
    pub fn decorated(&self) -> Option<DecoratedPantGraph> {
        if self.positions.is_empty() {
            None
        } else {
            Some(DecoratedPantGraph::from_key(&self.key))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub kind: EdgeKind,
    /// A move on the representative of `src` that lands on `dst`.
    pub witness: MoveSpec,
}

/// A directed traversal of an edge: `(edge id, +1 | -1)`.
pub type Letter = (usize, i8);

/// Certificate for an attached cell: replaying `moves` from the
/// representative of `vertex` traverses the boundary word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellTemplateMatch {
    pub vertex: usize,
    /// Graph edges (of the representative) carrying the F moves.
    pub support: Vec<usize>,
    pub moves: Vec<MoveSpec>,
}

impl CellTemplateMatch {
    pub fn new(vertex: usize, moves: Vec<MoveSpec>) -> Self {
        let mut support: Vec<usize> = moves
            .iter()
            .filter_map(|m| match m {
                MoveSpec::F { edge, .. } => Some(*edge),
                MoveSpec::Tau { .. } => None,
            })
            .collect();
        support.sort_unstable();
        support.dedup();
        CellTemplateMatch {
            vertex,
            support,
            moves,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub kind: CellKind,
    pub boundary: Vec<Letter>,
    pub witness: Option<CellTemplateMatch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoComplex {
    pub ty: ComplexType,
    pub g: u32,
    pub n: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub cells: Vec<Cell>,
}

/// How parallel F edges between the same pair of vertices are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeRule {
    /// One edge per isomorphism orbit of move instances (the default).
    Orbits,
    /// One edge per unordered pair of distinct vertices; self-loops dropped.
    SinglePerPair,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub vertices: usize,
    pub edges: usize,
    pub f_edges: usize,
    pub tau_edges: usize,
    pub cells: BTreeMap<CellKind, usize>,
}

impl Census {
    pub fn count(&self, kind: CellKind) -> usize {
        self.cells.get(&kind).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.cells.values().sum::<usize>() as i64
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = CellKind::ALL
            .iter()
            .map(|&k| format!("{}:{}", k.name(), self.count(k)))
            .collect();
        write!(
            f,
            "V={} E={} cells=<{}> chi={}",
            self.vertices,
            self.edges,
            cells.join(" "),
            self.euler_characteristic()
        )
    }
}

/// Rotation- and inversion-minimal form of a cyclic word.
pub fn cyclic_normal_form(word: &[Letter]) -> Vec<Letter> {
    if word.is_empty() {
        return Vec::new();
    }
    let inverse: Vec<Letter> = word.iter().rev().map(|&(e, s)| (e, -s)).collect();
    let mut best: Option<Vec<Letter>> = None;
    for w in [word, &inverse[..]] {
        for r in 0..w.len() {
            let cand: Vec<Letter> = w[r..].iter().chain(&w[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("nonempty")
}

/// Free and cyclic reduction of a word.
pub fn cyclically_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last().is_some_and(|&(e, s)| e == l.0 && s == -l.1) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start].0 == out[end - 1].0 && out[start].1 == -out[end - 1].1 {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

impl TwoComplex {
    pub fn census(&self) -> Census {
        let mut cells = BTreeMap::new();
        for c in &self.cells {
            *cells.entry(c.kind).or_insert(0) += 1;
        }
        Census {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            f_edges: self.edges.iter().filter(|e| e.kind == EdgeKind::F).count(),
            tau_edges: self
                .edges
                .iter()
                .filter(|e| e.kind == EdgeKind::Tau)
                .count(),
            cells,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.cells.len() as i64
    }

    pub fn vertex_index(&self, key: &CanonicalKey) -> Option<usize> {
        self.vertices.iter().position(|v| v.key == *key)
    }

    /// Start and end vertex of a directed letter.
    pub fn letter_ends(&self, (e, s): Letter) -> (usize, usize) {
        let edge = &self.edges[e];
        if s > 0 {
            (edge.src, edge.dst)
        } else {
            (edge.dst, edge.src)
        }
    }

    /// Whether `word` is a closed walk in the 1-skeleton.
    pub fn is_closed_walk(&self, word: &[Letter]) -> bool {
        if word
            .iter()
            .any(|&(e, s)| e >= self.edges.len() || s.abs() != 1)
        {
            return false;
        }
        if word.is_empty() {
            return true;
        }
        let start = self.letter_ends(word[0]).0;
        let mut at = start;
        for &l in word {
            let (a, b) = self.letter_ends(l);
            if a != at {
                return false;
            }
            at = b;
        }
        at == start
    }

    /// The complex with every 2-cell removed.
    pub fn one_skeleton(&self) -> TwoComplex {
        TwoComplex {
            cells: Vec::new(),
            ..self.clone()
        }
    }

    /// Re-expresses the complex under another edge rule.
    pub fn with_edge_rule(&self, rule: EdgeRule) -> TwoComplex {
        match rule {
            EdgeRule::Orbits => self.clone(),
            EdgeRule::SinglePerPair => {
                let mut pair_id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
                let mut edges: Vec<Edge> = Vec::new();
                for e in &self.edges {
                    if e.src == e.dst {
                        continue;
                    }
                    let pair = (e.src.min(e.dst), e.src.max(e.dst));
                    pair_id.entry(pair).or_insert_with(|| {
                        edges.push(e.clone());
                        edges.len() - 1
                    });
                }
                let cells = self
                    .cells
                    .iter()
                    .filter_map(|c| {
                        let word: Vec<Letter> = c
                            .boundary
                            .iter()
                            .filter_map(|&(e, s)| {
                                let edge = &self.edges[e];
                                if edge.src == edge.dst {
                                    return None;
                                }
                                let id = pair_id[&(edge.src.min(edge.dst), edge.src.max(edge.dst))];
                                let same = edges[id].src == edge.src;
                                Some((id, if same { s } else { -s }))
                            })
                            .collect();
                        let word = cyclically_reduce(&word);
                        (!word.is_empty()).then_some(Cell {
                            kind: c.kind,
                            boundary: word,
                            witness: None,
                        })
                    })
                    .collect();
                TwoComplex {
                    edges,
                    cells,
                    ..self.clone()
                }
            }
        }
    }

    /// Structural problems: out-of-range indices and cells whose boundary is
    /// not a closed walk. Empty for every complex produced by the builders.
    pub fn check(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nv = self.vertices.len();
        for (i, e) in self.edges.iter().enumerate() {
            if e.src >= nv || e.dst >= nv {
                out.push(format!("edge {i} has an endpoint out of range"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, c) in self.cells.iter().enumerate() {
            if !self.is_closed_walk(&c.boundary) {
                out.push(format!("cell {i} boundary is not a closed walk"));
            }
        }
        out
    }

    /// Indices of cells whose witness is missing or does not replay to the
    /// stored boundary word.
    pub fn uncertified_cells(&self) -> Vec<usize> {
        let sk = build::Skeleton::of(self);
        (0..self.cells.len())
            .filter(|&i| !build::certify(&sk, self, &self.cells[i]))
            .collect()
    }

    pub fn to_text(&self) -> String {
        text::write_complex(self)
    }

    pub fn parse(s: &str) -> Result<TwoComplex, crate::error::ParseError> {
        text::parse_complex(s)
    }

    pub fn to_dot(&self) -> String {
        text::write_dot(self)
    }
}

impl fmt::Display for TwoComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn euler_characteristic(complex: &TwoComplex) -> i64 {
    complex.euler_characteristic()
}

pub fn serialize(complex: &TwoComplex) -> String {
    complex.to_text()
}

pub fn deserialize(s: &str) -> Result<TwoComplex, crate::error::ParseError> {
    TwoComplex::parse(s)
}

pub fn export_dot(complex: &TwoComplex) -> String {
    complex.to_dot()
}
