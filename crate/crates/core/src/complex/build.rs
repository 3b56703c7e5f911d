//! Construction of the complexes: vertices from enumeration, edges as orbits
//! of move instances, cells as certified template walks.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{
    cyclic_normal_form, Cell, CellKind, CellTemplateMatch, ComplexType, Edge, EdgeKind, Letter,
    TwoComplex, Vertex,
};
use crate::error::{BuildError, DomainError, MoveError};
use crate::graph::{enumerate_graphs, CanonicalKey, Dart, PantGraph};
use crate::moves::{
    apply_f, apply_tau, decorations, eligible_edges, f_move_key, frame, reverse_variant,
    variant_joining, DecoratedPantGraph, MoveSpec, Variant,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub decorated: bool,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
    pub vertex_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            decorated: false,
            threads: 0,
            vertex_cap: 1_000_000,
        }
    }
}

/// A concrete vertex of either complex: a graph, possibly with positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum State {
    Plain(PantGraph),
    Dec(DecoratedPantGraph),
}

impl State {
    pub(crate) fn of_vertex(v: &Vertex) -> State {
        match v.decorated() {
            None => State::Plain(v.graph.clone()),
            Some(d) => State::Dec(d),
        }
    }

    pub(crate) fn graph(&self) -> &PantGraph {
        match self {
            State::Plain(g) => g,
            State::Dec(d) => d.base(),
        }
    }

    fn positions(&self) -> Option<&[u32]> {
        match self {
            State::Plain(_) => None,
            State::Dec(d) => Some(d.positions()),
        }
    }

    pub(crate) fn key(&self) -> CanonicalKey {
        match self {
            State::Plain(g) => g.canonical_key(),
            State::Dec(d) => d.canonical_key(),
        }
    }

    pub(crate) fn apply(&self, mv: MoveSpec) -> Result<State, MoveError> {
        match (self, mv) {
            (State::Plain(g), MoveSpec::F { edge, variant }) => {
                Ok(State::Plain(apply_f(g, edge, variant)?))
            }
            (State::Dec(d), MoveSpec::F { edge, variant }) => Ok(State::Dec(
                crate::moves::apply_decorated_f(d, edge, variant)?,
            )),
            (State::Dec(d), MoveSpec::Tau { i, j }) => Ok(State::Dec(apply_tau(d, i, j)?)),
            (State::Plain(_), MoveSpec::Tau { i, j }) => Err(MoveError::BadTransposition(i, j, 0)),
        }
    }
}

/// Identity of a move instance up to isomorphism of its source.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EdgeKey {
    F(CanonicalKey),
    Tau(CanonicalKey, u32, u32),
}

/// Forward key, reverse key, and the result of a move.
fn move_keys(st: &State, mv: MoveSpec) -> Result<(EdgeKey, EdgeKey, State), MoveError> {
    match mv {
        MoveSpec::F { edge, variant } => {
            let fk = f_move_key(st.graph(), st.positions(), edge, variant)?;
            let (_, back) = reverse_variant(st.graph(), edge, variant)?;
            let res = st.apply(mv)?;
            let rk = f_move_key(res.graph(), res.positions(), edge, back)?;
            Ok((EdgeKey::F(fk), EdgeKey::F(rk), res))
        }
        MoveSpec::Tau { i, j } => {
            let (i, j) = (i.min(j), i.max(j));
            let res = st.apply(mv)?;
            Ok((
                EdgeKey::Tau(st.key(), i, j),
                EdgeKey::Tau(res.key(), i, j),
                res,
            ))
        }
    }
}

/// Lookup tables for walking the 1-skeleton with concrete graphs.
pub(crate) struct Skeleton {
    edge_index: BTreeMap<EdgeKey, usize>,
}

impl Skeleton {
    pub(crate) fn of(complex: &TwoComplex) -> Skeleton {
        let edge_index = complex
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let st = State::of_vertex(&complex.vertices[e.src]);
                let (fk, rk, _) = move_keys(&st, e.witness).ok()?;
                Some((fk.min(rk), i))
            })
            .collect();
        Skeleton { edge_index }
    }

    /// Applies `mv` and reports the traversed edge.
    pub(crate) fn step(&self, st: &State, mv: MoveSpec) -> Option<(State, Letter)> {
        let (fk, rk, res) = move_keys(st, mv).ok()?;
        let sign = if fk <= rk { 1 } else { -1 };
        let id = *self.edge_index.get(&fk.min(rk))?;
        Some((res, (id, sign)))
    }

    /// Replays a move word from `start`; returns the boundary word if the
    /// walk closes up.
    pub(crate) fn trace(&self, start: &State, moves: &[MoveSpec]) -> Option<Vec<Letter>> {
        let mut cur = start.clone();
        let mut word = Vec::with_capacity(moves.len());
        for &mv in moves {
            let (next, l) = self.step(&cur, mv)?;
            word.push(l);
            cur = next;
        }
        (cur.key() == start.key()).then_some(word)
    }
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

pub fn build_s(g: u32, n: u32) -> Result<TwoComplex, DomainError> {
    build_with(g, n, &BuildOptions::default()).map_err(|e| match e {
        BuildError::Domain(d) => d,
        BuildError::VertexCap { .. } => unreachable!("default cap exceeds every undecorated build"),
    })
}

pub fn build_s_decorated(g: u32, n: u32, vertex_cap: usize) -> Result<TwoComplex, BuildError> {
    build_with(
        g,
        n,
        &BuildOptions {
            decorated: true,
            vertex_cap,
            ..BuildOptions::default()
        },
    )
}

pub fn build_with(g: u32, n: u32, opts: &BuildOptions) -> Result<TwoComplex, BuildError> {
    with_pool(opts.threads, || build_inner(g, n, opts))
}

fn build_inner(g: u32, n: u32, opts: &BuildOptions) -> Result<TwoComplex, BuildError> {
    let bases = enumerate_graphs(g, n)?;
    let cap = opts.vertex_cap;
    if bases.len() > cap {
        return Err(BuildError::VertexCap { cap });
    }
    let mut vertices: Vec<Vertex> = if opts.decorated {
        let mut out = Vec::new();
        for b in &bases {
            let ds = decorations(b, cap - out.len()).ok_or(BuildError::VertexCap { cap })?;
            out.extend(ds.into_iter().map(|d| Vertex {
                key: d.canonical_key(),
                graph: d.base().clone(),
                positions: d.positions().to_vec(),
            }));
        }
        out
    } else {
        bases
            .into_iter()
            .map(|b| Vertex {
                key: b.canonical_key(),
                graph: b,
                positions: Vec::new(),
            })
            .collect()
    };
    vertices.sort_by(|a, b| a.key.cmp(&b.key));
    let edges = build_edges(&vertices);
    let mut complex = TwoComplex {
        ty: if opts.decorated {
            ComplexType::Sdec
        } else {
            ComplexType::S
        },
        g,
        n,
        vertices,
        edges,
        cells: Vec::new(),
    };
    complex.cells = detect_cells(&complex);
    Ok(complex)
}

fn vertex_moves(st: &State) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    for edge in eligible_edges(st.graph()) {
        for variant in Variant::BOTH {
            out.push(MoveSpec::F { edge, variant });
        }
    }
    if let State::Dec(d) = st {
        let k = d.num_positions();
        for i in 1..=k {
            for j in i + 1..=k {
                out.push(MoveSpec::Tau { i, j });
            }
        }
    }
    out
}

fn build_edges(vertices: &[Vertex]) -> Vec<Edge> {
    let index: BTreeMap<&CanonicalKey, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (&v.key, i))
        .collect();
    let found: Vec<Vec<(EdgeKey, Edge)>> = vertices
        .par_iter()
        .enumerate()
        .map(|(src, v)| {
            let st = State::of_vertex(v);
            vertex_moves(&st)
                .into_iter()
                .filter_map(|mv| {
                    let (fk, rk, res) = move_keys(&st, mv).expect("enumerated move applies");
                    if fk > rk {
                        return None;
                    }
                    let dst = index[&res.key()];
                    let kind = match mv {
                        MoveSpec::F { .. } => EdgeKind::F,
                        MoveSpec::Tau { .. } => EdgeKind::Tau,
                    };
                    Some((
                        fk,
                        Edge {
                            src,
                            dst,
                            kind,
                            witness: mv,
                        },
                    ))
                })
                .collect()
        })
        .collect();
    let mut orbits: BTreeMap<EdgeKey, Edge> = BTreeMap::new();
    for (k, e) in found.into_iter().flatten() {
        orbits.entry(k).or_insert(e);
    }
    orbits.into_values().collect()
}

/// Finds and certifies every cell of the complex from its vertices and
/// edges; existing cells are ignored. One cell per boundary loop.
pub fn detect_cells(complex: &TwoComplex) -> Vec<Cell> {
    let sk = Skeleton::of(complex);
    let found: Vec<Vec<(CellKind, Vec<Letter>, CellTemplateMatch)>> = complex
        .vertices
        .par_iter()
        .enumerate()
        .map(|(vi, v)| {
            let st = State::of_vertex(v);
            templates(&st)
                .into_iter()
                .filter_map(|(kind, moves)| {
                    let word = sk.trace(&st, &moves)?;
                    Some((kind, word, CellTemplateMatch::new(vi, moves)))
                })
                .collect()
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut cells = Vec::new();
    for (kind, word, m) in found.into_iter().flatten() {
        if seen.insert(cyclic_normal_form(&word)) {
            cells.push(Cell {
                kind,
                boundary: word,
                witness: Some(m),
            });
        }
    }
    cells
}

/// Replays a cell's witness and checks it traverses the stored boundary.
pub(crate) fn certify(sk: &Skeleton, complex: &TwoComplex, cell: &Cell) -> bool {
    let Some(m) = &cell.witness else {
        return false;
    };
    let st = State::of_vertex(&complex.vertices[m.vertex]);
    sk.trace(&st, &m.moves).as_deref() == Some(&cell.boundary[..])
}

fn endpoints(g: &PantGraph, e: usize) -> [usize; 2] {
    let [a, b] = g.edges()[e];
    let (x, y) = (g.vertex_of(a), g.vertex_of(b));
    [x.min(y), x.max(y)]
}

fn templates(st: &State) -> Vec<(CellKind, Vec<MoveSpec>)> {
    let g = st.graph();
    let elig = eligible_edges(g);
    let pos = |e: usize| st.positions().map(|p| p[e]);
    let f = |edge, variant| MoveSpec::F { edge, variant };
    let mut out = Vec::new();

    for (i, &e) in elig.iter().enumerate() {
        for &h in &elig[i + 1..] {
            if endpoints(g, e) != endpoints(g, h) {
                continue;
            }
            let [h1, h2] = g.edges()[h];
            let v = variant_joining(g, e, h1, h2).expect("parallel edge darts sit at both ends");
            let moves = match (pos(e), pos(h)) {
                (Some(pe), Some(ph)) => vec![
                    f(e, v),
                    MoveSpec::Tau {
                        i: pe.min(ph),
                        j: pe.max(ph),
                    },
                    f(e, v),
                ],
                _ => vec![f(e, v), f(e, v)],
            };
            out.push((CellKind::Bigon, moves));
        }
    }

    for &e in &elig {
        let fr = frame(g, e).expect("eligible");
        let m1 = f(e, Variant::CrossAd);
        let s1 = st.apply(m1).expect("eligible");
        let v2 = variant_joining(s1.graph(), e, fr.a, fr.c).expect("still eligible");
        let s2 = s1.apply(f(e, v2)).expect("still eligible");
        let v3 = variant_joining(s2.graph(), e, fr.a, fr.b).expect("still eligible");
        out.push((CellKind::Triangle, vec![m1, f(e, v2), f(e, v3)]));
    }

    for (i, &e) in elig.iter().enumerate() {
        for &h in &elig[i + 1..] {
            let (pe, ph) = (endpoints(g, e), endpoints(g, h));
            if pe.iter().any(|v| ph.contains(v)) {
                continue;
            }
            for v in Variant::BOTH {
                for w in Variant::BOTH {
                    out.push((CellKind::DcSquare, vec![f(e, v), f(h, w), f(e, v), f(h, w)]));
                }
            }
        }
    }

    for (i, &e) in elig.iter().enumerate() {
        for &h in &elig[i + 1..] {
            for moves in pentagons(st, e, h) {
                out.push((CellKind::Pentagon, moves));
            }
        }
    }

    if let State::Dec(d) = st {
        let k = d.num_positions();
        let transpositions: Vec<(u32, u32)> = (1..=k)
            .flat_map(|i| (i + 1..=k).map(move |j| (i, j)))
            .collect();
        let tau = |(i, j): (u32, u32)| MoveSpec::Tau { i, j };
        for &t in &transpositions {
            for &u in &transpositions {
                if t == u {
                    continue;
                }
                let swap = |x: u32| {
                    if x == t.0 {
                        t.1
                    } else if x == t.1 {
                        t.0
                    } else {
                        x
                    }
                };
                let (l, m) = (swap(u.0), swap(u.1));
                let conj = (l.min(m), l.max(m));
                out.push((
                    CellKind::AlgebraicSquare,
                    vec![tau(t), tau(u), tau(t), tau(conj)],
                ));
            }
        }
        for &e in &elig {
            for v in Variant::BOTH {
                for &t in &transpositions {
                    out.push((
                        CellKind::MixedSquare,
                        vec![f(e, v), tau(t), f(e, v), tau(t)],
                    ));
                }
            }
        }
    }
    out
}

/// Bitmask (over positions in `order`) of the outer darts behind `d`.
fn behind(g: &PantGraph, order: &[Dart; 5], d: Dart) -> u8 {
    if let Some(p) = order.iter().position(|&o| o == d) {
        return 1 << p;
    }
    g.siblings(g.partner(d))
        .into_iter()
        .fold(0, |acc, s| acc | behind(g, order, s))
}

/// Whether a proper subset of Z/5 is a cyclic interval.
fn is_interval(mask: u8) -> bool {
    (0..5)
        .filter(|&i| mask & (1 << i) != 0 && mask & (1 << ((i + 1) % 5)) == 0)
        .count()
        == 1
}

/// The pentagon walks supported on adjacent edges `e` and `h`: one per cyclic
/// order of the five surrounding darts compatible with the current tree.
fn pentagons(st: &State, e: usize, h: usize) -> Vec<Vec<MoveSpec>> {
    let g = st.graph();
    let (pe, ph) = (endpoints(g, e), endpoints(g, h));
    let shared: Vec<usize> = pe.iter().copied().filter(|v| ph.contains(v)).collect();
    let &[m] = shared.as_slice() else {
        return Vec::new();
    };
    let dart_at = |edge: usize, v: usize| {
        let [a, b] = g.edges()[edge];
        if g.vertex_of(a) == v {
            a
        } else {
            b
        }
    };
    let p = if pe[0] == m { pe[1] } else { pe[0] };
    let q = if ph[0] == m { ph[1] } else { ph[0] };
    let ab = g.siblings(dart_at(e, p));
    let cd = g.siblings(dart_at(h, q));
    let (em, hm) = (dart_at(e, m), dart_at(h, m));
    let x = g.vertices()[m]
        .iter()
        .copied()
        .find(|&d| d != em && d != hm)
        .expect("trivalent");
    let mut out = Vec::new();
    for (a1, a2) in [(ab[0], ab[1]), (ab[1], ab[0])] {
        for (c1, c2) in [(cd[0], cd[1]), (cd[1], cd[0])] {
            let order = [a1, a2, x, c1, c2];
            let mut cur = st.clone();
            let mut moves = Vec::new();
            for edge in [e, h, e, h, e] {
                let fr = frame(cur.graph(), edge).expect("local tree keeps both edges eligible");
                let la = behind(cur.graph(), &order, fr.a);
                let y = [fr.c, fr.d]
                    .into_iter()
                    .find(|&y| is_interval(la | behind(cur.graph(), &order, y)))
                    .expect("exactly one planar recoupling");
                let variant = variant_joining(cur.graph(), edge, fr.a, y).expect("opposite ends");
                let mv = MoveSpec::F { edge, variant };
                cur = cur.apply(mv).expect("eligible");
                moves.push(mv);
            }
            if let (State::Dec(d), true) = (st, cur.key() != st.key()) {
                let (i, j) = (d.position_of(e), d.position_of(h));
                moves.push(MoveSpec::Tau {
                    i: i.min(j),
                    j: i.max(j),
                });
            }
            out.push(moves);
        }
    }
    out
}
