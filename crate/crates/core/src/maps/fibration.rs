//! Fibers, liftings and the fibration criterion for cellular maps.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;

use super::{leaf_adjacent, CellImage, CellularMap, EdgeImage, MapKind};
use crate::complex::{cyclic_normal_form, Cell, Edge, Letter, Skeleton, State, TwoComplex};
use crate::error::MapError;
use crate::moves::MoveSpec;
use crate::verify::{
    check_simply_connected_with, connected_components, fill, spanning_tree, FillingLimits, Limits,
    Relators,
};

/// The preimage of a target vertex: source vertices over it, the edges that
/// collapse onto it and the cells that map onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub vertex: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub cells: Vec<usize>,
    /// The same data as a complex with dense ids.
    pub complex: TwoComplex,
}

impl Fiber {
    pub fn components(&self) -> usize {
        connected_components(&self.complex).len()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }
}

pub fn fiber(map: &CellularMap, vertex: usize) -> Result<Fiber, MapError> {
    if vertex >= map.target.vertices.len() {
        return Err(MapError::MissingImage(format!("vertex {vertex}")));
    }
    let src = &map.source;
    let vertices: Vec<usize> = (0..src.vertices.len())
        .filter(|&v| map.vertex_image[v] == vertex)
        .collect();
    let edges: Vec<usize> = (0..src.edges.len())
        .filter(|&e| map.edge_image[e] == EdgeImage::Collapse(vertex))
        .collect();
    let cells: Vec<usize> = (0..src.cells.len())
        .filter(|&c| map.cell_image[c] == CellImage::Vertex(vertex))
        .collect();
    let vid: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let eid: BTreeMap<usize, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let complex = TwoComplex {
        ty: src.ty,
        g: src.g,
        n: src.n,
        vertices: vertices.iter().map(|&v| src.vertices[v].clone()).collect(),
        edges: edges
            .iter()
            .map(|&e| {
                let x = &src.edges[e];
                Edge {
                    src: vid[&x.src],
                    dst: vid[&x.dst],
                    ..x.clone()
                }
            })
            .collect(),
        cells: cells
            .iter()
            .map(|&c| {
                let x = &src.cells[c];
                Cell {
                    kind: x.kind,
                    boundary: x.boundary.iter().map(|&(e, s)| (eid[&e], s)).collect(),
                    witness: None,
                }
            })
            .collect(),
    };
    Ok(Fiber {
        vertex,
        vertices,
        edges,
        cells,
        complex,
    })
}

/// Source edges whose image traverses `edge`.
pub fn liftings(map: &CellularMap, edge: usize) -> Vec<usize> {
    (0..map.source.edges.len())
        .filter(|&e| matches!(map.edge_image[e], EdgeImage::Edge(t, _) if t == edge))
        .collect()
}

/// One lifted move: a directed source letter whose image is the target edge
/// in its forward direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingInstance {
    /// For contraction maps, the edge of the target representative that
    /// received the new leaf.
    pub inserted_on: Option<usize>,
    pub letter: Letter,
}

/// Move-level liftings of a target edge. For `phi` these come from inserting
/// the last leaf on every other edge of the target representative and
/// replaying the move; elsewhere they are the source edges over it.
pub fn lifting_instances(map: &CellularMap, edge: usize) -> Result<Vec<LiftingInstance>, MapError> {
    let t = map
        .target
        .edges
        .get(edge)
        .ok_or_else(|| MapError::MissingImage(format!("edge {edge}")))?;
    if map.kind != MapKind::Phi {
        return Ok(liftings(map, edge)
            .into_iter()
            .map(|e| {
                let EdgeImage::Edge(_, s) = map.edge_image[e] else {
                    unreachable!()
                };
                LiftingInstance {
                    inserted_on: None,
                    letter: (e, s),
                }
            })
            .collect());
    }
    let MoveSpec::F { edge: moved, .. } = t.witness else {
        return Ok(Vec::new());
    };
    let base = &map.target.vertices[t.src].graph;
    let sk = Skeleton::of(&map.source);
    let mut out = Vec::new();
    for x in (0..base.edges().len()).filter(|&x| x != moved) {
        let lifted = base.insert_leaf(x, map.source.n);
        let (_, letter) = sk
            .step(&State::Plain(lifted), t.witness)
            .ok_or_else(|| MapError::MissingImage(format!("lift of edge {edge} over {x}")))?;
        out.push(LiftingInstance {
            inserted_on: Some(x),
            letter,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Proven,
    Unresolved,
    Failed,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proven => "proven",
            Status::Unresolved => "unresolved",
            Status::Failed => "failed",
            Status::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub subject: String,
    pub status: Status,
    pub detail: String,
}

impl Condition {
    fn new(
        name: &'static str,
        subject: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
    ) -> Self {
        Condition {
            name,
            subject: subject.into(),
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub header: String,
    pub conditions: Vec<Condition>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.conditions
            .iter()
            .filter(|c| c.status == status)
            .count()
    }

    /// No condition failed or stayed unresolved.
    pub fn all_proven(&self) -> bool {
        self.count(Status::Failed) == 0 && self.count(Status::Unresolved) == 0
    }

    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Condition> + 'a {
        self.conditions.iter().filter(move |c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        for c in &self.conditions {
            write!(f, "{} {} {}", c.name, c.subject, c.status)?;
            if !c.detail.is_empty() {
                write!(f, " {}", c.detail)?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "summary proven={} unresolved={} failed={} n/a={}",
            self.count(Status::Proven),
            self.count(Status::Unresolved),
            self.count(Status::Failed),
            self.count(Status::NotApplicable)
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FibrationOptions {
    pub filling: FillingLimits,
    pub cosets: Limits,
}

fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(e, s)| (e, -s)).collect()
}

/// Tree paths inside fibers: `to_root[v]` walks from `v` to the root of
/// its fiber component along collapsed edges.
struct FiberPaths {
    to_root: Vec<Option<Vec<Letter>>>,
    root: Vec<usize>,
}

impl FiberPaths {
    fn of(map: &CellularMap) -> FiberPaths {
        let src = &map.source;
        let nv = src.vertices.len();
        let mut adj: Vec<Vec<(usize, Letter)>> = vec![Vec::new(); nv];
        for (i, e) in src.edges.iter().enumerate() {
            if matches!(map.edge_image[i], EdgeImage::Collapse(_)) {
                adj[e.src].push((e.dst, (i, 1)));
                adj[e.dst].push((e.src, (i, -1)));
            }
        }
        let mut to_root: Vec<Option<Vec<Letter>>> = vec![None; nv];
        let mut root = vec![usize::MAX; nv];
        for r in 0..nv {
            if to_root[r].is_some() {
                continue;
            }
            to_root[r] = Some(Vec::new());
            root[r] = r;
            let mut queue = VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                for &(w, (e, s)) in &adj[v] {
                    if to_root[w].is_none() {
                        let mut p = vec![(e, -s)];
                        p.extend_from_slice(to_root[v].as_ref().unwrap());
                        to_root[w] = Some(p);
                        root[w] = r;
                        queue.push_back(w);
                    }
                }
            }
        }
        FiberPaths { to_root, root }
    }

    /// A walk from `a` to `b` inside their common fiber component.
    fn path(&self, a: usize, b: usize) -> Option<Vec<Letter>> {
        if self.root[a] != self.root[b] {
            return None;
        }
        let mut w = self.to_root[a].clone().unwrap();
        w.extend(inverse(self.to_root[b].as_ref().unwrap()));
        Some(w)
    }
}

fn surjectivity(map: &CellularMap) -> Vec<Condition> {
    let (v, e, c) = map.missed();
    let line = |name: &'static str, total: usize, missed: Vec<usize>| {
        if missed.is_empty() {
            Condition::new(name, "all", Status::Proven, format!("count={total}"))
        } else {
            Condition::new(name, "all", Status::Failed, format!("missed={missed:?}"))
        }
    };
    vec![
        line("surjective-vertices", map.target.vertices.len(), v),
        line("surjective-edges", map.target.edges.len(), e),
        line("surjective-cells", map.target.cells.len(), c),
    ]
}

fn cellularity(map: &CellularMap, limits: FillingLimits) -> Vec<Condition> {
    let problems = map.check();
    let mut out = vec![if problems.is_empty() {
        Condition::new("incidence", "all", Status::Proven, "")
    } else {
        Condition::new("incidence", "all", Status::Failed, problems.join("; "))
    }];
    let unmatched: Vec<usize> = (0..map.cell_image.len())
        .filter(|&c| matches!(map.cell_image[c], CellImage::Unmatched(_)))
        .collect();
    if unmatched.is_empty() {
        out.push(Condition::new(
            "cell-images",
            "all",
            Status::Proven,
            "each cell maps to a cell, edge or vertex",
        ));
    } else {
        let rels = Relators::of(&map.target);
        let mut worst = 0;
        let mut open = Vec::new();
        for &c in &unmatched {
            let CellImage::Unmatched(w) = &map.cell_image[c] else {
                unreachable!()
            };
            match fill(&rels, w, limits) {
                Some(a) => worst = worst.max(a),
                None => open.push(c),
            }
        }
        out.push(if open.is_empty() {
            Condition::new(
                "cell-images",
                "all",
                Status::Proven,
                format!("unmatched={} filled max_area={worst}", unmatched.len()),
            )
        } else {
            Condition::new(
                "cell-images",
                "all",
                Status::Unresolved,
                format!("unfilled={open:?}"),
            )
        });
    }
    out
}

fn sliding_edges(map: &CellularMap) -> Condition {
    let sk = Skeleton::of(&map.source);
    let mut bad = Vec::new();
    let mut count = 0;
    for (i, e) in map.source.edges.iter().enumerate() {
        if !matches!(map.edge_image[i], EdgeImage::Collapse(_)) {
            continue;
        }
        count += 1;
        let g = &map.source.vertices[e.src].graph;
        let replay = sk.step(&State::Plain(g.clone()), e.witness);
        if !leaf_adjacent(g, e.witness, map.source.n) || replay.map(|r| r.1) != Some((i, 1)) {
            bad.push(i);
        }
    }
    if bad.is_empty() {
        Condition::new(
            "sliding-edges",
            "all",
            Status::Proven,
            format!("count={count}"),
        )
    } else {
        Condition::new(
            "sliding-edges",
            "all",
            Status::Failed,
            format!("bad={bad:?}"),
        )
    }
}

fn fiber_conditions(map: &CellularMap, opts: &FibrationOptions) -> Vec<Condition> {
    let source_trivial = check_simply_connected_with(&map.source, opts.cosets).is_trivial();
    let rels = Relators::of(&map.source);
    let per: Vec<Vec<Condition>> = (0..map.target.vertices.len())
        .into_par_iter()
        .map(|v| {
            let f = fiber(map, v).expect("target vertex");
            let subject = format!("v={v}");
            let k = f.components();
            let detail = format!(
                "vertices={} edges={} components={k}",
                f.vertices.len(),
                f.edges.len()
            );
            if k != 1 {
                return vec![
                    Condition::new("fiber-connected", subject.clone(), Status::Failed, detail),
                    Condition::new("fiber-loops", subject, Status::Failed, "fiber disconnected"),
                ];
            }
            let connected =
                Condition::new("fiber-connected", subject.clone(), Status::Proven, detail);
            if source_trivial {
                return vec![
                    connected,
                    Condition::new(
                        "fiber-loops",
                        subject,
                        Status::Proven,
                        "source simply connected",
                    ),
                ];
            }
            // fundamental loops of the fiber, read as source walks
            let t = spanning_tree(&f.complex, 0).expect("nonempty fiber");
            let paths = FiberPaths::of(map);
            let mut worst = 0;
            let mut open = 0;
            for (i, e) in f.complex.edges.iter().enumerate() {
                if t.tree[i] {
                    continue;
                }
                let (a, b) = (f.vertices[e.src], f.vertices[e.dst]);
                let mut w = vec![(f.edges[i], 1)];
                w.extend(paths.path(b, a).expect("same fiber"));
                match fill(&rels, &w, opts.filling) {
                    Some(x) => worst = worst.max(x),
                    None => open += 1,
                }
            }
            let loops = if open == 0 {
                Condition::new(
                    "fiber-loops",
                    subject,
                    Status::Proven,
                    format!("max_area={worst}"),
                )
            } else {
                Condition::new(
                    "fiber-loops",
                    subject,
                    Status::Unresolved,
                    format!("unfilled={open}"),
                )
            };
            vec![connected, loops]
        })
        .collect();
    per.into_iter().flatten().collect()
}

fn lifting_conditions(map: &CellularMap, opts: &FibrationOptions) -> Vec<Condition> {
    let expected = (3 * map.source.g + 2 * map.source.n) as i64 - 6;
    let paths = FiberPaths::of(map);
    let rels = Relators::of(&map.source);
    let per: Vec<Vec<Condition>> = (0..map.target.edges.len())
        .into_par_iter()
        .map(|t| {
            let subject = format!("e={t}");
            let inst = match lifting_instances(map, t) {
                Ok(i) => i,
                Err(err) => {
                    return vec![Condition::new(
                        "lifting-count",
                        subject,
                        Status::Failed,
                        err.to_string(),
                    )];
                }
            };
            let onto = inst
                .iter()
                .all(|i| map.edge_image[i.letter.0] == EdgeImage::Edge(t, i.letter.1));
            let count = if map.kind != MapKind::Phi {
                Condition::new(
                    "lifting-count",
                    subject.clone(),
                    Status::NotApplicable,
                    format!("instances={}", inst.len()),
                )
            } else if inst.len() as i64 == expected && onto {
                Condition::new(
                    "lifting-count",
                    subject.clone(),
                    Status::Proven,
                    format!("instances={} expected={expected}", inst.len()),
                )
            } else {
                Condition::new(
                    "lifting-count",
                    subject.clone(),
                    Status::Failed,
                    format!("instances={} expected={expected} onto={onto}", inst.len()),
                )
            };
            // squares L_i . path(B_i, B_j) . L_j^-1 . path(A_j, A_i)
            let mut seen = std::collections::BTreeSet::new();
            let (mut pairs, mut worst, mut open, mut broken) = (0, 0, 0, 0);
            for i in 0..inst.len() {
                for j in i + 1..inst.len() {
                    pairs += 1;
                    let (ai, bi) = map.source.letter_ends(inst[i].letter);
                    let (aj, bj) = map.source.letter_ends(inst[j].letter);
                    let (Some(pb), Some(pa)) = (paths.path(bi, bj), paths.path(aj, ai)) else {
                        broken += 1;
                        continue;
                    };
                    let mut w = vec![inst[i].letter];
                    w.extend(pb);
                    w.push((inst[j].letter.0, -inst[j].letter.1));
                    w.extend(pa);
                    if !seen.insert(cyclic_normal_form(&crate::complex::cyclically_reduce(&w))) {
                        continue;
                    }
                    match fill(&rels, &w, opts.filling) {
                        Some(a) => worst = worst.max(a),
                        None => open += 1,
                    }
                }
            }
            let detail = format!("pairs={pairs} distinct={} max_area={worst}", seen.len());
            let squares = if broken > 0 {
                Condition::new(
                    "lifting-squares",
                    subject,
                    Status::Failed,
                    format!("{detail} disconnected={broken}"),
                )
            } else if open > 0 {
                Condition::new(
                    "lifting-squares",
                    subject,
                    Status::Unresolved,
                    format!("{detail} unfilled={open}"),
                )
            } else {
                Condition::new("lifting-squares", subject, Status::Proven, detail)
            };
            vec![count, squares]
        })
        .collect();
    per.into_iter().flatten().collect()
}

/// Every target cell boundary lifts to a source cell boundary.
fn lifting_loops(map: &CellularMap) -> Vec<Condition> {
    (0..map.target.cells.len())
        .map(|t| {
            let pre = map.cell_image.iter().position(|c| *c == CellImage::Cell(t));
            match pre {
                Some(c) => Condition::new(
                    "lifting-loops",
                    format!("c={t}"),
                    Status::Proven,
                    format!("preimage={c}"),
                ),
                None => Condition::new(
                    "lifting-loops",
                    format!("c={t}"),
                    Status::Unresolved,
                    "no preimage cell",
                ),
            }
        })
        .collect()
}

pub fn check_fibration_conditions(map: &CellularMap) -> Report {
    check_fibration_conditions_with(map, &FibrationOptions::default())
}

/// Surjectivity, cellularity, connected and simply connected fibers, lifting
/// counts and contractible lifting squares. The gluing map has discrete
/// fibers, so the fiber and square conditions are reported as not
/// applicable and lifted cell boundaries are checked instead.
pub fn check_fibration_conditions_with(map: &CellularMap, opts: &FibrationOptions) -> Report {
    let (s, t) = (&map.source, &map.target);
    let header = format!(
        "report kind={} source={}({},{}) target={}({},{})",
        map.kind,
        s.ty.name(),
        s.g,
        s.n,
        t.ty.name(),
        t.g,
        t.n
    );
    let mut conditions = surjectivity(map);
    conditions.extend(cellularity(map, opts.filling));
    match map.kind {
        MapKind::Psi => {
            for name in [
                "fiber-connected",
                "fiber-loops",
                "lifting-count",
                "lifting-squares",
            ] {
                conditions.push(Condition::new(
                    name,
                    "all",
                    Status::NotApplicable,
                    "gluing map",
                ));
            }
            conditions.extend(lifting_loops(map));
        }
        _ => {
            if map.kind == MapKind::Phi {
                conditions.push(sliding_edges(map));
            }
            conditions.extend(fiber_conditions(map, opts));
            conditions.extend(lifting_conditions(map, opts));
        }
    }
    Report { header, conditions }
}
