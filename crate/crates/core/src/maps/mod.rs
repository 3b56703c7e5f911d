//! Forgetful and gluing maps between complexes.

mod fibration;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::complex::{
    build_s, cyclic_normal_form, cyclically_reduce, ComplexType, Letter, Skeleton, State,
    TwoComplex,
};
use crate::error::{DomainError, MapError};
use crate::graph::{CanonicalKey, Dart, PantGraph};
use crate::moves::{frame, variant_joining, MoveSpec};

pub use fibration::{
    check_fibration_conditions, check_fibration_conditions_with, fiber, lifting_instances,
    liftings, Condition, Fiber, FibrationOptions, LiftingInstance, Report, Status,
};

/// Removes the leaf with the largest label and smooths its trivalent
/// neighbor. Also returns the old-to-new dart map.
pub fn phi_vertex_tracked(graph: &PantGraph) -> Result<(PantGraph, Vec<Option<Dart>>), MapError> {
    let &(label, tip) = graph.leaves().last().ok_or(MapError::NoSuchLeaf(0))?;
    let stem = graph.partner(tip);
    let [x, y] =
        <[Dart; 2]>::try_from(graph.siblings(stem)).map_err(|_| MapError::FreeCircle(label))?;
    if graph.partner(x) == y {
        return Err(MapError::FreeCircle(label));
    }
    let (xp, yp) = (graph.partner(x), graph.partner(y));
    let (ex, ey, es) = (graph.edge_of(x), graph.edge_of(y), graph.edge_of(stem));
    let mut edges: Vec<[Dart; 2]> = Vec::new();
    for (i, &e) in graph.edges().iter().enumerate() {
        if i == ex {
            edges.push([xp, yp]);
        } else if i != ey && i != es {
            edges.push(e);
        }
    }
    let u = graph.vertex_of(stem);
    let leaf_v = graph.vertex_of(tip);
    let vertices = graph
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(v, _)| v != u && v != leaf_v)
        .map(|(_, b)| b.clone())
        .collect();
    let leaves = graph.leaves()[..graph.leaves().len() - 1].to_vec();
    Ok(PantGraph::rebuild(
        edges,
        vertices,
        leaves,
        graph.num_darts(),
    ))
}

pub fn phi_vertex(graph: &PantGraph) -> Result<PantGraph, MapError> {
    phi_vertex_tracked(graph).map(|r| r.0)
}

/// Glues the two leaves of an `n = 2` graph into one internal edge. Also
/// returns the old-to-new dart map.
pub fn psi_vertex_tracked(graph: &PantGraph) -> Result<(PantGraph, Vec<Option<Dart>>), MapError> {
    let &[(_, t1), (_, t2)] = graph.leaves() else {
        return Err(MapError::WrongLeafCount(graph.leaves().len()));
    };
    let (s1, s2) = (graph.partner(t1), graph.partner(t2));
    let (e1, e2) = (graph.edge_of(t1), graph.edge_of(t2));
    let mut edges: Vec<[Dart; 2]> = Vec::new();
    for (i, &e) in graph.edges().iter().enumerate() {
        if i == e1 {
            edges.push([s1, s2]);
        } else if i != e2 {
            edges.push(e);
        }
    }
    let (v1, v2) = (graph.vertex_of(t1), graph.vertex_of(t2));
    let vertices = graph
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(v, _)| v != v1 && v != v2)
        .map(|(_, b)| b.clone())
        .collect();
    Ok(PantGraph::rebuild(
        edges,
        vertices,
        vec![],
        graph.num_darts(),
    ))
}

pub fn psi_vertex(graph: &PantGraph) -> Result<PantGraph, MapError> {
    psi_vertex_tracked(graph).map(|r| r.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// Contracts the last free end.
    Phi,
    /// Glues the two free ends of a genus `g - 1` graph.
    Psi,
    /// Forgets the edge ordering of a decorated complex.
    Forget,
    Identity,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Phi => "phi",
            MapKind::Psi => "psi",
            MapKind::Forget => "forget",
            MapKind::Identity => "identity",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeImage {
    /// Traverses the target edge in the given direction.
    Edge(usize, i8),
    /// Both endpoints land on this target vertex.
    Collapse(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellImage {
    Cell(usize),
    /// The boundary degenerates onto one edge traversed back and forth.
    Edge(usize),
    Vertex(usize),
    /// A closed walk that is not the boundary of a single target cell.
    Unmatched(Vec<Letter>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMap {
    pub kind: MapKind,
    pub source: TwoComplex,
    pub target: TwoComplex,
    pub vertex_image: Vec<usize>,
    pub edge_image: Vec<EdgeImage>,
    pub cell_image: Vec<CellImage>,
}

fn key_index(c: &TwoComplex) -> BTreeMap<&CanonicalKey, usize> {
    c.vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (&v.key, i))
        .collect()
}

fn lookup(index: &BTreeMap<&CanonicalKey, usize>, g: &PantGraph) -> Result<usize, MapError> {
    index
        .get(&g.canonical_key())
        .copied()
        .ok_or_else(|| MapError::MissingImage(g.to_text().trim().replace('\n', "; ")))
}

/// Carries an F move through a dart map. `None` if the move collapses, which
/// happens when the move's outer darts do not all survive.
fn carry_f(
    src: &PantGraph,
    dst: &PantGraph,
    darts: &[Option<Dart>],
    mv: MoveSpec,
) -> Result<Option<MoveSpec>, MapError> {
    let MoveSpec::F { edge, variant } = mv else {
        return Ok(None);
    };
    let fr = frame(src, edge).map_err(|e| MapError::MissingImage(e.to_string()))?;
    let (Some(e1), Some(e2)) = (darts[fr.e1], darts[fr.e2]) else {
        return Ok(None);
    };
    let ne = dst.edge_of(e1);
    if dst.edge_of(e2) != ne {
        return Ok(None);
    }
    let [p, _] = fr.target_pairs(variant);
    let (Some(x), Some(y)) = (darts[p[0]], darts[p[1]]) else {
        return Ok(None);
    };
    let v = variant_joining(dst, ne, x, y).map_err(|e| MapError::MissingImage(e.to_string()))?;
    Ok(Some(MoveSpec::F {
        edge: ne,
        variant: v,
    }))
}

type Tracked = fn(&PantGraph) -> Result<(PantGraph, Vec<Option<Dart>>), MapError>;

/// Images of vertices and edges under a dart-tracked vertex map. An edge
/// collapses when `collapses` says so; otherwise its move is carried to the
/// image graph and must be an edge of the target.
fn assemble(
    source: &TwoComplex,
    target: &TwoComplex,
    tracked: Tracked,
    collapses: impl Fn(&PantGraph, MoveSpec) -> bool + Sync,
) -> Result<(Vec<usize>, Vec<EdgeImage>), MapError> {
    let index = key_index(target);
    let images: Vec<(PantGraph, Vec<Option<Dart>>)> = source
        .vertices
        .par_iter()
        .map(|v| tracked(&v.graph))
        .collect::<Result<_, _>>()?;
    let vertex_image = images
        .iter()
        .map(|(g, _)| lookup(&index, g))
        .collect::<Result<Vec<_>, _>>()?;
    let sk = Skeleton::of(target);
    let edge_image = source
        .edges
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let (from, to) = (vertex_image[e.src], vertex_image[e.dst]);
            let src_graph = &source.vertices[e.src].graph;
            if collapses(src_graph, e.witness) {
                return if from == to {
                    Ok(EdgeImage::Collapse(from))
                } else {
                    Err(MapError::InconsistentCollapse { edge: i })
                };
            }
            let (img, darts) = &images[e.src];
            let mv = carry_f(src_graph, img, darts, e.witness)?
                .ok_or(MapError::InconsistentCollapse { edge: i })?;
            let (_, (id, s)) = sk
                .step(&State::Plain(img.clone()), mv)
                .ok_or_else(|| MapError::MissingImage(format!("edge {i}")))?;
            if target.letter_ends((id, s)) != (from, to) {
                return Err(MapError::InconsistentCollapse { edge: i });
            }
            Ok(EdgeImage::Edge(id, s))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((vertex_image, edge_image))
}

/// Images of every cell from the edge images: collapsed letters drop out and
/// the remaining word is matched against target boundaries.
fn cell_images(
    source: &TwoComplex,
    target: &TwoComplex,
    vertex_image: &[usize],
    edge_image: &[EdgeImage],
) -> Vec<CellImage> {
    let mut by_form: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
    for (i, c) in target.cells.iter().enumerate() {
        by_form.entry(cyclic_normal_form(&c.boundary)).or_insert(i);
    }
    for (i, c) in target.cells.iter().enumerate() {
        let r = cyclically_reduce(&c.boundary);
        if !r.is_empty() {
            by_form.entry(cyclic_normal_form(&r)).or_insert(i);
        }
    }
    source
        .cells
        .iter()
        .map(|c| {
            let w: Vec<Letter> = c
                .boundary
                .iter()
                .filter_map(|&(e, s)| match edge_image[e] {
                    EdgeImage::Edge(t, ts) => Some((t, s * ts)),
                    EdgeImage::Collapse(_) => None,
                })
                .collect();
            if w.is_empty() {
                let start = source.letter_ends(c.boundary[0]).0;
                return CellImage::Vertex(vertex_image[start]);
            }
            if let Some(&t) = by_form.get(&cyclic_normal_form(&w)) {
                return CellImage::Cell(t);
            }
            let r = cyclically_reduce(&w);
            if r.is_empty() {
                return CellImage::Edge(w[0].0);
            }
            match by_form.get(&cyclic_normal_form(&r)) {
                Some(&t) => CellImage::Cell(t),
                None => CellImage::Unmatched(w),
            }
        })
        .collect()
}

/// Whether leaf `n` hangs on one of the two vertices of the move's edge.
fn leaf_adjacent(graph: &PantGraph, mv: MoveSpec, label: u32) -> bool {
    let MoveSpec::F { edge, .. } = mv else {
        return true;
    };
    let Some(&(_, tip)) = graph.leaves().iter().find(|&&(l, _)| l == label) else {
        return false;
    };
    let stem = graph.partner(tip);
    frame(graph, edge).is_ok_and(|fr| fr.outer().contains(&stem))
}

/// The map from the complex at `(g, n)` to the one at `(g, n - 1)`.
pub fn phi_map(g: u32, n: u32) -> Result<CellularMap, MapError> {
    if n == 0 {
        return Err(MapError::NoSuchLeaf(0));
    }
    let source = build_s(g, n)?;
    let target = build_s(g, n - 1)?;
    phi_between(source, target)
}

/// `phi_map` on prebuilt complexes.
pub fn phi_between(source: TwoComplex, target: TwoComplex) -> Result<CellularMap, MapError> {
    for c in [&source, &target] {
        if c.ty != ComplexType::S {
            return Err(MapError::WrongComplexType {
                expected: ComplexType::S.name(),
                found: c.ty.name(),
            });
        }
    }
    let n = source.n;
    let (vertex_image, edge_image) = assemble(&source, &target, phi_vertex_tracked, |g, mv| {
        leaf_adjacent(g, mv, n)
    })?;
    let cell_image = cell_images(&source, &target, &vertex_image, &edge_image);
    Ok(CellularMap {
        kind: MapKind::Phi,
        source,
        target,
        vertex_image,
        edge_image,
        cell_image,
    })
}

/// The map from the complex at `(g - 1, 2)` to the one at `(g, 0)`.
pub fn psi_map(g: u32) -> Result<CellularMap, MapError> {
    if g <= 1 {
        return Err(MapError::GenusTooSmall(g));
    }
    let source = build_s(g - 1, 2)?;
    let target = build_s(g, 0)?;
    let (vertex_image, edge_image) = assemble(&source, &target, psi_vertex_tracked, |_, _| false)?;
    let cell_image = cell_images(&source, &target, &vertex_image, &edge_image);
    Ok(CellularMap {
        kind: MapKind::Psi,
        source,
        target,
        vertex_image,
        edge_image,
        cell_image,
    })
}

fn keep_darts(g: &PantGraph) -> Result<(PantGraph, Vec<Option<Dart>>), MapError> {
    Ok((g.clone(), (0..g.num_darts()).map(Some).collect()))
}

/// Forgets decorations: F edges go to F edges, τ edges collapse.
pub fn forget_map(source: TwoComplex) -> Result<CellularMap, MapError> {
    if source.ty != ComplexType::Sdec {
        return Err(MapError::WrongComplexType {
            expected: ComplexType::Sdec.name(),
            found: source.ty.name(),
        });
    }
    let target = build_s(source.g, source.n)?;
    let (vertex_image, edge_image) = assemble(&source, &target, keep_darts, |_, mv| {
        matches!(mv, MoveSpec::Tau { .. })
    })?;
    let cell_image = cell_images(&source, &target, &vertex_image, &edge_image);
    Ok(CellularMap {
        kind: MapKind::Forget,
        source,
        target,
        vertex_image,
        edge_image,
        cell_image,
    })
}

impl CellularMap {
    pub fn identity(complex: TwoComplex) -> CellularMap {
        CellularMap {
            kind: MapKind::Identity,
            vertex_image: (0..complex.vertices.len()).collect(),
            edge_image: (0..complex.edges.len())
                .map(|i| EdgeImage::Edge(i, 1))
                .collect(),
            cell_image: (0..complex.cells.len()).map(CellImage::Cell).collect(),
            target: complex.clone(),
            source: complex,
        }
    }

    /// Image of a walk, with collapsed letters dropped.
    pub fn map_word(&self, word: &[Letter]) -> Vec<Letter> {
        word.iter()
            .filter_map(|&(e, s)| match self.edge_image[e] {
                EdgeImage::Edge(t, ts) => Some((t, s * ts)),
                EdgeImage::Collapse(_) => None,
            })
            .collect()
    }

    /// Endpoint compatibility of every edge image and closedness of every
    /// cell image; returns human-readable violations.
    pub fn check(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, e) in self.source.edges.iter().enumerate() {
            let (a, b) = (self.vertex_image[e.src], self.vertex_image[e.dst]);
            match self.edge_image[i] {
                EdgeImage::Collapse(v) if v != a || v != b => {
                    out.push(format!("edge {i} collapses to {v} but ends map to {a},{b}"))
                }
                EdgeImage::Edge(t, s) if self.target.letter_ends((t, s)) != (a, b) => {
                    out.push(format!("edge {i} image {t} does not join {a},{b}"))
                }
                _ => {}
            }
        }
        for (i, c) in self.source.cells.iter().enumerate() {
            if !self.target.is_closed_walk(&self.map_word(&c.boundary)) {
                out.push(format!("cell {i} image is not closed"));
            }
        }
        out
    }

    pub fn collapsed_edges(&self) -> usize {
        self.edge_image
            .iter()
            .filter(|e| matches!(e, EdgeImage::Collapse(_)))
            .count()
    }

    /// Target vertices, edges and cells with no preimage.
    pub fn missed(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let mut v = vec![false; self.target.vertices.len()];
        let mut e = vec![false; self.target.edges.len()];
        let mut c = vec![false; self.target.cells.len()];
        for &x in &self.vertex_image {
            v[x] = true;
        }
        for x in &self.edge_image {
            if let EdgeImage::Edge(t, _) = x {
                e[*t] = true;
            }
        }
        for x in &self.cell_image {
            if let CellImage::Cell(t) = x {
                c[*t] = true;
            }
        }
        let unset = |f: Vec<bool>| {
            f.iter()
                .enumerate()
                .filter(|(_, &b)| !b)
                .map(|(i, _)| i)
                .collect()
        };
        (unset(v), unset(e), unset(c))
    }

    pub fn is_surjective(&self) -> bool {
        let (v, e, c) = self.missed();
        v.is_empty() && e.is_empty() && c.is_empty()
    }

    pub fn to_text(&self) -> String {
        let (s, t) = (&self.source, &self.target);
        let mut out = format!(
            "map kind={} source={}({},{}) target={}({},{})\n",
            self.kind,
            s.ty.name(),
            s.g,
            s.n,
            t.ty.name(),
            t.g,
            t.n
        );
        for (i, v) in self.vertex_image.iter().enumerate() {
            out.push_str(&format!("v {i} -> {v}\n"));
        }
        for (i, e) in self.edge_image.iter().enumerate() {
            match e {
                EdgeImage::Edge(t, s) => {
                    out.push_str(&format!("e {i} -> {t}{}\n", if *s > 0 { '+' } else { '-' }))
                }
                EdgeImage::Collapse(v) => out.push_str(&format!("e {i} -> collapse:{v}\n")),
            }
        }
        for (i, c) in self.cell_image.iter().enumerate() {
            let img = match c {
                CellImage::Cell(t) => format!("cell:{t}"),
                CellImage::Edge(t) => format!("edge:{t}"),
                CellImage::Vertex(v) => format!("vertex:{v}"),
                CellImage::Unmatched(w) => {
                    let parts: Vec<String> = w
                        .iter()
                        .map(|(e, s)| format!("{e}{}", if *s > 0 { '+' } else { '-' }))
                        .collect();
                    format!("word:{}", parts.join(","))
                }
            };
            out.push_str(&format!("c {i} -> {img}\n"));
        }
        out
    }
}

/// Domain check shared by the front ends.
pub fn map_domain(kind: MapKind, g: u32, n: u32) -> Result<(), MapError> {
    match kind {
        MapKind::Phi if n == 0 => Err(MapError::NoSuchLeaf(0)),
        MapKind::Phi if 2 * g + n < 4 => Err(DomainError { g, n: n - 1 }.into()),
        MapKind::Psi if g <= 1 => Err(MapError::GenusTooSmall(g)),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples;

    #[test]
    fn phi_on_four_leaves_collapses_everything() {
        let m = phi_map(0, 4).unwrap();
        assert_eq!(m.vertex_image, vec![0, 0, 0]);
        assert_eq!(m.collapsed_edges(), 3);
        assert!(m.check().is_empty());
    }

    #[test]
    fn psi_glues_cases() {
        let theta = psi_vertex(&samples::parallel_pair()).unwrap();
        assert!(theta.is_isomorphic(&samples::theta()));
        let bell = psi_vertex(&samples::loop_bridge()).unwrap();
        assert!(bell.is_isomorphic(&samples::dumbbell()));
        assert_eq!(psi_map(1).unwrap_err(), MapError::GenusTooSmall(1));
        let m = psi_map(2).unwrap();
        assert!(m.is_surjective());
        assert_eq!(m.collapsed_edges(), 0);
    }

    #[test]
    fn identity_is_trivially_fibered() {
        let m = CellularMap::identity(build_s(0, 4).unwrap());
        assert!(check_fibration_conditions(&m).all_proven());
    }

    #[test]
    fn text_lists_every_assignment() {
        let m = phi_map(1, 2).unwrap();
        let t = m.to_text();
        assert!(t.starts_with("map kind=phi source=S(1,2) target=S(1,1)\n"));
        assert!(t.contains("e 0 -> collapse:0\n"));
    }
}
