mod common;

use std::collections::BTreeSet;

use common::*;
use pantscx::complex::{
    build_s, build_s_decorated, cyclic_normal_form, cyclically_reduce, TwoComplex,
};
use pantscx::graph::samples::*;
use pantscx::maps::*;

/// Classes of graphs obtained by putting the leaf `n` on each edge of `t`.
fn insertions(t: &pantscx::PantGraph, n: u32) -> BTreeSet<Multigraph> {
    (0..t.edges().len())
        .map(|x| multigraph_of(&t.insert_leaf(x, n)).canonical())
        .collect()
}

fn reduced_form(w: &[(usize, i8)]) -> Vec<(usize, i8)> {
    cyclic_normal_form(&cyclically_reduce(w))
}

#[test]
fn contraction_on_samples() {
    let g = caterpillar(1, 2, 3, 4, 5);
    let h = phi_vertex(&g).unwrap();
    assert_eq!(h.leaves().len(), 4);
    assert!(brute_isomorphic(&h, &coupling(1, 2, 3, 4)));
    assert!(brute_isomorphic(
        &phi_vertex(&parallel_pair()).unwrap(),
        &loop_leaf()
    ));
    assert!(phi_vertex(&theta()).is_err());
    let (_, darts) = phi_vertex_tracked(&coupling(1, 2, 3, 4)).unwrap();
    assert_eq!(darts.iter().filter(|d| d.is_none()).count(), 4);
}

#[test]
fn gluing_on_samples() {
    let x = psi_vertex(&parallel_pair()).unwrap();
    assert!(x.leaves().is_empty());
    assert_eq!(x.cycle_rank(), 2);
    assert!(psi_vertex(&tripod()).is_err());
}

#[test]
fn fibers_match_leaf_insertion() {
    for (g, n) in [(0, 4), (0, 5), (1, 2), (1, 3), (2, 1)] {
        let m = phi_map(g, n).unwrap();
        assert!(m.check().is_empty());
        let mut total = 0;
        for v in 0..m.target.vertices.len() {
            let f = fiber(&m, v).unwrap();
            let expected = insertions(&m.target.vertices[v].graph, n);
            let got: BTreeSet<Multigraph> = f
                .vertices
                .iter()
                .map(|&s| multigraph_of(&m.source.vertices[s].graph).canonical())
                .collect();
            assert_eq!(got, expected, "({g},{n}) v={v}");
            assert_eq!(f.vertices.len(), expected.len());
            assert!(f.is_connected(), "({g},{n}) v={v}");
            total += f.vertices.len();
        }
        assert_eq!(total, m.source.vertices.len());
    }
}

#[test]
fn contraction_inverts_insertion() {
    for (g, n) in [(0, 4), (1, 2), (0, 5)] {
        let m = phi_map(g, n).unwrap();
        for (s, v) in m.source.vertices.iter().enumerate() {
            let img = &m.target.vertices[m.vertex_image[s]].graph;
            assert!(brute_isomorphic(&phi_vertex(&v.graph).unwrap(), img));
        }
    }
}

#[test]
fn lifting_counts() {
    for (g, n) in [(0, 5), (1, 2), (1, 3)] {
        let m = phi_map(g, n).unwrap();
        let expected = (3 * g + 2 * n - 6) as usize;
        for t in 0..m.target.edges.len() {
            let inst = lifting_instances(&m, t).unwrap();
            assert_eq!(inst.len(), expected, "({g},{n}) e={t}");
            for i in &inst {
                assert_eq!(m.edge_image[i.letter.0], EdgeImage::Edge(t, i.letter.1));
            }
            assert!(!liftings(&m, t).is_empty());
        }
    }
}

#[test]
fn images_of_cells_are_closed_walks() {
    for (g, n) in [(0, 5), (1, 3)] {
        let m = phi_map(g, n).unwrap();
        for (i, c) in m.source.cells.iter().enumerate() {
            let w = m.map_word(&c.boundary);
            assert!(m.target.is_closed_walk(&w) || w.is_empty(), "cell {i}");
            match &m.cell_image[i] {
                CellImage::Cell(t) => {
                    let b = &m.target.cells[*t].boundary;
                    assert_eq!(reduced_form(&w), reduced_form(b), "cell {i}");
                }
                CellImage::Vertex(_) | CellImage::Edge(_) => {
                    assert!(cyclically_reduce(&w).is_empty());
                }
                CellImage::Unmatched(u) => assert!(!u.is_empty()),
            }
        }
    }
}

fn proven(r: &Report) {
    for c in &r.conditions {
        assert!(
            matches!(c.status, Status::Proven | Status::NotApplicable),
            "{} {} {} {}",
            c.name,
            c.subject,
            c.status,
            c.detail
        );
    }
}

#[test]
fn contraction_reports() {
    for (g, n) in [(0, 4), (0, 5), (1, 2), (1, 3)] {
        let m = phi_map(g, n).unwrap();
        let r = check_fibration_conditions(&m);
        proven(&r);
        assert!(r.all_proven());
        assert_eq!(r.named("lifting-count").count(), m.target.edges.len());
        assert_eq!(r.named("fiber-connected").count(), m.target.vertices.len());
        let text = r.to_string();
        assert!(text.starts_with(&format!(
            "report kind=phi source=S({g},{n}) target=S({g},{})",
            n - 1
        )));
        assert!(text
            .trim_end()
            .lines()
            .last()
            .unwrap()
            .starts_with("summary proven="));
    }
}

#[test]
fn gluing_map() {
    let m = psi_map(2).unwrap();
    assert!(m.check().is_empty());
    assert!(m.is_surjective());
    assert_eq!(m.collapsed_edges(), 0);
    assert_eq!(
        (m.source.g, m.source.n, m.target.g, m.target.n),
        (1, 2, 2, 0)
    );
    let r = check_fibration_conditions(&m);
    proven(&r);
    assert!(r
        .named("lifting-count")
        .all(|c| c.status == Status::NotApplicable));
    assert_eq!(r.named("lifting-loops").count(), m.target.cells.len());
    assert!(psi_map(1).is_err());
}

#[test]
fn forgetting_the_order() {
    let dec = build_s_decorated(1, 2, 1000).unwrap();
    let m = forget_map(dec).unwrap();
    assert!(m.is_surjective());
    for v in 0..m.target.vertices.len() {
        assert!(fiber(&m, v).unwrap().is_connected());
    }
    proven(&check_fibration_conditions(&m));
    assert!(forget_map(build_s(1, 2).unwrap()).is_err());
}

#[test]
fn identity_map() {
    let c: TwoComplex = build_s(0, 5).unwrap();
    let m = CellularMap::identity(c);
    assert!(m.is_surjective());
    assert_eq!(m.collapsed_edges(), 0);
    assert!(check_fibration_conditions(&m).all_proven());
}

#[test]
fn between_explicit_complexes() {
    let m = phi_between(build_s(0, 5).unwrap(), build_s(0, 4).unwrap()).unwrap();
    assert_eq!(m, phi_map(0, 5).unwrap());
    assert!(phi_between(build_s(0, 5).unwrap(), build_s(1, 1).unwrap()).is_err());
    let dec = build_s_decorated(0, 5, 1000).unwrap();
    assert!(matches!(
        phi_between(dec, build_s(0, 4).unwrap()),
        Err(pantscx::MapError::WrongComplexType { .. })
    ));
}

#[test]
fn domains() {
    assert!(map_domain(MapKind::Phi, 0, 0).is_err());
    assert!(map_domain(MapKind::Phi, 0, 3).is_err());
    assert!(map_domain(MapKind::Phi, 1, 2).is_ok());
    assert!(map_domain(MapKind::Psi, 1, 0).is_err());
    assert!(phi_map(0, 3).is_err());
    assert!(fiber(&phi_map(0, 5).unwrap(), 99).is_err());
}

#[test]
fn map_text() {
    let m = phi_map(1, 2).unwrap();
    let t = m.to_text();
    assert!(t.starts_with("map kind=phi source=S(1,2) target=S(1,1)\n"));
    assert_eq!(
        t.lines().filter(|l| l.starts_with("v ")).count(),
        m.source.vertices.len()
    );
    assert_eq!(
        t.lines().filter(|l| l.starts_with("e ")).count(),
        m.source.edges.len()
    );
}
