//! Connectedness, first homology, fundamental group presentations and
//! certification of simple connectedness for finite 2-complexes.

pub mod coset;
pub mod filling;
pub mod snf;

use std::collections::VecDeque;
use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;

use crate::complex::{cyclically_reduce, Letter, TwoComplex};
use crate::error::ParseError;

pub use filling::{fill, FillingLimits, Relators};

/// Vertex sets of the connected components of the 1-skeleton, each sorted,
/// ordered by smallest vertex.
pub fn connected_components(complex: &TwoComplex) -> Vec<Vec<usize>> {
    let nv = complex.vertices.len();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for e in &complex.edges {
        let (a, b) = (find(&mut parent, e.src), find(&mut parent, e.dst));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..nv {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1 {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl H1 {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for H1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(format!("Z^{}", self.betti));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// The cellular boundary map from 2-cells to edges, one row per edge.
pub fn boundary_matrix(complex: &TwoComplex) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; complex.cells.len()]; complex.edges.len()];
    for (j, c) in complex.cells.iter().enumerate() {
        for &(e, s) in &c.boundary {
            m[e][j] += s as i64;
        }
    }
    m
}

/// First homology: cycles of the 1-skeleton modulo cell boundaries.
pub fn h1(complex: &TwoComplex) -> H1 {
    let components = connected_components(complex).len();
    let rank_d1 = complex.vertices.len() - components;
    let cycles = complex.edges.len() - rank_d1;
    let factors = snf::invariant_factors(&boundary_matrix(complex));
    H1 {
        betti: cycles - factors.len(),
        torsion: snf::torsion(&factors),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    /// Words in signed 1-based generator numbers.
    pub relators: Vec<Vec<i32>>,
}

fn free_reduce_cyclic(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let (mut s, mut e) = (0, out.len());
    while e - s >= 2 && out[s] == -out[e - 1] {
        s += 1;
        e -= 1;
    }
    out[s..e].to_vec()
}

impl GroupPresentation {
    /// Freely and cyclically reduces relators, dropping empty ones.
    pub fn new(generators: usize, relators: Vec<Vec<i32>>) -> Self {
        let relators = relators
            .iter()
            .map(|r| free_reduce_cyclic(r))
            .filter(|r| !r.is_empty())
            .collect();
        GroupPresentation {
            generators,
            relators,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens {}\n", self.generators);
        for r in &self.relators {
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (no, head) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
        let k: usize = head
            .trim()
            .strip_prefix("gens")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| ParseError::new(no + 1, 1, "expected `gens <k>`"))?;
        let mut relators = Vec::new();
        for (no, line) in lines {
            let mut r = Vec::new();
            for t in line.split_whitespace() {
                let col = t.as_ptr() as usize - line.as_ptr() as usize + 1;
                let x: i32 = t
                    .parse()
                    .map_err(|_| ParseError::new(no + 1, col, format!("bad letter `{t}`")))?;
                if x == 0 || x.unsigned_abs() as usize > k {
                    return Err(ParseError::new(
                        no + 1,
                        col,
                        format!("letter {x} out of range"),
                    ));
                }
                r.push(x);
            }
            relators.push(r);
        }
        Ok(GroupPresentation::new(k, relators))
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// BFS spanning tree of the basepoint's component: `tree[e]` marks tree
/// edges; non-tree edges of the component get generator numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub basepoint: usize,
    pub in_component: Vec<bool>,
    pub tree: Vec<bool>,
    /// 1-based generator number per edge, 0 for tree edges and edges
    /// outside the component.
    pub generator: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("basepoint {0} is not a vertex")]
pub struct NoSuchVertex(pub usize);

pub fn spanning_tree(complex: &TwoComplex, basepoint: usize) -> Result<SpanningTree, NoSuchVertex> {
    let nv = complex.vertices.len();
    if basepoint >= nv {
        return Err(NoSuchVertex(basepoint));
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, e) in complex.edges.iter().enumerate() {
        adj[e.src].push((i, e.dst));
        if e.dst != e.src {
            adj[e.dst].push((i, e.src));
        }
    }
    let mut seen = vec![false; nv];
    let mut tree = vec![false; complex.edges.len()];
    seen[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let mut generator = vec![0; complex.edges.len()];
    let mut next = 1;
    for (i, e) in complex.edges.iter().enumerate() {
        if seen[e.src] && !tree[i] {
            generator[i] = next;
            next += 1;
        }
    }
    Ok(SpanningTree {
        basepoint,
        in_component: seen,
        tree,
        generator,
    })
}

impl SpanningTree {
    pub fn generators(&self) -> usize {
        self.generator.iter().filter(|&&g| g > 0).count()
    }

    pub fn rewrite(&self, word: &[Letter]) -> Vec<i32> {
        word.iter()
            .filter(|&&(e, _)| self.generator[e] > 0)
            .map(|&(e, s)| self.generator[e] as i32 * s as i32)
            .collect()
    }
}

/// π₁ of the basepoint's component: generators are non-tree edges, relators
/// are cell boundaries rewritten through the tree.
pub fn pi1_presentation(
    complex: &TwoComplex,
    basepoint: usize,
) -> Result<GroupPresentation, NoSuchVertex> {
    let t = spanning_tree(complex, basepoint)?;
    let relators = complex
        .cells
        .iter()
        .filter(|c| {
            c.boundary
                .first()
                .is_some_and(|&(e, _)| t.in_component[complex.edges[e].src])
        })
        .map(|c| t.rewrite(&c.boundary))
        .collect();
    Ok(GroupPresentation::new(t.generators(), relators))
}

/// Independent replay: every relator of `p` is the tree rewriting of a cell
/// boundary that is a closed walk.
pub fn relators_replay(complex: &TwoComplex, basepoint: usize, p: &GroupPresentation) -> bool {
    let Ok(t) = spanning_tree(complex, basepoint) else {
        return false;
    };
    let mut expected: Vec<Vec<i32>> = Vec::new();
    for c in &complex.cells {
        if !complex.is_closed_walk(&c.boundary) {
            return false;
        }
        if c.boundary
            .first()
            .is_some_and(|&(e, _)| t.in_component[complex.edges[e].src])
        {
            let r = free_reduce_cyclic(&t.rewrite(&c.boundary));
            if !r.is_empty() {
                expected.push(r);
            }
        }
    }
    t.generators() == p.generators && expected == p.relators
}

/// `max_cosets` bounds the coset table after each lookahead pass; the scans
/// of a single row may overshoot it briefly, which shows in the peak.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_cosets: usize,
    pub max_time: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cosets: 1_000_000,
            max_time: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// π₁ trivial; `cosets` is the peak coset table size.
    Trivial {
        cosets: usize,
    },
    NontrivialH1(H1),
    /// H₁ vanishes but π₁ is a finite group of this order.
    NontrivialFinite {
        order: usize,
    },
    Unknown {
        max_cosets: usize,
    },
    Disconnected {
        components: usize,
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Trivial { cosets } => write!(f, "TRIVIAL cosets={cosets}"),
            Verdict::NontrivialH1(h) => write!(f, "H1 {h}"),
            Verdict::NontrivialFinite { order } => write!(f, "NONTRIVIAL order={order}"),
            Verdict::Unknown { max_cosets } => write!(f, "UNKNOWN max_cosets={max_cosets}"),
            Verdict::Disconnected { components } => {
                write!(f, "DISCONNECTED components={components}")
            }
        }
    }
}

impl Verdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Verdict::Trivial { .. })
    }
}

/// Coset enumeration over the trivial subgroup.
pub fn prove_trivial(p: &GroupPresentation, limits: Limits) -> Verdict {
    let out = coset::enumerate(
        p.generators,
        &p.relators,
        limits.max_cosets,
        limits.max_time,
    );
    match out.index {
        Some(1) => Verdict::Trivial { cosets: out.peak },
        Some(order) => Verdict::NontrivialFinite { order },
        None => Verdict::Unknown {
            max_cosets: limits.max_cosets,
        },
    }
}

pub fn check_simply_connected(complex: &TwoComplex) -> Verdict {
    check_simply_connected_with(complex, Limits::default())
}

/// Connectedness, then H₁, then coset enumeration, stopping at the first
/// failure.
pub fn check_simply_connected_with(complex: &TwoComplex, limits: Limits) -> Verdict {
    let comps = connected_components(complex).len();
    if comps != 1 {
        return Verdict::Disconnected { components: comps };
    }
    let h = h1(complex);
    if !h.is_trivial() {
        return Verdict::NontrivialH1(h);
    }
    let p = pi1_presentation(complex, 0).expect("nonempty complex");
    prove_trivial(&p, limits)
}

/// Free reduction helper exposed for words of edge letters.
pub fn reduce_word(word: &[Letter]) -> Vec<Letter> {
    cyclically_reduce(word)
}
