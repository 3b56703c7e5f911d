//! Canonical labeling of small dart-colored multigraphs.
//!
//! Individualization/refinement over vertices: colors are refined to an
//! equitable partition, the first non-singleton cell is split by trying each
//! of its vertices, and every discrete leaf of the search tree is encoded.
//! The lexicographically smallest encoding is the canonical key. The tree is
//! explored without automorphism pruning, so the number of leaves attaining
//! the minimum equals the order of the vertex-level automorphism group.

use std::fmt;

/// A totally ordered byte string identifying a colored graph up to
/// color-preserving isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalKey(bytes)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalKey)
    }

    /// Short stable digest (FNV-1a, 32 bits) used for labels in diagrams.
    pub fn digest(&self) -> String {
        let mut h: u32 = 0x811c9dc5;
        for &b in &self.0 {
            h ^= b as u32;
            h = h.wrapping_mul(0x01000193);
        }
        format!("{h:08x}")
    }

    pub(crate) fn words(&self) -> Vec<u32> {
        self.0
            .chunks_exact(4)
            .map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]]))
            .collect()
    }

    fn from_words(words: &[u32]) -> Self {
        let mut bytes = Vec::with_capacity(words.len() * 4);
        for w in words {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        CanonicalKey(bytes)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.digest())
    }
}

/// Input to the canonicalizer: vertices with colors, darts with colors, and a
/// fixed-point-free pairing of darts into edges.
#[derive(Clone, Debug)]
pub struct ColoredDartGraph {
    pub vertex_color: Vec<u32>,
    pub dart_vertex: Vec<usize>,
    pub dart_color: Vec<u32>,
    pub partner: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Canonical {
    pub key: CanonicalKey,
    /// Number of color-preserving dart bijections commuting with the pairing
    /// and the vertex partition.
    pub automorphisms: u64,
    /// Canonical position of every input vertex.
    pub position: Vec<usize>,
}

/// Decoded form of a canonical key: vertices in canonical order and edges as
/// pairs of (vertex position, dart color) endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedKey {
    pub vertex_color: Vec<u32>,
    pub edges: Vec<[(usize, u32); 2]>,
}

struct Search<'a> {
    g: &'a ColoredDartGraph,
    incident: Vec<Vec<usize>>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    best_count: u64,
}

pub fn canonicalize(g: &ColoredDartGraph) -> Canonical {
    let nv = g.vertex_color.len();
    let mut incident = vec![Vec::new(); nv];
    for (d, &v) in g.dart_vertex.iter().enumerate() {
        incident[v].push(d);
    }
    let mut s = Search {
        g,
        incident,
        best: None,
        best_count: 0,
    };
    let colors = rank(&g.vertex_color);
    s.descend(colors);
    let (words, position) = s.best.expect("search tree has at least one leaf");
    let automorphisms = s.best_count * multiplicity_factor(&words);
    Canonical {
        key: CanonicalKey::from_words(&words),
        automorphisms,
        position,
    }
}

pub fn decode(key: &CanonicalKey) -> Option<DecodedKey> {
    let w = key.words();
    let nv = *w.first()? as usize;
    let ne = *w.get(1)? as usize;
    if w.len() != 2 + nv + 4 * ne {
        return None;
    }
    let vertex_color = w[2..2 + nv].to_vec();
    let edges = w[2 + nv..]
        .chunks_exact(4)
        .map(|c| [(c[0] as usize, c[1]), (c[2] as usize, c[3])])
        .collect::<Vec<_>>();
    if edges.iter().any(|e| e[0].0 >= nv || e[1].0 >= nv) {
        return None;
    }
    Some(DecodedKey {
        vertex_color,
        edges,
    })
}

fn rank<T: Ord + Clone>(values: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("present") as u32)
        .collect()
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

impl Search<'_> {
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut count = distinct(&colors);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32, u32)>)> = (0..colors.len())
                .map(|v| {
                    let mut nb: Vec<(u32, u32, u32)> = self.incident[v]
                        .iter()
                        .map(|&d| {
                            let p = self.g.partner[d];
                            (
                                self.g.dart_color[d],
                                self.g.dart_color[p],
                                colors[self.g.dart_vertex[p]],
                            )
                        })
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let next = rank(&sigs);
            let next_count = distinct(&next);
            if next_count == count {
                return colors;
            }
            count = next_count;
            colors = next;
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let colors = self.refine(colors);
        let nv = colors.len();
        let mut sizes = vec![0usize; nv];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..nv).find(|&c| sizes[c] > 1);
        match target {
            None => self.leaf(&colors),
            Some(c) => {
                let c = c as u32;
                let cell: Vec<usize> = (0..nv).filter(|&v| colors[v] == c).collect();
                for &chosen in &cell {
                    let split = colors
                        .iter()
                        .enumerate()
                        .map(|(v, &x)| {
                            if x < c || (x == c && v == chosen) {
                                x
                            } else {
                                x + 1
                            }
                        })
                        .collect();
                    self.descend(split);
                }
            }
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let position: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let words = encode(self.g, &position);
        match &self.best {
            Some((best, _)) if *best < words => {}
            Some((best, _)) if *best == words => self.best_count += 1,
            _ => {
                self.best = Some((words, position));
                self.best_count = 1;
            }
        }
    }
}

fn encode(g: &ColoredDartGraph, position: &[usize]) -> Vec<u32> {
    let nv = position.len();
    let mut order = vec![0usize; nv];
    for (v, &p) in position.iter().enumerate() {
        order[p] = v;
    }
    let mut edges: Vec<[u32; 4]> = Vec::with_capacity(g.partner.len() / 2);
    for d in 0..g.partner.len() {
        let p = g.partner[d];
        if d > p {
            continue;
        }
        let a = (position[g.dart_vertex[d]] as u32, g.dart_color[d]);
        let b = (position[g.dart_vertex[p]] as u32, g.dart_color[p]);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        edges.push([a.0, a.1, b.0, b.1]);
    }
    edges.sort_unstable();
    let mut words = Vec::with_capacity(2 + nv + 4 * edges.len());
    words.push(nv as u32);
    words.push(edges.len() as u32);
    words.extend(order.iter().map(|&v| g.vertex_color[v]));
    for e in edges {
        words.extend_from_slice(&e);
    }
    words
}

/// Dart-level automorphisms per vertex-level automorphism: parallel edges in
/// the same endpoint class permute freely, and edges whose two endpoint
/// classes coincide can additionally be flipped.
fn multiplicity_factor(words: &[u32]) -> u64 {
    let nv = words[0] as usize;
    let edges: Vec<&[u32]> = words[2 + nv..].chunks_exact(4).collect();
    let mut factor = 1u64;
    let mut i = 0;
    while i < edges.len() {
        let mut j = i;
        while j < edges.len() && edges[j] == edges[i] {
            j += 1;
        }
        let m = (j - i) as u64;
        factor *= (1..=m).product::<u64>();
        if edges[i][0..2] == edges[i][2..4] {
            factor *= 1 << m;
        }
        i = j;
    }
    factor
}
