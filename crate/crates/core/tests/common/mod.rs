//! Brute-force oracles shared by the integration tests. Nothing here uses the
//! library's canonical labeling.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use pantscx::moves::Variant;
use pantscx::PantGraph;

/// Dart-level view of a graph.
struct Raw {
    partner: Vec<usize>,
    vertex: Vec<usize>,
    block_size: Vec<usize>,
    label: Vec<Option<u32>>,
}

impl Raw {
    fn of(g: &PantGraph) -> Raw {
        let nd = g.num_darts();
        let mut label = vec![None; nd];
        for &(l, d) in g.leaves() {
            label[d] = Some(l);
        }
        Raw {
            partner: (0..nd).map(|d| g.partner(d)).collect(),
            vertex: (0..nd).map(|d| g.vertex_of(d)).collect(),
            block_size: g.vertices().iter().map(|b| b.len()).collect(),
            label,
        }
    }
}

/// Calls `visit` with every dart bijection `a -> b` preserving edges, vertex
/// blocks and leaf labels, found by exhaustive backtracking.
fn each_isomorphism(a: &PantGraph, b: &PantGraph, visit: &mut dyn FnMut(&[usize])) {
    let (ra, rb) = (Raw::of(a), Raw::of(b));
    if ra.partner.len() != rb.partner.len() || ra.block_size.len() != rb.block_size.len() {
        return;
    }
    let nd = ra.partner.len();
    let mut f = vec![usize::MAX; nd];
    let mut used = vec![false; nd];
    let mut vmap = vec![usize::MAX; ra.block_size.len()];
    let mut vused = vec![false; rb.block_size.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        d: usize,
        ra: &Raw,
        rb: &Raw,
        f: &mut [usize],
        used: &mut [bool],
        vmap: &mut [usize],
        vused: &mut [bool],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if d == f.len() {
            visit(f);
            return;
        }
        for x in 0..f.len() {
            if used[x] || ra.label[d] != rb.label[x] {
                continue;
            }
            let (va, vb) = (ra.vertex[d], rb.vertex[x]);
            let fresh = vmap[va] == usize::MAX;
            if fresh {
                if vused[vb] || ra.block_size[va] != rb.block_size[vb] {
                    continue;
                }
            } else if vmap[va] != vb {
                continue;
            }
            let pd = ra.partner[d];
            if f[pd] != usize::MAX && f[pd] != rb.partner[x] {
                continue;
            }
            if f[pd] == usize::MAX && used[rb.partner[x]] {
                continue;
            }
            f[d] = x;
            used[x] = true;
            if fresh {
                vmap[va] = vb;
                vused[vb] = true;
            }
            go(d + 1, ra, rb, f, used, vmap, vused, visit);
            f[d] = usize::MAX;
            used[x] = false;
            if fresh {
                vmap[va] = usize::MAX;
                vused[vb] = false;
            }
        }
    }
    go(0, &ra, &rb, &mut f, &mut used, &mut vmap, &mut vused, visit);
}

/// Number of structure-preserving dart bijections `a -> b`.
pub fn isomorphisms(a: &PantGraph, b: &PantGraph) -> u64 {
    let mut count = 0;
    each_isomorphism(a, b, &mut |_| count += 1);
    count
}

pub fn all_isomorphisms(a: &PantGraph, b: &PantGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    each_isomorphism(a, b, &mut |f| out.push(f.to_vec()));
    out
}

pub fn brute_isomorphic(a: &PantGraph, b: &PantGraph) -> bool {
    isomorphisms(a, b) > 0
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Trivalent-vertex adjacency counts plus the trivalent neighbor of each
/// labeled leaf.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Multigraph {
    pub adj: Vec<Vec<u8>>,
    pub leaf_at: Vec<usize>,
}

impl Multigraph {
    /// Minimum over all relabelings of the trivalent vertices.
    pub fn canonical(&self) -> Multigraph {
        let t = self.adj.len();
        permutations(t)
            .into_iter()
            .map(|p| {
                let mut adj = vec![vec![0u8; t]; t];
                for i in 0..t {
                    for j in 0..t {
                        adj[p[i]][p[j]] = self.adj[i][j];
                    }
                }
                Multigraph {
                    adj,
                    leaf_at: self.leaf_at.iter().map(|&v| p[v]).collect(),
                }
            })
            .min()
            .unwrap()
    }

    fn connected(&self) -> bool {
        let t = self.adj.len();
        if t == 0 {
            return self.leaf_at.len() == 2;
        }
        let mut seen = vec![false; t];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..t {
                if self.adj[v][w] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

pub fn multigraph_of(g: &PantGraph) -> Multigraph {
    let tri: Vec<usize> = (0..g.vertices().len())
        .filter(|&v| g.degree(v) == 3)
        .collect();
    let pos: BTreeMap<usize, usize> = tri.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let t = tri.len();
    let mut adj = vec![vec![0u8; t]; t];
    for &[x, y] in g.edges() {
        if let (Some(&i), Some(&j)) = (pos.get(&g.vertex_of(x)), pos.get(&g.vertex_of(y))) {
            adj[i][j] += 1;
            if i != j {
                adj[j][i] += 1;
            }
        }
    }
    let mut leaves = g.leaves().to_vec();
    leaves.sort();
    let leaf_at = leaves
        .iter()
        .map(|&(_, d)| pos[&g.vertex_of(g.partner(d))])
        .collect();
    Multigraph { adj, leaf_at }
}

/// Trivalent vertex count of a pant graph of type `(g, n)`.
pub fn trivalent(g: u32, n: u32) -> usize {
    (2 * g as i64 - 2 + n as i64) as usize
}

/// Every perfect matching of the dart set `3T + n` with fixed vertex
/// blocks, kept when connected. Feasible up to about 14 darts.
pub fn matching_graphs(g: u32, n: u32) -> Vec<PantGraph> {
    let t = trivalent(g, n);
    let nd = 3 * t + n as usize;
    let mut vertices: Vec<Vec<usize>> = (0..t).map(|k| vec![3 * k, 3 * k + 1, 3 * k + 2]).collect();
    let mut leaves = Vec::new();
    for i in 0..n as usize {
        vertices.push(vec![3 * t + i]);
        leaves.push((i as u32 + 1, 3 * t + i));
    }
    let mut out = Vec::new();
    let mut mate = vec![usize::MAX; nd];
    fn rec(mate: &mut Vec<usize>, out: &mut Vec<Vec<[usize; 2]>>) {
        let Some(d) = mate.iter().position(|&m| m == usize::MAX) else {
            let mut edges = Vec::new();
            for (a, &b) in mate.iter().enumerate() {
                if a < b {
                    edges.push([a, b]);
                }
            }
            out.push(edges);
            return;
        };
        for e in d + 1..mate.len() {
            if mate[e] == usize::MAX {
                mate[d] = e;
                mate[e] = d;
                rec(mate, out);
                mate[d] = usize::MAX;
                mate[e] = usize::MAX;
            }
        }
    }
    if nd % 2 == 1 {
        return out;
    }
    let mut all = Vec::new();
    rec(&mut mate, &mut all);
    for edges in all {
        // renumber so that edge i holds darts 2i, 2i+1 as the constructor wants
        let mut relabel = vec![0; nd];
        for (i, &[a, b]) in edges.iter().enumerate() {
            relabel[a] = 2 * i;
            relabel[b] = 2 * i + 1;
        }
        let e2: Vec<[usize; 2]> = (0..edges.len()).map(|i| [2 * i, 2 * i + 1]).collect();
        let v2: Vec<Vec<usize>> = vertices
            .iter()
            .map(|b| b.iter().map(|&d| relabel[d]).collect())
            .collect();
        let l2: Vec<(u32, usize)> = leaves.iter().map(|&(l, d)| (l, relabel[d])).collect();
        let Ok(gr) = PantGraph::new(e2, v2, l2) else {
            continue;
        };
        if leaf_edges_ok(&gr) && multigraph_of(&gr).connected() {
            out.push(gr);
        }
    }
    out
}

/// Leaves must hang on trivalent vertices.
fn leaf_edges_ok(g: &PantGraph) -> bool {
    g.leaves()
        .iter()
        .all(|&(_, d)| g.degree(g.vertex_of(g.partner(d))) == 3)
}

/// Isomorphism classes of the matching graphs, as canonical multigraphs.
pub fn matching_classes(g: u32, n: u32) -> BTreeSet<Multigraph> {
    matching_graphs(g, n)
        .iter()
        .map(|x| multigraph_of(x).canonical())
        .collect()
}

/// Isomorphism classes by direct enumeration of stub multigraphs: leaves are
/// assigned to trivalent vertices, then the remaining stubs are paired.
pub fn multigraph_classes(g: u32, n: u32) -> BTreeSet<Multigraph> {
    let t = trivalent(g, n);
    let mut out = BTreeSet::new();
    let n = n as usize;
    let mut leaf_at = vec![0; n];
    fn assign(i: usize, t: usize, leaf_at: &mut Vec<usize>, out: &mut BTreeSet<Multigraph>) {
        if i == leaf_at.len() {
            let mut stubs = vec![3u8; t];
            for &v in leaf_at.iter() {
                if stubs[v] == 0 {
                    return;
                }
                stubs[v] -= 1;
            }
            let mut adj = vec![vec![0u8; t]; t];
            pair(&mut stubs, &mut adj, leaf_at, out);
            return;
        }
        for v in 0..t {
            leaf_at[i] = v;
            assign(i + 1, t, leaf_at, out);
        }
    }
    fn pair(
        stubs: &mut Vec<u8>,
        adj: &mut Vec<Vec<u8>>,
        leaf_at: &[usize],
        out: &mut BTreeSet<Multigraph>,
    ) {
        let Some(v) = stubs.iter().position(|&s| s > 0) else {
            let m = Multigraph {
                adj: adj.clone(),
                leaf_at: leaf_at.to_vec(),
            };
            if m.connected() {
                out.insert(m.canonical());
            }
            return;
        };
        if stubs[v] >= 2 {
            stubs[v] -= 2;
            adj[v][v] += 1;
            pair(stubs, adj, leaf_at, out);
            adj[v][v] -= 1;
            stubs[v] += 2;
        }
        for w in v + 1..stubs.len() {
            if stubs[w] > 0 {
                stubs[v] -= 1;
                stubs[w] -= 1;
                adj[v][w] += 1;
                adj[w][v] += 1;
                pair(stubs, adj, leaf_at, out);
                adj[v][w] -= 1;
                adj[w][v] -= 1;
                stubs[v] += 1;
                stubs[w] += 1;
            }
        }
    }
    if t == 0 {
        return out;
    }
    assign(0, t, &mut leaf_at, &mut out);
    out
}

/// Buildable types with `3g - 3 + n <= k`.
pub fn buildable_up_to(k: i64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for g in 0..=3u32 {
        for n in 0..=8u32 {
            let dim = 3 * g as i64 - 3 + n as i64;
            if dim >= 0 && dim <= k && 2 * g as i64 - 2 + n as i64 > 0 {
                out.push((g, n));
            }
        }
    }
    out
}

/// Applies a dart permutation and shuffles block order, producing an
/// isomorphic copy with different storage.
pub fn relabel(g: &PantGraph, perm: &[usize], rotate_blocks: usize) -> PantGraph {
    let edges: Vec<[usize; 2]> = g.edges().iter().map(|&[a, b]| [perm[a], perm[b]]).collect();
    let mut vertices: Vec<Vec<usize>> = g
        .vertices()
        .iter()
        .map(|blk| {
            let mut v: Vec<usize> = blk.iter().map(|&d| perm[d]).collect();
            let r = rotate_blocks % v.len().max(1);
            v.rotate_left(r);
            v
        })
        .collect();
    let k = vertices.len();
    vertices.rotate_left(rotate_blocks % k.max(1));
    let leaves = g.leaves().iter().map(|&(l, d)| (l, perm[d])).collect();
    PantGraph::new(edges, vertices, leaves).unwrap()
}

/// The recoupling read directly off the definition: drop `e`, pool the four
/// outer darts and split them as `{a,d}{b,c}` or `{a,c}{b,d}`.
pub fn recouple_by_hand(g: &PantGraph, edge: usize, variant: Variant) -> Vec<BTreeSet<usize>> {
    let [e1, e2] = g.edges()[edge];
    let (v1, v2) = (g.vertex_of(e1), g.vertex_of(e2));
    let ab: Vec<usize> = g.vertices()[v1]
        .iter()
        .copied()
        .filter(|&d| d != e1)
        .collect();
    let cd: Vec<usize> = g.vertices()[v2]
        .iter()
        .copied()
        .filter(|&d| d != e2)
        .collect();
    let (a, b, c, d) = (ab[0], ab[1], cd[0], cd[1]);
    let (x, y) = match variant {
        Variant::CrossAd => ([a, d, e1], [b, c, e2]),
        Variant::CrossAc => ([a, c, e1], [b, d, e2]),
    };
    let mut blocks: Vec<BTreeSet<usize>> = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(v, _)| v != v1 && v != v2)
        .map(|(_, b)| b.iter().copied().collect())
        .collect();
    blocks.push(x.into_iter().collect());
    blocks.push(y.into_iter().collect());
    blocks.sort();
    blocks
}

pub fn partition(g: &PantGraph) -> Vec<BTreeSet<usize>> {
    let mut b: Vec<BTreeSet<usize>> = g
        .vertices()
        .iter()
        .map(|v| v.iter().copied().collect())
        .collect();
    b.sort();
    b
}
