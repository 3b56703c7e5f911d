//! Todd–Coxeter coset enumeration over the trivial subgroup, HLT strategy
//! with a lookahead pass and table compaction when the coset cap is hit.

use std::time::{Duration, Instant};

const NONE: u32 = u32::MAX;

pub struct Outcome {
    /// Live cosets in the completed table, `None` if a limit was hit.
    pub index: Option<usize>,
    /// Most cosets simultaneously allocated.
    pub peak: usize,
}

struct Table {
    cols: usize,
    rows: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
}

impl Table {
    fn new(cols: usize) -> Self {
        Table {
            cols,
            rows: vec![vec![NONE; cols]],
            parent: vec![0],
            live: 1,
        }
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> u32 {
        let d = self.rows.len() as u32;
        self.rows.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.rows[c as usize][x] = d;
        self.rows[d as usize][x ^ 1] = c;
        d
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi as usize] = lo;
        self.live -= 1;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.rows[e as usize][x];
                if f == NONE {
                    continue;
                }
                if self.rows[f as usize][x ^ 1] == e {
                    self.rows[f as usize][x ^ 1] = NONE;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.rows[e1 as usize][x];
                let fx = self.rows[f1 as usize][x ^ 1];
                if ex != NONE {
                    self.merge(f1, ex, &mut queue);
                } else if fx != NONE {
                    self.merge(e1, fx, &mut queue);
                } else {
                    self.rows[e1 as usize][x] = f1;
                    self.rows[f1 as usize][x ^ 1] = e1;
                }
            }
        }
    }

    /// Scans `w` at `c`, defining cosets as needed if `fill`.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) {
        loop {
            let (mut f, mut i) = (c, 0);
            let (mut b, mut j) = (c, w.len());
            while i < j && self.rows[f as usize][w[i]] != NONE {
                f = self.rows[f as usize][w[i]];
                i += 1;
            }
            if i == j {
                if f != c {
                    self.coincidence(f, c);
                }
                return;
            }
            while j > i && self.rows[b as usize][w[j - 1] ^ 1] != NONE {
                b = self.rows[b as usize][w[j - 1] ^ 1];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return;
            }
            if j == i + 1 {
                self.rows[f as usize][w[i]] = b;
                self.rows[b as usize][w[i] ^ 1] = f;
                return;
            }
            if !fill {
                return;
            }
            self.define(f, w[i]);
        }
    }

    /// Renumbers live cosets densely, keeping their order.
    fn compact(&mut self) {
        let mut new_id = vec![NONE; self.rows.len()];
        let mut next = 0;
        for c in 0..self.rows.len() {
            if self.is_live(c as u32) {
                new_id[c] = next;
                next += 1;
            }
        }
        let reps: Vec<u32> = (0..self.rows.len() as u32).map(|c| self.rep(c)).collect();
        let mut rows = Vec::with_capacity(next as usize);
        for c in 0..self.rows.len() {
            if new_id[c] == NONE {
                continue;
            }
            let row = self.rows[c]
                .iter()
                .map(|&d| {
                    if d == NONE {
                        NONE
                    } else {
                        new_id[reps[d as usize] as usize]
                    }
                })
                .collect();
            rows.push(row);
        }
        self.rows = rows;
        self.parent = (0..next).collect();
        self.live = next as usize;
    }
}

fn columns(relator: &[i32]) -> Vec<usize> {
    relator
        .iter()
        .map(|&l| {
            let g = (l.unsigned_abs() - 1) as usize;
            if l > 0 {
                2 * g
            } else {
                2 * g + 1
            }
        })
        .collect()
}

/// Enumerates cosets of the trivial subgroup. Generators are `1..=gens`,
/// relator letters are signed generator numbers.
pub fn enumerate(
    gens: usize,
    relators: &[Vec<i32>],
    max_cosets: usize,
    max_time: Option<Duration>,
) -> Outcome {
    let start = Instant::now();
    let rels: Vec<Vec<usize>> = relators.iter().map(|r| columns(r)).collect();
    let mut t = Table::new(2 * gens);
    let mut peak = 1;
    let mut c = 0usize;
    while c < t.rows.len() {
        if max_time.is_some_and(|m| start.elapsed() > m) {
            return Outcome { index: None, peak };
        }
        if t.is_live(c as u32) {
            for r in &rels {
                t.scan(c as u32, r, true);
                if !t.is_live(c as u32) {
                    break;
                }
            }
            if t.is_live(c as u32) {
                for x in 0..t.cols {
                    if t.rows[c][x] == NONE {
                        t.define(c as u32, x);
                    }
                }
            }
        }
        peak = peak.max(t.rows.len());
        c += 1;
        if t.rows.len() >= max_cosets {
            // lookahead: deduce without defining, then compact
            let mut d = 0;
            while d < t.rows.len() {
                if t.is_live(d as u32) {
                    for r in &rels {
                        t.scan(d as u32, r, false);
                        if !t.is_live(d as u32) {
                            break;
                        }
                    }
                }
                d += 1;
            }
            let before_c = (0..c).filter(|&x| t.is_live(x as u32)).count();
            t.compact();
            c = before_c;
            if t.rows.len() >= max_cosets {
                return Outcome { index: None, peak };
            }
        }
    }
    let complete = (0..t.rows.len())
        .filter(|&c| t.is_live(c as u32))
        .all(|c| t.rows[c].iter().all(|&d| d != NONE));
    Outcome {
        index: complete.then_some(t.live),
        peak,
    }
}
