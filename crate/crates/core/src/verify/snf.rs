//! Integer elimination for ranks and invariant factors. Runs in checked
//! `i64` and restarts over `BigInt` on overflow.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Floor-free quotient toward zero.
    fn quot(&self, d: &Self) -> Self;
    /// `self - q * other`, `None` on overflow.
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*other)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Diagonalizes by row and column operations; returns the nonzero diagonal
/// entries (absolute values, not yet in divisibility order).
fn diagonalize<T: Entry>(mut m: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs_lt(&m[pi][pj])) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].quot(&p);
                for j in t..cols {
                    let v = m[i][j].sub_mul(&q, &m[t][j])?;
                    m[i][j] = v;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].quot(&p);
                for row in m.iter_mut().skip(t) {
                    let v = row[j].sub_mul(&q, &row[t])?;
                    row[j] = v;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // a remainder is smaller than the pivot: move it into place
            let (mut bi, mut bj) = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs_lt(&m[bi][bj]) {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs_lt(&m[bi][bj]) {
                    (bi, bj) = (t, j);
                }
            }
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
        }
        let p = m[t][t].clone();
        diag.push(p);
        t += 1;
    }
    Some(diag)
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !Zero::is_zero(&b) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Invariant factors (each dividing the next) of an integer matrix, with
/// units included.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let diag: Vec<BigInt> = match diagonalize(m.to_vec()) {
        Some(d) => d.iter().map(Entry::to_big).collect(),
        None => {
            let big = m
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            diagonalize::<BigInt>(big).expect("bigint never overflows")
        }
    };
    let mut d: Vec<BigInt> = diag.iter().map(|x| x.abs()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = gcd(&d[i], &d[j]);
            if g != d[i] {
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    invariant_factors(m).len()
}

/// Invariant factors greater than one.
pub fn torsion(factors: &[BigInt]) -> Vec<BigInt> {
    factors.iter().filter(|f| !f.is_one()).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(invariant_factors(&[vec![2, 4], vec![6, 8]]), big(&[2, 4]));
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), big(&[1, 6]));
        assert_eq!(invariant_factors(&[vec![0, 0], vec![0, 0]]), big(&[]));
        assert_eq!(rank(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]]), 2);
    }

    #[test]
    fn large_entries() {
        let a = i64::MAX / 3;
        let f = invariant_factors(&[vec![a, a - 1], vec![a - 1, a - 2]]);
        assert_eq!(f, big(&[1, 1]));
    }
}
