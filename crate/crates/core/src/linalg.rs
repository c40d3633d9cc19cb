//! Exact rank over ℚ.
//!
//! Vectors are cleared of denominators and reduced fraction-free: a vector
//! `v` with leading entry `a` at a pivot `p` with leading entry `b` becomes
//! `b·v − a·p`, then is divided by the gcd of its entries. Scaling a vector
//! never changes a rank, so the integer echelon form is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::formal::Q;

/// Sparse integer vector, sorted by index, no zero entries.
pub type SparseVec = Vec<(usize, BigInt)>;

/// Turn rational entries into a primitive integer vector with the same span.
pub fn primitive(entries: impl IntoIterator<Item = (usize, Q)>) -> SparseVec {
    let mut v: Vec<(usize, Q)> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|(i, _)| *i);
    let lcm = v.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: SparseVec = v.into_iter().map(|(i, c)| (i, (c * Q::from(lcm.clone())).to_integer())).collect();
    normalize(ints)
}

fn normalize(mut v: SparseVec) -> SparseVec {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c /= &g;
        }
    }
    if v.first().is_some_and(|(_, c)| c.is_negative()) {
        for (_, c) in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// `b·v − a·p` for the leading entries `a` of `v` and `b` of `p` at the same index.
fn eliminate(v: &SparseVec, p: &SparseVec) -> SparseVec {
    let a = &v[0].1;
    let b = &p[0].1;
    let g = a.gcd(b);
    let (a, b) = (a / &g, b / &g);
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j == p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i == v.len() || (j < p.len() && p[j].0 < v[i].0);
        let (idx, c) = if take_v {
            i += 1;
            (v[i - 1].0, &b * &v[i - 1].1)
        } else if take_p {
            j += 1;
            (p[j - 1].0, -(&a * &p[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (v[i - 1].0, &b * &v[i - 1].1 - &a * &p[j - 1].1)
        };
        if !c.is_zero() {
            out.push((idx, c));
        }
    }
    normalize(out)
}

/// Row echelon basis of a growing span, keyed by leading index.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` against the pivots; zero means `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, _)) = v.first() {
            match self.pivots.get(lead) {
                Some(p) => v = eliminate(&v, p),
                None => break,
            }
        }
        v
    }

    /// Insert a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(normalize(v));
        match r.first() {
            Some(&(lead, _)) => {
                self.pivots.insert(lead, r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(normalize(v)).is_empty()
    }
}

/// Rank of the span of the given vectors. Short vectors go first, which
/// keeps fill-in low on sparse boundary matrices.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut order: Vec<&SparseVec> = vectors.iter().filter(|v| !v.is_empty()).collect();
    order.sort_by_key(|v| v.len());
    let mut e = Echelon::new();
    for v in order {
        e.insert(v.clone());
    }
    e.rank()
}

/// Dense Gaussian elimination over ℚ; an independent oracle for [`rank`].
#[allow(clippy::needless_range_loop)]
pub fn dense_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = Q::one() / m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Dense rows of a sparse vector list with `width` columns.
pub fn to_dense(vectors: &[SparseVec], width: usize) -> Vec<Vec<Q>> {
    vectors
        .iter()
        .map(|v| {
            let mut row = vec![Q::zero(); width];
            for (i, c) in v {
                row[*i] = Q::from(c.clone());
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{q, q_frac};

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        primitive(entries.iter().map(|&(i, c)| (i, q(c))))
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[v(&[(0, 2), (1, 4)]), v(&[(0, 1), (1, 2)])]), 1);
        assert_eq!(rank(&[v(&[(0, 1)]), v(&[(1, 1)]), v(&[(0, 1), (1, 1)])]), 2);
        assert_eq!(rank(&[v(&[(0, 3), (2, 5)]), v(&[(1, 7), (2, 1)]), v(&[(0, 3), (1, 7), (2, 6)])]), 2);
    }

    #[test]
    fn primitive_clears_denominators() {
        let p = primitive([(3, q_frac(1, 2)), (1, q_frac(-1, 3))]);
        assert_eq!(p, vec![(1, BigInt::from(2)), (3, BigInt::from(-3))]);
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        e.insert(v(&[(0, 1), (1, -1)]));
        e.insert(v(&[(1, 1), (2, -1)]));
        assert!(e.contains(v(&[(0, 1), (2, -1)])));
        assert!(!e.contains(v(&[(0, 1)])));
    }

    #[test]
    fn dense_agrees_on_small() {
        let vs = vec![v(&[(0, 1), (2, 2)]), v(&[(1, 1)]), v(&[(0, 2), (1, 3), (2, 4)])];
        assert_eq!(dense_rank(&to_dense(&vs, 3)), rank(&vs));
    }
}
