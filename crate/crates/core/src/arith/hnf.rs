//! Column Hermite normal form.
//!
//! Convention: `H = M * U` is lower triangular with a positive diagonal and
//! every entry left of a pivot reduced into `[0, pivot)`. Two full-rank
//! integer matrices generate the same lattice iff their forms are equal.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Integer};
use crate::error::{Error, Result};

/// Column HNF of a square matrix of full column rank.
pub fn hnf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
    }
    column_hnf(m)
}

/// HNF of the lattice generated by the columns of an `n x m` matrix of rank `n`.
///
/// Returns the `n x n` basis and the `m x m` unimodular transform; the trailing
/// `m - n` columns of `M * U` are zero.
pub fn hnf_generators(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let (h, u) = column_hnf(m)?;
    let n = m.rows();
    let mut basis = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            basis[(i, j)] = h[(i, j)].clone();
        }
    }
    Ok((basis, u))
}

fn egcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    // returns (g, s, t) with s*a + t*b = g >= 0
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Replaces columns (i, j) of `m` by (s*ci + t*cj, x*ci + y*cj).
fn combine_cols(m: &mut IntMatrix, i: usize, j: usize, [s, t, x, y]: [&Integer; 4]) {
    for r in 0..m.rows() {
        let ci = m[(r, i)].clone();
        let cj = m[(r, j)].clone();
        m[(r, i)] = s * &ci + t * &cj;
        m[(r, j)] = x * &ci + y * &cj;
    }
}

fn column_hnf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let n = m.rows();
    let cols = m.cols();
    if n > cols {
        return Err(Error::RankDeficient { rank: cols, needed: n });
    }
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    for i in 0..n {
        // bring a pivot to column i
        if h[(i, i)].is_zero() {
            match (i + 1..cols).find(|&j| !h[(i, j)].is_zero()) {
                Some(j) => {
                    h.swap_cols(i, j);
                    u.swap_cols(i, j);
                }
                None => return Err(Error::RankDeficient { rank: i, needed: n }),
            }
        }
        for j in i + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(i, i)].clone();
            let b = h[(i, j)].clone();
            let (g, s, t) = egcd(&a, &b);
            let x = -(&b / &g);
            let y = &a / &g;
            combine_cols(&mut h, i, j, [&s, &t, &x, &y]);
            combine_cols(&mut u, i, j, [&s, &t, &x, &y]);
        }
        if h[(i, i)].is_negative() {
            for r in 0..n {
                h[(r, i)] = -h[(r, i)].clone();
            }
            for r in 0..cols {
                u[(r, i)] = -u[(r, i)].clone();
            }
        }
        let pivot = h[(i, i)].clone();
        for j in 0..i {
            let q = h[(i, j)].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = &q * &h[(r, i)];
                h[(r, j)] -= v;
            }
            for r in 0..cols {
                let v = &q * &u[(r, i)];
                u[(r, j)] -= v;
            }
        }
    }
    Ok((h, u))
}
