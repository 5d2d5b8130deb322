use crate::error::{Error, Result};

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn mod_inverse(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Basis of `{x : M x = 0 (mod p)}` for `M` given as rows of residues.
///
/// Basis vectors are ordered by free column and scaled so their first
/// nonzero entry is 1. The basis size is `cols - rank(M mod p)`.
pub fn kernel_mod_p(rows: &[Vec<u64>], cols: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for r in rows {
        if r.len() != cols {
            return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
        }
        m.push(r.iter().map(|v| v % p).collect());
    }
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = mod_inverse(m[rank][c], p);
        for v in m[rank].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    let sub = mul_mod(f, m[rank][k], p);
                    m[r][k] = (m[r][k] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let mut basis = Vec::with_capacity(cols - rank);
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[r][free]) % p;
        }
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero kernel vector");
        let inv = mod_inverse(lead, p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        basis.push(v);
    }
    Ok(basis)
}
