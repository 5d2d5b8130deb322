//! Finite-field helpers: prime search, projective lines, complements.

use crate::arith::{is_prime, kernel_mod_p};
use crate::error::{Error, Result};

/// A vector over `Z_p` with reduced entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPVector {
    pub entries: Vec<u64>,
    pub p: u64,
}

impl ModPVector {
    pub fn new(entries: Vec<u64>, p: u64) -> Self {
        Self { entries: entries.into_iter().map(|v| v % p).collect(), p }
    }

    pub fn zero(n: usize, p: u64) -> Self {
        Self { entries: vec![0; n], p }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn dot(&self, other: &[u64]) -> u64 {
        dot_mod(&self.entries, other, self.p)
    }
}

pub(crate) fn dot_mod(a: &[u64], b: &[u64], p: u64) -> u64 {
    let s: u128 = a.iter().zip(b).map(|(&x, &y)| x as u128 * y as u128).sum();
    (s % p as u128) as u64
}

/// A one-dimensional subspace of `Z_p^n`, stored by its canonical
/// representative (first nonzero entry equal to 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    rep: ModPVector,
}

impl Line {
    /// Normalizes any nonzero vector to its line.
    pub fn through(v: &ModPVector) -> Option<Self> {
        let lead = *v.entries.iter().find(|&&x| x != 0)?;
        let inv = crate::arith::mod_inverse(lead, v.p);
        let entries = v.entries.iter().map(|&x| ((x as u128 * inv as u128) % v.p as u128) as u64);
        Some(Self { rep: ModPVector { entries: entries.collect(), p: v.p } })
    }

    pub fn rep(&self) -> &ModPVector {
        &self.rep
    }

    pub fn entries(&self) -> &[u64] {
        &self.rep.entries
    }
}

/// Smallest prime `p` with `N < p < 4N/3` when `N > 1000`, else 3.
pub fn find_prime(n: u64) -> Result<u64> {
    if n <= 1000 {
        return Ok(3);
    }
    let limit = n as u128 * 4;
    (n + 1..)
        .take_while(|&p| 3 * (p as u128) < limit)
        .find(|&p| is_prime(p))
        .ok_or_else(|| Error::ExistenceViolated(format!("no prime in ({n}, 4*{n}/3)")))
}

/// All lines of `Z_p^n` in lexicographic order of representatives.
pub fn lines(p: u64, n: usize) -> Result<Lines> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::invalid("lines need n >= 1"));
    }
    let mut first = vec![0; n];
    first[n - 1] = 1;
    Ok(Lines { p, next: Some(first) })
}

/// Iterator returned by [`lines`].
#[derive(Debug, Clone)]
pub struct Lines {
    p: u64,
    next: Option<Vec<u64>>,
}

impl Lines {
    /// `(p^n - 1) / (p - 1)`.
    pub fn count_for(p: u64, n: usize) -> u128 {
        (0..n as u32).map(|k| (p as u128).pow(k)).sum()
    }
}

impl Iterator for Lines {
    type Item = Line;

    fn next(&mut self) -> Option<Line> {
        let cur = self.next.take()?;
        let lead = cur.iter().position(|&x| x != 0).expect("nonzero");
        let mut succ = cur.clone();
        // advance the free trailing coordinates as a base-p counter
        let mut i = succ.len();
        let mut carried = true;
        while i > lead + 1 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.p {
                carried = false;
                break;
            }
            succ[i] = 0;
        }
        if carried {
            // trailing part exhausted: move the leading 1 one step left
            self.next = (lead > 0).then(|| {
                let mut v = vec![0; succ.len()];
                v[lead - 1] = 1;
                v
            });
        } else {
            self.next = Some(succ);
        }
        Some(Line { rep: ModPVector { entries: cur, p: self.p } })
    }
}

/// Columns spanning `q^⊥ = {y : <q, y> = 0 (mod p)}`.
pub fn complement_basis(q: &Line, p: u64, n: usize) -> Result<Vec<Vec<u64>>> {
    if n < 2 {
        return Err(Error::invalid("complement basis needs n >= 2"));
    }
    if q.entries().len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: q.entries().len() });
    }
    kernel_mod_p(&[q.entries().to_vec()], n, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn reps(p: u64, n: usize) -> Vec<Vec<u64>> {
        lines(p, n).unwrap().map(|l| l.entries().to_vec()).collect()
    }

    #[test]
    fn prime_examples() {
        assert_eq!(find_prime(500).unwrap(), 3);
        assert_eq!(find_prime(1001).unwrap(), 1009);
        assert_eq!(find_prime(2000).unwrap(), 2003);
    }

    #[test]
    fn line_examples() {
        assert_eq!(reps(3, 2), vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(reps(2, 3).len(), 7);
        assert_eq!(reps(2, 1), vec![vec![1]]);
        assert_eq!(Lines::count_for(5, 3), 31);
    }

    #[test]
    fn lines_partition_nonzero_vectors() {
        for p in [2u64, 3, 5] {
            for n in 1..=3usize {
                let all = reps(p, n);
                assert_eq!(all.len() as u128, Lines::count_for(p, n));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                let set: HashSet<_> = all.iter().cloned().collect();
                let total = p.pow(n as u32);
                for code in 1..total {
                    let v: Vec<u64> = (0..n).map(|i| (code / p.pow(i as u32)) % p).collect();
                    let line = Line::through(&ModPVector::new(v, p)).unwrap();
                    assert!(set.contains(line.entries()));
                }
            }
        }
    }

    #[test]
    fn complement_examples() {
        let line = |v: Vec<u64>, p| Line::through(&ModPVector::new(v, p)).unwrap();
        assert_eq!(complement_basis(&line(vec![1, 0], 3), 3, 2).unwrap(), vec![vec![0, 1]]);
        assert_eq!(complement_basis(&line(vec![1, 1], 3), 3, 2).unwrap(), vec![vec![1, 2]]);
        assert_eq!(
            complement_basis(&line(vec![0, 0, 1], 5), 5, 3).unwrap(),
            vec![vec![1, 0, 0], vec![0, 1, 0]]
        );
    }
}
