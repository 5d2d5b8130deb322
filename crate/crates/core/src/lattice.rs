//! Full-rank lattices with exact rational bases.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    self, hnf, hnf_generators, kernel_mod_p, mod_u64, round_int, IntMatrix, Integer, Rational,
    RationalMatrix,
};
use crate::error::{Error, Result};

/// A point `B z` of a lattice together with its coefficient vector `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub coeffs: Vec<Integer>,
    pub ambient: Vec<Rational>,
}

impl LatticePoint {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact Gram-Schmidt data of a basis (columns).
#[derive(Debug, Clone)]
pub(crate) struct GramSchmidt {
    /// `mu[i][j] = <b_i, b*_j> / <b*_j, b*_j>` for `j < i`.
    pub mu: Vec<Vec<Rational>>,
    /// `|b*_i|^2`.
    pub norms: Vec<Rational>,
}

impl GramSchmidt {
    pub fn new(cols: &[Vec<Rational>]) -> Self {
        let n = cols.len();
        let mut stars: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rational::zero(); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = cols[i].clone();
            for j in 0..i {
                let m = arith::dot(&cols[i], &stars[j]) / &norms[j];
                for (x, s) in v.iter_mut().zip(&stars[j]) {
                    *x -= &m * s;
                }
                mu[i][j] = m;
            }
            norms.push(arith::norm2_sq(&v));
            stars.push(v);
        }
        Self { mu, norms }
    }
}

/// LLL-conditioned view of a lattice used by the enumerators.
#[derive(Debug, Clone)]
pub(crate) struct Reduced {
    pub basis: RationalMatrix,
    /// Original coefficients are `transform * reduced coefficients`.
    pub transform: IntMatrix,
    pub inverse: RationalMatrix,
    pub gs: GramSchmidt,
}

/// A full-rank lattice `B Z^n`; columns of `B` are the basis vectors.
#[derive(Debug, Clone)]
pub struct Lattice {
    basis: RationalMatrix,
    inverse: RationalMatrix,
    dual: RationalMatrix,
    reduced: OnceLock<Reduced>,
}

impl PartialEq for Lattice {
    /// Basis equality; use [`Lattice::same_lattice`] for point-set equality.
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Lattice {}

impl Lattice {
    pub fn new(basis: RationalMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch { expected: basis.rows(), got: basis.cols() });
        }
        if basis.rows() == 0 {
            return Err(Error::invalid("lattice dimension must be at least 1"));
        }
        let inverse = basis.inverse()?;
        let dual = inverse.transpose();
        Ok(Self { basis, inverse, dual, reduced: OnceLock::new() })
    }

    /// Lattice from integer rows (columns are basis vectors).
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(RationalMatrix::from_int_rows(rows)?)
    }

    pub fn integer(n: usize) -> Self {
        Self::new(RationalMatrix::identity(n)).expect("identity is nonsingular")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// `B^{-T}`, a basis of the dual lattice.
    pub fn dual(&self) -> &RationalMatrix {
        &self.dual
    }

    pub fn inverse(&self) -> &RationalMatrix {
        &self.inverse
    }

    /// `|det B|`.
    pub fn determinant(&self) -> Rational {
        self.basis.det().expect("square").abs()
    }

    fn check_dim(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    /// Coefficients `B^{-1} x` when they are integral.
    pub fn coefficients(&self, x: &[Rational]) -> Result<Option<Vec<Integer>>> {
        self.check_dim(x)?;
        let c = self.inverse.mul_vec(x)?;
        Ok(c.iter().all(|v| v.is_integer()).then(|| c.iter().map(|v| v.to_integer()).collect()))
    }

    /// Exact membership: `B^{-1} x` is integral.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.coefficients(x)?.is_some())
    }

    pub fn point(&self, coeffs: Vec<Integer>) -> LatticePoint {
        let ambient = self.basis.mul_int_vec(&coeffs);
        LatticePoint { coeffs, ambient }
    }

    /// Re-expresses an ambient point of this lattice in its basis.
    pub fn point_from_ambient(&self, ambient: Vec<Rational>) -> Result<LatticePoint> {
        let coeffs = self
            .coefficients(&ambient)?
            .ok_or_else(|| Error::invalid("point is not in the lattice"))?;
        Ok(LatticePoint { coeffs, ambient })
    }

    /// Canonical basis: column HNF of the denominator-cleared basis.
    pub fn hnf_basis(&self) -> RationalMatrix {
        let d = self.basis.common_denominator();
        let (h, _) = hnf(&self.basis.to_int_scaled(&d)).expect("nonsingular basis");
        h.to_rational().scaled(&Rational::new(BigInt::one(), d))
    }

    pub fn canonical(&self) -> Lattice {
        Lattice::new(self.hnf_basis()).expect("HNF basis is nonsingular")
    }

    /// Point-set equality, decided by HNF equality.
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.dim() == other.dim() && self.hnf_basis() == other.hnf_basis()
    }

    /// Every basis vector of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim() == other.dim()
            && self.basis.columns().iter().all(|c| other.contains(c).unwrap_or(false))
    }

    /// `{y in L : <w, y> = 0 (mod p)}` for `w` in the dual lattice, in HNF.
    pub fn sublattice_mod(&self, w: &[Rational], p: u64) -> Result<Lattice> {
        self.check_dim(w)?;
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // <w, B z> = (B^T w) . z
        let form = self.basis.transpose().mul_vec(w)?;
        if !form.iter().all(|v| v.is_integer()) {
            return Err(Error::NotDual);
        }
        let residues: Vec<u64> = form.iter().map(|v| mod_u64(&v.to_integer(), p)).collect();
        if residues.iter().all(|&r| r == 0) {
            return Ok(self.canonical());
        }
        let n = self.dim();
        let kernel = kernel_mod_p(&[residues], n, p)?;
        let mut gens: Vec<Vec<Integer>> = vec![Vec::with_capacity(n + kernel.len()); n];
        for (i, row) in gens.iter_mut().enumerate() {
            for k in &kernel {
                row.push(BigInt::from(k[i]));
            }
            for j in 0..n {
                row.push(if i == j { BigInt::from(p) } else { BigInt::zero() });
            }
        }
        let (coeff_basis, _) = hnf_generators(&IntMatrix::from_big_rows(gens)?)?;
        let basis = self.basis.mul(&coeff_basis.to_rational())?;
        Ok(Lattice::new(basis)?.canonical())
    }

    /// Exact LLL reduction (size-reduced, Lovasz condition with delta = 3/4).
    pub fn lll_reduce(&self) -> Lattice {
        Lattice::new(self.reduced().basis.clone()).expect("reduction preserves rank")
    }

    pub(crate) fn reduced(&self) -> &Reduced {
        self.reduced.get_or_init(|| {
            let (basis, transform) = lll(&self.basis);
            let inverse = basis.inverse().expect("nonsingular");
            let gs = GramSchmidt::new(&basis.columns());
            Reduced { basis, transform, inverse, gs }
        })
    }
}

/// Returns the reduced basis and the unimodular `U` with `reduced = basis * U`.
fn lll(basis: &RationalMatrix) -> (RationalMatrix, IntMatrix) {
    let n = basis.cols();
    let mut b = basis.columns();
    let mut u = IntMatrix::identity(n);
    let delta = arith::rat(3, 4);
    let mut gs = GramSchmidt::new(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round_int(&gs.mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let qr = Rational::from_integer(q.clone());
            let bj = b[j].clone();
            for (x, y) in b[k].iter_mut().zip(&bj) {
                *x -= &qr * y;
            }
            for r in 0..n {
                let v = &q * &u[(r, j)];
                u[(r, k)] -= v;
            }
            for l in 0..j {
                let v = &qr * &gs.mu[j][l];
                gs.mu[k][l] -= v;
            }
            gs.mu[k][j] -= &qr;
        }
        let mu = &gs.mu[k][k - 1];
        let bound = (&delta - mu * mu) * &gs.norms[k - 1];
        if gs.norms[k] >= bound {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap_cols(k, k - 1);
            gs = GramSchmidt::new(&b);
            k = (k - 1).max(1);
        }
    }
    (RationalMatrix::from_columns(&b).expect("square"), u)
}
