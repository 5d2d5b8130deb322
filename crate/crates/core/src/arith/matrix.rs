use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, Integer, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
///
/// Lattice bases store basis vectors as *columns*.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    /// Builds a square matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch { expected: r, got: col.len() });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|i| super::dot(self.row(i), v)).collect())
    }

    /// Product with an integer vector.
    pub fn mul_int_vec(&self, v: &[Integer]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(_, z)| !z.is_zero())
                    .map(|(a, z)| a * Rational::from_integer(z.clone()))
                    .sum()
            })
            .collect()
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// Row echelon reduction; returns (rank, determinant sign-correct product of pivots
    /// when square).
    fn eliminate(&self) -> (usize, Rational) {
        let mut m = self.clone();
        let mut det = Rational::one();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                det = Rational::zero();
                continue;
            };
            if piv != rank {
                m.swap_rows(piv, rank);
                det = -det;
            }
            let p = m[(rank, col)].clone();
            det *= &p;
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &p;
                for c in col..m.cols {
                    let v = &m[(rank, c)] * &f;
                    m[(r, c)] -= v;
                }
            }
            rank += 1;
        }
        if rank < m.rows.min(m.cols) {
            det = Rational::zero();
        }
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        Ok(self.eliminate().1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let p = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] /= &p;
                inv[(col, c)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let v = &a[(col, c)] * &f;
                    a[(r, c)] -= v;
                    let w = &inv[(col, c)] * &f;
                    inv[(r, c)] -= w;
                }
            }
        }
        Ok(inv)
    }

    /// B^{-T}: the basis of the dual lattice.
    pub fn dual_basis(&self) -> Result<Self> {
        Ok(self.inverse()?.transpose())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    pub fn common_denominator(&self) -> Integer {
        common_denominator(&self.data)
    }

    /// Entries times `scale`, which must clear every denominator.
    pub fn to_int_scaled(&self, scale: &Integer) -> IntMatrix {
        let s = Rational::from_integer(scale.clone());
        let data = self
            .data
            .iter()
            .map(|v| {
                let w = v * &s;
                assert!(w.is_integer(), "scale does not clear denominators");
                w.to_integer()
            })
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.to_int_scaled(&BigInt::one()))
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Ok(Self { rows: r, cols: c, data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect() })
    }

    pub fn from_big_rows(rows: Vec<Vec<Integer>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Integer> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Integer>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| Rational::from_integer(v.clone())).collect(),
        }
    }

    pub fn det(&self) -> Integer {
        self.to_rational().det().expect("square matrix").to_integer()
    }

    /// |det| = 1.
    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Integer;
    fn index(&self, (i, j): (usize, usize)) -> &Integer {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Integer {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
