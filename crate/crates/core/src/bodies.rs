//! Norm-defining convex bodies: gauges, membership, symmetrization, and the
//! centering data `r B ⊆ K ⊆ R B` plus the symmetry parameter `gamma`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    self, common_denominator, exact_sqrt, floor_int, norm2_sq, sqrt_bracket_relative,
    sqrt_lower, sqrt_upper, Integer, Rational, RationalMatrix,
};
use crate::error::{Error, Result};

/// Bits of relative precision used for the default `r` and `R` brackets.
const RADIUS_BITS: u32 = 32;

/// An exact nonnegative gauge value: a rational or the square root of one.
#[derive(Debug, Clone)]
pub enum GaugeValue {
    Rational(Rational),
    Sqrt(Rational),
}

impl GaugeValue {
    pub fn zero() -> Self {
        GaugeValue::Rational(Rational::zero())
    }

    /// `sqrt(q)`, collapsed to a rational when `q` is a rational square.
    pub fn sqrt(q: Rational) -> Self {
        debug_assert!(!q.is_negative());
        match exact_sqrt(&q) {
            Some(r) => GaugeValue::Rational(r),
            None => GaugeValue::Sqrt(q),
        }
    }

    pub fn squared(&self) -> Rational {
        match self {
            GaugeValue::Rational(r) => r * r,
            GaugeValue::Sqrt(q) => q.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            GaugeValue::Rational(r) => Some(r),
            GaugeValue::Sqrt(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.squared().is_zero()
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        debug_assert!(!s.is_negative());
        match self {
            GaugeValue::Rational(r) => GaugeValue::Rational(r * s),
            GaugeValue::Sqrt(q) => GaugeValue::Sqrt(q * s * s),
        }
    }

    /// Rational bracket `lo <= self <= hi`, exact for rational values.
    pub fn bracket(&self, bits: u32) -> (Rational, Rational) {
        match self {
            GaugeValue::Rational(r) => (r.clone(), r.clone()),
            GaugeValue::Sqrt(q) => sqrt_bracket_relative(q, bits),
        }
    }

    pub fn upper_bound(&self) -> Rational {
        self.bracket(RADIUS_BITS).1
    }

    pub fn lower_bound(&self) -> Rational {
        self.bracket(RADIUS_BITS).0
    }

    /// `self <= s`.
    pub fn le_rational(&self, s: &Rational) -> bool {
        !s.is_negative() && self.squared() <= s * s
    }

    /// `self <= other + t` for `t >= 0`.
    pub fn le_plus(&self, other: &GaugeValue, t: &Rational) -> bool {
        debug_assert!(!t.is_negative());
        le_sum(&self.squared(), &other.squared(), &(t * t))
    }

    /// Weak-oracle estimate: `|value - self| <= eps * min(1, self)`.
    pub fn estimate(&self, eps: &Rational) -> DistanceEstimate {
        let value = match self {
            GaugeValue::Rational(r) => r.clone(),
            GaugeValue::Sqrt(q) => {
                let mut bits = 8;
                loop {
                    let (lo, hi) = sqrt_bracket_relative(q, bits);
                    let cap = if lo < Rational::one() { lo.clone() } else { Rational::one() };
                    if &hi - &lo <= eps * cap {
                        break (lo + hi) / arith::rat_int(2);
                    }
                    bits += 8;
                }
            }
        };
        DistanceEstimate { value, eps: eps.clone() }
    }
}

/// `sqrt(c) <= sqrt(a) + sqrt(b)` for nonnegative `a, b, c`.
pub(crate) fn le_sum(c: &Rational, a: &Rational, b: &Rational) -> bool {
    let d = c - a - b;
    !d.is_positive() || &d * &d <= arith::rat_int(4) * a * b
}

impl PartialEq for GaugeValue {
    fn eq(&self, other: &Self) -> bool {
        self.squared() == other.squared()
    }
}

impl Eq for GaugeValue {}

impl Ord for GaugeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.squared().cmp(&other.squared())
    }
}

impl PartialOrd for GaugeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GaugeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeValue::Rational(r) => write!(f, "{r}"),
            GaugeValue::Sqrt(q) => write!(f, "sqrt({q})"),
        }
    }
}

/// Output of a weak distance oracle call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceEstimate {
    pub value: Rational,
    pub eps: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Inside,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpNorm {
    One,
    Two,
    Inf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BodyKind {
    Lp { p: LpNorm, radius: Rational },
    /// `{x : A x <= b}` with `b > 0`.
    Polytope { a: RationalMatrix, b: Vec<Rational> },
    /// `K ∩ -K`.
    Symmetrized(Box<ConvexBody>),
}

/// A convex body with 0 in its interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexBody {
    kind: BodyKind,
    dim: usize,
    r: Rational,
    big_r: Rational,
    gamma: Rational,
}

impl ConvexBody {
    pub fn lp(p: LpNorm, radius: Rational, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("body dimension must be at least 1"));
        }
        if !radius.is_positive() {
            return Err(Error::invalid("ball radius must be positive"));
        }
        let n = arith::rat_int(dim as i64);
        let (r, big_r) = match p {
            LpNorm::Two => (radius.clone(), radius.clone()),
            LpNorm::Inf => (radius.clone(), sqrt_upper(&(&radius * &radius * &n), RADIUS_BITS)),
            LpNorm::One => (sqrt_lower(&(&radius * &radius / &n), RADIUS_BITS), radius.clone()),
        };
        Ok(Self { kind: BodyKind::Lp { p, radius }, dim, r, big_r, gamma: Rational::one() })
    }

    pub fn l1(radius: Rational, dim: usize) -> Result<Self> {
        Self::lp(LpNorm::One, radius, dim)
    }

    pub fn l2(radius: Rational, dim: usize) -> Result<Self> {
        Self::lp(LpNorm::Two, radius, dim)
    }

    pub fn linf(radius: Rational, dim: usize) -> Result<Self> {
        Self::lp(LpNorm::Inf, radius, dim)
    }

    /// `{x : A x <= b}`; must be bounded with `b > 0`.
    pub fn polytope(a: RationalMatrix, b: Vec<Rational>) -> Result<Self> {
        let dim = a.cols();
        if dim == 0 {
            return Err(Error::invalid("polytope dimension must be at least 1"));
        }
        if a.rows() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.rows(), got: b.len() });
        }
        if b.iter().any(|v| !v.is_positive()) {
            return Err(Error::invalid("polytope offsets b must be positive"));
        }
        if (0..a.rows()).any(|i| a.row(i).iter().all(Zero::is_zero)) {
            return Err(Error::invalid("polytope has a zero constraint row"));
        }
        let verts = vertices(&a, &b);
        if verts.is_empty() || !is_bounded(&a, &b, &verts) {
            return Err(Error::invalid("polytope is unbounded"));
        }
        let max_sq = verts.iter().map(|v| norm2_sq(v)).max().expect("nonempty");
        let big_r = sqrt_upper(&max_sq, RADIUS_BITS);
        let r = (0..a.rows())
            .map(|i| &b[i] / sqrt_upper(&norm2_sq(a.row(i)), RADIUS_BITS))
            .min()
            .expect("at least one row");
        let mut body = Self {
            kind: BodyKind::Polytope { a, b },
            dim,
            r,
            big_r,
            gamma: Rational::one(),
        };
        if !body.is_symmetric() {
            body.gamma = &body.r / &body.big_r;
        }
        Ok(body)
    }

    /// `K ∩ -K`, which keeps `r` and `R` and has `gamma = 1`.
    pub fn symmetrize(&self) -> ConvexBody {
        let inner = match &self.kind {
            BodyKind::Symmetrized(inner) => inner.clone(),
            _ => Box::new(self.clone()),
        };
        ConvexBody {
            kind: BodyKind::Symmetrized(inner),
            dim: self.dim,
            r: self.r.clone(),
            big_r: self.big_r.clone(),
            gamma: Rational::one(),
        }
    }

    /// Overrides the inscribed radius; the caller certifies `r B ⊆ K`.
    pub fn with_r(mut self, r: Rational) -> Result<Self> {
        if !r.is_positive() || r > self.big_r {
            return Err(Error::invalid("need 0 < r <= R"));
        }
        self.r = r;
        Ok(self)
    }

    /// Overrides the circumscribed radius; the caller certifies `K ⊆ R B`.
    pub fn with_big_r(mut self, big_r: Rational) -> Result<Self> {
        if self.r > big_r {
            return Err(Error::invalid("need 0 < r <= R"));
        }
        self.big_r = big_r;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: Rational) -> Result<Self> {
        if !gamma.is_positive() || gamma > Rational::one() {
            return Err(Error::invalid("gamma must lie in (0, 1]"));
        }
        self.gamma = gamma;
        Ok(self)
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn big_r(&self) -> &Rational {
        &self.big_r
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// Sufficient test for `K = -K` (exact for balls and symmetrized bodies).
    pub fn is_symmetric(&self) -> bool {
        match &self.kind {
            BodyKind::Lp { .. } | BodyKind::Symmetrized(_) => true,
            BodyKind::Polytope { a, b } => {
                let rows: Vec<Vec<Rational>> = (0..a.rows())
                    .map(|i| a.row(i).iter().map(|v| v / &b[i]).collect())
                    .collect();
                rows.iter().all(|r| {
                    let neg: Vec<Rational> = r.iter().map(|v| -v).collect();
                    rows.contains(&neg)
                })
            }
        }
    }

    fn check_dim(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    /// Exact `‖x‖_K`.
    pub fn gauge_exact(&self, x: &[Rational]) -> Result<GaugeValue> {
        self.check_dim(x)?;
        Ok(self.gauge_unchecked(x))
    }

    fn gauge_unchecked(&self, x: &[Rational]) -> GaugeValue {
        match &self.kind {
            BodyKind::Lp { p, radius } => match p {
                LpNorm::One => {
                    GaugeValue::Rational(x.iter().map(|v| v.abs()).sum::<Rational>() / radius)
                }
                LpNorm::Inf => GaugeValue::Rational(
                    x.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero) / radius,
                ),
                LpNorm::Two => GaugeValue::sqrt(norm2_sq(x) / (radius * radius)),
            },
            BodyKind::Polytope { a, b } => {
                let best = (0..a.rows())
                    .map(|i| arith::dot(a.row(i), x) / &b[i])
                    .max()
                    .expect("at least one row");
                GaugeValue::Rational(best.max(Rational::zero()))
            }
            BodyKind::Symmetrized(inner) => {
                let neg: Vec<Rational> = x.iter().map(|v| -v).collect();
                inner.gauge_unchecked(x).max(inner.gauge_unchecked(&neg))
            }
        }
    }

    /// Weak distance oracle: `|value - ‖x‖_K| <= eps * min(1, ‖x‖_K)`.
    pub fn gauge(&self, x: &[Rational], eps: &Rational) -> Result<DistanceEstimate> {
        if !eps.is_positive() {
            return Err(Error::invalid("eps must be positive"));
        }
        Ok(self.gauge_exact(x)?.estimate(eps))
    }

    /// Weak membership oracle; built-in bodies answer exactly.
    pub fn membership(&self, x: &[Rational], eps: &Rational) -> Result<Membership> {
        if !eps.is_positive() {
            return Err(Error::invalid("eps must be positive"));
        }
        Ok(if self.gauge_exact(x)?.le_rational(&Rational::one()) {
            Membership::Inside
        } else {
            Membership::Outside
        })
    }

    /// `x ∈ s K` exactly.
    pub fn contains_scaled(&self, x: &[Rational], s: &Rational) -> Result<bool> {
        Ok(self.gauge_exact(x)?.le_rational(s))
    }

    /// Integer test for `‖w / den‖_K <= s` with integer `w`.
    pub(crate) fn compile_filter(&self, s: &Rational, den: &Integer) -> LeafFilter {
        let scale = s * Rational::from_integer(den.clone());
        match &self.kind {
            BodyKind::Lp { p, radius } => {
                let bound = &scale * radius;
                match p {
                    LpNorm::One => LeafFilter::L1(floor_int(&bound)),
                    LpNorm::Inf => LeafFilter::Linf(floor_int(&bound)),
                    LpNorm::Two => LeafFilter::L2(floor_int(&(&bound * &bound))),
                }
            }
            BodyKind::Polytope { .. } => LeafFilter::Rows(self.compile_rows(&scale, false)),
            BodyKind::Symmetrized(inner) => match &inner.kind {
                BodyKind::Lp { .. } => inner.compile_filter(s, den),
                _ => {
                    let mut rows = inner.compile_rows(&scale, false);
                    rows.extend(inner.compile_rows(&scale, true));
                    LeafFilter::Rows(rows)
                }
            },
        }
    }

    fn compile_rows(&self, scale: &Rational, negate: bool) -> Vec<(Vec<Integer>, Integer)> {
        let BodyKind::Polytope { a, b } = &self.kind else {
            unreachable!("rows are compiled only for polytopes")
        };
        (0..a.rows())
            .map(|i| {
                let row = a.row(i);
                let e = common_denominator(row);
                let coeffs = row
                    .iter()
                    .map(|v| {
                        let c = (v * Rational::from_integer(e.clone())).to_integer();
                        if negate {
                            -c
                        } else {
                            c
                        }
                    })
                    .collect();
                let bound = floor_int(&(scale * &b[i] * Rational::from_integer(e)));
                (coeffs, bound)
            })
            .collect()
    }
}

/// Compiled body test on integer residual vectors.
#[derive(Debug, Clone)]
pub(crate) enum LeafFilter {
    Linf(Integer),
    L1(Integer),
    L2(Integer),
    Rows(Vec<(Vec<Integer>, Integer)>),
}

impl LeafFilter {
    pub fn accepts(&self, w: &[Integer]) -> bool {
        match self {
            LeafFilter::Linf(t) => w.iter().all(|v| &v.abs() <= t),
            LeafFilter::L1(t) => {
                let mut acc = BigInt::zero();
                for v in w {
                    acc += v.abs();
                    if &acc > t {
                        return false;
                    }
                }
                true
            }
            LeafFilter::L2(t) => {
                let mut acc = BigInt::zero();
                for v in w {
                    acc += v * v;
                    if &acc > t {
                        return false;
                    }
                }
                true
            }
            LeafFilter::Rows(rows) => rows.iter().all(|(a, t)| {
                let s: BigInt = a.iter().zip(w).map(|(x, y)| x * y).sum();
                &s <= t
            }),
        }
    }
}

/// All vertices of `{A x <= b}` by exact enumeration of `n`-subsets of facets.
fn vertices(a: &RationalMatrix, b: &[Rational]) -> Vec<Vec<Rational>> {
    let n = a.cols();
    let m = a.rows();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for subset in combinations(m, n) {
        let sys = RationalMatrix::from_rows(subset.iter().map(|&i| a.row(i).to_vec()).collect())
            .expect("consistent rows");
        let Ok(inv) = sys.inverse() else { continue };
        let rhs: Vec<Rational> = subset.iter().map(|&i| b[i].clone()).collect();
        let v = inv.mul_vec(&rhs).expect("square");
        let feasible = (0..m).all(|i| arith::dot(a.row(i), &v) <= b[i]);
        if feasible && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// A polytope with vertices is bounded iff truncating it by a box strictly
/// larger than all its vertices creates no vertex on the box.
fn is_bounded(a: &RationalMatrix, b: &[Rational], verts: &[Vec<Rational>]) -> bool {
    let n = a.cols();
    let max = verts.iter().flatten().map(|v| v.abs()).max().expect("nonempty");
    let box_size = max * arith::rat_int(2) + Rational::one();
    let mut rows = a.to_rows();
    let mut rhs = b.to_vec();
    for j in 0..n {
        for sign in [1, -1] {
            let mut row = vec![Rational::zero(); n];
            row[j] = arith::rat_int(sign);
            rows.push(row);
            rhs.push(box_size.clone());
        }
    }
    let boxed = RationalMatrix::from_rows(rows).expect("consistent rows");
    vertices(&boxed, &rhs).iter().flatten().all(|v| v.abs() < box_size)
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn v(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn triangle() -> ConvexBody {
        // x1 <= 1, x2 <= 1, -x1 - x2 <= 1
        let a = RationalMatrix::from_int_rows(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        ConvexBody::polytope(a, vec![rat_int(1); 3]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let cube = ConvexBody::linf(rat_int(1), 2).unwrap();
        let eps = rat(1, 10);
        assert_eq!(cube.membership(&v(&[(1, 2), (1, 2)]), &eps).unwrap(), Membership::Inside);
        assert_eq!(cube.membership(&v(&[(2, 1), (0, 1)]), &eps).unwrap(), Membership::Outside);
        assert!(cube.membership(&v(&[(1, 1), (0, 1)]), &eps).is_ok());
        assert!(cube.membership(&v(&[(1, 1)]), &eps).is_err());
    }

    #[test]
    fn gauge_examples() {
        let eps = rat(1, 100);
        let cube = ConvexBody::linf(rat_int(1), 2).unwrap();
        assert_eq!(cube.gauge(&v(&[(3, 10), (-7, 10)]), &eps).unwrap().value, rat(7, 10));
        assert_eq!(triangle().gauge(&v(&[(2, 1), (0, 1)]), &eps).unwrap().value, rat_int(2));
        let ball = ConvexBody::l2(rat_int(1), 2).unwrap();
        assert_eq!(ball.gauge(&v(&[(3, 1), (4, 1)]), &eps).unwrap().value, rat_int(5));
    }

    #[test]
    fn irrational_gauge_meets_weak_contract() {
        let ball = ConvexBody::l2(rat_int(1), 2).unwrap();
        for eps in [rat(1, 2), rat(1, 1000)] {
            let est = ball.gauge(&v(&[(1, 1), (1, 1)]), &eps).unwrap();
            // |value - sqrt 2| <= eps: compare squares of value +- eps
            let lo = &est.value - &eps;
            let hi = &est.value + &eps;
            assert!(&lo * &lo <= rat_int(2) && rat_int(2) <= &hi * &hi);
        }
    }

    #[test]
    fn symmetrize_examples() {
        let hex = triangle().symmetrize();
        assert_eq!(hex.gauge_exact(&v(&[(2, 1), (0, 1)])).unwrap(), GaugeValue::Rational(rat_int(2)));
        // (-1, -1) has gauge 2 in the triangle but its negation gives 1
        assert_eq!(triangle().gauge_exact(&v(&[(1, 1), (1, 1)])).unwrap(), GaugeValue::Rational(rat_int(1)));
        assert_eq!(hex.gauge_exact(&v(&[(1, 1), (1, 1)])).unwrap(), GaugeValue::Rational(rat_int(2)));
        assert_eq!(hex.gamma(), &rat_int(1));
        assert_eq!(hex.r(), triangle().r());
        let cube = ConvexBody::linf(rat_int(1), 2).unwrap();
        let x = v(&[(3, 7), (-2, 3)]);
        assert_eq!(cube.gauge_exact(&x).unwrap(), cube.symmetrize().gauge_exact(&x).unwrap());
    }

    #[test]
    fn default_radii() {
        let t = triangle();
        // vertices (1,1), (1,-2), (-2,1): R^2 >= 5, inradius bound 1/sqrt 2
        assert!(t.big_r() * t.big_r() >= rat_int(5));
        assert!(t.r() * t.r() <= rat(1, 2));
        assert!(!t.is_symmetric());
        assert_eq!(t.gamma(), &(t.r() / t.big_r()));
        let l1 = ConvexBody::l1(rat_int(2), 4).unwrap();
        assert!(l1.r() * l1.r() <= rat_int(1));
        let half_plane = RationalMatrix::from_int_rows(&[vec![1, 0]]).unwrap();
        assert!(ConvexBody::polytope(half_plane, vec![rat_int(1)]).is_err());
        let strip = RationalMatrix::from_int_rows(&[vec![1, 0], vec![-1, 0]]).unwrap();
        assert!(ConvexBody::polytope(strip, vec![rat_int(1); 2]).is_err());
        let wedge = RationalMatrix::from_int_rows(&[vec![1, 0], vec![0, 1], vec![-1, 1]]).unwrap();
        assert!(ConvexBody::polytope(wedge, vec![rat_int(1); 3]).is_err());
    }

    #[test]
    fn compiled_filter_matches_gauge() {
        let den = BigInt::from(3);
        let bodies = [
            ConvexBody::l1(rat(3, 2), 2).unwrap(),
            ConvexBody::l2(rat(3, 2), 2).unwrap(),
            ConvexBody::linf(rat(3, 2), 2).unwrap(),
            triangle(),
            triangle().symmetrize(),
        ];
        let s = rat(5, 4);
        for body in &bodies {
            let f = body.compile_filter(&s, &den);
            for x in -8..=8 {
                for y in -8..=8 {
                    let w = [BigInt::from(x), BigInt::from(y)];
                    let amb = vec![rat(x, 3), rat(y, 3)];
                    assert_eq!(f.accepts(&w), body.contains_scaled(&amb, &s).unwrap(), "{body:?} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn le_sum_is_exact() {
        let two = GaugeValue::sqrt(rat_int(2));
        let one = GaugeValue::Rational(rat_int(1));
        // sqrt 2 <= 1 + t iff t >= sqrt 2 - 1 ~ 0.41421
        assert!(two.le_plus(&one, &rat(41422, 100000)));
        assert!(!two.le_plus(&one, &rat(41421, 100000)));
        assert!(GaugeValue::sqrt(rat_int(9)) == GaugeValue::Rational(rat_int(3)));
    }
}
