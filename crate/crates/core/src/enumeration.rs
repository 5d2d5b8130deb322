//! Exact lattice point enumeration.
//!
//! Everything is built on one Fincke-Pohst walk over the LLL-reduced basis:
//! interior levels use exact rational centres, the bottom level steps an
//! integer residual `w = D (B y - c)` so that body filters run on integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{
    ceil_int, common_denominator, floor_int, floor_sqrt, norm2_sq, round_int, Integer, Rational,
};
use crate::bodies::{ConvexBody, GaugeValue, LeafFilter};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticePoint, Reduced};

/// Lattice points in lexicographic order of their coefficient vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointStream {
    points: Vec<LatticePoint>,
}

impl PointStream {
    pub fn new(mut points: Vec<LatticePoint>) -> Self {
        points.sort();
        points.dedup();
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn first(&self) -> Option<&LatticePoint> {
        self.points.first()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticePoint> {
        self.points.iter()
    }

    pub fn into_vec(self) -> Vec<LatticePoint> {
        self.points
    }
}

impl IntoIterator for PointStream {
    type Item = LatticePoint;
    type IntoIter = std::vec::IntoIter<LatticePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.into_iter()
    }
}

impl<'a> IntoIterator for &'a PointStream {
    type Item = &'a LatticePoint;
    type IntoIter = std::slice::Iter<'a, LatticePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// The ball `{y in L : |y - c|^2 <= radius_sq}` prepared for enumeration.
struct Ball<'a> {
    red: &'a Reduced,
    n: usize,
    /// Centre in reduced coordinates.
    u: Vec<Rational>,
    radius_sq: Rational,
    /// Columns of `D * B_red`.
    cols: Vec<Vec<Integer>>,
    /// `D * c`.
    shift: Vec<Integer>,
    den: Integer,
}

impl<'a> Ball<'a> {
    fn new(lattice: &'a Lattice, center: &[Rational], radius_sq: Rational) -> Self {
        let red = lattice.reduced();
        let n = lattice.dim();
        let den = common_denominator(red.basis.entries().chain(center.iter()));
        let d = Rational::from_integer(den.clone());
        let cols = red
            .basis
            .columns()
            .iter()
            .map(|c| c.iter().map(|v| (v * &d).to_integer()).collect())
            .collect();
        let shift = center.iter().map(|v| (v * &d).to_integer()).collect();
        let u = red.inverse.mul_vec(center).expect("dimension checked");
        Self { red, n, u, radius_sq, cols, shift, den }
    }

    /// Admissible integer range `{z : B*_j (z - c)^2 <= rem}`.
    fn range(&self, j: usize, centre: &Rational, rem: &Rational) -> Option<(Integer, Integer)> {
        if rem.is_negative() {
            return None;
        }
        let q = rem / &self.red.gs.norms[j];
        let s = Rational::from_integer(floor_sqrt(&q) + 1);
        let ok = |z: &Integer| {
            let d = Rational::from_integer(z.clone()) - centre;
            &d * &d <= q
        };
        let mut lo = ceil_int(&(centre - &s));
        let mut hi = floor_int(&(centre + &s));
        while lo <= hi && !ok(&lo) {
            lo += 1;
        }
        while hi >= lo && !ok(&hi) {
            hi -= 1;
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn centre(&self, j: usize, z: &[Integer]) -> Rational {
        let mut c = self.u[j].clone();
        for i in j + 1..self.n {
            c -= &self.red.gs.mu[i][j] * (Rational::from_integer(z[i].clone()) - &self.u[i]);
        }
        c
    }

    fn step_cost(&self, j: usize, z: &Integer, centre: &Rational) -> Rational {
        let d = Rational::from_integer(z.clone()) - centre;
        &self.red.gs.norms[j] * &d * &d
    }

    /// Visits the subtree below level `j` with `z[j+1..]` fixed.
    fn walk(
        &self,
        j: usize,
        z: &mut Vec<Integer>,
        partial: &Rational,
        filter: Option<&LeafFilter>,
        leaf: &mut dyn FnMut(&[Integer], &[Integer]),
    ) {
        let centre = self.centre(j, z);
        let Some((lo, hi)) = self.range(j, &centre, &(&self.radius_sq - partial)) else {
            return;
        };
        if j == 0 {
            z[0] = lo.clone();
            let mut w: Vec<Integer> = self.shift.iter().map(|s| -s).collect();
            for (zi, col) in z.iter().zip(&self.cols) {
                if !zi.is_zero() {
                    for (wk, ck) in w.iter_mut().zip(col) {
                        *wk += zi * ck;
                    }
                }
            }
            loop {
                if filter.is_none_or(|f| f.accepts(&w)) {
                    leaf(z, &w);
                }
                if z[0] >= hi {
                    break;
                }
                z[0] += 1;
                for (wk, ck) in w.iter_mut().zip(&self.cols[0]) {
                    *wk += ck;
                }
            }
            return;
        }
        let mut v = lo;
        while v <= hi {
            let next = partial + self.step_cost(j, &v, &centre);
            z[j] = v.clone();
            self.walk(j - 1, z, &next, filter, leaf);
            v += 1;
        }
        z[j] = BigInt::zero();
    }

    /// Runs the walk split over top-level branches, folding leaves per branch.
    fn fold<T: Send>(
        &self,
        filter: Option<&LeafFilter>,
        init: impl Fn() -> T + Sync,
        visit: impl Fn(&mut T, &[Integer], &[Integer]) + Sync,
    ) -> Vec<T> {
        let n = self.n;
        let run = |z: &mut Vec<Integer>, j: usize, partial: &Rational| {
            let mut acc = init();
            self.walk(j, z, partial, filter, &mut |zz, w| visit(&mut acc, zz, w));
            acc
        };
        if n == 1 {
            return vec![run(&mut vec![BigInt::zero()], 0, &Rational::zero())];
        }
        let top = n - 1;
        let zero = vec![BigInt::zero(); n];
        let centre = self.centre(top, &zero);
        let Some((lo, hi)) = self.range(top, &centre, &self.radius_sq) else {
            return Vec::new();
        };
        let mut branches = Vec::new();
        let mut v = lo;
        while v <= hi {
            branches.push(v.clone());
            v += 1;
        }
        branches
            .into_par_iter()
            .map(|v| {
                let partial = self.step_cost(top, &v, &centre);
                let mut z = zero.clone();
                z[top] = v;
                run(&mut z, top - 1, &partial)
            })
            .collect()
    }

    fn count(&self, filter: Option<&LeafFilter>) -> usize {
        self.fold(filter, || 0usize, |acc, _, _| *acc += 1).into_iter().sum()
    }

    fn collect(&self, filter: Option<&LeafFilter>) -> Vec<Vec<Integer>> {
        self.fold(filter, Vec::new, |acc, z, _| acc.push(z.to_vec())).concat()
    }

    /// Reduced coefficient vectors minimizing `key(w)`, with the minimum.
    fn argmin<T: Ord + Clone + Send>(
        &self,
        filter: Option<&LeafFilter>,
        skip_zero: bool,
        key: impl Fn(&[Integer]) -> T + Sync,
    ) -> Option<(T, Vec<Vec<Integer>>)> {
        let parts = self.fold(
            filter,
            || None::<(T, Vec<Vec<Integer>>)>,
            |acc, z, w| {
                if skip_zero && z.iter().all(Zero::is_zero) {
                    return;
                }
                let k = key(w);
                match acc {
                    Some((best, list)) if k == *best => list.push(z.to_vec()),
                    Some((best, _)) if k > *best => {}
                    _ => *acc = Some((k, vec![z.to_vec()])),
                }
            },
        );
        let mut best: Option<(T, Vec<Vec<Integer>>)> = None;
        for (k, list) in parts.into_iter().flatten() {
            match &mut best {
                Some((b, l)) if k == *b => l.extend(list),
                Some((b, _)) if k > *b => {}
                _ => best = Some((k, list)),
            }
        }
        best
    }

    fn points(&self, lattice: &Lattice, reduced: Vec<Vec<Integer>>) -> PointStream {
        PointStream::new(
            reduced
                .into_iter()
                .map(|z| lattice.point(self.red.transform.mul_vec(&z)))
                .collect(),
        )
    }
}

fn check_dim(lattice: &Lattice, x: &[Rational]) -> Result<()> {
    if x.len() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: lattice.dim(), got: x.len() });
    }
    Ok(())
}

fn check_body(body: &ConvexBody, lattice: &Lattice) -> Result<()> {
    if body.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: lattice.dim(), got: body.dim() });
    }
    Ok(())
}

fn sum_sq(w: &[Integer]) -> Integer {
    w.iter().map(|v| v * v).sum()
}

fn as_rationals(w: &[Integer]) -> Vec<Rational> {
    w.iter().map(|v| Rational::from_integer(v.clone())).collect()
}

/// All lattice points nearest to `target` in the Euclidean norm.
pub fn cvp_l2_exact(lattice: &Lattice, target: &[Rational]) -> Result<PointStream> {
    check_dim(lattice, target)?;
    let red = lattice.reduced();
    let coarse: Vec<Integer> =
        red.inverse.mul_vec(target)?.iter().map(round_int).collect();
    let babai = red.basis.mul_int_vec(&coarse);
    let radius_sq = norm2_sq(&crate::arith::sub_vec(&babai, target));
    let ball = Ball::new(lattice, target, radius_sq);
    let (_, best) = ball.argmin(None, false, sum_sq).expect("Babai point lies in the ball");
    Ok(ball.points(lattice, best))
}

/// All shortest nonzero vectors in the Euclidean norm.
pub fn svp_l2(lattice: &Lattice) -> PointStream {
    let red = lattice.reduced();
    let radius_sq = red.basis.columns().iter().map(|c| norm2_sq(c)).min().expect("nonempty basis");
    let zero = vec![Rational::zero(); lattice.dim()];
    let ball = Ball::new(lattice, &zero, radius_sq);
    let (_, best) = ball.argmin(None, true, sum_sq).expect("basis vectors lie in the ball");
    ball.points(lattice, best)
}

fn body_ball<'a>(
    body: &ConvexBody,
    center: &[Rational],
    scale: &Rational,
    lattice: &'a Lattice,
    eps: &Rational,
) -> (Ball<'a>, LeafFilter) {
    let radius = scale * body.big_r() + eps;
    let ball = Ball::new(lattice, center, &radius * &radius);
    let filter = body.compile_filter(scale, &ball.den);
    (ball, filter)
}

fn check_enum_args(
    body: &ConvexBody,
    center: &[Rational],
    scale: &Rational,
    lattice: &Lattice,
) -> Result<()> {
    check_body(body, lattice)?;
    check_dim(lattice, center)?;
    if scale.is_negative() {
        return Err(Error::invalid("scale must be nonnegative"));
    }
    Ok(())
}

/// Points of `(scale K + center) ∩ L`.
///
/// The output always lies between `(scale K + center) ∩ L` and
/// `(scale K + center + eps B) ∩ L`; the built-in bodies yield the former.
pub fn lattice_enum(
    body: &ConvexBody,
    center: &[Rational],
    scale: &Rational,
    lattice: &Lattice,
    eps: &Rational,
) -> Result<PointStream> {
    check_enum_args(body, center, scale, lattice)?;
    if !eps.is_positive() {
        return Err(Error::invalid("eps must be positive"));
    }
    let (ball, filter) = body_ball(body, center, scale, lattice, eps);
    let found = ball.collect(Some(&filter));
    Ok(ball.points(lattice, found))
}

/// `|(scale K + center) ∩ L|` without materializing the points.
pub fn count_in_body(
    body: &ConvexBody,
    center: &[Rational],
    scale: &Rational,
    lattice: &Lattice,
) -> Result<usize> {
    check_enum_args(body, center, scale, lattice)?;
    let (ball, filter) = body_ball(body, center, scale, lattice, &Rational::zero());
    Ok(ball.count(Some(&filter)))
}

/// Shortest nonzero vectors of `L` in the norm of a symmetric body.
///
/// The scale is seeded by the gauge of a Euclidean shortest vector, halved
/// while a nonzero point survives, and the final ball is searched exactly,
/// so the result is the exact minimizer set.
pub fn shortest_vectors(body: &ConvexBody, lattice: &Lattice, eps: &Rational) -> Result<PointStream> {
    check_body(body, lattice)?;
    if !body.is_symmetric() {
        return Err(Error::invalid("shortest_vectors needs a symmetric body; symmetrize it first"));
    }
    if !eps.is_positive() {
        return Err(Error::invalid("eps must be positive"));
    }
    let seed = svp_l2(lattice);
    let seed = seed.first().expect("nonempty");
    let mut scale = body.gauge_exact(&seed.ambient)?.upper_bound();
    let zero = vec![Rational::zero(); lattice.dim()];
    let two = Rational::from_integer(BigInt::from(2));
    loop {
        let half = &scale / &two;
        if count_in_body(body, &zero, &half, lattice)? > 1 {
            scale = half;
        } else {
            break;
        }
    }
    let (ball, filter) = body_ball(body, &zero, &scale, lattice, &Rational::zero());
    let (_, best) = ball
        .argmin(Some(&filter), true, |w| body.gauge_exact(&as_rationals(w)).expect("dimension"))
        .expect("a nonzero point lies within the seed scale");
    Ok(ball.points(lattice, best))
}

/// Exact `d_K(L, x)` with all minimizers.
pub fn cvp_exact(
    body: &ConvexBody,
    lattice: &Lattice,
    target: &[Rational],
) -> Result<(GaugeValue, PointStream)> {
    check_body(body, lattice)?;
    let near = cvp_l2_exact(lattice, target)?;
    let near = near.first().expect("nonempty");
    let diff = crate::arith::sub_vec(&near.ambient, target);
    let bound = body.gauge_exact(&diff)?.upper_bound();
    let (ball, filter) = body_ball(body, target, &bound, lattice, &Rational::zero());
    let (value, best) = ball
        .argmin(Some(&filter), false, |w| body.gauge_exact(&as_rationals(w)).expect("dimension"))
        .expect("the Euclidean nearest point lies within the bound");
    let inv = Rational::new(BigInt::from(1), ball.den.clone());
    Ok((value.scaled(&inv), ball.points(lattice, best)))
}

/// `|y - x|_K` by exact gauge evaluation.
pub fn distance(body: &ConvexBody, y: &[Rational], x: &[Rational]) -> Result<GaugeValue> {
    body.gauge_exact(&crate::arith::sub_vec(y, x))
}
