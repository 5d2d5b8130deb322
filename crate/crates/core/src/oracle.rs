//! Brute-force ground truth and empirical checks of the counting bounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{ceil_int, pow_rational, rat_int, round_int, sub_vec, Integer, Rational};
use crate::bodies::{ConvexBody, GaugeValue};
use crate::enumeration::{count_in_body, shortest_vectors};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticePoint};
use crate::modp::find_prime;

/// Visits every coefficient vector in `[-bound, bound]^n`.
fn sweep(n: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut z = vec![-bound; n];
    loop {
        f(&z);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if z[i] < bound {
                z[i] += 1;
                break;
            }
            z[i] = -bound;
            i += 1;
        }
    }
}

fn to_big(z: &[i64]) -> Vec<Integer> {
    z.iter().map(|&v| BigInt::from(v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteCvp {
    pub distance: GaugeValue,
    pub points: Vec<LatticePoint>,
}

impl BruteCvp {
    pub fn bracket(&self) -> (Rational, Rational) {
        self.distance.bracket(48)
    }
}

/// Exact `K`-nearest points among all coefficient vectors in the box.
pub fn brute_cvp(body: &ConvexBody, lattice: &Lattice, x: &[Rational], coeff_box: u64) -> Result<BruteCvp> {
    if x.len() != lattice.dim() || body.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: lattice.dim(), got: x.len() });
    }
    let mut best: Option<(GaugeValue, Vec<LatticePoint>)> = None;
    sweep(lattice.dim(), coeff_box as i64, |z| {
        let p = lattice.point(to_big(z));
        let g = body.gauge_exact(&sub_vec(&p.ambient, x)).expect("dimension checked");
        match &mut best {
            Some((b, list)) if g == *b => list.push(p),
            Some((b, _)) if g > *b => {}
            _ => best = Some((g, vec![p])),
        }
    });
    let (distance, mut points) = best.expect("box is nonempty");
    points.sort();
    Ok(BruteCvp { distance, points })
}

/// A coefficient box holding every point of `(scale K + center) ∩ L`.
///
/// Such a point has `|y - c|_2 <= scale R`, so its coefficients satisfy
/// `|z_i| <= |u_i| + |row_i(B^-1)|_1 scale R` where `u = B^-1 c`.
pub fn enclosing_box(body: &ConvexBody, lattice: &Lattice, center: &[Rational], scale: &Rational) -> Result<u64> {
    let u = lattice.inverse().mul_vec(center)?;
    let reach = body.big_r() * scale;
    let mut bound = Integer::zero();
    for (i, ui) in u.iter().enumerate() {
        let row_l1: Rational = lattice.inverse().row(i).iter().map(|v| v.abs()).sum();
        bound = bound.max(ceil_int(&(ui.abs() + row_l1 * &reach)));
    }
    u64::try_from(bound).map_err(|_| Error::invalid("coefficient box too large"))
}

/// A box radius certified to contain every `K`-nearest coefficient vector:
/// the rounded coefficient point bounds the distance from above.
pub fn certified_box(body: &ConvexBody, lattice: &Lattice, x: &[Rational]) -> Result<u64> {
    let u = lattice.inverse().mul_vec(x)?;
    let y = lattice.point(u.iter().map(round_int).collect());
    let d_up = body.gauge_exact(&sub_vec(&y.ambient, x))?.upper_bound();
    enclosing_box(body, lattice, x, &d_up)
}

/// Points of `(scale K + center) ∩ L` among coefficients in the box.
pub fn brute_points(
    body: &ConvexBody,
    scale: &Rational,
    lattice: &Lattice,
    center: &[Rational],
    coeff_box: u64,
) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    sweep(lattice.dim(), coeff_box as i64, |z| {
        let p = lattice.point(to_big(z));
        if body.contains_scaled(&sub_vec(&p.ambient, center), scale).expect("dimension") {
            out.push(p);
        }
    });
    out.sort();
    Ok(out)
}

/// Exact `|(scale K + center) ∩ L|`.
pub fn count_points(body: &ConvexBody, scale: &Rational, lattice: &Lattice, center: &[Rational]) -> Result<usize> {
    count_in_body(body, center, scale, lattice)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub translate: Vec<Rational>,
    pub count: usize,
    /// `gamma^-n (1 + 2d / lambda_1)^n`, with `lambda_1` rounded up.
    pub lambda_bound: Rational,
    /// `gamma^-n (2d + 1)^n |(K ∩ -K) ∩ L|`.
    pub volume_bound: Rational,
    /// The smaller of the two bounds.
    pub bound: Rational,
    pub pass: bool,
}

/// Compares translate counts of `d K` against both counting bounds.
pub fn check_counting_bounds(
    body: &ConvexBody,
    lattice: &Lattice,
    d: &Rational,
    centers: &[Vec<Rational>],
) -> Result<Vec<CountReport>> {
    if d.is_negative() {
        return Err(Error::invalid("d must be nonnegative"));
    }
    let n = lattice.dim() as u32;
    let sym = body.symmetrize();
    let zero = vec![Rational::zero(); lattice.dim()];
    let shortest = shortest_vectors(&sym, lattice, &Rational::one())?;
    let lambda = sym.gauge_exact(&shortest.first().expect("nonempty").ambient)?.upper_bound();
    let base = count_in_body(&sym, &zero, &Rational::one(), lattice)?;
    let inv_gamma = pow_rational(&(Rational::one() / body.gamma()), n);
    let two_d = rat_int(2) * d;
    let lambda_bound = &inv_gamma * pow_rational(&(Rational::one() + &two_d / &lambda), n);
    let volume_bound =
        &inv_gamma * pow_rational(&(&two_d + Rational::one()), n) * rat_int(base as i64);
    let bound = lambda_bound.clone().min(volume_bound.clone());
    centers
        .iter()
        .map(|c| {
            let count = count_in_body(body, c, d, lattice)?;
            Ok(CountReport {
                translate: c.clone(),
                count,
                lambda_bound: lambda_bound.clone(),
                volume_bound: volume_bound.clone(),
                bound: bound.clone(),
                pass: rat_int(count as i64) <= bound,
            })
        })
        .collect()
}

/// Points `B k / denom` for `k in {0, .., denom-1}^n`: a grid on the
/// fundamental parallelepiped.
pub fn fundamental_grid(lattice: &Lattice, denom: u64) -> Vec<Vec<Rational>> {
    let n = lattice.dim();
    let mut out = Vec::with_capacity((denom as usize).pow(n as u32));
    let mut k = vec![0u64; n];
    loop {
        let frac: Vec<Rational> =
            k.iter().map(|&v| Rational::new(BigInt::from(v), BigInt::from(denom))).collect();
        out.push(lattice.basis().mul_vec(&frac).expect("dimension"));
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            k[i] += 1;
            if k[i] < denom {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// `|A_1 + ... + A_k|` in `Z_p`.
pub fn sumset_size(p: u64, sets: &[Vec<u64>]) -> usize {
    let p = p as usize;
    let mut acc = vec![false; p];
    acc[0] = true;
    for set in sets {
        let mut next = vec![false; p];
        for (s, _) in acc.iter().enumerate().filter(|(_, &b)| b) {
            for &a in set {
                next[(s + a as usize % p) % p] = true;
            }
        }
        acc = next;
    }
    acc.iter().filter(|&&b| b).count()
}

/// `|A_1 + ... + A_k| >= min(p, sum |A_i| - k + 1)` by exhaustive sumsets.
pub fn check_cauchy_davenport(p: u64, sets: &[Vec<u64>]) -> Result<bool> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if sets.is_empty() || sets.iter().any(Vec::is_empty) {
        return Err(Error::invalid("sets must be nonempty"));
    }
    let sizes: usize = sets
        .iter()
        .map(|s| {
            let mut s: Vec<u64> = s.iter().map(|v| v % p).collect();
            s.sort_unstable();
            s.dedup();
            s.len()
        })
        .sum();
    let rhs = (p as usize).min(sizes + 1 - sets.len());
    Ok(sumset_size(p, sets) >= rhs)
}

/// First `N` in the range with no prime in `(N, 4N/3)`.
pub fn check_prime_gap(from: u64, to: u64) -> Option<u64> {
    (from.max(1001)..=to).find(|&n| {
        find_prime(n).map_or(true, |p| !(n < p && 3 * (p as u128) < 4 * n as u128))
    })
}
