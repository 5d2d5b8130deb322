//! `(1 + eps)`-approximate closest vectors under a general norm.

use num_traits::{One, Signed, Zero};

use crate::arith::{norm2_sq, rat_int, sqrt_lower, sub_vec, Rational};
use crate::bodies::ConvexBody;
use crate::enumeration::{cvp_l2_exact, lattice_enum, PointStream};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::sparsifier::{sparsify, SparsifierReport};

/// Doubling steps allowed before the search is declared broken.
const MAX_DOUBLINGS: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvpTrace {
    /// Lower bound on `d_K(L, x)` from the Euclidean nearest point.
    pub l: Rational,
    pub eps0: Rational,
    /// Value of `d` when the doubling loop stopped.
    pub d_final: Rational,
    /// Estimate of `d_K(L', x)` for the final sparsifier `L'`.
    pub d_tilde: Rational,
    pub sparsifier: Option<Lattice>,
    pub reports: Vec<SparsifierReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvpResult {
    /// Points in the coefficients of the input lattice.
    pub points: PointStream,
    /// Every point satisfies `‖y - x‖_K <= distance_bound <= (1 + eps) d_K(L, x)`.
    pub distance_bound: Rational,
    pub trace: CvpTrace,
}

/// Lattice points within `(1 + eps) d_K(L, x)` of `x`.
///
/// Doubles a guess `d` starting from a Euclidean lower bound, sparsifying at
/// `t = (eps/3) d` each time and enumerating `(1 + eps/3) d K + x` in the
/// sparsifier until a point shows up, then returns the points of the final
/// sparsifier within the estimated distance plus `eps0`.
pub fn approx_cvp(
    body: &ConvexBody,
    lattice: &Lattice,
    x: &[Rational],
    eps: &Rational,
) -> Result<CvpResult> {
    if !eps.is_positive() || *eps > Rational::one() {
        return Err(Error::invalid("eps must lie in (0, 1]"));
    }
    if body.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: lattice.dim(), got: body.dim() });
    }
    if let Some(coeffs) = lattice.coefficients(x)? {
        return Ok(CvpResult {
            points: PointStream::new(vec![lattice.point(coeffs)]),
            distance_bound: Rational::zero(),
            trace: CvpTrace {
                l: Rational::zero(),
                eps0: Rational::zero(),
                d_final: Rational::zero(),
                d_tilde: Rational::zero(),
                sparsifier: None,
                reports: Vec::new(),
            },
        });
    }
    let near = cvp_l2_exact(lattice, x)?;
    let z = near.first().expect("nonempty");
    let l = sqrt_lower(&norm2_sq(&sub_vec(&z.ambient, x)), 32) / body.big_r();
    let eps0 = eps / rat_int(9) * l.clone().min(Rational::one());
    let third = eps / rat_int(3);
    let shell = body.r() * &eps0;
    let mut d = &l / rat_int(2);
    let mut reports = Vec::new();
    let mut found: Option<(Rational, Lattice)> = None;
    for _ in 0..MAX_DOUBLINGS {
        d *= rat_int(2);
        let (sparse, report) = sparsify(body, lattice, &(&third * &d))?;
        reports.push(report);
        let cap = (Rational::one() + &third) * &d + &eps0;
        let mut best: Option<Rational> = None;
        let scale = (Rational::one() + &third) * &d;
        for y in &lattice_enum(body, x, &scale, &sparse, &shell)? {
            let est = body.gauge(&sub_vec(&y.ambient, x), &eps0)?.value;
            let cand = est.min(cap.clone());
            best = Some(match best {
                Some(b) if b <= cand => b,
                _ => cand,
            });
        }
        if let Some(b) = best {
            found = Some((b, sparse));
            break;
        }
    }
    let Some((d_tilde, sparse)) = found else {
        return Err(Error::ExistenceViolated("doubling search did not terminate".into()));
    };
    let bound = &d_tilde + &eps0;
    let mut points = Vec::new();
    for y in &lattice_enum(body, x, &bound, &sparse, &shell)? {
        if body.contains_scaled(&sub_vec(&y.ambient, x), &bound)? {
            points.push(lattice.point_from_ambient(y.ambient.clone())?);
        }
    }
    if points.is_empty() {
        return Err(Error::ExistenceViolated("final enumeration returned no point".into()));
    }
    Ok(CvpResult {
        points: PointStream::new(points),
        distance_bound: bound,
        trace: CvpTrace { l, eps0, d_final: d, d_tilde, sparsifier: Some(sparse), reports },
    })
}
