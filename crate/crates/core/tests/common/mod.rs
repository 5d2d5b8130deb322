#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sparsecvp::arith::{rat, rat_int};
use sparsecvp::{ConvexBody, Lattice, Rational, RationalMatrix};

pub fn v(xs: &[(i64, i64)]) -> Vec<Rational> {
    xs.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// A nonsingular lattice with small integer entries, sometimes scaled by `1/2`.
pub fn random_lattice(rng: &mut ChaCha8Rng, n: usize) -> Lattice {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { rng.gen_range(1..=3) } else { rng.gen_range(-2..=2) }).collect())
            .collect();
        let mut m = RationalMatrix::from_int_rows(&rows).unwrap();
        if rng.gen_bool(0.25) {
            m = m.scaled(&rat(1, 2));
        }
        if let Ok(l) = Lattice::new(m) {
            return l;
        }
    }
}

/// `{x : x_i <= b_i, -sum x <= b_0}`, an asymmetric simplex around 0.
pub fn simplex(rng: &mut ChaCha8Rng, n: usize) -> ConvexBody {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rows.push(vec![-1; n]);
    let b: Vec<Rational> = (0..=n).map(|_| rat(rng.gen_range(1..=4), rng.gen_range(1..=2))).collect();
    ConvexBody::polytope(RationalMatrix::from_int_rows(&rows).unwrap(), b).unwrap()
}

pub const KINDS: [&str; 4] = ["l1", "l2", "linf", "simplex"];

pub fn body(rng: &mut ChaCha8Rng, kind: &str, n: usize) -> ConvexBody {
    let radius = rat(rng.gen_range(1..=4), 2);
    match kind {
        "l1" => ConvexBody::l1(radius, n).unwrap(),
        "l2" => ConvexBody::l2(radius, n).unwrap(),
        "linf" => ConvexBody::linf(radius, n).unwrap(),
        _ => simplex(rng, n),
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize, span: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let den = rng.gen_range(1..=7);
            rat(rng.gen_range(-span * den..=span * den), den)
        })
        .collect()
}

pub fn one() -> Rational {
    rat_int(1)
}
