//! Lattice sparsifiers.
//!
//! A `(K, t)` sparsifier of `L` is a sublattice `L'` whose `K`-distance to
//! every target exceeds that of `L` by at most `t`, while every translate of
//! `t (K ∩ -K)` holds only a bounded number of points of `L'`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::{fmt_rational, mod_u64, pow_rational, rat, rat_int, Rational};
use crate::bodies::{ConvexBody, GaugeValue};
use crate::enumeration::{count_in_body, cvp_exact, lattice_enum, shortest_vectors};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::modp::{complement_basis, dot_mod, find_prime, lines, ModPVector};

/// Point-count threshold above which a level cuts the lattice.
pub const SPARSE_THRESHOLD: usize = 1000;
/// Draw budget of the randomized sparsifier.
pub const RETRY_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodVectorResult {
    pub a: ModPVector,
    /// `|{y in S : <a, y> = 0}|`.
    pub zeros: usize,
    /// `|{<a, y> : y in S}|`.
    pub distinct: usize,
    /// The composed projection `P` (rows), injective on `S`.
    pub projection: Vec<Vec<u64>>,
}

/// `(zeros, distinct)` of the linear form `a` on `set`.
pub fn form_profile(a: &[u64], set: &[Vec<u64>], p: u64) -> (usize, usize) {
    let mut seen = vec![false; p as usize];
    let mut zeros = 0;
    let mut distinct = 0;
    for y in set {
        let v = dot_mod(a, y, p) as usize;
        if v == 0 {
            zeros += 1;
        }
        if !seen[v] {
            seen[v] = true;
            distinct += 1;
        }
    }
    (zeros, distinct)
}

fn is_good(zeros: usize, distinct: usize, p: u64) -> bool {
    zeros <= 6 && 3 * distinct as u64 >= p + 2
}

fn check_good_vector_input(set: &[ModPVector], p: u64) -> Result<usize> {
    let bad = |m: String| Err(Error::Precondition(m));
    let Some(first) = set.first() else { return bad("empty set".into()) };
    let n = first.dim();
    if n == 0 {
        return bad("vectors must have dimension at least 1".into());
    }
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if set.iter().any(|v| v.dim() != n || v.p != p || v.entries.iter().any(|&x| x >= p)) {
        return bad("vectors must share the dimension and modulus and be reduced".into());
    }
    if !set.iter().any(ModPVector::is_zero) {
        return bad("S must contain 0".into());
    }
    let unique: HashSet<&ModPVector> = set.iter().collect();
    if unique.len() != set.len() {
        return bad("S has repeated elements".into());
    }
    if n > 1 {
        let s = set.len() as u64;
        if s <= 1000 || s >= p || 3 * p >= 4 * s {
            return bad(format!("need 1000 < |S| < p < 4|S|/3, got |S| = {s}, p = {p}"));
        }
    }
    Ok(n)
}

/// Deterministic search for `a` with at most 6 zeros and at least
/// `(p + 2) / 3` distinct values of `<a, y>` over `S`.
///
/// `S` is first projected injectively down to `Z_p^2` through complements of
/// lines, then the lines of `Z_p^2` are scanned and the winner lifted back.
pub fn good_vector(set: &[ModPVector], p: u64) -> Result<GoodVectorResult> {
    let n = check_good_vector_input(set, p)?;
    let mut cur: Vec<Vec<u64>> = set.iter().map(|v| v.entries.clone()).collect();
    let mut proj: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    if n == 1 {
        let a = ModPVector::new(vec![1], p);
        let (zeros, distinct) = form_profile(&a.entries, &cur, p);
        return Ok(GoodVectorResult { a, zeros, distinct, projection: proj });
    }
    for n0 in (3..=n).rev() {
        let mut found = false;
        for q in lines(p, n0)? {
            let basis = complement_basis(&q, p, n0)?;
            let mut seen = HashSet::with_capacity(cur.len());
            let mut images = Vec::with_capacity(cur.len());
            let injective = cur.iter().all(|x| {
                let img: Vec<u64> = basis.iter().map(|c| dot_mod(c, x, p)).collect();
                images.push(img.clone());
                seen.insert(img)
            });
            if injective {
                proj = basis
                    .iter()
                    .map(|c| (0..n).map(|j| column_dot(c, &proj, j, p)).collect())
                    .collect();
                cur = images;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::ExistenceViolated(format!(
                "no collision-free projection from dimension {n0}"
            )));
        }
    }
    for q in lines(p, 2)? {
        let (zeros, distinct) = form_profile(q.entries(), &cur, p);
        if is_good(zeros, distinct, p) {
            let lifted: Vec<u64> =
                (0..n).map(|j| column_dot(q.entries(), &proj, j, p)).collect();
            return Ok(GoodVectorResult {
                a: ModPVector::new(lifted, p),
                zeros,
                distinct,
                projection: proj,
            });
        }
    }
    Err(Error::ExistenceViolated("no line of Z_p^2 yields a good vector".into()))
}

/// `sum_k c[k] * m[k][j] mod p`.
fn column_dot(c: &[u64], m: &[Vec<u64>], j: usize, p: u64) -> u64 {
    let col: Vec<u64> = m.iter().map(|row| row[j]).collect();
    dot_mod(c, &col, p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRecord {
    pub i: usize,
    /// `3^i * lambda` (for the randomized variant, the enumeration scale).
    pub lambda_scale: Rational,
    pub count: usize,
    pub p: Option<u64>,
    pub a: Option<ModPVector>,
    pub w: Option<Vec<Rational>>,
    pub zeros: Option<usize>,
    pub distinct: Option<usize>,
    /// Determinant of the lattice produced by this level.
    pub determinant: Rational,
    /// Failed draws before acceptance (randomized variant only).
    pub retries: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SparsifierMode {
    Deterministic,
    Randomized { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsifierReport {
    pub mode: SparsifierMode,
    pub dim: usize,
    pub t: Rational,
    pub lambda: Option<Rational>,
    pub epsilon: Option<Rational>,
    pub k: usize,
    pub levels: Vec<LevelRecord>,
    pub determinant: Rational,
}

fn rationals_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_rational(x))).collect())
}

impl SparsifierReport {
    pub fn triggered(&self) -> bool {
        self.levels.iter().any(|l| l.p.is_some())
    }

    pub fn to_json(&self) -> Value {
        let (mode, seed) = match self.mode {
            SparsifierMode::Deterministic => ("deterministic", None),
            SparsifierMode::Randomized { seed } => ("randomized", Some(seed)),
        };
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|l| {
                json!({
                    "i": l.i,
                    "lambda_scale": fmt_rational(&l.lambda_scale),
                    "N": l.count,
                    "p": l.p,
                    "a": l.a.as_ref().map(|a| a.entries.clone()),
                    "w": l.w.as_deref().map(rationals_json),
                    "zeros": l.zeros,
                    "distinct": l.distinct,
                    "determinant": fmt_rational(&l.determinant),
                    "retries": l.retries,
                })
            })
            .collect();
        json!({
            "schema": 1,
            "mode": mode,
            "seed": seed,
            "n": self.dim,
            "t": fmt_rational(&self.t),
            "lambda": self.lambda.as_ref().map(fmt_rational),
            "epsilon": self.epsilon.as_ref().map(fmt_rational),
            "k": self.k,
            "levels": levels,
            "determinant": fmt_rational(&self.determinant),
        })
    }
}

/// Largest `k >= 0` with `(3/2) (3^k - 1) lambda <= t`.
pub fn level_count(lambda: &Rational, t: &Rational) -> usize {
    let mut k = 0;
    let three = rat_int(3);
    let mut pow = three.clone();
    while rat(3, 2) * (&pow - Rational::one()) * lambda <= *t {
        k += 1;
        pow *= &three;
    }
    k
}

fn check_t(body: &ConvexBody, lattice: &Lattice, t: &Rational) -> Result<()> {
    if body.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: lattice.dim(), got: body.dim() });
    }
    if t.is_negative() {
        return Err(Error::invalid("t must be nonnegative"));
    }
    Ok(())
}

/// Coefficient vectors of the points, reduced mod `p`.
fn residues(points: &crate::enumeration::PointStream, p: u64) -> Vec<ModPVector> {
    points
        .iter()
        .map(|y| ModPVector {
            entries: y.coeffs.iter().map(|c| mod_u64(c, p)).collect(),
            p,
        })
        .collect()
}

fn dual_vector(lattice: &Lattice, a: &ModPVector) -> Vec<Rational> {
    let abar: Vec<BigInt> = a.entries.iter().map(|&v| BigInt::from(v)).collect();
    lattice.dual().mul_int_vec(&abar)
}

/// Deterministic `(K, t)` sparsifier.
pub fn sparsify(body: &ConvexBody, lattice: &Lattice, t: &Rational) -> Result<(Lattice, SparsifierReport)> {
    check_t(body, lattice, t)?;
    let n = lattice.dim();
    let sym = body.symmetrize();
    let shortest = shortest_vectors(&sym, lattice, &rat(1, 3))?;
    let y = shortest.first().expect("nonempty");
    let lambda = sym.gauge(&y.ambient, &rat(1, 2))?.value;
    let epsilon = pow_rational(&rat(1, 7), (n + 5) as u32);
    let k = level_count(&lambda, t);
    let shell = &epsilon * &lambda * sym.r();
    let zero = vec![Rational::zero(); n];
    let mut current = lattice.clone();
    let mut levels = Vec::with_capacity(k);
    let mut pow3 = Rational::one();
    for i in 0..k {
        let scale = &pow3 * (Rational::one() - &epsilon) * &lambda;
        let points = lattice_enum(&sym, &zero, &scale, &current, &shell)?;
        let count = points.len();
        let mut rec = LevelRecord {
            i,
            lambda_scale: &pow3 * &lambda,
            count,
            p: None,
            a: None,
            w: None,
            zeros: None,
            distinct: None,
            determinant: current.determinant(),
            retries: None,
        };
        if count > SPARSE_THRESHOLD {
            let p = find_prime(count as u64)?;
            let good = good_vector(&residues(&points, p), p)?;
            let w = dual_vector(&current, &good.a);
            current = current.sublattice_mod(&w, p)?;
            rec.p = Some(p);
            rec.zeros = Some(good.zeros);
            rec.distinct = Some(good.distinct);
            rec.a = Some(good.a);
            rec.w = Some(w);
            rec.determinant = current.determinant();
        }
        levels.push(rec);
        pow3 *= rat_int(3);
    }
    let report = SparsifierReport {
        mode: SparsifierMode::Deterministic,
        dim: n,
        t: t.clone(),
        lambda: Some(lambda),
        epsilon: Some(epsilon),
        k,
        levels,
        determinant: current.determinant(),
    };
    Ok((current, report))
}

/// Las Vegas sparsifier: one modular cut by a uniformly drawn form that is
/// checked against the points of `(t/3)(K ∩ -K)` before acceptance.
pub fn sparsify_randomized(
    body: &ConvexBody,
    lattice: &Lattice,
    t: &Rational,
    seed: u64,
) -> Result<(Lattice, SparsifierReport)> {
    check_t(body, lattice, t)?;
    let n = lattice.dim();
    let sym = body.symmetrize();
    let scale = t / rat_int(3);
    let zero = vec![Rational::zero(); n];
    let shell = pow_rational(&rat(1, 7), (n + 5) as u32) * sym.r();
    let points = lattice_enum(&sym, &zero, &scale, lattice, &shell)?;
    let count = points.len();
    let mut rec = LevelRecord {
        i: 0,
        lambda_scale: scale,
        count,
        p: None,
        a: None,
        w: None,
        zeros: None,
        distinct: None,
        determinant: lattice.determinant(),
        retries: None,
    };
    let mut out = lattice.clone();
    if count > SPARSE_THRESHOLD {
        let p = find_prime(count as u64)?;
        let set: Vec<Vec<u64>> = residues(&points, p).into_iter().map(|v| v.entries).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut accepted = None;
        for draw in 0..RETRY_BUDGET {
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            let (zeros, distinct) = form_profile(&a, &set, p);
            if is_good(zeros, distinct, p) {
                accepted = Some((a, zeros, distinct, draw));
                break;
            }
        }
        let (a, zeros, distinct, retries) =
            accepted.ok_or(Error::RetryBudgetExhausted(RETRY_BUDGET))?;
        let a = ModPVector::new(a, p);
        let w = dual_vector(lattice, &a);
        out = lattice.sublattice_mod(&w, p)?;
        rec.p = Some(p);
        rec.a = Some(a);
        rec.w = Some(w);
        rec.zeros = Some(zeros);
        rec.distinct = Some(distinct);
        rec.retries = Some(retries);
        rec.determinant = out.determinant();
    }
    let report = SparsifierReport {
        mode: SparsifierMode::Randomized { seed },
        dim: n,
        t: t.clone(),
        lambda: None,
        epsilon: None,
        k: 1,
        levels: vec![rec],
        determinant: out.determinant(),
    };
    Ok((out, report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetCheck {
    pub target: Vec<Rational>,
    pub distance: GaugeValue,
    pub sparse_distance: GaugeValue,
    /// `d_K(L2, x) <= d_K(L, x) + t`.
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub targets: Vec<TargetCheck>,
    pub max_count: usize,
    pub count_bound: u128,
    pub pass: bool,
}

impl VerifyReport {
    pub fn inflation_ok(&self) -> bool {
        self.targets.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> Value {
        let targets: Vec<Value> = self
            .targets
            .iter()
            .map(|c| {
                json!({
                    "target": rationals_json(&c.target),
                    "distance": c.distance.to_string(),
                    "sparse_distance": c.sparse_distance.to_string(),
                    "ok": c.ok,
                })
            })
            .collect();
        json!({
            "schema": 1,
            "targets": targets,
            "max_count": self.max_count,
            "count_bound": self.count_bound.to_string(),
            "pass": self.pass,
        })
    }
}

/// `10^n * 7^(n+4)`.
pub fn count_bound(n: usize) -> u128 {
    10u128.pow(n as u32) * 7u128.pow(n as u32 + 4)
}

/// Checks both sparsifier properties of `sparse ⊆ lattice` on the targets.
///
/// Distances are exact. Point counts of `t (K ∩ -K)` are taken at every
/// target translate and at the origin.
pub fn verify_sparsifier(
    body: &ConvexBody,
    lattice: &Lattice,
    sparse: &Lattice,
    t: &Rational,
    targets: &[Vec<Rational>],
) -> Result<VerifyReport> {
    check_t(body, lattice, t)?;
    if !sparse.is_sublattice_of(lattice) {
        return Err(Error::NotSublattice);
    }
    let n = lattice.dim();
    let mut checks = Vec::with_capacity(targets.len());
    for x in targets {
        let (distance, _) = cvp_exact(body, lattice, x)?;
        let (sparse_distance, _) = cvp_exact(body, sparse, x)?;
        let ok = sparse_distance.le_plus(&distance, t);
        checks.push(TargetCheck { target: x.clone(), distance, sparse_distance, ok });
    }
    let sym = body.symmetrize();
    let zero = vec![Rational::zero(); n];
    let mut max_count = count_in_body(&sym, &zero, t, sparse)?;
    for x in targets {
        max_count = max_count.max(count_in_body(&sym, x, t, sparse)?);
    }
    let bound = count_bound(n);
    let pass = checks.iter().all(|c| c.ok) && (max_count as u128) <= bound;
    Ok(VerifyReport { targets: checks, max_count, count_bound: bound, pass })
}
