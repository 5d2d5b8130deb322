//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::HashSet;
use std::path::Path;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparsecvp::arith::{ceil_int, rat, rat_int};
use sparsecvp::oracle::check_prime_gap;
use sparsecvp::sparsifier::SPARSE_THRESHOLD;
use sparsecvp::*;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn approximation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let epss = [rat_int(1), rat(1, 2), rat(1, 4)];
    let mut points = 0;
    for i in 0..200 {
        let n = [1, 2, 2, 3, 3][i % 5];
        let kind = KINDS[i % 4];
        let eps = &epss[i % 3];
        let lattice = random_lattice(&mut rng, n);
        let k = body(&mut rng, kind, n);
        let x = random_point(&mut rng, n, 3);
        let fail = |m: String| format!("instance {i} ({kind}, n={n}, eps={eps}): {m}");
        let res = approx_cvp(&k, &lattice, &x, eps).map_err(|e| fail(e.to_string()))?;
        let reduced = lattice.lll_reduce();
        let boxr = certified_box(&k, &reduced, &x).map_err(|e| fail(e.to_string()))?;
        let exact = brute_cvp(&k, &reduced, &x, boxr).map_err(|e| fail(e.to_string()))?;
        let limit = exact.distance.scaled(&(one() + eps));
        if res.points.is_empty() {
            return Err(fail("empty output".into()));
        }
        for y in &res.points {
            if !lattice.contains(&y.ambient).unwrap() {
                return Err(fail(format!("{:?} is not a lattice point", y.ambient)));
            }
            let g = k.gauge_exact(&arith::sub_vec(&y.ambient, &x)).unwrap();
            if g > limit {
                return Err(fail(format!("gauge {g} exceeds (1+eps) * {}", exact.distance)));
            }
            points += 1;
        }
    }
    Ok(format!("200 instances, {points} points within (1+eps) d_exact"))
}

fn constructed_set(rng: &mut ChaCha8Rng, style: usize, n: usize, size: usize, p: u64) -> Vec<Vec<u64>> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::with_capacity(size);
    let mut push = |v: Vec<u64>, out: &mut Vec<Vec<u64>>| {
        if out.len() < size && seen.insert(v.clone()) {
            out.push(v);
        }
    };
    push(vec![0; n], &mut out);
    match style {
        // integer points of a growing cube, as a symmetric enumeration output
        0 => {
            let mut m = 1i64;
            while out.len() < size {
                let side = (2 * m + 1) as u64;
                for code in 0..side.pow(n as u32) {
                    let v: Vec<u64> = (0..n)
                        .map(|i| {
                            let c = (code / side.pow(i as u32)) % side;
                            (c as i64 - m).rem_euclid(p as i64) as u64
                        })
                        .collect();
                    push(v, &mut out);
                }
                m += 1;
            }
        }
        // multiples of a few directions, then random filler
        1 => {
            for _ in 0..3 {
                let dir: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                for k in 1..=(size as u64 / 4) {
                    push(dir.iter().map(|d| d * k % p).collect(), &mut out);
                }
            }
        }
        _ => {}
    }
    while out.len() < size {
        let v = (0..n).map(|_| rng.gen_range(0..p)).collect();
        push(v, &mut out);
    }
    out
}

fn good_vectors() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for idx in 0..20 {
        let n = [2, 3, 4][idx % 3];
        let size = rng.gen_range(1001..=1300);
        let p = find_prime(size as u64).map_err(|e| e.to_string())?;
        let set = constructed_set(&mut rng, idx % 3, n, size, p);
        let vecs: Vec<ModPVector> = set.iter().map(|v| ModPVector::new(v.clone(), p)).collect();
        let res = good_vector(&vecs, p).map_err(|e| format!("set {idx}: {e}"))?;
        let values: Vec<u64> = set
            .iter()
            .map(|y| y.iter().zip(&res.a.entries).map(|(a, b)| a * b % p).sum::<u64>() % p)
            .collect();
        let zeros = values.iter().filter(|&&v| v == 0).count();
        let distinct = values.iter().collect::<HashSet<_>>().len() as u64;
        if zeros > 6 || distinct < (p + 2).div_ceil(3) {
            return Err(format!("set {idx} (n={n}, |S|={size}, p={p}): zeros {zeros}, distinct {distinct}"));
        }
    }
    Ok("20 sets, zeros <= 6 and distinct >= ceil((p+2)/3)".into())
}

fn lambda_upper(k: &ConvexBody, lattice: &Lattice) -> Rational {
    let sym = k.symmetrize();
    let sv = shortest_vectors(&sym, lattice, &rat(1, 3)).unwrap();
    sym.gauge_exact(&sv.first().unwrap().ambient).unwrap().upper_bound()
}

fn sparsifier_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0;
    for i in 0..50 {
        let lattice = random_lattice(&mut rng, 2);
        let kind = KINDS[i % 4];
        let k = body(&mut rng, kind, 2);
        let fail = |m: String| format!("instance {i} ({kind}): {m}");
        let base = rat_int(130) * lambda_upper(&k, &lattice);
        let mut t = Rational::from_integer(ceil_int(&base));
        let (sparse, report) = loop {
            let (s, r) = sparsify(&k, &lattice, &t).map_err(|e| fail(e.to_string()))?;
            if r.triggered() {
                break (s, r);
            }
            if t > base.clone() * rat_int(27) {
                return Err(fail("the N > 1000 branch never triggered".into()));
            }
            t *= rat_int(3);
        };
        let grid = oracle::fundamental_grid(&lattice, 10);
        let v = verify_sparsifier(&k, &lattice, &sparse, &t, &grid).map_err(|e| fail(e.to_string()))?;
        if !v.pass || !v.inflation_ok() || v.max_count as u128 > v.count_bound {
            return Err(fail(format!("verify failed: max_count {}, levels {}", v.max_count, report.levels.len())));
        }
        worst = worst.max(v.max_count);
    }
    Ok(format!("50 instances triggered and verified, max translate count {worst}"))
}

fn sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut total = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=3);
        let kind = KINDS[i % 4];
        let lattice = random_lattice(&mut rng, n);
        let k = body(&mut rng, kind, n);
        let scale = rat(rng.gen_range(1..=12), 4);
        let center = random_point(&mut rng, n, 2);
        let eps = rat(1, rng.gen_range(1..=10));
        let fail = |m: String| format!("tuple {i} ({kind}, n={n}): {m}");
        let got = lattice_enum(&k, &center, &scale, &lattice, &eps).map_err(|e| fail(e.to_string()))?;
        let reduced = lattice.lll_reduce();
        let boxr = enclosing_box(&k, &reduced, &center, &scale).unwrap();
        let want = brute_points(&k, &scale, &reduced, &center, boxr).unwrap();
        let mut got: Vec<_> = got.iter().map(|p| p.ambient.clone()).collect();
        let mut want: Vec<_> = want.into_iter().map(|p| p.ambient).collect();
        got.sort();
        want.sort();
        if got != want {
            return Err(fail(format!("enumerated {} points, brute force {}", got.len(), want.len())));
        }
        total += got.len();
    }
    Ok(format!("100 tuples match brute force ({total} points)"))
}

/// Centrally symmetric hexagon in the first two coordinates, a prism above it.
fn hexagon(n: usize) -> ConvexBody {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for r in [[1, 0], [0, 1], [1, 1]] {
        for s in [1, -1] {
            let mut row = vec![0; n];
            row[0] = s * r[0];
            row[1] = s * r[1];
            rows.push(row);
        }
    }
    for i in 2..n {
        for s in [1, -1] {
            let mut row = vec![0; n];
            row[i] = s;
            rows.push(row);
        }
    }
    let b = vec![one(); rows.len()];
    ConvexBody::polytope(RationalMatrix::from_int_rows(&rows).unwrap(), b).unwrap()
}

fn counting_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let z2 = Lattice::integer(2);
    let lattices = [z2.clone(), random_lattice(&mut rng, 2), random_lattice(&mut rng, 3)];
    let ds = [rat_int(0), rat(1, 2), rat_int(1), rat_int(3), rat_int(10)];
    let mut cases = 0;
    for l in &lattices {
        let n = l.dim();
        let bodies = [
            ConvexBody::linf(one(), n).unwrap(),
            ConvexBody::l1(one(), n).unwrap(),
            ConvexBody::l2(one(), n).unwrap(),
            hexagon(n),
            simplex(&mut rng, n),
        ];
        let grid = oracle::fundamental_grid(l, if n == 2 { 8 } else { 4 });
        for (b, k) in bodies.iter().enumerate() {
            // the asymmetric extra body is kept off the largest scale
            for d in ds.iter().filter(|d| b < 4 || **d <= rat_int(3)) {
                let reps = check_counting_bounds(k, l, d, &grid).map_err(|e| e.to_string())?;
                if let Some(r) = reps.iter().find(|r| !r.pass) {
                    return Err(format!("count {} exceeds bound {} at {:?}", r.count, r.bound, r.translate));
                }
                cases += reps.len();
            }
        }
    }
    let cube = ConvexBody::linf(one(), 2).unwrap();
    let tight = check_counting_bounds(&cube, &z2, &rat_int(3), &oracle::fundamental_grid(&z2, 8))
        .map_err(|e| e.to_string())?;
    let max = tight.iter().map(|r| r.count).max().unwrap();
    if max != 49 || tight[0].lambda_bound != rat_int(49) {
        return Err(format!("tight case: max count {max}, lambda bound {}", tight[0].lambda_bound));
    }
    Ok(format!("{cases} translate checks pass; tight case max 49 = lambda bound"))
}

fn prime_gap() -> Outcome {
    match check_prime_gap(1001, 100_000) {
        None => Ok("every N in 1001..100000 has a prime in (N, 4N/3)".into()),
        Some(n) => Err(format!("no prime for N = {n}")),
    }
}

fn cauchy_davenport() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let primes = [2u64, 3, 5, 7, 11, 13];
    for i in 0..500 {
        let p = primes[i % primes.len()];
        let k = rng.gen_range(1..=4);
        let family: Vec<Vec<u64>> = (0..k)
            .map(|_| {
                let size = rng.gen_range(1..=p as usize);
                sample(&mut rng, p as usize, size).into_iter().map(|v| v as u64).collect()
            })
            .collect();
        if !check_cauchy_davenport(p, &family).map_err(|e| e.to_string())? {
            return Err(format!("family {i} mod {p} violates the bound: {family:?}"));
        }
    }
    Ok("500 families pass".into())
}

fn randomized_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut small_retries = 0;
    let mut max_retries = 0;
    for i in 0..20 {
        let lattice = random_lattice(&mut rng, 2);
        let kind = KINDS[i % 4];
        let k = body(&mut rng, kind, 2);
        let sym = k.symmetrize();
        let zero = vec![rat_int(0); 2];
        let fail = |m: String| format!("instance {i} ({kind}): {m}");
        let mut t = Rational::from_integer(ceil_int(&(rat_int(60) * lambda_upper(&k, &lattice))));
        while count_in_body(&sym, &zero, &(&t / rat_int(3)), &lattice).unwrap() <= SPARSE_THRESHOLD {
            t = Rational::from_integer(ceil_int(&(t * rat(3, 2))));
        }
        let grid = oracle::fundamental_grid(&lattice, 5);
        let (det, _) = sparsify(&k, &lattice, &t).map_err(|e| fail(e.to_string()))?;
        let seed = 7919 * i as u64 + 1;
        let (rnd, report) = sparsify_randomized(&k, &lattice, &t, seed).map_err(|e| fail(e.to_string()))?;
        for (name, s) in [("deterministic", &det), ("randomized", &rnd)] {
            let v = verify_sparsifier(&k, &lattice, s, &t, &grid).map_err(|e| fail(e.to_string()))?;
            if !v.pass {
                return Err(fail(format!("{name} sparsifier failed verification")));
            }
        }
        let retries = report.levels[0].retries.ok_or_else(|| fail("randomized cut did not trigger".into()))?;
        max_retries = max_retries.max(retries);
        if retries <= 20 {
            small_retries += 1;
        }
    }
    if small_retries * 100 < 95 * 20 {
        return Err(format!("only {small_retries}/20 runs needed <= 20 retries"));
    }
    Ok(format!("20 instances verified; {small_retries}/20 runs with <= 20 retries (max {max_retries})"))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["sparsecvp"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, out, err)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let basis = file("b.txt", "# columns are basis vectors\n2\n2 1\n0 3\n");
    let linf = file("linf.json", r#"{"type":"lp","p":"inf","radius":"1"}"#);
    let simplex = file("simplex.json", r#"{"type":"polytope","A":[[1,0],[0,1],[-1,-1]],"b":["1","1","1/2"]}"#);
    let target = file("t.txt", "1/3 -5/4\n");
    let sparse = file("s.txt", "2\n4 2\n0 6\n");
    let report = dir.path().join("r.json");
    let report_s = report.to_str().unwrap().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["cvp-approx", "--basis", &basis, "--body", &linf, "--target", &target, "--eps", "1/2"],
        vec!["cvp-approx", "--basis", &basis, "--body", &simplex, "--target", &target, "--eps", "1/4"],
        vec!["--format", "json", "cvp-approx", "--basis", &basis, "--body", &linf, "--target", &target, "--eps", "1"],
        vec!["sparsify", "--basis", &basis, "--body", &linf, "--t", "400", "--report", &report_s],
        vec!["sparsify", "--randomized", "--seed", "5", "--basis", &basis, "--body", &linf, "--t", "200"],
        vec!["enum", "--basis", &basis, "--body", &simplex, "--center", &target, "--scale", "3"],
        vec!["svp", "--basis", &basis, "--body", &linf],
        vec!["--threads", "2", "svp", "--basis", &basis],
        vec!["cvp-l2", "--basis", &basis, "--target", &target],
        vec!["verify", "bounds", "--basis", &basis, "--body", &linf, "--d", "2"],
        vec!["verify", "sumset", "--p", "11", "--random", "50", "--seed", "3"],
        vec!["verify", "sparsifier", "--basis", &basis, "--body", &linf, "--sparse", &sparse, "--t", "2"],
        vec!["verify", "primegap", "--from", "1001", "--to", "5000"],
    ];
    for cmd in &commands {
        let mut runs = Vec::new();
        for _ in 0..3 {
            let (code, out, err) = run_cli(cmd);
            let rep = if Path::new(&report).exists() { std::fs::read(&report).unwrap() } else { Vec::new() };
            runs.push((code, out, err, rep));
        }
        if runs[0].0 != 0 && runs[0].0 != 3 {
            return Err(format!("{cmd:?} exited {}: {}", runs[0].0, String::from_utf8_lossy(&runs[0].2)));
        }
        if runs.iter().any(|r| r != &runs[0]) {
            return Err(format!("{cmd:?} output differs between runs"));
        }
    }
    Ok(format!("{} commands byte-identical over 3 runs", commands.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("approximation guarantee", approximation),
        ("good-vector postconditions", good_vectors),
        ("sparsifier contract", sparsifier_contract),
        ("enumeration sandwich", sandwich),
        ("counting bounds", counting_bounds),
        ("prime gap", prime_gap),
        ("cauchy-davenport", cauchy_davenport),
        ("randomized agreement", randomized_agreement),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {} {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
