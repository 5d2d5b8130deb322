//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error or malformed file, 2 invalid or
//! infeasible input, 3 internal failure or a failed `verify` check.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::approx::approx_cvp;
use crate::arith::{fmt_rational, norm2_sq, parse_rational, Rational};
use crate::bodies::{ConvexBody, GaugeValue};
use crate::enumeration::{cvp_l2_exact, lattice_enum, shortest_vectors, svp_l2, PointStream};
use crate::error::Error;
use crate::io::{format_basis, format_point, parse_basis, parse_body, parse_target};
use crate::lattice::Lattice;
use crate::oracle::{check_cauchy_davenport, check_counting_bounds, check_prime_gap, fundamental_grid};
use crate::sparsifier::{sparsify, sparsify_randomized, verify_sparsifier};

#[derive(Parser, Debug)]
#[command(name = "sparsecvp", version, about = "Approximate CVP under general norms by lattice sparsification")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print diagnostics to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Points within (1+eps) of the K-distance from the target.
    CvpApprox {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        eps: Rational,
    },
    /// Sparsifier sublattice at scale t, printed as a basis file.
    Sparsify {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        body: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        t: Rational,
        #[arg(long, requires = "seed")]
        randomized: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Lattice points of scale*K + center.
    Enum {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        body: PathBuf,
        /// Target file with the center; the origin by default.
        #[arg(long)]
        center: Option<PathBuf>,
        #[arg(long, value_parser = rational_arg)]
        scale: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "1")]
        eps: Rational,
    },
    /// Shortest nonzero vectors; Euclidean unless a symmetric body is given.
    Svp {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        body: Option<PathBuf>,
    },
    /// Exact Euclidean closest vectors.
    CvpL2 {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Empirical checks.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Translate counts of dK against both counting bounds.
    Bounds {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        body: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        d: Rational,
        /// Translates form a grid of this resolution in the fundamental cell.
        #[arg(long, default_value_t = 8)]
        denom: u64,
    },
    /// Cauchy-Davenport on given or random set families in Z_p.
    Sumset {
        #[arg(long)]
        p: u64,
        /// A set as comma-separated residues; repeat for a family.
        #[arg(long = "set")]
        sets: Vec<String>,
        /// Number of random families to check instead.
        #[arg(long, conflicts_with = "sets")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Both sparsifier properties of a given sublattice.
    Sparsifier {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        sparse: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        t: Rational,
        /// One target per line; a fundamental-cell grid by default.
        #[arg(long)]
        targets: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        grid: u64,
    },
    /// A prime in (N, 4N/3) for every N in the range above 1000.
    Primegap {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
}

/// Failures of a command, tagged with their exit code.
enum Failure {
    Usage(String),
    Lib(Error),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    format: Format,
    verbose: u8,
    out: String,
    diag: String,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn json(&mut self, v: Value) {
        let text = serde_json::to_string_pretty(&v).expect("serializable");
        self.line(text);
    }

    fn note(&mut self, s: impl AsRef<str>) {
        if self.verbose > 0 {
            self.diag.push_str(s.as_ref());
            self.diag.push('\n');
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse { line, msg } => Failure::Usage(format!("{}:{line}: {msg}", path.display())),
        other => Failure::Lib(other),
    }
}

fn load_basis(path: &Path) -> Result<Lattice, Failure> {
    parse_basis(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_body(path: &Path, dim: usize) -> Result<ConvexBody, Failure> {
    parse_body(&read(path)?, dim).map_err(|e| in_file(path, e))
}

fn load_target(path: &Path, dim: usize) -> Result<Vec<Rational>, Failure> {
    parse_target(&read(path)?, dim).map_err(|e| in_file(path, e))
}

fn strings(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(fmt_rational(x))).collect())
}

fn points_json(points: &PointStream) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| {
                let z: Vec<Value> = p.coeffs.iter().map(|c| Value::String(c.to_string())).collect();
                json!({ "coeffs": z, "ambient": strings(&p.ambient) })
            })
            .collect(),
    )
}

fn emit_points(ctx: &mut Ctx, points: &PointStream, tail_key: &str, tail: String) {
    match ctx.format {
        Format::Text => {
            for p in points {
                ctx.line(format_point(p));
            }
            ctx.line(format!("{} {tail}", tail_key.to_uppercase()));
        }
        Format::Json => ctx.json(json!({
            "schema": 1,
            "points": points_json(points),
            tail_key: tail,
        })),
    }
}

fn basis_json(l: &Lattice) -> Value {
    Value::Array(l.basis().to_rows().iter().map(|r| strings(r)).collect())
}

fn verdict(ctx: &mut Ctx, pass: bool, text: String, detail: Value) -> Outcome {
    match ctx.format {
        Format::Text => ctx.line(format!("{} {text}", if pass { "PASS" } else { "FAIL" })),
        Format::Json => ctx.json(json!({ "schema": 1, "pass": pass, "detail": detail })),
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Outcome {
    match cmd {
        Command::CvpApprox { basis, body, target, eps } => {
            let lattice = load_basis(&basis)?;
            let k = load_body(&body, lattice.dim())?;
            let x = load_target(&target, lattice.dim())?;
            let res = approx_cvp(&k, &lattice, &x, &eps)?;
            let tr = &res.trace;
            ctx.note(format!(
                "l {} eps0 {} d {} d_tilde {} sparsifications {}",
                tr.l,
                tr.eps0,
                tr.d_final,
                tr.d_tilde,
                tr.reports.len()
            ));
            emit_points(ctx, &res.points, "bound", fmt_rational(&res.distance_bound));
        }
        Command::Sparsify { basis, body, t, randomized, seed, report } => {
            let lattice = load_basis(&basis)?;
            let k = load_body(&body, lattice.dim())?;
            let (sparse, rep) = match (randomized, seed) {
                (true, Some(seed)) => sparsify_randomized(&k, &lattice, &t, seed)?,
                (false, None) => sparsify(&k, &lattice, &t)?,
                _ => return Err(Failure::Usage("--seed needs --randomized".into())),
            };
            let sparse = sparse.canonical();
            let rep_json = rep.to_json();
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&rep_json).expect("serializable") + "\n";
                std::fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            ctx.note(format!("levels {} determinant {}", rep.levels.len(), rep.determinant));
            match ctx.format {
                Format::Text => {
                    let text = format_basis(&sparse);
                    ctx.out.push_str(&text);
                }
                Format::Json => ctx.json(json!({
                    "schema": 1,
                    "basis": basis_json(&sparse),
                    "report": rep_json,
                })),
            }
        }
        Command::Enum { basis, body, center, scale, eps } => {
            let lattice = load_basis(&basis)?;
            let k = load_body(&body, lattice.dim())?;
            let c = match center {
                Some(path) => load_target(&path, lattice.dim())?,
                None => vec![Rational::from_integer(0.into()); lattice.dim()],
            };
            let points = lattice_enum(&k, &c, &scale, &lattice, &eps)?;
            let count = points.len().to_string();
            emit_points(ctx, &points, "count", count);
        }
        Command::Svp { basis, body } => {
            let lattice = load_basis(&basis)?;
            let (points, norm) = match body {
                Some(path) => {
                    let k = load_body(&path, lattice.dim())?;
                    let points = shortest_vectors(&k, &lattice, &Rational::from_integer(1.into()))?;
                    let norm = k.gauge_exact(&points.first().expect("nonempty").ambient)?;
                    (points, norm)
                }
                None => {
                    let points = svp_l2(&lattice);
                    let norm = GaugeValue::sqrt(norm2_sq(&points.first().expect("nonempty").ambient));
                    (points, norm)
                }
            };
            emit_points(ctx, &points, "norm", norm.to_string());
        }
        Command::CvpL2 { basis, target } => {
            let lattice = load_basis(&basis)?;
            let x = load_target(&target, lattice.dim())?;
            let points = cvp_l2_exact(&lattice, &x)?;
            let y = &points.first().expect("nonempty").ambient;
            let dist = GaugeValue::sqrt(norm2_sq(&crate::arith::sub_vec(y, &x)));
            emit_points(ctx, &points, "distance", dist.to_string());
        }
        Command::Verify { check } => return verify(check, ctx),
    }
    Ok(())
}

fn parse_set(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| Failure::Usage(format!("bad set element {v:?}"))))
        .collect()
}

fn random_family(rng: &mut ChaCha8Rng, p: u64) -> Vec<Vec<u64>> {
    let k = rng.gen_range(1..=4);
    (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=p as usize);
            let mut s: Vec<u64> = sample(rng, p as usize, size).into_iter().map(|v| v as u64).collect();
            s.sort_unstable();
            s
        })
        .collect()
}

fn verify(check: Check, ctx: &mut Ctx) -> Outcome {
    match check {
        Check::Bounds { basis, body, d, denom } => {
            if denom == 0 {
                return Err(Failure::Usage("--denom must be positive".into()));
            }
            let lattice = load_basis(&basis)?;
            let k = load_body(&body, lattice.dim())?;
            let grid = fundamental_grid(&lattice, denom);
            let reports = check_counting_bounds(&k, &lattice, &d, &grid)?;
            for r in reports.iter().filter(|r| !r.pass) {
                ctx.note(format!("translate {:?} count {} exceeds {}", r.translate, r.count, r.bound));
            }
            let pass = reports.iter().all(|r| r.pass);
            let max = reports.iter().map(|r| r.count).max().unwrap_or(0);
            let head = &reports[0];
            let text = format!(
                "bounds translates {} max_count {max} lambda_bound {} volume_bound {}",
                reports.len(),
                head.lambda_bound,
                head.volume_bound
            );
            let detail: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "translate": strings(&r.translate),
                        "count": r.count,
                        "bound": fmt_rational(&r.bound),
                        "pass": r.pass,
                    })
                })
                .collect();
            let detail = json!({
                "lambda_bound": fmt_rational(&head.lambda_bound),
                "volume_bound": fmt_rational(&head.volume_bound),
                "max_count": max,
                "translates": detail,
            });
            verdict(ctx, pass, text, detail)
        }
        Check::Sumset { p, sets, random, seed } => {
            let families = match random {
                Some(count) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..count).map(|_| random_family(&mut rng, p)).collect()
                }
                None if sets.is_empty() => return Err(Failure::Usage("give --set or --random".into())),
                None => vec![sets.iter().map(|s| parse_set(s)).collect::<Result<Vec<_>, _>>()?],
            };
            let mut failed = 0;
            for f in &families {
                if !check_cauchy_davenport(p, f)? {
                    failed += 1;
                }
            }
            let text = format!("sumset p {p} families {} failures {failed}", families.len());
            verdict(ctx, failed == 0, text, json!({ "p": p, "families": families.len(), "failures": failed }))
        }
        Check::Sparsifier { basis, body, sparse, t, targets, grid } => {
            let lattice = load_basis(&basis)?;
            let k = load_body(&body, lattice.dim())?;
            let sub = load_basis(&sparse)?;
            if sub.dim() != lattice.dim() {
                return Err(Error::DimensionMismatch { expected: lattice.dim(), got: sub.dim() }.into());
            }
            let xs = match targets {
                Some(path) => {
                    let text = read(&path)?;
                    text.lines()
                        .enumerate()
                        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                        .map(|(i, l)| {
                            parse_target(l, lattice.dim()).map_err(|e| match e {
                                Error::Parse { msg, .. } => {
                                    Failure::Usage(format!("{}:{}: {msg}", path.display(), i + 1))
                                }
                                other => Failure::Lib(other),
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?
                }
                None => fundamental_grid(&lattice, grid.max(1)),
            };
            let rep = verify_sparsifier(&k, &lattice, &sub, &t, &xs)?;
            let text = format!(
                "sparsifier targets {} inflation {} max_count {} count_bound {}",
                rep.targets.len(),
                if rep.inflation_ok() { "ok" } else { "violated" },
                rep.max_count,
                rep.count_bound
            );
            verdict(ctx, rep.pass, text, rep.to_json())
        }
        Check::Primegap { from, to } => {
            let bad = check_prime_gap(from, to);
            let text = match bad {
                None => format!("primegap {from}..{to}"),
                Some(n) => format!("primegap {from}..{to} counterexample {n}"),
            };
            verdict(ctx, bad.is_none(), text, json!({ "from": from, "to": to, "counterexample": bad }))
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    0
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    1
                }
            };
        }
    };
    let mut ctx = Ctx { format: cli.format, verbose: cli.verbose, out: String::new(), diag: String::new() };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, &mut ctx)),
            Err(e) => Err(Failure::Usage(format!("thread pool: {e}"))),
        },
        None => dispatch(cli.command, &mut ctx),
    };
    let _ = out.write_all(ctx.out.as_bytes());
    let _ = err.write_all(ctx.diag.as_bytes());
    match result {
        Ok(()) => 0,
        Err(Failure::Check) => 3,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } => 1,
                ref e if e.is_internal() => 3,
                _ => 2,
            }
        }
    }
}
