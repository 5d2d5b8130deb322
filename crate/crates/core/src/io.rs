//! Text formats for bases, targets and body specifications.
//!
//! A basis file holds `n` followed by `n` rows of `n` exact rationals; the
//! columns of that matrix are the basis vectors. A target file holds `n`
//! rationals. Lines starting with `#` and blank lines are ignored.

use serde_json::{Map, Value};

use crate::arith::{fmt_rational, parse_rational, Rational, RationalMatrix};
use crate::bodies::{ConvexBody, LpNorm};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticePoint};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_row(line: usize, text: &str) -> Result<Vec<Rational>> {
    text.split_whitespace()
        .map(|tok| parse_rational(tok).map_err(|e| parse_err(line, e.to_string())))
        .collect()
}

pub fn parse_basis(text: &str) -> Result<Lattice> {
    let mut lines = data_lines(text);
    let (line, head) = lines.next().ok_or_else(|| parse_err(1, "missing dimension"))?;
    let n: usize = head.parse().map_err(|_| parse_err(line, format!("bad dimension {head:?}")))?;
    if n == 0 {
        return Err(parse_err(line, "dimension must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = line;
    for (line, text) in lines {
        last = line;
        if rows.len() == n {
            return Err(parse_err(line, "trailing data after basis rows"));
        }
        let row = parse_row(line, text)?;
        if row.len() != n {
            return Err(parse_err(line, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() < n {
        return Err(parse_err(last, format!("expected {n} rows, found {}", rows.len())));
    }
    Lattice::new(RationalMatrix::from_rows(rows)?)
}

pub fn format_basis(lattice: &Lattice) -> String {
    let mut out = String::from("# columns are basis vectors\n");
    out.push_str(&format!("{}\n", lattice.dim()));
    for row in lattice.basis().to_rows() {
        out.push_str(&join(&row));
        out.push('\n');
    }
    out
}

/// Reads whitespace-separated rationals, possibly over several lines.
pub fn parse_target(text: &str, n: usize) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(n);
    let mut last = 1;
    for (line, text) in data_lines(text) {
        last = line;
        out.extend(parse_row(line, text)?);
        if out.len() > n {
            return Err(parse_err(line, format!("expected {n} coordinates")));
        }
    }
    if out.len() != n {
        return Err(parse_err(last, format!("expected {n} coordinates, found {}", out.len())));
    }
    Ok(out)
}

pub fn format_target(x: &[Rational]) -> String {
    format!("{}\n", join(x))
}

/// `POINT z_1 .. z_n | x_1 .. x_n`.
pub fn format_point(p: &LatticePoint) -> String {
    let z: Vec<String> = p.coeffs.iter().map(|v| v.to_string()).collect();
    format!("POINT {} | {}", z.join(" "), join(&p.ambient))
}

fn join(xs: &[Rational]) -> String {
    xs.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")
}

/// Parses a body specification for dimension `dim`.
///
/// ```
/// use sparsecvp::io::parse_body;
/// let k = parse_body(r#"{"type":"lp","p":"inf","radius":"1/2"}"#, 3).unwrap();
/// assert_eq!(k.dim(), 3);
/// ```
pub fn parse_body(text: &str, dim: usize) -> Result<ConvexBody> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    BodyParser { text }.body(&value, dim)
}

struct BodyParser<'a> {
    text: &'a str,
}

impl BodyParser<'_> {
    /// Best-effort line of the first occurrence of a key, for diagnostics.
    fn line_of(&self, key: &str) -> usize {
        let needle = format!("\"{key}\"");
        self.text.lines().position(|l| l.contains(&needle)).map_or(1, |i| i + 1)
    }

    fn err(&self, key: &str, msg: impl Into<String>) -> Error {
        parse_err(self.line_of(key), msg)
    }

    fn rational(&self, key: &str, v: &Value) -> Result<Rational> {
        match v {
            Value::String(s) => parse_rational(s).map_err(|e| self.err(key, e.to_string())),
            Value::Number(num) if num.is_i64() || num.is_u64() => {
                parse_rational(&num.to_string()).map_err(|e| self.err(key, e.to_string()))
            }
            _ => Err(self.err(key, format!("{key}: expected an integer or \"num/den\" string"))),
        }
    }

    fn vector(&self, key: &str, v: &Value) -> Result<Vec<Rational>> {
        let items = v.as_array().ok_or_else(|| self.err(key, format!("{key}: expected an array")))?;
        items.iter().map(|x| self.rational(key, x)).collect()
    }

    fn body(&self, v: &Value, dim: usize) -> Result<ConvexBody> {
        let obj = v.as_object().ok_or_else(|| parse_err(1, "body must be a JSON object"))?;
        let kind = match obj.get("type") {
            Some(Value::String(s)) => s.as_str(),
            _ => return Err(self.err("type", "missing or non-string \"type\"")),
        };
        let allowed: &[&str] = match kind {
            "lp" => &["p", "radius"],
            "polytope" => &["A", "b"],
            "symmetrized" => &["inner"],
            other => return Err(self.err("type", format!("unknown body type {other:?}"))),
        };
        for key in obj.keys() {
            if key != "type" && !allowed.contains(&key.as_str()) && !["r", "R", "gamma"].contains(&key.as_str()) {
                return Err(self.err(key, format!("unknown field {key:?}")));
            }
        }
        let body = match kind {
            "lp" => {
                let p = match obj.get("p") {
                    Some(Value::String(s)) => s.clone(),
                    Some(Value::Number(n)) => n.to_string(),
                    _ => return Err(self.err("p", "missing \"p\"")),
                };
                let p = match p.as_str() {
                    "1" => LpNorm::One,
                    "2" => LpNorm::Two,
                    "inf" => LpNorm::Inf,
                    other => return Err(self.err("p", format!("unsupported p {other:?}"))),
                };
                let radius = match obj.get("radius") {
                    Some(v) => self.rational("radius", v)?,
                    None => Rational::from_integer(1.into()),
                };
                ConvexBody::lp(p, radius, dim)?
            }
            "polytope" => {
                let rows = obj
                    .get("A")
                    .and_then(Value::as_array)
                    .ok_or_else(|| self.err("A", "missing array \"A\""))?;
                let a: Vec<Vec<Rational>> =
                    rows.iter().map(|r| self.vector("A", r)).collect::<Result<_>>()?;
                if a.iter().any(|r| r.len() != dim) {
                    return Err(self.err("A", format!("rows of A must have {dim} entries")));
                }
                let b = self.vector("b", obj.get("b").ok_or_else(|| self.err("b", "missing \"b\""))?)?;
                if b.len() != a.len() {
                    return Err(self.err("b", "A and b have different lengths"));
                }
                ConvexBody::polytope(RationalMatrix::from_rows(a)?, b)?
            }
            _ => {
                let inner = obj.get("inner").ok_or_else(|| self.err("inner", "missing \"inner\""))?;
                self.body(inner, dim)?.symmetrize()
            }
        };
        self.overrides(obj, body)
    }

    fn overrides(&self, obj: &Map<String, Value>, mut body: ConvexBody) -> Result<ConvexBody> {
        if let Some(v) = obj.get("r") {
            body = body.with_r(self.rational("r", v)?)?;
        }
        if let Some(v) = obj.get("R") {
            body = body.with_big_r(self.rational("R", v)?)?;
        }
        if let Some(v) = obj.get("gamma") {
            body = body.with_gamma(self.rational("gamma", v)?)?;
        }
        Ok(body)
    }
}
