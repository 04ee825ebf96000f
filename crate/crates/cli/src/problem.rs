//! Problem files: JSON objects holding exact integer and rational data.
//!
//! ```json
//! { "M": [[3, 1], [1, 4]], "D": [[0, 0], [1, 0], [0, 1]], "p": 3, "J": 6, "R": 4 }
//! ```
//!
//! Rationals are written `[num, den]`; bare integers are accepted wherever a
//! rational is expected. Floats are rejected everywhere.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{Map, Value};

use spectral_affine::conjugacy::ConjugacyMode;
use spectral_affine::modlin::is_prime;
use spectral_affine::{DigitSet, IntMatrix, RationalPoint};

#[derive(Debug, thiserror::Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("validation: {0}")]
    Validation(String),
}

impl ProblemError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Io { .. } => "IoError",
            Self::Parse { .. } | Self::Field { .. } => "ParseError",
            Self::Validation(_) => "ValidationError",
        }
    }
}

type Result<T> = std::result::Result<T, ProblemError>;

/// A validated problem. Every field is optional; commands check for the ones
/// they need.
#[derive(Clone, Debug, Default)]
pub struct ProblemFile {
    pub p: Option<u64>,
    pub m: Option<IntMatrix>,
    pub d: Option<DigitSet>,
    pub s: Option<DigitSet>,
    pub b: Option<IntMatrix>,
    pub mode: Option<ConjugacyMode>,
    /// Frequency base for explicit spectra.
    pub c: Option<Vec<RationalPoint>>,
    /// Evaluation points for `fourier-eval`.
    pub xi: Option<Vec<RationalPoint>>,
    pub j: Option<u32>,
    pub r: Option<u32>,
    pub depth: Option<u32>,
    pub levels: Option<u32>,
    pub eta: Option<BigRational>,
    pub grid: Option<u32>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub budget: Option<u64>,
    pub q_hints: Option<Vec<u64>>,
    pub l: Option<BigRational>,
    pub j0: Option<u32>,
    /// The parsed JSON, echoed into reports.
    pub raw: Value,
}

const KNOWN: &[&str] = &[
    "p", "M", "D", "S", "B", "mode", "C", "xi", "J", "R", "depth", "levels", "eta", "grid", "seed", "samples", "budget",
    "q_hints", "L", "j0",
];

pub fn parse_problem(path: &Path) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ProblemError::Io { path: path.display().to_string(), source })?;
    parse_problem_str(&text)
}

pub fn parse_problem_str(text: &str) -> Result<ProblemFile> {
    let raw: Value = serde_json::from_str(text).map_err(|e| ProblemError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Object(obj) = &raw else {
        return Err(ProblemError::Parse { line: 1, column: 1, message: "top level must be an object".into() });
    };
    if let Some(k) = obj.keys().find(|k| !KNOWN.contains(&k.as_str())) {
        return Err(field(k, "unknown field"));
    }
    let mut out = ProblemFile {
        p: get(obj, "p", small::<u64>)?,
        m: get(obj, "M", matrix)?,
        d: get(obj, "D", digit_set)?,
        s: get(obj, "S", digit_set)?,
        b: get(obj, "B", matrix)?,
        mode: get(obj, "mode", mode)?,
        c: get(obj, "C", point_list)?,
        xi: get(obj, "xi", point_list)?,
        j: get(obj, "J", small::<u32>)?,
        r: get(obj, "R", small::<u32>)?,
        depth: get(obj, "depth", small::<u32>)?,
        levels: get(obj, "levels", small::<u32>)?,
        eta: get(obj, "eta", rational)?,
        grid: get(obj, "grid", small::<u32>)?,
        seed: get(obj, "seed", small::<u64>)?,
        samples: get(obj, "samples", small::<u64>)?,
        budget: get(obj, "budget", small::<u64>)?,
        q_hints: get(obj, "q_hints", |v, f| list(v, f, small::<u64>))?,
        l: get(obj, "L", rational)?,
        j0: get(obj, "j0", small::<u32>)?,
        raw: Value::Null,
    };
    validate(&out)?;
    out.raw = raw;
    Ok(out)
}

fn validate(p: &ProblemFile) -> Result<()> {
    if let Some(prime) = p.p {
        if !is_prime(prime) {
            return Err(field("p", format!("{prime} is not prime")));
        }
    }
    let mut dims: Vec<(&str, usize)> = Vec::new();
    if let Some(m) = &p.m {
        dims.push(("M", m.dim()));
    }
    for (name, set) in [("D", &p.d), ("S", &p.s)] {
        if let Some(s) = set {
            dims.push((name, s.dim()));
        }
    }
    if let Some(b) = &p.b {
        dims.push(("B", b.dim()));
    }
    for (name, pts) in [("C", &p.c), ("xi", &p.xi)] {
        for x in pts.iter().flatten() {
            dims.push((name, x.dim()));
        }
    }
    if let Some((first, n)) = dims.first() {
        if let Some((other, k)) = dims.iter().find(|(_, k)| k != n) {
            return Err(ProblemError::Validation(format!("{first} has dimension {n} but {other} has dimension {k}")));
        }
    }
    if let (Some(d), Some(s)) = (&p.d, &p.s) {
        if d.len() != s.len() {
            return Err(ProblemError::Validation(format!("|D| = {} but |S| = {}", d.len(), s.len())));
        }
    }
    if let Some(l) = &p.l {
        if l <= &BigRational::zero() {
            return Err(field("L", "must be positive"));
        }
    }
    if p.q_hints.iter().flatten().any(|&q| q == 0) {
        return Err(field("q_hints", "entries must be positive"));
    }
    Ok(())
}

fn field(name: &str, message: impl Into<String>) -> ProblemError {
    ProblemError::Field { field: name.to_string(), message: message.into() }
}

fn get<T>(obj: &Map<String, Value>, key: &str, parse: impl Fn(&Value, &str) -> Result<T>) -> Result<Option<T>> {
    obj.get(key).map(|v| parse(v, key)).transpose()
}

pub fn integer(v: &Value, f: &str) -> Result<BigInt> {
    let Value::Number(n) = v else {
        return Err(field(f, format!("expected an integer, found {v}")));
    };
    let text = n.to_string();
    if text.contains(['.', 'e', 'E']) {
        return Err(field(f, format!("floats are not accepted ({text}); use an integer or [num, den]")));
    }
    text.parse().map_err(|_| field(f, format!("bad integer {text}")))
}

fn small<T: TryFrom<BigInt>>(v: &Value, f: &str) -> Result<T> {
    let x = integer(v, f)?;
    T::try_from(x.clone()).map_err(|_| field(f, format!("{x} is out of range")))
}

pub fn rational(v: &Value, f: &str) -> Result<BigRational> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let num = integer(&pair[0], &format!("{f}[0]"))?;
            let den = integer(&pair[1], &format!("{f}[1]"))?;
            if den.is_zero() {
                return Err(field(f, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
        Value::Number(_) => Ok(BigRational::from_integer(integer(v, f)?)),
        _ => Err(field(f, format!("expected an integer or [num, den], found {v}"))),
    }
}

fn list<T>(v: &Value, f: &str, item: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<T>> {
    let Value::Array(items) = v else {
        return Err(field(f, "expected an array"));
    };
    items.iter().enumerate().map(|(i, x)| item(x, &format!("{f}[{i}]"))).collect()
}

fn int_rows(v: &Value, f: &str) -> Result<Vec<Vec<BigInt>>> {
    list(v, f, |row, g| list(row, g, integer))
}

fn matrix(v: &Value, f: &str) -> Result<IntMatrix> {
    let rows = int_rows(v, f)?;
    let n = rows.len();
    if n == 0 {
        return Err(field(f, "empty matrix"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(ProblemError::Validation(format!("{f} is not square: row {i} has {} entries, expected {n}", rows[i].len())));
    }
    IntMatrix::new(n, rows.into_iter().flatten().collect()).map_err(|e| field(f, e.to_string()))
}

fn digit_set(v: &Value, f: &str) -> Result<DigitSet> {
    let rows = int_rows(v, f)?;
    DigitSet::new(rows).map_err(|e| ProblemError::Validation(format!("{f}: {e}")))
}

fn point_list(v: &Value, f: &str) -> Result<Vec<RationalPoint>> {
    list(v, f, |p, g| list(p, g, rational).map(RationalPoint::new))
}

fn mode(v: &Value, f: &str) -> Result<ConjugacyMode> {
    match v.as_str() {
        Some("i") | Some("I") => Ok(ConjugacyMode::I),
        Some("ii") | Some("II") => Ok(ConjugacyMode::II),
        _ => Err(field(f, format!("expected \"i\" or \"ii\", found {v}"))),
    }
}
