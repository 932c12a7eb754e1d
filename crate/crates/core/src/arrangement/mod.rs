//! Exact projective-plane geometry of line arrangements over ℚ.
//!
//! Lines and points are primitive integer triples with a positive leading
//! nonzero entry, so structural equality is projective equality.

pub(crate) mod classify;
mod lattice;
mod tutte;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, parse_rational, Rational};

pub use classify::{classify, ClassInfo, ClassTag, NearestCover};
pub use lattice::{intersection_lattice, Flat, Lattice};
pub use tutte::{tutte_polynomial, tutte_polynomial_with_order, TuttePolynomial};

/// Largest absolute coefficient accepted for a canonical line. Keeps every
/// cross product and incidence test inside `i64`/`i128`.
pub const MAX_COEFF: i64 = 1 << 30;

fn canonical_triple(t: [i128; 3]) -> Option<[i128; 3]> {
    let g = t.iter().fold(0i128, |acc, &v| acc.gcd(&v));
    if g == 0 {
        return None;
    }
    let lead = *t.iter().find(|&&v| v != 0).expect("nonzero triple");
    let s = if lead < 0 { -g } else { g };
    Some([t[0] / s, t[1] / s, t[2] / s])
}

/// A line `a·x + b·y + c·z = 0` of ℙ²(ℚ) in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 3]", into = "[i64; 3]")]
pub struct ProjectiveLine([i64; 3]);

impl ProjectiveLine {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::from_i128([a as i128, b as i128, c as i128], 0)
    }

    fn from_i128(t: [i128; 3], row: usize) -> Result<Self> {
        let c = canonical_triple(t).ok_or(Error::ZeroTriple { row })?;
        if c.iter().any(|v| v.abs() > MAX_COEFF as i128) {
            return Err(Error::CoefficientOverflow { row });
        }
        Ok(Self([c[0] as i64, c[1] as i64, c[2] as i64]))
    }

    pub fn coeffs(&self) -> [i64; 3] {
        self.0
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        dot(self.0, p.0) == 0
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, other: &ProjectiveLine) -> ProjectivePoint {
        let t = cross(self.0, other.0);
        let c = canonical_triple(t).expect("distinct lines meet in a point");
        ProjectivePoint([c[0] as i64, c[1] as i64, c[2] as i64])
    }
}

impl TryFrom<[i64; 3]> for ProjectiveLine {
    type Error = Error;

    fn try_from(t: [i64; 3]) -> Result<Self> {
        ProjectiveLine::new(t[0], t[1], t[2])
    }
}

impl From<ProjectiveLine> for [i64; 3] {
    fn from(l: ProjectiveLine) -> Self {
        l.0
    }
}

impl fmt::Display for ProjectiveLine {
    /// Writes the defining linear form, e.g. `x - y` or `x + y - 2z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, var) in self.0.iter().zip(["x", "y", "z"]) {
            if *c == 0 {
                continue;
            }
            let mag = c.abs();
            let sign = if *c < 0 { "-" } else { "+" };
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// A point `(x : y : z)` of ℙ²(ℚ) in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjectivePoint([i64; 3]);

impl ProjectivePoint {
    pub fn new(x: i64, y: i64, z: i64) -> Option<Self> {
        canonical_triple([x as i128, y as i128, z as i128])
            .map(|c| Self([c[0] as i64, c[1] as i64, c[2] as i64]))
    }

    pub fn coords(&self) -> [i64; 3] {
        self.0
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

fn dot(a: [i64; 3], b: [i64; 3]) -> i128 {
    a.iter().zip(b).map(|(&u, v)| u as i128 * v as i128).sum()
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i128; 3] {
    let [a0, a1, a2] = a.map(i128::from);
    let [b0, b1, b2] = b.map(i128::from);
    [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
}

/// An ordered list of distinct projective lines; line identity is the index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ProjectiveLine>", into = "Vec<ProjectiveLine>")]
pub struct Arrangement {
    lines: Vec<ProjectiveLine>,
}

impl Arrangement {
    pub fn new(lines: Vec<ProjectiveLine>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        let mut seen: HashMap<ProjectiveLine, usize> = HashMap::new();
        for (i, l) in lines.iter().enumerate() {
            if let Some(&first) = seen.get(l) {
                return Err(Error::DuplicateLine { first, second: i });
            }
            seen.insert(*l, i);
        }
        Ok(Self { lines })
    }

    /// Builds an arrangement from raw integer triples.
    pub fn from_triples(triples: &[[i64; 3]]) -> Result<Self> {
        let lines = triples
            .iter()
            .enumerate()
            .map(|(row, t)| ProjectiveLine::from_i128(t.map(i128::from), row))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lines)
    }

    pub fn lines(&self) -> &[ProjectiveLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn line(&self, index: usize) -> Result<&ProjectiveLine> {
        self.lines.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.lines.len(),
        })
    }

    /// Renders the arrangement in the `.arr` text format.
    pub fn to_text(&self) -> String {
        self.lines
            .iter()
            .map(|l| {
                let [a, b, c] = l.coeffs();
                format!("{a} {b} {c}  # {l}\n")
            })
            .collect()
    }
}

impl TryFrom<Vec<ProjectiveLine>> for Arrangement {
    type Error = Error;

    fn try_from(lines: Vec<ProjectiveLine>) -> Result<Self> {
        Arrangement::new(lines)
    }
}

impl From<Arrangement> for Vec<ProjectiveLine> {
    fn from(a: Arrangement) -> Self {
        a.lines
    }
}

/// Parses the `.arr` format: one line per row as three integers or `p/q`
/// rationals; `#` starts a comment; blank rows are skipped.
///
/// Row numbers in errors are 0-based line indices, i.e. positions among the
/// non-comment rows.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut lines = Vec::new();
    for raw in text.lines() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let row = lines.len();
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::WrongArity {
                row,
                found: tokens.len(),
            });
        }
        let values = tokens
            .iter()
            .map(|t| {
                parse_rational(t).ok_or_else(|| Error::MalformedNumber {
                    row,
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<Rational>>>()?;
        lines.push(line_from_rationals(&values, row)?);
    }
    Arrangement::new(lines)
}

fn line_from_rationals(values: &[Rational], row: usize) -> Result<ProjectiveLine> {
    let d = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(d.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return Err(Error::ZeroTriple { row });
    }
    let mut t = [0i128; 3];
    for (slot, v) in t.iter_mut().zip(&ints) {
        *slot = (v / &g)
            .to_i128()
            .ok_or(Error::CoefficientOverflow { row })?;
    }
    ProjectiveLine::from_i128(t, row)
}
