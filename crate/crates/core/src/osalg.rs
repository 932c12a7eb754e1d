//! Degree ≤ 2 of the Orlik–Solomon algebra in an affine chart, and the
//! Aomoto complex `(A, α∧)`.
//!
//! Choosing a line `H∞` at infinity identifies the complement with an affine
//! arrangement of the remaining `n` lines. `A¹` has basis `ω_H` over the
//! affine lines. `A²` splits over affine intersection points `x`: for each
//! `x` with incident lines `i0 < i1 < … ` the products `ω_{i0}∧ω_j` form a
//! basis of the local piece, and every other product at `x` is rewritten via
//! `ω_i∧ω_j = ω_{i0}∧ω_j − ω_{i0}∧ω_i`. Lines that meet only at infinity
//! are parallel and their product vanishes.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{intersection_lattice, Arrangement, Lattice};
use crate::error::{Error, Result};
use crate::linalg::{integer_rank, rank, Subspace};
use crate::rational::{primitive_integer_vector, Rational};

/// A lattice flat seen from a chart, with incident lines in affine indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartFlat {
    /// Index into the arrangement's intersection lattice.
    pub flat: usize,
    /// Sorted affine line indices through the point (never includes `H∞`).
    pub lines: Vec<usize>,
}

impl ChartFlat {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

/// How two affine lines meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Meet {
    /// At an affine point; index into [`Chart::affine_flats`].
    Affine(usize),
    /// Parallel; index into [`Chart::infinity_flats`].
    Parallel(usize),
}

#[derive(Debug, Clone)]
pub struct Chart {
    arrangement: Arrangement,
    lattice: Lattice,
    infinity: usize,
    affine_lines: Vec<usize>,
    affine_flats: Vec<ChartFlat>,
    /// Parallel families: flats on `H∞`, listed with their affine lines.
    infinity_flats: Vec<ChartFlat>,
    meets: Vec<Vec<Option<Meet>>>,
}

pub fn make_chart(arr: &Arrangement, infinity: usize) -> Result<Chart> {
    if infinity >= arr.len() {
        return Err(Error::IndexOutOfRange {
            index: infinity,
            len: arr.len(),
        });
    }
    let lattice = intersection_lattice(arr);
    let affine_lines: Vec<usize> = (0..arr.len()).filter(|&i| i != infinity).collect();
    let to_affine = |p: usize| if p < infinity { p } else { p - 1 };
    let n = affine_lines.len();

    let mut affine_flats = Vec::new();
    let mut infinity_flats = Vec::new();
    let mut meets = vec![vec![None; n]; n];
    for (id, flat) in lattice.flats().iter().enumerate() {
        let lines: Vec<usize> = flat
            .lines
            .iter()
            .filter(|&&l| l != infinity)
            .map(|&l| to_affine(l))
            .collect();
        let (list, make): (&mut Vec<ChartFlat>, fn(usize) -> Meet) = if flat.contains_line(infinity) {
            (&mut infinity_flats, Meet::Parallel)
        } else {
            (&mut affine_flats, Meet::Affine)
        };
        let slot = list.len();
        for (a, &i) in lines.iter().enumerate() {
            for &j in &lines[a + 1..] {
                meets[i][j] = Some(make(slot));
                meets[j][i] = Some(make(slot));
            }
        }
        list.push(ChartFlat { flat: id, lines });
    }
    Ok(Chart {
        arrangement: arr.clone(),
        lattice,
        infinity,
        affine_lines,
        affine_flats,
        infinity_flats,
        meets,
    })
}

impl Chart {
    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Projective index of the line at infinity.
    pub fn infinity(&self) -> usize {
        self.infinity
    }

    /// Number of affine lines, i.e. `dim A¹`.
    pub fn dim(&self) -> usize {
        self.affine_lines.len()
    }

    /// Projective indices of the affine lines, in affine order.
    pub fn affine_lines(&self) -> &[usize] {
        &self.affine_lines
    }

    pub fn affine_index(&self, projective: usize) -> Option<usize> {
        match projective.cmp(&self.infinity) {
            std::cmp::Ordering::Less => Some(projective),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => {
                (projective < self.arrangement.len()).then(|| projective - 1)
            }
        }
    }

    pub fn projective_index(&self, affine: usize) -> usize {
        self.affine_lines[affine]
    }

    pub fn affine_flats(&self) -> &[ChartFlat] {
        &self.affine_flats
    }

    pub fn infinity_flats(&self) -> &[ChartFlat] {
        &self.infinity_flats
    }

    /// How affine lines `i ≠ j` meet.
    pub fn meet(&self, i: usize, j: usize) -> Meet {
        self.meets[i][j].expect("distinct affine lines")
    }

    pub fn are_parallel(&self, i: usize, j: usize) -> bool {
        i != j && matches!(self.meet(i, j), Meet::Parallel(_))
    }

    /// `dim A² = Σ_x (m_x − 1)` over affine points.
    pub fn b2(&self) -> usize {
        self.affine_flats.iter().map(|f| f.multiplicity() - 1).sum()
    }

    /// Residues over all lines: the affine ones, with `a_{H∞} = −Σ a_H`.
    pub fn to_projective(&self, alpha: &OneForm) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.arrangement.len()];
        let mut total = Rational::zero();
        for (a, &p) in alpha.residues.iter().zip(&self.affine_lines) {
            out[p] = a.clone();
            total += a;
        }
        out[self.infinity] = -total;
        out
    }

    /// Drops the `H∞` entry of a projective residue vector.
    pub fn from_projective(&self, residues: &[Rational]) -> Result<OneForm> {
        if residues.len() != self.arrangement.len() {
            return Err(Error::DimensionMismatch {
                expected: self.arrangement.len(),
                found: residues.len(),
            });
        }
        Ok(OneForm::new(
            self.affine_lines.iter().map(|&p| residues[p].clone()).collect(),
        ))
    }

    fn check(&self, alpha: &OneForm) -> Result<()> {
        if alpha.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: alpha.len(),
            });
        }
        Ok(())
    }
}

/// `α = Σ a_H ω_H` over the affine lines of a chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OneForm {
    #[serde(with = "crate::rational::serde_text::vec")]
    pub residues: Vec<Rational>,
}

impl OneForm {
    pub fn new(residues: Vec<Rational>) -> Self {
        Self { residues }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }

    /// Parses whitespace-separated rationals in affine line order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut residues = Vec::new();
        for (i, token) in text
            .lines()
            .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
            .enumerate()
        {
            residues.push(crate::rational::parse_rational(token).ok_or_else(|| {
                Error::MalformedNumber {
                    row: i,
                    token: token.to_string(),
                }
            })?);
        }
        Ok(Self::new(residues))
    }
}

/// An element of `A²`: per affine flat, coordinates in the basis
/// `ω_{i0}∧ω_j`, `j ≠ i0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoForm {
    #[serde(with = "crate::rational::serde_text::matrix")]
    pub per_flat: Vec<Vec<Rational>>,
}

impl TwoForm {
    pub fn is_zero(&self) -> bool {
        self.per_flat.iter().flatten().all(Zero::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.per_flat.iter().map(Vec::len).sum()
    }
}

/// Local wedge product at one flat with lines `lines` (sorted, pivot first):
/// raw products `(a_i b_j − a_j b_i) ω_i∧ω_j` folded into the pivot basis.
fn fold_wedge<T>(lines: &[usize], a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let m = lines.len();
    let mut coef = vec![T::zero(); m - 1];
    for s in 0..m {
        for t in s + 1..m {
            let (i, j) = (lines[s], lines[t]);
            let d = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
            if d.is_zero() {
                continue;
            }
            // ω_i∧ω_j with i = pivot is a basis vector; otherwise
            // ω_i∧ω_j = ω_{i0}∧ω_j − ω_{i0}∧ω_i.
            coef[t - 1] = coef[t - 1].clone() + d.clone();
            if s != 0 {
                coef[s - 1] = coef[s - 1].clone() - d;
            }
        }
    }
    coef
}

pub fn wedge(chart: &Chart, alpha: &OneForm, beta: &OneForm) -> Result<TwoForm> {
    chart.check(alpha)?;
    chart.check(beta)?;
    Ok(TwoForm {
        per_flat: chart
            .affine_flats
            .iter()
            .map(|f| fold_wedge(&f.lines, &alpha.residues, &beta.residues))
            .collect(),
    })
}

/// Matrix of `β ↦ α∧β` (rows: `A²` basis, columns: affine lines).
fn cup_matrix_generic<T>(chart: &Chart, a: &[T]) -> Vec<Vec<T>>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let n = chart.dim();
    let mut rows = Vec::with_capacity(chart.b2());
    for f in &chart.affine_flats {
        let m = f.multiplicity();
        let local_a: Vec<T> = f.lines.iter().map(|&l| a[l].clone()).collect();
        let local_lines: Vec<usize> = (0..m).collect();
        let mut block = vec![vec![T::zero(); n]; m - 1];
        for (s, &col) in f.lines.iter().enumerate() {
            let mut e = vec![T::zero(); m];
            e[s] = T::one();
            for (r, c) in fold_wedge(&local_lines, &local_a, &e).into_iter().enumerate() {
                block[r][col] = c;
            }
        }
        rows.extend(block);
    }
    rows
}

pub fn cup_matrix(chart: &Chart, alpha: &OneForm) -> Result<Vec<Vec<Rational>>> {
    chart.check(alpha)?;
    Ok(cup_matrix_generic(chart, &alpha.residues))
}

/// `dim H¹(A, α∧)`: `n` for `α = 0`, else `dim ker(α∧) − 1`.
pub fn aomoto_h1_dim(chart: &Chart, alpha: &OneForm) -> Result<usize> {
    chart.check(alpha)?;
    let n = chart.dim();
    if alpha.is_zero() {
        return Ok(n);
    }
    // Scaling α does not change the kernel, so work with a primitive
    // integer multiple and the i128 Bareiss rank.
    let ints: Vec<BigInt> = primitive_integer_vector(&alpha.residues);
    let r = match ints.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<i128>>>() {
        Some(a) => integer_rank(&cup_matrix_generic(chart, &a)),
        None => rank(&cup_matrix_generic(chart, &alpha.residues), n),
    };
    Ok(n - r - 1)
}

/// `α^⊥ = {β : α∧β = 0}` as a canonical subspace.
pub fn orth_complement(chart: &Chart, alpha: &OneForm) -> Result<Subspace> {
    let m = cup_matrix(chart, alpha)?;
    Ok(Subspace::from_equations(chart.dim(), &m))
}
