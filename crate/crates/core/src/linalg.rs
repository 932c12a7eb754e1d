//! Exact linear algebra over ℚ.
//!
//! Elimination is fraction-free: rows are scaled to primitive integer
//! vectors, reduced with integer row operations (dividing out the row content
//! after every step), and only normalized to rationals at the very end. The
//! reduced row-echelon form is the canonical representation of a subspace.
//!
//! [`integer_rank`] is the hot path used by the resonance oracle; it runs
//! Bareiss elimination in `i128` and falls back to big integers on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{primitive_integer_vector, Rational};

/// Reduces `rows` (all of length `ncols`) to reduced row-echelon form.
///
/// Returns the nonzero RREF rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            primitive_integer_vector(r)
        })
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let pivots = integer_gauss_jordan(&mut m, ncols);
    let reduced = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let p = row[c].clone();
            row.into_iter()
                .map(|v| Rational::new(v, p.clone()))
                .collect()
        })
        .collect();
    (reduced, pivots)
}

/// Fraction-free Gauss–Jordan elimination on integer rows. Zero rows are
/// dropped; surviving rows are primitive and ordered by pivot column.
fn integer_gauss_jordan(m: &mut Vec<Vec<BigInt>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // smallest nonzero entry keeps intermediate growth down
        let Some(pr) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()))
        else {
            continue;
        };
        m.swap(r, pr);
        if m[r][c].is_negative() {
            for v in m[r].iter_mut() {
                *v = -&*v;
            }
        }
        let pivot_row = m[r].clone();
        let p = &pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let g = f.gcd(p);
            let (s, t) = (p / &g, &f / &g);
            for (x, pj) in row.iter_mut().zip(&pivot_row) {
                *x = &s * &*x - &t * pj;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    m.retain(|row| row.iter().any(|v| !v.is_zero()));
    pivots
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && g != BigInt::from(1) {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis (in RREF) of `{v : M v = 0}` for the matrix given by `rows`.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::from_integer(1.into());
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect();
    rref(&basis, ncols).0
}

/// Rank of an integer matrix.
pub fn integer_rank(rows: &[Vec<i128>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    match bareiss_rank_i128(rows.to_vec(), ncols) {
        Some(r) => r,
        None => {
            let big: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            bareiss_rank_big(big, ncols)
        }
    }
}

/// Bareiss elimination; `None` on `i128` overflow.
fn bareiss_rank_i128(mut m: Vec<Vec<i128>>, ncols: usize) -> Option<usize> {
    let nrows = m.len();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let p = m[r][c];
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom {
            let f = row[c];
            for (x, &pj) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                *x = p.checked_mul(*x)?.checked_sub(f.checked_mul(pj)?)? / prev;
            }
            row[c] = 0;
        }
        prev = p;
        r += 1;
    }
    Some(r)
}

fn bareiss_rank_big(mut m: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let nrows = m.len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let p = m[r][c].clone();
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom {
            let f = row[c].clone();
            for (x, pj) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                let num = &p * &*x - &f * pj;
                debug_assert!((&num % &prev).is_zero());
                *x = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = p;
        r += 1;
    }
    r
}

/// A linear subspace of ℚⁿ stored by its RREF basis.
///
/// Two subspaces are equal iff their RREF bases are equal, so the derived
/// `PartialEq` is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    #[serde(with = "crate::rational::serde_text::matrix")]
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Self { ambient, basis }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Self {
            ambient,
            basis: rref(vectors, ambient).0,
        }
    }

    /// The solution space of the homogeneous system whose rows are `equations`.
    pub fn from_equations(ambient: usize, equations: &[Vec<Rational>]) -> Self {
        Self {
            ambient,
            basis: kernel(equations, ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduces `v` against the RREF basis; the remainder is zero iff `v` lies in the span.
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut w = v.to_vec();
        for row in &self.basis {
            let pc = row.iter().position(|x| !x.is_zero()).expect("nonzero RREF row");
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj -= &f * rj;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Linear equations cutting out the subspace (RREF basis of the annihilator).
    pub fn equations(&self) -> Vec<Vec<Rational>> {
        kernel(&self.basis, self.ambient)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut eqs = self.equations();
        eqs.extend(other.equations());
        Subspace::from_equations(self.ambient, &eqs)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &rows)
    }

    /// `Σ coeffs[i] · basis[i]`.
    pub fn combination(&self, coeffs: &[Rational]) -> Vec<Rational> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        let mut v = vec![Rational::zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (vj, rj) in v.iter_mut().zip(row) {
                *vj += c * rj;
            }
        }
        v
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(1.into());
    v
}
