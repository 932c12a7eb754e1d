//! First resonance variety: a pointwise oracle and the closed-form list of
//! components for nodal, C1 and C2 arrangements.
//!
//! In a chart whose line at infinity `H∞` belongs to a cover `{H0, H∞}` of
//! the points of multiplicity ≥ 3, the components of `R₁` are
//!
//! * one per parallel family of ≥ 2 affine lines (a high point on `H∞`):
//!   all forms supported on the family;
//! * one per affine point `x` of multiplicity ≥ 3 (necessarily on `H0`):
//!   forms supported on the lines through `x` with zero residue sum;
//! * one per parallelogram with sides in the arrangement and `H0` as a
//!   diagonal: forms supported on `H0, H_k, H_l, H_p, H_q` with
//!   `a_{H0} + a_k + a_p = 0`, `a_k = a_q`, `a_l = a_p`.
//!
//! The family of `H0` itself shows up as soon as some line is parallel to
//! `H0`, since its point at infinity is then a high point.

mod verify;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::classify::classify_with_lattice;
use crate::arrangement::ClassTag;
use crate::error::{Error, Result};
use crate::linalg::{unit, Subspace};
use crate::osalg::{aomoto_h1_dim, Chart, Meet, OneForm};
use crate::rational::{int, Rational};

pub use verify::{verify_oracle, ComponentCheck, VerificationReport, SAMPLE_BOUND};

/// A parallelogram in the affine chart with `H0` as a diagonal. Line
/// indices are projective; `x` and `y` are the lattice flats `k∩p` and
/// `l∩q` on `H0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Parallelogram {
    pub h0: usize,
    pub k: usize,
    pub l: usize,
    pub p: usize,
    pub q: usize,
    pub x: usize,
    pub y: usize,
}

impl Parallelogram {
    pub fn sides(&self) -> [usize; 4] {
        [self.k, self.l, self.p, self.q]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ComponentKind {
    /// Lines (projective indices) through the point `flat` on `H∞`.
    ParallelFamily { flat: usize, lines: Vec<usize> },
    /// Lines through the affine point `flat`.
    Pencil { flat: usize, lines: Vec<usize> },
    Parallelogram(Parallelogram),
}

impl ComponentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentKind::ParallelFamily { .. } => "ParallelFamily",
            ComponentKind::Pencil { .. } => "Pencil",
            ComponentKind::Parallelogram(_) => "Parallelogram",
        }
    }

    /// Projective indices of the lines a generic member is supported on,
    /// not counting `H∞`.
    pub fn support(&self) -> Vec<usize> {
        match self {
            ComponentKind::ParallelFamily { lines, .. } | ComponentKind::Pencil { lines, .. } => {
                lines.clone()
            }
            ComponentKind::Parallelogram(pg) => {
                let mut s = vec![pg.h0, pg.k, pg.l, pg.p, pg.q];
                s.sort_unstable();
                s
            }
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::ParallelFamily { lines, .. } => write!(f, "ParallelFamily{lines:?}"),
            ComponentKind::Pencil { lines, .. } => write!(f, "Pencil{lines:?}"),
            ComponentKind::Parallelogram(pg) => write!(
                f,
                "Parallelogram[h0={}; k={}, l={}, p={}, q={}]",
                pg.h0, pg.k, pg.l, pg.p, pg.q
            ),
        }
    }
}

/// An irreducible component of `R₁`: a linear subspace of `A¹` in chart
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(flatten)]
    pub kind: ComponentKind,
    pub dimension: usize,
    #[serde(flatten)]
    pub space: Subspace,
}

impl Component {
    fn new(kind: ComponentKind, space: Subspace) -> Self {
        Self {
            dimension: space.dim(),
            kind,
            space,
        }
    }
}

/// `dim H¹(A, α∧) ≥ k`.
pub fn is_resonant(chart: &Chart, alpha: &OneForm, k: usize) -> Result<bool> {
    Ok(aomoto_h1_dim(chart, alpha)? >= k)
}

/// Picks the affine diagonal `H0` for a chart, or `H∞` itself when every
/// high point already lies at infinity.
///
/// Fails with [`Error::UnsupportedClass`] for class Other and with
/// [`Error::ChartMismatch`] when no line pairs with `H∞` to cover the high
/// points (or the requested one does not).
pub fn select_diagonal(chart: &Chart, requested: Option<usize>) -> Result<usize> {
    let arr = chart.arrangement();
    let lattice = chart.lattice();
    let info = classify_with_lattice(arr, lattice);
    if info.tag == ClassTag::Other {
        return Err(Error::UnsupportedClass);
    }
    let hinf = chart.infinity();
    let off: Vec<usize> = info
        .high_points
        .iter()
        .copied()
        .filter(|&f| !lattice.flats()[f].contains_line(hinf))
        .collect();
    let covers = |h0: usize| off.iter().all(|&f| lattice.flats()[f].contains_line(h0));
    let mismatch = Error::ChartMismatch { infinity: hinf };
    match requested {
        Some(h0) => {
            arr.line(h0)?;
            if covers(h0) {
                Ok(h0)
            } else {
                Err(mismatch)
            }
        }
        None if off.is_empty() => Ok(hinf),
        None => (0..arr.len())
            .find(|&h0| h0 != hinf && covers(h0))
            .ok_or(mismatch),
    }
}

/// All parallelograms with sides in the arrangement and diagonal `h0`
/// (a projective index of an affine line), one per symmetry class.
pub fn parallelograms(chart: &Chart, h0: usize) -> Result<Vec<Parallelogram>> {
    chart.arrangement().line(h0)?;
    let a0 = chart.affine_index(h0).ok_or(Error::ChartMismatch {
        infinity: chart.infinity(),
    })?;
    let vertices: Vec<&[usize]> = chart
        .affine_flats()
        .iter()
        .filter(|f| f.multiplicity() >= 3 && f.lines.contains(&a0))
        .map(|f| f.lines.as_slice())
        .collect();
    let others = |lines: &'_ [usize], skip: usize| -> Vec<usize> {
        lines.iter().copied().filter(|&l| l != a0 && l != skip).collect()
    };
    let mut found: BTreeSet<[usize; 4]> = BTreeSet::new();
    for (xi, x) in vertices.iter().enumerate() {
        for (yi, y) in vertices.iter().enumerate() {
            if xi == yi {
                continue;
            }
            for k in others(x, a0) {
                for p in others(x, k) {
                    for l in others(y, a0) {
                        if !chart.are_parallel(k, l) {
                            continue;
                        }
                        for q in others(y, l) {
                            if chart.are_parallel(p, q) {
                                found.insert(canonical_labeling([k, l, p, q]));
                            }
                        }
                    }
                }
            }
        }
    }
    let flat_of = |i: usize, j: usize| match chart.meet(i, j) {
        Meet::Affine(f) => chart.affine_flats()[f].flat,
        Meet::Parallel(_) => unreachable!("parallelogram vertices are affine"),
    };
    Ok(found
        .into_iter()
        .map(|[k, l, p, q]| Parallelogram {
            h0,
            k: chart.projective_index(k),
            l: chart.projective_index(l),
            p: chart.projective_index(p),
            q: chart.projective_index(q),
            x: flat_of(k, p),
            y: flat_of(l, q),
        })
        .collect())
}

/// Smallest of the four labelings `(k,l,p,q) ∼ (l,k,q,p) ∼ (p,q,k,l) ∼ (q,p,l,k)`.
fn canonical_labeling([k, l, p, q]: [usize; 4]) -> [usize; 4] {
    [[k, l, p, q], [l, k, q, p], [p, q, k, l], [q, p, l, k]]
        .into_iter()
        .min()
        .expect("four labelings")
}

fn support_equations(n: usize, support: &[usize]) -> Vec<Vec<Rational>> {
    (0..n)
        .filter(|j| !support.contains(j))
        .map(|j| unit(n, j))
        .collect()
}

fn parallelogram_space(chart: &Chart, pg: &Parallelogram) -> Subspace {
    let n = chart.dim();
    let idx = |p: usize| chart.affine_index(p).expect("affine line");
    let [a0, k, l, p, q] = [pg.h0, pg.k, pg.l, pg.p, pg.q].map(idx);
    let mut eqs = support_equations(n, &[a0, k, l, p, q]);
    let mut row = |terms: &[(usize, i64)]| {
        let mut v = vec![Rational::zero(); n];
        for &(j, c) in terms {
            v[j] += int(c);
        }
        eqs.push(v);
    };
    row(&[(a0, 1), (k, 1), (p, 1)]);
    row(&[(k, 1), (q, -1)]);
    row(&[(l, 1), (p, -1)]);
    Subspace::from_equations(n, &eqs)
}

/// The components of `R₁` for the chart, using the default diagonal.
pub fn enumerate_components(chart: &Chart) -> Result<Vec<Component>> {
    enumerate_components_with_diagonal(chart, None)
}

/// Families first, then pencils, then parallelograms; each group in lattice
/// order.
pub fn enumerate_components_with_diagonal(
    chart: &Chart,
    h0: Option<usize>,
) -> Result<Vec<Component>> {
    let h0 = select_diagonal(chart, h0)?;
    let n = chart.dim();
    let to_proj = |lines: &[usize]| -> Vec<usize> {
        lines.iter().map(|&a| chart.projective_index(a)).collect()
    };
    let mut out = Vec::new();

    for f in chart.infinity_flats().iter().filter(|f| f.multiplicity() >= 2) {
        let basis: Vec<Vec<Rational>> = f.lines.iter().map(|&j| unit(n, j)).collect();
        out.push(Component::new(
            ComponentKind::ParallelFamily {
                flat: f.flat,
                lines: to_proj(&f.lines),
            },
            Subspace::span(n, &basis),
        ));
    }

    for f in chart.affine_flats().iter().filter(|f| f.multiplicity() >= 3) {
        let mut eqs = support_equations(n, &f.lines);
        let mut sum = vec![Rational::zero(); n];
        for &j in &f.lines {
            sum[j] = int(1);
        }
        eqs.push(sum);
        out.push(Component::new(
            ComponentKind::Pencil {
                flat: f.flat,
                lines: to_proj(&f.lines),
            },
            Subspace::from_equations(n, &eqs),
        ));
    }

    if h0 != chart.infinity() {
        for pg in parallelograms(chart, h0)? {
            out.push(Component::new(
                ComponentKind::Parallelogram(pg),
                parallelogram_space(chart, &pg),
            ));
        }
    }
    Ok(out)
}

/// The part of `R_k` visible as components, plus whether `0 ∈ R_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResonanceK {
    pub k: usize,
    /// Components of `R₁` of dimension `> k`.
    pub components: Vec<Component>,
    /// `0 ∈ R_k`, i.e. `k ≤ n`.
    pub contains_origin: bool,
}

impl ResonanceK {
    /// `R_k = {0}`.
    pub fn origin_only(&self) -> bool {
        self.contains_origin && self.components.is_empty()
    }
}

pub fn resonance_k(chart: &Chart, k: usize) -> Result<ResonanceK> {
    resonance_k_with_diagonal(chart, None, k)
}

pub fn resonance_k_with_diagonal(chart: &Chart, h0: Option<usize>, k: usize) -> Result<ResonanceK> {
    let components = enumerate_components_with_diagonal(chart, h0)?
        .into_iter()
        .filter(|c| c.dimension > k)
        .collect();
    Ok(ResonanceK {
        k,
        components,
        contains_origin: k <= chart.dim(),
    })
}

/// `dim H¹(A, α∧)` as predicted by the component list: `n` at the origin,
/// `dim E − 1` on a component `E`, zero elsewhere.
pub fn predicted_h1_dim(chart: &Chart, components: &[Component], alpha: &OneForm) -> usize {
    if alpha.is_zero() {
        return chart.dim();
    }
    components
        .iter()
        .find(|c| c.space.contains(&alpha.residues))
        .map_or(0, |c| c.dimension - 1)
}
