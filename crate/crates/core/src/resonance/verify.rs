//! Randomized cross-check of the component list against the oracle.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_components_with_diagonal, Component};
use crate::error::{Error, Result};
use crate::osalg::{aomoto_h1_dim, wedge, Chart, OneForm};
use crate::rational::{int, Rational};

/// Coefficients are drawn from `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 10;

/// Give up on finding outside points after this many draws per sample.
const OUTSIDE_ATTEMPTS_PER_SAMPLE: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCheck {
    pub component: String,
    pub dimension: usize,
    pub samples_tested: usize,
    /// Every sample has `dim H¹ ≥ 1`.
    pub all_resonant: bool,
    /// Every sample has `dim H¹ = dimension − 1`.
    pub h1_matches_dimension: bool,
    /// `wedge(v_i, v_j) = 0` on the basis.
    pub isotropic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub samples: usize,
    pub bound: i64,
    pub components: Vec<ComponentCheck>,
    pub outside_tested: usize,
    /// Draws discarded for landing in a component.
    pub outside_rejected: usize,
    pub all_nonresonant: bool,
    pub pairwise_intersection_zero: bool,
    pub no_containment: bool,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.all_resonant && c.h1_matches_dimension && c.isotropic)
            && self.all_nonresonant
            && self.pairwise_intersection_zero
            && self.no_containment
    }
}

fn draw(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    loop {
        let v: Vec<i64> = (0..len)
            .map(|_| rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND))
            .collect();
        if v.iter().any(|&c| c != 0) {
            return v.into_iter().map(int).collect();
        }
    }
}

/// Samples every component and the complement of their union, evaluates
/// the oracle on each point in parallel and aggregates by sample order.
///
/// Outside sampling stops early when the union swallows almost every
/// draw; `outside_tested` then falls short of `samples`.
pub fn verify_oracle(
    chart: &Chart,
    h0: Option<usize>,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let components = enumerate_components_with_diagonal(chart, h0)?;
    let n = chart.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // (component index or None for outside, point)
    let mut points: Vec<(Option<usize>, Vec<Rational>)> = Vec::new();
    for (ci, c) in components.iter().enumerate() {
        for _ in 0..samples {
            let coeffs = draw(&mut rng, c.dimension);
            points.push((Some(ci), c.space.combination(&coeffs)));
        }
    }
    let mut outside_rejected = 0;
    let mut outside_tested = 0;
    for _ in 0..samples * OUTSIDE_ATTEMPTS_PER_SAMPLE {
        if outside_tested == samples || n == 0 {
            break;
        }
        let v = draw(&mut rng, n);
        if components.iter().any(|c| c.space.contains(&v)) {
            outside_rejected += 1;
        } else {
            outside_tested += 1;
            points.push((None, v));
        }
    }

    let h1: Vec<usize> = points
        .par_iter()
        .map(|(_, v)| aomoto_h1_dim(chart, &OneForm::new(v.clone())))
        .collect::<Result<_>>()?;

    let mut checks: Vec<ComponentCheck> = components
        .iter()
        .map(|c| {
            Ok(ComponentCheck {
                component: c.kind.to_string(),
                dimension: c.dimension,
                samples_tested: 0,
                all_resonant: true,
                h1_matches_dimension: true,
                isotropic: is_isotropic(chart, c)?,
            })
        })
        .collect::<Result<_>>()?;
    let mut all_nonresonant = true;
    for ((which, _), &h) in points.iter().zip(&h1) {
        match which {
            Some(ci) => {
                let check = &mut checks[*ci];
                check.samples_tested += 1;
                check.all_resonant &= h >= 1;
                check.h1_matches_dimension &= h + 1 == check.dimension;
            }
            None => all_nonresonant &= h == 0,
        }
    }

    let mut pairwise_intersection_zero = true;
    let mut no_containment = true;
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            pairwise_intersection_zero &= a.space.intersection(&b.space).is_zero();
            no_containment &= !a.space.is_subspace_of(&b.space) && !b.space.is_subspace_of(&a.space);
        }
    }

    Ok(VerificationReport {
        seed,
        samples,
        bound: SAMPLE_BOUND,
        components: checks,
        outside_tested,
        outside_rejected,
        all_nonresonant,
        pairwise_intersection_zero,
        no_containment,
    })
}

fn is_isotropic(chart: &Chart, c: &Component) -> Result<bool> {
    let basis = c.space.basis();
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            let w = wedge(chart, &OneForm::new(u.clone()), &OneForm::new(v.clone()))?;
            if !w.per_flat.iter().flatten().all(Zero::is_zero) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
