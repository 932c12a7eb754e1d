//! Rank-one local systems with torsion monodromy.
//!
//! A character `λ ∈ (ℂ*)^{n+1}` with `Π λ_j = 1` is stored through the
//! classes `t_j ∈ ℚ/ℤ` with `λ_j = exp(2πi t_j)`. Its cohomology is read off
//! the Aomoto complex at an admissible lift: residues `a_j ≡ t_j` summing
//! to zero with no `a_j` and no sum over the lines through a point of
//! multiplicity ≥ 3 a positive integer.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{intersection_lattice, Arrangement, Lattice};
use crate::error::{Error, Result};
use crate::osalg::{aomoto_h1_dim, Chart, OneForm};
use crate::rational::{format_rational, frac, int, is_integer, parse_rational, ratio, Rational};
use crate::resonance::{enumerate_components_with_diagonal, Component, ComponentKind};

/// Classes `t_j ∈ [0, 1)` over all projective lines, `Σ t_j ∈ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct LocalSystem {
    classes: Vec<Rational>,
}

impl LocalSystem {
    pub fn new(classes: Vec<Rational>) -> Result<Self> {
        if let Some((j, t)) = classes
            .iter()
            .enumerate()
            .find(|(_, t)| t.is_negative() || **t >= Rational::one())
        {
            return Err(Error::InvalidLocalSystem(format!(
                "class {} of line {j} is outside [0, 1)",
                format_rational(t)
            )));
        }
        let total: Rational = classes.iter().sum();
        if !is_integer(&total) {
            return Err(Error::InvalidLocalSystem(format!(
                "classes sum to {}, not an integer",
                format_rational(&total)
            )));
        }
        Ok(Self { classes })
    }

    pub fn trivial(len: usize) -> Self {
        Self {
            classes: vec![Rational::zero(); len],
        }
    }

    /// Whitespace-separated rationals in projective line order; `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut classes = Vec::new();
        for (i, token) in text
            .lines()
            .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
            .enumerate()
        {
            classes.push(parse_rational(token).ok_or_else(|| Error::MalformedNumber {
                row: i,
                token: token.to_string(),
            })?);
        }
        Self::new(classes)
    }

    pub fn classes(&self) -> &[Rational] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(Zero::is_zero)
    }

    fn check(&self, lines: usize) -> Result<()> {
        if self.len() != lines {
            return Err(Error::DimensionMismatch {
                expected: lines,
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<String>> for LocalSystem {
    type Error = Error;

    fn try_from(tokens: Vec<String>) -> Result<Self> {
        Self::parse(&tokens.join(" "))
    }
}

impl From<LocalSystem> for Vec<String> {
    fn from(l: LocalSystem) -> Self {
        l.classes.iter().map(format_rational).collect()
    }
}

/// Residues over all projective lines, summing to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectiveResidues {
    #[serde(with = "crate::rational::serde_text::vec")]
    a: Vec<Rational>,
}

impl ProjectiveResidues {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        if !a.iter().sum::<Rational>().is_zero() {
            return Err(Error::SumNonzero);
        }
        Ok(Self { a })
    }

    /// The projective residues of a chart form.
    pub fn from_chart(chart: &Chart, alpha: &OneForm) -> Self {
        Self {
            a: chart.to_projective(alpha),
        }
    }

    /// Chart coordinates: the `H∞` entry dropped.
    pub fn to_chart(&self, chart: &Chart) -> Result<OneForm> {
        chart.from_projective(&self.a)
    }

    pub fn values(&self) -> &[Rational] {
        &self.a
    }

    /// `a(p)`: the sum over the given lines.
    pub fn sum_over(&self, lines: &[usize]) -> Rational {
        lines.iter().map(|&j| &self.a[j]).sum()
    }
}

/// `t_j = a_j mod 1`.
pub fn exp_residues(a: &ProjectiveResidues) -> LocalSystem {
    LocalSystem {
        classes: a.a.iter().map(frac).collect(),
    }
}

fn positive_integer(r: &Rational) -> bool {
    is_integer(r) && r.is_positive()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilSum {
    pub flat: usize,
    pub lines: Vec<usize>,
    #[serde(with = "crate::rational::serde_text")]
    pub sum: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub witness: ProjectiveResidues,
    /// `a(p)` at every point of multiplicity ≥ 3.
    pub pencil_sums: Vec<PencilSum>,
}

/// Checks every admissibility condition of `witness` for `λ` from scratch.
pub fn is_admissible_witness(
    lattice: &Lattice,
    lambda: &LocalSystem,
    witness: &ProjectiveResidues,
) -> bool {
    let a = witness.values();
    a.len() == lambda.len()
        && a.iter().sum::<Rational>().is_zero()
        && a.iter().zip(lambda.classes()).all(|(a, t)| frac(a) == *t)
        && !a.iter().any(positive_integer)
        && lattice
            .high_points()
            .into_iter()
            .all(|f| !positive_integer(&witness.sum_over(&lattice.flats()[f].lines)))
}

/// Upper bound on search nodes before giving up.
const SEARCH_BUDGET: usize = 1 << 22;

struct WitnessSearch<'a> {
    classes: &'a [Rational],
    base: Vec<Rational>,
    /// `shiftable[j]`: the class of line `j` is nonzero, so `a_j + 1` is
    /// not a positive integer.
    shiftable: Vec<bool>,
    /// Largest possible `Σ_{k ≥ j} a_k` over the undecided lines.
    suffix_max: Vec<Rational>,
    /// High flats avoiding line 0, by their largest line.
    closes_at: Vec<Vec<&'a [usize]>>,
    /// High flats through line 0, checked once `a_0` is known.
    through_first: Vec<&'a [usize]>,
    limit: usize,
    nodes: usize,
    found: Vec<Vec<Rational>>,
}

impl WitnessSearch<'_> {
    fn run(&mut self, j: usize, a: &mut Vec<Rational>, partial: &Rational) -> Result<()> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(Error::SearchExhausted);
        }
        let n = self.classes.len();
        if j == n {
            a[0] = -partial.clone();
            let ok = !positive_integer(&a[0])
                && self
                    .through_first
                    .iter()
                    .all(|f| !positive_integer(&f.iter().map(|&i| &a[i]).sum()));
            if ok {
                self.found.push(a.clone());
            }
            return Ok(());
        }
        let shifts: &[i64] = if self.shiftable[j] { &[0, 1] } else { &[0] };
        for &s in shifts {
            a[j] = &self.base[j] + int(s);
            let next = partial + &a[j];
            // a_0 = −Σ must avoid ℤ_{>0}; it is an integer exactly when t_0 = 0.
            if self.classes[0].is_zero() && (&next + &self.suffix_max[j + 1]).is_negative() {
                continue;
            }
            let flats_ok = self.closes_at[j]
                .iter()
                .all(|f| !positive_integer(&f.iter().map(|&i| &a[i]).sum()));
            if flats_ok {
                self.run(j + 1, a, &next)?;
                if self.found.len() >= self.limit {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

/// Up to `limit` admissible lifts of `λ`, in lexicographic shift order.
///
/// Lines `j ≥ 1` start from the representative of `t_j` in `(−1, 0]` and
/// may be raised by one when `t_j ≠ 0`; `a_0` balances the sum.
pub fn admissible_witnesses(
    arr: &Arrangement,
    lambda: &LocalSystem,
    limit: usize,
) -> Result<Vec<AdmissibilityReport>> {
    let lattice = intersection_lattice(arr);
    admissible_witnesses_in(&lattice, lambda, limit)
}

fn admissible_witnesses_in(
    lattice: &Lattice,
    lambda: &LocalSystem,
    limit: usize,
) -> Result<Vec<AdmissibilityReport>> {
    let n = lattice.line_count();
    lambda.check(n)?;
    let classes = lambda.classes();
    let base: Vec<Rational> = classes
        .iter()
        .map(|t| if t.is_zero() { Rational::zero() } else { t - int(1) })
        .collect();
    let shiftable: Vec<bool> = classes.iter().map(|t| !t.is_zero()).collect();
    let mut suffix_max = vec![Rational::zero(); n + 1];
    for j in (1..n).rev() {
        let top = if shiftable[j] { &base[j] + int(1) } else { base[j].clone() };
        suffix_max[j] = &suffix_max[j + 1] + top;
    }
    let high = lattice.high_points();
    let mut closes_at: Vec<Vec<&[usize]>> = vec![Vec::new(); n];
    let mut through_first = Vec::new();
    for &f in &high {
        let lines = lattice.flats()[f].lines.as_slice();
        if lines[0] == 0 {
            through_first.push(lines);
        } else {
            closes_at[*lines.last().expect("nonempty flat")].push(lines);
        }
    }
    let mut search = WitnessSearch {
        classes,
        base,
        shiftable,
        suffix_max,
        closes_at,
        through_first,
        limit: limit.max(1),
        nodes: 0,
        found: Vec::new(),
    };
    let mut a = vec![Rational::zero(); n];
    search.run(1, &mut a, &Rational::zero())?;
    if search.found.is_empty() {
        return Err(Error::SearchExhausted);
    }
    Ok(search
        .found
        .into_iter()
        .map(|a| {
            let witness = ProjectiveResidues { a };
            assert!(
                is_admissible_witness(lattice, lambda, &witness),
                "search emitted an inadmissible witness"
            );
            let pencil_sums = high
                .iter()
                .map(|&f| {
                    let lines = lattice.flats()[f].lines.clone();
                    PencilSum {
                        flat: f,
                        sum: witness.sum_over(&lines),
                        lines,
                    }
                })
                .collect();
            AdmissibilityReport {
                witness,
                pencil_sums,
            }
        })
        .collect())
}

/// The first admissible lift of `λ` in search order.
pub fn admissible_witness(arr: &Arrangement, lambda: &LocalSystem) -> Result<AdmissibilityReport> {
    Ok(admissible_witnesses(arr, lambda, 1)?.remove(0))
}

/// `dim H¹(M, L_λ)`, computed as `dim H¹(A, α∧)` at an admissible lift.
pub fn local_system_h1(chart: &Chart, lambda: &LocalSystem) -> Result<usize> {
    let report = admissible_witnesses_in(chart.lattice(), lambda, 1)?.remove(0);
    aomoto_h1_dim(chart, &report.witness.to_chart(chart)?)
}

/// The subtorus `exp(E)` of a resonance component `E`, in projective
/// coordinates: characters trivial off `support` and satisfying
/// `Π_j λ_j^{e_j} = 1` for every relation `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharComponent {
    #[serde(flatten)]
    pub kind: ComponentKind,
    pub infinity: usize,
    pub support: Vec<usize>,
    pub relations: Vec<Vec<i64>>,
    pub dimension: usize,
}

impl CharComponent {
    fn from_component(chart: &Chart, c: &Component) -> Self {
        let n = chart.arrangement().len();
        let hinf = chart.infinity();
        let mut relations = Vec::new();
        let mut support = c.kind.support();
        match &c.kind {
            ComponentKind::ParallelFamily { .. } => support.push(hinf),
            ComponentKind::Pencil { lines, .. } => {
                let mut e = vec![0; n];
                for &j in lines {
                    e[j] = 1;
                }
                relations.push(e);
            }
            ComponentKind::Parallelogram(pg) => {
                support.push(hinf);
                for terms in [
                    [(pg.h0, 1), (pg.k, 1), (pg.p, 1)].as_slice(),
                    &[(pg.k, 1), (pg.q, -1)],
                    &[(pg.l, 1), (pg.p, -1)],
                ] {
                    let mut e = vec![0; n];
                    for &(j, c) in terms {
                        e[j] += c;
                    }
                    relations.push(e);
                }
            }
        }
        support.sort_unstable();
        support.dedup();
        Self {
            kind: c.kind.clone(),
            infinity: hinf,
            support,
            relations,
            dimension: c.dimension,
        }
    }

    /// Lines off `H∞` on which members may be nontrivial.
    pub fn affine_support(&self) -> Vec<usize> {
        self.support
            .iter()
            .copied()
            .filter(|&j| j != self.infinity)
            .collect()
    }

    /// Exact membership test in `ℚ/ℤ`.
    pub fn contains(&self, lambda: &LocalSystem) -> bool {
        let t = lambda.classes();
        if self.relations.iter().any(|e| e.len() != t.len()) {
            return false;
        }
        let off_support_trivial = t
            .iter()
            .enumerate()
            .all(|(j, tj)| tj.is_zero() || self.support.contains(&j));
        off_support_trivial
            && self.relations.iter().all(|e| {
                let s: Rational = e.iter().zip(t).map(|(&c, tj)| int(c) * tj).sum();
                is_integer(&s)
            })
    }
}

/// One subtorus per resonance component, in the same order.
pub fn char_components(chart: &Chart, h0: Option<usize>) -> Result<Vec<CharComponent>> {
    Ok(enumerate_components_with_diagonal(chart, h0)?
        .iter()
        .map(|c| CharComponent::from_component(chart, c))
        .collect())
}

/// Numerators in `[−10, 10]`, denominators in `2..=7`.
fn random_torsion_coefficient<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-10..=10), rng.gen_range(2..=7))
}

/// A random nonzero rational point of `component` and its character,
/// redrawn until the character is nontrivial.
pub fn sample_component_character<R: Rng>(
    chart: &Chart,
    component: &Component,
    rng: &mut R,
) -> (OneForm, LocalSystem) {
    loop {
        let coeffs: Vec<Rational> = (0..component.dimension)
            .map(|_| random_torsion_coefficient(rng))
            .collect();
        let alpha = OneForm::new(component.space.combination(&coeffs));
        let lambda = exp_residues(&ProjectiveResidues::from_chart(chart, &alpha));
        if !lambda.is_trivial() {
            return (alpha, lambda);
        }
    }
}

/// A random torsion character on `lines` lines: classes of denominator at
/// most `max_denominator` on lines `1..`, line 0 balancing the product.
pub fn random_local_system<R: Rng>(lines: usize, max_denominator: i64, rng: &mut R) -> LocalSystem {
    let mut classes = vec![Rational::zero(); lines];
    for t in classes.iter_mut().skip(1) {
        let q = rng.gen_range(1..=max_denominator);
        *t = ratio(rng.gen_range(0..q), q);
    }
    if lines > 0 {
        let rest: Rational = classes.iter().sum();
        classes[0] = frac(&-rest);
    }
    LocalSystem::new(classes).expect("balanced by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::osalg::make_chart;
    use crate::resonance::enumerate_components;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ls(values: &[(i64, i64)]) -> LocalSystem {
        LocalSystem::new(values.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
    }

    #[test]
    fn exp_examples() {
        let zero = ProjectiveResidues::new(vec![Rational::zero(); 4]).unwrap();
        assert!(exp_residues(&zero).is_trivial());
        let ints = ProjectiveResidues::new([3, -5, 2, 0].map(int).to_vec()).unwrap();
        assert!(exp_residues(&ints).is_trivial());
        let a = ProjectiveResidues::new(vec![ratio(-2, 3), ratio(1, 3), ratio(1, 3), int(0)]).unwrap();
        assert_eq!(exp_residues(&a), ls(&[(1, 3), (1, 3), (1, 3), (0, 1)]));
        assert_eq!(ProjectiveResidues::new(vec![int(1)]).unwrap_err(), Error::SumNonzero);
    }

    #[test]
    fn local_system_validation() {
        assert!(LocalSystem::parse("1/3 1/3 1/3 0").is_ok());
        assert!(matches!(LocalSystem::parse("1/3 1/3 0"), Err(Error::InvalidLocalSystem(_))));
        assert!(matches!(LocalSystem::parse("1 0"), Err(Error::InvalidLocalSystem(_))));
        assert!(matches!(LocalSystem::parse("-1/2 1/2"), Err(Error::InvalidLocalSystem(_))));
        assert!(matches!(LocalSystem::parse("1/2 x"), Err(Error::MalformedNumber { row: 1, .. })));
        let l = ls(&[(1, 2), (1, 2), (0, 1)]);
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(text, r#"["1/2","1/2","0/1"]"#);
        assert_eq!(serde_json::from_str::<LocalSystem>(&text).unwrap(), l);
    }

    #[test]
    fn trivial_system_lifts_to_zero() {
        let arr = gallery::ex3();
        let r = admissible_witness(&arr, &LocalSystem::trivial(7)).unwrap();
        assert!(r.witness.values().iter().all(Zero::is_zero));
        assert!(r.pencil_sums.iter().all(|p| p.sum.is_zero()));
        let chart = make_chart(&arr, 6).unwrap();
        assert_eq!(local_system_h1(&chart, &LocalSystem::trivial(7)).unwrap(), 6);
    }

    #[test]
    fn pencil_of_three_witness() {
        let arr = gallery::central(3);
        let lambda = ls(&[(1, 3), (1, 3), (1, 3), (0, 1)]);
        let r = admissible_witness(&arr, &lambda).unwrap();
        let lat = intersection_lattice(&arr);
        assert!(is_admissible_witness(&lat, &lambda, &r.witness));
        // lines 1, 2 start at −2/3; a_0 = 4/3 is fine, the pencil sum is 0
        assert_eq!(r.witness.values(), &[ratio(4, 3), ratio(-2, 3), ratio(-2, 3), int(0)]);
        assert_eq!(r.pencil_sums.len(), 1);
        assert!(r.pencil_sums[0].sum.is_zero());
    }

    #[test]
    fn shift_repairs_integer_first_residue() {
        // t_0 = 0 forces a_0 ≤ 0, so one of lines 1, 2 must be raised.
        let arr = gallery::nodal(4);
        let lambda = ls(&[(0, 1), (1, 3), (2, 3), (0, 1)]);
        let r = admissible_witness(&arr, &lambda).unwrap();
        assert_eq!(r.witness.values(), &[int(0), ratio(-2, 3), ratio(2, 3), int(0)]);
        // (0,+1), (+1,0) and (+1,+1), the last with a_0 = -1
        assert_eq!(admissible_witnesses(&arr, &lambda, 5).unwrap().len(), 3);
    }

    #[test]
    fn central_pencil_law() {
        for n in 3..7 {
            let chart = make_chart(&gallery::central(n), n).unwrap();
            let mut classes = vec![Rational::zero(); n + 1];
            for t in classes.iter_mut().take(n - 1) {
                *t = ratio(1, 5);
            }
            classes[n - 1] = frac(&ratio(-(n as i64 - 1), 5));
            let lambda = LocalSystem::new(classes).unwrap();
            assert_eq!(local_system_h1(&chart, &lambda).unwrap(), n - 2);
        }
    }

    #[test]
    fn seven_line_subtori() {
        let chart = make_chart(&gallery::ex3(), 6).unwrap();
        let cs = char_components(&chart, None).unwrap();
        assert_eq!(cs.iter().map(|c| c.dimension).collect::<Vec<_>>(), [2, 2, 2, 3, 2]);
        let pg = &cs[4];
        assert_eq!(pg.support, [0, 1, 2, 3, 4, 6]);
        assert_eq!(pg.relations.len(), 3);
        assert_eq!(cs[3].support, [0, 3, 4, 5]);
        assert_eq!(cs[0].affine_support().len(), 2);
    }

    #[test]
    fn component_characters_land_in_their_subtorus() {
        let chart = make_chart(&gallery::ex3(), 6).unwrap();
        let comps = enumerate_components(&chart).unwrap();
        let tori = char_components(&chart, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (c, t) in comps.iter().zip(&tori) {
            for _ in 0..20 {
                let (_, lambda) = sample_component_character(&chart, c, &mut rng);
                assert!(t.contains(&lambda), "{}", c.kind);
                let expected = if c.kind.name() == "Pencil" { c.dimension - 1 } else { 1 };
                assert_eq!(local_system_h1(&chart, &lambda).unwrap(), expected);
            }
        }
    }

    #[test]
    fn nodal_has_no_subtori() {
        let chart = make_chart(&gallery::nodal(5), 0).unwrap();
        assert!(char_components(&chart, None).unwrap().is_empty());
    }

    #[test]
    fn random_systems_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let l = random_local_system(6, 6, &mut rng);
            assert_eq!(l.len(), 6);
        }
    }

    #[test]
    fn wrong_length_rejected() {
        let arr = gallery::braid();
        assert!(matches!(
            admissible_witness(&arr, &LocalSystem::trivial(5)),
            Err(Error::DimensionMismatch { expected: 6, found: 5 })
        ));
    }
}
