//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use jumploci::charvar::{
    admissible_witnesses, is_admissible_witness, random_local_system, sample_component_character,
};
use jumploci::osalg::OneForm;
use jumploci::rational::{int, Rational};
use jumploci::resonance::enumerate_components_with_diagonal;
use jumploci::{
    aomoto_h1_dim, char_components, classify, enumerate_components, gallery, intersection_lattice,
    make_chart, orth_complement, parse_arrangement, tutte_polynomial, verify_oracle, wedge,
    ClassTag, ComponentKind, Component,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{basis_count, c1_corpus, c2_corpus, corpus};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_form(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-10..=10))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn dims(cs: &[Component]) -> Vec<usize> {
    let mut d: Vec<usize> = cs.iter().map(|c| c.dimension).collect();
    d.sort_unstable();
    d
}

fn ex3_reproduction() -> Outcome {
    let chart = make_chart(&gallery::ex3(), 6).map_err(|e| e.to_string())?;
    let cs = enumerate_components(&chart).map_err(|e| e.to_string())?;
    ensure(cs.len() == 5, || format!("{} components", cs.len()))?;
    ensure(dims(&cs) == [2, 2, 2, 2, 3], || format!("dimensions {:?}", dims(&cs)))?;
    let pgs = cs.iter().filter(|c| c.kind.name() == "Parallelogram").count();
    ensure(pgs == 1, || format!("{pgs} parallelograms"))?;
    for (i, a) in cs.iter().enumerate() {
        for (j, b) in cs.iter().enumerate().skip(i + 1) {
            ensure(a.space.intersection(&b.space).is_zero(), || {
                format!("components {i} and {j} meet")
            })?;
        }
    }
    Ok(())
}

fn central_pencil_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for n in 3..=6 {
        let chart = make_chart(&gallery::central(n), n).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            // a uniform draw with the last residue replaced to balance the sum
            let v = loop {
                let mut v = random_form(&mut rng, n);
                let s: Rational = v[..n - 1].iter().sum();
                v[n - 1] = -s;
                if v.iter().any(|x| !x.is_zero()) {
                    break v;
                }
            };
            let h1 = aomoto_h1_dim(&chart, &OneForm::new(v)).map_err(|e| e.to_string())?;
            ensure(h1 == n - 2, || format!("n = {n}: sum-zero form has h1 = {h1}"))?;
        }
        for _ in 0..20 {
            let v = loop {
                let v = random_form(&mut rng, n);
                if !v.iter().sum::<Rational>().is_zero() {
                    break v;
                }
            };
            let h1 = aomoto_h1_dim(&chart, &OneForm::new(v)).map_err(|e| e.to_string())?;
            ensure(h1 == 0, || format!("n = {n}: form with nonzero sum has h1 = {h1}"))?;
        }
    }
    Ok(())
}

fn nodal_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for n in 4..=7 {
        let arr = gallery::nodal(n);
        ensure(classify(&arr).tag == ClassTag::Nodal, || format!("nodal({n}) is not nodal"))?;
        let chart = make_chart(&arr, n - 1).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let v = random_form(&mut rng, n - 1);
            let h1 = aomoto_h1_dim(&chart, &OneForm::new(v)).map_err(|e| e.to_string())?;
            ensure(h1 == 0, || format!("nodal({n}): h1 = {h1}"))?;
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let c1 = c1_corpus();
    let c2 = c2_corpus();
    ensure(c1.len() >= 10 && c2.len() >= 10, || "corpus too small".into())?;
    for f in c1.iter().chain(&c2) {
        let chart = make_chart(&f.arrangement, f.infinity).map_err(|e| e.to_string())?;
        let report = verify_oracle(&chart, None, 100, 0).map_err(|e| format!("{}: {e}", f.name))?;
        ensure(report.all_passed(), || format!("{}: {report:?}", f.name))?;
        ensure(report.components.iter().all(|c| c.samples_tested == 100), || {
            format!("{}: short component sampling", f.name)
        })?;
        for c in enumerate_components(&chart).map_err(|e| e.to_string())? {
            let basis = c.space.basis();
            for u in basis {
                for v in basis {
                    let w = wedge(&chart, &OneForm::new(u.clone()), &OneForm::new(v.clone()))
                        .map_err(|e| e.to_string())?;
                    ensure(w.is_zero(), || format!("{}: {} not isotropic", f.name, c.kind))?;
                }
            }
        }
    }
    Ok(())
}

fn parallelogram_system() -> Outcome {
    let chart = make_chart(&gallery::parallelogram_min(), 5).map_err(|e| e.to_string())?;
    let cs = enumerate_components(&chart).map_err(|e| e.to_string())?;
    let pg = cs
        .iter()
        .find(|c| c.kind.name() == "Parallelogram")
        .ok_or("no parallelogram component")?;
    let ComponentKind::Parallelogram(p) = pg.kind else { unreachable!() };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..20 {
        let coeffs: Vec<Rational> = loop {
            let c: Vec<Rational> = (0..2).map(|_| int(rng.gen_range(-10..=10))).collect();
            // generic: both basis directions present, so a_k ≠ a_l
            if c.iter().all(|x| !x.is_zero()) {
                break c;
            }
        };
        let generic = pg.space.combination(&coeffs);
        let oc = orth_complement(&chart, &OneForm::new(generic.clone())).map_err(|e| e.to_string())?;
        ensure(oc.dim() == 2, || format!("generic member: complement dimension {}", oc.dim()))?;
        let mut perturbed = generic;
        perturbed[chart.affine_index(p.k).unwrap()] += int(rng.gen_range(1..=5));
        let oc = orth_complement(&chart, &OneForm::new(perturbed)).map_err(|e| e.to_string())?;
        ensure(oc.dim() == 1, || format!("a_k != a_q: complement dimension {}", oc.dim()))?;
    }
    Ok(())
}

fn characteristic_correspondence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for f in corpus() {
        let chart = make_chart(&f.arrangement, f.infinity).map_err(|e| e.to_string())?;
        let comps = enumerate_components(&chart).map_err(|e| e.to_string())?;
        let tori = char_components(&chart, None).map_err(|e| e.to_string())?;
        ensure(comps.len() == tori.len(), || format!("{}: counts differ", f.name))?;
        for (c, t) in comps.iter().zip(&tori) {
            ensure(c.dimension == t.dimension, || format!("{}: dimension", f.name))?;
            for _ in 0..50 {
                let (_, lambda) = sample_component_character(&chart, c, &mut rng);
                ensure(t.contains(&lambda), || format!("{}: {} misses exp image", f.name, c.kind))?;
            }
        }
    }
    // C1: one full subtorus per family of lines through a high point,
    // trivial elsewhere.
    for f in c1_corpus() {
        let arr = &f.arrangement;
        let info = classify(arr);
        let ClassTag::C1 { .. } = info.tag else {
            return Err(format!("{} is not C1", f.name));
        };
        let h0 = f.infinity;
        let chart = make_chart(arr, h0).map_err(|e| e.to_string())?;
        let tori = char_components(&chart, None).map_err(|e| e.to_string())?;
        let lattice = intersection_lattice(arr);
        let mut expected: Vec<Vec<usize>> = info
            .high_points
            .iter()
            .map(|&p| lattice.flats()[p].lines.iter().copied().filter(|&l| l != h0).collect())
            .collect();
        expected.sort();
        let mut got: Vec<Vec<usize>> = tori.iter().map(|t| t.affine_support()).collect();
        got.sort();
        ensure(got == expected, || format!("{}: supports {got:?} vs {expected:?}", f.name))?;
        ensure(
            tori.iter().all(|t| {
                t.kind.name() == "ParallelFamily"
                    && t.relations.is_empty()
                    && t.dimension == t.affine_support().len()
            }),
            || format!("{}: not a product of full tori", f.name),
        )?;
    }
    Ok(())
}

fn constant_dimension() -> Outcome {
    let arr = gallery::ex3();
    let chart = make_chart(&arr, 6).map_err(|e| e.to_string())?;
    let comps = enumerate_components(&chart).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pencils_seen = 0;
    for c in &comps {
        let expected = match &c.kind {
            ComponentKind::Parallelogram(_) => 1,
            ComponentKind::Pencil { lines, .. } => {
                pencils_seen += 1;
                lines.len() - 2
            }
            ComponentKind::ParallelFamily { .. } => continue,
        };
        for _ in 0..20 {
            let (_, lambda) = sample_component_character(&chart, c, &mut rng);
            let witnesses = admissible_witnesses(&arr, &lambda, 4).map_err(|e| e.to_string())?;
            for w in &witnesses {
                let alpha = w.witness.to_chart(&chart).map_err(|e| e.to_string())?;
                let h1 = aomoto_h1_dim(&chart, &alpha).map_err(|e| e.to_string())?;
                ensure(h1 == expected, || {
                    format!("{}: h1 = {h1} at a witness, expected {expected}", c.kind)
                })?;
            }
        }
    }
    ensure(pencils_seen == 2, || "expected two pencils".into())
}

fn admissibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for f in corpus() {
        let lattice = intersection_lattice(&f.arrangement);
        for _ in 0..100 {
            let lambda = random_local_system(f.arrangement.len(), 6, &mut rng);
            let report = jumploci::admissible_witness(&f.arrangement, &lambda)
                .map_err(|e| format!("{}: {e}", f.name))?;
            ensure(is_admissible_witness(&lattice, &lambda, &report.witness), || {
                format!("{}: inadmissible witness", f.name)
            })?;
        }
    }
    Ok(())
}

fn tutte_oracle() -> Outcome {
    for f in corpus() {
        let t = tutte_polynomial(&f.arrangement);
        let bases = basis_count(&f.arrangement);
        ensure(t.eval(1, 1) == bases, || format!("{}: T(1,1) = {} vs {bases}", f.name, t.eval(1, 1)))?;
        let n = f.arrangement.len() as u32;
        ensure(t.eval(2, 2) == 1i128 << n, || format!("{}: T(2,2) = {}", f.name, t.eval(2, 2)))?;
    }
    let pencil = parse_arrangement("1 0 0\n0 1 0\n1 1 0").map_err(|e| e.to_string())?;
    let t = tutte_polynomial(&pencil).to_string();
    ensure(t == "x^2 + x + y", || format!("pencil: {t}"))
}

fn chart_symmetry() -> Outcome {
    for (name, arr) in [("ex3", gallery::ex3()), ("braid", gallery::braid())] {
        let info = classify(&arr);
        let ClassTag::C2 { .. } = info.tag else {
            return Err(format!("{name} is not C2"));
        };
        for cover in &info.covers {
            let (a, b) = (cover[0], cover[1]);
            let mut shapes: Vec<(Vec<usize>, usize)> = Vec::new();
            for (inf, diag) in [(b, a), (a, b)] {
                let chart = make_chart(&arr, inf).map_err(|e| e.to_string())?;
                let cs = enumerate_components_with_diagonal(&chart, Some(diag))
                    .map_err(|e| e.to_string())?;
                let pgs = cs.iter().filter(|c| c.kind.name() == "Parallelogram").count();
                shapes.push((dims(&cs), pgs));
            }
            ensure(shapes[0] == shapes[1], || {
                format!("{name}, cover {cover:?}: {:?} vs {:?}", shapes[0], shapes[1])
            })?;
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "seven-line example components", limit: Duration::from_secs(1), run: ex3_reproduction },
        Criterion { id: 2, name: "central pencil law", limit: Duration::from_secs(1), run: central_pencil_law },
        Criterion { id: 3, name: "nodal law", limit: Duration::from_secs(1), run: nodal_law },
        Criterion { id: 4, name: "oracle equivalence on corpus", limit: Duration::from_secs(10), run: oracle_equivalence },
        Criterion { id: 5, name: "parallelogram linear system", limit: Duration::from_secs(1), run: parallelogram_system },
        Criterion { id: 6, name: "characteristic correspondence", limit: Duration::from_secs(5), run: characteristic_correspondence },
        Criterion { id: 7, name: "constant dimension on subtori", limit: Duration::from_secs(5), run: constant_dimension },
        Criterion { id: 8, name: "admissible witnesses", limit: Duration::from_secs(5), run: admissibility },
        Criterion { id: 9, name: "tutte oracle", limit: Duration::from_secs(1), run: tutte_oracle },
        Criterion { id: 10, name: "two-chart symmetry", limit: Duration::from_secs(1), run: chart_symmetry },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = BTreeMap::new();
    for c in &criteria {
        let label = format!("criterion {:>2}: {}", c.id, c.name);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= c.limit, || {
                format!("took {:.2?}, limit {:.2?}", elapsed, c.limit)
            })
        });
        match &outcome {
            Ok(()) => println!("PASS  {label}  ({elapsed:.2?})"),
            Err(msg) => {
                println!("FAIL  {label}  ({elapsed:.2?}): {msg}");
                failures.insert(c.id, msg.clone());
            }
        }
    }
    if !failures.is_empty() {
        std::process::exit(1);
    }
}
