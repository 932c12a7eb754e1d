//! Seeded corpora of C1 and C2 arrangements shared by the integration tests.
#![allow(dead_code)]

use jumploci::arrangement::Arrangement;
use jumploci::{classify, gallery, ClassTag};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub name: String,
    pub arrangement: Arrangement,
    /// Chart used for verification: the diagonal for C1, the second cover
    /// line for C2.
    pub infinity: usize,
}

fn fixture(name: String, arrangement: Arrangement, infinity: usize) -> Fixture {
    Fixture {
        name,
        arrangement,
        infinity,
    }
}

/// Parallel families in the chart `z = 1`, closed up with `z`, with no
/// affine point of multiplicity ≥ 3. `z` is the last line.
fn random_families(rng: &mut ChaCha8Rng) -> Option<Arrangement> {
    let directions: [[i64; 2]; 5] = [[1, 0], [0, 1], [1, -1], [1, 1], [1, 2]];
    let count = rng.gen_range(2..=3);
    let mut triples = Vec::new();
    for d in directions.choose_multiple(rng, count) {
        let size = rng.gen_range(2..=3);
        let mut offsets: Vec<i64> = (-4..=4).collect();
        offsets.shuffle(rng);
        for &c in &offsets[..size] {
            triples.push([d[0], d[1], c]);
        }
    }
    triples.push([0, 0, 1]);
    let arr = Arrangement::from_triples(&triples).ok()?;
    let z = arr.len() - 1;
    match classify(&arr).tag {
        ClassTag::C1 { .. } if classify(&arr).covers.contains(&vec![z]) => Some(arr),
        _ => None,
    }
}

/// Pencils through points of `y = 0` with shared slopes, optionally a line
/// parallel to `y = 0`, closed up with `z`. `y = 0` is line 0 and `z` is
/// last; the pair covers every high point and no single line does.
fn random_two_line_cover(rng: &mut ChaCha8Rng) -> Option<Arrangement> {
    let slopes: [Option<i64>; 5] = [None, Some(1), Some(-1), Some(2), Some(-2)];
    let mut xs: Vec<i64> = (-3..=3).collect();
    xs.shuffle(rng);
    let centers = rng.gen_range(2..=3);
    let mut triples = vec![[0, 1, 0]];
    for &c in &xs[..centers] {
        let through = rng.gen_range(2..=3);
        for s in slopes.choose_multiple(rng, through) {
            triples.push(match s {
                None => [1, 0, -c],
                Some(s) => [*s, -1, -s * c],
            });
        }
    }
    if rng.gen_bool(0.3) {
        triples.push([0, 1, rng.gen_range(1..=3)]);
    }
    triples.push([0, 0, 1]);
    if triples.len() > 11 {
        return None;
    }
    let arr = Arrangement::from_triples(&triples).ok()?;
    let z = arr.len() - 1;
    let info = classify(&arr);
    match info.tag {
        ClassTag::C2 { .. } if info.covers.contains(&vec![0, z]) => Some(arr),
        _ => None,
    }
}

fn generated(
    count: usize,
    seed: u64,
    generate: fn(&mut ChaCha8Rng) -> Option<Arrangement>,
) -> Vec<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Arrangement> = Vec::new();
    while out.len() < count {
        if let Some(arr) = generate(&mut rng) {
            if !out.contains(&arr) {
                out.push(arr);
            }
        }
    }
    out
}

/// Twelve C1 arrangements; each chart puts a cover line at infinity.
pub fn c1_corpus() -> Vec<Fixture> {
    let mut out: Vec<Fixture> = (3..=6)
        .map(|n| fixture(format!("central({n})"), gallery::central(n), 0))
        .collect();
    for (i, arr) in generated(8, 1, random_families).into_iter().enumerate() {
        let z = arr.len() - 1;
        out.push(fixture(format!("families#{i}"), arr, z));
    }
    out
}

/// Twelve C2 arrangements; each chart puts the second cover line at
/// infinity.
pub fn c2_corpus() -> Vec<Fixture> {
    let mut out = vec![
        fixture("ex3".into(), gallery::ex3(), 6),
        fixture("braid".into(), gallery::braid(), 0),
        fixture("parallelogram_min".into(), gallery::parallelogram_min(), 5),
    ];
    for (i, arr) in generated(9, 2, random_two_line_cover).into_iter().enumerate() {
        let z = arr.len() - 1;
        out.push(fixture(format!("two-line#{i}"), arr, z));
    }
    out
}

pub fn corpus() -> Vec<Fixture> {
    let mut all = c1_corpus();
    all.extend(c2_corpus());
    all
}

/// Number of bases of the rank-3 matroid: independent triples of lines.
pub fn basis_count(arr: &Arrangement) -> i128 {
    let v: Vec<[i128; 3]> = arr.lines().iter().map(|l| l.coeffs().map(i128::from)).collect();
    let det = |a: [i128; 3], b: [i128; 3], c: [i128; 3]| {
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
    };
    let n = v.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if det(v[i], v[j], v[k]) != 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// First C1 arrangement produced from `seed`; `z` (last) is a cover line.
pub fn c1_from_seed(seed: u64) -> Arrangement {
    generated(1, seed, random_families).remove(0)
}

/// First C2 arrangement produced from `seed`; `(0, last)` is a cover.
pub fn c2_from_seed(seed: u64) -> Arrangement {
    generated(1, seed, random_two_line_cover).remove(0)
}
