use serde::{Deserialize, Serialize};

use super::{intersection_lattice, Arrangement, Lattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum ClassTag {
    /// Only double points.
    Nodal,
    /// Every point of multiplicity ≥ 3 lies on `h0`.
    C1 { h0: usize },
    /// Every point of multiplicity ≥ 3 lies on `h0` or `hinf`, and no single
    /// line suffices.
    C2 { h0: usize, hinf: usize },
    Other,
}

/// For class `Other`: the line pair missing the fewest high points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearestCover {
    pub lines: [usize; 2],
    /// Flat indices of the high points left uncovered.
    pub uncovered: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    #[serde(flatten)]
    pub tag: ClassTag,
    /// Flat indices (into the intersection lattice) of multiplicity ≥ 3.
    pub high_points: Vec<usize>,
    /// Every valid cover, lowest index first. Single lines for C1, pairs
    /// `[h0, hinf]` with `h0 < hinf` for C2; empty otherwise.
    pub covers: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nearest_cover: Option<NearestCover>,
}

impl ClassInfo {
    /// Lines that appear in at least one cover.
    pub fn cover_lines(&self) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().flatten().copied()
    }
}

pub fn classify(arr: &Arrangement) -> ClassInfo {
    classify_with_lattice(arr, &intersection_lattice(arr))
}

pub(crate) fn classify_with_lattice(arr: &Arrangement, lattice: &Lattice) -> ClassInfo {
    let high = lattice.high_points();
    let n = arr.len();
    if high.is_empty() {
        return ClassInfo {
            tag: ClassTag::Nodal,
            high_points: high,
            covers: Vec::new(),
            nearest_cover: None,
        };
    }
    let on = |line: usize, flat: usize| lattice.flats()[flat].contains_line(line);

    let singles: Vec<Vec<usize>> = (0..n)
        .filter(|&l| high.iter().all(|&f| on(l, f)))
        .map(|l| vec![l])
        .collect();
    if let Some(first) = singles.first() {
        return ClassInfo {
            tag: ClassTag::C1 { h0: first[0] },
            high_points: high,
            covers: singles,
            nearest_cover: None,
        };
    }

    let mut pairs = Vec::new();
    let mut nearest: Option<NearestCover> = None;
    for i in 0..n {
        for j in i + 1..n {
            let uncovered: Vec<usize> = high
                .iter()
                .copied()
                .filter(|&f| !on(i, f) && !on(j, f))
                .collect();
            if uncovered.is_empty() {
                pairs.push(vec![i, j]);
            } else if nearest
                .as_ref()
                .is_none_or(|c| uncovered.len() < c.uncovered.len())
            {
                nearest = Some(NearestCover {
                    lines: [i, j],
                    uncovered,
                });
            }
        }
    }
    match pairs.first() {
        Some(p) => ClassInfo {
            tag: ClassTag::C2 {
                h0: p[0],
                hinf: p[1],
            },
            high_points: high,
            covers: pairs,
            nearest_cover: None,
        },
        None => ClassInfo {
            tag: ClassTag::Other,
            high_points: high,
            covers: Vec::new(),
            nearest_cover: nearest,
        },
    }
}
