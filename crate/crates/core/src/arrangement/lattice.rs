use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Arrangement, ProjectivePoint};

/// An intersection point together with every line through it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flat {
    pub point: ProjectivePoint,
    /// Sorted line indices.
    pub lines: Vec<usize>,
}

impl Flat {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn contains_line(&self, line: usize) -> bool {
        self.lines.binary_search(&line).is_ok()
    }
}

/// The rank-2 flats of an arrangement, ordered by canonical point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    flats: Vec<Flat>,
    line_count: usize,
}

impl Lattice {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn line_count(&self) -> usize {
        self.line_count
    }

    /// Indices of flats of multiplicity at least three.
    pub fn high_points(&self) -> Vec<usize> {
        (0..self.flats.len())
            .filter(|&i| self.flats[i].multiplicity() >= 3)
            .collect()
    }

    /// The flat containing both lines.
    pub fn flat_of_pair(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return None;
        }
        self.flats
            .iter()
            .position(|f| f.contains_line(i) && f.contains_line(j))
    }

    /// `Σ C(m, 2)` over all flats; equals `C(n, 2)` for a valid lattice.
    pub fn pair_count(&self) -> usize {
        self.flats
            .iter()
            .map(|f| f.multiplicity() * (f.multiplicity() - 1) / 2)
            .sum()
    }
}

pub fn intersection_lattice(arr: &Arrangement) -> Lattice {
    let lines = arr.lines();
    let mut by_point: BTreeMap<ProjectivePoint, Vec<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = lines[i].meet(&lines[j]);
            let entry = by_point.entry(p).or_default();
            for k in [i, j] {
                if let Err(pos) = entry.binary_search(&k) {
                    entry.insert(pos, k);
                }
            }
        }
    }
    Lattice {
        flats: by_point
            .into_iter()
            .map(|(point, lines)| Flat { point, lines })
            .collect(),
        line_count: lines.len(),
    }
}
