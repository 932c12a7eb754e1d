//! Tutte polynomial of the linear matroid on the lines' coefficient triples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Arrangement;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuttePolynomial {
    /// `(i, j) ↦` coefficient of `x^i y^j`; zero coefficients are absent.
    coeffs: BTreeMap<(u32, u32), u64>,
}

impl TuttePolynomial {
    pub fn one() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), 1);
        Self { coeffs }
    }

    pub fn from_terms(terms: &[((u32, u32), u64)]) -> Self {
        let mut p = Self::default();
        for &(m, c) in terms {
            if c != 0 {
                *p.coeffs.entry(m).or_insert(0) += c;
            }
        }
        p
    }

    pub fn coeff(&self, i: u32, j: u32) -> u64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        self.coeffs
            .iter()
            .map(|(&(i, j), &c)| c as i128 * (x as i128).pow(i) * (y as i128).pow(j))
            .sum()
    }

    fn shifted(&self, di: u32, dj: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), &c)| ((i + di, j + dj), c))
                .collect(),
        }
    }

    fn add(mut self, other: &Self) -> Self {
        for (&m, &c) in &other.coeffs {
            *self.coeffs.entry(m).or_insert(0) += c;
        }
        self
    }
}

impl fmt::Display for TuttePolynomial {
    /// Highest x-degree first, e.g. `x^2 + x + y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| b.0 .0.cmp(&a.0 .0).then(a.0 .1.cmp(&b.0 .1)));
        let mut first = true;
        for (&(i, j), &c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = [(i, "x"), (j, "y")]
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join(" ");
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{c} {mono}")?,
            }
        }
        Ok(())
    }
}

/// Rank oracle for subsets of at most 64 vectors in ℚ³, given as bitmasks.
struct LinearMatroid {
    vectors: Vec<[i128; 3]>,
}

impl LinearMatroid {
    fn rank(&self, mask: u64) -> u32 {
        let mut basis: Vec<[i128; 3]> = Vec::with_capacity(3);
        for (i, v) in self.vectors.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            let independent = match basis.len() {
                0 => v.iter().any(|&c| c != 0),
                1 => cross(basis[0], *v).iter().any(|&c| c != 0),
                2 => det(basis[0], basis[1], *v) != 0,
                _ => false,
            };
            if independent {
                basis.push(*v);
                if basis.len() == 3 {
                    break;
                }
            }
        }
        basis.len() as u32
    }

    /// Closure of `mask`: every element in its span.
    fn closure(&self, mask: u64) -> u64 {
        let r = self.rank(mask);
        (0..self.vectors.len())
            .filter(|&i| self.rank(mask | 1 << i) == r)
            .fold(mask, |acc, i| acc | 1 << i)
    }
}

fn cross(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn det(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    let x = cross(b, c);
    a[0] * x[0] + a[1] * x[1] + a[2] * x[2]
}

/// Deletion–contraction over minors `M / C \ D`. A minor is keyed by its
/// ground set and the closure of its contracted set, which determines it.
struct Solver<'a> {
    matroid: LinearMatroid,
    order: &'a [usize],
    memo: HashMap<(u64, u64), TuttePolynomial>,
}

impl Solver<'_> {
    fn solve(&mut self, ground: u64, contracted: u64) -> TuttePolynomial {
        if ground == 0 {
            return TuttePolynomial::one();
        }
        let key = (ground, self.matroid.closure(contracted));
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let e = *self
            .order
            .iter()
            .find(|&&i| ground >> i & 1 == 1)
            .expect("ground set is a subset of the order");
        let bit = 1u64 << e;
        let rest = ground & !bit;
        let rc = self.matroid.rank(contracted);
        let is_loop = self.matroid.rank(contracted | bit) == rc;
        let is_coloop = self.matroid.rank(contracted | rest) < self.matroid.rank(contracted | ground);
        let result = if is_loop {
            self.solve(rest, contracted).shifted(0, 1)
        } else if is_coloop {
            self.solve(rest, contracted | bit).shifted(1, 0)
        } else {
            self.solve(rest, contracted)
                .add(&self.solve(rest, contracted | bit))
        };
        self.memo.insert(key, result.clone());
        result
    }
}

/// Tutte polynomial of the arrangement's matroid, processing elements in
/// index order.
pub fn tutte_polynomial(arr: &Arrangement) -> TuttePolynomial {
    let order: Vec<usize> = (0..arr.len()).collect();
    tutte_polynomial_with_order(arr, &order)
}

/// Same polynomial, deleting/contracting elements in the given order.
///
/// # Panics
/// If `order` is not a permutation of the line indices or there are more
/// than 64 lines.
pub fn tutte_polynomial_with_order(arr: &Arrangement, order: &[usize]) -> TuttePolynomial {
    let n = arr.len();
    assert!(n <= 64, "at most 64 lines supported");
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    assert!(sorted.iter().copied().eq(0..n), "order must be a permutation");
    let matroid = LinearMatroid {
        vectors: arr
            .lines()
            .iter()
            .map(|l| l.coeffs().map(i128::from))
            .collect(),
    };
    let ground = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut solver = Solver {
        matroid,
        order,
        memo: HashMap::new(),
    };
    solver.solve(ground, 0)
}
