//! Built-in fixture arrangements.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};

fn build(triples: &[[i64; 3]]) -> Arrangement {
    Arrangement::from_triples(triples).expect("fixture is a valid arrangement")
}

/// `n` concurrent lines through `(0:0:1)` followed by the line `z` at infinity.
/// In the chart away from `z` this is a central arrangement of `n` affine lines.
pub fn central(n: usize) -> Arrangement {
    let mut triples = vec![[0, 1, 0], [1, 0, 0]];
    triples.extend((1..n as i64 - 1).map(|k| [1, -k, 0]));
    triples.truncate(n);
    triples.push([0, 0, 1]);
    build(&triples)
}

/// `n` lines `x + t·y + t²·z = 0`, `t = 0..n`: any three are independent.
pub fn nodal(n: usize) -> Arrangement {
    let triples: Vec<[i64; 3]> = (0..n as i64).map(|t| [1, t, t * t]).collect();
    build(&triples)
}

/// `x−y, x, y, x−z, y−z, x+y−2z, z`.
pub fn ex3() -> Arrangement {
    build(&[
        [1, -1, 0],
        [1, 0, 0],
        [0, 1, 0],
        [1, 0, -1],
        [0, 1, -1],
        [1, 1, -2],
        [0, 0, 1],
    ])
}

/// `x, y, z, x−y, x−z, y−z`.
pub fn braid() -> Arrangement {
    build(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, -1, 0],
        [1, 0, -1],
        [0, 1, -1],
    ])
}

/// Affine lines `x=0, x=1, y=0, y=1, y=x` closed up with the line `z` at
/// infinity: the smallest arrangement carrying a parallelogram with the
/// diagonal `y=x`. Combinatorially this is the braid arrangement.
pub fn parallelogram_min() -> Arrangement {
    build(&[
        [1, 0, 0],
        [1, 0, -1],
        [0, 1, 0],
        [0, 1, -1],
        [1, -1, 0],
        [0, 0, 1],
    ])
}

/// Closures of `x=0, y=0, y=x, y=1, y=x+1, x=1, y=x−1`: five triple points
/// that no pair of lines covers.
pub fn other7() -> Arrangement {
    build(&[
        [1, 0, 0],
        [0, 1, 0],
        [1, -1, 0],
        [0, 1, -1],
        [1, -1, 1],
        [1, 0, -1],
        [1, -1, -1],
    ])
}

pub const NAMES: &[&str] = &["central(n)", "nodal(n)", "ex3", "braid", "parallelogram_min", "other7"];

/// Looks up a fixture by name: `ex3`, `braid`, `parallelogram_min`,
/// `other7`, `central(n)` / `central:n`, `nodal(n)` / `nodal:n`.
pub fn gallery(name: &str) -> Result<Arrangement> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let name = name.trim();
    match name {
        "ex3" => return Ok(ex3()),
        "braid" => return Ok(braid()),
        "parallelogram_min" => return Ok(parallelogram_min()),
        "other7" => return Ok(other7()),
        _ => {}
    }
    let (family, arg) = if let Some(rest) = name.strip_suffix(')') {
        rest.split_once('(').ok_or_else(unknown)?
    } else {
        name.split_once(':').ok_or_else(unknown)?
    };
    let n: usize = arg.trim().parse().map_err(|_| unknown())?;
    match family {
        "central" if (1..=64).contains(&n) => Ok(central(n)),
        "nodal" if (1..=64).contains(&n) => Ok(nodal(n)),
        _ => Err(unknown()),
    }
}
