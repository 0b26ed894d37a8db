//! `χ_2` of paths and cycles by a transfer-matrix scan over consecutive color
//! pairs. With `r = 2`, every interior vertex forces its two neighbors apart,
//! so a coloring is valid iff each window of three consecutive vertices is
//! pairwise distinct (wrapping around on a cycle).

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowDegreeShape {
    Path,
    Cycle,
}

pub fn chi2_low_degree(n: usize, shape: LowDegreeShape) -> Result<usize> {
    match shape {
        LowDegreeShape::Path if n == 0 => Err(Error::Precondition("path needs n >= 1".into())),
        LowDegreeShape::Cycle if n < 3 => Err(Error::Precondition("cycle needs n >= 3".into())),
        LowDegreeShape::Path if n <= 2 => Ok(n),
        _ => Ok((1..=n)
            .find(|&k| feasible(n, k, shape))
            .expect("n colors always suffice")),
    }
}

/// Reachable `(previous, current)` color pairs after extending a walk.
fn step(states: &[bool], k: usize) -> Vec<bool> {
    let mut next = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            if !states[a * k + b] {
                continue;
            }
            for c in 0..k {
                if c != a && c != b {
                    next[b * k + c] = true;
                }
            }
        }
    }
    next
}

fn feasible(n: usize, k: usize, shape: LowDegreeShape) -> bool {
    if k < 2 {
        return false;
    }
    match shape {
        LowDegreeShape::Path => {
            let mut states: Vec<bool> = (0..k * k).map(|i| i / k != i % k).collect();
            for _ in 2..n {
                states = step(&states, k);
            }
            states.iter().any(|&s| s)
        }
        LowDegreeShape::Cycle => {
            // Fix the first two colors, walk the remaining n - 2 vertices, then
            // check the two windows that wrap around.
            (0..k).any(|c0| {
                (0..k).filter(|&c1| c1 != c0).any(|c1| {
                    let mut states = vec![false; k * k];
                    states[c0 * k + c1] = true;
                    for _ in 2..n {
                        states = step(&states, k);
                    }
                    (0..k * k).any(|i| {
                        let (prev, last) = (i / k, i % k);
                        states[i] && last != c0 && prev != c0 && last != c1
                    })
                })
            })
        }
    }
}
