//! Brute-force conditional chromatic number: plain enumeration of all `k^n`
//! assignments, sharing no code with the backtracking solver.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_ORACLE_BOUND: usize = 10;

pub fn brute_force_chi_r(g: &Graph, r: usize) -> Result<usize> {
    brute_force_chi_r_bounded(g, r, DEFAULT_ORACLE_BOUND)
}

pub fn brute_force_chi_r_bounded(g: &Graph, r: usize, bound: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n > bound {
        return Err(Error::OracleBound { size: n, bound });
    }
    if r == 0 {
        return Err(Error::input("order r must be positive"));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<&[usize]> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut colors = vec![0usize; n];
    for k in 1..=n {
        colors.iter_mut().for_each(|c| *c = 0);
        loop {
            if satisfies(&adj, &colors, r) {
                return Ok(k);
            }
            // odometer increment over base-k digits
            let mut i = 0;
            while i < n && colors[i] + 1 == k {
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!("k = n always admits the all-distinct coloring")
}

fn satisfies(adj: &[&[usize]], colors: &[usize], r: usize) -> bool {
    for (v, nbrs) in adj.iter().enumerate() {
        let mut seen: u64 = 0;
        for &u in nbrs.iter() {
            if colors[u] == colors[v] {
                return false;
            }
            seen |= 1 << colors[u];
        }
        if (seen.count_ones() as usize) < nbrs.len().min(r) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(brute_force_chi_r(&Graph::complete(4), 2).unwrap(), 4);
        assert_eq!(brute_force_chi_r(&Graph::path(2), 3).unwrap(), 2);
        assert_eq!(brute_force_chi_r(&Graph::empty(1), 2).unwrap(), 1);
        assert_eq!(brute_force_chi_r(&Graph::cycle(5), 2).unwrap(), 5);
        assert_eq!(brute_force_chi_r(&Graph::cycle(5), 1).unwrap(), 3);
    }

    #[test]
    fn refuses_above_bound() {
        assert_eq!(
            brute_force_chi_r(&Graph::path(11), 2),
            Err(Error::OracleBound {
                size: 11,
                bound: 10
            })
        );
        assert_eq!(
            brute_force_chi_r_bounded(&Graph::path(11), 2, 11).unwrap(),
            3
        );
    }
}
