#![allow(dead_code)]

use condcolor::cnf::{is_normalized, CnfFormula};
use condcolor::graph::{Graph, HamiltonianWitness};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Classical chromatic number by trying every `k^n` assignment.
pub fn classical_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut colors = vec![0usize; n];
        loop {
            if g.edges().iter().all(|&(u, v)| colors[u] != colors[v]) {
                return k;
            }
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
    unreachable!()
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Every labeled connected graph on `n` vertices.
pub fn all_connected(n: usize) -> Vec<Graph> {
    let pairs = pairs(n);
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
        .filter(Graph::is_connected)
        .collect()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn random_connected(rng: &mut impl Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random graph with a planted hamiltonian cycle through a shuffled order,
/// plus random chords.
pub fn random_hamiltonian(rng: &mut impl Rng, n: usize) -> (Graph, HamiltonianWitness) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<_> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let p = rng.gen_range(0.0..0.8);
    edges.extend(pairs(n).into_iter().filter(|_| rng.gen_bool(p)));
    (
        Graph::from_edge_list(n, &edges).unwrap(),
        HamiltonianWitness::new(order),
    )
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let inside = |x: usize| a < x && x < b;
    a != c && a != d && b != c && b != d && inside(c) != inside(d)
}

/// Cycle `0..n` with two non-crossing chord families, one drawn inside and
/// one outside the cycle, so the result is planar and hamiltonian.
pub fn random_planar_hamiltonian(rng: &mut impl Rng, n: usize) -> (Graph, HamiltonianWitness) {
    let chords: Vec<_> = pairs(n)
        .into_iter()
        .filter(|&(u, v)| v - u > 1 && !(u == 0 && v == n - 1))
        .collect();
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut inside: Vec<(usize, usize)> = Vec::new();
    let mut outside: Vec<(usize, usize)> = Vec::new();
    for chord in chords {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let side = if rng.gen_bool(0.5) {
            &mut inside
        } else {
            &mut outside
        };
        if side.iter().all(|&other| !crosses(chord, other)) {
            side.push(chord);
        }
    }
    edges.extend(inside);
    edges.extend(outside);
    let g = Graph::from_edge_list(n, &edges).unwrap();
    (g, HamiltonianWitness::new((0..n).collect()))
}

/// The eight clauses over variables 1..=3, one per sign pattern.
pub fn sign_patterns() -> Vec<Vec<i32>> {
    (0..8)
        .map(|bits| {
            (0..3)
                .map(|i| if bits >> i & 1 == 1 { -(i + 1) } else { i + 1 })
                .collect()
        })
        .collect()
}

/// All normalized 3-variable formulas with 1 to `max_m` clauses, as clause
/// sequences over the eight sign patterns.
pub fn exhaustive_small_formulas(max_m: u32) -> Vec<CnfFormula> {
    let patterns = sign_patterns();
    let mut out = Vec::new();
    for m in 1..=max_m {
        for code in 0..8usize.pow(m) {
            let clauses = (0..m)
                .map(|i| patterns[code / 8usize.pow(i) % 8].clone())
                .collect();
            let f = CnfFormula::new(3, clauses).unwrap();
            if is_normalized(&f) {
                out.push(f);
            }
        }
    }
    out
}

/// Random normalized formula with up to `max_n` variables and `max_m` clauses.
pub fn random_normalized(rng: &mut impl Rng, max_n: usize, max_m: usize) -> CnfFormula {
    loop {
        let n = rng.gen_range(3..=max_n);
        let m = rng.gen_range(1..=max_m);
        if let Some(f) = random_formula(rng, n, m) {
            return f;
        }
    }
}

/// Random formula with `n` variables and `m` clauses over three distinct
/// variables each; `None` when some variable never occurs positively.
pub fn random_formula(rng: &mut impl Rng, n: usize, m: usize) -> Option<CnfFormula> {
    let clauses = (0..m)
        .map(|_| {
            let mut vars: Vec<i32> = (1..=n as i32).collect();
            vars.shuffle(rng);
            vars[..3]
                .iter()
                .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    Some(CnfFormula::new(n, clauses).unwrap()).filter(is_normalized)
}
