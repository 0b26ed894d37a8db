use super::{solve_kr, verify_coloring, ColoringParams, ConditionalColoring, Violation};
use crate::error::{Error, Result};
use crate::graph::Graph;

const REPAIR_ROUNDS: usize = 64;

/// A conditional `(Δ+1, 2)`-coloring for graphs with `Δ >= 3`.
///
/// Greedy first, then local recoloring of neighbors around C2 failures; the
/// exact solver finishes the job whenever repair stalls.
pub fn delta_plus_one_coloring(g: &Graph) -> Result<ConditionalColoring> {
    let delta = g.max_degree();
    if delta < 3 {
        return Err(Error::Precondition(format!(
            "maximum degree {delta} < 3; the Δ+1 bound does not apply"
        )));
    }
    let params = ColoringParams { k: delta + 1, r: 2 };
    let mut c = ConditionalColoring::new(greedy(g, params.k), params);
    for _ in 0..REPAIR_ROUNDS {
        let verdict = verify_coloring(g, &c)?;
        if verdict.ok {
            return Ok(c);
        }
        let mut changed = false;
        for v in verdict.violations {
            if let Violation::C2 { vertex, .. } = v {
                changed |= repair_at(g, &mut c.colors, vertex, params.k);
            }
        }
        if !changed {
            break;
        }
    }
    solve_kr(g, params).ok_or_else(|| {
        Error::Precondition(format!(
            "no (Δ+1, 2)-coloring found with Δ = {delta}; graph violates the Δ+1 bound"
        ))
    })
}

fn greedy(g: &Graph, k: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut color = vec![usize::MAX; n];
    for v in order {
        let mut banned = vec![false; k];
        for &u in g.neighbors(v) {
            if color[u] != usize::MAX {
                banned[color[u]] = true;
                // u would be left seeing one color if v copies its only one
                if let Some(only) = single_neighbor_color(g, &color, u, v) {
                    banned[only] = true;
                }
            }
        }
        color[v] = (0..k).find(|&c| !banned[c]).unwrap_or(0);
    }
    color
}

/// If every colored neighbor of `u` other than `skip` shares one color and
/// `u` has degree at least two, that color.
fn single_neighbor_color(g: &Graph, color: &[usize], u: usize, skip: usize) -> Option<usize> {
    if g.degree(u) < 2 {
        return None;
    }
    let mut seen = None;
    for &w in g.neighbors(u) {
        if w == skip || color[w] == usize::MAX {
            continue;
        }
        match seen {
            None => seen = Some(color[w]),
            Some(c) if c != color[w] => return None,
            _ => {}
        }
    }
    seen
}

/// Recolors one neighbor of `v` so that `v` sees a second color without
/// breaking properness. Returns whether anything changed.
fn repair_at(g: &Graph, color: &mut [usize], v: usize, k: usize) -> bool {
    let shared = color[g.neighbors(v)[0]];
    for &u in g.neighbors(v) {
        let taken: Vec<bool> = (0..k)
            .map(|c| c == shared || g.neighbors(u).iter().any(|&w| color[w] == c))
            .collect();
        if let Some(c) = (0..k).find(|&c| !taken[c]) {
            color[u] = c;
            return true;
        }
    }
    false
}
