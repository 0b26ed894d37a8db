//! CNF encoding of the (k,r)-coloring decision problem.
//!
//! Variables:
//! - selector `x(v,c) = 1 + v*k + c`: vertex `v` takes color `c`;
//! - presence `y(v,c) = 1 + n*k + v*k + c`: some neighbor of `v` has color `c`
//!   (only the direction `y -> OR x` is enforced, which is all C2 needs);
//! - sequential-counter registers after that, per vertex with a C2 demand.
//!
//! C2 becomes "at least `min(deg v, r)` of `y(v,·)` are true", written as
//! "at most `k - min(deg v, r)` of the negated `y(v,·)` are true" with a
//! sequential counter.

use std::fmt::Write as _;

use super::{ColoringParams, ConditionalColoring};
use crate::cnf::{CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfLayout {
    pub vertex_count: usize,
    pub params: ColoringParams,
    pub counter_vars: usize,
}

impl CnfLayout {
    pub fn selector(&self, v: usize, c: usize) -> usize {
        1 + v * self.params.k + c
    }

    pub fn presence(&self, v: usize, c: usize) -> usize {
        1 + (self.vertex_count + v) * self.params.k + c
    }

    fn first_counter(&self) -> usize {
        1 + 2 * self.vertex_count * self.params.k
    }

    pub fn var_count(&self) -> usize {
        2 * self.vertex_count * self.params.k + self.counter_vars
    }

    /// DIMACS comment lines describing the variable numbering.
    pub fn comment_block(&self) -> String {
        let (n, k, r) = (self.vertex_count, self.params.k, self.params.r);
        let mut out = String::new();
        writeln!(out, "c conditional coloring encoding: n={n} k={k} r={r}").unwrap();
        writeln!(
            out,
            "c selector  x(v,c) = 1 + v*{k} + c          (v in 0..{n}, c in 0..{k})"
        )
        .unwrap();
        writeln!(out, "c presence  y(v,c) = 1 + ({n} + v)*{k} + c").unwrap();
        writeln!(
            out,
            "c counters  {}..={} (sequential counters for the neighborhood condition)",
            self.first_counter(),
            self.var_count()
        )
        .unwrap();
        out
    }

    pub fn to_dimacs(&self, f: &CnfFormula) -> String {
        let mut out = self.comment_block();
        out.push_str(&f.to_dimacs());
        out
    }
}

pub fn encode_kr_as_cnf(g: &Graph, p: ColoringParams) -> (CnfFormula, CnfLayout) {
    let n = g.vertex_count();
    let k = p.k;
    let mut layout = CnfLayout {
        vertex_count: n,
        params: p,
        counter_vars: 0,
    };
    let lit = |v: usize| v as Literal;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();

    for v in 0..n {
        clauses.push((0..k).map(|c| lit(layout.selector(v, c))).collect());
        for a in 0..k {
            for b in a + 1..k {
                clauses.push(vec![
                    -lit(layout.selector(v, a)),
                    -lit(layout.selector(v, b)),
                ]);
            }
        }
    }
    for &(u, v) in g.edges() {
        for c in 0..k {
            clauses.push(vec![
                -lit(layout.selector(u, c)),
                -lit(layout.selector(v, c)),
            ]);
        }
    }

    let mut next_var = layout.first_counter();
    for v in 0..n {
        let required = g.degree(v).min(p.r);
        if required == 0 {
            continue;
        }
        for c in 0..k {
            let mut clause = vec![-lit(layout.presence(v, c))];
            clause.extend(g.neighbors(v).iter().map(|&u| lit(layout.selector(u, c))));
            clauses.push(clause);
        }
        if required > k {
            clauses.push(Vec::new());
            continue;
        }
        let absent: Vec<Literal> = (0..k).map(|c| -lit(layout.presence(v, c))).collect();
        at_most(&absent, k - required, &mut next_var, &mut clauses);
    }
    layout.counter_vars = next_var - layout.first_counter();
    let formula = CnfFormula {
        var_count: layout.var_count(),
        clauses,
    };
    (formula, layout)
}

/// Sequential counter: at most `bound` of `items` are true. Register
/// `s(i,j)` means "at least j+1 of items[0..=i] are true".
fn at_most(items: &[Literal], bound: usize, next_var: &mut usize, out: &mut Vec<Vec<Literal>>) {
    let m = items.len();
    if bound >= m {
        return;
    }
    if bound == 0 {
        out.extend(items.iter().map(|&l| vec![-l]));
        return;
    }
    let base = *next_var;
    *next_var += (m - 1) * bound;
    let s = |i: usize, j: usize| (base + i * bound + j) as Literal;

    out.push(vec![-items[0], s(0, 0)]);
    for j in 1..bound {
        out.push(vec![-s(0, j)]);
    }
    for (i, &x) in items.iter().enumerate().take(m - 1).skip(1) {
        out.push(vec![-x, s(i, 0)]);
        out.push(vec![-s(i - 1, 0), s(i, 0)]);
        for j in 1..bound {
            out.push(vec![-x, -s(i - 1, j - 1), s(i, j)]);
            out.push(vec![-s(i - 1, j), s(i, j)]);
        }
        out.push(vec![-x, -s(i - 1, bound - 1)]);
    }
    out.push(vec![-items[m - 1], -s(m - 2, bound - 1)]);
}

/// Reads the coloring off a model (indexed by `var - 1`).
pub fn decode_model(layout: &CnfLayout, model: &[bool]) -> Result<ConditionalColoring> {
    if model.len() < 2 * layout.vertex_count * layout.params.k {
        return Err(Error::Decode(format!(
            "model has {} variables, layout needs at least {}",
            model.len(),
            2 * layout.vertex_count * layout.params.k
        )));
    }
    let mut colors = Vec::with_capacity(layout.vertex_count);
    for v in 0..layout.vertex_count {
        let chosen: Vec<usize> = (0..layout.params.k)
            .filter(|&c| model[layout.selector(v, c) - 1])
            .collect();
        match chosen.as_slice() {
            [c] => colors.push(*c),
            [] => return Err(Error::Decode(format!("vertex {v} has no color"))),
            _ => return Err(Error::Decode(format!("vertex {v} has colors {chosen:?}"))),
        }
    }
    Ok(ConditionalColoring::new(colors, layout.params))
}
