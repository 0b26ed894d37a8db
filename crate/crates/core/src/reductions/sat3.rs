//! 3-SAT to (3,2)-coloring on triangle-free graphs of maximum degree 3.
//!
//! For `n` variables and `m` clauses the output contains:
//! - backbone paths `a_1..a_{6n-1}` and `b_1..b_{3m-2}`, joined by `a_1 b_1`;
//! - per variable `i`, a positive path of `3t_i - 2` vertices and a negative
//!   path of `3t̄_i + 2` vertices, where `t_i`/`t̄_i` count positive/negative
//!   occurrences. Marked vertices sit at positions `1, 4, 7, ...`: `x_{i_j}`
//!   for `j = 1..=t_i` and `x̄_{i_j}` for `j = 1..=t̄_i + 1`. The last positive
//!   marked vertex is joined to `x̄_{i_1}`, `x_{i_1}` to `a_{6i-5}` and
//!   `x̄_{i_1}` to `a_{6i-2}`;
//! - per clause `c`, a copy of the clause gadget whose output is joined to
//!   `b_{3c-2}` and whose ports are joined to the literal vertices: the j-th
//!   positive occurrence of `x_i` uses `x_{i_j}`, the j-th negative occurrence
//!   uses `x̄_{i_{j+1}}`.
//!
//! Degree-2 path vertices force period-3 colorings along every path, so all
//! marked `a` vertices share one color, all marked `b` vertices another, and
//! literal vertices take the remaining two. Colors are normalized so that
//! `a` is 2, `b` is 0, and a literal vertex colored 1 reads as true.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ReductionArtifact, ReductionKind, Source};
use crate::cnf::{evaluate, is_normalized, Assignment, CnfFormula};
use crate::coloring::{verify_coloring, ColoringParams, ConditionalColoring};
use crate::error::{Error, Result};
use crate::gadgets::CertifiedGadget;
use crate::graph::{Graph, VertexRole};

/// Vertex ids of every part of the construction. Paths are listed in order;
/// variable-indexed vectors use `var - 1`, clause-indexed ones `clause - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sat3Layout {
    pub var_count: usize,
    pub clause_count: usize,
    pub a_path: Vec<usize>,
    pub b_path: Vec<usize>,
    pub pos_paths: Vec<Vec<usize>>,
    pub neg_paths: Vec<Vec<usize>>,
    pub pos_occurrences: Vec<usize>,
    pub neg_occurrences: Vec<usize>,
    /// Gadget-local vertex id to global id, per clause.
    pub gadgets: Vec<Vec<usize>>,
    /// Literal vertex wired to each port, per clause.
    pub port_literals: Vec<[usize; 3]>,
}

impl Sat3Layout {
    /// `x_{i_j}`, 1-based `var` and `j`.
    pub fn pos_marked(&self, var: usize, j: usize) -> usize {
        self.pos_paths[var - 1][3 * (j - 1)]
    }

    /// `x̄_{i_j}`, 1-based `var` and `j`.
    pub fn neg_marked(&self, var: usize, j: usize) -> usize {
        self.neg_paths[var - 1][3 * (j - 1)]
    }

    /// `a_{3i-2}` for `i = 1..=2n`.
    pub fn a_marked(&self) -> impl Iterator<Item = usize> + '_ {
        self.a_path.iter().step_by(3).copied()
    }

    /// `b_{3i-2}` for `i = 1..=m`.
    pub fn b_marked(&self) -> impl Iterator<Item = usize> + '_ {
        self.b_path.iter().step_by(3).copied()
    }
}

struct Builder {
    next: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, VertexRole>,
}

impl Builder {
    fn vertex(&mut self, role: VertexRole) -> usize {
        let id = self.next;
        self.next += 1;
        self.labels.insert(id, role);
        id
    }

    fn path(&mut self, len: usize, role: impl Fn(usize) -> VertexRole) -> Vec<usize> {
        let ids: Vec<usize> = (1..=len).map(|p| self.vertex(role(p))).collect();
        self.edges.extend(ids.windows(2).map(|w| (w[0], w[1])));
        ids
    }
}

fn literal_role(var: usize, negated: bool, position: usize) -> VertexRole {
    if position % 3 == 1 {
        let occurrence = position.div_ceil(3);
        if negated {
            VertexRole::LiteralNeg { var, occurrence }
        } else {
            VertexRole::LiteralPos { var, occurrence }
        }
    } else {
        VertexRole::PathFiller {
            var,
            negated,
            position,
        }
    }
}

pub fn reduce_3sat_to_32col(f: &CnfFormula, gadget: &CertifiedGadget) -> Result<ReductionArtifact> {
    if !is_normalized(f) {
        return Err(Error::input(
            "formula is not normalized: every clause needs 3 distinct variables and every variable a positive occurrence",
        ));
    }
    let n = f.var_count;
    let m = f.clause_count();
    if m == 0 || n == 0 {
        return Err(Error::input("formula has no clauses; nothing to reduce"));
    }
    let mut pos = vec![0usize; n];
    let mut neg = vec![0usize; n];
    for &l in f.clauses.iter().flatten() {
        let v = l.unsigned_abs() as usize - 1;
        if l > 0 {
            pos[v] += 1;
        } else {
            neg[v] += 1;
        }
    }

    let mut b = Builder {
        next: 0,
        edges: Vec::new(),
        labels: BTreeMap::new(),
    };
    let a_path = b.path(6 * n - 1, |index| VertexRole::BackboneA { index });
    let b_path = b.path(3 * m - 2, |index| VertexRole::BackboneB { index });
    b.edges.push((a_path[0], b_path[0]));

    let mut pos_paths = Vec::with_capacity(n);
    let mut neg_paths = Vec::with_capacity(n);
    for i in 0..n {
        let var = i + 1;
        let p = b.path(3 * pos[i] - 2, |position| {
            literal_role(var, false, position)
        });
        let q = b.path(3 * neg[i] + 2, |position| literal_role(var, true, position));
        b.edges.push((p[3 * (pos[i] - 1)], q[0]));
        b.edges.push((p[0], a_path[6 * var - 6]));
        b.edges.push((q[0], a_path[6 * var - 3]));
        pos_paths.push(p);
        neg_paths.push(q);
    }

    let inner = &gadget.gadget().inner;
    let ports = gadget.gadget().ports;
    let output = gadget.gadget().output;
    let mut gadgets = Vec::with_capacity(m);
    let mut port_literals = Vec::with_capacity(m);
    let mut pos_seen = vec![0usize; n];
    let mut neg_seen = vec![0usize; n];
    for (ci, clause) in f.clauses.iter().enumerate() {
        let number = ci + 1;
        let ids: Vec<usize> = (0..inner.vertex_count())
            .map(|local| {
                b.vertex(if local == output {
                    VertexRole::GadgetOutput { clause: number }
                } else {
                    VertexRole::GadgetInternal {
                        clause: number,
                        local,
                    }
                })
            })
            .collect();
        b.edges
            .extend(inner.edges().iter().map(|&(u, v)| (ids[u], ids[v])));
        b.edges.push((ids[output], b_path[3 * ci]));
        let mut wired = [0usize; 3];
        for (slot, &l) in clause.iter().enumerate() {
            let v = l.unsigned_abs() as usize - 1;
            let literal = if l > 0 {
                pos_seen[v] += 1;
                pos_paths[v][3 * (pos_seen[v] - 1)]
            } else {
                neg_seen[v] += 1;
                neg_paths[v][3 * neg_seen[v]]
            };
            b.edges.push((ids[ports[slot]], literal));
            wired[slot] = literal;
        }
        gadgets.push(ids);
        port_literals.push(wired);
    }

    let graph = Graph::from_edge_list(b.next, &b.edges)?.with_labels(b.labels)?;
    if !graph.is_triangle_free() || graph.max_degree() > 3 {
        return Err(Error::input(
            "construction produced a triangle or a vertex of degree > 3",
        ));
    }
    let mut art = ReductionArtifact::new(
        graph,
        ReductionKind::Sat3To32,
        Source::Formula(f.clone()),
        ColoringParams { k: 3, r: 2 },
    )?;
    art.gadget_digest = Some(gadget.digest());
    art.sat3 = Some(Sat3Layout {
        var_count: n,
        clause_count: m,
        a_path,
        b_path,
        pos_paths,
        neg_paths,
        pos_occurrences: pos,
        neg_occurrences: neg,
        gadgets,
        port_literals,
    });
    Ok(art)
}

fn sat3_parts(art: &ReductionArtifact) -> Result<(&Sat3Layout, &CnfFormula)> {
    match (&art.sat3, &art.source) {
        (Some(layout), Source::Formula(f)) if art.kind == ReductionKind::Sat3To32 => {
            Ok((layout, f))
        }
        _ => Err(Error::input(format!(
            "expected a sat3_to_32 artifact, got {}",
            art.kind.as_str()
        ))),
    }
}

/// Builds the (3,2)-coloring that corresponds to a satisfying assignment.
pub fn lift_assignment(
    art: &ReductionArtifact,
    gadget: &CertifiedGadget,
    a: &Assignment,
) -> Result<ConditionalColoring> {
    let (layout, f) = sat3_parts(art)?;
    if art.gadget_digest.as_deref() != Some(gadget.digest().as_str()) {
        return Err(Error::input(
            "gadget differs from the one used to build the artifact",
        ));
    }
    if a.0.len() != f.var_count {
        return Err(Error::input(format!(
            "assignment has {} variables, formula has {}",
            a.0.len(),
            f.var_count
        )));
    }
    if !evaluate(f, a) {
        return Err(Error::input("assignment does not satisfy the formula"));
    }
    let mut colors = vec![usize::MAX; art.graph.vertex_count()];
    // a: 2,1,0 repeating from a_1; b: 0,1,2 repeating from b_1.
    for (i, &v) in layout.a_path.iter().enumerate() {
        colors[v] = [2, 1, 0][i % 3];
    }
    for (i, &v) in layout.b_path.iter().enumerate() {
        colors[v] = [0, 1, 2][i % 3];
    }
    for var in 1..=layout.var_count {
        let x = usize::from(a.value(var));
        for (path, marked) in [
            (&layout.pos_paths[var - 1], x),
            (&layout.neg_paths[var - 1], 1 - x),
        ] {
            for (i, &v) in path.iter().enumerate() {
                colors[v] = [marked, 1 - marked, 2][i % 3];
            }
        }
    }
    for (ci, ids) in layout.gadgets.iter().enumerate() {
        let stubs = layout.port_literals[ci].map(|v| colors[v]);
        let witness = gadget
            .witness(stubs)
            .ok_or_else(|| Error::input(format!("clause {} has no true literal", ci + 1)))?;
        for (local, &v) in ids.iter().enumerate() {
            colors[v] = witness[local];
        }
    }
    debug_assert!(colors.iter().all(|&c| c < 3));
    Ok(ConditionalColoring::new(colors, art.params))
}

/// Reads a satisfying assignment off a valid (3,2)-coloring of the output.
pub fn extract_assignment(art: &ReductionArtifact, c: &ConditionalColoring) -> Result<Assignment> {
    let (layout, _) = sat3_parts(art)?;
    if c.params.k > 3 || !verify_coloring(&art.graph, c)?.ok || c.params.r < 2 {
        return Err(Error::input(
            "not a valid (3,2)-coloring of the reduction output",
        ));
    }
    let perm = normalizing_permutation(layout, c);
    Ok(Assignment(
        (1..=layout.var_count)
            .map(|var| perm[c.colors[layout.pos_marked(var, 1)]] == 1)
            .collect(),
    ))
}

/// Color permutation sending `c(a_1)` to 2 and `c(b_1)` to 0.
pub(crate) fn normalizing_permutation(layout: &Sat3Layout, c: &ConditionalColoring) -> [usize; 3] {
    let a1 = c.colors[layout.a_path[0]];
    let b1 = c.colors[layout.b_path[0]];
    let third = 3 - a1 - b1;
    let mut perm = [0; 3];
    perm[a1] = 2;
    perm[b1] = 0;
    perm[third] = 1;
    perm
}
