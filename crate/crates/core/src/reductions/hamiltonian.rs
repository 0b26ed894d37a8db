//! 3-coloring of graphs with a known hamiltonian cycle to (3,2)-coloring.
//!
//! Both constructions hang a triangle off source vertices, which makes C2
//! automatic under any proper 3-coloring, and add links that keep a
//! hamiltonian cycle through every new vertex. Source vertices keep their
//! ids; `v_i` names the i-th vertex of the given cycle.

use std::collections::BTreeMap;

use super::{ReductionArtifact, ReductionKind, Source};
use crate::coloring::ColoringParams;
use crate::error::{Error, Result};
use crate::graph::{verify_hamiltonian_cycle, AttachSide, Graph, HamiltonianWitness, VertexRole};

const PARAMS: ColoringParams = ColoringParams { k: 3, r: 2 };

fn checked_witness(g: &Graph, w: &HamiltonianWitness) -> Result<()> {
    if verify_hamiltonian_cycle(g, w) {
        Ok(())
    } else {
        Err(Error::input(
            "witness is not a hamiltonian cycle of the input graph",
        ))
    }
}

fn original_labels(w: &HamiltonianWitness) -> BTreeMap<usize, VertexRole> {
    w.order
        .iter()
        .enumerate()
        .map(|(pos, &v)| (v, VertexRole::Original { index: pos + 1 }))
        .collect()
}

fn finish(
    g: &Graph,
    w: &HamiltonianWitness,
    n_out: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, VertexRole>,
    route: Vec<usize>,
    kind: ReductionKind,
) -> Result<ReductionArtifact> {
    let graph = Graph::from_edge_list(n_out, &edges)?.with_labels(labels)?;
    let out_witness = HamiltonianWitness::new(route);
    if !verify_hamiltonian_cycle(&graph, &out_witness) {
        return Err(Error::input("output cycle failed validation"));
    }
    let mut art = ReductionArtifact::new(
        graph,
        kind,
        Source::Graph {
            graph: g.clone(),
            witness: Some(w.clone()),
        },
        PARAMS,
    )?;
    art.ham_witness = Some(out_witness);
    Ok(art)
}

/// Triangle `v_i x_{i,1} x_{i,2}` per source vertex, links
/// `x_{2p-1,2} x_{2p,1}` along the cycle, and for odd `n` one extra vertex
/// `u` joined to `x_{n,1}`, `x_{n,2}` and `x_{n-1,2}`.
pub fn reduce_ham_3col_to_32col(g: &Graph, w: &HamiltonianWitness) -> Result<ReductionArtifact> {
    checked_witness(g, w)?;
    let n = g.vertex_count();
    let x1 = |pos: usize| n + 2 * pos;
    let x2 = |pos: usize| n + 2 * pos + 1;
    let u = 3 * n;
    let odd = n % 2 == 1;

    let mut edges = g.edges().to_vec();
    let mut labels = original_labels(w);
    for (pos, &v) in w.order.iter().enumerate() {
        edges.extend([(v, x1(pos)), (v, x2(pos)), (x1(pos), x2(pos))]);
        labels.insert(
            x1(pos),
            VertexRole::TriangleAttach {
                orig: pos + 1,
                side: AttachSide::X1,
            },
        );
        labels.insert(
            x2(pos),
            VertexRole::TriangleAttach {
                orig: pos + 1,
                side: AttachSide::X2,
            },
        );
    }
    for p in 0..n / 2 {
        edges.push((x2(2 * p), x1(2 * p + 1)));
    }
    if odd {
        edges.extend([(u, x1(n - 1)), (u, x2(n - 1)), (u, x2(n - 2))]);
        labels.insert(u, VertexRole::ExtraU);
    }

    let mut route = Vec::with_capacity(3 * n + 1);
    for p in 0..n / 2 {
        let (i, j) = (2 * p, 2 * p + 1);
        let (vi, vj) = (w.order[i], w.order[j]);
        if odd && j == n - 2 {
            route.extend([
                vi,
                x1(i),
                x2(i),
                x1(j),
                vj,
                x2(j),
                u,
                x1(n - 1),
                x2(n - 1),
                w.order[n - 1],
            ]);
        } else {
            route.extend([vi, x1(i), x2(i), x1(j), x2(j), vj]);
        }
    }
    finish(
        g,
        w,
        3 * n + usize::from(odd),
        edges,
        labels,
        route,
        ReductionKind::HamTriangle,
    )
}

/// For every cycle edge `v_i v_{i+1}`: triangles `v_i x_{i,1} x_{i,2}` and
/// `v_{i+1} y_{i+1,1} y_{i+1,2}` linked by `x_{i,2} y_{i+1,1}`. All new
/// vertices lie in one face next to the cycle edge, so a planar embedding of
/// the source extends to the output.
pub fn reduce_planar_ham_3col_to_32col(
    g: &Graph,
    w: &HamiltonianWitness,
) -> Result<ReductionArtifact> {
    checked_witness(g, w)?;
    let n = g.vertex_count();
    let base = |pos: usize| n + 4 * pos;

    let mut edges = g.edges().to_vec();
    let mut labels = original_labels(w);
    let mut route = Vec::with_capacity(5 * n);
    for pos in 0..n {
        let next = (pos + 1) % n;
        let (vi, vj) = (w.order[pos], w.order[next]);
        let [a1, a2, b1, b2] = [0, 1, 2, 3].map(|o| base(pos) + o);
        edges.extend([
            (vi, a1),
            (vi, a2),
            (a1, a2),
            (vj, b1),
            (vj, b2),
            (b1, b2),
            (a2, b1),
        ]);
        let attach = |orig: usize, side: AttachSide| VertexRole::TriangleAttach {
            orig: orig + 1,
            side,
        };
        labels.insert(a1, attach(pos, AttachSide::X1));
        labels.insert(a2, attach(pos, AttachSide::X2));
        labels.insert(b1, attach(next, AttachSide::Y1));
        labels.insert(b2, attach(next, AttachSide::Y2));
        route.extend([vi, a1, a2, b1, b2]);
    }
    finish(g, w, 5 * n, edges, labels, route, ReductionKind::PlanarHam)
}
