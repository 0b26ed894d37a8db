use std::collections::BTreeMap;

use super::{ReductionArtifact, ReductionKind, Source};
use crate::coloring::ColoringParams;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexRole};

/// Attaches to every vertex `v` a fresh `K_r` fully joined to `v`, so each
/// vertex of the output sits in a `K_{r+1}`. Then `g` is `k`-colorable iff the
/// output is `(k, r)`-colorable.
///
/// Vertex `v` keeps its id; clique member `j` of `v` is `n + v*r + j`.
pub fn reduce_kcol_to_krcol(g: &Graph, p: ColoringParams) -> Result<ReductionArtifact> {
    if !(2 <= p.r && p.r < p.k) {
        return Err(Error::input(format!(
            "clique attachment needs 2 <= r < k, got k={} r={}",
            p.k, p.r
        )));
    }
    let n = g.vertex_count();
    let r = p.r;
    let member = |v: usize, j: usize| n + v * r + j;
    let mut edges = g.edges().to_vec();
    let mut labels = BTreeMap::new();
    for v in 0..n {
        labels.insert(v, VertexRole::Original { index: v + 1 });
        for j in 0..r {
            labels.insert(
                member(v, j),
                VertexRole::CliqueMember {
                    orig: v + 1,
                    index: j + 1,
                },
            );
            edges.push((v, member(v, j)));
            for i in 0..j {
                edges.push((member(v, i), member(v, j)));
            }
        }
    }
    let graph = Graph::from_edge_list((r + 1) * n, &edges)?.with_labels(labels)?;
    ReductionArtifact::new(
        graph,
        ReductionKind::CliqueAttach,
        Source::Graph {
            graph: g.clone(),
            witness: None,
        },
        p,
    )
}
