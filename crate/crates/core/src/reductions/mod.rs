//! Constructive reductions into conditional coloring, each producing a
//! labeled graph plus enough layout to translate witnesses both ways.

mod clique;
mod hamiltonian;
mod sat3;

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cnf::CnfFormula;
use crate::coloring::{verify_coloring, ColoringParams, ConditionalColoring};
use crate::error::{Error, Result};
use crate::graph::{Graph, HamiltonianWitness};

pub use clique::reduce_kcol_to_krcol;
pub use hamiltonian::{reduce_ham_3col_to_32col, reduce_planar_ham_3col_to_32col};
pub use sat3::{extract_assignment, lift_assignment, reduce_3sat_to_32col, Sat3Layout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    CliqueAttach,
    Sat3To32,
    HamTriangle,
    PlanarHam,
}

impl ReductionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::CliqueAttach => "clique_attach",
            ReductionKind::Sat3To32 => "sat3_to_32",
            ReductionKind::HamTriangle => "ham_triangle",
            ReductionKind::PlanarHam => "planar_ham",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Graph {
        graph: Graph,
        witness: Option<HamiltonianWitness>,
    },
    Formula(CnfFormula),
}

impl Source {
    fn canonical_text(&self) -> String {
        match self {
            Source::Graph { graph, witness } => {
                let mut text = graph.to_dimacs();
                if let Some(w) = witness {
                    text.push_str(&w.to_line());
                }
                text
            }
            Source::Formula(f) => f.to_dimacs(),
        }
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.canonical_text().as_bytes())
    }
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub graph: Graph,
    pub kind: ReductionKind,
    /// Role name to vertex id; injective.
    pub layout: BTreeMap<String, usize>,
    pub source: Source,
    /// Target parameters: the output is asked for a `(k, r)`-coloring.
    pub params: ColoringParams,
    pub ham_witness: Option<HamiltonianWitness>,
    pub sat3: Option<Sat3Layout>,
    pub gadget_digest: Option<String>,
}

#[derive(Serialize)]
struct Provenance<'a> {
    kind: &'static str,
    input_digest: String,
    gadget_digest: Option<&'a str>,
    k: usize,
    r: usize,
    vertex_count: usize,
    edge_count: usize,
    max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    sat3: Option<&'a Sat3Layout>,
}

impl ReductionArtifact {
    fn new(
        graph: Graph,
        kind: ReductionKind,
        source: Source,
        params: ColoringParams,
    ) -> Result<ReductionArtifact> {
        let layout = graph.layout();
        if layout.len() != graph.labels().len() {
            return Err(Error::input("layout role names are not unique"));
        }
        Ok(ReductionArtifact {
            graph,
            kind,
            layout,
            source,
            params,
            ham_witness: None,
            sat3: None,
            gadget_digest: None,
        })
    }

    pub fn role(&self, name: &str) -> Option<usize> {
        self.layout.get(name).copied()
    }

    pub fn layout_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.layout).expect("layout serializes");
        text.push('\n');
        text
    }

    pub fn provenance_json(&self) -> String {
        let prov = Provenance {
            kind: self.kind.as_str(),
            input_digest: self.source.digest(),
            gadget_digest: self.gadget_digest.as_deref(),
            k: self.params.k,
            r: self.params.r,
            vertex_count: self.graph.vertex_count(),
            edge_count: self.graph.edge_count(),
            max_degree: self.graph.max_degree(),
            sat3: self.sat3.as_ref(),
        };
        let mut text = serde_json::to_string_pretty(&prov).expect("provenance serializes");
        text.push('\n');
        text
    }

    /// Files of the artifact bundle as `(suffix, contents)`: the graph, the
    /// layout, the provenance, and the hamiltonian witness when present.
    pub fn bundle_files(&self) -> Vec<(&'static str, String)> {
        let mut files = vec![
            (".col", self.graph.to_dimacs()),
            (".layout.json", self.layout_json()),
            (".provenance.json", self.provenance_json()),
        ];
        if let Some(w) = &self.ham_witness {
            files.push((".ham", w.to_line()));
        }
        files
    }

    /// One-line size summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "kind={} vertices={} edges={} max_degree={}",
            self.kind.as_str(),
            self.graph.vertex_count(),
            self.graph.edge_count(),
            self.graph.max_degree()
        );
        if let Some(l) = &self.sat3 {
            s.push_str(&format!(
                " vars={} clauses={} a_path={} b_path={}",
                l.var_count,
                l.clause_count,
                l.a_path.len(),
                l.b_path.len()
            ));
        }
        s
    }
}

/// Restricts a coloring of the output to the source graph's vertices, which
/// keep their ids in every graph-to-graph reduction.
pub fn project_coloring(
    art: &ReductionArtifact,
    c: &ConditionalColoring,
) -> Result<ConditionalColoring> {
    let Source::Graph { graph, .. } = &art.source else {
        return Err(Error::input(format!(
            "{} artifacts have no source graph to project onto",
            art.kind.as_str()
        )));
    };
    if !verify_coloring(&art.graph, c)?.ok {
        return Err(Error::input(
            "coloring is not valid on the reduction output",
        ));
    }
    Ok(ConditionalColoring::new(
        c.colors[..graph.vertex_count()].to_vec(),
        ColoringParams {
            k: c.params.k,
            r: 1,
        },
    ))
}
