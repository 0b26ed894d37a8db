//! Conditional (k,r)-colorings: a proper coloring in which every vertex `v`
//! sees at least `min(deg(v), r)` distinct colors among its neighbors.

mod bound;
mod encode;
mod low_degree;
mod oracle;
mod solver;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use bound::delta_plus_one_coloring;
pub use encode::{decode_model, encode_kr_as_cnf, CnfLayout};
pub use low_degree::{chi2_low_degree, LowDegreeShape};
pub use oracle::{brute_force_chi_r, brute_force_chi_r_bounded, DEFAULT_ORACLE_BOUND};
pub use solver::{chi_r, count_colorings, for_each_coloring, solve_kr, Search};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoringParams {
    pub k: usize,
    pub r: usize,
}

impl ColoringParams {
    pub fn new(k: usize, r: usize) -> Result<Self> {
        if k == 0 || r == 0 {
            return Err(Error::input(format!(
                "k and r must be positive (k={k}, r={r})"
            )));
        }
        Ok(ColoringParams { k, r })
    }
}

/// A total assignment of colors `0..k` to the vertices of some graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalColoring {
    pub colors: Vec<usize>,
    pub params: ColoringParams,
}

#[derive(Serialize, Deserialize)]
struct WitnessFile {
    k: usize,
    r: usize,
    colors: BTreeMap<usize, usize>,
}

impl ConditionalColoring {
    pub fn new(colors: Vec<usize>, params: ColoringParams) -> Self {
        ConditionalColoring { colors, params }
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    /// Relabels colors so the used ones become `0..colors_used()` in order of
    /// first appearance.
    pub fn compacted(&self) -> ConditionalColoring {
        let mut map = BTreeMap::new();
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        ConditionalColoring {
            colors,
            params: self.params,
        }
    }

    /// Applies `perm` to every color; `perm` must be a permutation of `0..k`.
    pub fn permuted(&self, perm: &[usize]) -> ConditionalColoring {
        ConditionalColoring {
            colors: self.colors.iter().map(|&c| perm[c]).collect(),
            params: self.params,
        }
    }

    pub fn to_json(&self) -> String {
        let file = WitnessFile {
            k: self.params.k,
            r: self.params.r,
            colors: self.colors.iter().copied().enumerate().collect(),
        };
        serde_json::to_string_pretty(&file).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: WitnessFile =
            serde_json::from_str(text).map_err(|e| Error::input(format!("witness JSON: {e}")))?;
        let n = file.colors.len();
        if file.colors.keys().copied().ne(0..n) {
            return Err(Error::input(
                "witness must color vertices 0..n exactly once",
            ));
        }
        Ok(ConditionalColoring {
            colors: file.colors.into_values().collect(),
            params: ColoringParams::new(file.k, file.r)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConditionKind {
    C1,
    C2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// Adjacent vertices share a color.
    C1 { edge: (usize, usize), color: usize },
    /// A vertex sees too few distinct colors in its neighborhood.
    C2 {
        vertex: usize,
        seen: usize,
        required: usize,
    },
}

impl Violation {
    pub fn kind(&self) -> ConditionKind {
        match self {
            Violation::C1 { .. } => ConditionKind::C1,
            Violation::C2 { .. } => ConditionKind::C2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks both coloring conditions everywhere and reports every failure.
pub fn verify_coloring(g: &Graph, c: &ConditionalColoring) -> Result<Verdict> {
    let n = g.vertex_count();
    if c.colors.len() != n {
        return Err(Error::input(format!(
            "coloring covers {} vertices, graph has {n}",
            c.colors.len()
        )));
    }
    if let Some((v, &col)) = c
        .colors
        .iter()
        .enumerate()
        .find(|(_, &col)| col >= c.params.k)
    {
        return Err(Error::input(format!(
            "vertex {v} has color {col}, outside 0..{}",
            c.params.k
        )));
    }
    let mut violations = Vec::new();
    for &(u, v) in g.edges() {
        if c.colors[u] == c.colors[v] {
            violations.push(Violation::C1 {
                edge: (u, v),
                color: c.colors[u],
            });
        }
    }
    for v in 0..n {
        let required = g.degree(v).min(c.params.r);
        let seen = g
            .neighbors(v)
            .iter()
            .map(|&u| c.colors[u])
            .collect::<BTreeSet<_>>()
            .len();
        if seen < required {
            violations.push(Violation::C2 {
                vertex: v,
                seen,
                required,
            });
        }
    }
    Ok(Verdict {
        ok: violations.is_empty(),
        violations,
    })
}

/// Convenience wrapper: `true` iff `c` is total, in range, and valid.
pub fn is_valid_coloring(g: &Graph, c: &ConditionalColoring) -> bool {
    verify_coloring(g, c).map(|v| v.ok).unwrap_or(false)
}
