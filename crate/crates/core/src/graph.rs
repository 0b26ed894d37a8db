//! Simple undirected graphs with dense `0..n` vertex ids.
//!
//! A [`Graph`] is immutable once built. Reductions attach [`VertexRole`]
//! labels to the vertices they create; labels never take part in equality.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the small attached cliques a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AttachSide {
    X1,
    X2,
    Y1,
    Y2,
}

/// Role of a vertex inside a reduction output. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexRole {
    Plain,
    /// Vertex copied from the source graph; `index` is its position on the
    /// hamiltonian cycle, or its id + 1 when no cycle is involved.
    Original {
        index: usize,
    },
    BackboneA {
        index: usize,
    },
    BackboneB {
        index: usize,
    },
    LiteralPos {
        var: usize,
        occurrence: usize,
    },
    LiteralNeg {
        var: usize,
        occurrence: usize,
    },
    PathFiller {
        var: usize,
        negated: bool,
        position: usize,
    },
    GadgetInternal {
        clause: usize,
        local: usize,
    },
    GadgetOutput {
        clause: usize,
    },
    TriangleAttach {
        orig: usize,
        side: AttachSide,
    },
    CliqueMember {
        orig: usize,
        index: usize,
    },
    ExtraU,
}

impl VertexRole {
    /// Layout key for the role, e.g. `a_1`, `x_2_3`, `nx_1_2`, `v_3`.
    pub fn name(&self) -> String {
        match self {
            VertexRole::Plain => "plain".to_string(),
            VertexRole::Original { index } => format!("v_{index}"),
            VertexRole::BackboneA { index } => format!("a_{index}"),
            VertexRole::BackboneB { index } => format!("b_{index}"),
            VertexRole::LiteralPos { var, occurrence } => format!("x_{var}_{occurrence}"),
            VertexRole::LiteralNeg { var, occurrence } => format!("nx_{var}_{occurrence}"),
            VertexRole::PathFiller {
                var,
                negated,
                position,
            } => {
                let prefix = if *negated { "pnx" } else { "px" };
                format!("{prefix}_{var}_{position}")
            }
            VertexRole::GadgetInternal { clause, local } => format!("h_{clause}_{local}"),
            VertexRole::GadgetOutput { clause } => format!("v_{clause}"),
            VertexRole::TriangleAttach { orig, side } => match side {
                AttachSide::X1 => format!("x_{orig}_1"),
                AttachSide::X2 => format!("x_{orig}_2"),
                AttachSide::Y1 => format!("y_{orig}_1"),
                AttachSide::Y2 => format!("y_{orig}_2"),
            },
            VertexRole::CliqueMember { orig, index } => format!("k_{orig}_{index}"),
            VertexRole::ExtraU => "u".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, VertexRole>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from `pairs`, dropping duplicate edges.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u},{v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            edges,
            labels: BTreeMap::new(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edge_list(n, &pairs).expect("complete graph edges are in range")
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edge_list(n, &pairs).expect("path edges are in range")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        pairs.push((n - 1, 0));
        Self::from_edge_list(n, &pairs).expect("cycle edges are in range")
    }

    pub fn star(leaves: usize) -> Self {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edge_list(leaves + 1, &pairs).expect("star edges are in range")
    }

    pub fn petersen() -> Self {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((i + 5, (i + 2) % 5 + 5));
        }
        Self::from_edge_list(10, &pairs).expect("petersen edges are in range")
    }

    /// Wheel: hub 0 joined to every vertex of the rim cycle `1..=rim`.
    pub fn wheel(rim: usize) -> Self {
        let mut pairs: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
        for i in 1..=rim {
            pairs.push((i, i % rim + 1));
        }
        Self::from_edge_list(rim + 1, &pairs).expect("wheel edges are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, each pair `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges.iter().all(|&(u, v)| {
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return false,
                }
            }
            true
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Replaces edge `(u, v)` with a path `u - w - v` through a new vertex `w = n`.
    pub fn subdivide_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::input(format!("edge ({u},{v}) is not in the graph")));
        }
        let key = (u.min(v), u.max(v));
        let w = self.n;
        let mut pairs: Vec<_> = self.edges.iter().copied().filter(|&e| e != key).collect();
        pairs.push((u, w));
        pairs.push((w, v));
        let mut out = Graph::from_edge_list(self.n + 1, &pairs)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// Subgraph with vertex `v` removed; remaining ids shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let pairs: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        Graph::from_edge_list(self.n - 1, &pairs).expect("shifted edges are in range")
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n || !is_permutation(perm, self.n) {
            return Err(Error::input(
                "relabeling is not a permutation of the vertices",
            ));
        }
        let pairs: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        Graph::from_edge_list(self.n, &pairs)
    }

    pub fn labels(&self) -> &BTreeMap<usize, VertexRole> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&VertexRole> {
        self.labels.get(&v)
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, VertexRole>) -> Result<Graph> {
        if let Some((&v, _)) = labels.iter().find(|(&v, _)| v >= self.n) {
            return Err(Error::input(format!("label for missing vertex {v}")));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Role name to vertex id, as written to the label sidecar.
    pub fn layout(&self) -> BTreeMap<String, usize> {
        self.labels
            .iter()
            .map(|(&v, role)| (role.name(), v))
            .collect()
    }

    /// DIMACS edge format with 1-based vertex ids.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p edge {} {}", self.n, self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    pub fn parse_dimacs(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut pairs = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(Error::parse(line_no, "duplicate problem line"));
                    }
                    if fields.len() != 4 || fields[1] != "edge" {
                        return Err(Error::parse(line_no, "expected `p edge <n> <m>`"));
                    }
                    let n = parse_count(fields[2], line_no)?;
                    let m = parse_count(fields[3], line_no)?;
                    header = Some((n, m));
                }
                "e" => {
                    let (n, _) =
                        header.ok_or_else(|| Error::parse(line_no, "edge before problem line"))?;
                    if fields.len() != 3 {
                        return Err(Error::parse(line_no, "expected `e <u> <v>`"));
                    }
                    let u = parse_vertex(fields[1], n, line_no)?;
                    let v = parse_vertex(fields[2], n, line_no)?;
                    if u == v {
                        return Err(Error::parse(
                            line_no,
                            format!("self-loop at vertex {}", u + 1),
                        ));
                    }
                    pairs.push((u, v));
                }
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("unknown line type `{other}`"),
                    ));
                }
            }
        }
        let (n, m) =
            header.ok_or_else(|| Error::parse(last_line.max(1), "missing problem line"))?;
        if pairs.len() != m {
            return Err(Error::parse(
                last_line.max(1),
                format!("header declares {m} edges but {} were given", pairs.len()),
            ));
        }
        Graph::from_edge_list(n, &pairs)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dimacs())
    }
}

fn parse_count(field: &str, line: usize) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("`{field}` is not a non-negative integer")))
}

fn parse_vertex(field: &str, n: usize, line: usize) -> Result<usize> {
    let id: usize = parse_count(field, line)?;
    if id == 0 || id > n {
        return Err(Error::parse(line, format!("vertex {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n
        && order.iter().all(|&v| {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
            true
        })
}

/// A claimed hamiltonian cycle, listed as a vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianWitness {
    pub order: Vec<usize>,
}

impl HamiltonianWitness {
    pub fn new(order: Vec<usize>) -> Self {
        HamiltonianWitness { order }
    }

    /// `h v1 v2 ... vn` with 1-based ids.
    pub fn to_line(&self) -> String {
        let mut out = String::from("h");
        for v in &self.order {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut found = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut fields = line.split_whitespace();
            if fields.next() != Some("h") || found.is_some() {
                return Err(Error::parse(
                    idx + 1,
                    "expected a single `h v1 ... vn` line",
                ));
            }
            let order = fields
                .map(|f| match f.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::parse(idx + 1, format!("bad vertex id `{f}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            found = Some(HamiltonianWitness { order });
        }
        found.ok_or_else(|| Error::parse(1, "missing `h` line"))
    }
}

/// True iff `w` lists every vertex exactly once and cyclically consecutive
/// vertices are adjacent.
pub fn verify_hamiltonian_cycle(g: &Graph, w: &HamiltonianWitness) -> bool {
    let n = g.vertex_count();
    if n < 3 || !is_permutation(&w.order, n) {
        return false;
    }
    (0..n).all(|i| g.has_edge(w.order[i], w.order[(i + 1) % n]))
}
