//! The clause block used by the 3-SAT construction.
//!
//! A gadget is a small triangle-free graph with three input ports and one
//! output vertex. In the host graph each port gets exactly one edge to a
//! literal vertex and the output gets exactly one edge to a `b` backbone
//! vertex. Certification models those four neighbors as stub vertices whose
//! colors are fixed, enumerates every 3-coloring of the inner vertices, and
//! checks:
//!
//! * property 1: with all three input stubs colored 0, every valid inner
//!   coloring gives the output color 0 (whatever the output stub's color);
//! * property 2: for every other input pattern in `{0,1}^3`, with the output
//!   stub colored 0, some valid inner coloring gives the output color 1.
//!
//! C1 is checked on inner and stub edges; C2 only on inner vertices, with the
//! stub colors counted in their neighborhoods.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest inner size certification accepts (10 cases x 3^12 < 10^7 checks).
pub const MAX_INNER: usize = 12;

const COLORS: usize = 3;

pub type StubPattern = [usize; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseGadget {
    pub inner: Graph,
    pub ports: [usize; 3],
    pub output: usize,
    /// Inner coloring with output color 1, per non-zero input pattern.
    pub witness_table: BTreeMap<StubPattern, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCertificate {
    pub stubs: StubPattern,
    pub output_stub: usize,
    pub valid_colorings: u64,
    /// Output colors that occur in at least one valid inner coloring.
    pub output_colors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub property: u8,
    pub stubs: StubPattern,
    pub output_stub: usize,
    /// For property 1, the offending coloring; for property 2 and stored
    /// witnesses, the coloring that failed (if any).
    pub coloring: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetReport {
    pub property1_holds: bool,
    pub property2_holds: bool,
    pub witnesses_valid: bool,
    /// Property 1 holds only because no valid coloring exists at all.
    pub property1_vacuous: bool,
    pub counterexample: Option<Counterexample>,
    pub certificate: Vec<CaseCertificate>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.property1_holds && self.property2_holds && self.witnesses_valid
    }
}

/// A gadget whose report passed; the only form the reduction accepts.
#[derive(Clone, Debug)]
pub struct CertifiedGadget {
    gadget: ClauseGadget,
    report: GadgetReport,
}

impl CertifiedGadget {
    pub fn gadget(&self) -> &ClauseGadget {
        &self.gadget
    }

    pub fn report(&self) -> &GadgetReport {
        &self.report
    }

    pub fn digest(&self) -> String {
        self.gadget.digest()
    }

    pub fn witness(&self, stubs: StubPattern) -> Option<&[usize]> {
        self.gadget.witness_table.get(&stubs).map(Vec::as_slice)
    }

    pub fn to_fixture_json(&self) -> String {
        self.gadget.fixture_json(Some(&self.report))
    }
}

impl ClauseGadget {
    pub fn size(&self) -> usize {
        self.inner.vertex_count()
    }

    pub fn check_structure(&self) -> Result<()> {
        let n = self.size();
        if n > MAX_INNER {
            return Err(Error::input(format!(
                "gadget has {n} inner vertices, limit is {MAX_INNER}"
            )));
        }
        let mut boundary = self.ports.to_vec();
        boundary.push(self.output);
        if boundary.iter().any(|&v| v >= n) {
            return Err(Error::input("port or output vertex out of range"));
        }
        let mut sorted = boundary.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != 4 {
            return Err(Error::input(
                "ports and output must be four distinct vertices",
            ));
        }
        if !self.inner.is_triangle_free() {
            return Err(Error::input("gadget contains a triangle"));
        }
        if self.inner.max_degree() > 3 {
            return Err(Error::input("gadget has an inner vertex of degree > 3"));
        }
        if let Some(&v) = boundary.iter().find(|&&v| self.inner.degree(v) > 2) {
            return Err(Error::input(format!(
                "boundary vertex {v} has inner degree > 2"
            )));
        }
        Ok(())
    }

    pub fn certify(self) -> Result<CertifiedGadget> {
        self.certify_with_jobs(1)
    }

    pub fn certify_with_jobs(self, jobs: usize) -> Result<CertifiedGadget> {
        let report = verify_clause_gadget_with_jobs(&self, jobs)?;
        if !report.passed() {
            return Err(Error::input(format!(
                "gadget failed certification: {:?}",
                report.counterexample
            )));
        }
        Ok(CertifiedGadget {
            gadget: self,
            report,
        })
    }

    /// SHA-256 over the structural part (edges, ports, output).
    pub fn digest(&self) -> String {
        let shape = serde_json::json!({
            "inner_vertex_count": self.size(),
            "edges": self.inner.edges(),
            "ports": self.ports,
            "output": self.output,
        });
        let bytes = Sha256::digest(shape.to_string().as_bytes());
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn fixture_json(&self, report: Option<&GadgetReport>) -> String {
        let file = FixtureFile {
            inner_vertex_count: self.size(),
            edges: self.inner.edges().to_vec(),
            ports: self.ports,
            output: self.output,
            witness_table: self
                .witness_table
                .iter()
                .map(|(&stubs, colors)| WitnessEntry {
                    stubs,
                    colors: colors.clone(),
                })
                .collect(),
            certificate: report.map(|r| r.certificate.clone()).unwrap_or_default(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("fixture serializes");
        text.push('\n');
        text
    }

    pub fn to_fixture_json(&self) -> String {
        self.fixture_json(None)
    }

    /// Loads a fixture; the certificate section is informational and is
    /// recomputed by certification rather than trusted.
    pub fn from_fixture_json(text: &str) -> Result<ClauseGadget> {
        let file: FixtureFile =
            serde_json::from_str(text).map_err(|e| Error::input(format!("gadget fixture: {e}")))?;
        let inner = Graph::from_edge_list(file.inner_vertex_count, &file.edges)?;
        let mut witness_table = BTreeMap::new();
        for entry in file.witness_table {
            if entry.colors.len() != file.inner_vertex_count {
                return Err(Error::input("witness coloring does not cover the gadget"));
            }
            witness_table.insert(entry.stubs, entry.colors);
        }
        let gadget = ClauseGadget {
            inner,
            ports: file.ports,
            output: file.output,
            witness_table,
        };
        gadget.check_structure()?;
        Ok(gadget)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessEntry {
    stubs: StubPattern,
    colors: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FixtureFile {
    inner_vertex_count: usize,
    edges: Vec<(usize, usize)>,
    ports: [usize; 3],
    output: usize,
    witness_table: Vec<WitnessEntry>,
    #[serde(default)]
    certificate: Vec<CaseCertificate>,
}

/// Inner graph plus stub colors, flattened for fast repeated checks.
struct Boundary<'a> {
    gadget: &'a ClauseGadget,
    /// Per inner vertex, the stub colors it is adjacent to.
    stub_colors: Vec<Vec<usize>>,
}

impl<'a> Boundary<'a> {
    fn new(gadget: &'a ClauseGadget, stubs: StubPattern, output_stub: usize) -> Self {
        let mut stub_colors = vec![Vec::new(); gadget.size()];
        for (i, &p) in gadget.ports.iter().enumerate() {
            stub_colors[p].push(stubs[i]);
        }
        stub_colors[gadget.output].push(output_stub);
        Boundary {
            gadget,
            stub_colors,
        }
    }

    fn valid(&self, colors: &[usize]) -> bool {
        let g = &self.gadget.inner;
        for v in 0..g.vertex_count() {
            let own = colors[v];
            let mut seen = [false; COLORS];
            let mut degree = 0;
            for &u in g.neighbors(v) {
                if colors[u] == own {
                    return false;
                }
                seen[colors[u]] = true;
                degree += 1;
            }
            for &s in &self.stub_colors[v] {
                if s == own {
                    return false;
                }
                seen[s] = true;
                degree += 1;
            }
            if seen.iter().filter(|&&b| b).count() < degree.min(2) {
                return false;
            }
        }
        true
    }

    /// Visits every valid inner coloring in odometer order.
    fn for_each_valid(&self, mut visit: impl FnMut(&[usize]) -> bool) {
        let n = self.gadget.size();
        let mut colors = vec![0usize; n];
        loop {
            if self.valid(&colors) && !visit(&colors) {
                return;
            }
            let mut i = 0;
            while i < n && colors[i] + 1 == COLORS {
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                return;
            }
            colors[i] += 1;
        }
    }
}

struct CaseResult {
    certificate: CaseCertificate,
    /// First valid coloring whose output color differs from 0.
    nonzero_output: Option<Vec<usize>>,
    /// First valid coloring with output color 1.
    output_one: Option<Vec<usize>>,
}

fn run_case(g: &ClauseGadget, stubs: StubPattern, output_stub: usize) -> CaseResult {
    let boundary = Boundary::new(g, stubs, output_stub);
    let mut count = 0u64;
    let mut outputs = [false; COLORS];
    let mut nonzero_output = None;
    let mut output_one = None;
    boundary.for_each_valid(|colors| {
        count += 1;
        let out = colors[g.output];
        outputs[out] = true;
        if out != 0 && nonzero_output.is_none() {
            nonzero_output = Some(colors.to_vec());
        }
        if out == 1 && output_one.is_none() {
            output_one = Some(colors.to_vec());
        }
        true
    });
    CaseResult {
        certificate: CaseCertificate {
            stubs,
            output_stub,
            valid_colorings: count,
            output_colors: (0..COLORS).filter(|&c| outputs[c]).collect(),
        },
        nonzero_output,
        output_one,
    }
}

/// Boundary cases in certification order: the all-zero input with every
/// output stub color, then the seven other input patterns with output stub 0.
pub fn boundary_cases() -> Vec<(StubPattern, usize)> {
    let mut cases: Vec<_> = (0..COLORS).map(|t| ([0, 0, 0], t)).collect();
    for bits in 1..8usize {
        cases.push(([bits >> 2 & 1, bits >> 1 & 1, bits & 1], 0));
    }
    cases
}

pub fn verify_clause_gadget(g: &ClauseGadget) -> Result<GadgetReport> {
    verify_clause_gadget_with_jobs(g, 1)
}

/// Certification with the boundary cases split across `jobs` threads; the
/// merged report does not depend on `jobs`.
pub fn verify_clause_gadget_with_jobs(g: &ClauseGadget, jobs: usize) -> Result<GadgetReport> {
    g.check_structure()?;
    let cases = boundary_cases();
    let results: Vec<CaseResult> = if jobs <= 1 {
        cases.iter().map(|&(s, t)| run_case(g, s, t)).collect()
    } else {
        let mut slots: Vec<Option<CaseResult>> = (0..cases.len()).map(|_| None).collect();
        std::thread::scope(|scope| {
            let chunk = cases.len().div_ceil(jobs);
            for (case_chunk, slot_chunk) in cases.chunks(chunk).zip(slots.chunks_mut(chunk)) {
                scope.spawn(move || {
                    for (&(s, t), slot) in case_chunk.iter().zip(slot_chunk.iter_mut()) {
                        *slot = Some(run_case(g, s, t));
                    }
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.expect("every case ran"))
            .collect()
    };

    let mut counterexample = None;
    let mut property1 = true;
    let mut any_p1_coloring = false;
    let mut property2 = true;
    for res in &results {
        let cert = &res.certificate;
        if cert.stubs == [0, 0, 0] {
            any_p1_coloring |= cert.valid_colorings > 0;
            if let Some(bad) = &res.nonzero_output {
                property1 = false;
                counterexample.get_or_insert_with(|| Counterexample {
                    property: 1,
                    stubs: cert.stubs,
                    output_stub: cert.output_stub,
                    coloring: Some(bad.clone()),
                    detail: format!("output takes color {} with all inputs 0", bad[g.output]),
                });
            }
        } else if res.output_one.is_none() {
            property2 = false;
            counterexample.get_or_insert_with(|| Counterexample {
                property: 2,
                stubs: cert.stubs,
                output_stub: cert.output_stub,
                coloring: None,
                detail: "no valid coloring gives the output color 1".into(),
            });
        }
    }

    let mut witnesses_valid = true;
    for &(stubs, t) in cases.iter().filter(|(s, _)| *s != [0, 0, 0]) {
        let boundary = Boundary::new(g, stubs, t);
        let problem = match g.witness_table.get(&stubs) {
            None => Some((None, "witness missing".to_string())),
            Some(w) if w.len() != g.size() || w.iter().any(|&c| c >= COLORS) => {
                Some((Some(w.clone()), "witness malformed".to_string()))
            }
            Some(w) if !boundary.valid(w) => Some((
                Some(w.clone()),
                "witness violates a coloring condition".to_string(),
            )),
            Some(w) if w[g.output] != 1 => Some((
                Some(w.clone()),
                "witness does not color the output 1".to_string(),
            )),
            Some(_) => None,
        };
        if let Some((coloring, detail)) = problem {
            witnesses_valid = false;
            counterexample.get_or_insert(Counterexample {
                property: 2,
                stubs,
                output_stub: t,
                coloring,
                detail,
            });
        }
    }

    Ok(GadgetReport {
        property1_holds: property1,
        property2_holds: property2,
        witnesses_valid,
        property1_vacuous: property1 && !any_p1_coloring,
        counterexample,
        certificate: results.into_iter().map(|r| r.certificate).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisLimits {
    pub max_inner: usize,
    /// Total number of candidate graphs examined.
    pub budget: usize,
    pub seed: u64,
}

impl Default for SynthesisLimits {
    fn default() -> Self {
        SynthesisLimits {
            max_inner: MAX_INNER,
            budget: 200_000,
            seed: 0,
        }
    }
}

/// Random triangle-free candidate on `n` vertices: ports `0,1,2`, output `3`.
fn random_candidate(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let cap = |v: usize| if v < 4 { 2 } else { 3 };
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let max_edges = (4 * 2 + (n - 4) * 3) / 2;
    let target = rng.gen_range(n - 1..=max_edges);
    let mut adj = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if edges.len() >= target {
            break;
        }
        if adj[u].len() >= cap(u) || adj[v].len() >= cap(v) {
            continue;
        }
        if adj[u].iter().any(|w| adj[v].contains(w)) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
        edges.push((u, v));
    }
    Graph::from_edge_list(n, &edges).expect("candidate edges are in range")
}

/// Cheap rejection before full certification: property 2 needs a
/// coloring per pattern, property 1 needs no nonzero output.
fn quick_reject(g: &ClauseGadget) -> bool {
    for (stubs, t) in boundary_cases() {
        let boundary = Boundary::new(g, stubs, t);
        let mut hit = false;
        let want_one = stubs != [0, 0, 0];
        boundary.for_each_valid(|colors| {
            let out = colors[g.output];
            hit = if want_one { out == 1 } else { out != 0 };
            !hit
        });
        if hit != want_one {
            return true;
        }
    }
    false
}

/// Searches random triangle-free candidates, smallest sizes first, for a
/// gadget with both properties and a non-vacuous property 1. Deterministic
/// in `limits`.
pub fn synthesize_clause_gadget(limits: SynthesisLimits) -> Result<CertifiedGadget> {
    if limits.max_inner < 4 {
        return Err(Error::Synthesis(format!(
            "max_inner = {} cannot hold three distinct ports and an output; raise it to at least 4",
            limits.max_inner
        )));
    }
    if limits.max_inner > MAX_INNER {
        return Err(Error::Synthesis(format!(
            "max_inner = {} exceeds the certification cap {MAX_INNER}",
            limits.max_inner
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let sizes = limits.max_inner - 3;
    let per_size = (limits.budget / sizes).max(1);
    for n in 4..=limits.max_inner {
        for _ in 0..per_size {
            let inner = random_candidate(n, &mut rng);
            let mut gadget = ClauseGadget {
                inner,
                ports: [0, 1, 2],
                output: 3,
                witness_table: BTreeMap::new(),
            };
            if quick_reject(&gadget) {
                continue;
            }
            for (stubs, t) in boundary_cases().into_iter().skip(COLORS) {
                let res = run_case(&gadget, stubs, t);
                gadget
                    .witness_table
                    .insert(stubs, res.output_one.expect("quick check found one"));
            }
            let report = verify_clause_gadget(&gadget)?;
            if report.passed() && !report.property1_vacuous {
                return Ok(CertifiedGadget { gadget, report });
            }
        }
    }
    Err(Error::Synthesis(format!(
        "no gadget found within {} candidates up to {} inner vertices; raise the budget or max_inner",
        limits.budget, limits.max_inner
    )))
}

const SHIPPED_FIXTURE: &str = include_str!("../fixtures/clause_gadget.json");

pub fn shipped_fixture_json() -> &'static str {
    SHIPPED_FIXTURE
}

/// The pinned gadget, certified once per process.
pub fn shipped_gadget() -> &'static CertifiedGadget {
    static GADGET: OnceLock<CertifiedGadget> = OnceLock::new();
    GADGET.get_or_init(|| {
        ClauseGadget::from_fixture_json(SHIPPED_FIXTURE)
            .and_then(ClauseGadget::certify)
            .expect("shipped gadget fixture certifies")
    })
}
