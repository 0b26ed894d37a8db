//! `condcolor`: batch front end for conditional coloring.
//!
//! Exit codes: 0 for a yes answer or success, 1 for a correct no answer or a
//! failed certification, 2 for usage and input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use condcolor::cnf::{
    brute_force_sat_bounded, evaluate, normalize_for_reduction, Assignment, CnfFormula,
    BRUTE_FORCE_VAR_LIMIT,
};
use condcolor::coloring::{
    chi_r, encode_kr_as_cnf, solve_kr, verify_coloring, ColoringParams, ConditionalColoring,
};
use condcolor::gadgets::{
    shipped_fixture_json, synthesize_clause_gadget, verify_clause_gadget_with_jobs,
    CertifiedGadget, ClauseGadget, SynthesisLimits, MAX_INNER,
};
use condcolor::graph::{Graph, HamiltonianWitness};
use condcolor::reductions::{
    extract_assignment, lift_assignment, reduce_3sat_to_32col, reduce_ham_3col_to_32col,
    reduce_kcol_to_krcol, reduce_planar_ham_3col_to_32col, ReductionArtifact,
};

#[derive(Parser)]
#[command(
    name = "condcolor",
    version,
    about = "Conditional (k,r)-coloring toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph has a (k,r)-coloring.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        r: usize,
        /// Where to write the coloring JSON when one exists.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Compute the conditional chromatic number.
    Chi {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        r: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check a coloring JSON against a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Write the CNF encoding of the (k,r)-coloring question.
    Encode {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        r: usize,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a reduction and write its artifact bundle.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Synthesize or certify the clause gadget.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Normalize, reduce, solve and extract, then compare with brute-force SAT.
    Roundtrip {
        #[arg(long)]
        cnf: PathBuf,
        /// Largest variable count the brute-force side accepts.
        #[arg(long, default_value_t = BRUTE_FORCE_VAR_LIMIT)]
        oracle_bound: usize,
        #[command(flatten)]
        fixture: FixtureArg,
    },
}

#[derive(Args)]
struct BundleArgs {
    /// Path prefix for the bundle files.
    #[arg(long)]
    out: PathBuf,
    /// Override for the layout JSON path.
    #[arg(long)]
    layout: Option<PathBuf>,
}

#[derive(Args)]
struct FixtureArg {
    /// Gadget fixture to use instead of the shipped one.
    #[arg(long)]
    fixture: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// k-coloring to (k,r)-coloring by clique attachment.
    Kcol {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        r: usize,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// 3-SAT to (3,2)-coloring.
    Sat3 {
        #[arg(long)]
        cnf: PathBuf,
        #[command(flatten)]
        fixture: FixtureArg,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// 3-coloring of a hamiltonian graph to (3,2)-coloring.
    Ham {
        #[arg(long)]
        graph: PathBuf,
        /// Hamiltonian cycle of the input, as an `h v1 ... vn` line.
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Planar variant of `ham`; planarity of the input is not checked.
    Planar {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        bundle: BundleArgs,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Search for a certified gadget and write it as a fixture.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = MAX_INNER)]
        max_inner: usize,
        #[arg(long, default_value_t = SynthesisLimits::default().budget)]
        budget: usize,
    },
    /// Re-certify a fixture and print the report.
    Verify {
        #[command(flatten)]
        fixture: FixtureArg,
    },
}

/// Failure that ends the command with a given exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<condcolor::Error> for Failure {
    fn from(e: condcolor::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse_dimacs(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_cnf(path: &Path) -> Result<CnfFormula, Failure> {
    CnfFormula::parse_dimacs(&read(path)?)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_gadget(arg: &FixtureArg) -> Result<CertifiedGadget, Failure> {
    let text = match &arg.fixture {
        Some(path) => read(path)?,
        None => shipped_fixture_json().to_string(),
    };
    let gadget = ClauseGadget::from_fixture_json(&text)?;
    let report = verify_clause_gadget_with_jobs(&gadget, arg.jobs)?;
    if !report.passed() {
        return Err(Failure {
            code: 1,
            message: format!(
                "gadget fails certification: {}",
                serde_json::to_string(&report.counterexample).expect("report serializes")
            ),
        });
    }
    Ok(gadget.certify_with_jobs(arg.jobs)?)
}

fn params(k: usize, r: usize) -> Result<ColoringParams, Failure> {
    Ok(ColoringParams::new(k, r)?)
}

fn write_bundle(art: &ReductionArtifact, bundle: &BundleArgs) -> Result<(), Failure> {
    for (suffix, contents) in art.bundle_files() {
        let path = match (&bundle.layout, suffix) {
            (Some(layout), ".layout.json") => layout.clone(),
            _ => {
                let mut name = bundle.out.clone().into_os_string();
                name.push(suffix);
                PathBuf::from(name)
            }
        };
        write(&path, &contents)?;
        println!("wrote {}", path.display());
    }
    println!("{}", art.summary());
    Ok(())
}

fn cmd_solve(graph: &Path, k: usize, r: usize, witness: Option<&Path>) -> Outcome {
    let g = load_graph(graph)?;
    let p = params(k, r)?;
    match solve_kr(&g, p) {
        Some(c) => {
            println!("yes: ({k},{r})-colorable");
            if let Some(path) = witness {
                write(path, &c.to_json())?;
            }
            Ok(0)
        }
        None => {
            println!("no: not ({k},{r})-colorable");
            Ok(1)
        }
    }
}

fn cmd_chi(graph: &Path, r: usize, witness: Option<&Path>) -> Outcome {
    let g = load_graph(graph)?;
    params(1, r)?;
    let (chi, c) = chi_r(&g, r);
    println!("{chi}");
    if let Some(path) = witness {
        write(path, &c.to_json())?;
    }
    Ok(0)
}

fn cmd_verify(graph: &Path, witness: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let c = ConditionalColoring::from_json(&read(witness)?)?;
    let verdict = verify_coloring(&g, &c)?;
    if verdict.ok {
        println!("valid ({},{})-coloring", c.params.k, c.params.r);
        Ok(0)
    } else {
        println!("invalid: {} violation(s)", verdict.violations.len());
        for v in &verdict.violations {
            println!("  {v:?}");
        }
        Ok(1)
    }
}

fn cmd_encode(graph: &Path, k: usize, r: usize, out: Option<&Path>) -> Outcome {
    let g = load_graph(graph)?;
    let (f, layout) = encode_kr_as_cnf(&g, params(k, r)?);
    let text = layout.to_dimacs(&f);
    match out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_reduce(cmd: &ReduceCommand) -> Outcome {
    let (art, bundle) = match cmd {
        ReduceCommand::Kcol {
            graph,
            k,
            r,
            bundle,
        } => (
            reduce_kcol_to_krcol(&load_graph(graph)?, params(*k, *r)?)?,
            bundle,
        ),
        ReduceCommand::Sat3 {
            cnf,
            fixture,
            bundle,
        } => {
            let f = load_cnf(cnf)?;
            let norm = normalize_for_reduction(&f);
            if norm.formula != f {
                println!(
                    "normalized: {} variables, {} clauses ({} rewrite notes)",
                    norm.formula.var_count,
                    norm.formula.clause_count(),
                    norm.notes.len()
                );
            }
            let gadget = load_gadget(fixture)?;
            (reduce_3sat_to_32col(&norm.formula, &gadget)?, bundle)
        }
        ReduceCommand::Ham {
            graph,
            witness,
            bundle,
        } => {
            let w = HamiltonianWitness::parse(&read(witness)?)?;
            (reduce_ham_3col_to_32col(&load_graph(graph)?, &w)?, bundle)
        }
        ReduceCommand::Planar {
            graph,
            witness,
            bundle,
        } => {
            let w = HamiltonianWitness::parse(&read(witness)?)?;
            (
                reduce_planar_ham_3col_to_32col(&load_graph(graph)?, &w)?,
                bundle,
            )
        }
    };
    write_bundle(&art, bundle)?;
    Ok(0)
}

fn cmd_gadget(cmd: &GadgetCommand) -> Outcome {
    match cmd {
        GadgetCommand::Synth {
            out,
            seed,
            max_inner,
            budget,
        } => {
            let limits = SynthesisLimits {
                max_inner: *max_inner,
                budget: *budget,
                seed: *seed,
            };
            let g = synthesize_clause_gadget(limits)?;
            write(out, &g.to_fixture_json())?;
            println!(
                "certified gadget: {} inner vertices, digest {}",
                g.gadget().size(),
                g.digest()
            );
            println!("wrote {}", out.display());
            Ok(0)
        }
        GadgetCommand::Verify { fixture } => {
            let text = match &fixture.fixture {
                Some(path) => read(path)?,
                None => shipped_fixture_json().to_string(),
            };
            let gadget = ClauseGadget::from_fixture_json(&text)?;
            let report = verify_clause_gadget_with_jobs(&gadget, fixture.jobs)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            println!("digest {}", gadget.digest());
            if report.passed() {
                println!("certified");
                Ok(0)
            } else {
                println!("certification failed");
                Ok(1)
            }
        }
    }
}

fn cmd_roundtrip(cnf: &Path, bound: usize, fixture: &FixtureArg) -> Outcome {
    let f = load_cnf(cnf)?;
    let oracle = brute_force_sat_bounded(&f, bound)?;
    println!(
        "brute force: {}",
        if oracle.is_some() {
            "satisfiable"
        } else {
            "unsatisfiable"
        }
    );

    let norm = normalize_for_reduction(&f);
    if norm.formula.clauses.is_empty() {
        println!("normalized formula has no clauses: trivially satisfiable");
        return Ok(if oracle.is_some() {
            0
        } else {
            disagree(&f, "no clauses left but brute force says no")
        });
    }
    let gadget = load_gadget(fixture)?;
    let art = reduce_3sat_to_32col(&norm.formula, &gadget)?;
    println!("{}", art.summary());

    let coloring = solve_kr(&art.graph, art.params);
    println!(
        "(3,2)-coloring: {}",
        if coloring.is_some() { "found" } else { "none" }
    );
    match (coloring, oracle) {
        (None, None) => {
            println!("agree: no");
            Ok(0)
        }
        (Some(c), Some(_)) => {
            let inner = extract_assignment(&art, &c)?;
            let source = norm.to_source(&inner);
            if !evaluate(&f, &source) {
                return Ok(disagree(
                    &f,
                    "extracted assignment does not satisfy the input",
                ));
            }
            let lifted = lift_assignment(&art, &gadget, &inner)?;
            if !verify_coloring(&art.graph, &lifted)?.ok {
                return Ok(disagree(&f, "lifted coloring fails verification"));
            }
            println!("extracted assignment: {}", render(&source));
            println!("agree: yes");
            Ok(0)
        }
        (Some(_), None) => Ok(disagree(&f, "output colorable but formula unsatisfiable")),
        (None, Some(a)) => Ok(disagree(
            &f,
            &format!(
                "formula satisfiable by {} but output not colorable",
                render(&a)
            ),
        )),
    }
}

fn render(a: &Assignment) -> String {
    a.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn disagree(f: &CnfFormula, detail: &str) -> u8 {
    eprintln!("DISAGREEMENT: {detail}");
    eprintln!("input formula:\n{}", f.to_dimacs());
    let norm = normalize_for_reduction(f);
    eprintln!("normalization: {}", norm.to_json());
    eprintln!("normalized formula:\n{}", norm.formula.to_dimacs());
    1
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Solve {
            graph,
            k,
            r,
            witness,
        } => cmd_solve(graph, *k, *r, witness.as_deref()),
        Command::Chi { graph, r, witness } => cmd_chi(graph, *r, witness.as_deref()),
        Command::Verify { graph, witness } => cmd_verify(graph, witness),
        Command::Encode { graph, k, r, out } => cmd_encode(graph, *k, *r, out.as_deref()),
        Command::Reduce(cmd) => cmd_reduce(cmd),
        Command::Gadget(cmd) => cmd_gadget(cmd),
        Command::Roundtrip {
            cnf,
            oracle_bound,
            fixture,
        } => cmd_roundtrip(cnf, *oracle_bound, fixture),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
