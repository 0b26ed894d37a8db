//! CNF formulas, DIMACS I/O, and two satisfiability back ends: an exhaustive
//! `2^n` oracle for tiny instances and a CDCL solver for encodings.

mod normalize;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use normalize::{
    is_normalized, normalize_for_reduction, NormalizationNote, Normalized, VarOrigin,
};

/// Signed DIMACS literal: `v` for x_v, `-v` for its negation.
pub type Literal = i32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    pub var_count: usize,
    pub clauses: Vec<Vec<Literal>>,
}

pub const BRUTE_FORCE_VAR_LIMIT: usize = 20;

impl CnfFormula {
    pub fn new(var_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > var_count {
                    return Err(Error::input(format!(
                        "clause {} has literal {lit} outside ±1..={var_count}",
                        i + 1
                    )));
                }
            }
        }
        Ok(CnfFormula { var_count, clauses })
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p cnf {} {}", self.var_count, self.clauses.len()).unwrap();
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF. Clauses may span lines; each ends at a `0`.
    /// A line starting with `%` ends the clause section.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 1;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate problem line"));
                }
                if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                    return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
                }
                let parse = |f: &str| {
                    f.parse::<usize>()
                        .map_err(|_| Error::parse(line_no, format!("bad count `{f}`")))
                };
                header = Some((parse(fields[2])?, parse(fields[3])?));
                continue;
            }
            let (vars, _) =
                header.ok_or_else(|| Error::parse(line_no, "clause before problem line"))?;
            for field in line.split_whitespace() {
                let lit: i64 = field
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad literal `{field}`")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() as usize > vars {
                    return Err(Error::parse(
                        line_no,
                        format!("literal {lit} out of range for {vars} variables"),
                    ));
                } else {
                    current.push(lit as Literal);
                }
            }
        }
        let (vars, m) = header.ok_or_else(|| Error::parse(last_line, "missing problem line"))?;
        if !current.is_empty() {
            return Err(Error::parse(
                last_line,
                "last clause is not terminated by 0",
            ));
        }
        if clauses.len() != m {
            return Err(Error::parse(
                last_line,
                format!(
                    "header declares {m} clauses but {} were given",
                    clauses.len()
                ),
            ));
        }
        Ok(CnfFormula {
            var_count: vars,
            clauses,
        })
    }

    /// Solves with a CDCL solver. Returns a model indexed by `var - 1`.
    pub fn solve(&self) -> Option<Vec<bool>> {
        use varisat::{ExtendFormula, Lit, Solver};

        if self.clauses.iter().any(Vec::is_empty) {
            return None;
        }
        let mut solver = Solver::new();
        for clause in &self.clauses {
            let lits: Vec<Lit> = clause
                .iter()
                .map(|&l| Lit::from_dimacs(l as isize))
                .collect();
            solver.add_clause(&lits);
        }
        if !solver.solve().expect("in-memory solving cannot fail") {
            return None;
        }
        let mut model = vec![false; self.var_count];
        for lit in solver.model().expect("model after SAT") {
            let var = lit.var().to_dimacs() as usize;
            if var <= self.var_count {
                model[var - 1] = lit.is_positive();
            }
        }
        Some(model)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn all(var_count: usize, value: bool) -> Self {
        Assignment(vec![value; var_count])
    }

    /// Truth value of variable `var` (1-based).
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn lit(&self, lit: Literal) -> bool {
        let v = self.value(lit.unsigned_abs() as usize);
        if lit > 0 {
            v
        } else {
            !v
        }
    }
}

pub fn evaluate(f: &CnfFormula, a: &Assignment) -> bool {
    assert!(
        a.0.len() >= f.var_count,
        "assignment does not cover the formula"
    );
    f.clauses.iter().all(|c| c.iter().any(|&l| a.lit(l)))
}

/// Exhaustive search over all `2^n` assignments, in binary counting order.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Assignment>> {
    brute_force_sat_bounded(f, BRUTE_FORCE_VAR_LIMIT)
}

pub fn brute_force_sat_bounded(f: &CnfFormula, bound: usize) -> Result<Option<Assignment>> {
    let n = f.var_count;
    if n > bound.min(63) {
        return Err(Error::OracleBound { size: n, bound });
    }
    for bits in 0u64..(1u64 << n) {
        let a = Assignment((0..n).map(|i| bits >> i & 1 == 1).collect());
        if evaluate(f, &a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
