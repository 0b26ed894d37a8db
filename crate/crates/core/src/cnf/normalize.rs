//! Rewrites a CNF into the shape the 3-SAT construction consumes: every clause
//! has exactly three literals over three distinct variables, and every
//! variable occurs positively at least once.

use serde::{Deserialize, Serialize};

use super::{Assignment, CnfFormula, Literal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "note", rename_all = "snake_case")]
pub enum NormalizationNote {
    DuplicateLiteralsRemoved {
        clause: usize,
    },
    TautologyDropped {
        clause: usize,
    },
    /// A short clause expanded with fresh variables (numbered before renaming).
    Padded {
        clause: usize,
        fresh: Vec<usize>,
    },
    /// A long clause chained into 3-literal clauses through fresh variables.
    Split {
        clause: usize,
        fresh: Vec<usize>,
    },
    PolarityFlipped {
        var: usize,
    },
    UnusedDropped {
        var: usize,
    },
}

/// Where an input variable went.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VarOrigin {
    Kept { var: usize, flipped: bool },
    Dropped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub formula: CnfFormula,
    pub notes: Vec<NormalizationNote>,
    /// Indexed by input variable - 1.
    pub origins: Vec<VarOrigin>,
}

impl Normalized {
    /// Translates an assignment of the normalized formula back to the input's
    /// variables. Dropped variables are set to false.
    pub fn to_source(&self, a: &Assignment) -> Assignment {
        Assignment(
            self.origins
                .iter()
                .map(|o| match *o {
                    VarOrigin::Kept { var, flipped } => a.value(var) != flipped,
                    VarOrigin::Dropped => false,
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "notes": self.notes,
            "origins": self.origins,
            "var_count": self.formula.var_count,
            "clause_count": self.formula.clause_count(),
        }))
        .expect("notes serialize")
    }
}

/// True iff `f` already has the shape the reduction requires.
pub fn is_normalized(f: &CnfFormula) -> bool {
    let mut positive = vec![false; f.var_count];
    let shaped = f.clauses.iter().all(|c| {
        let mut vars: Vec<usize> = c.iter().map(|l| l.unsigned_abs() as usize).collect();
        vars.sort_unstable();
        vars.dedup();
        for &l in c {
            if l > 0 {
                positive[l as usize - 1] = true;
            }
        }
        c.len() == 3 && vars.len() == 3
    });
    shaped && positive.iter().all(|&p| p)
}

pub fn normalize_for_reduction(f: &CnfFormula) -> Normalized {
    let mut notes = Vec::new();
    let mut next_var = f.var_count;
    let mut fresh = |count: usize| -> Vec<usize> {
        (0..count)
            .map(|_| {
                next_var += 1;
                next_var
            })
            .collect()
    };
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    for (idx, clause) in f.clauses.iter().enumerate() {
        let number = idx + 1;
        let mut lits: Vec<Literal> = Vec::with_capacity(clause.len());
        for &l in clause {
            if !lits.contains(&l) {
                lits.push(l);
            }
        }
        if lits.len() != clause.len() {
            notes.push(NormalizationNote::DuplicateLiteralsRemoved { clause: number });
        }
        if lits.iter().any(|&l| lits.contains(&-l)) {
            notes.push(NormalizationNote::TautologyDropped { clause: number });
            continue;
        }
        match lits.len() {
            3 => clauses.push(lits),
            0..=2 => {
                let extra = fresh(3 - lits.len());
                for signs in 0..(1u32 << extra.len()) {
                    let mut c = lits.clone();
                    for (bit, &y) in extra.iter().enumerate() {
                        let y = y as Literal;
                        c.push(if signs >> bit & 1 == 0 { y } else { -y });
                    }
                    clauses.push(c);
                }
                notes.push(NormalizationNote::Padded {
                    clause: number,
                    fresh: extra,
                });
            }
            len => {
                // (l1 l2 y1)(-y1 l3 y2)...(-y_{len-3} l_{len-1} l_len)
                let chain = fresh(len - 3);
                let link = |i: usize| chain[i] as Literal;
                clauses.push(vec![lits[0], lits[1], link(0)]);
                for i in 1..chain.len() {
                    clauses.push(vec![-link(i - 1), lits[i + 1], link(i)]);
                }
                clauses.push(vec![-link(chain.len() - 1), lits[len - 2], lits[len - 1]]);
                notes.push(NormalizationNote::Split {
                    clause: number,
                    fresh: chain,
                });
            }
        }
    }

    let total = next_var;
    let mut pos = vec![0usize; total + 1];
    let mut neg = vec![0usize; total + 1];
    for &l in clauses.iter().flatten() {
        let v = l.unsigned_abs() as usize;
        if l > 0 {
            pos[v] += 1;
        } else {
            neg[v] += 1;
        }
    }
    let flipped: Vec<bool> = (0..=total).map(|v| pos[v] == 0 && neg[v] > 0).collect();
    let mut rename = vec![0usize; total + 1];
    let mut kept = 0;
    for v in 1..=total {
        if flipped[v] {
            notes.push(NormalizationNote::PolarityFlipped { var: v });
        }
        if pos[v] + neg[v] == 0 {
            notes.push(NormalizationNote::UnusedDropped { var: v });
        } else {
            kept += 1;
            rename[v] = kept;
        }
    }
    let clauses = clauses
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|l| {
                    let v = l.unsigned_abs() as usize;
                    let sign = if (l > 0) != flipped[v] { 1 } else { -1 };
                    sign * rename[v] as Literal
                })
                .collect()
        })
        .collect();
    let origins = (1..=f.var_count)
        .map(|v| {
            if rename[v] == 0 {
                VarOrigin::Dropped
            } else {
                VarOrigin::Kept {
                    var: rename[v],
                    flipped: flipped[v],
                }
            }
        })
        .collect();
    Normalized {
        formula: CnfFormula {
            var_count: kept,
            clauses,
        },
        notes,
        origins,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{brute_force_sat, evaluate};

    fn cnf(n: usize, clauses: &[&[Literal]]) -> CnfFormula {
        CnfFormula::new(n, clauses.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn check_equisat(f: &CnfFormula) {
        let norm = normalize_for_reduction(f);
        assert!(is_normalized(&norm.formula), "{:?}", norm.formula);
        let before = brute_force_sat(f).unwrap();
        let after = brute_force_sat(&norm.formula).unwrap();
        assert_eq!(before.is_some(), after.is_some());
        if let Some(a) = after {
            assert!(evaluate(f, &norm.to_source(&a)));
        }
    }

    #[test]
    fn unit_clause_is_padded() {
        let f = cnf(1, &[&[1]]);
        let norm = normalize_for_reduction(&f);
        assert_eq!(norm.formula.clause_count(), 4);
        assert_eq!(norm.formula.var_count, 3);
        check_equisat(&f);
    }

    #[test]
    fn negative_only_variable_is_flipped() {
        let f = cnf(3, &[&[1, -2, 3]]);
        let norm = normalize_for_reduction(&f);
        assert_eq!(norm.formula.clauses, vec![vec![1, 2, 3]]);
        assert!(norm
            .notes
            .contains(&NormalizationNote::PolarityFlipped { var: 2 }));
        assert_eq!(
            norm.origins[1],
            VarOrigin::Kept {
                var: 2,
                flipped: true
            }
        );
        check_equisat(&f);
    }

    #[test]
    fn tautology_is_dropped() {
        let f = cnf(2, &[&[1, -1, 2]]);
        let norm = normalize_for_reduction(&f);
        assert!(norm.formula.clauses.is_empty());
        assert_eq!(
            norm.notes[0],
            NormalizationNote::TautologyDropped { clause: 1 }
        );
        assert_eq!(norm.origins, vec![VarOrigin::Dropped, VarOrigin::Dropped]);
    }

    #[test]
    fn mixed_shapes_stay_equisatisfiable() {
        check_equisat(&cnf(2, &[&[1, 1, 2], &[-1], &[-2, 1]]));
        check_equisat(&cnf(5, &[&[1, 2, 3, 4, 5], &[-1, -2, -3, -4, -5], &[-5]]));
        check_equisat(&cnf(2, &[&[1], &[-1]]));
        check_equisat(&cnf(1, &[&[]]));
        check_equisat(&cnf(4, &[&[1, 2, 3]]));
    }
}
