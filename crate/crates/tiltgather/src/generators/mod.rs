//! Instance families: the 3SAT hardness reduction, the chimney lower bound,
//! the DSP-adversarial maze, and seeded random mazes and configurations.

mod adversarial;
mod chimney;
mod hardness;
mod random;

pub use adversarial::gen_dsp_adversarial;
pub use chimney::gen_chimney;
pub use hardness::{assignment_sequence, gen_hardness, HardnessMeta};
pub use random::{gen_random_config, gen_random_polyomino};

use thiserror::Error;

use crate::grid::GridError;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("formula has no clauses")]
    NoClauses,
    #[error("formula has no variables")]
    NoVariables,
    #[error("clause {clause}: literal {literal} out of range for {vars} variables")]
    BadLiteral { clause: usize, literal: i32, vars: usize },
    #[error("clause {clause} has {len} literals, expected 3")]
    ClauseWidth { clause: usize, len: usize },
    #[error("line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("assignment has {got} values, formula has {expected} variables")]
    Arity { expected: usize, got: usize },
    #[error("chimney height must be odd and positive, got {0}")]
    ChimneyHeight(u32),
    #[error("invalid dimensions: {0}")]
    Dimensions(String),
    #[error("fill ratio {0} cannot be reached")]
    InfeasibleFill(f64),
    #[error("missing or malformed meta field {0:?}")]
    Meta(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A 3-CNF formula over variables `1..=variable_count`; literal `-i` negates `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<[i32; 3]>) -> Result<Self, GenError> {
        if variable_count == 0 {
            return Err(GenError::NoVariables);
        }
        if clauses.is_empty() {
            return Err(GenError::NoClauses);
        }
        for (clause, lits) in clauses.iter().enumerate() {
            for &literal in lits {
                if literal == 0 || literal.unsigned_abs() as usize > variable_count {
                    return Err(GenError::BadLiteral { clause, literal, vars: variable_count });
                }
            }
        }
        Ok(CnfFormula { variable_count, clauses })
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// Simplified DIMACS: `c` comment lines, a `p cnf <vars> <clauses>` header,
    /// then clauses as whitespace-separated literals each terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self, GenError> {
        let mut vars = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
                continue;
            }
            if let Some(rest) = t.strip_prefix('p') {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 3 || f[0] != "cnf" {
                    return Err(GenError::Dimacs { line: line_no, msg: "expected `p cnf <vars> <clauses>`".into() });
                }
                let v = f[1].parse().map_err(|_| GenError::Dimacs { line: line_no, msg: "bad variable count".into() })?;
                vars = Some(v);
                continue;
            }
            if vars.is_none() {
                return Err(GenError::Dimacs { line: line_no, msg: "clause before header".into() });
            }
            for tok in t.split_whitespace() {
                let lit: i32 =
                    tok.parse().map_err(|_| GenError::Dimacs { line: line_no, msg: format!("bad literal {tok:?}") })?;
                if lit == 0 {
                    let len = current.len();
                    let c: [i32; 3] = std::mem::take(&mut current)
                        .try_into()
                        .map_err(|_| GenError::ClauseWidth { clause: clauses.len(), len })?;
                    clauses.push(c);
                } else {
                    current.push(lit);
                }
            }
        }
        if !current.is_empty() {
            return Err(GenError::Dimacs { line: text.lines().count(), msg: "last clause not terminated by 0".into() });
        }
        let vars = vars.ok_or(GenError::Dimacs { line: 0, msg: "missing header".into() })?;
        CnfFormula::new(vars, clauses)
    }
}
