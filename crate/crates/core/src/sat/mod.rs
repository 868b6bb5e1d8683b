//! Propositional satisfiability: CNF representation, a DPLL-style
//! simplification step, and an incremental CDCL solver.

mod dimacs;
mod solver;

pub use dimacs::DimacsError;
pub use solver::Solver;

use std::fmt::Write as _;

/// Clauses over variables `1..=num_vars`; a negative number is a negated
/// variable.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PropCnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl PropCnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        debug_assert!(clauses
            .iter()
            .flatten()
            .all(|l| *l != 0 && l.unsigned_abs() as usize <= num_vars));
        PropCnf { num_vars, clauses }
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| a.lit_value(l)))
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Vec::is_empty)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<PropCnf, DimacsError> {
        dimacs::parse(text)
    }
}

/// A total truth assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn all_false(num_vars: usize) -> Self {
        Assignment {
            values: vec![false; num_vars + 1],
        }
    }

    pub fn from_values(values: &[bool]) -> Self {
        let mut a = Self::all_false(values.len());
        a.values[1..].copy_from_slice(values);
        a
    }

    pub fn num_vars(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.values[var] = value;
    }

    pub fn lit_value(&self, lit: i32) -> bool {
        let v = self.values[lit.unsigned_abs() as usize];
        if lit > 0 {
            v
        } else {
            !v
        }
    }

    /// `v 1 -2 3 0` model line.
    pub fn to_dimacs_line(&self) -> String {
        let mut out = String::from("v");
        for v in 1..=self.num_vars() {
            let _ = write!(
                out,
                " {}",
                if self.values[v] {
                    v as i64
                } else {
                    -(v as i64)
                }
            );
        }
        out.push_str(" 0");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Assignment),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

pub fn solve(cnf: &PropCnf) -> SatResult {
    let mut solver = Solver::new();
    solver.add_cnf(cnf);
    solver.solve()
}

/// Result of fixing one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub cnf: PropCnf,
    /// Some clause lost all its literals.
    pub conflict: bool,
}

/// Sets `var` to `value`: satisfied clauses are dropped, falsified
/// occurrences deleted.
pub fn simplify(cnf: &PropCnf, var: usize, value: bool) -> Simplified {
    assert!(var >= 1 && var <= cnf.num_vars, "variable out of range");
    let true_lit = if value { var as i32 } else { -(var as i32) };
    let clauses: Vec<Vec<i32>> = cnf
        .clauses
        .iter()
        .filter(|c| !c.contains(&true_lit))
        .map(|c| c.iter().copied().filter(|&l| l != -true_lit).collect())
        .collect();
    let conflict = clauses.iter().any(Vec::is_empty);
    Simplified {
        cnf: PropCnf {
            num_vars: cnf.num_vars,
            clauses,
        },
        conflict,
    }
}

/// Exhaustive unit propagation from the empty assignment. Returns the forced
/// values, or `None` when propagation derives the empty clause.
pub fn unit_propagate(cnf: &PropCnf) -> Option<Vec<Option<bool>>> {
    let mut values = vec![None; cnf.num_vars + 1];
    let mut current = cnf.clone();
    loop {
        if current.has_empty_clause() {
            return None;
        }
        let Some(unit) = current.clauses.iter().find(|c| c.len() == 1).map(|c| c[0]) else {
            return Some(values);
        };
        let var = unit.unsigned_abs() as usize;
        values[var] = Some(unit > 0);
        current = simplify(&current, var, unit > 0).cnf;
    }
}
