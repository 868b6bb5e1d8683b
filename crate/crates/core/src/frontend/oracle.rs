use thiserror::Error;

use super::Problem;
use crate::ground::PropAbstraction;
use crate::logic::{Clause, ClauseId, Literal, Origin, Term};
use crate::model::{for_each_grounding, ground_instance_count, ModelCertificate};
use crate::sat::{SatResult, Solver};

/// Default cap on the number of ground clauses the oracle will build.
pub const DEFAULT_GROUND_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("problem has function symbols; grounding would not terminate")]
    NotEpr,
    #[error("grounding needs about {estimate} clauses, above the bound of {bound}")]
    TooLarge { estimate: u64, bound: u64 },
}

#[derive(Clone, Debug)]
pub struct OracleOutcome {
    /// `None` when unsatisfiable.
    pub model: Option<ModelCertificate>,
    pub ground_clauses: usize,
}

impl OracleOutcome {
    pub fn is_satisfiable(&self) -> bool {
        self.model.is_some()
    }

    pub fn status(&self) -> &'static str {
        if self.is_satisfiable() {
            "Satisfiable"
        } else {
            "Unsatisfiable"
        }
    }
}

/// Every ground instance over the domain, clause by clause.
pub fn ground_all(clauses: &[Clause], domain: &[Term]) -> Vec<Vec<Literal>> {
    let mut out = Vec::new();
    for c in clauses {
        for_each_grounding(&c.vars(), domain, |g| {
            out.push(g.apply_literals(&c.literals));
            true
        });
    }
    out
}

/// Decides a function-free problem by full grounding over its constants and
/// one SAT call.
pub fn herbrand_oracle(p: &Problem, bound: u64) -> Result<OracleOutcome, OracleError> {
    herbrand_oracle_over(p, p.domain(), bound)
}

/// As [`herbrand_oracle`], grounding over an explicit domain, which must
/// contain every constant of the problem.
pub fn herbrand_oracle_over(
    p: &Problem,
    domain: Vec<Term>,
    bound: u64,
) -> Result<OracleOutcome, OracleError> {
    if !p.is_epr {
        return Err(OracleError::NotEpr);
    }
    debug_assert!(p.constants.iter().all(|c| domain.contains(c)));
    let estimate = p
        .clauses
        .iter()
        .map(|c| ground_instance_count(c, domain.len()))
        .fold(0u64, u64::saturating_add);
    if estimate > bound {
        return Err(OracleError::TooLarge { estimate, bound });
    }
    let ground = ground_all(&p.clauses, &domain);
    let mut abstraction = PropAbstraction::new();
    let mut solver = Solver::new();
    for (n, lits) in ground.iter().enumerate() {
        let c = Clause::new(
            ClauseId(n as u32),
            lits.clone(),
            Origin::Input {
                name: String::new(),
            },
        );
        let i = abstraction.add_clause(&c);
        solver.add_clause(&abstraction.clauses()[i]);
    }
    let model = match solver.solve() {
        SatResult::Unsat => None,
        SatResult::Sat(a) => {
            let mut cert = ModelCertificate::new(domain);
            for v in 1..=abstraction.num_vars() {
                if a.value(v) {
                    cert.push(Literal::pos(abstraction.atom(v as u32).clone()), None);
                }
            }
            Some(cert)
        }
    };
    Ok(OracleOutcome {
        model,
        ground_clauses: ground.len(),
    })
}
