use thiserror::Error;

use super::Problem;
use crate::logic::{Clause, Literal, Term};
use crate::model::{for_each_grounding, ModelCertificate};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("problem has function symbols; checking every ground instance would not terminate")]
    NotEpr,
}

/// The first ground instance over the problem's domain that the
/// certificate falsifies, if any.
pub fn find_falsified_instance(
    p: &Problem,
    cert: &ModelCertificate,
) -> Result<Option<Vec<Literal>>, VerifyError> {
    if !p.is_epr {
        return Err(VerifyError::NotEpr);
    }
    Ok(find_falsified_instance_over(&p.clauses, &p.domain(), cert))
}

/// The first ground instance over `domain` falsified by the certificate.
pub fn find_falsified_instance_over(
    clauses: &[Clause],
    domain: &[Term],
    cert: &ModelCertificate,
) -> Option<Vec<Literal>> {
    let mut found = None;
    for c in clauses {
        for_each_grounding(&c.vars(), domain, |g| {
            let inst = g.apply_literals(&c.literals);
            if cert.falsifies(&inst) {
                found = Some(inst);
                false
            } else {
                true
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// True iff every ground instance of every clause over the problem's
/// domain is true under the certificate.
pub fn verify_model(p: &Problem, cert: &ModelCertificate) -> Result<bool, VerifyError> {
    find_falsified_instance(p, cert).map(|f| f.is_none())
}
