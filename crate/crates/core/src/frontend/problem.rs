use std::collections::BTreeMap;
use std::fmt;

use crate::logic::{Clause, Origin, Symbol, Term};
use crate::model::{constants_of, domain_of, is_function_free};

/// A parsed clause set with its signature.
#[derive(Clone, Debug, Default)]
pub struct Problem {
    pub clauses: Vec<Clause>,
    /// Role of each clause as written in the input (`axiom`, ...).
    pub roles: Vec<String>,
    pub predicates: BTreeMap<Symbol, usize>,
    /// Function symbols of positive arity.
    pub functors: BTreeMap<Symbol, usize>,
    pub constants: Vec<Term>,
    pub is_epr: bool,
}

impl Problem {
    pub fn new(clauses: Vec<Clause>) -> Self {
        let roles = vec!["axiom".to_owned(); clauses.len()];
        Self::with_roles(clauses, roles)
    }

    pub(crate) fn with_roles(clauses: Vec<Clause>, roles: Vec<String>) -> Self {
        let mut predicates = BTreeMap::new();
        let mut functors = BTreeMap::new();
        for c in &clauses {
            for l in &c.literals {
                predicates.insert(l.predicate(), l.atom.args().len());
                for a in l.atom.args() {
                    a.for_each_symbol(&mut |s, arity| {
                        if arity > 0 {
                            functors.insert(s, arity);
                        }
                    });
                }
            }
        }
        Problem {
            constants: constants_of(&clauses),
            is_epr: is_function_free(&clauses),
            clauses,
            roles,
            predicates,
            functors,
        }
    }

    /// Constants, or one fresh constant when there are none.
    pub fn domain(&self) -> Vec<Term> {
        domain_of(&self.clauses)
    }

    pub fn name_of(&self, i: usize) -> String {
        match &self.clauses[i].origin {
            Origin::Input { name } if !name.is_empty() => name.clone(),
            _ => format!("c{}", self.clauses[i].id),
        }
    }
}

/// TPTP CNF text; parsing it back yields variant-identical clauses.
impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            writeln!(f, "cnf({}, {}, ({})).", self.name_of(i), self.roles[i], c)?;
        }
        Ok(())
    }
}
