//! Grounding every variable to one reserved constant, and the propositional
//! abstraction that bridges clause sets to the SAT solver.

use std::fmt::Write as _;

use indexmap::IndexMap;

use crate::logic::{Clause, ClauseId, Literal, Substitution, Symbol, Term, TermKind};
use crate::sat::{Assignment, PropCnf};

/// Name of the reserved grounding constant. Inputs may not use it.
pub const BOTTOM_NAME: &str = "$bot";

pub fn bottom() -> Term {
    Term::constant(Symbol::intern(BOTTOM_NAME))
}

pub fn bottom_term(t: &Term) -> Term {
    if t.is_ground() {
        return t.clone();
    }
    match t.kind() {
        TermKind::Var(_) => bottom(),
        TermKind::App(f, args) => Term::app(*f, args.iter().map(bottom_term).collect()),
    }
}

pub fn bottom_literal(l: &Literal) -> Literal {
    Literal::new(l.positive, bottom_term(&l.atom))
}

/// The ground instance of `c` with every variable replaced by `$bot`.
pub fn bottom_ground(c: &Clause) -> Clause {
    Clause {
        id: c.id,
        literals: c.literals.iter().map(bottom_literal).collect(),
        origin: c.origin.clone(),
    }
}

/// The substitution mapping each variable of `c` to `$bot`.
pub fn bottom_substitution(c: &Clause) -> Substitution {
    Substitution::from_pairs(c.vars().into_iter().map(|v| (v, bottom())))
}

/// True when the term mentions the reserved constant.
pub fn mentions_bottom(t: &Term) -> bool {
    let bot = Symbol::intern(BOTTOM_NAME);
    let mut found = false;
    t.for_each_symbol(&mut |s, _| found |= s == bot);
    found
}

/// Bijection between grounded atoms and propositional variables, plus the
/// abstracted clauses. Grows incrementally.
#[derive(Default, Clone)]
pub struct PropAbstraction {
    atoms: IndexMap<Term, u32>,
    cnf: Vec<Vec<i32>>,
    sources: Vec<ClauseId>,
}

impl PropAbstraction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_clauses<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Self {
        let mut abs = Self::new();
        for c in clauses {
            abs.add_clause(c);
        }
        abs
    }

    pub fn num_vars(&self) -> usize {
        self.atoms.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.cnf.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.cnf
    }

    /// Source clause of a propositional clause.
    pub fn source(&self, prop_clause: usize) -> ClauseId {
        self.sources[prop_clause]
    }

    pub fn atom(&self, var: u32) -> &Term {
        self.atoms.get_index(var as usize - 1).unwrap().0
    }

    /// Variable for an already grounded atom, allocating a new one if needed.
    fn var_for(&mut self, ground_atom: Term) -> u32 {
        let next = self.atoms.len() as u32 + 1;
        *self.atoms.entry(ground_atom).or_insert(next)
    }

    /// Signed variable of the grounded literal, if its atom is known.
    pub fn lit_of(&self, l: &Literal) -> Option<i32> {
        let v = *self.atoms.get(&bottom_term(&l.atom))? as i32;
        Some(if l.positive { v } else { -v })
    }

    /// Abstracts one clause and returns the index of its propositional image.
    pub fn add_clause(&mut self, c: &Clause) -> usize {
        let lits = c
            .literals
            .iter()
            .map(|l| {
                let v = self.var_for(bottom_term(&l.atom)) as i32;
                if l.positive {
                    v
                } else {
                    -v
                }
            })
            .collect();
        self.cnf.push(lits);
        self.sources.push(c.id);
        self.cnf.len() - 1
    }

    pub fn to_cnf(&self) -> PropCnf {
        PropCnf::new(self.num_vars(), self.cnf.clone())
    }

    /// DIMACS text with a comment line per variable naming its atom.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (atom, v) in &self.atoms {
            let _ = writeln!(out, "c {v} {atom}");
        }
        out.push_str(&self.to_cnf().to_dimacs());
        out
    }
}

/// One chosen literal index per clause, every choice true under the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub choices: Vec<usize>,
}

impl Path {
    pub fn selected<'a>(&self, clauses: &'a [impl AsRef<Clause>]) -> Vec<&'a Literal> {
        clauses
            .iter()
            .zip(&self.choices)
            .map(|(c, &i)| &c.as_ref().literals[i])
            .collect()
    }
}

/// Picks, for each clause, the first literal whose grounded image is true in
/// `assignment`. Because the assignment is consistent the choices never
/// contain a complementary grounded pair.
pub fn extract_path(
    assignment: &Assignment,
    clauses: &[impl AsRef<Clause>],
    abstraction: &PropAbstraction,
) -> Path {
    let choices = clauses
        .iter()
        .map(|c| {
            c.as_ref()
                .literals
                .iter()
                .position(|l| {
                    abstraction
                        .lit_of(l)
                        .is_some_and(|p| assignment.lit_value(p))
                })
                .expect("assignment satisfies the abstraction")
        })
        .collect();
    Path { choices }
}
