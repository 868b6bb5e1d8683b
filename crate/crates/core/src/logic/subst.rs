use std::collections::BTreeMap;
use std::fmt;

use super::{Clause, Literal, Term, TermKind, Var};

/// A finite map from variables to terms. Identity bindings are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Self {
        let mut s = Self::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    /// Inserts `v ↦ t`, overwriting any earlier binding. `v ↦ v` removes it.
    pub fn bind(&mut self, v: Var, t: Term) {
        if t.as_var() == Some(v) {
            self.bindings.remove(&v);
        } else {
            self.bindings.insert(v, t);
        }
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.bindings.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Term)> {
        self.bindings.iter().map(|(v, t)| (*v, t))
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.bindings.keys().copied()
    }

    /// Replaces every bound variable simultaneously.
    pub fn apply(&self, t: &Term) -> Term {
        if self.is_empty() || t.is_ground() {
            return t.clone();
        }
        match t.kind() {
            TermKind::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            TermKind::App(f, args) => {
                let mapped: Vec<Term> = args.iter().map(|a| self.apply(a)).collect();
                if mapped.iter().zip(args.iter()).all(|(m, a)| m == a) {
                    t.clone()
                } else {
                    Term::app(*f, mapped)
                }
            }
        }
    }

    pub fn apply_literal(&self, l: &Literal) -> Literal {
        Literal::new(l.positive, self.apply(&l.atom))
    }

    pub fn apply_literals(&self, lits: &[Literal]) -> Vec<Literal> {
        lits.iter().map(|l| self.apply_literal(l)).collect()
    }

    /// Instance of `c` under this substitution, keeping id and origin.
    pub fn apply_clause(&self, c: &Clause) -> Clause {
        Clause {
            id: c.id,
            literals: self.apply_literals(&c.literals),
            origin: c.origin.clone(),
        }
    }

    /// `self` followed by `then`: applying the result equals applying
    /// `self` and afterwards `then`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            out.bind(*v, then.apply(t));
        }
        for (v, t) in &then.bindings {
            if !self.bindings.contains_key(v) {
                out.bind(*v, t.clone());
            }
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|t| self.bindings.keys().all(|v| !t.occurs(*v)))
    }

    /// True if every binding maps to a variable and no two variables share
    /// an image.
    pub fn is_renaming(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.bindings
            .values()
            .all(|t| t.as_var().is_some_and(|v| seen.insert(v)))
    }

    /// Keeps only bindings for the given variables.
    pub fn restrict(&self, vars: &[Var]) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(v, t)| (*v, t.clone()))
                .collect(),
        }
    }

    /// Extends `self` to a one-way matcher with `self(general) = specific`,
    /// binding only variables of `general`. Leaves `self` unspecified on
    /// failure.
    pub fn extend_match(&mut self, general: &Term, specific: &Term) -> bool {
        match general.kind() {
            TermKind::Var(v) => match self.bindings.get(v) {
                Some(bound) => bound == specific,
                None => {
                    self.bindings.insert(*v, specific.clone());
                    true
                }
            },
            TermKind::App(f, xs) => {
                if general.is_ground() {
                    return general == specific;
                }
                match specific.kind() {
                    TermKind::App(g, ys) if f == g && xs.len() == ys.len() => xs
                        .iter()
                        .zip(ys.iter())
                        .all(|(x, y)| self.extend_match(x, y)),
                    _ => false,
                }
            }
        }
    }

    /// Drops `v ↦ v` entries that `extend_match` may have recorded.
    pub(crate) fn prune_identity(&mut self) {
        self.bindings.retain(|v, t| t.as_var() != Some(*v));
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}->{t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
