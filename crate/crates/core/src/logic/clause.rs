use std::fmt;
use std::sync::Arc;

use super::{Substitution, Symbol, Term, TermKind, Var};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Term,
}

impl Literal {
    pub fn new(positive: bool, atom: Term) -> Self {
        Literal { positive, atom }
    }

    pub fn pos(atom: Term) -> Self {
        Literal::new(true, atom)
    }

    pub fn neg(atom: Term) -> Self {
        Literal::new(false, atom)
    }

    pub fn complement(&self) -> Literal {
        Literal::new(!self.positive, self.atom.clone())
    }

    pub fn predicate(&self) -> Symbol {
        self.atom
            .head()
            .expect("literal atoms are applications of a predicate symbol")
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    pub fn is_complement_of(&self, other: &Literal) -> bool {
        self.positive != other.positive && self.atom == other.atom
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClauseId(pub u32);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Where a clause came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Input {
        name: String,
    },
    Derived {
        engine: &'static str,
        parents: Vec<ClauseId>,
        subst: Substitution,
    },
}

/// A disjunction of literals with implicitly universally quantified
/// variables. The empty clause is falsity.
#[derive(Clone, Debug)]
pub struct Clause {
    pub id: ClauseId,
    pub literals: Vec<Literal>,
    pub origin: Origin,
}

impl Clause {
    pub fn new(id: ClauseId, literals: Vec<Literal>, origin: Origin) -> Self {
        Clause {
            id,
            literals,
            origin,
        }
    }

    pub fn input(id: u32, name: impl Into<String>, literals: Vec<Literal>) -> Self {
        Clause::new(ClauseId(id), literals, Origin::Input { name: name.into() })
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for l in &self.literals {
            l.atom.collect_vars(&mut out);
        }
        out
    }

    pub fn max_var(&self) -> Option<u32> {
        self.literals.iter().filter_map(|l| l.atom.max_var()).max()
    }

    /// Contains a literal together with its exact complement.
    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .enumerate()
            .any(|(i, l)| self.literals[i + 1..].iter().any(|k| k.is_complement_of(l)))
    }

    pub fn parents(&self) -> &[ClauseId] {
        match &self.origin {
            Origin::Input { .. } => &[],
            Origin::Derived { parents, .. } => parents,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("$false");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl AsRef<Clause> for Clause {
    fn as_ref(&self) -> &Clause {
        self
    }
}

pub type ClauseRef = Arc<Clause>;

/// Source of fresh variables. One instance per engine run.
#[derive(Clone, Debug, Default)]
pub struct VarSupply {
    next: u32,
}

impl VarSupply {
    pub fn new() -> Self {
        Self::default()
    }

    /// A supply whose variables are disjoint from all given clauses.
    pub fn above<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Self {
        let next = clauses
            .into_iter()
            .filter_map(Clause::max_var)
            .max()
            .map_or(0, |m| m + 1);
        VarSupply { next }
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }

    /// A renaming of `vars` onto fresh variables.
    pub fn renaming(&mut self, vars: &[Var]) -> Substitution {
        Substitution::from_pairs(vars.iter().map(|v| (*v, Term::var(self.fresh()))))
    }
}

/// A variant of `c` whose variables are all fresh.
pub fn rename_apart(c: &Clause, supply: &mut VarSupply) -> Clause {
    let renaming = supply.renaming(&c.vars());
    renaming.apply_clause(c)
}

pub fn rename_literal(l: &Literal, supply: &mut VarSupply) -> Literal {
    supply.renaming(&l.atom.vars()).apply_literal(l)
}

/// Canonical representative of the variant class of a literal list:
/// variables renumbered 0, 1, ... in order of first occurrence.
pub fn variant_key(lits: &[Literal]) -> Vec<Literal> {
    let mut vars = Vec::new();
    for l in lits {
        l.atom.collect_vars(&mut vars);
    }
    let canon = Substitution::from_pairs(
        vars.iter()
            .enumerate()
            .map(|(i, v)| (*v, Term::var(Var(i as u32)))),
    );
    lits.iter().map(|l| canon.apply_literal(l)).collect()
}

pub fn literal_variant_key(l: &Literal) -> Literal {
    variant_key(std::slice::from_ref(l)).pop().unwrap()
}

/// One-way matcher mapping `general` literal-wise onto `specific`.
pub fn clause_matcher(general: &[Literal], specific: &[Literal]) -> Option<Substitution> {
    if general.len() != specific.len() {
        return None;
    }
    let mut s = Substitution::new();
    for (g, sp) in general.iter().zip(specific) {
        if g.positive != sp.positive || !s.extend_match(&g.atom, &sp.atom) {
            return None;
        }
    }
    s.prune_identity();
    Some(s)
}

pub fn is_instance_of(specific: &[Literal], general: &[Literal]) -> bool {
    clause_matcher(general, specific).is_some()
}

pub fn is_variant(c1: &Clause, c2: &Clause) -> bool {
    c1.len() == c2.len() && variant_key(&c1.literals) == variant_key(&c2.literals)
}

/// `c1` is an instance of `c2` but not a variant of it.
pub fn is_proper_instance(c1: &Clause, c2: &Clause) -> bool {
    is_instance_of(&c1.literals, &c2.literals) && !is_variant(c1, c2)
}

/// True when the term contains no nested applications below the top level.
pub(crate) fn is_flat_atom(atom: &Term) -> bool {
    match atom.kind() {
        TermKind::Var(_) => false,
        TermKind::App(_, args) => args.iter().all(|a| a.is_var() || a.is_constant()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::notation::{clause, lit};

    #[test]
    fn complement_is_involutive() {
        let l = lit("~P(x,b)");
        assert_eq!(l.complement().complement(), l);
        assert!(l.complement().positive);
    }

    #[test]
    fn rename_apart_examples() {
        let mut supply = VarSupply::new();
        let c = clause("P(x,y)");
        let mut supply_high = VarSupply::above([&c]);
        let r = rename_apart(&c, &mut supply_high);
        assert!(is_variant(&c, &r));
        assert!(r.vars().iter().all(|v| !c.vars().contains(v)));

        let g = clause("~R(b,c)");
        assert_eq!(rename_apart(&g, &mut supply).literals, g.literals);

        let p = clause("P(x)");
        let r1 = rename_apart(&p, &mut supply);
        let r2 = rename_apart(&p, &mut supply);
        assert!(r1.vars().iter().all(|v| !r2.vars().contains(v)));
    }

    #[test]
    fn variant_examples() {
        assert!(is_variant(&clause("P(x,y)"), &clause("P(u,v)")));
        assert!(!is_variant(&clause("P(x,x)"), &clause("P(u,v)")));
        assert!(is_variant(
            &clause("~P(a,z) | Q(a,z)"),
            &clause("~P(a,w) | Q(a,w)")
        ));
        // literal order matters
        assert!(!is_variant(
            &clause("~P(a,z) | Q(a,z)"),
            &clause("Q(a,w) | ~P(a,w)")
        ));
    }

    #[test]
    fn proper_instance_examples() {
        assert!(is_proper_instance(&clause("P(a,z)"), &clause("P(x,y)")));
        assert!(!is_proper_instance(&clause("P(x,y)"), &clause("P(u,v)")));
        assert!(!is_proper_instance(&clause("P(x,y)"), &clause("P(a,z)")));
        assert!(is_proper_instance(&clause("P(x,x)"), &clause("P(x,y)")));
    }

    #[test]
    fn tautology_detection() {
        assert!(clause("P(x) | Q(a) | ~P(x)").is_tautology());
        assert!(!clause("P(x) | ~P(y)").is_tautology());
    }
}
