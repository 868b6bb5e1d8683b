//! Model certificates: ordered literal lists read under a most-specific
//! rule, plus helpers for enumerating ground instances over a finite domain.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::logic::{
    is_flat_atom, is_instance_of, is_proper_instance, literal_variant_key, Clause, ClauseId,
    Literal, Substitution, Symbol, Term, TermKind, Var,
};

/// Name of the constant added when a clause set mentions none.
pub const FRESH_CONSTANT: &str = "c0";

/// Constants occurring in argument positions, sorted by name.
pub fn constants_of<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Vec<Term> {
    fn walk(t: &Term, out: &mut BTreeSet<Term>) {
        if let TermKind::App(_, args) = t.kind() {
            for a in args.iter() {
                if a.is_constant() {
                    out.insert(a.clone());
                } else {
                    walk(a, out);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for c in clauses {
        for l in &c.literals {
            walk(&l.atom, &mut out);
        }
    }
    out.into_iter().collect()
}

/// The Herbrand domain of a function-free clause set: its constants, or a
/// single fresh constant when there are none.
pub fn domain_of<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Vec<Term> {
    let mut d = constants_of(clauses);
    if d.is_empty() {
        d.push(Term::constant(Symbol::intern(FRESH_CONSTANT)));
    }
    d
}

/// True when no atom has a compound argument, i.e. the clauses belong to
/// the effectively propositional fragment.
pub fn is_function_free<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> bool {
    clauses
        .into_iter()
        .all(|c| c.literals.iter().all(|l| is_flat_atom(&l.atom)))
}

/// Number of ground instances of `c` over a domain of `size` elements,
/// saturating at `u64::MAX`.
pub fn ground_instance_count(c: &Clause, size: usize) -> u64 {
    let v = c.vars().len() as u32;
    (size as u64).checked_pow(v).unwrap_or(u64::MAX)
}

/// Calls `f` with every ground substitution for `vars` over `domain`, in
/// lexicographic order (first variable varies slowest). Stops early when `f`
/// returns false; the return value reports whether enumeration completed.
pub fn for_each_grounding(
    vars: &[Var],
    domain: &[Term],
    mut f: impl FnMut(&Substitution) -> bool,
) -> bool {
    if domain.is_empty() && !vars.is_empty() {
        return true;
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let s =
            Substitution::from_pairs(vars.iter().zip(&idx).map(|(v, &i)| (*v, domain[i].clone())));
        if !f(&s) {
            return false;
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domain.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// True when `general` has `specific` as an instance (same sign).
pub fn literal_generalizes(general: &Literal, specific: &Literal) -> bool {
    general.positive == specific.positive && atom_generalizes(&general.atom, &specific.atom)
}

pub fn atom_generalizes(general: &Term, specific: &Term) -> bool {
    let mut s = Substitution::new();
    s.extend_match(general, specific)
}

/// `a` is an instance of `b` but not a variant of it (atoms only).
pub fn atom_strictly_more_specific(a: &Term, b: &Term) -> bool {
    atom_generalizes(b, a) && !atom_generalizes(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertLiteral {
    pub literal: Literal,
    /// Clause that contributed the literal, when known.
    pub source: Option<ClauseId>,
}

/// A finite description of an interpretation. A ground atom takes its value
/// from the literals whose atoms generalize it: the most specific ones
/// decide, and among several incomparable most specific literals the one
/// listed last wins. Atoms matched by no literal are false.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelCertificate {
    pub literals: Vec<CertLiteral>,
    pub domain: Vec<Term>,
}

impl ModelCertificate {
    pub fn new(domain: Vec<Term>) -> Self {
        ModelCertificate {
            literals: Vec::new(),
            domain,
        }
    }

    pub fn push(&mut self, literal: Literal, source: Option<ClauseId>) {
        self.literals.push(CertLiteral { literal, source });
    }

    pub fn atom_value(&self, atom: &Term) -> bool {
        decide(self.literals.iter().map(|c| &c.literal), atom)
    }

    pub fn literal_value(&self, l: &Literal) -> bool {
        self.atom_value(&l.atom) == l.positive
    }

    /// True if every literal of the ground clause is false.
    pub fn falsifies(&self, ground: &[Literal]) -> bool {
        ground.iter().all(|l| !self.literal_value(l))
    }

    /// One literal per line, variables renumbered from `X0` per literal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.literals {
            out.push_str(&literal_variant_key(&c.literal).to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ModelCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Value of a ground atom under an ordered literal list, by the
/// most-specific rule with later literals winning ties.
pub fn decide<'a>(literals: impl DoubleEndedIterator<Item = &'a Literal>, atom: &Term) -> bool {
    let matching: Vec<&Literal> = literals
        .rev()
        .filter(|l| atom_generalizes(&l.atom, atom))
        .collect();
    // `matching` runs from last to first, so the first maximal one wins
    for (i, l) in matching.iter().enumerate() {
        let dominated = matching
            .iter()
            .enumerate()
            .any(|(j, m)| j != i && atom_strictly_more_specific(&m.atom, &l.atom));
        if !dominated {
            return l.positive;
        }
    }
    false
}

/// Model of function-free clauses with one selected literal each, built
/// over `domain`. Clauses are taken in order, their ground instances in
/// lexicographic order; an instance is skipped when a more specific clause
/// covers it or it is a tautology, and otherwise makes its selected
/// literal true unless it is already true or that atom is already decided. Non-ground selected
/// literals that agree with every ground instance replace them.
pub fn generation_model(clauses: &[(&Clause, usize)], domain: Vec<Term>) -> ModelCertificate {
    let n = clauses.len();
    let more_specific: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && is_proper_instance(clauses[j].0, clauses[i].0))
                .collect()
        })
        .collect();
    // ground atom -> (value, generating clause index)
    let mut interp: HashMap<Term, (bool, usize)> = HashMap::new();
    for (i, &(c, k)) in clauses.iter().enumerate() {
        for_each_grounding(&c.vars(), &domain, |g| {
            let inst = g.apply_literals(&c.literals);
            if more_specific[i]
                .iter()
                .any(|&j| is_instance_of(&inst, &clauses[j].0.literals))
            {
                return true;
            }
            let is_true = inst.iter().enumerate().any(|(a, l)| {
                interp.get(&l.atom).is_some_and(|(v, _)| *v == l.positive)
                    || inst[a + 1..].iter().any(|m| m.is_complement_of(l))
            });
            if !is_true && !interp.contains_key(&inst[k].atom) {
                interp.insert(inst[k].atom.clone(), (inst[k].positive, i));
            }
            true
        });
    }

    let mut cert = ModelCertificate::new(domain.clone());
    let mut covered: HashSet<Term> = HashSet::new();
    for &(c, k) in clauses {
        let lit = &c.literals[k];
        if lit.is_ground() || covered.contains(&lit.atom) {
            continue;
        }
        let mut atoms = Vec::new();
        let complete = for_each_grounding(&lit.atom.vars(), &domain, |g| {
            let atom = g.apply(&lit.atom);
            let ok = interp.get(&atom).is_some_and(|(v, _)| *v == lit.positive);
            atoms.push(atom);
            ok
        });
        if complete && atoms.iter().any(|a| !covered.contains(a)) {
            covered.extend(atoms);
            cert.push(lit.clone(), Some(c.id));
        }
    }
    let mut rest: Vec<_> = interp
        .into_iter()
        .filter(|(atom, _)| !covered.contains(atom))
        .collect();
    rest.sort_by(|a, b| a.0.cmp(&b.0));
    for (atom, (value, i)) in rest {
        cert.push(Literal::new(value, atom), Some(clauses[i].0.id));
    }
    cert
}
