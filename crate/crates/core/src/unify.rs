//! Robinson unification, one-way matching and link detection.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::logic::{
    Clause, ClauseId, ClauseRef, Literal, Substitution, Symbol, Term, TermKind, Var,
};

/// Triangular variable bindings with an undo trail, for search procedures
/// that unify incrementally and backtrack.
#[derive(Default, Clone)]
pub struct Bindings {
    map: HashMap<Var, Term>,
    trail: Vec<Var>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.map.remove(&v);
        }
    }

    fn walk(&self, t: &Term) -> Term {
        let mut cur = t.clone();
        while let Some(v) = cur.as_var() {
            match self.map.get(&v) {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }

    fn occurs(&self, v: Var, t: &Term) -> bool {
        let t = self.walk(t);
        if t.is_ground() {
            return false;
        }
        match t.kind() {
            TermKind::Var(w) => *w == v,
            TermKind::App(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }

    fn bind(&mut self, v: Var, t: Term) {
        self.map.insert(v, t);
        self.trail.push(v);
    }

    /// Unifies under the current bindings. On failure the bindings are left
    /// partially extended; undo to a mark taken beforehand.
    pub fn unify(&mut self, a: &Term, b: &Term) -> bool {
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((x, y)) = stack.pop() {
            let x = self.walk(&x);
            let y = self.walk(&y);
            if x == y {
                continue;
            }
            match (x.kind(), y.kind()) {
                (TermKind::Var(v), _) => {
                    if self.occurs(*v, &y) {
                        return false;
                    }
                    self.bind(*v, y.clone());
                }
                (_, TermKind::Var(w)) => {
                    if self.occurs(*w, &x) {
                        return false;
                    }
                    self.bind(*w, x.clone());
                }
                (TermKind::App(f, xs), TermKind::App(g, ys)) => {
                    if f != g || xs.len() != ys.len() {
                        return false;
                    }
                    for (s, t) in xs.iter().zip(ys.iter()).rev() {
                        stack.push((s.clone(), t.clone()));
                    }
                }
            }
        }
        true
    }

    /// Applies the bindings exhaustively.
    pub fn resolve(&self, t: &Term) -> Term {
        if t.is_ground() {
            return t.clone();
        }
        let t = self.walk(t);
        match t.kind() {
            TermKind::Var(_) => t,
            TermKind::App(f, args) => Term::app(*f, args.iter().map(|a| self.resolve(a)).collect()),
        }
    }

    /// The idempotent substitution equivalent to these bindings.
    pub fn to_substitution(&self) -> Substitution {
        let mut vars: Vec<Var> = self.map.keys().copied().collect();
        vars.sort();
        Substitution::from_pairs(vars.into_iter().map(|v| (v, self.resolve(&Term::var(v)))))
    }
}

/// Most general unifier of two terms, or `None` on symbol clash or occurs
/// check failure.
pub fn mgu(a: &Term, b: &Term) -> Option<Substitution> {
    let mut bindings = Bindings::new();
    bindings.unify(a, b).then(|| bindings.to_substitution())
}

/// Simultaneous most general unifier of several term pairs.
pub fn mgu_all<'a>(pairs: impl IntoIterator<Item = (&'a Term, &'a Term)>) -> Option<Substitution> {
    let mut bindings = Bindings::new();
    for (a, b) in pairs {
        if !bindings.unify(a, b) {
            return None;
        }
    }
    Some(bindings.to_substitution())
}

/// One-way matcher: binds only variables of `general` so that it becomes
/// `specific`.
pub fn match_terms(general: &Term, specific: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    if s.extend_match(general, specific) {
        s.prune_identity();
        Some(s)
    } else {
        None
    }
}

/// A pair of opposite-polarity literals in two clauses whose atoms unify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub left: ClauseId,
    pub left_lit: usize,
    pub right: ClauseId,
    pub right_lit: usize,
    /// Renaming applied to the right clause before unification. Empty unless
    /// the link joins a clause with a copy of itself.
    pub right_renaming: Substitution,
    pub mgu: Substitution,
}

impl Link {
    pub fn left_instance(&self, left: &Clause) -> Vec<Literal> {
        self.mgu.apply_literals(&left.literals)
    }

    pub fn right_instance(&self, right: &Clause) -> Vec<Literal> {
        let renamed = self.right_renaming.apply_literals(&right.literals);
        self.mgu.apply_literals(&renamed)
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}.{} ~ {}.{} {}",
            self.left, self.left_lit, self.right, self.right_lit, self.mgu
        )
    }
}

/// Literal occurrences bucketed by predicate and polarity.
#[derive(Default, Clone)]
pub struct LinkIndex {
    clauses: Vec<ClauseRef>,
    buckets: HashMap<(Symbol, bool), Vec<(usize, usize)>>,
}

impl LinkIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_clauses(clauses: impl IntoIterator<Item = ClauseRef>) -> Self {
        let mut index = Self::new();
        for c in clauses {
            index.insert(c);
        }
        index
    }

    pub fn insert(&mut self, clause: ClauseRef) {
        let pos = self.clauses.len();
        for (i, l) in clause.literals.iter().enumerate() {
            self.buckets
                .entry((l.predicate(), l.positive))
                .or_default()
                .push((pos, i));
        }
        self.clauses.push(clause);
    }

    pub fn clauses(&self) -> &[ClauseRef] {
        &self.clauses
    }

    /// Occurrences that could complement `l`: same predicate, opposite sign.
    pub fn candidates(&self, l: &Literal) -> impl Iterator<Item = (&ClauseRef, usize)> {
        self.buckets
            .get(&(l.predicate(), !l.positive))
            .into_iter()
            .flatten()
            .map(|&(pos, i)| (&self.clauses[pos], i))
    }

    /// Every link between a literal of `c` and an indexed literal.
    pub fn links_for(&self, c: &Clause) -> Vec<Link> {
        let mut out = Vec::new();
        for (i, l) in c.literals.iter().enumerate() {
            for (d, j) in self.candidates(l) {
                if let Some(link) = link_between(c, i, d, j) {
                    out.push(link);
                }
            }
        }
        out
    }
}

/// The link between literal `i` of `c` and literal `j` of `d`, if their
/// atoms unify and polarities differ. A clause linked with itself is
/// paired with a renamed copy.
pub fn link_between(c: &Clause, i: usize, d: &Clause, j: usize) -> Option<Link> {
    let (k, l) = (&c.literals[i], &d.literals[j]);
    if k.positive == l.positive {
        return None;
    }
    let right_renaming = if c.id == d.id || shares_vars(c, d) {
        let mut supply = crate::logic::VarSupply::above([c, d]);
        supply.renaming(&d.vars())
    } else {
        Substitution::new()
    };
    let right_atom = right_renaming.apply(&l.atom);
    let mgu = mgu(&k.atom, &right_atom)?;
    Some(Link {
        left: c.id,
        left_lit: i,
        right: d.id,
        right_lit: j,
        right_renaming,
        mgu,
    })
}

fn shares_vars(c: &Clause, d: &Clause) -> bool {
    let cv = c.vars();
    !cv.is_empty() && d.vars().iter().any(|v| cv.contains(v))
}

/// Every link between `c` and the clauses of `against`.
pub fn find_links(c: &Clause, against: &[ClauseRef]) -> Vec<Link> {
    LinkIndex::from_clauses(against.iter().map(Arc::clone)).links_for(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::notation::{clause, clauses, term, var};

    fn s(pairs: &[(&str, &str)]) -> Substitution {
        Substitution::from_pairs(pairs.iter().map(|(v, t)| (var(v), term(t))))
    }

    #[test]
    fn mgu_examples() {
        assert_eq!(
            mgu(&term("P(x,b)"), &term("P(a,z)")),
            Some(s(&[("x", "a"), ("z", "b")]))
        );
        assert_eq!(
            mgu(&term("P(x,y)"), &term("P(x,y)")),
            Some(Substitution::new())
        );
        assert_eq!(mgu(&term("P(x)"), &term("P(f(x))")), None);
        assert_eq!(mgu(&term("P(a)"), &term("P(b)")), None);
        assert_eq!(mgu(&term("P(a)"), &term("Q(a)")), None);
    }

    #[test]
    fn mgu_is_idempotent_through_chains() {
        let u = mgu(&term("P(x,y,z)"), &term("P(y,z,f(a))")).unwrap();
        assert!(u.is_idempotent());
        assert_eq!(u.apply(&term("P(x,y,z)")), term("P(f(a),f(a),f(a))"));
    }

    #[test]
    fn match_examples() {
        assert_eq!(
            match_terms(&term("P(x,y)"), &term("P(b,c)")),
            Some(s(&[("x", "b"), ("y", "c")]))
        );
        assert_eq!(match_terms(&term("P(a,y)"), &term("P(b,c)")), None);
        assert_eq!(match_terms(&term("P(x,x)"), &term("P(a,b)")), None);
        // matching never binds variables of the specific side
        assert_eq!(match_terms(&term("P(a,b)"), &term("P(x,b)")), None);
    }

    #[test]
    fn find_links_examples() {
        let set = clauses(&["P(x,y)", "~P(a,z) | Q(a,z)", "~P(b,z) | R(b,z)", "~R(b,c)"]);
        let refs: Vec<ClauseRef> = set.iter().cloned().map(Arc::new).collect();

        let links = find_links(&set[0], &refs[1..2]);
        assert_eq!(links.len(), 1);
        assert_eq!(links[0].mgu, s(&[("x", "a"), ("y", "z")]));

        let lone = clause("~R(b,c)");
        assert!(find_links(&lone, &refs[1..2]).is_empty());

        let links = find_links(&set[0], &refs);
        let partners: Vec<(ClauseId, usize)> =
            links.iter().map(|l| (l.right, l.right_lit)).collect();
        assert_eq!(partners, vec![(ClauseId(1), 0), (ClauseId(2), 0)]);
    }

    #[test]
    fn self_links_use_a_renamed_copy() {
        let c = clauses(&["~P(x) | P(f(x))"]).pop().unwrap();
        let links = find_links(&c, &[Arc::new(c.clone())]);
        // ~P(x) against P(f(x')) and P(f(x)) against ~P(x')
        assert_eq!(links.len(), 2);
        for l in &links {
            let left = l.left_instance(&c);
            let right = l.right_instance(&c);
            assert_eq!(left[l.left_lit].atom, right[l.right_lit].atom);
        }
    }
}
