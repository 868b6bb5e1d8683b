use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use dashmap::mapref::entry::Entry;
use dashmap::DashMap;

use super::Symbol;

/// A first-order variable, identified by number.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

#[derive(PartialEq, Eq, Hash)]
pub enum TermKind {
    Var(Var),
    /// Function application; constants are applications with no arguments.
    App(Symbol, Box<[Term]>),
}

struct TermNode {
    kind: TermKind,
    ground: bool,
}

impl PartialEq for TermNode {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for TermNode {}

impl Hash for TermNode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state)
    }
}

// Interning key: hashes and compares the node structurally (one level deep,
// children by identity).
#[derive(PartialEq, Eq, Hash)]
struct Key(Arc<TermNode>);

impl std::borrow::Borrow<TermNode> for Key {
    fn borrow(&self) -> &TermNode {
        &self.0
    }
}

/// A hash-consed term. Structurally equal terms share one allocation, so
/// equality and hashing are pointer operations.
#[derive(Clone)]
pub struct Term(Arc<TermNode>);

fn table() -> &'static DashMap<Key, ()> {
    static TABLE: OnceLock<DashMap<Key, ()>> = OnceLock::new();
    TABLE.get_or_init(DashMap::new)
}

fn intern(node: TermNode) -> Term {
    let table = table();
    if let Some(found) = table.get(&node) {
        return Term(found.key().0.clone());
    }
    match table.entry(Key(Arc::new(node))) {
        Entry::Occupied(e) => Term(e.key().0.clone()),
        Entry::Vacant(e) => {
            let term = Term(e.key().0.clone());
            e.insert(());
            term
        }
    }
}

impl Term {
    pub fn var(v: Var) -> Term {
        intern(TermNode {
            kind: TermKind::Var(v),
            ground: false,
        })
    }

    pub fn app(functor: Symbol, args: Vec<Term>) -> Term {
        let ground = args.iter().all(Term::is_ground);
        intern(TermNode {
            kind: TermKind::App(functor, args.into_boxed_slice()),
            ground,
        })
    }

    pub fn constant(name: Symbol) -> Term {
        Term::app(name, Vec::new())
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn is_ground(&self) -> bool {
        self.0.ground
    }

    pub fn as_var(&self) -> Option<Var> {
        match self.kind() {
            TermKind::Var(v) => Some(*v),
            TermKind::App(..) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        self.as_var().is_some()
    }

    /// Head symbol of an application, `None` for variables.
    pub fn head(&self) -> Option<Symbol> {
        match self.kind() {
            TermKind::Var(_) => None,
            TermKind::App(f, _) => Some(*f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self.kind() {
            TermKind::Var(_) => &[],
            TermKind::App(_, args) => args,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.kind(), TermKind::App(_, args) if args.is_empty())
    }

    pub fn occurs(&self, v: Var) -> bool {
        match self.kind() {
            TermKind::Var(w) => *w == v,
            TermKind::App(_, args) => !self.is_ground() && args.iter().any(|a| a.occurs(v)),
        }
    }

    /// Appends the variables of this term in order of first occurrence,
    /// skipping ones already present.
    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        if self.is_ground() {
            return;
        }
        match self.kind() {
            TermKind::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            TermKind::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn max_var(&self) -> Option<u32> {
        if self.is_ground() {
            return None;
        }
        match self.kind() {
            TermKind::Var(v) => Some(v.0),
            TermKind::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn depth(&self) -> usize {
        match self.kind() {
            TermKind::Var(_) => 0,
            TermKind::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    /// Visits every application symbol with its arity.
    pub fn for_each_symbol(&self, f: &mut impl FnMut(Symbol, usize)) {
        if let TermKind::App(s, args) = self.kind() {
            f(*s, args.len());
            args.iter().for_each(|a| a.for_each_symbol(f));
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::ptr::hash(Arc::as_ptr(&self.0), state)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.kind(), other.kind()) {
            (TermKind::Var(a), TermKind::Var(b)) => a.cmp(b),
            (TermKind::Var(_), TermKind::App(..)) => Ordering::Less,
            (TermKind::App(..), TermKind::Var(_)) => Ordering::Greater,
            (TermKind::App(f, xs), TermKind::App(g, ys)) => f
                .cmp(g)
                .then_with(|| xs.len().cmp(&ys.len()))
                .then_with(|| xs.iter().cmp(ys.iter())),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TermKind::Var(v) => write!(f, "{v}"),
            TermKind::App(s, args) => {
                write!(f, "{s}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(name: &str) -> Term {
        Term::constant(Symbol::intern(name))
    }

    #[test]
    fn structurally_equal_terms_are_shared() {
        let t1 = Term::app(Symbol::intern("f"), vec![c("a"), Term::var(Var(3))]);
        let t2 = Term::app(Symbol::intern("f"), vec![c("a"), Term::var(Var(3))]);
        assert_eq!(t1, t2);
        assert!(!t1.is_ground());
        assert_eq!(t1.vars(), vec![Var(3)]);
        assert_eq!(t1.to_string(), "f(a,X3)");
    }

    #[test]
    fn groundness_and_occurs() {
        let g = Term::app(Symbol::intern("g"), vec![c("a"), c("b")]);
        assert!(g.is_ground());
        assert!(!g.occurs(Var(0)));
        let t = Term::app(Symbol::intern("g"), vec![g.clone(), Term::var(Var(7))]);
        assert!(t.occurs(Var(7)));
        assert_eq!(t.max_var(), Some(7));
        assert_eq!(t.depth(), 2);
    }
}
