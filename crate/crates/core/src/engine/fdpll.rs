//! First-order DPLL: a semantic tree that splits on complementary,
//! possibly non-ground literals. A branch induces a candidate model; a
//! clause with a falsified instance drives the next split, and a branch
//! closes when some clause instance contradicts its ⊥-grounded literals.

use std::fmt::Write as _;
use std::sync::Arc;

use super::{Deadline, EngineKind, EngineResult, Options, Outcome, Proof, Stats};
use crate::ground::bottom_term;
use crate::logic::{
    literal_variant_key, Clause, ClauseId, ClauseRef, Literal, Origin, Substitution, Term,
    VarSupply,
};
use crate::model::{
    atom_generalizes, atom_strictly_more_specific, decide, domain_of, ModelCertificate,
};
use crate::unify::Bindings;

/// Value of a ground atom in the candidate model of `branch` (root to
/// leaf, without the pseudo-literal ¬x, which supplies the default false).
pub fn candidate_value(branch: &[Literal], atom: &Term) -> bool {
    decide(branch.iter(), atom)
}

/// Partner of a clause literal when looking for falsified instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Partner {
    /// The root pseudo-literal ¬x, available to positive literals.
    Root,
    /// Index of a branch literal.
    Branch(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Falsified {
    pub instance: Vec<Literal>,
    pub sigma: Substitution,
    pub partners: Vec<Partner>,
}

/// Enumerates simultaneous unifiers that pair every literal of `c` with the
/// complement of a branch literal, or with ¬x for positive literals. A
/// pairing is dropped when some branch literal of the clause literal's own
/// sign covers the instantiated literal and is more specific than its
/// partner, since that partner then decides no instance of it. `f` returns
/// false to stop; the result tells whether enumeration ran to the end.
pub fn for_each_falsified_instance(
    branch: &[Literal],
    c: &Clause,
    mut f: impl FnMut(Falsified) -> bool,
) -> bool {
    let mut supply = VarSupply::above(std::iter::once(c));
    for l in branch {
        if let Some(m) = l.atom.max_var() {
            while supply.fresh().0 <= m {}
        }
    }
    let mut bindings = Bindings::new();
    let mut partners = Vec::with_capacity(c.len());
    falsified_dfs(branch, &mut supply, c, &mut bindings, &mut partners, &mut f)
}

fn falsified_dfs(
    branch: &[Literal],
    supply: &mut VarSupply,
    c: &Clause,
    bindings: &mut Bindings,
    partners: &mut Vec<Partner>,
    f: &mut impl FnMut(Falsified) -> bool,
) -> bool {
    let i = partners.len();
    if i == c.len() {
        let sigma = Substitution::from_pairs(
            c.vars()
                .into_iter()
                .map(|v| (v, bindings.resolve(&Term::var(v)))),
        );
        let instance = sigma.apply_literals(&c.literals);
        if !covered(branch, &instance, partners) {
            return f(Falsified {
                instance,
                sigma,
                partners: partners.clone(),
            });
        }
        return true;
    }
    let lit = &c.literals[i];
    if lit.positive {
        partners.push(Partner::Root);
        let go_on = falsified_dfs(branch, supply, c, bindings, partners, f);
        partners.pop();
        if !go_on {
            return false;
        }
    }
    for (k, b) in branch.iter().enumerate() {
        if b.positive == lit.positive || b.predicate() != lit.predicate() {
            continue;
        }
        // a fresh copy per use, as one branch literal may pair with several
        let renamed = supply.renaming(&b.atom.vars()).apply(&b.atom);
        let mark = bindings.mark();
        if bindings.unify(&lit.atom, &renamed) {
            partners.push(Partner::Branch(k));
            let go_on = falsified_dfs(branch, supply, c, bindings, partners, f);
            partners.pop();
            if !go_on {
                bindings.undo(mark);
                return false;
            }
        }
        bindings.undo(mark);
    }
    true
}

fn covered(branch: &[Literal], instance: &[Literal], partners: &[Partner]) -> bool {
    instance.iter().zip(partners).any(|(l, p)| {
        branch.iter().any(|m| {
            m.positive == l.positive
                && atom_generalizes(&m.atom, &l.atom)
                && match p {
                    Partner::Root => true,
                    Partner::Branch(k) => atom_strictly_more_specific(&m.atom, &branch[*k].atom),
                }
        })
    })
}

/// First falsified instance of `c` in the candidate model of `branch`.
/// None means `c` holds in that model.
pub fn find_falsified_instance(branch: &[Literal], c: &Clause) -> Option<Falsified> {
    let mut found = None;
    for_each_falsified_instance(branch, c, |fi| {
        found = Some(fi);
        false
    });
    found
}

fn on_branch_up_to_variants(branch: &[Literal], l: &Literal) -> bool {
    let key = literal_variant_key(l);
    branch.iter().any(|b| literal_variant_key(b) == key)
}

/// Whether `l` may be split on: neither it nor its complement is on the
/// branch up to variants.
pub fn can_split(branch: &[Literal], l: &Literal) -> bool {
    !on_branch_up_to_variants(branch, l) && !on_branch_up_to_variants(branch, &l.complement())
}

/// The two children of a split on `l`, left (`l`) first.
pub fn split(branch: &[Literal], l: &Literal) -> Option<[Vec<Literal>; 2]> {
    if !can_split(branch, l) {
        return None;
    }
    let mut left = branch.to_vec();
    left.push(l.clone());
    let mut right = branch.to_vec();
    right.push(l.complement());
    Some([left, right])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub clause: ClauseId,
    pub sigma: Substitution,
    /// Branch literal index paired with each clause literal.
    pub partners: Vec<usize>,
}

/// Closes `branch` with `c` if some instance of `c` has every literal
/// complementary to a ⊥-grounded branch literal.
pub fn close_branch(branch: &[Literal], c: &Clause) -> Option<ClosureWitness> {
    let grounded: Vec<Term> = branch.iter().map(|l| bottom_term(&l.atom)).collect();
    let mut bindings = Bindings::new();
    let mut partners = Vec::with_capacity(c.len());
    if close_dfs(branch, &grounded, c, &mut bindings, &mut partners) {
        let sigma = Substitution::from_pairs(
            c.vars()
                .into_iter()
                .map(|v| (v, bindings.resolve(&Term::var(v)))),
        );
        return Some(ClosureWitness {
            clause: c.id,
            sigma,
            partners,
        });
    }
    None
}

fn close_dfs(
    branch: &[Literal],
    grounded: &[Term],
    c: &Clause,
    bindings: &mut Bindings,
    partners: &mut Vec<usize>,
) -> bool {
    let i = partners.len();
    if i == c.len() {
        return true;
    }
    let lit = &c.literals[i];
    for (k, b) in branch.iter().enumerate() {
        if b.positive == lit.positive || b.predicate() != lit.predicate() {
            continue;
        }
        let mark = bindings.mark();
        if bindings.unify(&lit.atom, &grounded[k]) {
            partners.push(k);
            if close_dfs(branch, grounded, c, bindings, partners) {
                return true;
            }
            partners.pop();
        }
        bindings.undo(mark);
    }
    false
}

#[derive(Clone, Debug)]
struct Node {
    label: Literal,
    children: Vec<usize>,
    closed: bool,
}

/// The explored semantic tree; node 0 is the root ¬x.
#[derive(Clone, Debug)]
pub struct SemanticTree {
    nodes: Vec<Node>,
}

impl SemanticTree {
    fn new() -> Self {
        let root = Literal::neg(Term::constant(crate::logic::Symbol::intern("x")));
        SemanticTree {
            nodes: vec![Node {
                label: root,
                children: Vec::new(),
                closed: false,
            }],
        }
    }

    fn add(&mut self, parent: usize, label: Literal, closed: bool) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node {
            label,
            children: Vec::new(),
            closed,
        });
        self.nodes[parent].children.push(id);
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn closed_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.closed).count()
    }

    /// Indented text, two spaces per level, closed leaves marked `★`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_node(0, 0, &mut out);
        out
    }

    fn dump_node(&self, id: usize, depth: usize, out: &mut String) {
        let n = &self.nodes[id];
        let label = literal_variant_key(&n.label);
        let _ = write!(out, "{:width$}{}", "", label, width = depth * 2);
        if n.closed {
            out.push_str(" ★");
        }
        out.push('\n');
        for &c in &n.children {
            self.dump_node(c, depth + 1, out);
        }
    }
}

enum Explored {
    Closed,
    Open(Vec<Literal>),
    Bounded,
    Stopped(&'static str),
}

struct Prover<'a> {
    input: &'a [Clause],
    tree: SemanticTree,
    derived: Vec<ClauseRef>,
    next_id: u32,
    stats: Stats,
    deadline: Deadline,
    max_nodes: usize,
}

impl Prover<'_> {
    fn closes(&mut self, branch: &[Literal]) -> bool {
        for c in self.input {
            if let Some(w) = close_branch(branch, c) {
                self.record(c, w.sigma);
                self.stats.add("closures", 1);
                return true;
            }
        }
        false
    }

    fn record(&mut self, c: &Clause, sigma: Substitution) {
        let id = ClauseId(self.next_id);
        self.next_id += 1;
        let literals = sigma.apply_literals(&c.literals);
        self.derived.push(Arc::new(Clause::new(
            id,
            literals,
            Origin::Derived {
                engine: "fdpll",
                parents: vec![c.id],
                subst: sigma,
            },
        )));
    }

    /// The literal to split on next, or None when no clause has a
    /// falsified instance. Err when falsified instances exist but none
    /// offers an eligible literal.
    fn next_split(&mut self, branch: &[Literal]) -> Result<Option<Literal>, ()> {
        let mut stuck = false;
        for c in self.input {
            let mut choice = None;
            for_each_falsified_instance(branch, c, |fi| {
                match fi.instance.iter().find(|l| can_split(branch, l)) {
                    Some(l) => {
                        choice = Some((l.clone(), fi.sigma));
                        false
                    }
                    None => {
                        stuck = true;
                        true
                    }
                }
            });
            if let Some((l, sigma)) = choice {
                self.record(c, sigma);
                return Ok(Some(l));
            }
        }
        if stuck {
            Err(())
        } else {
            Ok(None)
        }
    }

    fn explore(
        &mut self,
        branch: &mut Vec<Literal>,
        node: usize,
        depth: usize,
        bound: usize,
    ) -> Explored {
        if self.deadline.passed() {
            return Explored::Stopped("timeout");
        }
        if self.tree.len() > self.max_nodes {
            return Explored::Stopped("node limit");
        }
        let l = match self.next_split(branch) {
            Ok(Some(l)) => l,
            Ok(None) => return Explored::Open(branch.clone()),
            Err(()) => return Explored::Stopped("no eligible split literal"),
        };
        if depth >= bound {
            return Explored::Bounded;
        }
        self.stats.add("splits", 1);
        self.stats.max("depth", depth as u64 + 1);
        let mut bounded = false;
        let mut children = Vec::with_capacity(2);
        for label in [l.clone(), l.complement()] {
            branch.push(label.clone());
            let closed = self.closes(branch);
            branch.pop();
            children.push((self.tree.add(node, label, closed), closed));
        }
        for (label, (child, closed)) in [l.clone(), l.complement()].into_iter().zip(children) {
            if closed {
                continue;
            }
            branch.push(label);
            let result = self.explore(branch, child, depth + 1, bound);
            branch.pop();
            match result {
                Explored::Closed => {}
                Explored::Bounded => bounded = true,
                other => return other,
            }
        }
        if bounded {
            Explored::Bounded
        } else {
            Explored::Closed
        }
    }
}

pub fn prove(input: &[Clause], options: &Options) -> Outcome {
    let mut prover = Prover {
        input,
        tree: SemanticTree::new(),
        derived: Vec::new(),
        next_id: input.iter().map(|c| c.id.0 + 1).max().unwrap_or(0),
        stats: Stats::default(),
        deadline: Deadline::after(options.limits.timeout),
        max_nodes: options.limits.max_instances,
    };
    let mut bound = 4;
    let result = loop {
        prover.tree = SemanticTree::new();
        prover.stats.add("iterations", 1);
        if prover.closes(&[]) {
            prover.tree.nodes[0].closed = true;
            break EngineResult::Unsatisfiable(Proof {
                text: prover.tree.dump(),
            });
        }
        match prover.explore(&mut Vec::new(), 0, 0, bound) {
            Explored::Closed => {
                break EngineResult::Unsatisfiable(Proof {
                    text: prover.tree.dump(),
                })
            }
            Explored::Open(branch) => {
                let mut cert = ModelCertificate::new(domain_of(input));
                for l in branch {
                    cert.push(l, None);
                }
                break EngineResult::Satisfiable(cert);
            }
            Explored::Stopped(why) => break EngineResult::ResourceOut(why.into()),
            Explored::Bounded => bound *= 2,
        }
    };
    prover.stats.set("nodes", prover.tree.len() as u64);
    let dump = options.dump.then(|| prover.tree.dump());
    Outcome {
        engine: EngineKind::Fdpll,
        result,
        stats: prover.stats,
        derived: prover.derived,
        dump,
    }
}

/// Runs the engine and returns the final semantic tree alongside.
pub fn prove_with_tree(input: &[Clause], options: &Options) -> (Outcome, String) {
    let mut opts = options.clone();
    opts.dump = true;
    let mut out = prove(input, &opts);
    let tree = out.dump.take().unwrap_or_default();
    if options.dump {
        out.dump = Some(tree.clone());
    }
    (out, tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::notation::{clause, clauses, lit, literals, term};

    fn example() -> Vec<Clause> {
        clauses(&["P(a,y)", "P(x,b) | ~P(z,y) | Q(x,y,z)"])
    }

    #[test]
    fn candidate_values() {
        let b = literals("P(a,y)");
        assert!(candidate_value(&b, &term("P(a,b)")));
        assert!(!candidate_value(&b, &term("Q(c,c)")));
        assert!(!candidate_value(&[], &term("P(a,b)")));
        let b = literals("P(a,y) | ~P(a,b)");
        assert!(!candidate_value(&b, &term("P(a,b)")));
        assert!(candidate_value(&b, &term("P(a,c)")));
    }

    #[test]
    fn falsified_instance_of_second_clause() {
        let c = &example()[1];
        let fi = find_falsified_instance(&literals("P(a,y)"), c).unwrap();
        assert_eq!(fi.partners[1], Partner::Branch(0));
        assert_eq!(fi.instance[1].atom.args()[0], term("a"));
        assert_eq!(fi.instance[2].atom.args()[2], term("a"));
        assert!(can_split(&literals("P(a,y)"), &fi.instance[0]));
        assert!(!can_split(&literals("P(a,y)"), &fi.instance[1]));
    }

    #[test]
    fn negative_clause_holds_by_default() {
        assert_eq!(find_falsified_instance(&[], &clause("~R(u)")), None);
        let fi = find_falsified_instance(&[], &clause("P(a,y)")).unwrap();
        assert_eq!(fi.partners, vec![Partner::Root]);
        assert!(fi.sigma.iter().all(|(v, t)| t.as_var() == Some(v)));
    }

    #[test]
    fn more_specific_literal_blocks_pairing() {
        // P(a) is true although ¬P(x) is on the branch
        let b = literals("~P(x) | P(a)");
        assert_eq!(find_falsified_instance(&b, &clause("P(a)")), None);
        assert!(find_falsified_instance(&b, &clause("P(b)")).is_some());
    }

    #[test]
    fn split_refuses_variants_and_complements() {
        let b = literals("P(a,y)");
        assert!(split(&b, &lit("~P(a,z)")).is_none());
        assert!(split(&b, &lit("P(a,z)")).is_none());
        let [l, r] = split(&b, &lit("P(x,b)")).unwrap();
        assert_eq!(l.last(), Some(&lit("P(x,b)")));
        assert_eq!(r.last(), Some(&lit("~P(x,b)")));
    }

    #[test]
    fn closure() {
        let w = close_branch(&literals("~P(a,y)"), &example()[0]).unwrap();
        assert_eq!(w.partners, vec![0]);
        assert!(close_branch(&[], &example()[0]).is_none());
        assert!(close_branch(&literals("P(a,y) | ~P(x,b) | P(a,b)"), &example()[0]).is_none());
        // P($bot,b) against ~P(a,z)
        assert!(close_branch(&literals("P(x,b)"), &clause("~P(a,z)")).is_none());
    }

    #[test]
    fn example_tree_and_model() {
        let (out, tree) = prove_with_tree(&example(), &Options::default());
        assert!(tree.starts_with("~x\n  P(a,X0)\n"), "{tree}");
        assert!(tree.contains("\n  ~P(a,X0) ★\n"), "{tree}");
        let EngineResult::Satisfiable(m) = &out.result else {
            panic!("{}", out.result.status())
        };
        assert!(m.atom_value(&term("P(a,a)")));
    }

    #[test]
    fn ground_contradiction() {
        let out = prove(&clauses(&["P(a)", "~P(a)"]), &Options::default());
        assert_eq!(out.result.status(), "Unsatisfiable");
    }

    #[test]
    fn running_example_unsatisfiable() {
        let out = prove(
            &clauses(&["P(x,y)", "~P(a,z) | Q(a,z)", "~P(b,z) | R(b,z)", "~R(b,c)"]),
            &Options::default(),
        );
        assert_eq!(out.result.status(), "Unsatisfiable");
    }

    #[test]
    fn empty_clause_closes_root() {
        let out = prove(&clauses(&["$false"]), &Options::default());
        assert_eq!(out.result.status(), "Unsatisfiable");
        let out = prove(&[], &Options::default());
        assert_eq!(out.result.status(), "Satisfiable");
    }
}
