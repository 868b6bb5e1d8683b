//! Disconnection tableaux: a fixed initial path through the input, and one
//! link at a time between literals on a branch, expanded by attaching both
//! instantiated clauses. Branches close on ⊥-complementary tableau literals.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    Deadline, EngineKind, EngineResult, InitialPathChoice, Options, Outcome, Proof, Stats,
};
use crate::ground::bottom_literal;
use crate::logic::{
    literal_variant_key, rename_apart, variant_key, Clause, ClauseId, ClauseRef, Literal, Origin,
    Substitution, VarSupply,
};
use crate::model::{domain_of, generation_model, is_function_free, ModelCertificate};
use crate::unify::mgu;

/// One literal index per input clause. Empty clauses get index 0, which
/// they never use.
pub fn choose_initial_path(input: &[Clause], choice: InitialPathChoice) -> Vec<usize> {
    match choice {
        InitialPathChoice::First => vec![0; input.len()],
        InitialPathChoice::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            input
                .iter()
                .map(|c| {
                    if c.is_empty() {
                        0
                    } else {
                        rng.gen_range(0..c.len())
                    }
                })
                .collect()
        }
    }
}

/// A literal occurrence on a branch: on the initial path (by input clause
/// index) or at a tableau node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Occurrence {
    Path(usize),
    Node(usize),
}

#[derive(Clone, Debug)]
pub struct Node {
    pub literal: Option<Literal>,
    /// Clause instance the literal belongs to, and its index there.
    pub clause: Option<(ClauseRef, usize)>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub closed: bool,
    key: u32,
    used: Vec<(u32, u32)>,
}

/// Whether an occurrence is on the initial path, its clause up to
/// variants, and its literal index.
type OccurrenceKey = (bool, Vec<Literal>, usize);

/// A link between two occurrences on one branch, `later` being the one
/// further from the start of the branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauLink {
    pub earlier: Occurrence,
    pub later: Occurrence,
    pub sigma: Substitution,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion {
    /// Leaves created by the expansion, closed or not.
    pub leaves: Vec<usize>,
    pub closed: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Tableau {
    input: Vec<ClauseRef>,
    path: Vec<usize>,
    nodes: Vec<Node>,
    next_id: u32,
    supply: VarSupply,
    derived: Vec<ClauseRef>,
    keys: HashMap<OccurrenceKey, u32>,
    path_keys: Vec<u32>,
}

pub const ROOT: usize = 0;

impl Tableau {
    pub fn new(input: &[Clause], path: Vec<usize>) -> Self {
        assert_eq!(input.len(), path.len(), "one path literal per input clause");
        let mut t = Tableau {
            input: input.iter().cloned().map(Arc::new).collect(),
            path,
            nodes: vec![Node {
                literal: None,
                clause: None,
                parent: None,
                children: Vec::new(),
                closed: false,
                key: u32::MAX,
                used: Vec::new(),
            }],
            next_id: input.iter().map(|c| c.id.0 + 1).max().unwrap_or(0),
            supply: VarSupply::above(input),
            derived: Vec::new(),
            keys: HashMap::new(),
            path_keys: Vec::new(),
        };
        t.path_keys = (0..input.len())
            .map(|i| t.intern((true, variant_key(&input[i].literals), t.path[i])))
            .collect();
        t
    }

    fn intern(&mut self, key: OccurrenceKey) -> u32 {
        let next = self.keys.len() as u32;
        *self.keys.entry(key).or_insert(next)
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn derived(&self) -> &[ClauseRef] {
        &self.derived
    }

    /// Leaves whose branch is not closed.
    pub fn open_leaves(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].children.is_empty() && !self.is_closed(i))
            .collect()
    }

    pub fn closed_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.closed).count()
    }

    /// True when the branch ending at `node` contains a ⊥-complementary
    /// pair of tableau literals.
    pub fn is_closed(&self, node: usize) -> bool {
        self.ancestors(node).any(|i| self.nodes[i].closed)
    }

    fn ancestors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(Some(node), move |&i| self.nodes[i].parent)
    }

    /// Tableau nodes from the root's first child down to `leaf`.
    pub fn branch_nodes(&self, leaf: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.ancestors(leaf).filter(|&i| i != ROOT).collect();
        out.reverse();
        out
    }

    pub fn literal(&self, o: Occurrence) -> &Literal {
        match o {
            Occurrence::Path(i) => &self.input[i].literals[self.path[i]],
            Occurrence::Node(n) => self.nodes[n].literal.as_ref().unwrap(),
        }
    }

    fn clause_of(&self, o: Occurrence) -> (&ClauseRef, usize) {
        match o {
            Occurrence::Path(i) => (&self.input[i], self.path[i]),
            Occurrence::Node(n) => {
                let (c, k) = self.nodes[n].clause.as_ref().unwrap();
                (c, *k)
            }
        }
    }

    /// Occurrences on the branch to `leaf`: the initial path, then the
    /// tableau literals from the root down.
    pub fn occurrences(&self, leaf: usize) -> Vec<Occurrence> {
        let path = (0..self.input.len())
            .filter(|&i| !self.input[i].is_empty() && !self.input[i].is_tautology())
            .map(Occurrence::Path);
        path.chain(self.branch_nodes(leaf).into_iter().map(Occurrence::Node))
            .collect()
    }

    /// Attaches a clause instance as the children of `leaf`, closing every
    /// child whose ⊥-grounding complements a tableau literal above it.
    pub fn attach(&mut self, leaf: usize, clause: ClauseRef) -> Vec<usize> {
        debug_assert!(self.nodes[leaf].children.is_empty());
        let above: HashSet<Literal> = self
            .branch_nodes(leaf)
            .into_iter()
            .map(|i| bottom_literal(self.nodes[i].literal.as_ref().unwrap()))
            .collect();
        let mut ids = Vec::with_capacity(clause.len());
        let vkey = variant_key(&clause.literals);
        for (k, l) in clause.literals.iter().enumerate() {
            let id = self.nodes.len();
            let closed = above.contains(&bottom_literal(l).complement());
            let key = self.intern((false, vkey.clone(), k));
            self.nodes.push(Node {
                literal: Some(l.clone()),
                clause: Some((Arc::clone(&clause), k)),
                parent: Some(leaf),
                children: Vec::new(),
                closed,
                key,
                used: Vec::new(),
            });
            ids.push(id);
        }
        self.nodes[leaf].children = ids.clone();
        ids
    }

    /// Interned registry identity of an occurrence: whether it is on the
    /// initial path, its clause up to variants, and its literal index.
    fn key(&self, o: Occurrence) -> u32 {
        match o {
            Occurrence::Path(i) => self.path_keys[i],
            Occurrence::Node(n) => self.nodes[n].key,
        }
    }

    fn link_key(&self, earlier: Occurrence, later: Occurrence) -> (u32, u32) {
        let (a, b) = (self.key(earlier), self.key(later));
        (a.min(b), a.max(b))
    }

    /// Registry of links used on the branch to `leaf`.
    fn used(&self, leaf: usize) -> HashSet<(u32, u32)> {
        self.ancestors(leaf)
            .flat_map(|i| self.nodes[i].used.iter().copied())
            .collect()
    }

    /// Links on the branch to `leaf` not yet used up to variants of the
    /// clauses involved, oldest first. Of several occurrences with the same
    /// key only the first is considered.
    pub fn links(&self, leaf: usize) -> Vec<TableauLink> {
        let mut seen = HashSet::new();
        let canonical: Vec<(Occurrence, u32)> = self
            .occurrences(leaf)
            .into_iter()
            .map(|o| (o, self.key(o)))
            .filter(|(_, k)| seen.insert(*k))
            .collect();
        let used = self.used(leaf);
        let mut supply = self.supply.clone();
        let mut out = Vec::new();
        for (b, (later, kb)) in canonical.iter().enumerate() {
            let lb = self.literal(*later);
            for (earlier, ka) in &canonical[..b] {
                let la = self.literal(*earlier);
                if la.positive == lb.positive || la.predicate() != lb.predicate() {
                    continue;
                }
                if used.contains(&(*ka.min(kb), *ka.max(kb))) {
                    continue;
                }
                let renamed = rename_apart_atom(la, &mut supply);
                if let Some(sigma) = mgu(&lb.atom, &renamed.atom) {
                    out.push(TableauLink {
                        earlier: *earlier,
                        later: *later,
                        sigma,
                    });
                }
            }
        }
        out
    }

    fn instance(&mut self, c: &ClauseRef, sigma: &Substitution) -> ClauseRef {
        let id = ClauseId(self.next_id);
        self.next_id += 1;
        let root = match &c.origin {
            Origin::Input { .. } => c.id,
            Origin::Derived { parents, .. } => parents[0],
        };
        let input = self.input.iter().find(|i| i.id == root).unwrap();
        let literals = sigma.apply_literals(&c.literals);
        let subst = crate::logic::clause_matcher(&input.literals, &literals).unwrap_or_default();
        let inst = Arc::new(Clause::new(
            id,
            literals,
            Origin::Derived {
                engine: "disconnection",
                parents: vec![root],
                subst,
            },
        ));
        self.derived.push(Arc::clone(&inst));
        inst
    }

    /// Which instances to attach. A variant of the tableau clause it came
    /// from is left out, its literal being on the branch already. A
    /// tautology is left out too, unless the other instance alone would
    /// then close nothing against `above`.
    fn plan(&self, above: &HashSet<Literal>, link: &TableauLink, supply: &mut VarSupply) -> Plan {
        let (c, kc) = self.clause_of(link.later);
        let (d, kd) = self.clause_of(link.earlier);
        let d = Arc::new(rename_apart(d, supply));
        let sigma = mgu(&c.literals[kc].atom, &d.literals[kd].atom).expect("link literals unify");
        let (ci, di) = (
            sigma.apply_literals(&c.literals),
            sigma.apply_literals(&d.literals),
        );
        let (var_c, var_d) = (
            variant_of_node(link.later, &c.literals, &ci),
            variant_of_node(link.earlier, &d.literals, &di),
        );
        let closes = |inst: &[Literal]| {
            inst.iter()
                .any(|l| above.contains(&bottom_literal(l).complement()))
        };
        let (taut_c, taut_d) = (is_tautology(&ci), is_tautology(&di));
        let (skip_c, skip_d) = if var_c || var_d || (taut_c && taut_d) {
            (var_c || taut_c, var_d || taut_d)
        } else {
            (taut_c && closes(&di), taut_d && closes(&ci))
        };
        Plan {
            c: Arc::clone(c),
            kc,
            d,
            kd,
            sigma,
            skip_c,
            skip_d,
        }
    }

    /// Number of branches an expansion would leave open.
    pub fn open_after(&self, leaf: usize, link: &TableauLink) -> usize {
        let above = self.grounded_branch(leaf);
        self.open_after_with(&above, link)
    }

    /// The link among `links` leaving the fewest branches open, the first
    /// such on ties.
    pub fn most_closing<'a>(
        &self,
        leaf: usize,
        links: &'a [TableauLink],
    ) -> Option<&'a TableauLink> {
        let above = self.grounded_branch(leaf);
        let depth = |o: Occurrence| match o {
            Occurrence::Path(_) => 0,
            Occurrence::Node(n) => self.ancestors(n).count(),
        };
        links.iter().min_by_key(|l| {
            (
                self.open_after_with(&above, l),
                std::cmp::Reverse(depth(l.later)),
            )
        })
    }

    fn grounded_branch(&self, leaf: usize) -> HashSet<Literal> {
        self.branch_nodes(leaf)
            .into_iter()
            .map(|i| bottom_literal(self.nodes[i].literal.as_ref().unwrap()))
            .collect()
    }

    fn open_after_with(&self, above: &HashSet<Literal>, link: &TableauLink) -> usize {
        let plan = self.plan(above, link, &mut self.supply.clone());
        let open = |lits: &[Literal], above: &HashSet<Literal>, skip: Option<usize>| {
            lits.iter()
                .enumerate()
                .filter(|&(i, l)| {
                    Some(i) != skip && !above.contains(&bottom_literal(l).complement())
                })
                .count()
        };
        let c = plan.sigma.apply_literals(&plan.c.literals);
        let d = plan.sigma.apply_literals(&plan.d.literals);
        match (plan.skip_c, plan.skip_d) {
            (true, true) => 1,
            (false, true) => open(&c, above, None),
            (true, false) => open(&d, above, None),
            (false, false) => {
                // the partner's linked literal closes against c[kc]
                open(&c, above, Some(plan.kc)) + open(&d, above, Some(plan.kd))
            }
        }
    }

    /// Disconnects `link` on the branch to `leaf`. The instance of the later
    /// occurrence's clause goes first, the other under its linked child.
    /// Instances may be left out, see `plan`. Whenever something is
    /// attached, some new leaf is closed.
    pub fn expand(&mut self, leaf: usize, link: &TableauLink) -> Expansion {
        let key = self.link_key(link.earlier, link.later);
        self.nodes[leaf].used.push(key);
        let mut supply = self.supply.clone();
        let above = self.grounded_branch(leaf);
        let Plan {
            c,
            kc,
            d,
            kd: _,
            sigma,
            skip_c,
            skip_d,
        } = self.plan(&above, link, &mut supply);
        self.supply = supply;
        let mut exp = Expansion::default();
        let collect = |t: &Tableau, ids: &[usize], exp: &mut Expansion| {
            for &i in ids {
                if t.nodes[i].closed {
                    exp.closed.push(i);
                }
            }
        };
        match (skip_c, skip_d) {
            (true, true) => exp.leaves.push(leaf),
            (false, true) | (true, false) => {
                let src = if skip_d { &c } else { &d };
                let inst = self.instance(src, &sigma);
                let ids = self.attach(leaf, inst);
                collect(self, &ids, &mut exp);
                exp.leaves.extend(ids);
            }
            (false, false) => {
                let ci = self.instance(&c, &sigma);
                let cids = self.attach(leaf, ci);
                let di = self.instance(&d, &sigma);
                let dids = self.attach(cids[kc], di);
                collect(self, &cids, &mut exp);
                collect(self, &dids, &mut exp);
                exp.leaves.extend(cids.iter().filter(|&&i| i != cids[kc]));
                exp.leaves.extend(dids);
            }
        }
        exp
    }

    /// Indented text tree, two spaces per level, closed leaves marked `*`.
    /// The root and the initial path are not shown.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for &c in &self.nodes[ROOT].children {
            self.dump_node(c, 0, &mut out);
        }
        out
    }

    fn dump_node(&self, id: usize, depth: usize, out: &mut String) {
        let n = &self.nodes[id];
        let label = literal_variant_key(n.literal.as_ref().unwrap());
        let _ = write!(out, "{:width$}{}", "", label, width = depth * 2);
        if n.closed {
            out.push_str(" *");
        }
        out.push('\n');
        for &c in &n.children {
            self.dump_node(c, depth + 1, out);
        }
    }

    /// Certificate read off an open branch. Each clause on the branch, an
    /// input clause through its path literal or a tableau instance through
    /// its branch literal, selects that literal; a path clause is dropped
    /// when the branch passes through a variant of it. Function-free sets
    /// get the generation model of this selection over their constants,
    /// others the selected literals themselves.
    pub fn branch_model(&self, leaf: usize) -> ModelCertificate {
        let domain = domain_of(self.input.iter().map(|c| c.as_ref()));
        let nodes = self.branch_nodes(leaf);
        let passed: HashSet<Vec<Literal>> = nodes
            .iter()
            .map(|&n| variant_key(&self.nodes[n].clause.as_ref().unwrap().0.literals))
            .collect();
        let selected: Vec<(&Clause, usize)> = self
            .occurrences(leaf)
            .into_iter()
            .map(|o| self.clause_of(o))
            .filter(|(c, _)| !c.is_tautology())
            .filter(|(c, _)| {
                matches!(c.origin, Origin::Derived { .. })
                    || !passed.contains(&variant_key(&c.literals))
            })
            .map(|(c, k)| (c.as_ref(), k))
            .collect();
        if is_function_free(self.input.iter().map(|c| c.as_ref())) {
            return generation_model(&selected, domain);
        }
        let mut cert = ModelCertificate::new(domain);
        for (c, k) in selected {
            cert.push(c.literals[k].clone(), Some(c.id));
        }
        cert
    }
}

struct Plan {
    c: ClauseRef,
    kc: usize,
    d: ClauseRef,
    kd: usize,
    sigma: Substitution,
    skip_c: bool,
    skip_d: bool,
}

fn rename_apart_atom(l: &Literal, supply: &mut VarSupply) -> Literal {
    supply.renaming(&l.atom.vars()).apply_literal(l)
}

fn variant_of_node(o: Occurrence, original: &[Literal], inst: &[Literal]) -> bool {
    matches!(o, Occurrence::Node(_)) && variant_key(original) == variant_key(inst)
}

fn is_tautology(lits: &[Literal]) -> bool {
    lits.iter()
        .enumerate()
        .any(|(i, l)| lits[i + 1..].iter().any(|m| m.is_complement_of(l)))
}

enum Explored {
    Closed,
    Open(usize),
    Bounded,
    Stopped(&'static str),
}

struct Prover {
    tableau: Tableau,
    stats: Stats,
    deadline: Deadline,
    max_nodes: usize,
    function_free: bool,
}

impl Prover {
    fn solve(&mut self, leaf: usize, depth: usize, bound: usize) -> Explored {
        if self.tableau.is_closed(leaf) {
            return Explored::Closed;
        }
        if self.deadline.passed() {
            return Explored::Stopped("timeout");
        }
        if self.tableau.len() > self.max_nodes {
            return Explored::Stopped("node limit");
        }
        let links = self.tableau.links(leaf);
        // branches are finite without function symbols, so any choice is fair
        let pick = if self.function_free {
            self.tableau.most_closing(leaf, &links)
        } else {
            links.first()
        };
        let Some(link) = pick.cloned() else {
            return Explored::Open(leaf);
        };
        if depth >= bound {
            return Explored::Bounded;
        }
        let exp = self.tableau.expand(leaf, &link);
        debug_assert!(exp.leaves == [leaf] || !exp.closed.is_empty());
        self.stats.add("expansions", 1);
        self.stats.max("depth", depth as u64 + 1);
        let mut bounded = false;
        for l in exp.leaves {
            match self.solve(l, depth + 1, bound) {
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
    let path = choose_initial_path(input, options.initial_path);
    let mut stats = Stats::default();
    let deadline = Deadline::after(options.limits.timeout);
    if let Some(c) = input.iter().find(|c| c.is_empty()) {
        return Outcome {
            engine: EngineKind::Disconnection,
            result: EngineResult::Unsatisfiable(Proof {
                text: format!("$false <- input({})", c.id),
            }),
            stats,
            derived: Vec::new(),
            dump: options.dump.then(String::new),
        };
    }
    // without function symbols every branch is finite
    let mut bound = if is_function_free(input) {
        usize::MAX
    } else {
        4
    };
    let mut prover;
    let result = loop {
        stats.add("iterations", 1);
        prover = Prover {
            tableau: Tableau::new(input, path.clone()),
            stats: std::mem::take(&mut stats),
            deadline,
            max_nodes: options.limits.max_instances,
            function_free: is_function_free(input),
        };
        let r = prover.solve(ROOT, 0, bound);
        stats = std::mem::take(&mut prover.stats);
        match r {
            Explored::Closed => {
                break EngineResult::Unsatisfiable(Proof {
                    text: prover.tableau.dump(),
                })
            }
            Explored::Open(leaf) => {
                break EngineResult::Satisfiable(prover.tableau.branch_model(leaf))
            }
            Explored::Stopped(why) => break EngineResult::ResourceOut(why.into()),
            Explored::Bounded => bound = bound.saturating_mul(2),
        }
    };
    stats.set("nodes", prover.tableau.len() as u64);
    stats.set("closed", prover.tableau.closed_leaves() as u64);
    Outcome {
        engine: EngineKind::Disconnection,
        result,
        stats,
        derived: prover.tableau.derived.clone(),
        dump: options.dump.then(|| prover.tableau.dump()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::notation::{clause, clauses};

    fn scenario() -> (Tableau, usize) {
        let input = clauses(&["~P(a,z) | Q(a,z)", "~R(x,b) | P(x,b) | S(x,b)"]);
        let mut t = Tableau::new(&input, vec![0, 0]);
        let branch = Arc::new(input[1].clone());
        let ids = t.attach(ROOT, branch);
        (t, ids[1])
    }

    #[test]
    fn expansion_matches_worked_example() {
        let (mut t, leaf) = scenario();
        let link = t
            .links(leaf)
            .into_iter()
            .find(|l| l.earlier == Occurrence::Path(0) && l.later == Occurrence::Node(leaf))
            .unwrap();
        let exp = t.expand(leaf, &link);
        assert_eq!(exp.closed.len(), 1);
        assert_eq!(t.closed_leaves(), 1);
        let dump = t.dump();
        let expected = "\
~R(X0,b)
P(X0,b)
  ~R(a,b)
  P(a,b)
    ~P(a,b) *
    Q(a,b)
  S(a,b)
S(X0,b)
";
        assert_eq!(dump, expected);
    }

    #[test]
    fn closure_ignores_the_initial_path() {
        let input = clauses(&["P(a)", "~P(a)"]);
        let t = Tableau::new(&input, vec![0, 0]);
        assert!(!t.is_closed(ROOT));
    }

    #[test]
    fn bottom_grounding_decides_closure() {
        let input = clauses(&["P(x,b)", "~P(a,z)"]);
        let mut t = Tableau::new(&input, vec![0, 0]);
        let a = t.attach(ROOT, Arc::new(input[0].clone()));
        let b = t.attach(a[0], Arc::new(input[1].clone()));
        assert!(!t.is_closed(b[0]));
    }

    #[test]
    fn used_links_are_not_offered_again() {
        let input = clauses(&["P(a)", "~P(x)"]);
        let mut t = Tableau::new(&input, vec![0, 0]);
        let links = t.links(ROOT);
        assert_eq!(links.len(), 1);
        let exp = t.expand(ROOT, &links[0]);
        assert!(!exp.closed.is_empty());
        for l in t.open_leaves() {
            assert!(t.links(l).iter().all(|k| k != &links[0]));
        }
    }

    #[test]
    fn ground_link_attaches_the_clauses_themselves() {
        let input = clauses(&["P(a) | Q(b)", "~P(a)"]);
        let mut t = Tableau::new(&input, vec![0, 0]);
        let link = t.links(ROOT).remove(0);
        t.expand(ROOT, &link);
        assert!(
            t.dump().starts_with("~P(a)\n  P(a) *\n  Q(b)\n"),
            "{}",
            t.dump()
        );
    }

    #[test]
    fn statuses() {
        let o = Options::default();
        assert_eq!(
            prove(&clauses(&["P(a)", "~P(x)"]), &o).result.status(),
            "Unsatisfiable"
        );
        let out = prove(&clauses(&["P(a)", "Q(b)"]), &o);
        assert_eq!(out.result.status(), "Satisfiable");
        let out = prove(
            &clauses(&["P(x,y)", "~P(a,z) | Q(a,z)", "~P(b,z) | R(b,z)", "~R(b,c)"]),
            &o,
        );
        assert_eq!(out.result.status(), "Unsatisfiable");
        assert_eq!(
            prove(&[clause("$false")], &o).result.status(),
            "Unsatisfiable"
        );
    }

    #[test]
    fn random_initial_path_is_reproducible() {
        let input = clauses(&["P(a) | Q(a) | R(a)", "S(b) | T(b)"]);
        let a = choose_initial_path(&input, InitialPathChoice::Random(7));
        assert_eq!(a, choose_initial_path(&input, InitialPathChoice::Random(7)));
        assert!(a[0] < 3 && a[1] < 2);
        assert_eq!(
            choose_initial_path(&input, InitialPathChoice::First),
            vec![0, 0]
        );
    }
}
