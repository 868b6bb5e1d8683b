//! Hyper-linking: in rounds, instantiate every clause by the simultaneous
//! unifier of one link per literal, then decide the grounded abstraction.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{Deadline, EngineKind, EngineResult, Options, Outcome, Proof, Stats};
use crate::ground::{extract_path, PropAbstraction};
use crate::logic::{
    variant_key, Clause, ClauseId, ClauseRef, Literal, Origin, Substitution, Term, VarSupply,
};
use crate::model::{domain_of, ground_instance_count, is_function_free, ModelCertificate};
use crate::sat::{SatResult, Solver};
use crate::unify::{Bindings, LinkIndex};

const MODEL_GROUND_BOUND: u64 = 1_000_000;

/// One link per literal of a clause, with their simultaneous unifier
/// restricted to the clause's variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperLink {
    pub clause: ClauseId,
    /// Partner clause and literal index, one per literal of the clause.
    pub partners: Vec<(ClauseId, usize)>,
    pub theta: Substitution,
}

/// Resumption state for hyper-link enumeration across rounds. Partner
/// literals are identified up to variants, since the unifier depends only
/// on the partner atom.
#[derive(Default)]
pub struct Cursor {
    atoms: HashMap<Vec<Literal>, u32>,
    tried: HashSet<(ClauseId, Vec<u32>)>,
}

impl Cursor {
    fn atom_id(&mut self, l: &Literal) -> u32 {
        let next = self.atoms.len() as u32;
        *self
            .atoms
            .entry(variant_key(std::slice::from_ref(l)))
            .or_insert(next)
    }
}

struct Candidate {
    partner: (ClauseId, usize),
    atom: Term,
    key: u32,
}

/// Enumerates hyper-links of `c` against the indexed clauses in literal
/// order, skipping combinations already tried through `cursor`. Returns the
/// new hyper-links and whether enumeration finished before reaching `cap`.
pub fn hyper_links_resumable(
    c: &Clause,
    index: &LinkIndex,
    cap: usize,
    cursor: &mut Cursor,
) -> (Vec<HyperLink>, bool) {
    let mut supply = VarSupply::above(index.clauses().iter().map(|d| d.as_ref()).chain([c]));
    let mut candidates = Vec::with_capacity(c.literals.len());
    for lit in &c.literals {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (d, j) in index.candidates(lit) {
            let key = cursor.atom_id(&d.literals[j]);
            if !seen.insert(key) {
                continue;
            }
            let renaming = supply.renaming(&d.literals[j].atom.vars());
            list.push(Candidate {
                partner: (d.id, j),
                atom: renaming.apply(&d.literals[j].atom),
                key,
            });
        }
        if list.is_empty() {
            return (Vec::new(), true);
        }
        candidates.push(list);
    }
    let mut search = Search {
        c,
        candidates: &candidates,
        cap,
        cursor,
        bindings: Bindings::new(),
        chosen: Vec::new(),
        out: Vec::new(),
        complete: true,
        vars: c.vars(),
    };
    search.dfs(0);
    (search.out, search.complete)
}

/// All hyper-links of `c` against `against`, up to `cap`, one per
/// combination of partner literals up to variants.
pub fn hyper_links(c: &Clause, against: &[ClauseRef], cap: usize) -> Vec<HyperLink> {
    let index = LinkIndex::from_clauses(against.iter().cloned());
    hyper_links_resumable(c, &index, cap, &mut Cursor::default()).0
}

struct Search<'a> {
    c: &'a Clause,
    candidates: &'a [Vec<Candidate>],
    cap: usize,
    cursor: &'a mut Cursor,
    bindings: Bindings,
    chosen: Vec<&'a Candidate>,
    out: Vec<HyperLink>,
    complete: bool,
    vars: Vec<crate::logic::Var>,
}

impl<'a> Search<'a> {
    /// Returns false once the cap is reached.
    fn dfs(&mut self, i: usize) -> bool {
        if i == self.c.literals.len() {
            let key = (self.c.id, self.chosen.iter().map(|k| k.key).collect());
            if self.cursor.tried.contains(&key) {
                return true;
            }
            if self.out.len() >= self.cap {
                self.complete = false;
                return false;
            }
            self.cursor.tried.insert(key);
            let theta = Substitution::from_pairs(
                self.vars
                    .iter()
                    .map(|v| (*v, self.bindings.resolve(&Term::var(*v)))),
            );
            self.out.push(HyperLink {
                clause: self.c.id,
                partners: self.chosen.iter().map(|k| k.partner).collect(),
                theta,
            });
            return true;
        }
        let candidates = self.candidates;
        for k in &candidates[i] {
            let mark = self.bindings.mark();
            if self.bindings.unify(&self.c.literals[i].atom, &k.atom) {
                self.chosen.push(k);
                let go_on = self.dfs(i + 1);
                self.chosen.pop();
                if !go_on {
                    self.bindings.undo(mark);
                    return false;
                }
            }
            self.bindings.undo(mark);
        }
        true
    }
}

struct State {
    clauses: Vec<ClauseRef>,
    keys: HashSet<Vec<Literal>>,
    abstraction: PropAbstraction,
    solver: Solver,
    cursor: Cursor,
    next_id: u32,
    derived: Vec<ClauseRef>,
    stats: Stats,
    trace: Vec<String>,
}

impl State {
    fn insert(&mut self, c: ClauseRef) -> bool {
        if !self.keys.insert(variant_key(&c.literals)) {
            return false;
        }
        let i = self.abstraction.add_clause(&c);
        self.solver.add_clause(&self.abstraction.clauses()[i]);
        self.clauses.push(c);
        true
    }

    fn check(&mut self, round: usize, added: usize) -> SatResult {
        self.stats.add("sat_calls", 1);
        let result = self.solver.solve();
        self.trace.push(format!(
            "round {}: +{} instances, abstraction vars={} clauses={}, status={}",
            round,
            added,
            self.abstraction.num_vars(),
            self.abstraction.num_clauses(),
            if result.is_sat() { "SAT" } else { "UNSAT" }
        ));
        result
    }

    /// One round over a snapshot of the clause set; returns the number of
    /// new instances and whether every clause's enumeration completed.
    fn round(&mut self, cap: usize, deadline: &Deadline) -> (usize, bool) {
        let snapshot = self.clauses.clone();
        let index = LinkIndex::from_clauses(snapshot.iter().cloned());
        let mut added = 0;
        let mut complete = true;
        for c in &snapshot {
            if deadline.passed() {
                return (added, false);
            }
            let (links, done) = hyper_links_resumable(c, &index, cap, &mut self.cursor);
            complete &= done;
            self.stats.add("hyperlinks", links.len() as u64);
            for hl in links {
                let lits = hl.theta.apply_literals(&c.literals);
                if self.keys.contains(&variant_key(&lits)) {
                    continue;
                }
                let id = ClauseId(self.next_id);
                self.next_id += 1;
                let mut parents = vec![c.id];
                parents.extend(hl.partners.iter().map(|p| p.0));
                let inst = Arc::new(Clause::new(
                    id,
                    lits,
                    Origin::Derived {
                        engine: "hyperlink",
                        parents,
                        subst: hl.theta,
                    },
                ));
                self.derived.push(Arc::clone(&inst));
                self.insert(inst);
                added += 1;
            }
        }
        self.stats.add("instances", added as u64);
        (added, complete)
    }

    fn refutation(&self) -> Proof {
        let mut lines = self.trace.clone();
        let core = self.solver.unsat_core().unwrap_or(&[]);
        for &i in core {
            let c = &self.clauses[i];
            let origin = match &c.origin {
                Origin::Input { name } => format!("input({name})"),
                Origin::Derived { parents, subst, .. } => {
                    let ps: Vec<String> = parents.iter().map(|p| p.to_string()).collect();
                    format!("hyperlink({}, {})", ps.join(", "), subst)
                }
            };
            lines.push(format!("{}. {} <- {}", c.id, c, origin));
        }
        let props: Vec<String> = core.iter().map(|i| i.to_string()).collect();
        lines.push(format!(
            "$false <- unsat-abstraction(prop clauses: {})",
            props.join(" ")
        ));
        Proof {
            text: lines.join("\n"),
        }
    }

    /// A model of the saturated set. Function-free sets are grounded over
    /// their constants and solved; otherwise the literals selected by the
    /// abstraction's model are reported.
    fn model(
        &self,
        input: &[Clause],
        assignment: &crate::sat::Assignment,
    ) -> Option<ModelCertificate> {
        let domain = domain_of(input);
        let mut cert = ModelCertificate::new(domain.clone());
        if !is_function_free(input) {
            let path = extract_path(assignment, &self.clauses, &self.abstraction);
            for (c, &k) in self.clauses.iter().zip(&path.choices) {
                cert.push(c.literals[k].clone(), Some(c.id));
            }
            return Some(cert);
        }
        let estimate = self
            .clauses
            .iter()
            .map(|c| ground_instance_count(c, domain.len()))
            .fold(0u64, u64::saturating_add);
        if estimate > MODEL_GROUND_BOUND {
            return None;
        }
        let mut abstraction = PropAbstraction::new();
        let mut solver = Solver::new();
        for c in &self.clauses {
            crate::model::for_each_grounding(&c.vars(), &domain, |g| {
                let i = abstraction.add_clause(&g.apply_clause(c));
                solver.add_clause(&abstraction.clauses()[i]);
                true
            });
        }
        let SatResult::Sat(a) = solver.solve() else {
            return None;
        };
        for v in 1..=abstraction.num_vars() {
            if a.value(v) {
                cert.push(Literal::pos(abstraction.atom(v as u32).clone()), None);
            }
        }
        Some(cert)
    }
}

pub fn saturate(input: &[Clause], options: &Options) -> Outcome {
    let deadline = Deadline::after(options.limits.timeout);
    let mut state = State {
        clauses: Vec::new(),
        keys: HashSet::new(),
        abstraction: PropAbstraction::new(),
        solver: Solver::new(),
        cursor: Cursor::default(),
        next_id: input.iter().map(|c| c.id.0 + 1).max().unwrap_or(0),
        derived: Vec::new(),
        stats: Stats::default(),
        trace: Vec::new(),
    };
    for c in input {
        state.insert(Arc::new(c.clone()));
    }
    let mut round = 0;
    let mut sat = state.check(round, 0);
    let result = loop {
        let SatResult::Sat(assignment) = &sat else {
            break EngineResult::Unsatisfiable(state.refutation());
        };
        if deadline.passed() {
            break EngineResult::ResourceOut("timeout".into());
        }
        if state.clauses.len() > options.limits.max_instances {
            break EngineResult::ResourceOut("instance limit".into());
        }
        round += 1;
        let (added, complete) = state.round(options.limits.hyperlink_cap, &deadline);
        if added == 0 && complete {
            break match state.model(input, assignment) {
                Some(m) => EngineResult::Satisfiable(m),
                None => EngineResult::ResourceOut("model extraction failed".into()),
            };
        }
        sat = state.check(round, added);
    };
    state.stats.set("rounds", round as u64);
    state.stats.set("clauses", state.clauses.len() as u64);
    let dump = options.dump.then(|| {
        let mut text = String::new();
        for line in &state.trace {
            text.push_str("c ");
            text.push_str(line);
            text.push('\n');
        }
        text.push_str(&state.abstraction.to_dimacs());
        text
    });
    Outcome {
        engine: EngineKind::HyperLink,
        result,
        stats: state.stats,
        derived: state.derived,
        dump,
    }
}

/// Round trace lines of a run, for inspection in tests and the CLI.
pub fn trace_of(outcome: &Outcome) -> Vec<&str> {
    match &outcome.result {
        EngineResult::Unsatisfiable(p) => {
            p.text.lines().filter(|l| l.starts_with("round ")).collect()
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::notation::{clauses, term, var};

    fn running_example() -> Vec<ClauseRef> {
        clauses(&["P(x,y)", "~P(a,z) | Q(a,z)", "~P(b,z) | R(b,z)", "~R(b,c)"])
            .into_iter()
            .map(Arc::new)
            .collect()
    }

    #[test]
    fn clause_with_unlinked_literal_has_none() {
        let set = running_example();
        assert!(hyper_links(&set[1], &set, 100).is_empty());
    }

    #[test]
    fn unit_clause_gets_one_per_partner() {
        let set = running_example();
        let hls = hyper_links(&set[0], &set, 100);
        assert_eq!(hls.len(), 2);
        assert_eq!(hls[0].partners, vec![(ClauseId(1), 0)]);
        assert_eq!(hls[0].theta.get(var("x")), Some(&term("a")));
        assert_eq!(hls[1].theta.get(var("x")), Some(&term("b")));
        let y0 = hls[0].theta.get(var("y")).unwrap();
        assert!(y0.is_var() && *y0 != term("z"));
    }

    #[test]
    fn ground_clause_without_complements() {
        let set: Vec<ClauseRef> = clauses(&["P(a)", "Q(b)"])
            .into_iter()
            .map(Arc::new)
            .collect();
        assert!(hyper_links(&set[0], &set, 100).is_empty());
    }

    #[test]
    fn cap_and_resumption() {
        let set: Vec<ClauseRef> = clauses(&["P(x)", "~P(a)", "~P(b)", "~P(c)"])
            .into_iter()
            .map(Arc::new)
            .collect();
        let index = LinkIndex::from_clauses(set.iter().cloned());
        let mut cursor = Cursor::default();
        let (first, done) = hyper_links_resumable(&set[0], &index, 2, &mut cursor);
        assert_eq!((first.len(), done), (2, false));
        let (second, done) = hyper_links_resumable(&set[0], &index, 2, &mut cursor);
        assert_eq!((second.len(), done), (1, true));
        assert_eq!(second[0].partners, vec![(ClauseId(3), 0)]);
    }

    #[test]
    fn one_link_per_literal_with_simultaneous_unifier() {
        let set: Vec<ClauseRef> = clauses(&["P(x) | Q(x)", "~P(a)", "~Q(a)", "~Q(b)"])
            .into_iter()
            .map(Arc::new)
            .collect();
        let hls = hyper_links(&set[0], &set, 100);
        // Q(x) with ~Q(b) conflicts with P(x) with ~P(a)
        assert_eq!(hls.len(), 1);
        assert_eq!(hls[0].partners.len(), 2);
        assert_eq!(hls[0].theta.get(var("x")), Some(&term("a")));
    }

    #[test]
    fn running_example_needs_two_rounds() {
        let input: Vec<Clause> = running_example().iter().map(|c| (**c).clone()).collect();
        let out = saturate(&input, &Options::default());
        assert_eq!(out.result.status(), "Unsatisfiable");
        let trace = trace_of(&out);
        assert!(trace.len() <= 3, "{trace:?}");
        assert!(trace[0].starts_with("round 0: +0 instances"));
        assert!(trace.last().unwrap().ends_with("status=UNSAT"));
    }

    #[test]
    fn initial_check_catches_ground_contradiction() {
        let out = saturate(&clauses(&["P(a)", "~P(a)"]), &Options::default());
        assert_eq!(
            trace_of(&out),
            vec!["round 0: +0 instances, abstraction vars=1 clauses=2, status=UNSAT"]
        );
    }

    #[test]
    fn satisfiable_cluster_still_instantiates() {
        let out = saturate(
            &clauses(&["S(x)", "~S(y) | S(g(y))", "T(a)"]),
            &Options {
                limits: super::super::Limits {
                    max_instances: 50,
                    ..Default::default()
                },
                ..Default::default()
            },
        );
        assert!(!out.derived.is_empty());
        assert_eq!(out.result.status(), "ResourceOut");
    }

    #[test]
    fn function_free_satisfiable_reaches_fixpoint() {
        let out = saturate(
            &clauses(&["P(x,y)", "~P(a,z) | Q(a,z)", "~P(b,z) | R(b,z)"]),
            &Options::default(),
        );
        assert_eq!(out.result.status(), "Satisfiable");
    }
}
