//! Inst-Gen: saturate under the instance-generation rule, restricted to
//! links between literals selected by the current propositional model, and
//! decide the grounded abstraction with the SAT solver after each batch.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use super::{Deadline, EngineKind, EngineResult, Options, Outcome, Proof, Stats};
use crate::ground::{extract_path, PropAbstraction};
use crate::logic::{
    is_instance_of, variant_key, Clause, ClauseId, ClauseRef, Literal, Origin, Symbol,
};
use crate::model::{domain_of, generation_model, is_function_free, ModelCertificate};
use crate::sat::{SatResult, Solver};
use crate::unify::{link_between, Link};

const BATCH: usize = 64;

/// Conclusions of one inference: the premises instantiated by the link's
/// unifier, keeping only proper instances of their premise that `known`
/// does not report as already present.
pub fn instgen_step(
    premise1: &Clause,
    premise2: &Clause,
    link: &Link,
    known: impl Fn(&[Literal]) -> bool,
) -> Vec<Vec<Literal>> {
    let mut out: Vec<Vec<Literal>> = Vec::new();
    let candidates = [
        (premise1, link.left_instance(premise1)),
        (premise2, link.right_instance(premise2)),
    ];
    for (premise, lits) in candidates {
        let key = variant_key(&lits);
        if key == variant_key(&premise.literals) || known(&key) {
            continue;
        }
        if out.iter().any(|o| variant_key(o) == key) {
            continue;
        }
        out.push(lits);
    }
    out
}

/// Saturation state. Active clause `i` is abstraction clause `i` and solver
/// clause `i`.
pub struct InstGen {
    active: Vec<ClauseRef>,
    keys: HashSet<Vec<Literal>>,
    abstraction: PropAbstraction,
    solver: Solver,
    selected: Vec<usize>,
    processed: HashSet<(ClauseId, usize, ClauseId, usize)>,
    next_id: u32,
    derived: Vec<ClauseRef>,
    trace: Vec<String>,
    stats: Stats,
    function_free: bool,
    domain_source: Vec<Clause>,
}

impl InstGen {
    pub fn new(input: &[Clause]) -> Self {
        let mut state = InstGen {
            active: Vec::new(),
            keys: HashSet::new(),
            abstraction: PropAbstraction::new(),
            solver: Solver::new(),
            selected: Vec::new(),
            processed: HashSet::new(),
            next_id: input.iter().map(|c| c.id.0 + 1).max().unwrap_or(0),
            derived: Vec::new(),
            trace: Vec::new(),
            stats: Stats::default(),
            function_free: is_function_free(input),
            domain_source: input.to_vec(),
        };
        for c in input {
            let name = match &c.origin {
                Origin::Input { name } => name.clone(),
                Origin::Derived { .. } => String::new(),
            };
            if state.insert(Arc::new(c.clone())) {
                state
                    .trace
                    .push(format!("{}. {} <- input({})", c.id, c, name));
            }
        }
        state
    }

    pub fn active(&self) -> &[ClauseRef] {
        &self.active
    }

    /// Index of the selected literal of each active clause, from the last
    /// satisfiable abstraction.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    fn insert(&mut self, c: ClauseRef) -> bool {
        if !self.keys.insert(variant_key(&c.literals)) {
            return false;
        }
        let idx = self.abstraction.add_clause(&c);
        self.solver.add_clause(&self.abstraction.clauses()[idx]);
        self.active.push(c);
        true
    }

    /// Runs the SAT solver on the abstraction; on success records the path.
    pub fn check(&mut self) -> bool {
        self.stats.add("sat_calls", 1);
        match self.solver.solve() {
            SatResult::Sat(model) => {
                self.selected = extract_path(&model, &self.active, &self.abstraction).choices;
                true
            }
            SatResult::Unsat => false,
        }
    }

    /// Unprocessed links between selected literals, oldest clauses first.
    pub fn select_relevant_links(&mut self) -> Vec<(usize, usize, Link)> {
        let mut negatives: HashMap<Symbol, Vec<usize>> = HashMap::new();
        for (i, c) in self.active.iter().enumerate() {
            let l = &c.literals[self.selected[i]];
            if !l.positive {
                negatives.entry(l.predicate()).or_default().push(i);
            }
        }
        let mut pairs = Vec::new();
        for (i, c) in self.active.iter().enumerate() {
            let l = &c.literals[self.selected[i]];
            if !l.positive {
                continue;
            }
            for &j in negatives.get(&l.predicate()).into_iter().flatten() {
                pairs.push((i.max(j), i.min(j), i, j));
            }
        }
        pairs.sort_unstable();
        let mut agenda = Vec::new();
        for (_, _, i, j) in pairs {
            let (c, d) = (&self.active[i], &self.active[j]);
            let key = (c.id, self.selected[i], d.id, self.selected[j]);
            if !self.processed.insert(key) {
                continue;
            }
            if let Some(link) = link_between(c, self.selected[i], d, self.selected[j]) {
                agenda.push((i, j, link));
            }
        }
        agenda
    }

    /// Applies the rule to one link; returns the number of new clauses.
    fn infer(&mut self, i: usize, j: usize, link: &Link) -> usize {
        let (c, d) = (Arc::clone(&self.active[i]), Arc::clone(&self.active[j]));
        let keys = &self.keys;
        let conclusions = instgen_step(&c, &d, link, |k| keys.contains(k));
        let mut added = 0;
        for lits in conclusions {
            let id = ClauseId(self.next_id);
            self.next_id += 1;
            let clause = Arc::new(Clause::new(
                id,
                lits,
                Origin::Derived {
                    engine: "instgen",
                    parents: vec![c.id, d.id],
                    subst: link.mgu.clone(),
                },
            ));
            debug_assert!(
                is_instance_of(&clause.literals, &c.literals)
                    || is_instance_of(&clause.literals, &d.literals)
            );
            self.trace.push(format!(
                "{}. {} <- instgen({}, {}, {})",
                id, clause, c.id, d.id, link.mgu
            ));
            self.derived.push(Arc::clone(&clause));
            self.insert(clause);
            added += 1;
        }
        self.stats.add("instances", added as u64);
        added
    }

    fn refutation(&self) -> Proof {
        let core = self.solver.unsat_core().unwrap_or(&[]);
        let mut text = self.trace.join("\n");
        let props: Vec<String> = core.iter().map(|i| i.to_string()).collect();
        let ids: Vec<String> = core
            .iter()
            .map(|&i| self.abstraction.source(i).to_string())
            .collect();
        let _ = write!(
            text,
            "\n$false <- unsat-abstraction(prop clauses: {}; clauses: {})",
            props.join(" "),
            ids.join(" ")
        );
        Proof { text }
    }

    /// Candidate interpretation generated from a closed state: each ground
    /// instance whose clause is its most specific representation and which
    /// is not yet true contributes the instance of its selected literal, if
    /// undefined. Clauses are visited in creation order, groundings
    /// lexicographically.
    pub fn build_model(&self) -> ModelCertificate {
        let domain = domain_of(&self.domain_source);
        if !self.function_free {
            let mut cert = ModelCertificate::new(domain);
            for (c, &k) in self.active.iter().zip(&self.selected) {
                cert.push(c.literals[k].clone(), Some(c.id));
            }
            return cert;
        }
        let selected: Vec<(&Clause, usize)> = self
            .active
            .iter()
            .zip(&self.selected)
            .map(|(c, &k)| (c.as_ref(), k))
            .collect();
        generation_model(&selected, domain)
    }

    fn dump(&self) -> String {
        self.abstraction.to_dimacs()
    }
}

pub fn saturate(input: &[Clause], options: &Options) -> Outcome {
    let deadline = Deadline::after(options.limits.timeout);
    let mut state = InstGen::new(input);
    let result = loop {
        if deadline.passed() {
            break EngineResult::ResourceOut("timeout".into());
        }
        if !state.check() {
            break EngineResult::Unsatisfiable(state.refutation());
        }
        let agenda = state.select_relevant_links();
        if agenda.is_empty() {
            break EngineResult::Satisfiable(state.build_model());
        }
        let mut added = 0;
        for (i, j, link) in &agenda {
            added += state.infer(*i, *j, link);
            if added >= BATCH || deadline.passed() {
                break;
            }
        }
        if state.active.len() > options.limits.max_instances {
            break EngineResult::ResourceOut("instance limit".into());
        }
    };
    state.stats.set("active", state.active.len() as u64);
    Outcome {
        engine: EngineKind::InstGen,
        result,
        dump: options.dump.then(|| state.dump()),
        stats: state.stats,
        derived: state.derived,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::notation::{clause, clauses};

    fn step(c: &str, d: &str) -> Vec<Vec<Literal>> {
        let c = clause(c);
        let mut d = clause(d);
        d.id = ClauseId(1);
        let link = link_between(&c, 0, &d, 0).expect("link");
        instgen_step(&c, &d, &link, |_| false)
            .iter()
            .map(|lits| variant_key(lits))
            .collect()
    }

    fn key(src: &str) -> Vec<Literal> {
        variant_key(&clause(src).literals)
    }

    #[test]
    fn step_examples() {
        assert_eq!(step("P(x,y)", "~P(a,z) | Q(a,z)"), vec![key("P(a,z)")]);
        assert!(step("P(a,z)", "~P(a,z) | Q(a,z)").is_empty());
        assert_eq!(step("P(x,y)", "~P(b,z) | R(b,z)"), vec![key("P(b,z)")]);
        assert_eq!(
            step("P(x,x)", "~P(a,z) | Q(z)"),
            vec![key("P(a,a)"), key("~P(a,a) | Q(a)")]
        );
    }

    #[test]
    fn known_variants_are_suppressed() {
        let c = clause("P(x,y)");
        let mut d = clause("~P(a,z) | Q(a,z)");
        d.id = ClauseId(1);
        let link = link_between(&c, 0, &d, 0).unwrap();
        let known = key("P(a,w)");
        assert!(instgen_step(&c, &d, &link, |k| k == known.as_slice()).is_empty());
    }

    fn status(srcs: &[&str]) -> &'static str {
        saturate(&clauses(srcs), &Options::default())
            .result
            .status()
    }

    #[test]
    fn running_example_is_unsatisfiable() {
        let out = saturate(
            &clauses(&["P(x,y)", "~P(a,z) | Q(a,z)", "~P(b,z) | R(b,z)", "~R(b,c)"]),
            &Options::default(),
        );
        let EngineResult::Unsatisfiable(proof) = &out.result else {
            panic!("{:?}", out.result)
        };
        assert!(proof.text.contains("<- instgen("));
        assert!(proof
            .text
            .lines()
            .last()
            .unwrap()
            .starts_with("$false <- unsat-abstraction"));
    }

    #[test]
    fn satisfiable_examples() {
        assert_eq!(
            status(&["P(x,y)", "~P(a,z) | Q(a,z)", "~P(b,z) | R(b,z)"]),
            "Satisfiable"
        );
        assert_eq!(status(&["P(x)"]), "Satisfiable");
        assert_eq!(status(&[]), "Satisfiable");
        assert_eq!(status(&["P(a)", "~P(a)"]), "Unsatisfiable");
        assert_eq!(status(&["$false"]), "Unsatisfiable");
    }

    #[test]
    fn single_positive_unit_needs_no_inference() {
        let out = saturate(&clauses(&["P(x)"]), &Options::default());
        assert!(out.derived.is_empty());
        assert_eq!(out.result.certificate().unwrap().to_text(), "P(X0)\n");
    }

    #[test]
    fn selected_links_join_selected_literals() {
        let mut state = InstGen::new(&clauses(&[
            "P(x,y)",
            "~P(a,z) | Q(a,z)",
            "~P(b,z) | R(b,z)",
            "~R(b,c)",
        ]));
        assert!(state.check());
        let selected = state.selected().to_vec();
        let agenda = state.select_relevant_links();
        assert!(!agenda.is_empty());
        for (i, j, link) in &agenda {
            assert_eq!(link.left_lit, selected[*i]);
            assert_eq!(link.right_lit, selected[*j]);
        }
        // a second call offers nothing new until the path changes
        assert!(state.select_relevant_links().is_empty());
    }
}
