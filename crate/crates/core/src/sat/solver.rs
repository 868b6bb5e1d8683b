use std::collections::HashSet;

use super::{Assignment, PropCnf, SatResult};

// Literal codes: 2*var for the positive literal, 2*var+1 for the negative.
type Lit = u32;

fn encode(l: i32) -> Lit {
    (l.unsigned_abs() << 1) | (l < 0) as u32
}

#[cfg(test)]
fn decode(l: Lit) -> i32 {
    let v = (l >> 1) as i32;
    if l & 1 == 1 {
        -v
    } else {
        v
    }
}

fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

const UNDEF: i8 = 0;
const TRUE: i8 = 1;
const FALSE: i8 = -1;

fn lit_value(assigns: &[i8], l: Lit) -> i8 {
    let v = assigns[var_of(l)];
    if l & 1 == 1 {
        -v
    } else {
        v
    }
}

#[derive(Clone, Debug)]
enum Source {
    Original(usize),
    Learned {
        resolved: Vec<usize>,
        zero_vars: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
struct DbClause {
    lits: Vec<Lit>,
    source: Source,
}

/// Incremental CDCL solver. Clauses may be added between `solve` calls;
/// learned clauses are kept since clause addition never invalidates them.
///
/// Decisions follow a static order: most occurrences first, ties broken by
/// lowest index, negative phase. The solver is fully deterministic.
#[derive(Clone, Debug, Default)]
pub struct Solver {
    num_vars: usize,
    num_original: usize,
    clauses: Vec<DbClause>,
    watches: Vec<Vec<usize>>,
    assigns: Vec<i8>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    occurrences: Vec<usize>,
    order: Vec<usize>,
    order_dirty: bool,
    // Set once unsatisfiability is established; holds the original clause
    // indices of a refutation.
    core: Option<Vec<usize>>,
    conflicts: u64,
    decisions: u64,
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Number of clauses added through `add_clause`.
    pub fn num_clauses(&self) -> usize {
        self.num_original
    }

    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    pub fn decisions(&self) -> u64 {
        self.decisions
    }

    fn ensure_vars(&mut self, n: usize) {
        if n <= self.num_vars {
            return;
        }
        self.num_vars = n;
        self.assigns.resize(n + 1, UNDEF);
        self.level.resize(n + 1, 0);
        self.reason.resize(n + 1, None);
        self.occurrences.resize(n + 1, 0);
        self.watches.resize(2 * (n + 1), Vec::new());
        self.order_dirty = true;
    }

    pub fn add_cnf(&mut self, cnf: &PropCnf) {
        self.ensure_vars(cnf.num_vars);
        for c in &cnf.clauses {
            self.add_clause(c);
        }
    }

    /// Adds a clause and returns its index among added clauses.
    pub fn add_clause(&mut self, clause: &[i32]) -> usize {
        let index = self.num_original;
        self.num_original += 1;
        let max_var = clause
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        self.ensure_vars(max_var);
        if self.core.is_some() {
            return index;
        }
        self.backtrack(0);

        let mut lits: Vec<Lit> = clause.iter().map(|&l| encode(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            // tautology: kept by the caller's CNF, irrelevant to the search
            return index;
        }
        for &l in &lits {
            self.occurrences[var_of(l)] += 1;
        }
        self.order_dirty = true;

        let ci = self.clauses.len();
        // non-false literals first so they become the watches
        lits.sort_by_key(|&l| lit_value(&self.assigns, l) == FALSE);
        self.clauses.push(DbClause {
            lits,
            source: Source::Original(index),
        });
        let lits = &self.clauses[ci].lits;
        match lits.len() {
            0 => self.core = Some(vec![index]),
            1 => match lit_value(&self.assigns, lits[0]) {
                TRUE => {}
                FALSE => self.core = Some(self.core_from(ci)),
                _ => self.enqueue(lits[0], Some(ci)),
            },
            _ => {
                let (l0, l1) = (lits[0], lits[1]);
                self.watches[l0 as usize].push(ci);
                self.watches[l1 as usize].push(ci);
                let (v0, v1) = (lit_value(&self.assigns, l0), lit_value(&self.assigns, l1));
                if v0 == FALSE {
                    self.core = Some(self.core_from(ci));
                } else if v0 == UNDEF && v1 == FALSE {
                    self.enqueue(l0, Some(ci));
                }
            }
        }
        index
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = var_of(l);
        debug_assert_eq!(self.assigns[v], UNDEF);
        self.assigns[v] = if l & 1 == 1 { FALSE } else { TRUE };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn backtrack(&mut self, target: usize) {
        if self.decision_level() <= target {
            return;
        }
        let keep = self.trail_lim[target];
        for &l in &self.trail[keep..] {
            let v = var_of(l);
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(target);
        self.qhead = self.qhead.min(keep);
    }

    /// Unit propagation with two watched literals. Returns a conflicting
    /// clause if one is found.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let lits = &mut self.clauses[ci].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                if lit_value(&self.assigns, lits[0]) == TRUE {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let replacement =
                    (2..lits.len()).find(|&k| lit_value(&self.assigns, lits[k]) != FALSE);
                if let Some(k) = replacement {
                    lits.swap(1, k);
                    self.watches[lits[1] as usize].push(ci);
                    continue;
                }
                ws[j] = ci;
                j += 1;
                let first = lits[0];
                if lit_value(&self.assigns, first) == FALSE {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, Some(ci));
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    /// First-UIP conflict analysis. Returns the learned clause (asserting
    /// literal first, highest remaining level second), the backtrack level
    /// and the clause's derivation.
    fn analyze(&mut self, conflict: usize) -> (Vec<Lit>, usize, Source) {
        let mut seen = vec![false; self.num_vars + 1];
        let mut zero_seen = HashSet::new();
        let mut learnt: Vec<Lit> = vec![0];
        let mut resolved = Vec::new();
        let mut zero_vars = Vec::new();
        let mut pending = 0usize;
        let mut clause = conflict;
        let mut index = self.trail.len();
        let current = self.decision_level();
        let asserting;
        let mut skip_first = false;
        loop {
            resolved.push(clause);
            let start = usize::from(skip_first);
            for k in start..self.clauses[clause].lits.len() {
                let q = self.clauses[clause].lits[k];
                let v = var_of(q);
                if self.level[v] == 0 {
                    if zero_seen.insert(v) {
                        zero_vars.push(v);
                    }
                    continue;
                }
                if !seen[v] {
                    seen[v] = true;
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if seen[var_of(self.trail[index])] {
                    break;
                }
            }
            let p = self.trail[index];
            seen[var_of(p)] = false;
            pending -= 1;
            if pending == 0 {
                asserting = p ^ 1;
                break;
            }
            clause = self.reason[var_of(p)].expect("implied literal has a reason");
            skip_first = true;
        }
        learnt[0] = asserting;
        let mut back_level = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var_of(learnt[k])] > self.level[var_of(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back_level = self.level[var_of(learnt[1])];
        }
        (
            learnt,
            back_level,
            Source::Learned {
                resolved,
                zero_vars,
            },
        )
    }

    /// Original clauses used to derive a conflict at level 0.
    fn core_from(&self, conflict: usize) -> Vec<usize> {
        let mut core = Vec::new();
        let mut seen_clauses = HashSet::new();
        let mut seen_vars = HashSet::new();
        let mut clause_stack = vec![conflict];
        let mut var_stack: Vec<usize> = Vec::new();
        // the conflicting clause is false: all its literals need justification
        var_stack.extend(self.clauses[conflict].lits.iter().map(|&l| var_of(l)));
        loop {
            if let Some(v) = var_stack.pop() {
                if !seen_vars.insert(v) {
                    continue;
                }
                if let Some(r) = self.reason[v] {
                    clause_stack.push(r);
                    let lits = &self.clauses[r].lits;
                    var_stack.extend(lits.iter().map(|&l| var_of(l)).filter(|&w| w != v));
                }
            } else if let Some(c) = clause_stack.pop() {
                if !seen_clauses.insert(c) {
                    continue;
                }
                match &self.clauses[c].source {
                    Source::Original(i) => core.push(*i),
                    Source::Learned {
                        resolved,
                        zero_vars,
                    } => {
                        clause_stack.extend(resolved.iter().copied());
                        var_stack.extend(zero_vars.iter().copied());
                    }
                }
            } else {
                break;
            }
        }
        core.sort_unstable();
        core
    }

    fn refresh_order(&mut self) {
        if !self.order_dirty {
            return;
        }
        let occ = &self.occurrences;
        let mut order: Vec<usize> = (1..=self.num_vars).collect();
        order.sort_by(|&a, &b| occ[b].cmp(&occ[a]).then(a.cmp(&b)));
        self.order = order;
        self.order_dirty = false;
    }

    fn pick_branch(&self) -> Option<Lit> {
        self.order
            .iter()
            .find(|&&v| self.assigns[v] == UNDEF)
            .map(|&v| encode(-(v as i32)))
    }

    pub fn solve(&mut self) -> SatResult {
        if self.core.is_some() {
            return SatResult::Unsat;
        }
        self.backtrack(0);
        self.refresh_order();
        loop {
            if let Some(conflict) = self.propagate() {
                self.conflicts += 1;
                if self.decision_level() == 0 {
                    self.core = Some(self.core_from(conflict));
                    return SatResult::Unsat;
                }
                let (learnt, back_level, source) = self.analyze(conflict);
                self.backtrack(back_level);
                let ci = self.clauses.len();
                let asserting = learnt[0];
                if learnt.len() > 1 {
                    self.watches[learnt[0] as usize].push(ci);
                    self.watches[learnt[1] as usize].push(ci);
                }
                self.clauses.push(DbClause {
                    lits: learnt,
                    source,
                });
                self.enqueue(asserting, Some(ci));
            } else {
                match self.pick_branch() {
                    Some(lit) => {
                        self.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(lit, None);
                    }
                    None => {
                        let mut model = Assignment::all_false(self.num_vars);
                        for v in 1..=self.num_vars {
                            model.set(v, self.assigns[v] == TRUE);
                        }
                        return SatResult::Sat(model);
                    }
                }
            }
        }
    }

    /// Indices (in insertion order) of added clauses that together are
    /// unsatisfiable. Available after `solve` returned `Unsat`.
    pub fn unsat_core(&self) -> Option<&[usize]> {
        self.core.as_deref()
    }
}
