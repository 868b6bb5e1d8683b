//! Randomised invariant checks, shared by the property tests and the
//! acceptance run. Each takes a case count and reports the first failure.

use std::collections::HashSet;
use std::fmt::Debug;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use instantia_core::engine::disconnection::{choose_initial_path, Tableau, ROOT};
use instantia_core::engine::fdpll::{
    candidate_value, close_branch, find_falsified_instance, split,
};
use instantia_core::engine::hyperlink::hyper_links;
use instantia_core::engine::InitialPathChoice;
use instantia_core::frontend::fuzz::{generate, FuzzConfig};
use instantia_core::frontend::parse_tptp_cnf;
use instantia_core::ground::{
    bottom, bottom_ground, bottom_literal, extract_path, PropAbstraction,
};
use instantia_core::logic::{
    is_instance_of, is_proper_instance, is_variant, rename_apart, Clause, ClauseId, Literal,
    Origin, Substitution, Symbol, Term, Var, VarSupply,
};
use instantia_core::model::for_each_grounding;
use instantia_core::sat::{solve, PropCnf, SatResult, Solver};
use instantia_core::unify::{match_terms, mgu};

type Outcome = Result<(), TestCaseError>;

fn check<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Outcome) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    let config = ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    };
    TestRunner::new(config)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn constant(name: &str) -> Term {
    Term::constant(Symbol::intern(name))
}

// Terms over X0..X3, constants a and b, f/1 and g/2.
fn term(depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (0u32..4).prop_map(|v| Term::var(Var(v))),
        Just(constant("a")),
        Just(constant("b")),
    ];
    leaf.prop_recursive(depth, 8, 2, |inner| {
        prop_oneof![
            inner
                .clone()
                .prop_map(|t| Term::app(Symbol::intern("f"), vec![t])),
            (inner.clone(), inner).prop_map(|(s, t)| Term::app(Symbol::intern("g"), vec![s, t])),
        ]
    })
}

fn atom(depth: u32) -> impl Strategy<Value = Term> {
    (term(depth), term(depth)).prop_map(|(s, t)| Term::app(Symbol::intern("p"), vec![s, t]))
}

fn literal() -> impl Strategy<Value = Literal> {
    let atom = prop_oneof![
        atom(2),
        term(2).prop_map(|t| Term::app(Symbol::intern("q"), vec![t])),
    ];
    (any::<bool>(), atom).prop_map(|(positive, atom)| Literal::new(positive, atom))
}

fn clause() -> impl Strategy<Value = Clause> {
    prop::collection::vec(literal(), 1..4).prop_map(|lits| Clause::input(0, "c", lits))
}

fn substitution() -> impl Strategy<Value = Substitution> {
    prop::collection::vec(prop::option::of(term(2)), 4).prop_map(|images| {
        Substitution::from_pairs(
            images
                .into_iter()
                .enumerate()
                .filter_map(|(v, t)| t.map(|t| (Var(v as u32), t))),
        )
    })
}

fn tuple(vars: &[Var]) -> Term {
    Term::app(
        Symbol::intern("tuple"),
        vars.iter().map(|&v| Term::var(v)).collect(),
    )
}

fn all_vars(a: &Term, b: &Term) -> Vec<Var> {
    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars
}

pub fn compose_applies_in_sequence(cases: u32) -> Result<(), String> {
    check(
        cases,
        (substitution(), substitution(), term(4)),
        |(s1, s2, t)| {
            prop_assert_eq!(s1.compose(&s2).apply(&t), s2.apply(&s1.apply(&t)));
            Ok(())
        },
    )
}

pub fn variant_is_an_equivalence(cases: u32) -> Result<(), String> {
    check(cases, (clause(), 0u32..50), |(c, skip)| {
        let mut supply = VarSupply::above([&c]);
        for _ in 0..skip {
            supply.fresh();
        }
        let r1 = rename_apart(&c, &mut supply);
        let r2 = rename_apart(&r1, &mut supply);
        prop_assert!(is_variant(&c, &c));
        prop_assert!(is_variant(&c, &r1) && is_variant(&r1, &c));
        prop_assert!(is_variant(&r1, &r2) && is_variant(&c, &r2));
        Ok(())
    })
}

pub fn proper_instance_is_irreflexive_and_transitive(cases: u32) -> Result<(), String> {
    check(
        cases,
        (clause(), substitution(), substitution()),
        |(c, s1, s2)| {
            let d = s1.apply_clause(&c);
            let e = s2.apply_clause(&d);
            prop_assert!(!is_proper_instance(&c, &c));
            if is_proper_instance(&d, &c) && is_proper_instance(&e, &d) {
                prop_assert!(is_proper_instance(&e, &c));
            }
            prop_assert!(is_instance_of(&e.literals, &c.literals));
            Ok(())
        },
    )
}

pub fn rename_apart_gives_a_variant(cases: u32) -> Result<(), String> {
    check(cases, clause(), |c| {
        let mut supply = VarSupply::above([&c]);
        let r = rename_apart(&c, &mut supply);
        prop_assert!(is_variant(&c, &r));
        prop_assert!(c.vars().iter().all(|v| !r.vars().contains(v)));
        Ok(())
    })
}

pub fn mgu_is_idempotent(cases: u32) -> Result<(), String> {
    check(cases, (atom(3), atom(3)), |(a, b)| {
        if let Some(s) = mgu(&a, &b) {
            prop_assert_eq!(s.apply(&a), s.apply(&b));
            prop_assert!(s.is_idempotent());
            prop_assert_eq!(s.compose(&s), s);
        }
        Ok(())
    })
}

/// Every unifier found by brute force over {a, b, f(a)} factors through the
/// mgu, and the mgu fails only when there is no such unifier.
pub fn mgu_is_most_general(cases: u32) -> Result<(), String> {
    let universe = vec![
        constant("a"),
        constant("b"),
        Term::app(Symbol::intern("f"), vec![constant("a")]),
    ];
    check(cases, (atom(2), atom(2)), |(a, b)| {
        let vars = all_vars(&a, &b);
        let sigma = mgu(&a, &b);
        let mut unifiers = 0;
        let mut failure = None;
        for_each_grounding(&vars, &universe, |tau| {
            if tau.apply(&a) != tau.apply(&b) {
                return true;
            }
            unifiers += 1;
            let factors = sigma.as_ref().is_some_and(|s| {
                match_terms(&s.apply(&tuple(&vars)), &tau.apply(&tuple(&vars))).is_some()
            });
            if !factors {
                failure = Some(tau.clone());
            }
            failure.is_none()
        });
        prop_assert!(
            failure.is_none(),
            "{:?} does not factor through {:?}",
            failure,
            sigma
        );
        if sigma.is_none() {
            prop_assert_eq!(unifiers, 0);
        }
        Ok(())
    })
}

pub fn mgu_is_symmetric(cases: u32) -> Result<(), String> {
    check(cases, (atom(3), atom(3)), |(a, b)| {
        match (mgu(&a, &b), mgu(&b, &a)) {
            (None, None) => {}
            (Some(s), Some(t)) => {
                let (sa, ta) = (s.apply(&a), t.apply(&a));
                prop_assert!(match_terms(&sa, &ta).is_some() && match_terms(&ta, &sa).is_some());
            }
            (s, t) => prop_assert!(false, "{:?} vs {:?}", s, t),
        }
        Ok(())
    })
}

pub fn bottom_ground_is_idempotent(cases: u32) -> Result<(), String> {
    check(cases, clause(), |c| {
        let once = bottom_ground(&c);
        prop_assert!(once.is_ground());
        prop_assert_eq!(bottom_ground(&once).literals, once.literals);
        Ok(())
    })
}

pub fn tptp_round_trip(cases: u32) -> Result<(), String> {
    check(cases, prop::collection::vec(clause(), 1..6), |cs| {
        let text: String = cs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("cnf(c{i}, axiom, {c}).\n"))
            .collect();
        let p = parse_tptp_cnf(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(p.clauses.len(), cs.len());
        for (parsed, orig) in p.clauses.iter().zip(&cs) {
            prop_assert!(is_variant(parsed, orig), "{} vs {}", parsed, orig);
        }
        Ok(())
    })
}

/// A fuzz problem plus random constant instances of its clauses.
fn instance_set(seed: u64) -> Vec<Clause> {
    let p = generate(seed, &FuzzConfig::default());
    let domain = p.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = p.clauses.clone();
    for c in &p.clauses {
        for _ in 0..rng.gen_range(0..3) {
            let mut s = Substitution::new();
            for v in c.vars() {
                if rng.gen_bool(0.6) {
                    s.bind(v, domain[rng.gen_range(0..domain.len())].clone());
                }
            }
            let origin = Origin::Input {
                name: String::new(),
            };
            let id = ClauseId(out.len() as u32);
            out.push(Clause::new(id, s.apply_literals(&c.literals), origin));
        }
    }
    out
}

/// No two literals selected from a satisfiable abstraction have
/// complementary ⊥-images.
pub fn extracted_path_is_link_free(cases: u32) -> Result<(), String> {
    check(cases, any::<u64>(), |seed| {
        let set = instance_set(seed);
        let abs = PropAbstraction::from_clauses(&set);
        if let SatResult::Sat(model) = solve(&abs.to_cnf()) {
            let path = extract_path(&model, &set, &abs);
            let grounded: HashSet<Literal> = path
                .selected(&set)
                .into_iter()
                .map(bottom_literal)
                .collect();
            for l in &grounded {
                prop_assert!(
                    !grounded.contains(&l.complement()),
                    "{} and its complement",
                    l
                );
            }
        }
        Ok(())
    })
}

pub fn hyper_links_have_one_partner_per_literal(cases: u32) -> Result<(), String> {
    check(cases, any::<u64>(), |seed| {
        let p = generate(seed, &FuzzConfig::default());
        let against: Vec<_> = p.clauses.iter().cloned().map(Arc::new).collect();
        for c in &p.clauses {
            for h in hyper_links(c, &against, 1000) {
                prop_assert_eq!(h.partners.len(), c.len());
                for (l, &(d, j)) in c.literals.iter().zip(&h.partners) {
                    let partner = &against.iter().find(|x| x.id == d).unwrap().literals[j];
                    prop_assert!(partner.positive != l.positive);
                    let mut supply = VarSupply::above([c]);
                    let renamed = supply.renaming(&partner.atom.vars()).apply(&partner.atom);
                    prop_assert!(mgu(&renamed, &h.theta.apply(&l.atom)).is_some());
                }
            }
        }
        Ok(())
    })
}

/// Walks a tableau with random leaf and link choices. Every expansion that
/// attaches something closes a new branch, used links are not offered
/// again, and attached instances match input clauses.
pub fn disconnection_expansions_close_a_branch(cases: u32) -> Result<(), String> {
    check(cases, any::<u64>(), |seed| {
        let p = generate(seed, &FuzzConfig::default());
        let path = choose_initial_path(&p.clauses, InitialPathChoice::Random(seed));
        let mut t = Tableau::new(&p.clauses, path);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut open = vec![ROOT];
        for _ in 0..25 {
            open.retain(|&l| !t.is_closed(l) && t.node(l).children.is_empty());
            if open.is_empty() {
                break;
            }
            let leaf = open[rng.gen_range(0..open.len())];
            let links = t.links(leaf);
            if links.is_empty() {
                open.retain(|&l| l != leaf);
                continue;
            }
            let link = links[rng.gen_range(0..links.len())].clone();
            let exp = t.expand(leaf, &link);
            if exp.leaves != [leaf] {
                prop_assert!(
                    !exp.closed.is_empty(),
                    "expansion closed nothing\n{}",
                    t.dump()
                );
            }
            for &l in &exp.leaves {
                let again = t.links(l);
                prop_assert!(!again
                    .iter()
                    .any(|k| k.earlier == link.earlier && k.later == link.later));
            }
            open.extend(exp.leaves);
        }
        for d in t.derived() {
            prop_assert!(p
                .clauses
                .iter()
                .any(|c| is_instance_of(&d.literals, &c.literals)));
        }
        Ok(())
    })
}

/// Builds branches by random splits. Whenever a clause has no falsified
/// instance, every ground instance over the constants and ⊥ is true in the
/// candidate model; every closure witness pairs complementary ⊥-images.
pub fn fdpll_gate_is_sound(cases: u32) -> Result<(), String> {
    check(cases, any::<u64>(), |seed| {
        let p = generate(seed, &FuzzConfig::default());
        let mut domain = p.domain();
        domain.push(bottom());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut branch: Vec<Literal> = Vec::new();
        for _ in 0..8 {
            for c in &p.clauses {
                if let Some(w) = close_branch(&branch, c) {
                    for (l, &k) in c.literals.iter().zip(&w.partners) {
                        let inst = w.sigma.apply_literal(l);
                        prop_assert_eq!(&inst.complement(), &bottom_literal(&branch[k]));
                    }
                }
                if find_falsified_instance(&branch, c).is_some() {
                    continue;
                }
                let mut falsified = None;
                for_each_grounding(&c.vars(), &domain, |g| {
                    let inst = g.apply_literals(&c.literals);
                    if inst
                        .iter()
                        .all(|l| candidate_value(&branch, &l.atom) != l.positive)
                    {
                        falsified = Some(inst);
                    }
                    falsified.is_none()
                });
                prop_assert!(
                    falsified.is_none(),
                    "{:?} falsified on {:?}",
                    falsified,
                    branch
                );
            }
            if p.clauses.iter().any(|c| close_branch(&branch, c).is_some()) {
                break;
            }
            let next = p
                .clauses
                .iter()
                .filter_map(|c| find_falsified_instance(&branch, c))
                .find_map(|f| f.instance.iter().find_map(|l| split(&branch, l)));
            match next {
                Some(children) => branch = children[rng.gen_range(0..2)].clone(),
                None => break,
            }
        }
        Ok(())
    })
}

pub fn truth_table(cnf: &PropCnf) -> bool {
    (0u32..1 << cnf.num_vars).any(|bits| {
        cnf.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| (bits >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0))
        })
    })
}

fn cnf() -> impl Strategy<Value = PropCnf> {
    (1usize..=12).prop_flat_map(|n| {
        let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
        prop::collection::vec(prop::collection::vec(lit, 1..4), 0..50)
            .prop_map(move |clauses| PropCnf::new(n, clauses))
    })
}

/// Truth-table agreement, model checking, determinism, and agreement of
/// incremental solving with a single call.
pub fn sat_agrees_with_truth_table(cases: u32) -> Result<(), String> {
    check(cases, cnf(), |cnf| {
        let result = solve(&cnf);
        prop_assert_eq!(result.is_sat(), truth_table(&cnf));
        if let SatResult::Sat(a) = &result {
            prop_assert!(cnf.is_satisfied_by(a));
        }
        prop_assert_eq!(solve(&cnf), result.clone());
        let mut solver = Solver::new();
        for c in &cnf.clauses {
            solver.add_clause(c);
            if !solver.solve().is_sat() {
                break;
            }
        }
        prop_assert_eq!(solver.solve().is_sat(), result.is_sat());
        Ok(())
    })
}
