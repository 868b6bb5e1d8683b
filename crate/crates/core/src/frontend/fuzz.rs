//! Seeded random function-free problems.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{parse_tptp_cnf, Problem};

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub max_predicates: usize,
    pub max_arity: usize,
    pub max_constants: usize,
    pub max_clauses: usize,
    pub max_literals: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            max_predicates: 3,
            max_arity: 2,
            max_constants: 3,
            max_clauses: 6,
            max_literals: 3,
        }
    }
}

const PREDICATES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
const CONSTANTS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
const VARIABLES: [&str; 3] = ["X", "Y", "Z"];

/// TPTP text of the problem for `seed`.
pub fn generate_tptp(seed: u64, config: &FuzzConfig) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let npred = rng.gen_range(1..=config.max_predicates.min(PREDICATES.len()));
    let arities: Vec<usize> = (0..npred)
        .map(|_| rng.gen_range(0..=config.max_arity))
        .collect();
    let nconst = rng.gen_range(1..=config.max_constants.min(CONSTANTS.len()));
    let nclauses = rng.gen_range(1..=config.max_clauses);
    let mut out = format!("% fuzz seed {seed}\n");
    for i in 0..nclauses {
        let nlits = rng.gen_range(1..=config.max_literals);
        let lits: Vec<String> = (0..nlits)
            .map(|_| {
                let p = rng.gen_range(0..npred);
                let mut lit = String::new();
                if rng.gen_bool(0.5) {
                    lit.push('~');
                }
                lit.push_str(PREDICATES[p]);
                if arities[p] > 0 {
                    let args: Vec<&str> = (0..arities[p])
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                VARIABLES[rng.gen_range(0..VARIABLES.len())]
                            } else {
                                CONSTANTS[rng.gen_range(0..nconst)]
                            }
                        })
                        .collect();
                    let _ = write!(lit, "({})", args.join(","));
                }
                lit
            })
            .collect();
        let _ = writeln!(out, "cnf(f{i}, axiom, ({})).", lits.join(" | "));
    }
    out
}

pub fn generate(seed: u64, config: &FuzzConfig) -> Problem {
    parse_tptp_cnf(&generate_tptp(seed, config)).expect("generated problems parse")
}
