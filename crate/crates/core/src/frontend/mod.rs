//! Problem input, ground-truth oracle, certificate checking, random problem
//! generation and run reports.

pub mod fuzz;
pub mod oracle;
pub mod problem;
pub mod report;
pub mod tptp;
pub mod verify;

pub use oracle::{
    herbrand_oracle, herbrand_oracle_over, OracleError, OracleOutcome, DEFAULT_GROUND_BOUND,
};
pub use problem::Problem;
pub use report::RunReport;
pub use tptp::{parse_certificate, parse_tptp_cnf, ParseError};
pub use verify::{
    find_falsified_instance, find_falsified_instance_over, verify_model, VerifyError,
};
