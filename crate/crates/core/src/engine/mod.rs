//! The four instance-based engines and their shared result types.

pub mod disconnection;
pub mod fdpll;
pub mod hyperlink;
pub mod instgen;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::logic::{is_instance_of, Clause, ClauseId, ClauseRef};
use crate::model::ModelCertificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EngineKind {
    Disconnection,
    Fdpll,
    HyperLink,
    InstGen,
}

impl EngineKind {
    /// All engines, ordered by name.
    pub const ALL: [EngineKind; 4] = [
        EngineKind::Disconnection,
        EngineKind::Fdpll,
        EngineKind::HyperLink,
        EngineKind::InstGen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EngineKind::InstGen => "instgen",
            EngineKind::HyperLink => "hyperlink",
            EngineKind::Disconnection => "disconnection",
            EngineKind::Fdpll => "fdpll",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EngineKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown engine `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct Limits {
    pub timeout: Duration,
    /// Cap on generated clause instances, tableau nodes or tree nodes.
    pub max_instances: usize,
    /// Hyper-links enumerated per clause per round.
    pub hyperlink_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            timeout: Duration::from_secs(30),
            max_instances: 100_000,
            hyperlink_cap: 10_000,
        }
    }
}

/// How the disconnection engine picks its initial path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InitialPathChoice {
    #[default]
    First,
    Random(u64),
}

impl FromStr for InitialPathChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "first" {
            return Ok(InitialPathChoice::First);
        }
        s.strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(InitialPathChoice::Random)
            .ok_or_else(|| format!("expected `first` or `random:<seed>`, got `{s}`"))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub limits: Limits,
    pub initial_path: InitialPathChoice,
    /// Record a textual dump of the final tree or abstraction.
    pub dump: bool,
}

/// A refutation, as the engine-specific text trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub text: String,
}

#[derive(Clone, Debug)]
pub enum EngineResult {
    Unsatisfiable(Proof),
    Satisfiable(ModelCertificate),
    ResourceOut(String),
}

impl EngineResult {
    /// SZS status word.
    pub fn status(&self) -> &'static str {
        match self {
            EngineResult::Unsatisfiable(_) => "Unsatisfiable",
            EngineResult::Satisfiable(_) => "Satisfiable",
            EngineResult::ResourceOut(_) => "ResourceOut",
        }
    }

    pub fn certificate(&self) -> Option<&ModelCertificate> {
        match self {
            EngineResult::Satisfiable(m) => Some(m),
            _ => None,
        }
    }
}

/// Named counters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats(BTreeMap<&'static str, u64>);

impl Stats {
    pub fn add(&mut self, key: &'static str, n: u64) {
        *self.0.entry(key).or_default() += n;
    }

    pub fn set(&mut self, key: &'static str, n: u64) {
        self.0.insert(key, n);
    }

    pub fn max(&mut self, key: &'static str, n: u64) {
        let e = self.0.entry(key).or_default();
        *e = (*e).max(n);
    }

    pub fn get(&self, key: &str) -> u64 {
        self.0.get(key).copied().unwrap_or(0)
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub engine: EngineKind,
    pub result: EngineResult,
    pub stats: Stats,
    /// Every clause instance the run created.
    pub derived: Vec<ClauseRef>,
    /// Tree dump or final abstraction in DIMACS, when requested.
    pub dump: Option<String>,
}

pub fn run(kind: EngineKind, input: &[Clause], options: &Options) -> Outcome {
    let outcome = match kind {
        EngineKind::InstGen => instgen::saturate(input, options),
        EngineKind::HyperLink => hyperlink::saturate(input, options),
        EngineKind::Disconnection => disconnection::prove(input, options),
        EngineKind::Fdpll => fdpll::prove(input, options),
    };
    debug_assert_eq!(
        audit(input, &outcome.derived),
        Ok(()),
        "{kind} derived a clause that is not an instance of its input"
    );
    outcome
}

/// Checks that every derived clause is an instance of some input clause.
/// Returns the first offender.
pub fn audit(input: &[Clause], derived: &[ClauseRef]) -> Result<(), ClauseId> {
    for d in derived {
        if !input
            .iter()
            .any(|c| is_instance_of(&d.literals, &c.literals))
        {
            return Err(d.id);
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
pub(crate) struct Deadline(Instant);

impl Deadline {
    pub(crate) fn after(timeout: Duration) -> Self {
        Deadline(Instant::now() + timeout)
    }

    pub(crate) fn passed(&self) -> bool {
        Instant::now() >= self.0
    }
}
