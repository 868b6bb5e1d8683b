use std::fmt;
use std::path::PathBuf;
use std::time::Duration;

use crate::engine::{EngineKind, Stats};

/// One engine run, as printed by the command-line tool.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub engine: EngineKind,
    pub status: &'static str,
    pub wall: Duration,
    pub stats: Stats,
    pub certificate: Option<PathBuf>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "% {}: SZS status {} ({:.3}s) {}",
            self.engine,
            self.status,
            self.wall.as_secs_f64(),
            self.stats
        )?;
        if let Some(path) = &self.certificate {
            write!(f, " certificate={}", path.display())?;
        }
        Ok(())
    }
}
