//! Evidence aggregation: counting identities, the `k` table, relation
//! series, the coloring check and the full per-instance suite.

pub mod identities;
pub mod plot;
pub mod suite;
pub mod tables;

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub use identities::{identity_report, IdentityCheck, IdentityReport};
pub use suite::{run_suite, Instance, SuiteConfig, SuiteReport};
pub use tables::{k_table, k_table_validated, relation_tables, KRow};

/// Hard checks are mathematically forced and fail the run. Claims are
/// informal statements whose disagreements are reported, not enforced.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Severity {
    Hard,
    Claim,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Hard => "hard",
            Severity::Claim => "claim",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimOutcome {
    pub claim_id: String,
    pub instance_id: String,
    pub seed: Option<u64>,
    pub predicted: String,
    pub observed: String,
    pub agree: bool,
    pub severity: Severity,
    /// Counterexample file, relative to the output directory.
    pub artifact: Option<PathBuf>,
}

impl ClaimOutcome {
    pub fn is_hard_failure(&self) -> bool {
        self.severity == Severity::Hard && !self.agree
    }

    pub fn is_claim_disagreement(&self) -> bool {
        self.severity == Severity::Claim && !self.agree
    }
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}
