use std::fmt;

/// Outcome of a structural check.
///
/// Checks never abort on a violation; they collect every offending item so a
/// report can show all of them at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Vec<String>),
    /// The check does not apply to this input (wrong mode, degenerate size).
    Skipped(String),
}

impl Verdict {
    pub fn from_failures(failures: Vec<String>) -> Self {
        if failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail(failures)
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn failures(&self) -> &[String] {
        match self {
            Verdict::Fail(f) => f,
            _ => &[],
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(items) => write!(f, "fail: {}", items.join("; ")),
            Verdict::Skipped(why) => write!(f, "skipped: {why}"),
        }
    }
}
