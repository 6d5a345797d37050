//! Built-in problem models.

mod benefit;
pub mod max2sat;
pub mod mcp;
pub mod misp;
pub mod tsptw;

pub use max2sat::Max2Sat;
pub use mcp::MaxCut;
pub use misp::Misp;
pub use tsptw::Tsptw;

use std::fmt;
use std::str::FromStr;

/// The four built-in problems, as named on the command line and in
/// manifests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    Misp,
    Mcp,
    Max2Sat,
    Tsptw,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] = [ProblemKind::Misp, ProblemKind::Mcp, ProblemKind::Max2Sat, ProblemKind::Tsptw];

    /// Whether the natural objective is minimized (the model then maximizes
    /// its negation).
    pub fn minimizes(self) -> bool {
        self == ProblemKind::Tsptw
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Misp => "misp",
            ProblemKind::Mcp => "mcp",
            ProblemKind::Max2Sat => "max2sat",
            ProblemKind::Tsptw => "tsptw",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown problem `{0}` (expected misp, mcp, max2sat or tsptw)")]
pub struct UnknownProblem(pub String);

impl FromStr for ProblemKind {
    type Err = UnknownProblem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownProblem(s.to_string()))
    }
}
