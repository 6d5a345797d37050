//! Instance files and seeded instance generators.
//!
//! Three text formats are supported:
//!
//! * graphs (`p edge n m`, `e u v [w]`, optional `n i w` vertex weights),
//!   used by the independent set and maximum cut models;
//! * weighted CNF restricted to clauses of at most two literals
//!   (`p wcnf n m`, `w l1 [l2] 0`);
//! * time-windowed TSP: the city count, the distance matrix, then one
//!   `earliest latest` line per city.
//!
//! All indices are 1-based in files and 0-based in memory.

mod generate;
mod graph;
mod manifest;
mod tsptw;
mod wcnf;

use thiserror::Error;

pub use generate::{gen_erdos_renyi, gen_tsptw, literal_of_vertex, MAX2SAT_WEIGHTS, MCP_WEIGHTS, MISP_WEIGHTS};
pub use graph::{parse_graph, Edge, Graph};
pub use manifest::{parse_manifest, ManifestEntry};
pub use tsptw::{parse_tsptw, write_tsptw};
pub use wcnf::{parse_wcnf, Clause, Wcnf};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("{0}")]
    Dimension(String),
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, message: message.into() }
    }
}

/// Non-blank lines that are not comments, with their 1-based line number.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'))
}

pub(crate) fn parse_number<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Result<T, ParseError> {
    token.parse().map_err(|_| ParseError::at(line, format!("invalid {what} `{token}`")))
}
