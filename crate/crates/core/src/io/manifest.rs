use std::path::{Path, PathBuf};

use super::ParseError;
use crate::problems::ProblemKind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub problem: ProblemKind,
    pub path: PathBuf,
}

/// One `problem path` pair per line; `#` starts a comment. Relative paths
/// are resolved against `base`, normally the directory of the manifest.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>, ParseError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let line = i + 1;
        let Some((problem, path)) = content.split_once(char::is_whitespace) else {
            return Err(ParseError::at(line, "expected `<problem> <path>`"));
        };
        let problem: ProblemKind =
            problem.parse().map_err(|e: crate::problems::UnknownProblem| ParseError::at(line, e.to_string()))?;
        let path = Path::new(path.trim());
        entries.push(ManifestEntry { problem, path: base.join(path) });
    }
    Ok(entries)
}
