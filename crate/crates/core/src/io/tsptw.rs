use std::fmt::Write as _;

use super::{parse_number, ParseError};
use crate::problems::tsptw::TsptwInstance;

/// Reads the layout shared by the usual benchmark suites: the number of
/// cities, the distance matrix one row per line, then one `earliest latest`
/// window per line. Blank lines and lines starting with `#` are ignored.
pub fn parse_tsptw(text: &str) -> Result<TsptwInstance, ParseError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
        .collect();

    let (line, header) = lines.first().ok_or(ParseError::MissingHeader)?;
    let [count] = header.as_slice() else {
        return Err(ParseError::at(*line, "expected the number of cities alone on the first line"));
    };
    let n: usize = parse_number(count, *line, "city count")?;
    if n == 0 {
        return Err(ParseError::at(*line, "instance needs at least the depot"));
    }
    if lines.len() != 1 + 2 * n {
        return Err(ParseError::Dimension(format!(
            "expected {n} matrix rows and {n} window lines, found {} lines",
            lines.len() - 1
        )));
    }

    let numbers = |line: usize, tokens: &[&str]| -> Result<Vec<i64>, ParseError> {
        tokens.iter().map(|t| parse_number(t, line, "number")).collect()
    };
    let mut distances = Vec::with_capacity(n);
    for (line, tokens) in &lines[1..=n] {
        if tokens.len() != n {
            return Err(ParseError::Dimension(format!(
                "line {line}: distance matrix is not square ({} entries, expected {n})",
                tokens.len()
            )));
        }
        distances.push(numbers(*line, tokens)?);
    }
    let mut windows = Vec::with_capacity(n);
    for (line, tokens) in &lines[n + 1..] {
        let [a, b] = numbers(*line, tokens)?[..] else {
            return Err(ParseError::at(*line, "expected `earliest latest`"));
        };
        if a > b {
            return Err(ParseError::at(*line, format!("empty window [{a}, {b}]")));
        }
        windows.push((a, b));
    }
    Ok(TsptwInstance { distances, windows })
}

pub fn write_tsptw(instance: &TsptwInstance) -> String {
    let mut out = format!("{}\n", instance.nb_cities());
    for row in &instance.distances {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    for (a, b) in &instance.windows {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}
