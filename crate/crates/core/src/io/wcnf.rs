use std::fmt::Write as _;

use super::{content_lines, parse_number, ParseError};

/// Weighted clause over one or two literals. Literal `i` stands for the
/// 1-based variable `|i|`, negated when `i < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause {
    pub weight: i64,
    pub first: i32,
    pub second: Option<i32>,
}

impl Clause {
    /// Both literals; a unit clause repeats its only literal.
    pub fn literals(&self) -> (i32, i32) {
        (self.first, self.second.unwrap_or(self.first))
    }

    pub fn is_tautology(&self) -> bool {
        self.second == Some(-self.first)
    }

    pub fn is_satisfied(&self, values: &[bool]) -> bool {
        let holds = |l: i32| values[l.unsigned_abs() as usize - 1] == (l > 0);
        let (a, b) = self.literals();
        holds(a) || holds(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wcnf {
    n: usize,
    clauses: Vec<Clause>,
}

impl Wcnf {
    pub fn new(n: usize) -> Self {
        Wcnf { n, clauses: Vec::new() }
    }

    pub fn nb_variables(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn add_clause(&mut self, weight: i64, first: i32, second: Option<i32>) -> Result<(), String> {
        for l in std::iter::once(first).chain(second) {
            if l == 0 || l.unsigned_abs() as usize > self.n {
                return Err(format!("literal {l} out of range"));
            }
        }
        self.clauses.push(Clause { weight, first, second });
        Ok(())
    }

    /// Total weight of the clauses satisfied by `values[i]` (variable `i + 1`).
    pub fn satisfied_weight(&self, values: &[bool]) -> i64 {
        self.clauses.iter().filter(|c| c.is_satisfied(values)).map(|c| c.weight).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p wcnf {} {}\n", self.n, self.clauses.len());
        for c in &self.clauses {
            match c.second {
                Some(b) => writeln!(out, "{} {} {} 0", c.weight, c.first, b),
                None => writeln!(out, "{} {} 0", c.weight, c.first),
            }
            .unwrap();
        }
        out
    }
}

pub fn parse_wcnf(text: &str) -> Result<Wcnf, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() < 4 || tokens[0] != "p" || tokens[1] != "wcnf" {
        return Err(ParseError::at(line, "expected `p wcnf <n> <m>`"));
    }
    let n: usize = parse_number(tokens[2], line, "variable count")?;
    let m: usize = parse_number(tokens[3], line, "clause count")?;

    let mut formula = Wcnf::new(n);
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&"0", body)) = tokens.split_last() else {
            return Err(ParseError::at(line, "clause must end with 0"));
        };
        let (weight, literals) = body.split_first().ok_or_else(|| ParseError::at(line, "empty clause"))?;
        let weight: i64 = parse_number(weight, line, "clause weight")?;
        let literals =
            literals.iter().map(|t| parse_number::<i32>(t, line, "literal")).collect::<Result<Vec<_>, _>>()?;
        let (first, second) = match literals.as_slice() {
            [a] => (*a, None),
            [a, b] => (*a, Some(*b)),
            [] => return Err(ParseError::at(line, "empty clause")),
            _ => {
                return Err(ParseError::at(line, format!("clause has {} literals, at most 2 allowed", literals.len())))
            }
        };
        formula.add_clause(weight, first, second).map_err(|m| ParseError::at(line, m))?;
    }
    if formula.clauses.len() != m {
        return Err(ParseError::Dimension(format!("header announces {m} clauses, found {}", formula.clauses.len())));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tautology_and_unit_clauses() {
        let f = parse_wcnf("p wcnf 2 2\n2 1 -1 0\n5 1 0\n").unwrap();
        assert!(f.clauses()[0].is_tautology());
        assert_eq!(f.clauses()[0].weight, 2);
        assert_eq!(f.clauses()[1].literals(), (1, 1));
        assert_eq!(f.clauses()[1].weight, 5);
    }

    #[test]
    fn long_clauses_are_rejected() {
        let err = parse_wcnf("p wcnf 3 1\n1 1 2 3 0\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_wcnf("p cnf 1 1\n1 1 0\n").is_err());
        assert!(parse_wcnf("p wcnf 1 1\n1 1\n").is_err());
        assert!(parse_wcnf("p wcnf 1 1\n1 2 0\n").is_err());
        assert!(parse_wcnf("p wcnf 1 2\n1 1 0\n").is_err());
    }

    #[test]
    fn satisfied_weight_counts_each_clause_once() {
        let f = parse_wcnf("p wcnf 2 3\n3 1 2 0\n4 -1 0\n1 1 -1 0\n").unwrap();
        assert_eq!(f.satisfied_weight(&[true, true]), 4);
        assert_eq!(f.satisfied_weight(&[false, false]), 5);
    }

    #[test]
    fn text_round_trip() {
        let text = "p wcnf 2 2\n3 1 -2 0\n4 -1 0\n";
        assert_eq!(parse_wcnf(text).unwrap().to_text(), text);
    }
}
