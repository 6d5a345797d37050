use std::fmt::Write as _;

use super::{content_lines, parse_number, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: i64,
}

/// Undirected weighted graph, optionally with vertex weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    vertex_weights: Option<Vec<i64>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: Vec::new(), vertex_weights: None }
    }

    pub fn nb_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Weight of vertex `i`, 1 unless vertex weights were given.
    pub fn vertex_weight(&self, i: usize) -> i64 {
        self.vertex_weights.as_ref().map_or(1, |w| w[i])
    }

    pub fn set_vertex_weights(&mut self, weights: Vec<i64>) {
        assert_eq!(weights.len(), self.n);
        self.vertex_weights = Some(weights);
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: i64) -> Result<(), String> {
        if u >= self.n || v >= self.n {
            return Err(format!("edge ({}, {}) out of range", u + 1, v + 1));
        }
        if u == v {
            return Err(format!("self loop on vertex {}", u + 1));
        }
        if self.edges.iter().any(|e| (e.u, e.v) == (u, v) || (e.u, e.v) == (v, u)) {
            return Err(format!("duplicate edge ({}, {})", u + 1, v + 1));
        }
        self.edges.push(Edge { u, v, weight });
        Ok(())
    }

    /// Symmetric adjacency matrix of the edge weights (0 when absent).
    pub fn weight_matrix(&self) -> Vec<Vec<i64>> {
        let mut w = vec![vec![0; self.n]; self.n];
        for e in &self.edges {
            w[e.u][e.v] = e.weight;
            w[e.v][e.u] = e.weight;
        }
        w
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        if let Some(weights) = &self.vertex_weights {
            for (i, w) in weights.iter().enumerate() {
                let _ = writeln!(out, "n {} {}", i + 1, w);
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.weight);
        }
        out
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "edge" {
        return Err(ParseError::at(line, "expected `p edge <n> <m>`"));
    }
    let n: usize = parse_number(tokens[2], line, "vertex count")?;
    let m: usize = parse_number(tokens[3], line, "edge count")?;

    let mut graph = Graph::new(n);
    let mut weights: Option<Vec<i64>> = None;
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let vertex = |token: &str| -> Result<usize, ParseError> {
            let i: usize = parse_number(token, line, "vertex")?;
            if i == 0 || i > n {
                return Err(ParseError::at(line, format!("vertex {i} out of range 1..={n}")));
            }
            Ok(i - 1)
        };
        match tokens.as_slice() {
            ["e", u, v] => graph.add_edge(vertex(u)?, vertex(v)?, 1).map_err(|m| ParseError::at(line, m))?,
            ["e", u, v, w] => {
                let w = parse_number(w, line, "edge weight")?;
                graph.add_edge(vertex(u)?, vertex(v)?, w).map_err(|m| ParseError::at(line, m))?
            }
            ["n", i, w] => {
                let i = vertex(i)?;
                weights.get_or_insert_with(|| vec![1; n])[i] = parse_number(w, line, "vertex weight")?;
            }
            _ => return Err(ParseError::at(line, format!("unexpected line `{content}`"))),
        }
    }
    if graph.edges.len() != m {
        return Err(ParseError::Dimension(format!("header announces {m} edges, found {}", graph.edges.len())));
    }
    graph.vertex_weights = weights;
    Ok(graph)
}
