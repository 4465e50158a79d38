//! The plain-text graph format.
//!
//! ```text
//! # C5 with its cycle designated
//! n 5
//! e 1 2
//! e 2 3
//! e 3 4
//! e 4 5
//! e 1 5
//! c 1 2 3 4 5
//! ```
//!
//! Vertices are 1-based. Blank lines and `#` comments are ignored.

use crate::graph::{CycleCertificate, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `n <vertex_count>` header")]
    MissingHeader,
    #[error("input is not valid UTF-8")]
    Encoding,
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub cycles: Vec<CycleCertificate>,
}

fn line_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line { line, message: message.into() }
}

pub fn parse_graph(bytes: &[u8]) -> Result<ParsedGraph, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ParseError::Encoding)?;
    let mut graph: Option<Graph> = None;
    let mut pending_cycles: Vec<(usize, Vec<usize>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let tag = words.next().expect("nonempty line");
        let nums = words
            .map(|w| w.parse::<usize>().map_err(|_| line_err(line, format!("`{w}` is not a vertex number"))))
            .collect::<Result<Vec<_>, _>>()?;
        match tag {
            "n" => {
                if graph.is_some() {
                    return Err(line_err(line, "duplicate `n` header"));
                }
                let [n] = nums[..] else { return Err(line_err(line, "expected `n <vertex_count>`")) };
                graph = Some(Graph::empty(n));
            }
            "e" => {
                let g = graph.as_mut().ok_or_else(|| line_err(line, "edge before `n` header"))?;
                let [u, v] = nums[..] else { return Err(line_err(line, "expected `e <u> <v>`")) };
                let (u, v) = (to_index(u, line)?, to_index(v, line)?);
                g.add_edge(u, v).map_err(|e| describe(line, e))?;
            }
            "c" => {
                if graph.is_none() {
                    return Err(line_err(line, "cycle before `n` header"));
                }
                let vs = nums.iter().map(|&v| to_index(v, line)).collect::<Result<Vec<_>, _>>()?;
                pending_cycles.push((line, vs));
            }
            other => return Err(line_err(line, format!("unknown line type `{other}`"))),
        }
    }
    let graph = graph.ok_or(ParseError::MissingHeader)?;
    let cycles = pending_cycles
        .into_iter()
        .map(|(line, vs)| CycleCertificate::new(&graph, vs).map_err(|e| describe(line, e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ParsedGraph { graph, cycles })
}

fn to_index(v: usize, line: usize) -> Result<usize, ParseError> {
    v.checked_sub(1).ok_or_else(|| line_err(line, "vertices are numbered from 1"))
}

fn describe(line: usize, e: GraphError) -> ParseError {
    line_err(line, e.to_string())
}

/// Renders a graph and its cycles in the same format.
pub fn write_graph(g: &Graph, cycles: &[CycleCertificate]) -> String {
    let mut out = g.to_string();
    for c in cycles {
        let labels: Vec<String> = c.labels().iter().map(usize::to_string).collect();
        out.push_str(&format!("c {}\n", labels.join(" ")));
    }
    out
}
