//! Graph serialization: plain edge lists, DIMACS, and graph6.
//!
//! - edge list: one `u v` pair per line, ascending, 0-based;
//! - DIMACS: `p edge N M` header, then `e u v` lines, 1-based;
//! - graph6: the standard printable encoding of the upper-triangular
//!   adjacency bitmap (column-major), with the 1-, 4-, and 8-byte order
//!   headers.
//!
//! `decode(encode(g))` reproduces the adjacency exactly for every format;
//! for edge lists the order is recovered as max endpoint + 1, so trailing
//! isolated vertices do not survive that one format.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("unsupported format {0:?}")]
    FormatUnsupported(String),
    #[error("graph of order {order} too large for {format}")]
    TooLarge { format: &'static str, order: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
    Graph6,
}

impl GraphFormat {
    pub fn parse_name(name: &str) -> Result<GraphFormat, FormatError> {
        match name.to_ascii_lowercase().as_str() {
            "edgelist" | "edges" | "el" => Ok(GraphFormat::EdgeList),
            "dimacs" | "col" => Ok(GraphFormat::Dimacs),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(FormatError::FormatUnsupported(other.to_string())),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edgelist",
            GraphFormat::Dimacs => "dimacs",
            GraphFormat::Graph6 => "g6",
        }
    }

    /// Guesses a format from a file extension.
    pub fn from_extension(path: &std::path::Path) -> Option<GraphFormat> {
        match path.extension()?.to_str()? {
            "edgelist" | "txt" | "edges" => Some(GraphFormat::EdgeList),
            "dimacs" | "col" => Some(GraphFormat::Dimacs),
            "g6" | "graph6" => Some(GraphFormat::Graph6),
            _ => None,
        }
    }
}

pub fn encode(g: &Graph, format: GraphFormat) -> Result<String, FormatError> {
    match format {
        GraphFormat::EdgeList => Ok(encode_edgelist(g)),
        GraphFormat::Dimacs => Ok(encode_dimacs(g)),
        GraphFormat::Graph6 => encode_graph6(g),
    }
}

pub fn decode(text: &str, format: GraphFormat) -> Result<Graph, FormatError> {
    match format {
        GraphFormat::EdgeList => decode_edgelist(text),
        GraphFormat::Dimacs => decode_dimacs(text),
        GraphFormat::Graph6 => decode_graph6(text),
    }
}

fn encode_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

fn decode_edgelist(text: &str) -> Result<Graph, FormatError> {
    let mut edges = Vec::new();
    let mut max = 0u32;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let a: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| FormatError::Parse(format!("line {}: bad endpoint", lineno + 1)))?;
        let b: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| FormatError::Parse(format!("line {}: bad endpoint", lineno + 1)))?;
        max = max.max(a).max(b);
        edges.push((a, b));
    }
    let n = if edges.is_empty() { 0 } else { max as usize + 1 };
    Graph::from_edges(n, &edges).map_err(|e| FormatError::Parse(e.to_string()))
}

fn encode_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.order(), g.num_edges());
    for (a, b) in g.edges() {
        out.push_str(&format!("e {} {}\n", a + 1, b + 1));
    }
    out
}

fn decode_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let mut it = rest.split_whitespace();
            if it.next() != Some("edge") {
                return Err(FormatError::Parse(format!(
                    "line {}: expected 'p edge'",
                    lineno + 1
                )));
            }
            n = it.next().and_then(|t| t.parse().ok());
            if n.is_none() {
                return Err(FormatError::Parse(format!("line {}: bad order", lineno + 1)));
            }
        } else if let Some(rest) = line.strip_prefix("e ") {
            let mut it = rest.split_whitespace();
            let a: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| FormatError::Parse(format!("line {}: bad edge", lineno + 1)))?;
            let b: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| FormatError::Parse(format!("line {}: bad edge", lineno + 1)))?;
            if a == 0 || b == 0 {
                return Err(FormatError::Parse(format!(
                    "line {}: DIMACS vertices are 1-based",
                    lineno + 1
                )));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let n = n.ok_or_else(|| FormatError::Parse("missing 'p edge' header".to_string()))?;
    Graph::from_edges(n, &edges).map_err(|e| FormatError::Parse(e.to_string()))
}

/// Orders beyond this would need gigabytes for the dense graph6 bitmap;
/// the sparse families this crate produces should use the other formats.
const GRAPH6_MAX_ORDER: u64 = 100_000;

fn encode_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.order() as u64;
    if n > GRAPH6_MAX_ORDER {
        return Err(FormatError::TooLarge {
            format: "graph6",
            order: n,
        });
    }
    let mut out = String::new();
    push_graph6_order(&mut out, n);
    // upper triangle, column-major: bit (i,j) for j in 1..n, i in 0..j
    let nbits = (n * (n - 1) / 2) as usize;
    let mut bits = vec![false; nbits];
    let pos = |i: u64, j: u64| -> usize {
        // start of column j is C(j,2)
        (j * (j - 1) / 2 + i) as usize
    };
    for (a, b) in g.edges() {
        let (i, j) = (a as u64, b as u64);
        bits[pos(i, j)] = true;
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                v |= 1 << (5 - k);
            }
        }
        out.push((v + 63) as char);
    }
    Ok(out)
}

fn push_graph6_order(out: &mut String, n: u64) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3F) as u8 + 63) as char);
        }
    } else {
        out.push('~');
        out.push('~');
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3F) as u8 + 63) as char);
        }
    }
}

fn decode_graph6(text: &str) -> Result<Graph, FormatError> {
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| FormatError::Parse("empty graph6 input".to_string()))?
        .trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let mut pos = 0usize;
    let take = |pos: &mut usize| -> Result<u64, FormatError> {
        let b = *bytes
            .get(*pos)
            .ok_or_else(|| FormatError::Parse("truncated graph6 header".to_string()))?;
        *pos += 1;
        if !(63..=126).contains(&b) {
            return Err(FormatError::Parse(format!("bad graph6 byte {b}")));
        }
        Ok((b - 63) as u64)
    };
    let n = {
        let first = take(&mut pos)?;
        if first != 63 {
            first
        } else {
            let second = take(&mut pos)?;
            if second != 63 {
                let mut v = second;
                for _ in 0..2 {
                    v = (v << 6) | take(&mut pos)?;
                }
                v
            } else {
                let mut v = 0u64;
                for _ in 0..6 {
                    v = (v << 6) | take(&mut pos)?;
                }
                v
            }
        }
    };
    if n > GRAPH6_MAX_ORDER {
        return Err(FormatError::TooLarge {
            format: "graph6",
            order: n,
        });
    }
    let nbits = (n * (n - 1) / 2) as usize;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos < nbytes {
        return Err(FormatError::Parse("truncated graph6 bitmap".to_string()));
    }
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + bit_index / 6];
            if !(63..=126).contains(&byte) {
                return Err(FormatError::Parse(format!("bad graph6 byte {byte}")));
            }
            let v = byte - 63;
            if (v >> (5 - (bit_index % 6))) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            bit_index += 1;
        }
    }
    Graph::from_edges(n as usize, &edges).map_err(|e| FormatError::Parse(e.to_string()))
}
