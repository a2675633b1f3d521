//! The graph6 text encoding: a length header followed by the upper triangle of
//! the adjacency matrix, column by column, packed six bits per printable byte
//! (values 63..=126).

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses one graph6 string. An optional `>>graph6<<` header is accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    parse_line(text, 1)
}

/// Parses one graph per non-empty line; errors carry the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_line(l, i + 1))
        .collect()
}

fn parse_line(text: &str, line: usize) -> Result<Graph> {
    let err = |message: String| Error::Graph6 { line, message };
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(format!(
            "byte {b} outside the printable range 63..=126"
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(err("empty string".into())),
        [126, 126, ..] => return Err(err("orders beyond 258047 are not supported".into())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated length header".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            if n <= 62 {
                return Err(err(format!("non-minimal length header for n = {n}")));
            }
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n > MAX_ORDER {
        return Err(err(format!(
            "order {n} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(err(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.link(i, j);
            }
            k += 1;
        }
    }
    for pad in nbits..expected * 6 {
        if bit(pad) {
            return Err(err("nonzero padding bits".into()));
        }
    }
    Ok(g)
}
