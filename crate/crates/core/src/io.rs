//! Edge-list text and graph6 encodings.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Reads `n m` followed by `m` lines `u v`. Blank lines and `#` comments are
/// skipped; line numbers in errors are 1-based.
pub fn read_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header line"))?;
    let nums = parse_pair(hline, header)?;
    let (n, m) = nums;
    let mut g = SimpleGraph::empty(n);
    let mut count = 0;
    for (lineno, line) in lines {
        let (u, v) = parse_pair(lineno, line)?;
        g.insert_edge(u, v).map_err(|e| parse_err(lineno, e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(parse_err(0, format!("header declares {m} edges, found {count}")));
    }
    Ok(g)
}

fn parse_pair(lineno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| parse_err(lineno, "expected two integers"))?
            .parse()
            .map_err(|_| parse_err(lineno, format!("not a non-negative integer in {line:?}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(parse_err(lineno, "trailing tokens"));
    }
    Ok(pair)
}

pub fn write_edge_list(g: &SimpleGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn read_graph6(text: &str) -> Result<SimpleGraph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(0, "graph6 bytes must lie in 63..=126"));
    }
    let (n, rest) = match bytes {
        [] => return Err(parse_err(0, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(0, "truncated graph6 size"));
            }
            (rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(0, "truncated graph6 size"));
            }
            (rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(parse_err(0, format!("expected {} data bytes for n = {n}, found {}", bits.div_ceil(6), rest.len())));
    }
    let mut g = SimpleGraph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Reads a file of graph6 lines, skipping blanks and `#` comments.
pub fn read_graph6_lines(text: &str) -> Result<Vec<SimpleGraph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            read_graph6(l).map_err(|e| match e {
                Error::Parse { message, .. } => parse_err(i + 1, message),
                other => other,
            })
        })
        .collect()
}
