//! Edge-list and graph6 text formats.
//!
//! Edge lists hold one `u v` pair per line with 0-based ids. `#` starts a
//! comment. The first data line is read as an `n m` header when `m` equals
//! the number of data lines that follow it (and at least one does) and every
//! id on those lines is below `n`; otherwise `n` is one more than the
//! largest id. Edgeless graphs therefore
//! have no edge-list form; use graph6 for those.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count representable with graph6's single-byte size field.
pub const GRAPH6_MAX_N: usize = 62;

fn at_line(line: usize, e: Error) -> Error {
    Error::AtLine {
        line,
        inner: Box::new(e),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut rows: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let data = raw.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = data.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                reason: format!("expected two integers, found {} tokens", tokens.len()),
            });
        }
        let parse = |t: &str| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                reason: format!("{t:?} is not a non-negative integer"),
            })
        };
        rows.push((line, parse(tokens[0])?, parse(tokens[1])?));
    }

    let header = match rows.first() {
        Some(&(_, n, m))
            if m > 0 && m == rows.len() - 1 && rows[1..].iter().all(|r| r.1 < n && r.2 < n) =>
        {
            Some(n)
        }
        _ => None,
    };
    let (n, edges) = match header {
        Some(n) => (n, &rows[1..]),
        None => (
            rows.iter()
                .map(|&(_, u, v)| u.max(v) + 1)
                .max()
                .unwrap_or(0),
            &rows[..],
        ),
    };

    let mut seen = BTreeSet::new();
    for &(line, u, v) in edges {
        if u == v {
            return Err(at_line(line, Error::SelfLoop(u)));
        }
        if u.max(v) >= n {
            return Err(at_line(
                line,
                Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                },
            ));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(at_line(line, Error::DuplicateEdge(u.min(v), u.max(v))));
        }
    }
    Graph::new(n, seen)
}

/// Header line followed by the sorted edges.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim();
    let body = line.strip_prefix(">>graph6<<").unwrap_or(line).as_bytes();
    let Some((&first, rest)) = body.split_first() else {
        return Err(Error::MalformedGraph6("empty input".into()));
    };
    if let Some(&bad) = body.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::MalformedGraph6(format!(
            "byte {bad:#04x} outside 63..=126"
        )));
    }
    if first == 126 {
        return Err(Error::UnsupportedSize(long_size(rest)?));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if rest.len() != expected {
        return Err(Error::MalformedGraph6(format!(
            "{n} vertices need {expected} adjacency bytes, found {}",
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Error::MalformedGraph6("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

// Decodes the multi-byte size forms only to report them.
fn long_size(rest: &[u8]) -> Result<usize> {
    let (digits, count) = if rest.first() == Some(&126) {
        (&rest[1..], 6)
    } else {
        (rest, 3)
    };
    if digits.len() < count {
        return Err(Error::MalformedGraph6("truncated size field".into()));
    }
    Ok(digits[..count]
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
}

pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::UnsupportedSize(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                packed[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(packed.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(packed.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    /// A single whitespace-free line is graph6; anything else is an edge list.
    pub fn sniff(text: &str) -> Self {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        match lines.as_slice() {
            [one] if !one.contains(char::is_whitespace) && one.parse::<usize>().is_err() => {
                GraphFormat::Graph6
            }
            _ => GraphFormat::EdgeList,
        }
    }
}

/// Parses `text` in whichever format [`GraphFormat::sniff`] detects.
pub fn parse_graph(text: &str) -> Result<Graph> {
    match GraphFormat::sniff(text) {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}
