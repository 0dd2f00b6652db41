//! graph6 and plain edge-list codecs.
//!
//! graph6: an order header (one byte `n + 63` for `n <= 62`, otherwise `~`
//! followed by three 6-bit groups) and the upper triangle of the adjacency
//! matrix in column order `(0,1),(0,2),(1,2),(0,3),...`, packed six bits per
//! byte, most significant first, each byte offset by 63.
//!
//! Edge list: a header line `n m` followed by `m` lines `u v`.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Decodes one graph6 string. A leading `>>graph6<<` marker and trailing
/// whitespace are tolerated; padding bits must be zero.
pub fn decode_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let bad = |msg: &str| Error::MalformedGraph6(msg.to_string());
    if bytes.is_empty() {
        return Err(bad("empty input"));
    }
    if let Some(b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(&format!("byte 0x{b:02x} outside the printable graph6 range")));
    }
    let (n, body) = if bytes[0] != b'~' {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == b'~' {
        if bytes.len() < 8 {
            return Err(bad("truncated 8-byte order header"));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(bad("truncated 4-byte order header"));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(Error::OrderOverflow { order: n, cap: MAX_ORDER });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(bad(&format!("truncated bit vector: {} of {expected} bytes", body.len())));
    }
    if body.len() > expected {
        return Err(bad(&format!("{} trailing bytes after the bit vector", body.len() - expected)));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(bad("nonzero padding bits"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the edge-list format. Blank lines and `#` comments are skipped.
pub fn decode_edge_list(text: &str) -> Result<Graph> {
    let bad = |msg: String| Error::MalformedEdgeList(msg);
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| bad("missing header".into()))?;
    let parse_pair = |line: &str| -> Result<(usize, usize)> {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(bad(format!("expected two integers, got {line:?}"))),
        }
    };
    let (n, m) = parse_pair(header)?;
    if n > MAX_ORDER {
        return Err(Error::OrderOverflow { order: n, cap: MAX_ORDER });
    }
    let edges: Vec<(usize, usize)> = lines.map(parse_pair).collect::<Result<_>>()?;
    if edges.len() != m {
        return Err(bad(format!("header announces {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.edge_count() != m {
        return Err(bad("duplicate edges".into()));
    }
    Ok(g)
}
