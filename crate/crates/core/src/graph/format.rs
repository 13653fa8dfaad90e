//! graph6 and plain edge-list text formats.
//!
//! graph6: a size header (one byte `n + 63` for `n <= 62`, otherwise `~`
//! followed by three bytes of 6 bits each), then the upper triangle of the
//! adjacency matrix in column order `(0,1),(0,2),(1,2),(0,3),...`, packed
//! six bits per byte, most significant bit first, each byte offset by 63.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
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
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ascii")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let byte = |i: usize| -> Result<u8> {
        let b = *body
            .get(i)
            .ok_or_else(|| Error::parse(skip + i, "unexpected end of input"))?;
        if (63..=126).contains(&b) {
            Ok(b - 63)
        } else {
            Err(Error::parse(skip + i, format!("byte {b:#04x} outside the graph6 range")))
        }
    };

    let (n, mut pos) = if body.first() == Some(&b'~') {
        if body.get(1) == Some(&b'~') {
            return Err(Error::parse(skip + 1, "8-byte size headers are beyond capacity"));
        }
        let n = (byte(1)? as usize) << 12 | (byte(2)? as usize) << 6 | byte(3)? as usize;
        (n, 4)
    } else {
        (byte(0)? as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "graph6 input",
            requested: n,
            limit: MAX_VERTICES,
        });
    }

    let mut g_edges = Vec::new();
    let mut bits_left = 0;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bits_left == 0 {
                current = byte(pos).map_err(|e| match e {
                    Error::Parse { offset, .. } if pos >= body.len() => {
                        Error::parse(offset, "truncated adjacency bitstream")
                    }
                    e => e,
                })?;
                pos += 1;
                bits_left = 6;
            }
            bits_left -= 1;
            if current >> bits_left & 1 == 1 {
                g_edges.push((i, j));
            }
        }
    }
    if pos != body.len() {
        return Err(Error::parse(skip + pos, "trailing bytes after adjacency bitstream"));
    }
    Graph::from_edges(n, &g_edges)
}

/// Parse `n m` followed by `m` lines `u v` (0-based). Blank lines and
/// anything after `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut offset = 0;
    let mut lines = Vec::new();
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            lines.push((offset, content));
        }
        offset += line.len();
    }
    let mut it = lines.into_iter();
    let (hdr_off, hdr) = it
        .next()
        .ok_or_else(|| Error::parse(0, "missing 'n m' header"))?;
    let (n, m) = two_ints(hdr_off, hdr)?;
    let mut g_edges = Vec::with_capacity(m);
    for (off, line) in it.by_ref().take(m) {
        let (u, v) = two_ints(off, line)?;
        if u >= n || v >= n {
            return Err(Error::parse(off, format!("vertex out of range 0..{n}")));
        }
        g_edges.push((u, v));
    }
    if g_edges.len() != m {
        return Err(Error::parse(text.len(), format!("expected {m} edges, found {}", g_edges.len())));
    }
    if let Some((off, _)) = it.next() {
        return Err(Error::parse(off, "more edge lines than declared"));
    }
    Graph::from_edges(n, &g_edges).map_err(|e| match e {
        Error::Domain(msg) => Error::parse(hdr_off, msg),
        e => e,
    })
}

fn two_ints(offset: usize, line: &str) -> Result<(usize, usize)> {
    let mut parts = line.split_whitespace().map(str::parse::<usize>);
    match (parts.next(), parts.next(), parts.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::parse(offset, format!("expected two non-negative integers, got '{line}'"))),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
