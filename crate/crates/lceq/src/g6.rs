//! graph6 encoding and decoding.
//!
//! The format stores the order, then the upper triangle of the adjacency
//! matrix in column-major order (`(0,1), (0,2), (1,2), (0,3), …`), packed
//! big-endian into 6-bit groups offset by 63 so every byte is printable
//! ASCII. Orders up to 62 use a single size byte; larger orders use the
//! `~`-prefixed multi-byte size forms.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

/// Encodes a graph as a graph6 string (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // 63 ≤ n ≤ 258047: '~' then 18 bits in three 6-bit groups.
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes a graph6 string. Accepts an optional `>>graph6<<` header and
/// ignores surrounding whitespace.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!(
                "byte {i} (0x{b:02x}) outside the printable graph6 range"
            )));
        }
    }

    // Order.
    let (n, mut pos) = if bytes[0] != b'~' {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != b'~' {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated 3-byte size field".into()));
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(Error::Graph6("truncated 6-byte size field".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 8)
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos < need {
        return Err(Error::Graph6(format!(
            "expected {need} edge bytes for order {n}, found {}",
            bytes.len() - pos
        )));
    }
    if bytes.len() - pos > need {
        return Err(Error::Graph6(format!(
            "trailing bytes after {need} edge bytes for order {n}"
        )));
    }

    let mut g = Graph::new(n)?;
    let mut acc = 0u32;
    let mut have = 0;
    for v in 1..n {
        for u in 0..v {
            if have == 0 {
                acc = (bytes[pos] - 63) as u32;
                pos += 1;
                have = 6;
            }
            have -= 1;
            if acc >> have & 1 != 0 {
                g.set_edge(u, v, true);
            }
        }
    }
    Ok(g)
}
