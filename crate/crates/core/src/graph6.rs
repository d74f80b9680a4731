//! graph6 encoding for graphs with at most 62 vertices.
//!
//! Byte 0 is `n + 63`. The upper triangle of the adjacency matrix follows in
//! column-major order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed six bits per
//! byte (most significant first), zero-padded, each group offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_VERTICES: usize = 62;
const HEADER: &[u8] = b">>graph6<<";

/// Decodes one graph6 record. A leading `>>graph6<<` header and trailing
/// whitespace are ignored.
pub fn parse_graph6(text: &[u8]) -> Result<Graph> {
    let mut bytes = text.strip_prefix(HEADER).unwrap_or(text);
    while let Some((last, rest)) = bytes.split_last() {
        if last.is_ascii_whitespace() {
            bytes = rest;
        } else {
            break;
        }
    }
    let (&first, body) = bytes.split_first().ok_or_else(|| Error::Graph6("empty input".into()))?;
    check_byte(first, 0)?;
    if first == 126 {
        return Err(Error::UnsupportedSize(63, MAX_VERTICES));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() < needed {
        return Err(Error::Graph6(format!("truncated: {n} vertices need {needed} data bytes, found {}", body.len())));
    }
    if body.len() > needed {
        return Err(Error::Graph6(format!("{} unexpected trailing bytes for {n} vertices", body.len() - needed)));
    }
    for (i, &b) in body.iter().enumerate() {
        check_byte(b, i + 1)?;
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

fn check_byte(b: u8, pos: usize) -> Result<()> {
    if (63..=126).contains(&b) {
        Ok(())
    } else {
        Err(Error::Graph6(format!("byte {b} at position {pos} is outside 63..=126")))
    }
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(n, MAX_VERTICES));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                data[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + data.len());
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}
