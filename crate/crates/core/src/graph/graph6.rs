//! Short-form graph6: one byte `n + 63`, then the upper triangle in
//! column-major order packed into 6-bit groups, each offset by 63.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&first, payload) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty record".into()))?;
    if !(63..=126).contains(&first) {
        return Err(Error::Graph6(format!("byte {first} outside [63, 126]")));
    }
    let n = (first - 63) as usize;
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::VertexCount(n));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if payload.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} payload bytes for n = {n}, found {}",
            payload.len()
        )));
    }
    if let Some(&b) = payload.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::Graph6(format!("byte {b} outside [63, 126]")));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let group = payload[k / 6] - 63;
            if group >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub(super) fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(group + 63);
                group = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((group << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses newline-delimited graph6. Blank lines are skipped; errors carry the
/// 1-based line number.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| Error::Graph6(format!("line {}: {e}", i + 1))))
        .collect()
}
