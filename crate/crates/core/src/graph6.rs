//! graph6 encoding (nauty's printable format for simple undirected graphs).
//!
//! Layout: a size field N(n) followed by the upper triangle of the adjacency
//! matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed
//! big-endian into 6-bit groups, zero padded, each group offset by 63.
//! N(n) is the single byte `n + 63` for `n <= 62`, otherwise `126` followed
//! by three bytes holding `n` in 18 bits.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count the 4-byte size form can express.
pub const MAX_GRAPH6_VERTICES: usize = (1 << 18) - 1;

/// Largest graph this crate will decode or encode; the dense pipeline is
/// cubic in the edge count, so anything beyond this is out of scope.
pub const MAX_SUPPORTED_VERTICES: usize = 4096;

const HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some((pos, &b)) = bytes.iter().enumerate().find(|(_, b)| !(63..=126).contains(*b)) {
        return Err(Error::Parse(format!("byte {b} at offset {pos} is outside 63..=126")));
    }
    let (n, body) = decode_size(bytes)?;
    if n > MAX_SUPPORTED_VERTICES {
        return Err(Error::Unsupported(format!(
            "{n} vertices exceeds the supported maximum of {MAX_SUPPORTED_VERTICES}"
        )));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Error::Parse(format!(
            "truncated: {} data bytes, {expected} needed for {n} vertices",
            body.len()
        )));
    }
    if body.len() > expected {
        return Err(Error::Parse(format!(
            "{} trailing bytes after {expected} data bytes",
            body.len() - expected
        )));
    }

    let bit = |k: usize| -> bool {
        let group = body[k / 6] - 63;
        (group >> (5 - k % 6)) & 1 == 1
    };
    for k in nbits..expected * 6 {
        if bit(k) {
            return Err(Error::Parse("nonzero padding bits".into()));
        }
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    match bytes {
        [] => Err(Error::Parse("empty input".into())),
        [126, 126, ..] => Err(Error::Parse("8-byte size field (n > 258047) is not supported".into())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Parse("truncated size field".into()));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            Ok((n, &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
    }
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES.min(MAX_SUPPORTED_VERTICES) {
        return Err(Error::Unsupported(format!(
            "{n} vertices exceeds the supported maximum of {MAX_SUPPORTED_VERTICES}"
        )));
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([12, 6, 0].map(|shift| ((n >> shift) & 0x3f) as u8 + 63));
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Reads a corpus: one graph per line, blank lines skipped.
/// Yields `(line_number, trimmed_line)` with 1-based line numbers.
pub fn read_corpus<R: BufRead>(reader: R) -> impl Iterator<Item = std::io::Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(idx, line)| match line {
        Ok(l) => {
            let t = l.trim().to_string();
            if t.is_empty() {
                None
            } else {
                Some(Ok((idx + 1, t)))
            }
        }
        Err(e) => Some(Err(e)),
    })
}
