//! graph6 codec (one graph per line, upper triangle in column order, 6 bits
//! per printable byte offset by 63).

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u8> {
    let b = *bytes
        .get(offset)
        .ok_or_else(|| err(offset, "unexpected end of input"))?;
    if !(63..=126).contains(&b) {
        return Err(err(
            offset,
            format!("byte 0x{b:02x} outside the printable range 63..=126"),
        ));
    }
    Ok(b - 63)
}

/// Parses one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored; byte offsets in errors are relative to the text
/// after the header.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(err(0, "empty input"));
    }

    let (order, mut pos) = if bytes[0] != 126 {
        (sextet(bytes, 0)? as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        let mut n = 0usize;
        for k in 1..=3 {
            n = (n << 6) | sextet(bytes, k)? as usize;
        }
        (n, 4)
    } else {
        let mut n = 0usize;
        for k in 2..=7 {
            n = (n << 6) | sextet(bytes, k)? as usize;
        }
        (n, 8)
    };

    let bits = order * order.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let available = bytes.len() - pos;
    if available != expected {
        return Err(err(
            pos,
            format!("order {order} needs {expected} adjacency bytes, found {available}"),
        ));
    }

    let mut g = Graph::empty(order);
    let mut bit = 0usize;
    let mut current = 0u8;
    for j in 1..order {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                current = sextet(bytes, pos)?;
                pos += 1;
            }
            if (current >> (5 - bit % 6)) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let pad = 6 - bit % 6;
        if current & ((1u8 << pad) - 1) != 0 {
            return Err(err(pos - 1, "non-canonical padding bits are set"));
        }
    }
    Ok(g)
}

/// Parses a multi-line graph6 file, skipping blank lines.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_graph6)
        .collect()
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut current = 0u8;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            current = (current << 1) | u8::from(g.has_edge(i, j));
            bit += 1;
            if bit.is_multiple_of(6) {
                out.push(current + 63);
                current = 0;
            }
        }
    }
    if !bit.is_multiple_of(6) {
        current <<= 6 - bit % 6;
        out.push(current + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
