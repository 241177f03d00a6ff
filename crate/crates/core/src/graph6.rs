//! Header-less graph6 encoding for graphs with at most 64 vertices.
//!
//! Layout: a size field (`n + 63` for `n <= 62`, otherwise `'~'` followed by
//! three 6-bit groups), then the upper triangle of the adjacency matrix in
//! column order `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per byte
//! with 63 added, zero-padded on the right.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed size field")]
    MalformedLength,
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("byte {byte:#04x} at position {position} is outside the graph6 range 63..=126")]
    InvalidCharacter { position: usize, byte: u8 },
    #[error("expected {expected} adjacency bytes, found {found}")]
    WrongDataLength { expected: usize, found: usize },
    #[error("padding bits in the final byte are set")]
    TrailingBits,
}

fn check_byte(position: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::InvalidCharacter { position, byte })
    }
}

/// Parses one graph6 line. A single trailing `\n` (or `\r\n`) is ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };
    let (n, data) = if first == b'~' {
        if bytes.len() < 4 || bytes[1] == b'~' {
            return Err(Graph6Error::MalformedLength);
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | check_byte(i + 1, b)? as usize;
        }
        if n < 63 {
            return Err(Graph6Error::MalformedLength);
        }
        (n, 4)
    } else {
        (check_byte(0, first)? as usize, 1)
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let payload = &bytes[data..];
    if payload.len() != expected {
        return Err(Graph6Error::WrongDataLength {
            expected,
            found: payload.len(),
        });
    }
    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for (i, &b) in payload.iter().enumerate() {
        let six = check_byte(data + i, b)?;
        for bit in 0..6 {
            if (six >> (5 - bit)) & 1 == 0 {
                continue;
            }
            let idx = k + bit;
            if idx >= nbits {
                return Err(Graph6Error::TrailingBits);
            }
            let (u, v) = pair_of_index(idx);
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        k += 6;
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Inverse of the column-major upper-triangle index `v*(v-1)/2 + u`.
fn pair_of_index(idx: usize) -> (usize, usize) {
    let mut v = 1;
    while (v + 1) * v / 2 <= idx {
        v += 1;
    }
    (idx - v * (v - 1) / 2, v)
}

/// Encodes `g` as header-less graph6 without a trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push((acc + 63) as char);
    }
    out
}

/// Writes graphs one per line.
pub fn write_graph6_lines<'a, I: IntoIterator<Item = &'a Graph>>(graphs: I) -> String {
    let mut s = String::new();
    for g in graphs {
        let _ = writeln!(s, "{}", write_graph6(g));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_encodings() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(write_graph6(&k1), "@");
        assert_eq!(parse_graph6("@").unwrap(), k1);
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(write_graph6(&k2), "A_");
        assert_eq!(parse_graph6("A_\n").unwrap(), k2);
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(parse_graph6("?").unwrap().order(), 0);
    }

    #[test]
    fn known_five_vertex_graph() {
        // Edges 0-2, 0-4, 1-3, 3-4.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn large_order_uses_long_size_field() {
        let g = Graph::from_edges(64, (0..64).map(|i| (i, (i + 1) % 64))).unwrap();
        let s = write_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
        let g63 = Graph::empty(63).unwrap();
        assert_eq!(parse_graph6(&write_graph6(&g63)).unwrap(), g63);
    }

    #[test]
    fn error_kinds_are_distinct() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6("~?"), Err(Graph6Error::MalformedLength));
        assert_eq!(parse_graph6("~~??????"), Err(Graph6Error::MalformedLength));
        // '~' form must not encode n < 63.
        assert_eq!(parse_graph6("~??@"), Err(Graph6Error::MalformedLength));
        assert_eq!(parse_graph6("~?@@"), Err(Graph6Error::OrderTooLarge(65)));
        assert_eq!(
            parse_graph6("A "),
            Err(Graph6Error::InvalidCharacter { position: 1, byte: b' ' })
        );
        assert_eq!(
            parse_graph6(">>graph6<<A_"),
            Err(Graph6Error::InvalidCharacter { position: 0, byte: b'>' })
        );
        assert_eq!(
            parse_graph6("A"),
            Err(Graph6Error::WrongDataLength { expected: 1, found: 0 })
        );
        assert_eq!(
            parse_graph6("A__"),
            Err(Graph6Error::WrongDataLength { expected: 1, found: 2 })
        );
        // K2 has one data bit; 'o' = 48 + 63 sets a padding bit.
        assert_eq!(parse_graph6("Ao"), Err(Graph6Error::TrailingBits));
    }

    #[test]
    fn pair_index_inverse() {
        let mut idx = 0;
        for v in 1..20 {
            for u in 0..v {
                assert_eq!(pair_of_index(idx), (u, v));
                idx += 1;
            }
        }
    }
}
