//! Line-oriented text format:
//!
//! ```text
//! # comment
//! n 3
//! e 0 1 1
//! e 1 2 rot(1/8)
//! e 0 2 c(0.6,0.8)
//! ```
//!
//! Gain tokens: `1`, `-1`, `i`, `-i`, `rot(p/q)` (= e^(2πi·p/q)) or `c(re,im)`.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::{Angle, Gain, GainGraph};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_gain(token: &str, line: usize) -> Result<Gain> {
    match token {
        "1" => return Ok(Gain::ONE),
        "-1" => return Ok(Gain::MINUS_ONE),
        "i" => return Ok(Gain::I),
        "-i" => return Ok(Gain::MINUS_I),
        _ => {}
    }
    if let Some(body) = token.strip_prefix("rot(").and_then(|t| t.strip_suffix(')')) {
        let (p, q) = body
            .split_once('/')
            .ok_or_else(|| parse_err(line, format!("expected rot(p/q), got {token}")))?;
        let p: i64 = p.trim().parse().map_err(|_| parse_err(line, format!("bad numerator in {token}")))?;
        let q: u64 = q.trim().parse().map_err(|_| parse_err(line, format!("bad denominator in {token}")))?;
        let angle = Angle::new(p, q).ok_or_else(|| parse_err(line, "rot denominator must be >= 1"))?;
        return Ok(Gain::from_angle(angle));
    }
    if let Some(body) = token.strip_prefix("c(").and_then(|t| t.strip_suffix(')')) {
        let (re, im) = body
            .split_once(',')
            .ok_or_else(|| parse_err(line, format!("expected c(re,im), got {token}")))?;
        let re: f64 = re.trim().parse().map_err(|_| parse_err(line, format!("bad real part in {token}")))?;
        let im: f64 = im.trim().parse().map_err(|_| parse_err(line, format!("bad imaginary part in {token}")))?;
        return Gain::from_complex(Complex64::new(re, im));
    }
    Err(parse_err(line, format!("unknown gain token {token:?}")))
}

pub fn parse_gain_graph(text: &[u8]) -> Result<GainGraph> {
    let text = std::str::from_utf8(text).map_err(|e| parse_err(0, format!("input is not UTF-8: {e}")))?;
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "n" => {
                if n.is_some() {
                    return Err(parse_err(line_no, "duplicate header"));
                }
                if fields.len() != 2 {
                    return Err(parse_err(line_no, "expected `n <count>`"));
                }
                n = Some(fields[1].parse().map_err(|_| parse_err(line_no, "bad vertex count"))?);
            }
            "e" => {
                let count = n.ok_or_else(|| parse_err(line_no, "edge before `n` header"))?;
                if fields.len() != 4 {
                    return Err(parse_err(line_no, "expected `e <u> <v> <gain>`"));
                }
                let u: usize = fields[1].parse().map_err(|_| parse_err(line_no, "bad vertex id"))?;
                let v: usize = fields[2].parse().map_err(|_| parse_err(line_no, "bad vertex id"))?;
                for id in [u, v] {
                    if id >= count {
                        return Err(Error::VertexOutOfRange { id, n: count });
                    }
                }
                let gain = parse_gain(fields[3], line_no)?;
                edges.push((u, v, gain));
            }
            other => return Err(parse_err(line_no, format!("unknown record {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `n <count>` header"))?;
    GainGraph::new(n, edges)
}

/// Deterministic rendering: header then edges sorted by `(u, v)` with `u < v`.
pub fn serialize_gain_graph(g: &GainGraph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.n()).unwrap();
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u, e.v, e.gain.token()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_symbolic_gains() {
        let g = parse_gain_graph(b"n 2\ne 0 1 i").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].gain.exact_angle(), Angle::new(1, 4));

        let t = parse_gain_graph(b"n 3\ne 0 1 1\ne 1 2 1\ne 0 2 1").unwrap();
        assert_eq!(t.edge_count(), 3);
        assert!(t.edges().iter().all(|e| e.gain == Gain::ONE));

        let c = parse_gain_graph(b"n 2\ne 0 1 c(0.6,0.8)").unwrap();
        let gain = c.edges()[0].gain;
        assert!(gain.exact_angle().is_none());
        assert!((gain.value() - Complex64::new(0.6, 0.8)).norm() < 1e-12);

        let r = parse_gain_graph(b"# comment\n\nn 3\ne 2 1 rot(3/8)\n").unwrap();
        // Stored on (1, 2) as the conjugate of φ(2→1).
        assert_eq!(r.gain(1, 2).unwrap().exact_angle(), Angle::new(5, 8));
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_gain_graph(b"n 2\ne 0 1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_gain_graph(b"e 0 1 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_gain_graph(b"n 2\ne 0 1 c(0.6,0.9)"), Err(Error::NonUnitGain { .. })));
        assert!(matches!(parse_gain_graph(b"n 2\ne 0 0 1"), Err(Error::Loop(0))));
        assert!(matches!(parse_gain_graph(b"n 2\ne 0 1 1\ne 1 0 -1"), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(parse_gain_graph(b"n 2\ne 0 2 1"), Err(Error::VertexOutOfRange { id: 2, n: 2 })));
        assert!(matches!(parse_gain_graph(b"n 2\ne 0 1 j"), Err(Error::Parse { .. })));
        assert!(matches!(parse_gain_graph(b"n 2\ne 0 1 rot(1/0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_gain_graph(b"x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_gain_graph(b""), Err(Error::Parse { .. })));
    }

    #[test]
    fn serialization_is_sorted() {
        let g = parse_gain_graph(b"n 3\ne 2 1 i\ne 0 2 rot(1/3)\ne 0 1 -1").unwrap();
        assert_eq!(serialize_gain_graph(&g), "n 3\ne 0 1 -1\ne 0 2 rot(1/3)\ne 1 2 -i\n");
    }

    fn arb_gain() -> impl Strategy<Value = Gain> {
        prop_oneof![
            (0i64..24, 1u64..24).prop_map(|(p, q)| Gain::root_of_unity(p, q).unwrap()),
            (-10.0f64..10.0).prop_map(Gain::from_radians),
        ]
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..9, picks in proptest::collection::vec((0usize..9, 0usize..9, arb_gain()), 0..20)) {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> = picks
                .into_iter()
                .filter(|&(u, v, _)| u < n && v < n && u != v && seen.insert((u.min(v), u.max(v))))
                .collect();
            let g = GainGraph::new(n, edges).unwrap();
            let text = serialize_gain_graph(&g);
            let back = parse_gain_graph(text.as_bytes()).unwrap();
            prop_assert_eq!(back.n(), g.n());
            prop_assert_eq!(back.edge_count(), g.edge_count());
            for (a, b) in back.edges().iter().zip(g.edges()) {
                prop_assert_eq!((a.u, a.v), (b.u, b.v));
                prop_assert_eq!(a.gain.exact_angle(), b.gain.exact_angle());
                prop_assert!((a.gain.value() - b.gain.value()).norm() < 1e-12);
            }
            prop_assert_eq!(serialize_gain_graph(&back), text);
        }
    }
}
