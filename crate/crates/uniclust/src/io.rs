//! Line-oriented text formats for instances and witnesses.
//!
//! Instance files: comment lines `c ...`, a header `p ucluster <n> <m>`, then
//! exactly `m` lines `e <u> <v>` with `1 <= u < v <= n`. Witness files: a
//! header `w <variant> <size>` followed by `size` payload lines, one of
//! `v <id>`, `e <u> <v>`, or `s <v> | <ids> | <ids>` (comma-separated sets,
//! either of which may be empty). Ids are 1-based on disk, 0-based in memory.

use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::instance::{SplitStep, Variant, Witness};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// Parses an instance file into a graph.
pub fn parse_instance(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None; // (n, m, line)
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = EdgeSeen::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = t.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return err(line, "duplicate header");
                }
                if fields.len() != 4 || fields[1] != "ucluster" {
                    return err(line, "malformed header, expected `p ucluster <n> <m>`");
                }
                let n = parse_num(fields[2], line)?;
                let m = parse_num(fields[3], line)?;
                header = Some((n, m, line));
            }
            "e" => {
                let (n, m, _) = match header {
                    Some(h) => h,
                    None => return err(line, "edge before header"),
                };
                if fields.len() != 3 {
                    return err(line, "malformed edge line, expected `e <u> <v>`");
                }
                let u = parse_num(fields[1], line)?;
                let v = parse_num(fields[2], line)?;
                if u == v {
                    return err(line, format!("self-loop at vertex {u}"));
                }
                if u < 1 || v < 1 || u > n || v > n {
                    return err(line, format!("vertex id out of range 1..={n}"));
                }
                let (a, b) = (u.min(v) - 1, u.max(v) - 1);
                if !seen.insert(a, b) {
                    return err(line, format!("duplicate edge ({u},{v})"));
                }
                edges.push((a, b));
                if edges.len() > m {
                    return err(line, format!("more than {m} edges"));
                }
            }
            other => return err(line, format!("unknown record `{other}`")),
        }
    }
    let (n, m, hline) = match header {
        Some(h) => h,
        None => return err(text.lines().count().max(1), "missing header"),
    };
    if edges.len() != m {
        return err(hline, format!("header declares {m} edges, found {}", edges.len()));
    }
    Ok(Graph::from_edges(n, &edges))
}

/// Canonical instance text: header plus edges in ascending order.
pub fn write_instance(g: &Graph) -> String {
    let mut out = format!("p ucluster {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses a witness file.
pub fn parse_witness(text: &str) -> Result<(Variant, Witness), ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
    let (hline, header) = match lines.next() {
        Some(x) => x,
        None => return err(1, "empty witness file"),
    };
    let hf: Vec<&str> = header.split_ascii_whitespace().collect();
    if hf.len() != 3 || hf[0] != "w" {
        return err(hline, "malformed header, expected `w <variant> <size>`");
    }
    let variant = match Variant::parse(hf[1]) {
        Some(v) => v,
        None => return err(hline, format!("unknown variant `{}`", hf[1])),
    };
    let size: usize = parse_num(hf[2], hline)?;

    let mut vertices: Vec<usize> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut splits: Vec<SplitStep> = Vec::new();
    let mut records = 0usize;
    for (line, t) in lines {
        records += 1;
        let fields: Vec<&str> = t.split_ascii_whitespace().collect();
        match fields[0] {
            "v" => {
                if fields.len() != 2 {
                    return err(line, "expected `v <id>`");
                }
                let id: usize = parse_num(fields[1], line)?;
                if id < 1 {
                    return err(line, "vertex ids are 1-based");
                }
                vertices.push(id - 1);
            }
            "e" => {
                if fields.len() != 3 {
                    return err(line, "expected `e <u> <v>`");
                }
                let u: usize = parse_num(fields[1], line)?;
                let v: usize = parse_num(fields[2], line)?;
                if u < 1 || v < 1 || u == v {
                    return err(line, "bad edge endpoints");
                }
                edges.push((u - 1, v - 1));
            }
            "s" => {
                let rest = t.strip_prefix('s').unwrap().trim();
                let parts: Vec<&str> = rest.split('|').map(str::trim).collect();
                if parts.len() != 3 {
                    return err(line, "expected `s <v> | <ids> | <ids>`");
                }
                let v: usize = parse_num(parts[0], line)?;
                if v < 1 {
                    return err(line, "vertex ids are 1-based");
                }
                let side1 = parse_id_list(parts[1], line)?;
                let side2 = parse_id_list(parts[2], line)?;
                let exclusive = variant == Variant::Ucevs;
                splits.push(SplitStep { vertex: v - 1, side1, side2, exclusive });
            }
            other => return err(line, format!("unknown record `{other}`")),
        }
    }
    if records != size {
        return err(hline, format!("header declares {size} records, found {records}"));
    }
    let witness = match variant {
        Variant::Ucvd => Witness::Vertices(VertexSet::new(vertices)),
        Variant::Uced => Witness::DeleteEdges(EdgeSet::new(edges)),
        Variant::Ucea => Witness::AddEdges(EdgeSet::new(edges)),
        Variant::Ucee => Witness::EditEdges(EdgeSet::new(edges)),
        Variant::Ucevs | Variant::Ucivs => Witness::Splits(splits),
    };
    Ok((variant, witness))
}

/// Serializes a witness under the given variant tag.
pub fn write_witness(variant: Variant, w: &Witness) -> String {
    let mut out = format!("w {} {}\n", variant, w.size());
    match w {
        Witness::Vertices(set) => {
            for v in set.iter() {
                out.push_str(&format!("v {}\n", v + 1));
            }
        }
        Witness::DeleteEdges(set) | Witness::AddEdges(set) | Witness::EditEdges(set) => {
            for (u, v) in set.iter() {
                out.push_str(&format!("e {} {}\n", u + 1, v + 1));
            }
        }
        Witness::Splits(steps) => {
            for s in steps {
                out.push_str(&format!(
                    "s {} | {} | {}\n",
                    s.vertex + 1,
                    fmt_id_list(&s.side1),
                    fmt_id_list(&s.side2)
                ));
            }
        }
    }
    out
}

fn fmt_id_list(ids: &[usize]) -> String {
    ids.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn parse_id_list(s: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let id: usize = parse_num(tok.trim(), line)?;
            if id < 1 {
                return err(line, "vertex ids are 1-based");
            }
            Ok(id - 1)
        })
        .collect()
}

fn parse_num(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError { line, msg: format!("expected a number, got `{tok}`") })
}

#[derive(Default)]
struct EdgeSeen(std::collections::BTreeSet<(usize, usize)>);

impl EdgeSeen {
    fn insert(&mut self, a: usize, b: usize) -> bool {
        self.0.insert((a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_p3() {
        let g = parse_instance("p ucluster 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn parse_empty_graph() {
        let g = parse_instance("p ucluster 0 0\n").unwrap();
        assert_eq!(g.n(), 0);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = parse_instance("p ucluster 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("self-loop"));
        let e = parse_instance("p ucluster 2 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.msg.contains("duplicate"));
        let e = parse_instance("p ucluster 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("out of range"));
    }

    #[test]
    fn round_trip_stability() {
        let text = "c a comment\np ucluster 5 4\ne 3 5\ne 1 2\ne 2 3\ne 1 4\n";
        let g = parse_instance(text).unwrap();
        let canonical = write_instance(&g);
        let g2 = parse_instance(&canonical).unwrap();
        assert_eq!(g, g2);
        assert_eq!(write_instance(&g2), canonical);
    }

    #[test]
    fn witness_round_trip() {
        let w = Witness::Splits(vec![
            SplitStep { vertex: 1, side1: vec![0, 2], side2: vec![], exclusive: false },
            SplitStep { vertex: 4, side1: vec![2], side2: vec![0, 3], exclusive: false },
        ]);
        let text = write_witness(Variant::Ucivs, &w);
        let (v, w2) = parse_witness(&text).unwrap();
        assert_eq!(v, Variant::Ucivs);
        assert_eq!(w, w2);

        let w = Witness::EditEdges(EdgeSet::new(vec![(0, 3), (1, 2)]));
        let text = write_witness(Variant::Ucee, &w);
        assert_eq!(parse_witness(&text).unwrap().1, w);
    }
}
