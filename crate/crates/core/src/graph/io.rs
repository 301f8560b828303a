use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

/// Parses the edge-list text format: an `n <count>` header, then one
/// `<u> <v>` pair per line. Blank lines and lines starting with `#` are
/// skipped. Duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let mut fields = line.split_whitespace();
        match n {
            None => {
                let (Some("n"), Some(count), None) = (fields.next(), fields.next(), fields.next())
                else {
                    return Err(parse_err(format!("expected header `n <count>`, got `{line}`")));
                };
                let count = count
                    .parse::<usize>()
                    .map_err(|e| parse_err(format!("bad vertex count `{count}`: {e}")))?;
                n = Some(count);
            }
            Some(count) => {
                let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
                    return Err(parse_err(format!("expected `<u> <v>`, got `{line}`")));
                };
                let u = parse_vertex(a, count).map_err(parse_err)?;
                let v = parse_vertex(b, count).map_err(parse_err)?;
                if u == v {
                    return Err(parse_err(format!("loop edge at vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `n <count>` header".into(),
    })?;
    Graph::from_edges(n, edges)
}

fn parse_vertex(field: &str, count: usize) -> std::result::Result<usize, String> {
    let v = field
        .parse::<usize>()
        .map_err(|e| format!("bad vertex `{field}`: {e}"))?;
    if v >= count {
        return Err(format!("vertex {v} out of range 0..{count}"));
    }
    Ok(v)
}

/// Writes `g` in the edge-list format, each edge once as `u v` with `u < v`,
/// in lexicographic order.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
