//! Plain-text graph files: a header line `n m`, then `m` lines `u v` with
//! 0-based endpoints. Loops are written `u u`; repeated lines are parallel
//! edges.

use std::fmt::Write as _;
use std::path::Path;

use super::MultiGraph;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let [n, m] = parse_pair(header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines {
        let [u, v] = parse_pair(line, i + 1)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header says {m} edges, found {}",
            edges.len()
        )));
    }
    MultiGraph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_pair(line: &str, lineno: usize) -> Result<[usize; 2]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = || {
        Error::Parse(format!(
            "line {lineno}: expected two integers, got {line:?}"
        ))
    };
    if fields.len() != 2 {
        return Err(bad());
    }
    Ok([
        fields[0].parse().map_err(|_| bad())?,
        fields[1].parse().map_err(|_| bad())?,
    ])
}

pub fn format_graph(g: &MultiGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn read_graph(path: &Path) -> Result<MultiGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(path: &Path, g: &MultiGraph) -> Result<()> {
    Ok(std::fs::write(path, format_graph(g))?)
}

/// Whitespace-separated vertex indices.
pub fn parse_vertex_set(text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad vertex index {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_loops_and_repeats() {
        let g = MultiGraph::new(3, vec![(0, 1), (0, 1), (2, 2)]).unwrap();
        let text = format_graph(&g);
        assert_eq!(text, "3 3\n0 1\n0 1\n2 2\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        let g = crate::graph::named::petersen();
        write_graph(&path, &g).unwrap();
        assert_eq!(read_graph(&path).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("2 1\n0 5\n").is_err());
        assert!(parse_graph("2 2\n0 1\n").is_err());
        assert!(parse_graph("2 1\n0 x\n").is_err());
        assert_eq!(parse_vertex_set("0 3\n4").unwrap(), vec![0, 3, 4]);
        assert!(parse_vertex_set("0 -1").is_err());
    }
}
