//! Plain-text graph format `csbm-v1`.
//!
//! ```text
//! csbm-v1 <n> <k> <t>
//! labels <l_1> ... <l_n>        (1-based community labels)
//! <u> <v> <+|->                 (one line per revealed pair, 0-based, u < v)
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{CsbmError, Result};
use crate::model::{CensoredGraph, CommunityAssignment, EdgeStatus, RevealedPair};

pub const FORMAT_TAG: &str = "csbm-v1";

/// Contents of a graph file: the graph with its ground-truth labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile {
    pub graph: CensoredGraph,
    pub labels: CommunityAssignment,
    pub t: f64,
}

impl GraphFile {
    pub fn k(&self) -> usize {
        self.labels.k()
    }
}

fn violation(line: usize, msg: impl Into<String>) -> CsbmError {
    CsbmError::FormatViolation { line, msg: msg.into() }
}

pub fn write_graph_to<W: Write>(mut out: W, graph: &CensoredGraph, labels: &CommunityAssignment, t: f64) -> Result<()> {
    if labels.n() != graph.n() {
        return Err(CsbmError::LengthMismatch(labels.n(), graph.n()));
    }
    writeln!(out, "{FORMAT_TAG} {} {} {t}", graph.n(), labels.k())?;
    write!(out, "labels")?;
    for &l in labels.labels() {
        write!(out, " {}", l + 1)?;
    }
    writeln!(out)?;
    for p in graph.revealed() {
        let c = match p.status {
            EdgeStatus::Present => '+',
            EdgeStatus::Absent => '-',
        };
        writeln!(out, "{} {} {c}", p.u, p.v)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_graph(path: impl AsRef<Path>, graph: &CensoredGraph, labels: &CommunityAssignment, t: f64) -> Result<()> {
    write_graph_to(BufWriter::new(File::create(path)?), graph, labels, t)
}

fn parse<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| violation(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| violation(line, format!("bad {what} '{tok}'")))
}

pub fn read_graph_from<R: Read>(input: R) -> Result<GraphFile> {
    let mut lines = BufReader::new(input).lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, header) = lines.next().ok_or_else(|| violation(1, "empty file"))?;
    let header = header?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some(FORMAT_TAG) {
        return Err(violation(ln, format!("header must start with '{FORMAT_TAG}'")));
    }
    let n: usize = parse(toks.next(), ln, "vertex count")?;
    let k: usize = parse(toks.next(), ln, "community count")?;
    let t: f64 = parse(toks.next(), ln, "reveal intensity")?;
    if toks.next().is_some() {
        return Err(violation(ln, "trailing tokens in header"));
    }
    if k == 0 {
        return Err(violation(ln, "community count must be positive"));
    }

    let (ln, label_line) = lines.next().ok_or_else(|| violation(2, "missing labels line"))?;
    let label_line = label_line?;
    let mut toks = label_line.split_whitespace();
    if toks.next() != Some("labels") {
        return Err(violation(ln, "expected 'labels'"));
    }
    let mut labels = Vec::with_capacity(n);
    for tok in toks {
        let l: usize = parse(Some(tok), ln, "label")?;
        if l == 0 || l > k {
            return Err(violation(ln, format!("label {l} outside 1..={k}")));
        }
        labels.push(l - 1);
    }
    if labels.len() != n {
        return Err(violation(ln, format!("{} labels for {n} vertices", labels.len())));
    }

    let mut pairs = Vec::new();
    for (ln, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let u: usize = parse(toks.next(), ln, "vertex")?;
        let v: usize = parse(toks.next(), ln, "vertex")?;
        let status = match toks.next() {
            Some("+") => EdgeStatus::Present,
            Some("-") => EdgeStatus::Absent,
            Some(other) => return Err(violation(ln, format!("bad status '{other}'"))),
            None => return Err(violation(ln, "missing status")),
        };
        if toks.next().is_some() {
            return Err(violation(ln, "trailing tokens"));
        }
        if u >= v || v >= n {
            return Err(violation(ln, format!("pair ({u}, {v}) must satisfy u < v < {n}")));
        }
        pairs.push(RevealedPair { u, v, status });
    }
    let graph = CensoredGraph::new(n, pairs).map_err(|e| violation(0, e.to_string()))?;
    Ok(GraphFile { graph, labels: CommunityAssignment::from_labels(labels, k)?, t })
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<GraphFile> {
    read_graph_from(File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (CensoredGraph, CommunityAssignment) {
        let g = CensoredGraph::new(
            3,
            [
                RevealedPair { u: 0, v: 2, status: EdgeStatus::Absent },
                RevealedPair { u: 0, v: 1, status: EdgeStatus::Present },
            ],
        )
        .unwrap();
        (g, CommunityAssignment::from_labels(vec![0, 1, 1], 2).unwrap())
    }

    #[test]
    fn roundtrip_in_memory() {
        let (g, l) = sample();
        let mut buf = Vec::new();
        write_graph_to(&mut buf, &g, &l, 0.1 + 0.2).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "csbm-v1 3 2 0.30000000000000004\nlabels 1 2 2\n0 1 +\n0 2 -\n");
        let back = read_graph_from(buf.as_slice()).unwrap();
        assert_eq!(back.graph, g);
        assert_eq!(back.labels, l);
        assert_eq!(back.t, 0.1 + 0.2);
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "csbm-v2 3 2 1\nlabels 1 2 2\n",
            "csbm-v1 3 2\nlabels 1 2 2\n",
            "csbm-v1 3 2 1\nlabels 1 2\n",
            "csbm-v1 3 2 1\nlabels 1 2 3\n",
            "csbm-v1 3 2 1\nlabels 1 2 2\n0 1 x\n",
            "csbm-v1 3 2 1\nlabels 1 2 2\n1 0 +\n",
            "csbm-v1 3 2 1\nlabels 1 2 2\n0 1 +\n0 1 -\n",
            "",
        ];
        for text in bad {
            let e = read_graph_from(text.as_bytes()).unwrap_err();
            assert!(matches!(e, CsbmError::FormatViolation { .. }), "{text:?}: {e}");
        }
    }
}
