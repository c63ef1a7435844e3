//! PACE 2017 treewidth formats: `.gr` graphs and `.td` decompositions.
//!
//! Vertices and bags are 1-indexed on disk. Comment lines start with `c`;
//! this crate writes metadata comments as `c key=value`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bits::VertexSet;
use crate::graph::{Graph, GraphError};
use crate::qcount::{self, Params};
use crate::td::TreeDecomposition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PaceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing `{0}` header line")]
    MissingHeader(&'static str),
    #[error("header promised {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, message: impl Into<String>) -> PaceError {
    PaceError::Parse {
        line,
        message: message.into(),
    }
}

/// A parsed `.gr` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrFile {
    pub graph: Graph,
    /// Comment lines with the leading `c ` stripped, in file order.
    pub comments: Vec<String>,
}

impl GrFile {
    /// `key=value` pairs from the comments.
    pub fn metadata(&self) -> Vec<(&str, &str)> {
        self.comments
            .iter()
            .filter_map(|c| c.split_once('='))
            .map(|(k, v)| (k.trim(), v.trim()))
            .collect()
    }
}

/// Metadata recorded for a q-Kneser graph: parameters, sizes and whichever
/// formula values apply.
pub fn kneser_metadata(p: &Params, g: &Graph) -> Vec<(String, String)> {
    let mut out = vec![
        ("q".to_string(), p.q.to_string()),
        ("n".to_string(), p.n.to_string()),
        ("k".to_string(), p.k.to_string()),
        ("t".to_string(), p.t.to_string()),
        ("vertices".to_string(), g.vertex_count().to_string()),
        ("edges".to_string(), g.edge_count().to_string()),
    ];
    if let Ok(d) = qcount::degree_formula(p) {
        out.push(("degree_formula".into(), d.to_string()));
    }
    if let Ok(a) = qcount::alpha_formula(p) {
        out.push(("alpha_formula".into(), a.to_string()));
    }
    if let Ok(tw) = qcount::tw_formula_qkneser(p) {
        out.push(("tw_formula".into(), tw.to_string()));
    } else if p.t + 1 == p.k {
        if let Ok(tw) = qcount::tw_formula_cograssmann(p.n, p.k, p.q) {
            out.push(("tw_formula".into(), tw.to_string()));
        }
    }
    out
}

pub fn write_gr(g: &Graph, metadata: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in metadata {
        writeln!(out, "c {k}={v}").unwrap();
    }
    writeln!(out, "p tw {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, PaceError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn vertex_id(tok: &str, n: usize, line: usize) -> Result<usize, PaceError> {
    let v: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("bad vertex `{tok}`")))?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses a `.gr` file. Self-loops, duplicate edges and a wrong edge count
/// are errors.
pub fn read_gr(text: &str) -> Result<GrFile, PaceError> {
    let mut comments = Vec::new();
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0;
    let mut seen_edges = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == "c" || trimmed.starts_with("c ") {
            comments.push(trimmed[1..].trim().to_string());
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match &mut graph {
            None => {
                if toks.next() != Some("p") || toks.next() != Some("tw") {
                    return Err(PaceError::MissingHeader("p tw"));
                }
                let n = parse_usize(toks.next(), line, "vertex count")?;
                declared_edges = parse_usize(toks.next(), line, "edge count")?;
                graph = Some(Graph::empty(n));
            }
            Some(g) => {
                let n = g.vertex_count();
                let u = vertex_id(toks.next().unwrap(), n, line)?;
                let v = vertex_id(
                    toks.next()
                        .ok_or_else(|| parse_err(line, "edge needs two endpoints"))?,
                    n,
                    line,
                )?;
                if toks.next().is_some() {
                    return Err(parse_err(line, "trailing tokens"));
                }
                if u == v {
                    return Err(parse_err(line, "self-loop"));
                }
                if g.has_edge(u, v) {
                    return Err(parse_err(
                        line,
                        format!("duplicate edge {} {}", u + 1, v + 1),
                    ));
                }
                g.add_edge(u, v)?;
                seen_edges += 1;
            }
        }
    }
    let graph = graph.ok_or(PaceError::MissingHeader("p tw"))?;
    if seen_edges != declared_edges {
        return Err(PaceError::CountMismatch {
            what: "edges",
            expected: declared_edges,
            found: seen_edges,
        });
    }
    Ok(GrFile { graph, comments })
}

pub fn write_td(d: &TreeDecomposition) -> String {
    write_td_with_comments(d, &[])
}

pub fn write_td_with_comments(d: &TreeDecomposition, metadata: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in metadata {
        writeln!(out, "c {k}={v}").unwrap();
    }
    writeln!(
        out,
        "s td {} {} {}",
        d.node_count(),
        d.max_bag_size(),
        d.vertex_count()
    )
    .unwrap();
    for (i, bag) in d.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag.iter() {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in d.edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Parses a `.td` file. Bags may appear in any order but each id exactly
/// once; tree shape is left to [`crate::td::validate`].
pub fn read_td(text: &str) -> Result<TreeDecomposition, PaceError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let Some((nbags, _, nverts)) = header else {
            if toks.next() != Some("s") || toks.next() != Some("td") {
                return Err(PaceError::MissingHeader("s td"));
            }
            let nb = parse_usize(toks.next(), line, "bag count")?;
            let width = parse_usize(toks.next(), line, "bag size")?;
            let nv = parse_usize(toks.next(), line, "vertex count")?;
            header = Some((nb, width, nv));
            bags = vec![None; nb];
            continue;
        };
        let first = toks.next().unwrap();
        if first == "b" {
            let id = parse_usize(toks.next(), line, "bag id")?;
            if id == 0 || id > nbags {
                return Err(parse_err(line, format!("bag id {id} outside 1..={nbags}")));
            }
            if bags[id - 1].is_some() {
                return Err(parse_err(line, format!("bag {id} listed twice")));
            }
            let mut bag = VertexSet::new(nverts);
            for tok in toks {
                bag.insert(vertex_id(tok, nverts, line)?);
            }
            bags[id - 1] = Some(bag);
        } else {
            let a = parse_usize(Some(first), line, "tree node")?;
            let b = parse_usize(toks.next(), line, "tree node")?;
            if toks.next().is_some() {
                return Err(parse_err(line, "trailing tokens"));
            }
            if a == 0 || b == 0 || a > nbags || b > nbags {
                return Err(parse_err(
                    line,
                    format!("tree edge {a} {b} outside 1..={nbags}"),
                ));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let (nbags, max_bag, nverts) = header.ok_or(PaceError::MissingHeader("s td"))?;
    let found = bags.iter().filter(|b| b.is_some()).count();
    if found != nbags {
        return Err(PaceError::CountMismatch {
            what: "bags",
            expected: nbags,
            found,
        });
    }
    let bags: Vec<VertexSet> = bags.into_iter().map(Option::unwrap).collect();
    let actual_max = bags.iter().map(VertexSet::count).max().unwrap_or(0);
    if actual_max != max_bag {
        return Err(PaceError::CountMismatch {
            what: "max bag size",
            expected: max_bag,
            found: actual_max,
        });
    }
    Ok(TreeDecomposition::new(nverts, bags, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_qkneser;
    use crate::td::{star_decomposition, validate};
    use proptest::prelude::*;

    fn c5() -> Graph {
        Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap()
    }

    #[test]
    fn gr_output_shape() {
        let text = write_gr(&c5(), &[("name".into(), "c5".into())]);
        assert_eq!(text, "c name=c5\np tw 5 5\n1 2\n1 5\n2 3\n3 4\n4 5\n");
        let back = read_gr(&text).unwrap();
        assert_eq!(back.graph, c5());
        assert_eq!(back.metadata(), vec![("name", "c5")]);
    }

    #[test]
    fn kneser_export_is_deterministic() {
        let p = Params::new(4, 2, 1, 2).unwrap();
        let a = build_qkneser(&p).unwrap();
        let b = build_qkneser(&p).unwrap();
        let ta = write_gr(&a, &kneser_metadata(&p, &a));
        assert_eq!(ta, write_gr(&b, &kneser_metadata(&p, &b)));
        assert!(ta.contains("c edges=280\n"));
        assert!(ta.contains("p tw 35 280\n"));
        let meta = read_gr(&ta).unwrap();
        assert!(meta.metadata().contains(&("tw_formula", "[19,27]")));
        assert_eq!(meta.graph.edge_count(), 280);
    }

    #[test]
    fn gr_errors() {
        assert_eq!(read_gr("1 2\n"), Err(PaceError::MissingHeader("p tw")));
        assert_eq!(read_gr(""), Err(PaceError::MissingHeader("p tw")));
        assert!(matches!(
            read_gr("p tw 3 1\n1 4\n"),
            Err(PaceError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_gr("p tw 3 1\n1 1\n"),
            Err(PaceError::Parse { .. })
        ));
        assert!(matches!(
            read_gr("p tw 3 2\n1 2\n2 1\n"),
            Err(PaceError::Parse { .. })
        ));
        assert!(matches!(
            read_gr("p tw 3 2\n1 2\n"),
            Err(PaceError::CountMismatch { .. })
        ));
        assert!(matches!(
            read_gr("p tw 3 1\n1\n"),
            Err(PaceError::Parse { .. })
        ));
    }

    #[test]
    fn td_round_trip_of_c5_star() {
        let g = c5();
        let d = star_decomposition(&g, &VertexSet::from_indices(5, [0, 2])).unwrap();
        let text = write_td(&d);
        assert_eq!(
            text,
            "s td 3 3 5\nb 1 2 4 5\nb 2 1 2 5\nb 3 2 3 4\n1 2\n1 3\n"
        );
        let back = read_td(&text).unwrap();
        assert_eq!(back, d);
        assert!(validate(&g, &back).unwrap().is_valid());
    }

    #[test]
    fn td_errors() {
        assert_eq!(read_td("b 1 1\n"), Err(PaceError::MissingHeader("s td")));
        assert_eq!(
            read_td("s tw 1 1 1\n"),
            Err(PaceError::MissingHeader("s td"))
        );
        assert!(matches!(
            read_td("s td 1 x 1\n"),
            Err(PaceError::Parse { .. })
        ));
        assert!(matches!(
            read_td("s td 2 1 1\nb 1 1\n"),
            Err(PaceError::CountMismatch { what: "bags", .. })
        ));
        assert!(matches!(
            read_td("s td 1 2 1\nb 1 1\n"),
            Err(PaceError::CountMismatch { .. })
        ));
        assert!(matches!(
            read_td("s td 1 1 1\nb 1 2\n"),
            Err(PaceError::Parse { .. })
        ));
        assert!(matches!(
            read_td("s td 1 1 1\nb 1 1\nb 1 1\n"),
            Err(PaceError::Parse { .. })
        ));
        assert!(matches!(
            read_td("s td 2 1 2\nb 1 1\nb 2 2\n1 3\n"),
            Err(PaceError::Parse { .. })
        ));
    }

    proptest! {
        #[test]
        fn td_text_round_trips(nv in 1usize..12, bags in proptest::collection::vec(proptest::collection::btree_set(0usize..12, 0..6), 1..6), seed in 0usize..100) {
            let bags: Vec<VertexSet> = bags.into_iter().map(|b| VertexSet::from_indices(nv, b.into_iter().filter(|&v| v < nv))).collect();
            let edges: Vec<(usize, usize)> = (1..bags.len()).map(|i| ((seed + i) % i, i)).collect();
            let d = TreeDecomposition::new(nv, bags, edges);
            let text = write_td(&d);
            let back = read_td(&text).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(write_td(&back), text);
        }
    }
}
