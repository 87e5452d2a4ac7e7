//! Text formats: weighted edge lists, a GML subset, and partition files.
//!
//! Edge list: one `u v [w]` per line, `w` defaulting to 1; `u u w` is a loop
//! of weight `w`; `#` starts a comment. The graph has `max id + 1` vertices.
//!
//! GML: only `node [ id .. ]` and `edge [ source .. target .. value .. ]`
//! inside `graph [ .. ]` are read; every other key is skipped. Node ids are
//! mapped to `0..n` in order of declaration.
//!
//! Partition: one `u c` per line (vertex, community id).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Clustering, Graph, GraphBuilder};

/// Vertex ids above this are rejected rather than allocated.
pub const MAX_VERTEX_ID: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Gml,
}

impl GraphFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("gml") => GraphFormat::Gml,
            _ => GraphFormat::EdgeList,
        }
    }
}

/// A parsed graph plus non-fatal diagnostics (e.g. collapsed duplicates).
#[derive(Clone, Debug)]
pub struct Loaded {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn load_graph(path: &Path, format: GraphFormat) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)?;
    match format {
        GraphFormat::EdgeList => parse_edge_list(&text),
        GraphFormat::Gml => parse_gml(&text),
    }
}

fn parse_vertex(tok: &str, line: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid vertex id {tok:?}")))?;
    if v > MAX_VERTEX_ID {
        return Err(Error::parse(line, format!("vertex id {v} exceeds {MAX_VERTEX_ID}")));
    }
    Ok(v)
}

pub fn parse_edge_list(text: &str) -> Result<Loaded> {
    let mut triples = Vec::new();
    let mut n = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() > 3 || toks.len() < 2 {
            return Err(Error::parse(line, format!("expected `u v [w]`, got {} fields", toks.len())));
        }
        let u = parse_vertex(toks[0], line)?;
        let v = parse_vertex(toks[1], line)?;
        let w = match toks.get(2) {
            Some(t) => t
                .parse::<f64>()
                .map_err(|_| Error::parse(line, format!("invalid weight {t:?}")))?,
            None => 1.0,
        };
        n = n.max(u + 1).max(v + 1);
        triples.push((line, u, v, w));
    }
    let mut b = GraphBuilder::new(n);
    let mut warnings = Vec::new();
    for (line, u, v, w) in triples {
        let dup = b.add_edge(u, v, w).map_err(|e| Error::parse(line, e.to_string()))?;
        if dup {
            warnings.push(format!("line {line}: duplicate pair ({u}, {v}) merged by summing weights"));
        }
    }
    Ok(Loaded {
        graph: b.build(),
        warnings,
    })
}

/// Writes `u v w` lines (pairs with `u < v`, then loops). Weights use the
/// shortest round-trip representation, so parsing the output reproduces
/// the graph exactly.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# n={} m={}", g.n(), g.edge_count());
    for (u, v, w) in g.edges() {
        let _ = writeln!(out, "{u} {v} {w}");
    }
    // A zero-weight loop pins the vertex count when trailing vertices are isolated.
    if let Some(last) = g.n().checked_sub(1) {
        if g.degrees()[last] == 0.0 {
            let _ = writeln!(out, "{last} {last} 0");
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Word(&'a str),
    Str,
    Open,
    Close,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1 }
    }

    fn next(&mut self) -> Result<Option<(Token<'a>, usize)>> {
        let bytes = self.src.as_bytes();
        loop {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
                if bytes[self.pos] == b'\n' {
                    self.line += 1;
                }
                self.pos += 1;
            }
            if self.pos < bytes.len() && bytes[self.pos] == b'#' {
                while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        if self.pos >= bytes.len() {
            return Ok(None);
        }
        let line = self.line;
        let c = bytes[self.pos];
        match c {
            b'[' => {
                self.pos += 1;
                Ok(Some((Token::Open, line)))
            }
            b']' => {
                self.pos += 1;
                Ok(Some((Token::Close, line)))
            }
            b'"' => {
                self.pos += 1;
                while self.pos < bytes.len() && bytes[self.pos] != b'"' {
                    if bytes[self.pos] == b'\n' {
                        self.line += 1;
                    }
                    self.pos += 1;
                }
                if self.pos >= bytes.len() {
                    return Err(Error::parse(line, "unterminated string"));
                }
                self.pos += 1;
                Ok(Some((Token::Str, line)))
            }
            _ => {
                let start = self.pos;
                while self.pos < bytes.len()
                    && !bytes[self.pos].is_ascii_whitespace()
                    && !matches!(bytes[self.pos], b'[' | b']' | b'"')
                {
                    self.pos += 1;
                }
                Ok(Some((Token::Word(&self.src[start..self.pos]), line)))
            }
        }
    }
}

/// Key/value pairs of one GML list; nested lists are kept only one level down.
#[derive(Default)]
struct Record<'a> {
    scalars: Vec<(&'a str, Option<&'a str>, usize)>,
}

impl<'a> Record<'a> {
    fn get(&self, key: &str) -> Option<(Option<&'a str>, usize)> {
        self.scalars
            .iter()
            .find(|(k, _, _)| *k == key)
            .map(|&(_, v, l)| (v, l))
    }
}

const MAX_GML_DEPTH: usize = 64;

fn skip_list(lex: &mut Lexer<'_>, open_line: usize) -> Result<()> {
    let mut depth = 1usize;
    while depth > 0 {
        match lex.next()? {
            Some((Token::Open, _)) => {
                depth += 1;
                if depth > MAX_GML_DEPTH {
                    return Err(Error::parse(lex.line, "lists nested too deeply"));
                }
            }
            Some((Token::Close, _)) => depth -= 1,
            Some(_) => {}
            None => return Err(Error::parse(open_line, "unterminated list")),
        }
    }
    Ok(())
}

/// Reads scalar pairs of a list whose `[` was just consumed.
fn read_record<'a>(lex: &mut Lexer<'a>, open_line: usize) -> Result<Record<'a>> {
    let mut rec = Record::default();
    loop {
        let key = match lex.next()? {
            Some((Token::Close, _)) => return Ok(rec),
            Some((Token::Word(k), line)) => (k, line),
            Some((tok, line)) => return Err(Error::parse(line, format!("expected key, found {tok:?}"))),
            None => return Err(Error::parse(open_line, "unterminated list")),
        };
        match lex.next()? {
            Some((Token::Word(v), _)) => rec.scalars.push((key.0, Some(v), key.1)),
            Some((Token::Str, _)) => rec.scalars.push((key.0, None, key.1)),
            Some((Token::Open, l)) => skip_list(lex, l)?,
            Some((Token::Close, l)) => return Err(Error::parse(l, format!("key {:?} has no value", key.0))),
            None => return Err(Error::parse(key.1, "unexpected end of input")),
        }
    }
}

fn gml_int(rec: &Record<'_>, key: &str, ctx: &str, line: usize) -> Result<i64> {
    match rec.get(key) {
        Some((Some(v), l)) => v
            .parse::<i64>()
            .map_err(|_| Error::parse(l, format!("{ctx} {key} must be an integer, got {v:?}"))),
        Some((None, l)) => Err(Error::parse(l, format!("{ctx} {key} must be an integer"))),
        None => Err(Error::parse(line, format!("{ctx} without {key}"))),
    }
}

pub fn parse_gml(text: &str) -> Result<Loaded> {
    let mut lex = Lexer::new(text);
    // Find `graph [`.
    let graph_line = loop {
        match lex.next()? {
            Some((Token::Word("graph"), _)) => match lex.next()? {
                Some((Token::Open, l)) => break l,
                _ => return Err(Error::parse(lex.line, "expected `[` after `graph`")),
            },
            Some((Token::Word(_), _)) => match lex.next()? {
                Some((Token::Open, l)) => skip_list(&mut lex, l)?,
                Some(_) => {}
                None => return Err(Error::parse(lex.line, "no graph section")),
            },
            Some((_, l)) => return Err(Error::parse(l, "expected key")),
            None => return Err(Error::parse(lex.line, "no graph section")),
        }
    };

    let mut ids: HashMap<i64, usize> = HashMap::new();
    let mut edges = Vec::new();
    loop {
        let (key, line) = match lex.next()? {
            Some((Token::Close, _)) => break,
            Some((Token::Word(k), l)) => (k, l),
            Some((tok, l)) => return Err(Error::parse(l, format!("expected key, found {tok:?}"))),
            None => return Err(Error::parse(graph_line, "unterminated graph section")),
        };
        match (key, lex.next()?) {
            ("node", Some((Token::Open, l))) => {
                let rec = read_record(&mut lex, l)?;
                let id = gml_int(&rec, "id", "node", line)?;
                if ids.len() >= MAX_VERTEX_ID {
                    return Err(Error::parse(line, "too many nodes"));
                }
                let next = ids.len();
                if ids.insert(id, next).is_some() {
                    return Err(Error::parse(line, format!("duplicate node id {id}")));
                }
            }
            ("edge", Some((Token::Open, l))) => {
                let rec = read_record(&mut lex, l)?;
                let s = gml_int(&rec, "source", "edge", line)?;
                let t = gml_int(&rec, "target", "edge", line)?;
                let w = match rec.get("value") {
                    Some((Some(v), l)) => v
                        .parse::<f64>()
                        .map_err(|_| Error::parse(l, format!("edge value must be numeric, got {v:?}")))?,
                    Some((None, l)) => return Err(Error::parse(l, "edge value must be numeric")),
                    None => 1.0,
                };
                edges.push((line, s, t, w));
            }
            (_, Some((Token::Open, l))) => skip_list(&mut lex, l)?,
            (_, Some((Token::Word(_) | Token::Str, _))) => {}
            (_, Some((Token::Close, l))) => return Err(Error::parse(l, format!("key {key:?} has no value"))),
            (_, None) => return Err(Error::parse(line, "unexpected end of input")),
        }
    }

    let mut b = GraphBuilder::new(ids.len());
    let mut warnings = Vec::new();
    for (line, s, t, w) in edges {
        let lookup = |x: i64| {
            ids.get(&x)
                .copied()
                .ok_or_else(|| Error::parse(line, format!("edge refers to undeclared node {x}")))
        };
        let (u, v) = (lookup(s)?, lookup(t)?);
        if b.add_edge(u, v, w).map_err(|e| Error::parse(line, e.to_string()))? {
            warnings.push(format!("line {line}: duplicate edge ({s}, {t}) merged by summing weights"));
        }
    }
    Ok(Loaded {
        graph: b.build(),
        warnings,
    })
}

/// Parses `u c` lines into a clustering of `n` vertices; each vertex must be
/// listed exactly once.
pub fn parse_partition(text: &str, n: usize) -> Result<Clustering> {
    let mut labels: Vec<Option<u64>> = vec![None; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 2 {
            return Err(Error::parse(line, "expected `vertex community`"));
        }
        let u = parse_vertex(toks[0], line)?;
        let c: u64 = toks[1]
            .parse()
            .map_err(|_| Error::parse(line, format!("invalid community id {:?}", toks[1])))?;
        let slot = labels
            .get_mut(u)
            .ok_or_else(|| Error::parse(line, format!("vertex {u} out of range for n = {n}")))?;
        if slot.replace(c).is_some() {
            return Err(Error::parse(line, format!("vertex {u} assigned twice")));
        }
    }
    if let Some(missing) = labels.iter().position(Option::is_none) {
        return Err(Error::parse(0, format!("vertex {missing} has no community")));
    }
    Ok(Clustering::from_labels(labels.into_iter().map(|c| c.unwrap_or(0) as usize)))
}

pub fn write_partition(c: &Clustering) -> String {
    let mut out = String::with_capacity(c.n() * 6);
    for (i, &l) in c.labels().iter().enumerate() {
        let _ = writeln!(out, "{i} {l}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_basics() {
        let text = "# comment\n0 1\n1 2 2.5  # trailing\n\n3 3 2.5\n";
        let loaded = parse_edge_list(text).unwrap();
        let g = &loaded.graph;
        assert_eq!(g.n(), 4);
        assert_eq!(g.weight(1, 2), 2.5);
        assert_eq!(g.loop_weight(3), 2.5);
        assert_eq!(g.degree(3).unwrap(), 5.0);
        assert!(loaded.warnings.is_empty());
    }

    #[test]
    fn edge_list_duplicates_warn() {
        let loaded = parse_edge_list("0 1 1\n1 0 2\n").unwrap();
        assert_eq!(loaded.graph.weight(0, 1), 3.0);
        assert_eq!(loaded.warnings.len(), 1);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        for (text, line) in [("0 1\nx 2\n", 2), ("0 1\n1 2 -3\n", 2), ("0\n", 1), ("0 1 2 3\n", 1), ("0 1 nan\n", 1)] {
            match parse_edge_list(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_edge_list("99999999999 0\n").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(5, [(0, 1, 0.1), (1, 2, 1.0 / 3.0), (4, 4, 2.0), (2, 4, 7.0)]).unwrap();
        let back = parse_edge_list(&write_edge_list(&g)).unwrap().graph;
        assert_eq!(back, g);
        let sparse = Graph::from_edges(6, [(0, 1, 1.0)]).unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&sparse)).unwrap().graph, sparse);
    }

    #[test]
    fn gml_subset() {
        let text = r#"
            Creator "someone [with brackets]"
            graph [
              directed 0
              node [ id 10 label "a" value 3 ]
              node [ id 20 label "b" graphics [ x 1 y 2 ] ]
              node [ id 30 ]
              edge [ source 10 target 20 ]
              edge [ source 20 target 30 value 2.5 ]
              edge [ source 30 target 30 value 1 ]
            ]
        "#;
        let g = parse_gml(text).unwrap().graph;
        assert_eq!(g.n(), 3);
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(1, 2), 2.5);
        assert_eq!(g.loop_weight(2), 1.0);
    }

    #[test]
    fn gml_errors() {
        assert!(parse_gml("graph [ node [ id 0 ] edge [ source 0 target 1 ] ]").is_err());
        assert!(parse_gml("graph [ node [ id 0 ]").is_err());
        assert!(parse_gml("graph [ node [ label \"x\" ] ]").is_err());
        assert!(parse_gml("graph [ node [ id 0 ] node [ id 0 ] ]").is_err());
        assert!(parse_gml("nothing here").is_err());
        assert!(parse_gml("graph [ node [ id \"0 ] ]").is_err());
    }

    #[test]
    fn partition_files() {
        let c = parse_partition("0 5\n1 5\n2 1\n", 3).unwrap();
        assert_eq!(c.labels(), &[0, 0, 1]);
        assert_eq!(parse_partition(&write_partition(&c), 3).unwrap(), c);
        assert!(parse_partition("0 1\n", 2).is_err());
        assert!(parse_partition("0 1\n0 2\n1 1\n", 2).is_err());
        assert!(parse_partition("0 1\n5 1\n", 2).is_err());
    }
}
