//! Line-oriented text format for instances and reduction sidecars.
//!
//! ```text
//! # comment
//! v 4                 optional vertex count
//! e 0 1               undirected edge
//! a 1 2               arc from 1 to 2
//! label v 0 x_P3      vertex, edge or arc label (rest of line)
//! t 0 3               terminal vertices
//! r 0 1 2             requirement r(0, 1) = 2
//! w e 0 3/2           weight of edge 0 (also `w a <i> <q>`)
//! budget 5
//! x 2                 SAT variable count
//! c 1 -2              clause over signed 1-based literals
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::connectivity::Requirement;
use crate::error::{Error, Result};
use crate::graph::{ElementRef, MixedGraph, VertexId};
use crate::reductions::sat::{Literal, SatInstance};
use crate::Weight;

/// Everything a text file may carry besides the graph itself.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub graph: MixedGraph,
    pub vertex_labels: BTreeMap<VertexId, String>,
    pub terminals: Vec<VertexId>,
    pub requirement: Option<Requirement>,
    pub weights: BTreeMap<ElementRef, Weight>,
    pub budget: Option<usize>,
    pub sat: Option<SatInstance>,
}

impl Document {
    pub fn from_graph(graph: MixedGraph) -> Self {
        Document { graph, ..Default::default() }
    }

    /// Edge weights, 1 where unspecified.
    pub fn edge_weights(&self) -> Vec<Weight> {
        (0..self.graph.num_edges())
            .map(|i| self.weights.get(&ElementRef::Edge(i)).copied().unwrap_or(Weight::from(1)))
            .collect()
    }

    /// Arc weights, 1 where unspecified.
    pub fn arc_weights(&self) -> Vec<Weight> {
        (0..self.graph.num_arcs())
            .map(|i| self.weights.get(&ElementRef::Arc(i)).copied().unwrap_or(Weight::from(1)))
            .collect()
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn no_more<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(err(line, format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

enum Record {
    Edge(VertexId, VertexId),
    Arc(VertexId, VertexId),
}

pub fn parse(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut header: Option<(usize, usize)> = None;
    let mut elements: Vec<(usize, Record)> = Vec::new();
    let mut labels: Vec<(usize, char, usize, String)> = Vec::new();
    let mut weights: Vec<(usize, ElementRef, Weight)> = Vec::new();
    let mut requirements: Vec<(usize, VertexId, VertexId, usize)> = Vec::new();
    let mut terminals: Vec<(usize, VertexId)> = Vec::new();
    let mut vars: Option<usize> = None;
    let mut clauses: Vec<(usize, Vec<Literal>)> = Vec::new();
    let mut max_vertex: Option<(usize, VertexId)> = None;
    let note = |line: usize, v: VertexId, max_vertex: &mut Option<(usize, VertexId)>| {
        if max_vertex.is_none_or(|(_, m)| v > m) {
            *max_vertex = Some((line, v));
        }
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let kind = toks.next().expect("non-empty line");
        match kind {
            "v" => {
                if header.is_some() {
                    return Err(err(line, "duplicate `v` header"));
                }
                header = Some((line, num(line, toks.next(), "vertex count")?));
                no_more(line, toks)?;
            }
            "e" | "a" => {
                let a: VertexId = num(line, toks.next(), "vertex")?;
                let b: VertexId = num(line, toks.next(), "vertex")?;
                no_more(line, toks)?;
                if a == b {
                    return Err(err(line, format!("loop at vertex {a}")));
                }
                note(line, a, &mut max_vertex);
                note(line, b, &mut max_vertex);
                elements.push((line, if kind == "e" { Record::Edge(a, b) } else { Record::Arc(a, b) }));
            }
            "label" => {
                let which = toks.next().ok_or_else(|| err(line, "missing label target"))?;
                let c = match which {
                    "v" | "e" | "a" => which.chars().next().expect("one char"),
                    other => return Err(err(line, format!("unknown label target `{other}`"))),
                };
                let i: usize = num(line, toks.next(), "index")?;
                let text: Vec<&str> = toks.collect();
                if text.is_empty() {
                    return Err(err(line, "empty label"));
                }
                if c == 'v' {
                    note(line, i, &mut max_vertex);
                }
                labels.push((line, c, i, text.join(" ")));
            }
            "t" => {
                for tok in toks {
                    let v: VertexId = num(line, Some(tok), "vertex")?;
                    note(line, v, &mut max_vertex);
                    terminals.push((line, v));
                }
            }
            "r" => {
                let x: VertexId = num(line, toks.next(), "vertex")?;
                let y: VertexId = num(line, toks.next(), "vertex")?;
                let val: usize = num(line, toks.next(), "requirement")?;
                no_more(line, toks)?;
                if x == y {
                    return Err(err(line, "requirement on a pair with equal ends"));
                }
                note(line, x, &mut max_vertex);
                note(line, y, &mut max_vertex);
                requirements.push((line, x, y, val));
            }
            "w" => {
                let which = toks.next().ok_or_else(|| err(line, "missing weight target"))?;
                let i: usize = num(line, toks.next(), "index")?;
                let target = match which {
                    "e" => ElementRef::Edge(i),
                    "a" => ElementRef::Arc(i),
                    other => return Err(err(line, format!("unknown weight target `{other}`"))),
                };
                let w: Weight = num(line, toks.next(), "weight")?;
                no_more(line, toks)?;
                if w < Weight::from(0) {
                    return Err(err(line, "negative weight"));
                }
                weights.push((line, target, w));
            }
            "budget" => {
                if doc.budget.is_some() {
                    return Err(err(line, "duplicate budget"));
                }
                doc.budget = Some(num(line, toks.next(), "budget")?);
                no_more(line, toks)?;
            }
            "x" => {
                if vars.is_some() {
                    return Err(err(line, "duplicate `x` header"));
                }
                vars = Some(num(line, toks.next(), "variable count")?);
                no_more(line, toks)?;
            }
            "c" => {
                let lits = toks
                    .map(|t| {
                        let s: i64 = num(line, Some(t), "literal")?;
                        Literal::from_signed(s).map_err(|e| err(line, e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if lits.is_empty() {
                    return Err(err(line, "empty clause"));
                }
                clauses.push((line, lits));
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }

    let n = match (header, max_vertex) {
        (Some((_, n)), Some((line, m))) if m >= n => {
            return Err(err(line, format!("vertex {m} out of range for {n} vertices")))
        }
        (Some((_, n)), _) => n,
        (None, Some((_, m))) => m + 1,
        (None, None) => 0,
    };
    let mut g = MixedGraph::new(n);
    for (line, rec) in elements {
        match rec {
            Record::Edge(a, b) => g.add_edge(a, b),
            Record::Arc(a, b) => g.add_arc(a, b),
        }
        .map_err(|e| err(line, e.to_string()))?;
    }
    for (line, c, i, text) in labels {
        match c {
            'v' => {
                doc.vertex_labels.insert(i, text);
            }
            'e' => g.set_edge_label(i, text).map_err(|e| err(line, e.to_string()))?,
            _ => g.set_arc_label(i, text).map_err(|e| err(line, e.to_string()))?,
        }
    }
    for (line, target, w) in weights {
        let ok = match target {
            ElementRef::Edge(i) => i < g.num_edges(),
            ElementRef::Arc(i) => i < g.num_arcs(),
        };
        if !ok {
            return Err(err(line, format!("weight for missing element {target:?}")));
        }
        if doc.weights.insert(target, w).is_some() {
            return Err(err(line, format!("duplicate weight for {target:?}")));
        }
    }
    if !requirements.is_empty() {
        let mut r = Requirement::new();
        for (_, x, y, val) in requirements {
            r.set(x, y, val);
        }
        doc.requirement = Some(r);
    }
    let mut t: Vec<VertexId> = terminals.into_iter().map(|(_, v)| v).collect();
    t.sort_unstable();
    t.dedup();
    doc.terminals = t;
    if vars.is_some() || !clauses.is_empty() {
        let nv = match vars {
            Some(nv) => nv,
            None => clauses.iter().flat_map(|(_, c)| c.iter().map(|l| l.var + 1)).max().unwrap_or(0),
        };
        if let Some((line, _)) = clauses.iter().find(|(_, c)| c.iter().any(|l| l.var >= nv)) {
            return Err(err(*line, format!("literal outside {nv} variables")));
        }
        doc.sat = Some(SatInstance::new(nv, clauses.into_iter().map(|(_, c)| c).collect())?);
    }
    doc.graph = g;
    Ok(doc)
}

/// Canonical text form; `parse(emit(d)) == d` for every parsed document.
pub fn emit(doc: &Document) -> String {
    let g = &doc.graph;
    let mut s = String::new();
    let _ = writeln!(s, "v {}", g.n());
    for e in g.edges() {
        let _ = writeln!(s, "e {} {}", e.u, e.v);
    }
    for a in g.arcs() {
        let _ = writeln!(s, "a {} {}", a.tail, a.head);
    }
    for (v, l) in &doc.vertex_labels {
        let _ = writeln!(s, "label v {v} {l}");
    }
    for (i, e) in g.edges().iter().enumerate() {
        if let Some(l) = &e.label {
            let _ = writeln!(s, "label e {i} {l}");
        }
    }
    for (i, a) in g.arcs().iter().enumerate() {
        if let Some(l) = &a.label {
            let _ = writeln!(s, "label a {i} {l}");
        }
    }
    if !doc.terminals.is_empty() {
        let list: Vec<String> = doc.terminals.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(s, "t {}", list.join(" "));
    }
    if let Some(r) = &doc.requirement {
        for (&(x, y), &val) in &r.r {
            let _ = writeln!(s, "r {x} {y} {val}");
        }
    }
    for (target, w) in &doc.weights {
        let (c, i) = match *target {
            ElementRef::Edge(i) => ('e', i),
            ElementRef::Arc(i) => ('a', i),
        };
        let _ = writeln!(s, "w {c} {i} {w}");
    }
    if let Some(b) = doc.budget {
        let _ = writeln!(s, "budget {b}");
    }
    if let Some(sat) = &doc.sat {
        let _ = writeln!(s, "x {}", sat.num_vars());
        for c in sat.clauses() {
            let lits: Vec<String> = c.iter().map(|l| l.to_signed().to_string()).collect();
            let _ = writeln!(s, "c {}", lits.join(" "));
        }
    }
    s
}

/// Text form of a bare graph with labels.
pub fn emit_graph(g: &MixedGraph) -> String {
    emit(&Document::from_graph(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_opposite_arcs_form_a_digon() {
        let d = parse("a 0 1\na 1 0\n").unwrap();
        assert_eq!(d.graph.n(), 2);
        assert_eq!(d.graph.arcs_in_digons(), vec![true, true]);
    }

    #[test]
    fn loop_is_a_parse_error_with_line() {
        assert_eq!(
            parse("# header\ne 0 0\n").unwrap_err(),
            Error::Parse { line: 2, msg: "loop at vertex 0".into() }
        );
    }

    #[test]
    fn dangling_vertex_against_header() {
        let e = parse("v 2\ne 0 1\na 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn malformed_weights() {
        assert!(parse("e 0 1\nw e 0 1/0\n").is_err());
        assert!(parse("e 0 1\nw e 0 -1\n").is_err());
        assert!(parse("e 0 1\nw e 1 1\n").is_err());
        assert!(parse("e 0 1\nw e 0 abc\n").is_err());
    }

    #[test]
    fn emit_is_canonical() {
        let text = "# k4 part\ne 0 1\na 2 1 # arc\nlabel v 0 hub\nlabel a 0 tip\nw e 0 3/6\nr 0 1 2\nt 3\nbudget 4\nx 2\nc 1 -2\n";
        let d = parse(text).unwrap();
        assert_eq!(d.weights[&ElementRef::Edge(0)], Weight::new(1, 2));
        assert_eq!(d.sat.as_ref().unwrap().clauses().len(), 1);
        let once = emit(&d);
        let again = parse(&once).unwrap();
        assert_eq!(again, d);
        assert_eq!(emit(&again), once);
    }
}
