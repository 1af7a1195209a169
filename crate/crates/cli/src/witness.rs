//! Text tokens for witness elements: `a3` (arc), `e2` (edge), `v5` (vertex),
//! `e0:1>2` (edge 0 oriented from 1 to 2), `x1=1` (1-based variable value).

use std::str::FromStr;

use reorient_core::{EdgeDecision, MixedGraph, VertexId, Weight};

pub fn arcs(ids: &[usize]) -> Vec<String> {
    ids.iter().map(|i| format!("a{i}")).collect()
}

pub fn edges(ids: &[usize]) -> Vec<String> {
    ids.iter().map(|i| format!("e{i}")).collect()
}

pub fn vertices(ids: &[VertexId]) -> Vec<String> {
    ids.iter().map(|i| format!("v{i}")).collect()
}

/// Only the oriented edges are listed.
pub fn orientation(decisions: &[EdgeDecision]) -> Vec<String> {
    decisions
        .iter()
        .enumerate()
        .filter_map(|(i, d)| match *d {
            EdgeDecision::Keep => None,
            EdgeDecision::Orient { tail, head } => Some(format!("e{i}:{tail}>{head}")),
        })
        .collect()
}

pub fn assignment(values: &[bool]) -> Vec<String> {
    values.iter().enumerate().map(|(i, &b)| format!("x{}={}", i + 1, u8::from(b))).collect()
}

pub fn tokens(list: &str) -> Vec<&str> {
    list.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect()
}

fn indexed(tok: &str, prefix: char) -> Result<usize, String> {
    tok.strip_prefix(prefix)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("expected `{prefix}<index>`, got `{tok}`"))
}

pub fn parse_indexed(list: &str, prefix: char) -> Result<Vec<usize>, String> {
    let mut out = tokens(list).into_iter().map(|t| indexed(t, prefix)).collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn parse_orientation(list: &str, g: &MixedGraph) -> Result<Vec<EdgeDecision>, String> {
    let mut out = vec![EdgeDecision::Keep; g.num_edges()];
    for tok in tokens(list) {
        let bad = || format!("expected `e<index>:<tail>><head>`, got `{tok}`");
        let (e, dir) = tok.split_once(':').ok_or_else(bad)?;
        let i = indexed(e, 'e')?;
        let (t, h) = dir.split_once('>').ok_or_else(bad)?;
        let tail: VertexId = t.parse().map_err(|_| bad())?;
        let head: VertexId = h.parse().map_err(|_| bad())?;
        let edge = g.edges().get(i).ok_or_else(|| format!("edge {i} out of range"))?;
        if !edge.joins(tail, head) {
            return Err(format!("edge {i} does not join {tail} and {head}"));
        }
        out[i] = EdgeDecision::Orient { tail, head };
    }
    Ok(out)
}

pub fn parse_assignment(list: &str, vars: usize) -> Result<Vec<bool>, String> {
    let mut out = vec![false; vars];
    for tok in tokens(list) {
        let bad = || format!("expected `x<var>=0|1`, got `{tok}`");
        let (x, val) = tok.split_once('=').ok_or_else(bad)?;
        let var = indexed(x, 'x')?;
        if var == 0 || var > vars {
            return Err(format!("variable {var} out of range 1..={vars}"));
        }
        out[var - 1] = match val {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
    }
    Ok(out)
}

/// Weights file: `w e|a <index> <num>/<den>` lines, `#` comments.
pub fn parse_weights(text: &str) -> Result<Vec<(char, usize, Weight)>, String> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = |m: &str| format!("weights line {}: {m}", n + 1);
        match toks.as_slice() {
            ["w", kind @ ("e" | "a"), i, q] => {
                let i: usize = i.parse().map_err(|_| bad("bad index"))?;
                let w = Weight::from_str(q).map_err(|_| bad("bad weight"))?;
                if w < Weight::from(0) {
                    return Err(bad("negative weight"));
                }
                out.push((kind.chars().next().unwrap_or('e'), i, w));
            }
            _ => return Err(bad("expected `w e|a <index> <weight>`")),
        }
    }
    Ok(out)
}
