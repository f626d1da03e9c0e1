//! Line-oriented text format for weighted graphs.
//!
//! ```text
//! # comment
//! vertex 0
//! vertex 1 m=2.5        # measure, custom mode only
//! edge 0 1 mu=0.5       # weight defaults to 1
//! ```
//!
//! Vertex lines are optional outside custom mode; edges declare their
//! endpoints. Weights and measures are decimals or exact fractions `p/q`.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed};

use crate::error::{Error, Result};
use crate::graph::{LaplacianMode, Vertex, WeightedGraph};
use crate::scalar::{decimal_string, exact_string, parse_number, Rational};

fn parse_id(tok: &str, line: usize) -> Result<Vertex> {
    tok.parse::<Vertex>()
        .map_err(|_| Error::parse(line, format!("invalid vertex id `{tok}`")))
}

fn parse_value(tok: &str, key: &str, line: usize) -> Result<Rational> {
    let Some(raw) = tok.strip_prefix(key).and_then(|t| t.strip_prefix('=')) else {
        return Err(Error::parse(
            line,
            format!("expected `{key}=<value>`, got `{tok}`"),
        ));
    };
    let value =
        parse_number(raw).ok_or_else(|| Error::parse(line, format!("invalid number `{raw}`")))?;
    if !value.is_positive() {
        return Err(Error::parse(line, format!("{key} must be positive")));
    }
    Ok(value)
}

/// Parses the text format into a graph with the given Laplacian mode.
pub fn parse_graph(text: &str, mode: LaplacianMode) -> Result<WeightedGraph> {
    let mut declared: BTreeSet<Vertex> = BTreeSet::new();
    let mut measures: BTreeMap<Vertex, Rational> = BTreeMap::new();
    let mut edges: Vec<(Vertex, Vertex, Rational)> = Vec::new();
    let mut seen_edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() < 2 || tokens.len() > 3 {
                    return Err(Error::parse(line, "expected `vertex <id> [m=<value>]`"));
                }
                let id = parse_id(tokens[1], line)?;
                if !declared.insert(id) {
                    return Err(Error::parse(line, format!("vertex {id} declared twice")));
                }
                match (tokens.get(2), mode) {
                    (Some(tok), LaplacianMode::Custom) => {
                        measures.insert(id, parse_value(tok, "m", line)?);
                    }
                    (Some(_), _) => {
                        return Err(Error::parse(
                            line,
                            "vertex measures are only allowed in custom mode",
                        ));
                    }
                    (None, LaplacianMode::Custom) => {
                        return Err(Error::parse(
                            line,
                            format!("vertex {id} needs `m=<value>` in custom mode"),
                        ));
                    }
                    (None, _) => {}
                }
            }
            "edge" => {
                if tokens.len() < 3 || tokens.len() > 4 {
                    return Err(Error::parse(line, "expected `edge <u> <v> [mu=<value>]`"));
                }
                let u = parse_id(tokens[1], line)?;
                let v = parse_id(tokens[2], line)?;
                if u == v {
                    return Err(Error::parse(line, format!("self loop at vertex {u}")));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(line, format!("edge {u} {v} declared twice")));
                }
                let weight = match tokens.get(3) {
                    Some(tok) => parse_value(tok, "mu", line)?,
                    None => Rational::one(),
                };
                edges.push((u, v, weight));
            }
            other => {
                return Err(Error::parse(line, format!("unknown directive `{other}`")));
            }
        }
    }

    if mode != LaplacianMode::Custom {
        let endpoints: BTreeSet<Vertex> = edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        let isolated: Vec<Vertex> = declared.difference(&endpoints).copied().collect();
        if !isolated.is_empty() {
            if declared.len() == 1 && endpoints.is_empty() {
                return Err(Error::SingleVertex);
            }
            return Err(Error::Disconnected);
        }
    }

    let measure_arg = (mode == LaplacianMode::Custom).then_some(&measures);
    WeightedGraph::build(&edges, measure_arg, mode)
}

fn value_string(r: &Rational) -> String {
    decimal_string(r).unwrap_or_else(|| exact_string(r))
}

/// Serializes a graph to the text format: one line per vertex, then one line
/// per edge, ascending. Weights that equal 1 are left implicit, values are
/// written as the shortest exact decimal (or `p/q` when no finite decimal
/// exists), so serializing a parsed graph reproduces the same text.
pub fn serialize_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let custom = g.mode() == LaplacianMode::Custom;
    for x in g.vertices() {
        if custom {
            let m: Rational = g.measure(x).expect("vertex exists");
            out.push_str(&format!("vertex {x} m={}\n", value_string(&m)));
        } else {
            out.push_str(&format!("vertex {x}\n"));
        }
    }
    for (u, v) in g.edges() {
        let w: Rational = g.edge_weight(u, v).expect("edge exists");
        if w.is_one() {
            out.push_str(&format!("edge {u} {v}\n"));
        } else {
            out.push_str(&format!("edge {u} {v} mu={}\n", value_string(&w)));
        }
    }
    out
}
