//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! graph 3
//! e 0 1 R
//! e 1 2 Y
//! require 1 0
//! ```
//!
//! `cycle RBYB` may replace the `graph` header and edge lines.

use crate::error::{Error, Result};
use crate::graph::{parse_colors, Color, ColoredGraph};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: ColoredGraph,
    pub k_red: i64,
    pub k_blue: i64,
    /// Set when the instance was given in cycle shorthand.
    pub cycle: Option<String>,
}

impl InstanceFile {
    pub fn new(graph: ColoredGraph, k_red: i64, k_blue: i64) -> Self {
        InstanceFile { graph, k_red, k_blue, cycle: None }
    }

    pub fn from_cycle(colors: &str, k_red: i64, k_blue: i64) -> Result<Self> {
        let graph = ColoredGraph::cycle(&parse_colors(colors)?)?;
        Ok(InstanceFile { graph, k_red, k_blue, cycle: Some(colors.to_string()) })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match &self.cycle {
            Some(s) => writeln!(out, "cycle {s}").unwrap(),
            None => {
                writeln!(out, "graph {}", self.graph.vertex_count()).unwrap();
                for e in self.graph.edges() {
                    writeln!(out, "e {} {} {}", e.u, e.v, e.color.letter()).unwrap();
                }
            }
        }
        writeln!(out, "require {} {}", self.k_red, self.k_blue).unwrap();
        out
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn int<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, format!("bad {what} '{tok}'")))
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut graph: Option<ColoredGraph> = None;
    let mut cycle: Option<String> = None;
    let mut require: Option<(i64, i64)> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "graph" => {
                if graph.is_some() {
                    return Err(perr(ln, "duplicate graph header"));
                }
                if toks.len() != 2 {
                    return Err(perr(ln, "expected 'graph N'"));
                }
                graph = Some(ColoredGraph::new(int(toks[1], ln, "vertex count")?));
            }
            "cycle" => {
                if graph.is_some() {
                    return Err(perr(ln, "duplicate graph header"));
                }
                if toks.len() != 2 {
                    return Err(perr(ln, "expected 'cycle COLORS'"));
                }
                let colors = parse_colors(toks[1]).map_err(|e| perr(ln, e.to_string()))?;
                graph = Some(ColoredGraph::cycle(&colors).map_err(|e| perr(ln, e.to_string()))?);
                cycle = Some(toks[1].to_string());
            }
            "e" => {
                let Some(g) = graph.as_mut() else { return Err(perr(ln, "edge before graph header")) };
                if cycle.is_some() {
                    return Err(perr(ln, "edge lines are not allowed with cycle shorthand"));
                }
                if toks.len() != 4 {
                    return Err(perr(ln, "expected 'e U V C'"));
                }
                let u: usize = int(toks[1], ln, "vertex")?;
                let v: usize = int(toks[2], ln, "vertex")?;
                let mut chars = toks[3].chars();
                let color = match (chars.next().and_then(Color::from_letter), chars.next()) {
                    (Some(c), None) => c,
                    _ => return Err(perr(ln, format!("unknown color '{}'", toks[3]))),
                };
                g.add_edge(u, v, color).map_err(|e| perr(ln, e.to_string()))?;
            }
            "require" => {
                if require.is_some() {
                    return Err(perr(ln, "duplicate require line"));
                }
                if toks.len() != 3 {
                    return Err(perr(ln, "expected 'require KR KB'"));
                }
                require = Some((int(toks[1], ln, "requirement")?, int(toks[2], ln, "requirement")?));
            }
            other => return Err(perr(ln, format!("unknown directive '{other}'"))),
        }
    }
    let last = text.lines().count().max(1);
    let graph = graph.ok_or_else(|| perr(last, "missing graph or cycle header"))?;
    let (k_red, k_blue) = require.ok_or_else(|| perr(last, "missing require line"))?;
    Ok(InstanceFile { graph, k_red, k_blue, cycle })
}
