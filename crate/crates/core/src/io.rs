//! Text and JSON formats.
//!
//! Edge lists: a header line `n m`, then `m` lines `u v` (0-indexed). Blank
//! lines and lines starting with `#` are skipped. Graph JSON is
//! `{"n": 4, "edges": [[0, 1], ...]}`; cover JSON is
//! `{"base": <graph JSON>, "lists": [[...], ...], "h_edges": [[x, y], ...]}`
//! with intra-list edges left out.

use serde::{Deserialize, Serialize};

use crate::cover::Cover;
use crate::error::{DpError, Result};
use crate::graph::{make_graph, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphData {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphData {
    pub fn from_graph(g: &Graph) -> Self {
        GraphData { n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        make_graph(self.n, &edges)
    }
}

/// A cover as it appears on disk, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverData {
    pub base: GraphData,
    pub lists: Vec<Vec<usize>>,
    pub h_edges: Vec<[usize; 2]>,
}

impl CoverData {
    pub fn from_cover(c: &Cover) -> Self {
        CoverData {
            base: GraphData::from_graph(c.base()),
            lists: c.lists().to_vec(),
            h_edges: c.h_edges().iter().map(|&(x, y)| [x, y]).collect(),
        }
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.h_edges.iter().map(|e| (e[0], e[1])).collect()
    }

    pub fn to_cover(&self) -> Result<Cover> {
        Cover::new(self.base.to_graph()?, self.lists.clone(), &self.edge_pairs())
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| DpError::Parse("empty edge list".into()))?;
    let [n, m] = two_numbers(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        if edges.len() == m {
            return Err(DpError::Parse(format!("line {line}: more than the {m} declared edges")));
        }
        let [u, v] = two_numbers(line, text)?;
        if u >= n || v >= n {
            return Err(DpError::Parse(format!(
                "line {line}: vertex {} out of range for n = {n}",
                u.max(v)
            )));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(DpError::Parse(format!("header declares {m} edges, found {}", edges.len())));
    }
    make_graph(n, &edges).map_err(|e| DpError::Parse(e.to_string()))
}

fn two_numbers(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let [a, b] = fields[..] else {
        return Err(DpError::Parse(format!(
            "line {line}: expected two integers, found {} fields",
            fields.len()
        )));
    };
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| DpError::Parse(format!("line {line}: '{s}' is not a non-negative integer")))
    };
    Ok([num(a)?, num(b)?])
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let data: GraphData = serde_json::from_str(text)?;
    data.to_graph()
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphData::from_graph(g)).expect("graph serializes")
}

pub fn parse_cover_data(text: &str) -> Result<CoverData> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_cover_json(text: &str) -> Result<Cover> {
    parse_cover_data(text)?.to_cover()
}

pub fn cover_to_json(c: &Cover) -> String {
    serde_json::to_string(&CoverData::from_cover(c)).expect("cover serializes")
}
