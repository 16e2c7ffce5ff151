//! Graph text format: `vertex u` and `edge a u v` lines, `#` comments.

use super::Multigraph;
use crate::error::{Error, Result};
use crate::matroid::io::lines;
use std::collections::HashMap;

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    let mut edge_lines: HashMap<String, usize> = HashMap::new();
    for (line, col, tokens) in lines(text) {
        match (tokens[0], tokens.len()) {
            ("vertex", 2) => {
                let v = tokens[1].to_string();
                if index.insert(v.clone(), vertices.len()).is_some() {
                    return Err(Error::syntax(line, col, format!("duplicate vertex `{v}`")));
                }
                vertices.push(v);
            }
            ("edge", 4) => {
                let end = |name: &str| {
                    index
                        .get(name)
                        .copied()
                        .ok_or_else(|| Error::syntax(line, col, format!("unknown vertex `{name}`")))
                };
                let (u, v) = (end(tokens[2])?, end(tokens[3])?);
                if edge_lines.insert(tokens[1].to_string(), line).is_some() {
                    return Err(Error::syntax(line, col, format!("duplicate edge `{}`", tokens[1])));
                }
                edges.push((tokens[1].to_string(), u, v));
            }
            ("vertex", _) => return Err(Error::syntax(line, col, "expected `vertex NAME`")),
            ("edge", _) => return Err(Error::syntax(line, col, "expected `edge NAME U V`")),
            (other, _) => return Err(Error::syntax(line, col, format!("unknown statement `{other}`"))),
        }
    }
    Multigraph::from_indexed(vertices, edges)
}

pub fn write_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for e in g.edges() {
        out.push_str(&format!("edge {} {} {}\n", e.name, g.vertices()[e.u], g.vertices()[e.v]));
    }
    out
}
