use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::Label;

use super::smith::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: Label,
    pub s: Label,
    pub r: Label,
}

#[derive(Deserialize)]
struct GraphDescriptor {
    vertices: Vec<Label>,
    edges: Vec<Edge>,
}

/// Finite directed graph `s, r: E¹ → E⁰`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphDescriptor")]
pub struct Graph {
    vertices: Vec<Label>,
    edges: Vec<Edge>,
}

impl TryFrom<GraphDescriptor> for Graph {
    type Error = Error;

    fn try_from(d: GraphDescriptor) -> Result<Self> {
        Graph::new(d.vertices, d.edges)
    }
}

impl Graph {
    pub fn new(vertices: Vec<Label>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidInput(format!("duplicate vertex {}", v)));
            }
        }
        let mut ids = HashSet::new();
        for e in &edges {
            if !ids.insert(&e.id) {
                return Err(Error::InvalidInput(format!("duplicate edge {}", e.id)));
            }
            for end in [&e.s, &e.r] {
                if !seen.contains(end) {
                    return Err(Error::InvalidInput(format!("edge {} ends at unknown vertex {}", e.id, end)));
                }
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// `E_n`: one vertex `v` with loops `e1, ..., en`.
    pub fn rose(n: usize) -> Self {
        let v = Label::from("v");
        let edges = (1..=n)
            .map(|i| Edge { id: Label::Str(format!("e{}", i)), s: v.clone(), r: v.clone() })
            .collect();
        Graph { vertices: vec![v], edges }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Vertices emitting at least one edge, in vertex order.
    pub fn regular_vertices(&self) -> Vec<usize> {
        let emitters: HashSet<&Label> = self.edges.iter().map(|e| &e.s).collect();
        (0..self.vertices.len()).filter(|&i| emitters.contains(&self.vertices[i])).collect()
    }
}

/// `N_E` on `E⁰ × reg(E)`: entry `(v, w) = δ_{v,w} − #{e : s(e) = w, r(e) = v}`.
pub fn graph_incidence(graph: &Graph) -> IntMatrix {
    let pos: HashMap<&Label, usize> = graph.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let reg = graph.regular_vertices();
    let col_of: HashMap<usize, usize> = reg.iter().enumerate().map(|(j, &w)| (w, j)).collect();
    let mut n = IntMatrix::zeros(graph.vertices.len(), reg.len());
    for (j, &w) in reg.iter().enumerate() {
        n.set(w, j, 1);
    }
    for e in &graph.edges {
        if let Some(&j) = col_of.get(&pos[&e.s]) {
            let v = pos[&e.r];
            n.set(v, j, n.get(v, j) - 1);
        }
    }
    n
}
