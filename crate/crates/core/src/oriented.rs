//! The oriented system of an arrangement: the chamber adjacency digraph with
//! the equivalence identifying equal-endpoint positive minimal paths, given
//! intensionally by its generating pairs around codimension-2 faces.

use crate::arrangement::{
    compose, opposite_chamber, separating_set, signs_geq, FacePoset, Sign,
};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PathError {
    #[error("edge {edge} does not chain at vertex {vertex}")]
    BrokenChain { edge: usize, vertex: usize },
    #[error("vertex {0} is not a chamber of the system")]
    NotAChamber(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug)]
pub struct OrientedGraph {
    pub vertex_labels: Vec<String>,
    pub edges: Vec<Edge>,
    /// Pairs each edge with its reverse when present.
    pub opposite: Vec<Option<usize>>,
}

impl OrientedGraph {
    pub fn edge_between(&self, src: usize, tgt: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.src == src && e.tgt == tgt)
    }
}

/// A path: start vertex plus steps (edge, exponent). Begin and end are
/// derived, never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub steps: Vec<(usize, i8)>,
}

impl Path {
    pub fn empty(start: usize) -> Self {
        Path { start, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self, graph: &OrientedGraph) -> usize {
        let mut at = self.start;
        for &(e, exp) in &self.steps {
            let edge = graph.edges[e];
            at = if exp > 0 { edge.tgt } else { edge.src };
        }
        at
    }

    /// The vertex sequence, including both endpoints.
    pub fn vertices(&self, graph: &OrientedGraph) -> Vec<usize> {
        let mut out = vec![self.start];
        for &(e, exp) in &self.steps {
            let edge = graph.edges[e];
            out.push(if exp > 0 { edge.tgt } else { edge.src });
        }
        out
    }

    pub fn is_positive(&self) -> bool {
        self.steps.iter().all(|&(_, exp)| exp > 0)
    }

    pub fn inverse(&self, graph: &OrientedGraph) -> Path {
        Path {
            start: self.end(graph),
            steps: self.steps.iter().rev().map(|&(e, exp)| (e, -exp)).collect(),
        }
    }

    pub fn concat(&self, other: &Path, graph: &OrientedGraph) -> Path {
        assert_eq!(self.end(graph), other.start);
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Path { start: self.start, steps }
    }

    /// Cancels adjacent inverse steps until no pair remains.
    pub fn freely_reduced(&self) -> Path {
        let mut steps: Vec<(usize, i8)> = Vec::with_capacity(self.steps.len());
        for &(e, exp) in &self.steps {
            if let Some(&(pe, pexp)) = steps.last() {
                if pe == e && pexp == -exp {
                    steps.pop();
                    continue;
                }
            }
            steps.push((e, exp));
        }
        Path { start: self.start, steps }
    }

    pub fn validate(&self, graph: &OrientedGraph) -> Result<(), PathError> {
        let mut at = self.start;
        for &(e, exp) in &self.steps {
            let edge = graph.edges[e];
            let (from, to) = if exp > 0 { (edge.src, edge.tgt) } else { (edge.tgt, edge.src) };
            if from != at {
                return Err(PathError::BrokenChain { edge: e, vertex: at });
            }
            at = to;
        }
        Ok(())
    }

    /// Serializes as whitespace-separated chamber sign strings.
    pub fn render(&self, graph: &OrientedGraph) -> String {
        self.vertices(graph)
            .iter()
            .map(|&v| graph.vertex_labels[v].clone())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The oriented system Gamma(A): vertices are chambers, edges join adjacent
/// chambers in both directions, and the relation kind is arrangement-minimal.
#[derive(Clone, Debug)]
pub struct OrientedSystem {
    pub graph: OrientedGraph,
    /// Sign vector of each chamber vertex.
    pub chamber_signs: Vec<Vec<Sign>>,
    /// The single hyperplane crossed by each edge.
    pub edge_cross: Vec<usize>,
    edge_lookup: HashMap<(usize, usize), usize>,
}

impl OrientedSystem {
    pub fn num_vertices(&self) -> usize {
        self.graph.vertex_labels.len()
    }

    pub fn separating(&self, c1: usize, c2: usize) -> Vec<usize> {
        separating_set(&self.chamber_signs[c1], &self.chamber_signs[c2])
    }

    pub fn edge_between(&self, src: usize, tgt: usize) -> Option<usize> {
        self.edge_lookup.get(&(src, tgt)).copied()
    }

    /// Path through the given chamber sequence, positive steps only.
    pub fn positive_path_through(&self, vertices: &[usize]) -> Path {
        let start = vertices[0];
        let steps = vertices
            .windows(2)
            .map(|w| (self.edge_lookup[&(w[0], w[1])], 1i8))
            .collect();
        Path { start, steps }
    }

    /// Canonical positive minimal path: BFS restricted to chambers between
    /// the endpoints, neighbors explored in increasing chamber index.
    pub fn minimal_positive_path(&self, c1: usize, c2: usize) -> Path {
        let sep = self.separating(c1, c2);
        let allowed: Vec<bool> = (0..self.num_vertices())
            .map(|d| self.separating(c1, d).iter().all(|h| sep.contains(h)))
            .collect();
        let mut parent: Vec<Option<usize>> = vec![None; self.num_vertices()];
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = std::collections::VecDeque::new();
        seen[c1] = true;
        queue.push_back(c1);
        while let Some(u) = queue.pop_front() {
            if u == c2 {
                break;
            }
            let mut next: Vec<usize> = self
                .graph
                .edges
                .iter()
                .filter(|e| e.src == u)
                .map(|e| e.tgt)
                .filter(|&v| allowed[v] && !seen[v])
                .collect();
            next.sort_unstable();
            for v in next {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
        let mut chain = vec![c2];
        while let Some(p) = parent[*chain.last().unwrap()] {
            chain.push(p);
        }
        chain.reverse();
        debug_assert_eq!(chain[0], c1);
        let path = self.positive_path_through(&chain);
        debug_assert_eq!(path.len(), sep.len());
        path
    }

    /// True iff the path is positive and crosses each separating hyperplane
    /// of its endpoints exactly once.
    pub fn is_positive_minimal(&self, path: &Path) -> bool {
        path.is_positive() && path.len() == self.separating(path.start, path.end(&self.graph)).len()
    }

    /// Splits a positive minimal path C1 -> C2 through the chamber F o C1.
    /// Requires C2 adjacent to F.
    pub fn factor_via_chamber(
        &self,
        c1: usize,
        c2: usize,
        f_signs: &[Sign],
    ) -> Result<(Path, Path), PathError> {
        if !signs_geq(f_signs, &self.chamber_signs[c2]) {
            return Err(PathError::NotAChamber(c2));
        }
        let mid_signs = compose(f_signs, &self.chamber_signs[c1]);
        let mid = self
            .chamber_signs
            .iter()
            .position(|s| *s == mid_signs)
            .ok_or(PathError::NotAChamber(c1))?;
        let alpha = self.minimal_positive_path(c1, mid);
        let beta = self.minimal_positive_path(mid, c2);
        Ok((alpha, beta))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gamma {\n");
        for (i, l) in self.graph.vertex_labels.iter().enumerate() {
            let _ = writeln!(out, "  v{} [label=\"{}\"];", i, l);
        }
        for e in &self.graph.edges {
            let _ = writeln!(out, "  v{} -> v{};", e.src, e.tgt);
        }
        out.push_str("}\n");
        out
    }
}

/// Builds Gamma(A) from an enumerated face poset.
pub fn gamma_of(poset: &FacePoset) -> OrientedSystem {
    let chamber_signs: Vec<Vec<Sign>> = poset
        .chambers
        .iter()
        .map(|&c| poset.faces[c].signs.clone())
        .collect();
    let vertex_labels: Vec<String> = poset
        .chambers
        .iter()
        .map(|&c| poset.faces[c].label())
        .collect();
    let n = chamber_signs.len();
    let mut edges = Vec::new();
    let mut edge_cross = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let sep = separating_set(&chamber_signs[u], &chamber_signs[v]);
            if sep.len() == 1 {
                edges.push(Edge { src: u, tgt: v });
                edge_cross.push(sep[0]);
            }
        }
    }
    let edge_lookup: HashMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.src, e.tgt), i))
        .collect();
    let opposite = edges
        .iter()
        .map(|e| edge_lookup.get(&(e.tgt, e.src)).copied())
        .collect();
    OrientedSystem {
        graph: OrientedGraph {
            vertex_labels,
            edges,
            opposite,
        },
        chamber_signs,
        edge_cross,
        edge_lookup,
    }
}

/// The generating pairs of the relation: for every codimension-2 face F and
/// chamber C adjacent to it, the two positive minimal boundary arcs of the
/// cell [F,C], from C to the opposite chamber.
pub fn relation_generators(poset: &FacePoset, system: &OrientedSystem) -> Vec<(Path, Path)> {
    let mut pairs = Vec::new();
    for face in 0..poset.faces.len() {
        if poset.faces[face].codim != 2 {
            continue;
        }
        let f_signs = &poset.faces[face].signs;
        for c in 0..system.num_vertices() {
            if signs_geq(f_signs, &system.chamber_signs[c]) {
                pairs.push(cell_boundary_arcs(system, f_signs, c));
            }
        }
    }
    pairs
}

/// The two positive minimal boundary arcs of the cell [F, C]: walks around
/// the rank-2 cycle of chambers adjacent to F, from C to its opposite.
pub fn cell_boundary_arcs(system: &OrientedSystem, f_signs: &[Sign], c: usize) -> (Path, Path) {
    let local: Vec<usize> = (0..system.num_vertices())
        .filter(|&v| signs_geq(f_signs, &system.chamber_signs[v]))
        .collect();
    let opp_signs = opposite_chamber(f_signs, &system.chamber_signs[c]);
    let opp = system
        .chamber_signs
        .iter()
        .position(|s| *s == opp_signs)
        .expect("opposite chamber is realizable");
    let mut neighbors: Vec<usize> = local
        .iter()
        .copied()
        .filter(|&v| v != c && system.separating(c, v).len() == 1)
        .collect();
    neighbors.sort_unstable();
    assert_eq!(neighbors.len(), 2, "rank-2 localization is a cycle");
    let arc = |first: usize| -> Path {
        let mut chain = vec![c, first];
        while *chain.last().unwrap() != opp {
            let prev = chain[chain.len() - 2];
            let cur = *chain.last().unwrap();
            let next = local
                .iter()
                .copied()
                .find(|&v| v != cur && v != prev && system.separating(cur, v).len() == 1)
                .expect("cycle step");
            chain.push(next);
        }
        system.positive_path_through(&chain)
    };
    (arc(neighbors[0]), arc(neighbors[1]))
}
