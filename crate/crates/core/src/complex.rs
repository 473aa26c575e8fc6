//! Abstract simplicial complexes on labeled vertex sets, with simplicial
//! maps. Everything is stored sorted so outputs are deterministic.

use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("map image {{{0}}} is not a simplex of the target")]
    NotSimplicial(String),
    #[error("map is not defined on vertex {0}")]
    Undefined(usize),
}

/// Simplices are sorted vertex-index sets; the complex is generated by its
/// maximal simplices.
#[derive(Clone, Debug, Serialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds from a generating family: simplices are sorted and deduplicated,
    /// non-maximal generators dropped.
    pub fn from_generators(
        vertices: Vec<String>,
        generators: Vec<Vec<usize>>,
    ) -> Result<SimplicialComplex, ComplexError> {
        let mut gens: Vec<Vec<usize>> = Vec::new();
        for mut g in generators {
            if let Some(&v) = g.iter().find(|&&v| v >= vertices.len()) {
                return Err(ComplexError::VertexOutOfRange(v));
            }
            g.sort_unstable();
            g.dedup();
            gens.push(g);
        }
        gens.sort();
        gens.dedup();
        let maximal_simplices: Vec<Vec<usize>> = gens
            .iter()
            .filter(|g| {
                !gens
                    .iter()
                    .any(|h| h.len() > g.len() && g.iter().all(|v| h.contains(v)))
            })
            .cloned()
            .collect();
        Ok(SimplicialComplex {
            vertices,
            maximal_simplices,
        })
    }

    /// Every simplex, by closing the maximal ones under subsets. The empty
    /// simplex is excluded.
    pub fn all_simplices(&self) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for m in &self.maximal_simplices {
            for mask in 1u64..(1 << m.len()) {
                let s: Vec<usize> = m
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                out.insert(s);
            }
        }
        out.into_iter().collect()
    }

    /// Simplices of the given dimension (cardinality dim+1).
    pub fn simplices_of_dim(&self, dim: usize) -> Vec<Vec<usize>> {
        self.all_simplices()
            .into_iter()
            .filter(|s| s.len() == dim + 1)
            .collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.maximal_simplices
            .iter()
            .map(|s| s.len() - 1)
            .max()
    }

    pub fn contains_simplex(&self, simplex: &[usize]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        s.dedup();
        self.maximal_simplices
            .iter()
            .any(|m| s.iter().all(|v| m.contains(v)))
    }

    /// The closed star of a vertex: all simplices containing it, closed
    /// under faces, as a complex on the same vertex set.
    pub fn closed_star(&self, vertex: usize) -> SimplicialComplex {
        let gens: Vec<Vec<usize>> = self
            .maximal_simplices
            .iter()
            .filter(|m| m.contains(&vertex))
            .cloned()
            .collect();
        SimplicialComplex::from_generators(self.vertices.clone(), gens)
            .expect("star of a valid complex is valid")
    }

    /// The subcomplex spanned by the connected component of a vertex, on
    /// the same vertex set.
    pub fn component_of(&self, vertex: usize) -> SimplicialComplex {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for m in &self.maximal_simplices {
            for w in m.windows(2) {
                let a = find(&mut parent, w[0]);
                let b = find(&mut parent, w[1]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let root = find(&mut parent, vertex);
        let gens = self
            .maximal_simplices
            .iter()
            .filter(|m| find(&mut parent, m[0]) == root)
            .cloned()
            .collect();
        SimplicialComplex::from_generators(self.vertices.clone(), gens)
            .expect("component of a valid complex")
    }

    /// Vertices that occur in some simplex.
    pub fn support(&self) -> Vec<usize> {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for m in &self.maximal_simplices {
            used.extend(m.iter().copied());
        }
        used.into_iter().collect()
    }
}

/// A vertex map checked to send simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<SimplicialMap, ComplexError> {
        if vertex_map.len() != source.vertices.len() {
            return Err(ComplexError::Undefined(vertex_map.len()));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.vertices.len()) {
            return Err(ComplexError::VertexOutOfRange(v));
        }
        for m in &source.maximal_simplices {
            let image: Vec<usize> = m.iter().map(|&v| vertex_map[v]).collect();
            if !target.contains_simplex(&image) {
                let rendered = image
                    .iter()
                    .map(|&v| target.vertices[v].clone())
                    .collect::<Vec<_>>()
                    .join(",");
                return Err(ComplexError::NotSimplicial(rendered));
            }
        }
        Ok(SimplicialMap { vertex_map })
    }

    pub fn apply(&self, simplex: &[usize]) -> Vec<usize> {
        let mut image: Vec<usize> = simplex.iter().map(|&v| self.vertex_map[v]).collect();
        image.sort_unstable();
        image.dedup();
        image
    }
}
