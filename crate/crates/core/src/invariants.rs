//! Topological invariants of the simplicial models: Euler characteristic,
//! rational Betti numbers, integral torsion, and an edge-path presentation
//! of the fundamental group with its abelianization.

use crate::complex::SimplicialComplex;
use crate::linalg::{rank, smith_invariant_factors, Rat};
use num::{BigInt, One, Zero};
use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.all_simplices()
        .iter()
        .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
        .sum()
}

/// The boundary matrix from d-simplices to (d-1)-simplices, rows indexed by
/// the (d-1)-simplices, with the usual alternating signs.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Vec<Vec<BigInt>> {
    assert!(d >= 1);
    let lower = k.simplices_of_dim(d - 1);
    let upper = k.simplices_of_dim(d);
    let index: BTreeMap<&[usize], usize> = lower
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut m = vec![vec![BigInt::zero(); upper.len()]; lower.len()];
    for (col, s) in upper.iter().enumerate() {
        for (i, _) in s.iter().enumerate() {
            let mut face = s.clone();
            face.remove(i);
            let row = index[face.as_slice()];
            m[row][col] = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        }
    }
    m
}

fn matrix_rank_q(m: &[Vec<BigInt>]) -> usize {
    let rows: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect();
    rank(&rows)
}

/// Betti numbers over Q, one entry per dimension 0..=dim.
pub fn betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let Some(dim) = k.dim() else {
        return Vec::new();
    };
    let counts: Vec<usize> = (0..=dim).map(|d| k.simplices_of_dim(d).len()).collect();
    let ranks: Vec<usize> = (1..=dim).map(|d| matrix_rank_q(&boundary_matrix(k, d))).collect();
    (0..=dim)
        .map(|d| {
            let z = counts[d] - if d >= 1 { ranks[d - 1] } else { 0 };
            let b = if d < dim { ranks[d] } else { 0 };
            z - b
        })
        .collect()
}

/// Betti numbers plus the torsion coefficients of each homology group.
#[derive(Clone, Debug)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    /// torsion[d] lists the invariant factors > 1 of H_d.
    pub torsion: Vec<Vec<BigInt>>,
}

pub fn homology_summary(k: &SimplicialComplex) -> HomologySummary {
    let betti = betti_numbers(k);
    let dim = betti.len().saturating_sub(1);
    let torsion = (0..=dim)
        .map(|d| {
            if d + 1 > dim {
                return Vec::new();
            }
            smith_invariant_factors(&boundary_matrix(k, d + 1))
                .into_iter()
                .filter(|f| f > &BigInt::one())
                .collect()
        })
        .collect();
    HomologySummary { betti, torsion }
}

/// A finite group presentation; relator words are over generator indices.
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i8)>>,
}

impl GroupPresentation {
    pub fn render(&self) -> String {
        let mut out = String::from("< ");
        out.push_str(&self.generators.join(", "));
        out.push_str(" | ");
        let words: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(g, exp)| {
                        if exp > 0 {
                            self.generators[g].clone()
                        } else {
                            format!("{}^-1", self.generators[g])
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push_str(&words.join(", "));
        out.push_str(" >");
        out
    }

    /// Free rank and torsion coefficients of the abelianization, by Smith
    /// normal form of the relator exponent matrix.
    pub fn abelianization(&self) -> (usize, Vec<BigInt>) {
        if self.generators.is_empty() {
            return (0, Vec::new());
        }
        let mut m: Vec<Vec<BigInt>> = self
            .relators
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::zero(); self.generators.len()];
                for &(g, exp) in r {
                    row[g] += BigInt::from(exp);
                }
                row
            })
            .collect();
        if m.is_empty() {
            m.push(vec![BigInt::zero(); self.generators.len()]);
        }
        let factors = smith_invariant_factors(&m);
        let free_rank = self.generators.len() - factors.len();
        let torsion = factors.into_iter().filter(|f| f > &BigInt::one()).collect();
        (free_rank, torsion)
    }
}

/// Edge-path presentation of pi_1 of the component containing the first
/// supported vertex: generators are the non-tree edges of a breadth-first
/// spanning tree, relators come from the 2-simplices.
pub fn pi1_presentation(k: &SimplicialComplex) -> GroupPresentation {
    let support = k.support();
    let Some(&base) = support.first() else {
        return GroupPresentation { generators: Vec::new(), relators: Vec::new() };
    };
    let edges = k.simplices_of_dim(1);
    let mut adjacency: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        adjacency.entry(e[0]).or_default().push((e[1], i));
        adjacency.entry(e[1]).or_default().push((e[0], i));
    }
    let mut in_tree = vec![false; edges.len()];
    let mut seen: BTreeMap<usize, ()> = BTreeMap::new();
    seen.insert(base, ());
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        if let Some(nbrs) = adjacency.get(&u) {
            for &(v, e) in nbrs {
                if !seen.contains_key(&v) {
                    seen.insert(v, ());
                    in_tree[e] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let gen_of: Vec<Option<usize>> = {
        let mut next = 0;
        in_tree
            .iter()
            .enumerate()
            .map(|(e, &t)| {
                if t || !seen.contains_key(&edges[e][0]) {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let generators: Vec<String> = gen_of
        .iter()
        .enumerate()
        .filter_map(|(e, g)| {
            g.map(|_| format!("g[{}|{}]", k.vertices[edges[e][0]], k.vertices[edges[e][1]]))
        })
        .collect();
    let edge_index: BTreeMap<&[usize], usize> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let mut relators: Vec<Vec<(usize, i8)>> = Vec::new();
    for t in k.simplices_of_dim(2) {
        if !seen.contains_key(&t[0]) {
            continue;
        }
        // Edge path a->b->c->a is null-homotopic across the triangle.
        let word_edges = [
            (edge_index[&[t[0], t[1]][..]], 1i8),
            (edge_index[&[t[1], t[2]][..]], 1),
            (edge_index[&[t[0], t[2]][..]], -1),
        ];
        let mut word: Vec<(usize, i8)> = Vec::new();
        for (e, exp) in word_edges {
            if let Some(g) = gen_of[e] {
                if let Some(&(pg, pexp)) = word.last() {
                    if pg == g && pexp == -exp {
                        word.pop();
                        continue;
                    }
                }
                word.push((g, exp));
            }
        }
        if !word.is_empty() && !relators.contains(&word) {
            relators.push(word);
        }
    }
    GroupPresentation { generators, relators }
}

pub fn summary_text(k: &SimplicialComplex) -> String {
    let h = homology_summary(k);
    let mut out = String::new();
    let _ = writeln!(out, "euler characteristic: {}", euler_characteristic(k));
    let _ = writeln!(out, "betti numbers: {:?}", h.betti);
    for (d, t) in h.torsion.iter().enumerate() {
        if !t.is_empty() {
            let _ = writeln!(out, "H_{} torsion: {:?}", d, t);
        }
    }
    out
}
