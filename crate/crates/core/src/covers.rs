//! Covers of the oriented system built from permutation-valued deck
//! labelings: validation against the generating relation pairs, explicit
//! cover graphs with unique path lifting, and truncated universal covers.

use crate::arrangement::FacePoset;
use crate::oriented::{relation_generators, OrientedGraph, OrientedSystem, Path};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DeckError {
    #[error("missing `deck <m>` header")]
    MissingDegree,
    #[error("line {line}: malformed deck line")]
    Malformed { line: usize },
    #[error("line {line}: unknown chamber `{label}`")]
    UnknownChamber { line: usize, label: String },
    #[error("line {line}: no edge {src} -> {tgt}")]
    NoSuchEdge { line: usize, src: String, tgt: String },
    #[error("line {line}: not a permutation of 0..{degree}")]
    NotAPermutation { line: usize, degree: usize },
    #[error("edge {0} has no label")]
    MissingLabel(usize),
    #[error("basepoint projects to {found}, path begins at {expected}")]
    BasepointMismatch { expected: usize, found: usize },
}

pub type Perm = Vec<usize>;

pub fn perm_identity(m: usize) -> Perm {
    (0..m).collect()
}

pub fn perm_inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

fn is_permutation(p: &[usize], m: usize) -> bool {
    p.len() == m && {
        let mut seen = vec![false; m];
        p.iter().all(|&v| v < m && !std::mem::replace(&mut seen[v], true))
    }
}

/// A permutation of sheets for every directed edge of the base graph.
/// Opposite edges are labeled independently.
#[derive(Clone, Debug)]
pub struct DeckLabeling {
    pub degree: usize,
    pub labels: Vec<Perm>,
}

impl DeckLabeling {
    /// Sheet permutation effected by a base path: labels composed along the
    /// steps, inverses for steps with exponent -1.
    pub fn path_permutation(&self, path: &Path) -> Perm {
        let mut perm = perm_identity(self.degree);
        for &(e, exp) in &path.steps {
            let label = if exp > 0 {
                self.labels[e].clone()
            } else {
                perm_inverse(&self.labels[e])
            };
            perm = perm.iter().map(|&s| label[s]).collect();
        }
        perm
    }
}

/// Every directed edge becomes the cyclic shift s -> s+1 mod k.
pub fn winding_labeling(system: &OrientedSystem, k: usize) -> DeckLabeling {
    assert!(k >= 1);
    let shift: Perm = (0..k).map(|s| (s + 1) % k).collect();
    DeckLabeling {
        degree: k,
        labels: vec![shift; system.graph.edges.len()],
    }
}

/// Per-hyperplane winding into (Z/k)^n acting on itself: the edge crossing
/// hyperplane i adds e_i mod k. Degree k^n.
pub fn crossing_labeling(system: &OrientedSystem, k: usize) -> DeckLabeling {
    assert!(k >= 1);
    let n = system
        .chamber_signs
        .first()
        .map_or(0, Vec::len);
    let degree = k.pow(n as u32);
    let labels = system
        .edge_cross
        .iter()
        .map(|&h| {
            let stride = k.pow(h as u32);
            (0..degree)
                .map(|s| {
                    let digit = s / stride % k;
                    s - digit * stride + (digit + 1) % k * stride
                })
                .collect()
        })
        .collect();
    DeckLabeling { degree, labels }
}

/// A violated relation pair, with the offending paths rendered.
#[derive(Clone, Debug)]
pub struct DeckViolation {
    pub pair_index: usize,
    pub gamma1: String,
    pub gamma2: String,
}

#[derive(Clone, Debug)]
pub struct DeckReport {
    pub violations: Vec<DeckViolation>,
}

impl DeckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A labeling that passed `validate_deck`; only these can build covers.
#[derive(Clone, Debug)]
pub struct ValidatedDeck {
    pub labeling: DeckLabeling,
}

/// Checks perm(gamma1) = perm(gamma2) on every generating relation pair.
/// The relation is generated by the codimension-2 boundaries, so this
/// suffices for descent to the fundamental group of the oriented system.
pub fn validate_deck(
    poset: &FacePoset,
    system: &OrientedSystem,
    labeling: &DeckLabeling,
) -> Result<DeckReport, DeckError> {
    for (e, label) in labeling.labels.iter().enumerate() {
        if !is_permutation(label, labeling.degree) {
            return Err(DeckError::MissingLabel(e));
        }
    }
    if labeling.labels.len() != system.graph.edges.len() {
        return Err(DeckError::MissingLabel(labeling.labels.len()));
    }
    let mut violations = Vec::new();
    for (i, (g1, g2)) in relation_generators(poset, system).iter().enumerate() {
        if labeling.path_permutation(g1) != labeling.path_permutation(g2) {
            violations.push(DeckViolation {
                pair_index: i,
                gamma1: g1.render(&system.graph),
                gamma2: g2.render(&system.graph),
            });
        }
    }
    Ok(DeckReport { violations })
}

/// Exhaustive variant: compares the permutations of every pair of positive
/// minimal paths with equal endpoints, not only the generating pairs.
pub fn validate_deck_exhaustive(
    system: &OrientedSystem,
    labeling: &DeckLabeling,
) -> Vec<(Path, Path)> {
    let mut bad = Vec::new();
    let n = system.num_vertices();
    for c1 in 0..n {
        for c2 in 0..n {
            let paths = all_positive_minimal_paths(system, c1, c2);
            for pair in paths.windows(2) {
                if labeling.path_permutation(&pair[0]) != labeling.path_permutation(&pair[1]) {
                    bad.push((pair[0].clone(), pair[1].clone()));
                }
            }
        }
    }
    bad
}

/// All positive paths of length |S(c1,c2)| from c1 to c2, by depth-first
/// enumeration. Each necessarily crosses every separating hyperplane once.
pub fn all_positive_minimal_paths(system: &OrientedSystem, c1: usize, c2: usize) -> Vec<Path> {
    let target_len = system.separating(c1, c2).len();
    let mut out = Vec::new();
    let mut stack = vec![(c1, Path::empty(c1))];
    while let Some((at, path)) = stack.pop() {
        if path.len() == target_len {
            if at == c2 {
                out.push(path);
            }
            continue;
        }
        for (e, edge) in system.graph.edges.iter().enumerate() {
            if edge.src != at {
                continue;
            }
            // Stay inside the interval: only cross hyperplanes still separating.
            if system.separating(edge.tgt, c2).len() + 1 != system.separating(at, c2).len() {
                continue;
            }
            let mut p = path.clone();
            p.steps.push((e, 1));
            stack.push((edge.tgt, p));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverVertex {
    pub chamber: usize,
    pub sheet: usize,
}

/// The cover graph Theta: chamber x sheet vertices, one lifted edge per base
/// edge and sheet. Vertex (c,s) has index c*degree + s; the lift of base
/// edge e at sheet s has index e*degree + s.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    pub base: OrientedSystem,
    pub degree: usize,
    pub labeling: DeckLabeling,
    pub graph: OrientedGraph,
    pub vertex_info: Vec<CoverVertex>,
    /// Base edge of each cover edge.
    pub edge_base: Vec<usize>,
    /// Connected-component id per vertex (underlying undirected graph).
    pub component: Vec<usize>,
    pub component_count: usize,
}

impl CoverGraph {
    pub fn vertex_index(&self, chamber: usize, sheet: usize) -> usize {
        chamber * self.degree + sheet
    }

    pub fn projection(&self, vertex: usize) -> usize {
        self.vertex_info[vertex].chamber
    }

    /// Fiber size over each chamber within a component.
    pub fn fiber_sizes(&self, component: usize) -> Vec<usize> {
        let mut sizes = vec![0usize; self.base.num_vertices()];
        for (v, info) in self.vertex_info.iter().enumerate() {
            if self.component[v] == component {
                sizes[info.chamber] += 1;
            }
        }
        sizes
    }

    /// The unique lift of a base path starting at `v`.
    pub fn lift_path(&self, v: usize, path: &Path) -> Result<Path, DeckError> {
        if self.projection(v) != path.start {
            return Err(DeckError::BasepointMismatch {
                expected: path.start,
                found: self.projection(v),
            });
        }
        let mut at = v;
        let mut steps = Vec::with_capacity(path.len());
        for &(e, exp) in &path.steps {
            let sheet = self.vertex_info[at].sheet;
            let cover_edge = if exp > 0 {
                e * self.degree + sheet
            } else {
                e * self.degree + perm_inverse(&self.labeling.labels[e])[sheet]
            };
            steps.push((cover_edge, exp));
            let ce = self.graph.edges[cover_edge];
            at = if exp > 0 { ce.tgt } else { ce.src };
        }
        Ok(Path { start: v, steps })
    }

    /// End of the lift at `v` of the canonical positive minimal path from
    /// the projection of `v` to the chamber `c`.
    pub fn lift_endpoint(&self, v: usize, c: usize) -> usize {
        let base_path = self.base.minimal_positive_path(self.projection(v), c);
        self.lift_path(v, &base_path)
            .expect("basepoint matches by construction")
            .end(&self.graph)
    }

    /// The vertex v with `w = end(lift_v(C -> projection(w)))`.
    pub fn v_of(&self, c: usize, w: usize) -> usize {
        let base_path = self.base.minimal_positive_path(c, self.projection(w));
        let perm = self.labeling.path_permutation(&base_path);
        let sheet = perm_inverse(&perm)[self.vertex_info[w].sheet];
        self.vertex_index(c, sheet)
    }
}

/// Builds the cover graph of a validated labeling and reports its connected
/// components. Disconnected covers are permitted; each component is itself a
/// connected cover.
pub fn build_cover(system: &OrientedSystem, deck: &ValidatedDeck) -> CoverGraph {
    let m = deck.labeling.degree;
    let nc = system.num_vertices();
    let vertex_info: Vec<CoverVertex> = (0..nc * m)
        .map(|i| CoverVertex {
            chamber: i / m,
            sheet: i % m,
        })
        .collect();
    let vertex_labels = vertex_info
        .iter()
        .map(|v| format!("({},{})", system.graph.vertex_labels[v.chamber], v.sheet))
        .collect();
    let mut edges = Vec::with_capacity(system.graph.edges.len() * m);
    let mut edge_base = Vec::with_capacity(system.graph.edges.len() * m);
    for (e, base_edge) in system.graph.edges.iter().enumerate() {
        for s in 0..m {
            edges.push(crate::oriented::Edge {
                src: base_edge.src * m + s,
                tgt: base_edge.tgt * m + deck.labeling.labels[e][s],
            });
            edge_base.push(e);
        }
    }
    let lookup: BTreeMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.src, e.tgt), i))
        .collect();
    // The reverse lift exists only when the labels of the two base
    // directions are mutually inverse at this sheet; the vertex lookup
    // captures exactly that.
    let opposite = edges.iter().map(|e| lookup.get(&(e.tgt, e.src)).copied()).collect();
    // Union-find on the underlying undirected graph.
    let mut parent: Vec<usize> = (0..vertex_info.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for e in &edges {
        let a = find(&mut parent, e.src);
        let b = find(&mut parent, e.tgt);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut component = vec![0usize; vertex_info.len()];
    let mut roots: Vec<usize> = Vec::new();
    for v in 0..vertex_info.len() {
        let r = find(&mut parent, v);
        let id = match roots.iter().position(|&x| x == r) {
            Some(i) => i,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
        component[v] = id;
    }
    CoverGraph {
        base: system.clone(),
        degree: m,
        labeling: deck.labeling.clone(),
        graph: OrientedGraph {
            vertex_labels,
            edges,
            opposite,
        },
        vertex_info,
        edge_base,
        component,
        component_count: roots.len(),
    }
}

/// Parses the deck-labeling file format: `deck <m>` then one
/// `edge <src> <tgt> perm p0 ... p(m-1)` line per directed edge.
pub fn parse_deck(system: &OrientedSystem, text: &str) -> Result<DeckLabeling, DeckError> {
    let mut degree: Option<usize> = None;
    let mut labels: Vec<Option<Perm>> = vec![None; system.graph.edges.len()];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "deck" => {
                let m = tokens
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or(DeckError::Malformed { line })?;
                degree = Some(m);
            }
            "edge" => {
                let m = degree.ok_or(DeckError::MissingDegree)?;
                if tokens.len() != 4 + m || tokens[3] != "perm" {
                    return Err(DeckError::Malformed { line });
                }
                let vertex = |label: &str| {
                    system
                        .graph
                        .vertex_labels
                        .iter()
                        .position(|l| l == label)
                        .ok_or_else(|| DeckError::UnknownChamber {
                            line,
                            label: label.to_string(),
                        })
                };
                let src = vertex(tokens[1])?;
                let tgt = vertex(tokens[2])?;
                let e = system.edge_between(src, tgt).ok_or_else(|| DeckError::NoSuchEdge {
                    line,
                    src: tokens[1].to_string(),
                    tgt: tokens[2].to_string(),
                })?;
                let perm: Vec<usize> = tokens[4..]
                    .iter()
                    .map(|t| t.parse().map_err(|_| DeckError::Malformed { line }))
                    .collect::<Result<_, _>>()?;
                if !is_permutation(&perm, m) {
                    return Err(DeckError::NotAPermutation { line, degree: m });
                }
                labels[e] = Some(perm);
            }
            _ => return Err(DeckError::Malformed { line }),
        }
    }
    let degree = degree.ok_or(DeckError::MissingDegree)?;
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(e, l)| l.ok_or(DeckError::MissingLabel(e)))
        .collect::<Result<_, _>>()?;
    Ok(DeckLabeling { degree, labels })
}

/// A word in the directed edges of the base graph, exponents +-1.
pub type Word = Vec<(usize, i8)>;

fn reduce_word(word: &Word) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &(e, exp) in word {
        if let Some(&(pe, pexp)) = out.last() {
            if pe == e && pexp == -exp {
                out.pop();
                continue;
            }
        }
        out.push((e, exp));
    }
    out
}

fn word_key(w: &Word) -> (usize, Word) {
    (w.len(), w.clone())
}

/// A radius-limited fragment of the universal cover of the oriented system:
/// vertices are equivalence classes of paths from the base chamber.
#[derive(Clone, Debug)]
pub struct UniversalBall {
    pub base_chamber: usize,
    pub radius: usize,
    /// Canonical word and projected chamber per ball vertex.
    pub vertices: Vec<(Word, usize)>,
    pub labels: Vec<String>,
    pub dist: Vec<usize>,
    /// Directed edges (src ball vertex, tgt ball vertex, base edge).
    pub edges: Vec<(usize, usize, usize)>,
    /// True when the canonical forms are exact (no codimension-2 faces);
    /// otherwise the fragment is a bounded-rewriting heuristic.
    pub exact: bool,
}

impl UniversalBall {
    pub fn vertex_of_word(&self, w: &Word) -> Option<usize> {
        self.vertices.iter().position(|(word, _)| word == w)
    }

    /// Lift of a base path step sequence at a ball vertex, if it stays inside
    /// the fragment. Returns the ball endpoint.
    pub fn lift_endpoint(
        &self,
        canon: &dyn Fn(&Word) -> Word,
        v: usize,
        path: &Path,
    ) -> Option<usize> {
        let mut word = self.vertices[v].0.clone();
        let mut at = v;
        for &(e, exp) in &path.steps {
            word.push((e, exp));
            word = canon(&word);
            at = self.vertex_of_word(&word)?;
        }
        Some(at)
    }
}

/// Canonicalizer over path words: closure under free reduction and the
/// generating substitutions, representative = shortest lexicographic word.
pub struct WordRewriter {
    substitutions: Vec<(Word, Word)>,
}

impl WordRewriter {
    pub fn new(poset: &FacePoset, system: &OrientedSystem) -> Self {
        let mut substitutions = Vec::new();
        for (g1, g2) in relation_generators(poset, system) {
            substitutions.push((g1.steps.clone(), g2.steps.clone()));
            substitutions.push((g2.steps, g1.steps));
        }
        WordRewriter { substitutions }
    }

    pub fn is_exact(&self) -> bool {
        self.substitutions.is_empty()
    }

    pub fn canonical(&self, word: &Word) -> Word {
        let start = reduce_word(word);
        if self.substitutions.is_empty() {
            return start;
        }
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let mut best = start.clone();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(w) = queue.pop_front() {
            if seen.len() > 20_000 {
                break;
            }
            if word_key(&w) < word_key(&best) {
                best = w.clone();
            }
            for (from, to) in &self.substitutions {
                if from.len() > w.len() {
                    continue;
                }
                for i in 0..=w.len() - from.len() {
                    if &w[i..i + from.len()] == from.as_slice() {
                        let mut next: Word = w[..i].to_vec();
                        next.extend_from_slice(to);
                        next.extend_from_slice(&w[i + from.len()..]);
                        let next = reduce_word(&next);
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        best
    }
}

/// Breadth-first exploration of path classes from the lexicographically
/// least chamber, out to the given radius.
pub fn universal_cover_ball(
    poset: &FacePoset,
    system: &OrientedSystem,
    radius: usize,
) -> UniversalBall {
    let rewriter = WordRewriter::new(poset, system);
    let base_chamber = 0;
    let chamber_of_word = |w: &Word| -> usize {
        let mut at = base_chamber;
        for &(e, exp) in w {
            let edge = system.graph.edges[e];
            at = if exp > 0 { edge.tgt } else { edge.src };
        }
        at
    };
    let mut vertices: Vec<(Word, usize)> = vec![(Vec::new(), base_chamber)];
    let mut dist = vec![0usize];
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut frontier = vec![0usize];
    for d in 1..=radius {
        let mut next_frontier = Vec::new();
        for &v in &frontier {
            let (word, chamber) = vertices[v].clone();
            for (e, edge) in system.graph.edges.iter().enumerate() {
                for exp in [1i8, -1] {
                    let from = if exp > 0 { edge.src } else { edge.tgt };
                    if from != chamber {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push((e, exp));
                    let w = rewriter.canonical(&w);
                    if vertices.iter().any(|(vw, _)| *vw == w) {
                        continue;
                    }
                    vertices.push((w.clone(), chamber_of_word(&w)));
                    dist.push(d);
                    next_frontier.push(vertices.len() - 1);
                }
            }
        }
        frontier = next_frontier;
    }
    // Directed edges: every positive base edge with both lift endpoints in
    // the fragment.
    for (v, (word, chamber)) in vertices.iter().enumerate() {
        for (e, edge) in system.graph.edges.iter().enumerate() {
            if edge.src != *chamber {
                continue;
            }
            let mut w = word.clone();
            w.push((e, 1));
            let w = rewriter.canonical(&w);
            if let Some(t) = vertices.iter().position(|(vw, _)| *vw == w) {
                edges.push((v, t, e));
            }
        }
    }
    let labels = vertices
        .iter()
        .enumerate()
        .map(|(i, (_, c))| format!("{}#{}", system.graph.vertex_labels[*c], i))
        .collect();
    UniversalBall {
        base_chamber,
        radius,
        vertices,
        labels,
        dist,
        edges,
        exact: rewriter.is_exact(),
    }
}
