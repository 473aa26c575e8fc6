//! Diagrams of posets over a poset, their limits Plim, and the concrete
//! diagrams attached to an arrangement: the identity diagram D_id, the
//! cover diagram D_rho, and the local-limit diagram E over the opposite
//! face poset.

use crate::arrangement::{compose, FacePoset};
use crate::complex::SimplicialComplex;
use crate::covers::CoverGraph;
use crate::oriented::OrientedSystem;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric on {0}, {1}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive on {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("missing map for {hi} > {lo}")]
    MissingMap { hi: usize, lo: usize },
    #[error("map for {hi} > {lo} has wrong arity")]
    WrongArity { hi: usize, lo: usize },
    #[error("map for {hi} > {lo} is not monotone")]
    NotMonotone { hi: usize, lo: usize },
    #[error("functoriality fails along {top} > {mid} > {bot}")]
    NotFunctorial { top: usize, mid: usize, bot: usize },
}

/// A finite poset given by its full order relation matrix.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    pub labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FinitePoset, PosetError> {
        let n = labels.len();
        assert!(leq.len() == n && leq.iter().all(|r| r.len() == n));
        for a in 0..n {
            if !leq[a][a] {
                return Err(PosetError::NotReflexive(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(PosetError::NotAntisymmetric(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b][c] && !leq[a][c] {
                        return Err(PosetError::NotTransitive(a, b, c));
                    }
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    pub fn from_leq_fn(labels: Vec<String>, f: impl Fn(usize, usize) -> bool) -> Result<FinitePoset, PosetError> {
        let n = labels.len();
        let leq = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        FinitePoset::new(labels, leq)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.leq[b][a]
    }

    /// A discrete (antichain) poset.
    pub fn discrete(labels: Vec<String>) -> FinitePoset {
        let n = labels.len();
        let leq = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
        FinitePoset { labels, leq }
    }

    pub fn opposite(&self) -> FinitePoset {
        let n = self.len();
        FinitePoset {
            labels: self.labels.clone(),
            leq: (0..n).map(|a| (0..n).map(|b| self.leq[b][a]).collect()).collect(),
        }
    }

    /// Covering pairs (lower, upper) of the Hasse diagram.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let covered = !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if covered {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| b != a && self.leq[b][a]))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| b != a && self.leq[a][b]))
            .collect()
    }

    /// All maximal chains, listed bottom-up.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (lo, hi) in self.cover_pairs() {
            up[lo].push(hi);
        }
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = self.minimal_elements().into_iter().map(|m| vec![m]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if up[last].is_empty() {
                out.push(chain);
                continue;
            }
            for &next in &up[last] {
                let mut c = chain.clone();
                c.push(next);
                stack.push(c);
            }
        }
        out.sort();
        out
    }

    /// The order complex: simplices are the chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_generators(self.labels.clone(), self.maximal_chains())
            .expect("chains are valid simplices")
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "elements": self.labels,
            "covers": self.cover_pairs(),
        })
    }
}

/// A diagram of posets: a poset-valued functor on a finite index poset.
/// One monotone map per strict comparable pair, checked for functoriality
/// at construction.
#[derive(Clone, Debug)]
pub struct PosetDiagram {
    pub index: FinitePoset,
    pub spaces: Vec<FinitePoset>,
    maps: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PosetDiagram {
    pub fn new(
        index: FinitePoset,
        spaces: Vec<FinitePoset>,
        maps: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<PosetDiagram, PosetError> {
        assert_eq!(spaces.len(), index.len());
        let n = index.len();
        for hi in 0..n {
            for lo in 0..n {
                if hi == lo || !index.geq(hi, lo) {
                    continue;
                }
                let f = maps.get(&(hi, lo)).ok_or(PosetError::MissingMap { hi, lo })?;
                if f.len() != spaces[hi].len() || f.iter().any(|&v| v >= spaces[lo].len()) {
                    return Err(PosetError::WrongArity { hi, lo });
                }
                for a in 0..spaces[hi].len() {
                    for b in 0..spaces[hi].len() {
                        if spaces[hi].geq(a, b) && !spaces[lo].geq(f[a], f[b]) {
                            return Err(PosetError::NotMonotone { hi, lo });
                        }
                    }
                }
            }
        }
        for top in 0..n {
            for mid in 0..n {
                if top == mid || !index.geq(top, mid) {
                    continue;
                }
                for bot in 0..n {
                    if bot == mid || bot == top || !index.geq(mid, bot) {
                        continue;
                    }
                    let f12 = &maps[&(top, mid)];
                    let f23 = &maps[&(mid, bot)];
                    let f13 = &maps[&(top, bot)];
                    if (0..spaces[top].len()).any(|q| f23[f12[q]] != f13[q]) {
                        return Err(PosetError::NotFunctorial { top, mid, bot });
                    }
                }
            }
        }
        Ok(PosetDiagram { index, spaces, maps })
    }

    /// The map for `p1 >= p2`, the identity when equal.
    pub fn map_for(&self, p1: usize, p2: usize) -> Vec<usize> {
        if p1 == p2 {
            (0..self.spaces[p1].len()).collect()
        } else {
            self.maps[&(p1, p2)].clone()
        }
    }
}

/// The limit poset of a diagram: pairs (p, q in D(p)) with
/// (p1,q1) >= (p2,q2) iff p1 >= p2 and f_{p1 >= p2}(q1) >= q2.
#[derive(Clone, Debug)]
pub struct Plim {
    pub poset: FinitePoset,
    /// (index element, space element) behind each limit element.
    pub elements: Vec<(usize, usize)>,
}

impl Plim {
    pub fn element_index(&self, p: usize, q: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == (p, q))
    }
}

pub fn plim(d: &PosetDiagram) -> Plim {
    let mut elements: Vec<(usize, usize)> = Vec::new();
    for p in 0..d.index.len() {
        for q in 0..d.spaces[p].len() {
            elements.push((p, q));
        }
    }
    let labels: Vec<String> = elements
        .iter()
        .map(|&(p, q)| format!("({},{})", d.index.labels[p], d.spaces[p].labels[q]))
        .collect();
    let geq = |a: &(usize, usize), b: &(usize, usize)| -> bool {
        let (p1, q1) = *a;
        let (p2, q2) = *b;
        d.index.geq(p1, p2) && d.spaces[p2].geq(d.map_for(p1, p2)[q1], q2)
    };
    let poset = FinitePoset::from_leq_fn(labels, |a, b| geq(&elements[b], &elements[a]))
        .expect("Plim of a functorial diagram is a poset");
    Plim { poset, elements }
}

/// Pullback along minima: the diagram over the chain poset of the index,
/// ordered by reverse inclusion, with D(sigma) = D(min sigma). Returns the
/// diagram and the chain behind each new index element.
pub fn mu_star(d: &PosetDiagram) -> (PosetDiagram, Vec<Vec<usize>>) {
    let base = &d.index;
    // All nonempty chains, as sorted element lists, ascending in base order.
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..base.len()).map(|a| vec![a]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            chains.push(c.clone());
            let top = *c.last().unwrap();
            for b in 0..base.len() {
                if b != top && base.leq(top, b) {
                    let mut cc = c.clone();
                    cc.push(b);
                    next.push(cc);
                }
            }
        }
        frontier = next;
    }
    chains.sort();
    chains.dedup();
    let labels: Vec<String> = chains
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().map(|&a| base.labels[a].as_str()).collect();
            format!("{{{}}}", parts.join("<"))
        })
        .collect();
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
    // sigma >= sigma' iff sigma is a subchain of sigma'.
    let index = FinitePoset::from_leq_fn(labels, |a, b| subset(&chains[b], &chains[a]))
        .expect("reverse inclusion is a partial order");
    let spaces: Vec<FinitePoset> = chains.iter().map(|c| d.spaces[c[0]].clone()).collect();
    let mut maps = BTreeMap::new();
    for hi in 0..chains.len() {
        for lo in 0..chains.len() {
            if hi != lo && index.geq(hi, lo) {
                maps.insert((hi, lo), d.map_for(chains[hi][0], chains[lo][0]));
            }
        }
    }
    let diagram = PosetDiagram::new(index, spaces, maps).expect("pullback of a functorial diagram");
    (diagram, chains)
}

pub fn face_poset_as_finite(fp: &FacePoset) -> FinitePoset {
    let labels: Vec<String> = fp.faces.iter().map(|f| f.label()).collect();
    FinitePoset::from_leq_fn(labels, |a, b| fp.geq(b, a)).expect("face poset is a poset")
}

/// The identity diagram D_id over F(A): the discrete set of chambers below
/// each face, with composition as the connecting maps.
pub fn diagram_id(fp: &FacePoset, sys: &OrientedSystem) -> PosetDiagram {
    let index = face_poset_as_finite(fp);
    let below: Vec<Vec<usize>> = (0..fp.faces.len())
        .map(|f| {
            (0..sys.num_vertices())
                .filter(|&c| crate::arrangement::signs_geq(&fp.faces[f].signs, &sys.chamber_signs[c]))
                .collect()
        })
        .collect();
    let spaces: Vec<FinitePoset> = below
        .iter()
        .map(|cs| {
            FinitePoset::discrete(cs.iter().map(|&c| sys.graph.vertex_labels[c].clone()).collect())
        })
        .collect();
    let mut maps = BTreeMap::new();
    for hi in 0..fp.faces.len() {
        for lo in 0..fp.faces.len() {
            if hi == lo || !index.geq(hi, lo) {
                continue;
            }
            let f: Vec<usize> = below[hi]
                .iter()
                .map(|&c| {
                    let composed = compose(&fp.faces[lo].signs, &sys.chamber_signs[c]);
                    let target = sys
                        .chamber_signs
                        .iter()
                        .position(|s| *s == composed)
                        .expect("composition with a chamber is a chamber");
                    below[lo].iter().position(|&x| x == target).unwrap()
                })
                .collect();
            maps.insert((hi, lo), f);
        }
    }
    PosetDiagram::new(index, spaces, maps).expect("D_id is functorial")
}

/// The cover diagram D_rho over F(A): the cover vertices projecting below
/// each face, with path-lifting endpoints as the connecting maps.
pub fn diagram_rho(fp: &FacePoset, cover: &CoverGraph) -> PosetDiagram {
    let sys = &cover.base;
    let index = face_poset_as_finite(fp);
    let below: Vec<Vec<usize>> = (0..fp.faces.len())
        .map(|f| {
            (0..cover.vertex_info.len())
                .filter(|&v| {
                    crate::arrangement::signs_geq(
                        &fp.faces[f].signs,
                        &sys.chamber_signs[cover.projection(v)],
                    )
                })
                .collect()
        })
        .collect();
    let spaces: Vec<FinitePoset> = below
        .iter()
        .map(|vs| {
            FinitePoset::discrete(vs.iter().map(|&v| cover.graph.vertex_labels[v].clone()).collect())
        })
        .collect();
    let mut maps = BTreeMap::new();
    for hi in 0..fp.faces.len() {
        for lo in 0..fp.faces.len() {
            if hi == lo || !index.geq(hi, lo) {
                continue;
            }
            let f: Vec<usize> = below[hi]
                .iter()
                .map(|&v| {
                    let composed = compose(&fp.faces[lo].signs, &sys.chamber_signs[cover.projection(v)]);
                    let target_chamber = sys
                        .chamber_signs
                        .iter()
                        .position(|s| *s == composed)
                        .expect("composition with a chamber is a chamber");
                    let w = cover.lift_endpoint(v, target_chamber);
                    below[lo].iter().position(|&x| x == w).unwrap()
                })
                .collect();
            maps.insert((hi, lo), f);
        }
    }
    PosetDiagram::new(index, spaces, maps).expect("D_rho is functorial: lifting is functorial")
}

/// The diagram E over F(A)^op whose spaces are the limits of D_id over the
/// lower ideals, and whose maps are the literal subposet inclusions.
pub fn diagram_falk(fp: &FacePoset, sys: &OrientedSystem) -> PosetDiagram {
    let d_id = diagram_id(fp, sys);
    let full = plim(&d_id);
    let index = face_poset_as_finite(fp).opposite();
    // E(F): the limit elements (G, C) with G <= F.
    let locals: Vec<Vec<usize>> = (0..fp.faces.len())
        .map(|f| {
            (0..full.elements.len())
                .filter(|&e| fp.geq(f, full.elements[e].0))
                .collect()
        })
        .collect();
    let spaces: Vec<FinitePoset> = locals
        .iter()
        .map(|es| {
            let labels = es.iter().map(|&e| full.poset.labels[e].clone()).collect();
            FinitePoset::from_leq_fn(labels, |a, b| full.poset.leq(es[a], es[b]))
                .expect("subposet of a poset")
        })
        .collect();
    let mut maps = BTreeMap::new();
    for hi in 0..fp.faces.len() {
        for lo in 0..fp.faces.len() {
            if hi == lo || !index.geq(hi, lo) {
                continue;
            }
            // hi <= lo in F(A), so the ideal of hi sits inside that of lo.
            let f: Vec<usize> = locals[hi]
                .iter()
                .map(|&e| locals[lo].iter().position(|&x| x == e).unwrap())
                .collect();
            maps.insert((hi, lo), f);
        }
    }
    PosetDiagram::new(index, spaces, maps).expect("inclusions are functorial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::enumerate_faces;
    use crate::corpus;
    use crate::covers::{build_cover, validate_deck, winding_labeling, ValidatedDeck};
    use crate::oriented::gamma_of;

    fn setup(a: &crate::arrangement::Arrangement) -> (FacePoset, OrientedSystem) {
        let fp = enumerate_faces(a);
        let sys = gamma_of(&fp);
        (fp, sys)
    }

    fn chain_poset(n: usize) -> FinitePoset {
        FinitePoset::from_leq_fn((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b).unwrap()
    }

    #[test]
    fn poset_axioms_checked() {
        // A relation with a 2-cycle is rejected.
        let bad = FinitePoset::new(
            vec!["a".into(), "b".into()],
            vec![vec![true, true], vec![true, true]],
        );
        assert!(matches!(bad, Err(PosetError::NotAntisymmetric(..))));
        // Missing transitivity is rejected.
        let bad = FinitePoset::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![true, true, false],
                vec![false, true, true],
                vec![false, false, true],
            ],
        );
        assert!(matches!(bad, Err(PosetError::NotTransitive(..))));
    }

    #[test]
    fn chains_and_covers() {
        let p = chain_poset(3);
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.maximal_chains(), vec![vec![0, 1, 2]]);
        let oc = p.order_complex();
        assert_eq!(oc.maximal_simplices, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn face_poset_zigzag_one_point() {
        let (fp, sys) = setup(&corpus::one_point());
        let d = diagram_id(&fp, &sys);
        let lim = plim(&d);
        assert_eq!(lim.poset.len(), 4);
        // The 4-cycle fence: each (0,-) element covers both chambers.
        let covers = lim.poset.cover_pairs();
        assert_eq!(covers.len(), 4);
        let oc = lim.poset.order_complex();
        assert_eq!(oc.simplices_of_dim(0).len(), 4);
        assert_eq!(oc.simplices_of_dim(1).len(), 4);
        // Paper's table: the map P >= A sends both chambers to A.
        let p = d.index.index_of("0").unwrap();
        let a = d.index.index_of("-").unwrap();
        let f = d.map_for(p, a);
        assert_eq!(f, vec![0, 0]);
    }

    #[test]
    fn plim_sizes() {
        let (fp, sys) = setup(&corpus::two_lines());
        let lim = plim(&diagram_id(&fp, &sys));
        // origin: 4 chambers, four rays: 2 each, four chambers: 1 each.
        assert_eq!(lim.poset.len(), 16);

        let (fp, sys) = setup(&corpus::three_coord_planes());
        let lim = plim(&diagram_id(&fp, &sys));
        assert_eq!(lim.poset.len(), 64);
    }

    #[test]
    fn plim_of_cover_diagram() {
        let (fp, sys) = setup(&corpus::one_point());
        let labeling = winding_labeling(&sys, 3);
        assert!(validate_deck(&fp, &sys, &labeling).unwrap().ok());
        let cover = build_cover(&sys, &ValidatedDeck { labeling });
        let d = diagram_rho(&fp, &cover);
        let lim = plim(&d);
        // 6 cover vertices + 6 elements over the point: the 12-gon fence.
        assert_eq!(lim.poset.len(), 12);
        let covers = lim.poset.cover_pairs();
        assert_eq!(covers.len(), 12);
        for (p, q) in &lim.elements {
            let idx = lim.element_index(*p, *q).unwrap();
            let deg = covers.iter().filter(|&&(lo, hi)| lo == idx || hi == idx).count();
            assert_eq!(deg, 2, "every fence element has two covers incident");
        }
    }

    #[test]
    fn mu_star_pullback() {
        let (fp, sys) = setup(&corpus::one_point());
        let d = diagram_id(&fp, &sys);
        let (pulled, chains) = mu_star(&d);
        // Chains of {P > A, P > B}: three singletons and two 2-chains.
        assert_eq!(chains.len(), 5);
        assert_eq!(pulled.index.len(), 5);
        // Spaces pull back along minima.
        for (i, c) in chains.iter().enumerate() {
            assert_eq!(pulled.spaces[i].len(), d.spaces[c[0]].len());
        }
        let lim = plim(&pulled);
        assert_eq!(lim.poset.len(), 6);
    }

    #[test]
    fn falk_diagram_one_point() {
        let (fp, sys) = setup(&corpus::one_point());
        let e = diagram_falk(&fp, &sys);
        let p = e.index.index_of("0").unwrap();
        let a = e.index.index_of("-").unwrap();
        assert_eq!(e.spaces[a].len(), 1);
        assert_eq!(e.spaces[p].len(), 4);
        // In the opposite index poset the chamber sits above the point.
        assert!(e.index.geq(a, p));
        // The connecting map is an inclusion (injective, order-embedding).
        let f = e.map_for(a, p);
        assert_eq!(f.len(), 1);
        assert_eq!(e.spaces[p].labels[f[0]], e.spaces[a].labels[0]);
    }

    #[test]
    fn falk_diagram_two_lines_shapes() {
        let (fp, sys) = setup(&corpus::two_lines());
        let e = diagram_falk(&fp, &sys);
        let origin = e.index.index_of("00").unwrap();
        assert_eq!(e.spaces[origin].len(), 16, "full limit at the origin");
        for &c in fp.chambers.iter() {
            assert_eq!(e.spaces[c].len(), 1);
        }
    }

    #[test]
    fn non_functorial_diagram_rejected() {
        let index = chain_poset(3);
        let spaces = vec![
            FinitePoset::discrete(vec!["x".into(), "y".into()]),
            FinitePoset::discrete(vec!["x".into(), "y".into()]),
            FinitePoset::discrete(vec!["x".into()]),
        ];
        let mut maps = BTreeMap::new();
        maps.insert((2, 1), vec![0]);
        maps.insert((1, 0), vec![0, 1]);
        maps.insert((2, 0), vec![1]); // should be [0] for functoriality
        assert!(matches!(
            PosetDiagram::new(index, spaces, maps),
            Err(PosetError::NotFunctorial { .. })
        ));
    }

    #[test]
    fn non_monotone_map_rejected() {
        let index = chain_poset(2);
        let two_chain = chain_poset(2);
        let spaces = vec![two_chain.clone(), two_chain];
        let mut maps = BTreeMap::new();
        maps.insert((1, 0), vec![1, 0]); // order-reversing
        assert!(matches!(
            PosetDiagram::new(index, spaces, maps),
            Err(PosetError::NotMonotone { .. })
        ));
    }

    #[test]
    fn empty_arrangement_limit_is_a_point() {
        let (fp, sys) = setup(&corpus::empty_line());
        let lim = plim(&diagram_id(&fp, &sys));
        assert_eq!(lim.poset.len(), 1);
    }
}
