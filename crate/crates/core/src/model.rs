//! The simplicial models: the directly-built Salvetti complex, the limit
//! models W_rho of covers, the comparison map Lambda_rho, and the checks
//! that tie them together (label isomorphism, the covering-space property,
//! and the CW structure carried by the limit poset).

use crate::arrangement::{compose, signs_geq, FacePoset};
use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::covers::{CoverGraph, UniversalBall, WordRewriter};
use crate::diagrams::{
    diagram_id, diagram_rho, face_poset_as_finite, plim, FinitePoset, Plim, PosetDiagram,
};
use crate::invariants::betti_numbers;
use crate::oriented::{cell_boundary_arcs, OrientedSystem};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// A diagram together with its limit poset and the order complex of that
/// limit.
#[derive(Clone, Debug)]
pub struct Model {
    pub diagram: PosetDiagram,
    pub lim: Plim,
    pub complex: SimplicialComplex,
}

fn model_of(diagram: PosetDiagram) -> Model {
    let lim = plim(&diagram);
    let complex = lim.poset.order_complex();
    Model { diagram, lim, complex }
}

/// The model of the base: Delta(Plim D_id), simplicially isomorphic to the
/// Salvetti complex.
pub fn base_model(fp: &FacePoset, sys: &OrientedSystem) -> Model {
    model_of(diagram_id(fp, sys))
}

/// The model W_rho of a cover.
pub fn cover_model(fp: &FacePoset, cover: &CoverGraph) -> Model {
    model_of(diagram_rho(fp, cover))
}

/// The Salvetti complex built straight from its classical definition:
/// vertices are pairs [F, C] with C a chamber adjacent to F, and for every
/// maximal chain phi of the face poset and chamber C adjacent to max(phi)
/// the simplex with vertices [F, F o C], F in phi. Serves as the
/// independent oracle against `base_model`.
pub fn salvetti_direct(fp: &FacePoset, sys: &OrientedSystem) -> SimplicialComplex {
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (f, face) in fp.faces.iter().enumerate() {
        for c in 0..sys.num_vertices() {
            if signs_geq(&face.signs, &sys.chamber_signs[c]) {
                vertex_index.insert((f, c), vertices.len());
                vertices.push(format!("({},{})", face.label(), sys.graph.vertex_labels[c]));
            }
        }
    }
    let finite = face_poset_as_finite(fp);
    let mut simplices = Vec::new();
    for chain in finite.maximal_chains() {
        let top = *chain.last().unwrap();
        for c in 0..sys.num_vertices() {
            if !signs_geq(&fp.faces[top].signs, &sys.chamber_signs[c]) {
                continue;
            }
            let simplex: Vec<usize> = chain
                .iter()
                .map(|&f| {
                    let composed = compose(&fp.faces[f].signs, &sys.chamber_signs[c]);
                    let cc = sys
                        .chamber_signs
                        .iter()
                        .position(|s| *s == composed)
                        .expect("F o C is a chamber");
                    vertex_index[&(f, cc)]
                })
                .collect();
            simplices.push(simplex);
        }
    }
    SimplicialComplex::from_generators(vertices, simplices).expect("Salvetti simplices are valid")
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub iso: bool,
    pub witness: Option<String>,
}

/// Compares two complexes through the bijection of their vertex labels.
pub fn iso_check(a: &SimplicialComplex, b: &SimplicialComplex) -> IsoReport {
    let fail = |witness: String| IsoReport { iso: false, witness: Some(witness) };
    if a.vertices.len() != b.vertices.len() {
        return fail(format!(
            "vertex counts differ: {} vs {}",
            a.vertices.len(),
            b.vertices.len()
        ));
    }
    let b_index: BTreeMap<&str, usize> = b
        .vertices
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut translate = Vec::with_capacity(a.vertices.len());
    for l in &a.vertices {
        match b_index.get(l.as_str()) {
            Some(&i) => translate.push(i),
            None => return fail(format!("label {} missing on one side", l)),
        }
    }
    let mut a_simplices: Vec<Vec<usize>> = a
        .maximal_simplices
        .iter()
        .map(|s| {
            let mut t: Vec<usize> = s.iter().map(|&v| translate[v]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    a_simplices.sort();
    let b_simplices = {
        let mut s = b.maximal_simplices.clone();
        s.sort();
        s
    };
    if a_simplices != b_simplices {
        let only_a: Vec<&Vec<usize>> = a_simplices.iter().filter(|s| !b_simplices.contains(s)).collect();
        let describe = |s: &Vec<usize>| -> String {
            s.iter().map(|&v| b.vertices[v].clone()).collect::<Vec<_>>().join(" ")
        };
        let witness = match only_a.first() {
            Some(s) => format!("simplex {{{}}} present on one side only", describe(s)),
            None => {
                let s = b_simplices.iter().find(|s| !a_simplices.contains(s)).unwrap();
                format!("simplex {{{}}} present on one side only", describe(s))
            }
        };
        return fail(witness);
    }
    IsoReport { iso: true, witness: None }
}

/// The projection Lambda_rho: (F, v) -> (F, rho(v)), as a checked
/// simplicial map from the cover model to the base model.
pub fn lambda_map(
    cover: &CoverGraph,
    cover_model: &Model,
    base: &Model,
) -> Result<SimplicialMap, crate::complex::ComplexError> {
    let vertex_map: Vec<usize> = cover_model
        .lim
        .elements
        .iter()
        .map(|&(p, q)| {
            let vertex_label = &cover_model.diagram.spaces[p].labels[q];
            let v = cover
                .graph
                .vertex_labels
                .iter()
                .position(|l| l == vertex_label)
                .expect("space elements are cover vertices");
            let chamber_label = &cover.base.graph.vertex_labels[cover.projection(v)];
            let bq = base.diagram.spaces[p]
                .labels
                .iter()
                .position(|l| l == chamber_label)
                .expect("projection lies below the same face");
            base.lim.element_index(p, bq).expect("base limit element")
        })
        .collect();
    SimplicialMap::new(&cover_model.complex, &base.complex, vertex_map)
}

#[derive(Clone, Debug)]
pub struct CoveringReport {
    pub ok: bool,
    pub component_count: usize,
    /// Covering degree of each component of the total complex.
    pub degrees: Vec<usize>,
    pub failures: Vec<String>,
}

/// Checks that a simplicial map is a covering: closed stars map
/// isomorphically, the map is surjective, and fibers are constant on each
/// component of the total space.
pub fn verify_covering(
    total: &SimplicialComplex,
    base: &SimplicialComplex,
    map: &SimplicialMap,
) -> CoveringReport {
    let mut failures = Vec::new();
    let support = total.support();
    for &v in &support {
        let star = total.closed_star(v);
        let star_support = star.support();
        // Injectivity on the closed star.
        let images: BTreeSet<usize> = star_support.iter().map(|&u| map.vertex_map[u]).collect();
        if images.len() != star_support.len() {
            failures.push(format!(
                "star of {} is not mapped injectively",
                total.vertices[v]
            ));
            continue;
        }
        let image_gens: Vec<Vec<usize>> = star
            .maximal_simplices
            .iter()
            .map(|s| map.apply(s))
            .collect();
        let image = SimplicialComplex::from_generators(base.vertices.clone(), image_gens)
            .expect("image of a simplicial map");
        let target = base.closed_star(map.vertex_map[v]);
        let mut a = image.maximal_simplices.clone();
        a.sort();
        let mut b = target.maximal_simplices.clone();
        b.sort();
        if a != b {
            failures.push(format!(
                "star of {} does not map onto the star of {}",
                total.vertices[v],
                base.vertices[map.vertex_map[v]]
            ));
        }
    }
    // Surjectivity onto the base support.
    let image: BTreeSet<usize> = support.iter().map(|&v| map.vertex_map[v]).collect();
    for &b in &base.support() {
        if !image.contains(&b) {
            failures.push(format!("base vertex {} not in the image", base.vertices[b]));
        }
    }
    // Components of the total space, through its edges.
    let n = total.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for e in total.simplices_of_dim(1) {
        let a = find(&mut parent, e[0]);
        let b = find(&mut parent, e[1]);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut component_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut degrees = Vec::new();
    for &v in &support {
        let root = find(&mut parent, v);
        let next = component_of.len();
        component_of.entry(root).or_insert(next);
    }
    for comp in 0..component_of.len() {
        let mut fiber: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in &support {
            if component_of[&find(&mut parent, v)] == comp {
                *fiber.entry(map.vertex_map[v]).or_insert(0) += 1;
            }
        }
        let sizes: BTreeSet<usize> = fiber.values().copied().collect();
        if sizes.len() > 1 {
            failures.push(format!("component {} has non-constant fibers {:?}", comp, sizes));
            degrees.push(0);
        } else {
            degrees.push(sizes.into_iter().next().unwrap_or(0));
        }
    }
    CoveringReport {
        ok: failures.is_empty(),
        component_count: degrees.len(),
        degrees,
        failures,
    }
}

/// One cell of the CW structure carried by the limit poset: the element
/// (F, v), of dimension codim(F).
#[derive(Clone, Debug)]
pub struct CwCell {
    pub label: String,
    pub dim: usize,
    /// For 2-cells: the two lifted boundary arcs, as vertex label runs.
    pub boundary_arcs: Option<(Vec<String>, Vec<String>)>,
}

#[derive(Clone, Debug)]
pub struct CwStructure {
    /// Cell counts per dimension.
    pub counts: Vec<usize>,
    pub cells: Vec<CwCell>,
}

/// Reads the CW structure off the limit poset of D_rho: one cell per limit
/// element, with the attaching data of the 2-cells spelled out as the pair
/// of lifted positive arcs around the codimension-2 face.
pub fn cw_structure(fp: &FacePoset, cover: &CoverGraph, model: &Model) -> CwStructure {
    let sys = &cover.base;
    let mut cells = Vec::new();
    let mut counts = Vec::new();
    for (i, &(p, q)) in model.lim.elements.iter().enumerate() {
        let dim = fp.faces[p].codim;
        if counts.len() <= dim {
            counts.resize(dim + 1, 0);
        }
        counts[dim] += 1;
        let boundary_arcs = (dim == 2).then(|| {
            let vertex_label = &model.diagram.spaces[p].labels[q];
            let v = cover
                .graph
                .vertex_labels
                .iter()
                .position(|l| l == vertex_label)
                .expect("space elements are cover vertices");
            let (a1, a2) = cell_boundary_arcs(sys, &fp.faces[p].signs, cover.projection(v));
            let lift = |arc: &crate::oriented::Path| -> Vec<String> {
                cover
                    .lift_path(v, arc)
                    .expect("arc starts at the projection")
                    .vertices(&cover.graph)
                    .iter()
                    .map(|&w| cover.graph.vertex_labels[w].clone())
                    .collect()
            };
            let (l1, l2) = (lift(&a1), lift(&a2));
            assert_eq!(l1.last(), l2.last(), "validated decks close the 2-cells");
            (l1, l2)
        });
        cells.push(CwCell {
            label: model.lim.poset.labels[i].clone(),
            dim,
            boundary_arcs,
        });
    }
    CwStructure { counts, cells }
}

/// Presentation of pi_1(W_rho) from the CW structure: one generator per
/// directed edge of the cover graph outside a breadth-first spanning tree
/// of the basepoint component, one relator per 2-cell, reading the lifted
/// arc pair around the cell.
pub fn pi1_from_cw(fp: &FacePoset, cover: &CoverGraph, model: &Model) -> crate::invariants::GroupPresentation {
    use crate::invariants::GroupPresentation;
    let n = cover.graph.vertex_labels.len();
    if n == 0 {
        return GroupPresentation { generators: Vec::new(), relators: Vec::new() };
    }
    let mut neighbors: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, edge) in cover.graph.edges.iter().enumerate() {
        neighbors[edge.src].push((edge.tgt, e));
        neighbors[edge.tgt].push((edge.src, e));
    }
    let mut in_component = vec![false; n];
    let mut tree_cell = vec![false; cover.graph.edges.len()];
    in_component[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &(v, e) in &neighbors[u] {
            if !in_component[v] {
                in_component[v] = true;
                tree_cell[e] = true;
                queue.push_back(v);
            }
        }
    }
    let mut gen_of: Vec<Option<usize>> = vec![None; cover.graph.edges.len()];
    let mut generators = Vec::new();
    for (e, edge) in cover.graph.edges.iter().enumerate() {
        if in_component[edge.src] && !tree_cell[e] {
            gen_of[e] = Some(generators.len());
            generators.push(format!(
                "e[{}>{}]",
                cover.graph.vertex_labels[edge.src], cover.graph.vertex_labels[edge.tgt]
            ));
        }
    }
    let sys = &cover.base;
    let mut relators: Vec<Vec<(usize, i8)>> = Vec::new();
    for (i, &(p, q)) in model.lim.elements.iter().enumerate() {
        let _ = i;
        if fp.faces[p].codim != 2 {
            continue;
        }
        let vertex_label = &model.diagram.spaces[p].labels[q];
        let v = cover
            .graph
            .vertex_labels
            .iter()
            .position(|l| l == vertex_label)
            .expect("space elements are cover vertices");
        if !in_component[v] {
            continue;
        }
        let (a1, a2) = cell_boundary_arcs(sys, &fp.faces[p].signs, cover.projection(v));
        let l1 = cover.lift_path(v, &a1).expect("arc starts at the projection");
        let l2 = cover.lift_path(v, &a2).expect("arc starts at the projection");
        // Boundary loop: forward along the first arc, back along the second.
        let mut word: Vec<(usize, i8)> = Vec::new();
        let steps = l1
            .steps
            .iter()
            .map(|&(e, _)| (e, 1i8))
            .chain(l2.steps.iter().rev().map(|&(e, _)| (e, -1i8)));
        for (e, exp) in steps {
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

/// Checks that each cell of the limit poset looks like a cell: the order
/// complex of its closed lower ideal is acyclic, and that of the strict
/// ideal has the homology of the boundary sphere.
pub fn cell_signatures(fp: &FacePoset, model: &Model) -> Result<(), String> {
    let poset = &model.lim.poset;
    for (i, &(p, _)) in model.lim.elements.iter().enumerate() {
        let d = fp.faces[p].codim;
        let closed: Vec<usize> = (0..poset.len()).filter(|&j| poset.leq(j, i)).collect();
        let strict: Vec<usize> = closed.iter().copied().filter(|&j| j != i).collect();
        let sub = |elems: &[usize]| -> SimplicialComplex {
            let labels: Vec<String> = elems.iter().map(|&j| poset.labels[j].clone()).collect();
            FinitePoset::from_leq_fn(labels, |a, b| poset.leq(elems[a], elems[b]))
                .expect("subposet")
                .order_complex()
        };
        let ball = betti_numbers(&sub(&closed));
        if ball.first() != Some(&1) || ball.iter().skip(1).any(|&b| b != 0) {
            return Err(format!(
                "closed cell {} is not acyclic: betti {:?}",
                poset.labels[i], ball
            ));
        }
        if d == 0 {
            if !strict.is_empty() {
                return Err(format!("vertex {} has a nonempty boundary", poset.labels[i]));
            }
            continue;
        }
        let sphere = betti_numbers(&sub(&strict));
        let expected: Vec<usize> = if d == 1 {
            vec![2]
        } else {
            let mut e = vec![0; d];
            e[0] = 1;
            e[d - 1] = 1;
            e
        };
        if sphere != expected {
            return Err(format!(
                "boundary of {} is not an S^{}: betti {:?}",
                poset.labels[i],
                d - 1,
                sphere
            ));
        }
    }
    Ok(())
}

/// A fragment of the universal-cover model supported on a radius-limited
/// ball: elements (F, v) whose connecting lifts all stay inside the ball,
/// ordered by the transitive closure of the lifted comparisons.
#[derive(Clone, Debug)]
pub struct BallModel {
    pub elements: Vec<(usize, usize)>,
    pub poset: FinitePoset,
    pub complex: SimplicialComplex,
    pub exact: bool,
}

pub fn ball_model(fp: &FacePoset, sys: &OrientedSystem, ball: &UniversalBall) -> BallModel {
    let rewriter = WordRewriter::new(fp, sys);
    let canon = |w: &crate::covers::Word| rewriter.canonical(w);
    // The lift of v toward F: end of the canonical minimal path from the
    // chamber of v to F o chamber(v), when it stays in the fragment.
    let lift = |v: usize, f: usize| -> Option<usize> {
        let c = ball.vertices[v].1;
        let composed = compose(&fp.faces[f].signs, &sys.chamber_signs[c]);
        let target = sys
            .chamber_signs
            .iter()
            .position(|s| *s == composed)
            .expect("F o C is a chamber");
        ball.lift_endpoint(&canon, v, &sys.minimal_positive_path(c, target))
    };
    let mut elements: Vec<(usize, usize)> = Vec::new();
    for f in 0..fp.faces.len() {
        for v in 0..ball.vertices.len() {
            if !signs_geq(&fp.faces[f].signs, &sys.chamber_signs[ball.vertices[v].1]) {
                continue;
            }
            let total = (0..fp.faces.len())
                .filter(|&g| fp.geq(f, g))
                .all(|g| lift(v, g).is_some());
            if total {
                elements.push((f, v));
            }
        }
    }
    let labels: Vec<String> = elements
        .iter()
        .map(|&(f, v)| format!("({},{})", fp.faces[f].label(), ball.labels[v]))
        .collect();
    let n = elements.len();
    // One-step comparisons, then transitive closure.
    let mut leq = vec![vec![false; n]; n];
    for (a, &(f1, v1)) in elements.iter().enumerate() {
        for (b, &(f2, v2)) in elements.iter().enumerate() {
            if fp.geq(f1, f2) && lift(v1, f2) == Some(v2) {
                leq[b][a] = true;
            }
        }
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if !leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b][c] && !leq[a][c] {
                        leq[a][c] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let poset = FinitePoset::new(labels, leq).expect("ball fragment is a poset");
    let complex = poset.order_complex();
    BallModel { elements, poset, complex, exact: ball.exact }
}

pub fn covering_report_text(report: &CoveringReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "covering check: {}", if report.ok { "ok" } else { "FAILED" });
    let _ = writeln!(out, "components: {}", report.component_count);
    for (i, d) in report.degrees.iter().enumerate() {
        let _ = writeln!(out, "  component {}: degree {}", i, d);
    }
    for f in &report.failures {
        let _ = writeln!(out, "  failure: {}", f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::enumerate_faces;
    use crate::corpus;
    use crate::covers::{
        build_cover, universal_cover_ball, validate_deck, winding_labeling, crossing_labeling,
        ValidatedDeck,
    };
    use crate::invariants::euler_characteristic;
    use crate::oriented::gamma_of;

    fn setup(a: &crate::arrangement::Arrangement) -> (FacePoset, OrientedSystem) {
        let fp = enumerate_faces(a);
        let sys = gamma_of(&fp);
        (fp, sys)
    }

    fn winding_cover(fp: &FacePoset, sys: &OrientedSystem, k: usize) -> CoverGraph {
        let labeling = winding_labeling(sys, k);
        assert!(validate_deck(fp, sys, &labeling).unwrap().ok());
        build_cover(sys, &ValidatedDeck { labeling })
    }

    #[test]
    fn base_model_matches_direct_salvetti_on_corpus() {
        for (name, a) in corpus::all() {
            let (fp, sys) = setup(&a);
            let model = base_model(&fp, &sys);
            let direct = salvetti_direct(&fp, &sys);
            let report = iso_check(&model.complex, &direct);
            assert!(report.iso, "{}: {:?}", name, report.witness);
        }
    }

    #[test]
    fn base_model_betti_oracle() {
        // [DERIVED] Sal(one point) is a circle; Sal(two lines) a torus.
        let (fp, sys) = setup(&corpus::one_point());
        let m = base_model(&fp, &sys);
        assert_eq!(betti_numbers(&m.complex), vec![1, 1]);

        let (fp, sys) = setup(&corpus::two_lines());
        let m = base_model(&fp, &sys);
        assert_eq!(betti_numbers(&m.complex), vec![1, 2, 1]);
        assert_eq!(euler_characteristic(&m.complex), 0);
    }

    #[test]
    fn iso_check_detects_mutation() {
        let (fp, sys) = setup(&corpus::one_point());
        let model = base_model(&fp, &sys);
        let mut mutated = salvetti_direct(&fp, &sys);
        mutated.maximal_simplices.pop();
        let report = iso_check(&model.complex, &mutated);
        assert!(!report.iso);
        assert!(report.witness.is_some());
    }

    #[test]
    fn winding_cover_model_is_bigger_circle() {
        let (fp, sys) = setup(&corpus::one_point());
        let cover = winding_cover(&fp, &sys, 3);
        let w = cover_model(&fp, &cover);
        // The 12-gon: still a circle.
        assert_eq!(betti_numbers(&w.complex), vec![1, 1]);
        assert_eq!(w.complex.vertices.len(), 12);
    }

    #[test]
    fn lambda_is_a_covering_map() {
        let (fp, sys) = setup(&corpus::one_point());
        let base = base_model(&fp, &sys);
        let cover = winding_cover(&fp, &sys, 3);
        let w = cover_model(&fp, &cover);
        let lambda = lambda_map(&cover, &w, &base).unwrap();
        let report = verify_covering(&w.complex, &base.complex, &lambda);
        assert!(report.ok, "{:?}", report.failures);
        assert_eq!(report.degrees, vec![3]);
    }

    #[test]
    fn lambda_covering_two_lines_crossing() {
        let (fp, sys) = setup(&corpus::two_lines());
        let labeling = crossing_labeling(&sys, 2);
        assert!(validate_deck(&fp, &sys, &labeling).unwrap().ok());
        let cover = build_cover(&sys, &ValidatedDeck { labeling });
        let base = base_model(&fp, &sys);
        let w = cover_model(&fp, &cover);
        let lambda = lambda_map(&cover, &w, &base).unwrap();
        let report = verify_covering(&w.complex, &base.complex, &lambda);
        assert!(report.ok, "{:?}", report.failures);
        // (Z/2)^2 disconnects over the torus: 4 components of degree 1.
        assert_eq!(report.degrees, vec![1, 1, 1, 1]);
    }

    #[test]
    fn covering_check_rejects_mutated_map() {
        let (fp, sys) = setup(&corpus::one_point());
        let base = base_model(&fp, &sys);
        let cover = winding_cover(&fp, &sys, 2);
        let w = cover_model(&fp, &cover);
        let lambda = lambda_map(&cover, &w, &base).unwrap();
        // Collapse the whole model onto a single base vertex: still
        // simplicial on the circle, but no longer a covering.
        let collapsed =
            SimplicialMap::new(&w.complex, &base.complex, vec![lambda.vertex_map[0]; w.complex.vertices.len()]);
        let collapsed = match collapsed {
            Ok(m) => m,
            // If collapsing is not simplicial here, mutate one vertex image
            // along an edge of the base instead.
            Err(_) => {
                let mut vm = lambda.vertex_map.clone();
                vm[0] = lambda.vertex_map[1];
                SimplicialMap::new(&w.complex, &base.complex, vm).unwrap()
            }
        };
        let report = verify_covering(&w.complex, &base.complex, &collapsed);
        assert!(!report.ok);
    }

    #[test]
    fn cw_structure_counts() {
        // [DERIVED] torus: 4 vertices, 8 edges, 4 two-cells from the limit.
        let (fp, sys) = setup(&corpus::two_lines());
        let cover = winding_cover(&fp, &sys, 1);
        let m = cover_model(&fp, &cover);
        let cw = cw_structure(&fp, &cover, &m);
        assert_eq!(cw.counts, vec![4, 8, 4]);
        let chi: i64 = cw
            .counts
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        assert_eq!(chi, euler_characteristic(&m.complex));
        // Every 2-cell closes up: both arcs share start and end.
        for cell in cw.cells.iter().filter(|c| c.dim == 2) {
            let (a1, a2) = cell.boundary_arcs.as_ref().unwrap();
            assert_eq!(a1.first(), a2.first());
            assert_eq!(a1.last(), a2.last());
            assert_eq!(a1.len(), 3);
        }
    }

    #[test]
    fn cell_signatures_on_corpus() {
        for (name, a) in corpus::all() {
            let (fp, sys) = setup(&a);
            let cover = winding_cover(&fp, &sys, 1);
            let m = cover_model(&fp, &cover);
            assert!(cell_signatures(&fp, &m).is_ok(), "{}", name);
        }
    }

    #[test]
    fn ball_model_one_point() {
        let (fp, sys) = setup(&corpus::one_point());
        let ball = universal_cover_ball(&fp, &sys, 2);
        let bm = ball_model(&fp, &sys, &ball);
        assert!(bm.exact);
        // A contractible zigzag fragment of the line.
        assert_eq!(betti_numbers(&bm.complex), vec![1, 0]);
        // It contains a chamber element for each of the 5 ball vertices.
        let chamber_elements = bm
            .elements
            .iter()
            .filter(|&&(f, _)| fp.faces[f].is_chamber())
            .count();
        assert_eq!(chamber_elements, 5);
    }

    #[test]
    fn ball_model_grows_with_radius() {
        let (fp, sys) = setup(&corpus::one_point());
        let small = ball_model(&fp, &sys, &universal_cover_ball(&fp, &sys, 1));
        let large = ball_model(&fp, &sys, &universal_cover_ball(&fp, &sys, 3));
        assert!(large.elements.len() > small.elements.len());
        assert_eq!(betti_numbers(&large.complex), vec![1, 0]);
    }
}
