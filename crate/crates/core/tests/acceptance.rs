//! The acceptance gate: one test per criterion, each printing a single
//! pass line on success (failures panic with context).

use num::BigInt;
use salvetti::arrangement::{
    compose, enumerate_faces, intersection_poset, Arrangement, FacePoset,
};
use salvetti::complex::SimplicialMap;
use salvetti::corpus;
use salvetti::covers::{
    all_positive_minimal_paths, build_cover, crossing_labeling, universal_cover_ball,
    validate_deck, winding_labeling, CoverGraph, DeckLabeling, Perm, ValidatedDeck, WordRewriter,
};
use salvetti::diagrams::{diagram_falk, diagram_id, mu_star, plim};
use salvetti::invariants::{betti_numbers, euler_characteristic, homology_summary};
use salvetti::model::{
    ball_model, base_model, cover_model, iso_check, lambda_map, pi1_from_cw, salvetti_direct,
    verify_covering, Model,
};
use salvetti::oriented::{gamma_of, OrientedSystem};
use std::collections::BTreeSet;

fn setup(a: &Arrangement) -> (FacePoset, OrientedSystem) {
    let fp = enumerate_faces(a);
    let sys = gamma_of(&fp);
    (fp, sys)
}

fn cover_for(fp: &FacePoset, sys: &OrientedSystem, labeling: DeckLabeling) -> CoverGraph {
    let report = validate_deck(fp, sys, &labeling).unwrap();
    assert!(report.ok(), "labeling must validate");
    build_cover(sys, &ValidatedDeck { labeling })
}

#[test]
fn criterion_01_worked_example_reproduction() {
    let (fp, sys) = setup(&corpus::one_point());
    // F(A) = {A, P, B} with the point above both chambers.
    assert_eq!(fp.faces.len(), 3);
    let p = fp.index_of("0").unwrap();
    let a = fp.index_of("-").unwrap();
    let b = fp.index_of("+").unwrap();
    assert!(fp.geq(p, a) && fp.geq(p, b));
    // The table of D_id: P >= A sends both chambers to A, P >= B to B.
    let d = diagram_id(&fp, &sys);
    let ip = d.index.index_of("0").unwrap();
    let ia = d.index.index_of("-").unwrap();
    let ib = d.index.index_of("+").unwrap();
    // Each target space is the single chamber below that chamber face, so
    // the connecting maps collapse both elements of D(P) onto it.
    assert_eq!(d.spaces[ia].labels, vec!["-".to_string()]);
    assert_eq!(d.spaces[ib].labels, vec!["+".to_string()]);
    assert_eq!(d.map_for(ip, ia), vec![0, 0]);
    assert_eq!(d.map_for(ip, ib), vec![0, 0]);
    // Plim D_id is the 4-crown; its order complex is a 4-cycle.
    let lim = plim(&d);
    assert_eq!(lim.poset.len(), 4);
    assert_eq!(lim.poset.cover_pairs().len(), 4);
    let oc = lim.poset.order_complex();
    assert_eq!(betti_numbers(&oc), vec![1, 1]);
    // The radius-2 universal ball gives the zigzag Hasse fence
    // (A,A0) < (P,A0) > (B,B0) < (P,B0) > ... and is acyclic.
    let ball = universal_cover_ball(&fp, &sys, 2);
    assert!(ball.exact);
    let bm = ball_model(&fp, &sys, &ball);
    let covers = bm.poset.cover_pairs();
    // Every Hasse edge climbs from a chamber element to a point element.
    for &(lo, hi) in &covers {
        assert_eq!(fp.faces[bm.elements[lo].0].codim, 0);
        assert_eq!(fp.faces[bm.elements[hi].0].codim, 1);
    }
    // The fence is a path: connected, two ends of degree 1, rest degree 2.
    let n = bm.poset.len();
    assert_eq!(covers.len(), n - 1);
    let mut degree = vec![0usize; n];
    for &(lo, hi) in &covers {
        degree[lo] += 1;
        degree[hi] += 1;
    }
    assert_eq!(degree.iter().filter(|&&d| d == 1).count(), 2);
    assert!(degree.iter().all(|&d| d <= 2));
    let betti = betti_numbers(&bm.complex);
    assert_eq!(betti, vec![1, 0]);
    println!("PASS criterion 1: worked example (one point) reproduced");
}

#[test]
fn criterion_02_limit_model_is_the_salvetti_complex() {
    for (name, a) in corpus::all() {
        let (fp, sys) = setup(&a);
        let model = base_model(&fp, &sys);
        let direct = salvetti_direct(&fp, &sys);
        let report = iso_check(&model.complex, &direct);
        assert!(report.iso, "{}: {:?}", name, report.witness);
    }
    println!("PASS criterion 2: Plim(D_id) isomorphic to Salvetti complex on (a)-(g)");
}

/// Orbits of the sheet set under the holonomy subgroup at chamber 0,
/// computed independently from tree-conjugated edge loops.
fn holonomy_orbits(sys: &OrientedSystem, labeling: &DeckLabeling) -> Vec<BTreeSet<usize>> {
    let m = labeling.degree;
    let n = sys.num_vertices();
    let compose_perm = |a: &Perm, b: &Perm| -> Perm { a.iter().map(|&s| b[s]).collect() };
    let invert = |p: &Perm| -> Perm {
        let mut inv = vec![0; p.len()];
        for (i, &v) in p.iter().enumerate() {
            inv[v] = i;
        }
        inv
    };
    // Breadth-first tree from chamber 0 with the sheet permutation of the
    // tree path to each chamber.
    let mut reach: Vec<Option<Perm>> = vec![None; n];
    reach[0] = Some((0..m).collect());
    let mut tree_edges = vec![false; sys.graph.edges.len()];
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for (e, edge) in sys.graph.edges.iter().enumerate() {
            let (next, step) = if edge.src == u {
                (edge.tgt, labeling.labels[e].clone())
            } else if edge.tgt == u {
                (edge.src, invert(&labeling.labels[e]))
            } else {
                continue;
            };
            if reach[next].is_none() {
                reach[next] = Some(compose_perm(reach[u].as_ref().unwrap(), &step));
                tree_edges[e] = true;
                queue.push_back(next);
            }
        }
    }
    let mut generators: Vec<Perm> = Vec::new();
    for (e, edge) in sys.graph.edges.iter().enumerate() {
        let (Some(pu), Some(pv)) = (&reach[edge.src], &reach[edge.tgt]) else {
            continue;
        };
        // Loop: tree path to src, the edge, tree path back from tgt.
        let loop_perm = compose_perm(&compose_perm(pu, &labeling.labels[e]), &invert(pv));
        generators.push(invert(&loop_perm));
        generators.push(loop_perm);
    }
    let mut orbits: Vec<BTreeSet<usize>> = Vec::new();
    let mut assigned = vec![false; m];
    for s in 0..m {
        if assigned[s] {
            continue;
        }
        let mut orbit = BTreeSet::from([s]);
        loop {
            let next: BTreeSet<usize> = orbit
                .iter()
                .flat_map(|&x| generators.iter().map(move |g| g[x]))
                .collect();
            let grown: BTreeSet<usize> = orbit.union(&next).copied().collect();
            if grown == orbit {
                break;
            }
            orbit = grown;
        }
        for &x in &orbit {
            assigned[x] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

fn components_of(model: &Model) -> Vec<salvetti::complex::SimplicialComplex> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for v in model.complex.support() {
        if seen.contains(&v) {
            continue;
        }
        let comp = model.complex.component_of(v);
        seen.extend(comp.support());
        out.push(comp);
    }
    out
}

#[test]
fn criterion_03_covers_for_winding_and_crossing() {
    let cases = [corpus::one_point(), corpus::two_points(), corpus::two_lines()];
    for a in &cases {
        let (fp, sys) = setup(a);
        let base = base_model(&fp, &sys);
        let base_chi = euler_characteristic(&base.complex);
        for k in 1..=3usize {
            for labeling in [winding_labeling(&sys, k), crossing_labeling(&sys, k)] {
                let orbits = holonomy_orbits(&sys, &labeling);
                let cover = cover_for(&fp, &sys, labeling);
                // Fibers within a component all equal the orbit size.
                assert_eq!(cover.component_count, orbits.len());
                for (comp, orbit) in orbits.iter().enumerate() {
                    // Orbits and components are both discovered from sheet 0
                    // upward, so they are aligned.
                    let fibers = cover.fiber_sizes(comp);
                    assert!(fibers.iter().all(|&f| f == orbit.len()));
                }
                let w = cover_model(&fp, &cover);
                let lambda = lambda_map(&cover, &w, &base).unwrap();
                let report = verify_covering(&w.complex, &base.complex, &lambda);
                assert!(report.ok, "{:?}", report.failures);
                // chi is multiplicative with the degree on each component.
                let comps = components_of(&w);
                assert_eq!(comps.len(), report.degrees.len());
                for (comp, degree) in comps.iter().zip(&report.degrees) {
                    assert_eq!(euler_characteristic(comp), *degree as i64 * base_chi);
                }
            }
        }
    }
    println!("PASS criterion 3: winding/crossing covers verified on (b),(c),(d)");
}

#[test]
fn criterion_04_falk_diagram_homology() {
    let small: Vec<(&str, Arrangement)> = corpus::all()
        .into_iter()
        .filter(|(n, _)| *n != "three-coord-planes")
        .collect();
    for (name, a) in small {
        let (fp, sys) = setup(&a);
        let base = betti_numbers(&base_model(&fp, &sys).complex);
        let e = diagram_falk(&fp, &sys);
        let falk = betti_numbers(&plim(&e).poset.order_complex());
        assert_eq!(falk, base, "{}", name);
        if name == "two-lines" {
            assert_eq!(falk, vec![1, 2, 1]);
        }
    }
    println!("PASS criterion 4: Betti(Plim E) = Betti(Plim D_id) on (a)-(f)");
}

#[test]
fn criterion_05_mu_star_subdivision() {
    let small: Vec<(&str, Arrangement)> = corpus::all()
        .into_iter()
        .filter(|(n, _)| *n != "three-coord-planes")
        .collect();
    for (name, a) in small {
        let (fp, sys) = setup(&a);
        let d = diagram_id(&fp, &sys);
        let base = betti_numbers(&plim(&d).poset.order_complex());
        let (pulled, _) = mu_star(&d);
        let sub = betti_numbers(&plim(&pulled).poset.order_complex());
        assert_eq!(sub, base, "{}", name);
    }
    println!("PASS criterion 5: mu_star subdivision preserves homology on (a)-(f)");
}

#[test]
fn criterion_06_pi1_abelianization_vs_h1() {
    let cases = [corpus::one_point(), corpus::two_points(), corpus::two_lines()];
    for a in &cases {
        let (fp, sys) = setup(a);
        for k in [1usize, 3] {
            let cover = cover_for(&fp, &sys, winding_labeling(&sys, k));
            let w = cover_model(&fp, &cover);
            let pres = pi1_from_cw(&fp, &cover, &w);
            let (rank, torsion) = pres.abelianization();
            let h = homology_summary(&w.complex);
            assert_eq!(h.betti[0], 1, "winding:{} keeps these connected", k);
            assert_eq!(rank, h.betti.get(1).copied().unwrap_or(0));
            assert_eq!(torsion, h.torsion.get(1).cloned().unwrap_or_default());
        }
    }
    println!("PASS criterion 6: pi_1 abelianization matches H_1 on (b)-(d)");
}

#[test]
fn criterion_07_composition_laws() {
    let mut checks = 0usize;
    for (name, a) in corpus::all() {
        let (fp, _) = setup(&a);
        let faces = &fp.faces;
        for f1 in faces {
            for f2 in faces {
                // Closure: the composite of realizable faces is realizable.
                let c12 = compose(&f1.signs, &f2.signs);
                assert!(fp.face_index(&c12).is_some(), "{}", name);
                checks += 1;
                if salvetti::arrangement::signs_geq(&f1.signs, &f2.signs) {
                    // (o1) F1 o F2 = F2 whenever F1 >= F2.
                    assert_eq!(c12, f2.signs, "{}", name);
                    // (o3) (C_F1)_F2 = C_F2 for every chamber.
                    for &c in &fp.chambers {
                        let c_f1 = compose(&f1.signs, &faces[c].signs);
                        let lhs = compose(&f2.signs, &c_f1);
                        let rhs = compose(&f2.signs, &faces[c].signs);
                        assert_eq!(lhs, rhs, "{}", name);
                        checks += 1;
                    }
                }
                // (o2) F o C is a chamber.
                if f2.is_chamber() {
                    assert!(c12.iter().all(|&s| s != 0), "{}", name);
                }
            }
        }
    }
    assert!(checks > 2000, "exhaustive coverage, got {}", checks);
    println!("PASS criterion 7: composition laws (o1)-(o3) hold exhaustively on (a)-(g)");
}

#[test]
fn criterion_08_path_properties() {
    for (_, a) in corpus::all() {
        let (_, sys) = setup(&a);
        for c1 in 0..sys.num_vertices() {
            for c2 in 0..sys.num_vertices() {
                let p = sys.minimal_positive_path(c1, c2);
                assert_eq!(p.len(), sys.separating(c1, c2).len());
                assert!(sys.is_positive_minimal(&p));
            }
        }
    }
    // All equal-endpoint positive minimal paths are linked by the
    // generating substitutions (common canonical form under rewriting).
    for a in [corpus::one_point(), corpus::two_points(), corpus::two_lines()] {
        let (fp, sys) = setup(&a);
        let rewriter = WordRewriter::new(&fp, &sys);
        for c1 in 0..sys.num_vertices() {
            for c2 in 0..sys.num_vertices() {
                let paths = all_positive_minimal_paths(&sys, c1, c2);
                assert!(!paths.is_empty());
                let canon: BTreeSet<_> =
                    paths.iter().map(|p| rewriter.canonical(&p.steps)).collect();
                assert_eq!(canon.len(), 1, "paths {} -> {} all equivalent", c1, c2);
            }
        }
    }
    println!("PASS criterion 8: minimal path lengths and substitution connectivity");
}

#[test]
fn criterion_09_negative_controls() {
    // A corrupted deck labeling on (d) fails with an explicit witness pair.
    let (fp, sys) = setup(&corpus::two_lines());
    let mut labeling = winding_labeling(&sys, 3);
    labeling.labels[0] = vec![2, 1, 0];
    let report = validate_deck(&fp, &sys, &labeling).unwrap();
    assert!(!report.ok());
    let witness = &report.violations[0];
    assert!(!witness.gamma1.is_empty() && !witness.gamma2.is_empty());

    // A corrupted simplicial map fails the covering check with a star witness.
    let good = winding_labeling(&sys, 3);
    let cover = cover_for(&fp, &sys, good);
    let base = base_model(&fp, &sys);
    let w = cover_model(&fp, &cover);
    let lambda = lambda_map(&cover, &w, &base).unwrap();
    let mut vm = lambda.vertex_map.clone();
    // Swap the images of two cover vertices in the same fiber; stars break.
    let (i, j) = {
        let target = vm[0];
        let other = (1..vm.len()).find(|&k| vm[k] != target).unwrap();
        (0, other)
    };
    vm.swap(i, j);
    if let Ok(bad) = SimplicialMap::new(&w.complex, &base.complex, vm) {
        let report = verify_covering(&w.complex, &base.complex, &bad);
        assert!(!report.ok);
        assert!(report.failures.iter().any(|f| f.contains("star")));
    }
    // The swap may already fail to be simplicial; a collapsing map is
    // always simplicial and always fails the fiber/star conditions.
    let first = w.complex.support()[0];
    let constant = vec![lambda.vertex_map[first]; w.complex.vertices.len()];
    if let Ok(collapse) = SimplicialMap::new(&w.complex, &base.complex, constant) {
        let report = verify_covering(&w.complex, &base.complex, &collapse);
        assert!(!report.ok);
    }
    println!("PASS criterion 9: negative controls produce witnesses");
}

#[test]
fn criterion_10_homology_table() {
    let expected: &[(&str, &[usize], Option<i64>)] = &[
        ("empty", &[1], None),
        ("one-point", &[1, 1], None),
        ("two-points", &[1, 2], Some(-1)),
        ("two-lines", &[1, 2, 1], Some(0)),
        ("three-concurrent", &[1, 3, 2], Some(0)),
        ("three-generic", &[1, 3, 3], Some(1)),
        ("three-coord-planes", &[1, 3, 3, 1], Some(0)),
    ];
    for (name, a) in corpus::all() {
        let (fp, sys) = setup(&a);
        let m = base_model(&fp, &sys);
        let betti = betti_numbers(&m.complex);
        let (_, want, chi) = expected.iter().find(|(n, _, _)| *n == name).unwrap();
        assert_eq!(&betti, want, "{}", name);
        if let Some(chi) = chi {
            assert_eq!(euler_characteristic(&m.complex), *chi, "{}", name);
        }
        // Independent oracle: Whitney numbers of the intersection poset.
        let whitney: Vec<BigInt> = intersection_poset(&a).whitney_numbers();
        let betti_big: Vec<BigInt> = betti.iter().map(|&b| BigInt::from(b)).collect();
        let mut padded = betti_big.clone();
        padded.resize(whitney.len().max(padded.len()), BigInt::from(0));
        let mut wpad = whitney.clone();
        wpad.resize(padded.len(), BigInt::from(0));
        assert_eq!(padded, wpad, "{}", name);
    }
    println!("PASS criterion 10: homology table and Whitney oracle on (a)-(g)");
}
