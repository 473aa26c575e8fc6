use clap::{Parser, Subcommand, ValueEnum};
use salvetti::arrangement::{enumerate_faces, intersection_poset, parse_arrangement, Arrangement, FacePoset};
use salvetti::covers::{
    build_cover, crossing_labeling, parse_deck, universal_cover_ball, validate_deck,
    validate_deck_exhaustive, winding_labeling, CoverGraph, DeckLabeling, ValidatedDeck,
};
use salvetti::diagrams::{diagram_falk, diagram_id, mu_star, plim};
use salvetti::invariants::{
    betti_numbers, euler_characteristic, homology_summary, pi1_presentation, summary_text,
};
use salvetti::model::{
    ball_model, base_model, cell_signatures, cover_model, covering_report_text, cw_structure,
    iso_check, lambda_map, salvetti_direct, verify_covering,
};
use salvetti::oriented::{gamma_of, OrientedSystem};
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "salvetti", version, about = "Combinatorial models for covers of complexified arrangement complements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Face poset and intersection poset of an arrangement
    Faces {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The Salvetti complex, built directly from chains of faces
    Salvetti {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Validate a deck labeling and build the cover graph
    Cover {
        file: String,
        /// winding:k, crossing:k, or a deck file path
        #[arg(long)]
        deck: String,
        /// Also compare permutations over all positive minimal path pairs
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The diagram model W_rho and its comparison with the base
    Model {
        file: String,
        #[arg(long, default_value = "winding:1")]
        deck: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// A radius-limited fragment of the universal cover and its model
    Universal {
        file: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The local-limit diagram over the opposite face poset
    Falk {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Topological invariants of the model of a cover
    Invariants {
        file: String,
        #[arg(long, default_value = "winding:1")]
        deck: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the whole property suite on an arrangement
    Verify {
        file: String,
        #[arg(long, default_value = "winding:2")]
        deck: String,
        #[arg(long)]
        exhaustive: bool,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn load(file: &str) -> Result<(Arrangement, FacePoset, OrientedSystem), String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {}", file, e))?;
    let a = parse_arrangement(&text).map_err(|e| format!("{}: {}", file, e))?;
    let fp = enumerate_faces(&a);
    let sys = gamma_of(&fp);
    Ok((a, fp, sys))
}

fn resolve_deck(spec: &str, sys: &OrientedSystem) -> Result<DeckLabeling, String> {
    if let Some(k) = spec.strip_prefix("winding:") {
        let k: usize = k.parse().map_err(|_| format!("bad winding degree `{}`", k))?;
        if k == 0 {
            return Err("winding degree must be positive".into());
        }
        return Ok(winding_labeling(sys, k));
    }
    if let Some(k) = spec.strip_prefix("crossing:") {
        let k: usize = k.parse().map_err(|_| format!("bad crossing degree `{}`", k))?;
        if k == 0 {
            return Err("crossing degree must be positive".into());
        }
        return Ok(crossing_labeling(sys, k));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("{}: {}", spec, e))?;
    parse_deck(sys, &text).map_err(|e| format!("{}: {}", spec, e))
}

fn validated_cover(
    fp: &FacePoset,
    sys: &OrientedSystem,
    spec: &str,
) -> Result<Result<CoverGraph, Vec<String>>, String> {
    let labeling = resolve_deck(spec, sys)?;
    let report = validate_deck(fp, sys, &labeling).map_err(|e| e.to_string())?;
    if !report.ok() {
        let violations = report
            .violations
            .iter()
            .map(|v| format!("pair {}: {} vs {}", v.pair_index, v.gamma1, v.gamma2))
            .collect();
        return Ok(Err(violations));
    }
    Ok(Ok(build_cover(sys, &ValidatedDeck { labeling })))
}

fn cmd_faces(file: &str, format: Format) -> Result<ExitCode, String> {
    let (a, fp, _) = load(file)?;
    let ip = intersection_poset(&a);
    match format {
        Format::Json => {
            let faces: Vec<serde_json::Value> = fp
                .faces
                .iter()
                .map(|f| serde_json::json!({"label": f.label(), "codim": f.codim}))
                .collect();
            let flats: Vec<serde_json::Value> = ip
                .flats
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "hyperplanes": f.hyperplanes,
                        "rank": f.rank,
                        "moebius": f.moebius.to_string(),
                    })
                })
                .collect();
            let chambers: Vec<String> = fp.chambers.iter().map(|&c| fp.faces[c].label()).collect();
            println!(
                "{}",
                serde_json::json!({
                    "dim": a.dim,
                    "hyperplanes": a.hyperplanes.len(),
                    "faces": faces,
                    "chambers": chambers,
                    "flats": flats,
                    "whitney": ip.whitney_numbers().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                })
            );
        }
        Format::Text => {
            println!("dimension {}, {} hyperplanes", a.dim, a.hyperplanes.len());
            println!("{} faces, {} chambers", fp.faces.len(), fp.chambers.len());
            for f in &fp.faces {
                println!("  {}  codim {}", f.label(), f.codim);
            }
            println!("{} flats, whitney numbers {:?}", ip.flats.len(), ip.whitney_numbers());
        }
        Format::Dot => {
            let finite = salvetti::diagrams::face_poset_as_finite(&fp);
            let mut out = String::from("digraph faces {\n");
            for (i, l) in finite.labels.iter().enumerate() {
                let _ = writeln!(out, "  f{} [label=\"{}\"];", i, l);
            }
            for (lo, hi) in finite.cover_pairs() {
                let _ = writeln!(out, "  f{} -> f{};", hi, lo);
            }
            out.push_str("}\n");
            print!("{}", out);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn complex_json(k: &salvetti::complex::SimplicialComplex) -> serde_json::Value {
    serde_json::json!({
        "vertices": k.vertices,
        "maximal_simplices": k.maximal_simplices,
    })
}

fn cmd_salvetti(file: &str, format: Format) -> Result<ExitCode, String> {
    let (_, fp, sys) = load(file)?;
    let direct = salvetti_direct(&fp, &sys);
    let model = base_model(&fp, &sys);
    let report = iso_check(&model.complex, &direct);
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "complex": complex_json(&direct),
                    "plim_elements": model.lim.poset.labels,
                    "iso_with_limit_model": report.iso,
                })
            );
        }
        Format::Text => {
            println!(
                "salvetti complex: {} vertices, {} maximal simplices",
                direct.vertices.len(),
                direct.maximal_simplices.len()
            );
            println!(
                "limit model Plim(D_id): {} elements; label isomorphism: {}",
                model.lim.poset.labels.len(),
                if report.iso { "ok" } else { "FAILED" }
            );
            print!("{}", summary_text(&direct));
        }
        Format::Dot => return Err("dot output is not defined for complexes".into()),
    }
    Ok(if report.iso { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_cover(file: &str, deck: &str, exhaustive: bool, format: Format) -> Result<ExitCode, String> {
    let (_, fp, sys) = load(file)?;
    let cover = match validated_cover(&fp, &sys, deck)? {
        Ok(c) => c,
        Err(violations) => {
            println!("deck validation FAILED:");
            for v in violations {
                println!("  {}", v);
            }
            return Ok(ExitCode::FAILURE);
        }
    };
    if exhaustive {
        let bad = validate_deck_exhaustive(&sys, &cover.labeling);
        if !bad.is_empty() {
            println!("exhaustive validation FAILED on {} path pairs", bad.len());
            return Ok(ExitCode::FAILURE);
        }
    }
    match format {
        Format::Json => {
            let edges: Vec<serde_json::Value> = cover
                .graph
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    serde_json::json!({
                        "src": cover.graph.vertex_labels[e.src],
                        "tgt": cover.graph.vertex_labels[e.tgt],
                        "base_edge": cover.edge_base[i],
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "degree": cover.degree,
                    "vertices": cover.graph.vertex_labels,
                    "edges": edges,
                    "components": cover.component_count,
                })
            );
        }
        Format::Text => {
            println!("deck validated (degree {})", cover.degree);
            println!(
                "cover graph: {} vertices, {} edges, {} component(s)",
                cover.graph.vertex_labels.len(),
                cover.graph.edges.len(),
                cover.component_count
            );
            for comp in 0..cover.component_count {
                println!("  component {}: fibers {:?}", comp, cover.fiber_sizes(comp));
            }
        }
        Format::Dot => {
            let mut out = String::from("digraph cover {\n");
            for (i, l) in cover.graph.vertex_labels.iter().enumerate() {
                let _ = writeln!(out, "  v{} [label=\"{}\"];", i, l);
            }
            for e in &cover.graph.edges {
                let _ = writeln!(out, "  v{} -> v{};", e.src, e.tgt);
            }
            out.push_str("}\n");
            print!("{}", out);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_model(file: &str, deck: &str, format: Format) -> Result<ExitCode, String> {
    let (_, fp, sys) = load(file)?;
    let cover = match validated_cover(&fp, &sys, deck)? {
        Ok(c) => c,
        Err(violations) => {
            println!("deck validation FAILED: {} violation(s)", violations.len());
            return Ok(ExitCode::FAILURE);
        }
    };
    let base = base_model(&fp, &sys);
    let w = cover_model(&fp, &cover);
    let lambda = lambda_map(&cover, &w, &base).map_err(|e| e.to_string())?;
    let covering = verify_covering(&w.complex, &base.complex, &lambda);
    let cw = cw_structure(&fp, &cover, &w);
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "complex": complex_json(&w.complex),
                    "cw_counts": cw.counts,
                    "covering": {
                        "ok": covering.ok,
                        "degrees": covering.degrees,
                        "failures": covering.failures,
                    },
                })
            );
        }
        Format::Text => {
            println!(
                "W_rho: {} limit elements, {} maximal simplices",
                w.lim.poset.labels.len(),
                w.complex.maximal_simplices.len()
            );
            println!("cw cells by dimension: {:?}", cw.counts);
            print!("{}", covering_report_text(&covering));
            print!("{}", summary_text(&w.complex));
        }
        Format::Dot => return Err("dot output is not defined for models".into()),
    }
    Ok(if covering.ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_universal(file: &str, radius: usize, format: Format) -> Result<ExitCode, String> {
    let (_, fp, sys) = load(file)?;
    let ball = universal_cover_ball(&fp, &sys, radius);
    let bm = ball_model(&fp, &sys, &ball);
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "radius": radius,
                    "exact": ball.exact,
                    "vertices": ball.labels,
                    "edges": ball.edges,
                    "model": complex_json(&bm.complex),
                    "betti": betti_numbers(&bm.complex),
                })
            );
        }
        Format::Text => {
            println!(
                "universal cover ball, radius {}: {} vertices, {} edges ({})",
                radius,
                ball.vertices.len(),
                ball.edges.len(),
                if ball.exact { "exact" } else { "heuristic rewriting" }
            );
            println!(
                "ball model: {} elements, betti {:?}",
                bm.elements.len(),
                betti_numbers(&bm.complex)
            );
        }
        Format::Dot => {
            let mut out = String::from("digraph ball {\n");
            for (i, l) in ball.labels.iter().enumerate() {
                let _ = writeln!(out, "  v{} [label=\"{}\"];", i, l);
            }
            for &(s, t, _) in &ball.edges {
                let _ = writeln!(out, "  v{} -> v{};", s, t);
            }
            out.push_str("}\n");
            print!("{}", out);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_falk(file: &str, format: Format) -> Result<ExitCode, String> {
    let (_, fp, sys) = load(file)?;
    let e = diagram_falk(&fp, &sys);
    match format {
        Format::Json => {
            let spaces: Vec<serde_json::Value> = e
                .index
                .labels
                .iter()
                .enumerate()
                .map(|(i, l)| serde_json::json!({"face": l, "space": e.spaces[i].to_json()}))
                .collect();
            println!(
                "{}",
                serde_json::json!({"index": e.index.to_json(), "spaces": spaces})
            );
        }
        Format::Text => {
            println!("diagram E over the opposite face poset:");
            for (i, l) in e.index.labels.iter().enumerate() {
                println!("  E({}) has {} elements", l, e.spaces[i].len());
            }
        }
        Format::Dot => return Err("dot output is not defined for diagrams".into()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_invariants(file: &str, deck: &str, format: Format) -> Result<ExitCode, String> {
    let (_, fp, sys) = load(file)?;
    let cover = match validated_cover(&fp, &sys, deck)? {
        Ok(c) => c,
        Err(violations) => {
            println!("deck validation FAILED: {} violation(s)", violations.len());
            return Ok(ExitCode::FAILURE);
        }
    };
    let w = cover_model(&fp, &cover);
    let h = homology_summary(&w.complex);
    // pi_1 of the basepoint component.
    let component = match w.complex.support().first() {
        Some(&v) => w.complex.component_of(v),
        None => w.complex.clone(),
    };
    let pres = pi1_presentation(&component);
    let (free_rank, torsion) = pres.abelianization();
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "euler": euler_characteristic(&w.complex),
                    "betti": h.betti,
                    "torsion": h.torsion.iter().map(|t| t.iter().map(|f| f.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "pi1": {
                        "generators": pres.generators.len(),
                        "relators": pres.relators.len(),
                        "abelianization_rank": free_rank,
                        "abelianization_torsion": torsion.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    },
                })
            );
        }
        Format::Text => {
            print!("{}", summary_text(&w.complex));
            println!(
                "pi_1: {} generators, {} relators",
                pres.generators.len(),
                pres.relators.len()
            );
            if pres.generators.len() <= 24 {
                println!("pi_1 presentation: {}", pres.render());
            }
            println!("abelianization: rank {} torsion {:?}", free_rank, torsion);
        }
        Format::Dot => return Err("dot output is not defined for invariants".into()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(file: &str, deck: &str, exhaustive: bool) -> Result<ExitCode, String> {
    let (a, fp, sys) = load(file)?;
    let mut ok = true;
    let mut check = |name: &str, passed: bool| {
        println!("{} {}", if passed { "ok  " } else { "FAIL" }, name);
        ok &= passed;
    };

    // Zaslavsky: chamber count equals the sum of |mu| over the flats.
    let ip = intersection_poset(&a);
    let whitney = ip.whitney_numbers();
    let chamber_count: num::BigInt = whitney.iter().sum();
    check(
        "chamber count matches Zaslavsky's formula",
        num::BigInt::from(fp.chambers.len()) == chamber_count,
    );

    let base = base_model(&fp, &sys);
    let direct = salvetti_direct(&fp, &sys);
    check(
        "Plim(D_id) model is isomorphic to the Salvetti complex",
        iso_check(&base.complex, &direct).iso,
    );

    let betti = betti_numbers(&base.complex);
    let whitney_usize: Vec<usize> = whitney.iter().map(|w| w.to_string().parse().unwrap()).collect();
    let mut padded = betti.clone();
    padded.resize(whitney_usize.len().max(padded.len()), 0);
    let mut wpad = whitney_usize.clone();
    wpad.resize(padded.len(), 0);
    check("Betti numbers of the model equal the Whitney numbers", padded == wpad);

    let d_id = diagram_id(&fp, &sys);
    let (pulled, _) = mu_star(&d_id);
    let subdivided = plim(&pulled);
    if subdivided.poset.len() <= 150 {
        check(
            "mu_star pullback preserves the homology of the limit",
            betti_numbers(&subdivided.poset.order_complex()) == betti,
        );
    } else {
        println!(
            "skip mu_star homology comparison ({} subdivided elements)",
            subdivided.poset.len()
        );
    }

    let labeling = resolve_deck(deck, &sys)?;
    let report = validate_deck(&fp, &sys, &labeling).map_err(|e| e.to_string())?;
    check("deck labeling satisfies the generating relations", report.ok());
    if exhaustive {
        check(
            "deck labeling is constant on all positive minimal path pairs",
            validate_deck_exhaustive(&sys, &labeling).is_empty(),
        );
    }
    if report.ok() {
        let cover = build_cover(&sys, &ValidatedDeck { labeling });
        let w = cover_model(&fp, &cover);
        let lambda = lambda_map(&cover, &w, &base).map_err(|e| e.to_string())?;
        let covering = verify_covering(&w.complex, &base.complex, &lambda);
        check("Lambda_rho is a covering of the base model", covering.ok);
        check("limit elements carry ball/sphere cell signatures", cell_signatures(&fp, &w).is_ok());
        // pi_1 lives on the basepoint component; compare with its H_1.
        let base_vertex = w.complex.support()[0];
        let component = w.complex.component_of(base_vertex);
        let pres = pi1_presentation(&component);
        let (rank, torsion) = pres.abelianization();
        let h = homology_summary(&component);
        let h1 = h.betti.get(1).copied().unwrap_or(0);
        let h1_torsion = h.torsion.get(1).cloned().unwrap_or_default();
        check(
            "pi_1 abelianization agrees with H_1 of its component",
            rank == h1 && torsion == h1_torsion,
        );
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Faces { file, format } => cmd_faces(file, *format),
        Command::Salvetti { file, format } => cmd_salvetti(file, *format),
        Command::Cover { file, deck, exhaustive, format } => cmd_cover(file, deck, *exhaustive, *format),
        Command::Model { file, deck, format } => cmd_model(file, deck, *format),
        Command::Universal { file, radius, format } => cmd_universal(file, *radius, *format),
        Command::Falk { file, format } => cmd_falk(file, *format),
        Command::Invariants { file, deck, format } => cmd_invariants(file, deck, *format),
        Command::Verify { file, deck, exhaustive } => cmd_verify(file, deck, *exhaustive),
    };
    match result {
        Ok(code) => code,
        Err(msg) => usage_error(&msg),
    }
}
