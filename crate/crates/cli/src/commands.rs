use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use linarr::alexpipe::{alexander_bipencil, alexander_from_pencil, conjectural_alexander};
use linarr::arrangement::{
    is_bipencil, parse_arrangement, point_json, ArrangementError, ArrangementInput,
};
use linarr::cubical::{
    check_theorem2, fixtures, parse_diagram, reshape_2x2, semisimplicialize, CubicalDiagram,
    CubicalError, Embeddings, Theorem2Input,
};
use linarr::gradedalg::{infer_variables, parse_poly, quotient_dim, QuotientOptions};
use linarr::multinet::{configured_cap, search_multinets, search_size};
use linarr::resonance::aomoto_betti;
use linarr::spectrum::{
    infer_degree, parse_table, spectrum_to_table, steenbrink_spectrum, thom_sebastiani_join,
    SpectrumError,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::InputDigest;
use crate::{CliError, Command, CubeCheck, CubeCommand};

fn read(path: &Path, digest: &mut InputDigest) -> Result<String, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    digest.feed(b"file", text.as_bytes());
    Ok(text)
}

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn domain<E: Into<linarr::Error>>(e: E) -> CliError {
    CliError::Domain(e.into())
}

fn arrangement(path: &Path, digest: &mut InputDigest) -> Result<ArrangementInput, CliError> {
    parse_arrangement(&read(path, digest)?).map_err(domain)
}

fn var_refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

pub fn dispatch(cmd: &Command, digest: &mut InputDigest) -> Result<Value, CliError> {
    match cmd {
        Command::Lattice { file } => lattice(&arrangement(file, digest)?),
        Command::Multinet { file, k, mmax } => {
            let lattice = arrangement(file, digest)?.lattice();
            let cap = configured_cap();
            let found = search_multinets(&lattice, *k, *mmax, cap).map_err(domain)?;
            let found: Vec<Value> = found
                .iter()
                .map(|(c, v)| {
                    json!({
                        "classes": c.classes,
                        "multiplicities": c.multiplicities,
                        "base_locus": c.base_locus,
                        "level": v.level,
                        "d": v.d,
                        "violations": v.violations,
                    })
                })
                .collect();
            Ok(json!({
                "n_lines": lattice.n_lines(),
                "k": k,
                "mmax": mmax,
                "cap": cap.to_string(),
                "search_size": search_size(lattice.n_lines(), *k, *mmax).to_string(),
                "count": found.len(),
                "found": found,
            }))
        }
        Command::Betti { file, p } => {
            let lattice = arrangement(file, digest)?.lattice();
            Ok(value(&aomoto_betti(&lattice, *p).map_err(domain)?))
        }
        Command::Milnor {
            poly,
            vars,
            degree,
            weights,
            prime,
        } => {
            let vars = match vars {
                Some(v) => v.clone(),
                None => infer_variables(poly).map_err(domain)?,
            };
            let f = parse_poly(poly, &var_refs(&vars)).map_err(domain)?;
            let mut opts = QuotientOptions {
                weights: weights.clone(),
                ..Default::default()
            };
            if let Some(p) = prime {
                opts.check_prime = *p;
            }
            Ok(value(&quotient_dim(&f, *degree, &opts).map_err(domain)?))
        }
        Command::Spectrum {
            poly,
            weights,
            vars,
        } => {
            let vars = match vars {
                Some(v) => v.clone(),
                None => infer_variables(poly).map_err(domain)?,
            };
            let f = parse_poly(poly, &var_refs(&vars)).map_err(domain)?;
            if weights.len() != vars.len() {
                return Err(domain(SpectrumError::WeightCount {
                    expected: vars.len(),
                    got: weights.len(),
                }));
            }
            let d = infer_degree(&f, weights).ok_or_else(|| {
                domain(SpectrumError::NotWeightedHomogeneous {
                    degree: 0,
                    weights: weights.clone(),
                })
            })?;
            let sp = steenbrink_spectrum(&f, d, weights).map_err(domain)?;
            let table = spectrum_to_table(&sp, vars.len() as u32 - 1);
            Ok(json!({
                "polynomial": f.to_string(),
                "variables": vars,
                "weights": weights,
                "degree": d,
                "milnor_number": sp.iter().map(|e| e.nu).sum::<usize>(),
                "spectrum": sp,
                "table": table,
            }))
        }
        Command::Join { a, b } => {
            let ta = parse_table(&read(a, digest)?).map_err(domain)?;
            let tb = parse_table(&read(b, digest)?).map_err(domain)?;
            let j = thom_sebastiani_join(&ta, &tb);
            Ok(json!({
                "total_dimension": j.total_dimension(),
                "table": j,
            }))
        }
        Command::Alexander { file, conjectural } => {
            let input = arrangement(file, digest)?;
            if *conjectural {
                return Ok(value(
                    &conjectural_alexander(&input.lattice()).map_err(domain)?,
                ));
            }
            let report = match &input {
                ArrangementInput::BiPencil(bp) => alexander_from_pencil(bp),
                ArrangementInput::Lines(a) => alexander_bipencil(a),
                ArrangementInput::Lattice(_) => {
                    return Err(domain(ArrangementError::NoCoordinates));
                }
            }
            .map_err(domain)?;
            Ok(json!({
                "polynomial": report.polynomial.to_string(),
                "report": report,
            }))
        }
        Command::Cube { command } => cube(command, digest),
    }
}

fn lattice(input: &ArrangementInput) -> Result<Value, CliError> {
    let lattice = input.lattice();
    let points: Vec<Value> = lattice
        .points()
        .iter()
        .map(|p| {
            json!({
                "coords": p.coords.as_ref().map(point_json),
                "lines": p.incident,
                "multiplicity": p.multiplicity(),
            })
        })
        .collect();
    let counts: BTreeMap<String, usize> = lattice
        .multiplicity_counts()
        .into_iter()
        .map(|(m, c)| (m.to_string(), c))
        .collect();
    let cover = input.arrangement().and_then(|a| is_bipencil(&a)).map(|c| {
        json!({
            "p": c.p,
            "q": c.q,
            "p1": point_json(&c.p1.point),
            "p2": point_json(&c.p2.point),
        })
    });
    Ok(json!({
        "n_lines": lattice.n_lines(),
        "point_count": points.len(),
        "multiplicity_counts": counts,
        "points": points,
        "bipencil": cover,
    }))
}

fn diagram(path: &Path, digest: &mut InputDigest) -> Result<CubicalDiagram, CliError> {
    parse_diagram(&read(path, digest)?).map_err(domain)
}

fn cube(cmd: &CubeCommand, digest: &mut InputDigest) -> Result<Value, CliError> {
    match cmd {
        CubeCommand::Check(CubeCheck {
            dx,
            dy,
            sx,
            sy,
            embedding,
            dim_y,
            dim_sigma_x,
        }) => {
            let input = Theorem2Input {
                dx: diagram(dx, digest)?,
                dy: diagram(dy, digest)?,
                sx: diagram(sx, digest)?,
                sy: diagram(sy, digest)?,
                embeddings: serde_json::from_str::<Embeddings>(&read(embedding, digest)?)
                    .map_err(|e| domain(CubicalError::Format(e.to_string())))?,
                dim_y: *dim_y,
                dim_sigma_x: *dim_sigma_x,
            };
            Ok(value(&check_theorem2(&input).map_err(domain)?))
        }
        CubeCommand::Levels { file } => {
            let d = diagram(file, digest)?;
            Ok(value(&semisimplicialize(&d).map_err(domain)?))
        }
        CubeCommand::Reshape { file } => {
            let d = diagram(file, digest)?;
            Ok(value(&reshape_2x2(&d).map_err(domain)?))
        }
        CubeCommand::Fixture { case, out } => {
            let input = match case.as_str() {
                "equal" => fixtures::equal_pencils(2),
                "distinct" => fixtures::distinct_pencils(3, 5, 1, 1),
                _ => fixtures::codim_two_mutant(),
            };
            fs::create_dir_all(out).map_err(|e| CliError::Io {
                path: out.display().to_string(),
                message: e.to_string(),
            })?;
            let files = [
                ("dx.json", value(&input.dx)),
                ("dy.json", value(&input.dy)),
                ("sx.json", value(&input.sx)),
                ("sy.json", value(&input.sy)),
                ("embedding.json", value(&input.embeddings)),
            ];
            for (name, v) in &files {
                let path = out.join(name);
                let mut text = serde_json::to_string_pretty(v).expect("fixtures serialize");
                text.push('\n');
                fs::write(&path, text).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            Ok(json!({
                "case": case,
                "files": files.iter().map(|f| f.0).collect::<Vec<_>>(),
                "dim_y": input.dim_y,
                "dim_sigma_x": input.dim_sigma_x,
            }))
        }
    }
}
