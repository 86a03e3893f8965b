use std::path::{Path, PathBuf};

use dirac_core::geometry::curvature;
use dirac_core::hodge::{betti, BettiVector};
use dirac_core::spectral::{signless_euler_poincare, DiracFunction, GradedDiracEigen, Spectrum};
use dirac_core::{build_complex, Graph};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{load_graph, to_json};
use crate::error::{CliError, CliResult, EXIT_IDENTITY};
use crate::{Emitted, GlobalOpts};

/// Times used for the supertrace sweep in every report.
const SWEEP_TIMES: [(f64, f64); 3] = [(0.5, 0.0), (1.0, 0.0), (1.0, 2.0)];

#[derive(Serialize)]
struct ComplexityField {
    sign: i8,
    log_magnitude: f64,
}

#[derive(Serialize)]
struct Deviation {
    function: String,
    t: Complex64,
    deviation: f64,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    f_vector: Vec<usize>,
    euler_characteristic: i64,
    betti: BettiVector,
    dirac_spectrum: Spectrum,
    complexity: ComplexityField,
    signless_euler_poincare: usize,
    mckean_singer_deviations: Vec<Deviation>,
    curvature_total: String,
}

/// Builds the report and lists every internal inconsistency found.
pub fn analyze_graph(g: &Graph, opts: &GlobalOpts) -> CliResult<(AnalysisReport, Vec<String>)> {
    let c = build_complex(g, opts.max_dim);
    let mut problems = Vec::new();
    let chi = c.euler_characteristic();
    let b = betti(&c);
    if b.euler_characteristic() != chi {
        problems.push(format!("chi from f-vector {chi}, from Betti numbers {}", b.euler_characteristic()));
    }
    let eig = GradedDiracEigen::new(&c)?;
    let complexity = dirac_core::spectral::dirac_complexity(&c)?;
    let signless = signless_euler_poincare(&c)?;

    let v = c.size().max(1) as f64;
    let mut deviations = Vec::new();
    let times: Vec<Complex64> = opts.t.into_iter().chain(SWEEP_TIMES.iter().map(|&(a, b)| Complex64::new(a, b))).collect();
    for f in DiracFunction::ALL {
        for &t in &times {
            let r = eig.supertrace(f, t);
            if r.deviation.is_nan() || r.deviation > opts.tolerance * v {
                problems.push(format!("str exp({}) at t = {t} deviates by {:e}", f.label(), r.deviation));
            }
            deviations.push(Deviation { function: r.function, t, deviation: r.deviation });
        }
    }

    // Curvature sums to chi of the full clique complex, so it is only compared when untruncated.
    let curv = curvature(g)?;
    if opts.max_dim.is_none() && !curv.gauss_bonnet_holds() {
        problems.push(format!("curvature total {} differs from chi {chi}", curv.total));
    }

    let report = AnalysisReport {
        f_vector: c.f_vector(),
        euler_characteristic: chi,
        betti: b,
        dirac_spectrum: eig.spectrum.without_vectors(),
        complexity: ComplexityField { sign: complexity.sign, log_magnitude: complexity.log_magnitude },
        signless_euler_poincare: signless,
        mckean_singer_deviations: deviations,
        curvature_total: curv.total.to_string(),
    };
    Ok((report, problems))
}

fn analyze_file(path: &Path, opts: &GlobalOpts) -> CliResult<(Value, Vec<String>)> {
    let g = load_graph(path)?;
    let (report, problems) =
        analyze_graph(&g, opts).map_err(|e| match e {
            CliError::Core(source) => CliError::InFile { path: path.to_path_buf(), source },
            other => other,
        })?;
    Ok((to_json(&report), problems))
}

fn worker_count() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    std::env::var("DIRAC_GRAPH_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .map_or(available, |cap| cap.min(available))
}

fn list_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let io = |source| CliError::Io { path: dir.to_path_buf(), source };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let entry = entry.map_err(io)?;
        if entry.file_type().map_err(io)?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files)
}

pub fn analyze_path(path: &Path, opts: &GlobalOpts) -> CliResult<Emitted> {
    if !path.is_dir() {
        let (value, problems) = analyze_file(path, opts)?;
        let failure = (!problems.is_empty()).then(|| problems.join("; "));
        return Ok(Emitted { body: format!("{}\n", value), failure });
    }
    let files = list_files(path)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| CliError::Argument(format!("cannot start worker pool: {e}")))?;
    let results: Vec<(Value, u8)> = pool.install(|| {
        files
            .par_iter()
            .map(|file| {
                let name = file.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                let outcome = std::panic::catch_unwind(|| analyze_file(file, opts));
                match outcome {
                    Ok(Ok((report, problems))) if problems.is_empty() => {
                        (json!({ "file": name, "exit_code": 0, "report": report }), 0)
                    }
                    Ok(Ok((report, problems))) => (
                        json!({ "file": name, "exit_code": EXIT_IDENTITY, "report": report, "problems": problems }),
                        EXIT_IDENTITY,
                    ),
                    Ok(Err(e)) => {
                        let code = e.exit_code();
                        (json!({ "file": name, "exit_code": code, "error": e.to_string() }), code)
                    }
                    Err(_) => (json!({ "file": name, "exit_code": EXIT_IDENTITY, "error": "internal panic" }), EXIT_IDENTITY),
                }
            })
            .collect()
    });
    let worst = results.iter().map(|r| r.1).max().unwrap_or(0);
    let mut value = Value::Array(results.into_iter().map(|r| r.0).collect());
    dirac_core::export::round_json(&mut value);
    let body = format!("{value}\n");
    if worst == 0 {
        Ok(Emitted::ok(body))
    } else if worst == EXIT_IDENTITY {
        Ok(Emitted { body, failure: Some("at least one file failed an identity check".into()) })
    } else {
        print!("{body}");
        Err(CliError::Argument("at least one file could not be read or parsed".into()))
    }
}
