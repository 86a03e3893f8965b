use std::path::Path;

use dirac_core::cochain::Cochain;
use dirac_core::dynamics::DiracFlow;
use dirac_core::export::{evolution_csv, format_number, matrix_coo, matrix_csv, round_json, spectrum_csv};
use dirac_core::geometry::{
    closed_path_parity, curvature as curvature_report, handshake_check, isospectral_check, spectral_distance,
    IsospectralLevel,
};
use dirac_core::hodge::{betti as betti_vector, harmonic_basis, hodge_decompose};
use dirac_core::homotopy::{cech_betti_check, contract as contract_graph, nerve as build_nerve, CechOutcome, Cover};
use dirac_core::operators::{dirac, incidence, laplacian};
use dirac_core::spectral::{dirac_spectrum, laplacian_spectra, DiracFunction, GradedDiracEigen, Grading, Spectrum};
use dirac_core::{build_complex, generators, Graph, SimplicialComplex};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::{Check, Emitted, Evolution, Format, GlobalOpts, Operator};

pub fn to_json<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    round_json(&mut v);
    v
}

fn json_body<T: Serialize>(value: &T) -> String {
    format!("{}\n", to_json(value))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn load_graph(path: &Path) -> CliResult<Graph> {
    Graph::parse(&read(path)?).map_err(|source| CliError::InFile { path: path.to_path_buf(), source })
}

fn load_complex(path: &Path, opts: &GlobalOpts) -> CliResult<(Graph, SimplicialComplex)> {
    let g = load_graph(path)?;
    let c = build_complex(&g, opts.max_dim);
    Ok((g, c))
}

fn checked(body: String, passed: bool, what: &str) -> Emitted {
    Emitted { body, failure: (!passed).then(|| what.to_string()) }
}

fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

pub fn gen(name: &str, n: Option<usize>) -> CliResult<Emitted> {
    Ok(Emitted::ok(generators::generate(name, n)?.serialize()))
}

pub fn spectrum(file: &Path, operator: Operator, opts: &GlobalOpts) -> CliResult<Emitted> {
    let (_, c) = load_complex(file, opts)?;
    let format = opts.format.unwrap_or(Format::Json);
    match operator {
        Operator::Dirac => {
            let s = dirac_spectrum(&c)?.without_vectors();
            Ok(Emitted::ok(match format {
                Format::Json => json_body(&s),
                Format::Csv => spectrum_csv(&s),
            }))
        }
        Operator::Laplacian => {
            let blocks: Vec<Spectrum> = laplacian_spectra(&c)?.into_iter().map(Spectrum::without_vectors).collect();
            Ok(Emitted::ok(match format {
                Format::Json => json_body(&blocks),
                Format::Csv => {
                    let mut eigenvalues = Vec::new();
                    let mut degrees = Vec::new();
                    for (p, s) in blocks.iter().enumerate() {
                        eigenvalues.extend(&s.eigenvalues);
                        degrees.extend(std::iter::repeat_n(p, s.len()));
                    }
                    let zero_tolerance = blocks.iter().map(|s| s.zero_tolerance).fold(0.0, f64::max);
                    spectrum_csv(&Spectrum {
                        eigenvalues,
                        eigenvectors: None,
                        grading: Grading::Degree(degrees),
                        zero_tolerance,
                    })
                }
            }))
        }
        Operator::Incidence => Err(CliError::Argument("spectrum supports --operator dirac or laplacian".into())),
    }
}

pub fn betti(file: &Path, opts: &GlobalOpts) -> CliResult<Emitted> {
    let (_, c) = load_complex(file, opts)?;
    let b = betti_vector(&c);
    Ok(Emitted::ok(json_body(&json!({ "betti": b, "euler_characteristic": b.euler_characteristic() }))))
}

pub fn verify(check: Check, file: &Path, opts: &GlobalOpts) -> CliResult<Emitted> {
    let (g, c) = load_complex(file, opts)?;
    let tol = opts.tolerance;
    match check {
        Check::MckeanSinger => {
            let eig = GradedDiracEigen::new(&c)?;
            let v = c.size().max(1) as f64;
            let mut times = vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0)];
            times.push(opts.t.unwrap_or(Complex64::new(2.0, 3.0)));
            let cases: Vec<_> =
                DiracFunction::ALL.iter().flat_map(|&f| times.iter().map(move |&t| (f, t))).map(|(f, t)| eig.supertrace(f, t)).collect();
            let passed = cases.iter().all(|r| r.deviation <= tol * v);
            let body = json_body(&json!({
                "check": "mckean-singer",
                "passed": passed,
                "euler_characteristic": c.euler_characteristic(),
                "tolerance": tol * v,
                "cases": cases,
            }));
            Ok(checked(body, passed, "supertrace differs from the Euler characteristic"))
        }
        Check::GaussBonnet => {
            let r = curvature_report(&g)?;
            let passed = r.gauss_bonnet_holds();
            let body = json_body(&json!({ "check": "gauss-bonnet", "passed": passed, "report": r }));
            Ok(checked(body, passed, "curvature does not sum to the Euler characteristic"))
        }
        Check::Handshake => {
            let r = handshake_check(&c);
            let passed = r.full_holds() && r.telescopes();
            let body = json_body(&json!({
                "check": "handshake",
                "passed": passed,
                "literal_holds_below_top": r.literal_holds_below_top(),
                "report": r,
            }));
            Ok(checked(body, passed, "Laplacian traces do not match the simplex counts"))
        }
        Check::Parity => {
            let mut rows = Vec::new();
            let mut passed = true;
            for length in [2u32, 4, 6] {
                let (even, odd) = closed_path_parity(&c, length)?;
                passed &= even == odd;
                rows.push(json!({ "length": length, "even": even.to_string(), "odd": odd.to_string() }));
            }
            let body = json_body(&json!({ "check": "parity", "passed": passed, "rows": rows }));
            Ok(checked(body, passed, "closed walks from even and odd simplices differ"))
        }
        Check::Hodge => {
            let b = betti_vector(&c);
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut rows = Vec::new();
            let mut passed = true;
            for p in 0..c.levels() {
                let harmonic = harmonic_basis(&c, p)?.len();
                let values = random_values(&mut rng, c.v(p));
                let g = Cochain::graded(p, values);
                let split = hodge_decompose(&c, p, &g)?;
                let sum = split.sum();
                let reconstruction = sum.iter().zip(&g.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                let scale = g.norm().max(1.0);
                let ok = harmonic == b.get(p) && split.max_overlap() <= tol * scale && reconstruction <= tol * scale;
                passed &= ok;
                rows.push(json!({
                    "degree": p,
                    "betti": b.get(p),
                    "numeric_kernel": harmonic,
                    "max_overlap": split.max_overlap(),
                    "reconstruction_error": reconstruction,
                    "passed": ok,
                }));
            }
            let body = json_body(&json!({ "check": "hodge", "passed": passed, "seed": opts.seed, "degrees": rows }));
            Ok(checked(body, passed, "Hodge decomposition is not orthogonal or kernels disagree"))
        }
    }
}

fn real_time(opts: &GlobalOpts) -> CliResult<f64> {
    let t = opts.t.unwrap_or(Complex64::new(1.0, 0.0));
    if t.im != 0.0 {
        return Err(CliError::Argument(format!("this evolution needs a real --t, got {t}")));
    }
    Ok(t.re)
}

pub fn evolve(kind: Evolution, file: &Path, opts: &GlobalOpts) -> CliResult<Emitted> {
    let (_, c) = load_complex(file, opts)?;
    let flow = DiracFlow::new(&c)?;
    let n = flow.size();
    let steps = opts.steps.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let trace = match kind {
        Evolution::Heat => {
            let direction = opts.t.unwrap_or(Complex64::new(1.0, 0.0));
            let times: Vec<f64> = (0..=steps).map(|k| k as f64 / steps as f64).collect();
            let f0 = Cochain::total(random_values(&mut rng, n)).to_complex();
            flow.heat_trace(&f0, direction, &times)?
        }
        Evolution::Wave | Evolution::Schrodinger => {
            let end = real_time(opts)?;
            let times: Vec<f64> = (0..=steps).map(|k| end * k as f64 / steps as f64).collect();
            let u0 = Cochain::total(random_values(&mut rng, n));
            let raw = random_values(&mut rng, n);
            let h = flow.harmonic_projection(&raw);
            let v0 = Cochain::total(raw.iter().zip(&h).map(|(a, b)| a - b).collect());
            if kind == Evolution::Wave {
                flow.wave_trace(&u0, &v0, &times)?
            } else {
                flow.schrodinger_trace(&flow.wave_to_psi(&u0, &v0), &times)?
            }
        }
        Evolution::Map => {
            let scale = match opts.t {
                Some(t) if t.im != 0.0 => return Err(CliError::Argument(format!("map scale must be real, got {t}"))),
                Some(t) => Some(t.re),
                None => None,
            };
            let f = Cochain::total(random_values(&mut rng, n));
            let g = Cochain::total(random_values(&mut rng, n));
            flow.map_trace(&f, &g, opts.steps, scale)?
        }
    };
    Ok(Emitted::ok(match opts.format.unwrap_or(Format::Csv) {
        Format::Csv => evolution_csv(&trace),
        Format::Json => json_body(&trace),
    }))
}

pub fn compare(first: &Path, second: &Path, opts: &GlobalOpts) -> CliResult<Emitted> {
    let (_, cg) = load_complex(first, opts)?;
    let (_, ch) = load_complex(second, opts)?;
    let report = spectral_distance(&cg, &ch)?;
    let mut levels = serde_json::Map::new();
    for level in [IsospectralLevel::Adjacency, IsospectralLevel::L0, IsospectralLevel::AllForms, IsospectralLevel::Dirac] {
        let v = isospectral_check(&cg, &ch, level)?;
        levels.insert(to_json(&level).as_str().unwrap_or_default().to_string(), to_json(&v));
    }
    let mut value = to_json(&report);
    value["isospectral"] = Value::Object(levels);
    let body = format!("{value}\n");
    Ok(checked(body, report.bound_holds, "spectral distance exceeds the Lidskii bound"))
}

pub fn curvature(file: &Path, opts: &GlobalOpts) -> CliResult<Emitted> {
    let g = load_graph(file)?;
    let r = curvature_report(&g)?;
    let body = match opts.format.unwrap_or(Format::Csv) {
        Format::Json => json_body(&r),
        Format::Csv => {
            let mut out = String::from("vertex,curvature,value\n");
            for (x, k) in r.per_vertex.iter().enumerate() {
                let value = *k.numer() as f64 / *k.denom() as f64;
                out.push_str(&format!("{x},{k},{}\n", format_number(value)));
            }
            out
        }
    };
    Ok(checked(body, r.gauss_bonnet_holds(), "curvature does not sum to the Euler characteristic"))
}

pub fn nerve(graph: &Path, cover: &Path, opts: &GlobalOpts) -> CliResult<Emitted> {
    let g = load_graph(graph)?;
    let cover =
        Cover::parse(&read(cover)?).map_err(|source| CliError::InFile { path: cover.to_path_buf(), source })?;
    let n = build_nerve(&g, &cover)?;
    let cech = cech_betti_check(&g, &cover)?;
    let passed = cech.outcome != CechOutcome::Mismatch;
    let body = match opts.format.unwrap_or(Format::Csv) {
        Format::Json => json_body(&json!({ "nerve": n, "cech": cech })),
        Format::Csv => format!(
            "{}# validation {}\n# cech {}\n",
            n.graph.serialize(),
            to_json(&n.validation),
            to_json(&cech)
        ),
    };
    Ok(checked(body, passed, "valid cover whose nerve has different Betti numbers"))
}

pub fn contract(file: &Path, opts: &GlobalOpts) -> CliResult<Emitted> {
    let g = load_graph(file)?;
    let r = contract_graph(&g);
    let before = betti_vector(&build_complex(&g, opts.max_dim));
    let after = betti_vector(&build_complex(&r.reduced.graph, opts.max_dim));
    let trim = |b: &[usize]| b[..b.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1)].to_vec();
    let passed = trim(&before.b) == trim(&after.b);
    let body = json_body(&json!({
        "removed": r.removed,
        "reduced": { "labels": r.reduced.labels, "edge_list": r.reduced.graph.serialize() },
        "betti_before": before,
        "betti_after": after,
    }));
    Ok(checked(body, passed, "contraction changed the Betti numbers"))
}

pub fn matrix(file: &Path, operator: Operator, degree: Option<usize>, coo: bool, opts: &GlobalOpts) -> CliResult<Emitted> {
    let (_, c) = load_complex(file, opts)?;
    let (m, offsets): (DMatrix<f64>, Vec<usize>) = match (operator, degree) {
        (Operator::Dirac, None) => {
            let d = dirac(&c);
            (d.to_f64(), d.offsets.clone())
        }
        (Operator::Dirac, Some(_)) => return Err(CliError::Argument("--degree does not apply to the Dirac matrix".into())),
        (Operator::Laplacian, None) => (laplacian(&c).assemble().map(|x| x as f64), c.offsets().to_vec()),
        (Operator::Laplacian, Some(p)) => {
            let blocks = laplacian(&c);
            let block = blocks
                .block(p)
                .ok_or(dirac_core::Error::DegreeOutOfRange { p, limit: c.levels().saturating_sub(1) })?;
            (block.map(|x| x as f64), vec![0, block.nrows()])
        }
        (Operator::Incidence, p) => {
            let d = incidence(&c, p.unwrap_or(0))?.to_dense();
            (d.map(|x| x as f64), vec![0, d.nrows()])
        }
    };
    let body = match (opts.format, coo) {
        (Some(Format::Json), _) => {
            let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
            json_body(&json!({ "rows": m.nrows(), "cols": m.ncols(), "offsets": offsets, "data": rows }))
        }
        (_, true) => matrix_coo(&m, &offsets),
        (_, false) => matrix_csv(&m, &offsets),
    };
    Ok(Emitted::ok(body))
}
