//! Command dispatch shared by the binary and the integration tests.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dense::charpoly;
use crate::error::{Error, Result};
use crate::input::{MatrixInput, MatrixSpecFile};
use crate::mixed::{self, InitialConditions};
use crate::moments;
use crate::neville;
use crate::report::{digest, fmt_float, Report, Section};

/// One CLI invocation.
#[derive(Debug, Clone)]
pub enum Command {
    Factorize { n: usize },
    Spectrum { n: usize },
    Measure { n: usize },
    Weyl { n: usize, z: Complex64 },
    Moments { n: usize },
    Quadrature { n: usize },
    Verify { suite: VerifySuite, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifySuite {
    Cd,
    Interlacing,
    Biorthogonality,
    Darboux,
    GaussBorel,
}

impl VerifySuite {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "cd" => VerifySuite::Cd,
            "interlacing" => VerifySuite::Interlacing,
            "biorthogonality" => VerifySuite::Biorthogonality,
            "darboux" => VerifySuite::Darboux,
            "gaussborel" => VerifySuite::GaussBorel,
            other => {
                return Err(Error::Invalid(format!(
                    "unknown verify suite \"{other}\" (cd, interlacing, biorthogonality, darboux, gaussborel)"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            VerifySuite::Cd => "cd",
            VerifySuite::Interlacing => "interlacing",
            VerifySuite::Biorthogonality => "biorthogonality",
            VerifySuite::Darboux => "darboux",
            VerifySuite::GaussBorel => "gaussborel",
        }
    }
}

pub struct Options {
    pub seed: u64,
    pub tol: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, tol: 1e-9 }
    }
}

/// Runs a command against a parsed description and builds the report.
pub fn run_command(spec: &MatrixSpecFile, command: &Command, opts: &Options) -> Result<Report> {
    let input_bytes = crate::input::emit_input(spec);
    let dig = digest(&input_bytes);
    let matrix = spec.to_matrix()?;
    let ic = spec.initial_conditions();
    match command {
        Command::Factorize { n } => factorize_report(&matrix, *n, dig),
        Command::Spectrum { n } => spectrum_report(&matrix, &ic, *n, dig),
        Command::Measure { n } => measure_report(&matrix, &ic, *n, dig),
        Command::Weyl { n, z } => weyl_report(&matrix, &ic, *n, *z, dig),
        Command::Moments { n } => moments_report(&matrix, &ic, *n, dig),
        Command::Quadrature { n } => quadrature_report(&matrix, &ic, *n, dig),
        Command::Verify { suite, n } => verify_report(&matrix, &ic, *suite, *n, dig, opts),
    }
}

fn factorize_report(matrix: &MatrixInput, n: usize, dig: String) -> Result<Report> {
    let banded = matrix.to_banded()?;
    let trunc = banded.truncate(n)?;
    let fact = neville::factorize(&trunc, banded.p(), banded.q())?;
    let osc = neville::is_oscillatory(&trunc);
    let mut report = Report::new("factorize", dig);
    let mut s = Section::new("factorization")
        .scalar("n", n.to_string())
        .scalar("positive", fact.positive.to_string())
        .scalar("oscillatory", osc.oscillatory.to_string());
    if let Some(v) = &fact.first_violation {
        s = s.scalar(
            "first_violation",
            format!(
                "{} index {} value {}",
                v.factor,
                v.index,
                fmt_float(v.value)
            ),
        );
    }
    let mut rows = Vec::new();
    for (k, l) in fact.lowers.iter().enumerate() {
        for (i, &v) in l.iter().enumerate() {
            rows.push(vec![format!("L{}", k + 1), i.to_string(), fmt_float(v)]);
        }
    }
    for (i, &v) in fact.delta.iter().enumerate() {
        rows.push(vec!["delta".into(), i.to_string(), fmt_float(v)]);
    }
    let p = fact.uppers.len();
    for (j, u) in fact.uppers.iter().enumerate() {
        for (i, &v) in u.iter().enumerate() {
            rows.push(vec![format!("U{}", p - j), i.to_string(), fmt_float(v)]);
        }
    }
    s = s.table(&["factor", "index", "value"], rows);
    report.section(s);
    let back = fact.assemble();
    let resid = back.sub(&trunc).norm_max() / trunc.norm_max().max(1e-300);
    report.tolerance("roundtrip", 1e-10);
    report.verdict(
        "roundtrip",
        resid <= 1e-10,
        format!("residual {}", fmt_float(resid)),
    );
    Ok(report)
}

fn spectrum_report(
    matrix: &MatrixInput,
    ic: &InitialConditions,
    n: usize,
    dig: String,
) -> Result<Report> {
    let mut report = Report::new("spectrum", dig);
    match matrix {
        MatrixInput::Jacobi(j) => {
            let d = j.spectral_data(n)?;
            let rows = (0..=n)
                .map(|k| {
                    vec![
                        (k + 1).to_string(),
                        fmt_float(d.lambdas[k]),
                        fmt_float(d.masses[k]),
                        fmt_float(d.masses_second_kind[k]),
                        fmt_float(d.christoffel[k]),
                    ]
                })
                .collect();
            report.section(
                Section::new("spectrum")
                    .scalar("n", n.to_string())
                    .float("mass_total", d.masses.iter().sum())
                    .table(
                        &["k", "lambda", "mass", "mass_second_kind", "christoffel"],
                        rows,
                    ),
            );
            report.verdict(
                "masses_positive",
                d.masses.iter().all(|&m| m > 0.0),
                "masses from the positive-sum formula".into(),
            );
        }
        MatrixInput::Banded(b) => {
            let spec = mixed::truncation_spectrum(b, n, ic)?;
            let rows = (0..=n)
                .map(|k| {
                    vec![
                        (k + 1).to_string(),
                        fmt_float(spec.lambdas[k]),
                        fmt_float(spec.mu[k][0]),
                        fmt_float(spec.mu[k][1]),
                        fmt_float(spec.mu[k][2]),
                        fmt_float(spec.rho[k][0]),
                        fmt_float(spec.rho[k][1]),
                    ]
                })
                .collect();
            report.section(
                Section::new("spectrum")
                    .scalar("n", n.to_string())
                    .float("alpha_n", spec.alpha_n)
                    .float("beta_n", spec.beta_n)
                    .float("biorthogonality_residual", spec.biorthogonality_residual)
                    .table(&["k", "lambda", "mu1", "mu2", "mu3", "rho1", "rho2"], rows),
            );
            report.tolerance("biorthogonality", 1e-7);
            report.verdict(
                "biorthogonality",
                spec.biorthogonality_residual <= 1e-7,
                format!("residual {}", fmt_float(spec.biorthogonality_residual)),
            );
        }
    }
    Ok(report)
}

fn measure_report(
    matrix: &MatrixInput,
    ic: &InitialConditions,
    n: usize,
    dig: String,
) -> Result<Report> {
    let mut report = Report::new("measure", dig);
    match matrix {
        MatrixInput::Jacobi(j) => {
            let d = j.spectral_data(n)?;
            let mut rows = Vec::new();
            for k in 0..=n {
                rows.push(vec![
                    fmt_float(d.lambdas[k]),
                    fmt_float(d.masses[k]),
                    fmt_float(d.step_function(d.lambdas[k])),
                ]);
            }
            report.section(
                Section::new("measure")
                    .scalar("n", n.to_string())
                    .table(&["support", "mass", "cumulative"], rows),
            );
        }
        MatrixInput::Banded(b) => {
            let spec = mixed::truncation_spectrum(b, n, ic)?;
            let measure = mixed::discrete_measure(&spec, ic)?;
            let mut rows = Vec::new();
            for (k, &x) in measure.support.iter().enumerate() {
                let mut row = vec![fmt_float(x)];
                for bb in 0..2 {
                    for aa in 0..3 {
                        row.push(fmt_float(measure.weights[k][bb][aa]));
                    }
                }
                rows.push(row);
            }
            let mut s = Section::new("measure").scalar("n", n.to_string());
            for bb in 1..=2usize {
                for aa in 1..=3usize {
                    s = s.float(
                        &format!("total_{bb}{aa}"),
                        measure.total_mass[bb - 1][aa - 1],
                    );
                }
            }
            report.section(s.table(&["support", "w11", "w12", "w13", "w21", "w22", "w23"], rows));
        }
    }
    Ok(report)
}

fn weyl_report(
    matrix: &MatrixInput,
    ic: &InitialConditions,
    n: usize,
    z: Complex64,
    dig: String,
) -> Result<Report> {
    let mut report = Report::new("weyl", dig);
    match matrix {
        MatrixInput::Jacobi(j) => {
            let w = j.weyl(n, z)?;
            report.section(
                Section::new("weyl")
                    .scalar("n", n.to_string())
                    .scalar("z", format!("{},{}", fmt_float(z.re), fmt_float(z.im)))
                    .float("value_re", w.value.re)
                    .float("value_im", w.value.im)
                    .float("partial_fraction_re", w.partial_fraction.re)
                    .float("partial_fraction_im", w.partial_fraction.im)
                    .float("residual", w.residual),
            );
            report.tolerance("route_agreement", 1e-7);
            report.verdict(
                "route_agreement",
                w.residual <= 1e-7,
                format!("residual {}", fmt_float(w.residual)),
            );
        }
        MatrixInput::Banded(b) => {
            let spec = mixed::truncation_spectrum(b, n, ic)?;
            let w = moments::weyl_matrix(b, &spec, ic, z)?;
            let mut rows = Vec::new();
            for bb in 0..2 {
                for aa in 0..3 {
                    rows.push(vec![
                        (bb + 1).to_string(),
                        (aa + 1).to_string(),
                        fmt_float(w.s[bb][aa].re),
                        fmt_float(w.s[bb][aa].im),
                    ]);
                }
            }
            report.section(
                Section::new("weyl")
                    .scalar("n", n.to_string())
                    .scalar("z", format!("{},{}", fmt_float(z.re), fmt_float(z.im)))
                    .float("route_residual", w.residual)
                    .table(&["b", "a", "re", "im"], rows),
            );
            report.tolerance("route_agreement", 1e-7);
            report.verdict(
                "route_agreement",
                w.residual <= 1e-7,
                format!("residual {}", fmt_float(w.residual)),
            );
        }
    }
    Ok(report)
}

fn moments_report(
    matrix: &MatrixInput,
    ic: &InitialConditions,
    n: usize,
    dig: String,
) -> Result<Report> {
    let mut report = Report::new("moments", dig);
    match matrix {
        MatrixInput::Jacobi(j) => {
            let mut rows = Vec::new();
            for deg in 0..=n {
                let m = (deg / 2 + 2).min(j.n_max() - 1);
                let t = j.truncate(m)?;
                let p = t.power(deg);
                rows.push(vec![deg.to_string(), fmt_float(p.get(0, 0))]);
            }
            report.section(
                Section::new("moments")
                    .scalar("max_degree", n.to_string())
                    .table(&["degree", "moment"], rows),
            );
        }
        MatrixInput::Banded(b) => {
            let mut rows = Vec::new();
            for deg in 0..=n {
                let psi = moments::moments_from_t(b, deg, ic)?;
                let mut row = vec![deg.to_string()];
                for rb in psi.iter() {
                    for v in rb.iter() {
                        row.push(fmt_float(*v));
                    }
                }
                rows.push(row);
            }
            report.section(
                Section::new("moments")
                    .scalar("max_degree", n.to_string())
                    .table(&["degree", "m11", "m12", "m13", "m21", "m22", "m23"], rows),
            );
        }
    }
    Ok(report)
}

fn quadrature_report(
    matrix: &MatrixInput,
    ic: &InitialConditions,
    n: usize,
    dig: String,
) -> Result<Report> {
    let banded = match matrix {
        MatrixInput::Banded(b) => b,
        MatrixInput::Jacobi(_) => {
            return Err(Error::Invalid(
                "quadrature degrees are defined for the banded (2,3) case".into(),
            ))
        }
    };
    let spec = mixed::truncation_spectrum(banded, n, ic)?;
    let table = moments::quadrature_table(banded, &spec, ic)?;
    let mut report = Report::new("quadrature", dig);
    let mut rows = Vec::new();
    let mut all_pass = true;
    for c in &table {
        all_pass &= c.pass;
        rows.push(vec![
            c.b.to_string(),
            c.a.to_string(),
            format!("d_{}{}={}", c.b, c.a, c.degree),
            c.observed.to_string(),
            fmt_float(c.probe_absolute),
            if c.pass { "pass".into() } else { "fail".into() },
        ]);
    }
    report.section(Section::new("quadrature").scalar("n", n.to_string()).table(
        &["b", "a", "degree", "observed", "probe_absolute", "verdict"],
        rows,
    ));
    report.tolerance("exactness_relative", 1e-8);
    report.verdict(
        "degrees_of_precision",
        all_pass,
        "observed exact degree covers d_ba(N) for every entry".into(),
    );
    Ok(report)
}

fn verify_report(
    matrix: &MatrixInput,
    ic: &InitialConditions,
    suite: VerifySuite,
    n: usize,
    dig: String,
    opts: &Options,
) -> Result<Report> {
    let mut report = Report::new(&format!("verify-{}", suite.name()), dig);
    report.seed = Some(opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    match (suite, matrix) {
        (VerifySuite::Cd, MatrixInput::Jacobi(j)) => {
            let d = j.spectral_data(n)?;
            let span = d.lambdas[0] - d.lambdas[n];
            let lo = d.lambdas[n] - 0.1 * span.max(1.0);
            let hi = d.lambdas[0] + 0.1 * span.max(1.0);
            let mut worst: f64 = 0.0;
            let mut confluent_ok = true;
            for _ in 0..100 {
                let x = rng.random_range(lo..hi);
                let y = rng.random_range(lo..hi);
                if (x - y).abs() < 1e-6 * span.max(1.0) {
                    continue;
                }
                let c = j.cd_check(n, x, y);
                worst = worst.max(c.residual);
                let conf = j.cd_confluent(n, x);
                confluent_ok &= conf.wronskian_form > 0.0;
            }
            report.section(Section::new("cd").float("worst_residual", worst));
            report.tolerance("cd_residual", opts.tol.max(1e-9));
            report.verdict(
                "cd_identity",
                worst <= opts.tol.max(1e-9),
                format!("worst {}", fmt_float(worst)),
            );
            report.verdict(
                "confluent_positive",
                confluent_ok,
                "Wronskian form positive".into(),
            );
        }
        (VerifySuite::Cd, MatrixInput::Banded(b)) => {
            let lam = mixed::truncation_eigenvalues(b, n)?;
            let span = lam[0] - lam[n];
            let lo = lam[n] - 0.1 * span.max(1.0);
            let hi = lam[0] + 0.1 * span.max(1.0);
            let mut worst: f64 = 0.0;
            let mut confluent_ok = true;
            for _ in 0..100 {
                let x = rng.random_range(lo..hi);
                let y = rng.random_range(lo..hi);
                if (x - y).abs() < 1e-6 * span.max(1.0) {
                    continue;
                }
                let c = mixed::generalized_cd_check(b, n, ic, x, y)?;
                worst = worst.max(c.residual);
                confluent_ok &= c.confluent_positive_form > 0.0;
            }
            report.section(Section::new("cd").float("worst_residual", worst));
            report.tolerance("cd_residual", opts.tol.max(1e-9));
            report.verdict(
                "cd_identity",
                worst <= opts.tol.max(1e-9),
                format!("worst {}", fmt_float(worst)),
            );
            report.verdict("confluent_positive", confluent_ok, "positive form".into());
        }
        (VerifySuite::Interlacing, MatrixInput::Jacobi(j)) => {
            let d1 = j.spectral_data(n)?;
            let d0 = j.spectral_data(n.saturating_sub(1))?;
            let mut ok = true;
            if n > 0 {
                for k in 0..n {
                    ok &= d0.lambdas[k] < d1.lambdas[k] && d0.lambdas[k] > d1.lambdas[k + 1];
                }
            }
            let positive = d1.masses.iter().all(|&m| m > 0.0);
            report.verdict(
                "interlacing",
                ok,
                format!("levels {} and {}", n, n.saturating_sub(1)),
            );
            report.verdict("masses_positive", positive, "discrete measure".into());
        }
        (VerifySuite::Interlacing, MatrixInput::Banded(b)) => {
            let r = mixed::interlacing_check(b, n)?;
            report.verdict("interlacing", r.interlaced, format!("{:?}", r.violations));
            report.verdict(
                "wronskian_positive",
                r.wronskian_positive,
                "100-point grid".into(),
            );
            report.verdict(
                "sign_corollaries",
                r.sign_corollaries,
                "at the zeros".into(),
            );
        }
        (VerifySuite::Biorthogonality, MatrixInput::Jacobi(j)) => {
            let d = j.spectral_data(n)?;
            let mut worst: f64 = 0.0;
            let scale = d.lambdas[0].abs().max(1.0);
            for nn in 1..=n {
                for k in 0..nn {
                    // Σ_j P_nn(λ_j) μ_j λ_j^k = 0 for k < nn
                    let mut s = 0.0;
                    for (jj, &lam) in d.lambdas.iter().enumerate() {
                        let pv = j.eval_recursion(nn, lam)[nn];
                        s += pv * d.masses[jj] * lam.powi(k as i32);
                    }
                    worst = worst.max(s.abs() / scale.powi(nn as i32));
                }
            }
            let total: f64 = d.masses.iter().sum();
            report.section(Section::new("biorthogonality").float("worst_orthogonality", worst));
            report.tolerance("orthogonality", 1e-8);
            report.verdict(
                "discrete_orthogonality",
                worst <= 1e-8,
                format!("worst {}", fmt_float(worst)),
            );
            report.verdict(
                "mass_total",
                (total - 1.0).abs() <= 1e-9,
                format!("total {}", fmt_float(total)),
            );
        }
        (VerifySuite::Biorthogonality, MatrixInput::Banded(b)) => {
            let spec = mixed::truncation_spectrum(b, n, ic)?;
            report.section(
                Section::new("biorthogonality").float("residual", spec.biorthogonality_residual),
            );
            report.tolerance("biorthogonality", 1e-7);
            report.verdict(
                "uw_identity",
                spec.biorthogonality_residual <= 1e-7,
                format!("residual {}", fmt_float(spec.biorthogonality_residual)),
            );
        }
        (VerifySuite::Darboux, m) => {
            let banded = m.to_banded()?;
            let trunc = banded.truncate(n)?;
            let fact = neville::factorize(&trunc, banded.p(), banded.q())?;
            let base = charpoly(&trunc)?;
            let scale = base.max_abs_coeff().max(1e-300);
            let variants: Vec<i32> = (1..=banded.q() as i32)
                .chain((1..=banded.p() as i32).map(|v| -v))
                .collect();
            let mut worst: f64 = 0.0;
            for v in variants {
                let d = neville::darboux_transform(&fact, v)?;
                let cp = charpoly(&d)?;
                worst = worst.max(cp.sub(&base).max_abs_coeff() / scale);
            }
            report.section(Section::new("darboux").float("worst_coefficient_residual", worst));
            report.tolerance("charpoly_match", 1e-9);
            report.verdict(
                "isospectral",
                worst <= 1e-9,
                format!("worst {}", fmt_float(worst)),
            );
        }
        (VerifySuite::GaussBorel, MatrixInput::Banded(b)) => {
            let dim = n.max(1);
            let gb = moments::gauss_borel(b, ic, dim)?;
            report.section(
                Section::new("gaussborel")
                    .scalar("dim", dim.to_string())
                    .float("residual", gb.residual),
            );
            report.tolerance("biorthogonality", 1e-7);
            report.verdict(
                "gauss_borel",
                gb.residual <= 1e-7,
                format!("exact residual {}", fmt_float(gb.residual)),
            );
        }
        (VerifySuite::GaussBorel, MatrixInput::Jacobi(_)) => {
            return Err(Error::Invalid(
                "gaussborel suite is defined for the banded (2,3) case".into(),
            ));
        }
    }
    Ok(report)
}

/// Exit-code mapping: 0 pass, 1 usage/input error, 2 mathematical failure.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Invalid(_) | Error::OutOfRange { .. } => 1,
        _ => 2,
    }
}
