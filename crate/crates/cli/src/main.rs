//! `pl` — builders, verifiers, spectra and entanglement analysis for the
//! spin block operator, with table or JSON reports.
//!
//! Exit codes are a stable contract: 0 success, 1 check failure (always for
//! `verify`, with `--strict` elsewhere) or computational failure, 2 usage or
//! parse error.

mod output;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use pl_core::entangle::{classify, parse_state_spec, schmidt_analysis, spin_half_eigenvectors, Cut, TANGLE_THRESHOLD};
use pl_core::lubanski::{casimir, s_matrix, verify_t_algebra, FourMomentum, LubanskiMatrices, CASIMIR_NORMALIZATION};
use pl_core::matrix::nonnormality;
use pl_core::spectral::{
    eigenvalues_dense, match_spectrum, newton_identity_check, predict_spectrum,
    trace_power_closed_form, RANK_TOL_DEFAULT,
};
use pl_core::{make_spin_matrices, verify_spin_identities, Check, HalfInteger, SpinTriple};

use output::{complex_json, matrix_json, render, Format, ReportDocument};

/// Default residual tolerance; override with --tol or the PL_TOL
/// environment variable (the flag wins).
const DEFAULT_TOL: f64 = 1e-10;

/// Declared maximum greedy-matching distance between computed and predicted
/// spectra.
const SPECTRUM_MATCH_TOL: f64 = 1e-7;

/// Bound on the imaginary residue of the closed-form trace.
const TRACE_IMAG_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "pl", version, about = "Spin block operator toolkit: matrices, spectra, trace identities and entanglement")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Residual tolerance for checks (default 1e-10; PL_TOL overrides the default)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Exit 1 when any check fails
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Args)]
struct SpinArg {
    /// Spin value, an integer or half-integer such as 1 or 3/2
    #[arg(long, value_name = "SPIN", conflicts_with = "twice_spin")]
    spin: Option<String>,

    /// Twice the spin as an integer (3 means spin 3/2)
    #[arg(long, value_name = "INT")]
    twice_spin: Option<i64>,
}

#[derive(Subcommand)]
enum Commands {
    /// Build S1, S2, S3 and verify their defining identities
    SpinMatrices {
        #[command(flatten)]
        spin: SpinArg,
    },
    /// Predicted vs computed spectrum of the block operator S
    Spectrum {
        #[command(flatten)]
        spin: SpinArg,
    },
    /// Direct vs closed-form trace powers of S
    Traces {
        #[command(flatten)]
        spin: SpinArg,
        /// Highest power to tabulate
        #[arg(long, default_value_t = 8)]
        max_power: u32,
    },
    /// Casimir structure of the W matrices for a 4-momentum
    Casimir {
        #[command(flatten)]
        spin: SpinArg,
        /// Covariant components p0,p1,p2,p3
        #[arg(long, value_name = "R,R,R,R")]
        momentum: String,
    },
    /// Tangle, Schmidt ranks and class of a combination of v1..v4
    Tangle {
        /// State expression, e.g. "v1+v4" or "0.5*v1 + (0,1)*v2"
        #[arg(long)]
        state: String,
    },
    /// Dump S, its inverse and the T1/T2/T3 split, with the algebra checks
    Lubanski {
        #[command(flatten)]
        spin: SpinArg,
    },
    /// Full verification sweep over twice-spin 1..=N
    Verify {
        #[arg(long, default_value_t = 8)]
        max_twice_spin: i64,
    },
}

enum CliError {
    Usage(String),
    Compute(String),
}

impl From<pl_core::Error> for CliError {
    fn from(e: pl_core::Error) -> Self {
        use pl_core::Error::*;
        match e {
            DimensionTooLarge { .. } | EigenNonConvergence { .. } => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let tol = resolve_tol(cli.tol)?;
    let is_verify = matches!(cli.command, Commands::Verify { .. });

    let doc = match cli.command {
        Commands::SpinMatrices { spin } => cmd_spin_matrices(spin.resolve()?, tol)?,
        Commands::Spectrum { spin } => cmd_spectrum(spin.resolve()?, tol)?,
        Commands::Traces { spin, max_power } => cmd_traces(spin.resolve()?, max_power, tol)?,
        Commands::Casimir { spin, momentum } => {
            cmd_casimir(spin.resolve()?, parse_momentum(&momentum)?, tol)?
        }
        Commands::Tangle { state } => cmd_tangle(&state, tol)?,
        Commands::Lubanski { spin } => cmd_lubanski(spin.resolve()?, tol)?,
        Commands::Verify { max_twice_spin } => cmd_verify(max_twice_spin, tol)?,
    };

    render(&doc, cli.format);

    let failed = !doc.all_pass();
    Ok(if failed && (is_verify || cli.strict) { 1 } else { 0 })
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be a positive float, got {t}")));
        }
        return Ok(t);
    }
    match std::env::var("PL_TOL") {
        Ok(raw) => raw
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| CliError::Usage(format!("PL_TOL must be a positive float, got '{raw}'"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

impl SpinArg {
    fn resolve(&self) -> Result<HalfInteger, CliError> {
        match (&self.spin, self.twice_spin) {
            (Some(text), None) => Ok(text.parse::<HalfInteger>()?),
            (None, Some(twice)) => Ok(HalfInteger::from_twice(twice)),
            _ => Err(CliError::Usage("one of --spin or --twice-spin is required".into())),
        }
    }
}

fn parse_momentum(text: &str) -> Result<FourMomentum, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--momentum needs four comma-separated reals, got '{text}'"
        )));
    }
    let mut p = [0.0f64; 4];
    for (slot, part) in p.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::Usage(format!("bad momentum component '{part}'")))?;
    }
    Ok(FourMomentum::new(p[0], p[1], p[2], p[3]))
}

fn build_triple(s: HalfInteger) -> Result<SpinTriple, CliError> {
    let mut t = make_spin_matrices(s)?;
    // Test hook: perturb one matrix entry so the harness provably catches a
    // broken identity and names it.
    if std::env::var("PL_DEBUG_TAMPER").map(|v| !v.is_empty()).unwrap_or(false) {
        t.s1[(0, 0)] += Complex64::new(1e-3, 0.0);
    }
    Ok(t)
}

fn cmd_spin_matrices(s: HalfInteger, tol: f64) -> Result<ReportDocument, CliError> {
    let t = build_triple(s)?;
    let report = verify_spin_identities(&t, tol);
    Ok(ReportDocument {
        command: "spin-matrices".into(),
        spin: Some(s.to_string()),
        payload: json!({
            "dimension": t.dimension(),
            "s1": matrix_json(&t.s1),
            "s2": matrix_json(&t.s2),
            "s3": matrix_json(&t.s3),
        }),
        checks: report.checks,
    })
}

fn cmd_spectrum(s: HalfInteger, tol: f64) -> Result<ReportDocument, CliError> {
    let t = build_triple(s)?;
    let matrix = s_matrix(&t);
    let prediction = predict_spectrum(s)?;
    let computed = eigenvalues_dense(&matrix).map_err(CliError::from)?;
    let matched = match_spectrum(&computed.eigenvalues, &prediction);
    let newton = newton_identity_check(&prediction, &matrix, 16, tol);

    let mut mismatches = 0u32;
    let predicted_json: Vec<Value> = prediction
        .entries
        .iter()
        .map(|e| {
            let geometric = pl_core::spectral::geometric_multiplicity(&matrix, e.value, RANK_TOL_DEFAULT);
            if geometric != e.multiplicity {
                mismatches += 1;
            }
            json!({
                "value": complex_json(e.value),
                "algebraic_multiplicity": e.multiplicity,
                "geometric_multiplicity": geometric,
            })
        })
        .collect();

    let mut checks = newton.checks;
    checks.push(Check::new("spectrum_match", matched.max_distance, SPECTRUM_MATCH_TOL));
    checks.push(Check::new("geometric_multiplicities", mismatches as f64, 0.0));

    Ok(ReportDocument {
        command: "spectrum".into(),
        spin: Some(s.to_string()),
        payload: json!({
            "computed": computed.eigenvalues.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
            "solver_residual": computed.residual,
            "match_distance": matched.max_distance,
            "predicted": predicted_json,
        }),
        checks,
    })
}

fn trace_checks(t: &SpinTriple, max_power: u32, tol: f64) -> (Vec<Value>, Vec<Check>) {
    let matrix = s_matrix(t);
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut imag_residual = 0.0f64;
    let mut power = pl_core::CMatrix::identity(matrix.rows());
    for n in 1..=max_power {
        power = power.matmul(&matrix);
        let direct = power.trace();
        let closed = trace_power_closed_form(t.s, n);
        let scale = 1.0 + direct.norm().max(closed.norm());
        let residual = (direct - closed).norm() / scale;
        imag_residual = imag_residual.max(closed.im.abs());
        rows.push(json!({
            "power": n,
            "direct": complex_json(direct),
            "closed_form": complex_json(closed),
            "relative_residual": residual,
        }));
        checks.push(Check::new(format!("trace_pow{n}"), residual, tol));
    }
    checks.push(Check::new("closed_form_imaginary", imag_residual, TRACE_IMAG_TOL));
    (rows, checks)
}

fn cmd_traces(s: HalfInteger, max_power: u32, tol: f64) -> Result<ReportDocument, CliError> {
    if max_power < 1 {
        return Err(CliError::Usage("--max-power must be at least 1".into()));
    }
    let t = build_triple(s)?;
    let (rows, checks) = trace_checks(&t, max_power, tol);
    Ok(ReportDocument {
        command: "traces".into(),
        spin: Some(s.to_string()),
        payload: json!({ "max_power": max_power, "rows": rows }),
        checks,
    })
}

fn cmd_casimir(s: HalfInteger, p: FourMomentum, tol: f64) -> Result<ReportDocument, CliError> {
    let t = build_triple(s)?;
    let report = casimir(&t, &p, tol);
    if report.lightlike {
        eprintln!("warning: momentum is lightlike (p.p = {}); the scalar/(p.p) ratio is undefined", report.momentum_square);
    }
    Ok(ReportDocument {
        command: "casimir".into(),
        spin: Some(s.to_string()),
        payload: json!({
            "momentum": p.components,
            "momentum_square": report.momentum_square,
            "scalar": complex_json(report.scalar),
            "ratio": report.ratio,
            "normalization_constant": CASIMIR_NORMALIZATION,
            "predicted_scalar": report.predicted_scalar,
            "lightlike": report.lightlike,
        }),
        checks: report.checks,
    })
}

fn cmd_tangle(state: &str, tol: f64) -> Result<ReportDocument, CliError> {
    let psi = parse_state_spec(state)?;
    let verdict = classify(&psi, tol);
    let schmidt: Vec<Value> = Cut::ALL
        .iter()
        .map(|&cut| {
            let sr = schmidt_analysis(&psi, cut, tol);
            json!({ "cut": cut.label(), "rank": sr.rank, "coefficients": sr.coefficients })
        })
        .collect();
    let norm_residual = (psi.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs();
    Ok(ReportDocument {
        command: "tangle".into(),
        spin: None,
        payload: json!({
            "state": state,
            "amplitudes": psi.amplitudes().iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
            "tangle": verdict.tangle,
            "schmidt": schmidt,
            "class": verdict.class.to_string(),
            "entangled": verdict.entangled,
            "tangle_threshold": TANGLE_THRESHOLD,
        }),
        checks: vec![Check::new("state_normalized", norm_residual, 1e-12)],
    })
}

fn cmd_lubanski(s: HalfInteger, tol: f64) -> Result<ReportDocument, CliError> {
    let t = build_triple(s)?;
    let m = LubanskiMatrices::new(&t);
    let report = verify_t_algebra(&t, tol);
    Ok(ReportDocument {
        command: "lubanski".into(),
        spin: Some(s.to_string()),
        payload: json!({
            "dimension": 4 * t.dimension(),
            "nonnormality": nonnormality(&m.s),
            "s": matrix_json(&m.s),
            "s_inverse": matrix_json(&m.s_inv),
            "t1": matrix_json(&m.t1),
            "t2": matrix_json(&m.t2),
            "t3": matrix_json(&m.t3),
        }),
        checks: report.checks,
    })
}

/// Entanglement block of the verify sweep, meaningful at spin 1/2 only:
/// tangles of v1..v4 and of the eight +/- combinations, the Schmidt ranks of
/// the two factorizable eigenvectors, and eigenvector closure under
/// combination.
fn entanglement_checks(t: &SpinTriple) -> Vec<Check> {
    let mut checks = Vec::new();
    let [v1, v2, v3, v4] = spin_half_eigenvectors();
    let one = Complex64::ONE;

    for (name, v) in [("v1", &v1), ("v2", &v2), ("v3", &v3), ("v4", &v4)] {
        checks.push(Check::new(
            format!("entangle.tangle_{name}"),
            pl_core::entangle::three_tangle(v),
            TANGLE_THRESHOLD,
        ));
    }

    let mut states = Vec::new();
    let zero_pairs = [("v1", &v1, "v3", &v3), ("v2", &v2, "v4", &v4)];
    for (na, a, nb, b) in zero_pairs {
        for (sign, symbol) in [(one, "+"), (-one, "-")] {
            let psi = pl_core::entangle::combine(&[(*a).clone(), (*b).clone()], &[one, sign])
                .expect("independent vectors");
            checks.push(Check::new(
                format!("entangle.tangle_{na}{symbol}{nb}"),
                pl_core::entangle::three_tangle(&psi),
                TANGLE_THRESHOLD,
            ));
            states.push(psi);
        }
    }
    let quarter_pairs = [("v1", &v1, "v4", &v4), ("v2", &v2, "v3", &v3)];
    for (na, a, nb, b) in quarter_pairs {
        for (sign, symbol) in [(one, "+"), (-one, "-")] {
            let psi = pl_core::entangle::combine(&[(*a).clone(), (*b).clone()], &[one, sign])
                .expect("independent vectors");
            checks.push(Check::new(
                format!("entangle.tangle_{na}{symbol}{nb}"),
                (pl_core::entangle::three_tangle(&psi) - 0.25).abs(),
                TANGLE_THRESHOLD,
            ));
            states.push(psi);
        }
    }

    for (name, v) in [("v2", &v2), ("v4", &v4)] {
        let rank = schmidt_analysis(v, Cut::Q1, RANK_TOL_DEFAULT).rank;
        checks.push(Check::new(
            format!("entangle.schmidt_rank1_{name}_1|23"),
            (rank as f64 - 1.0).abs(),
            0.0,
        ));
    }

    let s = s_matrix(t);
    states.extend([v1, v2, v3, v4]);
    let mut closure = 0.0f64;
    for psi in &states {
        let image = s.apply(psi.amplitudes());
        let residual: f64 = image
            .iter()
            .zip(psi.amplitudes())
            .map(|(x, y)| (x - y * 0.5).norm_sqr())
            .sum::<f64>()
            .sqrt();
        closure = closure.max(residual);
    }
    checks.push(Check::new("entangle.eigenvector_closure", closure, 1e-12));
    checks
}

fn cmd_verify(max_twice_spin: i64, tol: f64) -> Result<ReportDocument, CliError> {
    if max_twice_spin < 1 {
        return Err(CliError::Usage("--max-twice-spin must be at least 1".into()));
    }
    let mut checks = Vec::new();
    let mut spins = Vec::new();
    for twice in 1..=max_twice_spin {
        let s = HalfInteger::from_twice(twice);
        spins.push(s.to_string());
        let t = build_triple(s)?;
        let prefix = format!("s={s}");

        for check in verify_spin_identities(&t, tol).checks {
            checks.push(Check::new(format!("{prefix} spin.{}", check.name), check.residual, check.tolerance));
        }
        for check in verify_t_algebra(&t, tol).checks {
            checks.push(Check::new(format!("{prefix} t_algebra.{}", check.name), check.residual, check.tolerance));
        }
        let (_, trace) = trace_checks(&t, 8, tol);
        for check in trace {
            checks.push(Check::new(format!("{prefix} traces.{}", check.name), check.residual, check.tolerance));
        }
        let prediction = predict_spectrum(s)?;
        let matrix = s_matrix(&t);
        for check in newton_identity_check(&prediction, &matrix, 16, tol).checks {
            checks.push(Check::new(format!("{prefix} spectrum.{}", check.name), check.residual, check.tolerance));
        }
        if twice == 1 {
            for check in entanglement_checks(&t) {
                checks.push(Check::new(format!("{prefix} {}", check.name), check.residual, check.tolerance));
            }
        }
    }

    Ok(ReportDocument {
        command: "verify".into(),
        spin: None,
        payload: json!({ "max_twice_spin": max_twice_spin, "spins": spins }),
        checks,
    })
}
