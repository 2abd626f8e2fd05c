//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code: 0 when every check
//! passes, 1 on a check failure, 2 on a usage or parameter error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{parse_family, ParamDefaults};
use crate::coadjoint::{orbit_classify_with, orbit_dimension, sample_orbit, ZERO_THRESHOLD};
use crate::error::Error;
use crate::export::{write_leaf_csv, write_orbit_csv};
use crate::foliation::{codimension, connes_label, equivalence_h, h_residual, leaf_of, tangent_system};
use crate::representation::{faithful_rep, mu_report, verify_faithful, verify_homomorphism};
use crate::verify::{self, SampleSizes, VerifyConfig};
use crate::{build, FamilySpec, LieAlgebra, Nilpotency};

/// Default bound for the float checks of single commands.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "lien2", version, about = "Solvable Lie algebras with two-dimensional derived ideal")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for every random sweep.
    #[arg(long, env = "LIEN2_SEED", default_value_t = 42, global = true)]
    pub seed: u64,

    /// Bound for float checks (1e-9 for single commands; verify-all uses
    /// per-criterion bounds unless this is given).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    /// Suppress the summary on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    /// Coordinates with absolute value at most this are treated as zero
    /// when classifying orbits.
    #[arg(long, default_value_t = ZERO_THRESHOLD, global = true)]
    pub zero_threshold: f64,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family, e.g. `g3_1`, `g6_2k_1`, `g6_2k_2(k=1)`, `aff_r+heisenberg(m=1)`.
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Error> {
        parse_family(&self.family, &ParamDefaults { lambda: self.lambda, k: self.k, m: self.m })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure constants, Jacobi defect, derived algebra, center.
    Algebra(FamilyArgs),
    /// Faithful representation and bounds on its minimal degree.
    Rep(FamilyArgs),
    /// Coadjoint orbit of a functional.
    Orbit {
        #[command(flatten)]
        family: FamilyArgs,
        /// Functional as comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Number of sampled orbit points to export.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Foliation by maximal coadjoint orbits.
    Foliation {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(subcommand)]
        action: FoliationAction,
    },
    /// Every acceptance suite over the family sweep.
    VerifyAll {
        /// Largest k of the general-dimension families.
        #[arg(long, default_value_t = 3)]
        k_max: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum FoliationAction {
    /// Codimension, tangent system and C*-algebra label.
    Info {
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Tangency, h-identity and leafwise Jacobian sweeps.
    Verify {
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Image of a point under h and the leaf identity residual.
    Hmap {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Leaf assignment of one or more points (separated by `;`).
    Leaf {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

/// Parses a comma-separated list of decimals.
pub fn parse_point(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse(format!("bad coordinate `{t}`")))
        })
        .collect()
}

/// Output of one command.
struct Outcome {
    body: String,
    passed: bool,
    summary: String,
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn key_value_csv(rows: &[(&str, String)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["key", "value"]);
    for (k, v) in rows {
        let _ = w.write_record([*k, v.as_str()]);
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf8")
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> Result<(), Error>) -> Result<String, Error> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(String::from_utf8(buf).expect("utf8 csv"))
}

fn nilpotency_json(n: Nilpotency) -> Value {
    match n {
        Nilpotency::Class(c) => json!(c),
        Nilpotency::NotNilpotent => Value::Null,
    }
}

fn cmd_algebra(cli: &Cli, args: &FamilyArgs) -> Result<Outcome, Error> {
    let spec = args.spec()?;
    let alg = build(&spec)?;
    let tol = cli.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let jacobi = alg.jacobi_defect();
    let anti = alg.antisymmetry_defect();
    let derived = alg.derived_ideal().dim();
    let center = alg.center().dim();
    let nil = alg.nilpotency_class();
    let passed = jacobi <= tol && anti == 0.0;
    let body = match cli.format {
        Format::Json => to_json_text(&json!({
            "family": spec.to_string(),
            "n": alg.dim(),
            "algebra": alg.to_json(),
            "jacobi_defect": jacobi,
            "antisymmetry_defect": anti,
            "derived_dim": derived,
            "center_dim": center,
            "nilpotency_class": nilpotency_json(nil),
            "passed": passed,
        })),
        Format::Csv => key_value_csv(&[
            ("family", spec.to_string()),
            ("n", alg.dim().to_string()),
            ("jacobi_defect", jacobi.to_string()),
            ("antisymmetry_defect", anti.to_string()),
            ("derived_dim", derived.to_string()),
            ("center_dim", center.to_string()),
            ("nilpotency_class", nilpotency_json(nil).to_string()),
        ]),
    };
    let summary = format!("{spec}: n={} jacobi_defect={jacobi:e} derived_dim={derived}", alg.dim());
    Ok(Outcome { body, passed, summary })
}

fn cmd_rep(cli: &Cli, args: &FamilyArgs) -> Result<Outcome, Error> {
    let spec = args.spec()?;
    let alg = build(&spec)?;
    let tol = cli.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let mu = mu_report(&spec);
    let mu_json = serde_json::to_value(&mu).expect("mu report serializes");
    match faithful_rep(&alg) {
        Ok(rep) => {
            let defect = verify_homomorphism(&alg, &rep);
            let faithful = verify_faithful(&alg, &rep);
            let passed = faithful && defect <= tol;
            let body = match cli.format {
                Format::Json => to_json_text(&json!({
                    "family": spec.to_string(),
                    "n": alg.dim(),
                    "degree": rep.degree,
                    "label": rep.label,
                    "homomorphism_defect": defect,
                    "faithful": faithful,
                    "mu": mu_json,
                    "representation": rep.to_json(&alg),
                })),
                Format::Csv => key_value_csv(&[
                    ("family", spec.to_string()),
                    ("degree", rep.degree.to_string()),
                    ("label", rep.label.clone()),
                    ("homomorphism_defect", defect.to_string()),
                    ("faithful", faithful.to_string()),
                    ("mu_upper_bound", mu.upper_bound.to_string()),
                    ("mu_exact", mu.exact_known.map_or(String::new(), |v| v.to_string())),
                ]),
            };
            let summary = format!("{spec}: degree={} faithful={faithful} defect={defect:e}", rep.degree);
            Ok(Outcome { body, passed, summary })
        }
        Err(Error::UnsupportedFamily { .. }) => {
            let construction = "not available: only the bound is known";
            let body = match cli.format {
                Format::Json => to_json_text(&json!({
                    "family": spec.to_string(),
                    "n": alg.dim(),
                    "construction": construction,
                    "mu": mu_json,
                })),
                Format::Csv => key_value_csv(&[
                    ("family", spec.to_string()),
                    ("construction", construction.into()),
                    ("mu_upper_bound", mu.upper_bound.to_string()),
                    ("mu_exact", mu.exact_known.map_or(String::new(), |v| v.to_string())),
                ]),
            };
            let summary = format!("{spec}: mu <= {} (no explicit construction)", mu.upper_bound);
            Ok(Outcome { body, passed: true, summary })
        }
        Err(e) => Err(e),
    }
}

fn cmd_orbit(cli: &Cli, args: &FamilyArgs, point: &str, samples: Option<usize>) -> Result<Outcome, Error> {
    let spec = args.spec()?;
    let alg = build(&spec)?;
    let f = parse_point(point)?;
    Error::check_len(alg.dim(), f.len())?;
    let tol = cli.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let desc = orbit_classify_with(&alg, &f, cli.zero_threshold)?;
    let rank = orbit_dimension(&alg, &f)?;
    let mut passed = rank == desc.dim;
    let mut points = Vec::new();
    let mut drifts = Vec::new();
    if let Some(count) = samples {
        points = sample_orbit(&alg, &f, count, cli.seed)?;
        for p in &points {
            let d = desc.drift(p)?;
            passed &= d <= tol && desc.constraints_hold(p);
            drifts.push(d);
        }
    }
    let body = match cli.format {
        Format::Json => {
            let mut v = desc.to_json();
            v["kirillov_rank"] = json!(rank);
            v["point"] = json!(f);
            if samples.is_some() {
                v["seed"] = json!(cli.seed);
                v["samples"] = json!(points
                    .iter()
                    .zip(&drifts)
                    .map(|(p, d)| json!({"point": p, "drift": d}))
                    .collect::<Vec<_>>());
            }
            to_json_text(&v)
        }
        Format::Csv => csv_bytes(|w| write_orbit_csv(w, &spec, cli.seed, &points, &drifts))?,
    };
    let max_drift = drifts.iter().cloned().fold(0.0, f64::max);
    let summary = format!(
        "{spec}: kind={} dim={} rank={rank} max_drift={max_drift:e}",
        desc.kind.as_str(),
        desc.dim
    );
    Ok(Outcome { body, passed, summary })
}

fn points_arg(s: &str) -> Result<Vec<Vec<f64>>, Error> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(parse_point).collect()
}

fn cmd_foliation(cli: &Cli, args: &FamilyArgs, action: &FoliationAction) -> Result<Outcome, Error> {
    let spec = args.spec()?;
    let alg = build(&spec)?;
    let tol = cli.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    match action {
        FoliationAction::Info { point } => {
            let codim = codimension(&alg)?;
            let label = connes_label(&alg)?;
            let sys = tangent_system(&alg)?;
            let leaf = match point {
                Some(p) => {
                    let f = parse_point(p)?;
                    Error::check_len(alg.dim(), f.len())?;
                    Some(leaf_of(&alg, &f)?)
                }
                None => None,
            };
            let body = match cli.format {
                Format::Json => to_json_text(&json!({
                    "family": spec.to_string(),
                    "n": alg.dim(),
                    "codimension": codim,
                    "leaf_dim": alg.dim() - codim,
                    "connes_label": label,
                    "tangent_system": sys.describe(),
                    "leaf": leaf.as_ref().map(|l| l.to_json()),
                })),
                Format::Csv => key_value_csv(&[
                    ("family", spec.to_string()),
                    ("codimension", codim.to_string()),
                    ("leaf_dim", (alg.dim() - codim).to_string()),
                    ("connes_label", label.to_string()),
                    ("tangent_system", sys.describe().join("; ")),
                ]),
            };
            Ok(Outcome { body, passed: true, summary: format!("{spec}: codim {codim}, {label}") })
        }
        FoliationAction::Verify { samples } => foliation_verify(cli, &spec, &alg, *samples, tol),
        FoliationAction::Hmap { point } => {
            if !matches!(spec, FamilySpec::G6_2k_1 { .. }) {
                return Err(Error::unsupported(&spec, "h map (defined on the g6_2k_1 foliation)"));
            }
            let f = parse_point(point)?;
            Error::check_len(alg.dim(), f.len())?;
            let image = equivalence_h(&f)?;
            let residual = h_residual(&f)?;
            let passed = residual <= tol;
            let body = match cli.format {
                Format::Json => to_json_text(&json!({
                    "family": spec.to_string(),
                    "point": f,
                    "image": image,
                    "residual": residual,
                    "passed": passed,
                })),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let n = f.len();
                    let header: Vec<String> = (1..=n)
                        .map(|i| format!("x_{i}"))
                        .chain((1..=n).map(|i| format!("h_{i}")))
                        .chain(std::iter::once("residual".into()))
                        .collect();
                    let _ = w.write_record(&header);
                    let row: Vec<String> = f
                        .iter()
                        .chain(&image)
                        .map(|v| v.to_string())
                        .chain(std::iter::once(residual.to_string()))
                        .collect();
                    let _ = w.write_record(&row);
                    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf8")
                }
            };
            Ok(Outcome { body, passed, summary: format!("{spec}: h residual {residual:e}") })
        }
        FoliationAction::Leaf { point } => {
            let pts = points_arg(point)?;
            let mut rows = Vec::new();
            for f in pts {
                Error::check_len(alg.dim(), f.len())?;
                let leaf = leaf_of(&alg, &f)?;
                rows.push((f, leaf));
            }
            let body = match cli.format {
                Format::Json => to_json_text(&json!({
                    "family": spec.to_string(),
                    "leaves": rows.iter().map(|(f, l)| json!({"point": f, "leaf": l.to_json(), "values": l.values()})).collect::<Vec<_>>(),
                })),
                Format::Csv => csv_bytes(|w| write_leaf_csv(w, &spec, &rows))?,
            };
            Ok(Outcome { body, passed: true, summary: format!("{spec}: {} leaf assignments", rows.len()) })
        }
    }
}

fn foliation_verify(cli: &Cli, spec: &FamilySpec, alg: &LieAlgebra, samples: usize, tol: f64) -> Result<Outcome, Error> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    codimension(alg)?;
    let tangency = verify::tangency_sweep(alg, samples, cli.seed, cli.zero_threshold)?;
    let h = match spec {
        FamilySpec::G6_2k_1 { .. } => Some(verify::h_sweep(alg.dim(), samples, cli.seed)?),
        _ => None,
    };
    let cfg = VerifyConfig {
        seed: cli.seed,
        k_max: 0,
        tolerance: Some(tol),
        zero_threshold: cli.zero_threshold,
    };
    let jac = verify::jacobian_sweep(&cfg, alg, samples.min(100))?;
    let passed = tangency <= tol && h.is_none_or(|v| v <= tol) && jac <= tol;
    let body = match cli.format {
        Format::Json => to_json_text(&json!({
            "family": spec.to_string(),
            "seed": cli.seed,
            "samples": samples,
            "tolerance": tol,
            "tangency_max_defect": tangency,
            "h_identity_max_residual": h,
            "jacobian_max_spread": jac,
            "connes_label": connes_label(alg)?,
            "passed": passed,
        })),
        Format::Csv => key_value_csv(&[
            ("family", spec.to_string()),
            ("seed", cli.seed.to_string()),
            ("samples", samples.to_string()),
            ("tangency_max_defect", tangency.to_string()),
            ("h_identity_max_residual", h.map_or(String::new(), |v| v.to_string())),
            ("jacobian_max_spread", jac.to_string()),
        ]),
    };
    let summary = format!("{spec}: tangency={tangency:e} jacobian={jac:e}");
    Ok(Outcome { body, passed, summary })
}

fn cmd_verify_all(cli: &Cli, k_max: u32) -> Result<Outcome, Error> {
    if let Some(t) = cli.tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {t}")));
        }
    }
    let cfg = VerifyConfig { seed: cli.seed, k_max, tolerance: cli.tolerance, zero_threshold: cli.zero_threshold };
    let report = verify::run_all(&cfg, &SampleSizes::default());
    let body = match cli.format {
        Format::Json => to_json_text(&report.to_json()),
        Format::Csv => report.to_csv(),
    };
    Ok(Outcome { body, passed: report.passed, summary: report.to_text() })
}

fn validate_globals(cli: &Cli) -> Result<(), Error> {
    if let Some(t) = cli.tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {t}")));
        }
    }
    if cli.zero_threshold.is_nan() || cli.zero_threshold < 0.0 {
        return Err(Error::InvalidParameter("zero threshold must be non-negative".into()));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    validate_globals(cli)?;
    match &cli.command {
        Command::Algebra(a) => cmd_algebra(cli, a),
        Command::Rep(a) => cmd_rep(cli, a),
        Command::Orbit { family, point, samples } => {
            if *samples == Some(0) {
                return Err(Error::InvalidParameter("samples must be at least 1".into()));
            }
            cmd_orbit(cli, family, point, *samples)
        }
        Command::Foliation { family, action } => cmd_foliation(cli, family, action),
        Command::VerifyAll { k_max } => cmd_verify_all(cli, *k_max),
    }
}

/// Runs the command line `args` (program name first), writing the result
/// to `out` (or `--output`) and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let start = Instant::now();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, outcome.body.as_bytes()),
        None => out.write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 2;
    }
    if !cli.quiet {
        let _ = write!(err, "{}", outcome.summary);
        if !outcome.summary.ends_with('\n') {
            let _ = writeln!(err);
        }
        let _ = writeln!(err, "wall time: {:.3} s", start.elapsed().as_secs_f64());
    }
    if outcome.passed {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lien2").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1,-2.5, 3e-2").unwrap(), vec![1.0, -2.5, 0.03]);
        assert!(parse_point("1,,2").is_err());
        assert!(parse_point("1,nan").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["algebra"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["algebra", "--family", "g3_1", "--lambda", "0"]).0, 2);
        assert_eq!(run_args(&["orbit", "--family", "g4_4", "--point", "1,2"]).0, 2);
    }

    #[test]
    fn algebra_report() {
        let (code, out, _) = run_args(&["algebra", "--family", "g3_1", "--lambda", "0.5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["jacobi_defect"], json!(0.0));
        assert_eq!(v["derived_dim"], json!(2));
    }
}
