//! Subcommand definitions and their implementations.

use std::f64::consts::{PI, TAU};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use innerfn::criteria::{self, CriterionResult, MIN_ATOMS, MIN_ZEROS};
use innerfn::inner::DEFAULT_EXCLUSION;
use innerfn::levelset::{self, PgmMode, MAX_RESOLUTION, MIN_RESOLUTION};
use innerfn::norms::{self, Growth, NormEstimate};
use innerfn::{Error, Inner, Spec, C64};

use crate::examples::{example_text, NAMES};
use crate::format::{g17, parse_complex};
use crate::report::Report;
use crate::specfile::parse_spec;
use crate::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "innerfn", version, about = "Inner functions on the unit disc: evaluation, level sets, criteria and norms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the value and derivatives at a point, one "re im" line per order.
    Eval(EvalArgs),
    /// Sample the sublevel set {|theta| < eps} and write a PGM image.
    Levelset(LevelsetArgs),
    /// Run criterion checks and write a report.
    Certify(CertifyArgs),
    /// Classify Hardy or weighted Bergman membership of a derivative.
    Norms(NormsArgs),
    /// Print a built-in spec file.
    Examples(ExamplesArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Point in the disc as a complex literal, e.g. 0.5-0.25i.
    #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
    pub z: C64,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub deriv: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Occupancy,
    Labels,
}

#[derive(Debug, Args)]
pub struct LevelsetArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: f64,
    #[arg(long)]
    pub res: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Occupancy)]
    pub mode: Mode,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Comma-separated check names; all applicable checks when omitted.
    #[arg(long, value_delimiter = ',')]
    pub checks: Option<Vec<String>>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub p: f64,
    /// Bergman weight exponent; Hardy norm when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub deriv: u8,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExamplesArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(NAMES))]
    pub name: String,
}

fn complex_arg(s: &str) -> Result<C64, String> {
    parse_complex(s).ok_or_else(|| format!("'{s}' is not a complex literal of the form a+bi"))
}

/// Check names accepted by `certify --checks`.
pub const CHECKS: &[&str] = &[
    "spectrum",
    "thm1_ratio",
    "strict_ratio",
    "frostman",
    "sum_condition",
    "thin",
    "thm1b_gap",
    "thm5_condition",
    "aleksandrov",
    "schwarz_pick",
    "one_component",
];

/// Boundary samples for the Aleksandrov ratio.
pub const ALEKSANDROV_SAMPLES: usize = 4096;
/// Boundary points offered to the sum conditions before exclusion filtering.
pub const SUM_POINTS: usize = 256;
/// Interior points for the Schwarz-Pick ratios.
pub const SCHWARZ_PICK_POINTS: usize = 128;
/// Level and resolutions of the connectivity check.
pub const COMPONENT_EPSILON: f64 = 0.5;
pub const COMPONENT_RESOLUTIONS: [usize; 2] = [256, 512];
/// Largest value list copied into a certification report.
pub const MAX_REPORTED_VALUES: usize = 64;
/// Truncation bound above which `eval` raises the numerical flag.
pub const EVAL_TRUNCATION_TOL: f64 = norms::NORM_TRUNCATION_TOL;

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Eval(a) => eval(&a, out),
        Command::Levelset(a) => levelset(&a, out),
        Command::Certify(a) => certify(&a),
        Command::Norms(a) => norms(&a),
        Command::Examples(a) => {
            let text = example_text(&a.name).expect("name restricted by the parser");
            emit(out, &text)?;
            Ok(Outcome::ok())
        }
    }
}

fn load(path: &Path) -> Result<Spec, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_spec(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn eval(a: &EvalArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let spec = load(&a.spec)?;
    let f = Inner::new(&spec)?;
    let jet = f.eval(a.z)?;
    let mut text = String::new();
    for order in 0..=a.deriv as usize {
        let w = jet.derivative(order).expect("order at most 2");
        text.push_str(&format!("{} {}\n", g17(w.re), g17(w.im)));
    }
    emit(out, &text)?;
    let bound = f.truncation_bound(a.z.norm());
    if !(bound <= EVAL_TRUNCATION_TOL) {
        return Ok(Outcome::flagged(format!(
            "truncation bound {} at |z| = {} exceeds {}",
            g17(bound),
            g17(a.z.norm()),
            g17(EVAL_TRUNCATION_TOL)
        )));
    }
    Ok(Outcome::ok())
}

fn levelset(a: &LevelsetArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if !(a.eps > 0.0 && a.eps < 1.0) {
        return Err(CliError::Usage(format!("--eps must lie in (0, 1), got {}", a.eps)));
    }
    if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&a.res) {
        return Err(CliError::Usage(format!(
            "--res must lie in [{MIN_RESOLUTION}, {MAX_RESOLUTION}], got {}",
            a.res
        )));
    }
    let spec = load(&a.spec)?;
    let grid = levelset::sample_grid(&spec, a.eps, a.res)?;
    let mode = match a.mode {
        Mode::Occupancy => PgmMode::Occupancy,
        Mode::Labels => PgmMode::Labels,
    };
    write_file(&a.out, &levelset::render_pgm(&grid, mode))?;

    let mut r = Report::new();
    r.text("command", "levelset");
    r.float("epsilon", a.eps);
    r.text("resolution", a.res);
    r.text("mode", if a.mode == Mode::Occupancy { "occupancy" } else { "labels" });
    r.text("connectivity", 8);
    r.text("component_count", grid.component_count);
    r.text("truncation_ok", grid.truncation_ok);
    r.float("truncation_bound", grid.truncation_bound);
    r.float("area_fraction", grid.area_fraction());
    r.text("occupied_cells", grid.occupied_cells());
    r.float("collar_radius", levelset::collar_radius(a.res));
    match &a.report {
        Some(path) => write_file(path, &r.render())?,
        None => emit(out, &r.render())?,
    }
    if grid.truncation_ok {
        Ok(Outcome::ok())
    } else {
        Ok(Outcome::flagged(format!(
            "truncation bound {} at the grid edge is too large for eps = {}",
            g17(grid.truncation_bound),
            g17(a.eps)
        )))
    }
}

/// Accumulates check results and the numerical flag.
struct Certification {
    report: Report,
    flag: Option<String>,
}

impl Certification {
    fn record(&mut self, prefix: &str, result: Result<CriterionResult, Error>) {
        let r = &mut self.report;
        match result {
            Ok(c) => {
                r.text(format!("{prefix}.verdict"), c.verdict);
                r.float(format!("{prefix}.statistic"), c.statistic);
                r.text(format!("{prefix}.values_count"), c.values.len());
                if c.values.len() <= MAX_REPORTED_VALUES {
                    r.floats(format!("{prefix}.values"), c.values.iter().copied());
                }
                for (k, v) in &c.metadata {
                    r.value(format!("{prefix}.{k}"), v);
                }
            }
            Err(e) => {
                if matches!(e, Error::InsufficientTruncation { .. }) && self.flag.is_none() {
                    self.flag = Some(format!("{prefix}: {e}"));
                }
                r.text(format!("{prefix}.verdict"), "error");
                r.text(format!("{prefix}.error"), e);
            }
        }
    }

    fn not_applicable(&mut self, prefix: &str, reason: &str) {
        self.report.text(format!("{prefix}.verdict"), "not_applicable");
        self.report.text(format!("{prefix}.reason"), reason);
    }
}

/// Boundary points at half-step offsets that clear the spectrum.
fn boundary_points(spec: &Spec) -> Vec<C64> {
    let est = spec.spectrum();
    (0..SUM_POINTS)
        .map(|k| C64::from_polar(1.0, TAU * (k as f64 + 0.5) / SUM_POINTS as f64))
        .filter(|&z| est.is_clear(z, DEFAULT_EXCLUSION))
        .collect()
}

/// Largest radius from a fixed ladder whose truncation bound passes the
/// Schwarz-Pick tolerance; the top of the ladder when none does.
fn schwarz_pick_radius(spec: &Spec) -> f64 {
    let tol = criteria::Thresholds::default().schwarz_pick_truncation;
    [0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1]
        .into_iter()
        .find(|&r| spec.truncation_bound(r) <= tol)
        .unwrap_or(0.9)
}

/// Deterministic sunflower points filling the disc of radius `rmax`.
fn interior_points(rmax: f64) -> Vec<C64> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..SCHWARZ_PICK_POINTS)
        .map(|k| {
            let r = rmax * ((k as f64 + 0.5) / SCHWARZ_PICK_POINTS as f64).sqrt();
            C64::from_polar(r, golden * k as f64)
        })
        .collect()
}

fn selected_checks(a: &CertifyArgs) -> Result<(Vec<&'static str>, bool), CliError> {
    let Some(list) = &a.checks else {
        return Ok((CHECKS.to_vec(), false));
    };
    let mut chosen = Vec::new();
    for name in list.iter().map(|s| s.trim()) {
        let known = CHECKS.iter().find(|&&c| c == name).ok_or_else(|| {
            CliError::Usage(format!("unknown check '{name}'; expected one of {}", CHECKS.join(", ")))
        })?;
        if !chosen.contains(known) {
            chosen.push(*known);
        }
    }
    chosen.sort_by_key(|c| CHECKS.iter().position(|k| k == c));
    Ok((chosen, true))
}

fn certify(a: &CertifyArgs) -> Result<Outcome, CliError> {
    let (checks, explicit) = selected_checks(a)?;
    let spec = load(&a.spec)?;
    let has = |name: &str| checks.contains(&name);
    let mut c = Certification {
        report: Report::new(),
        flag: None,
    };
    c.report.text("command", "certify");
    c.report.list("checks", checks.iter());
    c.report.text("blaschke_parts", spec.blaschke_parts().len());
    c.report.text("singular_parts", spec.singular_parts().len());
    let thresholds = criteria::Thresholds::default();
    let zetas = boundary_points(&spec);

    if has("spectrum") {
        let est = spec.spectrum();
        c.report.text("spectrum.points", est.points.len());
        c.report.floats("spectrum.angles", est.points.iter().map(|p| p.point.arg()));
        c.report.list(
            "spectrum.kinds",
            est.points.iter().map(|p| match p.kind {
                criteria::SpectrumKind::ZeroAccumulation => "zero_accumulation",
                criteria::SpectrumKind::Atom => "atom",
                criteria::SpectrumKind::AtomAccumulation => "atom_accumulation",
            }),
        );
    }

    for (i, family) in spec.blaschke_parts().iter().enumerate() {
        let prefix = format!("blaschke{i}");
        let few = family.count() < MIN_ZEROS;
        for name in ["thm1_ratio", "strict_ratio"] {
            if !has(name) {
                continue;
            }
            let key = format!("{prefix}.{name}");
            if few && !explicit {
                continue;
            }
            let result = if name == "thm1_ratio" {
                thresholds.thm1_ratio_family(family)
            } else {
                family.generate().and_then(|z| thresholds.strict_ratio(&z))
            };
            c.record(&key, result);
        }
        if has("frostman") {
            let key = format!("{prefix}.frostman");
            match family.accumulation_point() {
                Some(xi) => c.record(&key, thresholds.frostman_family(family, xi)),
                None if explicit => c.not_applicable(&key, "explicit zero list has no accumulation point"),
                None => {}
            }
        }
        if has("sum_condition") {
            let key = format!("{prefix}.sum_condition");
            c.record(&key, thresholds.sum_condition(family, &zetas, DEFAULT_EXCLUSION));
        }
    }

    if has("thin") {
        if spec.blaschke_parts().len() == 1 && spec.singular_parts().is_empty() {
            c.record("thin", thresholds.thin_test(&spec));
        } else if explicit {
            c.not_applicable("thin", "needs a single Blaschke part and no singular part");
        }
    }

    for (i, atoms) in spec.singular_parts().iter().enumerate() {
        let prefix = format!("singular{i}");
        if has("thm1b_gap") {
            let key = format!("{prefix}.thm1b_gap");
            if explicit || (!atoms.is_explicit() && atoms.count() > MIN_ATOMS) {
                c.record(&key, thresholds.thm1b_gap(atoms));
            }
        }
        if has("thm5_condition") {
            let key = format!("{prefix}.thm5_condition");
            c.record(&key, thresholds.thm5_condition(atoms, &zetas, DEFAULT_EXCLUSION));
        }
    }

    if has("aleksandrov") {
        c.record(
            "aleksandrov",
            thresholds.aleksandrov_ratio(&spec, ALEKSANDROV_SAMPLES, DEFAULT_EXCLUSION),
        );
    }
    if has("schwarz_pick") {
        let rmax = schwarz_pick_radius(&spec);
        let points = interior_points(rmax);
        c.report.float("schwarz_pick.radius", rmax);
        for order in 1..=2 {
            c.record(
                &format!("schwarz_pick.order{order}"),
                thresholds.schwarz_pick_ratio(&spec, order, &points),
            );
        }
    }
    if has("one_component") {
        match levelset::one_component_test(&spec, COMPONENT_EPSILON, &COMPONENT_RESOLUTIONS) {
            Ok(t) => {
                c.report.text("one_component.verdict", t.verdict.as_str());
                c.report.float("one_component.epsilon", t.epsilon);
                c.report.list("one_component.resolutions", t.resolutions.iter());
                c.report.list("one_component.counts", t.counts.iter());
                c.report.list("one_component.truncation_ok", t.truncation_ok.iter());
                if t.truncation_ok.iter().any(|ok| !ok) && c.flag.is_none() {
                    c.flag = Some("one_component: truncation too coarse for the grid".into());
                }
            }
            Err(e) => c.record("one_component", Err(e)),
        }
    }

    write_file(&a.out, &c.report.render())?;
    Ok(Outcome { flag: c.flag })
}

fn norm_report(r: &mut Report, est: &NormEstimate) {
    r.text("classification", est.classification);
    r.float("value", est.value);
    r.float("max_radius", est.max_radius);
    r.text("quadrature_points", est.quadrature_points);
    r.text("ceiling", est.ceiling.as_deref().unwrap_or("none"));
    r.floats("radii", est.r_profile.iter().map(|&(rad, _)| rad));
    r.floats("profile", est.r_profile.iter().map(|&(_, v)| v));
}

fn norms(a: &NormsArgs) -> Result<Outcome, CliError> {
    let spec = load(&a.spec)?;
    let deriv = a.deriv as usize;
    let (kind, est) = match a.alpha {
        Some(alpha) => ("bergman", norms::bergman_norm(&spec, deriv, a.p, alpha)?),
        None => ("hardy", norms::hardy_classification(&spec, deriv, a.p)?),
    };
    let mut r = Report::new();
    r.text("command", "norms");
    r.text("norm", kind);
    r.float("p", a.p);
    if let Some(alpha) = a.alpha {
        r.float("alpha", alpha);
    }
    r.text("deriv", deriv);
    norm_report(&mut r, &est);
    write_file(&a.out, &r.render())?;
    let truncated = est
        .ceiling
        .as_deref()
        .is_some_and(|c| c.starts_with("truncation"));
    if truncated && est.classification == Growth::Inconclusive {
        return Ok(Outcome::flagged(format!(
            "profile stopped at r = {} by truncation before the classification settled",
            g17(est.max_radius)
        )));
    }
    Ok(Outcome::ok())
}

