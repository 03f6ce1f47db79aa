use std::path::{Path, PathBuf};

use hyrobin::disk_solver::{alpha_star_upper_bound, DiskSolver, SpectralResult};
use hyrobin::geometry::{
    avg_curvature, comparison_disks, disk_geometry, matching_disk_radius, parallel_perimeter, validate_domain_spec,
    DomainSpec, DEFAULT_ISOPERIMETRIC_SLACK,
};
use hyrobin::scalar::coth;
use hyrobin::verifier::{VerificationReport, Verifier};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, Format, GeometryQuery, Suite};
use crate::config::{layered, ConfigFile, Settings};
use crate::error::{CliError, CliResult};
use crate::output::{document, fmt_float, write_text};

const COMPARE_ALPHAS: [f64; 4] = [-5.0, -2.0, -1.0, -0.6];
const COMPARE_RADII: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
const POINCARE_B: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

const MONOTONICITY_ALPHAS: [f64; 2] = [-2.0, 0.0];
const MONOTONICITY_RADII: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
const THEOREM_ALPHAS: [f64; 2] = [-2.0, -1.0];
/// (perimeter, area) pairs besides the unit disk.
const THEOREM_SPECS: [(f64, f64); 2] = [(10.0, 3.0), (20.0, 10.0)];
const ALPHA_STAR_RADII: [f64; 6] = [0.25, 0.5, 1.0, 2.0, 5.0, 10.0];
const ESSENTIAL_RADIUS: f64 = 1.0;
const ESSENTIAL_TRUNCATIONS: [f64; 3] = [20.0, 40.0, 80.0];
const ESSENTIAL_ABOVE_CRITICAL: f64 = 0.05;

/// What a finished command reports back to `main`.
pub struct Finished {
    /// False when a verification report failed.
    pub pass: bool,
}

struct Ctx {
    settings: Settings,
    file: ConfigFile,
    verifier: Verifier,
}

fn required<T>(name: &str, v: Option<T>) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{name} (or config key `{name}`)")))
}

impl Ctx {
    fn scalar(&self, name: &str, flag: Option<f64>) -> CliResult<f64> {
        required(name, layered(flag, self.file.scalar(name))?)
    }

    fn list(&self, name: &str, flag: Option<Vec<f64>>, default: Option<&[f64]>) -> CliResult<Vec<f64>> {
        let v = layered(flag, self.file.list(name))?.or_else(|| default.map(<[f64]>::to_vec));
        required(name, v)
    }

    fn solver(&self) -> &DiskSolver<f64> {
        &self.verifier.solver
    }

    fn emit(&self, command: &str, params: Value, body: Value) -> CliResult<()> {
        let Value::Object(params) = params else { unreachable!() };
        let Value::Object(body) = body else { unreachable!() };
        let text = document(self.settings.record(command, params), body, self.settings.precision);
        write_text(self.settings.out.as_deref(), &text)
    }

    fn emit_reports(&self, command: &str, params: Value, reports: &[VerificationReport]) -> CliResult<Finished> {
        let pass = reports.iter().all(|r| r.pass);
        for r in reports {
            match &r.first_failure {
                None => eprintln!("PASS {} ({} outcomes)", r.check_name, r.outcomes.len()),
                Some(label) => eprintln!("FAIL {}: {label}", r.check_name),
            }
        }
        let checks = serde_json::to_value(reports).expect("reports serialize");
        self.emit(command, params, json!({ "checks": checks, "pass": pass }))?;
        Ok(Finished { pass })
    }
}

fn spectral_json(r: &SpectralResult<f64>) -> Value {
    json!({
        "lambda": r.lambda,
        "nu": r.nu,
        "kind": r.kind.as_str(),
        "residual": r.residual,
    })
}

pub fn run(cli: Cli) -> CliResult<Finished> {
    let file = match &cli.global.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let settings = Settings::resolve(&cli.global, &file)?;
    let verifier = Verifier {
        numerics: settings.numerics,
        tolerances: settings.tolerances,
        solver: DiskSolver::default().with_min_radius(settings.min_radius),
    };
    let ctx = Ctx {
        settings,
        file,
        verifier,
    };
    let done = Finished { pass: true };

    match cli.command {
        Command::DiskEigen { alpha, radius } => {
            let alpha = ctx.scalar("alpha", alpha)?;
            let radius = ctx.scalar("radius", radius)?;
            let r = ctx.solver().lambda1(alpha, radius)?;
            ctx.emit("disk-eigen", json!({ "alpha": alpha, "radius": radius }), spectral_json(&r))?;
            Ok(done)
        }
        Command::AlphaStar { radius } => {
            let radius = ctx.scalar("radius", radius)?;
            let alpha_star = ctx.solver().alpha_star(radius)?;
            let upper_bound = alpha_star_upper_bound(radius);
            ctx.emit(
                "alpha-star",
                json!({ "radius": radius }),
                json!({
                    "alpha_star": alpha_star,
                    "upper_bound": upper_bound,
                    "bound_holds": alpha_star <= upper_bound + ctx.settings.tolerances.closed_form,
                }),
            )?;
            Ok(done)
        }
        Command::Sweep { alphas, radii } => {
            let alphas = ctx.list("alphas", alphas, None)?;
            let radii = ctx.list("radii", radii, None)?;
            sweep(&ctx, &alphas, &radii)?;
            Ok(done)
        }
        Command::OracleCompare { alphas, radii } => {
            let alphas = ctx.list("alphas", alphas, Some(&COMPARE_ALPHAS))?;
            let radii = ctx.list("radii", radii, Some(&COMPARE_RADII))?;
            let report = ctx.verifier.oracle_equivalence(&alphas, &radii)?;
            ctx.emit_reports("oracle-compare", json!({ "alphas": alphas, "radii": radii }), &[report])
        }
        Command::PoincareCheck { b } => {
            let b = ctx.list("b", b, Some(&POINCARE_B))?;
            let report = ctx.verifier.poincare(&b)?;
            ctx.emit_reports("poincare-check", json!({ "b": b }), &[report])
        }
        Command::Verify { suite } => {
            let suite = required("suite", layered(suite, ctx.file.choice("suite"))?)?;
            let reports = run_suite(&ctx.verifier, suite)?;
            let name = clap::ValueEnum::to_possible_value(&suite).expect("suite has a name");
            ctx.emit_reports("verify", json!({ "suite": name.get_name() }), &reports)
        }
        Command::Geometry(query) => {
            geometry(&ctx, query)?;
            Ok(done)
        }
    }
}

fn sweep(ctx: &Ctx, alphas: &[f64], radii: &[f64]) -> CliResult<()> {
    if alphas.is_empty() || radii.is_empty() {
        return Err(CliError::Usage("sweep needs nonempty --alphas and --radii".into()));
    }
    let grid: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| radii.iter().map(move |&r| (a, r))).collect();
    let rows = grid
        .par_iter()
        .map(|&(a, r)| ctx.solver().lambda1(a, r).map(|s| (a, r, s)))
        .collect::<Result<Vec<_>, _>>()?;
    let params = json!({ "alphas": alphas, "radii": radii });

    match ctx.settings.format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(a, r, s)| {
                    let mut row = json!({ "alpha": a, "R": r });
                    if let (Value::Object(row), Value::Object(rest)) = (&mut row, spectral_json(s)) {
                        row.extend(rest.into_iter().filter(|(k, _)| k != "residual"));
                    }
                    row
                })
                .collect();
            ctx.emit("sweep", params, json!({ "rows": rows }))
        }
        Format::Csv => {
            let p = ctx.settings.precision;
            let mut text = String::from("alpha,R,lambda,nu,kind\n");
            for (a, r, s) in &rows {
                let nu = s.nu.map(|nu| fmt_float(nu, p)).unwrap_or_default();
                text.push_str(&format!(
                    "{},{},{},{nu},{}\n",
                    fmt_float(*a, p),
                    fmt_float(*r, p),
                    fmt_float(s.lambda, p),
                    s.kind.as_str()
                ));
            }
            write_text(ctx.settings.out.as_deref(), &text)?;
            // CSV has no room for the config, so files get a sidecar next to them
            if let Some(out) = &ctx.settings.out {
                let Value::Object(params) = params else { unreachable!() };
                let meta = document(
                    ctx.settings.record("sweep", params),
                    Map::from_iter([
                        ("columns".into(), json!(["alpha", "R", "lambda", "nu", "kind"])),
                        ("rows".into(), json!(rows.len())),
                    ]),
                    p,
                );
                write_text(Some(&sidecar_path(out)), &meta)?;
            }
            Ok(())
        }
    }
}

/// `<out>.meta.json`
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

pub fn run_suite(v: &Verifier, suite: Suite) -> CliResult<Vec<VerificationReport>> {
    let specs = || -> CliResult<Vec<DomainSpec<f64>>> {
        let mut s = vec![DomainSpec::disk(1.0)?];
        s.extend(THEOREM_SPECS.iter().map(|&(l, a)| DomainSpec::new(l, a)));
        Ok(s)
    };
    let mut reports = Vec::new();
    match suite {
        Suite::Monotonicity => {
            for alpha in MONOTONICITY_ALPHAS {
                reports.push(v.radius_monotonicity(alpha, &MONOTONICITY_RADII)?);
            }
        }
        Suite::MainTheorem => {
            for spec in specs()? {
                for alpha in THEOREM_ALPHAS {
                    reports.push(v.main_theorem(&spec, alpha, None)?);
                }
            }
        }
        Suite::Corollaries => {
            for spec in specs()? {
                for alpha in THEOREM_ALPHAS {
                    reports.push(v.corollaries(&spec, alpha)?);
                }
            }
        }
        Suite::AlphaStarBounds => reports.push(v.alpha_star_bounds(&ALPHA_STAR_RADII)?),
        Suite::EssentialBottom => {
            let near = v.solver.alpha_star(ESSENTIAL_RADIUS)? + ESSENTIAL_ABOVE_CRITICAL;
            for alpha in [0.0, near] {
                reports.push(v.essential_bottom(alpha, ESSENTIAL_RADIUS, &ESSENTIAL_TRUNCATIONS)?);
            }
        }
        Suite::All => {
            for s in [
                Suite::Monotonicity,
                Suite::MainTheorem,
                Suite::Corollaries,
                Suite::AlphaStarBounds,
                Suite::EssentialBottom,
            ] {
                reports.extend(run_suite(v, s)?);
            }
        }
    }
    Ok(reports)
}

fn geometry(ctx: &Ctx, query: GeometryQuery) -> CliResult<()> {
    match query {
        GeometryQuery::Disk { radius } => {
            let radius = ctx.scalar("radius", radius)?;
            let (area, perimeter) = disk_geometry(radius)?;
            ctx.emit(
                "geometry disk",
                json!({ "radius": radius }),
                json!({ "area": area, "perimeter": perimeter, "avg_curvature": coth(radius) }),
            )
        }
        GeometryQuery::Parallel { perimeter, area, t } => {
            let perimeter = ctx.scalar("perimeter", perimeter)?;
            let area = ctx.scalar("area", area)?;
            let t = ctx.scalar("t", t)?;
            let p = parallel_perimeter(&DomainSpec::new(perimeter, area), t)?;
            ctx.emit(
                "geometry parallel",
                json!({ "perimeter": perimeter, "area": area, "t": t }),
                json!({ "parallel_perimeter": p }),
            )
        }
        GeometryQuery::Comparison { perimeter, area } => {
            let perimeter = ctx.scalar("perimeter", perimeter)?;
            let area = ctx.scalar("area", area)?;
            let spec = DomainSpec::new(perimeter, area);
            let check = validate_domain_spec(&spec, DEFAULT_ISOPERIMETRIC_SLACK);
            if !check.valid {
                return Err(CliError::Core(hyrobin::Error::Validation(check.diagnostic)));
            }
            let disks = comparison_disks(&spec)?;
            ctx.emit(
                "geometry comparison",
                json!({ "perimeter": perimeter, "area": area }),
                json!({
                    "avg_curvature": avg_curvature(&spec)?,
                    "matching_radius": matching_disk_radius(&spec)?,
                    "area_radius": disks.area_radius,
                    "perimeter_radius": disks.perimeter_radius,
                    "isoperimetric_deficit": check.deficit,
                    "relative_deficit": check.relative_deficit,
                }),
            )
        }
    }
}
