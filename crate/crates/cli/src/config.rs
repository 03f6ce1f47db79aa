//! Flat `key = value` config files and their merge with command-line flags.
//!
//! Grammar, one entry per line:
//!
//! ```text
//! line    := blank | comment | entry
//! comment := '#' any*
//! entry   := key ws* '=' ws* value
//! key     := [a-z_]+            (one of KEYS)
//! value   := number | word | number (',' number)*
//! ```
//!
//! Keys may appear once. Flags win over file values; anything unset falls back to the
//! built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use hyrobin::radial_oracle::{FarBoundary, Numerics};
use hyrobin::verifier::Tolerances;
use serde_json::{json, Map, Value};

use crate::args::{FarBc, Format, GlobalArgs};
use crate::error::{CliError, CliResult};

pub const KEYS: &[&str] = &[
    "alpha",
    "alphas",
    "area",
    "b",
    "closed_form_tolerance",
    "equivalence_tolerance",
    "essential_gap",
    "far_bc",
    "format",
    "grading",
    "grid_points",
    "min_radius",
    "oracle_tolerance",
    "out",
    "perimeter",
    "precision",
    "radii",
    "radius",
    "suite",
    "t",
    "truncation",
];

pub const DEFAULT_PRECISION: usize = 12;
pub const MAX_PRECISION: usize = 17;

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, (usize, String)>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let n = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {n}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(CliError::Config(format!("line {n}: unknown key `{key}`")));
            }
            if value.is_empty() {
                return Err(CliError::Config(format!("line {n}: empty value for `{key}`")));
            }
            if entries.insert(key.to_owned(), (n, value.to_owned())).is_some() {
                return Err(CliError::Config(format!("line {n}: duplicate key `{key}`")));
            }
        }
        Ok(Self { entries })
    }

    pub fn scalar<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.entries
            .get(key)
            .map(|(n, v)| {
                v.parse()
                    .map_err(|_| CliError::Config(format!("line {n}: cannot parse `{v}` for `{key}`")))
            })
            .transpose()
    }

    pub fn list(&self, key: &str) -> CliResult<Option<Vec<f64>>> {
        self.entries
            .get(key)
            .map(|(n, v)| {
                v.split(',')
                    .map(|x| {
                        x.trim()
                            .parse()
                            .map_err(|_| CliError::Config(format!("line {n}: cannot parse `{x}` in `{key}`")))
                    })
                    .collect()
            })
            .transpose()
    }

    pub fn choice<T: ValueEnum>(&self, key: &str) -> CliResult<Option<T>> {
        self.entries
            .get(key)
            .map(|(n, v)| {
                T::from_str(v, true).map_err(|_| CliError::Config(format!("line {n}: invalid value `{v}` for `{key}`")))
            })
            .transpose()
    }
}

/// Flag value if given, else file value, else nothing.
pub fn layered<T>(flag: Option<T>, file: CliResult<Option<T>>) -> CliResult<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file,
    }
}

/// Numerics, tolerances and output settings after merging flags over the file.
#[derive(Debug, Clone)]
pub struct Settings {
    pub numerics: Numerics<f64>,
    pub min_radius: f64,
    pub tolerances: Tolerances,
    pub precision: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn check_tolerance(name: &str, v: f64) -> CliResult<f64> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("{name} must be nonnegative and finite, got {v}")))
    }
}

impl Settings {
    pub fn resolve(g: &GlobalArgs, file: &ConfigFile) -> CliResult<Self> {
        let defaults = Numerics::<f64>::default();
        let far_bc = match layered(g.far_bc, file.choice("far_bc"))? {
            Some(FarBc::Neumann) => FarBoundary::Neumann,
            _ => FarBoundary::Dirichlet,
        };
        let numerics = Numerics {
            truncation: layered(g.truncation, file.scalar("truncation"))?.unwrap_or(defaults.truncation),
            grid_points: layered(g.grid_points, file.scalar("grid_points"))?.unwrap_or(defaults.grid_points),
            grading: layered(g.grading, file.scalar("grading"))?.unwrap_or(defaults.grading),
            far_bc,
        };
        numerics.validate()?;

        let min_radius = layered(g.min_radius, file.scalar("min_radius"))?.unwrap_or(hyrobin::disk_solver::MIN_RADIUS);
        if !(min_radius > 0.0) || !min_radius.is_finite() {
            return Err(CliError::Usage(format!("min_radius must be positive, got {min_radius}")));
        }

        let d = Tolerances::default();
        let tolerances = Tolerances {
            oracle: check_tolerance(
                "oracle_tolerance",
                layered(g.oracle_tolerance, file.scalar("oracle_tolerance"))?.unwrap_or(d.oracle),
            )?,
            closed_form: check_tolerance(
                "closed_form_tolerance",
                layered(g.closed_form_tolerance, file.scalar("closed_form_tolerance"))?.unwrap_or(d.closed_form),
            )?,
            equivalence: check_tolerance(
                "equivalence_tolerance",
                layered(g.equivalence_tolerance, file.scalar("equivalence_tolerance"))?.unwrap_or(d.equivalence),
            )?,
            essential_gap: check_tolerance(
                "essential_gap",
                layered(g.essential_gap, file.scalar("essential_gap"))?.unwrap_or(d.essential_gap),
            )?,
            ..d
        };

        let precision = layered(g.precision, file.scalar("precision"))?.unwrap_or(DEFAULT_PRECISION);
        if !(1..=MAX_PRECISION).contains(&precision) {
            return Err(CliError::Usage(format!("precision must be in 1..={MAX_PRECISION}, got {precision}")));
        }
        let format = layered(g.format, file.choice("format"))?.unwrap_or(Format::Csv);
        let out = layered(g.out.clone(), file.scalar::<String>("out").map(|o| o.map(PathBuf::from)))?;

        Ok(Self {
            numerics,
            min_radius,
            tolerances,
            precision,
            format,
            out,
        })
    }

    /// The resolved configuration as embedded in every artifact. The output path is a
    /// destination, not an input, and is left out so that equal runs give equal bytes.
    pub fn record(&self, command: &str, parameters: Map<String, Value>) -> Value {
        let t = &self.tolerances;
        json!({
            "command": command,
            "parameters": parameters,
            "numerics": {
                "truncation": self.numerics.truncation,
                "grid_points": self.numerics.grid_points,
                "grading": self.numerics.grading,
                "far_bc": match self.numerics.far_bc {
                    FarBoundary::Dirichlet => "dirichlet",
                    FarBoundary::Neumann => "neumann",
                },
                "min_radius": self.min_radius,
            },
            "tolerances": {
                "oracle": t.oracle,
                "closed_form": t.closed_form,
                "equivalence": t.equivalence,
                "essential_gap": t.essential_gap,
                "flip_offset": t.flip_offset,
                "probe_offset": t.probe_offset,
            },
            "output": {
                "format": match self.format {
                    Format::Csv => "csv",
                    Format::Json => "json",
                },
                "precision": self.precision,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entries_and_comments() {
        let f = ConfigFile::parse("# numerics\ntruncation = 60\n\nradii=0.5, 1 ,2\nfar_bc = Neumann\n").unwrap();
        assert_eq!(f.scalar::<f64>("truncation").unwrap(), Some(60.0));
        assert_eq!(f.list("radii").unwrap(), Some(vec![0.5, 1.0, 2.0]));
        assert_eq!(f.choice::<FarBc>("far_bc").unwrap(), Some(FarBc::Neumann));
        assert_eq!(f.scalar::<f64>("alpha").unwrap(), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(ConfigFile::parse("truncation 60").is_err());
        assert!(ConfigFile::parse("colour = red").is_err());
        assert!(ConfigFile::parse("alpha = 1\nalpha = 2").is_err());
        assert!(ConfigFile::parse("alpha =").is_err());
        let f = ConfigFile::parse("grid_points = many").unwrap();
        assert!(f.scalar::<usize>("grid_points").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = ConfigFile::parse("truncation = 60\nprecision = 8").unwrap();
        let flags = GlobalArgs {
            truncation: Some(30.0),
            ..Default::default()
        };
        let s = Settings::resolve(&flags, &file).unwrap();
        assert_eq!(s.numerics.truncation, 30.0);
        assert_eq!(s.precision, 8);
        assert_eq!(s.numerics.grid_points, 8000);
    }

    #[test]
    fn invalid_settings_rejected() {
        let file = ConfigFile::parse("precision = 40").unwrap();
        assert!(Settings::resolve(&GlobalArgs::default(), &file).is_err());
        let file = ConfigFile::parse("truncation = 2").unwrap();
        assert_eq!(Settings::resolve(&GlobalArgs::default(), &file).unwrap_err().exit_code(), 1);
    }
}
