//! Job configuration: a TOML file, overridden by command-line flags.
//!
//! ```toml
//! method = "rpm"          # rpm | pt | crlm | asymptotic | compare | converge
//! F = "0.005"             # string or number; kept as a decimal string
//! state = "1 0 0"         # ket |n q m>
//! digits = 160            # working precision, optional
//!
//! [rpm]
//! d_min = 2
//! d_max = 30
//! disp = 0                # Hankel displacement d
//! seed_mesh = 20          # mesh size for excited-state seeds
//!
//! [pt]
//! orders = 130            # number of terms; omit for optimal truncation
//!
//! [crlm]
//! mesh = 30
//! theta = [0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6]
//! quad_order = 66         # default 2N + 2|m| + 6
//! assembly_digits = 30
//! degrade = 6             # round matrix entries to this many digits
//!
//! [output]
//! path = "out.csv"
//! format = "csv"          # csv | json | md
//! check = false
//! trace = "trace.csv"     # convergence CSV for rpm
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use starkres_core::crlm::DEFAULT_THETA_SCAN;
use starkres_core::{PrecisionContext, StateLabel};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rpm,
    Pt,
    Crlm,
    Asymptotic,
    Compare,
    Converge,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Rpm => "rpm",
            Method::Pt => "pt",
            Method::Crlm => "crlm",
            Method::Asymptotic => "asymptotic",
            Method::Compare => "compare",
            Method::Converge => "converge",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Md,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum FieldValue {
    Text(String),
    Number(f64),
}

impl FieldValue {
    fn into_string(self) -> String {
        match self {
            FieldValue::Text(s) => s,
            FieldValue::Number(x) => format!("{x}"),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    method: Option<Method>,
    #[serde(rename = "F", alias = "field")]
    field: Option<FieldValue>,
    state: Option<String>,
    digits: Option<u32>,
    #[serde(default)]
    rpm: RpmSection,
    #[serde(default)]
    pt: PtSection,
    #[serde(default)]
    crlm: CrlmSection,
    #[serde(default)]
    output: OutputSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RpmSection {
    d_min: Option<usize>,
    d_max: Option<usize>,
    disp: Option<usize>,
    seed_mesh: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PtSection {
    orders: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrlmSection {
    mesh: Option<usize>,
    theta: Option<Vec<f64>>,
    quad_order: Option<usize>,
    assembly_digits: Option<u32>,
    degrade: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    path: Option<PathBuf>,
    format: Option<Format>,
    check: Option<bool>,
    trace: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

/// Values given on the command line; `None` leaves the file value in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub method: Option<Method>,
    pub field: Option<String>,
    pub state: Option<String>,
    pub digits: Option<u32>,
    pub d_min: Option<usize>,
    pub d_max: Option<usize>,
    pub disp: Option<usize>,
    pub seed_mesh: Option<usize>,
    pub orders: Option<usize>,
    pub mesh: Option<usize>,
    pub theta: Option<Vec<f64>>,
    pub quad_order: Option<usize>,
    pub assembly_digits: Option<u32>,
    pub degrade: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub check: bool,
    pub trace: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RpmParams {
    pub d_min: usize,
    /// Defaults to 30 for the ground state and 20 otherwise.
    pub d_max: usize,
    pub disp: usize,
    pub seed_mesh: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrlmParams {
    pub mesh: usize,
    pub theta: Vec<f64>,
    pub quad_order: usize,
    pub assembly_digits: u32,
    pub degrade: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputParams {
    pub path: Option<PathBuf>,
    pub format: Format,
    pub check: bool,
    pub trace: Option<PathBuf>,
}

/// A validated job.
#[derive(Clone, Debug, PartialEq)]
pub struct JobConfig {
    pub method: Method,
    /// Field strength exactly as written by the user.
    pub field: String,
    pub state: StateLabel,
    pub digits: Option<u32>,
    pub rpm: RpmParams,
    /// Number of perturbation terms; `None` selects optimal truncation.
    pub orders: Option<usize>,
    pub crlm: CrlmParams,
    pub output: OutputParams,
}

/// Parses a ket written as `"n q m"`, optionally wrapped in `|...>`.
pub fn parse_state(s: &str) -> Result<StateLabel, CliError> {
    let inner = s.trim().trim_start_matches('|').trim_end_matches('>').trim_end_matches('\u{27e9}');
    let parts: Vec<&str> = inner.split(|c: char| c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).collect();
    let bad = || CliError::Config(format!("state must be a ket \"n q m\", got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let num = |p: &str| p.replace('\u{2212}', "-").parse::<i64>().map_err(|_| bad());
    let (n, q, m) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
    if n < 1 || n > u32::MAX as i64 || q.abs() > i32::MAX as i64 || m.abs() > i32::MAX as i64 {
        return Err(bad());
    }
    StateLabel::from_ket(n as u32, q as i32, m as i32).map_err(|e| CliError::Config(e.to_string()))
}

fn parse_field(s: &str) -> Result<f64, CliError> {
    let ctx = PrecisionContext::new(40).expect("40 digits is valid");
    let v = ctx.parse(s).map_err(|_| CliError::Config(format!("field strength {s:?} is not a decimal number")))?;
    if v.is_sign_negative() && !v.is_zero() {
        return Err(CliError::Config(format!("field strength must be non-negative, got {s}")));
    }
    Ok(v.to_f64())
}

impl JobConfig {
    /// Merges `file` with `flags` and validates the result.
    pub fn resolve(file: FileConfig, flags: Overrides) -> Result<Self, CliError> {
        let method = flags
            .method
            .or(file.method)
            .ok_or_else(|| CliError::Config("no method given".into()))?;
        let field = flags
            .field
            .or(file.field.map(FieldValue::into_string))
            .ok_or_else(|| CliError::Config("field strength F is required".into()))?
            .trim()
            .to_string();
        let f = parse_field(&field)?;
        let state = match flags.state.or(file.state) {
            Some(s) => parse_state(&s)?,
            None => StateLabel::ground(),
        };
        let digits = flags.digits.or(file.digits);
        if let Some(d) = digits {
            if d < PrecisionContext::MIN_ENGINE_DIGITS {
                return Err(CliError::Config(format!(
                    "digits must be at least {}, got {d}",
                    PrecisionContext::MIN_ENGINE_DIGITS
                )));
            }
        }

        let d_min = flags.d_min.or(file.rpm.d_min).unwrap_or(2);
        let default_max = if state == StateLabel::ground() { 30 } else { 20 };
        let d_max = flags.d_max.or(file.rpm.d_max).unwrap_or(default_max.max(d_min));
        if d_min == 0 || d_min > d_max {
            return Err(CliError::Config(format!("invalid dimension range {d_min}..={d_max}")));
        }
        let rpm = RpmParams {
            d_min,
            d_max,
            disp: flags.disp.or(file.rpm.disp).unwrap_or(0),
            seed_mesh: flags.seed_mesh.or(file.rpm.seed_mesh).unwrap_or(20),
        };

        let orders = flags.orders.or(file.pt.orders);
        if let Some(k) = orders {
            if !(1..=200).contains(&k) {
                return Err(CliError::Config(format!("orders must lie in 1..=200, got {k}")));
            }
        }

        let mesh = flags.mesh.or(file.crlm.mesh).unwrap_or(30);
        if !(2..=30).contains(&mesh) {
            return Err(CliError::Config(format!("mesh size must lie in 2..=30, got {mesh}")));
        }
        let theta = flags.theta.or(file.crlm.theta).unwrap_or_else(|| DEFAULT_THETA_SCAN.to_vec());
        if theta.len() < 2 || theta.iter().any(|t| !(*t > 0.0 && *t < std::f64::consts::FRAC_PI_4)) {
            return Err(CliError::Config("theta scan needs at least two angles in (0, pi/4)".into()));
        }
        let min_quad = 2 * mesh + 2 * state.abs_m() as usize + 6;
        let quad_order = flags.quad_order.or(file.crlm.quad_order).unwrap_or(min_quad);
        if quad_order < min_quad {
            return Err(CliError::Config(format!("quadrature order must be at least {min_quad}, got {quad_order}")));
        }
        let assembly_digits = flags.assembly_digits.or(file.crlm.assembly_digits).unwrap_or(30);
        if assembly_digits < 20 {
            return Err(CliError::Config(format!("assembly digits must be at least 20, got {assembly_digits}")));
        }
        let degrade = flags.degrade.or(file.crlm.degrade);
        if let Some(s) = degrade {
            if !(1..=15).contains(&s) {
                return Err(CliError::Config(format!("degrade must lie in 1..=15, got {s}")));
            }
        }
        let crlm = CrlmParams { mesh, theta, quad_order, assembly_digits, degrade };

        let output = OutputParams {
            path: flags.out.or(file.output.path),
            format: flags.format.or(file.output.format).unwrap_or_default(),
            check: flags.check || file.output.check.unwrap_or(false),
            trace: flags.trace.or(file.output.trace),
        };
        if method == Method::Asymptotic && !(f > 0.0 && f <= 0.05) {
            return Err(CliError::Config(format!("asymptotic width needs 0 < F <= 0.05, got {field}")));
        }
        Ok(Self { method, field, state, digits, rpm, orders, crlm, output })
    }

    /// Field strength as a float; validated at construction.
    pub fn field_f64(&self) -> f64 {
        parse_field(&self.field).expect("validated field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(method: Method, field: &str) -> Overrides {
        Overrides { method: Some(method), field: Some(field.into()), ..Default::default() }
    }

    #[test]
    fn ket_forms() {
        assert_eq!(parse_state("1 0 0").unwrap(), StateLabel::ground());
        assert_eq!(parse_state("|2 -1 0>").unwrap(), StateLabel::new(0, 1, 0));
        assert_eq!(parse_state("2, 0, 1").unwrap(), StateLabel::new(0, 0, 1));
        assert!(parse_state("2 0").is_err());
        assert!(parse_state("2 2 0").is_err());
        assert!(parse_state("0 0 0").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = FileConfig::parse("method = \"pt\"\nF = 0.004\nstate = \"2 1 0\"\n[pt]\norders = 40\n").unwrap();
        let mut o = Overrides { field: Some("0.005".into()), ..Default::default() };
        o.orders = Some(130);
        let job = JobConfig::resolve(file, o).unwrap();
        assert_eq!(job.method, Method::Pt);
        assert_eq!(job.field, "0.005");
        assert_eq!(job.orders, Some(130));
        assert_eq!(job.state, StateLabel::new(1, 0, 0));
    }

    #[test]
    fn numeric_field_in_file() {
        let file = FileConfig::parse("method = \"rpm\"\nF = 0.005\n").unwrap();
        let job = JobConfig::resolve(file, Overrides::default()).unwrap();
        assert_eq!(job.field, "0.005");
        assert_eq!(job.rpm.d_max, 30);
        assert_eq!(job.crlm.quad_order, 66);
    }

    #[test]
    fn validation_errors() {
        let bad = [
            Overrides { field: Some("-0.1".into()), ..flags(Method::Rpm, "") },
            flags(Method::Rpm, "abc"),
            Overrides { digits: Some(10), ..flags(Method::Rpm, "0.005") },
            Overrides { d_min: Some(12), d_max: Some(4), ..flags(Method::Rpm, "0.005") },
            Overrides { theta: Some(vec![0.3]), ..flags(Method::Crlm, "0.005") },
            Overrides { quad_order: Some(10), ..flags(Method::Crlm, "0.005") },
            flags(Method::Asymptotic, "0"),
        ];
        for o in bad {
            assert!(matches!(JobConfig::resolve(FileConfig::default(), o.clone()), Err(CliError::Config(_))), "{o:?}");
        }
        assert!(FileConfig::parse("colour = 3").is_err());
        assert!(JobConfig::resolve(FileConfig::default(), Overrides::default()).is_err());
    }
}
