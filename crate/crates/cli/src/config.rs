//! Flags, the flat `key = value` config file, and their merge.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use hyperform_core::{Complex64, QuadratureSpec, TruncationPolicy};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Classical E(z, s) by both routes.
    Eval,
    /// E¹ by both routes.
    Eval1,
    /// E¹ Fourier term groups against the direct sum.
    Compare,
    /// Zero Fourier coefficient of E¹.
    A0,
    /// Limit (s−1)·a₀ at s = 1.
    Residue,
    /// Integral over a lifted horocycle.
    Horocycle,
    /// Integral over a vertical geodesic segment.
    Geodesic,
    /// Unfolded integral against a holomorphic Eisenstein series.
    RankinSelberg,
    /// Hodge Laplacian eigenform and Weitzenbock checks.
    LaplacianCheck,
    /// Quadrature-vs-closed-form integral identities.
    Identities,
    /// CSV grid of E¹ by both routes.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Everything a run needs. Flags override values from `--config`.
#[derive(Debug, Clone, Parser)]
#[command(name = "hyperform", version, about = "Eisenstein series of 1-forms on the modular surface")]
#[command(args_override_self = true)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Flat `key = value` file; keys are long flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y: Option<f64>,
    /// Angle in radians.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "theta_deg")]
    pub theta: Option<f64>,
    /// Angle in degrees.
    #[arg(long, allow_negative_numbers = true)]
    pub theta_deg: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub s_im: f64,

    #[arg(long)]
    pub c_max: Option<u32>,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Fourier-mode and hypergeometric truncation tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Relative tail allowed for coset sums and truncated Dirichlet series.
    #[arg(long)]
    pub max_tail: Option<f64>,

    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    /// Finite-difference order (2 or 4).
    #[arg(long, default_value_t = 2)]
    pub order: u8,

    /// Lower end of a geodesic segment.
    #[arg(long)]
    pub y1: Option<f64>,
    /// Upper end of a geodesic segment.
    #[arg(long)]
    pub y2: Option<f64>,
    /// Evaluate the geodesic closed form outside 1 < Re s < 2.
    #[arg(long)]
    pub allow_outside_strip: bool,

    /// Weight of the holomorphic Eisenstein series.
    #[arg(long, default_value_t = 4)]
    pub weight: u32,
    /// Number of q-expansion coefficients.
    #[arg(long, default_value_t = 40)]
    pub terms: usize,

    /// Grid lists for `table`, comma separated. s values may be complex (2.5+1i).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub xs: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub ys: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub thetas: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub ss: Vec<Complex64>,

    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output_path: Option<PathBuf>,
    /// Leave `elapsed_ms` out of reports.
    #[arg(long)]
    pub no_timing: bool,
}

impl RunConfig {
    /// Parses argv, splicing in `--config` entries ahead of the flags so that
    /// flags win.
    pub fn from_args<I, S>(args: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let args: Vec<String> = args.into_iter().map(Into::into).collect();
        let mut merged = args.clone();
        if let Some(path) = find_config_path(&args) {
            let tokens = read_config_file(Path::new(&path))?;
            let at = 1.min(merged.len());
            merged.splice(at..at, tokens);
        }
        RunConfig::try_parse_from(merged).map_err(CliError::Clap)
    }

    pub fn output_format(&self) -> OutputFormat {
        self.output.unwrap_or(if self.command == Command::Table { OutputFormat::Csv } else { OutputFormat::Json })
    }

    pub fn theta_radians(&self) -> Option<f64> {
        self.theta.or(self.theta_deg.map(f64::to_radians))
    }

    pub fn s(&self) -> Result<Complex64, CliError> {
        let re = self.s_re.ok_or(CliError::Missing("--s-re"))?;
        Ok(Complex64::new(re, self.s_im))
    }

    pub fn require_y(&self) -> Result<f64, CliError> {
        let y = self.y.ok_or(CliError::Missing("--y"))?;
        if y.is_nan() || y <= 0.0 {
            return Err(CliError::Invalid { flag: "--y", reason: format!("must be positive, got {y}") });
        }
        Ok(y)
    }

    pub fn require_theta(&self) -> Result<f64, CliError> {
        self.theta_radians().ok_or(CliError::Missing("--theta"))
    }

    pub fn policy(&self) -> Result<TruncationPolicy, CliError> {
        let d = TruncationPolicy::default();
        let policy = TruncationPolicy {
            c_max: self.c_max.unwrap_or(d.c_max),
            n_max: self.n_max.unwrap_or(d.n_max),
            series_tol: self.tol.unwrap_or(d.series_tol),
            max_rel_tail: self.max_tail.unwrap_or(d.max_rel_tail),
        };
        policy.validate().map_err(|e| CliError::Invalid { flag: "--c-max/--n-max/--tol/--max-tail", reason: e.to_string() })?;
        Ok(policy)
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec { abs_tol: 1e-14, rel_tol: 1e-10, max_levels: 10 }
    }
}

fn find_config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = a.strip_prefix("--config=") {
            return Some(rest.to_owned());
        }
    }
    None
}

/// Turns `key = value` lines into `--key value` tokens. `#` starts a
/// comment; `key = true` on a switch emits just `--key`.
pub fn read_config_file(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid { flag: "--config", reason: format!("{}: {e}", path.display()) })?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<Vec<String>, CliError> {
    const SWITCHES: [&str; 2] = ["allow-outside-strip", "no-timing"];
    let mut tokens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Invalid {
            flag: "--config",
            reason: format!("line {}: expected key = value", lineno + 1),
        })?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key == "config" || key == "command" {
            return Err(CliError::Invalid { flag: "--config", reason: format!("line {}: key `{key}` is not allowed", lineno + 1) });
        }
        if SWITCHES.contains(&key.as_str()) {
            match value {
                "true" => tokens.push(format!("--{key}")),
                "false" => {}
                _ => {
                    return Err(CliError::Invalid {
                        flag: "--config",
                        reason: format!("line {}: `{key}` takes true or false", lineno + 1),
                    })
                }
            }
        } else {
            tokens.push(format!("--{key}={value}"));
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines_become_flags() {
        let t = parse_config_text("# point\ny = 1.5\ns_re=2 # inline\nallow-outside-strip = true\nno-timing = false\n").unwrap();
        assert_eq!(t, vec!["--y=1.5", "--s-re=2", "--allow-outside-strip"]);
        assert!(parse_config_text("y 1.5").is_err());
        assert!(parse_config_text("command = eval").is_err());
    }

    #[test]
    fn flags_override_config() {
        let dir = std::env::temp_dir().join(format!("hyperform-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "y = 2\ns-re = 3\nc-max = 100\n").unwrap();
        let cfg = RunConfig::from_args(["hyperform", "eval", "--config", path.to_str().unwrap(), "--y", "1.25"]).unwrap();
        assert_eq!(cfg.y, Some(1.25));
        assert_eq!(cfg.s_re, Some(3.0));
        assert_eq!(cfg.c_max, Some(100));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn degrees_and_lists() {
        let cfg = RunConfig::from_args(["hyperform", "table", "--theta-deg", "90", "--ss", "2,2.5+1i", "--xs=-0.2,0.1"]).unwrap();
        assert!((cfg.theta_radians().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(cfg.ss, vec![Complex64::new(2.0, 0.0), Complex64::new(2.5, 1.0)]);
        assert_eq!(cfg.xs, vec![-0.2, 0.1]);
        assert_eq!(cfg.output_format(), OutputFormat::Csv);
    }

    #[test]
    fn unknown_flag_is_a_parse_error() {
        assert!(matches!(RunConfig::from_args(["hyperform", "eval", "--bogus", "1"]), Err(CliError::Clap(_))));
    }
}
