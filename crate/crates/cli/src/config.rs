use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nlci::koszul::ChiOracle;
use nlci::{PrimeField, DEFAULT_PRIME};

use crate::error::CliError;
use crate::report::Format;

#[derive(Parser, Debug)]
#[command(name = "nlci", version, about = "Complete-intersection Hilbert functions and Noether-Lefschetz codimensions over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Codimension of the locus of hypersurfaces containing a complete intersection, per e.
    Codim(CommonArgs),
    /// Hilbert function of a complete intersection over a degree range.
    Hilbert(CommonArgs),
    /// Hilbert-scheme and flag-scheme dimensions.
    Dims(CommonArgs),
    /// Seeded campaign comparing every formula against the brute-force oracle.
    Verify(CommonArgs),
    /// Recover a Gorenstein ideal from its socle-degree piece.
    Recover {
        #[command(flatten)]
        common: CommonArgs,
        /// JSON file with one generator per variable (instead of a random witness).
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Dimension parameter: the ambient space has 2k + 2 variables.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of variables (overrides the count implied by --k for hilbert and dims).
    #[arg(long)]
    pub vars: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub degrees: Vec<u32>,
    #[arg(long, conflicts_with = "e_range")]
    pub e: Option<u32>,
    /// Inclusive range a..b.
    #[arg(long)]
    pub e_range: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// JSON file {"values": [chi(0), chi(1), ...]} replacing projective space.
    #[arg(long)]
    pub chi_table: Option<PathBuf>,
    /// Also certify smoothness of each random hypersurface (slow).
    #[arg(long)]
    pub check_smooth: bool,
    /// Perturb F after generation (negative control).
    #[arg(long, hide = true)]
    pub sabotage: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Codim,
    Hilbert,
    Dims,
    Verify,
    Recover,
}

/// Validated configuration, echoed into every JSON report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub prime: u64,
    pub seed: u64,
    pub n_vars: Option<usize>,
    pub k: Option<usize>,
    pub degrees: Vec<u32>,
    /// e values for codim, dims, verify and recover; degrees m for hilbert.
    pub range: Vec<u32>,
    pub trials: u64,
    pub format: Format,
    pub chi_table: Option<PathBuf>,
    pub check_smooth: bool,
    pub sabotage: bool,
    #[serde(skip)]
    pub field: PrimeField,
    #[serde(skip)]
    pub chi: ChiOracle,
}

fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Validation(format!("malformed range {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(CliError::Validation(format!("empty range {a}..{b}")));
    }
    Ok((a, b))
}

#[derive(serde::Deserialize)]
struct ChiTableDoc {
    values: Vec<i64>,
}

impl RunConfig {
    pub fn from_args(kind: Kind, a: &CommonArgs, has_input: bool) -> Result<Self, CliError> {
        let p = a.prime;
        if p <= 1 << 16 || p >= 1 << 32 {
            return Err(CliError::Validation(format!(
                "prime {p} outside the supported range 2^16 < p < 2^32"
            )));
        }
        let field = PrimeField::new(p)?;
        if a.trials == 0 {
            return Err(CliError::Validation("trials must be at least 1".into()));
        }

        let n_vars = match (a.k, a.vars) {
            (Some(k), Some(v)) if v != 2 * k + 2 => {
                return Err(CliError::Validation(format!(
                    "--vars {v} disagrees with --k {k} (expected {})",
                    2 * k + 2
                )))
            }
            (Some(k), _) => Some(2 * k + 2),
            (None, v) => v,
        };
        let k = a.k.or_else(|| n_vars.filter(|n| n % 2 == 0 && *n >= 2).map(|n| (n - 2) / 2));

        let chi = match &a.chi_table {
            Some(path) => {
                if matches!(kind, Kind::Verify | Kind::Recover) {
                    return Err(CliError::Validation(
                        "--chi-table is not supported by the oracle-backed subcommands".into(),
                    ));
                }
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
                let doc: ChiTableDoc = serde_json::from_str(&text)
                    .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
                ChiOracle::table(doc.values)?
            }
            // a polynomial file fixes the variable count itself
            None if kind == Kind::Recover && has_input => ChiOracle::projective(n_vars.unwrap_or(0)),
            None => {
                let n = n_vars.ok_or_else(|| CliError::Validation("one of --k or --vars is required".into()))?;
                ChiOracle::projective(n)
            }
        };

        let skip_degrees = kind == Kind::Recover && has_input;
        if !skip_degrees {
            if a.degrees.is_empty() {
                return Err(CliError::Validation("--degrees is required".into()));
            }
            if let Some(&d) = a.degrees.iter().find(|&&d| d == 0) {
                return Err(CliError::Validation(format!("degree {d} must be positive")));
            }
            if matches!(kind, Kind::Codim | Kind::Verify | Kind::Recover) && a.chi_table.is_none() {
                let k = k.ok_or_else(|| CliError::Validation("--k (or an even --vars) is required".into()))?;
                if a.degrees.len() != k + 1 {
                    return Err(CliError::Validation(format!(
                        "expected k + 1 = {} degrees, found {}",
                        k + 1,
                        a.degrees.len()
                    )));
                }
            }
        }

        let range = match (a.e, &a.e_range) {
            (Some(e), _) => vec![e],
            (None, Some(r)) => {
                let (lo, hi) = parse_range(r)?;
                (lo..=hi).collect()
            }
            (None, None) => default_range(kind, k, n_vars, &a.degrees),
        };
        if kind != Kind::Hilbert && !skip_degrees {
            for &e in &range {
                for &d in &a.degrees {
                    if d >= e {
                        return Err(nlci::Error::DegreeOutOfRange {
                            degree: d as i64,
                            e: e as i64,
                        }
                        .into());
                    }
                }
            }
        }

        let command = match kind {
            Kind::Codim => "codim",
            Kind::Hilbert => "hilbert",
            Kind::Dims => "dims",
            Kind::Verify => "verify",
            Kind::Recover => "recover",
        };
        Ok(Self {
            command,
            prime: p,
            seed: a.seed,
            n_vars,
            k,
            degrees: a.degrees.clone(),
            range,
            trials: a.trials,
            format: a.format,
            chi_table: a.chi_table.clone(),
            check_smooth: a.check_smooth,
            sabotage: a.sabotage,
            field,
            chi,
        })
    }
}

/// e from max(3, max d + 1) through 12 for k = 1 and 6 otherwise; for
/// hilbert, degrees 0 through socle + 1 (full length) or the degree sum.
fn default_range(kind: Kind, k: Option<usize>, n_vars: Option<usize>, degrees: &[u32]) -> Vec<u32> {
    if kind == Kind::Hilbert {
        let sum: u32 = degrees.iter().sum();
        let top = match n_vars {
            Some(n) if n == degrees.len() => (sum + 1).saturating_sub(n as u32),
            _ => sum,
        };
        return (0..=top).collect();
    }
    let lo = degrees.iter().max().map_or(3, |&d| (d + 1).max(3));
    let hi = if k == Some(1) { 12 } else { 6 };
    (lo..=hi.max(lo)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> CommonArgs {
        let mut v = vec!["nlci", "codim"];
        v.extend_from_slice(extra);
        match Cli::try_parse_from(v).unwrap().command {
            Command::Codim(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..10").unwrap(), (4, 10));
        assert!(parse_range("4-10").is_err());
        assert!(parse_range("5..4").is_err());
    }

    #[test]
    fn default_e_range_depends_on_k() {
        let c = RunConfig::from_args(Kind::Codim, &args(&["--k", "1", "--degrees", "1,1"]), false).unwrap();
        assert_eq!(c.range, (3..=12).collect::<Vec<_>>());
        let c = RunConfig::from_args(Kind::Codim, &args(&["--k", "2", "--degrees", "1,1,2"]), false).unwrap();
        assert_eq!(c.range, (3..=6).collect::<Vec<_>>());
    }

    #[test]
    fn validation_errors() {
        let bad = |x: &[&str]| RunConfig::from_args(Kind::Codim, &args(x), false).unwrap_err();
        assert!(matches!(bad(&["--k", "1", "--degrees", "1,1", "--prime", "65521"]), CliError::Validation(_)));
        assert!(matches!(bad(&["--k", "1", "--degrees", "1,1", "--prime", "2147483646"]), CliError::Lib(_)));
        assert!(matches!(bad(&["--k", "1", "--degrees", "1,1", "--trials", "0"]), CliError::Validation(_)));
        assert!(matches!(bad(&["--k", "1", "--degrees", "1,1,1"]), CliError::Validation(_)));
        let e = bad(&["--k", "1", "--degrees", "1,4", "--e", "4"]);
        assert!(e.to_string().starts_with("degree out of range"));
    }
}
