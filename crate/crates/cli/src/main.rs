//! `qgenus`: genera of complete intersections in products of projective
//! spaces, string-condition certificates, degree-matrix searches, vanishing
//! sweeps, and exact-vs-numeric cross checks.
//!
//! Exit codes form a total function of the outcome class:
//! 0 success / condition true; 1 negative result (not string, nonzero sweep
//! genus, oracle mismatch); 2 input error; 3 precondition violation;
//! 4 numeric convergence failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qgenus_cli::CliError;

use qgenus_core::geometry::{genus_report, is_string, GenusKind};
use qgenus_core::oracle::{residue_genus, ContourSpec};
use qgenus_core::search::{enumerate_string_matrices, verify_theorem, AmbientSpec, SearchBounds};
use qgenus_core::CharSeries;

use qgenus_cli::instance::load_instance;
use qgenus_cli::report::{
    to_json, CheckStringReport, FoundMatrix, GenusCmdReport, GenusEntry, OracleCmdReport,
    QSeriesJson, SearchCmdReport, VerifyCmdReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    #[value(alias = "structured-json")]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenusArg {
    Witten,
    Ahat,
    Lgenus,
    AhatTwisted,
    LgenusTwisted,
    Euler,
}

impl From<GenusArg> for GenusKind {
    fn from(a: GenusArg) -> Self {
        match a {
            GenusArg::Witten => GenusKind::Witten,
            GenusArg::Ahat => GenusKind::AHat,
            GenusArg::Lgenus => GenusKind::LGenus,
            GenusArg::AhatTwisted => GenusKind::AHatTwisted,
            GenusArg::LgenusTwisted => GenusKind::LGenusTwisted,
            GenusArg::Euler => GenusKind::Euler,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qgenus",
    version,
    about = "Exact genera of complete intersections in products of projective spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Worker threads for sweeps (defaults to all cores)
    #[arg(long, global = true, env = "QGENUS_THREADS")]
    threads: Option<usize>,
}

#[derive(clap::Args)]
struct InstanceArgs {
    /// Instance file (JSON with fields "n", "D", optional "label")
    instance: Option<PathBuf>,

    /// Inline instance, e.g. 'n=7,4;D=2,1;1,-2;1,0;1,0;1,0'
    #[arg(long)]
    inline: Option<String>,
}

#[derive(clap::Args)]
struct BoundsArgs {
    /// Number of projective factors
    #[arg(long)]
    s: usize,

    /// Maximum number of divisor rows
    #[arg(long)]
    t_max: usize,

    /// Exact ambient dimensions, comma separated (e.g. --n 7,4)
    #[arg(long, value_delimiter = ',', conflicts_with = "n_max")]
    n: Option<Vec<usize>>,

    /// Range sweep: all ambient dimension vectors with n_q <= n_max
    #[arg(long)]
    n_max: Option<usize>,

    /// Include instances of odd complex dimension
    #[arg(long)]
    allow_odd_dim: bool,
}

impl BoundsArgs {
    fn to_bounds(&self) -> Result<SearchBounds, CliError> {
        let ambient = match (&self.n, self.n_max) {
            (Some(n), None) => AmbientSpec::Exact(n.clone()),
            (None, Some(m)) => AmbientSpec::UpTo(m),
            _ => {
                return Err(CliError::Input(
                    "give exactly one of --n or --n-max".into(),
                ))
            }
        };
        let bounds = SearchBounds {
            s: self.s,
            t_max: self.t_max,
            ambient,
            allow_odd_dim: self.allow_odd_dim,
        };
        bounds.validate()?;
        Ok(bounds)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute genera (q-expansions with exact rational coefficients) and
    /// the string certificate of an instance
    Genus {
        #[command(flatten)]
        instance: InstanceArgs,

        /// Truncation order K: series are exact through q^{2K}
        #[arg(long, default_value_t = 8)]
        q_order: usize,

        /// Genus kinds to compute (repeatable; default: witten, ahat,
        /// lgenus, euler)
        #[arg(long = "genus", value_enum)]
        genus: Vec<GenusArg>,
    },

    /// Decide the string condition and print the certificate
    CheckString {
        #[command(flatten)]
        instance: InstanceArgs,
    },

    /// Enumerate string-admissible degree matrices within bounds
    Search {
        #[command(flatten)]
        bounds: BoundsArgs,
    },

    /// Verify that the Witten genus vanishes on every enumerated instance
    Verify {
        #[command(flatten)]
        bounds: BoundsArgs,

        /// Truncation order K for the verification
        #[arg(long, default_value_t = 6)]
        q_order: usize,
    },

    /// Compare the exact value against the numeric contour-integral residue
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,

        /// Genus kind (witten, ahat or lgenus)
        #[arg(long = "genus", value_enum, default_value_t = GenusArg::Witten)]
        genus: GenusArg,

        /// Nome for the comparison, e.g. 0.1 or 0.1+0.05i
        #[arg(long, default_value = "0.1")]
        oracle_q: String,

        /// Comparison tolerance (relative; absolute when the exact value is 0)
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,

        /// Contour radius per variable (honest-root coordinate)
        #[arg(long, default_value_t = 1.0)]
        radius: f64,

        /// Samples per circle (power of two)
        #[arg(long, default_value_t = 128)]
        samples: usize,

        /// Truncation order K of the exact series
        #[arg(long, default_value_t = 8)]
        q_order: usize,
    },
}

/// Parses `0.1`, `-0.3`, `0.1+0.05i`, `0.1-0.05i`, `0.05i`.
fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || CliError::Input(format!("cannot parse complex number '{text}'"));
    if let Some(body) = t.strip_suffix('i') {
        // find the split between real and imaginary parts: the last +/-
        // that is not at position 0 and not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for (i, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
                split = Some(i);
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i].parse().map_err(|_| err())?;
                let im_str = &body[i..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str.parse().map_err(|_| err())?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.parse().map_err(|_| err())?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = t.parse().map_err(|_| err())?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn print_report(format: Format, human: String, csv: String, json: String) {
    match format {
        Format::Human => print!("{human}"),
        Format::Json => print!("{json}"),
        Format::Csv => print!("{csv}"),
    }
}

fn cmd_genus(
    format: Format,
    args: &InstanceArgs,
    q_order: usize,
    kinds: &[GenusArg],
) -> Result<u8, CliError> {
    let file = load_instance(args.instance.as_deref(), args.inline.as_deref())?;
    let ci = file.validate()?;
    let kinds: Vec<GenusKind> = if kinds.is_empty() {
        vec![
            GenusKind::Witten,
            GenusKind::AHat,
            GenusKind::LGenus,
            GenusKind::Euler,
        ]
    } else {
        kinds.iter().map(|&k| k.into()).collect()
    };

    let mut genera = Vec::new();
    for kind in kinds {
        let rep = genus_report(&ci, kind, q_order)?;
        genera.push(GenusEntry {
            kind: kind.label().to_string(),
            value: QSeriesJson::from_series(&rep.value),
        });
    }
    let report = GenusCmdReport {
        label: file.label.clone(),
        n: file.n.clone(),
        d: file.d.clone(),
        complex_dim: ci.complex_dim(),
        real_dim: ci.real_dim(),
        q_order,
        string: is_string(&ci),
        genera,
    };
    print_report(format, report.human(), report.csv(), to_json(&report));
    Ok(0)
}

fn cmd_check_string(format: Format, args: &InstanceArgs) -> Result<u8, CliError> {
    let file = load_instance(args.instance.as_deref(), args.inline.as_deref())?;
    let ci = file.validate()?;
    let certificate = is_string(&ci);
    let report = CheckStringReport {
        label: file.label,
        n: file.n,
        d: file.d,
        certificate,
    };
    print_report(format, report.human(), report.csv(), to_json(&report));
    if !certificate.lefschetz_ok {
        return Ok(3);
    }
    Ok(if certificate.is_string { 0 } else { 1 })
}

fn cmd_search(format: Format, bounds: &BoundsArgs) -> Result<u8, CliError> {
    let b = bounds.to_bounds()?;
    let found = enumerate_string_matrices(&b)?;
    let report = SearchCmdReport {
        s: b.s,
        t_max: b.t_max,
        ambient: b.ambient.clone(),
        count: found.len(),
        matrices: found
            .into_iter()
            .map(|(n, m)| FoundMatrix {
                n,
                rows: m.rows().to_vec(),
            })
            .collect(),
    };
    print_report(format, report.human(), report.csv(), to_json(&report));
    Ok(0)
}

fn cmd_verify(format: Format, bounds: &BoundsArgs, q_order: usize) -> Result<u8, CliError> {
    let b = bounds.to_bounds()?;
    let sweep = verify_theorem(&b, q_order)?;
    let failed = sweep.failures > 0;
    let report = VerifyCmdReport {
        ambient: b.ambient.clone(),
        sweep,
    };
    print_report(format, report.human(), report.csv(), to_json(&report));
    Ok(if failed { 1 } else { 0 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    format: Format,
    args: &InstanceArgs,
    genus: GenusArg,
    oracle_q: &str,
    tolerance: f64,
    radius: f64,
    samples: usize,
    q_order: usize,
) -> Result<u8, CliError> {
    if tolerance <= 0.0 {
        return Err(CliError::Input("tolerance must be positive".into()));
    }
    let file = load_instance(args.instance.as_deref(), args.inline.as_deref())?;
    let ci = file.validate()?;
    let q = parse_complex(oracle_q)?;
    let kind: GenusKind = genus.into();
    let series = match kind {
        GenusKind::Witten => CharSeries::witten_series(ci.total_degree(), q_order),
        GenusKind::AHat => CharSeries::ahat_series(ci.total_degree()),
        GenusKind::LGenus => CharSeries::lgenus_series(ci.total_degree()),
        other => {
            return Err(CliError::Input(format!(
                "oracle supports witten, ahat, lgenus; got {}",
                other.label()
            )))
        }
    };
    let exact_series = qgenus_core::geometry::genus_value(&ci, &series)?;
    let exact = exact_series.eval_complex(q);

    let spec = ContourSpec::new(vec![radius; ci.s()], samples, q)?;
    let numeric = residue_genus(&ci, kind, &spec)?;

    let (comparison, error) = if exact_series.is_zero() {
        ("absolute", (numeric - exact).norm())
    } else {
        ("relative", (numeric - exact).norm() / exact.norm())
    };
    let within_tolerance = error <= tolerance;
    let report = OracleCmdReport {
        label: file.label,
        n: file.n,
        d: file.d,
        kind: kind.label().to_string(),
        q_re: q.re,
        q_im: q.im,
        q_order: exact_series.trunc_order(),
        exact_series: QSeriesJson::from_series(&exact_series),
        exact_re: exact.re,
        exact_im: exact.im,
        numeric_re: numeric.re,
        numeric_im: numeric.im,
        comparison: comparison.to_string(),
        error,
        tolerance,
        within_tolerance,
    };
    print_report(format, report.human(), report.csv(), to_json(&report));
    Ok(if within_tolerance { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Input("--threads must be >= 1".into()));
        }
        // ignore the error if a pool already exists (e.g. in tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match &cli.command {
        Command::Genus {
            instance,
            q_order,
            genus,
        } => cmd_genus(cli.format, instance, *q_order, genus),
        Command::CheckString { instance } => cmd_check_string(cli.format, instance),
        Command::Search { bounds } => cmd_search(cli.format, bounds),
        Command::Verify { bounds, q_order } => cmd_verify(cli.format, bounds, *q_order),
        Command::Oracle {
            instance,
            genus,
            oracle_q,
            tolerance,
            radius,
            samples,
            q_order,
        } => cmd_oracle(
            cli.format, instance, *genus, oracle_q, *tolerance, *radius, *samples, *q_order,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.1").unwrap(), Complex64::new(0.1, 0.0));
        assert_eq!(parse_complex("-0.3").unwrap(), Complex64::new(-0.3, 0.0));
        assert_eq!(
            parse_complex("0.1+0.05i").unwrap(),
            Complex64::new(0.1, 0.05)
        );
        assert_eq!(
            parse_complex("0.1-0.05i").unwrap(),
            Complex64::new(0.1, -0.05)
        );
        assert_eq!(parse_complex("0.05i").unwrap(), Complex64::new(0.0, 0.05));
        assert_eq!(parse_complex("1e-2").unwrap(), Complex64::new(0.01, 0.0));
        assert_eq!(
            parse_complex("1e-2+2e-3i").unwrap(),
            Complex64::new(0.01, 0.002)
        );
        assert!(parse_complex("xyz").is_err());
    }

    #[test]
    fn verify_cli_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
