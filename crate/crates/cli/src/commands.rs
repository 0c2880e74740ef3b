//! Command-line surface: argument definitions, input loading and dispatch.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use lptorsion_core::algebra_core::AlgebraError;
use lptorsion_core::catalog::{
    build_abelian, build_complex_heisenberg, build_diag, build_octonionic_heisenberg,
    build_quaternionic_heisenberg, build_real_hyperbolic, build_sol,
};
use lptorsion_core::exterior::sigma;
use lptorsion_core::{
    anosov_split, certify, compare_with_curvature_bound, critical_exponents, exactness_defect,
    flow_status, torsion_table, vanishing_window, CertifierError, ExtendedExponent,
    GradedLieAlgebra, Rational, SpectraError,
};
use thiserror::Error;

use crate::file::{self, FileError};
use crate::report::{render, Document, Format, SpectrumEntry};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read --file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Certifier(#[from] CertifierError),
}

fn spectra_exit_code(error: &SpectraError) -> i32 {
    match error {
        SpectraError::CriticalExponent { .. } => 3,
        _ => 1,
    }
}

impl CliError {
    /// 0 success, 1 usage/parse, 2 validation (including negative trace),
    /// 3 critical-exponent query.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::File(FileError::Validation { .. }) => 2,
            CliError::File(FileError::Algebra(AlgebraError::NegativeTrace { .. })) => 2,
            CliError::File(_) => 1,
            CliError::Algebra(AlgebraError::NegativeTrace { .. }) => 2,
            CliError::Algebra(_) => 1,
            CliError::Spectra(error) => spectra_exit_code(error),
            CliError::Certifier(CertifierError::InvalidAlgebra { .. }) => 2,
            CliError::Certifier(CertifierError::Spectra(error)) => spectra_exit_code(error),
            CliError::Certifier(_) => 1,
        }
    }
}

/// Exact L^p-cohomology torsion certification for graded Lie algebras with a
/// diagonal derivation.
#[derive(Debug, Parser)]
#[command(name = "lptorsion", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Algebra file (name/dim/weights/bracket directives)
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
    /// Built-in algebra: real:n, complex:m, quaternionic:m, octonionic, sol,
    /// diag:<λ>, abelian:<w,…>
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an algebra and report its validated invariants
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Weight multiset σ(k) of Λ^k and its critical exponents
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Critical exponents, for one degree or all of them
    Critical {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Weight splitting Λ^k = Λ^k_+ ⊕ Λ^k_- at a non-critical exponent
    Split {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degree: usize,
        /// Exponent: a/b, an integer, or inf
        #[arg(long, value_name = "a/b|inf")]
        p: String,
    },
    /// Flow classification (contracting/dilating/mixed/critical)
    Status {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_name = "a/b|inf")]
        p: String,
    },
    /// Torsion-vanishing certificate at one exponent, or --all for the table
    Certify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_name = "a/b|inf", conflicts_with = "all")]
        p: Option<String>,
        /// Certify every segment of [1, inf] (same as `table --degree k`)
        #[arg(long)]
        all: bool,
    },
    /// Certified segment table over p ∈ [1, inf], per degree
    Table {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Exactness-defect classification for two-step {1,2}-graded algebras
    Exactness {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reproduce the vanishing window (1, h/suiv σ(k−1)) with its exception
    Window {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Compare the curvature-only bound at pinching δ with the certified one
    Compare {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        degree: usize,
        /// Pinching upper bound, -1 ≤ δ < 0
        #[arg(long, value_name = "-a/b", allow_hyphen_values = true)]
        delta: String,
    },
}

fn parse_count(flag: &str, kind: &str, token: &str) -> Result<usize, CliError> {
    token
        .parse()
        .map_err(|_| CliError::Usage(format!("{flag}: cannot parse '{token}' as {kind}")))
}

fn parse_rational(flag: &str, token: &str) -> Result<Rational, CliError> {
    Rational::from_str(token)
        .map_err(|_| CliError::Usage(format!("{flag}: cannot parse '{token}' as a rational a/b")))
}

fn parse_exponent(token: &str) -> Result<ExtendedExponent, CliError> {
    ExtendedExponent::from_str(token)
        .map_err(|_| CliError::Usage(format!("--p: cannot parse '{token}' as a/b or inf")))
}

fn parse_builtin(name: &str) -> Result<GradedLieAlgebra, CliError> {
    let usage = |message: String| CliError::Usage(format!("--builtin {name}: {message}"));
    let (kind, arg) = match name.split_once(':') {
        Some((kind, arg)) => (kind, Some(arg)),
        None => (name, None),
    };
    match (kind, arg) {
        ("real", Some(arg)) => {
            let n = parse_count("--builtin real:n", "an integer", arg)?;
            if !(2..=17).contains(&n) {
                return Err(usage("real:n needs 2 ≤ n ≤ 17".to_string()));
            }
            Ok(build_real_hyperbolic(n))
        }
        ("complex", Some(arg)) => {
            let m = parse_count("--builtin complex:m", "an integer", arg)?;
            if !(2..=8).contains(&m) {
                return Err(usage("complex:m needs 2 ≤ m ≤ 8".to_string()));
            }
            Ok(build_complex_heisenberg(m))
        }
        ("quaternionic", Some(arg)) => {
            let m = parse_count("--builtin quaternionic:m", "an integer", arg)?;
            if !(2..=4).contains(&m) {
                return Err(usage("quaternionic:m needs 2 ≤ m ≤ 4".to_string()));
            }
            Ok(build_quaternionic_heisenberg(m))
        }
        ("octonionic", None) => Ok(build_octonionic_heisenberg()),
        ("sol", None) => Ok(build_sol()),
        ("diag", Some(arg)) => {
            let lambda = parse_rational("--builtin diag:<λ>", arg)?;
            build_diag(lambda).map_err(CliError::Algebra)
        }
        ("abelian", Some(arg)) => {
            let weights = arg
                .split(',')
                .map(|token| parse_rational("--builtin abelian:<w,…>", token))
                .collect::<Result<Vec<_>, _>>()?;
            build_abelian(weights).map_err(CliError::Algebra)
        }
        _ => Err(usage(
            "unknown builtin; expected real:n, complex:m, quaternionic:m, octonionic, sol, \
             diag:<λ>, or abelian:<w,…>"
                .to_string(),
        )),
    }
}

fn load(source: &Source) -> Result<GradedLieAlgebra, CliError> {
    match (&source.file, &source.builtin) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            file::parse_algebra(&text).map_err(Into::into)
        }
        (None, Some(name)) => parse_builtin(name),
        _ => Err(CliError::Usage("provide exactly one of --file or --builtin".to_string())),
    }
}

fn spectrum_entry(alg: &GradedLieAlgebra, degree: usize) -> Result<SpectrumEntry, CliError> {
    let criticals = critical_exponents(alg, degree)?;
    Ok(SpectrumEntry { degree, sigma: sigma(alg, degree), criticals })
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    let (document, format) = match cli.command {
        Command::Validate { source, output } => {
            let alg = load(&source)?;
            let document = Document::Validation {
                name: alg.name().to_string(),
                dim: alg.dim(),
                weights: alg.weights().to_vec(),
                trace: alg.trace_h(),
            };
            (document, output.format)
        }
        Command::Spectrum { source, output, degree } => {
            let alg = load(&source)?;
            let entries = vec![spectrum_entry(&alg, degree)?];
            (Document::Spectra { include_sigma: true, entries }, output.format)
        }
        Command::Critical { source, output, degree } => {
            let alg = load(&source)?;
            let degrees: Vec<usize> = match degree {
                Some(k) => vec![k],
                None => (0..=alg.dim()).collect(),
            };
            let entries = degrees
                .into_iter()
                .map(|k| spectrum_entry(&alg, k))
                .collect::<Result<Vec<_>, _>>()?;
            (Document::Spectra { include_sigma: false, entries }, output.format)
        }
        Command::Split { source, output, degree, p } => {
            let alg = load(&source)?;
            let p = parse_exponent(&p)?;
            (Document::Split(anosov_split(&alg, degree, &p)?), output.format)
        }
        Command::Status { source, output, degree, p } => {
            let alg = load(&source)?;
            let p = parse_exponent(&p)?;
            let status = flow_status(&alg, degree, &p)?;
            (Document::Status { degree, exponent: p, status }, output.format)
        }
        Command::Certify { source, output, degree, p, all } => {
            let alg = load(&source)?;
            let document = match (p, all) {
                (Some(p), false) => {
                    let p = parse_exponent(&p)?;
                    let certificate = certify(&alg, degree, &p)?;
                    Document::Certificate { degree, exponent: p, certificate }
                }
                (None, true) => Document::Tables(vec![torsion_table(&alg, degree)?]),
                _ => {
                    return Err(CliError::Usage(
                        "certify needs exactly one of --p or --all".to_string(),
                    ))
                }
            };
            (document, output.format)
        }
        Command::Table { source, output, degree } => {
            let alg = load(&source)?;
            let degrees: Vec<usize> = match degree {
                Some(k) => vec![k],
                None => (1..=alg.dim()).collect(),
            };
            let tables = degrees
                .into_iter()
                .map(|k| torsion_table(&alg, k))
                .collect::<Result<Vec<_>, _>>()?;
            (Document::Tables(tables), output.format)
        }
        Command::Exactness { source, output } => {
            let alg = load(&source)?;
            (Document::Exactness(exactness_defect(&alg)?), output.format)
        }
        Command::Window { source, output, degree } => {
            let alg = load(&source)?;
            (Document::Window(vanishing_window(&alg, degree)?), output.format)
        }
        Command::Compare { source, output, degree, delta } => {
            let alg = load(&source)?;
            let delta = parse_rational("--delta", &delta)?;
            let record = compare_with_curvature_bound(&alg, degree, &delta)?;
            (Document::Compare(record), output.format)
        }
    };
    Ok(render(&document, format))
}
