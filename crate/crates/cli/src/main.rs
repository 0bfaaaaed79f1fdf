use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use collapse_spectra::bifurcation::{
    degeneracy_values, equivariant_bifurcation_report, equivariant_first, first_degeneracies, model_certificate,
    multiplicity_report, pinching_certificate, Certificate, Certification, DegeneracyRecord,
};
use collapse_spectra::model_file::load_model;
use collapse_spectra::submersion::{Positivity, SubmersionModel};
use collapse_spectra::{Error, QuadSurd, Scalar};

mod args;
mod scan;

use args::parse_scalar;

const RIGID_NOTE: &str = "scal independent of t; locally rigid family";

#[derive(Parser)]
#[command(name = "collapse-spectra", version, about = "Degeneracy and bifurcation values of collapsing submersion metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List degeneracy values t_q with their crossing eigenvalue and certification.
    Degeneracies {
        model: PathBuf,
        /// Lower end of the t interval. Without it, the first --count values below --t-max are listed.
        #[arg(long, value_parser = parse_scalar)]
        t_min: Option<Scalar>,
        #[arg(long, value_parser = parse_scalar, default_value = "1")]
        t_max: Scalar,
        /// Number of values, counted down from --t-max.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_enum, default_value_t = Criterion::Auto)]
        criterion: Criterion,
        /// Also write the records as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate scal, threshold and eigenvalue counts on a t grid as CSV.
    Scan {
        model: PathBuf,
        #[arg(long, value_parser = parse_scalar, default_value = "1/20")]
        t_min: Scalar,
        #[arg(long, value_parser = parse_scalar, default_value = "1")]
        t_max: Scalar,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        /// Uniform instead of geometric spacing.
        #[arg(long)]
        linear: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the curvature-pinching inequalities. Exit 0 on pass, 4 on fail.
    Certify {
        model: PathBuf,
        #[arg(long, value_parser = parse_scalar)]
        k1: Option<Scalar>,
        #[arg(long, value_parser = parse_scalar)]
        k2: Option<Scalar>,
        #[arg(long, value_parser = parse_scalar)]
        tau: Option<Scalar>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Largest s with scal > 0 on the Hopf-type homogeneous families.
    Smax {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Certified bifurcation values with a positive index next to them.
    Report {
        model: PathBuf,
        #[arg(long, value_parser = parse_scalar, default_value = "1/10")]
        t_min: Scalar,
        #[arg(long, value_parser = parse_scalar, default_value = "1")]
        t_max: Scalar,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Criterion {
    /// Tag each value with the strongest criterion that applies.
    Auto,
    Equivariant,
    Morse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complex,
    QuaternionicDiagonal,
    Octonionic,
}

/// A message for stderr and the exit code that goes with it.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::InvalidModel(_)
            | Error::InvalidDescriptor(_)
            | Error::InconsistentModel(_)
            | Error::InvalidInterval(_)
            | Error::Parse(_) => 2,
            Error::HypothesisViolation(_) | Error::Unsupported(_) | Error::NotAProduct | Error::NeverPositive => 3,
            Error::SpectrumExhausted { .. } => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: format!("{}: {e}", path.display()) }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Degeneracies { model, t_min, t_max, count, criterion, json } => {
            degeneracies(&model, t_min, &t_max, count, criterion, json.as_deref())
        }
        Command::Scan { model, t_min, t_max, steps, linear, csv } => {
            scan::run(&model, &t_min, &t_max, steps, linear, csv.as_deref())
        }
        Command::Certify { model, k1, k2, tau, json } => certify(&model, k1, k2, tau, json.as_deref()),
        Command::Smax { family, n } => smax(family, n),
        Command::Report { model, t_min, t_max, json } => report(&model, &t_min, &t_max, json.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("collapse-spectra: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

pub(crate) fn read_model(path: &Path) -> Result<SubmersionModel, Failure> {
    load_model(path).map_err(Failure::from)
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| io_failure(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

#[derive(serde::Serialize)]
#[serde(rename_all = "camelCase")]
struct DegeneracyOutput<'a> {
    model: &'a str,
    t_min: Option<&'a Scalar>,
    t_max: &'a Scalar,
    criterion: &'static str,
    scal_independent_of_t: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    records: &'a [DegeneracyRecord],
}

fn degeneracies(
    path: &Path,
    t_min: Option<Scalar>,
    t_max: &Scalar,
    count: Option<usize>,
    criterion: Criterion,
    json: Option<&Path>,
) -> Outcome {
    let model = read_model(path)?;
    let (mut records, rigid) = match &t_min {
        Some(t_min) => {
            let scan = match criterion {
                Criterion::Equivariant => equivariant_bifurcation_report(&model, t_min, t_max)?,
                _ => degeneracy_values(&model, t_min, t_max)?,
            };
            let mut records = scan.records;
            // largest t first, as without --t-min
            records.reverse();
            if let Some(n) = count {
                records.truncate(n);
            }
            (records, scan.scal_independent_of_t)
        }
        None if model.deformed_scal().is_constant() => (Vec::new(), true),
        None => {
            let n = count.unwrap_or(10);
            let records = match criterion {
                Criterion::Equivariant => equivariant_first(&model, n, t_max)?,
                _ => first_degeneracies(&model, n, t_max)?,
            };
            (records, false)
        }
    };
    if criterion == Criterion::Morse {
        let cert = model_certificate(&model)?;
        if let Some(failed) = &cert.failed {
            return Err(Failure {
                code: 3,
                message: format!("hypothesis-violation: pinching inequality {failed} fails"),
            });
        }
        let bound = QuadSurd::from_scalar(cert.t_star_sq.clone().expect("passing certificate has t*"));
        for r in &mut records {
            r.certified_by = if r.u < bound { Certification::MorseIndex } else { Certification::None };
        }
    }

    let mut out = io::stdout().lock();
    let name = &model.name;
    let _ = writeln!(out, "# {name}: {} degeneracy value(s)", records.len());
    if rigid {
        let _ = writeln!(out, "# {RIGID_NOTE}");
    } else {
        let _ = writeln!(out, "{:>10}  {:>8}  {:>6}  {:<12}  t²", "t", "η", "mul", "certified");
        for r in &records {
            let _ = writeln!(
                out,
                "{:>10.6}  {:>8}  {:>6}  {:<12}  {}",
                r.t_approx,
                r.eta.to_string(),
                r.multiplicity,
                r.certified_by.to_string(),
                r.u
            );
        }
    }
    if let Some(json) = json {
        let doc = DegeneracyOutput {
            model: name,
            t_min: t_min.as_ref(),
            t_max,
            criterion: match criterion {
                Criterion::Auto => "auto",
                Criterion::Equivariant => "equivariant",
                Criterion::Morse => "morse",
            },
            scal_independent_of_t: rigid,
            note: rigid.then_some(RIGID_NOTE),
            records: &records,
        };
        write_json(json, &doc)?;
    }
    Ok(0)
}

fn certify(path: &Path, k1: Option<Scalar>, k2: Option<Scalar>, tau: Option<Scalar>, json: Option<&Path>) -> Outcome {
    let model = read_model(path)?;
    let stored = model.pinching.clone();
    let pick = |given: Option<Scalar>, field: &str, from: fn(&collapse_spectra::submersion::PinchingData) -> Scalar| {
        given.or_else(|| stored.as_ref().map(from)).ok_or_else(|| Failure {
            code: 3,
            message: format!("hypothesis-violation: no {field} given and the model carries no pinching data"),
        })
    };
    let k1 = pick(k1, "k1", |p| p.k1.clone())?;
    let k2 = pick(k2, "k2", |p| p.k2.clone())?;
    let tau = pick(tau, "tau", |p| p.tau.clone())?;
    let (mu1, phi1) = stored.as_ref().map(|p| (p.mu1.clone(), p.phi1.clone())).unwrap_or_default();
    let cert = pinching_certificate(&model, &k1, &k2, &tau, mu1.as_ref(), phi1.as_ref())?;
    print_certificate(&model, &cert);
    if let Some(json) = json {
        write_json(json, &cert)?;
    }
    Ok(if cert.pass { 0 } else { 4 })
}

fn print_certificate(model: &SubmersionModel, cert: &Certificate) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "# {}: k1 = {}, k2 = {}, tau = {}, m = {}", model.name, cert.k1, cert.k2, cert.tau, cert.m);
    for check in &cert.checks {
        let _ = writeln!(out, "{check}");
    }
    let _ = writeln!(out, "phi1 = {} ({:?}), mu1 = {} ({:?})", cert.phi1, cert.phi1_source, cert.mu1, cert.mu1_source);
    match (&cert.t_star, cert.t_star_approx) {
        (Some(t), Some(approx)) if cert.pass => {
            let _ = writeln!(out, "pass: t* = {t} ≈ {approx:.5}");
        }
        _ => {
            let _ = writeln!(out, "fail: {}", cert.failed.as_deref().unwrap_or("certificate incomplete"));
        }
    }
}

fn smax(family: Family, n: u32) -> Outcome {
    if n == 0 {
        return Err(Failure { code: 2, message: "--n must be at least 1".into() });
    }
    let model = match family {
        Family::Complex => SubmersionModel::complex_hopf(n),
        Family::QuaternionicDiagonal => SubmersionModel::quaternionic_hopf_family(n),
        Family::Octonionic => SubmersionModel::octonionic_hopf(),
    };
    match model.scal_positivity_root()? {
        Positivity::Root { u, s_approx } => {
            println!("{}: s_max = sqrt({u}) ≈ {s_approx:.12}", model.name);
        }
        Positivity::AlwaysPositive => println!("{}: scal > 0 for every s", model.name),
    }
    Ok(0)
}

fn report(path: &Path, t_min: &Scalar, t_max: &Scalar, json: Option<&Path>) -> Outcome {
    let model = read_model(path)?;
    let report = multiplicity_report(&model, t_min, t_max)?;
    let mut out = io::stdout().lock();
    let _ = writeln!(
        out,
        "# {}: {} certified value(s) with a witness, {} without",
        model.name,
        report.entries.len(),
        report.no_witness.len()
    );
    for e in &report.entries {
        let _ = writeln!(
            out,
            "t ≈ {:.6} (η = {}, {}): index {} at t = {}, {} at t = {}; {}",
            e.record.t_approx,
            e.record.eta,
            e.record.certified_by,
            e.index_left,
            e.neighborhood.t_left,
            e.index_right,
            e.neighborhood.t_right,
            e.conclusion.as_deref().unwrap_or("no conclusion")
        );
    }
    for r in &report.no_witness {
        let _ = writeln!(out, "t ≈ {:.6} (η = {}): no-witness", r.t_approx, r.eta);
    }
    if let Some(json) = json {
        write_json(json, &report)?;
    }
    Ok(0)
}
