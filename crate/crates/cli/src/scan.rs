use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use collapse_spectra::bifurcation::{degeneracy_values, linear_grid, log_grid, morse_index_product, threshold, trivial_count};
use collapse_spectra::submersion::SubmersionModel;
use collapse_spectra::Scalar;
use rayon::prelude::*;

use crate::args::exact_decimal;
use crate::{io_failure, read_model, Failure, Outcome};

const HEADER: [&str; 6] = ["t", "scal", "threshold", "trivial_count", "morse_index", "nearest_degeneracy"];

fn row(model: &SubmersionModel, t: &Scalar, degeneracies: &[f64]) -> Result<[String; 6], Failure> {
    let morse = if model.is_product { morse_index_product(model, t)?.to_string() } else { "n/a".into() };
    let tf = t.to_f64();
    let nearest = degeneracies
        .iter()
        .copied()
        .min_by(|a, b| (a - tf).abs().total_cmp(&(b - tf).abs()))
        .map_or_else(|| "none".to_string(), |d| format!("{d:.9}"));
    Ok([
        exact_decimal(t),
        model.scal_t(t).to_string(),
        threshold(model, t).to_string(),
        trivial_count(model, t, true)?.to_string(),
        morse,
        nearest,
    ])
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("COLLAPSE_SPECTRA_THREADS") {
        let n: usize = value.parse().ok().filter(|n| *n > 0).ok_or_else(|| Failure {
            code: 2,
            message: format!("COLLAPSE_SPECTRA_THREADS must be a positive integer, got {value:?}"),
        })?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Failure { code: 1, message: e.to_string() })
}

pub fn run(path: &Path, t_min: &Scalar, t_max: &Scalar, steps: usize, linear: bool, csv: Option<&Path>) -> Outcome {
    let model = read_model(path)?;
    let grid = if linear { linear_grid(t_min, t_max, steps)? } else { log_grid(t_min, t_max, steps)? };
    let degeneracies: Vec<f64> =
        degeneracy_values(&model, t_min, t_max)?.records.iter().map(|r| r.t_approx).collect();

    // rows in parallel, collected in grid order
    let rows = thread_pool()?.install(|| {
        grid.par_iter().map(|t| row(&model, t, &degeneracies)).collect::<Result<Vec<_>, _>>()
    })?;

    let sink: Box<dyn Write> = match csv {
        Some(p) => Box::new(File::create(p).map_err(|e| io_failure(p, e))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    let shown = csv.unwrap_or(Path::new("<stdout>"));
    writer.write_record(HEADER).map_err(|e| io_failure(shown, e))?;
    for r in &rows {
        writer.write_record(r).map_err(|e| io_failure(shown, e))?;
    }
    writer.flush().map_err(|e| io_failure(shown, e))?;
    Ok(0)
}
