//! File formats used by the command-line front end.
//!
//! Datasets are headered CSV with a `y` column followed by `x1..xp`;
//! coefficient files have columns `term,estimate`. Lines starting with `#`
//! are comments and are skipped on input.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::glm::LogisticData;
use crate::numerics::Matrix;
use crate::sim::{num, write_comments};

fn reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(file))
}

/// Creates `path` (and its parent directory) for writing.
pub fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(BufWriter::new(file))
}

/// Writes to `path` when given, otherwise to standard output.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn parse_field(value: &str, line: usize, column: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("column {column}: `{value}` is not a number"),
    })
}

/// Reads a `y,x1,...,xp` dataset. The intercept is added by the caller's
/// flag, never read from the file.
pub fn read_dataset(path: &Path, has_intercept: bool) -> Result<LogisticData> {
    let mut rdr = reader(path)?;
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.first().map(String::as_str) != Some("y") {
        return Err(Error::Parse {
            line: 1,
            message: "first column must be named y".into(),
        });
    }
    for (j, name) in header.iter().enumerate().skip(1) {
        if *name != format!("x{j}") {
            return Err(Error::Parse {
                line: 1,
                message: format!("column {} must be named x{j}, found `{name}`", j + 1),
            });
        }
    }
    let p = header.len() - 1;
    let mut y = Vec::new();
    let mut x = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |pos| pos.line() as usize);
        let yi = parse_field(&rec[0], line, "y")?;
        if yi != 0.0 && yi != 1.0 {
            return Err(Error::Parse {
                line,
                message: format!("response must be 0 or 1, found {yi}"),
            });
        }
        y.push(yi);
        for (j, v) in rec.iter().enumerate().skip(1) {
            x.push(parse_field(v, line, &header[j])?);
        }
    }
    if y.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "dataset has no rows".into(),
        });
    }
    if p == 0 {
        if !has_intercept {
            return Err(Error::InvalidInput("a dataset without covariates needs the intercept".into()));
        }
        return LogisticData::intercept_only(y);
    }
    let n = y.len();
    let matrix = Matrix::from_fn(n, p, |i, j| x[i * p + j]);
    LogisticData::new(y, &matrix, has_intercept)
}

/// Writes the covariates of `data` (without the intercept column) as a
/// dataset file.
pub fn write_dataset<W: Write>(mut out: W, comments: &[String], data: &LogisticData) -> Result<()> {
    write_comments(&mut out, comments)?;
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<String> = std::iter::once("y".to_string()).chain((1..=data.p()).map(|j| format!("x{j}"))).collect();
    w.write_record(&header)?;
    for (i, yi) in data.y().iter().enumerate() {
        let row: Vec<String> = std::iter::once(num(*yi))
            .chain((0..data.p()).map(|j| num(data.covariate(i, j))))
            .collect();
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Named coefficients, intercept (if any) first.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficients {
    pub terms: Vec<String>,
    pub values: Vec<f64>,
}

impl Coefficients {
    pub fn from_theta(theta: &[f64], has_intercept: bool) -> Self {
        let terms = (0..theta.len())
            .map(|k| match (has_intercept, k) {
                (true, 0) => "intercept".to_string(),
                (true, k) => format!("x{k}"),
                (false, k) => format!("x{}", k + 1),
            })
            .collect();
        Self {
            terms,
            values: theta.to_vec(),
        }
    }

    pub fn has_intercept(&self) -> bool {
        self.terms.first().map(String::as_str) == Some("intercept")
    }
}

pub fn read_coefficients(path: &Path) -> Result<Coefficients> {
    let mut rdr = reader(path)?;
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != ["term", "estimate"] {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header term,estimate, found {}", header.join(",")),
        });
    }
    let mut out = Coefficients {
        terms: Vec::new(),
        values: Vec::new(),
    };
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |pos| pos.line() as usize);
        out.terms.push(rec[0].to_string());
        out.values.push(parse_field(&rec[1], line, "estimate")?);
    }
    Ok(out)
}

pub fn write_coefficients<W: Write>(mut out: W, comments: &[String], coefs: &Coefficients) -> Result<()> {
    write_comments(&mut out, comments)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["term", "estimate"])?;
    for (t, v) in coefs.terms.iter().zip(&coefs.values) {
        w.write_record([t.clone(), num(*v)])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes any serializable rows as CSV after the comment block.
pub fn write_rows<W: Write, T: Serialize>(mut out: W, comments: &[String], rows: &[T]) -> Result<()> {
    write_comments(&mut out, comments)?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Row of a training summary file that the power-law fit needs.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub kappa: f64,
    pub gamma: f64,
    pub gamma0: f64,
    pub exists: bool,
    pub mean_delta1: Option<f64>,
}

pub fn read_training_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    let mut rdr = reader(path)?;
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let col = |name: &str| {
        header.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("missing column {name}"),
        })
    };
    let (ck, cg, cg0, ce, cd) = (col("kappa")?, col("gamma")?, col("gamma0")?, col("exists")?, col("mean_delta1")?);
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |pos| pos.line() as usize);
        let exists = match &rec[ce] {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("exists must be true or false, found `{other}`"),
                })
            }
        };
        let mean_delta1 = match &rec[cd] {
            "NA" => None,
            v => Some(parse_field(v, line, "mean_delta1")?),
        };
        rows.push(SummaryRow {
            kappa: parse_field(&rec[ck], line, "kappa")?,
            gamma: parse_field(&rec[cg], line, "gamma")?,
            gamma0: parse_field(&rec[cg0], line, "gamma0")?,
            exists,
            mean_delta1,
        });
    }
    Ok(rows)
}

/// `<file>.manifest.json` next to a single output file.
pub fn manifest_path_for(file: &Path) -> PathBuf {
    let mut name = file.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    file.with_file_name(name)
}

pub fn write_manifest(path: &Path, manifest: &serde_json::Value) -> Result<()> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, manifest)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
