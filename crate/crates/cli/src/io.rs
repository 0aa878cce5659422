use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use lipext_core::{Metric, Point, SampleSet};

use crate::CliError;

/// `%.17g`: 17 significant digits, fixed notation for moderate exponents,
/// trailing zeros removed. Round-trips every finite `f64`.
pub fn fmt_float(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Rows of numbers from a CSV with a header line.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn read_table(path: &Path) -> Result<Table, CliError> {
    let file = File::open(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || header.iter().all(|h| h.is_empty()) {
        return Err(CliError::parse(format!("{}: missing header row", path.display())));
    }
    if header.iter().all(|h| h.parse::<f64>().is_ok()) {
        return Err(CliError::parse(format!(
            "{}: line 1: header row required, found numbers",
            path.display()
        )));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            CliError::parse(format!("{}: line {line}: {e}", path.display()))
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let row = record
            .iter()
            .zip(&header)
            .map(|(field, col)| {
                let v: f64 = field.parse().map_err(|_| {
                    CliError::parse(format!(
                        "{}: line {line}: invalid number '{field}' in column '{col}'",
                        path.display()
                    ))
                })?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(CliError::parse(format!(
                        "{}: line {line}: non-finite value in column '{col}'",
                        path.display()
                    )))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Table { header, rows })
}

/// Samples: every column but the value column `g` is a coordinate.
pub fn read_samples(path: &Path, metric_of: impl Fn(usize) -> Result<Metric, CliError>) -> Result<SampleSet, CliError> {
    let table = read_table(path)?;
    let value_col = table
        .header
        .iter()
        .position(|h| h == "g")
        .unwrap_or(table.header.len() - 1);
    if table.header.len() < 2 {
        return Err(CliError::parse(format!(
            "{}: need coordinate columns and a value column",
            path.display()
        )));
    }
    let dim = table.header.len() - 1;
    let mut points = Vec::with_capacity(table.rows.len());
    let mut values = Vec::with_capacity(table.rows.len());
    for row in table.rows {
        values.push(row[value_col]);
        let coords: Vec<f64> = row
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != value_col)
            .map(|(_, v)| *v)
            .collect();
        points.push(Point::new(coords)?);
    }
    Ok(SampleSet::new(metric_of(dim)?, points, values)?)
}

pub fn read_points(path: &Path) -> Result<Vec<Point>, CliError> {
    read_table(path)?
        .rows
        .into_iter()
        .map(|r| Point::new(r).map_err(CliError::from))
        .collect()
}

pub fn coordinate_header(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("x{i}")).collect()
}

/// Writes to the file, or to stdout without a path.
pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => Ok(Box::new(io::BufWriter::new(
            File::create(p).map_err(|e| CliError::io(format!("{}: {e}", p.display())))?,
        ))),
        None => Ok(Box::new(io::BufWriter::new(io::stdout()))),
    }
}

pub fn write_csv(out: Box<dyn Write>, header: &[String], rows: &[Vec<f64>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| CliError::io(e.to_string());
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row.iter().map(|v| fmt_float(*v))).map_err(io_err)?;
    }
    w.flush().map_err(|e| CliError::io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_float(0.1), "0.10000000000000001");
        assert_eq!(fmt_float(2.0), "2");
        assert_eq!(fmt_float(-1.5), "-1.5");
        assert_eq!(fmt_float(1e20), "1e+20");
        assert_eq!(fmt_float(1.25e-7), "1.2499999999999999e-07");
        assert_eq!(fmt_float(0.0), "0");
    }

    #[test]
    fn round_trips() {
        for v in [
            0.1,
            1.0 / 3.0,
            -2.0f64.sqrt(),
            6.02214076e23,
            1e-300,
            123456.789,
            f64::MAX,
            f64::MIN_POSITIVE,
        ] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v, "{v}");
        }
    }
}
