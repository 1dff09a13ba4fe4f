//! CSV readers for point lists and distance matrices.

use std::path::Path;

use crofton_core::algebra::{Field, HermitianSpace};
use crofton_core::kernels::{DistanceMatrix, Metric, Point};
use crofton_core::spaces::{HPoint, PPoint, SPoint};

use crate::CliError;

/// Raw contents of a point file.
#[derive(Debug, Clone, PartialEq)]
pub struct PointRows {
    pub field: Field,
    pub dim: usize,
    pub rows: Vec<Vec<f64>>,
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn parse_reals(
    fields: impl Iterator<Item = impl AsRef<str>>,
    line: usize,
) -> Result<Vec<f64>, CliError> {
    fields
        .filter(|f| !f.as_ref().is_empty())
        .map(|f| {
            f.as_ref().parse::<f64>().map_err(|_| {
                CliError::Input(format!("line {line}: '{}' is not a number", f.as_ref()))
            })
        })
        .collect()
}

/// Parse `field=<r|c|h>,dim=<n>` followed by one point per row.
pub fn parse_points(text: &str) -> Result<PointRows, CliError> {
    let mut rdr = reader(text);
    let mut records = rdr.records();
    let header = records
        .next()
        .ok_or_else(|| CliError::Input("empty point file".into()))??;
    let (mut field, mut dim) = (None, None);
    for entry in header.iter() {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("header entry '{entry}' is not key=value")))?;
        match key.trim() {
            "field" => {
                field = Some(
                    value
                        .parse::<Field>()
                        .map_err(|e| CliError::Input(e.to_string()))?,
                )
            }
            "dim" => {
                dim = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Input(format!("bad dim '{value}'")))?,
                )
            }
            other => return Err(CliError::Input(format!("unknown header key '{other}'"))),
        }
    }
    let field = field.ok_or_else(|| CliError::Input("header lacks field=".into()))?;
    let dim = dim.ok_or_else(|| CliError::Input("header lacks dim=".into()))?;
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let row = parse_reals(rec.iter(), line)?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(PointRows { field, dim, rows })
}

pub fn read_points(path: &Path) -> Result<PointRows, CliError> {
    parse_points(&std::fs::read_to_string(path)?)
}

/// Inline `--point` values.
pub fn inline_points(values: &[String], field: Field, dim: usize) -> Result<PointRows, CliError> {
    let rows = values
        .iter()
        .enumerate()
        .map(|(i, v)| parse_reals(v.split(',').map(str::trim), i + 1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointRows { field, dim, rows })
}

/// Turn rows into points of the space that `metric` lives on.
pub fn build_points(rows: &PointRows, metric: Metric) -> Result<Vec<Point<f64>>, CliError> {
    let PointRows { field, dim, .. } = *rows;
    if metric != Metric::Hyperbolic && field != Field::Real {
        return Err(CliError::Input(format!(
            "{metric:?} points must use field=r"
        )));
    }
    let width = match metric {
        Metric::Hyperbolic => (dim + 1) * field.real_dim(),
        _ => dim + 1,
    };
    rows.rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != width {
                return Err(CliError::Input(format!(
                    "point {} has {} reals, expected {width}",
                    i + 1,
                    r.len()
                )));
            }
            let p = match metric {
                Metric::Hyperbolic => {
                    Point::Hyperbolic(HPoint::from_reals(HermitianSpace::new(field, dim)?, r)?)
                }
                Metric::Projective | Metric::JordanTrace => {
                    Point::Projective(PPoint::new(r.clone())?)
                }
                Metric::Sphere => Point::Sphere(SPoint::new(r.clone())?),
            };
            Ok(p)
        })
        .collect()
}

/// A square matrix, one row per line.
pub fn parse_matrix(text: &str) -> Result<DistanceMatrix<f64>, CliError> {
    let mut rows = Vec::new();
    for rec in reader(text).records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let row = parse_reals(rec.iter(), line)?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(DistanceMatrix::from_rows(&rows)?)
}

pub fn read_matrix(path: &Path) -> Result<DistanceMatrix<f64>, CliError> {
    parse_matrix(&std::fs::read_to_string(path)?)
}
