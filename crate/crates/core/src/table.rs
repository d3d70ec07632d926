//! Piecewise-linear tables read from two-column CSV files.

use std::path::Path;

use crate::error::{Error, Result};

/// Samples `(x_k, y_k)` with strictly increasing abscissae, evaluated by
/// linear interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1d {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Table1d {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidProblem(format!(
                "table has {} abscissae but {} values",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidProblem("table needs at least two rows".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidProblem(
                "table abscissae must be strictly increasing".into(),
            ));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::InvalidProblem("table contains non-finite entries".into()));
        }
        Ok(Self { xs, ys })
    }

    /// Reads a CSV with a header row and two numeric columns.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let csv_err = |source| Error::Csv {
            path: path.to_path_buf(),
            source,
        };
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(csv_err)?;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(csv_err)?;
            if record.len() != 2 {
                return Err(Error::InvalidProblem(format!(
                    "{}: row {} has {} columns, expected 2",
                    path.display(),
                    row + 2,
                    record.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::InvalidProblem(format!(
                        "{}: row {}: `{s}` is not a number",
                        path.display(),
                        row + 2
                    ))
                })
            };
            xs.push(parse(&record[0])?);
            ys.push(parse(&record[1])?);
        }
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// Linear interpolation, clamped to the end values outside the table.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let k = self.xs.partition_point(|&t| t <= x) - 1;
        let t = (x - self.xs[k]) / (self.xs[k + 1] - self.xs[k]);
        self.ys[k] + t * (self.ys[k + 1] - self.ys[k])
    }

    /// Largest absolute segment slope.
    pub fn max_slope(&self) -> f64 {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| ((y[1] - y[0]) / (x[1] - x[0])).abs())
            .fold(0.0, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.ys.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.ys.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn interpolates_and_clamps() {
        let t = Table1d::new(vec![0.0, 1.0, 3.0], vec![1.0, 3.0, 2.0]).unwrap();
        assert_eq!(t.eval(-1.0), 1.0);
        assert_eq!(t.eval(0.5), 2.0);
        assert_eq!(t.eval(2.0), 2.5);
        assert_eq!(t.eval(5.0), 2.0);
        assert_eq!(t.max_slope(), 2.0);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(Table1d::new(vec![0.0], vec![1.0]).is_err());
        assert!(Table1d::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(Table1d::new(vec![0.0, 1.0], vec![1.0]).is_err());
    }

    #[test]
    fn reads_csv_with_header() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "y,sigma\n0,1.0\n 0.5 , 3.0\n1,1.0").unwrap();
        let t = Table1d::from_csv(file.path()).unwrap();
        assert_eq!(t.xs(), &[0.0, 0.5, 1.0]);
        assert_eq!(t.eval(0.25), 2.0);
    }
}
