//! CSV datasets: one row per time point, an optional leading "time" column
//! (kept for provenance, ignored by the models), then one named column of
//! angles in radians per series. Values are wrapped into [0, 2π) on load.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use circula::{Angle, CircularSeries};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("malformed csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("dataset needs a header and at least one data row")]
    Empty,
    #[error("dataset needs at least one angle column")]
    NoColumns,
    #[error("row {row} has {got} fields, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("row {row}, column \"{column}\": cannot parse \"{value}\" as an angle in radians")]
    BadCell {
        row: usize,
        column: String,
        value: String,
    },
    #[error(transparent)]
    Model(#[from] circula::CirculaError),
}

/// A loaded dataset: column names plus the wrapped angular series.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub names: Vec<String>,
    pub series: CircularSeries,
}

impl Dataset {
    /// Index of the column called `name`.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Reads a dataset from `path` per the format above. Errors carry the
/// one-based data row and the column name of the offending cell.
pub fn load_csv(path: &Path) -> Result<Dataset, DataError> {
    let file = File::open(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_csv_reader(file)
}

pub fn load_csv_reader<R: io::Read>(reader: R) -> Result<Dataset, DataError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = csv
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if headers.is_empty() {
        return Err(DataError::Empty);
    }
    let has_time = headers[0].eq_ignore_ascii_case("time");
    let names: Vec<String> = if has_time {
        headers[1..].to_vec()
    } else {
        headers
    };
    if names.is_empty() {
        return Err(DataError::NoColumns);
    }

    let offset = usize::from(has_time);
    let expected = names.len() + offset;
    let mut flat: Vec<Angle> = Vec::new();
    for (idx, record) in csv.records().enumerate() {
        let row = idx + 1;
        let record = record?;
        if record.len() != expected {
            return Err(DataError::Ragged {
                row,
                expected,
                got: record.len(),
            });
        }
        for (j, cell) in record.iter().skip(offset).enumerate() {
            let parsed: f64 = cell.parse().map_err(|_| DataError::BadCell {
                row,
                column: names[j].clone(),
                value: cell.to_string(),
            })?;
            let wrapped = Angle::new(parsed).map_err(|_| DataError::BadCell {
                row,
                column: names[j].clone(),
                value: cell.to_string(),
            })?;
            flat.push(wrapped);
        }
    }
    if flat.is_empty() {
        return Err(DataError::Empty);
    }
    let series = CircularSeries::from_flat(names.len(), flat)?;
    Ok(Dataset { names, series })
}

/// Writes a dataset in the same format: a time index column followed by the
/// angle columns at six decimal places.
pub fn write_csv<W: Write>(mut out: W, dataset: &Dataset) -> io::Result<()> {
    write!(out, "time")?;
    for name in &dataset.names {
        write!(out, ",{name}")?;
    }
    writeln!(out)?;
    let series = &dataset.series;
    for t in 0..series.n_times() {
        write!(out, "{}", t + 1)?;
        for value in series.block(t) {
            write!(out, ",{:.6}", value.radians())?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn loads_plain_columns_and_wraps() {
        let csv = "a,b\n7.0,1.0\n0.5,6.9\n";
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(ds.names, ["a", "b"]);
        assert_eq!(ds.series.n_times(), 2);
        assert_abs_diff_eq!(
            ds.series.value(0, 0).radians(),
            7.0 - std::f64::consts::TAU,
            epsilon = 1e-12
        );
    }

    #[test]
    fn skips_time_column() {
        let csv = "time,north\n2015-02-06 00:00,1.5\n2015-02-06 01:00,2.5\n";
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(ds.names, ["north"]);
        assert_eq!(ds.series.n_series(), 1);
        assert_abs_diff_eq!(ds.series.value(1, 0).radians(), 2.5, epsilon = 1e-12);
    }

    #[test]
    fn names_offending_cell() {
        let csv = "a,b\n1.0,abc\n";
        let err = load_csv_reader(csv.as_bytes()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 1"), "{msg}");
        assert!(msg.contains("\"b\""), "{msg}");
        assert!(msg.contains("abc"), "{msg}");
    }

    #[test]
    fn reports_ragged_rows() {
        let csv = "a,b\n1.0,2.0\n3.0\n";
        let err = load_csv_reader(csv.as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            DataError::Ragged {
                row: 2,
                expected: 2,
                got: 1
            }
        ));
    }

    #[test]
    fn rejects_empty_and_headerless_data() {
        assert!(load_csv_reader("a,b\n".as_bytes()).is_err());
        assert!(load_csv(Path::new("/nonexistent/file.csv")).is_err());
    }

    #[test]
    fn round_trips_through_writer() {
        let csv = "time,a,b\n1,0.123456,3.2\n2,1.0,2.0\n";
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &ds).unwrap();
        let back = load_csv_reader(buf.as_slice()).unwrap();
        assert_eq!(back.names, ds.names);
        for (x, y) in back.series.flat().iter().zip(ds.series.flat()) {
            assert!(x.signed_distance(*y).abs() < 1e-6);
        }
    }
}
