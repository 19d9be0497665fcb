//! Data-only CSV tables.

use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Option<f64>>,
    pub error: Option<String>,
}

/// Header plus rows of numbers. Empty cells stay empty; a row that failed
/// carries its message in a trailing `error` column.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    /// Appends a row. Non-finite values turn the row into an error row.
    pub fn push(&mut self, cells: Vec<Option<f64>>) {
        assert_eq!(cells.len(), self.columns.len(), "row width does not match header");
        let bad: Vec<&str> = cells
            .iter()
            .zip(&self.columns)
            .filter(|(c, _)| c.is_some_and(|v| !v.is_finite()))
            .map(|(_, n)| n.as_str())
            .collect();
        if bad.is_empty() {
            self.rows.push(Row { cells, error: None });
        } else {
            let error = format!("non-finite value in {}", bad.join(", "));
            self.push_error(cells, error);
        }
    }

    pub fn push_error(&mut self, cells: Vec<Option<f64>>, error: impl Into<String>) {
        let cells = cells.into_iter().map(|c| c.filter(|v| v.is_finite())).collect();
        self.rows.push(Row { cells, error: Some(error.into()) });
    }

    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }

    pub fn first_error(&self) -> Option<&str> {
        self.rows.iter().find_map(|r| r.error.as_deref())
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.cells[i]).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let with_errors = self.has_errors();
        let mut header: Vec<&str> = self.columns.iter().map(String::as_str).collect();
        if with_errors {
            header.push("error");
        }
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.cells.iter().map(|c| c.map(format_float).unwrap_or_default()).collect();
            if with_errors {
                rec.push(row.error.clone().unwrap_or_default());
            }
            w.write_record(&rec)?;
        }
        w.flush().map_err(|source| CliError::Io { path: "<csv>".into(), source })?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_owned(), source })?;
        }
        let file = std::fs::File::create(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

/// Shortest representation that parses back to the same double.
pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}
