use serde_json::Value;

use crate::job::OutFormat;
use crate::CliError;

/// A command result in all three renderings. `status` is the exit code to
/// use after printing.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub status: u8,
}

impl Output {
    pub fn new(text: String, json: Value) -> Self {
        Self { text, json, header: Vec::new(), rows: Vec::new(), status: 0 }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(ToString::to_string).collect();
        self.rows = rows;
        self
    }

    pub fn with_status(mut self, status: u8) -> Self {
        self.status = status;
        self
    }

    pub fn render(&self, format: OutFormat) -> Result<String, CliError> {
        match format {
            OutFormat::Table => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                Ok(s)
            }
            OutFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::failure(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            OutFormat::Csv => {
                if self.header.is_empty() {
                    return Err(CliError::usage("this command has no tabular result; use --out table or json"));
                }
                let mut w = csv::Writer::from_writer(Vec::new());
                let err = |e: csv::Error| CliError::failure(e.to_string());
                w.write_record(&self.header).map_err(err)?;
                for r in &self.rows {
                    w.write_record(r).map_err(err)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::failure(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::failure(e.to_string()))
            }
        }
    }
}
