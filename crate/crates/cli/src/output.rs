use clap::ValueEnum;
use serde_json::Value;
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// One JSON object per table row.
    Jsonl,
    Csv,
}

/// A command result: a JSON document plus a flat table for CSV/JSON lines.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
            Format::Jsonl => {
                for row in &self.rows {
                    let obj: serde_json::Map<String, Value> = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                        .collect();
                    serde_json::to_writer(&mut *out, &obj)?;
                    writeln!(out)?;
                }
                Ok(())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

/// `q1^2*q3` style monomial for a partition of variable indices.
pub fn monomial(letter: &str, mu: &hurwitz_core::Partition) -> String {
    if mu.is_empty() {
        return "1".into();
    }
    mu.multiplicities()
        .into_iter()
        .map(|(k, m)| {
            if m == 1 {
                format!("{letter}{k}")
            } else {
                format!("{letter}{k}^{m}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}
