//! Row sinks for the two output formats.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// CSV rows go out (and are flushed) as soon as they are pushed so long runs
/// show progress; JSON is an array of objects written on [`Sink::finish`].
pub enum Sink<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Json {
        out: W,
        columns: Vec<&'static str>,
        rows: Vec<Value>,
    },
}

impl<W: Write> Sink<W> {
    pub fn new(format: Format, out: W, columns: &[&'static str]) -> std::io::Result<Self> {
        Ok(match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(columns)?;
                w.flush()?;
                Sink::Csv(Box::new(w))
            }
            Format::Json => Sink::Json {
                out,
                columns: columns.to_vec(),
                rows: Vec::new(),
            },
        })
    }

    pub fn push(&mut self, row: &[String]) -> std::io::Result<()> {
        match self {
            Sink::Csv(w) => {
                w.write_record(row)?;
                w.flush()
            }
            Sink::Json { columns, rows, .. } => {
                debug_assert_eq!(columns.len(), row.len());
                let obj: Map<String, Value> = columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), Value::String(v.clone())))
                    .collect();
                rows.push(Value::Object(obj));
                Ok(())
            }
        }
    }

    pub fn finish(self) -> std::io::Result<()> {
        match self {
            Sink::Csv(mut w) => w.flush(),
            Sink::Json { mut out, rows, .. } => {
                serde_json::to_writer_pretty(&mut out, &Value::Array(rows))?;
                writeln!(out)?;
                out.flush()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(format: Format) -> String {
        let mut buf = Vec::new();
        let mut sink = Sink::new(format, &mut buf, &["n", "value"]).unwrap();
        sink.push(&["2".into(), "7.1e-1".into()]).unwrap();
        sink.push(&["3".into(), "3.6e-1".into()]).unwrap();
        sink.finish().unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_layout() {
        assert_eq!(render(Format::Csv), "n,value\n2,7.1e-1\n3,3.6e-1\n");
    }

    #[test]
    fn json_keeps_column_order() {
        let v: Value = serde_json::from_str(&render(Format::Json)).unwrap();
        let first = v[0].as_object().unwrap();
        assert_eq!(first.keys().collect::<Vec<_>>(), ["n", "value"]);
        assert_eq!(v[1]["value"], "3.6e-1");
    }
}
