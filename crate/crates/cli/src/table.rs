use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// Long-form output table with a metadata block.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    metadata: BTreeMap<&'a str, &'a str>,
    columns: &'a [String],
    rows: Vec<BTreeMap<&'a str, &'a str>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Pretty => self.pretty(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        let body = w.into_inner().expect("in-memory write");
        out.push_str(&String::from_utf8(body).expect("utf-8 input"));
        out
    }

    fn json(&self) -> String {
        let doc = JsonDoc {
            metadata: self
                .metadata
                .iter()
                .map(|(k, v)| (k.as_str(), v.as_str()))
                .collect(),
            columns: &self.columns,
            rows: self
                .rows
                .iter()
                .map(|r| {
                    self.columns
                        .iter()
                        .map(String::as_str)
                        .zip(r.iter().map(String::as_str))
                        .collect()
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("string maps serialize");
        s.push('\n');
        s
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "{k}: {v}");
        }
        if !self.metadata.is_empty() {
            out.push('\n');
        }
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                self.rows
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([self.columns[i].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&self.columns));
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        let _ = writeln!(out, "{}", line(&rule));
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["k", "V_k_decimal"]);
        t.meta("sf", "mu:0");
        t.push(vec!["1".into(), "1".into()]);
        t.push(vec!["2".into(), "-1.7678e-1".into()]);
        t
    }

    #[test]
    fn csv_has_header_block() {
        assert_eq!(
            sample().render(Format::Csv),
            "# sf: mu:0\nk,V_k_decimal\n1,1\n2,-1.7678e-1\n"
        );
    }

    #[test]
    fn json_round_trips() {
        let v: serde_json::Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["metadata"]["sf"], "mu:0");
        assert_eq!(v["rows"][1]["V_k_decimal"], "-1.7678e-1");
        assert_eq!(v["columns"][0], "k");
    }

    #[test]
    fn pretty_aligns() {
        let s = sample().render(Format::Pretty);
        assert!(
            s.contains("k  V_k_decimal\n-  -----------\n1  1\n2  -1.7678e-1\n"),
            "{s}"
        );
    }
}
