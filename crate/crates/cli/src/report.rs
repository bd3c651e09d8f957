use std::io::Write;

use serde::Serialize;

use crate::config::Format;

/// One check: a computed quantity against its expected value.
///
/// Columns that do not apply to a command are left empty (CSV) or `null`
/// (JSON).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub command: &'static str,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    #[serde(rename = "M")]
    pub m: Option<u32>,
    pub copies: Option<u32>,
    pub a: Option<u32>,
    pub sample: Option<usize>,
    pub seed: u64,
    pub quantity: &'static str,
    pub value: f64,
    pub expected: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Row {
    pub fn check(
        command: &'static str,
        seed: u64,
        quantity: &'static str,
        value: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let deviation = (value - expected).abs();
        Self {
            command,
            n: None,
            m: None,
            copies: None,
            a: None,
            sample: None,
            seed,
            quantity,
            value,
            expected,
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }

    pub fn scenario(mut self, n: u32, m: u32) -> Self {
        self.n = Some(n);
        self.m = Some(m);
        self
    }

    pub fn copies(mut self, copies: u32) -> Self {
        self.copies = Some(copies);
        self
    }

    pub fn outcome(mut self, a: u32) -> Self {
        self.a = Some(a);
        self
    }

    pub fn sample(mut self, index: usize) -> Self {
        self.sample = Some(index);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub passed: bool,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, rows: Vec<Row>) -> Self {
        let passed = rows.iter().all(|r| r.pass);
        Self {
            command,
            seed,
            passed,
            rows,
        }
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for row in &self.rows {
                    w.serialize(row)?;
                }
                if self.rows.is_empty() {
                    w.write_record(CSV_HEADER)?;
                }
                w.flush()
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, self)?;
                writeln!(out)
            }
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(format, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("reports are UTF-8")
    }
}

pub const CSV_HEADER: [&str; 13] = [
    "command",
    "N",
    "M",
    "copies",
    "a",
    "sample",
    "seed",
    "quantity",
    "value",
    "expected",
    "deviation",
    "tolerance",
    "pass",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let r = Report::new(
            "optimal",
            7,
            vec![Row::check("optimal", 7, "f_clone", 0.75, 0.75, 1e-9).scenario(1, 2)],
        );
        let text = r.render(Format::Csv);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "optimal,1,2,,,,7,f_clone,0.75,0.75,0.0,1e-9,true"
        );
    }

    #[test]
    fn failing_row_fails_report() {
        let r = Report::new(
            "relation",
            0,
            vec![Row::check("relation", 0, "residual", 1e-3, 0.0, 1e-12)],
        );
        assert!(!r.passed);
        assert_eq!(r.failures(), 1);
        let json: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(json["rows"][0]["N"], serde_json::Value::Null);
        assert_eq!(json["passed"], false);
    }
}
