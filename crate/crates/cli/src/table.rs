//! Column-labeled output tables.

use std::io::Write;

/// Formats a number with 9 significant digits, period decimal separator
/// and no exponent, e.g. `340.902345` or `0.000123456789`.
pub fn num(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    rounded.to_string()
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row, padding short rows with empty cells.
    pub fn push(&mut self, mut row: Vec<String>) {
        assert!(row.len() <= self.header.len(), "row wider than header");
        row.resize(self.header.len(), String::new());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}
