//! CSV solution tables: a header row, then one row per output time.

use std::io::{Read, Write};

use crate::{Error, Result};

/// Formats with 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SolutionTable {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    /// Header `t, x, p` for one solution, `t, x1, p1, x2, p2, ...` otherwise.
    pub fn for_solutions(count: usize, momentum: &str) -> Self {
        let mut header = vec!["t".to_string()];
        if count == 1 {
            header.extend(["x".to_string(), momentum.to_string()]);
        } else {
            for i in 1..=count {
                header.extend([format!("x{i}"), format!("{momentum}{i}")]);
            }
        }
        Self::new(header)
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Number of `(x, p)` column pairs after the time column.
    pub fn pair_count(&self) -> usize {
        (self.header.len().saturating_sub(1)) / 2
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r[0])
    }

    pub fn pair(&self, row: usize, index: usize) -> [f64; 2] {
        let r = &self.rows[row];
        [r[1 + 2 * index], r[2 + 2 * index]]
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(|v| format_number(*v)))?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(input);
        let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if header.first().map(String::as_str) != Some("t") {
            return Err(Error::Config("first column must be `t`".into()));
        }
        let mut table = Self::new(header);
        for (line, record) in reader.records().enumerate() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    cell.parse::<f64>().map_err(|_| {
                        Error::Config(format!("row {}: `{cell}` is not numeric", line + 1))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            table.rows.push(row);
        }
        if table.rows.windows(2).any(|w| !(w[1][0] > w[0][0])) {
            return Err(Error::Config("t column must be strictly increasing".into()));
        }
        Ok(table)
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        Self::read(text.as_bytes())
    }
}
