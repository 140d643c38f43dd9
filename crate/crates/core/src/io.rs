//! Plain-text CSV output and node-signal files.
//!
//! Numbers are written with 17 significant digits so they read back to the
//! same `f64`. Comment lines start with `#`.

use std::fmt::Write as _;
use std::path::Path;

use faer::MatRef;

use crate::error::{Error, Result};

/// 17 significant digits in scientific notation; `-0` prints as `0`.
pub fn fmt_value(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Accumulates a CSV document in memory.
#[derive(Debug, Default, Clone)]
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comment(mut self, text: impl AsRef<str>) -> Self {
        let _ = writeln!(self.buf, "# {}", text.as_ref());
        self
    }

    pub fn header<S: AsRef<str>>(mut self, columns: impl IntoIterator<Item = S>) -> Self {
        let cols: Vec<String> = columns.into_iter().map(|c| c.as_ref().to_owned()).collect();
        let _ = writeln!(self.buf, "{}", cols.join(","));
        self
    }

    /// A row whose first cell is an integer label.
    pub fn row(&mut self, label: usize, values: impl IntoIterator<Item = f64>) {
        self.buf.push_str(&label.to_string());
        for v in values {
            self.buf.push(',');
            self.buf.push_str(&fmt_value(v));
        }
        self.buf.push('\n');
    }

    /// A row of numbers only.
    pub fn values(&mut self, values: impl IntoIterator<Item = f64>) {
        let cells: Vec<String> = values.into_iter().map(fmt_value).collect();
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Dense matrix as bare rows, no header.
pub fn matrix_csv(m: MatRef<'_, f64>) -> String {
    let mut csv = Csv::new();
    for i in 0..m.nrows() {
        csv.values((0..m.ncols()).map(|j| m[(i, j)]));
    }
    csv.finish()
}

/// `node,value` rows.
pub fn signal_csv(signal: &[f64], comments: &[String]) -> String {
    let mut csv = comments.iter().fold(Csv::new(), |c, line| c.comment(line));
    csv = csv.header(["node", "value"]);
    for (i, &v) in signal.iter().enumerate() {
        csv.row(i, [v]);
    }
    csv.finish()
}

/// Reads a `node,value` signal covering every node of `0..n_nodes` exactly
/// once, in any order. A leading non-numeric header row is skipped.
pub fn parse_signal(text: &str, n_nodes: usize) -> Result<Vec<f64>> {
    let mut values = vec![None; n_nodes];
    let mut data_rows = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: "expected `node,value`".into(),
            });
        }
        let node = match fields[0].parse::<usize>() {
            Ok(n) => n,
            Err(_) if data_rows == 0 && fields[1].parse::<f64>().is_err() => continue,
            Err(_) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("invalid node index {:?}", fields[0]),
                })
            }
        };
        data_rows += 1;
        let value: f64 = fields[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("invalid value {:?}", fields[1]),
        })?;
        if node >= n_nodes {
            return Err(Error::NodeOutOfRange {
                index: node,
                n_nodes,
            }
            .at_line(line_no));
        }
        if values[node].replace(value).is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("node {node} given twice"),
            });
        }
    }
    if data_rows != n_nodes {
        return Err(Error::LengthMismatch {
            expected: n_nodes,
            got: data_rows,
        });
    }
    Ok(values.into_iter().map(|v| v.unwrap_or(0.0)).collect())
}

pub fn load_signal(path: impl AsRef<Path>, n_nodes: usize) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_signal(&text, n_nodes)
}
