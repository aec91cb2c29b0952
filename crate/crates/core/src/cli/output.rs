use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => num(*v),
            Cell::Num(_) => "null".into(),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
        }
    }
}

/// 17 significant digits.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Renders the rows; `single` prints one record as key/value lines in
    /// human mode and as a bare object in JSON mode.
    pub fn render(&self, format: Format, single: bool) -> String {
        match format {
            Format::Csv => {
                let mut s = self.headers.join(",");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::plain).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let objects: Vec<String> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let fields: Vec<String> = self
                            .headers
                            .iter()
                            .zip(row)
                            .map(|(h, c)| format!("\"{h}\":{}", c.json()))
                            .collect();
                        format!("{{{}}}", fields.join(","))
                    })
                    .collect();
                if single && objects.len() == 1 {
                    format!("{}\n", objects[0])
                } else {
                    format!("[\n{}\n]\n", objects.join(",\n"))
                }
            }
            Format::Human if single && self.rows.len() == 1 => {
                let width = self.headers.iter().map(|h| h.len()).max().unwrap_or(0);
                self.headers
                    .iter()
                    .zip(&self.rows[0])
                    .map(|(h, c)| format!("{h:<width$}  {}\n", c.plain()))
                    .collect()
            }
            Format::Human => {
                let cells: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Cell::plain).collect())
                    .collect();
                let widths: Vec<usize> = self
                    .headers
                    .iter()
                    .enumerate()
                    .map(|(i, h)| cells.iter().map(|r| r[i].len()).fold(h.len(), usize::max))
                    .collect();
                let line = |items: Vec<String>| -> String {
                    let padded: Vec<String> = items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect();
                    format!("{}\n", padded.join("  ").trim_end())
                };
                let mut s = line(self.headers.iter().map(|h| h.to_string()).collect());
                for row in cells {
                    s.push_str(&line(row));
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["method", "value", "terms"]);
        t.push(vec![Cell::Text("series".into()), Cell::Num(0.5), Cell::Int(3)]);
        t
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.664_409_142_768_356_6), "6.6440914276835661e-1");
        assert_eq!(num(1.0), "1.0000000000000000e0");
        let back: f64 = num(0.1 + 0.2).parse().unwrap();
        assert_eq!(back, 0.1 + 0.2);
    }

    #[test]
    fn csv_and_json() {
        let t = sample();
        assert_eq!(t.render(Format::Csv, false), "method,value,terms\nseries,5.0000000000000000e-1,3\n");
        assert_eq!(
            t.render(Format::Json, true),
            "{\"method\":\"series\",\"value\":5.0000000000000000e-1,\"terms\":3}\n"
        );
    }

    #[test]
    fn non_finite_json_is_null() {
        assert_eq!(Cell::Num(f64::NAN).json(), "null");
        assert_eq!(Cell::Num(f64::NAN).plain(), "nan");
    }
}
