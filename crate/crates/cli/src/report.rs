use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone)]
enum Item {
    /// The headline result: printed bare in text mode when it comes first.
    Primary(String, String),
    Value(String, String),
    Table { name: String, columns: Vec<String>, rows: Vec<Vec<String>> },
    /// Multi-line text such as a machine description.
    Block(String, String),
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    items: Vec<Item>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn primary(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.items.push(Item::Primary(key.to_string(), value.to_string()));
        self
    }

    pub fn value(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.items.push(Item::Value(key.to_string(), value.to_string()));
        self
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<String>>) -> &mut Self {
        self.items.push(Item::Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
        self
    }

    pub fn block(&mut self, name: &str, text: impl ToString) -> &mut Self {
        self.items.push(Item::Block(name.to_string(), text.to_string()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for (i, item) in self.items.iter().enumerate() {
            match item {
                Item::Primary(_, v) if i == 0 => {
                    let _ = writeln!(out, "{v}");
                }
                Item::Primary(k, v) | Item::Value(k, v) => {
                    let _ = writeln!(out, "{k}: {v}");
                }
                Item::Table { name, columns, rows } => {
                    let _ = writeln!(out, "[{name}]");
                    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
                    for r in rows {
                        for (i, cell) in r.iter().enumerate() {
                            widths[i] = widths[i].max(cell.chars().count());
                        }
                    }
                    for r in std::iter::once(columns).chain(rows) {
                        let line: Vec<String> =
                            r.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = widths[i])).collect();
                        let _ = writeln!(out, "{}", line.join("  ").trim_end());
                    }
                }
                Item::Block(name, text) => {
                    let _ = writeln!(out, "[{name}]");
                    out.push_str(text);
                    if !text.ends_with('\n') {
                        out.push('\n');
                    }
                }
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            match item {
                Item::Primary(k, v) | Item::Value(k, v) => {
                    let _ = writeln!(out, "{},{}", field(k), field(v));
                }
                Item::Table { name, columns, rows } => {
                    for r in std::iter::once(columns).chain(rows) {
                        let cells: Vec<String> = std::iter::once(name).chain(r).map(|c| field(c)).collect();
                        let _ = writeln!(out, "{}", cells.join(","));
                    }
                }
                Item::Block(name, text) => {
                    for line in text.lines() {
                        let _ = writeln!(out, "{},{}", field(name), field(line));
                    }
                }
            }
        }
        out
    }
}

/// Quotes a CSV field when needed.
fn field(s: &str) -> String {
    if s.is_empty() || s.contains([',', '"', '\n']) || s.starts_with(' ') || s.ends_with(' ') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_csv() {
        let mut r = Report::new();
        r.primary("code", "1101001011").value("length", 10).table(
            "rows",
            &["x", "bits"],
            vec![vec!["".into(), "01".into()], vec!["0".into(), "10".into()]],
        );
        assert_eq!(r.render(Format::Text), "1101001011\nlength: 10\n[rows]\nx  bits\n   01\n0  10\n");
        assert_eq!(r.render(Format::Csv), "code,1101001011\nlength,10\nrows,x,bits\nrows,\"\",01\nrows,0,10\n");
    }
}
