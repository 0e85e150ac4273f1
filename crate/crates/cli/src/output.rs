//! Report assembly and rendering.

use serde::Serialize;
use serde_json::Value;

use crate::Format;

#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub char: Option<u32>,
    pub e_max: u32,
    pub e_window: u32,
    pub degree_bound: Option<u64>,
    pub format: Format,
    pub t: Option<String>,
    pub threads: Option<usize>,
}

/// A per-e table, rendered as CSV on request.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn text(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| self.rows.iter().map(|r| r[i].chars().count()).chain([self.header[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        let mut out = line(&self.header);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// What a command hands back for rendering.
pub struct Outcome {
    pub result: Value,
    pub lines: Vec<String>,
    pub table: Option<Table>,
    pub exit: i32,
}

impl Outcome {
    pub fn new(result: impl Serialize, lines: Vec<String>) -> Self {
        Outcome { result: serde_json::to_value(result).expect("serializable report"), lines, table: None, exit: 0 }
    }

    pub fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    pub fn exit(mut self, code: i32) -> Self {
        self.exit = code;
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    config: Option<String>,
    settings: &'a Settings,
    exit_code: i32,
    result: &'a Value,
}

pub fn render(command: &str, config: Option<String>, settings: &Settings, o: &Outcome) -> Result<String, String> {
    match settings.format {
        Format::Json => {
            let env = Envelope { command, config, settings, exit_code: o.exit, result: &o.result };
            Ok(serde_json::to_string_pretty(&env).expect("serializable envelope") + "\n")
        }
        Format::Csv => match &o.table {
            Some(t) => Ok(t.csv()),
            None => Err(format!("--format csv is only available for per-e tables; `{command}` has none")),
        },
        Format::Table => {
            let mut out = format!("# frobsig {command}");
            if let Some(c) = &config {
                out.push_str(&format!(" {c}"));
            }
            out.push('\n');
            if let Some(p) = settings.char {
                out.push_str(&format!("# char = {p}\n"));
            }
            out.push_str(&format!(
                "# e_max = {}, e_window = {}, degree_bound = {}, t = {}\n",
                settings.e_max,
                settings.e_window,
                settings.degree_bound.map_or("default".into(), |d| d.to_string()),
                settings.t.as_deref().unwrap_or("none"),
            ));
            if let Some(t) = &o.table {
                out.push_str(&t.text());
            }
            for l in &o.lines {
                out.push_str(l);
                out.push('\n');
            }
            Ok(out)
        }
    }
}
