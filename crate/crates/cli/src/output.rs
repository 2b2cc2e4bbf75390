//! Rendering of command results as canonical JSON, CSV or text.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows with a fixed header, used for CSV when a command has a natural table.
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
}

/// Result of one command. `ok = false` means a verification failed.
#[derive(Clone, Debug)]
pub struct Output {
    pub value: Value,
    pub table: Option<Table>,
    pub ok: bool,
}

impl Output {
    pub fn new(value: Value) -> Self {
        Output { value, table: None, ok: true }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

/// JSON objects are `BTreeMap`s, so keys come out sorted.
pub fn emit(out: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.value).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let table = out.table.clone().unwrap_or_else(|| flatten_table(&out.value));
            let mut s = csv_line(&table.header);
            for row in &table.rows {
                s.push_str(&csv_line(row));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (path, value) in flatten(&out.value) {
                s.push_str(&format!("{path}: {value}\n"));
            }
            s
        }
    }
}

fn flatten_table(v: &Value) -> Table {
    let mut t = Table::new(&["key", "value"]);
    for (path, value) in flatten(v) {
        t.push(vec![path, value]);
    }
    t
}

/// Leaf values keyed by dotted paths, in key order.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                walk(x, join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                walk(x, join(&i.to_string()), out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        other => out.push((path, other.to_string())),
    }
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    format!("{}\n", quoted.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_table_is_header_only() {
        let out = Output::new(json!({})).with_table(Table::new(&["x", "y", "dim"]));
        assert_eq!(emit(&out, Format::Csv), "x,y,dim\n");
    }

    #[test]
    fn json_keys_are_sorted() {
        let out = Output::new(json!({"b": 1, "a": {"d": 2, "c": 3}}));
        let s = emit(&out, Format::Json);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.find("\"c\"").unwrap() < s.find("\"d\"").unwrap());
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["word"]);
        t.push(vec!["1,2,1".into()]);
        assert_eq!(emit(&Output::new(json!({})).with_table(t), Format::Csv), "word\n\"1,2,1\"\n");
    }

    #[test]
    fn text_flattens_paths() {
        let out = Output::new(json!({"a": [1, {"b": "v^-1+v"}]}));
        assert_eq!(emit(&out, Format::Text), "a.0: 1\na.1.b: v^-1+v\n");
    }
}
