//! Structured command output, rendered as JSON or CSV.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub name: String,
    pub message: String,
}

impl ErrorInfo {
    /// Error name is the variant name of the owning module's error type.
    pub fn from_error<E: std::fmt::Debug + std::fmt::Display>(e: &E) -> Self {
        let debug = format!("{e:?}");
        let mut name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
        // transparent wrappers: Seq(NonIntegral { .. }) names the inner error
        if let Some(inner) = debug.strip_prefix(&format!("{name}(")) {
            let inner: String = inner.chars().take_while(|c| c.is_alphanumeric()).collect();
            if inner.chars().next().is_some_and(char::is_uppercase) {
                name = inner;
            }
        }
        Self {
            name,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub provenance: Vec<String>,
    pub tolerances: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub table: Table,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Rows as a JSON array of objects keyed by the header.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, v)| (h.clone(), json_scalar(v)))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Numbers that fit an f64 exactly stay numbers; big integers stay strings.
fn json_scalar(v: &str) -> Value {
    if let Ok(i) = v.parse::<i64>() {
        if i.unsigned_abs() < (1 << 53) {
            return Value::from(i);
        }
        return Value::from(v);
    }
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() && !v.chars().all(|c| c.is_ascii_digit()) => Value::from(x),
        _ => Value::from(v),
    }
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            results: Value::Object(Map::new()),
            provenance: Vec::new(),
            tolerances: Value::Object(Map::new()),
            error: None,
            table: Table::default(),
        }
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        if let Value::Object(map) = &mut self.results {
            map.insert(key.into(), value.into());
        }
        self
    }

    pub fn tolerance(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        if let Value::Object(map) = &mut self.tolerances {
            map.insert(key.into(), value.into());
        }
        self
    }

    pub fn provenance(&mut self, label: &str) -> &mut Self {
        self.provenance.push(label.into());
        self
    }

    /// Attach the table under `results.rows` as well, so JSON carries it.
    pub fn with_table(&mut self, table: Table) -> &mut Self {
        self.result("rows", table.to_json());
        self.table = table;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports are plain data");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        if self.table.header.is_empty() {
            // key,value pairs for scalar results
            writer.write_record(["key", "value"]).expect("in-memory write");
            if let Value::Object(map) = &self.results {
                for (k, v) in map {
                    let text = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    writer.write_record([k.as_str(), text.as_str()]).expect("in-memory write");
                }
            }
        } else {
            writer.write_record(&self.table.header).expect("in-memory write");
            for row in &self.table.rows {
                writer.write_record(row).expect("in-memory write");
            }
        }
        if let Some(e) = &self.error {
            writer.write_record(["error", e.name.as_str()]).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn error_names() {
        use orbitzeta_core::dirser::DirserError;
        use orbitzeta_core::seqcore::SeqError;
        let e = DirserError::Seq(SeqError::NonIntegral { n: 4 });
        assert_eq!(ErrorInfo::from_error(&e).name, "NonIntegral");
        assert_eq!(ErrorInfo::from_error(&DirserError::PoleAt1).name, "PoleAt1");
        let wrapped = DirserError::InvalidParameter("x");
        assert_eq!(ErrorInfo::from_error(&wrapped).name, "InvalidParameter");
    }

    #[test]
    fn csv_rendering() {
        let mut r = Report::new("seq", json!({}));
        let mut t = Table::new(&["n", "value"]);
        t.push(vec!["1".into(), "123456789012345678901234567890".into()]);
        r.with_table(t);
        assert_eq!(r.render(Format::Csv), "n,value\n1,123456789012345678901234567890\n");
        let json: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(json["results"]["rows"][0]["value"], "123456789012345678901234567890");
        assert_eq!(json["results"]["rows"][0]["n"], 1);
    }
}
