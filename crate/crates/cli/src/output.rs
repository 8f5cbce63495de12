//! Result documents and their two text renderings.
//!
//! The default rendering is line oriented: `key=value` for scalars,
//! `key=a,b,c` for lists, and for tables a `# name: col1<TAB>col2...` header
//! followed by one tab-separated record per line. The structured rendering
//! is a JSON object with keys in emission order; lists become arrays and
//! tables become arrays of objects.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    UsageError,
    DomainError,
    Diverged,
    NotACode,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::UsageError => 1,
            Status::DomainError => 2,
            Status::Diverged => 3,
            Status::NotACode => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::UsageError => "usage_error",
            Status::DomainError => "domain_error",
            Status::Diverged => "diverged",
            Status::NotACode => "not_a_code",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    /// key=value lines
    #[default]
    Kv,
    /// JSON document
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Field {
    Scalar(String),
    List(Vec<String>),
    Table(Table),
    /// Free text printed verbatim (help and error messages).
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    entries: Vec<(String, Field)>,
}

impl Document {
    pub fn new() -> Self {
        Document::default()
    }

    pub fn scalar(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries
            .push((key.to_owned(), Field::Scalar(value.to_string())));
        self
    }

    pub fn list<T: ToString>(&mut self, key: &str, items: impl IntoIterator<Item = T>) -> &mut Self {
        let items = items.into_iter().map(|i| i.to_string()).collect();
        self.entries.push((key.to_owned(), Field::List(items)));
        self
    }

    pub fn table(&mut self, key: &str, table: Table) -> &mut Self {
        self.entries.push((key.to_owned(), Field::Table(table)));
        self
    }

    pub fn text(&mut self, key: &str, text: impl Into<String>) -> &mut Self {
        self.entries.push((key.to_owned(), Field::Text(text.into())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, f)| f)
    }

    /// Value of a scalar entry.
    pub fn get_scalar(&self, key: &str) -> Option<&str> {
        match self.get(key) {
            Some(Field::Scalar(s)) => Some(s),
            _ => None,
        }
    }

    pub fn entries(&self) -> &[(String, Field)] {
        &self.entries
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Kv => self.render_kv(),
            Format::Structured => {
                let mut text = serde_json::to_string_pretty(&self.to_json())
                    .expect("documents serialize");
                text.push('\n');
                text
            }
        }
    }

    fn render_kv(&self) -> String {
        let mut out = String::new();
        for (key, field) in &self.entries {
            match field {
                Field::Scalar(v) => out.push_str(&format!("{key}={v}\n")),
                Field::List(items) => out.push_str(&format!("{key}={}\n", items.join(","))),
                Field::Table(t) => {
                    out.push_str(&format!("# {key}: {}\n", t.columns.join("\t")));
                    for row in &t.rows {
                        out.push_str(&row.join("\t"));
                        out.push('\n');
                    }
                }
                Field::Text(text) => {
                    out.push_str(text.trim_end());
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (key, field) in &self.entries {
            let value = match field {
                Field::Scalar(v) | Field::Text(v) => json!(v),
                Field::List(items) => json!(items),
                Field::Table(t) => Value::Array(
                    t.rows
                        .iter()
                        .map(|row| {
                            Value::Object(
                                t.columns
                                    .iter()
                                    .cloned()
                                    .zip(row.iter().map(|c| json!(c)))
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
            };
            map.insert(key.clone(), value);
        }
        Value::Object(map)
    }
}
