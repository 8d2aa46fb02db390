//! Structured reports, rendered as indented `key: value` text or as JSON.

use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Text(String),
    Bool(bool),
    Int(i64),
    Float(f64),
    List(Vec<Node>),
    Record(Report),
}

impl From<&str> for Node {
    fn from(s: &str) -> Self {
        Node::Text(s.to_string())
    }
}

impl From<String> for Node {
    fn from(s: String) -> Self {
        Node::Text(s)
    }
}

impl From<bool> for Node {
    fn from(b: bool) -> Self {
        Node::Bool(b)
    }
}

impl From<usize> for Node {
    fn from(v: usize) -> Self {
        Node::Int(v as i64)
    }
}

impl From<f64> for Node {
    fn from(v: f64) -> Self {
        Node::Float(v)
    }
}

impl From<Report> for Node {
    fn from(r: Report) -> Self {
        Node::Record(r)
    }
}

impl<T: Into<Node>> From<Vec<T>> for Node {
    fn from(v: Vec<T>) -> Self {
        Node::List(v.into_iter().map(Into::into).collect())
    }
}

/// An ordered list of fields.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Node)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Node>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Node>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        write_record(&mut out, self, 0);
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.fields.iter().map(|(k, v)| (k.clone(), node_json(v))).collect::<Map<_, _>>())
    }
}

fn scalar_text(n: &Node) -> Option<String> {
    match n {
        Node::Text(s) => Some(s.clone()),
        Node::Bool(b) => Some(b.to_string()),
        Node::Int(v) => Some(v.to_string()),
        Node::Float(v) => Some(format_float(*v)),
        _ => None,
    }
}

pub fn format_float(v: f64) -> String {
    format!("{v}")
}

fn pad(depth: usize) -> String {
    "  ".repeat(depth)
}

fn write_record(out: &mut String, r: &Report, depth: usize) {
    for (k, v) in &r.fields {
        match v {
            Node::Record(inner) => {
                out.push_str(&format!("{}{k}:\n", pad(depth)));
                write_record(out, inner, depth + 1);
            }
            Node::List(items) if items.iter().all(|i| scalar_text(i).is_some()) && items.len() <= 8 => {
                let parts: Vec<String> = items.iter().filter_map(scalar_text).collect();
                out.push_str(&format!("{}{k}: [{}]\n", pad(depth), parts.join(", ")));
            }
            Node::List(items) => {
                out.push_str(&format!("{}{k}:\n", pad(depth)));
                write_items(out, items, depth + 1);
            }
            _ => out.push_str(&format!("{}{k}: {}\n", pad(depth), scalar_text(v).unwrap_or_default())),
        }
    }
}

fn write_items(out: &mut String, items: &[Node], depth: usize) {
    for item in items {
        match item {
            Node::Record(inner) => {
                let mut body = String::new();
                write_record(&mut body, inner, depth + 1);
                let body = body.trim_start();
                out.push_str(&format!("{}- {body}", pad(depth)));
                if body.is_empty() {
                    out.push('\n');
                }
            }
            Node::List(inner) => {
                let parts: Vec<String> = inner.iter().map(|n| scalar_text(n).unwrap_or_else(|| "...".into())).collect();
                out.push_str(&format!("{}- [{}]\n", pad(depth), parts.join(", ")));
            }
            other => out.push_str(&format!("{}- {}\n", pad(depth), scalar_text(other).unwrap_or_default())),
        }
    }
}

fn node_json(n: &Node) -> Value {
    match n {
        Node::Text(s) => Value::String(s.clone()),
        Node::Bool(b) => Value::Bool(*b),
        Node::Int(v) => Value::from(*v),
        Node::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
        Node::List(items) => Value::Array(items.iter().map(node_json).collect()),
        Node::Record(r) => r.to_json(),
    }
}
