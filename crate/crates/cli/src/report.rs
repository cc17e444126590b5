//! One structured document per run, rendered either as JSON or as an
//! indented `key: value` listing of the same tree.

use serde_json::{Map, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub struct Report {
    pub command: String,
    pub result: Map<String, Value>,
    pub exit_code: i32,
    /// Emitted verbatim in human mode (a `.circ` file, say), after the
    /// command echo as a comment.
    pub file: Option<String>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Self { command, result: Map::new(), exit_code: EXIT_PASS, file: None }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.result.insert(key.to_string(), value.into());
        self
    }

    /// Marks the run failed unless `ok`.
    pub fn check(&mut self, ok: bool) {
        if !ok && self.exit_code == EXIT_PASS {
            self.exit_code = EXIT_FAIL;
        }
    }

    pub fn input_error(command: String, message: &str) -> Self {
        let mut r = Self::new(command);
        r.set("error", message);
        r.exit_code = EXIT_INPUT;
        r
    }

    fn document(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("command".into(), self.command.clone().into());
        let mut result = self.result.clone();
        if let Some(f) = &self.file {
            result.insert("file".into(), f.clone().into());
        }
        doc.insert("result".into(), Value::Object(result));
        doc.insert("exit_code".into(), self.exit_code.into());
        Value::Object(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.document()).expect("documents serialize")
    }

    pub fn to_text(&self) -> String {
        if let (Some(file), EXIT_PASS) = (&self.file, self.exit_code) {
            return format!("# {}\n{}", self.command, file);
        }
        let mut out = String::new();
        render(&mut out, 0, "command", &self.command.clone().into());
        for (k, v) in &self.result {
            render(&mut out, 0, k, v);
        }
        if let Some(f) = &self.file {
            render(&mut out, 0, "file", &f.clone().into());
        }
        render(&mut out, 0, "exit_code", &self.exit_code.into());
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        _ => None,
    }
}

fn render(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    match v {
        Value::String(s) => {
            out.push_str(&format!("{pad}{key}: |\n"));
            for line in s.lines() {
                out.push_str(&format!("{pad}  {line}\n"));
            }
        }
        Value::Array(items) if items.is_empty() => out.push_str(&format!("{pad}{key}: []\n")),
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for item in items {
                match (scalar(item), item) {
                    (Some(s), _) => out.push_str(&format!("{pad}  - {s}\n")),
                    (None, Value::Object(map)) => {
                        // first field on the dash line, the rest aligned under it
                        let mut inner = String::new();
                        for (k, v) in map {
                            render(&mut inner, depth + 2, k, v);
                        }
                        let body = inner.strip_prefix(&"  ".repeat(depth + 2)).unwrap_or(&inner);
                        out.push_str(&format!("{pad}  - {body}"));
                    }
                    (None, _) => render(out, depth + 1, "-", item),
                }
            }
        }
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render(out, depth + 1, k, v);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
