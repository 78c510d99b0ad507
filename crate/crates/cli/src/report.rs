use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Success, or the claim was verified.
    Ok,
    /// A claim was refuted or a checked inequality failed.
    Violation,
    /// Bad arguments or unreadable input.
    Usage,
    /// A coset or search budget ran out before an answer.
    Resource,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Usage => 2,
            Status::Resource => 3,
        }
    }
}

/// What a subcommand produced: flat fields for `--json`, text otherwise.
#[derive(Debug)]
pub struct Output {
    pub fields: Map<String, Value>,
    pub text: String,
    pub status: Status,
}

impl Output {
    pub fn new() -> Self {
        Output { fields: Map::new(), text: String::new(), status: Status::Ok }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, line: impl AsRef<str>) -> &mut Self {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
        self
    }

    /// Adds a field and an aligned `key value` line for it.
    pub fn row(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        let value = value.into();
        let shown = match &value {
            Value::String(s) => s.clone(),
            Value::Number(n) => match n.as_f64() {
                Some(f) if n.is_f64() => format!("{f:.4}"),
                _ => n.to_string(),
            },
            Value::Null => "-".to_string(),
            other => other.to_string(),
        };
        self.line(format!("{key:<20} {shown}"));
        self.set(key, value)
    }

    pub fn fail(&mut self, status: Status) -> &mut Self {
        if self.status == Status::Ok {
            self.status = status;
        }
        self
    }
}

/// One self-describing document per run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub subcommand: String,
    pub inputs: Vec<String>,
    pub outputs: Map<String, Value>,
    pub elapsed_micros: u64,
    pub status: Status,
    pub exit_code: i32,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    #[cfg(test)]
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut out = Output::new();
        out.row("length", 23).row("lower_c_log2", 147f64.log2()).row("torsion", "147");
        out.set("rows", serde_json::json!([[3, 2, 1], [4, 3, 3]]));
        let r = RunReport {
            subcommand: "bounds".into(),
            inputs: vec!["bounds".into(), "x.pres".into()],
            outputs: out.fields,
            elapsed_micros: 12,
            status: Status::Ok,
            exit_code: 0,
        };
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
        assert!(out.text.contains("7.1997"));
    }
}
