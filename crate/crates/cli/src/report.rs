use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Output of one command: the echoed invocation, named results in order,
/// and warnings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub results: Vec<Field>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub name: String,
    pub value: Value,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            results: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.results.push(Field {
            name: name.into(),
            value,
        });
    }

    /// Decimal rendering of an exact value, labelled as such.
    pub fn push_approx(&mut self, name: &str, value: f64) {
        self.push(format!("{name} (approx)"), format!("≈ {value:.12}"));
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.results
            .iter()
            .find(|f| f.name == name)
            .map(|f| &f.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "$ ordbundle {}", self.command.join(" "))?;
        for field in &self.results {
            match &field.value {
                Value::String(s) => writeln!(f, "{}: {s}", field.name)?,
                Value::Array(items) if items.iter().all(Value::is_string) => {
                    writeln!(f, "{}:", field.name)?;
                    for item in items {
                        writeln!(f, "  {}", item.as_str().expect("checked"))?;
                    }
                }
                other => writeln!(f, "{}: {other}", field.name)?,
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
