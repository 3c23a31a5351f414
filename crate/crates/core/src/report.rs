//! Machine-readable reports shared by every command.

use serde::Serialize;
use serde_json::Value;

/// One verified relation: `pass` is decided by the producer, `expected` and
/// `actual` record the two sides for inspection.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    /// Equality check; passes when both sides serialize identically.
    pub fn equal<E: Serialize, A: Serialize>(
        name: impl Into<String>,
        expected: E,
        actual: A,
    ) -> Self {
        let expected = to_value(expected);
        let actual = to_value(actual);
        let pass = expected == actual;
        Check {
            name: name.into(),
            expected,
            actual,
            pass,
        }
    }

    pub fn with_outcome<E: Serialize, A: Serialize>(
        name: impl Into<String>,
        expected: E,
        actual: A,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            expected: to_value(expected),
            actual: to_value(actual),
            pass,
        }
    }
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value, results: Value) -> Self {
        Report {
            command: command.into(),
            inputs,
            results,
            checks: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Pretty JSON with a trailing newline. Object keys inside `inputs` and
    /// `results` come out sorted, so equal reports print identically.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
