//! Verification reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Outcome of a single report item.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

/// An informational comparison that does not decide the report status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Result of a verification command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub items: Vec<Item>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub conventions: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, serde_json::Value>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    /// An empty report whose clock starts now.
    pub fn new(check: &str) -> Self {
        Report {
            check: check.to_string(),
            parameters: BTreeMap::new(),
            items: Vec::new(),
            diagnostics: Vec::new(),
            conventions: BTreeMap::new(),
            data: BTreeMap::new(),
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn param<V: Into<serde_json::Value>>(&mut self, key: &str, v: V) -> &mut Self {
        self.parameters.insert(key.to_string(), v.into());
        self
    }

    pub fn convention(&mut self, key: &str, v: &str) -> &mut Self {
        self.conventions.insert(key.to_string(), v.to_string());
        self
    }

    pub fn datum<V: Into<serde_json::Value>>(&mut self, key: &str, v: V) -> &mut Self {
        self.data.insert(key.to_string(), v.into());
        self
    }

    pub fn pass(&mut self, name: &str) {
        self.items.push(Item {
            name: name.to_string(),
            status: Status::Pass,
            residual: None,
        });
    }

    /// Records a failure; an empty residual is replaced by a placeholder so
    /// that failing items always carry a message.
    pub fn fail(&mut self, name: &str, residual: &str) {
        let residual = if residual.is_empty() {
            "failed"
        } else {
            residual
        };
        self.items.push(Item {
            name: name.to_string(),
            status: Status::Fail,
            residual: Some(residual.to_string()),
        });
    }

    /// Records `ok` as pass or fail.
    pub fn check(&mut self, name: &str, ok: bool, residual: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            let r = residual();
            self.fail(name, &r);
        }
    }

    pub fn diagnostic(&mut self, name: &str, holds: bool, detail: Option<String>) {
        self.diagnostics.push(Diagnostic {
            name: name.to_string(),
            holds,
            detail,
        });
    }

    /// Appends the items of another report with a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut it in other.items {
            it.name = format!("{prefix}{}", it.name);
            self.items.push(it);
        }
        for mut d in other.diagnostics {
            d.name = format!("{prefix}{}", d.name);
            self.diagnostics.push(d);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&Item> {
        self.items
            .iter()
            .filter(|i| i.status == Status::Fail)
            .collect()
    }

    /// Stops the clock.
    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    /// Stops the clock and zeroes the elapsed time.
    pub fn finish_untimed(mut self) -> Self {
        self.started = None;
        self.elapsed_ms = 0;
        self
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
