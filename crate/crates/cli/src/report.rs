//! The full report of a structure file.

use std::time::Instant;

use rinehart::NakayamaResult;
use serde_json::{json, Value};

use crate::format::StructureFile;

#[derive(Clone, Debug)]
pub struct Report {
    pub source: String,
    pub kind: &'static str,
    pub variables: Vec<String>,
    pub characteristic: u64,
    pub order: &'static str,
    pub entries: Vec<(String, String)>,
    pub witness: Option<String>,
    pub nakayama: Option<NakayamaResult>,
    /// Set when the structure is valid but the Nakayama computation failed.
    pub error: Option<String>,
    pub millis: f64,
}

impl Report {
    pub fn build(source: &str, file: &StructureFile) -> Self {
        let start = Instant::now();
        let witness = crate::witness(&file.structure);
        let (nakayama, error) = if witness.is_none() {
            match crate::nakayama(&file.structure) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            }
        } else {
            (None, None)
        };
        Report {
            source: source.to_string(),
            kind: file.structure.kind(),
            variables: file.ring.variables().to_vec(),
            characteristic: file.ring.field().characteristic(),
            order: file.ring.order().name(),
            entries: file.entries.clone(),
            witness,
            nakayama,
            error,
            millis: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn to_json(&self) -> Value {
        let entries: serde_json::Map<String, Value> = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let mut doc = json!({
            "input": {
                "source": self.source,
                "ring": {
                    "variables": self.variables,
                    "characteristic": self.characteristic,
                    "order": self.order,
                },
                "kind": self.kind,
                "entries": entries,
            },
            "valid": self.witness.is_none(),
            "witness": self.witness,
            "nakayama": Value::Null,
            "calabi_yau": Value::Null,
            "timing": { "millis": self.millis },
        });
        if let Some(n) = &self.nakayama {
            doc["nakayama"] = json!({
                "kind": format!("{:?}", n.kind),
                "generators": n.generators,
                "shifts": n.shifts.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "checks": n.checks.iter().map(|c| json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
                "verified": n.verified,
            });
            doc["calabi_yau"] = json!({ "value": n.calabi_yau, "reason": n.reason });
        }
        if let Some(e) = &self.error {
            doc["error"] = Value::String(e.clone());
        }
        doc
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("source: {}\nkind: {}\n", self.source, self.kind);
        out += &format!(
            "ring: {}[{}] ({})\n",
            match self.characteristic {
                0 => "QQ".to_string(),
                p => format!("GF({p})"),
            },
            self.variables.join(", "),
            self.order
        );
        for (k, v) in &self.entries {
            out += &format!("  {k} = {v}\n");
        }
        match &self.witness {
            None => out += "valid: true\n",
            Some(w) => out += &format!("valid: false\nwitness: {w}\n"),
        }
        if let Some(n) = &self.nakayama {
            out += &format!("{n}\n");
        }
        if let Some(e) = &self.error {
            out += &format!("error: {e}\n");
        }
        out += &format!("time: {:.3} ms", self.millis);
        out
    }
}
