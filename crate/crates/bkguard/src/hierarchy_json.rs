//! Generalization hierarchies as JSON.
//!
//! ```json
//! {
//!   "Zip": [{"prefix": 4}, "suppress"],
//!   "Age": [{"bin": 5}, {"bin": 10}, "suppress"],
//!   "Sex": [{"M": "person", "F": "person"}]
//! }
//! ```
//!
//! Each attribute lists levels `1..=L` in order; level 0 is the raw value. A
//! level is `"suppress"`, `{"prefix": n}`, `{"bin": width}`, or an object
//! mapping every raw value to its label. Attributes not listed are left out
//! of the quasi-identifier.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use bkguard_core::lattice::{AttributeHierarchy, Hierarchy, Level};
use bkguard_core::Table;
use serde_json::Value;

use crate::error::{Error, Result};

fn level(attribute: &str, index: usize, value: &Value) -> Result<Level> {
    let bad = |what: &str| Error::Invalid(format!("hierarchy `{attribute}` level {}: {what}", index + 1));
    match value {
        Value::String(s) if s == "suppress" => Ok(Level::Suppress),
        Value::Object(map) if map.len() == 1 && (map.contains_key("prefix") || map.contains_key("bin")) => {
            let (key, n) = map.iter().next().expect("one entry");
            match (key.as_str(), n.as_u64()) {
                ("prefix", Some(n)) => Ok(Level::Prefix(n as usize)),
                ("bin", Some(w)) if w > 0 => Ok(Level::Bin(w)),
                // a one-entry label map that happens to use the key
                (_, None) if n.is_string() => labels(map).map_err(|_| bad("labels must be strings")),
                _ => Err(bad("expected a positive integer")),
            }
        }
        Value::Object(map) => labels(map).map_err(|_| bad("labels must be strings")),
        _ => Err(bad("expected \"suppress\", {\"prefix\": n}, {\"bin\": w} or a value map")),
    }
}

fn labels(map: &serde_json::Map<String, Value>) -> std::result::Result<Level, ()> {
    map.iter()
        .map(|(k, v)| v.as_str().map(|s| (k.clone(), s.to_string())).ok_or(()))
        .collect::<std::result::Result<BTreeMap<_, _>, _>>()
        .map(Level::Map)
}

/// Parses and validates a hierarchy against the table's values.
pub fn parse_hierarchy(text: &str, table: &Table) -> Result<Hierarchy> {
    let root: Value = serde_json::from_str(text)?;
    let Value::Object(attributes) = root else {
        return Err(Error::Invalid("hierarchy must be a JSON object".into()));
    };
    let mut out = Vec::with_capacity(attributes.len());
    for (name, levels) in &attributes {
        if name == table.sensitive_name() {
            return Err(Error::Invalid(format!("`{name}` is the sensitive attribute")));
        }
        let Value::Array(levels) = levels else {
            return Err(Error::Invalid(format!("hierarchy `{name}` must be a list of levels")));
        };
        let levels = levels
            .iter()
            .enumerate()
            .map(|(i, v)| level(name, i, v))
            .collect::<Result<Vec<_>>>()?;
        out.push(AttributeHierarchy::new(name.clone(), levels));
    }
    Ok(Hierarchy::new(table, out)?)
}

pub fn load_hierarchy(path: &Path, table: &Table) -> Result<Hierarchy> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_hierarchy(&text, table)
}
