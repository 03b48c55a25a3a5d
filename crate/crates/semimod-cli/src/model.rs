//! The JSON model format.
//!
//! A model file is a single JSON document:
//!
//! ```json
//! {
//!   "format": 1,
//!   "semirings":   { "B":   {"size": 2, "one": 1, "add": [0,1,1,1], "mul": [0,0,0,1]} },
//!   "semimodules": { "B31": {"scalars": "naturals", "size": 3, "add": [0,1,2,1,2,1,2,1,2]} },
//!   "morphisms":   { "pi":  {"dom": "B31", "cod": "Z2", "map": [0,1,0]} },
//!   "sequences":   { "ses": ["iota", "pi"] }
//! }
//! ```
//!
//! Tables are flat row-major integer arrays. `zero` defaults to index 0 and
//! is normalized there on load. A semimodule's `scalars` is `"naturals"`, a
//! semiring defined in the same file, or a builtin semiring name. Every
//! section is optional. Errors are aggregated with JSON-pointer locations
//! rather than reported one at a time.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use semimod::builtin;
use semimod::exact::SequenceSpec;
use semimod::semimodule::{validate_semimodule, FiniteSemimodule, ScalarDomain};
use semimod::semiring::{validate_semiring, FiniteSemiring};
use semimod::LinearMap;

pub const FORMAT_VERSION: u64 = 1;

/// One problem in a model file, located by JSON pointer.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LocatedError {
    pub pointer: String,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model is not valid JSON: {0}")]
    Json(String),
    #[error("{} model error(s), first at {}: {}", .0.len(), .0[0].pointer, .0[0].message)]
    Invalid(Vec<LocatedError>),
}

/// A fully resolved and validated instance graph.
#[derive(Debug, Default)]
pub struct Model {
    pub semirings: BTreeMap<String, Arc<FiniteSemiring>>,
    pub semimodules: BTreeMap<String, Arc<FiniteSemimodule>>,
    pub morphisms: BTreeMap<String, LinearMap>,
    pub sequences: BTreeMap<String, Vec<String>>,
}

impl Model {
    /// A module by name: file entries first, then the builtin catalog.
    pub fn module(&self, name: &str) -> Option<Arc<FiniteSemimodule>> {
        if let Some(m) = self.semimodules.get(name) {
            return Some(Arc::clone(m));
        }
        builtin::builtin_module(name).ok()
    }

    pub fn morphism(&self, name: &str) -> Option<&LinearMap> {
        self.morphisms.get(name)
    }

    /// A named sequence resolved to its maps.
    pub fn sequence(&self, name: &str) -> Option<SequenceSpec> {
        let names = self.sequences.get(name)?;
        let maps: Option<Vec<LinearMap>> =
            names.iter().map(|n| self.morphisms.get(n).cloned()).collect();
        SequenceSpec::new(maps?).ok()
    }
}

struct Collector {
    errors: Vec<LocatedError>,
}

impl Collector {
    fn push(&mut self, pointer: String, message: impl Into<String>) {
        self.errors.push(LocatedError {
            pointer,
            message: message.into(),
        });
    }
}

fn get_usize(obj: &serde_json::Map<String, Value>, key: &str) -> Option<usize> {
    obj.get(key)?.as_u64().map(|v| v as usize)
}

fn get_table(
    obj: &serde_json::Map<String, Value>,
    key: &str,
    pointer: &str,
    errors: &mut Collector,
) -> Option<Vec<usize>> {
    let raw = match obj.get(key) {
        Some(Value::Array(items)) => items,
        Some(_) => {
            errors.push(format!("{pointer}/{key}"), "expected an integer array");
            return None;
        }
        None => {
            errors.push(pointer.to_string(), format!("missing key {key:?}"));
            return None;
        }
    };
    let mut out = Vec::with_capacity(raw.len());
    for (i, item) in raw.iter().enumerate() {
        match item.as_u64() {
            Some(v) => out.push(v as usize),
            None => {
                errors.push(
                    format!("{pointer}/{key}/{i}"),
                    "expected a nonnegative integer",
                );
                return None;
            }
        }
    }
    Some(out)
}

/// Parses and validates a model document. All structural and axiom errors
/// are collected before failing.
pub fn parse_model(text: &str) -> Result<Model, ModelError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    let root = match doc.as_object() {
        Some(o) => o,
        None => {
            return Err(ModelError::Invalid(vec![LocatedError {
                pointer: String::new(),
                message: String::from("top level must be an object"),
            }]))
        }
    };
    let mut errors = Collector { errors: Vec::new() };
    if let Some(v) = root.get("format") {
        if v.as_u64() != Some(FORMAT_VERSION) {
            errors.push(
                String::from("/format"),
                format!("unsupported format, expected {FORMAT_VERSION}"),
            );
        }
    }

    let mut model = Model::default();

    if let Some(section) = root.get("semirings").and_then(Value::as_object) {
        for (name, entry) in section {
            let pointer = format!("/semirings/{name}");
            let obj = match entry.as_object() {
                Some(o) => o,
                None => {
                    errors.push(pointer, "expected an object");
                    continue;
                }
            };
            let size = match get_usize(obj, "size") {
                Some(s) => s,
                None => {
                    errors.push(pointer, "missing or invalid size");
                    continue;
                }
            };
            let one = match get_usize(obj, "one") {
                Some(o) => o,
                None => {
                    errors.push(pointer, "missing or invalid one");
                    continue;
                }
            };
            let zero = get_usize(obj, "zero").unwrap_or(0);
            let (add, mul) = match (
                get_table(obj, "add", &pointer, &mut errors),
                get_table(obj, "mul", &pointer, &mut errors),
            ) {
                (Some(a), Some(m)) => (a, m),
                _ => continue,
            };
            match validate_semiring(name, size, add, mul, zero, one) {
                Ok(s) => {
                    model.semirings.insert(name.clone(), s);
                }
                Err(e) => errors.push(pointer, e.to_string()),
            }
        }
    }

    if let Some(section) = root.get("semimodules").and_then(Value::as_object) {
        for (name, entry) in section {
            let pointer = format!("/semimodules/{name}");
            let obj = match entry.as_object() {
                Some(o) => o,
                None => {
                    errors.push(pointer, "expected an object");
                    continue;
                }
            };
            let size = match get_usize(obj, "size") {
                Some(s) => s,
                None => {
                    errors.push(pointer, "missing or invalid size");
                    continue;
                }
            };
            let zero = get_usize(obj, "zero").unwrap_or(0);
            let scalars = match obj.get("scalars").and_then(Value::as_str) {
                None => {
                    errors.push(format!("{pointer}/scalars"), "missing scalar domain");
                    continue;
                }
                Some("naturals") => ScalarDomain::Naturals,
                Some(sname) => match model
                    .semirings
                    .get(sname)
                    .cloned()
                    .or_else(|| builtin::builtin_semiring(sname).ok())
                {
                    Some(s) => ScalarDomain::Semiring(s),
                    None => {
                        errors.push(
                            format!("{pointer}/scalars"),
                            format!("unresolved semiring {sname:?}"),
                        );
                        continue;
                    }
                },
            };
            let add = match get_table(obj, "add", &pointer, &mut errors) {
                Some(a) => a,
                None => continue,
            };
            let action = if obj.contains_key("action") {
                match get_table(obj, "action", &pointer, &mut errors) {
                    Some(a) => Some(a),
                    None => continue,
                }
            } else {
                None
            };
            match validate_semimodule(name, scalars, size, add, zero, action) {
                Ok(m) => {
                    model.semimodules.insert(name.clone(), m);
                }
                Err(e) => errors.push(pointer, e.to_string()),
            }
        }
    }

    if let Some(section) = root.get("morphisms").and_then(Value::as_object) {
        for (name, entry) in section {
            let pointer = format!("/morphisms/{name}");
            let obj = match entry.as_object() {
                Some(o) => o,
                None => {
                    errors.push(pointer, "expected an object");
                    continue;
                }
            };
            let dom = obj.get("dom").and_then(Value::as_str);
            let cod = obj.get("cod").and_then(Value::as_str);
            let (dom, cod) = match (dom, cod) {
                (Some(d), Some(c)) => (d, c),
                _ => {
                    errors.push(pointer, "missing dom or cod");
                    continue;
                }
            };
            let (dom_m, cod_m) = match (model.module(dom), model.module(cod)) {
                (Some(d), Some(c)) => (d, c),
                (d, _) => {
                    let which = if d.is_none() { dom } else { cod };
                    errors.push(pointer, format!("dangling reference {which:?}"));
                    continue;
                }
            };
            let map = match get_table(obj, "map", &pointer, &mut errors) {
                Some(m) => m,
                None => continue,
            };
            match LinearMap::new(&dom_m, &cod_m, map) {
                Ok(f) => {
                    model.morphisms.insert(name.clone(), f);
                }
                Err(e) => errors.push(pointer, e.to_string()),
            }
        }
    }

    if let Some(section) = root.get("sequences").and_then(Value::as_object) {
        for (name, entry) in section {
            let pointer = format!("/sequences/{name}");
            let names = match entry.as_array() {
                Some(items) => items,
                None => {
                    errors.push(pointer, "expected an array of morphism names");
                    continue;
                }
            };
            let mut resolved = Vec::new();
            let mut ok = true;
            for (i, item) in names.iter().enumerate() {
                match item.as_str() {
                    Some(n) if model.morphisms.contains_key(n) => {
                        resolved.push(String::from(n))
                    }
                    Some(n) => {
                        errors.push(
                            format!("{pointer}/{i}"),
                            format!("dangling morphism reference {n:?}"),
                        );
                        ok = false;
                    }
                    None => {
                        errors.push(format!("{pointer}/{i}"), "expected a string");
                        ok = false;
                    }
                }
            }
            if ok {
                // Endpoint mismatches surface here rather than at use time.
                let maps: Vec<LinearMap> = resolved
                    .iter()
                    .map(|n| model.morphisms[n].clone())
                    .collect();
                match SequenceSpec::new(maps) {
                    Ok(_) => {
                        model.sequences.insert(name.clone(), resolved);
                    }
                    Err(e) => errors.push(pointer, e.to_string()),
                }
            }
        }
    }

    if errors.errors.is_empty() {
        Ok(model)
    } else {
        Err(ModelError::Invalid(errors.errors))
    }
}

/// Canonical JSON: sorted keys (the default map is a `BTreeMap`), compact
/// separators, no insignificant whitespace.
pub fn canonical_json(value: &Value) -> String {
    serde_json::to_string(value).expect("JSON value serializes")
}

/// Canonical re-serialization of an arbitrary JSON document.
pub fn canonicalize(text: &str) -> Result<String, ModelError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    Ok(canonical_json(&doc))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const B31_FIXTURE: &str = include_str!("../fixtures/b31.json");

    #[test]
    fn the_bundled_fixture_parses_and_resolves() {
        let model = parse_model(B31_FIXTURE).unwrap();
        assert_eq!(model.semimodules.len(), 3);
        assert_eq!(model.morphisms.len(), 3);
        let seq = model.sequence("ses").unwrap();
        assert_eq!(seq.maps().len(), 2);
    }

    #[test]
    fn the_bundled_fixture_is_canonical() {
        assert_eq!(canonicalize(B31_FIXTURE).unwrap(), B31_FIXTURE);
    }

    #[test]
    fn out_of_range_map_entries_are_located() {
        let text = r#"{
            "format": 1,
            "semimodules": {"Z2": {"scalars": "naturals", "size": 2, "add": [0,1,1,0]}},
            "morphisms": {"bad": {"dom": "Z2", "cod": "Z2", "map": [0, 9]}}
        }"#;
        match parse_model(text).unwrap_err() {
            ModelError::Invalid(errors) => {
                assert_eq!(errors[0].pointer, "/morphisms/bad");
                assert!(errors[0].message.contains("out of range"));
            }
            other => panic!("expected located errors, got {other:?}"),
        }
    }

    #[test]
    fn scalar_mismatch_is_reported() {
        let text = r#"{
            "format": 1,
            "semirings": {"B": {"size": 2, "one": 1, "add": [0,1,1,1], "mul": [0,0,0,1]}},
            "semimodules": {
                "N": {"scalars": "naturals", "size": 2, "add": [0,1,1,1]},
                "F": {"scalars": "B", "size": 2, "add": [0,1,1,1], "action": [0,0,0,1]}
            },
            "morphisms": {"bad": {"dom": "N", "cod": "F", "map": [0, 1]}}
        }"#;
        match parse_model(text).unwrap_err() {
            ModelError::Invalid(errors) => {
                assert_eq!(errors[0].pointer, "/morphisms/bad");
                assert!(errors[0].message.contains("scalar domains differ"));
            }
            other => panic!("expected located errors, got {other:?}"),
        }
    }

    #[test]
    fn axiom_violations_are_aggregated() {
        let text = r#"{
            "format": 1,
            "semimodules": {
                "bad1": {"scalars": "naturals", "size": 2, "add": [0,1,1,1], "zero": 1},
                "bad2": {"scalars": "naturals", "size": 2, "add": [1,0,0,1]}
            }
        }"#;
        match parse_model(text).unwrap_err() {
            ModelError::Invalid(errors) => assert_eq!(errors.len(), 2),
            other => panic!("expected located errors, got {other:?}"),
        }
    }
}
