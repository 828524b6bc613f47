//! Validator for the subset of JSON Schema used by `schema/report.schema.json`:
//! `type`, `enum`, `required`, `properties`, `additionalProperties`, `items`,
//! `pattern`, `oneOf` and local `$ref`.

use regex::Regex;
use serde_json::Value;

pub struct Validator {
    root: Value,
}

impl Validator {
    pub fn new(root: Value) -> Self {
        Validator { root }
    }

    pub fn errors(&self, instance: &Value) -> Vec<String> {
        let mut out = Vec::new();
        self.check(&self.root, instance, "$", &mut out);
        out
    }

    fn resolve<'a>(&'a self, reference: &str) -> &'a Value {
        let pointer = reference.strip_prefix('#').expect("local reference");
        self.root.pointer(pointer).unwrap_or_else(|| panic!("unresolved {reference}"))
    }

    fn check(&self, schema: &Value, v: &Value, at: &str, out: &mut Vec<String>) {
        if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
            self.check(self.resolve(r), v, at, out);
        }
        if let Some(t) = schema.get("type") {
            let allowed: Vec<&str> = match t {
                Value::String(s) => vec![s.as_str()],
                Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
                _ => vec![],
            };
            if !allowed.iter().any(|ty| type_matches(ty, v)) {
                out.push(format!("{at}: expected type {allowed:?}, got {v}"));
            }
        }
        if let Some(options) = schema.get("enum").and_then(Value::as_array) {
            if !options.contains(v) {
                out.push(format!("{at}: {v} not in {options:?}"));
            }
        }
        if let (Some(p), Some(s)) = (schema.get("pattern").and_then(Value::as_str), v.as_str()) {
            if !Regex::new(p).unwrap().is_match(s) {
                out.push(format!("{at}: {s:?} does not match {p}"));
            }
        }
        if let Some(branches) = schema.get("oneOf").and_then(Value::as_array) {
            let ok = branches
                .iter()
                .filter(|b| {
                    let mut e = Vec::new();
                    self.check(b, v, at, &mut e);
                    e.is_empty()
                })
                .count();
            if ok != 1 {
                out.push(format!("{at}: {ok} oneOf branches match"));
            }
        }
        if let Some(obj) = v.as_object() {
            if let Some(req) = schema.get("required").and_then(Value::as_array) {
                for key in req.iter().filter_map(Value::as_str) {
                    if !obj.contains_key(key) {
                        out.push(format!("{at}: missing {key}"));
                    }
                }
            }
            let props = schema.get("properties").and_then(Value::as_object);
            for (key, value) in obj {
                let path = format!("{at}.{key}");
                match (props.and_then(|p| p.get(key)), schema.get("additionalProperties")) {
                    (Some(sub), _) => self.check(sub, value, &path, out),
                    (None, Some(Value::Bool(false))) => out.push(format!("{path}: not allowed")),
                    (None, Some(extra @ Value::Object(_))) => self.check(extra, value, &path, out),
                    _ => {}
                }
            }
        }
        if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
            for (i, item) in arr.iter().enumerate() {
                self.check(items, item, &format!("{at}[{i}]"), out);
            }
        }
    }
}

fn type_matches(ty: &str, v: &Value) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        _ => false,
    }
}
