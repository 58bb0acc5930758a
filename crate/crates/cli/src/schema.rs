//! A small structural JSON-schema checker, enough to pin report shapes in
//! tests. Supported keywords: `type`, `properties`, `required`, `items`,
//! `enum`, and `additionalProperties` (boolean or schema). Anything else in
//! a schema is ignored, so schemas stay forward-compatible documentation.

use serde_json::Value;

/// Validate `value` against `schema`; returns one message per violation,
/// empty when the value conforms.
pub fn validate(schema: &Value, value: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, value, "$", &mut errors);
    errors
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn type_matches(expected: &str, v: &Value) -> bool {
    match expected {
        "integer" => v.as_i64().is_some() || v.as_u64().is_some(),
        "number" => v.is_number(),
        other => other == type_name(v),
    }
}

fn check(schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    let obj = match schema.as_object() {
        Some(o) => o,
        None => return,
    };

    if let Some(t) = obj.get("type") {
        let allowed: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(|v| v.as_str()).collect(),
            _ => vec![],
        };
        if !allowed.is_empty() && !allowed.iter().any(|t| type_matches(t, value)) {
            errors.push(format!(
                "{path}: expected type {}, got {}",
                allowed.join("|"),
                type_name(value)
            ));
            return;
        }
    }

    if let Some(options) = obj.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            errors.push(format!("{path}: value {value} is not one of the allowed choices"));
        }
    }

    if let Some(map) = value.as_object() {
        if let Some(required) = obj.get("required").and_then(Value::as_array) {
            for name in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(name) {
                    errors.push(format!("{path}: missing required property {name:?}"));
                }
            }
        }
        let props = obj.get("properties").and_then(Value::as_object);
        if let Some(props) = props {
            for (name, sub) in props {
                if let Some(v) = map.get(name) {
                    check(sub, v, &format!("{path}.{name}"), errors);
                }
            }
        }
        match obj.get("additionalProperties") {
            Some(Value::Bool(false)) => {
                for name in map.keys() {
                    if props.map_or(true, |p| !p.contains_key(name)) {
                        errors.push(format!("{path}: unexpected property {name:?}"));
                    }
                }
            }
            Some(sub @ Value::Object(_)) => {
                for (name, v) in map {
                    if props.map_or(true, |p| !p.contains_key(name)) {
                        check(sub, v, &format!("{path}.{name}"), errors);
                    }
                }
            }
            _ => {}
        }
    }

    if let (Some(items), Some(arr)) = (obj.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            check(items, v, &format!("{path}[{i}]"), errors);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn accepts_conforming_objects() {
        let schema = json!({
            "type": "object",
            "required": ["name", "rows"],
            "properties": {
                "name": {"type": "string"},
                "rows": {"type": "array", "items": {"type": "integer"}},
                "verdict": {"enum": ["holds", "fails"]}
            },
            "additionalProperties": false
        });
        let good = json!({"name": "a", "rows": [1, 2], "verdict": "holds"});
        assert!(validate(&schema, &good).is_empty());
    }

    #[test]
    fn reports_each_violation_with_a_path() {
        let schema = json!({
            "type": "object",
            "required": ["name"],
            "properties": {
                "name": {"type": "string"},
                "rows": {"type": "array", "items": {"type": "integer"}}
            },
            "additionalProperties": false
        });
        let bad = json!({"rows": [1, "x"], "extra": true});
        let errs = validate(&schema, &bad);
        assert_eq!(errs.len(), 3, "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("missing required property \"name\"")));
        assert!(errs.iter().any(|e| e.contains("$.rows[1]")));
        assert!(errs.iter().any(|e| e.contains("unexpected property \"extra\"")));
    }

    #[test]
    fn integer_accepts_json_integers_only() {
        let schema = json!({"type": "integer"});
        assert!(validate(&schema, &json!(3)).is_empty());
        assert!(!validate(&schema, &json!(3.5)).is_empty());
        assert!(!validate(&schema, &json!("3")).is_empty());
    }
}
