//! JSON Schemas of the input formats.

use serde_json::{json, Value};

fn group() -> Value {
    json!({
        "oneOf": [
            {"type": "object", "required": ["kind", "generators"], "properties": {
                "kind": {"const": "perm"},
                "generators": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}}},
            {"type": "object", "required": ["kind", "dim", "generators"], "properties": {
                "kind": {"const": "monomial"},
                "dim": {"type": "integer", "minimum": 1},
                "generators": {"type": "array", "items": {"type": "array", "items": {
                    "type": "array", "prefixItems": [{"type": "integer"}, {"type": "integer"}, {"$ref": "#/$defs/cyclotomic"}]}}}}},
            {"type": "object", "required": ["kind", "table"], "properties": {
                "kind": {"const": "table"},
                "table": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}}},
            {"type": "object", "required": ["kind", "name"], "properties": {
                "kind": {"const": "named"},
                "name": {"type": "string", "examples": ["S4", "Q8", "D8", "C2xC2", "Dic3", "B3"]}}}
        ]
    })
}

fn cocycle_values() -> Value {
    json!({"type": "array", "description": "[a, b, k] sets the value at (a, b) to exp(2πik/m)",
        "items": {"type": "array", "prefixItems": [{"type": "integer"}, {"type": "integer"}, {"type": "integer"}]}})
}

fn words() -> Value {
    json!({"type": "array", "description": "group elements as words in the generator indices",
        "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}})
}

fn lparameter() -> Value {
    json!({
        "type": "object",
        "required": ["group", "blocks"],
        "properties": {
            "group": {"type": "object", "required": ["type"], "properties": {
                "type": {"enum": ["GLinner", "Sp", "SOodd", "SOeven", "U"]},
                "n": {"type": "integer", "minimum": 0},
                "d": {"type": "integer", "minimum": 1, "description": "GLinner only"}}},
            "blocks": {"type": "array", "items": {"type": "object",
                "required": ["core", "dim", "duality", "a"],
                "properties": {
                    "core": {"type": "string"},
                    "dim": {"type": "integer", "minimum": 1},
                    "duality": {"enum": ["orth", "symp", "conj-orth", "conj-symp", "none"]},
                    "twist": {"type": "object", "properties": {
                        "s": {"type": "string", "examples": ["0", "1/2", "-3/2"]},
                        "zeta": {"$ref": "#/$defs/root_of_unity"}}},
                    "a": {"type": "integer", "minimum": 1},
                    "mult": {"type": "integer", "minimum": 1, "default": 1}}}},
            "enhancement": {"type": "object", "properties": {
                "signs": {"type": "object", "additionalProperties": {"enum": [1, -1]},
                    "description": "keys z:<label>:<a>"},
                "cyclic": {"type": "integer", "minimum": 0},
                "zeta_center": {"$ref": "#/$defs/root_of_unity"}}}
        }
    })
}

pub fn all() -> Value {
    json!({
        "$defs": {
            "cyclotomic": {"oneOf": [
                {"type": "string", "examples": ["1*z(4)^1", "-1/2", "z(3)^2"]},
                {"type": "object", "required": ["e", "coeffs"], "properties": {
                    "e": {"type": "integer", "minimum": 1},
                    "coeffs": {"type": "array", "items": {"type": "array", "prefixItems": [{"type": "integer"}, {"type": "string"}]}}}}
            ]},
            "root_of_unity": {"type": "array", "description": "[m, k] for exp(2πik/m)",
                "prefixItems": [{"type": "integer", "minimum": 1}, {"type": "integer"}]},
            "group": group(),
        },
        "group": {"$ref": "#/$defs/group"},
        "cocycle": {"type": "object", "required": ["group", "m"], "properties": {
            "group": {"$ref": "#/$defs/group"},
            "m": {"type": "integer", "minimum": 1},
            "values": cocycle_values()}},
        "clifford": {"type": "object", "required": ["group", "normal"], "properties": {
            "group": {"$ref": "#/$defs/group"},
            "normal": words()}},
        "section": {"type": "object", "required": ["group", "normal", "eps", "section"], "properties": {
            "group": {"$ref": "#/$defs/group"},
            "normal": words(),
            "eps": {"type": "integer", "minimum": 0, "description": "index in the character table of the normal subgroup"},
            "section": words()}},
        "action_datum": {"type": "object", "required": ["labels", "group", "generator_action"], "properties": {
            "labels": {"type": "array", "items": {"type": "string"}},
            "group": {"$ref": "#/$defs/group"},
            "generator_action": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "global_cocycle": {"type": "object", "properties": {"m": {"type": "integer"}, "values": cocycle_values()}},
            "cocycles": {"type": "array", "items": {"type": "object", "properties": {
                "point": {"type": "integer"}, "m": {"type": "integer"}, "values": cocycle_values()}}},
            "corrections": {"type": "array", "description": "[γ, x, w, m, k]",
                "items": {"type": "array", "items": {"type": "integer"}}}}},
        "springer_table": {"type": "object", "required": ["group_type", "n", "entries"], "properties": {
            "group_type": {"type": "string", "examples": ["Sp", "O", "SO_odd"]},
            "n": {"type": "integer", "minimum": 0},
            "entries": {"type": "array", "items": {"type": "object",
            "required": ["lambda", "eta_signs", "support"], "properties": {
                "lambda": {"type": "array", "items": {"type": "integer"}},
                "eta_signs": {"type": "object", "additionalProperties": {"enum": [1, -1]}},
                "support": {"type": "object", "properties": {
                    "levi": {"type": "string"},
                    "v": {"type": "array", "items": {"type": "integer"}},
                    "qeps": {"type": "object", "additionalProperties": {"enum": [1, -1]}},
                    "gl_twists": {"type": "array", "items": {"type": "string"}}}}}}}}},
        "lparameter": lparameter(),
        "lparameter_batch": {"type": "array", "items": lparameter()},
    })
}
