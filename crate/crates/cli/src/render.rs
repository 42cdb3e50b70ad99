//! Conversion of results into JSON values and the two output formats.
//!
//! Both formats render the same value tree, so they carry identical numbers.
//! Integers outside the `i64` range are emitted as decimal strings; nothing is
//! ever a float. Object keys are sorted, which makes the JSON canonical.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use immclass_core::classification::Cardinality;
use immclass_core::cyclic::CyclicValue;
use immclass_core::homology::{FgAbelianGroup, GroupClass, GroupShape};

pub fn int(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn class(c: &GroupClass) -> Value {
    ints(c.coords())
}

pub fn cyclic(v: &CyclicValue) -> Value {
    json!({ "modulus": int(v.modulus()), "value": int(v.value()) })
}

pub fn cardinality(c: &Cardinality) -> Value {
    match c {
        Cardinality::Finite(n) => int(n),
        Cardinality::Infinite => Value::String("infinite".into()),
    }
}

pub fn shape(s: &GroupShape) -> Value {
    json!({
        "free_rank": s.free_rank,
        "torsion": ints(&s.torsion),
        "display": s.to_string(),
    })
}

/// A group with the normal-form basis its coordinates refer to: one modulus
/// (0 for ℤ) and one ambient (co)chain representative per generator.
pub fn group_with_basis(g: &FgAbelianGroup) -> Value {
    let gens = g.generators();
    let generators: Vec<Value> = (0..gens.cols()).map(|j| ints(&gens.column(j))).collect();
    json!({
        "shape": shape(g.shape()),
        "moduli": ints(&g.moduli()),
        "generators": generators,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn emit(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("values are serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(value, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(|x| scalar(x).unwrap_or_default()).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Array(items) if items.iter().all(|x| x.is_array() && scalar(x).is_some()) => {
            let parts: Vec<String> = items.iter().map(|x| scalar(x).unwrap_or_default()).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn text_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for (k, v) in map {
        match scalar(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                text(v, indent + 1, out);
            }
        }
    }
}

fn text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => text_object(map, indent, out),
        Value::Array(items) => {
            for item in items {
                match (item, scalar(item)) {
                    (_, Some(s)) => out.push_str(&format!("{pad}- {s}\n")),
                    (Value::Object(map), None) => {
                        out.push_str(&format!("{pad}-\n"));
                        text_object(map, indent + 1, out);
                    }
                    (other, None) => {
                        out.push_str(&format!("{pad}-\n"));
                        text(other, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
