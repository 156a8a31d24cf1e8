//! JSON tower-datum files.
//!
//! ```json
//! {
//!   "prime": 2,
//!   "vertices": ["v1", "v2"],
//!   "edges": [{"from": "v1", "to": "v2", "voltage": 1}],
//!   "ramification": {"v1": "unramified", "v2": 1}
//! }
//! ```
//!
//! Each edge entry declares one orientation; the inverse dart carries the
//! negated voltage.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::tower::{Ramification, TowerDatum};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    prime: Number,
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
    ramification: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: String,
    to: String,
    voltage: Number,
}

/// Line (1-based) of the first occurrence of `needle` at or after byte `from`.
fn line_of(text: &str, needle: &str, from: usize) -> usize {
    let start = from.min(text.len());
    let pos = text[start..].find(needle).map_or(start, |i| start + i);
    text[..pos].matches('\n').count() + 1
}

fn key_offset(text: &str, key: &str) -> usize {
    text.find(&format!("\"{key}\"")).unwrap_or(0)
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn integer(n: &Number) -> Option<BigInt> {
    n.as_str().parse().ok()
}

/// Parses and validates a datum file.
pub fn parse_datum(text: &str) -> Result<TowerDatum> {
    let raw: RawDatum =
        serde_json::from_str(text).map_err(|e| parse_error(e.line().max(1), e.to_string()))?;

    let prime_line = line_of(text, "\"prime\"", 0);
    let p = integer(&raw.prime)
        .and_then(|p| u64::try_from(p).ok())
        .ok_or_else(|| parse_error(prime_line, format!("prime must be a positive integer, got {}", raw.prime)))?;
    if !crate::algebra::rational::is_prime(p) {
        return Err(parse_error(prime_line, format!("{p} is not prime")));
    }

    let vertices_at = key_offset(text, "vertices");
    let mut seen = HashSet::new();
    for name in &raw.vertices {
        if !seen.insert(name.as_str()) {
            let quoted = format!("\"{name}\"");
            let first = text[vertices_at..].find(&quoted).map_or(vertices_at, |i| vertices_at + i);
            let line = line_of(text, &quoted, first + 1);
            return Err(parse_error(line, format!("duplicate vertex \"{name}\"")));
        }
    }
    let index = |name: &str| raw.vertices.iter().position(|v| v == name);

    let edges_at = key_offset(text, "edges");
    let mut edges = Vec::with_capacity(raw.edges.len());
    let mut cursor = edges_at;
    for (i, e) in raw.edges.iter().enumerate() {
        let entry = text[cursor..].find("\"from\"").map_or(cursor, |k| cursor + k);
        let line = line_of(text, "\"from\"", cursor);
        cursor = entry + 1;
        let a = index(&e.from)
            .ok_or_else(|| parse_error(line, format!("edge {i}: unknown vertex \"{}\"", e.from)))?;
        let b = index(&e.to)
            .ok_or_else(|| parse_error(line, format!("edge {i}: unknown vertex \"{}\"", e.to)))?;
        let v = integer(&e.voltage)
            .ok_or_else(|| parse_error(line, format!("edge {i}: voltage must be an integer, got {}", e.voltage)))?;
        edges.push((a, b, v));
    }

    let ram_at = key_offset(text, "ramification");
    let ram_line = line_of(text, "\"ramification\"", 0);
    for key in raw.ramification.keys() {
        if index(key).is_none() {
            let line = line_of(text, &format!("\"{key}\""), ram_at);
            return Err(parse_error(line, format!("ramification for unknown vertex \"{key}\"")));
        }
    }
    let ram = raw
        .vertices
        .iter()
        .map(|name| {
            let line = line_of(text, &format!("\"{name}\""), ram_at);
            match raw.ramification.get(name) {
                None => Err(parse_error(ram_line, format!("no ramification entry for \"{name}\""))),
                Some(Value::String(s)) if s == "unramified" => Ok(Ramification::Unramified),
                Some(Value::Number(k)) => integer(k)
                    .and_then(|k| u32::try_from(k).ok())
                    .map(Ramification::Ramified)
                    .ok_or_else(|| parse_error(line, format!("\"{name}\": k must be an integer ≥ 0"))),
                Some(other) => Err(parse_error(
                    line,
                    format!("\"{name}\": expected an integer or \"unramified\", got {other}"),
                )),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    TowerDatum::from_edges(raw.vertices, p, &edges, ram)
}

pub fn read_datum(path: &std::path::Path) -> Result<TowerDatum> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidDatum(format!("cannot read {}: {e}", path.display())))?;
    parse_datum(&text)
}

/// The JSON document for a datum, edges in dart order.
pub fn datum_to_json(d: &TowerDatum) -> Value {
    let names = d.base().vertex_names();
    let edges: Vec<Value> = d
        .base()
        .darts()
        .iter()
        .enumerate()
        .filter(|(s, dart)| *s < dart.inverse)
        .map(|(s, dart)| {
            let voltage: Number = d.voltage(s).to_string().parse().expect("integer literal");
            json!({"from": names[dart.origin], "to": names[dart.terminus], "voltage": voltage})
        })
        .collect();
    let mut ram = Map::new();
    for (name, r) in names.iter().zip(d.ramification()) {
        let value = match r {
            Ramification::Unramified => Value::from("unramified"),
            Ramification::Ramified(k) => Value::from(*k),
        };
        ram.insert(name.clone(), value);
    }
    json!({
        "prime": d.prime(),
        "vertices": names,
        "edges": edges,
        "ramification": ram,
    })
}

pub fn serialize_datum(d: &TowerDatum) -> String {
    serde_json::to_string_pretty(&datum_to_json(d)).expect("JSON values serialize")
}
