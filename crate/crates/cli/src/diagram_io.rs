//! Diagram files: a small JSON document with fields `d`, `construction`,
//! `reduced`, and `bars`. Infinite endpoints are the strings "inf" and
//! "-inf"; bars are emitted in (dim, birth, death) order so identical
//! diagrams serialize byte-identically.

use std::str::FromStr;

use dualbar_core::complex::ExtendedValue;
use dualbar_core::persistence::{Bar, Construction, Diagram};
use serde_json::{json, Map, Value};

use crate::CliError;

fn endpoint_to_json(value: ExtendedValue) -> Value {
    match value {
        ExtendedValue::NegInf => Value::String("-inf".to_string()),
        ExtendedValue::PosInf => Value::String("inf".to_string()),
        ExtendedValue::Finite(v) => json!(v),
    }
}

pub fn serialize_diagram(diagram: &Diagram) -> String {
    let bars: Vec<Value> = diagram
        .sorted_bars()
        .into_iter()
        .map(|bar| {
            // field order fixed by hand; Map preserves insertion order
            let mut obj = Map::new();
            obj.insert("dim".into(), json!(bar.dim));
            obj.insert("birth".into(), endpoint_to_json(bar.birth));
            obj.insert("death".into(), endpoint_to_json(bar.death));
            Value::Object(obj)
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("d".into(), json!(diagram.ambient_dim));
    doc.insert(
        "construction".into(),
        Value::String(diagram.construction.as_str().to_string()),
    );
    doc.insert("reduced".into(), json!(diagram.reduced));
    doc.insert("bars".into(), Value::Array(bars));
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).unwrap();
    text.push('\n');
    text
}

pub fn read_diagram(path: &str) -> Result<Diagram, CliError> {
    parse_diagram(path, &crate::read_to_string(path)?)
}

fn endpoint_from_json(path: &str, value: &Value) -> Result<ExtendedValue, CliError> {
    match value {
        Value::String(s) if s == "inf" => Ok(ExtendedValue::PosInf),
        Value::String(s) if s == "-inf" => Ok(ExtendedValue::NegInf),
        Value::Number(n) => {
            let v = n
                .as_f64()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::parse(path, 1, format!("bad endpoint {n}")))?;
            Ok(ExtendedValue::finite(v))
        }
        other => Err(CliError::parse(path, 1, format!("bad endpoint {other}"))),
    }
}

pub fn parse_diagram(path: &str, text: &str) -> Result<Diagram, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        CliError::parse(path, e.line(), format!("column {}: {}", e.column(), e))
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::parse(path, 1, "diagram file is not a JSON object"))?;
    let field = |name: &str| -> Result<&Value, CliError> {
        obj.get(name)
            .ok_or_else(|| CliError::parse(path, 1, format!("missing field {name:?}")))
    };
    let d = field("d")?
        .as_u64()
        .ok_or_else(|| CliError::parse(path, 1, "`d` is not a nonnegative integer"))?
        as usize;
    let construction_str = field("construction")?
        .as_str()
        .ok_or_else(|| CliError::parse(path, 1, "`construction` is not a string"))?;
    let construction = Construction::from_str(construction_str)
        .map_err(|e| CliError::parse(path, 1, e))?;
    let reduced = field("reduced")?
        .as_bool()
        .ok_or_else(|| CliError::parse(path, 1, "`reduced` is not a boolean"))?;
    let raw_bars = field("bars")?
        .as_array()
        .ok_or_else(|| CliError::parse(path, 1, "`bars` is not an array"))?;
    let mut bars = Vec::with_capacity(raw_bars.len());
    for raw in raw_bars {
        let bar = raw
            .as_object()
            .ok_or_else(|| CliError::parse(path, 1, format!("bar {raw} is not an object")))?;
        let get = |name: &str| -> Result<&Value, CliError> {
            bar.get(name)
                .ok_or_else(|| CliError::parse(path, 1, format!("bar missing field {name:?}")))
        };
        let dim = get("dim")?
            .as_u64()
            .ok_or_else(|| CliError::parse(path, 1, "bar `dim` is not an integer"))?
            as usize;
        let birth = endpoint_from_json(path, get("birth")?)?;
        let death = endpoint_from_json(path, get("death")?)?;
        if birth > death {
            return Err(CliError::parse(
                path,
                1,
                format!("bar birth {birth} exceeds death {death}"),
            ));
        }
        bars.push(Bar::new(dim, birth, death));
    }
    let mut diagram = Diagram::new(d, construction, bars);
    diagram.reduced = reduced;
    Ok(diagram)
}
