//! JSON persistence.
//!
//! ```json
//! { "attributes": [ {"name": "Q1", "frame": ["VeryHigh", "High", ...]} ],
//!   "rows": [ {"label": "expert1",
//!              "cells": [ [ {"set": ["High"], "mass": 0.8}, ... ] ]} ] }
//! ```
//!
//! Sets list element names in frame order. Masses are written with the
//! shortest representation that parses back to the same `f64`.

use std::path::Path;

use serde_json::{json, Map, Value};

use super::{AttributeSchema, EvidentialDatabase};
use crate::error::{Error, Result};
use crate::evidence::{FrameOfDiscernment, MassFunction, SubsetMask};

pub fn cell_to_json(m: &MassFunction) -> Value {
    let frame = m.frame();
    Value::Array(
        m.focal()
            .iter()
            .map(|&(mask, mass)| json!({ "set": frame.names(mask), "mass": mass }))
            .collect(),
    )
}

fn db_to_json(db: &EvidentialDatabase) -> Value {
    let attributes: Vec<Value> = db
        .attributes()
        .iter()
        .map(|a| json!({ "name": a.name, "frame": a.frame.elements() }))
        .collect();
    let rows: Vec<Value> = db
        .rows()
        .iter()
        .zip(db.row_labels())
        .map(|(row, label)| {
            let mut obj = Map::new();
            if let Some(label) = label {
                obj.insert("label".into(), Value::String(label.clone()));
            }
            obj.insert(
                "cells".into(),
                Value::Array(row.iter().map(cell_to_json).collect()),
            );
            Value::Object(obj)
        })
        .collect();
    let mut obj = Map::new();
    if let Some(source) = db.source() {
        obj.insert("source".into(), Value::String(source.to_string()));
    }
    obj.insert("attributes".into(), Value::Array(attributes));
    obj.insert("rows".into(), Value::Array(rows));
    Value::Object(obj)
}

pub fn to_json_string(db: &EvidentialDatabase) -> String {
    serde_json::to_string_pretty(&db_to_json(db)).expect("JSON values always serialize")
}

pub fn save_json(db: &EvidentialDatabase, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = to_json_string(db);
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn load_json(path: impl AsRef<Path>) -> Result<EvidentialDatabase> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json_str(&text)
}

/// Parses and validates a database document.
pub fn from_json_str(text: &str) -> Result<EvidentialDatabase> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::schema("$", format!("invalid JSON: {e}")))?;
    let root = as_object(&root, "$")?;

    let attrs_path = "$.attributes";
    let attrs = as_array(field(root, "attributes", "$")?, attrs_path)?;
    let mut attributes = Vec::with_capacity(attrs.len());
    for (j, a) in attrs.iter().enumerate() {
        let path = format!("{attrs_path}[{j}]");
        let obj = as_object(a, &path)?;
        let name = as_str(field(obj, "name", &path)?, &format!("{path}.name"))?;
        let frame_path = format!("{path}.frame");
        let names = as_array(field(obj, "frame", &path)?, &frame_path)?
            .iter()
            .enumerate()
            .map(|(k, v)| as_str(v, &format!("{frame_path}[{k}]")).map(str::to_string))
            .collect::<Result<Vec<_>>>()?;
        let frame = FrameOfDiscernment::shared(names)
            .map_err(|e| Error::schema(&frame_path, e.to_string()))?;
        attributes.push(AttributeSchema::new(j, name, frame));
    }

    let rows_json = as_array(field(root, "rows", "$")?, "$.rows")?;
    let mut rows = Vec::with_capacity(rows_json.len());
    let mut labels = Vec::with_capacity(rows_json.len());
    for (i, r) in rows_json.iter().enumerate() {
        let path = format!("$.rows[{i}]");
        let obj = as_object(r, &path)?;
        let label = match obj.get("label") {
            None | Some(Value::Null) => None,
            Some(v) => Some(as_str(v, &format!("{path}.label"))?.to_string()),
        };
        let cells_path = format!("{path}.cells");
        let cells = as_array(field(obj, "cells", &path)?, &cells_path)?;
        if cells.len() != attributes.len() {
            return Err(Error::schema(
                cells_path,
                format!("expected {} cells, found {}", attributes.len(), cells.len()),
            ));
        }
        let row = cells
            .iter()
            .zip(&attributes)
            .enumerate()
            .map(|(j, (c, a))| cell_from_json(c, &a.frame, &format!("{cells_path}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        labels.push(label);
    }

    let mut db = EvidentialDatabase::with_labels(attributes, rows, labels)?;
    if let Some(source) = root.get("source") {
        db = db.with_source(as_str(source, "$.source")?);
    }
    db.validate().map_err(Error::Invalid)?;
    Ok(db)
}

/// Parses one cell (a list of `{set, mass}` entries) without normalization
/// checks; the caller validates.
pub fn cell_from_json(
    value: &Value,
    frame: &std::sync::Arc<FrameOfDiscernment>,
    path: &str,
) -> Result<MassFunction> {
    let entries = as_array(value, path)?;
    let mut focal: Vec<(SubsetMask, f64)> = Vec::with_capacity(entries.len());
    for (k, e) in entries.iter().enumerate() {
        let epath = format!("{path}[{k}]");
        let obj = as_object(e, &epath)?;
        let set_path = format!("{epath}.set");
        let names = as_array(field(obj, "set", &epath)?, &set_path)?
            .iter()
            .enumerate()
            .map(|(s, v)| as_str(v, &format!("{set_path}[{s}]")))
            .collect::<Result<Vec<_>>>()?;
        let mask = frame
            .subset(&names)
            .map_err(|err| Error::schema(&set_path, err.to_string()))?;
        let mass = field(obj, "mass", &epath)?
            .as_f64()
            .ok_or_else(|| Error::schema(format!("{epath}.mass"), "expected a number"))?;
        if focal.iter().any(|(m, _)| *m == mask) {
            return Err(Error::schema(
                set_path,
                "focal set listed twice in one cell",
            ));
        }
        focal.push((mask, mass));
    }
    Ok(MassFunction::new_unchecked(frame.clone(), focal))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "missing key"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::schema(path, "expected a string"))
}
