use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use chargraph::degrees::GroupModel;
use chargraph::shapes::{eval_shape, parse_shape};
use chargraph::{CharGraph, DegreeSet};
use serde_json::Value;

pub fn parse_seed(raw: &str) -> Option<u64> {
    let raw = raw.trim();
    match raw.strip_prefix("0x").or_else(|| raw.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16).ok(),
        None => raw.replace('_', "").parse().ok(),
    }
}

fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
    }
}

/// First JSON value in `text`; anything after it (such as the DOT block that
/// `parse-shape` prints) is ignored.
fn first_value(text: &str) -> Result<Value> {
    serde_json::Deserializer::from_str(text)
        .into_iter::<Value>()
        .next()
        .ok_or_else(|| anyhow!("no JSON value in input"))?
        .context("malformed JSON")
}

/// Graph from a file, inline JSON, stdin (`-`), or a shape expression.
pub fn load_graph(arg: &str) -> Result<CharGraph> {
    let text = if arg == "-" || Path::new(arg).is_file() {
        read_source(arg)?
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        let expr = parse_shape(arg).map_err(|e| anyhow!("{arg:?} is not a file, JSON or shape: {e}"))?;
        return Ok(eval_shape(&expr));
    };
    let mut value = first_value(&text)?;
    if let Some(inner) = value.get_mut("graph") {
        value = inner.take();
    }
    serde_json::from_value(value).context("not a graph object")
}

/// Radical factors: a JSON array of degree sets.
pub fn load_radical(arg: &str) -> Result<Vec<DegreeSet>> {
    let value = first_value(&read_source(arg)?)?;
    let Value::Array(items) = value else {
        bail!("radical file must hold a JSON array of degree sets");
    };
    items.into_iter().map(degree_set_from).collect()
}

/// Degree set as `{"degrees": [...]}`, a bare array, or a group model.
pub fn load_degree_set(arg: &str) -> Result<DegreeSet> {
    degree_set_from(first_value(&read_source(arg)?)?)
}

fn degree_set_from(value: Value) -> Result<DegreeSet> {
    if value.get("kind").is_some() {
        let model: GroupModel = serde_json::from_value(value).context("not a group model")?;
        return Ok(model.cd()?);
    }
    let value = match value {
        Value::Array(_) => serde_json::json!({ "degrees": value }),
        other => other,
    };
    serde_json::from_value(value).context("not a degree set")
}
