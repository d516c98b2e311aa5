//! Instance files.
//!
//! Text: one generator per line, whitespace-separated integers, `#` starts a
//! comment, blank lines are ignored. A comment of the form `# name: <name>`
//! names the instance.
//!
//! JSON: `{"name": <string?>, "generators": [[int, ...], ...]}`. Entries may
//! be numbers or decimal strings.
//!
//! Parse positions are 1-based; row indices in validation errors are
//! 0-based.

use std::io::Read;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::IntVector;
use crate::semigroup::GeneratorSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub generators: Vec<IntVector>,
}

impl InstanceFile {
    pub fn from_generator_set(a: &GeneratorSet) -> InstanceFile {
        InstanceFile {
            name: a.name().map(str::to_owned),
            generators: a.vectors().to_vec(),
        }
    }

    pub fn to_generator_set(&self) -> Result<GeneratorSet> {
        let a = GeneratorSet::new(self.generators.clone())?;
        Ok(match &self.name {
            Some(n) => a.with_name(n.clone()),
            None => a,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            out.push_str(&format!("# name: {n}\n"));
        }
        for g in &self.generators {
            let row: Vec<String> = g.iter().map(BigInt::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(self)
    }
}

/// Reads an instance from `path`, or from standard input when `path` is `-`.
pub fn parse_instance(path: &str) -> Result<InstanceFile> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?
    };
    parse_str(&text)
}

/// Parses JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_str(s: &str) -> Result<InstanceFile> {
    let inst = if s.trim_start().starts_with('{') {
        parse_json(s)?
    } else {
        parse_text(s)?
    };
    check_rows(&inst.generators)?;
    Ok(inst)
}

fn parse_text(s: &str) -> Result<InstanceFile> {
    let mut name = None;
    let mut generators = Vec::new();
    for (ln, line) in s.lines().enumerate() {
        let (body, comment) = match line.find('#') {
            Some(p) => (&line[..p], Some(&line[p + 1..])),
            None => (line, None),
        };
        if let Some(n) = comment.and_then(|c| c.trim().strip_prefix("name:")) {
            if name.is_none() {
                name = Some(n.trim().to_owned());
            }
        }
        let mut row = Vec::new();
        let mut offset = 0;
        for tok in body.split_whitespace() {
            let col = body[offset..].find(tok).map_or(offset, |p| p + offset);
            offset = col + tok.len();
            let v = BigInt::from_str(tok).map_err(|_| Error::Parse {
                line: ln + 1,
                column: body[..col].chars().count() + 1,
                message: format!("expected an integer, found `{tok}`"),
            })?;
            row.push(v);
        }
        if !row.is_empty() {
            generators.push(IntVector::new(row));
        }
    }
    Ok(InstanceFile { name, generators })
}

fn parse_json(s: &str) -> Result<InstanceFile> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let structural = |message: String| Error::Parse {
        line: 1,
        column: 1,
        message,
    };
    let obj = v.as_object().ok_or_else(|| structural("expected a JSON object".into()))?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(n)) => Some(n.clone()),
        Some(_) => return Err(structural("`name` must be a string".into())),
    };
    let rows = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| structural("`generators` must be an array of rows".into()))?;
    let mut generators = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| structural(format!("generators[{i}] is not an array")))?;
        let entries = row
            .iter()
            .enumerate()
            .map(|(j, x)| json_int(x).ok_or_else(|| structural(format!("generators[{i}][{j}] is not an integer"))))
            .collect::<Result<Vec<_>>>()?;
        generators.push(IntVector::new(entries));
    }
    Ok(InstanceFile { name, generators })
}

fn json_int(x: &Value) -> Option<BigInt> {
    match x {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => BigInt::from_str(s).ok(),
        _ => None,
    }
}

fn check_rows(rows: &[IntVector]) -> Result<()> {
    let expected = rows.first().ok_or(Error::EmptyInput)?.dim();
    for (row, r) in rows.iter().enumerate() {
        if r.dim() != expected {
            return Err(Error::RaggedRows {
                row,
                got: r.dim(),
                expected,
            });
        }
        if r.is_zero() {
            return Err(Error::ZeroRow(row));
        }
    }
    Ok(())
}
