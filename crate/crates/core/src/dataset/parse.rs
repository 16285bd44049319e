//! Configuration list readers.
//!
//! `canonical-json` is either a JSON array of objects or JSON Lines, one
//! object per line: `{"id": "quintic", "ambient": [4], "degrees": [[5]]}`.
//! A missing `id` defaults to the one-based position in the list.
//!
//! `cicy-text` is a sequence of blocks separated by blank lines; `#` starts
//! a comment line:
//!
//! ```text
//! id bicubic
//! 2 1
//! 2 2
//! 3
//! 3
//! ```
//!
//! An optional `id <name>` line, then `m k`, then the `m` ambient
//! dimensions on one line, then `m` rows of `k` degrees.

use std::io::Read;
use std::str::FromStr;

use serde_json::Value;

use super::Diagnostic;
use crate::config::ConfigurationMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    CanonicalJson,
    CicyText,
}

impl InputFormat {
    /// `.txt` and `.cicy` files are text, everything else JSON.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("txt") | Some("cicy") => InputFormat::CicyText,
            _ => InputFormat::CanonicalJson,
        }
    }
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical-json" | "json" | "jsonl" => Ok(InputFormat::CanonicalJson),
            "cicy-text" | "text" => Ok(InputFormat::CicyText),
            _ => Err(Error::Parse {
                what: "input format",
                value: s.to_owned(),
            }),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseOutcome {
    pub configs: Vec<ConfigurationMatrix>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Reads every well-formed entry; malformed ones become diagnostics.
/// Only I/O failures and an unparseable JSON array are errors.
pub fn parse_config_list<R: Read>(mut reader: R, format: InputFormat) -> Result<ParseOutcome> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    match format {
        InputFormat::CanonicalJson => parse_json(&text),
        InputFormat::CicyText => Ok(parse_text(&text)),
    }
}

fn parse_json(text: &str) -> Result<ParseOutcome> {
    let mut out = ParseOutcome::default();
    if text.trim_start().starts_with('[') {
        let items: Vec<Value> = serde_json::from_str(text)?;
        for (i, item) in items.into_iter().enumerate() {
            match config_from_value(item, i + 1) {
                Ok(c) => out.configs.push(c),
                Err(e) => out.diagnostics.push(Diagnostic {
                    id: None,
                    line: None,
                    message: format!("element {}: {e}", i + 1),
                }),
            }
        }
        return Ok(out);
    }
    let mut ordinal = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        ordinal += 1;
        let parsed = serde_json::from_str::<Value>(line)
            .map_err(Error::from)
            .and_then(|v| config_from_value(v, ordinal));
        match parsed {
            Ok(c) => out.configs.push(c),
            Err(e) => out.diagnostics.push(Diagnostic::at_line(lineno + 1, e.to_string())),
        }
    }
    Ok(out)
}

fn config_from_value(mut value: Value, ordinal: usize) -> Result<ConfigurationMatrix> {
    if let Value::Object(map) = &mut value {
        map.entry("id").or_insert_with(|| Value::String(ordinal.to_string()));
    }
    Ok(serde_json::from_value(value)?)
}

fn parse_text(text: &str) -> ParseOutcome {
    let mut out = ParseOutcome::default();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let mut ordinal = 0;
    let lines = text.lines().map(Some).chain(std::iter::once(None));
    for (lineno, line) in lines.enumerate() {
        let content = line.map(str::trim);
        match content {
            Some(l) if l.starts_with('#') => continue,
            Some(l) if !l.is_empty() => {
                block.push((lineno + 1, l));
                continue;
            }
            _ => {}
        }
        if block.is_empty() {
            continue;
        }
        ordinal += 1;
        let start = block[0].0;
        match parse_block(&block, ordinal) {
            Ok(c) => out.configs.push(c),
            Err(msg) => out.diagnostics.push(Diagnostic::at_line(start, msg)),
        }
        block.clear();
    }
    out
}

fn parse_block(block: &[(usize, &str)], ordinal: usize) -> std::result::Result<ConfigurationMatrix, String> {
    let mut lines = block.iter().peekable();
    let mut id = ordinal.to_string();
    if let Some((_, l)) = lines.peek() {
        if let Some(rest) = l.strip_prefix("id ") {
            id = rest.trim().to_owned();
            lines.next();
        }
    }
    let mut next_ints = |what: &str| -> std::result::Result<(usize, Vec<u32>), String> {
        let (lineno, l) = lines.next().ok_or_else(|| format!("block ends before {what}"))?;
        let ints = l
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| format!("line {lineno}: bad integer {tok:?} in {what}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok((*lineno, ints))
    };
    let (lineno, header) = next_ints("header")?;
    let [m, k] = header[..] else {
        return Err(format!("line {lineno}: header must be \"m k\""));
    };
    let (m, k) = (m as usize, k as usize);
    let (lineno, ambient) = next_ints("ambient dimensions")?;
    if ambient.len() != m {
        return Err(format!(
            "line {lineno}: expected {m} ambient dimensions, found {}",
            ambient.len()
        ));
    }
    let mut degrees = Vec::with_capacity(m);
    for i in 0..m {
        let (lineno, row) = next_ints("degree rows")?;
        if row.len() != k {
            return Err(format!(
                "line {lineno}: degree row {} has {} entries, expected {k}",
                i + 1,
                row.len()
            ));
        }
        degrees.push(row);
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(format!("line {lineno}: trailing content after {m} degree rows"));
    }
    ConfigurationMatrix::new(id, ambient, degrees).map_err(|e| e.to_string())
}
