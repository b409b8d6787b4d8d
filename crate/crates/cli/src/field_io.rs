//! Vector field files: one `tail head` pair per line, `#` comment lines.

use dualbar_core::morse::VectorField;

use crate::CliError;

pub fn read_field(path: &str) -> Result<VectorField, CliError> {
    parse_field(path, &crate::read_to_string(path)?)
}

pub fn parse_field(path: &str, text: &str) -> Result<VectorField, CliError> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(CliError::parse(path, i + 1, "expected `tail head`"));
        }
        pairs.push((tokens[0].to_string(), tokens[1].to_string()));
    }
    Ok(VectorField::new(pairs))
}

pub fn serialize_field(field: &VectorField) -> String {
    let mut out = String::new();
    for (tail, head) in field.pairs() {
        out.push_str(&format!("{tail} {head}\n"));
    }
    out
}
