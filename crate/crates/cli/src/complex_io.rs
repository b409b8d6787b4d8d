//! Abstract complex files: one cell per line, `id dim value facet-ids...`,
//! with `#` comment lines. `value` may be a number, `inf`, or `-inf`.

use dualbar_core::complex::{Cell, CellId, ExtendedValue, FilteredComplex};

use crate::CliError;

/// When `ambient_dim` is absent the largest cell dimension in the file is
/// used.
pub fn read_complex(path: &str, ambient_dim: Option<usize>) -> Result<FilteredComplex, CliError> {
    parse_complex(path, &crate::read_to_string(path)?, ambient_dim)
}

fn parse_value(path: &str, line: usize, token: &str) -> Result<ExtendedValue, CliError> {
    match token {
        "inf" => Ok(ExtendedValue::PosInf),
        "-inf" => Ok(ExtendedValue::NegInf),
        _ => token
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(ExtendedValue::finite)
            .ok_or_else(|| CliError::parse(path, line, format!("bad value {token:?}"))),
    }
}

pub fn parse_complex(
    path: &str,
    text: &str,
    ambient_dim: Option<usize>,
) -> Result<FilteredComplex, CliError> {
    let mut cells = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let id = tokens.next().unwrap();
        let dim = tokens
            .next()
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| CliError::parse(path, line_no, "expected `id dim value facets...`"))?;
        let value = tokens
            .next()
            .ok_or_else(|| CliError::parse(path, line_no, "missing filtration value"))
            .and_then(|t| parse_value(path, line_no, t))?;
        let boundary: Vec<CellId> = tokens.map(CellId::from).collect();
        cells.push(Cell::new(id, dim, value, boundary));
    }
    let ambient_dim =
        ambient_dim.unwrap_or_else(|| cells.iter().map(|c| c.dim).max().unwrap_or(0));
    let complex = FilteredComplex::new(cells, ambient_dim);
    let report = complex.validate();
    if !report.is_empty() {
        return Err(CliError::invalid(report));
    }
    Ok(complex)
}

pub fn serialize_complex(complex: &FilteredComplex) -> String {
    let mut out = String::new();
    for cell in complex.cells() {
        out.push_str(&format!("{} {} {}", cell.id, cell.dim, cell.value));
        for facet in &cell.boundary {
            out.push_str(&format!(" {facet}"));
        }
        out.push('\n');
    }
    out
}
