//! Image ingestion. Two formats, detected by the first token:
//!
//! - dense text: `dims: n1 n2 ... nd` header, then the row-major values;
//!   `#`-prefixed lines are comments
//! - plain PGM (`P2`, 2D only, maxval at most 65535)

use dualbar_core::cubical::ImageArray;

use crate::CliError;

pub fn read_image(path: &str) -> Result<ImageArray, CliError> {
    parse_image(path, &crate::read_to_string(path)?)
}

pub fn parse_image(path: &str, text: &str) -> Result<ImageArray, CliError> {
    let first = text
        .lines()
        .flat_map(|l| l.split_whitespace())
        .next()
        .ok_or_else(|| CliError::parse(path, 1, "empty image file"))?;
    if first == "P2" {
        parse_pgm(path, text)
    } else {
        parse_dense(path, text)
    }
}

fn parse_dense(path: &str, text: &str) -> Result<ImageArray, CliError> {
    let mut shape: Option<Vec<usize>> = None;
    let mut values: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if shape.is_none() {
            let rest = line
                .strip_prefix("dims:")
                .ok_or_else(|| CliError::parse(path, line_no, "expected `dims:` header"))?;
            let dims: Vec<usize> = rest
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| {
                        CliError::parse(path, line_no, format!("bad extent {t:?}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            if dims.is_empty() {
                return Err(CliError::parse(path, line_no, "`dims:` lists no extents"));
            }
            shape = Some(dims);
            continue;
        }
        for token in line.split_whitespace() {
            values.push(token.parse::<f64>().map_err(|_| {
                CliError::parse(path, line_no, format!("bad value {token:?}"))
            })?);
        }
    }
    let shape = shape.ok_or_else(|| CliError::parse(path, 1, "missing `dims:` header"))?;
    ImageArray::new(shape, values).map_err(|e| CliError::parse(path, 1, e.to_string()))
}

fn parse_pgm(path: &str, text: &str) -> Result<ImageArray, CliError> {
    // PGM allows `#` comments anywhere; strip them to end of line first
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for token in line.split_whitespace() {
            tokens.push((i + 1, token));
        }
    }
    let mut it = tokens.into_iter();
    let mut next = |what: &str| {
        it.next()
            .ok_or_else(|| CliError::parse(path, 1, format!("truncated PGM: missing {what}")))
    };
    let (_, magic) = next("magic")?;
    if magic != "P2" {
        return Err(CliError::parse(path, 1, format!("expected P2, found {magic:?}")));
    }
    let mut number = |what: &str| -> Result<(usize, usize), CliError> {
        let (line, token) = next(what)?;
        let n = token
            .parse::<usize>()
            .map_err(|_| CliError::parse(path, line, format!("bad {what} {token:?}")))?;
        Ok((line, n))
    };
    let (_, width) = number("width")?;
    let (_, height) = number("height")?;
    let (line, maxval) = number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(CliError::parse(path, line, format!("maxval {maxval} out of range")));
    }
    let mut values = Vec::with_capacity(width * height);
    for _ in 0..width * height {
        let (_, n) = number("pixel")?;
        values.push(n as f64);
    }
    ImageArray::new(vec![height, width], values).map_err(|e| CliError::parse(path, 1, e.to_string()))
}

pub fn serialize_image(image: &ImageArray) -> String {
    let dims: Vec<String> = image.shape().iter().map(|n| n.to_string()).collect();
    let mut out = format!("dims: {}\n", dims.join(" "));
    let row = *image.shape().last().unwrap();
    for chunk in image.values().chunks(row) {
        let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
