//! Plain-text instance format.
//!
//! ```text
//! n capacity
//! value weight      (n lines)
//! opt V*            (optional)
//! ```
//!
//! The reader also accepts the two-line header variant where `n` and the
//! capacity sit on separate lines. Blank lines are ignored; CRLF is fine.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::knapsack::KnapsackInstance;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(tok: &str, line: usize, what: &str) -> Result<f64> {
    tok.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| parse_err(line, format!("bad {what} {tok:?}")))
}

fn count(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("bad item count {tok:?}")))
}

/// Parses an instance from text. `name` becomes the instance name.
pub fn parse_instance(name: &str, text: &str) -> Result<KnapsackInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let (n, capacity) = match head.as_slice() {
        [n, cap] => (count(n, hline)?, number(cap, hline, "capacity")?),
        [n] => {
            let n = count(n, hline)?;
            let (cline, cap) = lines
                .next()
                .ok_or_else(|| parse_err(hline + 1, "missing capacity line"))?;
            match cap.split_whitespace().collect::<Vec<_>>().as_slice() {
                [c] => (n, number(c, cline, "capacity")?),
                _ => return Err(parse_err(cline, "expected a single capacity")),
            }
        }
        _ => return Err(parse_err(hline, "expected \"n capacity\" header")),
    };
    if n == 0 {
        return Err(parse_err(hline, "item count must be positive"));
    }
    if capacity < 0.0 {
        return Err(parse_err(hline, "capacity must be non-negative"));
    }

    let mut values = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut last = hline;
    for _ in 0..n {
        let (ln, row) = lines.next().ok_or_else(|| {
            parse_err(
                last + 1,
                format!("expected {n} items, got {}", values.len()),
            )
        })?;
        last = ln;
        let toks: Vec<&str> = row.split_whitespace().collect();
        let [v, w] = toks.as_slice() else {
            return Err(parse_err(ln, "expected \"value weight\""));
        };
        let v = number(v, ln, "value")?;
        let w = number(w, ln, "weight")?;
        if v <= 0.0 {
            return Err(parse_err(ln, "non-positive value"));
        }
        if w <= 0.0 {
            return Err(parse_err(ln, "non-positive weight"));
        }
        values.push(v);
        weights.push(w);
    }

    let mut optimal_value = None;
    if let Some((ln, row)) = lines.next() {
        let toks: Vec<&str> = row.split_whitespace().collect();
        match toks.as_slice() {
            ["opt", v] => optimal_value = Some(number(v, ln, "optimum")?),
            _ => return Err(parse_err(ln, "unexpected trailing content")),
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "unexpected content after optimum"));
        }
    }

    let mut inst = KnapsackInstance::new(name, values, weights, capacity)?;
    inst.optimal_value = optimal_value;
    Ok(inst)
}

/// Parses from any reader.
pub fn read_instance<R: Read>(name: &str, mut reader: R) -> Result<KnapsackInstance> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_instance(name, &text)
}

/// Reads an instance file; the file stem becomes the instance name.
pub fn read_instance_file(path: impl AsRef<Path>) -> Result<KnapsackInstance> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let text = std::fs::read_to_string(path)?;
    parse_instance(&name, &text)
}

/// Canonical text form. Numbers use the shortest round-trip representation.
pub fn serialize_instance(inst: &KnapsackInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", inst.len(), inst.capacity);
    for (v, w) in inst.values.iter().zip(&inst.weights) {
        let _ = writeln!(out, "{v} {w}");
    }
    if let Some(opt) = inst.optimal_value {
        let _ = writeln!(out, "opt {opt}");
    }
    out
}
