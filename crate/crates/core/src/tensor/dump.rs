//! Plain-text operator records.
//!
//! ```text
//! operator v1
//! dims_out 2 2
//! dims_in 2 2
//! <re> <im>        (one line per entry, row-major)
//! ```
//!
//! Numbers use Rust's shortest round-trip exponent formatting, so reading a
//! record back reproduces every bit.

use std::fmt::Write as _;

use num_complex::Complex;

use super::ComplexOperator;
use crate::error::{Error, Result};
use crate::scalar::Real;

const HEADER: &str = "operator v1";

pub fn write_operator<T: Real>(op: &ComplexOperator<T>) -> String {
    let mut s = String::with_capacity(op.entries().len() * 48 + 64);
    let join = |d: &[usize]| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "{HEADER}");
    let _ = writeln!(s, "dims_out {}", join(op.dims_out()));
    let _ = writeln!(s, "dims_in {}", join(op.dims_in()));
    for z in op.entries() {
        let _ = writeln!(s, "{:e} {:e}", z.re, z.im);
    }
    s
}

fn parse_dims(line: Option<&str>, key: &str) -> Result<Vec<usize>> {
    let line = line.ok_or_else(|| Error::Parse(format!("missing '{key}' line")))?;
    let rest = line
        .strip_prefix(key)
        .ok_or_else(|| Error::Parse(format!("expected '{key}', found '{line}'")))?;
    rest.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension '{t}'"))))
        .collect()
}

fn parse_num<T: Real>(tok: Option<&str>, line: &str) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad entry line '{line}'")))
}

pub fn read_operator<T: Real>(text: &str) -> Result<ComplexOperator<T>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(HEADER) => {}
        other => return Err(Error::Parse(format!("expected '{HEADER}', found {other:?}"))),
    }
    let dims_out = parse_dims(lines.next(), "dims_out")?;
    let dims_in = parse_dims(lines.next(), "dims_in")?;
    let entries = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let re = parse_num(it.next(), l)?;
            let im = parse_num(it.next(), l)?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("trailing data on '{l}'")));
            }
            Ok(Complex::new(re, im))
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexOperator::new(dims_out, dims_in, entries)
}
