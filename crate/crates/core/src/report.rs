//! Plain-text experiment reports (`pfclab-report v1`).
//!
//! A report is a header line followed by `key = value` lines in a fixed
//! order. Reals are written with 17 significant digits, so a report parses
//! back to the same values and identical runs produce identical bodies.
//! Only the final `wall_time_s` line varies between runs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::seed::Seed;

pub const HEADER: &str = "pfclab-report v1";

/// Formats a real with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    AtMost,
    AtLeast,
}

impl Relation {
    pub fn holds(self, value: f64, bound: f64) -> bool {
        match self {
            Relation::AtMost => value <= bound,
            Relation::AtLeast => value >= bound,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }
}

/// One pass/fail comparison of a measured value against a bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, relation: Relation::AtMost, bound }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, relation: Relation::AtLeast, bound }
    }

    /// Exact equality of integers or rationals, recorded as `|a - b| <= 0`.
    pub fn equal(name: impl Into<String>, holds: bool) -> Self {
        Self::at_most(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn passed(&self) -> bool {
        self.relation.holds(self.value, self.bound)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub experiment: String,
    pub seed: Seed,
    pub params: Vec<(String, String)>,
    pub values: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub wall_time_s: f64,
}

impl Report {
    pub fn new(experiment: impl Into<String>, seed: Seed) -> Self {
        Self {
            experiment: experiment.into(),
            seed,
            params: Vec::new(),
            values: Vec::new(),
            checks: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn value(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.values.push((key.to_string(), value.to_string()));
        self
    }

    pub fn real(&mut self, key: &str, value: f64) -> &mut Self {
        self.value(key, fmt_real(value))
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn get_value(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// PASS iff there is at least one check and every check holds.
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    /// Everything except the wall-time line.
    pub fn body(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: &str| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(v);
            s.push('\n');
        };
        line("experiment", &self.experiment);
        line("seed", &self.seed.to_string());
        for (k, v) in &self.params {
            line(&format!("param.{k}"), v);
        }
        for (k, v) in &self.values {
            line(&format!("value.{k}"), v);
        }
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            line(
                &format!("check.{}", c.name),
                &format!("{verdict} {} {} {}", fmt_real(c.value), c.relation.symbol(), fmt_real(c.bound)),
            );
        }
        line("verdict", if self.passed() { "PASS" } else { "FAIL" });
        format!("{HEADER}\n{s}")
    }

    pub fn to_text(&self) -> String {
        format!("{}wall_time_s = {}\n", self.body(), fmt_real(self.wall_time_s))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_real(s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::Parse(format!("not a real number: {s:?}")))
}

fn parse_check(name: &str, v: &str) -> Result<(Check, bool)> {
    let parts: Vec<&str> = v.split(' ').collect();
    let [verdict, value, rel, bound] = parts.as_slice() else {
        return Err(Error::Parse(format!("malformed check line: {v:?}")));
    };
    let relation = match *rel {
        "<=" => Relation::AtMost,
        ">=" => Relation::AtLeast,
        _ => return Err(Error::Parse(format!("unknown relation {rel:?}"))),
    };
    let passed = match *verdict {
        "PASS" => true,
        "FAIL" => false,
        _ => return Err(Error::Parse(format!("unknown verdict {verdict:?}"))),
    };
    let check = Check { name: name.to_string(), value: parse_real(value)?, relation, bound: parse_real(bound)? };
    Ok((check, passed))
}

impl FromStr for Report {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(HEADER) {
            return Err(Error::Parse(format!("missing header {HEADER:?}")));
        }
        let mut experiment = None;
        let mut seed = None;
        let mut report = Report::new("", 0);
        let mut verdict = None;
        let mut wall = None;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| Error::Parse(format!("expected `key = value`, got {line:?}")))?;
            if let Some(p) = k.strip_prefix("param.") {
                report.params.push((p.to_string(), v.to_string()));
            } else if let Some(p) = k.strip_prefix("value.") {
                report.values.push((p.to_string(), v.to_string()));
            } else if let Some(p) = k.strip_prefix("check.") {
                let (c, passed) = parse_check(p, v)?;
                if c.passed() != passed {
                    return Err(Error::Parse(format!("check {p} verdict disagrees with its values")));
                }
                report.checks.push(c);
            } else {
                match k {
                    "experiment" => experiment = Some(v.to_string()),
                    "seed" => seed = Some(v.parse().map_err(|_| Error::Parse(format!("bad seed {v:?}")))?),
                    "verdict" => verdict = Some(v == "PASS"),
                    "wall_time_s" => wall = Some(parse_real(v)?),
                    _ => return Err(Error::Parse(format!("unknown key {k:?}"))),
                }
            }
        }
        report.experiment = experiment.ok_or_else(|| Error::Parse("missing experiment".into()))?;
        report.seed = seed.ok_or_else(|| Error::Parse("missing seed".into()))?;
        report.wall_time_s = wall.ok_or_else(|| Error::Parse("missing wall_time_s".into()))?;
        if verdict != Some(report.passed()) {
            return Err(Error::Parse("verdict line missing or inconsistent with checks".into()));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("demo", 42);
        r.param("d", 4).real("residual", 1.0 / 3.0).check(Check::at_most("residual", 1e-13, 1e-12));
        r.check(Check::at_least("overlap", 0.61, 0.6));
        r.wall_time_s = 0.25;
        let text = r.to_text();
        let back: Report = text.parse().unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_text(), text);
        assert!(back.passed());
    }

    #[test]
    fn failing_check_fails_report() {
        let mut r = Report::new("demo", 1);
        r.check(Check::at_most("x", 2.0, 1.0));
        assert!(!r.passed());
        assert!(r.body().contains("check.x = FAIL"));
        assert!(!Report::new("empty", 1).passed());
    }

    #[test]
    fn rejects_tampered_verdict() {
        let mut r = Report::new("demo", 1);
        r.check(Check::at_most("x", 0.5, 1.0));
        let text = r.to_text().replace("verdict = PASS", "verdict = FAIL");
        assert!(text.parse::<Report>().is_err());
    }
}
