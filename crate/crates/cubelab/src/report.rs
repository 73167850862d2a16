//! LHS/RHS/slack records for inequality evaluations and their two output
//! formats.
//!
//! Numbers are written with 17 significant digits in both formats so that
//! emission is lossless and byte-reproducible. Non-finite values appear as
//! `inf` / `-inf` / `nan` (quoted strings in the structured format, since
//! JSON has no literal for them).

use std::io::{self, Write};

/// Which way an inequality points. `pass` means `lhs <= rhs` for upper
/// bounds and `lhs >= rhs` for lower bounds; `slack >= 1` iff `pass` in
/// both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Upper,
    Lower,
}

impl Direction {
    fn as_str(self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        }
    }
}

/// Relative grace applied to the pass test; inequalities are mathematical
/// statements evaluated in floating point.
pub const PASS_GRACE: f64 = 1e-12;

/// Outcome of one inequality evaluation on one function.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub name: String,
    pub direction: Direction,
    pub lhs: f64,
    pub rhs: f64,
    /// The constant that was plugged into the bound (or the measured
    /// empirical constant for informational reports).
    pub constant_used: f64,
    /// `rhs / lhs` for upper bounds, `lhs / rhs` for lower bounds;
    /// infinite when the denominator vanishes.
    pub slack: f64,
    pub pass: bool,
    /// False for reports whose constant is not pinned down (empirical
    /// constants); these never fail a suite.
    pub enforced: bool,
    pub flags: Vec<String>,
    /// Summary of the inputs, `key=value` pairs joined by `;`.
    pub inputs: String,
    /// Named auxiliary values, in a fixed order.
    pub details: Vec<(String, f64)>,
}

impl InequalityReport {
    /// Upper-bound report `lhs <= constant-bearing rhs`.
    pub fn upper(name: impl Into<String>, lhs: f64, rhs: f64, constant_used: f64) -> Self {
        let slack = if lhs == 0.0 { f64::INFINITY } else { rhs / lhs };
        let pass = lhs <= rhs * (1.0 + PASS_GRACE) || lhs == 0.0;
        Self {
            name: name.into(),
            direction: Direction::Upper,
            lhs,
            rhs,
            constant_used,
            slack,
            pass,
            enforced: true,
            flags: Vec::new(),
            inputs: String::new(),
            details: Vec::new(),
        }
    }

    /// Lower-bound report `lhs >= constant-bearing rhs`.
    pub fn lower(name: impl Into<String>, lhs: f64, rhs: f64, constant_used: f64) -> Self {
        let slack = if rhs == 0.0 { f64::INFINITY } else { lhs / rhs };
        let pass = lhs >= rhs * (1.0 - PASS_GRACE) || rhs == 0.0;
        Self {
            name: name.into(),
            direction: Direction::Lower,
            lhs,
            rhs,
            constant_used,
            slack,
            pass,
            enforced: true,
            flags: Vec::new(),
            inputs: String::new(),
            details: Vec::new(),
        }
    }

    pub fn with_inputs(mut self, inputs: impl Into<String>) -> Self {
        self.inputs = inputs.into();
        self
    }

    pub fn with_flag(mut self, flag: impl Into<String>) -> Self {
        self.flags.push(flag.into());
        self
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: f64) -> Self {
        self.details.push((key.into(), value));
        self
    }

    /// Marks the report informational: `pass` is forced true and the suite
    /// exit status ignores it.
    pub fn informational(mut self) -> Self {
        self.enforced = false;
        self.pass = true;
        self
    }
}

/// 17-significant-digit rendering shared by both formats.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:.16e}")
    }
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("\"{}\"", format_number(x))
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

pub const ROWS_HEADER: &str = "name,direction,lhs,rhs,constant,slack,pass,enforced,flags,inputs,details";

/// Minimal CSV quoting: fields with commas, quotes, or newlines are
/// double-quoted (function names like `tribes:w=2,s=4` appear in fields).
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One comma-separated line per report under a fixed, versioned header.
pub fn emit_rows(reports: &[InequalityReport], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "version,1")?;
    writeln!(out, "{ROWS_HEADER}")?;
    for r in reports {
        let flags = r.flags.join("|");
        let details = r
            .details
            .iter()
            .map(|(k, v)| format!("{k}={}", format_number(*v)))
            .collect::<Vec<_>>()
            .join("|");
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&r.name),
            r.direction.as_str(),
            format_number(r.lhs),
            format_number(r.rhs),
            format_number(r.constant_used),
            format_number(r.slack),
            r.pass,
            r.enforced,
            csv_field(&flags),
            csv_field(&r.inputs),
            csv_field(&details)
        )?;
    }
    Ok(())
}

/// Structured format: one object per report inside a versioned envelope.
pub fn emit_structured(reports: &[InequalityReport], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{{")?;
    writeln!(out, "  \"version\": 1,")?;
    writeln!(out, "  \"reports\": [")?;
    for (i, r) in reports.iter().enumerate() {
        let comma = if i + 1 < reports.len() { "," } else { "" };
        let flags = r
            .flags
            .iter()
            .map(|f| format!("\"{}\"", json_escape(f)))
            .collect::<Vec<_>>()
            .join(", ");
        let details = r
            .details
            .iter()
            .map(|(k, v)| format!("\"{}\": {}", json_escape(k), json_number(*v)))
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(
            out,
            "    {{\"name\": \"{}\", \"direction\": \"{}\", \"lhs\": {}, \"rhs\": {}, \"constant\": {}, \"slack\": {}, \"pass\": {}, \"enforced\": {}, \"flags\": [{}], \"inputs\": \"{}\", \"details\": {{{}}}}}{}",
            json_escape(&r.name),
            r.direction.as_str(),
            json_number(r.lhs),
            json_number(r.rhs),
            json_number(r.constant_used),
            json_number(r.slack),
            r.pass,
            r.enforced,
            flags,
            json_escape(&r.inputs),
            details,
            comma
        )?;
    }
    writeln!(out, "  ]")?;
    writeln!(out, "}}")?;
    Ok(())
}

/// True when some enforced report failed; drives the CLI exit status.
pub fn any_enforced_failure(reports: &[InequalityReport]) -> bool {
    reports.iter().any(|r| r.enforced && !r.pass)
}
