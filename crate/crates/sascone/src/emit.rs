//! Deterministic output: JSON with sorted keys and 17 significant digits
//! for every float, CSV for sampled profiles, and a plain text form.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            _ => Err(Error::Parse {
                what: "output format",
                input: s.to_string(),
            }),
        }
    }
}

/// A record that can be written in every output format.
///
/// JSON comes from `Serialize`. Records with a natural one-line reading
/// override [`text`](Record::text); records with tabular data override
/// [`csv`](Record::csv).
pub trait Record: Serialize {
    fn text(&self) -> String {
        let value = serde_json::to_value(self).expect("records serialize to JSON");
        let mut out = String::new();
        flatten_text(&value, "", &mut out);
        out
    }

    fn csv(&self) -> Option<String> {
        None
    }
}

/// Renders a record; formats the record has no rendering for fall back to JSON.
pub fn emit<R: Record + ?Sized>(record: &R, format: Format) -> String {
    match format {
        Format::Json => to_json(record),
        Format::Text => record.text(),
        Format::Csv => record.csv().unwrap_or_else(|| to_json(record)),
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("records serialize to JSON");
    let mut out = String::new();
    write_value(&value, &mut out);
    out.push('\n');
    out
}

/// `{:.16e}` form: 17 significant digits, locale independent.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "Infinity".into()
    } else {
        "-Infinity".into()
    }
}

fn write_number(n: &serde_json::Number, out: &mut String) {
    if n.is_f64() {
        out.push_str(&format_float(n.as_f64().expect("checked f64")));
    } else {
        out.push_str(&n.to_string());
    }
}

// serde_json's map is a BTreeMap (no preserve_order), so iteration is sorted.
fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(n, out),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(key.clone()).to_string());
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

fn flatten_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, item) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten_text(item, &path, out);
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten_text(item, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}: {s}");
        }
        Value::Number(n) => {
            let mut s = String::new();
            write_number(n, &mut s);
            let _ = writeln!(out, "{prefix}: {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}: {other}");
        }
    }
}

impl Record for crate::cone::PositivityRange {
    fn text(&self) -> String {
        format!("{self}\n")
    }
}

impl Record for crate::cone::Classification {
    fn text(&self) -> String {
        let mut out = format!(
            "v1/v2 = {}: {}\nrange: {}\n",
            self.ratio, self.verdict, self.range
        );
        if let Some(d) = self.distance_to_boundary {
            let _ = writeln!(out, "distance to boundary: {d}");
        }
        if self.on_boundary {
            out.push_str("warning: ray lies on the boundary of the positivity range\n");
        } else if self.near_boundary {
            out.push_str("warning: ray is within the declared tolerance of a boundary\n");
        }
        out
    }
}

impl Record for crate::admissible::MetricProfile {
    fn csv(&self) -> Option<String> {
        Some(self.to_csv())
    }
}

impl Record for crate::topology::InvariantReport {}
impl Record for crate::cone::WholeConeReport {}
impl Record for crate::admissible::LiftReport {}
impl Record for crate::admissible::VerificationReport {}
impl Record for Value {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::PositivityRange;
    use crate::rational::Rational;
    use serde_json::json;

    #[test]
    fn keys_are_sorted_and_floats_fixed_width() {
        let v = json!({"b": 1.5, "a": [1, 0.1], "c": {"z": true, "y": null}});
        assert_eq!(
            to_json(&v),
            "{\"a\":[1,1.0000000000000001e-1],\"b\":1.5000000000000000e0,\"c\":{\"y\":null,\"z\":true}}\n"
        );
    }

    #[test]
    fn output_is_valid_json() {
        let v = json!({"x": -2.5e-300, "s": "a\"b"});
        let back: Value = serde_json::from_str(&to_json(&v)).unwrap();
        assert_eq!(back["x"].as_f64(), Some(-2.5e-300));
        assert_eq!(back["s"], "a\"b");
    }

    #[test]
    fn ranges_render_like_the_tables() {
        let range = PositivityRange::Interval {
            lower: Rational::new(1, 2),
            upper: Rational::from_integer(2),
        };
        assert_eq!(emit(&range, Format::Text), "1/2 < v1/v2 < 2\n");
        assert!(emit(&PositivityRange::Entire, Format::Text).contains("p+_w = t+_w"));
    }

    #[test]
    fn emission_is_deterministic() {
        let v = json!({"k": 0.1 + 0.2, "list": [3, 2, 1]});
        assert_eq!(emit(&v, Format::Json), emit(&v, Format::Json));
        assert_eq!(emit(&v, Format::Text), emit(&v, Format::Text));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
