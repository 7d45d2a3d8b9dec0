//! JSON interchange. Rationals are strings (`"-16/7"`, `"3"`); no floating
//! point appears in any file.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::intervals::{format_rational, parse_rational, Interval, IntervalSet, Rational};
use crate::msf2d::{Mat2, QuadScalar};
use crate::step::{StepFn, WindowStep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    IntervalSet(IntervalSet),
    StepFn(StepFn),
    Mat2(Mat2),
    /// A dimension function on a window, with the depth it was computed at.
    DimWindow { depth: u32, dim: WindowStep },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::IntervalSet(_) => "interval_set",
            Document::StepFn(_) => "step_fn",
            Document::Mat2(_) => "mat2",
            Document::DimWindow { .. } => "dim_window",
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub fn rational_value(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn interval_value(i: &Interval) -> Value {
    json!([format_rational(i.lo()), format_rational(i.hi())])
}

pub fn interval_set_value(s: &IntervalSet) -> Value {
    json!({
        "type": "interval_set",
        "intervals": s.parts().iter().map(interval_value).collect::<Vec<_>>(),
    })
}

pub fn step_fn_value(f: &StepFn) -> Value {
    let pieces: Vec<Value> = f
        .pieces()
        .iter()
        .map(|(i, v)| json!({"interval": interval_value(i), "value": format_rational(v)}))
        .collect();
    json!({"type": "step_fn", "pieces": pieces})
}

pub fn quad_value(q: &QuadScalar) -> Value {
    if q.is_rational() {
        rational_value(q.a())
    } else {
        json!({"a": format_rational(q.a()), "b": format_rational(q.b()), "d": q.d()})
    }
}

pub fn mat2_value(m: &Mat2) -> Value {
    let row = |r: &[QuadScalar; 2]| json!([quad_value(&r[0]), quad_value(&r[1])]);
    json!({"type": "mat2", "entries": [row(&m.m[0]), row(&m.m[1])]})
}

pub fn dim_window_value(depth: u32, dim: &WindowStep) -> Value {
    json!({
        "type": "dim_window",
        "depth": depth,
        "breaks": dim.breaks().iter().map(rational_value).collect::<Vec<_>>(),
        "values": dim.values().iter().map(rational_value).collect::<Vec<_>>(),
    })
}

pub fn document_value(doc: &Document) -> Value {
    match doc {
        Document::IntervalSet(s) => interval_set_value(s),
        Document::StepFn(f) => step_fn_value(f),
        Document::Mat2(m) => mat2_value(m),
        Document::DimWindow { depth, dim } => dim_window_value(*depth, dim),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
        _ => Err(bad(format!("expected a rational string, got {v}"))),
    }
}

fn parse_pair(v: &Value) -> Result<(Rational, Rational)> {
    match array(v, "interval")?.as_slice() {
        [lo, hi] => Ok((parse_rational_value(lo)?, parse_rational_value(hi)?)),
        _ => Err(bad("an interval is a two-element array [lo, hi]")),
    }
}

fn parse_quad(v: &Value) -> Result<QuadScalar> {
    match v {
        Value::Object(o) => {
            let d = match field(o, "d")? {
                Value::Number(n) => n.as_u64(),
                Value::String(s) => s.trim().parse().ok(),
                _ => None,
            }
            .ok_or_else(|| bad("\"d\" must be a positive integer"))?;
            QuadScalar::new(
                parse_rational_value(field(o, "a")?)?,
                parse_rational_value(field(o, "b")?)?,
                d,
            )
        }
        other => Ok(QuadScalar::rational(parse_rational_value(other)?)),
    }
}

pub fn parse_value(v: &Value) -> Result<Document> {
    let obj = v.as_object().ok_or_else(|| bad("document must be a JSON object"))?;
    let kind = field(obj, "type")?.as_str().ok_or_else(|| bad("\"type\" must be a string"))?;
    match kind {
        "interval_set" => {
            let pairs = array(field(obj, "intervals")?, "intervals")?
                .iter()
                .map(parse_pair)
                .collect::<Result<Vec<_>>>()?;
            Ok(Document::IntervalSet(IntervalSet::normalize(pairs)?))
        }
        "step_fn" => {
            let mut pieces = Vec::new();
            for p in array(field(obj, "pieces")?, "pieces")? {
                let p = p.as_object().ok_or_else(|| bad("a piece must be an object"))?;
                let (lo, hi) = parse_pair(field(p, "interval")?)?;
                let value = parse_rational_value(field(p, "value")?)?;
                pieces.push((Interval::new(lo, hi)?, value));
            }
            Ok(Document::StepFn(StepFn::from_pieces(pieces)?))
        }
        "mat2" => {
            let rows = array(field(obj, "entries")?, "entries")?;
            let parse_row = |r: &Value| -> Result<[QuadScalar; 2]> {
                match array(r, "matrix row")?.as_slice() {
                    [a, b] => Ok([parse_quad(a)?, parse_quad(b)?]),
                    _ => Err(bad("matrix rows have two entries")),
                }
            };
            match rows.as_slice() {
                [r0, r1] => Ok(Document::Mat2(Mat2::new([parse_row(r0)?, parse_row(r1)?])?)),
                _ => Err(bad("a 2×2 matrix has two rows")),
            }
        }
        "dim_window" => {
            let depth = field(obj, "depth")?
                .as_u64()
                .and_then(|d| u32::try_from(d).ok())
                .ok_or_else(|| bad("\"depth\" must be a nonnegative integer"))?;
            let list = |key: &str| -> Result<Vec<Rational>> {
                array(field(obj, key)?, key)?.iter().map(parse_rational_value).collect()
            };
            let dim = WindowStep::from_parts(list("breaks")?, list("values")?)?;
            Ok(Document::DimWindow { depth, dim })
        }
        other => Err(bad(format!("unknown document type \"{other}\""))),
    }
}

pub fn parse_str(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    parse_value(&v)
}

pub fn to_string(doc: &Document) -> String {
    serde_json::to_string_pretty(&document_value(doc)).expect("values serialize")
}
