//! JSON and CSV encodings. Floats are written at 12 significant digits so identical inputs
//! give identical bytes; non-finite values become the strings `"inf"`, `"-inf"`, `"nan"`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rsc_core::extremal::TailEstimate;
use rsc_core::rational::{fmt_q, parse_q, Q};
use rsc_core::stepfn::{IntervalDomain, PiecewiseFn, StepFnError};
use rsc_core::verdicts::{OptimalSpaceDesc, Verdict};

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn num(x: f64) -> Value {
    if x.is_nan() {
        Value::from("nan")
    } else if x.is_infinite() {
        Value::from(if x > 0.0 { "inf" } else { "-inf" })
    } else {
        json!(round12(x))
    }
}

/// CSV cell for a float, same rounding as [`num`].
pub fn cell(x: f64) -> String {
    match num(x) {
        Value::String(s) => s,
        v => v.to_string(),
    }
}

pub fn opt_cell(x: Option<f64>) -> String {
    x.map(cell).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainTag {
    Halfline,
    Unit,
}

impl From<IntervalDomain> for DomainTag {
    fn from(d: IntervalDomain) -> Self {
        match d {
            IntervalDomain::HalfLine => DomainTag::Halfline,
            IntervalDomain::UnitInterval => DomainTag::Unit,
        }
    }
}

impl From<DomainTag> for IntervalDomain {
    fn from(d: DomainTag) -> Self {
        match d {
            DomainTag::Halfline => IntervalDomain::HalfLine,
            DomainTag::Unit => IntervalDomain::UnitInterval,
        }
    }
}

/// Wire form of a step function: breaks are segment ends, rationals are `"n"` or `"n/d"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepFnJson {
    pub domain: DomainTag,
    pub breaks: Vec<String>,
    pub values: Vec<String>,
    #[serde(default = "zero_string")]
    pub tail: String,
}

fn zero_string() -> String {
    "0".into()
}

#[derive(Debug, thiserror::Error)]
pub enum StepFnDecodeError {
    #[error("bad step function JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational `{0}` in step function")]
    Rational(String),
    #[error(transparent)]
    StepFn(#[from] StepFnError),
}

impl From<&PiecewiseFn> for StepFnJson {
    fn from(f: &PiecewiseFn) -> Self {
        StepFnJson {
            domain: f.domain().into(),
            breaks: f.breaks().iter().map(fmt_q).collect(),
            values: f.values().iter().map(fmt_q).collect(),
            tail: fmt_q(f.tail()),
        }
    }
}

impl StepFnJson {
    pub fn to_fn(&self) -> Result<PiecewiseFn, StepFnDecodeError> {
        let conv = |s: &String| parse_q(s).map_err(|_| StepFnDecodeError::Rational(s.clone()));
        let breaks = self.breaks.iter().map(conv).collect::<Result<Vec<Q>, _>>()?;
        let values = self.values.iter().map(conv).collect::<Result<Vec<Q>, _>>()?;
        Ok(PiecewiseFn::new(self.domain.clone().into(), breaks, values, conv(&self.tail)?)?)
    }
}

pub fn decode_step_fn(text: &str) -> Result<PiecewiseFn, StepFnDecodeError> {
    serde_json::from_str::<StepFnJson>(text)?.to_fn()
}

pub fn encode_step_fn(f: &PiecewiseFn) -> Value {
    serde_json::to_value(StepFnJson::from(f)).expect("step function JSON")
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "compact": v.compact,
        "branch": v.branch.as_str(),
        "trace": v.trace.iter().map(|e| json!({"id": e.id.as_str(), "holds": e.holds})).collect::<Vec<_>>(),
        "provenance": v.provenance.as_str(),
        "notes": v.notes,
    })
}

/// `L(r=..,s=..,g=..)` literal for an optimal space; it parses back with the space parser.
pub fn optimal_literal(d: &OptimalSpaceDesc) -> String {
    match d {
        OptimalSpaceDesc::Lz { r, s, gamma } => format!("L(r={r},s={s},g={})", fmt_q(gamma)),
        OptimalSpaceDesc::LzDoubleLog { q } => format!("L(r=inf,s={q},g={},b=-1)", fmt_q(&-q.recip_q())),
        OptimalSpaceDesc::Linf => "Linf".into(),
    }
}

pub fn optimal_json(d: &OptimalSpaceDesc, notes: &[String]) -> Value {
    let mut v = match d {
        OptimalSpaceDesc::Lz { r, s, gamma } => {
            json!({"shape": "Lz", "r": r.to_string(), "s": s.to_string(), "gamma": fmt_q(gamma)})
        }
        OptimalSpaceDesc::LzDoubleLog { q } => json!({
            "shape": "LzDoubleLog",
            "r": "inf",
            "s": q.to_string(),
            "gamma": fmt_q(&-q.recip_q()),
            "double_log": "-1",
        }),
        OptimalSpaceDesc::Linf => json!({"shape": "Linf"}),
    };
    v["literal"] = Value::from(optimal_literal(d));
    v["notes"] = json!(notes);
    v
}

pub const TAIL_HEADER: [&str; 5] = ["a", "estimate", "floor", "certificate", "family"];

pub fn tail_record(e: &TailEstimate) -> [String; 5] {
    [cell(e.a), cell(e.estimate), cell(e.floor), opt_cell(e.certificate), e.family.to_string()]
}

pub fn tail_json(e: &TailEstimate) -> Value {
    json!({
        "a": num(e.a),
        "estimate": num(e.estimate),
        "floor": num(e.floor),
        "certificate": e.certificate.map(num),
        "family": e.family,
        "best": encode_step_fn(&e.best),
    })
}

pub fn write_csv<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

/// Left-aligned columns separated by two spaces.
pub fn write_table<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let rows: Vec<[String; N]> = rows.into_iter().collect();
    let mut width = header.map(str::len);
    for r in &rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: [&str; N]| {
        let mut s: String = cells.iter().zip(width).map(|(c, w)| format!("{c:<w$}  ")).collect();
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header);
    for r in &rows {
        out.push_str(&line(core::array::from_fn(|i| r[i].as_str())));
    }
    out
}
