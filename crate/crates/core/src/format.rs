//! JSON documents for instances and schedules.
//!
//! Instance documents carry exactly the fields `alpha`, `beta`, `noise`,
//! `mode`, `metric {dim, C}`, `precision` and `links [{id, s, r, weight}]`.
//! Coordinates are JSON numbers, or decimal integer strings in `log2`
//! precision. Unknown fields are rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{Result, SinrError};
use crate::instance::{Instance, Link, Mode, Point, PowerAssignment, Precision};
use crate::metric::{FadingParams, MetricSpec};
use crate::schedule::{CapacityResult, Schedule};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    dim: u32,
    #[serde(rename = "C")]
    c: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawCoord {
    Num(Number),
    Str(String),
}

fn default_weight() -> f64 {
    1.0
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    id: u64,
    s: Vec<RawCoord>,
    r: Vec<RawCoord>,
    #[serde(default = "default_weight")]
    weight: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    alpha: f64,
    beta: f64,
    #[serde(default)]
    noise: f64,
    #[serde(default)]
    mode: Mode,
    metric: RawMetric,
    #[serde(default)]
    precision: Precision,
    links: Vec<RawLink>,
}

fn parse_error(context: impl Into<String>, message: impl Into<String>) -> SinrError {
    SinrError::Parse { context: context.into(), message: message.into() }
}

fn point_from_raw(coords: &[RawCoord], precision: Precision, ctx: &str) -> Result<Point> {
    match precision {
        Precision::Float => coords
            .iter()
            .enumerate()
            .map(|(k, c)| match c {
                RawCoord::Num(n) => n
                    .as_f64()
                    .ok_or_else(|| parse_error(format!("{ctx}[{k}]"), "coordinate out of range")),
                RawCoord::Str(_) => Err(parse_error(
                    format!("{ctx}[{k}]"),
                    "string coordinates need precision \"log2\"",
                )),
            })
            .collect::<Result<Vec<f64>>>()
            .map(Point::Real),
        Precision::Log2 => {
            if coords.len() != 1 {
                return Err(parse_error(
                    ctx,
                    format!("log2 precision takes exactly one coordinate, got {}", coords.len()),
                ));
            }
            let text = match &coords[0] {
                RawCoord::Str(s) => s.clone(),
                RawCoord::Num(n) if n.is_i64() || n.is_u64() => n.to_string(),
                RawCoord::Num(n) => {
                    return Err(parse_error(format!("{ctx}[0]"), format!("{n} is not an integer")))
                }
            };
            text.parse::<BigInt>()
                .map(Point::Int)
                .map_err(|e| parse_error(format!("{ctx}[0]"), format!("bad integer {text:?}: {e}")))
        }
    }
}

fn point_to_raw(p: &Point) -> Vec<RawCoord> {
    match p {
        Point::Real(c) => c
            .iter()
            .map(|&x| RawCoord::Num(Number::from_f64(x).expect("finite coordinate")))
            .collect(),
        Point::Int(x) => vec![RawCoord::Str(x.to_string())],
    }
}

fn json_context(e: &serde_json::Error) -> String {
    format!("line {}, column {}", e.line(), e.column())
}

/// Parses an instance document and validates it.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| parse_error(json_context(&e), e.to_string()))?;
    let metric = MetricSpec::new(raw.metric.dim, raw.metric.c).map_err(|e| match e {
        SinrError::FadingViolation { .. } => e,
        other => parse_error("metric", other.to_string()),
    })?;
    let fading = FadingParams::new(raw.alpha, metric).map_err(|e| match e {
        SinrError::FadingViolation { .. } => e,
        other => parse_error("alpha", other.to_string()),
    })?;
    let links = raw
        .links
        .iter()
        .enumerate()
        .map(|(i, l)| {
            Ok(Link {
                id: l.id,
                sender: point_from_raw(&l.s, raw.precision, &format!("links[{i}].s"))?,
                receiver: point_from_raw(&l.r, raw.precision, &format!("links[{i}].r"))?,
                weight: l.weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inst = Instance {
        fading,
        beta: raw.beta,
        noise: raw.noise,
        mode: raw.mode,
        precision: raw.precision,
        links,
    };
    inst.validate().map_err(|e| match e {
        SinrError::Validation(msg) => parse_error("instance", msg),
        other => other,
    })?;
    Ok(inst)
}

fn raw_instance(inst: &Instance) -> RawInstance {
    RawInstance {
        alpha: inst.alpha(),
        beta: inst.beta,
        noise: inst.noise,
        mode: inst.mode,
        metric: RawMetric { dim: inst.fading.metric.dim, c: inst.fading.metric.packing_constant },
        precision: inst.precision,
        links: inst
            .links
            .iter()
            .map(|l| RawLink {
                id: l.id,
                s: point_to_raw(&l.sender),
                r: point_to_raw(&l.receiver),
                weight: l.weight,
            })
            .collect(),
    }
}

/// Pretty-printed instance document.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&raw_instance(inst)).expect("serializable");
    s.push('\n');
    s
}

/// Compact single-line form used for content hashing.
pub fn canonical_instance(inst: &Instance) -> String {
    serde_json::to_string(&raw_instance(inst)).expect("serializable")
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Largest total affectance per slot; `null` when unbounded.
    #[serde(default)]
    pub slot_max_affectance: Vec<Option<f64>>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default, flatten)]
    pub extra: BTreeMap<String, Value>,
}

/// A schedule or capacity result keyed by link ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleDoc {
    /// `schedule` or `capacity`.
    pub kind: String,
    pub algorithm: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    pub p_certified: f64,
    /// `null` when slots are only claimed feasible under power control.
    pub power: Option<PowerAssignment>,
    pub mode: Mode,
    pub slots: Vec<Vec<u64>>,
    #[serde(default)]
    pub diagnostics: Diagnostics,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl ScheduleDoc {
    pub fn from_schedule(
        inst: &Instance,
        sched: &Schedule,
        algorithm: &str,
        params: BTreeMap<String, Value>,
    ) -> Self {
        Self {
            kind: "schedule".into(),
            algorithm: algorithm.into(),
            params,
            p_certified: sched.p_certified,
            power: Some(sched.power),
            mode: sched.mode,
            slots: sched.slots.iter().map(|s| inst.ids(s)).collect(),
            diagnostics: Diagnostics {
                slot_max_affectance: sched.slot_max_affectance(inst).into_iter().map(finite).collect(),
                ..Default::default()
            },
        }
    }

    pub fn from_capacity(
        inst: &Instance,
        res: &CapacityResult,
        algorithm: &str,
        params: BTreeMap<String, Value>,
    ) -> Self {
        let mut doc = Self::from_schedule(inst, &res.as_schedule(inst), algorithm, params);
        doc.kind = "capacity".into();
        doc.diagnostics.extra.insert("size".into(), Value::from(res.size()));
        doc.diagnostics
            .extra
            .insert("total_weight".into(), Number::from_f64(res.total_weight).map_or(Value::Null, Value::Number));
        doc
    }

    /// Slots as instance indices.
    pub fn resolve_slots(&self, inst: &Instance) -> Result<Vec<Vec<usize>>> {
        self.slots
            .iter()
            .enumerate()
            .map(|(k, slot)| {
                slot.iter()
                    .map(|&id| {
                        inst.index_of_id(id).ok_or_else(|| {
                            parse_error(format!("slots[{k}]"), format!("unknown link id {id}"))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Slots found by the exhaustive oracle, feasible under power control.
    pub fn from_power_control(
        inst: &Instance,
        slots: &[Vec<usize>],
        algorithm: &str,
        params: BTreeMap<String, Value>,
    ) -> Self {
        Self {
            kind: "schedule".into(),
            algorithm: algorithm.into(),
            params,
            p_certified: inst.beta,
            power: None,
            mode: inst.mode,
            slots: slots.iter().map(|s| inst.ids(s)).collect(),
            diagnostics: Diagnostics::default(),
        }
    }

    /// The fixed-power schedule this document describes.
    pub fn to_schedule(&self, inst: &Instance) -> Result<Schedule> {
        let power = self.power.ok_or_else(|| {
            parse_error("power", "document claims power-control feasibility only")
        })?;
        Ok(Schedule { slots: self.resolve_slots(inst)?, power, mode: self.mode, p_certified: self.p_certified })
    }
}

pub fn parse_schedule(text: &str) -> Result<ScheduleDoc> {
    serde_json::from_str(text).map_err(|e| parse_error(json_context(&e), e.to_string()))
}

pub fn serialize_schedule(doc: &ScheduleDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}
