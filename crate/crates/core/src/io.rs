//! JSON forms of signals, step functions and certificates.
//!
//! Rationals travel as `"p/q"` strings and big integers as decimal strings.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value as Json};

use crate::constructions::{Condition, ConstructionCertificate, Status, Theorem};
use crate::continuum::StepFunction;
use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_int, parse_rat, Rat};
use crate::signal::{Amplitude, AnySignal, Block, BlockSignal, Caps, DenseSignal};

/// Anything a signal file may hold.
#[derive(Clone, Debug, PartialEq)]
pub enum SignalFile {
    Discrete(AnySignal),
    Step(StepFunction),
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(obj: &'a Json, key: &str) -> Result<&'a Json> {
    obj.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn as_str<'a>(v: &'a Json, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("`{what}` must be a string")))
}

fn as_array<'a>(v: &'a Json, what: &str) -> Result<&'a Vec<Json>> {
    v.as_array().ok_or_else(|| bad(format!("`{what}` must be an array")))
}

/// Accepts a JSON integer or a decimal string.
fn read_int(v: &Json, what: &str) -> Result<BigInt> {
    match v {
        Json::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("`{what}` must be an integer"))),
        Json::String(s) => parse_int(s),
        _ => Err(bad(format!("`{what}` must be an integer"))),
    }
}

fn read_rats(v: &Json, what: &str) -> Result<Vec<Rat>> {
    as_array(v, what)?.iter().map(|x| parse_rat(as_str(x, what)?)).collect()
}

fn ints_json(v: &[BigInt]) -> Json {
    Json::Array(v.iter().map(|x| Json::String(x.to_string())).collect())
}

fn rats_json(v: &[Rat]) -> Json {
    Json::Array(v.iter().map(|x| Json::String(format_rat(x))).collect())
}

pub fn block_to_json(b: &Block) -> Json {
    let amp = match &b.amp {
        Amplitude::Const(q) => json!({ "const": format_rat(q) }),
        Amplitude::PowerLaw(a) => json!({ "powerlaw": format_rat(a) }),
    };
    json!({ "start": b.start.to_string(), "end": b.end.to_string(), "amp": amp })
}

pub fn block_from_json(v: &Json) -> Result<Block> {
    let start = read_int(field(v, "start")?, "start")?;
    let end = read_int(field(v, "end")?, "end")?;
    let amp = field(v, "amp")?;
    let amp = if let Some(q) = amp.get("const") {
        Amplitude::Const(parse_rat(as_str(q, "const")?)?)
    } else if let Some(a) = amp.get("powerlaw") {
        Amplitude::PowerLaw(parse_rat(as_str(a, "powerlaw")?)?)
    } else {
        return Err(bad("`amp` needs `const` or `powerlaw`"));
    };
    Ok(Block { start, end, amp })
}

pub fn signal_to_json(signal: &AnySignal) -> Json {
    match signal {
        AnySignal::Dense(d) => {
            // small offsets stay JSON numbers, larger ones become strings
            let lo = match d.lo().to_i64() {
                Some(v) => json!(v),
                None => Json::String(d.lo().to_string()),
            };
            json!({ "type": "dense", "lo": lo, "values": rats_json(d.values()) })
        }
        AnySignal::Blocks(b) => json!({
            "type": "blocks",
            "blocks": b.blocks().iter().map(block_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn step_to_json(step: &StepFunction) -> Json {
    json!({
        "type": "step",
        "breakpoints": rats_json(step.breakpoints()),
        "values": rats_json(step.values()),
    })
}

pub fn signal_file_from_json(v: &Json, caps: &Caps) -> Result<SignalFile> {
    match as_str(field(v, "type")?, "type")? {
        "dense" => {
            let lo = read_int(field(v, "lo")?, "lo")?;
            let values = read_rats(field(v, "values")?, "values")?;
            Ok(SignalFile::Discrete(AnySignal::Dense(DenseSignal::new(lo, values)?)))
        }
        "blocks" => {
            let blocks = as_array(field(v, "blocks")?, "blocks")?
                .iter()
                .map(block_from_json)
                .collect::<Result<Vec<_>>>()?;
            Ok(SignalFile::Discrete(AnySignal::Blocks(BlockSignal::with_caps(
                blocks,
                caps.clone(),
            )?)))
        }
        "step" => {
            let breaks = read_rats(field(v, "breakpoints")?, "breakpoints")?;
            let values = read_rats(field(v, "values")?, "values")?;
            Ok(SignalFile::Step(StepFunction::new(breaks, values)?))
        }
        other => Err(bad(format!("unknown signal type `{other}`"))),
    }
}

pub fn certificate_to_json(cert: &ConstructionCertificate) -> Json {
    let mut m = Map::new();
    m.insert("theorem".into(), json!(cert.theorem.label()));
    m.insert("mode".into(), json!(cert.mode));
    m.insert("N".into(), ints_json(&cert.n));
    m.insert("L".into(), ints_json(&cert.l));
    m.insert(
        "conditions".into(),
        Json::Array(
            cert.conditions
                .iter()
                .map(|c| json!({ "name": c.name, "status": c.status.label(), "note": c.note }))
                .collect(),
        ),
    );
    if let Some(g) = &cert.growth {
        m.insert("growth".into(), json!(g));
    }
    if let Some(a) = &cert.alpha {
        m.insert("alpha".into(), json!(a));
    }
    if let Some(p) = &cert.p {
        m.insert("p".into(), json!(p));
    }
    m.insert("first_block".into(), json!(cert.first_block));
    m.insert("amplitudes".into(), json!(cert.amplitudes));
    if !cert.points.is_empty() {
        m.insert("points".into(), ints_json(&cert.points));
    }
    if let Some(k) = cert.threshold_k {
        m.insert("K".into(), json!(k));
    }
    if !cert.verifiable.is_empty() {
        m.insert("verifiable".into(), json!(cert.verifiable));
    }
    m.insert("notes".into(), json!(cert.notes));
    m.insert(
        "blocks".into(),
        Json::Array(cert.blocks.iter().map(block_to_json).collect()),
    );
    Json::Object(m)
}

pub fn certificate_from_json(v: &Json) -> Result<ConstructionCertificate> {
    let ints = |key: &str| -> Result<Vec<BigInt>> {
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(a) => as_array(a, key)?.iter().map(|x| read_int(x, key)).collect(),
        }
    };
    let strings = |key: &str| -> Result<Vec<String>> {
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(a) => as_array(a, key)?
                .iter()
                .map(|x| Ok(as_str(x, key)?.to_string()))
                .collect(),
        }
    };
    let opt_str = |key: &str| v.get(key).and_then(Json::as_str).map(String::from);
    let conditions = as_array(field(v, "conditions")?, "conditions")?
        .iter()
        .map(|c| {
            let status = match as_str(field(c, "status")?, "status")? {
                "satisfied" => Status::Satisfied,
                "relaxed" => Status::Relaxed,
                "violated" => Status::Violated,
                s => return Err(bad(format!("unknown status `{s}`"))),
            };
            Ok(Condition {
                name: as_str(field(c, "name")?, "name")?.into(),
                status,
                note: c.get("note").and_then(Json::as_str).unwrap_or("").into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let theorem = match as_str(field(v, "theorem")?, "theorem")? {
        "theorem27-discrete" => Theorem::T27Discrete,
        "theorem27-continuous" => Theorem::T27Continuous,
        "theorem29-linf" => Theorem::T29Linf,
        "theorem29-lp" => Theorem::T29Lp,
        t => return Err(bad(format!("unknown theorem `{t}`"))),
    };
    let blocks = match v.get("blocks") {
        None => Vec::new(),
        Some(b) => as_array(b, "blocks")?
            .iter()
            .map(block_from_json)
            .collect::<Result<_>>()?,
    };
    Ok(ConstructionCertificate {
        theorem,
        mode: as_str(field(v, "mode")?, "mode")?.into(),
        growth: opt_str("growth"),
        alpha: opt_str("alpha"),
        p: opt_str("p"),
        first_block: v.get("first_block").and_then(Json::as_u64).unwrap_or(1) as u32,
        n: ints("N")?,
        l: ints("L")?,
        amplitudes: strings("amplitudes")?,
        points: ints("points")?,
        threshold_k: v.get("K").and_then(Json::as_u64).map(|k| k as u32),
        verifiable: match v.get("verifiable") {
            None => Vec::new(),
            Some(a) => as_array(a, "verifiable")?
                .iter()
                .map(|x| x.as_bool().ok_or_else(|| bad("`verifiable` holds booleans")))
                .collect::<Result<_>>()?,
        },
        conditions,
        notes: strings("notes")?,
        blocks,
    })
}

/// Writes pretty JSON with a trailing newline.
pub fn write_json(path: &Path, value: &Json) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_json(path: &Path) -> Result<Json> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_signal_file(path: &Path, caps: &Caps) -> Result<SignalFile> {
    signal_file_from_json(&read_json(path)?, caps)
}
