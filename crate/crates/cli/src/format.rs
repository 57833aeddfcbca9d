//! JSON encodings of the library types. Rationals are written as `"p/q"`
//! strings; integers that fit in 64 bits are written as numbers.

use conley_core::conley::{ConleyIndexData, Orientation};
use conley_core::degree::{ExampleKind, SampleMetadata, SampledLoop, SampledSphereMap, Vec2, Vec3};
use conley_core::dold::{DoldCoefficients, IndexSequence};
use conley_core::finite_map::{CycleCounts, FiniteMap};
use conley_core::linalg::RationalMatrix;
use conley_core::radial::RadialModel;
use conley_core::realize::{ConditionViolation, RealizationWitness};
use conley_core::{Error, Rational, Result};
use dashu_int::IBig;
use serde_json::{json, Map, Value};

fn format_error(what: &str, detail: impl std::fmt::Display) -> Error {
    Error::Format(format!("{what}: {detail}"))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| format_error(what, "expected a JSON object"))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| format_error(what, "expected a JSON array"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| format_error(what, format!("missing field \"{key}\"")))
}

fn natural(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| format_error(what, format!("expected a nonnegative integer, got {v}")))
}

fn natural_field(obj: &Map<String, Value>, key: &str, what: &str) -> Result<usize> {
    natural(field(obj, key, what)?, &format!("{what}.{key}"))
}

fn key_index(key: &str, what: &str) -> Result<usize> {
    match key.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format_error(what, format!("key \"{key}\" is not a positive integer"))),
    }
}

pub fn rational(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .parse::<Rational>()
            .map_err(|_| format_error(what, format!("\"{s}\" is not a rational of the form p/q"))),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_i64)
            .ok_or_else(|| format_error(what, format!("{n} is not an integer; write rationals as \"p/q\""))),
        other => Err(format_error(what, format!("expected \"p/q\", got {other}"))),
    }
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn integer(v: &Value, what: &str) -> Result<IBig> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(IBig::from)
            .ok_or_else(|| format_error(what, format!("{n} is not an integer"))),
        Value::String(s) => s
            .parse::<IBig>()
            .map_err(|_| format_error(what, format!("\"{s}\" is not an integer"))),
        other => Err(format_error(what, format!("expected an integer, got {other}"))),
    }
}

pub fn integer_json(i: &IBig) -> Value {
    match i64::try_from(i) {
        Ok(v) => json!(v),
        Err(_) => Value::String(i.to_string()),
    }
}

pub fn matrix(v: &Value) -> Result<RationalMatrix> {
    let what = "matrix";
    let obj = object(v, what)?;
    let rows = natural_field(obj, "rows", what)?;
    let cols = natural_field(obj, "cols", what)?;
    let entries = array(field(obj, "entries", what)?, "matrix.entries")?
        .iter()
        .enumerate()
        .map(|(i, e)| rational(e, &format!("matrix.entries[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != rows * cols {
        return Err(format_error(
            what,
            format!("{} entries for a {rows}x{cols} matrix", entries.len()),
        ));
    }
    RationalMatrix::new(rows, cols, entries)
}

pub fn matrix_json(m: &RationalMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(rational_json).collect::<Vec<_>>(),
    })
}

pub fn finite_map(v: &Value) -> Result<FiniteMap> {
    let what = "map";
    let obj = object(v, what)?;
    let size = natural_field(obj, "size", what)?;
    let images = array(field(obj, "images", what)?, "map.images")?
        .iter()
        .map(|x| natural(x, "map.images"))
        .collect::<Result<Vec<_>>>()?;
    if images.len() != size {
        return Err(format_error(what, format!("{} images for size {size}", images.len())));
    }
    FiniteMap::new(images).map_err(|e| format_error(what, e))
}

pub fn finite_map_json(m: &FiniteMap) -> Value {
    json!({ "size": m.size(), "images": m.images() })
}

pub fn cycle_counts(v: &Value) -> Result<CycleCounts> {
    let what = "cycle counts";
    let pairs = object(v, what)?
        .iter()
        .map(|(k, c)| Ok((key_index(k, what)?, natural(c, what)?)))
        .collect::<Result<Vec<_>>>()?;
    CycleCounts::from_pairs(pairs).map_err(|e| format_error(what, e))
}

pub fn cycle_counts_json(c: &CycleCounts) -> Value {
    Value::Object(c.iter().map(|(k, n)| (k.to_string(), json!(n))).collect())
}

pub fn sequence(v: &Value) -> Result<IndexSequence> {
    let what = "sequence";
    let obj = object(v, what)?;
    let prefix = array(field(obj, "prefix", what)?, "sequence.prefix")?
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("sequence.prefix[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let period = natural_field(obj, "period", what)?;
    IndexSequence::new(prefix, period)
}

pub fn sequence_json(s: &IndexSequence) -> Value {
    json!({
        "prefix": s.prefix().iter().map(integer_json).collect::<Vec<_>>(),
        "period": s.period(),
    })
}

pub fn coefficients(v: &Value) -> Result<DoldCoefficients> {
    let what = "coefficients";
    let pairs = object(v, what)?
        .iter()
        .map(|(k, a)| Ok((key_index(k, what)?, rational(a, &format!("coefficients[{k}]"))?)))
        .collect::<Result<Vec<_>>>()?;
    DoldCoefficients::from_pairs(pairs).map_err(|e| format_error(what, e))
}

pub fn coefficients_json(a: &DoldCoefficients) -> Value {
    Value::Object(a.iter().map(|(k, v)| (k.to_string(), rational_json(v))).collect())
}

pub fn orientation(v: &Value) -> Result<Orientation> {
    let sign = v
        .as_i64()
        .ok_or_else(|| format_error("orientation", format!("expected 1 or -1, got {v}")))?;
    Orientation::from_sign(sign).map_err(|e| format_error("orientation", e))
}

fn matrices(v: &Value, what: &str) -> Result<Vec<RationalMatrix>> {
    array(v, what)?.iter().map(matrix).collect()
}

pub fn conley_data(v: &Value) -> Result<ConleyIndexData> {
    let what = "conley data";
    let obj = object(v, what)?;
    let d = natural_field(obj, "ambient_dim", what)?;
    let o = orientation(field(obj, "orientation", what)?)?;
    let reps = matrices(field(obj, "reps", what)?, "conley data.reps")?;
    ConleyIndexData::new(d, o, reps)
}

pub fn conley_data_json(data: &ConleyIndexData) -> Value {
    json!({
        "ambient_dim": data.ambient_dim(),
        "orientation": data.orientation().sign(),
        "reps": data.reps().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn radial_model(v: &Value) -> Result<RadialModel> {
    let what = "radial model";
    let obj = object(v, what)?;
    let d = natural_field(obj, "base_dim", what)?;
    let o = orientation(field(obj, "orientation", what)?)?;
    let actions = matrices(field(obj, "actions", what)?, "radial model.actions")?;
    RadialModel::new(d, o, actions)
}

pub fn radial_model_json(m: &RadialModel) -> Value {
    json!({
        "base_dim": m.base_dim(),
        "orientation": m.orientation().sign(),
        "actions": m.actions().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn violation_json(v: &ConditionViolation) -> Value {
    let a = match v {
        ConditionViolation::NonIntegral { a, .. }
        | ConditionViolation::FirstTooLarge { a }
        | ConditionViolation::OddPositive { a, .. } => a,
    };
    json!({
        "clause": v.clause(),
        "k": v.k(),
        "a": rational_json(a),
        "message": v.to_string(),
    })
}

pub fn witness_json(w: &RealizationWitness) -> Value {
    json!({
        "a": coefficients_json(&w.a),
        "b": cycle_counts_json(&w.b),
        "c": cycle_counts_json(&w.c),
        "phi": finite_map_json(&w.phi),
        "phi_prime": finite_map_json(&w.phi_prime),
        "conley": conley_data_json(&w.data),
        "verified_window": w.verified_window,
        "sequence": sequence_json(&w.sequence),
    })
}

fn vector<const N: usize>(v: &Value, what: &str) -> Result<[Rational; N]> {
    let items = array(v, what)?;
    if items.len() != N {
        return Err(format_error(what, format!("expected {N} coordinates, got {}", items.len())));
    }
    let values = items
        .iter()
        .map(|x| rational(x, what))
        .collect::<Result<Vec<_>>>()?;
    Ok(values.try_into().unwrap_or_else(|_| unreachable!("length checked")))
}

fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn sampled_loop(v: &Value) -> Result<SampledLoop> {
    let what = "loop";
    let obj = object(v, what)?;
    let radius = rational(field(obj, "radius", what)?, "loop.radius")?;
    let samples = array(field(obj, "samples", what)?, "loop.samples")?
        .iter()
        .map(|s| vector::<2>(s, "loop.samples"))
        .collect::<Result<Vec<Vec2>>>()?;
    SampledLoop::new(samples, radius)
}

pub fn sampled_loop_json(l: &SampledLoop) -> Value {
    json!({
        "radius": rational_json(l.radius()),
        "samples": l.samples().iter().map(|s| vector_json(s)).collect::<Vec<_>>(),
    })
}

pub fn sphere_map(v: &Value) -> Result<SampledSphereMap> {
    let what = "sphere";
    let obj = object(v, what)?;
    let points = |key: &str| -> Result<Vec<Vec3>> {
        array(field(obj, key, what)?, &format!("sphere.{key}"))?
            .iter()
            .map(|p| vector::<3>(p, &format!("sphere.{key}")))
            .collect()
    };
    let vertices = points("vertices")?;
    let values = points("values")?;
    let triangles = array(field(obj, "triangles", what)?, "sphere.triangles")?
        .iter()
        .map(|t| {
            let idx = array(t, "sphere.triangles")?
                .iter()
                .map(|i| natural(i, "sphere.triangles"))
                .collect::<Result<Vec<_>>>()?;
            <[usize; 3]>::try_from(idx)
                .map_err(|_| format_error("sphere.triangles", "expected three vertex indices"))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledSphereMap::new(vertices, values, triangles)
}

pub fn sphere_map_json(s: &SampledSphereMap) -> Value {
    json!({
        "vertices": s.vertices().iter().map(|p| vector_json(p)).collect::<Vec<_>>(),
        "values": s.values().iter().map(|p| vector_json(p)).collect::<Vec<_>>(),
        "triangles": s.triangles(),
    })
}

pub fn example_kind(s: &str) -> Result<ExampleKind> {
    match s {
        "planar_poly" => Ok(ExampleKind::PlanarPoly),
        "volume_preserving_3d" => Ok(ExampleKind::VolumePreserving3d),
        other => Err(format_error(
            "kind",
            format!("unknown example \"{other}\"; expected planar_poly or volume_preserving_3d"),
        )),
    }
}

pub fn example_kind_name(kind: ExampleKind) -> &'static str {
    match kind {
        ExampleKind::PlanarPoly => "planar_poly",
        ExampleKind::VolumePreserving3d => "volume_preserving_3d",
    }
}

pub fn metadata_json(m: &SampleMetadata) -> Value {
    let mut out = Map::new();
    out.insert("kind".into(), json!(example_kind_name(m.kind)));
    out.insert("l".into(), json!(m.l));
    out.insert("radius".into(), rational_json(&m.radius));
    out.insert("requested_resolution".into(), json!(m.requested_resolution));
    out.insert("resolution".into(), json!(m.resolution));
    if let Some(k) = m.subdivisions {
        out.insert("subdivisions".into(), json!(k));
    }
    if let Some(t) = &m.fiber_tolerance {
        out.insert("fiber_tolerance".into(), rational_json(t));
    }
    if let Some(e) = m.max_fiber_error {
        out.insert("max_fiber_error".into(), json!(format!("{e:e}")));
    }
    Value::Object(out)
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}
