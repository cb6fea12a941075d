//! Instance files: a JSON document with `"schema": 1`.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "dimension": 2,
//!   "tnorm": "min",
//!   "bounds": ["0", "1"],
//!   "points": { "p": ["1/2", "0.5"] },
//!   "polytopes": { "X": [["0.2", "0.8"], ["0.8", "0.2"]] },
//!   "boxes": { "B": { "lower": ["0", "0"], "upper": ["1", "3/10"] } },
//!   "params": { "r": 3 }
//! }
//! ```
//!
//! Numerals are strings (`"p/q"` or decimals) or JSON numbers; both are read
//! exactly. Point lists under `polytopes` keep their order, so operations that
//! report indices refer to positions in the file.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context as _, Result};
use maxmin::{IntervalBox, Point, SemiringBounds, Value};
use serde_json::{json, Map, Value as Json};

pub const SCHEMA_VERSION: u64 = 1;

const FIELDS: [&str; 8] = ["schema", "dimension", "tnorm", "bounds", "points", "polytopes", "boxes", "params"];

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub dimension: usize,
    pub tnorm: Option<String>,
    pub bounds: SemiringBounds,
    pub points: BTreeMap<String, Point>,
    pub polytopes: BTreeMap<String, Vec<Point>>,
    pub boxes: BTreeMap<String, IntervalBox>,
    pub params: Map<String, Json>,
}

fn numeral(v: &Json, path: &str) -> Result<Value> {
    let text = match v {
        Json::String(s) => s.clone(),
        Json::Number(n) => n.to_string(),
        _ => bail!("{path}: expected a numeral (\"p/q\", decimal string or number)"),
    };
    Value::parse(text.trim()).map_err(|e| anyhow!("{path}: {e}"))
}

fn coords(v: &Json, path: &str, dim: usize, bounds: &SemiringBounds) -> Result<Point> {
    let arr = v.as_array().ok_or_else(|| anyhow!("{path}: expected an array of {dim} numerals"))?;
    if arr.len() != dim {
        bail!("{path}: expected {dim} coordinates, got {}", arr.len());
    }
    let mut out = Vec::with_capacity(dim);
    for (i, c) in arr.iter().enumerate() {
        let at = format!("{path}[{i}]");
        let x = numeral(c, &at)?;
        if !bounds.contains(x) {
            bail!("{at}: {x} lies outside the bounds [{}, {}]", bounds.lo(), bounds.hi());
        }
        out.push(x);
    }
    Point::new(out).map_err(|e| anyhow!("{path}: {e}"))
}

fn object<'a>(v: &'a Json, path: &str) -> Result<&'a Map<String, Json>> {
    v.as_object().ok_or_else(|| anyhow!("{path}: expected an object"))
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        let doc: Json = serde_json::from_str(text).context("instance is not valid JSON")?;
        Instance::from_json(&doc)
    }

    pub fn from_json(doc: &Json) -> Result<Instance> {
        let top = object(doc, "$")?;
        for key in top.keys() {
            if !FIELDS.contains(&key.as_str()) {
                bail!("$.{key}: unknown field (expected one of {})", FIELDS.join(", "));
            }
        }
        match top.get("schema").and_then(Json::as_u64) {
            Some(SCHEMA_VERSION) => {}
            Some(other) => bail!("$.schema: unsupported version {other}, this build reads {SCHEMA_VERSION}"),
            None => bail!("$.schema: required, must be {SCHEMA_VERSION}"),
        }
        let dimension = top
            .get("dimension")
            .and_then(Json::as_u64)
            .filter(|&d| d >= 1)
            .ok_or_else(|| anyhow!("$.dimension: required positive integer"))? as usize;
        let tnorm = match top.get("tnorm") {
            None => None,
            Some(Json::String(s)) => Some(s.clone()),
            Some(_) => bail!("$.tnorm: expected a string"),
        };
        let bounds = match top.get("bounds") {
            None => SemiringBounds::unit(),
            Some(b) => {
                let arr = b
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| anyhow!("$.bounds: expected [lo, hi]"))?;
                let lo = numeral(&arr[0], "$.bounds[0]")?;
                let hi = numeral(&arr[1], "$.bounds[1]")?;
                SemiringBounds::new(lo, hi).map_err(|e| anyhow!("$.bounds: {e}"))?
            }
        };

        let mut points = BTreeMap::new();
        if let Some(v) = top.get("points") {
            for (name, p) in object(v, "$.points")? {
                points.insert(name.clone(), coords(p, &format!("$.points.{name}"), dimension, &bounds)?);
            }
        }
        let mut polytopes = BTreeMap::new();
        if let Some(v) = top.get("polytopes") {
            for (name, list) in object(v, "$.polytopes")? {
                let path = format!("$.polytopes.{name}");
                let arr = list.as_array().ok_or_else(|| anyhow!("{path}: expected an array of points"))?;
                if arr.is_empty() {
                    bail!("{path}: needs at least one point");
                }
                let pts = arr
                    .iter()
                    .enumerate()
                    .map(|(i, p)| coords(p, &format!("{path}[{i}]"), dimension, &bounds))
                    .collect::<Result<Vec<_>>>()?;
                polytopes.insert(name.clone(), pts);
            }
        }
        let mut boxes = BTreeMap::new();
        if let Some(v) = top.get("boxes") {
            for (name, b) in object(v, "$.boxes")? {
                let path = format!("$.boxes.{name}");
                let fields = object(b, &path)?;
                let corner = |key: &str| {
                    let at = format!("{path}.{key}");
                    let v = fields.get(key).ok_or_else(|| anyhow!("{at}: required"))?;
                    coords(v, &at, dimension, &bounds)
                };
                let bx = IntervalBox::new(corner("lower")?, corner("upper")?).map_err(|e| anyhow!("{path}: {e}"))?;
                boxes.insert(name.clone(), bx);
            }
        }
        let params = match top.get("params") {
            None => Map::new(),
            Some(v) => object(v, "$.params")?.clone(),
        };
        Ok(Instance {
            dimension,
            tnorm,
            bounds,
            points,
            polytopes,
            boxes,
            params,
        })
    }

    pub fn to_json(&self) -> Json {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA_VERSION));
        doc.insert("dimension".into(), json!(self.dimension));
        if let Some(t) = &self.tnorm {
            doc.insert("tnorm".into(), json!(t));
        }
        doc.insert("bounds".into(), json!([val(self.bounds.lo()), val(self.bounds.hi())]));
        if !self.points.is_empty() {
            let m: Map<String, Json> = self.points.iter().map(|(k, p)| (k.clone(), point(p))).collect();
            doc.insert("points".into(), Json::Object(m));
        }
        if !self.polytopes.is_empty() {
            let m: Map<String, Json> = self.polytopes.iter().map(|(k, l)| (k.clone(), points(l))).collect();
            doc.insert("polytopes".into(), Json::Object(m));
        }
        if !self.boxes.is_empty() {
            let m: Map<String, Json> = self.boxes.iter().map(|(k, b)| (k.clone(), interval_box(b))).collect();
            doc.insert("boxes".into(), Json::Object(m));
        }
        if !self.params.is_empty() {
            doc.insert("params".into(), Json::Object(self.params.clone()));
        }
        Json::Object(doc)
    }

    #[cfg(test)]
    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    /// Every point must lie in `bounds`; used when `--bounds` narrows the file's bounds.
    pub fn check_bounds(&self, bounds: &SemiringBounds) -> Result<()> {
        let named = self
            .points
            .iter()
            .map(|(k, p)| (format!("$.points.{k}"), p))
            .chain(self.polytopes.iter().flat_map(|(k, l)| {
                l.iter().enumerate().map(move |(i, p)| (format!("$.polytopes.{k}[{i}]"), p))
            }))
            .chain(self.boxes.iter().flat_map(|(k, b)| {
                [(format!("$.boxes.{k}.lower"), b.lower()), (format!("$.boxes.{k}.upper"), b.upper())]
            }));
        for (path, p) in named {
            p.check_bounds(bounds).map_err(|e| anyhow!("{path}: {e}"))?;
        }
        Ok(())
    }

    pub fn point(&self, name: &str) -> Result<&Point> {
        self.points
            .get(name)
            .ok_or_else(|| anyhow!("$.points.{name}: required by this command"))
    }

    pub fn point_list(&self, name: &str) -> Result<&[Point]> {
        self.polytopes
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| anyhow!("$.polytopes.{name}: required by this command"))
    }

    pub fn interval_box(&self, name: &str) -> Result<&IntervalBox> {
        self.boxes
            .get(name)
            .ok_or_else(|| anyhow!("$.boxes.{name}: required by this command"))
    }

    /// A list of polytope names under `params.<key>`, or every polytope
    /// whose name starts with `prefix`, in name order.
    pub fn polytope_names(&self, key: &str, prefix: &str) -> Result<Vec<String>> {
        let names: Vec<String> = match self.params.get(key) {
            Some(Json::Array(a)) => a
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    n.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| anyhow!("$.params.{key}[{i}]: expected a polytope name"))
                })
                .collect::<Result<_>>()?,
            Some(_) => bail!("$.params.{key}: expected an array of polytope names"),
            None => self.polytopes.keys().filter(|k| k.starts_with(prefix)).cloned().collect(),
        };
        for (i, n) in names.iter().enumerate() {
            if !self.polytopes.contains_key(n) {
                bail!("$.params.{key}[{i}]: no polytope named {n:?}");
            }
        }
        if names.is_empty() {
            bail!("$.params.{key}: no polytopes selected (list them or name them {prefix}...)");
        }
        Ok(names)
    }

    pub fn param_usize(&self, key: &str) -> Result<Option<usize>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|n| Some(n as usize))
                .ok_or_else(|| anyhow!("$.params.{key}: expected a non-negative integer")),
        }
    }

    pub fn param_bool(&self, key: &str) -> Result<bool> {
        match self.params.get(key) {
            None => Ok(false),
            Some(Json::Bool(b)) => Ok(*b),
            Some(_) => bail!("$.params.{key}: expected true or false"),
        }
    }
}

pub fn val(v: Value) -> Json {
    Json::String(v.to_string())
}

pub fn point(p: &Point) -> Json {
    Json::Array(p.coords().iter().map(|&c| val(c)).collect())
}

pub fn points(list: &[Point]) -> Json {
    Json::Array(list.iter().map(point).collect())
}

pub fn interval_box(b: &IntervalBox) -> Json {
    json!({ "lower": point(b.lower()), "upper": point(b.upper()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "schema": 1, "dimension": 2, "tnorm": "min", "bounds": ["0", "1"],
        "points": { "p": ["1/2", 0.5] },
        "polytopes": { "X": [["0.2", "0.8"], ["0.8", "0.2"]] },
        "boxes": { "B": { "lower": ["0", "0"], "upper": ["1", "3/10"] } },
        "params": { "r": 3 }
    }"#;

    #[test]
    fn round_trip() {
        let a = Instance::parse(SAMPLE).unwrap();
        assert_eq!(a.points["p"].coords(), [Value::new(1, 2), Value::new(1, 2)]);
        let b = Instance::parse(&a.to_string_pretty()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn diagnostics_carry_positions() {
        let bad = SAMPLE.replace("\"0.8\", \"0.2\"", "\"0.8\", \"1.2\"");
        let err = Instance::parse(&bad).unwrap_err().to_string();
        assert!(err.starts_with("$.polytopes.X[1][1]"), "{err}");
        let short = SAMPLE.replace("[\"0.2\", \"0.8\"]", "[\"0.2\"]");
        assert!(Instance::parse(&short).unwrap_err().to_string().contains("$.polytopes.X[0]"));
        let err = format!("{:#}", Instance::parse("{\"schema\": 1,").unwrap_err());
        assert!(err.contains("line"), "{err}");
        assert!(Instance::parse(r#"{"schema": 2, "dimension": 1}"#).is_err());
        assert!(Instance::parse(r#"{"schema": 1, "dimension": 1, "extra": 0}"#).is_err());
    }
}
