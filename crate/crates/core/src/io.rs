//! Versioned JSON input documents.
//!
//! ```json
//! {"schema": 1, "name": "SQ", "vertices": [[0,0],[1,0],[1,1],[0,1]], "matrix": [[1,0]]}
//! {"schema": 1, "name": "PENT", "points": [[0,0],[2,0],[3,2],[1,4],[-1,2]]}
//! {"schema": 1, "name": "C2FAN", "rays": [[1,0],[0,1]], "cones": [[0,1]],
//!  "sublattice": [[0,1]], "deltas": ["σ1,0", "σ12,σ2"]}
//! ```
//!
//! Numbers are JSON integers or strings `"p/q"`. A cone name `σ<digits>`
//! lists 1-based ray indices (one digit each); `0` is the zero cone.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyhedron::Cone;
use crate::polytope::Polytope;
use crate::projection::make_projection;
use crate::rational::{format_rational, parse_rational, Rational, Vector};
use crate::secondary::PointConfiguration;
use crate::toric::{LatticeFan, SublatticeData};
use crate::chamber::PolytopeProjection;

pub const SCHEMA: u64 = 1;

/// A parsed input file, holding exact values as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub vertices: Option<Vec<Vector>>,
    pub matrix: Option<Vec<Vector>>,
    pub points: Option<Vec<Vector>>,
    pub rays: Option<Vec<Vector>>,
    pub cones: Option<Vec<Vec<usize>>>,
    pub sublattice: Option<Vec<Vector>>,
    pub deltas: Vec<String>,
}

/// What a document describes, by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// `vertices` + `matrix`.
    Projection,
    /// `vertices` only.
    Polytope,
    /// `points`: a configuration viewed as a projection of a simplex.
    Points,
    /// `rays` + `cones`.
    Fan,
    /// `matrix` only.
    Matrix,
}

fn number(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| Error::Parse(format!("{field}: {n} is not an integer; write fractions as \"p/q\""))),
        Value::String(s) => parse_rational(s).map_err(|e| Error::Parse(format!("{field}: {e}"))),
        other => Err(Error::Parse(format!("{field}: expected a number, got {other}"))),
    }
}

fn vectors(v: &Value, field: &str) -> Result<Vec<Vector>> {
    let rows = v.as_array().ok_or_else(|| Error::Schema(format!("{field} must be a list of vectors")))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let entries = row.as_array().ok_or_else(|| Error::Schema(format!("{field}[{i}] must be a list")))?;
            entries.iter().enumerate().map(|(j, x)| number(x, &format!("{field}[{i}][{j}]"))).collect()
        })
        .collect()
}

fn index_lists(v: &Value, field: &str) -> Result<Vec<Vec<usize>>> {
    let rows = v.as_array().ok_or_else(|| Error::Schema(format!("{field} must be a list of index lists")))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let entries = row.as_array().ok_or_else(|| Error::Schema(format!("{field}[{i}] must be a list")))?;
            entries
                .iter()
                .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| Error::Schema(format!("{field}[{i}]: bad index {x}"))))
                .collect()
        })
        .collect()
}

fn vectors_json(v: &[Vector]) -> Value {
    Value::Array(v.iter().map(|r| Value::Array(r.iter().map(rational_json).collect())).collect())
}

/// Integers stay JSON integers when they fit; everything else is `"p/q"`.
pub fn rational_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Ok(i) = i64::try_from(q.to_integer()) {
            return json!(i);
        }
    }
    Value::String(format_rational(q))
}

const KEYS: [&str; 9] = ["schema", "name", "vertices", "matrix", "points", "rays", "cones", "sublattice", "deltas"];

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}: {e}", e.line())))?;
        let obj = v.as_object().ok_or_else(|| Error::Schema("top level must be an object".into()))?;
        match obj.get("schema").and_then(Value::as_u64) {
            Some(SCHEMA) => {}
            other => return Err(Error::Schema(format!("unsupported schema {other:?}; expected {SCHEMA}"))),
        }
        if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::Schema(format!("unknown key {k:?}")));
        }
        let opt = |k: &str| -> Result<Option<Vec<Vector>>> { obj.get(k).map(|x| vectors(x, k)).transpose() };
        let doc = Document {
            name: obj.get("name").and_then(Value::as_str).unwrap_or("unnamed").to_string(),
            vertices: opt("vertices")?,
            matrix: opt("matrix")?,
            points: opt("points")?,
            rays: opt("rays")?,
            cones: obj.get("cones").map(|x| index_lists(x, "cones")).transpose()?,
            sublattice: opt("sublattice")?,
            deltas: match obj.get("deltas") {
                None => Vec::new(),
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Schema("deltas must be strings".into())))
                    .collect::<Result<_>>()?,
                Some(_) => return Err(Error::Schema("deltas must be a list".into())),
            },
        };
        doc.kind()?;
        Ok(doc)
    }

    pub fn read(path: &std::path::Path) -> Result<Document> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Document::parse(&text)
    }

    pub fn kind(&self) -> Result<Kind> {
        let has = |b: bool| b;
        match (
            has(self.vertices.is_some()),
            self.matrix.is_some(),
            self.points.is_some(),
            self.rays.is_some() || self.cones.is_some(),
        ) {
            (true, true, false, false) => Ok(Kind::Projection),
            (true, false, false, false) => Ok(Kind::Polytope),
            (false, false, true, false) => Ok(Kind::Points),
            (false, false, false, true) if self.rays.is_some() && self.cones.is_some() => Ok(Kind::Fan),
            (false, true, false, false) => Ok(Kind::Matrix),
            _ => Err(Error::Schema(
                "expected one of: vertices (+ matrix), points, rays + cones, matrix".into(),
            )),
        }
    }

    /// Canonical JSON text: keys in fixed order, two-space indentation.
    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("name".into(), json!(self.name));
        let mut put = |k: &str, v: &Option<Vec<Vector>>| {
            if let Some(v) = v {
                m.insert(k.into(), vectors_json(v));
            }
        };
        put("vertices", &self.vertices);
        put("matrix", &self.matrix);
        put("points", &self.points);
        put("rays", &self.rays);
        if let Some(c) = &self.cones {
            m.insert("cones".into(), json!(c));
        }
        if let Some(s) = &self.sublattice {
            m.insert("sublattice".into(), vectors_json(s));
        }
        if !self.deltas.is_empty() {
            m.insert("deltas".into(), json!(self.deltas));
        }
        // serde_json's map keeps insertion order only with preserve_order; emit by hand.
        let mut out = String::from("{\n");
        let order = KEYS.iter().filter(|k| m.contains_key(**k)).collect::<Vec<_>>();
        for (i, k) in order.iter().enumerate() {
            let sep = if i + 1 == order.len() { "" } else { "," };
            out.push_str(&format!("  {}: {}{sep}\n", json!(k), serde_json::to_string(&m[**k]).expect("json")));
        }
        out.push_str("}\n");
        out
    }

    fn need<'a, T>(&self, v: &'a Option<T>, key: &str) -> Result<&'a T> {
        v.as_ref().ok_or_else(|| Error::Schema(format!("{}: this command needs \"{key}\"", self.name)))
    }

    pub fn polytope(&self) -> Result<Polytope> {
        if let Ok(pp) = self.projection_from_points() {
            return Ok(pp.polytope().clone());
        }
        Polytope::new(self.need(&self.vertices, "vertices")?.clone())
    }

    fn projection_from_points(&self) -> Result<PolytopeProjection> {
        crate::secondary::simplex_projection(&self.point_configuration()?)
    }

    /// `vertices` + `matrix`, or the simplex projection of `points`.
    pub fn projection(&self) -> Result<PolytopeProjection> {
        match self.kind()? {
            Kind::Points => self.projection_from_points(),
            _ => {
                let p = Polytope::new(self.need(&self.vertices, "vertices")?.clone())?;
                let m = self.need(&self.matrix, "matrix")?;
                let cols = m.first().map_or(0, Vec::len);
                PolytopeProjection::new(p, make_projection(Matrix::from_rows(m, cols)?)?)
            }
        }
    }

    pub fn point_configuration(&self) -> Result<PointConfiguration> {
        PointConfiguration::new(self.need(&self.points, "points")?.clone())
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.need(&self.rays, "rays")?.first().map_or(0, Vec::len))
    }

    pub fn lattice_fan(&self) -> Result<LatticeFan> {
        LatticeFan::new(self.rank()?, self.need(&self.rays, "rays")?, self.need(&self.cones, "cones")?)
    }

    pub fn sublattice(&self) -> Result<Option<SublatticeData>> {
        self.sublattice.as_ref().map(|b| SublatticeData::from_sublattice(self.rank()?, b)).transpose()
    }

    /// Cones named `σ<1-based ray digits>` (or `0`), comma separated.
    pub fn named_cones(&self, names: &str) -> Result<Vec<Cone>> {
        let rays = self.need(&self.rays, "rays")?;
        let n = self.rank()?;
        names
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                let digits = name.trim_start_matches('σ').trim_start_matches('s');
                if digits == "0" || digits.is_empty() {
                    return Ok(Cone::zero(n));
                }
                let gens = digits
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .filter(|&d| d >= 1 && (d as usize) <= rays.len())
                            .map(|d| rays[d as usize - 1].clone())
                            .ok_or_else(|| Error::Parse(format!("cone name {name:?}: bad ray digit {c:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Cone::from_generators(n, &gens, &[]))
            })
            .collect()
    }
}

/// Rationals separated by commas, optionally parenthesized: `"1/2,-1"`.
pub fn parse_vector(s: &str) -> Result<Vector> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|x| parse_rational(x.trim())).collect()
}

/// Vectors written `"(0,1)"` or `"(0,1);(1,0)"`.
pub fn parse_vectors(s: &str) -> Result<Vec<Vector>> {
    s.split(';').filter(|x| !x.trim().is_empty()).map(parse_vector).collect()
}

/// Label sets separated by `;`, labels by `,`: `"0,1;1,2;2"`.
pub fn parse_faces(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .filter(|x| !x.trim().is_empty())
        .map(|f| {
            f.split(',')
                .map(|l| l.trim().parse::<usize>().map_err(|e| Error::Parse(format!("face label {l:?}: {e}"))))
                .collect()
        })
        .collect()
}
