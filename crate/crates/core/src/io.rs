//! JSON documents for lattices, two-term complexes and Kulikov configurations.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::homology::TwoTermComplex;
use crate::kulikov::{BoundaryKind, Edge, KulikovConfig, KulikovType, Orientation, PairData};
use crate::lattice::{parse_lattice_name, IntegerLattice, LatticeVector};
use crate::linalg::IntMatrix;
use crate::toric::{OrderedToricModel, ToricPairFan};

/// Largest matrix dimension accepted from a document.
pub const MAX_DIM: usize = 1024;
/// Longest decimal string accepted for one integer.
pub const MAX_DIGITS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                if v.len() > MAX_DIGITS {
                    return Err(E::custom("integer string is too long"));
                }
                v.trim().parse::<BigInt>().map(Int).map_err(|_| E::custom(format!("'{v}' is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Serializes a `BigInt` like `Int`.
pub fn ser_int<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    Int(x.clone()).serialize(s)
}

pub fn ser_ints<S: Serializer, T: AsRef<[BigInt]>>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.as_ref().iter().map(|v| Int(v.clone())))
}

/// Serializes a rational as the string `p/q` (or `p` when integral).
pub fn ser_rational<S: Serializer>(r: &num_rational::BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

type Rows = Vec<Vec<Int>>;

fn to_rows(m: &IntMatrix) -> Rows {
    m.rows_iter().map(|r| r.iter().cloned().map(Int).collect()).collect()
}

fn from_rows(rows: Rows, cols: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() > MAX_DIM || cols > MAX_DIM {
        return Err(Error::Malformed(format!("{what} exceeds {MAX_DIM} rows or columns")));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(Error::Malformed(format!("{what}: row {i} has length {}, expected {cols}", rows[i].len())));
    }
    let data = rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
    IntMatrix::from_rows(data, cols).map_err(|e| Error::Malformed(format!("{what}: {e}")))
}

fn square(rows: Rows, what: &str) -> Result<IntMatrix> {
    let n = rows.len();
    from_rows(rows, n, what)
}

fn to_vector(v: Vec<Int>) -> LatticeVector {
    LatticeVector::new(v.into_iter().map(|x| x.0).collect())
}

fn from_vector(v: &LatticeVector) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

#[derive(Serialize, Deserialize)]
pub struct LatticeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub gram: Rows,
}

fn lattice_from_doc(doc: LatticeDoc) -> Result<IntegerLattice> {
    let l = IntegerLattice::new(square(doc.gram, "gram")?).map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(match doc.label {
        Some(s) => l.with_label(s),
        None => l,
    })
}

pub fn lattice_from_json(s: &str) -> Result<IntegerLattice> {
    lattice_from_doc(serde_json::from_str(s)?)
}

pub fn lattice_to_value(l: &IntegerLattice) -> serde_json::Value {
    let doc = LatticeDoc { label: l.label().map(str::to_string), gram: to_rows(l.gram()) };
    serde_json::to_value(doc).expect("plain data")
}

pub fn lattice_to_json(l: &IntegerLattice) -> String {
    lattice_to_value(l).to_string()
}

#[derive(Serialize, Deserialize)]
pub struct ComplexDoc {
    pub c0: usize,
    pub c1: usize,
    pub boundary: Rows,
    #[serde(default)]
    pub form0: Option<Rows>,
}

pub fn complex_from_json(s: &str) -> Result<TwoTermComplex> {
    let doc: ComplexDoc = serde_json::from_str(s)?;
    if doc.boundary.len() != doc.c1 {
        return Err(Error::Malformed(format!("boundary has {} rows but c1 = {}", doc.boundary.len(), doc.c1)));
    }
    let boundary = from_rows(doc.boundary, doc.c0, "boundary")?;
    let form0 = doc.form0.map(|f| from_rows(f, doc.c0, "form0")).transpose()?;
    if let Some(f) = &form0 {
        if f.nrows() != doc.c0 {
            return Err(Error::Malformed(format!("form0 has {} rows but c0 = {}", f.nrows(), doc.c0)));
        }
    }
    TwoTermComplex::new(boundary, form0).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn complex_to_value(c: &TwoTermComplex) -> serde_json::Value {
    let doc = ComplexDoc {
        c0: c.c0(),
        c1: c.c1(),
        boundary: to_rows(&c.boundary),
        form0: c.form0.as_ref().map(to_rows),
    };
    serde_json::to_value(doc).expect("plain data")
}

/// `h2` may be a Gram matrix, a lattice document or a lattice name.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Gram(Rows),
    Doc(LatticeDoc),
    Name(String),
}

impl LatticeSpec {
    fn build(self) -> Result<IntegerLattice> {
        match self {
            LatticeSpec::Gram(g) => lattice_from_doc(LatticeDoc { label: None, gram: g }),
            LatticeSpec::Doc(d) => lattice_from_doc(d),
            LatticeSpec::Name(n) => parse_lattice_name(&n),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct BlowupDoc {
    pub edge: usize,
}

#[derive(Serialize, Deserialize)]
pub struct ToricModelDoc {
    pub rays: Vec<[i64; 2]>,
    #[serde(default)]
    pub blowups: Vec<BlowupDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct ComponentDoc {
    pub h2: LatticeSpec,
    pub boundary: Rows,
    pub kind: String,
    #[serde(rename = "chiO", default = "one")]
    pub chi_o: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_ints: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric_model: Option<ToricModelDoc>,
}

fn one() -> i64 {
    1
}

#[derive(Serialize, Deserialize)]
pub struct EdgeDoc {
    pub i: usize,
    pub j: usize,
    pub bi: usize,
    pub bj: usize,
    #[serde(default)]
    pub genus: i64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reversed: bool,
}

#[derive(Serialize, Deserialize)]
pub struct ConfigDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub components: Vec<ComponentDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub triangles: Vec<[usize; 3]>,
    #[serde(default = "ccw")]
    pub orientation: String,
}

fn ccw() -> String {
    "ccw".into()
}

fn component_from_doc(c: usize, doc: ComponentDoc) -> Result<PairData> {
    let at = |e: Error| Error::Malformed(format!("component {c}: {e}"));
    let h2 = doc.h2.build().map_err(at)?;
    if h2.rank() > MAX_DIM {
        return Err(at(Error::Malformed("H2 rank too large".into())));
    }
    let r = h2.rank();
    let boundary: Vec<LatticeVector> = from_rows(doc.boundary, r, "boundary").map_err(at)?
        .rows_iter()
        .map(|row| LatticeVector::new(row.to_vec()))
        .collect();
    let kind = BoundaryKind::parse(&doc.kind).map_err(at)?;
    let mut p = PairData::new(h2, boundary, kind, doc.chi_o).map_err(at)?;
    if let Some(s) = doc.self_ints {
        p.self_ints = s;
    }
    p.label = doc.label;
    if let Some(tm) = doc.toric_model {
        let fan = ToricPairFan::new(tm.rays).map_err(at)?;
        let model = OrderedToricModel::new(fan, tm.blowups.into_iter().map(|b| b.edge).collect()).map_err(at)?;
        p.toric_model = Some(model);
    }
    Ok(p)
}

pub fn config_from_doc(doc: ConfigDoc) -> Result<KulikovConfig> {
    let kind = KulikovType::parse(&doc.kind)?;
    let orientation = Orientation::parse(&doc.orientation)?;
    let components = doc.components.into_iter().enumerate().map(|(c, d)| component_from_doc(c, d)).collect::<Result<_>>()?;
    let edges = doc
        .edges
        .into_iter()
        .map(|e| Edge { i: e.i, j: e.j, bi: e.bi, bj: e.bj, genus: e.genus, reversed: e.reversed })
        .collect();
    let cfg = KulikovConfig { kind, components, edges, triangles: doc.triangles, orientation };
    cfg.check_incidence()?;
    Ok(cfg)
}

pub fn config_from_json(s: &str) -> Result<KulikovConfig> {
    config_from_doc(serde_json::from_str(s)?)
}

pub fn config_to_doc(cfg: &KulikovConfig) -> ConfigDoc {
    let components = cfg
        .components
        .iter()
        .map(|p| ComponentDoc {
            h2: LatticeSpec::Gram(to_rows(p.h2.gram())),
            boundary: p.boundary.iter().map(from_vector).collect(),
            kind: p.kind.as_str().to_string(),
            chi_o: p.chi_o,
            self_ints: Some(p.self_ints.clone()),
            label: p.label.clone(),
            toric_model: p.toric_model.as_ref().map(|m| ToricModelDoc {
                rays: m.base.rays().to_vec(),
                blowups: m.blowups.iter().map(|&edge| BlowupDoc { edge }).collect(),
            }),
        })
        .collect();
    let edges = cfg
        .edges
        .iter()
        .map(|e| EdgeDoc { i: e.i, j: e.j, bi: e.bi, bj: e.bj, genus: e.genus, reversed: e.reversed })
        .collect();
    ConfigDoc {
        kind: cfg.kind.as_str().to_string(),
        components,
        edges,
        triangles: cfg.triangles.clone(),
        orientation: cfg.orientation.as_str().to_string(),
    }
}

pub fn config_to_json_pretty(cfg: &KulikovConfig) -> String {
    to_pretty_string(&serde_json::to_value(config_to_doc(cfg)).expect("plain data"))
}

/// Indented JSON that keeps arrays and objects of scalars on one line.
pub fn to_pretty_string(v: &serde_json::Value) -> String {
    let mut out = String::new();
    write_pretty(v, 0, &mut out);
    out
}

fn is_flat(v: &serde_json::Value) -> bool {
    use serde_json::Value;
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(o) => o.values().all(|x| !x.is_array() && !x.is_object()),
        _ => true,
    }
}

fn write_pretty(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    if is_flat(v) {
        out.push_str(&v.to_string());
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (k, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_pretty(x, indent + 1, out);
                out.push_str(if k + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (k, (key, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_pretty(x, indent + 1, out);
                out.push_str(if k + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!("scalars are flat"),
    }
}

/// A vector written as a JSON array or as comma-separated integers.
pub fn parse_vector(s: &str) -> Result<LatticeVector> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: Vec<Int> = serde_json::from_str(t)?;
        if v.len() > MAX_DIM {
            return Err(Error::Malformed("vector is too long".into()));
        }
        return Ok(to_vector(v));
    }
    let coords = t
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| Error::Malformed(format!("'{x}' is not an integer"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeVector::new(coords))
}
