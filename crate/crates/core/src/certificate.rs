//! JSON certificate documents.
//!
//! A document carries the claimed `[[n, kq, d; c]]_q` parameters, the distance evidence,
//! the classical code (field modulus, `G`, `H`) and the construction data needed to
//! rebuild `G` from scratch. Keys come out sorted because `serde_json::Map` is ordered.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::constacyclic::{ConstaError, ConstacyclicCode, ConstacyclicSpec};
use crate::eaqecc::{EaqeccCertificate, Flags};
use crate::field::{Elem, Field, FieldError, GaloisField};
use crate::grs::{Family, GrsConstruction, GrsData, GrsError};
use crate::lincode::{CodeError, DistanceCertificate, DistanceMethod, LinearCode};
use crate::matrix::Matrix;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error)]
pub enum RebuildError {
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error(transparent)]
    Consta(#[from] ConstaError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    /// The constructed code itself.
    Code,
    /// Its k-Galois dual.
    Dual,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Code => "code",
            Side::Dual => "dual",
        }
    }
}

/// How the stored code was produced.
#[derive(Clone, Debug)]
pub enum Construction {
    Grs {
        data: GrsData,
        alpha: Elem,
        gamma: Option<Elem>,
        case: Option<u8>,
        candidates: u64,
    },
    Constacyclic {
        n: u64,
        r: u64,
        lambda: Elem,
        m: u32,
        theta: Elem,
        big_field: Field,
        defining_set: Vec<u64>,
    },
}

impl From<&GrsConstruction> for Construction {
    fn from(c: &GrsConstruction) -> Self {
        Construction::Grs {
            data: c.data.clone(),
            alpha: c.alpha,
            gamma: c.gamma,
            case: match c.family {
                Family::III(case) => Some(case),
                Family::I => None,
            },
            candidates: c.candidates,
        }
    }
}

impl From<&ConstacyclicCode> for Construction {
    fn from(c: &ConstacyclicCode) -> Self {
        Construction::Constacyclic {
            n: c.spec.n,
            r: c.spec.r,
            lambda: c.spec.lambda,
            m: c.spec.m,
            theta: c.spec.theta,
            big_field: c.spec.big_field().clone(),
            defining_set: c.defining_set.elements().to_vec(),
        }
    }
}

impl Construction {
    /// The base code (before taking a dual side) rebuilt from this data alone.
    pub fn rebuild(&self, field: &Field) -> Result<LinearCode, RebuildError> {
        match self {
            Construction::Grs { data, .. } => Ok(LinearCode::from_generator(&data.generator_matrix(field)?)?),
            Construction::Constacyclic { n, r, lambda, m, theta, big_field, defining_set } => {
                let spec = ConstacyclicSpec::new(field, *n, *lambda)?;
                if spec.r != *r || spec.m != *m {
                    return Err(RebuildError::Mismatch(format!(
                        "λ has order {} and splitting degree {}, certificate says r = {r}, m = {m}",
                        spec.r, spec.m
                    )));
                }
                if spec.big_field().modulus() != big_field.modulus() || spec.theta != *theta {
                    return Err(RebuildError::Mismatch("θ or its field differs from the canonical choice".into()));
                }
                let set = spec.defining_set(defining_set.iter().copied())?;
                Ok(spec.code(&set)?)
            }
        }
    }
}

/// The classical code as stored in a document. `generator` and `parity_check` are the
/// claimed matrices, not recomputed.
#[derive(Clone, Debug)]
pub struct CodeRecord {
    pub field: Field,
    pub n: usize,
    pub l: usize,
    pub generator: Matrix,
    pub parity_check: Matrix,
    pub provenance: String,
}

impl From<&LinearCode> for CodeRecord {
    fn from(c: &LinearCode) -> Self {
        CodeRecord {
            field: c.field().clone(),
            n: c.len(),
            l: c.dimension(),
            generator: c.generator().clone(),
            parity_check: c.parity_check().clone(),
            provenance: c.provenance().to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Source {
    pub code: CodeRecord,
    pub k: u32,
    pub lcd: bool,
    pub family: String,
    pub side: Side,
    pub construction: Construction,
}

impl Source {
    /// Rebuild the stored code from the construction data and side.
    pub fn rebuild(&self) -> Result<LinearCode, RebuildError> {
        let base = self.construction.rebuild(&self.code.field)?;
        match self.side {
            Side::Code => Ok(base),
            Side::Dual => Ok(base.galois_dual(self.k)?),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub certificate: EaqeccCertificate,
    pub source: Source,
}

fn elem(f: &Field, x: Elem) -> Value {
    json!(f.coeffs(x))
}

fn vector(f: &Field, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|&x| elem(f, x)).collect())
}

fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.field(), m.row(i))).collect())
}

fn field_json(f: &Field) -> Value {
    json!({ "p": f.characteristic(), "e": f.degree(), "modulus": f.modulus() })
}

pub fn distance_json(f: &Field, d: &DistanceCertificate) -> Value {
    json!({
        "method": d.method.as_str(),
        "d_lower": d.d_lower,
        "d_upper": d.d_upper,
        "witness": d.witness.as_deref().map(|w| vector(f, w)),
    })
}

fn construction_json(f: &Field, c: &Construction) -> Value {
    match c {
        Construction::Grs { data, alpha, gamma, case, candidates } => json!({
            "type": "grs",
            "a": vector(f, &data.a),
            "v": vector(f, &data.v),
            "l": data.l,
            "eta": data.eta.map(|x| elem(f, x)),
            "infinity": data.infinity,
            "alpha": elem(f, *alpha),
            "gamma": gamma.map(|x| elem(f, x)),
            "case": case,
            "candidates": candidates,
        }),
        Construction::Constacyclic { n, r, lambda, m, theta, big_field, defining_set } => json!({
            "type": "constacyclic",
            "n": n,
            "r": r,
            "lambda": elem(f, *lambda),
            "m": m,
            "theta": elem(big_field, *theta),
            "big_field": field_json(big_field),
            "defining_set": defining_set,
        }),
    }
}

impl Document {
    pub fn to_json(&self) -> Value {
        let c = &self.certificate;
        let s = &self.source;
        let f = &s.code.field;
        json!({
            "params": c.params(),
            "q": c.q,
            "flags": {
                "mds_eaqecc": c.flags.mds_eaqecc,
                "maximal_entanglement": c.flags.maximal_entanglement,
                "ea_singleton_slack": c.flags.ea_singleton_slack,
            },
            "distance_certificate": distance_json(f, &c.distance),
            "source": {
                "code": {
                    "field": field_json(f),
                    "n": s.code.n,
                    "l": s.code.l,
                    "G": matrix(&s.code.generator),
                    "H": matrix(&s.code.parity_check),
                    "provenance": s.code.provenance,
                },
                "k": s.k,
                "lcd": s.lcd,
                "family": s.family,
                "side": s.side.as_str(),
                "construction": construction_json(f, &s.construction),
            },
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, FormatError> {
        let root = Obj::new(v, "document")?;
        let params = root.array("params")?;
        if params.len() != 4 {
            return Err(bad("params must have four entries"));
        }
        let p: Vec<usize> = params.iter().map(|x| as_usize(x, "params")).collect::<Result<_, _>>()?;
        let flags = Obj::new(root.get("flags")?, "flags")?;
        let source = Obj::new(root.get("source")?, "source")?;
        let code = Obj::new(source.get("code")?, "code")?;
        let field = parse_field(code.get("field")?)?;
        let n = code.usize("n")?;
        let l = code.usize("l")?;
        let generator = parse_matrix(&field, code.get("G")?, n, "G")?;
        let parity_check = parse_matrix(&field, code.get("H")?, n, "H")?;
        let distance = parse_distance(&field, root.get("distance_certificate")?, n)?;
        let certificate = EaqeccCertificate {
            n: p[0],
            kq: p[1],
            d: p[2],
            c: p[3],
            q: root.u64("q")?,
            flags: Flags {
                mds_eaqecc: flags.bool("mds_eaqecc")?,
                maximal_entanglement: flags.bool("maximal_entanglement")?,
                ea_singleton_slack: flags.usize("ea_singleton_slack")?,
            },
            distance,
        };
        let side = match source.str("side")? {
            "code" => Side::Code,
            "dual" => Side::Dual,
            other => return Err(bad(format!("unknown side {other:?}"))),
        };
        let construction = parse_construction(&field, source.get("construction")?)?;
        Ok(Document {
            certificate,
            source: Source {
                code: CodeRecord {
                    field,
                    n,
                    l,
                    generator,
                    parity_check,
                    provenance: code.str("provenance")?.to_string(),
                },
                k: u32::try_from(source.u64("k")?).map_err(|_| bad("k too large"))?,
                lcd: source.bool("lcd")?,
                family: source.str("family")?.to_string(),
                side,
                construction,
            },
        })
    }
}

/// Documents from a JSON value holding one object or an array of them.
pub fn parse_documents(v: &Value) -> Result<Vec<Document>, FormatError> {
    match v {
        Value::Array(items) => items.iter().map(Document::from_json).collect(),
        _ => Ok(vec![Document::from_json(v)?]),
    }
}

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError::Malformed(msg.into())
}

struct Obj<'a> {
    map: &'a Map<String, Value>,
    name: &'static str,
}

impl<'a> Obj<'a> {
    fn new(v: &'a Value, name: &'static str) -> Result<Self, FormatError> {
        v.as_object()
            .map(|map| Obj { map, name })
            .ok_or_else(|| bad(format!("{name} must be an object")))
    }

    fn get(&self, key: &str) -> Result<&'a Value, FormatError> {
        self.map.get(key).ok_or_else(|| bad(format!("{} is missing {key:?}", self.name)))
    }

    fn opt(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key).filter(|v| !v.is_null())
    }

    fn u64(&self, key: &str) -> Result<u64, FormatError> {
        self.get(key)?.as_u64().ok_or_else(|| bad(format!("{key:?} must be a nonnegative integer")))
    }

    fn usize(&self, key: &str) -> Result<usize, FormatError> {
        as_usize(self.get(key)?, key)
    }

    fn bool(&self, key: &str) -> Result<bool, FormatError> {
        self.get(key)?.as_bool().ok_or_else(|| bad(format!("{key:?} must be a boolean")))
    }

    fn str(&self, key: &str) -> Result<&'a str, FormatError> {
        self.get(key)?.as_str().ok_or_else(|| bad(format!("{key:?} must be a string")))
    }

    fn array(&self, key: &str) -> Result<&'a Vec<Value>, FormatError> {
        self.get(key)?.as_array().ok_or_else(|| bad(format!("{key:?} must be an array")))
    }
}

fn as_usize(v: &Value, what: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| bad(format!("{what:?} must be a nonnegative integer")))
}

fn int_list(v: &Value, what: &str) -> Result<Vec<u64>, FormatError> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an integer list")))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| bad(format!("{what} must be an integer list"))))
        .collect()
}

fn parse_field(v: &Value) -> Result<Field, FormatError> {
    let o = Obj::new(v, "field")?;
    let p = o.u64("p")?;
    let e = o.u64("e")?;
    let modulus = int_list(o.get("modulus")?, "modulus")?;
    if modulus.len() as u64 != e + 1 {
        return Err(bad(format!("modulus has degree {} but e = {e}", modulus.len().saturating_sub(1))));
    }
    Ok(GaloisField::with_modulus(p, &modulus)?)
}

fn parse_elem(f: &Field, v: &Value) -> Result<Elem, FormatError> {
    Ok(f.from_coeffs(&int_list(v, "field element")?)?)
}

fn parse_vector(f: &Field, v: &Value, len: Option<usize>, what: &str) -> Result<Vec<Elem>, FormatError> {
    let items = v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))?;
    if let Some(n) = len {
        if items.len() != n {
            return Err(bad(format!("{what} has length {} instead of {n}", items.len())));
        }
    }
    items.iter().map(|x| parse_elem(f, x)).collect()
}

fn parse_matrix(f: &Field, v: &Value, cols: usize, what: &str) -> Result<Matrix, FormatError> {
    let rows = v.as_array().ok_or_else(|| bad(format!("{what} must be an array of rows")))?;
    let rows: Vec<Vec<Elem>> = rows
        .iter()
        .map(|r| parse_vector(f, r, Some(cols), what))
        .collect::<Result<_, _>>()?;
    Matrix::from_rows(f, cols, &rows).map_err(|e| bad(format!("{what}: {e}")))
}

fn parse_distance(f: &Field, v: &Value, n: usize) -> Result<DistanceCertificate, FormatError> {
    let o = Obj::new(v, "distance_certificate")?;
    let method = o.str("method")?;
    let method = DistanceMethod::parse(method).ok_or_else(|| bad(format!("unknown distance method {method:?}")))?;
    let witness = o.opt("witness").map(|w| parse_vector(f, w, Some(n), "witness")).transpose()?;
    Ok(DistanceCertificate { method, d_lower: o.usize("d_lower")?, d_upper: o.usize("d_upper")?, witness })
}

fn parse_construction(f: &Field, v: &Value) -> Result<Construction, FormatError> {
    let o = Obj::new(v, "construction")?;
    match o.str("type")? {
        "grs" => {
            let mut data = GrsData::new(
                parse_vector(f, o.get("a")?, None, "a")?,
                parse_vector(f, o.get("v")?, None, "v")?,
                o.usize("l")?,
            );
            data.eta = o.opt("eta").map(|x| parse_elem(f, x)).transpose()?;
            data.infinity = o.bool("infinity")?;
            let case = match o.opt("case") {
                None => None,
                Some(c) => Some(c.as_u64().and_then(|c| u8::try_from(c).ok()).ok_or_else(|| bad("bad case"))?),
            };
            Ok(Construction::Grs {
                data,
                alpha: parse_elem(f, o.get("alpha")?)?,
                gamma: o.opt("gamma").map(|x| parse_elem(f, x)).transpose()?,
                case,
                candidates: o.u64("candidates")?,
            })
        }
        "constacyclic" => {
            let big_field = parse_field(o.get("big_field")?)?;
            if big_field.characteristic() != f.characteristic() {
                return Err(bad("big_field has the wrong characteristic"));
            }
            Ok(Construction::Constacyclic {
                n: o.u64("n")?,
                r: o.u64("r")?,
                lambda: parse_elem(f, o.get("lambda")?)?,
                m: u32::try_from(o.u64("m")?).map_err(|_| bad("m too large"))?,
                theta: parse_elem(&big_field, o.get("theta")?)?,
                defining_set: int_list(o.get("defining_set")?, "defining_set")?,
                big_field,
            })
        }
        other => Err(bad(format!("unknown construction type {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eaqecc::derive_from_lcd;
    use crate::field::make_field;
    use crate::grs::family_iii;
    use crate::lincode::DEFAULT_BUDGET;

    fn sample() -> Document {
        let f = make_field(5, 2).unwrap();
        let out = family_iii(&f, 1, 4, 3).unwrap();
        let d = out.code.min_distance(DEFAULT_BUDGET);
        let certificate = derive_from_lcd(&out.code, 1, &d).unwrap();
        Document {
            certificate,
            source: Source {
                code: CodeRecord::from(&out.code),
                k: 1,
                lcd: true,
                family: "iii".into(),
                side: Side::Code,
                construction: Construction::from(&out),
            },
        }
    }

    #[test]
    fn round_trip_is_stable() {
        let doc = sample();
        let text = serde_json::to_string(&doc.to_json()).unwrap();
        let back = Document::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.certificate, doc.certificate);
        assert_eq!(back.source.code.generator, doc.source.code.generator);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
        assert_eq!(back.source.rebuild().unwrap().generator(), &doc.source.code.generator);
    }

    #[test]
    fn keys_are_sorted() {
        let text = serde_json::to_string(&sample().to_json()).unwrap();
        let first = text.find("\"distance_certificate\"").unwrap();
        assert!(first < text.find("\"flags\"").unwrap());
        assert!(text.find("\"params\"").unwrap() < text.find("\"q\"").unwrap());
    }

    #[test]
    fn malformed_inputs() {
        let mut v = sample().to_json();
        v["source"]["code"]["field"]["modulus"] = json!([1, 0, 1]);
        assert!(matches!(Document::from_json(&v), Err(FormatError::Field(_))));
        let mut v = sample().to_json();
        v["params"] = json!([1, 2, 3]);
        assert!(Document::from_json(&v).is_err());
        let mut v = sample().to_json();
        v["source"]["code"]["G"][0][0] = json!([7, 0]);
        assert!(Document::from_json(&v).is_err());
        assert!(Document::from_json(&json!("nope")).is_err());
    }
}
