//! JSON documents for polytopes, group elements, lattices, certificates and
//! reports. Rationals are strings (`"-3/4"`, `"7"`) so values stay exact.
//! Objects are emitted with sorted keys, so output is byte-for-byte
//! reproducible.

use serde_json::{json, Map, Value};

use crate::criteria::CriterionReport;
use crate::decomp::{CertificateCheck, DecompositionCertificate, Piece};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, QMatrix, QVector, Rational};
use crate::flags::FlagOrbitKey;
use crate::geom::{GroupElement, Polytope, Simplex, Term};
use crate::invariants::{HadwigerReport, TilingVerdict};
use crate::lattice::Lattice;
use crate::verify::{FourierReport, SampleReport};

/// Any input document, distinguished by its keys: `basis` for a lattice,
/// `terms` for a group element, `simplices` for a polytope.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Polytope(Polytope),
    GroupElement(GroupElement),
    Lattice(Lattice),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Polytope(_) => "polytope",
            Document::GroupElement(_) => "group element",
            Document::Lattice(_) => "lattice",
        }
    }
}

fn parse_err(path: &str, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        msg: msg.into(),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(&format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(path, format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(path, "expected an array"))
}

fn rational(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.at(path)),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
        _ => Err(parse_err(path, "expected a rational string such as \"3/4\"")),
    }
}

fn vector(v: &Value, path: &str) -> Result<QVector> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{path}[{i}]")))
        .collect()
}

fn rows(v: &Value, path: &str) -> Result<Vec<QVector>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| vector(x, &format!("{path}[{i}]")))
        .collect()
}

fn dim_field(v: &Value, path: &str) -> Result<usize> {
    field(v, "dim", path)?
        .as_u64()
        .map(|d| d as usize)
        .ok_or_else(|| parse_err(&format!("{path}.dim"), "expected a non-negative integer"))
}

fn simplex(v: &Value, dim: usize, path: &str) -> Result<Simplex> {
    let verts = rows(v, path)?;
    if verts.len() != dim + 1 {
        return Err(parse_err(path, format!("expected {} vertices, found {}", dim + 1, verts.len())));
    }
    Simplex::new(verts).map_err(|e| match e {
        Error::InvalidSimplex(msg) => parse_err(path, msg),
        other => other.at(path),
    })
}

fn polytope_value(v: &Value, validate: bool) -> Result<Polytope> {
    let dim = dim_field(v, "$")?;
    let simplices = array(field(v, "simplices", "$")?, "$.simplices")?
        .iter()
        .enumerate()
        .map(|(i, s)| simplex(s, dim, &format!("$.simplices[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if validate {
        Polytope::new(dim, simplices)
    } else {
        Polytope::new_unchecked(dim, simplices)
    }
}

fn group_value(v: &Value) -> Result<GroupElement> {
    let dim = dim_field(v, "$")?;
    let terms = array(field(v, "terms", "$")?, "$.terms")?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let path = format!("$.terms[{i}]");
            let coeff = field(t, "coeff", &path)?
                .as_i64()
                .ok_or_else(|| parse_err(&format!("{path}.coeff"), "expected an integer"))?;
            let simplex = simplex(field(t, "simplex", &path)?, dim, &format!("{path}.simplex"))?;
            Ok(Term { coeff, simplex })
        })
        .collect::<Result<Vec<_>>>()?;
    GroupElement::new(dim, terms)
}

fn lattice_value(v: &Value) -> Result<Lattice> {
    let basis = rows(field(v, "basis", "$")?, "$.basis")?;
    let d = basis.len();
    if let Some((i, row)) = basis.iter().enumerate().find(|(_, r)| r.dim() != d) {
        return Err(parse_err(
            &format!("$.basis[{i}]"),
            format!("basis must be square: row has {} entries, expected {d}", row.dim()),
        ));
    }
    if d == 0 {
        return Err(parse_err("$.basis", "empty basis"));
    }
    Lattice::new(QMatrix::from_rows(basis))
}

/// Parses any input document. With `validate`, polytopes are checked for
/// overlapping simplices.
pub fn parse_document(text: &str, validate: bool) -> Result<Document> {
    let v = parse_json(text)?;
    if !v.is_object() {
        return Err(parse_err("$", "expected a JSON object"));
    }
    if v.get("basis").is_some() {
        lattice_value(&v).map(Document::Lattice)
    } else if v.get("terms").is_some() {
        group_value(&v).map(Document::GroupElement)
    } else if v.get("simplices").is_some() {
        polytope_value(&v, validate).map(Document::Polytope)
    } else {
        Err(parse_err("$", "expected one of the keys \"basis\", \"terms\", \"simplices\""))
    }
}

pub fn parse_polytope(text: &str, validate: bool) -> Result<Polytope> {
    match parse_document(text, validate)? {
        Document::Polytope(p) => Ok(p),
        other => Err(parse_err("$", format!("expected a polytope, found a {}", other.kind()))),
    }
}

/// Accepts a group element or a polytope (as the element `1 * [P]`).
pub fn parse_group_element(text: &str, validate: bool) -> Result<GroupElement> {
    match parse_document(text, validate)? {
        Document::Polytope(p) => Ok(GroupElement::from_polytope(&p)),
        Document::GroupElement(g) => Ok(g),
        other => Err(parse_err("$", format!("expected a polytope or group element, found a {}", other.kind()))),
    }
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    match parse_document(text, false)? {
        Document::Lattice(l) => Ok(l),
        other => Err(parse_err("$", format!("expected a lattice, found a {}", other.kind()))),
    }
}

/// Parses a certificate or move list; a missing `coeff` means `+1`.
pub fn parse_pieces(text: &str) -> Result<Vec<Piece>> {
    let v = parse_json(text)?;
    array(field(&v, "pieces", "$")?, "$.pieces")?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let path = format!("$.pieces[{i}]");
            let shift = vector(field(p, "shift", &path)?, &format!("{path}.shift"))?;
            let simplex = simplex(field(p, "simplex", &path)?, shift.dim(), &format!("{path}.simplex"))?;
            let coeff = match p.get("coeff") {
                None => 1,
                Some(c) => c
                    .as_i64()
                    .ok_or_else(|| parse_err(&format!("{path}.coeff"), "expected an integer"))?,
            };
            Ok(Piece { simplex, shift, coeff })
        })
        .collect()
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn vector_json(v: &QVector) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &QMatrix) -> Value {
    Value::Array(m.rows().iter().map(vector_json).collect())
}

pub fn simplex_json(s: &Simplex) -> Value {
    Value::Array(s.vertices().iter().map(vector_json).collect())
}

pub fn polytope_json(p: &Polytope) -> Value {
    json!({
        "dim": p.dim(),
        "simplices": p.simplices().iter().map(simplex_json).collect::<Vec<_>>(),
    })
}

pub fn group_element_json(g: &GroupElement) -> Value {
    json!({
        "dim": g.dim(),
        "terms": g.terms().iter().map(|t| json!({"coeff": t.coeff, "simplex": simplex_json(&t.simplex)})).collect::<Vec<_>>(),
    })
}

pub fn lattice_json(l: &Lattice) -> Value {
    json!({ "basis": matrix_json(l.basis()) })
}

pub fn key_json(k: &FlagOrbitKey) -> Value {
    json!({
        "r": k.r(),
        "direction": k.direction.bases.iter().map(matrix_json).collect::<Vec<_>>(),
        "normals": k.direction.normals.iter().map(vector_json).collect::<Vec<_>>(),
        "anchor": vector_json(&k.anchor),
    })
}

/// `[{key, value}, ...]` sorted by key; empty when every functional vanishes.
pub fn report_json(r: &HadwigerReport) -> Value {
    Value::Array(
        r.entries()
            .iter()
            .map(|(k, v)| json!({"key": key_json(k), "value": rational_json(v)}))
            .collect(),
    )
}

pub fn verdict_json(v: &TilingVerdict) -> Value {
    let mut m = Map::new();
    m.insert("tiles".into(), Value::Bool(v.tiles));
    m.insert("level".into(), v.level.map_or(Value::Null, Value::from));
    if let (Some(k), Some(val)) = (&v.witness, &v.witness_value) {
        m.insert("witness".into(), json!({"key": key_json(k), "value": rational_json(val)}));
    }
    Value::Object(m)
}

/// Certificate document; `coeff` is written only when some piece has a
/// coefficient other than `+1`.
pub fn pieces_json(pieces: &[Piece]) -> Value {
    let signed = pieces.iter().any(|p| p.coeff != 1);
    let list = pieces
        .iter()
        .map(|p| {
            let mut m = Map::new();
            m.insert("simplex".into(), simplex_json(&p.simplex));
            m.insert("shift".into(), vector_json(&p.shift));
            if signed {
                m.insert("coeff".into(), Value::from(p.coeff));
            }
            Value::Object(m)
        })
        .collect();
    json!({ "pieces": Value::Array(list) })
}

pub fn certificate_json(c: &DecompositionCertificate) -> Value {
    pieces_json(&c.pieces)
}

pub fn certificate_check_json(c: &CertificateCheck) -> Value {
    json!({
        "passed": c.passed(),
        "pieces_disjoint": c.pieces_disjoint,
        "moved_disjoint": c.moved_disjoint,
        "volume_matches_a": c.volume_matches_a,
        "volume_matches_b": c.volume_matches_b,
        "shifts_in_lattice": c.shifts_in_lattice,
        "samples_a": c.samples_a,
        "samples_b": c.samples_b,
        "indicator_mismatches": c.indicator_mismatches,
    })
}

pub fn sample_report_json(r: &SampleReport) -> Value {
    let observed: Map<String, Value> = r.observed_levels.iter().map(|(k, n)| (k.to_string(), Value::from(*n))).collect();
    json!({
        "samples": r.samples,
        "resampled_boundary": r.resampled_boundary,
        "observed_levels": observed,
        "constant": r.constant,
        "level": r.level,
        "failures": r.failures.iter().map(|(x, v)| json!({"point": vector_json(x), "value": v})).collect::<Vec<_>>(),
    })
}

pub fn fourier_report_json(r: &FourierReport) -> Value {
    json!({
        "frequencies": r.frequencies.len(),
        "max_abs": format!("{:e}", r.max_abs),
        "argmax": r.argmax.as_ref().map(vector_json),
        "tol": format!("{:e}", r.tol),
        "pass": r.pass,
    })
}

pub fn criterion_json(method: &str, r: &CriterionReport) -> Value {
    json!({
        "method": method,
        "tiles": r.holds(),
        "level": r.level,
        "failures": r.failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::invariants::is_tiling;

    const SQUARE: &str = r#"{"dim": 2, "simplices": [[["0","0"],["1","0"],["0","1"]], [["1","0"],["1","1"],["0","1"]]]}"#;

    #[test]
    fn parses_each_kind() {
        let z2 = parse_lattice(r#"{"basis": [["1","0"],["0","1"]]}"#).unwrap();
        assert_eq!(z2, Lattice::integer(2));
        let sq = parse_polytope(SQUARE, true).unwrap();
        assert_eq!(sq.volume(), rat(1, 1));
        let g = parse_group_element(r#"{"dim": 1, "terms": [{"coeff": 2, "simplex": [["0"],["1/2"]]}]}"#, true).unwrap();
        assert_eq!(g.volume(), rat(1, 1));
        let reduced = parse_lattice(r#"{"basis": [["2/4"]]}"#).unwrap();
        assert_eq!(reduced.det(), &rat(1, 2));
    }

    #[test]
    fn errors_carry_locations() {
        let bad = r#"{"dim": 2, "simplices": [[["0","0"],["1","x"],["0","1"]]]}"#;
        match parse_polytope(bad, true) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "$.simplices[0][1][1]"),
            other => panic!("{other:?}"),
        }
        match parse_document("{\"basis\": [[\"1\"]\n", true) {
            Err(Error::Parse { path, .. }) => assert!(path.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
        let overlap = r#"{"dim": 1, "simplices": [[["0"],["1"]], [["1/2"],["2"]]]}"#;
        assert!(matches!(
            parse_polytope(overlap, true),
            Err(Error::OverlappingSimplices { first: 0, second: 1 })
        ));
        assert!(parse_polytope(overlap, false).is_ok());
        assert!(matches!(parse_lattice(r#"{"basis": [["1","2"],["2","4"]]}"#), Err(Error::NonInvertibleBasis)));
        assert!(parse_lattice(SQUARE).is_err());
    }

    #[test]
    fn round_trips() {
        let sq = parse_polytope(SQUARE, true).unwrap();
        let text = polytope_json(&sq).to_string();
        assert_eq!(parse_polytope(&text, true).unwrap(), sq);
        let g = GroupElement::from_polytope(&sq).sub(&GroupElement::from_polytope(&sq.translate(&QVector::from_ints(&[1, 1]))));
        assert_eq!(parse_group_element(&group_element_json(&g).to_string(), true).unwrap(), g);
        let l = Lattice::new(QMatrix::from_rows(vec![QVector::from_ints(&[1, 0]), QVector::new(vec![rat(1, 2), rat(-1, 3)])])).unwrap();
        assert_eq!(parse_lattice(&lattice_json(&l).to_string()).unwrap(), l);
        let pieces = vec![Piece {
            simplex: Simplex::from_ints(&[&[0], &[1]]).unwrap(),
            shift: QVector::from_ints(&[2]),
            coeff: -1,
        }];
        assert_eq!(parse_pieces(&pieces_json(&pieces).to_string()).unwrap(), pieces);
    }

    #[test]
    fn verdict_documents() {
        let z2 = Lattice::integer(2);
        let sq = GroupElement::from_polytope(&parse_polytope(SQUARE, true).unwrap());
        assert_eq!(verdict_json(&is_tiling(&sq, &z2).unwrap()), json!({"tiles": true, "level": 1}));
        let tri = parse_group_element(r#"{"dim": 2, "simplices": [[["0","0"],["1","0"],["0","1"]]]}"#, true).unwrap();
        let v = verdict_json(&is_tiling(&tri, &z2).unwrap());
        assert_eq!(v["tiles"], json!(false));
        assert_eq!(v["witness"]["key"]["r"], json!(1));
    }
}
