//! JSON file formats.
//!
//! Integers are decimal and arbitrary precision on both read and write.
//!
//! ```text
//! lattice   {"rank": r, "gram": [[...], ...], "labels": ["e", "f", ...]}
//! vector    {"coords": [...]}
//! isometry  {"matrix": [[...], ...]}
//! roots     {"lattice": <path or inline lattice>, "roots": [[...], ...]}
//! pattern   {"pattern": [[...], ...]}            (6 x 6)
//! surface   {"pg": n, "multiplicities": [m1, ...]}
//! ```

use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::error::{LatticeError, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{Int, IntMatrix};
use crate::surface::SurfaceModel;
use crate::vanishing::DiagramPattern;

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| LatticeError::Parse(e.to_string()))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| LatticeError::Parse(format!("{what}: expected a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| LatticeError::Parse(format!("{what}: missing key \"{key}\"")))
}

pub(crate) fn integer(v: &Value, what: &str) -> Result<Int> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            s.parse::<Int>().map_err(|_| LatticeError::Parse(format!("{what}: {s} is not an integer")))
        }
        Value::String(s) => s.trim().parse::<Int>().map_err(|_| LatticeError::Parse(format!("{what}: \"{s}\" is not an integer"))),
        _ => Err(LatticeError::Parse(format!("{what}: expected an integer"))),
    }
}

fn int_list(v: &Value, what: &str) -> Result<Vec<Int>> {
    v.as_array()
        .ok_or_else(|| LatticeError::Parse(format!("{what}: expected an array")))?
        .iter()
        .map(|x| integer(x, what))
        .collect()
}

fn int_matrix(v: &Value, what: &str) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| LatticeError::Parse(format!("{what}: expected an array of rows")))?
        .iter()
        .map(|r| int_list(r, what))
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows).ok_or_else(|| LatticeError::Parse(format!("{what}: rows have different lengths")))
}

fn usize_value(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| LatticeError::Parse(format!("{what}: expected a non-negative integer")))
}

fn lattice_from_value(v: &Value) -> Result<Lattice> {
    let obj = object(v, "lattice")?;
    let gram = int_matrix(field(obj, "gram", "lattice")?, "lattice gram")?;
    if let Some(r) = obj.get("rank") {
        let r = usize_value(r, "lattice rank")?;
        if r != gram.rows() || r != gram.cols() {
            return Err(LatticeError::Parse(format!("lattice: rank {r} does not match a {}x{} gram", gram.rows(), gram.cols())));
        }
    }
    let lattice = Lattice::new(gram).map_err(|e| LatticeError::Parse(format!("lattice: {e}")))?;
    match obj.get("labels") {
        None | Some(Value::Null) => Ok(lattice),
        Some(l) => {
            let labels = l
                .as_array()
                .ok_or_else(|| LatticeError::Parse("lattice labels: expected an array".into()))?
                .iter()
                .map(|s| s.as_str().map(str::to_owned).ok_or_else(|| LatticeError::Parse("lattice labels: expected strings".into())))
                .collect::<Result<Vec<_>>>()?;
            lattice.with_labels(labels).map_err(|e| LatticeError::Parse(format!("lattice: {e}")))
        }
    }
}

pub fn lattice_from_json(text: &str) -> Result<Lattice> {
    lattice_from_value(&parse_value(text)?)
}

pub fn vector_from_json(text: &str) -> Result<LatticeVector> {
    let v = parse_value(text)?;
    let obj = object(&v, "vector")?;
    Ok(LatticeVector::new(int_list(field(obj, "coords", "vector")?, "vector coords")?))
}

pub fn isometry_matrix_from_json(text: &str) -> Result<IntMatrix> {
    let v = parse_value(text)?;
    let obj = object(&v, "isometry")?;
    int_matrix(field(obj, "matrix", "isometry")?, "isometry matrix")
}

pub fn pattern_from_json(text: &str) -> Result<DiagramPattern> {
    let v = parse_value(text)?;
    let obj = object(&v, "pattern")?;
    let m = int_matrix(field(obj, "pattern", "pattern")?, "pattern")?;
    if m.rows() != 6 || m.cols() != 6 {
        return Err(LatticeError::Parse(format!("pattern: expected 6x6, got {}x{}", m.rows(), m.cols())));
    }
    let mut gram = [[0i64; 6]; 6];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = i64::try_from(&m[(i, j)]).map_err(|_| LatticeError::Parse("pattern: entry out of range".into()))?;
        }
    }
    DiagramPattern::new(gram).map_err(|e| LatticeError::Parse(format!("pattern: {e}")))
}

/// Where a root-set file takes its lattice from.
#[derive(Clone, Debug, PartialEq)]
pub enum LatticeRef {
    Path(PathBuf),
    Inline(Lattice),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSetFile {
    pub lattice: Option<LatticeRef>,
    pub roots: Vec<LatticeVector>,
}

impl RootSetFile {
    /// Loads the referenced lattice; relative paths resolve against `base`.
    pub fn resolve_lattice(&self, base: &Path) -> Result<Option<Lattice>> {
        match &self.lattice {
            None => Ok(None),
            Some(LatticeRef::Inline(l)) => Ok(Some(l.clone())),
            Some(LatticeRef::Path(p)) => {
                let path = if p.is_absolute() { p.clone() } else { base.join(p) };
                let text = std::fs::read_to_string(&path).map_err(|e| LatticeError::Parse(format!("{}: {e}", path.display())))?;
                lattice_from_json(&text).map(Some)
            }
        }
    }
}

pub fn root_set_from_json(text: &str) -> Result<RootSetFile> {
    let v = parse_value(text)?;
    let obj = object(&v, "root set")?;
    let lattice = match obj.get("lattice") {
        None | Some(Value::Null) => None,
        Some(Value::String(p)) => Some(LatticeRef::Path(PathBuf::from(p))),
        Some(inline) => Some(LatticeRef::Inline(lattice_from_value(inline)?)),
    };
    let roots = field(obj, "roots", "root set")?
        .as_array()
        .ok_or_else(|| LatticeError::Parse("root set roots: expected an array".into()))?
        .iter()
        .map(|r| int_list(r, "root").map(LatticeVector::new))
        .collect::<Result<Vec<_>>>()?;
    Ok(RootSetFile { lattice, roots })
}

/// `(pg, multiplicities)` from a surface descriptor.
pub fn surface_descriptor_from_json(text: &str) -> Result<(u64, Vec<u64>)> {
    let v = parse_value(text)?;
    let obj = object(&v, "surface")?;
    let pg = field(obj, "pg", "surface")?.as_u64().ok_or_else(|| LatticeError::Parse("surface pg: expected a non-negative integer".into()))?;
    let mults = match obj.get("multiplicities") {
        None | Some(Value::Null) => Vec::new(),
        Some(m) => m
            .as_array()
            .ok_or_else(|| LatticeError::Parse("surface multiplicities: expected an array".into()))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| LatticeError::Parse("surface multiplicities: expected non-negative integers".into())))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok((pg, mults))
}

pub(crate) fn int_row(xs: &[Int]) -> String {
    let parts: Vec<String> = xs.iter().map(Int::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub(crate) fn matrix_rows(m: &IntMatrix, indent: &str) -> String {
    if m.rows() == 0 {
        return "[]".into();
    }
    let rows: Vec<String> = (0..m.rows()).map(|i| format!("{indent}  {}", int_row(m.row(i)))).collect();
    format!("[\n{}\n{indent}]", rows.join(",\n"))
}

pub(crate) fn lattice_json_indented(l: &Lattice, indent: &str) -> String {
    let labels = match l.labels() {
        Some(ls) => serde_json::to_string(ls).expect("strings serialize"),
        None => "null".into(),
    };
    format!(
        "{{\n{indent}  \"rank\": {},\n{indent}  \"gram\": {},\n{indent}  \"labels\": {}\n{indent}}}",
        l.rank(),
        matrix_rows(l.gram(), &format!("{indent}  ")),
        labels
    )
}

pub fn lattice_to_json(l: &Lattice) -> String {
    lattice_json_indented(l, "") + "\n"
}

pub fn vector_to_json(v: &LatticeVector) -> String {
    format!("{{\"coords\": {}}}\n", int_row(v.coords()))
}

pub fn isometry_to_json(m: &IntMatrix) -> String {
    format!("{{\n  \"matrix\": {}\n}}\n", matrix_rows(m, "  "))
}

pub fn root_set_to_json(lattice: Option<&Lattice>, roots: &[LatticeVector]) -> String {
    let lat = match lattice {
        Some(l) => lattice_json_indented(l, "  "),
        None => "null".into(),
    };
    let rows: Vec<String> = roots.iter().map(|r| format!("    {}", int_row(r.coords()))).collect();
    let body = if rows.is_empty() { "[]".to_string() } else { format!("[\n{}\n  ]", rows.join(",\n")) };
    format!("{{\n  \"lattice\": {lat},\n  \"roots\": {body}\n}}\n")
}

pub fn pattern_to_json(p: &DiagramPattern) -> String {
    let rows: Vec<String> = p
        .gram()
        .iter()
        .map(|r| format!("    [{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("{{\n  \"pattern\": [\n{}\n  ]\n}}\n", rows.join(",\n"))
}

/// Model export: the lattice plus the named classes.
pub fn model_to_json(s: &SurfaceModel) -> String {
    let sigma = s.sigma.as_ref().map_or("null".to_string(), |v| int_row(v.coords()));
    let fibres: Vec<String> = s.fibres.iter().map(|fi| format!("    {{\"m\": {}, \"class\": {}}}", fi.multiplicity, int_row(fi.class.coords()))).collect();
    let fibres = if fibres.is_empty() { "[]".to_string() } else { format!("[\n{}\n  ]", fibres.join(",\n")) };
    format!(
        "{{\n  \"pg\": {},\n  \"multiplicities\": {:?},\n  \"lattice\": {},\n  \"f\": {},\n  \"e\": {},\n  \"k\": {},\n  \"sigma\": {},\n  \"fibres\": {}\n}}\n",
        s.pg,
        s.multiplicities(),
        lattice_json_indented(&s.lattice, "  "),
        int_row(s.f.coords()),
        int_row(s.e.coords()),
        int_row(s.k.coords()),
        sigma,
        fibres
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::StandardKind;

    #[test]
    fn lattice_roundtrip_with_big_entries() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let l = Lattice::new(IntMatrix::from_rows(vec![vec![big.clone(), Int::from(1)], vec![Int::from(1), Int::from(-2)]]).unwrap())
            .unwrap()
            .with_labels(vec!["e".into(), "f\"".into()])
            .unwrap();
        let back = lattice_from_json(&lattice_to_json(&l)).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.gram()[(0, 0)], big);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = lattice_from_json("{\"rank\": 2,\n \"gram\": [[0,1],[1,0]\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line") && msg.contains("column"), "{msg}");
    }

    #[test]
    fn semantic_rejections() {
        assert!(lattice_from_json(r#"{"rank": 2, "gram": [[0,1],[2,0]]}"#).is_err());
        assert!(lattice_from_json(r#"{"rank": 3, "gram": [[0,1],[1,0]]}"#).is_err());
        assert!(lattice_from_json(r#"{"rank": 2, "gram": [[0,1.5],[1.5,0]]}"#).is_err());
        assert!(lattice_from_json(r#"{"gram": [[0,1],[1]]}"#).is_err());
        assert!(lattice_from_json(r#"{"gram": [[0,1],[1,0]], "labels": ["a"]}"#).is_err());
    }

    #[test]
    fn other_formats() {
        assert_eq!(vector_from_json(r#"{"coords": [1, -2, 3]}"#).unwrap(), LatticeVector::from_i64(&[1, -2, 3]));
        let m = isometry_matrix_from_json(r#"{"matrix": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(isometry_matrix_from_json(&isometry_to_json(&m)).unwrap(), m);
        let p = DiagramPattern::default_pattern();
        assert_eq!(pattern_from_json(&pattern_to_json(&p)).unwrap(), p);
        assert!(pattern_from_json(r#"{"pattern": [[-2]]}"#).is_err());
        assert_eq!(surface_descriptor_from_json(r#"{"pg": 1, "multiplicities": [2, 3]}"#).unwrap(), (1, vec![2, 3]));
        assert_eq!(surface_descriptor_from_json(r#"{"pg": 2}"#).unwrap(), (2, vec![]));
    }

    #[test]
    fn model_export_parses_back() {
        let s = crate::surface::build_surface_model(1, &[2, 3]).unwrap();
        let text = model_to_json(&s);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(lattice_from_value(&v["lattice"]).unwrap(), *s.lattice);
        assert_eq!(int_list(&v["k"], "k").unwrap(), s.k.coords());
        assert!(v["sigma"].is_null());
        assert_eq!(v["fibres"][1]["m"].as_u64(), Some(3));
        assert_eq!(int_list(&v["fibres"][1]["class"], "class").unwrap(), s.fibres[1].class.coords());
    }

    #[test]
    fn root_sets() {
        let a2 = Lattice::standard(&StandardKind::A(2), -1).unwrap();
        let roots = vec![LatticeVector::from_i64(&[1, 0]), LatticeVector::from_i64(&[0, 1])];
        let text = root_set_to_json(Some(&a2), &roots);
        let parsed = root_set_from_json(&text).unwrap();
        assert_eq!(parsed.roots, roots);
        assert_eq!(parsed.lattice, Some(LatticeRef::Inline(a2)));
        let by_path = root_set_from_json(r#"{"lattice": "a2.json", "roots": []}"#).unwrap();
        assert_eq!(by_path.lattice, Some(LatticeRef::Path("a2.json".into())));
    }
}
