//! CSV and JSON formats.
//!
//! * trajectory CSV: header `u1,..,um,y1,..,yp`, one row per time step
//! * state CSV: header `x1,..,xn`; input CSV: header `u1,..,um`
//! * behavior JSON: `{"L", "q", "hull", "generators"}`
//! * model JSON: `{"n", "m", "p", "affine", "A", "B", "C", "D", "E"?, "F"?}`
//! * matrix JSON: `{"rows", "cols", "entries"}`
//!
//! Matrices in JSON are row-major arrays of arrays. Empty blocks may be
//! written as `[]`. The offsets `E` and `F` may also be flat arrays.

use serde::{Deserialize, Serialize};

use crate::behavior::{FiniteBehavior, HullType, MembershipCertificate, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::nnrank::{LowerBoundMethod, MonomialCertificate};
use crate::pecheck::{ModelClass, MonomialStatus, PeReport, Verdict};
use crate::statespace::{StateSpaceModel, StateTrajectory};

fn parse_err(msg: impl std::fmt::Display) -> Error {
    Error::Parse(msg.to_string())
}

/// Reads a headed numeric CSV. Returns the header names and the data.
fn read_numeric_csv(text: &str) -> Result<(Vec<String>, DenseMatrix)> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers().map_err(parse_err)?.iter().map(str::to_owned).collect();
    if headers.iter().all(String::is_empty) {
        return Err(parse_err("missing CSV header"));
    }
    let cols = headers.len();
    let mut data = Vec::new();
    let mut rows = 0;
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(parse_err)?;
        if record.len() != cols {
            return Err(parse_err(format!(
                "data row {} has {} fields, expected {cols}",
                line + 1,
                record.len()
            )));
        }
        for field in &record {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(format!("data row {}: `{field}` is not a number", line + 1)))?;
            if !v.is_finite() {
                return Err(parse_err(format!("data row {}: non-finite value `{field}`", line + 1)));
            }
            data.push(v);
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(parse_err("CSV has no data rows"));
    }
    Ok((headers, DenseMatrix::new(rows, cols, data)?))
}

/// Number of leading headers of the form `{prefix}1, {prefix}2, ...`.
fn count_prefixed(headers: &[String], prefix: char) -> usize {
    headers
        .iter()
        .enumerate()
        .take_while(|(k, h)| h.strip_prefix(prefix).is_some_and(|rest| rest == (k + 1).to_string()))
        .count()
}

fn expect_names(headers: &[String], prefix: char) -> Result<usize> {
    let k = count_prefixed(headers, prefix);
    if k == 0 || k != headers.len() {
        return Err(parse_err(format!(
            "header must be {prefix}1,...,{prefix}k, got `{}`",
            headers.join(",")
        )));
    }
    Ok(k)
}

pub fn parse_trajectory_csv(text: &str) -> Result<Trajectory> {
    let (headers, samples) = read_numeric_csv(text)?;
    let m = count_prefixed(&headers, 'u');
    let p = count_prefixed(&headers[m..], 'y');
    if m + p != headers.len() {
        return Err(parse_err(format!("header must be u1,...,um,y1,...,yp, got `{}`", headers.join(","))));
    }
    Trajectory::new(m, p, samples)
}

pub fn parse_state_csv(text: &str) -> Result<StateTrajectory> {
    let (headers, samples) = read_numeric_csv(text)?;
    expect_names(&headers, 'x')?;
    StateTrajectory::new(samples)
}

/// Input sequence as a `T x m` matrix.
pub fn parse_input_csv(text: &str) -> Result<DenseMatrix> {
    let (headers, samples) = read_numeric_csv(text)?;
    expect_names(&headers, 'u')?;
    Ok(samples)
}

fn write_csv(headers: &[String], m: &DenseMatrix) -> String {
    let mut out = headers.join(",");
    out.push('\n');
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn names(prefix: char, k: usize) -> impl Iterator<Item = String> {
    (1..=k).map(move |i| format!("{prefix}{i}"))
}

pub fn write_trajectory_csv(w: &Trajectory) -> String {
    let headers: Vec<String> = names('u', w.m()).chain(names('y', w.p())).collect();
    write_csv(&headers, w.samples())
}

pub fn write_state_csv(x: &StateTrajectory) -> String {
    let headers: Vec<String> = names('x', x.n()).collect();
    write_csv(&headers, x.samples())
}

fn nested_to_matrix(rows: &[Vec<f64>], shape: (usize, usize), what: &str) -> Result<DenseMatrix> {
    if rows.is_empty() && shape.0 * shape.1 == 0 {
        return Ok(DenseMatrix::zeros(shape.0, shape.1));
    }
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(parse_err(format!("{what} must be {}x{}", shape.0, shape.1)));
    }
    DenseMatrix::from_rows(rows).map_err(|e| parse_err(format!("{what}: {e}")))
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<f64>>,
}

pub fn matrix_to_json(m: &DenseMatrix) -> String {
    let j = MatrixJson { rows: m.rows(), cols: m.cols(), entries: m.to_rows() };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn parse_matrix_json(text: &str) -> Result<DenseMatrix> {
    let j: MatrixJson = serde_json::from_str(text).map_err(parse_err)?;
    nested_to_matrix(&j.entries, (j.rows, j.cols), "entries")
}

#[derive(Serialize, Deserialize)]
struct BehaviorJson {
    #[serde(rename = "L")]
    horizon: usize,
    q: usize,
    hull: HullType,
    generators: Vec<Vec<f64>>,
}

impl From<&FiniteBehavior> for BehaviorJson {
    fn from(b: &FiniteBehavior) -> Self {
        Self { horizon: b.horizon(), q: b.q(), hull: b.hull(), generators: b.generators().to_rows() }
    }
}

pub fn behavior_to_json(b: &FiniteBehavior) -> String {
    serde_json::to_string_pretty(&BehaviorJson::from(b)).expect("serializable")
}

pub fn parse_behavior_json(text: &str) -> Result<FiniteBehavior> {
    let j: BehaviorJson = serde_json::from_str(text).map_err(parse_err)?;
    let rows = j.horizon.checked_mul(j.q).ok_or_else(|| parse_err("L * q overflows"))?;
    let cols = j.generators.first().map_or(0, Vec::len);
    let g = nested_to_matrix(&j.generators, (rows, cols), "generators")?;
    FiniteBehavior::new(j.horizon, j.q, g, j.hull)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum VectorJson {
    Nested(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

impl VectorJson {
    fn into_vec(self, len: usize, what: &str) -> Result<Vec<f64>> {
        let v: Vec<f64> = match self {
            VectorJson::Flat(v) => v,
            VectorJson::Nested(rows) => {
                if rows.iter().any(|r| r.len() != 1) {
                    return Err(parse_err(format!("{what} must be a column")));
                }
                rows.into_iter().map(|r| r[0]).collect()
            }
        };
        if v.len() != len {
            return Err(parse_err(format!("{what} must have length {len}")));
        }
        Ok(v)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    n: usize,
    m: usize,
    p: usize,
    #[serde(default)]
    affine: bool,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "B", default)]
    b: Vec<Vec<f64>>,
    #[serde(rename = "C")]
    c: Vec<Vec<f64>>,
    #[serde(rename = "D", default)]
    d: Vec<Vec<f64>>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    e: Option<VectorJson>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    f: Option<VectorJson>,
}

pub fn parse_model_json(text: &str) -> Result<StateSpaceModel> {
    let j: ModelJson = serde_json::from_str(text).map_err(parse_err)?;
    let (n, m, p) = (j.n, j.m, j.p);
    const MAX_DIM: usize = 1 << 12;
    if n > MAX_DIM || m > MAX_DIM || p > MAX_DIM {
        return Err(parse_err("model dimensions are too large"));
    }
    let a = nested_to_matrix(&j.a, (n, n), "A")?;
    let b = nested_to_matrix(&j.b, (n, m), "B")?;
    let c = nested_to_matrix(&j.c, (p, n), "C")?;
    let d = nested_to_matrix(&j.d, (p, m), "D")?;
    if j.affine {
        let e = j.e.map_or(Ok(vec![0.0; n]), |e| e.into_vec(n, "E"))?;
        let f = j.f.map_or(Ok(vec![0.0; p]), |f| f.into_vec(p, "F"))?;
        StateSpaceModel::affine(a, b, c, d, e, f)
    } else {
        if j.e.is_some() || j.f.is_some() {
            return Err(parse_err("E and F are only allowed when affine is true"));
        }
        StateSpaceModel::linear(a, b, c, d)
    }
}

pub fn model_to_json(model: &StateSpaceModel) -> String {
    let offsets = model.offsets();
    let j = ModelJson {
        n: model.n(),
        m: model.m(),
        p: model.p(),
        affine: model.is_affine(),
        a: model.a().to_rows(),
        b: model.b().to_rows(),
        c: model.c().to_rows(),
        d: model.d().to_rows(),
        e: offsets.map(|(e, _)| VectorJson::Flat(e.to_vec())),
        f: offsets.map(|(_, f)| VectorJson::Flat(f.to_vec())),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn certificate_to_json(c: &MembershipCertificate) -> String {
    serde_json::to_string_pretty(c).expect("serializable")
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
enum MonomialJson {
    Found,
    NotFound,
    NotChecked,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PeReportJson<'a> {
    class: ModelClass,
    #[serde(rename = "L")]
    depth: usize,
    m: usize,
    n: usize,
    required_rank: usize,
    ordinary_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    nn_lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nn_lower_method: Option<LowerBoundMethod>,
    /// `null` when no factorization was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    nn_upper: Option<Option<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monomial_found: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monomial_status: Option<MonomialJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monomial_certificate: Option<&'a MonomialCertificate>,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    representation: Option<BehaviorJson>,
}

pub fn pe_report_to_json(r: &PeReport) -> String {
    let (status, cert) = match &r.monomial {
        None => (None, None),
        Some(MonomialStatus::Found(c)) => (Some(MonomialJson::Found), Some(c)),
        Some(MonomialStatus::NotFound) => (Some(MonomialJson::NotFound), None),
        Some(MonomialStatus::NotChecked) => (Some(MonomialJson::NotChecked), None),
    };
    let j = PeReportJson {
        class: r.class,
        depth: r.depth,
        m: r.m,
        n: r.n,
        required_rank: r.required_rank,
        ordinary_rank: r.ordinary_rank,
        nn_lower: r.nn_bounds.as_ref().map(|b| b.lower),
        nn_lower_method: r.nn_bounds.as_ref().map(|b| b.lower_method),
        nn_upper: r.nn_bounds.as_ref().map(|b| b.upper),
        monomial_found: r.monomial.as_ref().and_then(|s| match s {
            MonomialStatus::Found(_) => Some(true),
            MonomialStatus::NotFound => Some(false),
            MonomialStatus::NotChecked => None,
        }),
        monomial_status: status,
        monomial_certificate: cert,
        verdict: r.verdict,
        representation: r.representation.as_ref().map(BehaviorJson::from),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trajectory_round_trip() {
        let text = "u1,y1,y2\n1,0.5,-2\n0,0.25,3e-3\n";
        let w = parse_trajectory_csv(text).unwrap();
        assert_eq!((w.m(), w.p(), w.len()), (1, 2, 2));
        assert_eq!(w.sample(1), &[0.0, 0.25, 0.003]);
        assert_eq!(parse_trajectory_csv(&write_trajectory_csv(&w)).unwrap(), w);
    }

    #[test]
    fn trajectory_without_inputs() {
        let w = parse_trajectory_csv("y1\n0\n0\n1\n").unwrap();
        assert_eq!((w.m(), w.p()), (0, 1));
        assert_eq!(write_trajectory_csv(&w), "y1\n0\n0\n1\n");
    }

    #[test]
    fn trajectory_rejects_malformed_text() {
        for bad in [
            "",
            "y1\n",
            "y2\n1\n",
            "y1,u1\n1,2\n",
            "u1,y1\n1\n",
            "y1\nabc\n",
            "y1\nNaN\n",
            "y1\ninf\n",
            "z1\n1\n",
            "u1,u3\n1,2\n",
        ] {
            assert!(
                matches!(parse_trajectory_csv(bad), Err(Error::Parse(_)) | Err(Error::Input(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn state_and_input_csv() {
        let x = parse_state_csv("x1,x2\n1,0\n0,1\n").unwrap();
        assert_eq!(x.n(), 2);
        assert_eq!(parse_state_csv(&write_state_csv(&x)).unwrap(), x);
        assert!(parse_state_csv("y1\n1\n").is_err());
        let u = parse_input_csv("u1\n1\n2\n").unwrap();
        assert_eq!(u.shape(), (2, 1));
        assert!(parse_input_csv("x1\n1\n").is_err());
    }

    #[test]
    fn behavior_json_round_trip() {
        let g = DenseMatrix::from_rows(&[[1.0, 0.0], [0.5, 2.0]]).unwrap();
        let b = FiniteBehavior::new(2, 1, g, HullType::ConvexCone).unwrap();
        let text = behavior_to_json(&b);
        assert!(text.contains("\"ccone\""));
        assert_eq!(parse_behavior_json(&text).unwrap(), b);
        assert!(parse_behavior_json(r#"{"L":2,"q":1,"hull":"ccone","generators":[[1]]}"#).is_err());
        assert!(parse_behavior_json(r#"{"L":1,"q":1,"hull":"cube","generators":[[1]]}"#).is_err());
        assert!(parse_behavior_json(r#"{"L":1,"q":1,"hull":"conv","generators":[]}"#).is_err());
    }

    #[test]
    fn model_json_accepts_empty_blocks_and_flat_offsets() {
        let text =
            r#"{"n":1,"m":0,"p":1,"affine":true,"A":[[0.5]],"B":[],"C":[[1]],"D":[],"E":[1],"F":[[0]]}"#;
        let model = parse_model_json(text).unwrap();
        assert!(model.is_affine());
        assert_eq!(model.b().shape(), (1, 0));
        assert_eq!(model.offsets().unwrap(), (&[1.0][..], &[0.0][..]));
        let again = parse_model_json(&model_to_json(&model)).unwrap();
        assert_eq!(again, model);

        let nested_empty =
            r#"{"n":2,"m":0,"p":1,"affine":false,"A":[[0,1],[1,0]],"B":[[],[]],"C":[[0,1]],"D":[[]]}"#;
        assert_eq!(parse_model_json(nested_empty).unwrap().n(), 2);
    }

    #[test]
    fn model_json_rejects_bad_shapes() {
        for bad in [
            r#"{"n":2,"m":0,"p":1,"A":[[1]],"C":[[1,0]]}"#,
            r#"{"n":1,"m":1,"p":1,"A":[[1]],"B":[],"C":[[1]],"D":[[0]]}"#,
            r#"{"n":1,"m":0,"p":1,"A":[[1]],"C":[[1]],"E":[1]}"#,
            r#"{"n":1,"m":0,"p":1,"affine":true,"A":[[1]],"C":[[1]],"E":[1,2]}"#,
            r#"{"n":1,"m":0,"p":1,"A":[[1e999]],"C":[[1]]}"#,
            "not json",
        ] {
            assert!(parse_model_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = DenseMatrix::from_rows(&[[0.1, 0.2, 0.30000000000000004]]).unwrap();
        assert_eq!(parse_matrix_json(&matrix_to_json(&m)).unwrap(), m);
    }
}
