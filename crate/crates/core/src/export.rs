//! JSON documents and CSV tables emitted by the command line.

use serde_json::{json, Map, Value};

use crate::numeric::{c_int, rational_json};
use crate::poly::{Matrix, PolyMatrix};
use crate::quadratic::QuadNumber;
use crate::quadrature::GramReport;
use crate::sn;
use crate::so4::{h_eval, lambda_matrix, mu_matrix, So4, So4Weight};
use crate::verify::{checks_json, Check};
use crate::zonal::ZonalFamily;
use crate::Result;

pub const SCHEMA: &str = "mospher/1";

/// `{"schema": "mospher/1", "kind": kind, ...fields}` in insertion order.
pub fn document(kind: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("kind".into(), json!(kind));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    Value::Object(map)
}

/// Pretty JSON followed by a newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn f64_cell(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn quad_matrix_json(m: &Matrix<QuadNumber>) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).to_json())
            .collect::<Vec<_>>(),
    })
}

fn weight_json(w: &So4Weight) -> Value {
    json!({ "scalar_factor": So4Weight::SCALAR_FACTOR, "poly_part": w.poly_part.to_json() })
}

pub fn so4_gen_json(ell: usize, w: usize) -> Value {
    let so4 = So4::new(ell);
    document(
        "so4.gen",
        vec![
            ("ell", json!(ell)),
            ("w", json!(w)),
            ("variable", json!("u")),
            ("P_w", so4.p(w).to_json()),
            ("P_tilde_w", so4.tilde_p(w).to_json()),
            ("Lambda_w", lambda_matrix(ell, w).to_json()),
            ("M_w", mu_matrix(ell, w).to_json()),
            ("W", weight_json(&so4.weight())),
        ],
    )
}

fn push_poly_rows(out: &mut String, name: &str, m: &PolyMatrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for (k, c) in m.get(i, j).coeffs().iter().enumerate() {
                out.push_str(&format!("{name},{i},{j},{k},{},{}\n", c.re, c.im));
            }
        }
    }
}

/// Nonzero coefficients as rows `matrix,row,col,power,re,im`, exact.
pub fn so4_gen_csv(ell: usize, w: usize) -> String {
    let so4 = So4::new(ell);
    let mut out = String::from("matrix,row,col,power,re,im\n");
    push_poly_rows(&mut out, "P_w", &so4.p(w));
    push_poly_rows(&mut out, "P_tilde_w", &so4.tilde_p(w));
    push_poly_rows(&mut out, "Lambda_w", &PolyMatrix::from_const(&lambda_matrix(ell, w)));
    push_poly_rows(&mut out, "M_w", &PolyMatrix::from_const(&mu_matrix(ell, w)));
    push_poly_rows(&mut out, "W_poly_part", &so4.weight().poly_part);
    out
}

/// `grid` equally spaced points `u_i = -1 + 2i/grid`, `i = 1..=grid`.
pub fn open_closed_grid(grid: usize) -> Vec<f64> {
    (1..=grid).map(|i| -1.0 + 2.0 * i as f64 / grid as f64).collect()
}

/// CSV `u,h_0_re,h_0_im,…` of `H(u)` on `(-1, 1]`.
pub fn so4_eval_csv(ell: usize, w: usize, k: usize, grid: usize) -> Result<String> {
    let mut out = String::from("u");
    for j in 0..=ell {
        out.push_str(&format!(",h_{j}_re,h_{j}_im"));
    }
    out.push('\n');
    for u in open_closed_grid(grid) {
        let h = h_eval(ell, w, k, u)?;
        out.push_str(&f64_cell(u));
        for z in h {
            out.push_str(&format!(",{},{}", f64_cell(z.re), f64_cell(z.im)));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn sn_fundamental_json(n: usize, p: usize, w: usize, delta: i32) -> Result<Value> {
    let s = sn::fundamental_p(n, p, w, delta)?;
    let params = &s.hyp.params;
    Ok(document(
        "sn.fundamental",
        vec![
            ("n", json!(n)),
            ("p", json!(p)),
            ("w", json!(w)),
            ("delta", json!(delta)),
            ("variable", json!("y")),
            ("lambda", rational_json(&s.hyp.lambda)),
            ("degree", json!(s.degree)),
            ("root", s.hyp.root.to_json()),
            ("A", quad_matrix_json(&params.a)),
            ("B", quad_matrix_json(&params.b)),
            ("C", quad_matrix_json(&params.c)),
            ("P0", Value::Array(s.initial_vector.iter().map(rational_json).collect())),
            ("P", s.as_column().to_json()),
            ("H", s.h().to_json()),
        ],
    ))
}

/// CSV `y,H_0,H_1` of `H = ΨP` on `grid` equally spaced points of `[0, 1]`.
pub fn sn_fundamental_csv(n: usize, p: usize, w: usize, delta: i32, grid: usize) -> Result<String> {
    let h = sn::fundamental_p(n, p, w, delta)?.h();
    let mut out = String::from("y,H_0,H_1\n");
    let step = if grid > 1 { 1.0 / (grid - 1) as f64 } else { 0.0 };
    for i in 0..grid {
        let y = i as f64 * step;
        let v = h.eval_f64(y);
        out.push_str(&format!("{},{},{}\n", f64_cell(y), f64_cell(v[(0, 0)].re), f64_cell(v[(1, 0)].re)));
    }
    Ok(out)
}

/// Scalar type with `n = 2·ell`.
pub fn sn_scalar_json(n: usize, p: usize, w: usize) -> Result<Value> {
    if n % 2 == 1 {
        return Err(crate::Error::InvalidParameter(format!("scalar types need n even (n={n})")));
    }
    let h = sn::scalar_h(n / 2, p, w)?;
    let residual = h.residual();
    Ok(document(
        "sn.scalar",
        vec![
            ("n", json!(n)),
            ("ell", json!(n / 2)),
            ("p", json!(p)),
            ("w", json!(w)),
            ("variable", json!("y")),
            ("lambda", rational_json(&h.lambda)),
            ("normalizer", rational_json(&h.normalizer)),
            ("h", h.poly.to_json()),
            ("h_at_one", crate::numeric::complex_json(&h.poly.eval(&c_int(1)))),
            ("residual", residual.to_json()),
            ("residual_is_zero", json!(residual.is_zero())),
        ],
    ))
}

pub fn zonal_table_json(families: &[ZonalFamily]) -> Value {
    document("zonal.table", vec![("families", Value::Array(families.iter().map(ZonalFamily::to_json).collect()))])
}

pub fn verify_json(kind: &str, params: Vec<(&str, Value)>, checks: &[Check], gram: &[GramReport]) -> Value {
    let mut fields = params;
    fields.push(("all_pass", json!(checks.iter().all(|c| c.pass))));
    fields.push(("checks", checks_json(checks)));
    if !gram.is_empty() {
        fields.push(("gram", Value::Array(gram.iter().map(GramReport::to_json).collect())));
    }
    document(kind, fields)
}
