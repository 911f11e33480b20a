//! Check suites shared by the command line and the acceptance tests.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::numeric::{c_int, c_to_f64, int, real, Rational, ToF64};
use crate::poly::{ConstMatrix, Matrix, Poly, PolyMatrix};
use crate::quadratic::is_perfect_square;
use crate::quadrature::{gram_table, sn_symmetry_residual, so4_symmetry_residual, GramReport, QuadWeight};
use crate::sn::{self, SnFundamentalCase};
use crate::so4::{
    apply_operator, coefficient_vector, coefficient_vector_w0, hahn_conjugations, hypergeometrization_residuals,
    l_spectrum, lambda_matrix, mu_matrix, mu_wk, spectrum_residual, So4, So4Operator,
};
use crate::special::hahn_recurrence_residuals;
use crate::zonal::correspondence_report;
use crate::Result;

/// Off-diagonal Gram tolerance for the SO(4) family.
pub const SO4_GRAM_TOL: f64 = 1e-12;
/// Off-diagonal Gram tolerance for the fundamental family on `S^n`.
pub const SN_GRAM_TOL: f64 = 1e-10;
/// Operator symmetry tolerance.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Mass of the normalized scalar factor.
pub const MASS_TOL: f64 = 1e-13;
/// Highest monomial degree in the symmetry checks.
pub const SYMMETRY_DEGREE: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
}

impl Check {
    pub fn exact(name: impl Into<String>, residual: f64) -> Self {
        Check { name: name.into(), pass: residual == 0.0, residual }
    }

    pub fn within(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check { name: name.into(), pass: residual.is_finite() && residual < tol, residual }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), pass: ok, residual: if ok { 0.0 } else { 1.0 } }
    }

    pub fn line(&self) -> String {
        format!("CHECK {} {} {:.3e}", self.name, if self.pass { "PASS" } else { "FAIL" }, self.residual)
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "pass": self.pass, "residual": self.residual })
    }
}

/// Checks plus the Gram blocks computed along the way.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
    pub gram: Vec<GramReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
}

/// Largest coefficient magnitude of a polynomial matrix.
pub fn poly_norm(p: &PolyMatrix) -> f64 {
    p.entries()
        .iter()
        .flat_map(|e| e.coeffs().iter())
        .map(|c| c_to_f64(c).norm())
        .fold(0.0, f64::max)
}

pub fn const_norm(m: &ConstMatrix) -> f64 {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| c_to_f64(m.get(i, j)).norm())
        .fold(0.0, f64::max)
}

pub fn rational_norm(m: &Matrix<Rational>) -> f64 {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).as_f64().abs())
        .fold(0.0, f64::max)
}

pub fn scalar_poly_norm(p: &Poly) -> f64 {
    p.coeffs().iter().map(|c| c_to_f64(c).norm()).fold(0.0, f64::max)
}

/// `(C₀+C₁)U - U·diag(-k(k+1))`.
pub fn hahn_eigen_residual(so4: &So4) -> ConstMatrix {
    let u = so4.hahn.u.to_complex();
    let s = &so4.structure;
    let d = ConstMatrix::diag((0..=so4.ell()).map(|k| c_int(-((k * (k + 1)) as i64))).collect());
    s.c0.add(&s.c1).mul(&u).sub(&u.mul(&d))
}

/// `Op·P - P·D` for one operator and its eigenvalue matrix.
pub fn eigen_residual(so4: &So4, op: So4Operator, p: &PolyMatrix, d: &ConstMatrix) -> Result<PolyMatrix> {
    Ok(apply_operator(op, &so4.structure, p)?.sub(&p.mul_const_right(d)))
}

/// Exact identities for one `ell`: Hahn relations, hypergeometrization,
/// eigen relations for `w ≤ max_w`, and the spectrum of `L(λ)` for
/// `n ≤ max_w`.
pub fn so4_exact_checks(ell: usize, max_w: usize) -> Result<Vec<Check>> {
    let so4 = So4::new(ell);
    let mut out = Vec::new();
    out.push(Check::exact("hahn_eigen", const_norm(&hahn_eigen_residual(&so4))));
    for (name, r) in ["hahn_rec_j", "hahn_rec_k", "hahn_rec_mixed"].iter().zip(hahn_recurrence_residuals(&so4.hahn)) {
        out.push(Check::exact(*name, rational_norm(&r)));
    }
    for (name, r) in ["hahn_conj_a0", "hahn_conj_sum", "hahn_conj_diff"].iter().zip(hahn_conjugations(&so4.structure, &so4.hahn)) {
        out.push(Check::exact(*name, const_norm(&r)));
    }
    for (name, r) in ["para_d", "para_e"].iter().zip(hypergeometrization_residuals(&so4.structure, &so4.psi)) {
        out.push(Check::exact(*name, poly_norm(&r)));
    }
    out.push(Check::exact("psi_is_p0", poly_norm(&so4.psi.sub(&so4.p(0)))));
    let lambda0 = lambda_matrix(ell, 0);
    let mu0 = mu_matrix(ell, 0);
    out.push(Check::exact("dbar_psi", poly_norm(&eigen_residual(&so4, So4Operator::Dbar, &so4.psi, &lambda0)?)));
    out.push(Check::exact("ebar_psi", poly_norm(&eigen_residual(&so4, So4Operator::Ebar, &so4.psi, &mu0)?)));
    out.push(Check::exact("tilde_p0_identity", poly_norm(&so4.tilde_p(0).sub(&PolyMatrix::identity(ell + 1)))));
    for w in 0..=max_w {
        let (lw, mw) = (lambda_matrix(ell, w), mu_matrix(ell, w));
        let p = so4.p(w);
        let pt = so4.tilde_p(w);
        out.push(Check::exact(format!("dbar_p_w{w}"), poly_norm(&eigen_residual(&so4, So4Operator::Dbar, &p, &lw)?)));
        out.push(Check::exact(format!("ebar_p_w{w}"), poly_norm(&eigen_residual(&so4, So4Operator::Ebar, &p, &mw)?)));
        out.push(Check::exact(format!("dtilde_pt_w{w}"), poly_norm(&eigen_residual(&so4, So4Operator::Dtilde, &pt, &lw)?)));
        out.push(Check::exact(format!("etilde_pt_w{w}"), poly_norm(&eigen_residual(&so4, So4Operator::Etilde, &pt, &mw)?)));
    }
    for n in 0..=max_w {
        out.push(Check::exact(format!("spectrum_n{n}"), scalar_poly_norm(&spectrum_residual(ell, n)?)));
        let regenerated = l_spectrum(ell, n).map(|v| v.iter().all(|(_, _, a)| a[0] == c_int(1))).unwrap_or(false);
        out.push(Check::flag(format!("eigenvectors_n{n}"), regenerated));
    }
    let w0_ok = (0..=ell).all(|k| {
        coefficient_vector(ell, 0, k, &real(mu_wk(ell, 0, k))).map(|a| a == coefficient_vector_w0(ell, k)).unwrap_or(false)
    });
    out.push(Check::flag("coefficients_w0", w0_ok));
    Ok(out)
}

/// Largest off-diagonal ratio, smallest diagonal entry and largest
/// diagonal imaginary part over a Gram table.
fn gram_summary(table: &[GramReport]) -> (f64, f64, f64) {
    let off = table.iter().map(|r| r.max_offdiag).fold(0.0, f64::max);
    let min_diag = table.iter().flat_map(|r| r.diag.iter().copied()).fold(f64::INFINITY, f64::min);
    let imag = table
        .iter()
        .filter(|r| r.w == r.w_prime)
        .map(|r| r.max_diag_imag / r.diag.iter().map(|d| d.abs()).fold(f64::MIN_POSITIVE, f64::max))
        .fold(0.0, f64::max);
    (off, min_diag, imag)
}

/// Quadrature checks for one `ell`: Gram orthogonality of `P̃_0..P̃_max_w`,
/// the scalar mass and the symmetry of `D̃`, `Ẽ`.
pub fn so4_numeric_checks(ell: usize, max_w: usize, nodes: Option<usize>) -> Result<SuiteReport> {
    let so4 = So4::new(ell);
    let weight = so4.weight();
    let family: Vec<PolyMatrix> = (0..=max_w).map(|w| so4.tilde_p(w)).collect();
    let gram = gram_table(&weight, &family, nodes)?;
    let (off, min_diag, imag) = gram_summary(&gram);
    let mut report = SuiteReport::default();
    report.push(Check::within("gram_offdiag", off, SO4_GRAM_TOL));
    report.push(Check::flag("gram_diag_positive", min_diag > 0.0));
    report.push(Check::within("gram_diag_real", imag, SO4_GRAM_TOL));
    let mass = weight.rule(2)?.integrate(|x| weight.node_factor(x));
    report.push(Check::within("scalar_mass", (mass - 1.0).abs(), MASS_TOL));
    for (name, op) in [("symmetry_dtilde", So4Operator::Dtilde), ("symmetry_etilde", So4Operator::Etilde)] {
        let r = so4_symmetry_residual(&so4, op, SYMMETRY_DEGREE, nodes)?;
        report.push(Check::within(name, r, SYMMETRY_TOL));
    }
    report.gram = gram;
    Ok(report)
}

pub fn so4_suite(ell: usize, max_w: usize, nodes: Option<usize>) -> Result<SuiteReport> {
    let mut report = so4_numeric_checks(ell, max_w, nodes)?;
    let mut checks = so4_exact_checks(ell, max_w)?;
    checks.append(&mut report.checks);
    report.checks = checks;
    Ok(report)
}

/// `4y(1-y)` times the `H`-equation residual of `Ψ` against `diag(-p, p-n)`.
pub fn sn_psi_residual(case: &SnFundamentalCase) -> PolyMatrix {
    let psi = case.psi();
    let eig = ConstMatrix::diag(vec![c_int(-(case.p as i64)), c_int(case.p as i64 - case.n as i64)]);
    case.apply_scaled(&psi).sub(&psi.mul_const_right(&eig).scale_poly(&Poly::from_ints(&[0, 4, -4])))
}

/// Exact identities for the fundamental case `(n, p)` with `w ≤ max_w`.
pub fn sn_exact_checks(n: usize, p: usize, max_w: usize) -> Result<Vec<Check>> {
    let case = SnFundamentalCase::new(n, p)?;
    let mut out = vec![Check::exact("psi_eigen", poly_norm(&sn_psi_residual(&case)))];
    out.push(Check::flag("lambda_w0", sn::lambda_n(n, p, 0, 0) == int(-(p as i64)) && sn::lambda_n(n, p, 0, 1) == int(p as i64 - n as i64)));
    if n.is_multiple_of(2) {
        let ell = n / 2;
        for w in p..=p + max_w {
            let h = sn::scalar_h(ell, p, w)?;
            let at_one = h.poly.eval(&c_int(1)) == c_int(1);
            out.push(Check::exact(format!("scalar_h_w{w}"), scalar_poly_norm(&h.residual())));
            out.push(Check::flag(format!("scalar_h_w{w}_at_one"), at_one));
        }
    }
    let four = Poly::from_ints(&[0, 4, -4]);
    for w in 0..=max_w {
        for delta in [0, 1] {
            let tag = format!("w{w}_d{delta}");
            let s = sn::fundamental_p(n, p, w, delta)?;
            let lead = s.leading();
            let d = delta as usize;
            out.push(Check::flag(format!("degree_{tag}"), s.degree == w));
            out.push(Check::flag(format!("leading_{tag}"), lead[1 - d].is_zero() && !lead[d].is_zero()));
            out.push(Check::flag(format!("discriminant_{tag}"), !is_perfect_square(&s.hyp.disc)));
            let (sum, prod) = s.hyp.rational_coefficients()?;
            let lam = s.hyp.lambda.clone();
            let expect_prod = Matrix::diag(vec![lam.clone() + int(p as i64), lam + int((n - p) as i64)]);
            let expect_sum = Matrix::diag(vec![int(n as i64 + 2); 2]);
            out.push(Check::exact(format!("ab_{tag}"), rational_norm(&prod.sub(&expect_prod)).max(rational_norm(&sum.sub(&expect_sum)))));
            out.push(Check::exact(format!("hyp_residual_{tag}"), poly_norm(&s.residual()?)));
            let col = s.as_column();
            let lam = real(s.hyp.lambda.clone());
            out.push(Check::exact(format!("d_eigen_{tag}"), poly_norm(&case.apply_d(&col).sub(&col.scale(&lam)))));
            let h = s.h();
            out.push(Check::exact(format!("h_equation_{tag}"), poly_norm(&case.apply_scaled(&h).sub(&h.scale(&lam).scale_poly(&four)))));
            let at_one = h.eval(&c_int(1));
            out.push(Check::flag(format!("h_at_one_{tag}"), at_one.get(0, 0) == &c_int(1) && at_one.get(1, 0) == &c_int(1)));
        }
    }
    let f0 = sn::fundamental_p(n, p, 0, 0)?.h().column(0) == vec![Poly::from_ints(&[-1, 2]), Poly::one()];
    let f1 = sn::fundamental_p(n, p, 0, 1)?.h().column(0) == vec![Poly::one(), Poly::from_ints(&[-1, 2])];
    out.push(Check::flag("w0_cos_columns", f0 && f1));
    Ok(out)
}

pub fn sn_numeric_checks(n: usize, p: usize, max_w: usize, nodes: Option<usize>) -> Result<SuiteReport> {
    let case = SnFundamentalCase::new(n, p)?;
    let weight = sn::sn_weight(n, p)?;
    let family: Vec<PolyMatrix> = (0..=max_w).map(|w| sn::fundamental_p_matrix(n, p, w)).collect::<Result<_>>()?;
    let gram = gram_table(&weight, &family, nodes)?;
    let (off, min_diag, imag) = gram_summary(&gram);
    let mut report = SuiteReport::default();
    report.push(Check::within("gram_offdiag", off, SN_GRAM_TOL));
    report.push(Check::flag("gram_diag_positive", min_diag > 0.0));
    report.push(Check::within("gram_diag_real", imag, SN_GRAM_TOL));
    let mass = weight.rule(n / 2 + 2)?.integrate(|x| weight.node_factor(x));
    report.push(Check::within("scalar_mass", (mass - 1.0).abs(), MASS_TOL));
    let r = sn_symmetry_residual(&case, &weight, SYMMETRY_DEGREE, nodes)?;
    report.push(Check::within("symmetry_d", r, SYMMETRY_TOL));
    report.gram = gram;
    Ok(report)
}

pub fn sn_suite(n: usize, p: usize, max_w: usize, nodes: Option<usize>) -> Result<SuiteReport> {
    let mut report = sn_numeric_checks(n, p, max_w, nodes)?;
    let mut checks = sn_exact_checks(n, p, max_w)?;
    checks.append(&mut report.checks);
    report.checks = checks;
    Ok(report)
}

/// One check per `k ≤ max_k`, covering both the Jacobi identity and the
/// normalized zonal statement.
pub fn zonal_suite(n: usize, max_k: usize) -> Result<Vec<Check>> {
    (0..=max_k)
        .map(|k| {
            let r = correspondence_report(n, k)?;
            let res = scalar_poly_norm(&r.jacobi_residual).max(scalar_poly_norm(&r.phi_residual));
            Ok(Check::exact(format!("zonal_correspondence_k{k}"), res))
        })
        .collect()
}

/// Discriminants `(2w+n+1)² + 8(n/2 - j)` for `j ∈ {p, n-p}`, `1 ≤ p ≤ ⌊n/2⌋-1`,
/// `w ≤ max_w`, that turn out to be perfect squares.
pub fn discriminant_scan(max_n: usize, max_w: usize) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for n in 4..=max_n {
        for p in 1..n / 2 {
            for j in [p, n - p] {
                for w in 0..=max_w {
                    let d = (2 * w + n + 1).pow(2) as i64 + 4 * n as i64 - 8 * j as i64;
                    if is_perfect_square(&d.into()) {
                        bad.push((n, j, w));
                    }
                }
            }
        }
    }
    bad
}

/// `true` when every discriminant of the three-block case is irrational.
pub fn triple_discriminants_irrational(max_ell: usize, max_w: usize) -> Result<bool> {
    for ell in 1..=max_ell {
        let t = sn::triple111_operator(2 * ell + 1)?;
        for w in 0..=max_w {
            for delta in [-1, 0, 1] {
                if is_perfect_square(&t.discriminant(w, delta)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn checks_json(checks: &[Check]) -> Value {
    Value::Array(checks.iter().map(Check::to_json).collect())
}
