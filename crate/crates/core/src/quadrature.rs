//! Gaussian rules for the scalar factors of the weights, Gram matrices and
//! operator symmetry residuals.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use statrs::function::gamma::ln_gamma;

use crate::numeric::{int, pochhammer, ComplexRational, Rational, ToF64};
use crate::poly::{ConstMatrix, Matrix, Poly, PolyMatrix};
use crate::sn::{SnFundamentalCase, SnWeight};
use crate::so4::{apply_operator, So4, So4Operator, So4Weight};
use crate::{Error, Result};

pub const NODES_ENV: &str = "MOSPHER_NODES";

#[derive(Clone, Debug, PartialEq)]
pub enum RuleKind {
    /// `√(1-u²)` on `[-1, 1]`.
    Chebyshev2,
    /// `(1-y)^alpha · y^beta` on `[0, 1]`.
    Jacobi { alpha: Rational, beta: Rational },
    /// `1` on `[0, 1]`.
    Legendre,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interval {
    Symmetric,
    Unit,
}

impl Interval {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            Interval::Symmetric => (-1.0, 1.0),
            Interval::Unit => (0.0, 1.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadRule {
    pub kind: RuleKind,
    pub interval: Interval,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn mass(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect();
        pairwise_sum(&terms)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,weight\n");
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            out.push_str(&format!("{x:.16e},{w:.16e}\n"));
        }
        out
    }
}

/// Sum in a balanced binary tree so the result does not depend on how the
/// terms were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

fn pairwise_sum_complex(xs: &[Complex<f64>]) -> Complex<f64> {
    match xs.len() {
        0 => Complex::new(0.0, 0.0),
        1 => xs[0],
        n => pairwise_sum_complex(&xs[..n / 2]) + pairwise_sum_complex(&xs[n / 2..]),
    }
}

pub fn build_rule(kind: &RuleKind, m: usize) -> Result<QuadRule> {
    if m == 0 {
        return Err(Error::InvalidParameter("a rule needs at least one node".into()));
    }
    let (interval, nodes, weights) = match kind {
        RuleKind::Chebyshev2 => {
            let h = PI / (m as f64 + 1.0);
            let mut pairs: Vec<(f64, f64)> = (1..=m)
                .map(|i| {
                    let t = i as f64 * h;
                    (t.cos(), h * t.sin().powi(2))
                })
                .collect();
            pairs.reverse();
            let (n, w) = pairs.into_iter().unzip();
            (Interval::Symmetric, n, w)
        }
        RuleKind::Legendre => {
            let (n, w) = unit_jacobi(0.0, 0.0, m);
            (Interval::Unit, n, w)
        }
        RuleKind::Jacobi { alpha, beta } => {
            if alpha.as_f64() <= -1.0 || beta.as_f64() <= -1.0 {
                return Err(Error::InvalidParameter(format!("Jacobi exponents must exceed -1 ({alpha}, {beta})")));
            }
            let (n, w) = unit_jacobi(alpha.as_f64(), beta.as_f64(), m);
            (Interval::Unit, n, w)
        }
    };
    Ok(QuadRule { kind: kind.clone(), interval, nodes, weights })
}

fn unit_jacobi(alpha: f64, beta: f64, m: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = golub_welsch(alpha, beta, m);
    let scale = 2f64.powf(-(alpha + beta + 1.0));
    (x.iter().map(|x| (1.0 + x) / 2.0).collect(), w.iter().map(|w| w * scale).collect())
}

/// Nodes and weights for `(1-x)^alpha (1+x)^beta` on `[-1, 1]` from the
/// eigen decomposition of the monic recurrence matrix.
fn golub_welsch(alpha: f64, beta: f64, m: usize) -> (Vec<f64>, Vec<f64>) {
    let s = alpha + beta;
    let eps = 1e-14;
    let mut jac = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let kf = k as f64;
        let t = 2.0 * kf + s;
        jac[(k, k)] = if t.abs() < eps {
            (beta - alpha) / (s + 2.0)
        } else {
            (beta * beta - alpha * alpha) / (t * (t + 2.0))
        };
        if k + 1 < m {
            let k1 = kf + 1.0;
            let t1 = 2.0 * k1 + s;
            let b2 = if k == 0 && (s + 1.0).abs() < eps {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s).powi(2) * (3.0 + s))
            } else {
                4.0 * k1 * (k1 + alpha) * (k1 + beta) * (k1 + s) / (t1 * t1 * (t1 + 1.0) * (t1 - 1.0))
            };
            jac[(k, k + 1)] = b2.sqrt();
            jac[(k + 1, k)] = b2.sqrt();
        }
    }
    let mu0 = ((s + 1.0) * 2f64.ln() + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0) - ln_gamma(s + 2.0)).exp();
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// `(2/π)∫ u^k √(1-u²) du` over `[-1, 1]`.
pub fn chebyshev2_moment(k: usize) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    let m = (k / 2) as u64;
    let catalan = crate::numeric::binomial(2 * m, m as i64) / num_bigint::BigInt::from(m + 1);
    Rational::new(catalan, num_bigint::BigInt::from(4u32).pow(m as u32))
}

/// `k_n ∫ y^k (y(1-y))^{n/2-1} dy` over `[0, 1]`, normalized to mass one.
pub fn beta_moment(n: usize, k: usize) -> Rational {
    let half = Rational::new(int(n as i64).to_integer(), 2.into());
    pochhammer(&half, k as u32) / pochhammer(&int(n as i64), k as u32)
}

/// The scalar side of a weight: how to build its rule and its exact moments.
pub trait QuadWeight {
    fn poly_part(&self) -> &PolyMatrix;
    fn rule(&self, m: usize) -> Result<QuadRule>;
    /// Factor multiplied in at each node on top of the rule weight.
    fn node_factor(&self, x: f64) -> f64;
    /// Polynomial degree of [`QuadWeight::node_factor`].
    fn factor_degree(&self) -> usize;
    /// Normalized exact moment of the scalar factor.
    fn moment(&self, k: usize) -> Rational;
}

impl QuadWeight for So4Weight {
    fn poly_part(&self) -> &PolyMatrix {
        &self.poly_part
    }

    fn rule(&self, m: usize) -> Result<QuadRule> {
        build_rule(&RuleKind::Chebyshev2, m)
    }

    fn node_factor(&self, _x: f64) -> f64 {
        2.0 / PI
    }

    fn factor_degree(&self) -> usize {
        0
    }

    fn moment(&self, k: usize) -> Rational {
        chebyshev2_moment(k)
    }
}

impl QuadWeight for SnWeight {
    fn poly_part(&self) -> &PolyMatrix {
        &self.poly_part
    }

    fn rule(&self, m: usize) -> Result<QuadRule> {
        if self.n.is_multiple_of(2) {
            build_rule(&RuleKind::Legendre, m)
        } else {
            let e = self.exponent();
            build_rule(&RuleKind::Jacobi { alpha: e.clone(), beta: e }, m)
        }
    }

    fn node_factor(&self, x: f64) -> f64 {
        let c = self.normalization();
        if self.n.is_multiple_of(2) {
            c * (x * (1.0 - x)).powi(self.n as i32 / 2 - 1)
        } else {
            c
        }
    }

    fn factor_degree(&self) -> usize {
        if self.n.is_multiple_of(2) {
            self.n - 2
        } else {
            0
        }
    }

    fn moment(&self, k: usize) -> Rational {
        beta_moment(self.n, k)
    }
}

fn poly_degree(p: &PolyMatrix) -> usize {
    p.degree().unwrap_or(0)
}

/// Smallest node count for which the rule integrates `Q* W P` exactly.
pub fn required_nodes<W: QuadWeight>(weight: &W, p: &PolyMatrix, q: &PolyMatrix) -> usize {
    (poly_degree(weight.poly_part()) + poly_degree(p) + poly_degree(q) + weight.factor_degree()) / 2 + 1
}

/// Default node count for a polynomial integrand of total degree `deg`,
/// overridden by `MOSPHER_NODES`.
pub fn default_nodes(deg: usize) -> usize {
    std::env::var(NODES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&m: &usize| m > 0)
        .unwrap_or(deg / 2 + 8)
}

/// `⟨P, Q⟩ = ∫ Q(x)* W(x) P(x) dx`.
pub fn gram<W: QuadWeight>(weight: &W, p: &PolyMatrix, q: &PolyMatrix, m: usize) -> Result<DMatrix<Complex<f64>>> {
    let required = required_nodes(weight, p, q);
    if m < required {
        return Err(Error::InsufficientNodes { required, given: m });
    }
    if p.rows() != weight.poly_part().rows() || q.rows() != p.rows() {
        return Err(Error::ShapeMismatch(format!(
            "weight has {} rows, P has {}, Q has {}",
            weight.poly_part().rows(),
            p.rows(),
            q.rows()
        )));
    }
    let rule = weight.rule(m)?;
    let values: Vec<DMatrix<Complex<f64>>> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| {
            let scalar = Complex::new(w * weight.node_factor(x), 0.0);
            q.eval_f64(x).adjoint() * weight.poly_part().eval_f64(x) * p.eval_f64(x) * scalar
        })
        .collect();
    Ok(DMatrix::from_fn(q.cols(), p.cols(), |i, j| {
        let terms: Vec<Complex<f64>> = values.iter().map(|v| v[(i, j)]).collect();
        pairwise_sum_complex(&terms)
    }))
}

/// `∫ Q* W P` computed exactly from the moments of the scalar factor.
pub fn exact_gram<W: QuadWeight>(weight: &W, p: &PolyMatrix, q: &PolyMatrix) -> ConstMatrix {
    let integrand = q.conj_transpose().mul(weight.poly_part()).mul(p);
    Matrix::from_fn(integrand.rows(), integrand.cols(), |i, j| {
        integrand
            .get(i, j)
            .coeffs()
            .iter()
            .enumerate()
            .fold(ComplexRational::zero(), |acc, (k, c)| {
                acc + c.clone() * ComplexRational::new(weight.moment(k), Rational::zero())
            })
    })
}

/// One block `⟨P_w, P_w'⟩` of a Gram table.
#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub w: usize,
    pub w_prime: usize,
    /// Largest off-diagonal magnitude, relative to the diagonal norms.
    pub max_offdiag: f64,
    /// Real parts of the diagonal of the block.
    pub diag: Vec<f64>,
    /// Largest imaginary part on the diagonal.
    pub max_diag_imag: f64,
}

impl GramReport {
    pub fn to_json(&self) -> Value {
        json!({
            "w": self.w,
            "w'": self.w_prime,
            "max_offdiag": self.max_offdiag,
            "diag": self.diag,
        })
    }
}

/// All blocks `⟨P_w, P_w'⟩` with `w ≤ w'`. Off-diagonal entries are scaled by
/// `√(G_ww[i,i] · G_w'w'[j,j])`.
pub fn gram_table<W: QuadWeight>(weight: &W, family: &[PolyMatrix], m: Option<usize>) -> Result<Vec<GramReport>> {
    let max_deg = family.iter().map(poly_degree).max().unwrap_or(0);
    let deg = poly_degree(weight.poly_part()) + 2 * max_deg + weight.factor_degree();
    let m = m.unwrap_or_else(|| default_nodes(deg));
    let mut blocks = vec![vec![None; family.len()]; family.len()];
    for a in 0..family.len() {
        for b in a..family.len() {
            blocks[a][b] = Some(gram(weight, &family[a], &family[b], m)?);
        }
    }
    let diag_of = |w: usize| -> Vec<f64> {
        let g = blocks[w][w].as_ref().expect("diagonal block");
        (0..g.nrows()).map(|i| g[(i, i)].re).collect()
    };
    let mut out = Vec::new();
    for a in 0..family.len() {
        for b in a..family.len() {
            let g = blocks[a][b].as_ref().expect("computed above");
            let (da, db) = (diag_of(a), diag_of(b));
            let mut max_offdiag: f64 = 0.0;
            for i in 0..g.nrows() {
                for j in 0..g.ncols() {
                    if a == b && i == j {
                        continue;
                    }
                    let scale = (db[i].abs() * da[j].abs()).sqrt().max(f64::MIN_POSITIVE);
                    max_offdiag = max_offdiag.max(g[(i, j)].norm() / scale);
                }
            }
            let max_diag_imag = (0..g.nrows().min(g.ncols())).map(|i| g[(i, i)].im.abs()).fold(0.0, f64::max);
            out.push(GramReport { w: a, w_prime: b, max_offdiag, diag: if a == b { da } else { Vec::new() }, max_diag_imag });
        }
    }
    Ok(out)
}

/// Vector monomials `x^a e_i` for `a ≤ max_deg`.
pub fn monomial_basis(dim: usize, max_deg: usize) -> Vec<PolyMatrix> {
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for i in 0..dim {
            out.push(PolyMatrix::from_fn(dim, 1, |r, _| {
                if r == i {
                    Poly::monomial(ComplexRational::one(), a)
                } else {
                    Poly::zero()
                }
            }));
        }
    }
    out
}

fn symmetry_defect<W: QuadWeight>(
    weight: &W,
    op: impl Fn(&PolyMatrix) -> Result<PolyMatrix>,
    max_deg: usize,
    m: Option<usize>,
) -> Result<f64> {
    let dim = weight.poly_part().rows();
    let basis = monomial_basis(dim, max_deg);
    let images: Vec<PolyMatrix> = basis.iter().map(&op).collect::<Result<_>>()?;
    let img_deg = images.iter().map(poly_degree).max().unwrap_or(0).max(max_deg);
    let deg = poly_degree(weight.poly_part()) + max_deg + img_deg + weight.factor_degree();
    let m = m.unwrap_or_else(|| default_nodes(deg));
    let required = deg / 2 + 1;
    if m < required {
        return Err(Error::InsufficientNodes { required, given: m });
    }
    let rule = weight.rule(m)?;
    let mut worst: f64 = 0.0;
    let at = |set: &[PolyMatrix], x: f64| -> Vec<DMatrix<Complex<f64>>> { set.iter().map(|p| p.eval_f64(x)).collect() };
    let nodes: Vec<_> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| {
            let wx = weight.poly_part().eval_f64(x) * Complex::new(w * weight.node_factor(x), 0.0);
            (wx, at(&basis, x), at(&images, x))
        })
        .collect();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let lhs: Vec<Complex<f64>> = nodes.iter().map(|(wx, b, im)| (b[j].adjoint() * wx * &im[i])[(0, 0)]).collect();
            let rhs: Vec<Complex<f64>> = nodes.iter().map(|(wx, b, im)| (im[j].adjoint() * wx * &b[i])[(0, 0)]).collect();
            worst = worst.max((pairwise_sum_complex(&lhs) - pairwise_sum_complex(&rhs)).norm());
        }
    }
    Ok(worst)
}

/// `max |⟨Op P, Q⟩ - ⟨P, Op Q⟩|` over vector monomials, for `D̃` or `Ẽ`.
pub fn so4_symmetry_residual(so4: &So4, op: So4Operator, max_deg: usize, m: Option<usize>) -> Result<f64> {
    if !matches!(op, So4Operator::Dtilde | So4Operator::Etilde) {
        return Err(Error::InvalidParameter(format!("{op:?} does not act on the weight of the tilde family")));
    }
    let weight = so4.weight();
    symmetry_defect(&weight, |p| apply_operator(op, &so4.structure, p), max_deg, m)
}

/// The same residual for the second order operator of a fundamental case.
pub fn sn_symmetry_residual(case: &SnFundamentalCase, weight: &SnWeight, max_deg: usize, m: Option<usize>) -> Result<f64> {
    symmetry_defect(weight, |p| Ok(case.apply_d(p)), max_deg, m)
}
