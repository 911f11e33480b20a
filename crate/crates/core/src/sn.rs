//! Spherical functions on `S^n`: scalar types, the fundamental 2×2 case and
//! the 3×3 case attached to `(1,…,1)` when `n` is odd.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::hypergeometric::{series_polynomial, truncated_series_eval, Hyp2F1Params, SeriesValue};
use crate::numeric::{binomial, c_int, int, rat, real, ComplexRational, Rational};
use crate::poly::{Matrix, Poly, PolyMatrix};
use crate::quadratic::{is_perfect_square, QuadNumber};
use crate::special::{hyp2f1_terminating, Affine};
use crate::{Error, Result};

/// `h_w(y) = c·y^p·2F1(p-w, 2ell+p+w-1; 2p+ell; y)` normalized by `h_w(1) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarH {
    pub ell: usize,
    pub p: usize,
    pub w: usize,
    pub poly: Poly,
    pub normalizer: Rational,
    pub lambda: Rational,
}

impl ScalarH {
    /// `y·[y(1-y)h'' + ell(1-2y)h' - λh] - p(p+ell-1)(1-y)h`, which vanishes
    /// exactly on a solution.
    pub fn residual(&self) -> Poly {
        let (l, p) = (self.ell as i64, self.p as i64);
        let h = &self.poly;
        let d1 = h.derivative();
        let d2 = d1.derivative();
        let y = Poly::x();
        let inner = &(&(&Poly::from_ints(&[0, 1, -1]) * &d2) + &(&Poly::from_ints(&[l, -2 * l]) * &d1))
            - &h.scale(&real(self.lambda.clone()));
        &(&y * &inner) - &(&Poly::from_ints(&[1, -1]) * h).scale(&c_int(p * (p + l - 1)))
    }
}

pub fn scalar_h(ell: usize, p: usize, w: usize) -> Result<ScalarH> {
    if ell < 2 || w < p {
        return Err(Error::InvalidParameter(format!("need ell >= 2 and w >= p (ell={ell}, p={p}, w={w})")));
    }
    let (l, pi, wi) = (ell as i64, p as i64, w as i64);
    let f = hyp2f1_terminating(pi - wi, &int(2 * l + pi + wi - 1), &int(2 * pi + l), &Affine::identity())?;
    let raw = &Poly::monomial(ComplexRational::one(), p) * &f;
    let at_one = raw.eval(&c_int(1));
    if at_one.is_zero() {
        return Err(Error::InvalidParameter("h vanishes at y = 1".into()));
    }
    let normalizer = (ComplexRational::one() / at_one).re;
    Ok(ScalarH {
        ell,
        p,
        w,
        poly: raw.scale(&real(normalizer.clone())),
        normalizer,
        lambda: int(-wi * (wi + 2 * l - 1) + pi * (pi + l - 1)),
    })
}

/// Fundamental `K`-type with `p` ones, `1 ≤ p ≤ ⌊n/2⌋ - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SnFundamentalCase {
    pub n: usize,
    pub ell: usize,
    pub p: usize,
    pub m_mat: Matrix<Rational>,
    pub n_diag: Matrix<Rational>,
    pub d1: BigInt,
    pub d2: BigInt,
}

impl SnFundamentalCase {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        let ell = n / 2;
        if n < 4 || p < 1 || p + 1 > ell {
            return Err(Error::InvalidParameter(format!("need n >= 4 and 1 <= p <= n/2 - 1 (n={n}, p={p})")));
        }
        let (ni, pi) = (n as i64, p as i64);
        let m_mat = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => int(pi - ni),
            (1, 0) => int(-pi),
            _ => Rational::zero(),
        });
        let n_diag = Matrix::diag(vec![int(pi - ni), int(-pi)]);
        Ok(SnFundamentalCase {
            n,
            ell,
            p,
            m_mat,
            n_diag,
            d1: binomial(n as u64 - 1, pi - 1),
            d2: binomial(n as u64 - 1, pi),
        })
    }

    /// `4y(1-y)` times the left side of the vector equation applied to `H`.
    pub fn apply_scaled(&self, h: &PolyMatrix) -> PolyMatrix {
        let n = self.n as i64;
        let four_y_one_minus_y = Poly::from_ints(&[0, 4, -4]);
        let d1 = h.derivative();
        let d2 = d1.derivative();
        let second = d2.scale_poly(&(&Poly::from_ints(&[0, 1, -1]) * &four_y_one_minus_y));
        let first = d1.scale_poly(&(&Poly::from_ints(&[n, -2 * n]) * &Poly::from_ints(&[0, 2, -2])));
        let n_part = h
            .mul_const_left(&self.n_diag.to_complex())
            .scale_poly(&Poly::from_ints(&[2, -4, 4]));
        let m_part = h.mul_const_left(&self.m_mat.to_complex()).scale_poly(&Poly::from_ints(&[2, -4]));
        second.add(&first).add(&n_part).add(&m_part)
    }

    /// `Ψ(y) = [[2y-1, 1], [1, 2y-1]]`.
    pub fn psi(&self) -> PolyMatrix {
        sn_psi()
    }

    /// `y(1-y)P'' + (C - (n+2)y)P' - diag(p, n-p)P`.
    pub fn apply_d(&self, p: &PolyMatrix) -> PolyMatrix {
        let n = self.n as i64;
        let c = c_matrix(self.n).to_complex();
        let first = PolyMatrix::from_fn(2, 2, |i, j| {
            let lin = if i == j { c_int(-(n + 2)) } else { ComplexRational::zero() };
            Poly::affine(c.get(i, j).clone(), lin)
        });
        let diag = Matrix::diag(vec![c_int(self.p as i64), c_int(n - self.p as i64)]);
        p.derivative()
            .derivative()
            .scale_poly(&Poly::from_ints(&[0, 1, -1]))
            .add(&first.mul(&p.derivative()))
            .sub(&p.mul_const_left(&diag))
    }
}

pub fn sn_psi() -> PolyMatrix {
    PolyMatrix::from_fn(2, 2, |i, j| if i == j { Poly::from_ints(&[-1, 2]) } else { Poly::one() })
}

/// `C = [[n/2+1, 1], [1, n/2+1]]`.
pub fn c_matrix(n: usize) -> Matrix<Rational> {
    let d = rat(n as i64, 2) + int(1);
    Matrix::from_fn(2, 2, |i, j| if i == j { d.clone() } else { int(1) })
}

/// `λ_n(w, δ)`; `δ = ±1` share one value.
pub fn lambda_n(n: usize, p: usize, w: usize, delta: i32) -> Rational {
    let (ni, pi, wi) = (n as i64, p as i64, w as i64);
    let base = -(wi + 1) * (wi + ni);
    int(if delta == 0 { base + ni - pi } else { base + pi })
}

/// `(2w+n+1)² + 8(n/2 - j)` with `j = n-p` for `δ = 0` and `j = p` otherwise.
pub fn discriminant(n: usize, p: usize, w: usize, delta: i32) -> BigInt {
    let j = if delta == 0 { n - p } else { p } as i64;
    let (ni, wi) = (n as i64, w as i64);
    BigInt::from((2 * wi + ni + 1).pow(2) + 4 * ni - 8 * j)
}

/// `((n+1) + √disc)/2`.
pub fn quadratic_root(n: usize, disc: &BigInt) -> Result<QuadNumber> {
    if is_perfect_square(disc) {
        return Err(Error::PerfectSquareDiscriminant(disc.to_string()));
    }
    QuadNumber::new(rat(n as i64 + 1, 2), rat(1, 2), disc.clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SnHypParams {
    pub delta: i32,
    pub lambda: Rational,
    pub disc: BigInt,
    pub root: QuadNumber,
    pub params: Hyp2F1Params<QuadNumber>,
}

impl SnHypParams {
    /// `A + B + I` and `AB` over the rationals, after checking the collapse.
    pub fn rational_coefficients(&self) -> Result<(Matrix<Rational>, Matrix<Rational>)> {
        let s = self.params.a.add(&self.params.b).shift(&QuadNumber::one());
        let prod = self.params.a.mul(&self.params.b);
        Ok((to_rational(&s)?, to_rational(&prod)?))
    }

    pub fn c_rational(&self) -> Result<Matrix<Rational>> {
        to_rational(&self.params.c)
    }

    pub fn root_f64(&self) -> f64 {
        crate::numeric::ToF64::as_f64(&self.root)
    }

    fn dim(&self) -> usize {
        self.params.c.rows()
    }
}

fn to_rational(m: &Matrix<QuadNumber>) -> Result<Matrix<Rational>> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j).to_rational().ok_or_else(|| {
                Error::IdentityViolated(format!("entry ({i},{j}) = {} is irrational", m.get(i, j)))
            })?;
            out.set(i, j, v);
        }
    }
    Ok(out)
}

fn q(x: Rational) -> QuadNumber {
    QuadNumber::rational(x)
}

pub fn sn_hyp_params(n: usize, p: usize, w: usize, delta: i32) -> Result<SnHypParams> {
    SnFundamentalCase::new(n, p)?;
    if delta != 0 && delta != 1 {
        return Err(Error::InvalidParameter(format!("delta = {delta} must be 0 or 1")));
    }
    let disc = discriminant(n, p, w, delta);
    let root = quadratic_root(n, &disc)?;
    let np1 = q(int(n as i64 + 1));
    let minus_w = q(int(-(w as i64)));
    let big = q(int((w + n + 1) as i64));
    let (a, b) = if delta == 0 {
        (
            Matrix::diag(vec![minus_w, root.clone()]),
            Matrix::diag(vec![big, np1 - root.clone()]),
        )
    } else {
        (
            Matrix::diag(vec![root.clone(), minus_w]),
            Matrix::diag(vec![np1 - root.clone(), big]),
        )
    };
    let c = c_matrix(n).map(|x| q(x.clone()));
    Ok(SnHypParams { delta, lambda: lambda_n(n, p, w, delta), disc, root, params: Hyp2F1Params { a, b, c } })
}

/// Polynomial `P_{w,δ}` with its initial value and parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SnSolution {
    pub n: usize,
    pub p: usize,
    pub w: usize,
    pub delta: i32,
    pub degree: usize,
    pub initial_vector: Vec<Rational>,
    pub poly: Vec<Poly>,
    pub hyp: SnHypParams,
}

impl SnSolution {
    pub fn as_column(&self) -> PolyMatrix {
        PolyMatrix::from_column(self.poly.clone())
    }

    /// `H = ΨP`.
    pub fn h(&self) -> PolyMatrix {
        sn_psi().mul(&self.as_column())
    }

    pub fn leading(&self) -> Vec<ComplexRational> {
        self.poly.iter().map(|p| p.coeff(self.degree)).collect()
    }

    /// `y(1-y)P'' + (C - y(A+B+1))P' - ABP`.
    pub fn residual(&self) -> Result<PolyMatrix> {
        hyp_residual(&self.hyp, &self.as_column())
    }
}

pub fn hyp_residual(hyp: &SnHypParams, f: &PolyMatrix) -> Result<PolyMatrix> {
    let (sum, prod) = hyp.rational_coefficients()?;
    let c = hyp.c_rational()?.to_complex();
    let dim = hyp.dim();
    let first = PolyMatrix::from_fn(dim, dim, |i, j| {
        Poly::affine(c.get(i, j).clone(), -real(sum.get(i, j).clone()))
    });
    Ok(f.derivative()
        .derivative()
        .scale_poly(&Poly::from_ints(&[0, 1, -1]))
        .add(&first.mul(&f.derivative()))
        .sub(&f.mul_const_left(&prod.to_complex())))
}

pub fn fundamental_p(n: usize, p: usize, w: usize, delta: i32) -> Result<SnSolution> {
    let hyp = sn_hyp_params(n, p, w, delta)?;
    let symbols = hyp.params.symbols(w + 1)?;
    let rational: Vec<Matrix<Rational>> = symbols.iter().map(to_rational).collect::<Result<_>>()?;
    let mut fact = Rational::one();
    let mut total = Matrix::<Rational>::zeros(2, 2);
    for (j, s) in rational.iter().take(w + 1).enumerate() {
        if j > 0 {
            fact *= int(j as i64);
        }
        total = total.add(&s.scale(&(Rational::one() / fact.clone())));
    }
    let other = 1 - delta as usize;
    let sw = &rational[w];
    let system = Matrix::from_fn(2, 2, |r, c| match r {
        0 => total.get(0, c).clone() + total.get(1, c).clone(),
        _ => sw.get(other, c).clone(),
    });
    let p0 = system
        .map(|x| q(x.clone()))
        .solve(&[QuadNumber::one(), QuadNumber::zero()])
        .ok_or_else(|| Error::IdentityViolated("initial value system is singular".into()))?;
    let p0: Vec<Rational> = p0
        .iter()
        .map(|x| x.to_rational().ok_or_else(|| Error::IdentityViolated("irrational initial value".into())))
        .collect::<Result<_>>()?;
    if !rational[w + 1].mul_vec(&p0).iter().all(Zero::is_zero) {
        return Err(Error::IdentityViolated(format!("series for w={w} does not terminate")));
    }
    let poly = series_polynomial(&rational[..=w], &p0);
    let degree = poly.iter().filter_map(Poly::degree).max().unwrap_or(0);
    Ok(SnSolution { n, p, w, delta, degree, initial_vector: p0, poly, hyp })
}

/// `P_w` with columns `P_{w,0}`, `P_{w,1}`.
pub fn fundamental_p_matrix(n: usize, p: usize, w: usize) -> Result<PolyMatrix> {
    let a = fundamental_p(n, p, w, 0)?;
    let b = fundamental_p(n, p, w, 1)?;
    Ok(PolyMatrix::from_fn(2, 2, |i, j| if j == 0 { a.poly[i].clone() } else { b.poly[i].clone() }))
}

/// `W(y) = k_n (y(1-y))^{n/2-1} · Ψᵀ diag(d₁, d₂) Ψ`, `k_n = (n-1)!/Γ(n/2)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SnWeight {
    pub n: usize,
    pub p: usize,
    pub d1: BigInt,
    pub d2: BigInt,
    pub poly_part: PolyMatrix,
    /// Set when the matrix has more than two blocks and is not part of the
    /// orthogonality statements.
    pub experimental: bool,
}

impl SnWeight {
    /// Exponent `n/2 - 1` of `y(1-y)`.
    pub fn exponent(&self) -> Rational {
        rat(self.n as i64, 2) - int(1)
    }

    /// `(n-1)!/Γ(n/2)²`.
    pub fn normalization(&self) -> f64 {
        normalization_constant(self.n)
    }
}

pub fn normalization_constant(n: usize) -> f64 {
    let ln = statrs::function::gamma::ln_gamma(n as f64) - 2.0 * statrs::function::gamma::ln_gamma(n as f64 / 2.0);
    ln.exp()
}

pub fn sn_weight(n: usize, p: usize) -> Result<SnWeight> {
    let case = SnFundamentalCase::new(n, p)?;
    let v = Matrix::diag(vec![
        real(Rational::from_integer(case.d1.clone())),
        real(Rational::from_integer(case.d2.clone())),
    ]);
    let psi = sn_psi();
    let poly_part = psi.conj_transpose().mul_const_right(&v).mul(&psi);
    Ok(SnWeight { n, p, d1: case.d1, d2: case.d2, poly_part, experimental: false })
}

/// The `(1,…,1)` type for `n = 2ell+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SnTriple111 {
    pub n: usize,
    pub ell: usize,
    pub m_mat: Matrix<Rational>,
    pub n_diag: Matrix<Rational>,
    pub c: Matrix<Rational>,
}

pub fn triple111_operator(n: usize) -> Result<SnTriple111> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("n = {n} must be odd and at least 3")));
    }
    let ell = (n - 1) / 2;
    let l = ell as i64;
    let half_l1 = rat(-(l + 1), 2);
    let m_mat = Matrix::from_fn(3, 3, |i, j| match (i, j) {
        (0, 1) | (2, 1) => int(-l),
        (1, 0) | (1, 2) => half_l1.clone(),
        _ => Rational::zero(),
    });
    let n_diag = Matrix::diag(vec![int(-l), int(-l - 1), int(-l)]);
    let d = rat(n as i64 + 2, 2);
    let c = Matrix::from_fn(3, 3, |i, j| match (i, j) {
        (i, j) if i == j => d.clone(),
        (0, 1) | (2, 1) => rat(1, 2),
        (1, 0) | (1, 2) => int(1),
        _ => Rational::zero(),
    });
    Ok(SnTriple111 { n, ell, m_mat, n_diag, c })
}

impl SnTriple111 {
    pub fn lambda(&self, w: usize, delta: i32) -> Rational {
        let (ni, wi, l) = (self.n as i64, w as i64, self.ell as i64);
        let base = -(wi + 1) * (wi + ni) + l;
        int(if delta == 0 { base + 1 } else { base })
    }

    /// `(2w+n+1)² - 4` for `δ = 0`, `(2w+n+1)² + 4` for `δ = ±1`.
    pub fn discriminant(&self, w: usize, delta: i32) -> BigInt {
        let m = (2 * w + self.n + 1) as i64;
        BigInt::from(if delta == 0 { m * m - 4 } else { m * m + 4 })
    }

    pub fn hyp_params(&self, w: usize, delta: i32) -> Result<SnHypParams> {
        if !(-1..=1).contains(&delta) {
            return Err(Error::InvalidParameter(format!("delta = {delta}")));
        }
        let disc = self.discriminant(w, delta);
        let root = quadratic_root(self.n, &disc)?;
        let np1 = q(int(self.n as i64 + 1));
        let minus_w = q(int(-(w as i64)));
        let big = q(int((w + self.n + 1) as i64));
        let other = np1 - root.clone();
        let (a, b) = if delta == 0 {
            (
                Matrix::diag(vec![minus_w.clone(), root.clone(), minus_w]),
                Matrix::diag(vec![big.clone(), other, big]),
            )
        } else {
            (
                Matrix::diag(vec![root.clone(), minus_w, root.clone()]),
                Matrix::diag(vec![other.clone(), big, other]),
            )
        };
        let c = self.c.map(|x| q(x.clone()));
        Ok(SnHypParams { delta, lambda: self.lambda(w, delta), disc, root, params: Hyp2F1Params { a, b, c } })
    }

    /// Truncated evaluation of `Σ y^j/j! (C;A;B)_j v0`.
    pub fn eval_series(&self, w: usize, delta: i32, v0: &[f64], y: f64, tol: f64, max_terms: usize) -> Result<SeriesValue> {
        truncated_series_eval(&self.hyp_params(w, delta)?.params, v0, y, tol, max_terms)
    }

    /// Weight for the three-block case with `V = diag(d₁, d₂, d₃)` supplied by
    /// the caller; flagged experimental.
    pub fn experimental_weight_poly(&self, psi: &PolyMatrix, d: [i64; 3]) -> SnWeight {
        let v = Matrix::diag(d.iter().map(|&x| c_int(x)).collect());
        SnWeight {
            n: self.n,
            p: self.ell,
            d1: BigInt::from(d[0]),
            d2: BigInt::from(d[1]),
            poly_part: psi.conj_transpose().mul_const_right(&v).mul(psi),
            experimental: true,
        }
    }
}
