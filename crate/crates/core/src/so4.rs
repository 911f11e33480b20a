//! Matrix spherical functions on the three-sphere: structure matrices, the
//! coefficient recurrence, `P_w`, `Ψ`, `P̃_w`, their operators and weight.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::numeric::{c_int, c_rat, factorial, imag_unit, int, rat, real, ComplexRational, Rational, ToF64};
use crate::poly::{polymatrix_det, polymatrix_inverse, ConstMatrix, Poly, PolyMatrix};
use crate::special::{gegenbauer, hahn_matrix, hyp2f1_terminating, Affine, HahnMatrix};
use crate::{Error, Result};

fn sparse(n: usize, entries: impl IntoIterator<Item = (usize, usize, ComplexRational)>) -> ConstMatrix {
    let mut m = ConstMatrix::zeros(n, n);
    for (i, j, v) in entries {
        let cur = m.get(i, j).clone();
        m.set(i, j, cur + v);
    }
    m
}

/// Constant matrices of size `ell + 1` attached to the `K`-type `ell`.
#[derive(Clone, Debug, PartialEq)]
pub struct So4Structure {
    pub ell: usize,
    pub a0: ConstMatrix,
    pub c0: ConstMatrix,
    pub c1: ConstMatrix,
    pub v0: ConstMatrix,
    pub v: ConstMatrix,
    pub c: ConstMatrix,
    pub s1: ConstMatrix,
    pub q0: ConstMatrix,
    pub q1: ConstMatrix,
    pub m: ConstMatrix,
    pub j: ConstMatrix,
    pub r1: ConstMatrix,
    pub r2: ConstMatrix,
    pub lambda0: ConstMatrix,
    pub m0: ConstMatrix,
    /// `(C - S₁)/2`, upper bidiagonal.
    pub b: ConstMatrix,
}

impl So4Structure {
    pub fn new(ell: usize) -> Self {
        let n = ell + 1;
        let l = ell as i64;
        let idx = 0..n;
        let diag = |f: &dyn Fn(i64) -> ComplexRational| ConstMatrix::diag((0..n as i64).map(f).collect());
        let a0 = diag(&|j| c_int(l - 2 * j));
        let c0 = sparse(
            n,
            idx.clone().skip(1).flat_map(|j| {
                let x = (j as i64) * (l - j as i64 + 1);
                [(j, j - 1, c_int(x)), (j, j, c_int(-x))]
            }),
        );
        let c1 = sparse(
            n,
            idx.clone().take(ell).flat_map(|j| {
                let x = (j as i64 + 1) * (l - j as i64);
                [(j, j + 1, c_int(x)), (j, j, c_int(-x))]
            }),
        );
        let upper = |f: &dyn Fn(i64) -> ComplexRational| {
            sparse(n, (0..ell).map(|j| (j, j + 1, f(j as i64))))
        };
        let lower = |f: &dyn Fn(i64) -> ComplexRational| {
            sparse(n, (1..n).map(|j| (j, j - 1, f(j as i64))))
        };
        let c = diag(&|j| c_int(2 * j + 3));
        let s1 = upper(&|j| c_int(2 * (j + 1)));
        let r1 = upper(&|j| c_rat(j + 1, 2)).add(&lower(&|j| c_rat(-(l - j + 1), 2)));
        let b = c.sub(&s1).scale(&c_rat(1, 2));
        So4Structure {
            ell,
            a0,
            c0,
            c1,
            v0: diag(&|j| c_int(j * (j + 1))),
            v: diag(&|j| c_int(j * (j + 2))),
            q0: upper(&|j| c_rat((j + 1) * (l + j + 2), 2 * j + 3)),
            q1: lower(&|j| c_rat(j * (l - j + 1), 2 * j - 1)),
            m: upper(&|j| c_int((j + 1) * (l + j + 2))),
            j: diag(&|j| c_int(j)),
            r1,
            r2: diag(&|j| c_rat(l - 2 * j, 2)),
            lambda0: diag(&|j| c_int(-j * (j + 2))),
            m0: diag(&|j| c_rat(-j * (l + 2), 2)),
            c,
            s1,
            b,
        }
    }

    pub fn size(&self) -> usize {
        self.ell + 1
    }

    /// True for even `ell`, the case of main interest; odd values are accepted as well.
    pub fn is_even_type(&self) -> bool {
        self.ell.is_multiple_of(2)
    }
}

pub fn so4_structure(ell: usize) -> So4Structure {
    So4Structure::new(ell)
}

/// Labels `(ell, w, k)` and the matching eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct So4Index {
    pub ell: usize,
    pub w: usize,
    pub k: usize,
}

impl So4Index {
    pub fn m1(&self) -> Rational {
        int(self.w as i64) + rat(self.ell as i64, 2)
    }

    pub fn m2(&self) -> Rational {
        rat(self.ell as i64, 2) - int(self.k as i64)
    }

    pub fn lambda(&self) -> Rational {
        lambda_wk(self.w, self.k)
    }

    pub fn mu(&self) -> Rational {
        mu_wk(self.ell, self.w, self.k)
    }
}

pub fn lambda_wk(w: usize, k: usize) -> Rational {
    let n = (w + k) as i64;
    int(-n * (n + 2))
}

pub fn mu_wk(ell: usize, w: usize, k: usize) -> Rational {
    let (l, w, k) = (ell as i64, w as i64, k as i64);
    rat(w * (l - 2 * k) - k * (l + 2), 2)
}

/// `Λ_w = diag(λ_w(k))`.
pub fn lambda_matrix(ell: usize, w: usize) -> ConstMatrix {
    ConstMatrix::diag((0..=ell).map(|k| real(lambda_wk(w, k))).collect())
}

/// `M_w = diag(μ_w(k))`.
pub fn mu_matrix(ell: usize, w: usize) -> ConstMatrix {
    ConstMatrix::diag((0..=ell).map(|k| real(mu_wk(ell, w, k))).collect())
}

fn lower_coeff(ell: i64, n: i64, j: i64) -> Rational {
    rat(j * (ell - j + 1) * (n - j + 1) * (n + j + 1), 2 * (2 * j - 1) * (2 * j + 1))
}

/// `L(λ)` for `λ = -n(n+2)`.
pub fn l_matrix(ell: usize, n: usize) -> ConstMatrix {
    let (l, nn) = (ell as i64, n as i64);
    let i = imag_unit();
    let mut m = ConstMatrix::zeros(ell + 1, ell + 1);
    for j in 0..=ell {
        let ji = j as i64;
        m.set(j, j, c_rat(-ji * (ji + 1), 2));
        if j >= 1 {
            m.set(j, j - 1, i.clone() * real(lower_coeff(l, nn, ji)));
        }
        if j < ell {
            m.set(j, j + 1, -i.clone() * c_rat((ji + 1) * (l + ji + 2), 2));
        }
    }
    m
}

/// Runs the three-term recurrence with `a₀ = 1`, where `n = w + k`, and
/// checks the closing relation.
pub fn coefficient_vector_n(ell: usize, n: usize, mu: &ComplexRational) -> Result<Vec<ComplexRational>> {
    let l = l_matrix(ell, n);
    let mut a = vec![ComplexRational::one()];
    for j in 0..ell {
        let mut acc = mu.clone() * a[j].clone() - l.get(j, j).clone() * a[j].clone();
        if j >= 1 {
            acc -= l.get(j, j - 1).clone() * a[j - 1].clone();
        }
        a.push(acc / l.get(j, j + 1).clone());
    }
    let closing = l.mul_vec(&a);
    if closing[ell] != mu.clone() * a[ell].clone() {
        return Err(Error::ClosingViolated(format!("{mu}")));
    }
    Ok(a)
}

pub fn coefficient_vector(ell: usize, w: usize, k: usize, mu: &ComplexRational) -> Result<Vec<ComplexRational>> {
    coefficient_vector_n(ell, w + k, mu)
}

/// `a_j^{0,k} = (-2i)^j k! j! / ((k-j)! (2j)!)`, zero for `j > k`.
pub fn coefficient_vector_w0(ell: usize, k: usize) -> Vec<ComplexRational> {
    let m2i = c_int(-2) * imag_unit();
    (0..=ell)
        .map(|j| {
            if j > k {
                return ComplexRational::zero();
            }
            let num = factorial(k as u64) * factorial(j as u64);
            let den = factorial((k - j) as u64) * factorial(2 * j as u64);
            pow(&m2i, j) * real(Rational::new(num, den))
        })
        .collect()
}

fn pow(x: &ComplexRational, e: usize) -> ComplexRational {
    (0..e).fold(ComplexRational::one(), |acc, _| acc * x.clone())
}

/// `[P_w]_{jk} = a_j^{w,k} · 2F1(-w-k+j, w+k+j+2; j+3/2; (1-u)/2)`.
pub fn p_matrix(ell: usize, w: usize) -> PolyMatrix {
    let cols: Vec<Vec<ComplexRational>> = (0..=ell)
        .map(|k| {
            coefficient_vector(ell, w, k, &real(mu_wk(ell, w, k)))
                .expect("mu_w(k) is an admissible eigenvalue")
        })
        .collect();
    PolyMatrix::from_fn(ell + 1, ell + 1, |j, k| {
        let n = (w + k) as i64;
        let ji = j as i64;
        if ji > n || cols[k][j].is_zero() {
            return Poly::zero();
        }
        hyp2f1_terminating(-(n - ji), &int(n + ji + 2), &(int(ji) + rat(3, 2)), &Affine::half_one_minus())
            .expect("half-integer lower parameter")
            .scale(&cols[k][j])
    })
}

/// `Ψ_{jk} = (2j+1)(-2i)^j k! j!/(k+j+1)! · C^{j+1}_{k-j}(u)` for `j ≤ k`.
pub fn psi(ell: usize) -> PolyMatrix {
    let m2i = c_int(-2) * imag_unit();
    PolyMatrix::from_fn(ell + 1, ell + 1, |j, k| {
        if j > k {
            return Poly::zero();
        }
        let num = factorial(k as u64) * factorial(j as u64) * (2 * j as u64 + 1);
        let den = factorial((k + j + 1) as u64);
        let c = pow(&m2i, j) * real(Rational::new(num, den));
        gegenbauer(j as u32 + 1, (k - j) as u32).scale(&c)
    })
}

/// Cached data for one `ell`: structure matrices, Hahn matrix, `Ψ` and `Ψ⁻¹`.
#[derive(Clone, Debug)]
pub struct So4 {
    pub structure: So4Structure,
    pub hahn: HahnMatrix,
    pub psi: PolyMatrix,
    pub psi_inv: PolyMatrix,
}

impl So4 {
    pub fn new(ell: usize) -> Self {
        let psi = psi(ell);
        let psi_inv = polymatrix_inverse(&psi).expect("psi has constant determinant");
        So4 { structure: So4Structure::new(ell), hahn: hahn_matrix(ell), psi, psi_inv }
    }

    pub fn ell(&self) -> usize {
        self.structure.ell
    }

    pub fn p(&self, w: usize) -> PolyMatrix {
        p_matrix(self.ell(), w)
    }

    pub fn tilde_p(&self, w: usize) -> PolyMatrix {
        self.psi_inv.mul(&self.p(w))
    }

    pub fn weight(&self) -> So4Weight {
        weight_from(&self.hahn, &self.psi)
    }
}

pub fn tilde_p(ell: usize, w: usize) -> PolyMatrix {
    So4::new(ell).tilde_p(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum So4Operator {
    Dbar,
    Ebar,
    Dtilde,
    Etilde,
}

fn const_poly_combo(n: usize, terms: &[(&ConstMatrix, Poly)]) -> PolyMatrix {
    terms.iter().fold(PolyMatrix::zeros(n, n), |acc, (m, p)| {
        acc.add(&PolyMatrix::from_const(m).scale_poly(p))
    })
}

/// Applies one of the four operators to a polynomial block with `ell+1` rows.
pub fn apply_operator(which: So4Operator, s: &So4Structure, p: &PolyMatrix) -> Result<PolyMatrix> {
    let n = s.size();
    if p.rows() != n {
        return Err(Error::ShapeMismatch(format!("expected {n} rows, got {}", p.rows())));
    }
    let one_minus_u2 = Poly::from_ints(&[1, 0, -1]);
    let u = Poly::x();
    let one = Poly::one();
    let d1 = p.derivative();
    let half_i = imag_unit() * c_rat(1, 2);
    Ok(match which {
        So4Operator::Dbar => {
            let first = const_poly_combo(n, &[(&s.c, u.scale(&c_int(-1)))]);
            d1.derivative()
                .scale_poly(&one_minus_u2)
                .add(&first.mul(&d1))
                .sub(&p.mul_const_left(&s.v))
        }
        So4Operator::Ebar => {
            let first = const_poly_combo(n, &[(&s.q0, one_minus_u2.clone()), (&s.q1, one.clone())]);
            let zeroth = const_poly_combo(n, &[(&s.m, u.clone())]);
            first
                .mul(&d1)
                .scale(&half_i)
                .sub(&zeroth.mul(p).scale(&half_i))
                .sub(&p.mul_const_left(&s.v0).scale(&c_rat(1, 2)))
        }
        So4Operator::Dtilde => {
            let first = const_poly_combo(n, &[(&s.c, u.scale(&c_int(-1))), (&s.s1, one.clone())]);
            d1.derivative()
                .scale_poly(&one_minus_u2)
                .add(&first.mul(&d1))
                .add(&p.mul_const_left(&s.lambda0))
        }
        So4Operator::Etilde => {
            let first = const_poly_combo(n, &[(&s.r2, u.clone()), (&s.r1, one.clone())]);
            first.mul(&d1).add(&p.mul_const_left(&s.m0))
        }
    })
}

/// Weight `W(u) = (2/π)√(1-u²) · poly_part(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct So4Weight {
    pub ell: usize,
    pub poly_part: PolyMatrix,
}

impl So4Weight {
    pub const SCALAR_FACTOR: &'static str = "(2/pi)*sqrt(1-u^2)";
}

fn weight_from(hahn: &HahnMatrix, psi: &PolyMatrix) -> So4Weight {
    let utu = hahn.u.transpose().mul(&hahn.u);
    assert!(utu.is_diagonal(), "Hahn columns are orthogonal");
    let one_minus_u2 = Poly::from_ints(&[1, 0, -1]);
    let n = hahn.ell + 1;
    let mid = PolyMatrix::from_fn(n, n, |i, j| {
        if i != j {
            return Poly::zero();
        }
        (0..i)
            .fold(Poly::one(), |acc, _| &acc * &one_minus_u2)
            .scale(&real(utu.get(i, i).clone()))
    });
    So4Weight { ell: hahn.ell, poly_part: psi.conj_transpose().mul(&mid).mul(psi) }
}

pub fn so4_weight(ell: usize) -> So4Weight {
    weight_from(&hahn_matrix(ell), &psi(ell))
}

/// `H(u) = U·T(u)·[P_w]_{·,k}` with `T = diag((1-u²)^{j/2})`.
pub fn h_eval(ell: usize, w: usize, k: usize, u: f64) -> Result<Vec<Complex<f64>>> {
    if !(u > -1.0 && u <= 1.0) {
        return Err(Error::OutOfDomain(u));
    }
    if k > ell {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds ell = {ell}")));
    }
    let p = p_matrix(ell, w);
    let hahn = hahn_matrix(ell);
    Ok(h_eval_with(&hahn, &p, k, u))
}

pub(crate) fn h_eval_with(hahn: &HahnMatrix, p: &PolyMatrix, k: usize, u: f64) -> Vec<Complex<f64>> {
    let n = hahn.ell + 1;
    let s = (1.0 - u * u).max(0.0).sqrt();
    let tp: Vec<Complex<f64>> = (0..n)
        .map(|j| p.get(j, k).eval_f64(u) * s.powi(j as i32))
        .collect();
    (0..n)
        .map(|r| (0..n).map(|j| tp[j] * hahn.u.get(r, j).as_f64()).sum())
        .collect()
}

/// Hahn conjugation residuals `U⁻¹A₀U - (Q₀+Q₁)`, `U⁻¹(C₁+C₀)U + V₀`,
/// `U⁻¹(C₁-C₀)U - (Q₁J - Q₀(J+1))`.
pub fn hahn_conjugations(s: &So4Structure, hahn: &HahnMatrix) -> [ConstMatrix; 3] {
    let u = hahn.u.to_complex();
    let ui = u.inverse().expect("Hahn matrix is invertible");
    let conj = |m: &ConstMatrix| ui.mul(m).mul(&u);
    let jp1 = s.j.shift(&ComplexRational::one());
    [
        conj(&s.a0).sub(&s.q0.add(&s.q1)),
        conj(&s.c1.add(&s.c0)).add(&s.v0),
        conj(&s.c1.sub(&s.c0)).sub(&s.q1.mul(&s.j).sub(&s.q0.mul(&jp1))),
    ]
}

/// Residuals of `2(1-u²)Ψ' - uCΨ = Ψ(-uC + S₁)` and
/// `(i/2)((1-u²)Q₀ + Q₁)Ψ = Ψ(uR₂ + R₁)`.
pub fn hypergeometrization_residuals(s: &So4Structure, psi: &PolyMatrix) -> [PolyMatrix; 2] {
    let n = s.size();
    let one_minus_u2 = Poly::from_ints(&[1, 0, -1]);
    let u = Poly::x();
    let lhs_d = psi
        .derivative()
        .scale_poly(&one_minus_u2)
        .scale(&c_int(2))
        .sub(&psi.mul_const_left(&s.c).scale_poly(&u));
    let rhs_d = psi.mul(&const_poly_combo(n, &[(&s.c, u.scale(&c_int(-1))), (&s.s1, Poly::one())]));
    let lhs_e = const_poly_combo(n, &[(&s.q0, one_minus_u2.clone()), (&s.q1, Poly::one())])
        .mul(psi)
        .scale(&(imag_unit() * c_rat(1, 2)));
    let rhs_e = psi.mul(&const_poly_combo(n, &[(&s.r2, u.clone()), (&s.r1, Poly::one())]));
    [lhs_d.sub(&rhs_d), lhs_e.sub(&rhs_e)]
}

/// `(k, μ, eigenvector)` for every admissible eigenvalue of `L(-n(n+2))`.
pub fn l_spectrum(ell: usize, n: usize) -> Result<Vec<(usize, Rational, Vec<ComplexRational>)>> {
    (0..=ell.min(n))
        .map(|k| {
            let mu = mu_wk(ell, n - k, k);
            coefficient_vector_n(ell, n, &real(mu.clone())).map(|v| (k, mu, v))
        })
        .collect()
}

/// `det(μ - L_m)` where `L_m` keeps the indices `j ≤ m = min(n, ell)`.
///
/// An eigenvalue of `L(λ)` yields a polynomial column only when its
/// eigenvector vanishes for `j > n`; those eigenvectors live in this leading
/// block because the entry of `L` at `(n+1, n)` is zero.
pub fn admissible_polynomial(ell: usize, n: usize) -> Result<Poly> {
    let m = ell.min(n);
    let l = l_matrix(ell, n);
    let shifted = PolyMatrix::from_fn(m + 1, m + 1, |i, j| {
        let c = -l.get(i, j).clone();
        if i == j {
            Poly::affine(c, ComplexRational::one())
        } else {
            Poly::constant(c)
        }
    });
    polymatrix_det(&shifted)
}

/// `det(μ - L_m) - Π_k (μ - μ_{n-k}(k))`, zero exactly when the admissible
/// set is `{μ_{n-k}(k) : 0 ≤ k ≤ min(n, ell)}` with multiplicity.
pub fn spectrum_residual(ell: usize, n: usize) -> Result<Poly> {
    let expected = (0..=ell.min(n)).fold(Poly::one(), |acc, k| {
        &acc * &Poly::affine(-real(mu_wk(ell, n - k, k)), ComplexRational::one())
    });
    Ok(&admissible_polynomial(ell, n)? - &expected)
}

/// Float Gram-compatible representation of the constant matrices, mainly for
/// diagnostics.
pub fn const_to_f64(m: &ConstMatrix) -> nalgebra::DMatrix<Complex<f64>> {
    nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |i, j| crate::numeric::c_to_f64(m.get(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_is_exact() {
        for ell in 0..=4 {
            for n in 0..=8 {
                assert!(spectrum_residual(ell, n).unwrap().is_zero(), "ell={ell} n={n}");
            }
        }
        // the full L(λ) carries an extra eigenvalue -3 at ell = 2, n = 1
        assert!(coefficient_vector_n(2, 1, &c_int(-3)).unwrap()[2] != ComplexRational::zero());
    }

    fn ints(v: &[&[i64]]) -> ConstMatrix {
        ConstMatrix::from_fn(v.len(), v[0].len(), |i, j| c_int(v[i][j]))
    }

    #[test]
    fn structure_examples() {
        let s0 = So4Structure::new(0);
        assert_eq!(s0.c, ints(&[&[3]]));
        for m in [&s0.a0, &s0.c0, &s0.c1, &s0.v0, &s0.v, &s0.s1, &s0.q0, &s0.q1, &s0.m, &s0.j, &s0.r1, &s0.r2, &s0.lambda0, &s0.m0] {
            assert!(m.is_zero());
        }
        let s1 = So4Structure::new(1);
        assert_eq!(s1.c0.add(&s1.c1), ints(&[&[-1, 1], &[1, -1]]));
        let s2 = So4Structure::new(2);
        assert_eq!(s2.c0.add(&s2.c1), ints(&[&[-2, 2, 0], &[2, -4, 2], &[0, 2, -2]]));
        assert_eq!(s2.b.get(0, 1), &c_int(-1));
        assert!(s2.b.get(1, 0).is_zero());
    }

    #[test]
    fn coefficient_examples() {
        let i = imag_unit();
        let a = coefficient_vector(1, 0, 1, &real(mu_wk(1, 0, 1))).unwrap();
        assert_eq!(a, vec![ComplexRational::one(), -i]);
        for ell in 0..5 {
            for w in 0..5 {
                for k in 0..=ell {
                    let a = coefficient_vector(ell, w, k, &real(mu_wk(ell, w, k))).unwrap();
                    assert!(a.iter().skip(w + k + 1).all(Zero::is_zero));
                }
            }
            let a = coefficient_vector(ell, 0, 0, &ComplexRational::zero()).unwrap();
            assert!(a[1..].iter().all(Zero::is_zero));
            for k in 0..=ell {
                let a = coefficient_vector(ell, 0, k, &real(mu_wk(ell, 0, k))).unwrap();
                assert_eq!(a, coefficient_vector_w0(ell, k));
            }
        }
        assert!(matches!(coefficient_vector(2, 1, 1, &c_int(7)), Err(Error::ClosingViolated(_))));
    }

    #[test]
    fn p_and_psi_examples() {
        assert_eq!(p_matrix(0, 1), PolyMatrix::from_column(vec![Poly::x()]));
        let i = imag_unit();
        let psi1 = PolyMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => Poly::one(),
            (0, 1) => Poly::x(),
            (1, 0) => Poly::zero(),
            _ => Poly::constant(-i.clone()),
        });
        assert_eq!(psi(1), psi1);
        assert_eq!(p_matrix(1, 0), psi1);
        assert_eq!(psi(0), PolyMatrix::identity(1));
        for ell in 0..=6 {
            assert_eq!(psi(ell), p_matrix(ell, 0), "ell={ell}");
        }
    }

    #[test]
    fn tilde_p_examples() {
        assert_eq!(tilde_p(2, 0), PolyMatrix::identity(3));
        assert_eq!(tilde_p(0, 1), PolyMatrix::from_column(vec![Poly::x()]));
        let t = tilde_p(2, 1);
        let lead = t.coefficient(1);
        assert!(lead.is_diagonal());
        assert!(lead.diagonal().iter().all(|x| !x.is_zero()));
    }

    #[test]
    fn h_examples() {
        for (ell, w, k) in [(0, 0, 0), (1, 2, 1), (2, 1, 2), (3, 3, 0)] {
            let h = h_eval(ell, w, k, 1.0).unwrap();
            assert!(h.iter().all(|z| (z - Complex::new(1.0, 0.0)).norm() < 1e-12));
        }
        assert!((h_eval(0, 1, 0, 0.5).unwrap()[0].re - 0.5).abs() < 1e-15);
        let h = h_eval(1, 0, 0, 0.3).unwrap();
        assert!(h.iter().all(|z| (z - Complex::new(1.0, 0.0)).norm() < 1e-15));
        assert_eq!(h_eval(1, 0, 0, -1.0), Err(Error::OutOfDomain(-1.0)));
        assert_eq!(h_eval(1, 0, 0, 1.5), Err(Error::OutOfDomain(1.5)));
    }

    #[test]
    fn operator_on_constant() {
        let s = So4Structure::new(3);
        let v = PolyMatrix::from_column((0..4).map(|j| Poly::from_ints(&[j + 1])).collect());
        let out = apply_operator(So4Operator::Dtilde, &s, &v).unwrap();
        assert_eq!(out, v.mul_const_left(&s.lambda0));
        assert!(apply_operator(So4Operator::Dbar, &s, &PolyMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn hahn_lemma_and_hypergeometrization_small() {
        for ell in 0..=4 {
            let s = So4Structure::new(ell);
            for r in hahn_conjugations(&s, &hahn_matrix(ell)) {
                assert!(r.is_zero(), "ell={ell}");
            }
            let psi = psi(ell);
            for r in hypergeometrization_residuals(&s, &psi) {
                assert!(r.is_zero(), "ell={ell}");
            }
        }
    }

    #[test]
    fn eigen_relations_small() {
        for ell in 0..=2 {
            let f = So4::new(ell);
            let s = &f.structure;
            for w in 0..=3 {
                let p = f.p(w);
                let t = f.tilde_p(w);
                let (lw, mw) = (lambda_matrix(ell, w), mu_matrix(ell, w));
                assert_eq!(apply_operator(So4Operator::Dbar, s, &p).unwrap(), p.mul_const_right(&lw));
                assert_eq!(apply_operator(So4Operator::Ebar, s, &p).unwrap(), p.mul_const_right(&mw));
                assert_eq!(apply_operator(So4Operator::Dtilde, s, &t).unwrap(), t.mul_const_right(&lw));
                assert_eq!(apply_operator(So4Operator::Etilde, s, &t).unwrap(), t.mul_const_right(&mw));
            }
        }
    }

    #[test]
    fn weight_is_hermitian() {
        for ell in 0..=3 {
            let w = so4_weight(ell);
            assert_eq!(w.poly_part.conj_transpose(), w.poly_part);
        }
        assert_eq!(so4_weight(0).poly_part, PolyMatrix::identity(1));
    }
}
