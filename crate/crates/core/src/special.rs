//! Gegenbauer, Jacobi, terminating hypergeometric series and the Hahn matrix.

use num_traits::{One, Zero};

use crate::numeric::{binomial, int, pochhammer, rat, real, Rational};
use crate::poly::{Matrix, Poly};
use crate::{Error, Result};

/// `c0 + c1·x` as the argument of a hypergeometric series.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub c0: Rational,
    pub c1: Rational,
}

impl Affine {
    /// `(1 - x)/2`.
    pub fn half_one_minus() -> Self {
        Affine { c0: rat(1, 2), c1: rat(-1, 2) }
    }

    pub fn identity() -> Self {
        Affine { c0: Rational::zero(), c1: Rational::one() }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::affine(real(self.c0.clone()), real(self.c1.clone()))
    }
}

/// Coefficients of `2F1(a, b; c; z)` in `z` for `a` a nonpositive integer.
pub fn hyp2f1_series(a: i64, b: &Rational, c: &Rational) -> Result<Vec<Rational>> {
    if a > 0 {
        return Err(Error::InvalidParameter(format!("a = {a} must be a nonpositive integer")));
    }
    let terms = (-a) as usize;
    let mut out = Vec::with_capacity(terms + 1);
    let mut t = Rational::one();
    out.push(t.clone());
    let a = int(a);
    for m in 0..terms {
        let mr = int(m as i64);
        let denom = c + &mr;
        if denom.is_zero() {
            return Err(Error::PoleInC(c.to_string()));
        }
        t = t * (&a + &mr) * (b + &mr) / (denom * (&mr + Rational::one()));
        out.push(t.clone());
    }
    Ok(out)
}

/// Terminating `2F1(a, b; c; arg(x))` as a polynomial in `x`.
pub fn hyp2f1_terminating(a: i64, b: &Rational, c: &Rational, arg: &Affine) -> Result<Poly> {
    let series = Poly::from_rationals(&hyp2f1_series(a, b, c)?);
    Ok(series.compose(&arg.to_poly()))
}

/// `3F2(-k, b, c; d, e; 1)` summed exactly; `k >= 0`.
pub fn hyp3f2_unit(k: u32, b: &Rational, c: &Rational, d: &Rational, e: &Rational) -> Result<Rational> {
    let mut sum = Rational::zero();
    let mut t = Rational::one();
    let a = -int(k as i64);
    for m in 0..=k {
        sum += &t;
        if m == k {
            break;
        }
        let mr = int(m as i64);
        let denom = (d + &mr) * (e + &mr) * (&mr + Rational::one());
        if denom.is_zero() {
            return Err(Error::PoleInC(format!("{d}, {e}")));
        }
        t = t * (&a + &mr) * (b + &mr) * (c + &mr) / denom;
    }
    Ok(sum)
}

/// Gegenbauer polynomial `C_n^lambda(u)` for integer `lambda >= 1`.
pub fn gegenbauer(lambda: u32, n: u32) -> Poly {
    assert!(lambda >= 1, "gegenbauer needs lambda >= 1");
    let lead = Rational::from_integer(binomial((n + 2 * lambda - 1) as u64, n as i64));
    let c = int(lambda as i64) + rat(1, 2);
    hyp2f1_terminating(-(n as i64), &int((n + 2 * lambda) as i64), &c, &Affine::half_one_minus())
        .expect("half-integer lower parameter")
        .scale(&real(lead))
}

/// Jacobi polynomial with `P_n(1) = (alpha+1)_n / n!`.
pub fn jacobi(alpha: &Rational, beta: &Rational, n: u32) -> Poly {
    let lead = pochhammer(&(alpha + Rational::one()), n) / pochhammer(&Rational::one(), n);
    let b = alpha + beta + int(n as i64 + 1);
    hyp2f1_terminating(-(n as i64), &b, &(alpha + Rational::one()), &Affine::half_one_minus())
        .expect("alpha > -1")
        .scale(&real(lead))
}

/// Hahn values `U[j][k] = 3F2(-k, -j, k+1; 1, -ell; 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HahnMatrix {
    pub ell: usize,
    pub u: Matrix<Rational>,
}

pub fn hahn_matrix(ell: usize) -> HahnMatrix {
    let l = int(ell as i64);
    let u = Matrix::from_fn(ell + 1, ell + 1, |j, k| {
        hyp3f2_unit(k as u32, &-int(j as i64), &int(k as i64 + 1), &Rational::one(), &-l.clone())
            .expect("k <= ell keeps -ell off the poles")
    });
    HahnMatrix { ell, u }
}

/// Residual matrices of the three Hahn recurrences (in `j`, in `k`, and
/// mixed), indexed by `(j, k)`.
pub fn hahn_recurrence_residuals(h: &HahnMatrix) -> [Matrix<Rational>; 3] {
    let l = h.ell as i64;
    let at = |j: i64, k: i64| {
        if j < 0 || k < 0 || j > l || k > l {
            Rational::zero()
        } else {
            h.u.get(j as usize, k as usize).clone()
        }
    };
    let n = h.ell + 1;
    let in_j = Matrix::from_fn(n, n, |j, k| {
        let (j, k) = (j as i64, k as i64);
        int(j * (l - j + 1) + (j + 1) * (l - j) - k * (k + 1)) * at(j, k)
            - int(j * (l - j + 1)) * at(j - 1, k)
            - int((j + 1) * (l - j)) * at(j + 1, k)
    });
    let in_k = Matrix::from_fn(n, n, |j, k| {
        let (j, k) = (j as i64, k as i64);
        int(l - 2 * j) * at(j, k)
            - rat(k * (l + k + 1), 2 * k + 1) * at(j, k - 1)
            - rat((k + 1) * (l - k), 2 * k + 1) * at(j, k + 1)
    });
    let mixed = Matrix::from_fn(n, n, |j, k| {
        let (j, k) = (j as i64, k as i64);
        int(k * (l - j) - k * (k + j + 1) + 2 * (j + 1) * (l - j)) * at(j, k)
            - int(2 * (j + 1) * (l - j)) * at(j + 1, k)
            - int(k * (k + l + 1)) * at(j, k - 1)
    });
    [in_j, in_k, mixed]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c_int;

    fn gegenbauer_rec(lambda: i64, n: usize) -> Vec<Poly> {
        // C_0 = 1, C_1 = 2λu, (m+1)C_{m+1} = 2(m+λ)u C_m − (m+2λ−1)C_{m−1}
        let mut out = vec![Poly::one(), Poly::from_ints(&[0, 2 * lambda])];
        while out.len() <= n {
            let m = out.len() as i64 - 1;
            let a = (&Poly::from_ints(&[0, 2 * (m + lambda)]) * &out[m as usize])
                .scale(&c_int(1));
            let b = out[m as usize - 1].scale(&c_int(m + 2 * lambda - 1));
            out.push((&a - &b).scale(&real(rat(1, m + 1))));
        }
        out
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(3, 0), Poly::one());
        assert_eq!(gegenbauer(1, 1), Poly::from_ints(&[0, 2]));
        assert_eq!(gegenbauer(1, 2), Poly::from_ints(&[-1, 0, 4]));
        for lambda in 1..6 {
            let rec = gegenbauer_rec(lambda, 10);
            for n in 0..=10 {
                assert_eq!(gegenbauer(lambda as u32, n as u32), rec[n]);
            }
        }
    }

    fn deriv_gegenbauer(l: u32, n: u32) -> Poly {
        gegenbauer(l, n).derivative()
    }

    #[test]
    fn gegenbauer_identities() {
        let u = Poly::x();
        let one_minus_u2 = Poly::from_ints(&[1, 0, -1]);
        for l in 1..=8u32 {
            for n in 0..=12u32 {
                let li = l as i64;
                let ni = n as i64;
                if n >= 1 {
                    let lhs = deriv_gegenbauer(l, n);
                    let rhs = gegenbauer(l + 1, n - 1).scale(&c_int(2 * li));
                    assert_eq!(lhs, rhs, "derivative l={l} n={n}");
                    let lhs = (&u * &gegenbauer(l, n)).scale(&c_int(2 * (ni + li)));
                    let rhs = &gegenbauer(l, n + 1).scale(&c_int(ni + 1))
                        + &gegenbauer(l, n - 1).scale(&c_int(ni + 2 * li - 1));
                    assert_eq!(lhs, rhs, "three-term l={l} n={n}");
                }
                if l >= 2 {
                    let lhs = &(&one_minus_u2 * &deriv_gegenbauer(l, n))
                        + &(&u * &gegenbauer(l, n)).scale(&c_int(1 - 2 * li));
                    let f = rat(-(ni + 1) * (2 * li + ni - 1), 2 * (li - 1));
                    let rhs = gegenbauer(l - 1, n + 1).scale(&real(f));
                    assert_eq!(lhs, rhs, "lowering l={l} n={n}");
                    let f = rat(ni + 2 * li - 1, 2 * (li - 1));
                    let lhs = gegenbauer(l - 1, n + 1).scale(&real(f));
                    let rhs = &gegenbauer(l, n + 1) - &(&u * &gegenbauer(l, n));
                    assert_eq!(lhs, rhs, "difference l={l} n={n}");
                }
            }
        }
    }

    #[test]
    fn hyp2f1_examples() {
        let arg = Affine::half_one_minus();
        assert_eq!(hyp2f1_terminating(0, &int(7), &int(3), &arg).unwrap(), Poly::one());
        assert_eq!(hyp2f1_terminating(-1, &int(3), &rat(3, 2), &arg).unwrap(), Poly::x());
        assert_eq!(
            hyp2f1_terminating(-1, &int(2), &int(0), &arg),
            Err(Error::PoleInC("0".into()))
        );
        // c = -3 lies outside the range reached by a = -2
        assert!(hyp2f1_terminating(-2, &int(1), &int(-3), &arg).is_ok());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(&int(2), &rat(1, 2), 0), Poly::one());
        assert_eq!(jacobi(&int(0), &int(0), 1), Poly::x());
        assert_eq!(jacobi(&int(1), &int(1), 2).eval(&c_int(1)), c_int(3));
        // Legendre P_2
        assert_eq!(
            jacobi(&int(0), &int(0), 2),
            Poly::from_rationals(&[rat(-1, 2), int(0), rat(3, 2)])
        );
    }

    #[test]
    fn jacobi_parity() {
        let minus_x = Poly::from_ints(&[0, -1]);
        for a in [rat(0, 1), rat(1, 2), rat(3, 2), int(3), rat(-1, 2)] {
            for n in 0..10u32 {
                let p = jacobi(&a, &a, n);
                let sign = if n % 2 == 0 { 1 } else { -1 };
                assert_eq!(p.compose(&minus_x), p.scale(&c_int(sign)));
            }
        }
    }

    #[test]
    fn hahn_examples() {
        assert_eq!(hahn_matrix(0).u, Matrix::from_fn(1, 1, |_, _| int(1)));
        let ints = |v: &[&[i64]]| {
            Matrix::from_fn(v.len(), v.len(), |i, j| int(v[i][j]))
        };
        assert_eq!(hahn_matrix(1).u, ints(&[&[1, 1], &[1, -1]]));
        assert_eq!(hahn_matrix(2).u, ints(&[&[1, 1, 1], &[1, 0, -2], &[1, -1, 1]]));
    }

    #[test]
    fn hahn_recurrences() {
        for ell in 0..=12usize {
            let u = hahn_matrix(ell).u;
            let l = ell as i64;
            let at = |j: i64, k: i64| {
                if j < 0 || k < 0 || j > l || k > l {
                    Rational::zero()
                } else {
                    u.get(j as usize, k as usize).clone()
                }
            };
            for j in 0..=l {
                for k in 0..=l {
                    assert_eq!(at(0, k), int(1));
                    assert_eq!(at(j, 0), int(1));
                    let lhs = int(j * (l - j + 1) + (j + 1) * (l - j) - k * (k + 1)) * at(j, k);
                    let rhs = int(j * (l - j + 1)) * at(j - 1, k) + int((j + 1) * (l - j)) * at(j + 1, k);
                    assert_eq!(lhs, rhs, "rec in j, ell={ell} j={j} k={k}");

                    let lhs = int(l - 2 * j) * at(j, k);
                    let rhs = rat(k * (l + k + 1), 2 * k + 1) * at(j, k - 1)
                        + rat((k + 1) * (l - k), 2 * k + 1) * at(j, k + 1);
                    assert_eq!(lhs, rhs, "rec in k, ell={ell} j={j} k={k}");

                    let lhs = int(k * (l - j) - k * (k + j + 1) + 2 * (j + 1) * (l - j)) * at(j, k);
                    let rhs = int(2 * (j + 1) * (l - j)) * at(j + 1, k) + int(k * (k + l + 1)) * at(j, k - 1);
                    assert_eq!(lhs, rhs, "mixed rec, ell={ell} j={j} k={k}");
                }
            }
            let h = hahn_matrix(ell);
            assert!(hahn_recurrence_residuals(&h).iter().all(|m| m.is_zero()));
        }
    }
}
