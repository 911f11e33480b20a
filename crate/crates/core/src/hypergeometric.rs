//! Matrix hypergeometric symbols, polynomial solutions and truncated series.
//!
//! Two equations appear:
//!
//! * `s(1-s)F'' + (B - sC)F' + (Λ₀ - λ)F = 0`, solved by
//!   `F = Σ s^j/j! [B;C;-Λ₀+λ]_j F₀`;
//! * `y(1-y)F'' + (C - y(A+B+1))F' - ABF = 0`, solved by
//!   `F = Σ y^j/j! (C;A;B)_j F₀`.

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};

use crate::numeric::{c_int, int, real, ComplexRational, Field, Rational, ToF64};
use crate::poly::{ConstMatrix, Matrix, Poly, PolyMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Hyp2H1Params {
    pub b: ConstMatrix,
    pub c: ConstMatrix,
    pub lambda0: ConstMatrix,
    pub lambda: ComplexRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hyp2F1Params<T> {
    pub a: Matrix<T>,
    pub b: Matrix<T>,
    pub c: Matrix<T>,
}

/// Polynomial solution `F(s) = Σ_{j≤degree} s^j/j! symbol_j · initial_vector`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySolution {
    pub degree: usize,
    pub initial_vector: Vec<ComplexRational>,
    pub poly: Vec<Poly>,
}

impl PolySolution {
    pub fn leading(&self) -> Vec<ComplexRational> {
        self.poly.iter().map(|p| p.coeff(self.degree)).collect()
    }

    pub fn as_column(&self) -> PolyMatrix {
        PolyMatrix::from_column(self.poly.clone())
    }
}

fn from_usize<T: Field>(j: usize) -> T {
    (0..j).fold(T::zero(), |acc, _| acc + T::one())
}

impl Hyp2H1Params {
    fn step(&self, j: usize) -> Result<ConstMatrix> {
        let jc = c_int(j as i64);
        let inv = self.b.shift(&jc).inverse().ok_or(Error::SingularStep(j))?;
        let jm = self.c.shift(&(jc.clone() - ComplexRational::one())).scale(&jc);
        Ok(inv.mul(&jm.sub(&self.lambda0).shift(&self.lambda)))
    }

    /// Symbols `[·]_0, …, [·]_j`.
    pub fn symbols(&self, j: usize) -> Result<Vec<ConstMatrix>> {
        let mut out = vec![ConstMatrix::identity(self.b.rows())];
        for m in 0..j {
            let next = self.step(m)?.mul(&out[m]);
            out.push(next);
        }
        Ok(out)
    }

    /// `s(1-s)F'' + (B - sC)F' + (Λ₀ - λ)F` for a polynomial column block `F`.
    pub fn residual(&self, f: &PolyMatrix) -> PolyMatrix {
        let s_one_minus_s = Poly::from_ints(&[0, 1, -1]);
        let n = self.b.rows();
        let coeff1 = PolyMatrix::from_fn(n, n, |i, j| {
            Poly::affine(self.b.get(i, j).clone(), -self.c.get(i, j).clone())
        });
        let d1 = f.derivative();
        let d2 = d1.derivative();
        d2.scale_poly(&s_one_minus_s)
            .add(&coeff1.mul(&d1))
            .add(&f.mul_const_left(&self.lambda0.shift(&-self.lambda.clone())))
    }
}

impl<T: Field> Hyp2F1Params<T> {
    fn step(&self, j: usize) -> Result<Matrix<T>> {
        let jt: T = from_usize(j);
        let inv = self.c.shift(&jt).inverse().ok_or(Error::SingularStep(j))?;
        Ok(inv.mul(&self.a.shift(&jt)).mul(&self.b.shift(&jt)))
    }

    /// Symbols `(C;A;B)_0, …, (C;A;B)_j`.
    pub fn symbols(&self, j: usize) -> Result<Vec<Matrix<T>>> {
        let mut out = vec![Matrix::identity(self.c.rows())];
        for m in 0..j {
            let next = self.step(m)?.mul(&out[m]);
            out.push(next);
        }
        Ok(out)
    }
}

pub fn symbol_2h1(params: &Hyp2H1Params, j: usize) -> Result<ConstMatrix> {
    Ok(params.symbols(j)?.pop().expect("nonempty"))
}

pub fn symbol_2f1<T: Field>(params: &Hyp2F1Params<T>, j: usize) -> Result<Matrix<T>> {
    Ok(params.symbols(j)?.pop().expect("nonempty"))
}

/// `n` with `λ = -n(n+2)`, if any.
fn admissible_n(lambda: &ComplexRational) -> Option<usize> {
    if !lambda.im.is_zero() || !lambda.re.is_integer() {
        return None;
    }
    let target = -lambda.re.to_integer();
    (0..)
        .map(|n: i64| (n, num_bigint::BigInt::from(n * (n + 2))))
        .take_while(|(_, v)| *v <= target)
        .find(|(_, v)| *v == target)
        .map(|(n, _)| n as usize)
}

fn series_poly(symbols: &[ConstMatrix], f0: &[ComplexRational]) -> Vec<Poly> {
    let dim = f0.len();
    let mut fact = Rational::one();
    let mut cols: Vec<Vec<ComplexRational>> = vec![Vec::new(); dim];
    for (j, sym) in symbols.iter().enumerate() {
        if j > 0 {
            fact *= int(j as i64);
        }
        let v = sym.mul_vec(f0);
        let inv = real(Rational::one() / fact.clone());
        for (i, x) in v.into_iter().enumerate() {
            cols[i].push(x * inv.clone());
        }
    }
    cols.into_iter().map(Poly::new).collect()
}

/// Polynomial solutions of the `[B;C;-Λ₀+λ]` equation with upper-triangular `B`.
///
/// For `λ = -n(n+2)` there is one solution of degree `w = n - k` for each
/// `k ≤ min(n, dim-1)`, with leading coefficient proportional to `e_k`.
pub fn polynomial_solutions_2h1(params: &Hyp2H1Params) -> Vec<PolySolution> {
    let Some(n) = admissible_n(&params.lambda) else {
        return Vec::new();
    };
    let dim = params.b.rows();
    let mut out = Vec::new();
    for k in 0..dim.min(n + 1) {
        let w = n - k;
        let Ok(symbols) = params.symbols(w + 1) else {
            continue;
        };
        let sw = &symbols[w];
        // back-substitution inside span{e_0..e_k}
        let mut f0 = vec![ComplexRational::zero(); dim];
        let mut ok = true;
        for r in (0..=k).rev() {
            let target = if r == k { ComplexRational::one() } else { ComplexRational::zero() };
            let acc = (r + 1..=k).fold(target, |acc, c| acc - sw.get(r, c).clone() * f0[c].clone());
            let piv = sw.get(r, r);
            if piv.is_zero() {
                ok = false;
                break;
            }
            f0[r] = acc / piv.clone();
        }
        if !ok || !symbols[w + 1].mul_vec(&f0).iter().all(Zero::is_zero) {
            continue;
        }
        let poly = series_poly(&symbols[..=w], &f0);
        out.push(PolySolution { degree: w, initial_vector: f0, poly });
    }
    out
}

/// Result of a truncated series evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Vec<f64>,
    pub terms: usize,
}

/// Partial sums of `Σ y^j/j! (C;A;B)_j v0`, stopped once the newest term
/// has norm at most `tol` times the norm of the running sum.
pub fn truncated_series_eval<T: Field + ToF64>(
    params: &Hyp2F1Params<T>,
    v0: &[f64],
    y: f64,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesValue> {
    if !(y.abs() < 1.0) || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("y = {y}, tol = {tol}")));
    }
    let to_f = |m: &Matrix<T>| DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).as_f64());
    let (a, b, c) = (to_f(&params.a), to_f(&params.b), to_f(&params.c));
    let dim = c.nrows();
    let id = DMatrix::<f64>::identity(dim, dim);
    let mut term = DVector::from_column_slice(v0);
    let mut sum = term.clone();
    for j in 0..max_terms {
        let jf = j as f64;
        let cj = (&c + &id * jf)
            .try_inverse()
            .ok_or(Error::SingularStep(j))?;
        term = cj * (&a + &id * jf) * (&b + &id * jf) * term * (y / (jf + 1.0));
        sum += &term;
        if term.norm() <= tol * sum.norm() {
            return Ok(SeriesValue { value: sum.iter().copied().collect(), terms: j + 2 });
        }
    }
    Err(Error::NoConvergence(max_terms))
}

/// Exact polynomial `Σ_{j≤deg} y^j/j! (C;A;B)_j v0` over the rationals.
pub fn series_polynomial(symbols: &[Matrix<Rational>], v0: &[Rational]) -> Vec<Poly> {
    let syms: Vec<ConstMatrix> = symbols.iter().map(Matrix::to_complex).collect();
    let f0: Vec<ComplexRational> = v0.iter().cloned().map(real).collect();
    series_poly(&syms, &f0)
}
