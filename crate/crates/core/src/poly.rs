//! Dense univariate polynomials over the Gaussian rationals, constant matrices
//! over any exact field, and polynomial matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::numeric::{c_int, c_to_f64, complex_json, int, real, ComplexRational, Field, Rational};
use crate::{Error, Result};

/// Polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<ComplexRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ComplexRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| c_int(x)).collect())
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        Self::new(c.iter().cloned().map(real).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ComplexRational::one())
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(ComplexRational::one(), 1)
    }

    pub fn monomial(c: ComplexRational, k: usize) -> Self {
        let mut v = vec![ComplexRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `c0 + c1·x`.
    pub fn affine(c0: ComplexRational, c1: ComplexRational) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ComplexRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ComplexRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> ComplexRational {
        self.coeffs.last().cloned().unwrap_or_else(ComplexRational::zero)
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * real(int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &ComplexRational) -> ComplexRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> Complex<f64> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, c| acc * x + c_to_f64(c))
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &Poly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }

    pub fn conj(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs.iter().map(complex_json).collect::<Vec<_>>() })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = if c.im.is_zero() {
                    c.re.to_string()
                } else {
                    format!("({}+{}i)", c.re, c.im)
                };
                match i {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ComplexRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ConstMatrix = Matrix<ComplexRational>;

impl<T: Field> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: Vec<T>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `self + c·I`.
    pub fn shift(&self, c: &T) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i).clone() + c.clone();
            m.set(i, i, v);
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() + o.get(i, j).clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() - o.get(i, j).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        Self::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                let a = self.get(i, k);
                if a.is_zero() {
                    acc
                } else {
                    acc + a.clone() * o.get(k, j).clone()
                }
            })
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * v[k].clone()))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return T::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = det * piv.clone();
            for r in c + 1..n {
                let f = a.get(r, c).clone() / piv.clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = a.get(r, k).clone() - f.clone() * a.get(c, k).clone();
                    a.set(r, k, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a.get(c, c).clone();
            for k in 0..n {
                a.set(c, k, a.get(c, k).clone() / piv.clone());
                inv.set(c, k, inv.get(c, k).clone() / piv.clone());
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for k in 0..n {
                    a.set(r, k, a.get(r, k).clone() - f.clone() * a.get(c, k).clone());
                    inv.set(r, k, inv.get(r, k).clone() - f.clone() * inv.get(c, k).clone());
                }
            }
        }
        Some(inv)
    }

    /// Solves `self·x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        Some(self.inverse()?.mul_vec(b))
    }
}

impl Matrix<Rational> {
    pub fn to_complex(&self) -> ConstMatrix {
        self.map(|x| real(x.clone()))
    }
}

impl ConstMatrix {
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.data.iter().map(complex_json).collect::<Vec<_>>(),
        })
    }
}

/// Row-major matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Poly::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn from_const(m: &ConstMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| Poly::constant(m.get(i, j).clone()))
    }

    /// Column vector.
    pub fn from_column(v: Vec<Poly>) -> Self {
        let rows = v.len();
        PolyMatrix { rows, cols: 1, entries: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn column_degree(&self, j: usize) -> Option<usize> {
        (0..self.rows).filter_map(|i| self.get(i, j).degree()).max()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn derivative(&self) -> Self {
        self.map(Poly::derivative)
    }

    pub fn scale_poly(&self, p: &Poly) -> Self {
        self.map(|e| e * p)
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn compose(&self, q: &Poly) -> Self {
        self.map(|e| e.compose(q))
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - o.get(i, j))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        Self::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(Poly::zero(), |acc, k| {
                let a = self.get(i, k);
                if a.is_zero() {
                    acc
                } else {
                    &acc + &(a * o.get(k, j))
                }
            })
        })
    }

    pub fn mul_const_left(&self, m: &ConstMatrix) -> Self {
        PolyMatrix::from_const(m).mul(self)
    }

    pub fn mul_const_right(&self, m: &ConstMatrix) -> Self {
        self.mul(&PolyMatrix::from_const(m))
    }

    pub fn eval(&self, x: &ComplexRational) -> ConstMatrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(x))
    }

    pub fn eval_f64(&self, x: f64) -> nalgebra::DMatrix<Complex<f64>> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval_f64(x))
    }

    /// Coefficient matrix of `x^k`.
    pub fn coefficient(&self, k: usize) -> ConstMatrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeff(k))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(Poly::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Interpolates values at the integer nodes `xs` (Newton form, exact).
fn interpolate(xs: &[ComplexRational], ys: &[ComplexRational]) -> Poly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - level].clone());
        }
    }
    let mut p = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = Poly::affine(-xs[i].clone(), ComplexRational::one());
        p = &(&p * &factor) + &Poly::constant(dd[i].clone());
    }
    p
}

fn sample_points(count: usize) -> Vec<ComplexRational> {
    (0..count as i64)
        .map(|i| if i % 2 == 0 { c_int(i / 2) } else { c_int(-(i + 1) / 2) })
        .collect()
}

/// Exact determinant of a square polynomial matrix.
pub fn polymatrix_det(p: &PolyMatrix) -> Result<Poly> {
    if p.rows() != p.cols() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", p.rows(), p.cols())));
    }
    let bound = degree_bound(p);
    let xs = sample_points(bound + 1);
    let ys: Vec<_> = xs.iter().map(|x| p.eval(x).det()).collect();
    Ok(interpolate(&xs, &ys))
}

fn degree_bound(p: &PolyMatrix) -> usize {
    let by_col: usize = (0..p.cols()).map(|j| p.column_degree(j).unwrap_or(0)).sum();
    let by_row: usize = (0..p.rows())
        .map(|i| (0..p.cols()).filter_map(|j| p.get(i, j).degree()).max().unwrap_or(0))
        .sum();
    by_col.min(by_row)
}

/// Inverse of a polynomial matrix whose determinant is a nonzero constant.
///
/// The adjugate entries are recovered by exact interpolation through enough
/// integer nodes to cover their degree bound, then divided by the determinant.
pub fn polymatrix_inverse(p: &PolyMatrix) -> Result<PolyMatrix> {
    let det = polymatrix_det(p)?;
    if det.degree() != Some(0) {
        return Err(Error::NonConstantDeterminant);
    }
    let det_c = det.coeff(0);
    let n = p.rows();
    let xs = sample_points(degree_bound(p) + 1);
    let adj_vals: Vec<ConstMatrix> = xs
        .iter()
        .map(|x| {
            let inv = p.eval(x).inverse().expect("constant nonzero determinant");
            inv.scale(&det_c)
        })
        .collect();
    let inv_det = ComplexRational::one() / det_c;
    let out = PolyMatrix::from_fn(n, n, |i, j| {
        let ys: Vec<_> = adj_vals.iter().map(|m| m.get(i, j).clone()).collect();
        interpolate(&xs, &ys).scale(&inv_det)
    });
    debug_assert_eq!(p.mul(&out), PolyMatrix::identity(n));
    Ok(out)
}
