//! Exact rationals, Gaussian rationals and combinatorial helpers.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

pub type Rational = BigRational;
pub type ComplexRational = Complex<Rational>;

/// Exact field operations shared by every scalar the matrices are built over.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// One-way conversion to a double.
pub trait ToF64 {
    fn as_f64(&self) -> f64;
}

impl ToF64 for Rational {
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn real(r: Rational) -> ComplexRational {
    Complex::new(r, Rational::zero())
}

pub fn c_int(n: i64) -> ComplexRational {
    real(int(n))
}

pub fn c_rat(p: i64, q: i64) -> ComplexRational {
    real(rat(p, q))
}

pub fn imag_unit() -> ComplexRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn c_to_f64(z: &ComplexRational) -> Complex<f64> {
    Complex::new(z.re.as_f64(), z.im.as_f64())
}

/// Rising factorial `a(a+1)...(a+m-1)`.
pub fn pochhammer(a: &Rational, m: u32) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..m {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn complex_json(z: &ComplexRational) -> Value {
    json!({ "re": z.re.to_string(), "im": z.im.to_string() })
}

pub fn is_real(z: &ComplexRational) -> bool {
    z.im.is_zero()
}
