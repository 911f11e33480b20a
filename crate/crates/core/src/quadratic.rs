//! Elements `a + b·sqrt(d)` of a real quadratic field with integer radicand `d`.
//!
//! An element with `b = 0` carries no radicand and combines with any field;
//! mixing two different nonzero radicands is a programming error and panics.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::numeric::{Rational, ToF64};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadNumber {
    a: Rational,
    b: Rational,
    d: BigInt,
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

impl QuadNumber {
    pub fn rational(a: Rational) -> Self {
        QuadNumber { a, b: Rational::zero(), d: BigInt::zero() }
    }

    /// `a + b·sqrt(d)`; `d` must not be a perfect square.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Result<Self> {
        if b.is_zero() {
            return Ok(Self::rational(a));
        }
        if is_perfect_square(&d) {
            return Err(Error::PerfectSquareDiscriminant(d.to_string()));
        }
        Ok(QuadNumber { a, b, d })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conj(&self) -> Self {
        QuadNumber { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    fn join(x: &BigInt, y: &BigInt) -> BigInt {
        if x.is_zero() {
            y.clone()
        } else if y.is_zero() || x == y {
            x.clone()
        } else {
            panic!("mixed radicands {x} and {y}");
        }
    }

    fn norm(self) -> Self {
        if self.b.is_zero() {
            Self::rational(self.a)
        } else {
            self
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rational_part": self.a.to_string(),
            "sqrt_part": self.b.to_string(),
            "disc": self.d.to_string(),
        })
    }
}

impl ToF64 for QuadNumber {
    fn as_f64(&self) -> f64 {
        let d = Rational::from_integer(self.d.clone()).as_f64();
        self.a.as_f64() + self.b.as_f64() * d.sqrt()
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Add for QuadNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = Self::join(&self.d, &o.d);
        QuadNumber { a: self.a + o.a, b: self.b + o.b, d }.norm()
    }
}

impl Sub for QuadNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for QuadNumber {
    type Output = Self;
    fn neg(self) -> Self {
        QuadNumber { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QuadNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = Self::join(&self.d, &o.d);
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &o.a + &self.b * &o.b * dr;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadNumber { a, b, d }.norm()
    }
}

impl Div for QuadNumber {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.is_zero(), "division by zero in quadratic field");
        let dr = Rational::from_integer(o.d.clone());
        let n = &o.a * &o.a - &o.b * &o.b * dr;
        let inv = QuadNumber { a: &o.a / &n, b: -(&o.b / &n), d: o.d.clone() }.norm();
        self * inv
    }
}

impl Zero for QuadNumber {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadNumber {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}
