//! Zonal spherical functions of the compact rank-one symmetric spaces and the
//! sphere to real projective space correspondence.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde_json::{json, Value};

use crate::numeric::{c_int, int, pochhammer, rat, rational_json, real, Rational};
use crate::poly::Poly;
use crate::special::jacobi;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Sphere,
    ProjReal,
    ProjComplex,
    ProjQuat,
    Cayley,
}

impl Space {
    pub const ALL: [Space; 5] = [Space::Sphere, Space::ProjReal, Space::ProjComplex, Space::ProjQuat, Space::Cayley];

    pub fn name(self) -> &'static str {
        match self {
            Space::Sphere => "sphere",
            Space::ProjReal => "projreal",
            Space::ProjComplex => "projcomplex",
            Space::ProjQuat => "projquat",
            Space::Cayley => "cayley",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Space::ALL
            .into_iter()
            .find(|sp| sp.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown space '{s}'")))
    }
}

/// A space together with the Jacobi parameters of its zonal functions.
#[derive(Clone, Debug, PartialEq)]
pub struct ZonalFamily {
    pub space: Space,
    /// Dimension parameter; fixed to 2 for the Cayley plane.
    pub n: usize,
    pub alpha: Rational,
    pub beta: Rational,
}

impl ZonalFamily {
    pub fn new(space: Space, n: usize) -> Result<Self> {
        let ni = n as i64;
        let (n, alpha, beta) = match space {
            Space::Sphere | Space::ProjReal if n < 2 => {
                return Err(Error::InvalidParameter(format!("{space} needs n >= 2 (n={n})")))
            }
            Space::ProjComplex | Space::ProjQuat if n < 1 => {
                return Err(Error::InvalidParameter(format!("{space} needs n >= 1")))
            }
            Space::Sphere => (n, rat(ni - 2, 2), rat(ni - 2, 2)),
            Space::ProjReal => (n, rat(ni - 2, 2), rat(-1, 2)),
            Space::ProjComplex => (n, int(ni - 1), int(0)),
            Space::ProjQuat => (n, int(2 * ni - 1), int(1)),
            Space::Cayley => (2, int(7), int(3)),
        };
        Ok(ZonalFamily { space, n, alpha, beta })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.name(),
            "n": self.n,
            "alpha": rational_json(&self.alpha),
            "beta": rational_json(&self.beta),
        })
    }
}

pub fn zonal_table(n: usize) -> Result<Vec<ZonalFamily>> {
    Space::ALL.into_iter().map(|s| ZonalFamily::new(s, n)).collect()
}

/// `φ_j(x) = c_j P_j^{(α,β)}(x)` with `φ_j(1) = 1`.
pub fn zonal_phi(family: &ZonalFamily, j: usize) -> Poly {
    let p = jacobi(&family.alpha, &family.beta, j as u32);
    let at_one = pochhammer(&(family.alpha.clone() + Rational::one()), j as u32) / pochhammer(&Rational::one(), j as u32);
    p.scale(&real(Rational::one() / at_one))
}

/// `k!(α+1)_{2k} / ((2k)!(α+1)_k)`.
pub fn correspondence_factor(alpha: &Rational, k: usize) -> Rational {
    let a1 = alpha + Rational::one();
    let one = Rational::one();
    pochhammer(&one, k as u32) * pochhammer(&a1, 2 * k as u32)
        / (pochhammer(&one, 2 * k as u32) * pochhammer(&a1, k as u32))
}

/// `2x² - 1`.
pub fn double_angle() -> Poly {
    Poly::from_ints(&[-1, 0, 2])
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceReport {
    pub n: usize,
    pub k: usize,
    pub factor: Rational,
    /// `P_{2k}^{(α,α)} - factor · P_k^{(α,-1/2)}(2x²-1)`.
    pub jacobi_residual: Poly,
    /// `φ_{2k}^{sphere} - φ_k^{projreal}(2x²-1)`.
    pub phi_residual: Poly,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.jacobi_residual.is_zero() && self.phi_residual.is_zero()
    }
}

pub fn correspondence_report(n: usize, k: usize) -> Result<CorrespondenceReport> {
    let sphere = ZonalFamily::new(Space::Sphere, n)?;
    let proj = ZonalFamily::new(Space::ProjReal, n)?;
    let alpha = sphere.alpha.clone();
    let factor = correspondence_factor(&alpha, k);
    let lhs = jacobi(&alpha, &alpha, 2 * k as u32);
    let rhs = jacobi(&alpha, &rat(-1, 2), k as u32).compose(&double_angle()).scale(&real(factor.clone()));
    let phi_lhs = zonal_phi(&sphere, 2 * k);
    let phi_rhs = zonal_phi(&proj, k).compose(&double_angle());
    Ok(CorrespondenceReport { n, k, factor, jacobi_residual: &lhs - &rhs, phi_residual: &phi_lhs - &phi_rhs })
}

/// Fails with [`Error::IdentityViolated`] unless both identities hold exactly.
pub fn correspondence_check(n: usize, k: usize) -> Result<CorrespondenceReport> {
    let r = correspondence_report(n, k)?;
    if !r.holds() {
        return Err(Error::IdentityViolated(format!("zonal correspondence fails at n={n}, k={k}")));
    }
    Ok(r)
}

/// Largest `|φ_{2k}^{sphere}(cos θ) - φ_k^{projreal}(cos 2θ)|` on `samples`
/// equally spaced angles in `[0, π]`, divided by the coefficient 1-norm of
/// `φ_{2k}^{sphere}` (the rounding bound of a monomial evaluation).
pub fn angle_relation_residual(n: usize, k: usize, samples: usize) -> Result<f64> {
    let sphere = zonal_phi(&ZonalFamily::new(Space::Sphere, n)?, 2 * k);
    let proj = zonal_phi(&ZonalFamily::new(Space::ProjReal, n)?, k);
    let scale = sphere.coeffs().iter().map(|c| crate::numeric::c_to_f64(c).norm()).sum::<f64>().max(1.0);
    Ok(grid(samples)
        .map(|t| (sphere.eval_f64(t.cos()).re - proj.eval_f64((2.0 * t).cos()).re).abs() / scale)
        .fold(0.0, f64::max))
}

fn grid(points: usize) -> impl Iterator<Item = f64> {
    let step = if points > 1 { std::f64::consts::PI / (points - 1) as f64 } else { 0.0 };
    (0..points).map(move |i| i as f64 * step)
}

/// CSV with header `theta,phi_j(cos theta)` on `points` angles in `[0, π]`.
pub fn zonal_csv(family: &ZonalFamily, j: usize, points: usize) -> String {
    let phi = zonal_phi(family, j);
    let mut out = format!("theta,phi_{j}(cos theta)\n");
    for t in grid(points) {
        out.push_str(&format!("{:.16e},{:.16e}\n", t, phi.eval_f64(t.cos()).re));
    }
    out
}

/// `φ_j(1)`, which is one by construction.
pub fn value_at_one(family: &ZonalFamily, j: usize) -> bool {
    zonal_phi(family, j).eval(&c_int(1)) == c_int(1)
}
