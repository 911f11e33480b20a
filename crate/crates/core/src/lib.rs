//! Matrix-valued spherical functions on spheres and real projective spaces.
//!
//! Every object is built in exact Gaussian-rational arithmetic: the SO(4)
//! sequences `P_w`, `P̃_w` with their weight and symmetric operators, the
//! fundamental-type solutions on `S^n`, and the zonal Jacobi correspondence
//! between `S^n` and `P^n(R)`. Floating point only appears at evaluation and
//! quadrature boundaries.

pub mod cli;
pub mod export;
pub mod hypergeometric;
pub mod numeric;
pub mod poly;
pub mod quadratic;
pub mod quadrature;
pub mod sn;
pub mod so4;
pub mod verify;
pub mod special;
pub mod zonal;

mod error;

pub use error::{Error, Result};
pub use numeric::{ComplexRational, Rational};
pub use poly::{ConstMatrix, Matrix, Poly, PolyMatrix};
