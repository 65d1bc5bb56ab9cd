//! Closed-form Keiper-Li variant coefficients at arbitrary precision.
//!
//! `Lambda_n = (-1)^n sum_(m=1..n) (-1)^m A_nm log 2xi(2m)` with exact
//! rational weights `A_nm`. The sum cancels about `0.77 n` decimal digits, so
//! every entry is carried at the precision its summand needs (see
//! [`precision`]).
//!
//! Numerical kernels are generic over [`Real`]; [`Mp`] (MPFR-backed) is what
//! the library uses for anything beyond small n.

mod bigfloat;
pub mod centered;
pub mod coefficients;
pub mod detection;
pub mod lambda;
pub mod error;
pub mod precision;
pub mod scalar;
pub mod special;
pub mod zeros;

pub use error::{Error, Result};
pub use scalar::{BigFloat, Precision, Real};

/// Multiple-precision real used throughout.
pub type Mp = BigFloat;
/// Complex number over [`Mp`].
pub type ComplexMp = num_complex::Complex<BigFloat>;
/// Complex number over f64.
pub type Complex64 = num_complex::Complex<f64>;
