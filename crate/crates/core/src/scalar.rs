//! Floating-point abstraction so the whole crate works over `f32` or `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

use crate::tol;

/// Real scalar type underlying all complex arithmetic in this crate.
///
/// The associated tolerance constants mirror the `f64` values in [`tol`];
/// the `f32` impl widens them to what single precision can actually meet.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum<Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    const TOL_HERMITIAN: Self;
    const TOL_TRACE: Self;
    const TOL_PSD: Self;
    const TOL_EIG: Self;
    const TOL_EIG_INPUT: Self;
    const TOL_BOUNDARY: Self;
    const TOL_MEMBERSHIP: Self;

    /// Lossy conversion from `f64`, for literals and tolerances.
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("f64 conversion")
    }

    /// Conversion from a dimension or index.
    fn from_dim(n: usize) -> Self {
        Self::from_usize(n).expect("usize conversion")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("f64 conversion")
    }

    fn into_complex(self) -> Complex<Self> {
        Complex::new(self, Self::zero())
    }
}

impl Scalar for f64 {
    const TOL_HERMITIAN: Self = tol::HERMITIAN;
    const TOL_TRACE: Self = tol::TRACE;
    const TOL_PSD: Self = tol::PSD;
    const TOL_EIG: Self = tol::EIG;
    const TOL_EIG_INPUT: Self = tol::EIG_INPUT;
    const TOL_BOUNDARY: Self = tol::BOUNDARY;
    const TOL_MEMBERSHIP: Self = tol::MEMBERSHIP;
}

impl Scalar for f32 {
    const TOL_HERMITIAN: Self = 1e-5;
    const TOL_TRACE: Self = 1e-5;
    const TOL_PSD: Self = 1e-4;
    const TOL_EIG: Self = 1e-3;
    const TOL_EIG_INPUT: Self = 1e-3;
    const TOL_BOUNDARY: Self = 1e-6;
    const TOL_MEMBERSHIP: Self = 1e-4;
}
