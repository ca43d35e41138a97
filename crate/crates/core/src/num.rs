//! Scalar abstraction: the crate's math is generic over `f32`/`f64`.

use nalgebra::RealField;
use num_traits::FromPrimitive;

/// Floating-point scalar the whole crate is generic over.
///
/// `RealField` supplies the trigonometry and linear-algebra bounds nalgebra
/// needs; `FromPrimitive` lets literals written as `f64` flow into the
/// working type via [`conv`].
pub trait Real: RealField + FromPrimitive + Copy {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub fn conv<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must be representable in the scalar type")
}
