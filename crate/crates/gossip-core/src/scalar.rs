//! Scalar abstraction for the numeric core.
//!
//! The linear algebra, polynomial and solver layers are generic over
//! [`Scalar`] so the same routines run in `f32` or `f64`. The crate-root
//! aliases pin the `f64` instantiation used by the CLI and the verification
//! suite; `f32` is exercised by a handful of smoke tests only.

use num_traits::{Float, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

pub trait Scalar: Float + FromPrimitive + NumAssign + Sum + Debug + Display + 'static {
    /// Shorthand for converting an `f64` constant (tolerances, table values).
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant must convert")
    }

    /// Shorthand for converting a count.
    fn us(v: usize) -> Self {
        Self::from_usize(v).expect("usize must convert")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
