//! Exact scalar types for lattice geometry.
//!
//! Every coordinate in this crate is an exact integer. The geometry is generic
//! over the integer width so that large instances can move to `i128` without
//! touching the algorithms; floating point is deliberately not supported since
//! all predicates must be decidable.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{PrimInt, Signed};

/// Signed machine integer usable as a lattice coordinate.
pub trait Scalar: PrimInt + Signed + Integer + Hash + Debug + Display + Default + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("coordinate out of range for scalar type")
    }

    fn to_i64(self) -> i64 {
        num_traits::ToPrimitive::to_i64(&self).expect("coordinate does not fit in i64")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Scalar for i32 {}
impl Scalar for i64 {}
impl Scalar for i128 {}
