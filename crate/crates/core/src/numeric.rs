//! Arithmetic back-ends for path counts and centrality contributions.
//!
//! The protocol and the Brandes oracle are generic over [`Numeric`], which
//! pairs a path-count type (never wraps: overflow is an error) with a real
//! type for contributions.
//!
//! | back-end      | counts    | reals         |
//! |---------------|-----------|---------------|
//! | [`Float`]     | `u64`     | `f64`         |
//! | [`WideFloat`] | `BigUint` | `f64`         |
//! | [`Exact`]     | `BigUint` | `BigRational` |

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedSub, One, ToPrimitive, Zero};

pub trait Numeric: Debug + Clone + Copy + Send + Sync + 'static {
    type Count: Clone
        + PartialEq
        + Eq
        + Debug
        + Display
        + Zero
        + One
        + CheckedAdd
        + CheckedSub
        + ToPrimitive
        + std::hash::Hash
        + Send
        + Sync;
    type Real: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = Self::Real>
        + Sub<Output = Self::Real>
        + Mul<Output = Self::Real>
        + Div<Output = Self::Real>
        + ToPrimitive
        + Send
        + Sync;

    const NAME: &'static str;
    /// True when `Real` arithmetic is exact.
    const EXACT: bool;

    fn count_to_real(c: &Self::Count) -> Self::Real;
    fn real_from_u64(v: u64) -> Self::Real;

    fn real_to_f64(r: &Self::Real) -> f64 {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn count_to_f64(c: &Self::Count) -> f64 {
        c.to_f64().unwrap_or(f64::INFINITY)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WideFloat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Exact;

impl Numeric for Float {
    type Count = u64;
    type Real = f64;
    const NAME: &'static str = "float";
    const EXACT: bool = false;

    fn count_to_real(c: &u64) -> f64 {
        *c as f64
    }

    fn real_from_u64(v: u64) -> f64 {
        v as f64
    }
}

impl Numeric for WideFloat {
    type Count = BigUint;
    type Real = f64;
    const NAME: &'static str = "wide";
    const EXACT: bool = false;

    fn count_to_real(c: &BigUint) -> f64 {
        c.to_f64().unwrap_or(f64::INFINITY)
    }

    fn real_from_u64(v: u64) -> f64 {
        v as f64
    }
}

impl Numeric for Exact {
    type Count = BigUint;
    type Real = BigRational;
    const NAME: &'static str = "rational";
    const EXACT: bool = true;

    fn count_to_real(c: &BigUint) -> BigRational {
        BigRational::from_integer(BigInt::from(c.clone()))
    }

    fn real_from_u64(v: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// `a * (b + 1) / c`, the per-neighbor term of the contribution recursion.
/// Returns zero when `c` is zero.
pub fn guarded_term<A: Numeric>(a: &A::Count, b: &A::Real, c: &A::Count) -> A::Real {
    if c.is_zero() {
        return A::Real::zero();
    }
    A::count_to_real(a) * (b.clone() + A::Real::one()) / A::count_to_real(c)
}
