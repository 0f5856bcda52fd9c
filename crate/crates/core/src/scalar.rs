//! Scalar abstraction shared by the evaluators.
//!
//! Exact kernel sums produce integer coefficients; everything downstream is
//! generic so the same code runs in `f32`, `f64` or exact rationals.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num, ToPrimitive};

/// A ring element we can sum kernel terms in.
pub trait Scalar: Clone + Num + Neg<Output = Self> + Send + Sync + Debug {
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Integer power by repeated squaring (`0^0 = 1`).
    fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

/// Floating-point scalars: what the simulator and the Ising evaluators need.
pub trait Real: Scalar + Float + std::iter::Sum {
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("representable")
    }
}

impl<T: Scalar + Float + std::iter::Sum> Real for T {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powu_matches_powi() {
        assert_eq!(3.0f64.powu(5), 243.0);
        assert_eq!(0.0f64.powu(0), 1.0);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(half.powu(3), BigRational::new(1.into(), 8.into()));
    }
}
