//! Scalar towers, the generator parameter system and label shifts.
//!
//! Three coefficient towers implement [`Scalar`]: exact rationals ([`Rat`]),
//! the generator fraction field ([`GenFrac`]) and high-precision complex
//! numbers ([`crate::quadrature::BigComplex`]). The dual-number tower used for
//! `q -> 1` limits lives in [`crate::speclimit`].

mod genfrac;
mod params;
mod shift;

pub use genfrac::{GenFrac, MPoly, GEN_NAMES};
pub use params::{Params, ParamMode, SampleSpec};
pub use shift::Shift;

use crate::error::{Error, Result};
use crate::quadrature::BigComplex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational number in canonical form.
pub type Rat = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Commutative coefficient ring used throughout the engine.
///
/// Method names avoid the `std::ops` names so that concrete types that also
/// implement those traits never see ambiguous calls.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(n)))
    }
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// True when the element has a multiplicative inverse.
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
    fn inverse(&self) -> Option<Self>;
    fn divide(&self, o: &Self) -> Result<Self> {
        o.inverse().map(|i| self.times(&i)).ok_or(Error::DivisionByZero)
    }
    fn is_one(&self) -> bool {
        self.minus(&Self::one()).is_zero()
    }
    /// Integer power; negative exponents need a unit.
    fn pow_i(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.times(&b);
            }
        }
        Some(acc)
    }
    /// The scalar-level `*` involution when it is computable from the value
    /// alone (only for the symbolic generator tower).
    fn invert_generators(&self) -> Option<Self> {
        None
    }
    fn tower() -> &'static str;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn tower() -> &'static str {
        "rational"
    }
}

/// Absolute value helper for rationals.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// A scalar from any of the three towers, for tower-checked arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyScalar {
    Rational(Rat),
    Symbolic(GenFrac),
    Complex(BigComplex),
}

/// Arithmetic operation selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn arith<S: Scalar>(a: &S, b: &S, op: ArithOp) -> Result<S> {
    Ok(match op {
        ArithOp::Add => a.plus(b),
        ArithOp::Sub => a.minus(b),
        ArithOp::Mul => a.times(b),
        ArithOp::Div => a.divide(b)?,
    })
}

impl AnyScalar {
    fn tower_name(&self) -> &'static str {
        match self {
            AnyScalar::Rational(_) => Rat::tower(),
            AnyScalar::Symbolic(_) => GenFrac::tower(),
            AnyScalar::Complex(_) => BigComplex::tower(),
        }
    }
}

/// Exact arithmetic within one tower; mixing towers is an error.
pub fn scalar_arith(a: &AnyScalar, b: &AnyScalar, op: ArithOp) -> Result<AnyScalar> {
    match (a, b) {
        (AnyScalar::Rational(x), AnyScalar::Rational(y)) => arith(x, y, op).map(AnyScalar::Rational),
        (AnyScalar::Symbolic(x), AnyScalar::Symbolic(y)) => arith(x, y, op).map(AnyScalar::Symbolic),
        (AnyScalar::Complex(x), AnyScalar::Complex(y)) => arith(x, y, op).map(AnyScalar::Complex),
        _ => Err(Error::MixedTowers(a.tower_name(), b.tower_name())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_pow_and_inverse() {
        let x = rat(2, 3);
        assert_eq!(x.pow_i(3).unwrap(), rat(8, 27));
        assert_eq!(x.pow_i(-2).unwrap(), rat(9, 4));
        assert!(<Rat as Scalar>::zero().inverse().is_none());
        assert_eq!(Scalar::divide(&rat(1, 2), &rat(0, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_towers_rejected() {
        let a = AnyScalar::Rational(rat(1, 2));
        let b = AnyScalar::Symbolic(GenFrac::generator(0));
        assert!(matches!(scalar_arith(&a, &b, ArithOp::Add), Err(Error::MixedTowers(..))));
        let c = scalar_arith(&a, &a, ArithOp::Div).unwrap();
        assert_eq!(c, AnyScalar::Rational(rat(1, 1)));
    }
}
