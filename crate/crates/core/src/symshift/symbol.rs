use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::scalars::{Scalar, Shift};
use std::fmt;

/// An element `t^h alpha(T)` of the graded symbol ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol<S> {
    pub h: Shift,
    pub poly: LaurentPoly<S>,
}

impl<S: Scalar> Symbol<S> {
    pub fn new(h: Shift, poly: LaurentPoly<S>) -> Self {
        Symbol { h, poly }
    }

    /// Product `left * right` in the symbol ring, where `left` must already
    /// be evaluated at the parameters shifted by `right.h`.
    pub fn r_mul(left_at_shifted: &Symbol<S>, right: &Symbol<S>, s: &S) -> Result<Symbol<S>> {
        let e = right.h.dv(1);
        let lam = s.pow_i(-e).ok_or(crate::error::Error::DivisionByZero)?;
        Ok(Symbol::new(left_at_shifted.h + right.h, left_at_shifted.poly.scale_var(&lam).times(&right.poly)))
    }

    /// `alpha(x)` for a scalar `x`.
    pub fn value_at(&self, x: &S) -> S {
        self.poly.eval(x)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl<S: Scalar> fmt::Display for Symbol<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} [{}]", self.h, self.poly.to_string().replace('z', "T"))
    }
}
