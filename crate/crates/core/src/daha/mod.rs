//! The basic representation of the double affine Hecke algebra of type
//! `(C1^v, C1)` on Laurent polynomials, and the creation operators.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::ops::DiffReflOp;
use crate::scalars::{Params, Scalar};

/// The operators of the basic representation at one parameter set.
#[derive(Clone, Debug)]
pub struct DahaGens<S> {
    pub params: Params<S>,
    pub t0: DiffReflOp<S>,
    pub t0inv: DiffReflOp<S>,
    pub t1: DiffReflOp<S>,
    pub t1inv: DiffReflOp<S>,
    pub z: DiffReflOp<S>,
    pub zinv: DiffReflOp<S>,
    pub y: DiffReflOp<S>,
    pub yinv: DiffReflOp<S>,
    /// `Y + Y^-1` as an operator on all Laurent polynomials.
    pub y_sum: DiffReflOp<S>,
    /// Reflection-free form of `Y + Y^-1`, valid on symmetric polynomials.
    pub l: DiffReflOp<S>,
}

/// Which creation operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Creation {
    Alpha0,
    Alpha1,
}

fn inv<S: Scalar>(x: &S) -> S {
    x.inverse().expect("generators are invertible")
}

fn diff<S: Scalar>(x: &S) -> S {
    x.minus(&inv(x))
}

fn poly<S: Scalar>(terms: Vec<(i64, S)>) -> LaurentPoly<S> {
    LaurentPoly::from_terms(terms)
}

/// `T1 = g1(z) + (t1 - g1(z)) s1` with
/// `g1 = (t1 - 1/t1 + (t1~ - 1/t1~) z) / (1 - z^2)`.
pub fn build_t1<S: Scalar>(p: &Params<S>) -> DiffReflOp<S> {
    let g = RatFunc::new(
        poly(vec![(0, diff(&p.tau1)), (1, diff(&p.tau1t))]),
        vec![poly(vec![(0, S::one()), (2, S::one().negated())])],
    )
    .expect("nonzero denominator");
    let s = p.s.clone();
    DiffReflOp::mult(s.clone(), g.clone())
        .plus(&DiffReflOp::term(s, RatFunc::constant(p.tau1.clone()).minus(&g), 0, true))
}

/// `T0 = g0(z) + (t0 - g0(z)) s0` with `s0 = T^-2 s1` and
/// `g0 = (t0 - 1/t0 + (t0~ - 1/t0~) s / z) / (1 - q z^-2)`.
pub fn build_t0<S: Scalar>(p: &Params<S>) -> DiffReflOp<S> {
    let g = RatFunc::new(
        poly(vec![(0, diff(&p.tau0)), (-1, diff(&p.tau0t).times(&p.s))]),
        vec![poly(vec![(0, S::one()), (-2, p.q().negated())])],
    )
    .expect("nonzero denominator");
    let s = p.s.clone();
    DiffReflOp::mult(s.clone(), g.clone())
        .plus(&DiffReflOp::term(s, RatFunc::constant(p.tau0.clone()).minus(&g), -2, true))
}

impl<S: Scalar> DahaGens<S> {
    pub fn new(p: &Params<S>) -> Self {
        let s = p.s.clone();
        let t0 = build_t0(p);
        let t1 = build_t1(p);
        let t0inv = t0.minus(&DiffReflOp::scalar(s.clone(), diff(&p.tau0)));
        let t1inv = t1.minus(&DiffReflOp::scalar(s.clone(), diff(&p.tau1)));
        let z = DiffReflOp::mult(s.clone(), RatFunc::poly(LaurentPoly::z(1)));
        let zinv = DiffReflOp::mult(s.clone(), RatFunc::poly(LaurentPoly::z(-1)));
        let y = t0.compose(&t1);
        let yinv = t1inv.compose(&t0inv);
        let y_sum = y.plus(&yinv);
        let l = build_l_explicit(p);
        DahaGens { params: p.clone(), t0, t0inv, t1, t1inv, z, zinv, y, yinv, y_sum, l }
    }

    /// `b'_0(x) = (t1~ - 1/t1~ + (t0~ - 1/t0~) x) / (1 - x^2)`.
    pub fn b0(&self, x: &S) -> Result<S> {
        let p = &self.params;
        let den = S::one().minus(&x.times(x));
        diff(&p.tau1t)
            .plus(&diff(&p.tau0t).times(x))
            .divide(&den)
            .map_err(|_| Error::Degenerate(format!("1 - x^2 = 0 at x = {x}")))
    }

    /// `b'_1(x) = (t1 - 1/t1 + (t0 - 1/t0) x) / (1 - x^2)`.
    pub fn b1(&self, x: &S) -> Result<S> {
        let p = &self.params;
        let den = S::one().minus(&x.times(x));
        diff(&p.tau1)
            .plus(&diff(&p.tau0).times(x))
            .divide(&den)
            .map_err(|_| Error::Degenerate(format!("1 - x^2 = 0 at x = {x}")))
    }

    /// Creation operator applied to a `Y`-eigenvector with eigenvalue `lambda`.
    pub fn creation_apply(&self, which: Creation, f: &LaurentPoly<S>, lambda: &S) -> Result<LaurentPoly<S>> {
        match which {
            Creation::Alpha0 => {
                let x = self.params.s.times(lambda);
                let head = self.t1inv.apply(&f.shift_exp(-1))?;
                Ok(head.minus(&f.scale(&self.b0(&x)?)))
            }
            Creation::Alpha1 => {
                let x = lambda.inverse().ok_or(Error::DivisionByZero)?;
                let head = self.t1.apply(f)?;
                Ok(head.minus(&f.scale(&self.b1(&x)?)))
            }
        }
    }
}

/// `L` assembled from the c-functions:
/// `c1(z) c0(s z) (T^2 - 1) + c1(1/z) c0(s/z) (T^-2 - 1) + t0 t1 + 1/(t0 t1)`.
pub fn build_l_explicit<S: Scalar>(p: &Params<S>) -> DiffReflOp<S> {
    let s = p.s.clone();
    let cfun = |t: &S, tt: &S, lam: &S| -> RatFunc<S> {
        // (t lam z - 1/(t lam z) + tt - 1/tt) / (lam z - 1/(lam z))
        let li = inv(lam);
        RatFunc::new(
            poly(vec![(1, t.times(lam)), (-1, inv(t).times(&li).negated()), (0, diff(tt))]),
            vec![poly(vec![(1, lam.clone()), (-1, li.negated())])],
        )
        .expect("nonzero denominator")
    };
    let up = cfun(&p.tau1, &p.tau1t, &S::one()).times(&cfun(&p.tau0, &p.tau0t, &p.s));
    let down = up.bar();
    let k = p.tau01();
    let one = DiffReflOp::identity(s.clone());
    DiffReflOp::mult(s.clone(), up)
        .compose(&DiffReflOp::t_pow(s.clone(), 2).minus(&one))
        .plus(&DiffReflOp::mult(s.clone(), down).compose(&DiffReflOp::t_pow(s.clone(), -2).minus(&one)))
        .plus(&DiffReflOp::scalar(s, k.plus(&inv(&k))))
}

/// `f_2(z) = q^(-k'_1) (1-az)(1-bz)(1-cz)(1-dz) / ((1-z^2)(1-qz^2))`.
pub fn f2<S: Scalar>(p: &Params<S>) -> RatFunc<S> {
    let lin = |u: S| poly(vec![(0, S::one()), (1, u.negated())]);
    let num = lin(p.a()).times(&lin(p.b())).times(&lin(p.c())).times(&lin(p.d())).scale(&inv(&p.tau01()));
    RatFunc::new(
        num,
        vec![poly(vec![(0, S::one()), (2, S::one().negated())]), poly(vec![(0, S::one()), (2, p.q().negated())])],
    )
    .expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rat};

    fn params() -> Params<Rat> {
        Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9)).unwrap()
    }

    #[test]
    fn t1_on_small_monomials() {
        let p = params();
        let d = DahaGens::new(&p);
        assert_eq!(d.t1.apply(&LaurentPoly::one()).unwrap(), LaurentPoly::constant(p.tau1.clone()));
        let expect = LaurentPoly::from_terms([(-1, inv(&p.tau1)), (0, diff(&p.tau1t).negated())]);
        assert_eq!(d.t1.apply(&LaurentPoly::z(1)).unwrap(), expect);
    }

    #[test]
    fn y_fixes_constants() {
        let p = params();
        let d = DahaGens::new(&p);
        assert_eq!(d.y.apply(&LaurentPoly::one()).unwrap(), LaurentPoly::constant(p.tau01()));
    }

    #[test]
    fn explicit_l_agrees() {
        let p = params();
        let d = DahaGens::new(&p);
        for n in 0..=6 {
            let f = LaurentPoly::sym(n);
            assert_eq!(d.l.apply(&f).unwrap(), d.y_sum.apply(&f).unwrap());
        }
        assert_eq!(d.l.coeff(2), f2(&p));
        assert!(d.l.is_symmetric());
        let k = p.tau01();
        assert_eq!(d.l.apply(&LaurentPoly::one()).unwrap(), LaurentPoly::constant(k.clone() + inv(&k)));
    }

    fn vanishes_on_monomials(op: &DiffReflOp<Rat>) {
        for n in -6..=6 {
            assert!(op.apply(&LaurentPoly::z(n)).unwrap().is_zero(), "fails on z^{n}");
        }
    }

    #[test]
    fn quadratic_relations() {
        let p = params();
        let d = DahaGens::new(&p);
        let s = p.s.clone();
        let c = |x: Rat| DiffReflOp::scalar(s.clone(), x);
        for (t, tau) in [(&d.t0, &p.tau0), (&d.t1, &p.tau1)] {
            vanishes_on_monomials(&t.minus(&c(tau.clone())).compose(&t.plus(&c(inv(tau)))));
        }
        vanishes_on_monomials(&d.t0.compose(&d.t0inv).minus(&DiffReflOp::identity(s.clone())));
        vanishes_on_monomials(&d.y.compose(&d.yinv).minus(&DiffReflOp::identity(s)));
    }

    #[test]
    fn cross_relations() {
        let p = params();
        let d = DahaGens::new(&p);
        let s = p.s.clone();
        let c = |x: Rat| DiffReflOp::scalar(s.clone(), x);
        let t0z = d.t0.compose(&d.zinv);
        let si = inv(&s);
        let left = t0z.minus(&c(inv(&p.tau0t).times(&si)));
        let right = t0z.plus(&c(p.tau0t.clone().times(&si)));
        vanishes_on_monomials(&left.compose(&right));
        let t1z = d.t1.compose(&d.z);
        let left = t1z.minus(&c(inv(&p.tau1t)));
        let right = t1z.plus(&c(p.tau1t.clone()));
        vanishes_on_monomials(&left.compose(&right));
    }
}
