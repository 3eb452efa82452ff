use super::{mat_map, mat_mul, v_matrix, Basis, ScalarMat};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::scalars::{Params, Scalar};

/// 2×2 matrix of rational functions in the symbol variable `T`.
pub type RatMat<S> = [[RatFunc<S>; 2]; 2];

/// The matrix `C_{s,k}(T)` relating the non-symmetric matrix family to the
/// diagonal symmetric one.
#[derive(Clone, Debug)]
pub struct CMatrix<S> {
    pub basis: Basis,
    pub m: RatMat<S>,
}

fn tlin<S: Scalar>(x: S) -> LaurentPoly<S> {
    // x T - T^-1
    LaurentPoly::from_terms([(1, x), (-1, S::one().negated())])
}

fn tquad<S: Scalar>(x: S) -> LaurentPoly<S> {
    // x T^2 - T^-2
    LaurentPoly::from_terms([(2, x), (-2, S::one().negated())])
}

fn frac<S: Scalar>(num: LaurentPoly<S>, den: LaurentPoly<S>) -> RatFunc<S> {
    RatFunc::new(num, vec![den]).expect("nonzero denominator")
}

fn konst<S: Scalar>(c: S) -> RatFunc<S> {
    RatFunc::constant(c)
}

pub fn c_matrix<S: Scalar>(basis: Basis, p: &Params<S>) -> Result<CMatrix<S>> {
    let (a, b, c, d, q) = (p.a(), p.b(), p.c(), p.d(), p.q());
    let ab = a.times(&b);
    let inv = |x: &S| x.inverse().ok_or(Error::DivisionByZero);
    let m = match basis {
        Basis::St => {
            let den = tquad(p.abcd());
            let xa = frac(tlin(a.times(&c)).times(&tlin(a.times(&d))), den.clone());
            let xb = frac(tlin(b.times(&c)).times(&tlin(b.times(&d))), den);
            let pre = ab.divide(&a.minus(&b)).map_err(|_| Error::Degenerate("a = b".into()))?;
            let g: RatMat<S> = [
                [konst(S::one()), xb.scale(&inv(&b)?.negated())],
                [konst(S::one().negated()), xa.scale(&inv(&a)?)],
            ];
            let g = mat_map(&g, |x| x.scale(&pre));
            mat_mul(&mat_map(&v_matrix(p), |x| konst(x.clone())), &g)
        }
        Basis::Ko => {
            let e = p.abcd().divide(&q)?;
            let den = tquad(e.clone());
            let cdq = c.times(&d).divide(&q)?;
            let m00 = frac(tlin(ab.clone()).times(&tlin(e)), den.clone());
            let m10 = frac(tlin(cdq).times(&tlin(S::one())), den).scale(&ab.negated());
            let pre = inv(&ab.minus(&S::one())).map_err(|_| Error::Degenerate("ab = 1".into()))?;
            let g: RatMat<S> = [[m00, konst(S::one().negated())], [m10, konst(S::one())]];
            mat_map(&g, |x| x.scale(&pre))
        }
    };
    Ok(CMatrix { basis, m })
}

impl<S: Scalar> CMatrix<S> {
    /// Value at `T = t`.
    pub fn eval(&self, t: &S) -> Result<ScalarMat<S>> {
        let e = |x: &RatFunc<S>| x.eval(t);
        Ok([[e(&self.m[0][0])?, e(&self.m[0][1])?], [e(&self.m[1][0])?, e(&self.m[1][1])?]])
    }

    /// `C(lambda T)`.
    pub fn rescaled(&self, lambda: &S) -> Self {
        CMatrix { basis: self.basis, m: mat_map(&self.m, |x| x.subst_scale(lambda)) }
    }
}

pub fn rat_det<S: Scalar>(x: &RatMat<S>) -> RatFunc<S> {
    x[0][0].times(&x[1][1]).minus(&x[0][1].times(&x[1][0]))
}

pub fn rat_inverse<S: Scalar>(x: &RatMat<S>) -> Result<RatMat<S>> {
    let det = rat_det(x);
    if det.is_zero() {
        return Err(Error::Degenerate("singular matrix".into()));
    }
    let di = det.inverse()?;
    Ok([
        [x[1][1].times(&di), x[0][1].negated().times(&di)],
        [x[1][0].negated().times(&di), x[0][0].times(&di)],
    ])
}

pub fn rat_const<S: Scalar>(x: &ScalarMat<S>) -> RatMat<S> {
    mat_map(x, |c| konst(c.clone()))
}

pub fn rat_mul<S: Scalar>(x: &RatMat<S>, y: &RatMat<S>) -> RatMat<S> {
    mat_mul(x, y)
}
