use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalars::Scalar;
use std::fmt;

/// Ratio of a Laurent polynomial by a product of normalized factors.
///
/// Factors are kept unmultiplied so that common denominators are formed as
/// least common multiples of the factor multisets and cancellations are
/// found by trial division.
#[derive(Clone, Debug)]
pub struct RatFunc<S> {
    num: LaurentPoly<S>,
    den: Vec<LaurentPoly<S>>,
}

/// Splits `f = c * z^k * g` with `g` having lowest exponent 0 and a unit
/// extreme coefficient scaled to 1 where possible.
fn normalize_factor<S: Scalar>(f: &LaurentPoly<S>) -> (S, i64, LaurentPoly<S>) {
    let k = f.min_exp().unwrap_or(0);
    let g = f.shift_exp(-k);
    let top = g.coeff(g.max_exp().unwrap_or(0));
    if let Some(inv) = top.inverse() {
        return (top, k, g.scale(&inv));
    }
    let bottom = g.coeff(0);
    if let Some(inv) = bottom.inverse() {
        return (bottom, k, g.scale(&inv));
    }
    (S::one(), k, g)
}

fn product<S: Scalar>(fs: &[&LaurentPoly<S>]) -> LaurentPoly<S> {
    fs.iter().fold(LaurentPoly::one(), |acc, f| acc.times(f))
}

impl<S: Scalar> RatFunc<S> {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Self::poly(LaurentPoly::one())
    }

    pub fn constant(c: S) -> Self {
        Self::poly(LaurentPoly::constant(c))
    }

    pub fn poly(p: LaurentPoly<S>) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    /// `num / (f1 * f2 * ...)`.
    pub fn new(num: LaurentPoly<S>, factors: Vec<LaurentPoly<S>>) -> Result<Self> {
        let mut r = RatFunc { num, den: Vec::new() };
        for f in factors {
            if f.is_zero() {
                return Err(Error::DivisionByZero);
            }
            r.push_factor(&f)?;
        }
        r.cancel();
        Ok(r)
    }

    fn push_factor(&mut self, f: &LaurentPoly<S>) -> Result<()> {
        let (c, k, g) = normalize_factor(f);
        let cinv = c.inverse().ok_or(Error::DivisionByZero)?;
        self.num = self.num.scale(&cinv).shift_exp(-k);
        if g.len() > 1 || !g.coeff(0).is_one() {
            self.den.push(g);
        }
        Ok(())
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut i = 0;
        while i < self.den.len() {
            match self.num.div_exact(&self.den[i]) {
                Ok(q) => {
                    self.num = q;
                    self.den.remove(i);
                }
                Err(_) => i += 1,
            }
        }
    }

    pub fn numerator(&self) -> &LaurentPoly<S> {
        &self.num
    }

    pub fn factors(&self) -> &[LaurentPoly<S>] {
        &self.den
    }

    pub fn denominator(&self) -> LaurentPoly<S> {
        product(&self.den.iter().collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly<S>> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Least common multiple of two factor lists, with the cofactors
    /// needed to bring each side to it.
    fn lcm(a: &[LaurentPoly<S>], b: &[LaurentPoly<S>]) -> (Vec<LaurentPoly<S>>, Vec<LaurentPoly<S>>, Vec<LaurentPoly<S>>) {
        let mut used = vec![false; a.len()];
        let mut extra_for_a = Vec::new();
        for f in b {
            match (0..a.len()).find(|&i| !used[i] && a[i] == *f) {
                Some(i) => used[i] = true,
                None => extra_for_a.push(f.clone()),
            }
        }
        let extra_for_b: Vec<_> = a.iter().zip(&used).filter(|(_, u)| !**u).map(|(f, _)| f.clone()).collect();
        let mut l = a.to_vec();
        l.extend(extra_for_a.iter().cloned());
        (l, extra_for_a, extra_for_b)
    }

    pub fn plus(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (l, ea, eb) = Self::lcm(&self.den, &o.den);
        let na = self.num.times(&product(&ea.iter().collect::<Vec<_>>()));
        let nb = o.num.times(&product(&eb.iter().collect::<Vec<_>>()));
        let mut r = RatFunc { num: na.plus(&nb), den: l };
        r.cancel();
        r
    }

    pub fn negated(&self) -> Self {
        RatFunc { num: self.num.negated(), den: self.den.clone() }
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        den.extend(o.den.iter().cloned());
        let mut r = RatFunc { num: self.num.times(&o.num), den };
        r.cancel();
        r
    }

    pub fn scale(&self, c: &S) -> Self {
        RatFunc { num: self.num.scale(c), den: if c.is_zero() { Vec::new() } else { self.den.clone() } }
    }

    pub fn times_poly(&self, p: &LaurentPoly<S>) -> Self {
        self.times(&Self::poly(p.clone()))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.denominator(), vec![self.num.clone()])
    }

    pub fn divide(&self, o: &Self) -> Result<Self> {
        Ok(self.times(&o.inverse()?))
    }

    fn map_parts(&self, f: impl Fn(&LaurentPoly<S>) -> LaurentPoly<S>) -> Self {
        let mut r = RatFunc { num: f(&self.num), den: Vec::new() };
        for d in &self.den {
            r.push_factor(&f(d)).expect("image of a nonzero factor is nonzero");
        }
        r
    }

    /// `r(z) -> r(1/z)`.
    pub fn bar(&self) -> Self {
        self.map_parts(|p| p.bar())
    }

    /// `r(z) -> r(lambda z)`.
    pub fn subst_scale(&self, lambda: &S) -> Self {
        self.map_parts(|p| p.scale_var(lambda))
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<RatFunc<T>> {
        RatFunc::new(self.num.map_coeffs(&f), self.den.iter().map(|d| d.map_coeffs(&f)).collect())
    }

    /// Order of growth at `z -> infinity` (`None` for zero).
    pub fn degree_at_inf(&self) -> Option<i64> {
        let n = self.num.max_exp()?;
        Some(n - self.den.iter().map(|d| d.max_exp().unwrap_or(0)).sum::<i64>())
    }

    /// Leading coefficient at `z -> infinity`.
    pub fn lead_at_inf(&self) -> Option<S> {
        let n = self.num.max_exp()?;
        let mut c = self.num.coeff(n);
        for d in &self.den {
            let lc = d.coeff(d.max_exp().unwrap_or(0));
            c = c.divide(&lc).ok()?;
        }
        Some(c)
    }

    /// Value at a point of the coefficient ring.
    pub fn eval(&self, z: &S) -> Result<S> {
        let mut d = S::one();
        for f in &self.den {
            d = d.times(&f.eval(z));
        }
        self.num.eval(z).divide(&d)
    }
}

impl<S: Scalar> PartialEq for RatFunc<S> {
    fn eq(&self, o: &Self) -> bool {
        let (_, ea, eb) = Self::lcm(&self.den, &o.den);
        self.num.times(&product(&ea.iter().collect::<Vec<_>>())) == o.num.times(&product(&eb.iter().collect::<Vec<_>>()))
    }
}

impl<S: Scalar> From<LaurentPoly<S>> for RatFunc<S> {
    fn from(p: LaurentPoly<S>) -> Self {
        Self::poly(p)
    }
}

impl<S: Scalar> fmt::Display for RatFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})", self.num)?;
        for d in &self.den {
            write!(f, "/({d})")?;
        }
        Ok(())
    }
}

/// Exact quotient `f * r` in the Laurent ring.
pub fn ratfunc_apply_division<S: Scalar>(f: &LaurentPoly<S>, r: &RatFunc<S>) -> Result<LaurentPoly<S>> {
    let mut acc = f.times(r.numerator());
    for d in r.factors() {
        acc = acc.div_exact(d)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rat};

    type P = LaurentPoly<Rat>;

    fn zz() -> P {
        P::z(1).minus(&P::z(-1))
    }

    #[test]
    fn division_examples() {
        let r = RatFunc::new(P::one(), vec![zz()]).unwrap();
        assert_eq!(ratfunc_apply_division(&P::z(2).minus(&P::z(-2)), &r).unwrap(), P::sym(1));
        assert_eq!(ratfunc_apply_division(&zz(), &r).unwrap(), P::one());
        assert!(matches!(ratfunc_apply_division(&P::one(), &r), Err(Error::NonExactDivision(_))));
    }

    #[test]
    fn sums_use_common_factors() {
        let one_minus = P::from_rat_terms(&[(0, rat(1, 1)), (2, rat(-1, 1))]);
        let a = RatFunc::new(P::one(), vec![one_minus.clone()]).unwrap();
        let b = RatFunc::new(P::z(2), vec![one_minus.bar()]).unwrap();
        // 1/(1-z^2) + z^2/(1-z^-2) = (1 - z^4)/(1 - z^2) = 1 + z^2
        let s = a.plus(&b);
        assert!(s.is_polynomial());
        assert_eq!(s, RatFunc::poly(P::from_rat_terms(&[(0, rat(1, 1)), (2, rat(1, 1))])));
    }

    #[test]
    fn degree_and_lead_at_infinity() {
        let r = RatFunc::new(P::one(), vec![zz()]).unwrap();
        assert_eq!(r.degree_at_inf(), Some(-1));
        assert_eq!(r.lead_at_inf(), Some(rat(1, 1)));
        assert_eq!(r.bar().degree_at_inf(), Some(-1));
        assert_eq!(r.bar().lead_at_inf(), Some(rat(-1, 1)));
    }
}
