use super::order::ns_rank;
use crate::error::{Error, Result};
use crate::scalars::{Rat, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial in one variable with finitely many nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<S> {
    terms: BTreeMap<i64, S>,
}

impl<S: Scalar> Default for LaurentPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: S, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        LaurentPoly { terms }
    }

    /// `z^n` with unit coefficient.
    pub fn z(n: i64) -> Self {
        Self::monomial(S::one(), n)
    }

    /// The symmetric monomial class `z^n + z^-n` (just `1` for `n = 0`).
    pub fn sym(n: i64) -> Self {
        if n == 0 {
            Self::one()
        } else {
            Self::z(n).plus(&Self::z(-n))
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, S)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (n, c) in it {
            p.add_term(n, &c);
        }
        p
    }

    /// Rational coefficients lifted into the tower.
    pub fn from_rat_terms(terms: &[(i64, Rat)]) -> Self {
        Self::from_terms(terms.iter().map(|(n, c)| (*n, S::from_rat(c))))
    }

    pub fn add_term(&mut self, n: i64, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&n) {
            Some(v) => {
                let s = v.plus(c);
                if s.is_zero() {
                    self.terms.remove(&n);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(n, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: i64) -> S {
        self.terms.get(&n).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Largest `|n|` in the support (0 for the zero polynomial).
    pub fn span(&self) -> i64 {
        self.terms.keys().map(|n| n.abs()).max().unwrap_or(0)
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (n, c) in &o.terms {
            r.add_term(*n, c);
        }
        r
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (n, c) in &o.terms {
            r.add_term(*n, &c.negated());
        }
        r
    }

    pub fn negated(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(n, c)| (*n, c.negated())).collect() }
    }

    pub fn times(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (n, c) in &self.terms {
            for (m, d) in &o.terms {
                r.add_term(n + m, &c.times(d));
            }
        }
        r
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(n, v)| (*n, v.times(c))))
    }

    /// Multiplication by `z^k`.
    pub fn shift_exp(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(n, c)| (n + k, c.clone())).collect() }
    }

    /// `z -> 1/z`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(n, c)| (-n, c.clone())).collect() }
    }

    /// `f(z) -> f(lambda z)`; `lambda` must be a unit when negative powers occur.
    pub fn scale_var(&self, lambda: &S) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(n, c)| (*n, c.times(&lambda.pow_i(*n).expect("scaling factor must be a unit")))),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.times(self);
        }
        r
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.bar()
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LaurentPoly<T> {
        LaurentPoly::from_terms(self.terms.iter().map(|(n, c)| (*n, f(c))))
    }

    /// Evaluation at a point of the coefficient ring.
    pub fn eval(&self, z: &S) -> S {
        let mut acc = S::zero();
        for (n, c) in &self.terms {
            acc = acc.plus(&c.times(&z.pow_i(*n).expect("evaluation point must be a unit")));
        }
        acc
    }

    /// Polynomial long division from the top; `None` if the leading
    /// coefficient of the divisor is not a unit.
    fn divmod_top(&self, d: &Self) -> Option<(Self, Self)> {
        let (dn, dc) = d.terms.iter().next_back()?;
        let dmin = *d.terms.keys().next()?;
        let inv = dc.inverse()?;
        let mut r = self.clone();
        let mut q = Self::zero();
        loop {
            let Some((&rn, rc)) = r.terms.iter().next_back() else { break };
            let rmin = *r.terms.keys().next().unwrap();
            // Stop once the remainder's span is narrower than the divisor's.
            if rn - rmin < dn - dmin {
                break;
            }
            let k = rn - dn;
            let c = rc.times(&inv);
            r = r.minus(&d.shift_exp(k).scale(&c));
            q.add_term(k, &c);
        }
        Some((q, r))
    }

    /// Division from the bottom, for divisors with a unit lowest coefficient.
    fn divmod_bottom(&self, d: &Self) -> Option<(Self, Self)> {
        let (q, r) = self.bar().divmod_top(&d.bar())?;
        Some((q.bar(), r.bar()))
    }

    /// Exact quotient `self / d` in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let attempt = self.divmod_top(d).or_else(|| self.divmod_bottom(d));
        match attempt {
            Some((q, r)) if r.is_zero() => Ok(q),
            Some((_, r)) => Err(Error::NonExactDivision(r.to_string())),
            None => Err(Error::NonExactDivision(format!("divisor {d} has no unit extreme coefficient"))),
        }
    }

    /// `true` when `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Self) -> bool {
        self.div_exact(d).is_ok()
    }
}

impl LaurentPoly<Rat> {
    /// Monic gcd over the rationals (as ordinary polynomials after removing
    /// powers of `z`).
    pub fn gcd(&self, o: &Self) -> Self {
        let norm = |p: &Self| -> Self {
            match p.min_exp() {
                Some(m) => p.shift_exp(-m),
                None => p.clone(),
            }
        };
        let mut a = norm(self);
        let mut b = norm(o);
        while !b.is_zero() {
            let (_, r) = a.divmod_top(&b).expect("rational leading coefficients are units");
            a = b;
            b = norm(&r);
        }
        if let Some((_, lc)) = a.terms.iter().next_back() {
            let inv = lc.inverse().unwrap();
            a = a.scale(&inv);
        }
        a
    }

    /// Degree of the polynomial span (`max - min` exponent).
    pub fn width(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }
}

impl<S: Scalar> fmt::Display for LaurentPoly<S> {
    /// Terms ordered by decreasing non-symmetric rank.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<i64> = self.terms.keys().copied().collect();
        keys.sort_by_key(|n| std::cmp::Reverse(ns_rank(*n)));
        for (i, n) in keys.iter().enumerate() {
            let c = &self.terms[n];
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = match *n {
                0 => String::new(),
                1 => "z".to_string(),
                n => format!("z^{n}"),
            };
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<'a, S: Scalar> Add<&'a LaurentPoly<S>> for &'a LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn add(self, o: &'a LaurentPoly<S>) -> LaurentPoly<S> {
        self.plus(o)
    }
}

impl<'a, S: Scalar> Sub<&'a LaurentPoly<S>> for &'a LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn sub(self, o: &'a LaurentPoly<S>) -> LaurentPoly<S> {
        self.minus(o)
    }
}

impl<'a, S: Scalar> Mul<&'a LaurentPoly<S>> for &'a LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn mul(self, o: &'a LaurentPoly<S>) -> LaurentPoly<S> {
        self.times(o)
    }
}

impl<S: Scalar> Neg for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn neg(self) -> LaurentPoly<S> {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    type P = LaurentPoly<Rat>;

    #[test]
    fn bar_example() {
        let f = P::from_rat_terms(&[(1, rat(1, 1)), (-3, rat(2, 1))]);
        assert_eq!(f.bar(), P::from_rat_terms(&[(-1, rat(1, 1)), (3, rat(2, 1))]));
    }

    #[test]
    fn exact_division_examples() {
        let zz = P::z(1).minus(&P::z(-1));
        assert_eq!(P::z(2).minus(&P::z(-2)).div_exact(&zz).unwrap(), P::sym(1));
        assert_eq!(zz.div_exact(&zz).unwrap(), P::one());
        assert!(matches!(P::one().div_exact(&zz), Err(Error::NonExactDivision(_))));
    }

    #[test]
    fn gcd_of_coprime_and_common() {
        let a = P::from_rat_terms(&[(0, rat(-1, 1)), (1, rat(1, 1))]);
        let b = P::from_rat_terms(&[(0, rat(1, 1)), (1, rat(1, 1))]);
        assert_eq!(a.gcd(&b), P::one());
        assert_eq!(a.times(&b).gcd(&a.times(&P::z(-3))), a);
    }

    #[test]
    fn display_uses_rank_order() {
        let f = P::from_rat_terms(&[(-2, rat(1, 1)), (2, rat(3, 1)), (0, rat(1, 2))]);
        assert_eq!(f.to_string(), "z^-2 + (3)*z^2 + 1/2");
    }
}
