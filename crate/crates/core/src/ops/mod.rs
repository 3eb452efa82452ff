//! Difference-reflection operators in the normal form
//! `sum c_n(z) T^n + sum d_n(z) T^n s1`, with `T f(z) = f(s z)` for the
//! generator `s = q^(1/2)` and `s1 f(z) = f(1/z)`.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::scalars::{Params, Scalar, Shift};
use crate::symshift::Symbol;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A difference-reflection operator; reflections are kept to the right of
/// the powers of `T`, rational coefficients to the left.
#[derive(Clone, Debug)]
pub struct DiffReflOp<S> {
    plain: BTreeMap<i64, RatFunc<S>>,
    refl: BTreeMap<i64, RatFunc<S>>,
    s: S,
    shift: Option<Shift>,
}

fn add_into<S: Scalar>(m: &mut BTreeMap<i64, RatFunc<S>>, n: i64, c: RatFunc<S>) {
    if c.is_zero() {
        return;
    }
    let v = match m.remove(&n) {
        Some(old) => old.plus(&c),
        None => c,
    };
    if !v.is_zero() {
        m.insert(n, v);
    }
}

impl<S: Scalar> DiffReflOp<S> {
    pub fn zero(s: S) -> Self {
        DiffReflOp { plain: BTreeMap::new(), refl: BTreeMap::new(), s, shift: None }
    }

    /// Multiplication by a rational function.
    pub fn mult(s: S, r: RatFunc<S>) -> Self {
        Self::term(s, r, 0, false)
    }

    pub fn identity(s: S) -> Self {
        Self::mult(s, RatFunc::one())
    }

    pub fn scalar(s: S, c: S) -> Self {
        Self::mult(s, RatFunc::constant(c))
    }

    /// `r(z) T^n` or `r(z) T^n s1`.
    pub fn term(s: S, r: RatFunc<S>, n: i64, reflect: bool) -> Self {
        let mut op = Self::zero(s);
        if reflect {
            add_into(&mut op.refl, n, r);
        } else {
            add_into(&mut op.plain, n, r);
        }
        op
    }

    /// `T^n`.
    pub fn t_pow(s: S, n: i64) -> Self {
        Self::term(s, RatFunc::one(), n, false)
    }

    /// The reflection `s1`.
    pub fn reflection(s: S) -> Self {
        Self::term(s, RatFunc::one(), 0, true)
    }

    /// `s0 = s1 T^2 = T^-2 s1`.
    pub fn affine_reflection(s: S) -> Self {
        Self::term(s, RatFunc::one(), -2, true)
    }

    pub fn with_shift(mut self, h: Shift) -> Self {
        self.shift = Some(h);
        self
    }

    pub fn shift(&self) -> Option<Shift> {
        self.shift
    }

    pub fn s(&self) -> &S {
        &self.s
    }

    pub fn plain(&self) -> &BTreeMap<i64, RatFunc<S>> {
        &self.plain
    }

    pub fn refl(&self) -> &BTreeMap<i64, RatFunc<S>> {
        &self.refl
    }

    pub fn coeff(&self, n: i64) -> RatFunc<S> {
        self.plain.get(&n).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn refl_coeff(&self, n: i64) -> RatFunc<S> {
        self.refl.get(&n).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.plain.is_empty() && self.refl.is_empty()
    }

    fn spow(&self, n: i64) -> S {
        self.s.pow_i(n).expect("s is invertible")
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut r = DiffReflOp { shift: None, ..self.clone() };
        for (n, c) in &o.plain {
            add_into(&mut r.plain, *n, c.clone());
        }
        for (n, c) in &o.refl {
            add_into(&mut r.refl, *n, c.clone());
        }
        if self.shift == o.shift {
            r.shift = self.shift;
        }
        r
    }

    pub fn negated(&self) -> Self {
        self.scale(&S::one().negated())
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.left_mul(&RatFunc::constant(c.clone()))
    }

    /// `r(z) * self`.
    pub fn left_mul(&self, r: &RatFunc<S>) -> Self {
        let mut out = Self::zero(self.s.clone());
        out.shift = self.shift;
        for (n, c) in &self.plain {
            add_into(&mut out.plain, *n, r.times(c));
        }
        for (n, c) in &self.refl {
            add_into(&mut out.refl, *n, r.times(c));
        }
        out
    }

    /// Plain operator product `self * o`.
    pub fn compose(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.s.clone());
        for (n, c) in &self.plain {
            let sn = self.spow(*n);
            for (m, d) in &o.plain {
                add_into(&mut out.plain, n + m, c.times(&d.subst_scale(&sn)));
            }
            for (m, d) in &o.refl {
                add_into(&mut out.refl, n + m, c.times(&d.subst_scale(&sn)));
            }
        }
        for (n, c) in &self.refl {
            let sn = self.spow(*n);
            for (m, d) in &o.plain {
                add_into(&mut out.refl, n - m, c.times(&d.bar().subst_scale(&sn)));
            }
            for (m, d) in &o.refl {
                add_into(&mut out.plain, n - m, c.times(&d.bar().subst_scale(&sn)));
            }
        }
        out
    }

    /// `self^e` under plain composition.
    pub fn power(&self, e: u32) -> Self {
        let mut r = Self::identity(self.s.clone());
        for _ in 0..e {
            r = r.compose(self);
        }
        r
    }

    /// Exact action on a Laurent polynomial.
    pub fn apply(&self, f: &LaurentPoly<S>) -> Result<LaurentPoly<S>> {
        let fb = f.bar();
        let mut acc = RatFunc::zero();
        for (n, c) in &self.plain {
            acc = acc.plus(&c.times_poly(&f.scale_var(&self.spow(*n))));
        }
        for (n, c) in &self.refl {
            acc = acc.plus(&c.times_poly(&fb.scale_var(&self.spow(*n))));
        }
        match acc.as_poly() {
            Some(p) => Ok(p.clone()),
            None => Err(Error::NonExactDivision(acc.to_string())),
        }
    }

    /// No reflection part and `c_n(z) = c_-n(1/z)` for all `n`.
    pub fn is_symmetric(&self) -> bool {
        if !self.refl.is_empty() {
            return false;
        }
        self.plain.iter().all(|(n, c)| self.coeff(-n).bar() == *c)
    }

    /// Even and odd parts in the power of `T`.
    pub fn parity_split(&self) -> (Self, Self) {
        let pick = |even: bool| {
            let keep = |m: &BTreeMap<i64, RatFunc<S>>| -> BTreeMap<i64, RatFunc<S>> {
                m.iter().filter(|(n, _)| (*n % 2 == 0) == even).map(|(n, c)| (*n, c.clone())).collect()
            };
            DiffReflOp { plain: keep(&self.plain), refl: keep(&self.refl), s: self.s.clone(), shift: self.shift }
        };
        (pick(true), pick(false))
    }

    /// Leading symbol `t^h alpha(T)` of a symmetric operator of shift `h`.
    pub fn eta_symbol(&self, h: &Shift) -> Result<Symbol<S>> {
        if !self.is_symmetric() {
            return Err(Error::NotShiftOperator(format!("{h} (operator is not symmetric)")));
        }
        let d = -h.dot_v(1);
        let mut poly = LaurentPoly::zero();
        for (n, c) in &self.plain {
            let deg = c.degree_at_inf().expect("stored coefficients are nonzero");
            if num_rational::Rational64::from_integer(deg) > d {
                return Err(Error::NotShiftOperator(h.to_string()));
            }
            if num_rational::Rational64::from_integer(deg) == d {
                poly.add_term(*n, &c.lead_at_inf().ok_or(Error::DivisionByZero)?);
            }
        }
        if poly.is_zero() && !self.is_zero() {
            return Err(Error::NotShiftOperator(format!("{h} (leading part vanishes)")));
        }
        Ok(Symbol::new(*h, poly))
    }

    /// Coefficient-wise change of scalar tower.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<DiffReflOp<T>> {
        let conv = |m: &BTreeMap<i64, RatFunc<S>>| -> Result<BTreeMap<i64, RatFunc<T>>> {
            m.iter().map(|(n, c)| Ok((*n, c.map_coeffs(&f)?))).collect()
        };
        Ok(DiffReflOp { plain: conv(&self.plain)?, refl: conv(&self.refl)?, s: f(&self.s), shift: self.shift })
    }

    /// Maximal `|n|` among the powers of `T` present.
    pub fn order(&self) -> i64 {
        self.plain.keys().chain(self.refl.keys()).map(|n| n.abs()).max().unwrap_or(0)
    }
}

impl<S: Scalar> PartialEq for DiffReflOp<S> {
    fn eq(&self, o: &Self) -> bool {
        let same = |a: &BTreeMap<i64, RatFunc<S>>, b: &BTreeMap<i64, RatFunc<S>>| {
            a.keys().chain(b.keys()).all(|n| {
                let x = a.get(n).cloned().unwrap_or_else(RatFunc::zero);
                let y = b.get(n).cloned().unwrap_or_else(RatFunc::zero);
                x == y
            })
        };
        same(&self.plain, &o.plain) && same(&self.refl, &o.refl)
    }
}

impl<S: Scalar> fmt::Display for DiffReflOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (n, c) in &self.plain {
            parts.push(format!("[{c}] T^{n}"));
        }
        for (n, c) in &self.refl {
            parts.push(format!("[{c}] T^{n} s1"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Builds an operator from a parameter set.
pub type OpBuilder<S> = Arc<dyn Fn(&Params<S>) -> Result<DiffReflOp<S>> + Send + Sync>;

/// A parameter-dependent operator with a declared shift, as needed for the
/// graded composition `S o S' = S_{k+h'} S'_k`.
#[derive(Clone)]
pub struct OpFamily<S> {
    pub name: String,
    pub shift: Option<Shift>,
    build: OpBuilder<S>,
}

impl<S: Scalar> OpFamily<S> {
    pub fn new(
        name: impl Into<String>,
        shift: Option<Shift>,
        build: impl Fn(&Params<S>) -> Result<DiffReflOp<S>> + Send + Sync + 'static,
    ) -> Self {
        OpFamily { name: name.into(), shift, build: Arc::new(build) }
    }

    pub fn at(&self, p: &Params<S>) -> Result<DiffReflOp<S>> {
        let op = (self.build)(p)?;
        Ok(match self.shift {
            Some(h) => op.with_shift(h),
            None => op,
        })
    }

    /// Graded composition as a new family.
    pub fn then_after(&self, inner: &OpFamily<S>) -> Result<OpFamily<S>> {
        let (h1, h2) = match (self.shift, inner.shift) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Config(format!("graded composition of {} and {} needs known shifts", self.name, inner.name))),
        };
        let outer = self.clone();
        let inn = inner.clone();
        Ok(OpFamily::new(format!("{} o {}", self.name, inner.name), Some(h1 + h2), move |p| {
            Ok(outer.at(&p.shifted(&h2)?)?.compose(&inn.at(p)?))
        }))
    }

    /// `S_{k+h'} S'_k` evaluated at `p`.
    pub fn compose_graded(&self, inner: &OpFamily<S>, p: &Params<S>) -> Result<DiffReflOp<S>> {
        self.then_after(inner)?.at(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rat};

    type P = LaurentPoly<Rat>;

    fn s() -> Rat {
        rat(1, 3)
    }

    #[test]
    fn t_and_reflection_actions() {
        let t = DiffReflOp::t_pow(s(), 1);
        assert_eq!(t.apply(&P::z(1)).unwrap(), P::monomial(s(), 1));
        let s1t = DiffReflOp::reflection(s()).compose(&t);
        let q = s() * s();
        assert_eq!(s1t.apply(&P::z(2)).unwrap(), P::monomial(q.clone(), -2));
        let s0 = DiffReflOp::affine_reflection(s());
        assert_eq!(s0.apply(&P::z(3)).unwrap(), P::monomial(q.pow_i(3).unwrap(), -3));
    }

    #[test]
    fn inverse_powers_compose_to_identity() {
        let t = DiffReflOp::t_pow(s(), 1);
        assert_eq!(t.compose(&DiffReflOp::t_pow(s(), -1)), DiffReflOp::identity(s()));
        let r = DiffReflOp::reflection(s());
        assert_eq!(r.compose(&r), DiffReflOp::identity(s()));
    }

    #[test]
    fn symmetry_predicate() {
        let t = DiffReflOp::t_pow(s(), 1);
        assert!(!t.is_symmetric());
        assert!(t.plus(&DiffReflOp::t_pow(s(), -1)).is_symmetric());
    }
}
