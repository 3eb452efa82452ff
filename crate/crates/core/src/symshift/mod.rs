//! Symmetric shift operators: the eight fundamental operators, the graded
//! symbol ring, factorization of symbols over the fundamental ones, and the
//! formal adjoint tables.

mod fundamental;
mod symbol;

pub use fundamental::{build_fundamental, contiguity, family, symbol_table, FundamentalOp, Tag};
pub use symbol::Symbol;

use crate::error::{Error, Result};
use crate::families::AWFamily;
use crate::families::Construction;
use crate::laurent::LaurentPoly;
use crate::ops::DiffReflOp;
use crate::scalars::{Params, Rat, Scalar, Shift};
use serde::Serialize;

/// One row of a shift-action check.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftActionRow {
    pub m: i64,
    pub constant: String,
    pub ok: bool,
}

/// Result of [`verify_shift_action`].
#[derive(Clone, Debug, Serialize)]
pub struct ShiftActionReport {
    pub shift: Shift,
    pub rows: Vec<ShiftActionRow>,
    pub first_failure: Option<i64>,
}

impl ShiftActionReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `S P_{m,k} = eta~(S)(q^(m/2)) P_{m - h.v1, k+h}` for `m <= m_max`.
pub fn verify_shift_action<S: Scalar>(op: &DiffReflOp<S>, h: &Shift, p: &Params<S>, m_max: i64) -> Result<ShiftActionReport> {
    let sym = op.eta_symbol(h)?;
    let here = AWFamily::new(p.clone(), Construction::TriangularEigen);
    let there = AWFamily::new(p.shifted(h)?, Construction::TriangularEigen);
    let d = -h.dv(1);
    let mut rows = Vec::new();
    let mut first_failure = None;
    for m in 0..=m_max {
        let c = sym.value_at(&p.spow(m));
        let lhs = op.apply(&here.p(m)?)?;
        let rhs = if m + d < 0 { LaurentPoly::zero() } else { there.p(m + d)?.scale(&c) };
        let ok = lhs == rhs;
        if !ok && first_failure.is_none() {
            first_failure = Some(m);
        }
        rows.push(ShiftActionRow { m, constant: c.to_string(), ok });
    }
    Ok(ShiftActionReport { shift: *h, rows, first_failure })
}

/// Transmutation `S_k L_k = L_{k+h} S_k` as an operator identity.
pub fn transmutes<S: Scalar>(op: &DiffReflOp<S>, h: &Shift, p: &Params<S>) -> Result<bool> {
    let l_here = crate::daha::build_l_explicit(p);
    let l_there = crate::daha::build_l_explicit(&p.shifted(h)?);
    Ok(op.compose(&l_here) == l_there.compose(op))
}

/// Leading symbol of a shift operator, refusing shifts at which the
/// transmutation identity fails.
pub fn eta<S: Scalar>(op: &DiffReflOp<S>, h: &Shift, p: &Params<S>) -> Result<Symbol<S>> {
    if !transmutes(op, h, p)? {
        return Err(Error::NotShiftOperator(h.to_string()));
    }
    op.eta_symbol(h)
}

/// `S_v o S_w = q^(v1.(w-v)/2) S_w o S_v` applied to `z^n + z^-n`, `n <= n_max`.
pub fn commutes_up_to_q_power<S: Scalar>(v: Tag, w: Tag, p: &Params<S>, n_max: i64) -> Result<bool> {
    let vw = family::<S>(v).compose_graded(&family(w), p)?;
    let wv = family::<S>(w).compose_graded(&family(v), p)?;
    let twice = (w.shift() - v.shift()).dot_v(1);
    let factor = p.spow(twice.to_integer());
    for n in 0..=n_max {
        let f = LaurentPoly::sym(n);
        if vw.apply(&f)? != wv.apply(&f)?.scale(&factor) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The fundamental symbol `g_{eps v_i}(p; s^n T)`.
pub fn shifted_symbol<S: Scalar>(p: &Params<S>, tag: Tag, n: i64) -> LaurentPoly<S> {
    symbol_table(p, tag).scale_var(&p.spow(n))
}

/// A symbol written as `eta(S_{eps1 v1})^n1 ... eta(S_{eps4 v4})^n4 y(omega)`
/// with `omega = t0 t1 T^2 + (t0 t1)^-1 T^-2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<S> {
    pub exponents: [i64; 4],
    pub positive: [bool; 4],
    /// Coefficients of `y` as a polynomial in `omega`.
    pub y: Vec<S>,
}

/// `omega` as a Laurent polynomial in `T`.
pub fn omega<S: Scalar>(p: &Params<S>) -> LaurentPoly<S> {
    symbol_table(p, Tag::L)
}

/// Writes `f(T)` as a polynomial in `omega`, if possible.
pub fn in_omega<S: Scalar>(p: &Params<S>, f: &LaurentPoly<S>) -> Result<Vec<S>> {
    let w = omega(p);
    let k = p.tau01();
    let mut rest = f.clone();
    let top = rest.max_exp().unwrap_or(0);
    if top < 0 || top % 2 != 0 {
        return Err(Error::NotInSpan(format!("degree {top} is not even and non-negative")));
    }
    let deg = (top / 2) as usize;
    let mut out = vec![S::zero(); deg + 1];
    for j in (0..=deg).rev() {
        let c = rest.coeff(2 * j as i64);
        let kj = k.pow_i(j as i64).ok_or(Error::DivisionByZero)?;
        let cj = c.divide(&kj)?;
        rest = rest.minus(&w.pow(j as u32).scale(&cj));
        out[j] = cj;
    }
    if !rest.is_zero() {
        return Err(Error::NotInSpan(format!("remainder {rest}")));
    }
    Ok(out)
}

/// Factorization of `x` at parameters `p`, peeling directions in `order`.
pub fn factor_symbol_ordered<S: Scalar>(x: &Symbol<S>, p: &Params<S>, order: [usize; 4]) -> Result<Factorization<S>> {
    if !x.h.admissible() {
        return Err(Error::InadmissibleShift(x.h.to_string()));
    }
    if x.poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut exponents = [0i64; 4];
    let mut positive = [true; 4];
    for i in 1..=4 {
        let c = x.h.dv(i);
        exponents[i - 1] = c.abs();
        positive[i - 1] = c >= 0;
    }
    let mut rest_shift = x.h;
    let mut rest = x.poly.clone();
    for &i in &order {
        let tag = Tag::for_direction(i, positive[i - 1]);
        for _ in 0..exponents[i - 1] {
            let w = tag.shift();
            let remaining = rest_shift - w;
            let at = p.shifted(&remaining)?;
            let g = shifted_symbol(&at, tag, -remaining.dv(1));
            rest = rest.div_exact(&g).map_err(|_| Error::NotInSpan(format!("not divisible by the {tag} symbol")))?;
            rest_shift = remaining;
        }
    }
    let y = in_omega(p, &rest)?;
    Ok(Factorization { exponents, positive, y })
}

/// Factorization peeling `v1` first, then `v2`, `v3`, `v4`.
pub fn factor_symbol<S: Scalar>(x: &Symbol<S>, p: &Params<S>) -> Result<Factorization<S>> {
    factor_symbol_ordered(x, p, [1, 2, 3, 4])
}

/// Rebuilds the symbol described by a factorization.
pub fn assemble<S: Scalar>(f: &Factorization<S>, p: &Params<S>, order: [usize; 4]) -> Result<Symbol<S>> {
    let w = omega(p);
    let mut y = LaurentPoly::zero();
    for (j, c) in f.y.iter().enumerate() {
        y = y.plus(&w.pow(j as u32).scale(c));
    }
    let mut acc = Symbol::new(Shift::zero(), y);
    for &i in order.iter().rev() {
        let tag = Tag::for_direction(i, f.positive[i - 1]);
        for _ in 0..f.exponents[i - 1] {
            let left = Symbol::new(tag.shift(), symbol_table(&p.shifted(&acc.h)?, tag));
            acc = Symbol::r_mul(&left, &acc, &p.s)?;
        }
    }
    Ok(acc)
}

/// Which adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdjointKind {
    Dagger,
    Star,
}

/// Scalar prefactor of an adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Prefactor {
    One,
    MinusOne,
    /// `-q^3 / (abcd)`.
    MinusQCubedOverAbcd,
    /// `-q / (u_k u_l)`.
    MinusQOverPair(usize, usize),
}

impl Prefactor {
    pub fn eval<S: Scalar>(self, p: &Params<S>) -> S {
        match self {
            Prefactor::One => S::one(),
            Prefactor::MinusOne => S::one().negated(),
            Prefactor::MinusQCubedOverAbcd => p.qpow(3).divide(&p.abcd()).expect("generic parameters").negated(),
            Prefactor::MinusQOverPair(k, l) => p.q().divide(&p.u(k).times(&p.u(l))).expect("generic parameters").negated(),
        }
    }
}

/// The formal adjoint of a fundamental operator or `L`.
pub fn adjoint_table(tag: Tag, which: AdjointKind) -> (Tag, Prefactor) {
    let target = tag.complement();
    let pre = match (which, tag) {
        (AdjointKind::Dagger, _) | (AdjointKind::Star, Tag::L) => Prefactor::One,
        (AdjointKind::Star, Tag::Gplus) => Prefactor::MinusQCubedOverAbcd,
        (AdjointKind::Star, Tag::Gminus) => Prefactor::MinusOne,
        (AdjointKind::Star, _) => {
            let (k, l) = target.pair().expect("contiguity tag");
            Prefactor::MinusQOverPair(k, l)
        }
    };
    (target, pre)
}

/// `t^-h eta~(S)(T) t^h` against `q^(h.(v1 - eps v_i)/2) eta~(S)(q^(-eps h.v_i/2) T)`.
pub fn hc_conjugation_holds<S: Scalar>(tag: Tag, h: &Shift, p: &Params<S>) -> Result<bool> {
    let w = tag.shift();
    let i = (1..=4).find(|&i| w.dot_v(i) != 0.into()).expect("fundamental shift");
    let eps = w.dv(i);
    let left = Symbol::new(-*h, LaurentPoly::one());
    let mid = Symbol::new(w, symbol_table(p, tag));
    let lm = Symbol::r_mul(&left, &mid, &p.s)?;
    let lm_at = Symbol::new(lm.h, symbol_table(&p.shifted(h)?, tag));
    let conj = Symbol::r_mul(&lm_at, &Symbol::new(*h, LaurentPoly::one()), &p.s)?;
    let twice = (*h).dot(&(Shift::v(1) - Shift::v(i).scaled(eps)));
    let factor = p.spow(twice.to_integer());
    let rhs = symbol_table(p, tag).scale_var(&p.spow(-eps * h.dv(i))).scale(&factor);
    Ok(conj.h == w && conj.poly == rhs)
}

/// Largest gcd width among the fundamental symbols at arguments
/// `s^n T`, `|n| <= n_abs` (zero means pairwise coprime).
pub fn max_pairwise_gcd_width(p: &Params<Rat>, n_abs: i64) -> i64 {
    let mut polys = Vec::new();
    for tag in Tag::FUNDAMENTAL {
        for n in -n_abs..=n_abs {
            polys.push(shifted_symbol(p, tag, n));
        }
    }
    let mut worst = 0;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            worst = worst.max(polys[i].gcd(&polys[j]).width());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn params() -> Params<Rat> {
        Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9)).unwrap()
    }

    #[test]
    fn table_matches_operators() {
        let p = params();
        for tag in Tag::FUNDAMENTAL.into_iter().chain([Tag::L]) {
            let f = build_fundamental(&p, tag);
            assert!(f.op.is_symmetric(), "{tag}");
            assert_eq!(eta(&f.op, &f.shift, &p).unwrap().poly, symbol_table(&p, tag), "{tag}");
        }
    }

    #[test]
    fn wrong_shift_is_rejected() {
        let p = params();
        let e12 = build_fundamental(&p, Tag::E12);
        assert!(eta(&e12.op, &-Shift::v(3), &p).is_err());
        let gp = build_fundamental(&p, Tag::Gplus);
        assert!(gp.op.eta_symbol(&-Shift::v(1)).is_err());
    }

    #[test]
    fn forward_shift_constants() {
        let p = params();
        let gp = build_fundamental(&p, Tag::Gplus);
        let rep = verify_shift_action(&gp.op, &gp.shift, &p, 3).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.rows[0].constant, "0");
        let expect = p.spow(3) - p.spow(-3);
        assert_eq!(rep.rows[3].constant, expect.to_string());
    }

    #[test]
    fn factor_round_trip() {
        let p = params();
        let w = omega(&p);
        let y = w.times(&w).plus(&LaurentPoly::constant(rat(3, 1)));
        let x = Symbol::new(Shift::v(1), symbol_table(&p, Tag::Gplus).times(&y));
        let f = factor_symbol(&x, &p).unwrap();
        assert_eq!(f.exponents, [1, 0, 0, 0]);
        assert_eq!(f.y, vec![rat(3, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn adjoint_examples() {
        let p = params();
        assert_eq!(adjoint_table(Tag::Gplus, AdjointKind::Dagger), (Tag::Gminus, Prefactor::One));
        let (t, pre) = adjoint_table(Tag::E12, AdjointKind::Star);
        assert_eq!(t, Tag::E34);
        assert_eq!(pre.eval(&p), -p.q() / (p.c() * p.d()));
        assert_eq!(adjoint_table(Tag::L, AdjointKind::Star), (Tag::L, Prefactor::One));
    }

    #[test]
    fn all_fundamental_actions() {
        let p = params();
        for tag in Tag::FUNDAMENTAL.into_iter().chain([Tag::L]) {
            let f = build_fundamental(&p, tag);
            assert!(verify_shift_action(&f.op, &f.shift, &p, 4).unwrap().passed(), "{tag}");
        }
    }

    #[test]
    fn commutation_and_conjugation() {
        let p = params();
        for v in Tag::FUNDAMENTAL {
            for w in Tag::FUNDAMENTAL {
                if w != v.complement() {
                    assert!(commutes_up_to_q_power(v, w, &p, 3).unwrap(), "{v} {w}");
                }
            }
            for j in 1..=4 {
                for h in [Shift::v(j), -Shift::v(j)] {
                    assert!(hc_conjugation_holds(v, &h, &p).unwrap(), "{v} {h}");
                }
            }
        }
    }

    #[test]
    fn coprime_symbols() {
        assert_eq!(max_pairwise_gcd_width(&params(), 2), 0);
    }

    #[test]
    fn composite_factorization_any_order() {
        let p = params();
        let comp = family::<Rat>(Tag::Gminus)
            .then_after(&family(Tag::E13))
            .unwrap()
            .then_after(&family(Tag::E34))
            .unwrap()
            .then_after(&family(Tag::Gminus))
            .unwrap();
        let h = comp.shift.unwrap();
        let op = comp.at(&p).unwrap();
        let x = eta(&op, &h, &p).unwrap();
        let f = factor_symbol(&x, &p).unwrap();
        assert_eq!(f.exponents, [2, 1, 1, 0]);
        assert_eq!(f.positive[..3], [false, true, false]);
        assert_eq!(f.y.len(), 1);
        let shuffled = factor_symbol_ordered(&x, &p, [3, 1, 4, 2]).unwrap();
        let ratio = &shuffled.y[0] / &f.y[0];
        assert!((-12..=12).any(|e| p.spow(e) == ratio), "ratio {ratio}");
        assert_eq!(assemble(&f, &p, [1, 2, 3, 4]).unwrap(), x);
        assert_eq!(assemble(&shuffled, &p, [3, 1, 4, 2]).unwrap(), x);
    }

    #[test]
    fn contiguity_pair_is_polynomial_in_l() {
        let p = params();
        let op = family::<Rat>(Tag::E12).compose_graded(&family(Tag::E34), &p).unwrap();
        let x = eta(&op, &Shift::zero(), &p).unwrap();
        let f = factor_symbol(&x, &p).unwrap();
        assert_eq!(f.exponents, [0; 4]);
        assert_eq!(f.y.len(), 2);
        assert_eq!(f.y[1], p.tau01());
        let constant = -(p.c() * p.d() / p.q()) - p.a() * p.b();
        assert_eq!(f.y[0], constant);
        let l = crate::daha::build_l_explicit(&p);
        let rhs = l.scale(&p.tau01()).plus(&DiffReflOp::scalar(p.s.clone(), constant));
        assert_eq!(op, rhs);
    }
}
