//! Exact `q -> 1` specialisation.
//!
//! Parameters become first-order jets in `u = q - 1` with value `±1` and a
//! derivative linear in the limit labels `k1..k4`. The `q`-operators are
//! built over jets by the ordinary constructors; dividing by `q - 1` and
//! letting `q -> 1` is then reading off the derivative component.

mod jet;
mod limitop;

pub use jet::{extract_limit, jet_params, lift_poly, Jet, KPoly, Order};
pub use limitop::{
    backward_ns_displayed, build_limit_matrix, build_limit_operator, euler, k_dot_v1, k_dot_v3, DiffReflLimitOp, LimitMatOp, LimitTag,
};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matshift::{build_named_nonsym, NamedTag, VecPoly2};
use crate::ops::DiffReflOp;
use crate::report::{CheckReport, SuiteReport};
use crate::scalars::{rat, Rat, Scalar};
use crate::symshift::{build_fundamental, Tag};
use std::fmt;

/// Applies a jet-valued operator; zero divisors surface as a degenerate limit.
pub fn jet_apply(op: &DiffReflOp<Jet>, f: &LaurentPoly<Jet>) -> Result<LaurentPoly<Jet>> {
    op.apply(f).map_err(|e| match e {
        Error::DivisionByZero | Error::NonExactDivision(_) => Error::DegenerateLimit(e.to_string()),
        other => other,
    })
}

/// A `q`-operator whose limit is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QSource {
    Symmetric(Tag),
    Named(NamedTag),
}

impl QSource {
    /// The operator over jets.
    pub fn build(self) -> Result<DiffReflOp<Jet>> {
        let p = jet_params();
        match self {
            QSource::Symmetric(t) => Ok(build_fundamental(&p, t).op),
            QSource::Named(t) => Ok(build_named_nonsym(&p, t).map_err(|e| Error::DegenerateLimit(e.to_string()))?.op),
        }
    }

    /// Test inputs: symmetric monomials for symmetric operators.
    pub fn inputs(self, degree: i64) -> Vec<(String, LaurentPoly<Rat>)> {
        match self {
            QSource::Symmetric(_) => (0..=degree).map(|n| (format!("z^{n}+z^-{n}"), LaurentPoly::sym(n))).collect(),
            QSource::Named(_) => (-degree..=degree).map(|n| (format!("z^{n}"), LaurentPoly::z(n))).collect(),
        }
    }
}

impl fmt::Display for QSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSource::Symmetric(t) => write!(f, "{t}"),
            QSource::Named(t) => write!(f, "{t}_ns"),
        }
    }
}

/// `1` or `q - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisor {
    One,
    QMinusOne,
}

impl Divisor {
    fn order(self) -> Order {
        match self {
            Divisor::One => Order::Value,
            Divisor::QMinusOne => Order::Derivative,
        }
    }
}

/// A claimed limit `lim source / divisor = limit`.
#[derive(Clone, Copy, Debug)]
pub struct LimitPair {
    pub source: QSource,
    pub limit: LimitTag,
    pub divisor: Divisor,
}

/// Every displayed limit.
pub fn standard_pairs() -> Vec<LimitPair> {
    use Divisor::*;
    let pair = |source, limit, divisor| LimitPair { source, limit, divisor };
    vec![
        pair(QSource::Symmetric(Tag::Gplus), LimitTag::GpSym, QMinusOne),
        pair(QSource::Symmetric(Tag::Gminus), LimitTag::GmSym, QMinusOne),
        pair(QSource::Symmetric(Tag::E12), LimitTag::E12Sym, One),
        pair(QSource::Symmetric(Tag::E13), LimitTag::E13Sym, QMinusOne),
        pair(QSource::Symmetric(Tag::E24), LimitTag::E24Sym, QMinusOne),
        pair(QSource::Named(NamedTag::Gp), LimitTag::GpNs, QMinusOne),
        pair(QSource::Named(NamedTag::Gm), LimitTag::GmNs, QMinusOne),
        pair(QSource::Named(NamedTag::E2p), LimitTag::E2pNs, QMinusOne),
        pair(QSource::Named(NamedTag::E2m), LimitTag::E2mNs, QMinusOne),
    ]
}

fn label_degree_guard(g: &LaurentPoly<KPoly>) -> Result<()> {
    match g.terms().find(|(_, c)| c.degree().unwrap_or(0) > 1) {
        Some((n, c)) => Err(Error::DegenerateLimit(format!("label-nonlinear coefficient {c} at z^{n}"))),
        None => Ok(()),
    }
}

fn lift_k(f: &LaurentPoly<Rat>) -> LaurentPoly<KPoly> {
    f.map_coeffs(KPoly::from_rat)
}

/// Checks one pair on every input; returns the first mismatch.
pub fn check_pair(pair: &LimitPair, degree: i64) -> Result<Option<String>> {
    let op = pair.source.build()?;
    let limit = build_limit_operator(pair.limit);
    for (name, f) in pair.source.inputs(degree) {
        let got = extract_limit(&jet_apply(&op, &lift_poly(&f))?, pair.divisor.order())?;
        label_degree_guard(&got)?;
        let want = limit.apply(&lift_k(&f))?;
        if got != want {
            return Ok(Some(format!("{name}: q-limit {got}, claimed {want}")));
        }
    }
    Ok(None)
}

/// Checks a framed matrix shift operator against its matrix limit on
/// coordinate vectors with symmetric entries.
pub fn check_matrix_limit(tag: NamedTag, degree: i64) -> Result<Option<String>> {
    let limit = build_limit_matrix(tag).ok_or_else(|| Error::Config(format!("no matrix limit for {tag}")))?;
    let named = build_named_nonsym(&jet_params(), tag).map_err(|e| Error::DegenerateLimit(e.to_string()))?;
    for slot in 0..2 {
        for n in 0..=degree {
            let mut v: VecPoly2<Rat> = [LaurentPoly::zero(), LaurentPoly::zero()];
            v[slot] = LaurentPoly::sym(n);
            let jets = [lift_poly(&v[0]), lift_poly(&v[1])];
            let out = named.framed_apply(&jets).map_err(|e| Error::DegenerateLimit(e.to_string()))?;
            let got = [extract_limit(&out[0], Order::Derivative)?, extract_limit(&out[1], Order::Derivative)?];
            let want = limit.apply(&[lift_k(&v[0]), lift_k(&v[1])])?;
            if got != want {
                return Ok(Some(format!("slot {slot}, z^{n}+z^-{n}: q-limit ({}, {}), claimed ({}, {})", got[0], got[1], want[0], want[1])));
            }
        }
    }
    Ok(None)
}

/// `x = (z + 1/z) / 2` as a Laurent polynomial.
fn x_poly() -> LaurentPoly<KPoly> {
    LaurentPoly::from_terms([(1, KPoly::from_rat(&rat(1, 2))), (-1, KPoly::from_rat(&rat(1, 2)))])
}

/// The symmetric limits written in `x`: for `G(x) = x^m` returns
/// `alpha(x) G'(x) + beta(x) G(x)` as a Laurent polynomial in `z`.
pub fn x_form(tag: LimitTag, m: u32) -> Option<LaurentPoly<KPoly>> {
    let x = x_poly();
    let one = LaurentPoly::<KPoly>::one();
    let c = |r: Rat| LaurentPoly::constant(KPoly::from_rat(&r));
    let (alpha, beta) = match tag {
        LimitTag::GpSym => (c(rat(1, 2)), LaurentPoly::zero()),
        LimitTag::GmSym => {
            let two_v1_minus_one = k_dot_v1().scale(&rat(2, 1)).plus(&KPoly::from_int(-1));
            (
                x.times(&x).minus(&one).scale(&KPoly::from_int(2)),
                x.scale(&two_v1_minus_one.scale(&rat(2, 1))).plus(&LaurentPoly::constant(k_dot_v3().scale(&rat(4, 1)))),
            )
        }
        LimitTag::E13Sym => (
            x.minus(&one).negated(),
            LaurentPoly::constant(KPoly::k(1).plus(&KPoly::k(3)).plus(&KPoly::from_rat(&rat(-1, 2))).negated()),
        ),
        LimitTag::E24Sym => (
            x.plus(&one).negated(),
            LaurentPoly::constant(KPoly::k(2).plus(&KPoly::k(4)).plus(&KPoly::from_rat(&rat(-1, 2))).negated()),
        ),
        _ => return None,
    };
    let deriv = if m == 0 { LaurentPoly::zero() } else { x.pow(m - 1).scale(&KPoly::from_int(m as i64)) };
    Some(alpha.times(&deriv).plus(&beta.times(&x.pow(m))))
}

/// Every displayed limit on inputs up to `degree`, the matrix forms up to
/// `min(degree, 4)` and the `x`-variable forms.
pub fn verify_specialisation(pairs: &[LimitPair], degree: i64) -> Result<SuiteReport> {
    let params = "jets (a,b,c,d) = (q^k1, -q^k2, q^(k3+1/2), -q^(k4+1/2))";
    let mut checks = Vec::new();
    for pair in pairs {
        let divisor = match pair.divisor {
            Divisor::One => "1",
            Divisor::QMinusOne => "q-1",
        };
        let name = format!("limit/{}/{}", pair.source, pair.limit);
        let r = match check_pair(pair, degree)? {
            None => CheckReport::exact(name, params, true).with_detail(format!("divisor {divisor}")),
            Some(why) => CheckReport::exact(name, params, false).with_detail(why),
        };
        checks.push(r);
    }
    for tag in [NamedTag::Gp, NamedTag::Gm, NamedTag::E2p, NamedTag::E2m] {
        let name = format!("limit_matrix/{tag}");
        let r = match check_matrix_limit(tag, degree.min(4))? {
            None => CheckReport::exact(name, params, true),
            Some(why) => CheckReport::exact(name, params, false).with_detail(why),
        };
        checks.push(r);
    }
    for tag in [LimitTag::GpSym, LimitTag::GmSym, LimitTag::E13Sym, LimitTag::E24Sym] {
        let op = build_limit_operator(tag);
        let x = x_poly();
        let mut failure = None;
        for m in 0..=degree as u32 {
            let lhs = op.apply(&x.pow(m))?;
            if Some(&lhs) != x_form(tag, m).as_ref() {
                failure = Some(format!("x^{m}"));
                break;
            }
        }
        let name = format!("x_form/{tag}");
        checks.push(match failure {
            None => CheckReport::exact(name, params, true),
            Some(why) => CheckReport::exact(name, params, false).with_detail(why),
        });
    }
    Ok(SuiteReport::new("limits", checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_by_half_power() {
        let p = jet_params();
        let t = DiffReflOp::t_pow(p.s.clone(), 1);
        let out = jet_apply(&t, &LaurentPoly::z(1)).unwrap();
        assert_eq!(out.coeff(1), Jet::new(rat(1, 1), KPoly::from_rat(&rat(1, 2))));
    }

    #[test]
    fn forward_shift_jet() {
        let op = QSource::Symmetric(Tag::Gplus).build().unwrap();
        let out = jet_apply(&op, &lift_poly(&LaurentPoly::sym(1))).unwrap();
        assert_eq!(out, LaurentPoly::constant(Jet::infinitesimal(KPoly::one())));
        assert_eq!(extract_limit(&out, Order::Derivative).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn every_limit_holds_to_degree_six() {
        let rep = verify_specialisation(&standard_pairs(), 6).unwrap();
        assert!(rep.pass, "{:?}", rep.worst_failure());
        assert_eq!(rep.checks.len(), 17);
    }

    #[test]
    fn displayed_backward_form_is_rejected() {
        let op = QSource::Named(NamedTag::Gm).build().unwrap();
        let f = LaurentPoly::z(2);
        let got = extract_limit(&jet_apply(&op, &lift_poly(&f)).unwrap(), Order::Derivative).unwrap();
        let f = lift_k(&f);
        assert_eq!(got, build_limit_operator(LimitTag::GmNs).apply(&f).unwrap());
        assert_ne!(got, backward_ns_displayed().apply(&f).unwrap());
    }

    #[test]
    fn value_limit_of_first_contiguous_operator() {
        let op = QSource::Symmetric(Tag::E12).build().unwrap();
        let f = LaurentPoly::sym(3);
        let got = extract_limit(&jet_apply(&op, &lift_poly(&f)).unwrap(), Order::Value).unwrap();
        assert_eq!(got, lift_k(&f).scale(&KPoly::from_int(2)));
    }

    #[test]
    fn first_order_limit_of_nonvanishing_operator_is_an_error() {
        let op = QSource::Symmetric(Tag::E12).build().unwrap();
        let out = jet_apply(&op, &lift_poly(&LaurentPoly::sym(1))).unwrap();
        assert!(matches!(extract_limit(&out, Order::Derivative), Err(Error::DegenerateLimit(_))));
    }
}
