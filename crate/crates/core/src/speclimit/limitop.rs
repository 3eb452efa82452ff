use super::jet::KPoly;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::matshift::{NamedTag, VecPoly2};
use crate::scalars::{rat, Rat, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// `sum r(z) (z d/dz)^e s1^r` with `e, r` in `{0, 1}`; the reflection acts first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiffReflLimitOp {
    terms: BTreeMap<(u8, bool), RatFunc<KPoly>>,
}

/// `z d/dz` on a Laurent polynomial.
pub fn euler<S: Scalar>(f: &LaurentPoly<S>) -> LaurentPoly<S> {
    LaurentPoly::from_terms(f.terms().map(|(n, c)| (*n, c.times(&S::from_int(*n)))))
}

impl DiffReflLimitOp {
    pub fn zero() -> Self {
        Self::default()
    }

    fn single(key: (u8, bool), r: RatFunc<KPoly>) -> Self {
        let mut out = Self::default();
        if !r.is_zero() {
            out.terms.insert(key, r);
        }
        out
    }

    /// Multiplication by `r`.
    pub fn mult(r: RatFunc<KPoly>) -> Self {
        Self::single((0, false), r)
    }

    /// `r z d/dz`.
    pub fn euler(r: RatFunc<KPoly>) -> Self {
        Self::single((1, false), r)
    }

    /// `r s1`.
    pub fn reflection(r: RatFunc<KPoly>) -> Self {
        Self::single((0, true), r)
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, r) in &o.terms {
            let sum = out.terms.get(k).map_or_else(|| r.clone(), |x| x.plus(r));
            if sum.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(*k, sum);
            }
        }
        out
    }

    pub fn negated(&self) -> Self {
        DiffReflLimitOp { terms: self.terms.iter().map(|(k, r)| (*k, r.negated())).collect() }
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u8, bool), &RatFunc<KPoly>)> {
        self.terms.iter()
    }

    /// Exact action; the result must be a Laurent polynomial.
    pub fn apply(&self, f: &LaurentPoly<KPoly>) -> Result<LaurentPoly<KPoly>> {
        let mut acc = RatFunc::zero();
        for ((e, refl), r) in &self.terms {
            let g = if *refl { f.bar() } else { f.clone() };
            let g = if *e == 1 { euler(&g) } else { g };
            acc = acc.plus(&r.times_poly(&g));
        }
        acc.as_poly().cloned().ok_or_else(|| Error::NonExactDivision(acc.to_string()))
    }
}

impl fmt::Display for DiffReflLimitOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((e, refl), r)| {
                let op = match (e, refl) {
                    (0, false) => String::new(),
                    (0, true) => " s1".into(),
                    (_, false) => " z∂z".into(),
                    (_, true) => " z∂z s1".into(),
                };
                format!("({r}){op}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The displayed limit operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitTag {
    GpSym,
    GmSym,
    E12Sym,
    E13Sym,
    E24Sym,
    GpNs,
    GmNs,
    E2pNs,
    E2mNs,
}

impl LimitTag {
    pub const ALL: [LimitTag; 9] = [
        LimitTag::GpSym,
        LimitTag::GmSym,
        LimitTag::E12Sym,
        LimitTag::E13Sym,
        LimitTag::E24Sym,
        LimitTag::GpNs,
        LimitTag::GmNs,
        LimitTag::E2pNs,
        LimitTag::E2mNs,
    ];

    pub fn parse(s: &str) -> Option<LimitTag> {
        Self::ALL.into_iter().find(|t| t.to_string() == s)
    }
}

impl fmt::Display for LimitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitTag::GpSym => "Gp_sym",
            LimitTag::GmSym => "Gm_sym",
            LimitTag::E12Sym => "E12_sym",
            LimitTag::E13Sym => "E13_sym",
            LimitTag::E24Sym => "E24_sym",
            LimitTag::GpNs => "Gp_ns",
            LimitTag::GmNs => "Gm_ns",
            LimitTag::E2pNs => "E2p_ns",
            LimitTag::E2mNs => "E2m_ns",
        })
    }
}

fn lp(terms: &[(i64, i64)]) -> LaurentPoly<KPoly> {
    LaurentPoly::from_terms(terms.iter().map(|(n, c)| (*n, KPoly::from_int(*c))))
}

fn poly(p: LaurentPoly<KPoly>) -> RatFunc<KPoly> {
    RatFunc::poly(p)
}

fn ratio(num: LaurentPoly<KPoly>, den: Vec<LaurentPoly<KPoly>>) -> RatFunc<KPoly> {
    RatFunc::new(num, den).expect("displayed denominators are nonzero")
}

fn konst(c: KPoly) -> RatFunc<KPoly> {
    RatFunc::constant(c)
}

/// `k.v1 = (k1 + k2 + k3 + k4) / 2`.
pub fn k_dot_v1() -> KPoly {
    KPoly::linear([rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)], Rat::from_integer(0.into()))
}

/// `k.v3 = (k1 - k2 + k3 - k4) / 2`.
pub fn k_dot_v3() -> KPoly {
    KPoly::linear([rat(1, 2), rat(-1, 2), rat(1, 2), rat(-1, 2)], Rat::from_integer(0.into()))
}

/// `k_i + k_j - 1/2`.
fn pair_label(i: usize, j: usize) -> KPoly {
    KPoly::k(i).plus(&KPoly::k(j)).plus(&KPoly::from_rat(&rat(-1, 2)))
}

fn z_minus_inv() -> LaurentPoly<KPoly> {
    lp(&[(1, 1), (-1, -1)])
}

/// `(1 - z^-1) / (1 + z^-1)` for `sign = 1`, its reciprocal for `sign = -1`.
fn cayley(sign: i64) -> RatFunc<KPoly> {
    ratio(lp(&[(0, 1), (-1, -sign)]), vec![lp(&[(0, 1), (-1, sign)])])
}

/// `(z - 1/z) z d/dz + (2 k.v1 + shift)(z + 1/z) + 4 k.v3`.
fn backward_core(shift: i64) -> DiffReflLimitOp {
    let coeff = k_dot_v1().scale(&rat(2, 1)).plus(&KPoly::from_int(shift));
    DiffReflLimitOp::euler(poly(z_minus_inv()))
        .plus(&DiffReflLimitOp::mult(poly(lp(&[(1, 1), (-1, 1)]).scale(&coeff))))
        .plus(&DiffReflLimitOp::mult(konst(k_dot_v3().scale(&rat(4, 1)))))
}

/// `-(rho z d/dz + label)` with `rho` the Cayley factor of the given sign.
fn contiguous_core(sign: i64, label: KPoly) -> DiffReflLimitOp {
    DiffReflLimitOp::euler(cayley(sign)).plus(&DiffReflLimitOp::mult(konst(label))).negated()
}

/// The limit operator with its label-symbolic coefficients.
pub fn build_limit_operator(tag: LimitTag) -> DiffReflLimitOp {
    let zm = z_minus_inv();
    match tag {
        LimitTag::GpSym => DiffReflLimitOp::euler(ratio(LaurentPoly::one(), vec![zm])),
        LimitTag::GmSym => backward_core(-1),
        LimitTag::E12Sym => DiffReflLimitOp::mult(konst(KPoly::from_int(2))),
        LimitTag::E13Sym => contiguous_core(1, pair_label(1, 3)),
        LimitTag::E24Sym => contiguous_core(-1, pair_label(2, 4)),
        LimitTag::GpNs => {
            let w = ratio(lp(&[(1, 1)]), vec![zm.clone(), zm.clone()]);
            DiffReflLimitOp::euler(ratio(LaurentPoly::one(), vec![zm]))
                .minus(&DiffReflLimitOp::mult(w.clone()))
                .plus(&DiffReflLimitOp::reflection(w))
        }
        // diag((z - 1/z) z d/dz) is (z - 1/z) z d/dz - z (1 - s1) and the
        // swap matrix is z s1 in the (1, z) basis
        LimitTag::GmNs => backward_core(0)
            .minus(&DiffReflLimitOp::mult(poly(lp(&[(1, 1)]))))
            .minus(&DiffReflLimitOp::reflection(poly(lp(&[(1, 1)])))),
        LimitTag::E2pNs | LimitTag::E2mNs => {
            let (sign, label) = if tag == LimitTag::E2pNs { (1, pair_label(1, 3)) } else { (-1, pair_label(2, 4)) };
            // -/+ rho (1 - s1) / (z - 1/z)
            let w = cayley(sign).times(&ratio(LaurentPoly::one(), vec![zm])).scale(&KPoly::from_int(-sign));
            contiguous_core(sign, label)
                .plus(&DiffReflLimitOp::mult(w.clone()))
                .minus(&DiffReflLimitOp::reflection(w))
        }
    }
}

/// The backward limit with `+ 1/z` in place of `- z`, as it is sometimes
/// displayed; it is not the limit and is kept to be rejected.
pub fn backward_ns_displayed() -> DiffReflLimitOp {
    backward_core(0)
        .plus(&DiffReflLimitOp::mult(poly(lp(&[(-1, 1)]))))
        .minus(&DiffReflLimitOp::reflection(poly(lp(&[(1, 1)]))))
}

/// A 2x2 matrix of limit operators acting on vector polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitMatOp {
    pub entries: [[DiffReflLimitOp; 2]; 2],
}

impl LimitMatOp {
    pub fn apply(&self, v: &VecPoly2<KPoly>) -> Result<VecPoly2<KPoly>> {
        let row = |i: usize| -> Result<_> { Ok(self.entries[i][0].apply(&v[0])?.plus(&self.entries[i][1].apply(&v[1])?)) };
        Ok([row(0)?, row(1)?])
    }
}

impl fmt::Display for LimitMatOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

/// Matrix limits of the framed matrix shift operators behind the named
/// operators `Gp, Gm, E2p, E2m`.
pub fn build_limit_matrix(tag: NamedTag) -> Option<LimitMatOp> {
    let c = |x: i64| DiffReflLimitOp::mult(konst(KPoly::from_int(x)));
    let zero = DiffReflLimitOp::zero;
    let diag = |d: DiffReflLimitOp, extra: [i64; 2]| LimitMatOp {
        entries: [[d.plus(&c(extra[0])), zero()], [zero(), d.plus(&c(extra[1]))]],
    };
    match tag {
        NamedTag::Gp => Some(diag(build_limit_operator(LimitTag::GpSym), [0, 0])),
        NamedTag::Gm => {
            let d = backward_core(0);
            Some(LimitMatOp { entries: [[d.clone(), c(-2)], [c(-2), d]] })
        }
        NamedTag::E2p => Some(diag(build_limit_operator(LimitTag::E13Sym), [0, -1])),
        NamedTag::E2m => Some(diag(build_limit_operator(LimitTag::E24Sym), [0, -1])),
        NamedTag::E1p | NamedTag::E1m => None,
    }
}
