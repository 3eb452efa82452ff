//! Non-symmetric polynomials `E_n` and symmetric polynomials `P_m`, each
//! built two independent ways, with the closed-form next-to-leading
//! coefficients as oracles.

use crate::daha::{Creation, DahaGens};
use crate::error::{Error, Result};
use crate::laurent::{ns_rank, ns_unrank, LaurentPoly, Parametric, RatFunc};
use crate::ops::DiffReflOp;
use crate::scalars::{Params, Scalar};
use std::collections::BTreeMap;
use std::sync::RwLock;

/// How `E_n` is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Construction {
    CreationRecursion,
    TriangularEigen,
}

/// Memoized polynomial families at one parameter set.
pub struct AWFamily<S> {
    pub params: Params<S>,
    pub construction: Construction,
    daha: DahaGens<S>,
    cache_e: RwLock<BTreeMap<i64, LaurentPoly<S>>>,
    cache_p: RwLock<BTreeMap<i64, LaurentPoly<S>>>,
}

/// `Y`-eigenvalue of `E_n`.
pub fn y_eigenvalue<S: Scalar>(p: &Params<S>, n: i64) -> S {
    let k = p.tau01();
    if n <= 0 {
        p.qpow(-n).times(&k)
    } else {
        p.qpow(-n).times(&k.inverse().expect("generators are invertible"))
    }
}

/// `L`-eigenvalue of `P_m`.
pub fn l_eigenvalue<S: Scalar>(p: &Params<S>, m: i64) -> S {
    let x = p.qpow(m).times(&p.tau01());
    x.plus(&x.inverse().expect("generators are invertible"))
}

/// Monic eigenvector of an operator that is upper triangular in the basis
/// `basis(0), basis(1), ...`, where `column(j)` gives the image of
/// `basis(j)` as coordinates.
fn triangular_solve<S: Scalar>(
    top: usize,
    lambda: &S,
    column: impl Fn(usize) -> Result<BTreeMap<usize, S>>,
) -> Result<Vec<S>> {
    let cols: Vec<BTreeMap<usize, S>> = (0..=top).map(&column).collect::<Result<_>>()?;
    for (j, col) in cols.iter().enumerate() {
        if let Some((&i, _)) = col.iter().rev().find(|(_, v)| !v.is_zero()) {
            if i > j {
                return Err(Error::Mismatch(format!("operator is not triangular at column {j}")));
            }
        }
    }
    let entry = |i: usize, j: usize| cols[j].get(&i).cloned().unwrap_or_else(S::zero);
    let mut x = vec![S::zero(); top + 1];
    x[top] = S::one();
    for i in (0..top).rev() {
        let mut acc = S::zero();
        for (j, xj) in x.iter().enumerate().skip(i + 1) {
            acc = acc.plus(&entry(i, j).times(xj));
        }
        let diag = entry(i, i).minus(lambda);
        if diag.is_zero() {
            return Err(Error::EigenvalueCollision(format!("diagonal entry {i} equals the target eigenvalue")));
        }
        x[i] = acc.negated().divide(&diag)?;
    }
    Ok(x)
}

/// `E_n` by solving `(Y - lambda_n) E = 0` on monomials of rank `<= rank(z^n)`.
pub fn e_triangular<S: Scalar>(d: &DahaGens<S>, n: i64) -> Result<LaurentPoly<S>> {
    let top = ns_rank(n) as usize;
    let lambda = y_eigenvalue(&d.params, n);
    let x = triangular_solve(top, &lambda, |j| {
        let img = d.y.apply(&LaurentPoly::z(ns_unrank(j as i64)))?;
        Ok(img.terms().map(|(e, c)| (ns_rank(*e) as usize, c.clone())).collect())
    })?;
    Ok(LaurentPoly::from_terms(x.into_iter().enumerate().map(|(r, c)| (ns_unrank(r as i64), c))))
}

/// Monic eigenvector of a symmetric operator on `span{1, z+1/z, ..., z^m+z^-m}`.
pub fn symmetric_eigen<S: Scalar>(op: &DiffReflOp<S>, m: i64, lambda: &S) -> Result<LaurentPoly<S>> {
    let x = triangular_solve(m as usize, lambda, |j| {
        let img = op.apply(&LaurentPoly::sym(j as i64))?;
        if !img.is_symmetric() {
            return Err(Error::Asymmetric);
        }
        Ok(img.terms().filter(|(e, _)| **e >= 0).map(|(e, c)| (*e as usize, c.clone())).collect())
    })?;
    let mut out = LaurentPoly::zero();
    for (j, c) in x.iter().enumerate() {
        out = out.plus(&LaurentPoly::sym(j as i64).scale(c));
    }
    Ok(out)
}

/// The Askey-Wilson operator in terms of `(a,b,c,d)` and `s = q^(1/2)` only:
/// `A(z)(T^2-1) + A(1/z)(T^-2-1)`, `A = prod(1-u z) / ((1-z^2)(1-q z^2))`.
/// Its eigenvalue on the degree-`m` polynomial is
/// `(abcd/q)(q^m-1) + q^-m - 1`.
pub fn askey_wilson_operator<S: Scalar>(u: &[S; 4], s: &S) -> Result<DiffReflOp<S>> {
    let q = s.times(s);
    let one = || S::one();
    let mut num = LaurentPoly::one();
    for x in u {
        num = num.times(&LaurentPoly::from_terms([(0, one()), (1, x.negated())]));
    }
    let up = RatFunc::new(
        num,
        vec![
            LaurentPoly::from_terms([(0, one()), (2, one().negated())]),
            LaurentPoly::from_terms([(0, one()), (2, q.negated())]),
        ],
    )?;
    let id = DiffReflOp::identity(s.clone());
    Ok(DiffReflOp::mult(s.clone(), up.clone())
        .compose(&DiffReflOp::t_pow(s.clone(), 2).minus(&id))
        .plus(&DiffReflOp::mult(s.clone(), up.bar()).compose(&DiffReflOp::t_pow(s.clone(), -2).minus(&id))))
}

/// `P_m` from `(a,b,c,d)` and `s` alone, symmetric in the four parameters.
pub fn build_p_from_abcd<S: Scalar>(u: &[S; 4], s: &S, m: i64) -> Result<LaurentPoly<S>> {
    let op = askey_wilson_operator(u, s)?;
    let q = s.times(s);
    let abcd = u.iter().fold(S::one(), |acc, x| acc.times(x));
    let qm = q.pow_i(m).ok_or(Error::DivisionByZero)?;
    let lambda = abcd
        .divide(&q)?
        .times(&qm.minus(&S::one()))
        .plus(&qm.inverse().ok_or(Error::DivisionByZero)?)
        .minus(&S::one());
    symmetric_eigen(&op, m, &lambda)
}

/// Closed forms `(c_{n+1}, c~_n)`: the coefficient of `z^-n` in `E_{n+1}`
/// and of `z^n` in `E_{-n}`.
pub fn nlo_coefficients<S: Scalar>(p: &Params<S>, n: i64) -> Result<(S, S)> {
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    let abcd = p.abcd();
    let qn = p.qpow(n);
    let q2n = p.qpow(2 * n);
    let degenerate = |what: &str| Error::Degenerate(format!("{what} vanishes at n = {n}"));
    let num = c
        .times(&qn)
        .plus(&d.times(&qn))
        .minus(&a.times(&c).times(&d).times(&q2n))
        .minus(&b.times(&c).times(&d).times(&q2n));
    let c_next = num
        .divide(&S::one().minus(&abcd.times(&q2n)))
        .map_err(|_| degenerate("1 - abcd q^2n"))?
        .negated();
    let ab = a.times(&b);
    let num = S::one().plus(&ab).minus(&abcd.times(&p.qpow(n - 1))).minus(&ab.times(&qn));
    let den = S::one().minus(&abcd.times(&p.spow(4 * n - 2)));
    let c_hat = num.divide(&den).map_err(|_| degenerate("1 - abcd q^(2n-1)"))?;
    Ok((c_next, c_hat))
}

impl<S: Scalar> AWFamily<S> {
    pub fn new(params: Params<S>, construction: Construction) -> Self {
        let daha = DahaGens::new(&params);
        AWFamily {
            params,
            construction,
            daha,
            cache_e: RwLock::new(BTreeMap::new()),
            cache_p: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn daha(&self) -> &DahaGens<S> {
        &self.daha
    }

    fn cached(cache: &RwLock<BTreeMap<i64, LaurentPoly<S>>>, n: i64) -> Option<LaurentPoly<S>> {
        cache.read().expect("cache lock").get(&n).cloned()
    }

    fn store(cache: &RwLock<BTreeMap<i64, LaurentPoly<S>>>, n: i64, f: &LaurentPoly<S>) {
        cache.write().expect("cache lock").entry(n).or_insert_with(|| f.clone());
    }

    /// `E_n`, monic with leading monomial `z^n`.
    pub fn e(&self, n: i64) -> Result<LaurentPoly<S>> {
        if let Some(f) = Self::cached(&self.cache_e, n) {
            return Ok(f);
        }
        let f = match self.construction {
            Construction::TriangularEigen => e_triangular(&self.daha, n)?,
            Construction::CreationRecursion => self.e_creation(n)?,
        };
        Self::store(&self.cache_e, n, &f);
        Ok(f)
    }

    fn e_creation(&self, n: i64) -> Result<LaurentPoly<S>> {
        let p = &self.params;
        let t1 = &p.tau1;
        let t1inv = t1.inverse().ok_or(Error::DivisionByZero)?;
        let mut cur = LaurentPoly::one();
        Self::store(&self.cache_e, 0, &cur);
        for m in 0..n.abs() {
            // E_{-m} -> E_{m+1} -> E_{-m-1}
            let up = self
                .daha
                .creation_apply(Creation::Alpha0, &cur, &y_eigenvalue(p, -m))?
                .scale(&t1inv);
            Self::store(&self.cache_e, m + 1, &up);
            if n == m + 1 {
                return Ok(up);
            }
            cur = self.daha.creation_apply(Creation::Alpha1, &up, &y_eigenvalue(p, m + 1))?.scale(t1);
            Self::store(&self.cache_e, -m - 1, &cur);
        }
        Ok(cur)
    }

    /// `P_m`, with leading class `z^m + z^-m`.
    pub fn p(&self, m: i64) -> Result<LaurentPoly<S>> {
        if m < 0 {
            return Err(Error::Config(format!("P_m needs m >= 0, got {m}")));
        }
        if let Some(f) = Self::cached(&self.cache_p, m) {
            return Ok(f);
        }
        let f = symmetric_eigen(&self.daha.l, m, &l_eigenvalue(&self.params, m))?;
        Self::store(&self.cache_p, m, &f);
        Ok(f)
    }

    /// `E_n` as a recipe that can be rebuilt at other parameters.
    pub fn e_parametric(&self, n: i64) -> Parametric<S> {
        let mode = self.construction;
        Parametric::new(format!("E_{n}"), self.params.clone(), move |p| AWFamily::new(p.clone(), mode).e(n))
    }

    /// `P_m` as a recipe that can be rebuilt at other parameters.
    pub fn p_parametric(&self, m: i64) -> Parametric<S> {
        let mode = self.construction;
        Parametric::new(format!("P_{m}"), self.params.clone(), move |p| AWFamily::new(p.clone(), mode).p(m))
    }
}

/// Free-standing builders.
pub fn build_e<S: Scalar>(p: &Params<S>, n: i64, construction: Construction) -> Result<LaurentPoly<S>> {
    AWFamily::new(p.clone(), construction).e(n)
}

pub fn build_p<S: Scalar>(p: &Params<S>, m: i64) -> Result<LaurentPoly<S>> {
    AWFamily::new(p.clone(), Construction::TriangularEigen).p(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{leading_term, MonomialOrder};
    use crate::scalars::{rat, Rat};

    fn params() -> Params<Rat> {
        Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9)).unwrap()
    }

    #[test]
    fn first_polynomials() {
        let p = params();
        let f = AWFamily::new(p.clone(), Construction::TriangularEigen);
        assert_eq!(f.e(0).unwrap(), LaurentPoly::one());
        assert_eq!(f.p(0).unwrap(), LaurentPoly::one());
        let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
        let c1 = -(&c + &d - &a * &c * &d - &b * &c * &d) / (Rat::one() - p.abcd());
        assert_eq!(f.e(1).unwrap(), LaurentPoly::from_terms([(1, Rat::one()), (0, c1)]));
        let ch = (Rat::one() + &a * &b - p.abcd() - &a * &b * p.q()) / (Rat::one() - p.abcd() * p.q());
        assert_eq!(f.e(-1).unwrap().coeff(1), ch);
    }

    #[test]
    fn routes_agree_and_eigen() {
        let p = params();
        let tri = AWFamily::new(p.clone(), Construction::TriangularEigen);
        let cre = AWFamily::new(p.clone(), Construction::CreationRecursion);
        for n in -4..=4 {
            let e = tri.e(n).unwrap();
            assert_eq!(e, cre.e(n).unwrap(), "n = {n}");
            assert_eq!(leading_term(&e, MonomialOrder::NonSymmetric).unwrap(), (n, Rat::one()));
            assert_eq!(tri.daha().y.apply(&e).unwrap(), e.scale(&y_eigenvalue(&p, n)));
        }
    }

    #[test]
    fn nlo_oracle() {
        let p = params();
        let f = AWFamily::new(p.clone(), Construction::CreationRecursion);
        assert!(nlo_coefficients(&p, 0).unwrap().1.is_one());
        for n in 0..=3 {
            let (c, ch) = nlo_coefficients(&p, n).unwrap();
            assert_eq!(f.e(n + 1).unwrap().coeff(-n), c);
            if n > 0 {
                assert_eq!(f.e(-n).unwrap().coeff(n), ch);
            }
        }
    }

    #[test]
    fn symmetric_family() {
        let p = params();
        let f = AWFamily::new(p.clone(), Construction::TriangularEigen);
        let u = [p.a(), p.b(), p.c(), p.d()];
        for m in 0..=3 {
            let pm = f.p(m).unwrap();
            assert!(pm.is_symmetric());
            assert_eq!(f.daha().l.apply(&pm).unwrap(), pm.scale(&l_eigenvalue(&p, m)));
            let perm = [u[2].clone(), u[0].clone(), u[3].clone(), u[1].clone()];
            assert_eq!(build_p_from_abcd(&perm, &p.s, m).unwrap(), pm);
        }
    }
}
