use super::BigComplex;
use crate::error::{Error, Result};
use crate::scalars::{Params, Rat, Scalar};
use serde::Serialize;

/// Which scalar weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WeightKind {
    /// The non-symmetric weight.
    Delta,
    /// The symmetric weight; two more factors than `Delta`.
    Nabla,
}

/// The derived parameters `(a, b, c, d, q, q^(1/2))` at working precision.
#[derive(Clone, Debug)]
pub struct NumericParams {
    pub a: BigComplex,
    pub b: BigComplex,
    pub c: BigComplex,
    pub d: BigComplex,
    pub q: BigComplex,
    pub s: BigComplex,
}

impl NumericParams {
    pub fn from_params(p: &Params<Rat>, prec: usize) -> Self {
        let f = |x: Rat| BigComplex::from_rat_prec(&x, prec);
        NumericParams { a: f(p.a()), b: f(p.b()), c: f(p.c()), d: f(p.d()), q: f(p.q()), s: f(p.s.clone()) }
    }

    pub fn u(&self) -> [&BigComplex; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Largest of `|a|, |b|, |c|, |d|, |q|`.
    pub fn max_modulus(&self) -> f64 {
        [&self.a, &self.b, &self.c, &self.d, &self.q].iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
    }
}

/// Evaluator for the truncated factor enumeration of a weight.
#[derive(Clone, Debug)]
pub struct WeightEvaluator {
    pub kind: WeightKind,
    pub params: Params<Rat>,
    /// Largest half-step index `r` kept in the `±ε` families.
    pub truncation: usize,
    /// `log10` of the bound on the neglected tail.
    pub tail_log10: f64,
    prec: usize,
    num: NumericParams,
    c_over_s: BigComplex,
    d_over_s: BigComplex,
    b_sq: BigComplex,
    d_sq_over_q: BigComplex,
}

fn lg(x: f64) -> f64 {
    x.log10()
}

impl WeightEvaluator {
    /// Chooses the truncation so that the tail stays below `10^-(digits+10)`.
    pub fn new(p: &Params<Rat>, kind: WeightKind, digits: usize, prec: usize) -> Result<Self> {
        let num = NumericParams::from_params(p, prec);
        if num.max_modulus() >= 1.0 {
            return Err(Error::Numeric(format!("weight needs |a|,|b|,|c|,|d|,|q| < 1 at {p}")));
        }
        let s_abs = num.s.abs_f64();
        let c_over_s = num.c.divide(&num.s)?;
        let d_over_s = num.d.divide(&num.s)?;
        let b_sq = num.b.times(&num.b);
        let d_sq_over_q = num.d.times(&num.d).divide(&num.q)?;
        let m1 = [num.a.abs_f64(), num.b.abs_f64(), c_over_s.abs_f64(), d_over_s.abs_f64()].into_iter().fold(1.0, f64::max);
        let m2 = [b_sq.abs_f64(), d_sq_over_q.abs_f64()].into_iter().fold(1.0, f64::max);
        let target = -(digits as f64 + 10.0);
        let tail = |r: usize| -> f64 {
            let head = m1 * s_abs.powi(r as i32 + 1);
            if head >= 0.5 {
                return f64::INFINITY;
            }
            lg(4.0 * (m1 + m2)) + (r as f64 + 1.0) * lg(s_abs) - lg(1.0 - s_abs) - lg(1.0 - head)
        };
        let mut r = 1;
        while tail(r) > target {
            r += 1;
        }
        Ok(WeightEvaluator {
            kind,
            params: p.clone(),
            truncation: r,
            tail_log10: tail(r),
            prec,
            num,
            c_over_s,
            d_over_s,
            b_sq,
            d_sq_over_q,
        })
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn numeric(&self) -> &NumericParams {
        &self.num
    }

    /// Truncated product at a point of the unit circle.
    pub fn eval(&self, z: &BigComplex) -> Result<BigComplex> {
        let one = BigComplex::from_rat_prec(&Rat::from_integer(1.into()), self.prec);
        if z.times(&z.conj()).minus(&one).log10_abs() > -30.0 {
            return Err(Error::Numeric("weight evaluated off the unit circle".into()));
        }
        let zi = z.inverse().ok_or(Error::DivisionByZero)?;
        let z2 = z.times(z);
        let zi2 = zi.times(&zi);
        let r_max = self.truncation;
        let r2_max = r_max.div_ceil(2);
        let extra = self.kind == WeightKind::Nabla;
        let mut num = one.clone();
        let mut den = one.clone();
        // x = ±ε + (r/2)c, e^x = q^(r/2) z^(±1)
        for (base, start) in [(z.clone(), 0usize), (zi.clone(), if extra { 0 } else { 1 })] {
            let mut e = base;
            for _ in 0..start {
                e = e.times(&self.num.s);
            }
            for r in start..=r_max {
                let (up, down) = if r % 2 == 0 { (&self.num.b, &self.num.a) } else { (&self.d_over_s, &self.c_over_s) };
                num = num.times(&one.plus(&up.times(&e)));
                den = den.times(&one.minus(&down.times(&e)));
                e = e.times(&self.num.s);
            }
        }
        // x = ±2ε + r c, e^x = q^r z^(±2)
        for (base, start) in [(z2, 0usize), (zi2, if extra { 0 } else { 1 })] {
            let mut e = base;
            for _ in 0..start {
                e = e.times(&self.num.q);
            }
            for r in start..=r2_max {
                let down = if r % 2 == 0 { &self.b_sq } else { &self.d_sq_over_q };
                num = num.times(&one.minus(&e));
                den = den.times(&one.minus(&down.times(&e)));
                e = e.times(&self.num.q);
            }
        }
        num.divide(&den)
    }
}

/// Evaluates a weight at a circle point.
pub fn eval_weight(w: &WeightEvaluator, z: &BigComplex) -> Result<BigComplex> {
    w.eval(z)
}

/// `(x; q)_n` for `n >= 0`.
pub fn pochhammer(x: &BigComplex, q: &BigComplex, n: usize) -> BigComplex {
    let one = unit_like(x);
    let mut acc = one.clone();
    let mut t = x.clone();
    for _ in 0..n {
        acc = acc.times(&one.minus(&t));
        t = t.times(q);
    }
    acc
}

/// `(x; q)_inf`, truncated once the running factor is within
/// `10^-(digits+10)` of one. For `|q| > 1` the regularised value
/// `1 / (x/q; 1/q)_inf` is returned, which satisfies the same functional
/// equation `(x; q)_inf = (1 - x) (xq; q)_inf`.
pub fn pochhammer_inf(x: &BigComplex, q: &BigComplex, digits: usize) -> Result<BigComplex> {
    let qa = q.abs_f64();
    if (qa - 1.0).abs() < 1e-12 {
        return Err(Error::Numeric("infinite q-Pochhammer with |q| = 1".into()));
    }
    if qa > 1.0 {
        let qi = q.inverse().ok_or(Error::DivisionByZero)?;
        let inner = pochhammer_inf(&x.times(&qi), &qi, digits)?;
        return inner.inverse().ok_or_else(|| Error::Numeric("regularised Pochhammer has a zero".into()));
    }
    let one = unit_like(x);
    let target = -(digits as f64 + 10.0);
    let mut acc = one.clone();
    let mut t = x.clone();
    let mut guard = 0usize;
    loop {
        let small = t.log10_abs() < target;
        acc = acc.times(&one.minus(&t));
        if small {
            break;
        }
        t = t.times(q);
        guard += 1;
        if guard > 1_000_000 {
            return Err(Error::Numeric("Pochhammer product did not converge".into()));
        }
    }
    Ok(acc)
}

/// Product of `(x_i; q)_inf`.
pub fn pochhammer_inf_all(xs: &[BigComplex], q: &BigComplex, digits: usize) -> Result<BigComplex> {
    let mut acc = unit_like(&xs[0]);
    for x in xs {
        acc = acc.times(&pochhammer_inf(x, q, digits)?);
    }
    Ok(acc)
}

pub(crate) fn unit_like(x: &BigComplex) -> BigComplex {
    BigComplex::from_rat_prec(&Rat::from_integer(1.into()), x.precision())
}

/// Closed product form of `nabla(z)` for arbitrary nonzero parameters;
/// Pochhammers with `|q| > 1` are regularised as in [`pochhammer_inf`].
pub fn nabla_closed(num: &NumericParams, z: &BigComplex, digits: usize) -> Result<BigComplex> {
    let zi = z.inverse().ok_or(Error::DivisionByZero)?;
    let top = pochhammer_inf_all(&[z.times(z), zi.times(&zi)], &num.q, digits)?;
    let mut bottom = Vec::new();
    for u in num.u() {
        bottom.push(u.times(z));
        bottom.push(u.times(&zi));
    }
    top.divide(&pochhammer_inf_all(&bottom, &num.q, digits)?)
}

/// Closed product form of `Delta(z)`.
pub fn delta_closed(num: &NumericParams, z: &BigComplex, digits: usize) -> Result<BigComplex> {
    let zi = z.inverse().ok_or(Error::DivisionByZero)?;
    let top = pochhammer_inf_all(&[z.times(z), num.q.times(&zi).times(&zi)], &num.q, digits)?;
    let mut bottom: Vec<BigComplex> = num.u().iter().map(|u| u.times(z)).collect();
    bottom.push(num.a.times(&num.q).times(&zi));
    bottom.push(num.b.times(&num.q).times(&zi));
    bottom.push(num.c.times(&zi));
    bottom.push(num.d.times(&zi));
    top.divide(&pochhammer_inf_all(&bottom, &num.q, digits)?)
}

/// The coefficient-inverted symmetric weight `nabla^*` at `z`: all of
/// `a, b, c, d, q` inverted and `z -> 1/z`, with regularised Pochhammers.
pub fn nabla_star(p: &Params<Rat>, z: &BigComplex, digits: usize) -> Result<BigComplex> {
    let num = NumericParams::from_params(&p.star(), z.precision());
    let zi = z.inverse().ok_or(Error::DivisionByZero)?;
    nabla_closed(&num, &zi, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::bits_for_digits;
    use crate::scalars::rat;

    fn setup(digits: usize) -> (Params<Rat>, usize) {
        (Params::numeric_default(), bits_for_digits(digits))
    }

    fn circle(prec: usize) -> Vec<BigComplex> {
        vec![
            BigComplex::root_of_unity(1, 4, prec),
            BigComplex::root_of_unity(3, 7, prec),
            BigComplex::root_of_unity(5, 16, prec),
        ]
    }

    #[test]
    fn enumeration_matches_products() {
        let (p, prec) = setup(40);
        let num = NumericParams::from_params(&p, prec);
        for kind in [WeightKind::Delta, WeightKind::Nabla] {
            let w = WeightEvaluator::new(&p, kind, 40, prec).unwrap();
            assert!(w.tail_log10 < -50.0);
            for z in circle(prec) {
                let v = w.eval(&z).unwrap();
                let closed = match kind {
                    WeightKind::Delta => delta_closed(&num, &z, 40).unwrap(),
                    WeightKind::Nabla => nabla_closed(&num, &z, 40).unwrap(),
                };
                assert!(v.minus(&closed).log10_abs() < -40.0);
            }
        }
    }

    #[test]
    fn nabla_over_delta() {
        let (p, prec) = setup(40);
        let num = NumericParams::from_params(&p, prec);
        let delta = WeightEvaluator::new(&p, WeightKind::Delta, 40, prec).unwrap();
        let nabla = WeightEvaluator::new(&p, WeightKind::Nabla, 40, prec).unwrap();
        let one = unit_like(&num.a);
        for z in circle(prec) {
            let zi = z.inverse().unwrap();
            let zi2 = zi.times(&zi);
            let ratio = one
                .plus(&num.b.times(&zi))
                .divide(&one.minus(&num.a.times(&zi)))
                .unwrap()
                .times(&one.minus(&zi2).divide(&one.minus(&num.b.times(&num.b).times(&zi2))).unwrap());
            let got = nabla.eval(&z).unwrap().divide(&delta.eval(&z).unwrap()).unwrap();
            assert!(got.minus(&ratio).log10_abs() < -40.0);
            // bar symmetry
            let back = nabla.eval(&zi).unwrap();
            assert!(back.minus(&nabla.eval(&z).unwrap()).log10_abs() < -40.0);
        }
    }

    #[test]
    fn finite_and_nonzero_at_i() {
        let p = Params::new(rat(1, 20), rat(1, 1), rat(1, 20), rat(1, 1), rat(1, 3)).unwrap();
        let prec = bits_for_digits(30);
        let w = WeightEvaluator::new(&p, WeightKind::Delta, 30, prec).unwrap();
        let v = w.eval(&BigComplex::root_of_unity(1, 4, prec)).unwrap();
        assert!(v.abs_f64().is_finite() && v.abs_f64() > 1e-6);
    }

    #[test]
    fn rejects_large_parameters() {
        let p = Params::new(rat(2, 1), rat(3, 1), rat(5, 1), rat(7, 1), rat(1, 2)).unwrap();
        assert!(WeightEvaluator::new(&p, WeightKind::Delta, 30, 256).is_err());
    }

    #[test]
    fn regularised_pochhammer_functional_equation() {
        let prec = bits_for_digits(40);
        let x = BigComplex::from_rats(&rat(3, 7), &rat(1, 5), prec);
        let q = BigComplex::from_rat_prec(&rat(4, 1), prec);
        let one = unit_like(&x);
        let lhs = pochhammer_inf(&x, &q, 40).unwrap();
        let rhs = one.minus(&x).times(&pochhammer_inf(&x.times(&q), &q, 40).unwrap());
        assert!(lhs.minus(&rhs).log10_abs() < -40.0);
    }
}
