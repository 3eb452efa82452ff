use crate::scalars::{Rat, Scalar};
use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use std::cell::{Cell, RefCell};
use std::fmt;

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits (128 decimal digits plus guard bits).
pub const DEFAULT_PRECISION_BITS: usize = 512;

thread_local! {
    static WORK_PREC: Cell<usize> = const { Cell::new(DEFAULT_PRECISION_BITS) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

/// Precision used for values created without an explicit precision.
pub fn working_precision() -> usize {
    WORK_PREC.with(|p| p.get())
}

/// Runs `f` with the thread's working precision temporarily set to `bits`.
pub fn with_precision<T>(bits: usize, f: impl FnOnce() -> T) -> T {
    let old = WORK_PREC.with(|p| p.replace(bits));
    let out = f();
    WORK_PREC.with(|p| p.set(old));
    out
}

/// Bits needed for `digits` decimal digits.
pub fn bits_for_digits(digits: usize) -> usize {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 64
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn float_from_rat(r: &Rat, p: usize) -> BigFloat {
    with_consts(|cc| {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, RM, cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, RM, cc);
        n.div(&d, p, RM)
    })
}

fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let s = with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// Complex number with arbitrary-precision real and imaginary parts.
#[derive(Debug)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl Clone for BigComplex {
    fn clone(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.clone(), prec: self.prec }
    }
}

impl PartialEq for BigComplex {
    fn eq(&self, o: &Self) -> bool {
        self.re == o.re && self.im == o.im
    }
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        BigComplex { re, im, prec }
    }

    pub fn from_rat_prec(r: &Rat, prec: usize) -> Self {
        BigComplex { re: float_from_rat(r, prec), im: BigFloat::new(prec), prec }
    }

    pub fn from_rats(re: &Rat, im: &Rat, prec: usize) -> Self {
        BigComplex { re: float_from_rat(re, prec), im: float_from_rat(im, prec), prec }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        let p = working_precision();
        BigComplex { re: BigFloat::from_f64(re, p), im: BigFloat::from_f64(im, p), prec: p }
    }

    /// `exp(2 pi i j / n)`.
    pub fn root_of_unity(j: usize, n: usize, prec: usize) -> Self {
        let p = prec + 32;
        with_consts(|cc| {
            let pi = cc.pi(p, RM);
            let two_pi_j = pi.mul(&BigFloat::from_u64(2 * j as u64, p), p, RM);
            let theta = two_pi_j.div(&BigFloat::from_u64(n as u64, p), p, RM);
            let c = theta.cos(prec, RM, cc);
            let s = theta.sin(prec, RM, cc);
            BigComplex { re: c, im: s, prec }
        })
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg(), prec: self.prec }
    }

    pub fn abs2(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.abs2().sqrt(self.prec, RM)
    }

    /// Modulus as a double (for reporting residuals).
    pub fn abs_f64(&self) -> f64 {
        float_to_f64(&self.abs())
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    /// `log10 |x|` (−inf for zero); robust for magnitudes below `f64` range.
    pub fn log10_abs(&self) -> f64 {
        let a = self.abs();
        if a.is_zero() {
            return f64::NEG_INFINITY;
        }
        let e = a.exponent().unwrap_or(0) as f64;
        let mut m = a.clone();
        m.set_exponent(0);
        float_to_f64(&m).log10() + e * std::f64::consts::LOG10_2
    }

    pub fn scale_real(&self, r: &BigFloat) -> Self {
        let p = self.prec;
        BigComplex { re: self.re.mul(r, p, RM), im: self.im.mul(r, p, RM), prec: p }
    }

    /// Decimal rendering with `digits` significant digits; an imaginary part
    /// below the shown precision is dropped.
    pub fn render(&self, digits: usize) -> String {
        let f = |x: &BigFloat| -> String {
            let p = (((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize).clamp(8, self.prec);
            let mut y = x.clone();
            y.set_precision(p, RM).ok();
            with_consts(|cc| y.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
        };
        let im = BigComplex { re: self.im.clone(), im: BigFloat::new(self.prec), prec: self.prec };
        let negligible = self.im.is_zero() || im.log10_abs() < self.log10_abs() - digits as f64;
        if negligible {
            f(&self.re)
        } else {
            format!("{} + {}i", f(&self.re), f(&self.im))
        }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(30))
    }
}

impl Scalar for BigComplex {
    fn zero() -> Self {
        let p = working_precision();
        BigComplex { re: BigFloat::new(p), im: BigFloat::new(p), prec: p }
    }
    fn one() -> Self {
        let p = working_precision();
        BigComplex { re: BigFloat::from_u64(1, p), im: BigFloat::new(p), prec: p }
    }
    fn from_rat(r: &Rat) -> Self {
        Self::from_rat_prec(r, working_precision())
    }
    fn plus(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        BigComplex { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM), prec: p }
    }
    fn minus(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        BigComplex { re: self.re.sub(&o.re, p, RM), im: self.im.sub(&o.im, p, RM), prec: p }
    }
    fn times(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        BigComplex { re, im, prec: p }
    }
    fn negated(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg(), prec: self.prec }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.prec;
        let n = self.abs2();
        Some(BigComplex { re: self.re.div(&n, p, RM), im: self.im.neg().div(&n, p, RM), prec: p })
    }
    fn tower() -> &'static str {
        "complex"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn field_operations() {
        let x = BigComplex::from_rats(&rat(1, 3), &rat(2, 7), 256);
        let y = x.inverse().unwrap();
        let one = x.times(&y);
        assert!(one.minus(&BigComplex::one()).log10_abs() < -70.0);
        assert!(x.plus(&x.negated()).is_zero());
    }

    #[test]
    fn roots_of_unity() {
        let w = BigComplex::root_of_unity(1, 8, 256);
        let w8 = w.pow_i(8).unwrap();
        assert!(w8.minus(&BigComplex::one()).log10_abs() < -70.0);
        let i = BigComplex::root_of_unity(1, 4, 256);
        assert!(i.times(&i).plus(&BigComplex::one()).log10_abs() < -70.0);
    }

    #[test]
    fn tiny_magnitudes_are_reported() {
        let t = BigComplex::from_rat_prec(&rat(1, 10).pow_i(150).unwrap(), 1024);
        assert!((t.log10_abs() + 150.0).abs() < 1e-9);
    }
}
