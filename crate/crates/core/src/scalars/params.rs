use super::{rat, GenFrac, Rat, Scalar, Shift};
use crate::error::{Error, Result};
use rand::Rng;
use serde::Serialize;
use std::fmt;

/// Which scalar tower a parameter set lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParamMode {
    SymbolicGenerators,
    RationalSpecialized,
    NumericComplex,
}

/// Values of the five generators `t0, t0~, t1, t1~, s` (with `s^2 = q`)
/// together with the accumulated label offset.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<S> {
    pub tau0: S,
    pub tau0t: S,
    pub tau1: S,
    pub tau1t: S,
    pub s: S,
    pub label: Shift,
}

fn nonzero<S: Scalar>(x: &S, name: &str) -> Result<()> {
    if x.is_unit() {
        Ok(())
    } else {
        Err(Error::Degenerate(format!("generator {name} is not invertible")))
    }
}

impl<S: Scalar> Params<S> {
    pub fn new(tau0: S, tau0t: S, tau1: S, tau1t: S, s: S) -> Result<Self> {
        for (x, n) in [(&tau0, "t0"), (&tau0t, "t0~"), (&tau1, "t1"), (&tau1t, "t1~"), (&s, "s")] {
            nonzero(x, n)?;
        }
        Ok(Params { tau0, tau0t, tau1, tau1t, s, label: Shift::zero() })
    }

    fn inv(x: &S) -> S {
        x.inverse().expect("generators are invertible")
    }

    pub fn a(&self) -> S {
        self.tau1.times(&self.tau1t)
    }
    pub fn b(&self) -> S {
        self.tau1.times(&Self::inv(&self.tau1t)).negated()
    }
    pub fn c(&self) -> S {
        self.s.times(&self.tau0).times(&self.tau0t)
    }
    pub fn d(&self) -> S {
        self.s.times(&self.tau0).times(&Self::inv(&self.tau0t)).negated()
    }
    pub fn q(&self) -> S {
        self.s.times(&self.s)
    }
    /// `u_i` for `i` in `1..=4`, i.e. `a, b, c, d`.
    pub fn u(&self, i: usize) -> S {
        match i {
            1 => self.a(),
            2 => self.b(),
            3 => self.c(),
            4 => self.d(),
            _ => panic!("parameter index out of range: {i}"),
        }
    }
    pub fn abcd(&self) -> S {
        self.a().times(&self.b()).times(&self.c()).times(&self.d())
    }
    /// `q^(k.v1) = t0 t1`, the square root of `abcd/q`.
    pub fn tau01(&self) -> S {
        self.tau0.times(&self.tau1)
    }
    /// `s^n = q^(n/2)`.
    pub fn spow(&self, n: i64) -> S {
        self.s.pow_i(n).expect("s is invertible")
    }
    /// `q^n`.
    pub fn qpow(&self, n: i64) -> S {
        self.spow(2 * n)
    }

    /// Parameters at label `k + h`.
    pub fn shifted(&self, h: &Shift) -> Result<Self> {
        let e = h.generator_exponents().ok_or_else(|| Error::InadmissibleShift(h.to_string()))?;
        Ok(Params {
            tau1: self.tau1.times(&self.spow(e[0])),
            tau1t: self.tau1t.times(&self.spow(e[1])),
            tau0: self.tau0.times(&self.spow(e[2])),
            tau0t: self.tau0t.times(&self.spow(e[3])),
            s: self.s.clone(),
            label: self.label + *h,
        })
    }

    /// Shift that panics on inadmissible input; for internal fixed shifts.
    pub fn at(&self, h: &Shift) -> Self {
        self.shifted(h).expect("fixed shift has integral generator exponents")
    }

    /// All generators inverted; the label offset changes sign with `q`.
    pub fn star(&self) -> Self {
        Params {
            tau0: Self::inv(&self.tau0),
            tau0t: Self::inv(&self.tau0t),
            tau1: Self::inv(&self.tau1),
            tau1t: Self::inv(&self.tau1t),
            s: Self::inv(&self.s),
            label: -self.label,
        }
    }

    /// The `a <-> b` swap, realised by `t1~ -> -1/t1~`.
    pub fn swap_ab(&self) -> Self {
        Params { tau1t: Self::inv(&self.tau1t).negated(), ..self.clone() }
    }

    /// The `c <-> d` swap, realised by `t0~ -> -1/t0~`.
    pub fn swap_cd(&self) -> Self {
        Params { tau0t: Self::inv(&self.tau0t).negated(), ..self.clone() }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Params<T> {
        Params {
            tau0: f(&self.tau0),
            tau0t: f(&self.tau0t),
            tau1: f(&self.tau1),
            tau1t: f(&self.tau1t),
            s: f(&self.s),
            label: self.label,
        }
    }

    pub fn generators(&self) -> [&S; 5] {
        [&self.tau0, &self.tau0t, &self.tau1, &self.tau1t, &self.s]
    }

    /// Generic-position guard for the quantities that appear as
    /// denominators in constructions up to degree `n`.
    pub fn check_generic(&self, n: i64) -> Result<()> {
        let one = S::one();
        let mut checks: Vec<(String, S)> = Vec::new();
        for x in self.generators() {
            checks.push(("generator - 1".into(), x.minus(&one)));
            checks.push(("generator + 1".into(), x.plus(&one)));
        }
        let (a, b, c, d) = (self.a(), self.b(), self.c(), self.d());
        let pairs = [
            ("ab", a.times(&b)),
            ("cd", c.times(&d)),
            ("ac", a.times(&c)),
            ("ad", a.times(&d)),
            ("bc", b.times(&c)),
            ("bd", b.times(&d)),
            ("abcd", self.abcd()),
            ("a/b", a.divide(&b)?),
        ];
        for j in -(2 * n + 6)..=(4 * n + 8) {
            let qj = self.spow(j);
            for (name, v) in &pairs {
                checks.push((format!("1 - {name} q^({j}/2)"), one.minus(&v.times(&qj))));
            }
        }
        for (name, v) in checks {
            if v.is_zero() {
                return Err(Error::Degenerate(name));
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Display for Params<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t0={}, t0~={}, t1={}, t1~={}, s={}",
            self.tau0, self.tau0t, self.tau1, self.tau1t, self.s
        )?;
        if !self.label.is_zero() {
            write!(f, ", label+{}", self.label)?;
        }
        Ok(())
    }
}

/// Sampling distribution for random rational parameter sets.
#[derive(Clone, Copy, Debug)]
pub struct SampleSpec {
    pub lo: i64,
    pub hi: i64,
    pub retries: usize,
    /// Degree bound handed to the genericity guard.
    pub degree: i64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { lo: 2, hi: 97, retries: 20, degree: 10 }
    }
}

impl Params<Rat> {
    /// Uniform random `+-p/q` generators with `p, q` in `[lo, hi]`; resamples
    /// on a genericity failure.
    pub fn sample<R: Rng>(rng: &mut R, spec: SampleSpec) -> Result<Self> {
        let mut last = Error::Degenerate("no attempt".into());
        for _ in 0..spec.retries {
            let mut draw = || {
                let p = rng.gen_range(spec.lo..=spec.hi);
                let q = rng.gen_range(spec.lo..=spec.hi);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                rat(sign * p, q)
            };
            let v: Vec<Rat> = (0..5).map(|_| draw()).collect();
            let p = Params::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone())?;
            match p.check_generic(spec.degree) {
                Ok(()) => return Ok(p),
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    /// The fixed real sample used for quadrature: every derived parameter and
    /// `q` has modulus in `[0.2, 0.32]`.
    pub fn numeric_default() -> Self {
        Params::new(rat(1, 2), rat(5, 4), rat(1, 4), rat(6, 5), rat(1, 2)).expect("nonzero")
    }

    /// Lift to the symbolic tower (constant generator values).
    pub fn to_genfrac(&self) -> Params<GenFrac> {
        self.map(GenFrac::from_rat)
    }
}

impl Params<GenFrac> {
    /// Fully symbolic generators.
    pub fn symbolic() -> Self {
        Params::new(
            GenFrac::generator(0),
            GenFrac::generator(1),
            GenFrac::generator(2),
            GenFrac::generator(3),
            GenFrac::generator(4),
        )
        .expect("generators are units")
    }

    /// Evaluate every generator fraction at rational generator values.
    pub fn evaluate(&self, at: &Params<Rat>) -> Option<Params<Rat>> {
        let vals = [at.tau0.clone(), at.tau0t.clone(), at.tau1.clone(), at.tau1t.clone(), at.s.clone()];
        Some(Params {
            tau0: self.tau0.evaluate(&vals)?,
            tau0t: self.tau0t.evaluate(&vals)?,
            tau1: self.tau1.evaluate(&vals)?,
            tau1t: self.tau1t.evaluate(&vals)?,
            s: self.s.evaluate(&vals)?,
            label: self.label,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn derived_parameters_symbolic() {
        let p = Params::symbolic();
        let t1 = GenFrac::generator(2);
        assert_eq!(p.a().times(&p.b()), t1.times(&t1).negated());
        assert_eq!(p.abcd(), p.q().times(&p.tau01()).times(&p.tau01()));
    }

    #[test]
    fn shift_by_v1_and_minus_v2() {
        let p = Params::<Rat>::numeric_default();
        let v1 = p.shifted(&Shift::v(1)).unwrap();
        assert_eq!(v1.tau1, p.tau1.clone() * p.s.clone());
        assert_eq!(v1.tau0, p.tau0.clone() * p.s.clone());
        assert_eq!(v1.tau1t, p.tau1t);
        let m2 = p.shifted(&-Shift::v(2)).unwrap();
        let sq = p.s.clone();
        assert_eq!(m2.a(), p.a() / sq.clone());
        assert_eq!(m2.b(), p.b() / sq.clone());
        assert_eq!(m2.c(), p.c() * sq.clone());
        assert_eq!(m2.d(), p.d() * sq);
        assert!(p.shifted(&Shift::halves([1, 0, 0, 0])).is_err());
    }

    #[test]
    fn star_examples() {
        let one = Params::new(rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)).unwrap();
        assert_eq!(one.star(), one);
        let p = Params::new(rat(2, 1), rat(3, 1), rat(5, 1), rat(7, 1), rat(1, 2)).unwrap();
        let st = p.star();
        assert_eq!(
            [st.tau0.clone(), st.tau0t.clone(), st.tau1.clone(), st.tau1t.clone(), st.s.clone()],
            [rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7), rat(2, 1)]
        );
        assert_eq!(st.star(), p);
    }

    #[test]
    fn swaps_permute_parameters() {
        let p = Params::<Rat>::numeric_default();
        let s = p.swap_ab();
        assert_eq!((s.a(), s.b(), s.c(), s.d()), (p.b(), p.a(), p.c(), p.d()));
        let s = p.swap_cd();
        assert_eq!((s.a(), s.b(), s.c(), s.d()), (p.a(), p.b(), p.d(), p.c()));
    }

    #[test]
    fn sampling_is_seeded() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let a = Params::sample(&mut r1, SampleSpec::default()).unwrap();
        let b = Params::sample(&mut r2, SampleSpec::default()).unwrap();
        assert_eq!(a, b);
    }
}
