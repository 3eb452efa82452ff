use super::{Rat, Scalar};
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;

/// Display names of the five generators, in exponent-vector order.
pub const GEN_NAMES: [&str; 5] = ["t0", "t0~", "t1", "t1~", "s"];

/// Multivariate Laurent polynomial in the five generators.
pub type MPoly = BTreeMap<[i32; 5], Rat>;

fn mp_one() -> MPoly {
    let mut m = MPoly::new();
    m.insert([0; 5], Rat::one());
    m
}

fn mp_add_into(acc: &mut MPoly, other: &MPoly, sign: bool) {
    for (k, v) in other {
        let e = acc.entry(*k).or_insert_with(Rat::zero);
        if sign {
            *e += v;
        } else {
            *e -= v;
        }
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

fn mp_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3], ka[4] + kb[4]];
            let e = out.entry(k).or_insert_with(Rat::zero);
            *e += va * vb;
            if e.is_zero() {
                out.remove(&k);
            }
        }
    }
    out
}

fn mp_shift(a: &MPoly, by: [i32; 5]) -> MPoly {
    a.iter()
        .map(|(k, v)| {
            ([k[0] + by[0], k[1] + by[1], k[2] + by[2], k[3] + by[3], k[4] + by[4]], v.clone())
        })
        .collect()
}

fn mp_min_exps(a: &MPoly) -> [i32; 5] {
    let mut m = [i32::MAX; 5];
    for k in a.keys() {
        for i in 0..5 {
            m[i] = m[i].min(k[i]);
        }
    }
    m
}

fn neg5(e: [i32; 5]) -> [i32; 5] {
    [-e[0], -e[1], -e[2], -e[3], -e[4]]
}

/// Exact division `a / b` by the lex-order division algorithm, if exact.
fn mp_div_exact(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let (bk, bv) = b.iter().next_back()?;
    let shift_b = mp_min_exps(b);
    let shift_a = mp_min_exps(a);
    // Move both into the polynomial ring; the quotient absorbs the offsets.
    let bb = mp_shift(b, neg5(shift_b));
    let mut r = mp_shift(a, neg5(shift_a));
    let lead_b = [bk[0] - shift_b[0], bk[1] - shift_b[1], bk[2] - shift_b[2], bk[3] - shift_b[3], bk[4] - shift_b[4]];
    let mut q = MPoly::new();
    let mut steps = 0usize;
    while let Some((rk, rv)) = r.iter().next_back() {
        steps += 1;
        if steps > 20_000 {
            return None;
        }
        let mut e = [0i32; 5];
        for i in 0..5 {
            e[i] = rk[i] - lead_b[i];
            if e[i] < 0 {
                return None;
            }
        }
        let c = rv / bv;
        let mut t = MPoly::new();
        t.insert(e, c.clone());
        mp_add_into(&mut r, &mp_mul(&t, &bb), false);
        q.insert(e, c);
    }
    let off = [
        shift_a[0] - shift_b[0],
        shift_a[1] - shift_b[1],
        shift_a[2] - shift_b[2],
        shift_a[3] - shift_b[3],
        shift_a[4] - shift_b[4],
    ];
    Some(mp_shift(&q, off))
}

/// Element of the fraction field of the generator Laurent ring.
///
/// Only content and monomial factors are cancelled; equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct GenFrac {
    num: MPoly,
    den: MPoly,
}

impl GenFrac {
    /// The generator with index `i` (order t0, t0~, t1, t1~, s).
    pub fn generator(i: usize) -> Self {
        let mut e = [0; 5];
        e[i] = 1;
        Self::monomial(Rat::one(), e)
    }

    pub fn monomial(c: Rat, e: [i32; 5]) -> Self {
        let mut num = MPoly::new();
        if !c.is_zero() {
            num.insert(e, c);
        }
        GenFrac { num, den: mp_one() }.normalized()
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    /// Substitutes rational values for the generators.
    pub fn evaluate(&self, vals: &[Rat; 5]) -> Option<Rat> {
        let ev = |m: &MPoly| -> Option<Rat> {
            let mut acc = Rat::zero();
            for (k, v) in m {
                let mut t = v.clone();
                for i in 0..5 {
                    t *= vals[i].pow_i(k[i] as i64)?;
                }
                acc += t;
            }
            Some(acc)
        };
        let d = ev(&self.den)?;
        if d.is_zero() {
            return None;
        }
        Some(ev(&self.num)? / d)
    }

    fn normalized(mut self) -> Self {
        if self.num.is_empty() {
            self.den = mp_one();
            return self;
        }
        let md = mp_min_exps(&self.den);
        self.den = mp_shift(&self.den, neg5(md));
        self.num = mp_shift(&self.num, neg5(md));
        if self.den.len() > 1 {
            if let Some(q) = mp_div_exact(&self.num, &self.den) {
                self.num = q;
                self.den = mp_one();
            }
        }
        if self.den.len() == 1 {
            let (k, v) = self.den.iter().next().map(|(k, v)| (*k, v.clone())).unwrap();
            let inv = v.recip();
            self.num = mp_shift(&self.num, neg5(k)).into_iter().map(|(k, c)| (k, c * &inv)).collect();
            self.den = mp_one();
            return self;
        }
        let lead = self.den.values().next_back().cloned().unwrap();
        if !lead.is_one() {
            let inv = lead.recip();
            for v in self.den.values_mut() {
                *v *= &inv;
            }
            for v in self.num.values_mut() {
                *v *= &inv;
            }
        }
        self
    }

    fn fmt_mpoly(m: &MPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if m.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in m.iter().rev().enumerate() {
            let neg = v.is_negative();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = v.abs();
            let mono: Vec<String> = (0..5)
                .filter(|j| k[*j] != 0)
                .map(|j| if k[j] == 1 { GEN_NAMES[j].to_string() } else { format!("{}^{}", GEN_NAMES[j], k[j]) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", a, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl PartialEq for GenFrac {
    fn eq(&self, o: &Self) -> bool {
        let mut l = mp_mul(&self.num, &o.den);
        mp_add_into(&mut l, &mp_mul(&o.num, &self.den), false);
        l.is_empty()
    }
}

impl fmt::Display for GenFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit_den = self.den.len() == 1 && self.den.get(&[0; 5]).is_some_and(|v| v.is_one());
        if unit_den {
            return Self::fmt_mpoly(&self.num, f);
        }
        write!(f, "(")?;
        Self::fmt_mpoly(&self.num, f)?;
        write!(f, ")/(")?;
        Self::fmt_mpoly(&self.den, f)?;
        write!(f, ")")
    }
}

impl Scalar for GenFrac {
    fn zero() -> Self {
        GenFrac { num: MPoly::new(), den: mp_one() }
    }
    fn one() -> Self {
        GenFrac { num: mp_one(), den: mp_one() }
    }
    fn from_rat(r: &Rat) -> Self {
        Self::monomial(r.clone(), [0; 5])
    }
    fn plus(&self, o: &Self) -> Self {
        if self.num.is_empty() {
            return o.clone();
        }
        if o.num.is_empty() {
            return self.clone();
        }
        if self.den == o.den {
            let mut n = self.num.clone();
            mp_add_into(&mut n, &o.num, true);
            return GenFrac { num: n, den: self.den.clone() }.normalized();
        }
        let mut n = mp_mul(&self.num, &o.den);
        mp_add_into(&mut n, &mp_mul(&o.num, &self.den), true);
        GenFrac { num: n, den: mp_mul(&self.den, &o.den) }.normalized()
    }
    fn times(&self, o: &Self) -> Self {
        if self.num.is_empty() || o.num.is_empty() {
            return Self::zero();
        }
        GenFrac { num: mp_mul(&self.num, &o.num), den: mp_mul(&self.den, &o.den) }.normalized()
    }
    fn negated(&self) -> Self {
        GenFrac { num: self.num.iter().map(|(k, v)| (*k, -v)).collect(), den: self.den.clone() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    fn inverse(&self) -> Option<Self> {
        if self.num.is_empty() {
            return None;
        }
        Some(GenFrac { num: self.den.clone(), den: self.num.clone() }.normalized())
    }
    fn invert_generators(&self) -> Option<Self> {
        let flip = |m: &MPoly| -> MPoly { m.iter().map(|(k, v)| (neg5(*k), v.clone())).collect() };
        Some(GenFrac { num: flip(&self.num), den: flip(&self.den) }.normalized())
    }
    fn tower() -> &'static str {
        "symbolic"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn g(i: usize) -> GenFrac {
        GenFrac::generator(i)
    }

    #[test]
    fn cancellation_and_zero() {
        let t1 = g(2);
        let x = t1.plus(&GenFrac::one()).divide(&t1.minus(&GenFrac::one())).unwrap();
        assert!(x.plus(&x.negated()).is_zero());
        let y = t1.times(&t1).minus(&GenFrac::one()).divide(&t1.minus(&GenFrac::one())).unwrap();
        assert_eq!(y, t1.plus(&GenFrac::one()));
        assert_eq!(y.denominator().len(), 1);
    }

    #[test]
    fn generator_inversion_is_involutive() {
        let x = g(0).plus(&GenFrac::from_rat(&rat(3, 2))).divide(&g(4).times(&g(1)).minus(&g(3))).unwrap();
        let y = x.invert_generators().unwrap();
        assert_ne!(x, y);
        assert_eq!(y.invert_generators().unwrap(), x);
    }

    #[test]
    fn evaluation_matches_rational_arithmetic() {
        let x = g(0).times(&g(4)).plus(&g(2)).divide(&g(3).minus(&GenFrac::one())).unwrap();
        let vals = [rat(2, 1), rat(3, 1), rat(5, 1), rat(7, 1), rat(1, 2)];
        assert_eq!(x.evaluate(&vals).unwrap(), (rat(2, 1) * rat(1, 2) + rat(5, 1)) / rat(6, 1));
    }
}
