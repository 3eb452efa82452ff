use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalars::{rat, Params, Rat, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in the four limit labels `k1..k4` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct KPoly {
    /// Exponent vector of `k1..k4` to coefficient; no zero entries.
    terms: BTreeMap<[u32; 4], Rat>,
}

impl KPoly {
    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; 4], c);
        }
        KPoly { terms }
    }

    /// The label `k_i`, `i` in `1..=4`.
    pub fn k(i: usize) -> Self {
        assert!((1..=4).contains(&i), "label index out of range: {i}");
        let mut e = [0; 4];
        e[i - 1] = 1;
        KPoly { terms: BTreeMap::from([(e, Rat::one())]) }
    }

    /// `sum_i c_i k_i + c0`.
    pub fn linear(c: [Rat; 4], c0: Rat) -> Self {
        (1..=4).fold(KPoly::constant(c0), |acc, i| acc.plus(&KPoly::k(i).scale(&c[i - 1])))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return KPoly::default();
        }
        KPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The constant part, when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.terms[&[0; 4]].clone()),
            _ => None,
        }
    }

    fn add_term(&mut self, e: [u32; 4], c: Rat) {
        let v = self.terms.entry(e).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl Scalar for KPoly {
    fn zero() -> Self {
        KPoly::default()
    }
    fn one() -> Self {
        KPoly::constant(Rat::one())
    }
    fn from_rat(r: &Rat) -> Self {
        KPoly::constant(r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = KPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        self.scale(&-Rat::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn inverse(&self) -> Option<Self> {
        match self.as_constant() {
            Some(c) if !c.is_zero() => Some(KPoly::constant(c.recip())),
            _ => None,
        }
    }
    fn tower() -> &'static str {
        "label polynomial"
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => mono.push_str(&format!("k{}", i + 1)),
                    _ => mono.push_str(&format!("k{}^{p}", i + 1)),
                }
            }
            let neg = c < &Rat::zero();
            let mag = if neg { -c } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// First-order jet `val + der * u` in `u = q - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub val: Rat,
    pub der: KPoly,
}

impl Jet {
    pub fn new(val: Rat, der: KPoly) -> Self {
        Jet { val, der }
    }

    /// `(0, der)`: a pure first-order term.
    pub fn infinitesimal(der: KPoly) -> Self {
        Jet { val: Rat::zero(), der }
    }

    /// `q^(n/2) = (1, n/2)`.
    pub fn half_power(n: i64) -> Self {
        Jet::new(Rat::one(), KPoly::constant(rat(n, 2)))
    }
}

impl Scalar for Jet {
    fn zero() -> Self {
        Jet::new(Rat::zero(), KPoly::default())
    }
    fn one() -> Self {
        Jet::new(Rat::one(), KPoly::default())
    }
    fn from_rat(r: &Rat) -> Self {
        Jet::new(r.clone(), KPoly::default())
    }
    fn plus(&self, o: &Self) -> Self {
        Jet::new(&self.val + &o.val, self.der.plus(&o.der))
    }
    fn times(&self, o: &Self) -> Self {
        Jet::new(&self.val * &o.val, o.der.scale(&self.val).plus(&self.der.scale(&o.val)))
    }
    fn negated(&self) -> Self {
        Jet::new(-&self.val, self.der.negated())
    }
    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.der.is_zero()
    }
    fn is_unit(&self) -> bool {
        !self.val.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        if self.val.is_zero() {
            return None;
        }
        let v = self.val.recip();
        Some(Jet::new(v.clone(), self.der.scale(&-(&v * &v))))
    }
    fn tower() -> &'static str {
        "jet"
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.val, self.der)
    }
}

/// Generators at `(a, b, c, d) = (q^k1, -q^k2, q^(k3+1/2), -q^(k4+1/2))`.
pub fn jet_params() -> Params<Jet> {
    let half = rat(1, 2);
    let g = |c: [i64; 4]| Jet::new(Rat::one(), KPoly::linear(c.map(|x| Rat::from_integer(x.into()) * &half), Rat::zero()));
    Params::new(g([0, 0, 1, 1]), g([0, 0, 1, -1]), g([1, 1, 0, 0]), g([1, -1, 0, 0]), Jet::half_power(1))
        .expect("jet generators have value 1")
}

/// Which component of a jet-valued result to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// The `q -> 1` value.
    Value,
    /// The coefficient of `q - 1`, provided the value vanishes.
    Derivative,
}

/// Lifts a `q`-independent polynomial to jets.
pub fn lift_poly(f: &LaurentPoly<Rat>) -> LaurentPoly<Jet> {
    f.map_coeffs(Jet::from_rat)
}

/// The requested component of a jet-valued polynomial.
pub fn extract_limit(g: &LaurentPoly<Jet>, order: Order) -> Result<LaurentPoly<KPoly>> {
    match order {
        Order::Value => Ok(g.map_coeffs(|j| KPoly::constant(j.val.clone()))),
        Order::Derivative => {
            if let Some((n, j)) = g.terms().find(|(_, j)| !j.val.is_zero()) {
                return Err(Error::DegenerateLimit(format!(
                    "value part {} at z^{n} does not vanish, so the operator is not O(q-1)",
                    j.val
                )));
            }
            Ok(g.map_coeffs(|j| j.der.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_jets() {
        let p = jet_params();
        let k = KPoly::k;
        let half = KPoly::constant(rat(1, 2));
        assert_eq!(p.a(), Jet::new(rat(1, 1), k(1)));
        assert_eq!(p.b(), Jet::new(rat(-1, 1), k(2).negated()));
        assert_eq!(p.c(), Jet::new(rat(1, 1), k(3).plus(&half)));
        assert_eq!(p.d(), Jet::new(rat(-1, 1), k(4).plus(&half).negated()));
        assert_eq!(p.q(), Jet::new(rat(1, 1), KPoly::one()));
    }

    #[test]
    fn inverse_and_zero_divisors() {
        let x = Jet::new(rat(2, 1), KPoly::k(1));
        assert!(x.times(&x.inverse().unwrap()).is_one());
        assert!(Jet::infinitesimal(KPoly::k(2)).inverse().is_none());
    }

    #[test]
    fn derivative_extraction_requires_vanishing_value() {
        let g = LaurentPoly::from_terms([(1, Jet::infinitesimal(KPoly::k(3)))]);
        assert_eq!(extract_limit(&g, Order::Derivative).unwrap(), LaurentPoly::monomial(KPoly::k(3), 1));
        let h = LaurentPoly::from_terms([(0, Jet::one())]);
        assert!(matches!(extract_limit(&h, Order::Derivative), Err(Error::DegenerateLimit(_))));
    }

    #[test]
    fn display() {
        let x = KPoly::linear([rat(1, 1), rat(-1, 2), rat(0, 1), rat(0, 1)], rat(-1, 2));
        assert_eq!(x.to_string(), "k1 - 1/2*k2 - 1/2");
    }
}
