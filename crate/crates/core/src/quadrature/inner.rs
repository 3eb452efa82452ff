use super::ct::{Certificate, WeightMoments};
use super::weight::{WeightEvaluator, WeightKind};
use super::{bits_for_digits, BigComplex};
use crate::error::Result;
use crate::laurent::{Involution, LaurentPoly, Parametric};
use crate::scalars::{Params, Rat, Scalar};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

/// The three pairings on Laurent polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InnerKind {
    /// `(f, g) = ct(f g^* Delta)`.
    Round,
    /// `<f, g> = ct(f gbar nabla) / 2`.
    Angle,
    /// `<f, g>' = ct(f g^* nabla)`.
    AnglePrime,
}

impl InnerKind {
    pub fn weight(self) -> WeightKind {
        match self {
            InnerKind::Round => WeightKind::Delta,
            _ => WeightKind::Nabla,
        }
    }

    pub fn parse(s: &str) -> Option<InnerKind> {
        match s {
            "round" => Some(InnerKind::Round),
            "angle" => Some(InnerKind::Angle),
            "angleprime" => Some(InnerKind::AnglePrime),
            _ => None,
        }
    }
}

impl fmt::Display for InnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerKind::Round => "round",
            InnerKind::Angle => "angle",
            InnerKind::AnglePrime => "angleprime",
        })
    }
}

/// Numeric settings shared by every quadrature check.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuadConfig {
    /// Decimal digits of working precision.
    pub digits: usize,
    /// Moments are certified up to this degree on creation.
    pub moment_degree: i64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { digits: 128, moment_degree: 16 }
    }
}

impl QuadConfig {
    pub fn with_digits(digits: usize) -> Self {
        QuadConfig { digits, ..Default::default() }
    }

    pub fn bits(&self) -> usize {
        bits_for_digits(self.digits)
    }

    /// Convergence target of the trapezoid refinement.
    pub fn target_log10(&self) -> f64 {
        -(self.digits as f64) + 5.0
    }
}

/// Cache of weight moments per parameter set; the entry point for pairings.
pub struct Quadrature {
    pub config: QuadConfig,
    moments: HashMap<(String, WeightKind), WeightMoments>,
}

fn key(p: &Params<Rat>) -> String {
    p.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
}

impl Quadrature {
    pub fn new(config: QuadConfig) -> Self {
        Quadrature { config, moments: HashMap::new() }
    }

    pub fn bits(&self) -> usize {
        self.config.bits()
    }

    pub fn complex(&self, r: &Rat) -> BigComplex {
        BigComplex::from_rat_prec(r, self.bits())
    }

    /// Moments of the weight at `p`, created on first use.
    pub fn moments(&mut self, p: &Params<Rat>, kind: WeightKind) -> Result<&mut WeightMoments> {
        let k = (key(p), kind);
        if !self.moments.contains_key(&k) {
            let w = WeightEvaluator::new(p, kind, self.config.digits, self.bits())?;
            let m = WeightMoments::new(w, self.config.moment_degree, self.config.target_log10())?;
            self.moments.insert(k.clone(), m);
        }
        Ok(self.moments.get_mut(&k).expect("inserted above"))
    }

    /// `ct(F w)` for an exact Laurent polynomial `F`.
    pub fn ct_poly(&mut self, f: &LaurentPoly<Rat>, p: &Params<Rat>, kind: WeightKind) -> Result<BigComplex> {
        let terms: Vec<(i64, BigComplex)> = f.terms().map(|(n, c)| (*n, self.complex(c))).collect();
        self.moments(p, kind)?.pair(&terms)
    }

    /// The pairing of `f` and `g` at the parameters of `f`; the second slot
    /// is conjugated through its provenance.
    pub fn inner(&mut self, f: &Parametric<Rat>, g: &Parametric<Rat>, kind: InnerKind) -> Result<BigComplex> {
        let p = f.params.clone();
        let lhs = f.realize()?;
        let rhs = match kind {
            InnerKind::Angle => g.involution(Involution::Bar)?,
            _ => g.involution(Involution::Star)?,
        };
        let prod = lhs.times(&rhs);
        let v = self.ct_poly(&prod, &p, kind.weight())?;
        Ok(match kind {
            InnerKind::Angle => v.times(&self.complex(&Rat::new(1.into(), 2.into()))),
            _ => v,
        })
    }

    /// The pairing divided by the pairing of `(1, 1)`.
    pub fn inner_normalized(&mut self, f: &Parametric<Rat>, g: &Parametric<Rat>, kind: InnerKind) -> Result<BigComplex> {
        let one = Parametric::constant("1", f.params.clone(), LaurentPoly::one());
        let unit = self.inner(&one, &one, kind)?;
        self.inner(f, g, kind)?.divide(&unit)
    }

    /// Certificate of the weight grid at `p`.
    pub fn certificate(&mut self, p: &Params<Rat>, kind: WeightKind) -> Result<Certificate> {
        Ok(self.moments(p, kind)?.certificate())
    }

    /// Truncation level and tail bound of the weight at `p`.
    pub fn truncation(&mut self, p: &Params<Rat>, kind: WeightKind) -> Result<(usize, f64)> {
        let m = self.moments(p, kind)?;
        Ok((m.weight.truncation, m.weight.tail_log10))
    }
}

/// Pairs two polynomials with provenance at the parameters of `f`.
pub fn inner_product(
    q: &mut Quadrature,
    f: &Parametric<Rat>,
    g: &Parametric<Rat>,
    kind: InnerKind,
) -> Result<BigComplex> {
    q.inner(f, g, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{AWFamily, Construction};

    fn family() -> AWFamily<Rat> {
        AWFamily::new(Params::numeric_default(), Construction::TriangularEigen)
    }

    #[test]
    fn orthogonality_and_symmetric_relation() {
        let mut q = Quadrature::new(QuadConfig::with_digits(40));
        let fam = family();
        let tol = -35.0;
        for m in -2..=2 {
            for n in -2..=2 {
                if m != n {
                    let v = q.inner(&fam.e_parametric(m), &fam.e_parametric(n), InnerKind::Round).unwrap();
                    assert!(v.log10_abs() < tol, "(E{m}, E{n}) = {v}");
                }
            }
        }
        let p = fam.params.clone();
        let half_one_ab = q.complex(&(Rat::from_integer(1.into()) - p.a() * p.b())).times(&q.complex(&Rat::new(1.into(), 2.into())));
        for (m, n) in [(1, 1), (1, 2), (2, 2)] {
            let (f, g) = (fam.p_parametric(m), fam.p_parametric(n));
            let round = q.inner(&f, &g, InnerKind::Round).unwrap();
            let prime = q.inner(&f, &g, InnerKind::AnglePrime).unwrap();
            assert!(round.minus(&prime.times(&half_one_ab)).log10_abs() < tol);
        }
    }

    #[test]
    fn first_normalized_norm() {
        let mut q = Quadrature::new(QuadConfig::with_digits(40));
        let fam = family();
        let p = fam.params.clone();
        let e1 = fam.e_parametric(1);
        let got = q.inner_normalized(&e1, &e1, InnerKind::Round).unwrap();
        let one = Rat::from_integer(1.into());
        let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
        let abcd = p.abcd();
        let expected = (&one - &a * &c) * (&one - &a * &d) * (&one - &b * &c) * (&one - &b * &d)
            / ((&one - &abcd) * (&one - &abcd));
        assert!(got.minus(&q.complex(&expected)).log10_abs() < -35.0);
    }
}
