use super::weight::{unit_like, WeightEvaluator};
use super::BigComplex;
use crate::error::{Error, Result};
use crate::scalars::{Rat, Scalar};
use astro_float::BigFloat;
use serde::Serialize;

/// Largest trapezoid grid tried before giving up.
pub const N_MAX: usize = 1 << 16;

/// First trapezoid grid.
pub const N_START: usize = 32;

/// Result of a constant-term evaluation.
#[derive(Clone, Debug)]
pub struct CtValue {
    pub value: BigComplex,
    /// Grid size of the accepted value.
    pub points: usize,
    /// `log10 |T_N - T_(N/2)|`.
    pub error_log10: f64,
}

/// Convergence certificate stored with reports.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub points: usize,
    pub error_log10: f64,
}

/// The points `exp(2 pi i j / n)` of the grid.
pub fn circle_points(n: usize, prec: usize) -> Vec<BigComplex> {
    (0..n).map(|j| BigComplex::root_of_unity(j, n, prec)).collect()
}

fn real(x: usize, prec: usize) -> BigFloat {
    BigFloat::from_u64(x as u64, prec)
}

fn mean(sum: &BigComplex, n: usize) -> BigComplex {
    let p = sum.precision();
    let inv = real(1, p).div(&real(n, p), p, astro_float::RoundingMode::ToEven);
    sum.scale_real(&inv)
}

/// Trapezoid values of `f` on successively doubled grids.
pub struct Refinement {
    prec: usize,
    /// Values on the current grid, in grid order.
    values: Vec<BigComplex>,
}

impl Refinement {
    pub fn new(prec: usize, n: usize, f: &mut dyn FnMut(&BigComplex) -> Result<BigComplex>) -> Result<Self> {
        let values = circle_points(n, prec).iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Refinement { prec, values })
    }

    pub fn points(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigComplex] {
        &self.values
    }

    /// Doubles the grid, evaluating `f` only at the new odd points.
    pub fn refine(&mut self, f: &mut dyn FnMut(&BigComplex) -> Result<BigComplex>) -> Result<()> {
        let n = self.values.len() * 2;
        let mut next = Vec::with_capacity(n);
        for (j, old) in self.values.iter().enumerate() {
            next.push(old.clone());
            next.push(f(&BigComplex::root_of_unity(2 * j + 1, n, self.prec))?);
        }
        self.values = next;
        Ok(())
    }

    /// `(1/N) sum_j values_j z_j^(-m)` on the grid subsampled by `stride`.
    pub fn fourier(&self, m: i64, stride: usize, roots: &[BigComplex]) -> BigComplex {
        let n = self.values.len();
        let mut acc = BigComplex::from_rat_prec(&Rat::from_integer(0.into()), self.prec);
        let mut count = 0;
        for j in (0..n).step_by(stride) {
            let idx = ((-(j as i128) * m as i128).rem_euclid(n as i128)) as usize;
            acc = acc.plus(&self.values[j].times(&roots[idx]));
            count += 1;
        }
        mean(&acc, count)
    }
}

/// `ct(f)` by the trapezoid rule on `N = 32, 64, ...` points until two
/// successive values agree to `10^target_log10`.
pub fn constant_term(
    f: &mut dyn FnMut(&BigComplex) -> Result<BigComplex>,
    prec: usize,
    target_log10: f64,
) -> Result<CtValue> {
    let mut grid = Refinement::new(prec, N_START, f)?;
    let sum = |g: &Refinement| -> BigComplex {
        let mut acc = BigComplex::from_rat_prec(&Rat::from_integer(0.into()), prec);
        for v in g.values() {
            acc = acc.plus(v);
        }
        mean(&acc, g.points())
    };
    let mut prev = sum(&grid);
    while grid.points() < N_MAX {
        grid.refine(f)?;
        let cur = sum(&grid);
        let err = cur.minus(&prev).log10_abs();
        if err < target_log10 {
            return Ok(CtValue { value: cur, points: grid.points(), error_log10: err });
        }
        prev = cur;
    }
    Err(Error::Numeric(format!("constant term did not converge with {N_MAX} points")))
}

/// Fourier coefficients `ct(z^(-m) w)` of a weight, from one cached grid.
pub struct WeightMoments {
    pub weight: WeightEvaluator,
    grid: Refinement,
    roots: Vec<BigComplex>,
    target_log10: f64,
    /// Worst `|T_N - T_(N/2)|` among the moments handed out so far.
    pub error_log10: f64,
    cache: std::collections::BTreeMap<i64, BigComplex>,
}

impl WeightMoments {
    /// Refines until the moments `|m| <= m_max` have converged.
    pub fn new(weight: WeightEvaluator, m_max: i64, target_log10: f64) -> Result<Self> {
        let prec = weight.precision();
        let w = weight.clone();
        let grid = Refinement::new(prec, N_START, &mut |z| w.eval(z))?;
        let roots = circle_points(N_START, prec);
        let mut out = WeightMoments {
            weight,
            grid,
            roots,
            target_log10,
            error_log10: f64::NEG_INFINITY,
            cache: Default::default(),
        };
        out.ensure(m_max)?;
        Ok(out)
    }

    pub fn points(&self) -> usize {
        self.grid.points()
    }

    pub fn certificate(&self) -> Certificate {
        Certificate { points: self.points(), error_log10: self.error_log10 }
    }

    fn worst_change(&self, m_max: i64) -> f64 {
        (-m_max..=m_max)
            .map(|m| self.grid.fourier(m, 1, &self.roots).minus(&self.grid.fourier(m, 2, &self.roots)).log10_abs())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Makes sure the moments up to `|m| <= m_max` are converged.
    pub fn ensure(&mut self, m_max: i64) -> Result<()> {
        if self.cache.contains_key(&m_max) && self.cache.contains_key(&-m_max) {
            return Ok(());
        }
        loop {
            // aliasing needs the grid to be well beyond the degree
            let wide_enough = self.grid.points() as i64 > 4 * m_max + 8;
            if wide_enough {
                let change = self.worst_change(m_max);
                if change < self.target_log10 {
                    self.error_log10 = self.error_log10.max(change);
                    for m in -m_max..=m_max {
                        let v = self.grid.fourier(m, 1, &self.roots);
                        self.cache.insert(m, v);
                    }
                    return Ok(());
                }
            }
            if self.grid.points() >= N_MAX {
                return Err(Error::Numeric(format!("weight moments did not converge with {N_MAX} points")));
            }
            let w = self.weight.clone();
            self.grid.refine(&mut |z| w.eval(z))?;
            self.roots = circle_points(self.grid.points(), self.weight.precision());
        }
    }

    /// `ct(z^(-m) w)`.
    pub fn moment(&mut self, m: i64) -> Result<BigComplex> {
        if !self.cache.contains_key(&m) {
            self.ensure(m.abs())?;
        }
        Ok(self.cache[&m].clone())
    }

    /// `ct(f w)` for a Laurent polynomial given by its terms.
    pub fn pair(&mut self, terms: &[(i64, BigComplex)]) -> Result<BigComplex> {
        let mut acc = BigComplex::from_rat_prec(&Rat::from_integer(0.into()), self.weight.precision());
        for (n, c) in terms {
            acc = acc.plus(&c.times(&self.moment(-n)?));
        }
        Ok(acc)
    }

    /// The grid values, for pointwise reuse.
    pub fn values(&self) -> &[BigComplex] {
        self.grid.values()
    }

    pub fn one(&self) -> BigComplex {
        unit_like(&self.roots[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::weight::{pochhammer_inf_all, NumericParams, WeightKind};
    use crate::quadrature::bits_for_digits;
    use crate::scalars::Params;

    #[test]
    fn trivial_constant_terms() {
        let prec = bits_for_digits(40);
        let one = constant_term(&mut |z| Ok(unit_like(z)), prec, -40.0).unwrap();
        assert!(one.value.minus(&unit_like(&one.value)).log10_abs() < -40.0);
        let cube = constant_term(&mut |z| Ok(z.times(z).times(z)), prec, -40.0).unwrap();
        assert!(cube.value.log10_abs() < -40.0);
    }

    #[test]
    fn delta_mass_is_half_the_closed_form() {
        let digits = 40;
        let prec = bits_for_digits(digits);
        let p = Params::numeric_default();
        let w = WeightEvaluator::new(&p, WeightKind::Delta, digits, prec).unwrap();
        let mut mom = WeightMoments::new(w, 2, -(digits as f64)).unwrap();
        let mass = mom.moment(0).unwrap();
        let n = NumericParams::from_params(&p, prec);
        let (a, b, c, d, q) = (&n.a, &n.b, &n.c, &n.d, &n.q);
        let top = pochhammer_inf_all(&[a.times(b).times(c).times(d)], q, digits).unwrap();
        let bottom = pochhammer_inf_all(
            &[q.clone(), a.times(b).times(q), a.times(c), a.times(d), b.times(c), b.times(d), c.times(d)],
            q,
            digits,
        )
        .unwrap();
        let h0 = top.divide(&bottom).unwrap().times(&BigComplex::from_rat_prec(&Rat::from_integer(2.into()), prec));
        let half = mass.times(&BigComplex::from_rat_prec(&Rat::from_integer(2.into()), prec));
        assert!(half.minus(&h0).log10_abs() < -(digits as f64) + 2.0);
    }
}
