use super::inner::{InnerKind, Quadrature};
use super::weight::{pochhammer_inf_all, unit_like, NumericParams, WeightEvaluator, WeightKind};
use super::{circle_points, BigComplex};
use crate::error::Result;
use crate::families::{AWFamily, Construction};
use crate::laurent::{LaurentPoly, Parametric};
use crate::report::{CheckReport, SuiteReport};
use crate::scalars::{Params, Rat, Scalar, Shift};

/// Residual thresholds, as `log10`, scaled with the working precision.
#[derive(Clone, Copy, Debug)]
pub struct NormTolerances {
    pub closed: f64,
    pub orthogonal: f64,
    pub pointwise: f64,
}

impl NormTolerances {
    /// `10^-80` and `10^-100` at 128 digits.
    pub fn for_digits(digits: usize) -> Self {
        let d = digits as f64;
        NormTolerances { closed: -d * 0.625, orthogonal: -d * 0.78, pointwise: -d * 0.625 }
    }
}

fn rat1() -> Rat {
    Rat::from_integer(1.into())
}

/// `(x; q)_n` over the rationals.
pub fn rat_pochhammer(x: &Rat, q: &Rat, n: i64) -> Rat {
    let mut acc = rat1();
    let mut t = x.clone();
    for _ in 0..n {
        acc *= rat1() - &t;
        t *= q;
    }
    acc
}

fn qp(p: &Params<Rat>, k: i64) -> Rat {
    p.qpow(k)
}

/// `(E_idx, E_idx)` from its infinite-product formula. The published
/// product with leading factor 2 is twice this value.
pub fn norm_closed(p: &Params<Rat>, idx: i64, digits: usize, prec: usize) -> Result<BigComplex> {
    let n = NumericParams::from_params(p, prec);
    let (a, b, c, d, q) = (&n.a, &n.b, &n.c, &n.d, &n.q);
    let abcd = a.times(b).times(c).times(d);
    let qn = |k: i64| BigComplex::from_rat_prec(&qp(p, k), prec);
    let (m, shift_mixed, top_exp) = if idx <= 0 { (-idx, 0, -2 * idx) } else { (idx - 1, 1, 2 * (idx - 1) + 1) };
    let mm = m + shift_mixed;
    let top = pochhammer_inf_all(&[abcd.times(&qn(top_exp))], q, digits)?;
    let bottom = pochhammer_inf_all(
        &[
            qn(m + 1),
            a.times(b).times(&qn(m + 1)),
            a.times(c).times(&qn(mm)),
            a.times(d).times(&qn(mm)),
            b.times(c).times(&qn(mm)),
            b.times(d).times(&qn(mm)),
            c.times(d).times(&qn(m)),
        ],
        q,
        digits,
    )?;
    let finite = super::pochhammer(&abcd.times(&qn(m)), q, (m + shift_mixed) as usize);
    top.divide(&bottom.times(&finite))
}

/// `(E_idx, E_idx) / (1, 1)` as an exact rational function value.
pub fn normalized_norm(p: &Params<Rat>, idx: i64) -> Rat {
    let (a, b, c, d, q) = (p.a(), p.b(), p.c(), p.d(), p.q());
    let abcd = p.abcd();
    let poch = |x: Rat, n: i64| rat_pochhammer(&x, &q, n);
    if idx <= 0 {
        let n = -idx;
        let top = poch(q.clone(), n)
            * poch(&a * &b * &q, n)
            * poch(&a * &c, n)
            * poch(&a * &d, n)
            * poch(&b * &c, n)
            * poch(&b * &d, n)
            * poch(&c * &d, n);
        top / (poch(abcd.clone(), 2 * n) * poch(&abcd * qp(p, n), n))
    } else {
        let n = idx - 1;
        let top = poch(q.clone(), n)
            * poch(&a * &b * &q, n)
            * poch(&c * &d, n)
            * poch(&a * &c, n + 1)
            * poch(&a * &d, n + 1)
            * poch(&b * &c, n + 1)
            * poch(&b * &d, n + 1);
        top / (poch(abcd.clone(), 2 * n + 1) * poch(&abcd * qp(p, n), n + 1))
    }
}

/// The alternative displayed form of the positive-index normalized norm,
/// `(1-abcd)^2 (q,abq,acq,adq,bcq,bdq,cd;q)_n / ((abcd;q)_{2n+1} (abcdq^n;q)_n)`.
/// It disagrees with the `E_1` pairing already at `n = 0`.
pub fn normalized_norm_displayed_positive(p: &Params<Rat>, n: i64) -> Rat {
    let (a, b, c, d, q) = (p.a(), p.b(), p.c(), p.d(), p.q());
    let abcd = p.abcd();
    let poch = |x: Rat, k: i64| rat_pochhammer(&x, &q, k);
    let one_abcd = rat1() - &abcd;
    let top = &one_abcd
        * &one_abcd
        * poch(q.clone(), n)
        * poch(&a * &b * &q, n)
        * poch(&a * &c * &q, n)
        * poch(&a * &d * &q, n)
        * poch(&b * &c * &q, n)
        * poch(&b * &d * &q, n)
        * poch(&c * &d, n);
    top / (poch(abcd.clone(), 2 * n + 1) * poch(&abcd * qp(p, n), n))
}

/// Factor and shifted label of each recursion family: `h_{i,k} = factor * h_{j,k+shift}`.
pub fn recursion(p: &Params<Rat>, family: usize, n: i64) -> Option<(i64, i64, Rat, Shift)> {
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    let abcd = p.abcd();
    let one = rat1();
    let v1 = (&one - &abcd * qp(p, n - 1)) / (&one - qp(p, n + 1));
    let v2 = (&one - &c * &d * qp(p, n - 1)) / (&one - &a * &b * qp(p, n + 1));
    let v3 = (&one - &b * &d * qp(p, n - 1)) / (&one - &a * &c * qp(p, n));
    match family {
        1 => Some((-n, -(n + 1), v1, -Shift::v(1))),
        2 => Some((n + 1, n + 2, v1, -Shift::v(1))),
        3 => Some((-n, -n, v2, Shift::v(2))),
        4 => Some((n + 1, n + 1, v2, Shift::v(2))),
        5 => Some((-n, -n, v3.clone(), Shift::v(3))),
        6 if n >= 1 => Some((n, n, v3, Shift::v(3))),
        _ => None,
    }
}

/// `(E_idx, E_idx)` by quadrature.
pub fn norm_numeric(q: &mut Quadrature, p: &Params<Rat>, idx: i64) -> Result<BigComplex> {
    let e = AWFamily::new(p.clone(), Construction::TriangularEigen).e_parametric(idx);
    q.inner(&e, &e, InnerKind::Round)
}

fn grid_report(q: &mut Quadrature, p: &Params<Rat>, kind: WeightKind, r: CheckReport) -> Result<CheckReport> {
    let cert = q.certificate(p, kind)?;
    let (trunc, _) = q.truncation(p, kind)?;
    Ok(r.with_grid(cert.points, trunc, q.config.digits))
}

/// Quadrature against closed forms, recursions, weight identities and
/// orthogonality for `|n| <= n_max`.
pub fn verify_norms(q: &mut Quadrature, p: &Params<Rat>, n_max: i64) -> Result<SuiteReport> {
    let tol = NormTolerances::for_digits(q.config.digits);
    let digits = q.config.digits;
    let prec = q.bits();
    let ps = p.to_string();
    let mut checks = Vec::new();
    let fam = AWFamily::new(p.clone(), Construction::TriangularEigen);
    let unit = {
        let one = Parametric::constant("1", p.clone(), LaurentPoly::one());
        q.inner(&one, &one, InnerKind::Round)?
    };

    // closed forms, unnormalized and normalized
    for idx in -n_max..=n_max + 1 {
        let h = norm_numeric(q, p, idx)?;
        let closed = norm_closed(p, idx, digits, prec)?;
        let r = CheckReport::numeric(format!("norm_closed/E{idx}"), &ps, h.minus(&closed).log10_abs(), tol.closed);
        checks.push(grid_report(q, p, WeightKind::Delta, r)?);
        let normalized = h.divide(&unit)?;
        let exact = q.complex(&normalized_norm(p, idx));
        let r = CheckReport::numeric(format!("norm_normalized/E{idx}"), &ps, normalized.minus(&exact).log10_abs(), tol.closed);
        checks.push(grid_report(q, p, WeightKind::Delta, r)?);
    }

    // orthogonality
    let mut worst = f64::NEG_INFINITY;
    let span = n_max.max(1);
    for m in -span..=span {
        for n in -span..=span {
            if m != n {
                let v = q.inner(&fam.e_parametric(m), &fam.e_parametric(n), InnerKind::Round)?;
                worst = worst.max(v.log10_abs());
            }
        }
    }
    let r = CheckReport::numeric("orthogonality/E", &ps, worst, tol.orthogonal);
    checks.push(grid_report(q, p, WeightKind::Delta, r)?);
    let mut worst = f64::NEG_INFINITY;
    for m in 0..=span {
        for n in 0..=span {
            if m != n {
                let v = q.inner(&fam.p_parametric(m), &fam.p_parametric(n), InnerKind::AnglePrime)?;
                worst = worst.max(v.log10_abs());
            }
        }
    }
    let r = CheckReport::numeric("orthogonality/P", &ps, worst, tol.orthogonal);
    checks.push(grid_report(q, p, WeightKind::Nabla, r)?);

    // the five recursion families
    for family in 1..=6 {
        for n in 0..=n_max {
            let Some((i, j, factor, h)) = recursion(p, family, n) else { continue };
            let shifted = p.shifted(&h)?;
            let lhs = norm_numeric(q, p, i)?;
            let rhs = norm_numeric(q, &shifted, j)?.times(&q.complex(&factor));
            let name = format!("recursion_{}/n={n}", if family == 6 { "5p".to_string() } else { family.to_string() });
            let r = CheckReport::numeric(name, &ps, lhs.minus(&rhs).log10_abs(), tol.closed);
            checks.push(grid_report(q, &shifted, WeightKind::Delta, r)?);
        }
    }

    // symmetry of the norms under a <-> b and c <-> d
    for (tag, other) in [("ab", p.swap_ab()), ("cd", p.swap_cd())] {
        let mut worst = f64::NEG_INFINITY;
        for idx in -n_max..=n_max + 1 {
            let d = norm_numeric(q, p, idx)?.minus(&norm_numeric(q, &other, idx)?);
            worst = worst.max(d.log10_abs());
        }
        let r = CheckReport::numeric(format!("norm_symmetry/{tag}"), &ps, worst, tol.closed);
        checks.push(grid_report(q, &other, WeightKind::Delta, r)?);
    }

    // the weight identity (1 - az)(1 - aq/z) Delta_k = Delta_{k+eps1}
    {
        let up = p.shifted(&Shift::e(1))?;
        let w0 = WeightEvaluator::new(p, WeightKind::Delta, digits, prec)?;
        let w1 = WeightEvaluator::new(&up, WeightKind::Delta, digits, prec)?;
        let n = w0.numeric().clone();
        let one = unit_like(&n.a);
        let mut worst = f64::NEG_INFINITY;
        for z in circle_points(16, prec) {
            let zi = z.inverse().expect("unit circle");
            let f = one.minus(&n.a.times(&z)).times(&one.minus(&n.a.times(&n.q).times(&zi)));
            let d = f.times(&w0.eval(&z)?).minus(&w1.eval(&z)?);
            worst = worst.max(d.log10_abs());
        }
        let r = CheckReport::numeric("weight_shift/eps1", &ps, worst, tol.pointwise);
        checks.push(r.with_grid(16, w0.truncation, digits));
    }

    // E_1 pairings
    {
        let one = rat1();
        let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
        let abcd = p.abcd();
        let e1 = fam.e_parametric(1);
        let got = q.inner_normalized(&e1, &e1, InnerKind::Round)?;
        let expected = (&one - &a * &c) * (&one - &a * &d) * (&one - &b * &c) * (&one - &b * &d)
            / ((&one - &abcd) * (&one - &abcd));
        let r = CheckReport::numeric("e1_pairing/norm", &ps, got.minus(&q.complex(&expected)).log10_abs(), tol.closed);
        checks.push(grid_report(q, p, WeightKind::Delta, r)?);
        let aux = Parametric::new("(1-az)(1-aq/z)", p.clone(), |p: &Params<Rat>| {
            let one = LaurentPoly::one();
            let l = one.minus(&LaurentPoly::monomial(p.a(), 1));
            let r = one.minus(&LaurentPoly::monomial(p.a() * p.q(), -1));
            Ok(l.times(&r))
        });
        let unit_poly = Parametric::constant("1", p.clone(), LaurentPoly::one());
        let got = q.inner_normalized(&aux, &unit_poly, InnerKind::Round)?;
        let expected = (&one - &a * &b * p.q()) * (&one - &a * &c) * (&one - &a * &d) / (&one - &abcd);
        let r = CheckReport::numeric("e1_pairing/aux", &ps, got.minus(&q.complex(&expected)).log10_abs(), tol.closed);
        checks.push(grid_report(q, p, WeightKind::Delta, r)?);
    }

    // (f, g) = (1 - ab)/2 <f, g>' and symmetry of <., .> on symmetric inputs
    {
        let half = q.complex(&((rat1() - p.a() * p.b()) / Rat::from_integer(2.into())));
        let mut worst_rel = f64::NEG_INFINITY;
        let mut worst_sym = f64::NEG_INFINITY;
        for m in 0..=span {
            for n in 0..=span {
                let (f, g) = (fam.p_parametric(m), fam.p_parametric(n));
                let round = q.inner(&f, &g, InnerKind::Round)?;
                let prime = q.inner(&f, &g, InnerKind::AnglePrime)?;
                worst_rel = worst_rel.max(round.minus(&prime.times(&half)).log10_abs());
            }
        }
        for m in -span..=span {
            for n in -span..=span {
                let (f, g) = (fam.e_parametric(m), fam.e_parametric(n));
                let fg = q.inner(&f, &g, InnerKind::Angle)?;
                let gf = q.inner(&g, &f, InnerKind::Angle)?;
                worst_sym = worst_sym.max(fg.minus(&gf).log10_abs());
            }
        }
        let r = CheckReport::numeric("inner_relation/round_vs_angleprime", &ps, worst_rel, tol.closed);
        checks.push(grid_report(q, p, WeightKind::Delta, r)?);
        let r = CheckReport::numeric("inner_relation/angle_symmetric", &ps, worst_sym, tol.closed);
        checks.push(grid_report(q, p, WeightKind::Nabla, r)?);
    }

    Ok(SuiteReport::new("norms", checks))
}

/// One row of the norm table.
#[derive(Clone, Debug, serde::Serialize)]
pub struct NormRow {
    pub index: i64,
    pub numeric: String,
    pub closed: String,
    pub normalized: String,
    pub normalized_closed: String,
    pub residual: f64,
}

/// `h_{-n}` and `h_{n+1}` for `n <= n_max`, with closed forms.
pub fn norm_table(q: &mut Quadrature, p: &Params<Rat>, n_max: i64, shown_digits: usize) -> Result<Vec<NormRow>> {
    let digits = q.config.digits;
    let prec = q.bits();
    let one = Parametric::constant("1", p.clone(), LaurentPoly::one());
    let unit = q.inner(&one, &one, InnerKind::Round)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for idx in [-n, n + 1] {
            let h = norm_numeric(q, p, idx)?;
            let closed = norm_closed(p, idx, digits, prec)?;
            let exact = normalized_norm(p, idx);
            let normalized = h.divide(&unit)?;
            let residual = h.minus(&closed).log10_abs().max(normalized.minus(&q.complex(&exact)).log10_abs());
            rows.push(NormRow {
                index: idx,
                numeric: h.render(shown_digits),
                closed: closed.render(shown_digits),
                normalized: normalized.render(shown_digits),
                normalized_closed: exact.to_string(),
                residual: crate::report::from_log10(residual),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadConfig;

    #[test]
    fn suite_passes_at_moderate_precision() {
        let mut q = Quadrature::new(QuadConfig::with_digits(40));
        let rep = verify_norms(&mut q, &Params::numeric_default(), 2).unwrap();
        for c in &rep.checks {
            assert!(c.pass, "{} residual {}", c.check, c.residual);
        }
    }

    #[test]
    fn displayed_positive_normalized_form_is_rejected() {
        let p = Params::numeric_default();
        for n in 0..3 {
            assert_ne!(normalized_norm_displayed_positive(&p, n), normalized_norm(&p, n + 1));
        }
        let one = rat1();
        assert_eq!(normalized_norm_displayed_positive(&p, 0), one - p.abcd());
    }

    #[test]
    fn normalized_examples() {
        let p = Params::numeric_default();
        let one = rat1();
        let (a, b, c, d, q) = (p.a(), p.b(), p.c(), p.d(), p.q());
        let abcd = p.abcd();
        let expected = (&one - &q) * (&one - &a * &b * &q) * (&one - &a * &c) * (&one - &a * &d) * (&one - &b * &c)
            * (&one - &b * &d)
            * (&one - &c * &d)
            / ((&one - &abcd) * (&one - &abcd * &q) * (&one - &abcd * &q));
        assert_eq!(normalized_norm(&p, -1), expected);
        assert_eq!(normalized_norm(&p, 0), one);
    }
}
