use super::inner::{InnerKind, Quadrature};
use super::weight::nabla_star;
use super::BigComplex;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Parametric};
use crate::matshift::{
    build_named_nonsym, mat_vec, matrix_weight, named_adjoint, v_inverse, v_matrix, v_star, Basis, NamedTag, ScalarMat,
    VecPoly2,
};
use crate::ops::DiffReflOp;
use crate::report::{CheckReport, SuiteReport};
use crate::scalars::{rat, Params, Rat, Scalar, Shift};
use crate::symshift::{adjoint_table, build_fundamental, AdjointKind, Tag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Residual thresholds (`log10`) for the adjoint suite.
#[derive(Clone, Copy, Debug)]
pub struct AdjointTolerances {
    pub pairing: f64,
    pub pointwise: f64,
}

impl AdjointTolerances {
    /// `10^-80` and `10^-60` at 128 digits.
    pub fn for_digits(digits: usize) -> Self {
        let d = digits as f64;
        AdjointTolerances { pairing: -d * 0.625, pointwise: -d * 0.47 }
    }
}

fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Random symmetric polynomial of degree at most `deg`.
pub fn random_symmetric<R: Rng>(rng: &mut R, deg: i64) -> LaurentPoly<Rat> {
    let mut f = LaurentPoly::constant(small_rat(rng));
    for j in 1..=deg {
        f = f.plus(&LaurentPoly::sym(j).scale(&small_rat(rng)));
    }
    f
}

/// Random Laurent polynomial supported in `[-deg, deg]`.
pub fn random_laurent<R: Rng>(rng: &mut R, deg: i64) -> LaurentPoly<Rat> {
    LaurentPoly::from_terms((-deg..=deg).map(|n| (n, small_rat(rng))))
}

fn constant(name: &str, p: &Params<Rat>, f: LaurentPoly<Rat>) -> Parametric<Rat> {
    Parametric::constant(name, p.clone(), f)
}

/// `<S_k f, g>_{k+h}` against `<f, S'_{k+h} g>_k` for a fundamental
/// operator and its tabulated adjoint; returns the worst residual.
pub fn symmetric_adjoint_residual(
    q: &mut Quadrature,
    p: &Params<Rat>,
    tag: Tag,
    which: AdjointKind,
    pairs: &[(LaurentPoly<Rat>, LaurentPoly<Rat>)],
) -> Result<f64> {
    let h = tag.shift();
    let kh = p.shifted(&h)?;
    let kind = match which {
        AdjointKind::Dagger => InnerKind::Angle,
        AdjointKind::Star => InnerKind::AnglePrime,
    };
    let op = build_fundamental(p, tag).op;
    let (partner, pre) = adjoint_table(tag, which);
    let mut worst = f64::NEG_INFINITY;
    for (f, g) in pairs {
        let lhs = q.inner(&constant("Sf", &kh, op.apply(f)?), &constant("g", &kh, g.clone()), kind)?;
        let g0 = g.clone();
        let back = Parametric::new("S'g", p.clone(), move |p: &Params<Rat>| {
            let at = p.shifted(&h)?;
            Ok(build_fundamental(&at, partner).op.apply(&g0)?.scale(&pre.eval(&at)))
        });
        let rhs = q.inner(&constant("f", p, f.clone()), &back, kind)?;
        worst = worst.max(lhs.minus(&rhs).log10_abs());
    }
    Ok(worst)
}

/// `(S_k f, g)_{k+h}` against `(f, S'_{k+h} g)_k` for a named operator;
/// returns the worst residual and the implied prefactor ratio
/// `lhs / (f, S'g)` of the first pair.
pub fn named_adjoint_residual(
    q: &mut Quadrature,
    p: &Params<Rat>,
    tag: NamedTag,
    pairs: &[(LaurentPoly<Rat>, LaurentPoly<Rat>)],
) -> Result<(f64, BigComplex)> {
    let h = tag.shift();
    let kh = p.shifted(&h)?;
    let op = build_named_nonsym(p, tag)?;
    let mut worst = f64::NEG_INFINITY;
    let mut ratio = None;
    for (f, g) in pairs {
        let lhs = q.inner(&constant("Sf", &kh, op.apply(f)?), &constant("g", &kh, g.clone()), InnerKind::Round)?;
        let g0 = g.clone();
        let back = Parametric::new("S'g", p.clone(), move |p: &Params<Rat>| {
            let at = p.shifted(&h)?;
            let (partner, pre) = named_adjoint(tag, &at)?;
            Ok(build_named_nonsym(&at, partner)?.apply(&g0)?.scale(&pre))
        });
        let g1 = g.clone();
        let bare = Parametric::new("S'g", p.clone(), move |p: &Params<Rat>| {
            let at = p.shifted(&h)?;
            let (partner, _) = named_adjoint(tag, &at)?;
            build_named_nonsym(&at, partner)?.apply(&g1)
        });
        let fc = constant("f", p, f.clone());
        let rhs = q.inner(&fc, &back, InnerKind::Round)?;
        if ratio.is_none() {
            let denom = q.inner(&fc, &bare, InnerKind::Round)?;
            ratio = Some(lhs.divide(&denom)?);
        }
        worst = worst.max(lhs.minus(&rhs).log10_abs());
    }
    Ok((worst, ratio.ok_or_else(|| Error::Config("no test pairs".into()))?))
}

type CMat = [[BigComplex; 2]; 2];

fn cmat_from(x: &ScalarMat<Rat>, prec: usize) -> CMat {
    let c = |r: &Rat| BigComplex::from_rat_prec(r, prec);
    [[c(&x[0][0]), c(&x[0][1])], [c(&x[1][0]), c(&x[1][1])]]
}

fn cmat_vec(m: &CMat, v: &[BigComplex; 2]) -> [BigComplex; 2] {
    [
        m[0][0].times(&v[0]).plus(&m[0][1].times(&v[1])),
        m[1][0].times(&v[0]).plus(&m[1][1].times(&v[1])),
    ]
}

fn cmat_mul(x: &CMat, y: &CMat) -> CMat {
    let e = |i: usize, j: usize| x[i][0].times(&y[0][j]).plus(&x[i][1].times(&y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn cmat_inverse(m: &CMat) -> Result<CMat> {
    let det = m[0][0].times(&m[1][1]).minus(&m[0][1].times(&m[1][0]));
    let di = det.inverse().ok_or_else(|| Error::Numeric("singular matrix at a circle point".into()))?;
    Ok([
        [m[1][1].times(&di), m[0][1].negated().times(&di)],
        [m[1][0].negated().times(&di), m[0][0].times(&di)],
    ])
}

fn eval_poly(f: &LaurentPoly<Rat>, z: &BigComplex) -> BigComplex {
    f.map_coeffs(|c| BigComplex::from_rat_prec(c, z.precision())).eval(z)
}

/// `Phi_k(z) = (V_k^*)^T W_k^*(z) / (z - 1/z)` with the Steinberg matrix weight.
pub fn phi_matrix(p: &Params<Rat>, z: &BigComplex, digits: usize) -> Result<CMat> {
    let prec = z.precision();
    let vs = v_star(p);
    let vt = cmat_from(&[[vs[0][0].clone(), vs[1][0].clone()], [vs[0][1].clone(), vs[1][1].clone()]], prec);
    let factor = matrix_weight(Basis::St, &p.star()).factor;
    let zi = z.inverse().ok_or(Error::DivisionByZero)?;
    let ws = nabla_star(p, z, digits)?;
    let scale = ws.divide(&z.minus(&zi))?;
    let w = |i: usize, j: usize| eval_poly(&factor[i][j], &zi).times(&scale);
    Ok(cmat_mul(&vt, &[[w(0, 0), w(0, 1)], [w(1, 0), w(1, 1)]]))
}

/// Pointwise action of a difference operator on a function of `z`.
pub fn apply_pointwise(
    op: &DiffReflOp<Rat>,
    z: &BigComplex,
    f: &dyn Fn(&BigComplex) -> Result<BigComplex>,
) -> Result<BigComplex> {
    let prec = z.precision();
    let conv = |r: &Rat| BigComplex::from_rat_prec(r, prec);
    let s = conv(op.s());
    let zi = z.inverse().ok_or(Error::DivisionByZero)?;
    let mut acc = BigComplex::from_rat_prec(&Rat::from_integer(0.into()), prec);
    for (n, c) in op.plain() {
        let sn = s.pow_i(*n).ok_or(Error::DivisionByZero)?;
        acc = acc.plus(&c.map_coeffs(conv)?.eval(z)?.times(&f(&sn.times(z))?));
    }
    for (n, c) in op.refl() {
        let sn = s.pow_i(*n).ok_or(Error::DivisionByZero)?;
        acc = acc.plus(&c.map_coeffs(conv)?.eval(z)?.times(&f(&sn.times(&zi).inverse().ok_or(Error::DivisionByZero)?)?));
    }
    Ok(acc)
}

/// Both sides of `V_k G^_{-,k+v1} V_{k+v1}^-1 F = -abcd Phi_k^-1 G^_+ Phi_{k+v1} F`
/// at `z`, with `abcd` at label `k`.
pub fn phi_identity_sides(p: &Params<Rat>, f: &VecPoly2<Rat>, z: &BigComplex, digits: usize) -> Result<[[BigComplex; 2]; 2]> {
    let prec = z.precision();
    let up = p.shifted(&Shift::v(1))?;
    // left: exact polynomial side
    let inner = mat_vec(&v_inverse(&up)?, f);
    let g_minus = |j: usize| build_fundamental(&up.at(&crate::matshift::column_label(Basis::St, j)), Tag::Gminus).op;
    let mid = [g_minus(0).apply(&inner[0])?, g_minus(1).apply(&inner[1])?];
    let left = mat_vec(&v_matrix(p), &mid);
    let lhs = [eval_poly(&left[0], z), eval_poly(&left[1], z)];
    // right: pointwise through Phi
    let phi_f = |w: &BigComplex, i: usize| -> Result<BigComplex> {
        let v = cmat_vec(&phi_matrix(&up, w, digits)?, &[eval_poly(&f[0], w), eval_poly(&f[1], w)]);
        Ok(v[i].clone())
    };
    let g_plus = build_fundamental(p, Tag::Gplus).op;
    let mid = [apply_pointwise(&g_plus, z, &|w| phi_f(w, 0))?, apply_pointwise(&g_plus, z, &|w| phi_f(w, 1))?];
    let abcd = BigComplex::from_rat_prec(&p.abcd(), prec).negated();
    let rhs = cmat_vec(&cmat_inverse(&phi_matrix(p, z, digits)?)?, &mid);
    Ok([lhs, [rhs[0].times(&abcd), rhs[1].times(&abcd)]])
}

/// Pairs of random test polynomials.
fn pairs(rng: &mut ChaCha8Rng, deg: i64, count: usize, symmetric: bool) -> Vec<(LaurentPoly<Rat>, LaurentPoly<Rat>)> {
    (0..count)
        .map(|_| {
            if symmetric {
                (random_symmetric(rng, deg), random_symmetric(rng, deg))
            } else {
                (random_laurent(rng, deg), random_laurent(rng, deg))
            }
        })
        .collect()
}

/// Adjoint tables, named adjoints and the `Phi` identity on random inputs.
pub fn verify_adjoints_numeric(q: &mut Quadrature, p: &Params<Rat>, degree: i64, seed: u64) -> Result<SuiteReport> {
    let tol = AdjointTolerances::for_digits(q.config.digits);
    let digits = q.config.digits;
    let ps = p.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let with_grid = |q: &mut Quadrature, r: CheckReport, kind| -> Result<CheckReport> {
        let cert = q.certificate(p, kind)?;
        let (trunc, _) = q.truncation(p, kind)?;
        Ok(r.with_grid(cert.points, trunc, digits))
    };

    let mut tags: Vec<Tag> = Tag::FUNDAMENTAL.to_vec();
    tags.push(Tag::L);
    for which in [AdjointKind::Dagger, AdjointKind::Star] {
        for &tag in &tags {
            let test = pairs(&mut rng, degree, 2, true);
            let res = symmetric_adjoint_residual(q, p, tag, which, &test)?;
            let name = format!("{}/{tag}", if which == AdjointKind::Dagger { "dagger" } else { "star" });
            let r = CheckReport::numeric(name, &ps, res, tol.pairing);
            checks.push(with_grid(q, r, super::WeightKind::Nabla)?);
        }
    }

    for tag in NamedTag::ALL {
        let test = pairs(&mut rng, degree, 2, false);
        let (res, ratio) = named_adjoint_residual(q, p, tag, &test)?;
        let r = CheckReport::numeric(format!("named/{tag}"), &ps, res, tol.pairing)
            .with_detail(format!("implied prefactor {}", ratio.render(20)));
        checks.push(with_grid(q, r, super::WeightKind::Delta)?);
    }

    // G+ kills constants, so both sides vanish for f = g = 1
    {
        let gp = build_named_nonsym(p, NamedTag::Gp)?;
        let one = LaurentPoly::one();
        checks.push(CheckReport::exact("named/Gp_on_constants", &ps, gp.apply(&one)?.is_zero()));
    }

    {
        let prec = q.bits();
        let mut worst = f64::NEG_INFINITY;
        let f: VecPoly2<Rat> = [random_symmetric(&mut rng, degree), random_symmetric(&mut rng, degree)];
        for j in 0..16 {
            let z = BigComplex::root_of_unity(2 * j + 1, 32, prec);
            let [lhs, rhs] = phi_identity_sides(p, &f, &z, digits)?;
            let scale = lhs[0].abs_f64().max(lhs[1].abs_f64()).max(1.0).log10();
            for i in 0..2 {
                worst = worst.max(lhs[i].minus(&rhs[i]).log10_abs() - scale);
            }
        }
        let r = CheckReport::numeric("phi_conjugation/backward", &ps, worst, tol.pointwise).with_grid(16, 0, digits);
        checks.push(r);
    }

    Ok(SuiteReport::new("adjoints", checks))
}
