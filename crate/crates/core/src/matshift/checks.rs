use super::cmatrix::{c_matrix, rat_const, rat_inverse, rat_mul, RatMat};
use super::named::{build_named_nonsym, MatOp2, NamedTag};
use super::{basis_compose, basis_decompose, mat_vec, v_inverse, v_matrix, Basis, VecPoly2};
use crate::daha::DahaGens;
use crate::error::{Error, Result};
use crate::families::{build_e, Construction};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::ops::DiffReflOp;
use crate::scalars::{Params, Scalar, Shift};
use crate::symshift::{build_fundamental, family, Tag};
use serde::Serialize;

/// Outcome of the descend test for a matrix operator.
#[derive(Clone, Debug, Serialize)]
pub struct DescendReport {
    pub basis: Basis,
    pub shift: Shift,
    pub symbols: [[String; 2]; 2],
    pub conjugated: [[String; 2]; 2],
    pub off_diagonal_vanishes: bool,
    pub necessary_condition: bool,
    pub eigenvector_condition: Option<bool>,
    pub descends: bool,
}

/// Symbol matrix, with `T -> q^(-1/2) T` in the second `ko` column.
fn symbol_matrix<S: Scalar>(x: &MatOp2<S>) -> Result<[[LaurentPoly<S>; 2]; 2]> {
    let si = x.params.s.inverse().ok_or(Error::DivisionByZero)?;
    let mut out: [[LaurentPoly<S>; 2]; 2] = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let e = &x.entries[i][j];
            if e.is_zero() {
                continue;
            }
            let mut sym = e.eta_symbol(&x.entry_shift(i, j))?.poly;
            if x.basis == Basis::Ko && j == 1 {
                sym = sym.scale_var(&si);
            }
            *slot = sym;
        }
    }
    Ok(out)
}

fn integer_dot(h: &Shift, i: usize) -> Result<i64> {
    let d = h.dot_v(i);
    if d.is_integer() {
        Ok(d.to_integer())
    } else {
        Err(Error::InadmissibleShift(h.to_string()))
    }
}

pub fn descend_diagnostics<S: Scalar>(x: &MatOp2<S>) -> Result<DescendReport> {
    let p = &x.params;
    let h = x.shift;
    let ph = p.at(&h);
    let hv1 = integer_dot(&h, 1)?;
    let eta = symbol_matrix(x)?;
    let eta_r: RatMat<S> = super::mat_map(&eta, |f| RatFunc::poly(f.clone()));
    let framed = match x.basis {
        Basis::St => rat_mul(&rat_mul(&rat_const(&v_matrix(&ph)), &eta_r), &rat_const(&v_inverse(p)?)),
        Basis::Ko => eta_r.clone(),
    };
    let lambda = p.spow(-hv1);
    let c_out = c_matrix(x.basis, &ph)?.rescaled(&lambda);
    let c_in = c_matrix(x.basis, p)?;
    let conj = rat_mul(&rat_mul(&rat_inverse(&c_out.m)?, &framed), &c_in.m);
    let off = conj[0][1].is_zero() && conj[1][0].is_zero();
    // (1 1) eta (1 -1)^T
    let necessary = eta[0][0].plus(&eta[1][0]).minus(&eta[0][1]).minus(&eta[1][1]).is_zero();
    let eigen = if x.basis == Basis::Ko && hv1 < 0 {
        let c1 = c_matrix(x.basis, &ph)?.eval(&lambda)?;
        let ci = rat_inverse(&rat_const(&c1))?;
        let e1 = super::mat_map(&eta, |f| RatFunc::constant(f.eval(&S::one())));
        let m = rat_mul(&ci, &e1);
        Some(m[1][0].is_zero())
    } else {
        None
    };
    let strs = |m: &RatMat<S>| super::mat_map(m, |f| f.to_string());
    Ok(DescendReport {
        basis: x.basis,
        shift: h,
        symbols: strs(&eta_r),
        conjugated: strs(&conj),
        off_diagonal_vanishes: off,
        necessary_condition: necessary,
        eigenvector_condition: eigen,
        descends: off && necessary && eigen.unwrap_or(true),
    })
}

/// Row-by-row comparison of two sides of an operator identity.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    /// `(degree, component, holds)`.
    pub rows: Vec<(i64, usize, bool)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.2)
    }
}

fn graded<S: Scalar>(outer: Tag, inner: Tag, p: &Params<S>) -> Result<DiffReflOp<S>> {
    family::<S>(outer).compose_graded(&family(inner), p)
}

/// Left side: `Y_k` conjugated into the basis (and the `V` frame for `st`).
fn conjugated_y<S: Scalar>(p: &Params<S>, basis: Basis, y: &DiffReflOp<S>, w: &VecPoly2<S>) -> Result<VecPoly2<S>> {
    match basis {
        Basis::St => {
            let f = basis_compose(&mat_vec(&v_matrix(p), w), basis, p);
            Ok(mat_vec(&v_inverse(p)?, &basis_decompose(&y.apply(&f)?, basis, p)?))
        }
        Basis::Ko => basis_decompose(&y.apply(&basis_compose(w, basis, p))?, basis, p),
    }
}

/// The two square roots in each identity, written in the generators with
/// the branch for which the identity holds.
fn roots<S: Scalar>(p: &Params<S>, basis: Basis) -> Result<(S, S)> {
    let (t0, t1, q) = (&p.tau0, &p.tau1, p.q());
    let k = p.tau01();
    match basis {
        // sqrt(ab/(cdq)) = -t1/(q t0), sqrt(abcdq) = q t0 t1
        Basis::St => Ok((t1.divide(&q.times(t0))?.negated(), q.times(&k))),
        // sqrt(abq/cd) = -t1/t0, sqrt(q/abcd) = 1/(t0 t1)
        Basis::Ko => Ok((t1.divide(t0)?.negated(), k.inverse().ok_or(Error::DivisionByZero)?)),
    }
}

/// The right side of the identity, assembled from `L`, constants and
/// graded products of fundamental operators.
struct YBlocks<S> {
    diag: [DiffReflOp<S>; 2],
    upper: DiffReflOp<S>,
    lower: DiffReflOp<S>,
}

fn y_blocks<S: Scalar>(p: &Params<S>, basis: Basis) -> Result<YBlocks<S>> {
    let (a, b, c, d, q) = (p.a(), p.b(), p.c(), p.d(), p.q());
    let si = p.s.inverse().ok_or(Error::DivisionByZero)?;
    let (r1, r2) = roots(p, basis)?;
    let sc = |x: &S| DiffReflOp::scalar(p.s.clone(), x.clone());
    match basis {
        Basis::St => {
            let amb = a.minus(&b);
            let (pe1, pe2) = (p.at(&Shift::e(1)), p.at(&Shift::e(2)));
            let l1 = build_fundamental(&pe1, Tag::L).op;
            let l2 = build_fundamental(&pe2, Tag::L).op;
            let cst = r1.times(&c.plus(&d)).divide(&amb)?;
            let d0 = l1.scale(&si.times(&a).divide(&amb)?).minus(&sc(&cst));
            let d1 = l2.scale(&si.times(&b).divide(&amb)?.negated()).plus(&sc(&cst));
            let off = r2.times(&amb).inverse().ok_or(Error::DivisionByZero)?;
            let upper = graded(Tag::E23, Tag::E24, &pe2)?.scale(&off.times(&a));
            let lower = graded(Tag::E14, Tag::E13, &pe1)?.scale(&off.times(&b).negated());
            Ok(YBlocks { diag: [d0, d1], upper, lower })
        }
        Basis::Ko => {
            let ab = a.times(&b);
            let ab1 = ab.minus(&S::one());
            let pv = p.at(&(Shift::v(1) + Shift::v(2)));
            let l0 = build_fundamental(p, Tag::L).op;
            let l1 = build_fundamental(&pv, Tag::L).op;
            let cst = r1.times(&c.times(&d).divide(&q)?.plus(&S::one())).divide(&ab1)?;
            let d0 = l0.scale(&ab.divide(&ab1)?).minus(&sc(&cst));
            let d1 = l1.scale(&ab1.inverse().ok_or(Error::DivisionByZero)?.negated()).plus(&sc(&cst));
            let off = r2.divide(&ab1)?;
            let upper = graded(Tag::E12, Tag::Gminus, &pv)?.scale(&off.negated());
            let lower = graded(Tag::Gplus, Tag::E34, p)?.scale(&off.times(&ab));
            Ok(YBlocks { diag: [d0, d1], upper, lower })
        }
    }
}

fn apply_blocks<S: Scalar>(b: &YBlocks<S>, w: &VecPoly2<S>) -> Result<VecPoly2<S>> {
    Ok([
        b.diag[0].apply(&w[0])?.plus(&b.upper.apply(&w[1])?),
        b.lower.apply(&w[0])?.plus(&b.diag[1].apply(&w[1])?),
    ])
}

/// `Y_k` in matrix form against its closed-form block decomposition, on
/// the vectors `(P, 0)` and `(0, P)` for `P = z^n + z^-n`, `n <= max_deg`.
pub fn matrix_y_identity_check<S: Scalar>(p: &Params<S>, basis: Basis, max_deg: i64) -> Result<IdentityReport> {
    let y = DahaGens::new(p).y;
    let blocks = y_blocks(p, basis)?;
    let mut rows = Vec::new();
    for n in 0..=max_deg {
        for comp in 0..2 {
            let mut w: VecPoly2<S> = Default::default();
            w[comp] = LaurentPoly::sym(n);
            let lhs = conjugated_y(p, basis, &y, &w)?;
            let rhs = apply_blocks(&blocks, &w)?;
            rows.push((n, comp, lhs == rhs));
        }
    }
    Ok(IdentityReport { name: format!("matrix Y ({basis})"), rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub name: String,
    pub expected: String,
    /// `(degree, holds)`; for non-restricting operators, whether the image
    /// of `z^n + z^-n` is asymmetric.
    pub rows: Vec<(i64, bool)>,
    pub passed: bool,
}

/// Compares `op f` with `prefactor * x f` on `f = z^n + z^-n`.
pub fn restriction_check<S: Scalar>(
    op: &DiffReflOp<S>,
    x: &DiffReflOp<S>,
    prefactor: &S,
    max_deg: i64,
) -> Result<Vec<(i64, bool)>> {
    (0..=max_deg)
        .map(|n| {
            let f = LaurentPoly::sym(n);
            Ok((n, op.apply(&f)? == x.apply(&f)?.scale(prefactor)))
        })
        .collect()
}

/// The restriction behaviour of all six named operators.
pub fn verify_named_restrictions<S: Scalar>(p: &Params<S>, max_deg: i64) -> Result<Vec<RestrictionReport>> {
    let si = p.s.inverse().ok_or(Error::DivisionByZero)?;
    let mut out = Vec::new();
    for tag in NamedTag::ALL {
        let named = build_named_nonsym(p, tag)?;
        let target = match tag {
            NamedTag::Gp => Some((Tag::Gplus, si.clone(), "q^-1/2 G+")),
            NamedTag::E1m => Some((Tag::E34, si.clone(), "q^-1/2 E34")),
            NamedTag::E2p => Some((Tag::E13, S::one(), "E13")),
            NamedTag::E2m => Some((Tag::E24, S::one(), "E24")),
            NamedTag::Gm | NamedTag::E1p => None,
        };
        let report = match target {
            Some((t, c, label)) => {
                let rows = restriction_check(&named.op, &build_fundamental(p, t).op, &c, max_deg)?;
                let passed = rows.iter().all(|r| r.1);
                RestrictionReport { name: tag.to_string(), expected: label.into(), rows, passed }
            }
            None => {
                let rows: Vec<(i64, bool)> = (0..=max_deg)
                    .map(|n| Ok((n, !named.apply(&LaurentPoly::sym(n))?.is_symmetric())))
                    .collect::<Result<_>>()?;
                let passed = rows.iter().any(|r| r.1);
                RestrictionReport { name: tag.to_string(), expected: "no restriction".into(), rows, passed }
            }
        };
        out.push(report);
    }
    Ok(out)
}

/// `(E_-n, E_{n+1})` from iterated backward operators `G-` applied to `1`
/// and to `E_1` at the label `k + n v1`.
pub fn rodrigues_e<S: Scalar>(p: &Params<S>, n: i64) -> Result<(LaurentPoly<S>, LaurentPoly<S>)> {
    if n < 0 {
        return Err(Error::Degenerate(format!("Rodrigues index {n} < 0")));
    }
    let v1 = Shift::v(1);
    let mut poch = S::one();
    let abcd = p.abcd();
    for j in 0..n {
        poch = poch.times(&S::one().minus(&abcd.times(&p.qpow(n + j))));
    }
    if poch.is_zero() {
        return Err(Error::Degenerate("(abcd q^n; q)_n = 0".into()));
    }
    let sign = if n % 2 == 0 { S::one() } else { S::one().negated() };
    let mut low = LaurentPoly::one();
    let mut high = build_e(&p.at(&v1.scaled(n)), 1, Construction::TriangularEigen)?;
    for j in (1..=n).rev() {
        let g = build_named_nonsym(&p.at(&v1.scaled(j)), NamedTag::Gm)?;
        low = g.apply(&low)?;
        high = g.apply(&high)?;
    }
    let pl = sign.times(&p.spow(n * (n - 1) / 2)).divide(&poch)?;
    let ph = sign.times(&p.spow(n * (n + 1) / 2)).divide(&poch)?;
    Ok((low.scale(&pl), high.scale(&ph)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matshift::named::{column_label, lift, verify_named_action};
    use crate::scalars::{rat, Rat};

    fn params() -> Params<Rat> {
        Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9)).unwrap()
    }

    #[test]
    fn named_actions() {
        let p = params();
        for tag in NamedTag::ALL {
            let named = build_named_nonsym(&p, tag).unwrap();
            for (idx, ok) in verify_named_action(&named, -3..=3).unwrap() {
                assert!(ok, "{tag} on E_{idx}");
            }
            for n in -3..=3 {
                let f = LaurentPoly::z(n).plus(&LaurentPoly::z(1 - n).scale(&rat(2, 5)));
                assert_eq!(named.apply(&f).unwrap(), named.apply_matrix_route(&f).unwrap(), "{tag} routes");
            }
        }
    }

    #[test]
    fn shift_definition() {
        let p = params();
        for tag in NamedTag::ALL {
            let named = build_named_nonsym(&p, tag).unwrap();
            let yk = DahaGens::new(&p).y;
            let yh = DahaGens::new(&p.at(&tag.shift())).y;
            for n in -6..=6 {
                let f = LaurentPoly::z(n);
                let lhs = named.apply(&yk.apply(&f).unwrap()).unwrap();
                let rhs = yh.apply(&named.apply(&f).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{tag} on z^{n}");
            }
        }
    }

    #[test]
    fn descend_cases() {
        let p = params();
        for tag in NamedTag::ALL {
            let x = MatOp2::diagonal(tag.basis(), &p, tag.source()).unwrap();
            x.validate().unwrap();
            let r = descend_diagnostics(&x).unwrap();
            assert!(r.descends, "{tag}: {r:?}");
        }
        let mut bad = MatOp2::diagonal(Basis::St, &p, Tag::Gplus).unwrap();
        bad.entries[1][1] = bad.entries[1][1].scale(&rat(2, 1));
        let r = descend_diagnostics(&bad).unwrap();
        assert!(!r.necessary_condition && !r.descends);
        let mut wrong = MatOp2::diagonal(Basis::Ko, &p, Tag::E13).unwrap();
        wrong.entries[1][1] = wrong.entries[1][1].scale(&p.s.inverse().unwrap());
        assert!(!descend_diagnostics(&wrong).unwrap().descends);
    }

    #[test]
    fn non_diagonal_descend() {
        let p = params();
        let (a, b, q) = (p.a(), p.b(), p.q());
        let one = rat(1, 1);
        let at = |j: usize, t: Tag| build_fundamental(&p.at(&column_label(Basis::St, j)), t).op;
        let z = DiffReflOp::zero(p.s.clone());
        for (e1, e2) in [(Tag::E13, Tag::E23), (Tag::E14, Tag::E24)] {
            let lower = MatOp2::new(
                Basis::St,
                &p,
                e2.shift(),
                [
                    [at(0, e2).scale(&(q.clone() * (a.clone() - b.clone()))), z.clone()],
                    [at(0, e1).scale(&(b.clone() * (q.clone() - one.clone()))), at(1, e2).scale(&(a.clone() * q.clone() - b.clone()))],
                ],
            );
            lower.validate().unwrap();
            let r = descend_diagnostics(&lower).unwrap();
            assert!(r.descends, "lower {e1}: {r:?}");
            let upper = MatOp2::new(
                Basis::St,
                &p,
                e1.shift(),
                [
                    [at(0, e1).scale(&(b.clone() - a.clone() / q.clone())), at(1, e2).scale(&(a.clone() * (one.clone() - one.clone() / q.clone())))],
                    [z.clone(), at(1, e1).scale(&(b.clone() - a.clone()))],
                ],
            );
            upper.validate().unwrap();
            let r = descend_diagnostics(&upper).unwrap();
            assert!(r.descends, "upper {e1}: {r:?}");
            let yk = DahaGens::new(&p).y;
            for x in [&lower, &upper] {
                let lifted = lift(x).unwrap();
                let yh = DahaGens::new(&p.at(&x.shift)).y;
                for n in -3..=3 {
                    let f = LaurentPoly::z(n);
                    assert_eq!(lifted.apply(&yk.apply(&f).unwrap()).unwrap(), yh.apply(&lifted.apply(&f).unwrap()).unwrap());
                }
            }
            let mut printed = upper.clone();
            printed.entries[1][1] = printed.entries[1][1].negated();
            assert!(!descend_diagnostics(&printed).unwrap().descends);
        }
    }

    #[test]
    fn y_identities() {
        let p = params();
        for basis in [Basis::St, Basis::Ko] {
            let r = matrix_y_identity_check(&p, basis, 4).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn restrictions() {
        let p = params();
        for r in verify_named_restrictions(&p, 4).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn rodrigues() {
        let p = params();
        for n in 0..=2 {
            let (lo, hi) = rodrigues_e(&p, n).unwrap();
            assert_eq!(lo, build_e(&p, -n, Construction::TriangularEigen).unwrap(), "E_-{n}");
            assert_eq!(hi, build_e(&p, n + 1, Construction::TriangularEigen).unwrap(), "E_{}", n + 1);
        }
    }
}
