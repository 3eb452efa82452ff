//! Verification suites over exact rational parameters, reported in the
//! shared [`SuiteReport`] shape.

use crate::daha::DahaGens;
use crate::error::Result;
use crate::families::{l_eigenvalue, nlo_coefficients, y_eigenvalue, AWFamily, Construction};
use crate::laurent::{leading_term, LaurentPoly, MonomialOrder};
use crate::matshift::{
    basis_decompose, build_named_nonsym, conjugated_st_weight, descend_diagnostics, matrix_family_relation, matrix_weight,
    matrix_y_identity_check, rodrigues_e, verify_named_action, verify_named_restrictions, Basis, MatOp2, NamedTag,
};
use crate::ops::DiffReflOp;
use crate::report::{CheckReport, SuiteReport};
use crate::scalars::{rat, Params, Rat, SampleSpec, Scalar, Shift};
use crate::symshift::{
    build_fundamental, commutes_up_to_q_power, eta, family, hc_conjugation_holds, symbol_table, verify_shift_action, Symbol,
    Tag,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent generic rational samples drawn from `seed`.
pub fn rational_samples(seed: u64, count: usize) -> Result<Vec<Params<Rat>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = SampleSpec { lo: 2, hi: 29, ..SampleSpec::default() };
    (0..count).map(|_| Params::sample(&mut rng, spec)).collect()
}

/// Passes when `failure` is `None`; otherwise names the first failure.
fn verdict(check: String, params: &str, failure: Option<String>) -> CheckReport {
    match failure {
        None => CheckReport::exact(check, params, true),
        Some(why) => CheckReport::exact(check, params, false).with_detail(why),
    }
}

fn first_nonzero(op: &DiffReflOp<Rat>, n_max: i64) -> Result<Option<String>> {
    for n in -n_max..=n_max {
        if !op.apply(&LaurentPoly::z(n))?.is_zero() {
            return Ok(Some(format!("nonzero on z^{n}")));
        }
    }
    Ok(None)
}

fn first_false(items: impl IntoIterator<Item = (String, bool)>) -> Option<String> {
    items.into_iter().find(|(_, ok)| !ok).map(|(name, _)| name)
}

/// The four Hecke relations of `T0`, `T1`, `T0 Z^-1` and `T1 Z` on `z^n`,
/// `|n| <= n_max`, at every sample.
pub fn daha_relation_checks(samples: &[Params<Rat>], n_max: i64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (i, p) in samples.iter().enumerate() {
        let ps = p.to_string();
        let d = DahaGens::new(p);
        let s = p.s.clone();
        let c = |x: Rat| DiffReflOp::scalar(s.clone(), x);
        let inv = |x: &Rat| x.inverse().expect("generators are units");
        let hecke = |t: &DiffReflOp<Rat>, u: &Rat, v: &Rat| t.minus(&c(u.clone())).compose(&t.plus(&c(v.clone())));
        let t0z = d.t0.compose(&d.zinv);
        let t1z = d.t1.compose(&d.z);
        let si = inv(&s);
        let rels = [
            ("T0", hecke(&d.t0, &p.tau0, &inv(&p.tau0))),
            ("T1", hecke(&d.t1, &p.tau1, &inv(&p.tau1))),
            ("T0Zinv", hecke(&t0z, &(inv(&p.tau0t) * &si), &(p.tau0t.clone() * &si))),
            ("T1Z", hecke(&t1z, &inv(&p.tau1t), &p.tau1t)),
        ];
        for (name, op) in rels {
            out.push(verdict(format!("relation/{name}/sample{i}"), &ps, first_nonzero(&op, n_max)?));
        }
    }
    Ok(out)
}

/// Eigen-structure, agreement of the two constructions and the
/// next-to-leading coefficients.
pub fn family_checks(p: &Params<Rat>, n_max: i64) -> Result<Vec<CheckReport>> {
    let ps = p.to_string();
    let tri = AWFamily::new(p.clone(), Construction::TriangularEigen);
    let cre = AWFamily::new(p.clone(), Construction::CreationRecursion);
    let d = tri.daha();
    let mut eig = Vec::new();
    let mut agree = Vec::new();
    let mut lead = Vec::new();
    for n in -n_max..=n_max {
        let e = tri.e(n)?;
        eig.push((format!("E_{n}"), d.y.apply(&e)? == e.scale(&y_eigenvalue(p, n))));
        agree.push((format!("E_{n}"), e == cre.e(n)?));
        lead.push((format!("E_{n}"), leading_term(&e, MonomialOrder::NonSymmetric)? == (n, Rat::one())));
    }
    let mut leig = Vec::new();
    let mut lsym = Vec::new();
    for m in 0..=n_max {
        let pm = tri.p(m)?;
        leig.push((format!("P_{m}"), d.l.apply(&pm)? == pm.scale(&l_eigenvalue(p, m))));
        lsym.push((format!("P_{m}"), pm.is_symmetric()));
    }
    let mut explicit = Vec::new();
    for n in 0..=n_max {
        let f = LaurentPoly::sym(n);
        explicit.push((format!("z^{n}+z^-{n}"), d.l.apply(&f)? == d.y_sum.apply(&f)?));
    }
    let mut nlo_next = Vec::new();
    let mut nlo_hat = Vec::new();
    for n in 0..=n_max {
        let (c, ch) = nlo_coefficients(p, n)?;
        nlo_next.push((format!("n={n}"), cre.e(n + 1)?.coeff(-n) == c));
        if n > 0 {
            nlo_hat.push((format!("n={n}"), cre.e(-n)?.coeff(n) == ch));
        }
    }
    Ok(vec![
        verdict("eigen/Y".into(), &ps, first_false(eig)),
        verdict("eigen/L".into(), &ps, first_false(leig)),
        verdict("eigen/P_symmetric".into(), &ps, first_false(lsym)),
        verdict("eigen/leading_term".into(), &ps, first_false(lead)),
        verdict("construction_agreement".into(), &ps, first_false(agree)),
        verdict("L_explicit_equals_Y_sum".into(), &ps, first_false(explicit)),
        verdict("nlo/c_next".into(), &ps, first_false(nlo_next)),
        verdict("nlo/c_hat".into(), &ps, first_false(nlo_hat)),
    ])
}

/// Relations at every sample and the family checks at the first one.
pub fn verify_daha(samples: &[Params<Rat>], relation_degree: i64, family_degree: i64) -> Result<SuiteReport> {
    let mut checks = daha_relation_checks(samples, relation_degree)?;
    checks.extend(family_checks(&samples[0], family_degree)?);
    Ok(SuiteReport::new("daha", checks))
}

const COMPLEMENTARY: [(Tag, Tag); 6] = [
    (Tag::E12, Tag::E34),
    (Tag::E34, Tag::E12),
    (Tag::E13, Tag::E24),
    (Tag::E24, Tag::E13),
    (Tag::E14, Tag::E23),
    (Tag::E23, Tag::E14),
];

/// Shift actions, symbol table, symbol multiplicativity, commutation,
/// conjugation and the composition identity.
pub fn verify_symshift(p: &Params<Rat>, m_max: i64) -> Result<SuiteReport> {
    let ps = p.to_string();
    let mut checks = Vec::new();
    for tag in Tag::FUNDAMENTAL.into_iter().chain([Tag::L]) {
        let f = build_fundamental(p, tag);
        let rep = verify_shift_action(&f.op, &f.shift, p, m_max)?;
        checks.push(verdict(format!("action/{tag}"), &ps, rep.first_failure.map(|m| format!("P_{m}"))));
        let ok = eta(&f.op, &f.shift, p)?.poly == symbol_table(p, tag);
        checks.push(verdict(format!("eta_table/{tag}"), &ps, (!ok).then(|| "symbol differs".into())));
    }
    let mut mult = Vec::new();
    let mut comm = Vec::new();
    for v in Tag::FUNDAMENTAL {
        for w in Tag::FUNDAMENTAL {
            let op = family::<Rat>(v).compose_graded(&family(w), p)?;
            let hv = v.shift();
            let hw = w.shift();
            let at = p.shifted(&hw)?;
            let left = Symbol::new(hv, symbol_table(&at, v));
            let right = Symbol::new(hw, symbol_table(p, w));
            let expect = Symbol::r_mul(&left, &right, &p.s)?;
            let got = eta(&op, &(hv + hw), p);
            mult.push((format!("{v}.{w}"), matches!(got, Ok(x) if x == expect)));
            if w != v.complement() {
                comm.push((format!("{v}.{w}"), commutes_up_to_q_power(v, w, p, m_max)?));
            }
        }
    }
    checks.push(verdict("eta_multiplicative".into(), &ps, first_false(mult)).with_detail("64 ordered pairs"));
    checks.push(verdict("commutation_exponent".into(), &ps, first_false(comm)));
    let mut conj = Vec::new();
    for v in Tag::FUNDAMENTAL {
        for j in 1..=4 {
            for h in [Shift::v(j), -Shift::v(j)] {
                conj.push((format!("{v} by {h}"), hc_conjugation_holds(v, &h, p)?));
            }
        }
    }
    checks.push(verdict("hc_conjugation".into(), &ps, first_false(conj)));
    let l = crate::daha::build_l_explicit(p);
    for (outer, inner) in COMPLEMENTARY {
        let (i, j) = outer.pair().expect("contiguous tag");
        let (k, m) = inner.pair().expect("contiguous tag");
        let op = family::<Rat>(outer).compose_graded(&family(inner), p)?;
        let constant = -(p.u(k) * p.u(m) / p.q()) - p.u(i) * p.u(j);
        let rhs = l.scale(&p.tau01()).plus(&DiffReflOp::scalar(p.s.clone(), constant));
        checks.push(verdict(format!("composition/{outer}.{inner}"), &ps, (op != rhs).then(|| "operators differ".into())));
    }
    Ok(SuiteReport::new("symshift", checks))
}

/// Named actions and intertwining, descent, the matrix families, the
/// weight similarity, the matrix-`Y` identities, restrictions and Rodrigues.
pub fn verify_matshift(p: &Params<Rat>, n_max: i64) -> Result<SuiteReport> {
    let ps = p.to_string();
    let mut checks = Vec::new();
    let yk = DahaGens::new(p).y;
    for tag in NamedTag::ALL {
        let named = build_named_nonsym(p, tag)?;
        let rows = verify_named_action(&named, -n_max..=n_max + 1)?;
        let neg = rows.iter().filter(|(i, _)| *i <= 0).map(|(i, ok)| (format!("E_{i}"), *ok));
        checks.push(verdict(format!("named_action/{tag}/nonpositive"), &ps, first_false(neg)));
        let pos = rows.iter().filter(|(i, _)| *i > 0).map(|(i, ok)| (format!("E_{i}"), *ok));
        checks.push(verdict(format!("named_action/{tag}/positive"), &ps, first_false(pos)));
        let yh = DahaGens::new(&p.at(&tag.shift())).y;
        let mut inter = Vec::new();
        let mut routes = Vec::new();
        for n in -n_max..=n_max {
            let f = LaurentPoly::z(n);
            inter.push((format!("z^{n}"), named.apply(&yk.apply(&f)?)? == yh.apply(&named.apply(&f)?)?));
            routes.push((format!("z^{n}"), named.apply(&f)? == named.apply_matrix_route(&f)?));
        }
        checks.push(verdict(format!("named_intertwining/{tag}"), &ps, first_false(inter)));
        checks.push(verdict(format!("named_matrix_route/{tag}"), &ps, first_false(routes)));
        let x = MatOp2::diagonal(tag.basis(), p, tag.source())?;
        let r = descend_diagnostics(&x)?;
        checks.push(verdict(format!("descend/{tag}"), &ps, (!r.descends).then(|| format!("{r:?}"))));
    }
    let st = (0..=5).map(|m| Ok((format!("m={m}"), matrix_family_relation(Basis::St, p, m)?))).collect::<Result<Vec<_>>>()?;
    checks.push(verdict("matrix_family/st".into(), &ps, first_false(st)));
    let ko = (1..=5).map(|m| Ok((format!("m={m}"), matrix_family_relation(Basis::Ko, p, m)?))).collect::<Result<Vec<_>>>()?;
    checks.push(verdict("matrix_family/ko".into(), &ps, first_false(ko)));
    checks.push(verdict("weight_similarity/st".into(), &ps, weight_similarity_failure(p)));
    for basis in [Basis::St, Basis::Ko] {
        let r = matrix_y_identity_check(p, basis, n_max)?;
        let fail = r.rows.iter().find(|row| !row.2).map(|row| format!("degree {} component {}", row.0, row.1));
        checks.push(verdict(format!("matrix_y/{basis}"), &ps, fail));
    }
    for r in verify_named_restrictions(p, 4)? {
        checks.push(verdict(format!("restriction/{}", r.name), &ps, (!r.passed).then(|| r.expected.clone())));
    }
    let mut rod = Vec::new();
    for n in 0..=4 {
        let (lo, hi) = rodrigues_e(p, n)?;
        rod.push((format!("E_-{n}"), lo == crate::families::build_e(p, -n, Construction::TriangularEigen)?));
        rod.push((format!("E_{}", n + 1), hi == crate::families::build_e(p, n + 1, Construction::TriangularEigen)?));
    }
    checks.push(verdict("rodrigues".into(), &ps, first_false(rod)));
    let mut round = Vec::new();
    for basis in [Basis::St, Basis::Ko] {
        for n in -n_max..=n_max {
            let f = LaurentPoly::z(n);
            let v = basis_decompose(&f, basis, p)?;
            let ok = v[0].is_symmetric() && v[1].is_symmetric() && crate::matshift::basis_compose(&v, basis, p) == f;
            round.push((format!("{basis} z^{n}"), ok));
        }
    }
    checks.push(verdict("basis_round_trip".into(), &ps, first_false(round)));
    Ok(SuiteReport::new("matshift", checks))
}

/// `V^T W_st V^*` is diagonal with the stated entries, and the determinant
/// of `W_st` is consistent with them.
fn weight_similarity_failure(p: &Params<Rat>) -> Option<String> {
    let (a, b) = (p.a(), p.b());
    let inv = |x: &Rat| x.inverse().expect("unit");
    let pre = (&a - &b) / rat(2, 1);
    let lin = |u: &Rat| LaurentPoly::from_terms([(0, Rat::one()), (1, -u.clone())]);
    let quad = |u: &Rat| lin(u).times(&lin(u).bar());
    let d0 = quad(&a).scale(&(&pre * inv(&a)));
    let d1 = quad(&b).scale(&(&pre * inv(&b)).negated());
    let got = conjugated_st_weight(p);
    if got != [[d0.clone(), LaurentPoly::zero()], [LaurentPoly::zero(), d1.clone()]] {
        return Some("conjugated weight is not the stated diagonal".into());
    }
    let w = matrix_weight(Basis::St, p).factor;
    let det = w[0][0].times(&w[1][1]).minus(&w[0][1].times(&w[1][0]));
    let scale = (inv(&b) - inv(&a)) * (&b - &a);
    (det.scale(&scale) != d0.times(&d1)).then(|| "determinant mismatch".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(rational_samples(42, 3).unwrap(), rational_samples(42, 3).unwrap());
        assert_ne!(rational_samples(42, 1).unwrap(), rational_samples(43, 1).unwrap());
    }

    #[test]
    fn small_suites_pass() {
        let p = rational_samples(5, 1).unwrap().remove(0);
        let d = verify_daha(&rational_samples(5, 2).unwrap(), 3, 3).unwrap();
        assert!(d.pass, "{:?}", d.worst_failure());
        let s = verify_symshift(&p, 3).unwrap();
        assert!(s.pass, "{:?}", s.worst_failure());
        let m = verify_matshift(&p, 3).unwrap();
        assert!(m.pass, "{:?}", m.worst_failure());
    }
}
