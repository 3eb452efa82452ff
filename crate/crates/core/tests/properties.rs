//! Randomised algebraic invariants.

use awcalc::cli::RunConfig;
use awcalc::daha::DahaGens;
use awcalc::families::{AWFamily, Construction};
use awcalc::laurent::{involution_raw, leading_term, ns_rank, ratfunc_apply_division, Involution, LaurentPoly, MonomialOrder, RatFunc};
use awcalc::ops::DiffReflOp;
use awcalc::report::{CheckReport, SuiteReport};
use awcalc::scalars::{rat, GenFrac, Params, Rat, Scalar, Shift};
use awcalc::speclimit::{Jet, KPoly};
use awcalc::suites::rational_samples;
use awcalc::symshift::Symbol;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn unit_rat() -> impl Strategy<Value = Rat> {
    (1i64..=9, 1i64..=6, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn laurent(max_exp: i64) -> impl Strategy<Value = LaurentPoly<Rat>> {
    prop::collection::vec((-max_exp..=max_exp, small_rat()), 0..6).prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent(max_exp: i64) -> impl Strategy<Value = LaurentPoly<Rat>> {
    (laurent(max_exp), -max_exp..=max_exp, unit_rat()).prop_map(|(f, n, c)| {
        let g = f.plus(&LaurentPoly::monomial(c.clone(), n));
        if g.is_zero() {
            LaurentPoly::monomial(c, n)
        } else {
            g
        }
    })
}

fn genfrac() -> impl Strategy<Value = GenFrac> {
    let mono = (small_rat(), prop::array::uniform5(-2i32..=2)).prop_map(|(c, e)| GenFrac::monomial(c, e));
    let den = (unit_rat(), prop::array::uniform5(-1i32..=1)).prop_map(|(c, e)| GenFrac::one().plus(&GenFrac::monomial(c, e)));
    (prop::collection::vec(mono, 1..4), den).prop_map(|(ms, d)| {
        let num = ms.iter().fold(GenFrac::zero(), |acc, m| acc.plus(m));
        match d.inverse() {
            Some(inv) => num.times(&inv),
            None => num,
        }
    })
}

fn params() -> impl Strategy<Value = Params<Rat>> {
    prop::array::uniform5(unit_rat()).prop_map(|v| {
        let [a, b, c, d, e] = v;
        Params::new(a, b, c, d, e).expect("nonzero generators")
    })
}

fn shift() -> impl Strategy<Value = Shift> {
    prop::array::uniform4(-2i64..=2)
        .prop_map(|n| (1..=4).fold(Shift::zero(), |acc, i| acc + Shift::v(i).scaled(n[i - 1])))
}

fn kpoly() -> impl Strategy<Value = KPoly> {
    (prop::array::uniform4(small_rat()), small_rat()).prop_map(|(c, c0)| KPoly::linear(c, c0))
}

fn jet() -> impl Strategy<Value = Jet> {
    (small_rat(), kpoly()).prop_map(|(v, d)| Jet::new(v, d))
}

/// A random combination of basic-representation operators.
fn operator(p: &Params<Rat>, picks: &[(usize, Rat)]) -> DiffReflOp<Rat> {
    let d = DahaGens::new(p);
    let pool = [&d.t0, &d.t1, &d.z, &d.zinv, &d.t0inv, &d.y];
    picks
        .iter()
        .fold(DiffReflOp::zero(p.s.clone()), |acc, (i, c)| acc.plus(&pool[i % pool.len()].scale(c)))
}

fn picks() -> impl Strategy<Value = Vec<(usize, Rat)>> {
    prop::collection::vec((0usize..6, small_rat()), 1..4)
}

fn ring_axioms<S: Scalar + std::fmt::Debug>(x: &S, y: &S, z: &S) {
    assert_eq!(x.plus(y), y.plus(x));
    assert_eq!(x.times(y), y.times(x));
    assert_eq!(x.plus(y).plus(z), x.plus(&y.plus(z)));
    assert_eq!(x.times(y).times(z), x.times(&y.times(z)));
    assert_eq!(x.times(&y.plus(z)), x.times(y).plus(&x.times(z)));
    assert!(x.minus(x).is_zero());
    assert_eq!(x.times(&S::one()), x.clone());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generator_fractions_form_a_field(x in genfrac(), y in genfrac(), z in genfrac()) {
        ring_axioms(&x, &y, &z);
        if let Some(inv) = x.inverse() {
            prop_assert!(x.times(&inv).is_one());
        }
    }

    #[test]
    fn jets_form_a_ring_with_derivation(x in jet(), y in jet(), z in jet()) {
        ring_axioms(&x, &y, &z);
        let prod = x.times(&y);
        prop_assert_eq!(&prod.der, &y.der.scale(&x.val).plus(&x.der.scale(&y.val)));
        if let Some(inv) = x.inverse() {
            prop_assert!(x.times(&inv).is_one());
        }
    }

    #[test]
    fn jet_evaluation_differentiates_polynomials(coeffs in prop::collection::vec(small_rat(), 1..6), v in small_rat(), d in kpoly()) {
        let x = Jet::new(v.clone(), d.clone());
        let value = coeffs.iter().rev().fold(Jet::zero(), |acc, c| acc.times(&x).plus(&Jet::from_rat(c)));
        let poly = coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * &v + c);
        let slope = coeffs.iter().enumerate().skip(1).rev()
            .fold(Rat::zero(), |acc, (i, c)| acc * &v + c * Rat::from_integer((i as i64).into()));
        prop_assert_eq!(value.val, poly);
        prop_assert_eq!(value.der, d.scale(&slope));
    }

    #[test]
    fn label_polynomials_form_a_ring(x in kpoly(), y in kpoly(), z in kpoly()) {
        ring_axioms(&x, &y, &z);
    }

    #[test]
    fn shifts_compose_additively(p in params(), h in shift(), g in shift()) {
        prop_assert!(h.admissible());
        let twice = p.shifted(&h).unwrap().shifted(&g).unwrap();
        prop_assert_eq!(twice, p.shifted(&(h + g)).unwrap());
    }

    #[test]
    fn inverting_q_reverses_shifts(p in params(), h in shift()) {
        let lhs = p.shifted(&h).unwrap().star();
        let rhs = p.star().shifted(&h).unwrap();
        prop_assert_eq!(lhs.generators(), rhs.generators());
        prop_assert_eq!(lhs.label, p.star().shifted(&-h).unwrap().label);
    }

    #[test]
    fn half_integral_shifts_are_rejected(i in 1usize..=4) {
        let mut unit = [0; 4];
        unit[i - 1] = 1;
        let h = Shift::halves(unit);
        prop_assert!(!h.admissible());
    }

    #[test]
    fn bar_is_a_ring_involution(f in laurent(4), g in laurent(4)) {
        prop_assert_eq!(f.plus(&g).bar(), f.bar().plus(&g.bar()));
        prop_assert_eq!(f.times(&g).bar(), f.bar().times(&g.bar()));
        prop_assert_eq!(f.bar().bar(), f);
    }

    #[test]
    fn exact_division_round_trip(f in laurent(4), d in nonzero_laurent(2)) {
        prop_assert_eq!(f.times(&d).div_exact(&d).unwrap(), f.clone());
        let r = RatFunc::new(LaurentPoly::one(), vec![d.clone()]).unwrap();
        prop_assert_eq!(ratfunc_apply_division(&f.times(&d), &r).unwrap(), f);
    }

    #[test]
    fn operators_act_linearly(p in params(), a in picks(), b in picks(), f in laurent(3), g in laurent(3), c in small_rat()) {
        let (s, t) = (operator(&p, &a), operator(&p, &b));
        let fg = f.plus(&g.scale(&c));
        prop_assert_eq!(s.apply(&fg).unwrap(), s.apply(&f).unwrap().plus(&s.apply(&g).unwrap().scale(&c)));
        prop_assert_eq!(s.plus(&t).apply(&f).unwrap(), s.apply(&f).unwrap().plus(&t.apply(&f).unwrap()));
    }

    #[test]
    fn composition_is_associative_and_acts_sequentially(p in params(), a in picks(), b in picks(), c in picks(), f in laurent(3)) {
        let (x, y, z) = (operator(&p, &a), operator(&p, &b), operator(&p, &c));
        prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
        prop_assert_eq!(x.compose(&y).apply(&f).unwrap(), x.apply(&y.apply(&f).unwrap()).unwrap());
    }

    #[test]
    fn symbol_products_are_nonzero(f in nonzero_laurent(3), g in nonzero_laurent(3), s in unit_rat(), h in shift(), k in shift()) {
        let prod = Symbol::r_mul(&Symbol::new(h, f), &Symbol::new(k, g), &s).unwrap();
        prop_assert!(!prod.is_zero());
    }

    #[test]
    fn report_order_is_independent_of_insertion(names in prop::collection::vec("[a-z]{1,6}(/[a-z0-9]{1,4})?", 1..12).prop_shuffle()) {
        let checks: Vec<CheckReport> = names.iter().map(|n| CheckReport::exact(n.clone(), "", true)).collect();
        let mut reversed = checks.clone();
        reversed.reverse();
        let (a, b) = (SuiteReport::new("s", checks), SuiteReport::new("s", reversed));
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn later_settings_override_earlier(seed in any::<u64>(), digits in 16usize..400) {
        let mut c = RunConfig::default();
        c.parse_str(&format!("seed = {}\nprecision = {}\n", seed.wrapping_add(1), digits + 1)).unwrap();
        c.set("seed", &seed.to_string()).unwrap();
        c.set("precision", &digits.to_string()).unwrap();
        prop_assert_eq!((c.seed, c.precision), (seed, digits));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_is_a_ring_involution(f in genfrac(), g in genfrac(), n in -3i64..=3) {
        let pf = LaurentPoly::from_terms([(n, f), (0, GenFrac::one())]);
        let pg = LaurentPoly::from_terms([(-n, g)]);
        for which in [Involution::Circ, Involution::Star] {
            let inv = |x: &LaurentPoly<GenFrac>| involution_raw(x, which).unwrap();
            prop_assert_eq!(inv(&pf.times(&pg)), inv(&pf).times(&inv(&pg)));
            prop_assert_eq!(inv(&pf.plus(&pg)), inv(&pf).plus(&inv(&pg)));
            prop_assert_eq!(inv(&inv(&pf)), pf.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn families_are_monic_with_bounded_support(seed in any::<u64>()) {
        let p = rational_samples(seed, 1).unwrap().remove(0);
        let fam = AWFamily::new(p, Construction::TriangularEigen);
        for n in -5..=5 {
            let e = fam.e(n).unwrap();
            prop_assert_eq!(leading_term(&e, MonomialOrder::NonSymmetric).unwrap(), (n, Rat::one()));
            prop_assert!(e.terms().all(|(m, _)| ns_rank(*m) <= ns_rank(n)));
        }
        for m in 0..=5 {
            let pm = fam.p(m).unwrap();
            prop_assert!(pm.is_symmetric());
            prop_assert_eq!(pm.coeff(m), Rat::one());
            prop_assert!(pm.max_exp().unwrap() == m);
        }
    }
}
