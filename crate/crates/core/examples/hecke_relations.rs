//! The basic representation: generators act on Laurent polynomials and
//! satisfy the quadratic relations.

use awcalc::daha::DahaGens;
use awcalc::laurent::LaurentPoly;
use awcalc::ops::DiffReflOp;
use awcalc::scalars::{rat, Params, Scalar};

fn main() -> awcalc::Result<()> {
    let p = Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9))?;
    let d = DahaGens::new(&p);
    let f = LaurentPoly::z(2);
    println!("T1 z^2 = {}", d.t1.apply(&f)?);
    println!("T0 z^2 = {}", d.t0.apply(&f)?);
    println!("Y  z^2 = {}", d.y.apply(&f)?);

    let c = |x| DiffReflOp::scalar(p.s.clone(), x);
    let tau1_inv = p.tau1.inverse().expect("unit");
    let hecke = d.t1.minus(&c(p.tau1.clone())).compose(&d.t1.plus(&c(tau1_inv)));
    let vanishes = (-6..=6).all(|n| hecke.apply(&LaurentPoly::z(n)).is_ok_and(|g| g.is_zero()));
    println!("(T1 - t1)(T1 + 1/t1) kills z^n for |n| <= 6: {vanishes}");
    let on_symmetric = (0..=6).all(|n| {
        let f = LaurentPoly::sym(n);
        d.l.apply(&f).ok() == d.y_sum.apply(&f).ok()
    });
    println!("L agrees with Y + 1/Y on symmetric inputs: {on_symmetric}");
    println!("L equals Y + 1/Y as a formal operator: {}", d.l == d.y_sum);
    Ok(())
}
