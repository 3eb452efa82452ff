//! Symbolic parameters, label shifts and the `q`-inversion.

use awcalc::scalars::{Params, Scalar, Shift};

fn main() -> awcalc::Result<()> {
    let p = Params::symbolic();
    println!("a = {}\nb = {}\nc = {}\nd = {}", p.a(), p.b(), p.c(), p.d());
    println!("abcd/q = {}", p.abcd().divide(&p.q())?);

    for i in 1..=4 {
        let h = Shift::v(i);
        let up = p.shifted(&h)?;
        println!("k + v{i}: a = {}, b = {}, c = {}, d = {}", up.a(), up.b(), up.c(), up.d());
    }
    let half = Shift::halves([1, 0, 0, 0]);
    println!("k + e1/2 admissible: {}", half.admissible());
    println!("star: a = {}", p.star().a());
    Ok(())
}
