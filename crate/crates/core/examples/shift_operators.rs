//! Symmetric shift operators: their action on `P_m` and their symbols.

use awcalc::families::AWFamily;
use awcalc::families::Construction;
use awcalc::scalars::{rat, Params};
use awcalc::symshift::{build_fundamental, eta, symbol_table, Tag};

fn main() -> awcalc::Result<()> {
    let p = Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9))?;
    let fam = AWFamily::new(p.clone(), Construction::TriangularEigen);
    let p2 = fam.p(2)?;
    for tag in Tag::FUNDAMENTAL {
        let s = build_fundamental(&p, tag);
        let image = s.op.apply(&p2)?;
        let target = AWFamily::new(p.shifted(&s.shift)?, Construction::TriangularEigen);
        let lowered = (0..=3).find(|m| target.p(*m).is_ok_and(|pm| image.scale(&image.coeff(*m).recip()) == pm));
        let symbol_ok = eta(&s.op, &s.shift, &p)?.poly == symbol_table(&p, tag);
        println!("{tag:<3} shift {:<24} P_2 -> multiple of P_{:?} at k+h, symbol matches table: {symbol_ok}", s.shift.to_string(), lowered);
    }
    Ok(())
}
