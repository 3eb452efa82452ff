//! The polynomials `E_n` and `P_m`, built two ways and checked against
//! their eigenvalues.

use awcalc::families::{l_eigenvalue, y_eigenvalue, AWFamily, Construction};
use awcalc::scalars::{rat, Params};

fn main() -> awcalc::Result<()> {
    let symbolic = AWFamily::new(Params::symbolic(), Construction::TriangularEigen);
    println!("E_1 (symbolic) = {}", symbolic.e(1)?);

    let p = Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9))?;
    let tri = AWFamily::new(p.clone(), Construction::TriangularEigen);
    let rec = AWFamily::new(p.clone(), Construction::CreationRecursion);
    for n in -2..=3 {
        let e = tri.e(n)?;
        let eigen = tri.daha().y.apply(&e)? == e.scale(&y_eigenvalue(&p, n));
        println!("E_{n:<2} terms={:<2} Y-eigen={eigen} constructions agree={}", e.len(), e == rec.e(n)?);
    }
    for m in 0..=3 {
        let pm = tri.p(m)?;
        let eigen = tri.daha().l.apply(&pm)? == pm.scale(&l_eigenvalue(&p, m));
        println!("P_{m} symmetric={} L-eigen={eigen}", pm.is_symmetric());
    }
    println!("P_1 = {}", tri.p(1)?);
    Ok(())
}
