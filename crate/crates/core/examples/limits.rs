//! The `q -> 1` limits of the shift operators as differential-reflection
//! operators in the labels `k1..k4`.

use awcalc::speclimit::{build_limit_operator, standard_pairs, verify_specialisation, LimitTag};

fn main() -> awcalc::Result<()> {
    for tag in LimitTag::ALL {
        println!("{tag:<7} -> {}", build_limit_operator(tag));
    }
    let report = verify_specialisation(&standard_pairs(), 6)?;
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).map(|c| c.check.as_str()).collect();
    println!("{} exact limit checks, failing: {failed:?}", report.checks.len());
    Ok(())
}
