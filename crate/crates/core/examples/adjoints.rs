//! Adjoint prefactors checked by quadrature on random polynomial pairs.

use awcalc::quadrature::{verify_adjoints_numeric, QuadConfig, Quadrature};
use awcalc::scalars::Params;

fn main() -> awcalc::Result<()> {
    let mut q = Quadrature::new(QuadConfig::with_digits(40));
    let report = verify_adjoints_numeric(&mut q, &Params::numeric_default(), 2, 7)?;
    for c in &report.checks {
        println!("{:<28} {:>9.1e} < {:>7.0e} {}", c.check, c.residual, c.tolerance, c.detail.as_deref().unwrap_or(""));
    }
    println!("all passed: {}", report.pass);
    Ok(())
}
