//! Norms of the non-symmetric polynomials by high-precision quadrature,
//! next to their closed forms.

use awcalc::quadrature::{norm_table, verify_norms, QuadConfig, Quadrature};
use awcalc::scalars::Params;
use std::time::Instant;

fn main() -> awcalc::Result<()> {
    let p = Params::numeric_default();
    let mut q = Quadrature::new(QuadConfig::default());
    let start = Instant::now();
    println!("parameters: {p}");
    println!("{:>4}  {:>40}  {:>40}  {:>10}", "n", "(E_n, E_n)", "closed form", "residual");
    for row in norm_table(&mut q, &p, 2, 30)? {
        println!("{:>4}  {:>40}  {:>40}  {:>10.1e}", row.index, row.numeric, row.closed, row.residual);
    }
    let report = verify_norms(&mut q, &p, 4)?;
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    println!("{} checks, {} failed, worst residual {:.1e}", report.checks.len(), failed, report.max_residual());
    println!("elapsed {:.1?}", start.elapsed());
    Ok(())
}
