//! The exact verification suites as the command line runs them, printed
//! as JSON.

use awcalc::cli::{verify_report, RunConfig, Suite};

fn main() -> awcalc::Result<()> {
    let config = RunConfig { seed: 42, relation_degree: 4, family_degree: 4, shift_degree: 4, matrix_degree: 4, ..Default::default() };
    for suite in [Suite::Daha, Suite::Symshift, Suite::Matshift] {
        let report = verify_report(&config, suite)?;
        let s = &report.suites[0];
        println!("{:<9} pass={} checks={}", s.suite, s.pass, s.checks.len());
    }
    let report = verify_report(&config, Suite::Limits)?;
    println!("{}", serde_json::to_string_pretty(&report.suites[0].checks[..2]).expect("serializable"));
    Ok(())
}
