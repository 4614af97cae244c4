//! Print each congruence's axioms and test them on random closed instances.
use hmalab::decide::{axiom_soundness_suite, tables, OracleConfig};
use hmalab::normalize::Congruence;

fn main() {
    for table in tables() {
        println!("{}", table.name);
        for ax in table.axioms {
            println!("  {:<16} {} = {}", ax.name, ax.lhs, ax.rhs);
        }
    }
    let config = OracleConfig::default();
    for k in Congruence::ALL {
        let report = axiom_soundness_suite(k, 50, 7, &config).expect("within the guard");
        let failed: usize = report.rows.iter().map(|r| r.failed).sum();
        println!("{k}: {} laws x 50 instances, {failed} failures", report.rows.len());
    }
}
