//! Measures the max/min ratio spreads behind the frozen corollary factors.
//!
//! ```text
//! cargo run --release -p lpsi-core --example calibrate_spreads
//! ```

use std::f64::consts::E;

use lpsi_core::bounds::{corollary_suite, BoundSettings, CorollaryId};
use lpsi_core::PsiFamily;

fn report(label: &str, id: CorollaryId, family: &PsiFamily, s: f64, beta: f64, ns: &[u64]) {
    // an unbounded factor reports the raw spreads without failing
    let settings = BoundSettings { spread_factor: Some(f64::MAX), ..BoundSettings::default() };
    let rows = corollary_suite(id, family, s, beta, ns, &settings).expect("corollary suite");
    println!("{label}  ({id}, {family}, beta = {beta}, n = {}..{})", ns[0], ns[ns.len() - 1]);
    for r in rows.iter().filter(|r| r.id.contains("spread")) {
        println!("    {:<40} {:>10.4}   frozen factor {}", r.id, r.lhs, id.default_spread());
    }
}

fn main() {
    let dyadic: Vec<u64> = (4..=14).map(|e| 1u64 << e).collect();
    let loglog = PsiFamily::log_log(2.0, 1.0, 1.0, 1.72).unwrap();
    report("log-log order, s = 2, gamma = 1", CorollaryId::LogLogOrder, &loglog, 2.0, 0.0, &dyadic);

    let harm = PsiFamily::harmonic_log(2.0, E * E).unwrap();
    let ns: Vec<u64> = (1..=10).map(|e| 1u64 << e).collect();
    for beta in [0.0, 0.5, 1.0] {
        report("harmonic-log order, uniform metric", CorollaryId::HarmonicLogOrder, &harm, f64::INFINITY, beta, &ns);
    }
}
