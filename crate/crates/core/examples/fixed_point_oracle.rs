//! Numerical periodic points against the closed-form counts.

use painleve_dynamics::ergodic::{count_consistency, FixedPointOptions};
use painleve_dynamics::{CoxeterWord, KappaParams, ParameterSet};

fn main() {
    let params = ParameterSet::Kappa(KappaParams::generic());
    let opts = FixedPointOptions::default();
    for (w, n_max) in [
        (CoxeterWord::eight_loop(), 3),
        (CoxeterWord::pochhammer(), 1),
        (CoxeterWord::coxeter_element(), 2),
    ] {
        for row in count_consistency(&w, &params, n_max, &opts).unwrap() {
            println!(
                "`{w}` N={} found {} / formula {} ({} starts, {:?})",
                row.period, row.found, row.formula, row.starts, row.status
            );
        }
    }
}
