//! Growth of `||(sigma^*)^N||^(1/N)` towards the dynamical degree.

use painleve_dynamics::cohomology::spectral_radius_limit_check;
use painleve_dynamics::{CoxeterWord, SpectralReport};

fn main() {
    for w in [CoxeterWord::eight_loop(), CoxeterWord::pochhammer()] {
        let lambda = SpectralReport::lambda1(&w).unwrap().lambda;
        let r = spectral_radius_limit_check(&w, 160);
        println!("`{w}` lambda = {lambda}");
        for n in [1, 5, 10, 20, 40, 80, 160] {
            let v = r[n - 1];
            println!("  N={n:<4} {v:.12} rel {:.2e}", (v - lambda).abs() / lambda);
        }
    }
}
