//! Lyapunov exponents of the eight-loop along real orbits.

use painleve_dynamics::ergodic::{lyapunov, real_seed};
use painleve_dynamics::params::{rh, KappaParams};
use painleve_dynamics::{CoxeterWord, SpectralReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let w = CoxeterWord::eight_loop();
    let theta = rh(&KappaParams::generic());
    let h = SpectralReport::lambda1(&w).unwrap().entropy;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..4 {
        let x = real_seed(&theta, &mut rng).unwrap();
        let e = lyapunov(&w, &x, &theta, 5000, 1);
        println!(
            "L+ {:.5} L- {:.5} sum {:.1e} (log lambda {h:.5}, bound {:.5})",
            e.l_plus,
            e.l_minus,
            e.sum(),
            h / 8.0
        );
    }
}
