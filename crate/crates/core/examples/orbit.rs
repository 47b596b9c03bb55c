//! A real orbit of the eight-loop written as CSV.

use painleve_dynamics::ergodic::{iterate_orbit, real_seed};
use painleve_dynamics::params::{rh, KappaParams};
use painleve_dynamics::CoxeterWord;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let theta = rh(&KappaParams::generic());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = real_seed(&theta, &mut rng).unwrap();
    let rec = iterate_orbit(&CoxeterWord::eight_loop(), &x, &theta, 200, 10);
    rec.write_csv(std::io::stdout().lock()).unwrap();
}
