//! Dynamical degrees and entropies for a few standard words.

use painleve_dynamics::word::parse_word;
use painleve_dynamics::SpectralReport;

fn main() {
    for text in ["g1 g2^-1", "g1 g2^-1 g1^-1 g2", "s1 s2 s3", "s1 s2 s3 s1 s2 s3", "g1", "g1 g2 g1^-1 g3^-1"] {
        let w = parse_word(text).unwrap().to_coxeter();
        let r = SpectralReport::lambda1(&w).unwrap();
        println!(
            "{text:<20} n={:<3} alpha={:<5} lambda={:<22} h={:.15}",
            r.n, r.alpha, r.surd, r.entropy
        );
    }
}
