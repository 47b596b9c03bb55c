//! Parses words in either alphabet and prints reduced forms and classes.

use painleve_dynamics::word::{canonical_form, classify, coxeter_to_loop, parse_word};

fn main() {
    let inputs = ["g1 g2^-1", "g1 g2^-1 g1^-1 g2", "s2 s1 s2 s3 s2 s1 s2", "g1 g2 g3", "s1 s2 s1 s2"];
    for text in inputs {
        let w = parse_word(text).expect("valid word").to_coxeter();
        let (rep, conj) = canonical_form(&w);
        let as_loop = coxeter_to_loop(&w)
            .map(|l| l.to_string())
            .unwrap_or_else(|_| "(odd length)".into());
        println!(
            "{text}\n  reduced `{w}`, loop `{as_loop}`, representative `{rep}`, conjugator `{conj}`, {}",
            classify(&w)
        );
    }
}
