//! Pullback matrices, their splitting and the characteristic polynomials.

use painleve_dynamics::cohomology::{
    char_poly_v, char_poly_v_closed_form, decompose_check_word, sigma_star_product, PullbackGenerators,
};
use painleve_dynamics::CoxeterWord;

fn main() {
    let c = CoxeterWord::coxeter_element();
    println!("c* ={:?}", sigma_star_product(&c));
    let gens = PullbackGenerators::default();
    for w in [CoxeterWord::eight_loop(), CoxeterWord::pochhammer(), c] {
        let d = decompose_check_word(&gens, &w).unwrap();
        println!("`{w}`: V-block{:?}V-perp scalar {}", d.v_block, d.perp_scalar);
        if w.is_analytically_stable() {
            println!(
                "char poly {} (closed form {})\n",
                char_poly_v(&w).unwrap(),
                char_poly_v_closed_form(&w)
            );
        }
    }
}
