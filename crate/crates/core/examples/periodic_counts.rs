//! Exact periodic-point counts from the closed formula.

use painleve_dynamics::{periodic_count, CoxeterWord};

fn main() {
    let words = [
        ("eight-loop", CoxeterWord::eight_loop()),
        ("Pochhammer", CoxeterWord::pochhammer()),
        ("Coxeter", CoxeterWord::coxeter_element()),
    ];
    for (name, w) in words {
        println!("{name}:");
        for n in [1, 2, 3, 5, 10, 20, 40] {
            let c = periodic_count(&w, n).unwrap();
            println!("  N={n:<3} affine {:<30} projective {}", c.affine, c.projective);
        }
    }
}
