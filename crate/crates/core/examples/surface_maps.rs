//! The involutions, a word map and the g-maps at a point of the surface.

use num_complex::Complex64;
use painleve_dynamics::params::{rh, KappaParams};
use painleve_dynamics::surface::{f_eval, g_apply, sigma_apply, solve_x3, word_apply, SurfacePoint};
use painleve_dynamics::CoxeterWord;

fn main() {
    let theta = rh(&KappaParams::generic());
    println!("theta = {:?}", theta.0);
    let (x1, x2) = (Complex64::new(0.7, 0.1), Complex64::new(-0.4, 0.3));
    let x = SurfacePoint([x1, x2, solve_x3(x1, x2, &theta)[0]]);
    println!("x = {:?}, |f| = {:.1e}", x.0, f_eval(&x, &theta).norm());
    for i in 1..=3 {
        let y = sigma_apply(i, &x, &theta);
        println!("sigma{i}(x) = {:?}, |f| = {:.1e}", y.0, f_eval(&y, &theta).norm());
    }
    let w = CoxeterWord::eight_loop();
    println!("`{w}`(x) = {:?}", word_apply(&w, &x, &theta).unwrap().0);
    let (y, t1) = g_apply(1, &x, &theta);
    let (z, _) = g_apply(1, &y, &t1);
    let s = word_apply(&CoxeterWord::new(vec![1, 2]).unwrap(), &x, &theta).unwrap();
    println!("g1(g1(x)) - sigma1 sigma2 (x): {:.1e}", z.dist(&s));
}
