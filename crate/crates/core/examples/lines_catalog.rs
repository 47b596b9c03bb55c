//! The 27 lines at the default parameters and the exchanges by sigma_i.

use painleve_dynamics::params::{kappa_to_b, KappaParams};
use painleve_dynamics::surface::lines::{line_exchange_report, lines_catalog};

fn main() {
    let b = kappa_to_b(&KappaParams::generic());
    let lines = lines_catalog(&b).unwrap();
    for l in &lines {
        let where_ = if l.at_infinity() { "at infinity" } else { "finite" };
        println!("{:<4} family {} {where_}", l.label.to_string(), l.family);
    }
    for i in 1..=3 {
        for r in line_exchange_report(i, &b).unwrap() {
            println!(
                "sigma{i}: {} -> {} residual {:.1e} (unmapped {:.1e})",
                r.from, r.to, r.image_residual, r.unmapped_residual
            );
        }
    }
}
