//! sigma_i contracts the line L_i at infinity to the point p_i.

use painleve_dynamics::params::{rh, KappaParams};
use painleve_dynamics::surface::lines::LineSpec;
use painleve_dynamics::surface::projective::{sigma_projective, ProjPoint};

fn main() {
    let theta = rh(&KappaParams::generic());
    for i in 1..=3u8 {
        let p = ProjPoint::coordinate(i);
        let worst = LineSpec::infinity(i)
            .sample(50, 0)
            .iter()
            .map(|x| sigma_projective(i, x, &theta).unwrap().dist(&p))
            .fold(0.0, f64::max);
        println!("sigma{i}(L{i}) -> p{i}: max distance {worst:.1e}");
        for j in (1..=3).filter(|&j| j != i) {
            let q = sigma_projective(i, &ProjPoint::coordinate(j), &theta).unwrap();
            println!("  sigma{i}(p{j}) = {:?}", q.0);
        }
        println!("  sigma{i}(p{i}): {:?}", sigma_projective(i, &p, &theta).err());
    }
}
