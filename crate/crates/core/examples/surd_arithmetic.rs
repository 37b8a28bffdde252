//! Exact arithmetic in Q(√5) and the floor helpers used by the kernels.

use maxsat_golden::q5::{floor_mul_surd, floor_phi_times, Q5};
use num_bigint::BigUint;

fn main() {
    let phi = Q5::phi();
    let gamma = Q5::gamma();
    println!("phi = {phi} ~ {:.6}", phi.to_f64());
    println!("gamma = {gamma} ~ {:.6}", gamma.to_f64());
    println!("phi^2 + phi = {}", phi.clone() * phi.clone() + phi.clone());
    println!(
        "6 phi + 3 gamma = {}",
        phi.scale_int(6) + gamma.scale_int(3)
    );
    for w in [1u32, 10, 100, 1000] {
        println!("floor(phi * {w}) = {}", floor_phi_times(&BigUint::from(w)));
    }
    for k in [1u32, 2, 3] {
        let k = BigUint::from(k);
        println!(
            "k = {k}: floor((7+3√5)k) = {}, floor((4+2√5)k) = {}",
            floor_mul_surd(7, 3, &k),
            floor_mul_surd(4, 2, &k)
        );
    }
}
