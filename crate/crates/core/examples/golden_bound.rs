//! Certified lower bound `φ·w + (1 − φ)·w(F_U) + γ·|V(F \ F_U)|` on a UCF formula.

use maxsat_golden::bounds::improved_lower_bound;
use maxsat_golden::formula::formula_from_dimacs;
use maxsat_golden::oracle::max_sat_exact;

fn main() {
    // (x3 ∨ x4) is an autarky block; x1, x2 form a tight pair.
    let f = formula_from_dimacs(&[(&[3, 4], 1), (&[1], 1), (&[2], 1), (&[-1, -2], 1)]);
    let cert = improved_lower_bound(&f).expect("UCF input");
    println!("formula: {f}");
    println!("bound    = {}  (~{:.4})", cert.bound, cert.bound.to_f64());
    println!("achieved = {}", cert.achieved);
    println!("optimum  = {}", max_sat_exact(&f, 24).unwrap().optimum);
    println!("autarky satisfies weight {}", cert.autarky_weight);
    println!("assignment: {:?}", cert.assignment.to_dimacs());
}
