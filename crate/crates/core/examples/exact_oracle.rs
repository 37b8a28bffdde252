//! Exhaustive optimum with the lexicographically least witness.

use maxsat_golden::formula::formula_from_dimacs;
use maxsat_golden::oracle::max_sat_exact;

fn main() {
    let triangle = formula_from_dimacs(&[
        (&[1], 1),
        (&[2], 1),
        (&[3], 1),
        (&[-1, -2], 1),
        (&[-1, -3], 1),
        (&[-2, -3], 1),
    ]);
    let r = max_sat_exact(&triangle, 24).unwrap();
    println!("optimum {} witness {:?}", r.optimum, r.witness.to_dimacs());
}
