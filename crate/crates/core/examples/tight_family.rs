//! The family where the bound is exact: `l` copies of `(x), (y), (¬x ∨ ¬y)`.

use maxsat_golden::bounds::improved_lower_bound;
use maxsat_golden::generate::tight_family;
use maxsat_golden::oracle::max_sat_exact;

fn main() {
    for l in [1, 2, 5, 10] {
        let f = tight_family(l).unwrap();
        let cert = improved_lower_bound(&f).unwrap();
        let optimum = max_sat_exact(&f, 24).unwrap().optimum;
        println!(
            "l = {l:2}: bound {}, achieved {}, optimum {optimum}",
            cert.bound, cert.achieved
        );
    }
}
