//! Rewrite an expanding UCF formula into compact form and lift an assignment back.

use maxsat_golden::compact_assign;
use maxsat_golden::compactify::{compactify, lift_assignment};
use maxsat_golden::formula::formula_from_dimacs;

fn main() {
    let f = formula_from_dimacs(&[
        (&[1, 2], 1),
        (&[-1], 1),
        (&[2, -3], 2),
        (&[-1, -2, -3], 1),
        (&[3], 1),
    ]);
    let (compact, lift) = compactify(&f).expect("expanding UCF input");
    println!("input:   {f}");
    println!("compact: {compact}");
    println!(
        "flipped: {:?}",
        lift.flipped.iter().map(|v| v.id()).collect::<Vec<_>>()
    );

    let search = compact_assign::run(&compact).unwrap();
    let lifted = lift_assignment(&lift, compact.vars(), &search.assignment).unwrap();
    println!(
        "compact weight {} -> lifted weight {}",
        search.achieved,
        f.evaluate(&lifted).unwrap()
    );
}
