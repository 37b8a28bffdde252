//! Split a formula into an autarky block and a strictly expanding remainder.

use maxsat_golden::autarky::{
    build_incidence, has_positive_surplus, matching_autarky, maximum_matching,
};
use maxsat_golden::formula::formula_from_dimacs;

fn main() {
    let f = formula_from_dimacs(&[
        (&[1, 2], 1),
        (&[-2, 3], 2),
        (&[4], 1),
        (&[5], 1),
        (&[-4, -5], 1),
    ]);
    let graph = build_incidence(&f);
    let matching = maximum_matching(&graph);
    println!(
        "{} variables, {} clauses, maximum matching {}",
        graph.vars().len(),
        graph.clauses().len(),
        matching.size()
    );
    for (v, c) in matching.pairs(&graph) {
        println!("  {v} -> {c}");
    }

    let d = matching_autarky(&f).unwrap();
    println!(
        "U = {:?}",
        d.vars.iter().map(|v| v.id()).collect::<Vec<_>>()
    );
    println!("beta = {:?}", d.beta.to_dimacs());
    println!("F_U = {}", d.satisfied);
    println!("remainder = {}", d.remainder);
    println!(
        "remainder strictly expanding: {}",
        has_positive_surplus(&d.remainder)
    );
}
