//! Case-by-case search on a compact formula, printing each round.

use maxsat_golden::compact_assign::run;
use maxsat_golden::generate::{generate, Family, GeneratorConfig};

fn main() {
    let f = generate(&GeneratorConfig::new(Family::Compact, 8, 16, 4, 3)).unwrap();
    println!("formula: {f}");
    let out = run(&f).unwrap();
    for (i, round) in out.rounds.iter().enumerate() {
        let records: Vec<String> = round
            .records
            .iter()
            .map(|r| format!("{}:{:?}", r.var, r.mechanism))
            .collect();
        println!("round {i}: {:?} -> {}", round.case, records.join(", "));
    }
    println!(
        "achieved {} >= bound {} (~{:.4})",
        out.achieved,
        out.bound,
        out.bound.to_f64()
    );
}
