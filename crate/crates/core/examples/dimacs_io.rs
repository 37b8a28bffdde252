//! Parse a CNF/WCNF file (or a built-in sample) and print its canonical WCNF.
//!
//! cargo run --example dimacs_io -- path/to/file.cnf

use maxsat_golden::dimacs::{emit_dimacs, parse_document};

const SAMPLE: &str =
    "c a small weighted sample\np wcnf 3 5\n2 -1 -2 0\n1 3 1 0\n4 2 0\n1 1 -1 0\n2 -2 -1 0\n";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")),
        None => SAMPLE.to_string(),
    };
    let doc = match parse_document(&text) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("parse error: {e}");
            std::process::exit(1);
        }
    };
    for w in &doc.warnings {
        eprintln!("warning: {w}");
    }
    let (formula, report) = doc.to_formula().expect("parsed clauses normalize");
    eprintln!(
        "{} clauses read, {} after normalization, {} weight set aside",
        doc.clauses.len(),
        formula.num_clauses(),
        report.guaranteed_weight
    );
    print!("{}", emit_dimacs(&formula));
}
