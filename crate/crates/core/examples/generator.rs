//! Seeded instances from every family.

use maxsat_golden::dimacs::emit_dimacs;
use maxsat_golden::generate::{generate, Family, GeneratorConfig};

fn main() {
    let families = [
        Family::Compact,
        Family::Ucf,
        Family::General,
        Family::Tight(2),
        Family::TriangleBatch,
    ];
    for family in families {
        let f = generate(&GeneratorConfig::new(family, 6, 9, 3, 42)).unwrap();
        println!(
            "c {family}: {} vars, {} clauses, ucf {}, compact {}",
            f.num_vars(),
            f.num_clauses(),
            f.is_ucf(),
            f.is_compact()
        );
        print!("{}", emit_dimacs(&f));
    }
}
