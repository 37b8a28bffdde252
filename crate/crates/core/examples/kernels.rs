//! Kernels above `φ·m` and above `m/2`.

use maxsat_golden::generate::{generate, Family, GeneratorConfig};
use maxsat_golden::kernel::{kernelize_half, kernelize_phi, resolve_phi, KernelConfig, Verdict};

fn main() {
    // Budget 0 disables the built-in exact solve so kernels are emitted.
    let cfg = KernelConfig { oracle_budget: 0 };
    let f = generate(&GeneratorConfig::new(Family::Ucf, 12, 20, 2, 5)).unwrap();
    println!("{} variables, weight {}", f.num_vars(), f.total_weight());
    for k in 0..=4 {
        let out = kernelize_phi(&f, k, &cfg).unwrap();
        let answer = resolve_phi(&out, 24).unwrap();
        match &out.verdict {
            Verdict::Kernel { formula, parameter } => println!(
                "phi  k = {k}: kernel with {} variables, k' = {parameter}; answer {answer}",
                formula.num_vars()
            ),
            v => println!("phi  k = {k}: {v:?} by {:?}", out.rule),
        }
    }
    for k in 0..=4 {
        let out = kernelize_half(&f, k, &cfg).unwrap();
        match &out.verdict {
            Verdict::Kernel { formula, parameter } => println!(
                "half k = {k}: kernel with {} variables and weight {}, k' = {parameter}",
                formula.num_vars(),
                formula.total_weight()
            ),
            v => println!("half k = {k}: {v:?} by {:?}", out.rule),
        }
    }
}
