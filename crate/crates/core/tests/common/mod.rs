//! Brute-force reference checks shared by the integration tests.
#![allow(dead_code)]

use maxsat_golden::formula::{Assignment, Formula, Var, Weight};
use maxsat_golden::generate::{generate, max_clauses, Family, GeneratorConfig};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(variable mask, weight)` per clause, bits in ascending variable order.
fn clause_masks(f: &Formula) -> Vec<(u64, Weight)> {
    let vars: Vec<Var> = f.vars().iter().copied().collect();
    f.clauses()
        .map(|(c, w)| {
            let mask = c
                .vars()
                .fold(0u64, |m, v| m | 1 << vars.binary_search(&v).unwrap());
            (mask, w.clone())
        })
        .collect()
}

/// For every `X ⊆ V` (as a bit mask): `(|X|, #clauses meeting X, w(F_X))`.
fn subset_table(f: &Formula) -> Vec<(u32, usize, Weight)> {
    let n = f.num_vars();
    assert!(n <= 16, "subset enumeration is for small formulas");
    let masks = clause_masks(f);
    (0u64..1 << n)
        .map(|x| {
            let (count, weight) = masks
                .iter()
                .filter(|(m, _)| m & x != 0)
                .fold((0, Weight::zero()), |(c, w), (_, cw)| (c + 1, w + cw));
            (x.count_ones(), count, weight)
        })
        .collect()
}

/// Every `X` meets at least `|X|` clauses (the Hall condition for `B_F`).
pub fn expanding_by_count(f: &Formula) -> bool {
    subset_table(f).iter().all(|(k, c, _)| *c >= *k as usize)
}

/// `|X| ≤ w(F_X)` for every `X`.
pub fn expanding_by_weight(f: &Formula) -> bool {
    subset_table(f)
        .iter()
        .all(|(k, _, w)| *w >= Weight::from(*k))
}

/// `|X| + 1 ≤ w(F_X)` for every non-empty `X`.
pub fn strictly_expanding(f: &Formula) -> bool {
    subset_table(f)
        .iter()
        .skip(1)
        .all(|(k, _, w)| *w > Weight::from(*k))
}

/// Exhaustive optimum, written independently of the crate's oracle.
pub fn brute_max_sat(f: &Formula) -> Weight {
    let vars: Vec<Var> = f.vars().iter().copied().collect();
    assert!(vars.len() <= 20);
    let mut best = Weight::zero();
    for bits in 0u64..1 << vars.len() {
        let a: Assignment = vars
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, bits >> i & 1 == 1))
            .collect();
        let value: Weight = f
            .clauses()
            .filter(|(c, _)| {
                c.literals()
                    .iter()
                    .any(|l| a.get(l.var()) == Some(l.is_positive()))
            })
            .map(|(_, w)| w)
            .sum();
        best = best.max(value);
    }
    best
}

/// Random instance of `family` with `n ∈ 1..=max_n`; random families get up to `2n` clauses.
pub fn random_instance(family: Family, seed: u64, max_n: usize, max_weight: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(1..=max_n);
    let max = max_clauses(family, n).unwrap() as usize;
    let m = match family {
        Family::Compact => rng.gen_range(n..=max),
        _ => rng.gen_range(1..=(2 * n).min(max)),
    };
    generate(&GeneratorConfig::new(family, n, m, max_weight, seed)).unwrap()
}
