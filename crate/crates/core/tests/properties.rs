mod common;

use maxsat_golden::autarky::{
    has_positive_surplus, is_expanding, matching_autarky, verify_autarky,
};
use maxsat_golden::bounds::improved_lower_bound;
use maxsat_golden::compact_assign::{self, compact_bound};
use maxsat_golden::compactify::{compactify, lift_assignment};
use maxsat_golden::dimacs::{emit_dimacs, parse_dimacs};
use maxsat_golden::formula::{normalize, Assignment, Formula, Literal, Var, Weight};
use maxsat_golden::generate::{generate, Family, GeneratorConfig};
use maxsat_golden::kernel::{
    kernelize_half, kernelize_phi, resolve_half, resolve_phi, KernelConfig,
};
use maxsat_golden::oracle::max_sat_exact;
use maxsat_golden::q5::{floor_mul_surd, floor_phi_times, Q5};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use proptest::prelude::*;

use common::{brute_max_sat, expanding_by_count, strictly_expanding};

fn raw_clauses(max_var: u32, max_clauses: usize) -> impl Strategy<Value = Vec<(Vec<i64>, u64)>> {
    let lit = (1..=max_var as i64, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
    prop::collection::vec(
        (prop::collection::vec(lit, 1..=3), 1u64..=5),
        0..=max_clauses,
    )
}

fn build(raw: &[(Vec<i64>, u64)]) -> Formula {
    normalize(raw.iter().map(|(lits, w)| {
        (
            lits.iter()
                .map(|&l| Literal::from_dimacs(l).unwrap())
                .collect::<Vec<_>>(),
            Weight::from(*w),
        )
    }))
    .unwrap()
    .0
}

fn formula(max_var: u32, max_clauses: usize) -> impl Strategy<Value = Formula> {
    raw_clauses(max_var, max_clauses).prop_map(|raw| build(&raw))
}

fn ucf_formula(max_var: u32, max_clauses: usize) -> impl Strategy<Value = Formula> {
    formula(max_var, max_clauses).prop_map(|f| f.ucf_reduce().0)
}

fn all_assignments(f: &Formula) -> Vec<Assignment> {
    let vars: Vec<Var> = f.vars().iter().copied().collect();
    (0u32..1 << vars.len())
        .map(|bits| {
            vars.iter()
                .enumerate()
                .map(|(i, &v)| (v, bits >> i & 1 == 1))
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn oracle_matches_brute_force(f in formula(7, 12)) {
        let r = max_sat_exact(&f, 24).unwrap();
        prop_assert_eq!(&r.optimum, &brute_max_sat(&f));
        prop_assert_eq!(f.evaluate(&r.witness).unwrap(), r.optimum);
    }

    #[test]
    fn evaluate_splits_total(f in formula(6, 10), bits in any::<u32>()) {
        let a: Assignment = f.vars().iter().enumerate().map(|(i, &v)| (v, bits >> i & 1 == 1)).collect();
        prop_assert_eq!(
            f.evaluate(&a).unwrap() + f.unsatisfied_weight(&a).unwrap(),
            f.total_weight()
        );
    }

    #[test]
    fn normalize_is_idempotent(f in formula(6, 10)) {
        let (g, report) = normalize(f.to_raw()).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert!(report.guaranteed_weight.is_zero());
    }

    #[test]
    fn ucf_reduce_keeps_excess(f in formula(6, 10)) {
        let (g, cancelled) = f.ucf_reduce();
        prop_assert!(g.is_ucf());
        prop_assert_eq!(brute_max_sat(&g) + &cancelled, brute_max_sat(&f));
        prop_assert_eq!(g.total_weight() + &cancelled * 2u32, f.total_weight());
    }

    #[test]
    fn dimacs_round_trip(f in formula(9, 14)) {
        let text = emit_dimacs(&f);
        let (g, _) = parse_dimacs(&text).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(emit_dimacs(&g), text);
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,80}") {
        let _ = parse_dimacs(&text);
        let _ = parse_dimacs(&format!("p wcnf 5 2\n{text}"));
    }

    #[test]
    fn hall_condition(f in formula(7, 8)) {
        prop_assert_eq!(is_expanding(&f), expanding_by_count(&f));
    }

    #[test]
    fn autarky_decomposition(f in formula(8, 12)) {
        let d = matching_autarky(&f).unwrap();
        prop_assert!(verify_autarky(&f, &d.beta));
        prop_assert!(d.satisfied.clauses().all(|(c, _)| c.is_satisfied_by(&d.beta)));
        prop_assert_eq!(d.satisfied.total_weight() + d.remainder.total_weight(), f.total_weight());
        prop_assert!(strictly_expanding(&d.remainder));
        prop_assert!(has_positive_surplus(&d.remainder));
        prop_assert_eq!(
            brute_max_sat(&f),
            d.satisfied.total_weight() + brute_max_sat(&d.remainder)
        );
    }

    #[test]
    fn lift_never_loses_weight(f in ucf_formula(6, 10)) {
        let f = matching_autarky(&f).unwrap().remainder;
        let (compact, lift) = compactify(&f).unwrap();
        prop_assert!(compact.is_compact());
        prop_assert_eq!(compact.num_vars(), f.num_vars());
        prop_assert_eq!(compact.total_weight(), f.total_weight());
        for a in all_assignments(&compact) {
            let lifted = lift_assignment(&lift, compact.vars(), &a).unwrap();
            prop_assert!(f.evaluate(&lifted).unwrap() >= compact.evaluate(&a).unwrap());
        }
    }

    #[test]
    fn compact_search_meets_bound(seed in any::<u64>(), n in 1usize..=9, extra in 0usize..=20) {
        let m = n + extra.min(n * (n - 1) / 2);
        let f = generate(&GeneratorConfig::new(Family::Compact, n, m, 5, seed)).unwrap();
        let out = compact_assign::run(&f).unwrap();
        prop_assert_eq!(f.evaluate(&out.assignment).unwrap(), out.achieved.clone());
        let bound = compact_bound(&f.total_weight(), f.num_vars());
        prop_assert!((Q5::from_weight(&out.achieved) - bound).sign() != Sign::Minus);
        prop_assert!(out.achieved <= brute_max_sat(&f));
        let terminal = out.rounds.iter().flat_map(|r| &r.records).filter(|r| r.is_terminal()).count();
        prop_assert_eq!(terminal, f.num_vars());
    }

    #[test]
    fn improved_bound_is_sound(f in ucf_formula(8, 14)) {
        let cert = improved_lower_bound(&f).unwrap();
        prop_assert_eq!(f.evaluate(&cert.assignment).unwrap(), cert.achieved.clone());
        prop_assert!((Q5::from_weight(&cert.achieved) - &cert.bound).sign() != Sign::Minus);
        prop_assert!(cert.achieved <= brute_max_sat(&f));
    }

    #[test]
    fn kernels_agree_with_oracle(f in formula(7, 10), k in 0u64..=4, budget in prop::sample::select(vec![0usize, 24])) {
        let cfg = KernelConfig { oracle_budget: budget };
        let w = f.total_weight();
        let opt = BigInt::from(brute_max_sat(&f));
        let half = opt >= BigInt::from(&w / 2u32) + k;
        prop_assert_eq!(resolve_half(&kernelize_half(&f, k, &cfg).unwrap(), 24).unwrap(), half);

        let (g, _) = f.ucf_reduce();
        let opt = BigInt::from(brute_max_sat(&g));
        let phi = opt >= BigInt::from(floor_phi_times(&g.total_weight())) + k;
        prop_assert_eq!(resolve_phi(&kernelize_phi(&g, k, &cfg).unwrap(), 24).unwrap(), phi);
    }

    #[test]
    fn q5_sign_matches_float(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        let x = Q5::from_ints(a, b);
        let approx = a as f64 + b as f64 * 5f64.sqrt();
        // a² = 5b² only at zero, so |approx| is bounded away from 0 by ~1/(2·|a|+...).
        if approx.abs() > 1e-6 {
            let expected = if approx > 0.0 { Sign::Plus } else { Sign::Minus };
            prop_assert_eq!(x.sign(), expected);
        } else {
            prop_assert_eq!((a, b), (0, 0));
        }
    }

    #[test]
    fn phi_floor_brackets(w in 0u64..=10_000_000) {
        let w = BigUint::from(w);
        let f = floor_phi_times(&w);
        let phi_w = Q5::phi() * Q5::from_weight(&w);
        prop_assert!((phi_w.clone() - Q5::from_weight(&f)).sign() != Sign::Minus);
        prop_assert!((Q5::from_weight(&(f + 1u32)) - phi_w).sign() == Sign::Plus);
    }

    #[test]
    fn surd_floor_brackets(k in 0u64..=1_000_000, p in 0u64..=10, q in 0u64..=10) {
        let kb = BigUint::from(k);
        let f = floor_mul_surd(p, q, &kb);
        let exact = Q5::from_ints(p as i64, q as i64) * Q5::from_weight(&kb);
        prop_assert!((exact.clone() - Q5::from_weight(&f)).sign() != Sign::Minus);
        prop_assert!((Q5::from_weight(&(f + 1u32)) - exact).sign() == Sign::Plus);
    }

    #[test]
    fn generator_is_deterministic(seed in any::<u64>(), n in 3usize..=12) {
        for family in [Family::Compact, Family::Ucf, Family::General] {
            let cfg = GeneratorConfig::new(family, n, n + 2, 4, seed);
            let f = generate(&cfg).unwrap();
            prop_assert_eq!(&f, &generate(&cfg).unwrap());
            prop_assert_eq!(f.num_clauses(), n + 2);
            match family {
                Family::Compact => prop_assert!(f.is_compact()),
                Family::Ucf => prop_assert!(f.is_ucf()),
                _ => {}
            }
        }
    }
}
