//! Exhaustive MAX-SAT for small formulas.

use num_traits::Zero;
use thiserror::Error;

use crate::formula::{Assignment, Formula, Var, Weight};

/// Default variable budget for [`max_sat_exact`].
pub const DEFAULT_BUDGET: usize = 24;

/// Hard ceiling: assignments are enumerated as `u64` bit masks.
const MAX_VARS: usize = 63;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{vars} variables exceed the exact-search budget of {budget}")]
    OverBudget { vars: usize, budget: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: Weight,
    /// Lexicographically least optimal assignment (ascending variables, FALSE < TRUE).
    pub witness: Assignment,
}

/// Maximum satisfied weight by enumerating all `2^|V|` assignments.
///
/// Refuses formulas with more than `budget` variables.
pub fn max_sat_exact(formula: &Formula, budget: usize) -> Result<OracleResult, OracleError> {
    let vars: Vec<Var> = formula.vars().iter().copied().collect();
    let n = vars.len();
    if n > budget || n > MAX_VARS {
        return Err(OracleError::OverBudget {
            vars: n,
            budget: budget.min(MAX_VARS),
        });
    }
    // Variable i ↦ bit (n − 1 − i): counting up enumerates in lexicographic order.
    let bit = |v: Var| -> u64 {
        let i = vars.binary_search(&v).expect("clause variable in V");
        1u64 << (n - 1 - i)
    };
    let masks: Vec<(u64, u64)> = formula
        .clauses()
        .map(|(c, _)| {
            c.literals().iter().fold((0, 0), |(pos, neg), l| {
                if l.is_positive() {
                    (pos | bit(l.var()), neg)
                } else {
                    (pos, neg | bit(l.var()))
                }
            })
        })
        .collect();
    let satisfied = |a: u64, (pos, neg): (u64, u64)| (a & pos) != 0 || (!a & neg) != 0;

    let total = formula.total_weight();
    let (best_mask, optimum) = if let Ok(total_small) = u64::try_from(&total) {
        let weights: Vec<u64> = formula
            .clauses()
            .map(|(_, w)| u64::try_from(w).expect("bounded by total"))
            .collect();
        let mut best = (0u64, 0u64);
        let mut found = false;
        for a in 0..(1u64 << n) {
            let value: u64 = masks
                .iter()
                .zip(&weights)
                .filter(|(&m, _)| satisfied(a, m))
                .map(|(_, &w)| w)
                .sum();
            if !found || value > best.1 {
                best = (a, value);
                found = true;
                if value == total_small {
                    break;
                }
            }
        }
        (best.0, Weight::from(best.1))
    } else {
        let weights: Vec<&Weight> = formula.clauses().map(|(_, w)| w).collect();
        let mut best: Option<(u64, Weight)> = None;
        for a in 0..(1u64 << n) {
            let value: Weight = masks
                .iter()
                .zip(&weights)
                .filter(|(&m, _)| satisfied(a, m))
                .map(|(_, w)| *w)
                .sum();
            if best.as_ref().is_none_or(|(_, b)| value > *b) {
                let done = value == total;
                best = Some((a, value));
                if done {
                    break;
                }
            }
        }
        best.unwrap_or((0, Weight::zero()))
    };
    let witness = vars
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, best_mask & (1u64 << (n - 1 - i)) != 0))
        .collect();
    Ok(OracleResult { optimum, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::formula_from_dimacs;

    #[test]
    fn conflicting_pair() {
        let r = max_sat_exact(&formula_from_dimacs(&[(&[1], 1), (&[-1], 1)]), 24).unwrap();
        assert_eq!(r.optimum, 1u32.into());
        assert_eq!(r.witness.get(Var::new(1)), Some(false));
    }

    #[test]
    fn triangle_and_tight_family() {
        let t = formula_from_dimacs(&[
            (&[1], 1),
            (&[2], 1),
            (&[3], 1),
            (&[-1, -2], 1),
            (&[-1, -3], 1),
            (&[-2, -3], 1),
        ]);
        assert_eq!(max_sat_exact(&t, 24).unwrap().optimum, 4u32.into());
        let tight2 = formula_from_dimacs(&[
            (&[1], 1),
            (&[2], 1),
            (&[-1, -2], 1),
            (&[3], 1),
            (&[4], 1),
            (&[-3, -4], 1),
        ]);
        assert_eq!(max_sat_exact(&tight2, 24).unwrap().optimum, 4u32.into());
    }

    #[test]
    fn witness_is_lexicographically_least() {
        // Any single TRUE variable is optimal; the least is x2 = TRUE.
        let f = formula_from_dimacs(&[(&[1, 2], 1)]);
        let r = max_sat_exact(&f, 24).unwrap();
        assert_eq!(r.witness.get(Var::new(1)), Some(false));
        assert_eq!(r.witness.get(Var::new(2)), Some(true));
        assert_eq!(f.evaluate(&r.witness).unwrap(), r.optimum);
    }

    #[test]
    fn budget_is_enforced() {
        let f = formula_from_dimacs(&[(&[1, 2, 3], 1)]);
        assert_eq!(
            max_sat_exact(&f, 2),
            Err(OracleError::OverBudget { vars: 3, budget: 2 })
        );
    }

    #[test]
    fn huge_weights() {
        let f = formula_from_dimacs(&[(&[1], u64::MAX), (&[-1], u64::MAX), (&[2], 3)]);
        assert_eq!(
            max_sat_exact(&f, 24).unwrap().optimum,
            Weight::from(u64::MAX) + 3u32
        );
    }

    #[test]
    fn empty_formula() {
        let r = max_sat_exact(&Formula::empty(), 24).unwrap();
        assert!(r.optimum.is_zero());
        assert!(r.witness.is_empty());
    }
}
