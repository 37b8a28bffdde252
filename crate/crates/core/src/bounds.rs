//! End-to-end lower bounds with certificates.
//!
//! For an expanding UCF formula, compactify → certified compact search →
//! lift gives an assignment of weight at least `φ·w(C) + γ·|V|`. For an
//! arbitrary UCF formula a matching autarky is split off first; its clauses
//! are all satisfied, which yields
//!
//! ```text
//! sat(F) ≥ φ·w(C) + (1 − φ)·w(F_U) + γ·|V(F \ F_U)|.
//! ```

use std::collections::BTreeSet;

use num_bigint::Sign;
use thiserror::Error;

use crate::autarky::{matching_autarky, AutarkyDecomposition, AutarkyError};
use crate::compact_assign::{self, CompactError, CompactOutcome};
use crate::compactify::{compactify, lift_assignment, CompactifyError, LiftMap};
use crate::formula::{Assignment, Formula, Var, Weight};
use crate::q5::Q5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("formula is not unit-conflict free; apply ucf_reduce first")]
    NotUcf,
    #[error(transparent)]
    Autarky(#[from] AutarkyError),
    #[error(transparent)]
    Compactify(#[from] CompactifyError),
    #[error(transparent)]
    Compact(#[from] CompactError),
    #[error("assignment of weight {achieved} misses the bound {bound}")]
    BoundViolated { achieved: Weight, bound: Q5 },
}

/// Result of the compactify–search–lift route on an expanding UCF formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandingCertificate {
    pub compact: Formula,
    pub lift: LiftMap,
    pub search: CompactOutcome,
    /// Total on the input formula's variables.
    pub assignment: Assignment,
    pub achieved: Weight,
    /// `φ·w(C) + γ·|V|`.
    pub bound: Q5,
}

/// Certified assignment for an expanding UCF formula.
pub fn expanding_lower_bound(formula: &Formula) -> Result<ExpandingCertificate, BoundError> {
    let (compact, lift) = compactify(formula)?;
    let search = compact_assign::run(&compact)?;
    let assignment = lift_assignment(&lift, compact.vars(), &search.assignment)?;
    let achieved = formula.evaluate(&assignment).expect("lift is total on V");
    let bound = compact_assign::compact_bound(&formula.total_weight(), formula.num_vars());
    check(&achieved, &bound)?;
    Ok(ExpandingCertificate {
        compact,
        lift,
        search,
        assignment,
        achieved,
        bound,
    })
}

fn check(achieved: &Weight, bound: &Q5) -> Result<(), BoundError> {
    if (Q5::from_weight(achieved) - bound).sign() == Sign::Minus {
        return Err(BoundError::BoundViolated {
            achieved: achieved.clone(),
            bound: bound.clone(),
        });
    }
    Ok(())
}

/// A certified lower bound on `sat(F)` for a UCF formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub bound: Q5,
    /// Total on the original formula.
    pub assignment: Assignment,
    pub achieved: Weight,
    /// `w(C)`.
    pub total_weight: Weight,
    /// `w(F_U)`, the weight satisfied by the autarky.
    pub autarky_weight: Weight,
    /// `|V \ V(F_U)|`.
    pub vars_outside_autarky: usize,
    /// `|V(F \ F_U)|`, the count the bound actually uses.
    pub remainder_vars: usize,
    pub decomposition: AutarkyDecomposition,
}

impl BoundCertificate {
    /// The weaker form `φ·w(C) + (1 − φ)·w(C′) + γ·|V \ V′|` with `C′ = F_U`.
    pub fn subformula_bound(&self) -> Q5 {
        subformula_bound(
            &self.total_weight,
            &self.autarky_weight,
            self.vars_outside_autarky,
        )
    }
}

/// `φ·w + (1 − φ)·w′ + γ·n`.
pub fn subformula_bound(total: &Weight, autarky: &Weight, vars: usize) -> Q5 {
    Q5::phi() * Q5::from_weight(total)
        + (Q5::one() - Q5::phi()) * Q5::from_weight(autarky)
        + Q5::gamma().scale_int(vars)
}

/// Autarky split, then the expanding route on the remainder.
pub fn improved_lower_bound(formula: &Formula) -> Result<BoundCertificate, BoundError> {
    if !formula.is_ucf() {
        return Err(BoundError::NotUcf);
    }
    let decomposition = matching_autarky(formula)?;
    let rest = expanding_lower_bound(&decomposition.remainder)?;

    let mut assignment = decomposition.beta.clone();
    assignment.extend_from(&rest.assignment);
    // Variables seen only inside F_U but outside U are free.
    for &v in formula.vars() {
        if assignment.get(v).is_none() {
            assignment.set(v, false);
        }
    }
    let achieved = formula.evaluate(&assignment).expect("assignment is total");

    let total_weight = formula.total_weight();
    let autarky_weight = decomposition.satisfied.total_weight();
    let remainder_vars = decomposition.remainder.num_vars();
    let autarky_vars: &BTreeSet<Var> = decomposition.satisfied.vars();
    let vars_outside_autarky = formula.num_vars() - autarky_vars.len();
    let bound = subformula_bound(&total_weight, &autarky_weight, remainder_vars);
    check(&achieved, &bound)?;
    Ok(BoundCertificate {
        bound,
        assignment,
        achieved,
        total_weight,
        autarky_weight,
        vars_outside_autarky,
        remainder_vars,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::formula_from_dimacs;

    #[test]
    fn mixed_formula_bound_is_three() {
        let f = formula_from_dimacs(&[(&[3, 4], 1), (&[1], 1), (&[2], 1), (&[-1, -2], 1)]);
        let cert = improved_lower_bound(&f).unwrap();
        assert_eq!(cert.bound, Q5::from_ints(3, 0));
        assert_eq!(cert.achieved, 3u32.into());
        assert_eq!(cert.autarky_weight, 1u32.into());
        assert_eq!(cert.remainder_vars, 2);
        assert_eq!(cert.vars_outside_autarky, 2);
    }

    #[test]
    fn tight_block() {
        let f = formula_from_dimacs(&[(&[1], 1), (&[2], 1), (&[-1, -2], 1)]);
        let cert = improved_lower_bound(&f).unwrap();
        assert_eq!(cert.bound, Q5::from_ints(2, 0));
        assert_eq!(cert.achieved, 2u32.into());
    }

    #[test]
    fn empty_formula() {
        let cert = improved_lower_bound(&Formula::empty()).unwrap();
        assert!(cert.bound.is_zero());
        assert_eq!(cert.achieved, 0u32.into());
    }

    #[test]
    fn non_ucf_rejected() {
        let f = formula_from_dimacs(&[(&[1], 1), (&[-1], 1)]);
        assert_eq!(improved_lower_bound(&f), Err(BoundError::NotUcf));
    }

    #[test]
    fn expanding_route_on_flipped_input() {
        let f = formula_from_dimacs(&[(&[1, 2], 1), (&[-1], 1), (&[2], 1)]);
        let cert = expanding_lower_bound(&f).unwrap();
        assert_eq!(cert.achieved, 3u32.into());
        assert!(cert.compact.is_compact());
    }
}
