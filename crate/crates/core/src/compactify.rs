//! Rewriting an expanding UCF formula into compact form.
//!
//! A compact formula has only clauses `(x)` and `(¬x ∨ ¬y)` and a unit `(x)`
//! for every variable. The rewrite keeps `|V|` and `w(C)`, and every clause of
//! the result descends from an original clause it implies (after renaming
//! flipped variables), so lifting an assignment back never loses weight.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::autarky::{build_incidence, maximum_matching};
use crate::formula::{Assignment, Clause, Formula, FormulaError, Literal, Var, Weight};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompactifyError {
    #[error("formula is not unit-conflict free")]
    NotUcf,
    #[error("formula is not expanding: no matching covers {0}")]
    NotExpanding(Var),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// How to carry assignments of the compact formula back to the original.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftMap {
    /// Variables whose polarity was inverted.
    pub flipped: BTreeSet<Var>,
    /// For each compact clause, the original clauses (and weights) merged into it.
    pub clause_trace: BTreeMap<Clause, Vec<(Clause, Weight)>>,
}

impl LiftMap {
    pub fn traced_weight(&self) -> Weight {
        self.clause_trace.values().flatten().map(|(_, w)| w).sum()
    }
}

/// Transforms `formula` into an equivalent-size compact formula.
///
/// 1. Match every variable `x` to a clause `c_x` (a covering matching).
/// 2. If `x` has neither `(x)` nor `(¬x)`, shrink `c_x` to `x`'s literal.
/// 3. Flip every `x` whose unit clause is `(¬x)`.
/// 4. Keep the lowest positive literal of mixed clauses, and the two lowest
///    variables of all-negative clauses, then merge duplicates.
pub fn compactify(formula: &Formula) -> Result<(Formula, LiftMap), CompactifyError> {
    if !formula.is_ucf() {
        return Err(CompactifyError::NotUcf);
    }
    let graph = build_incidence(formula);
    let matching = maximum_matching(&graph);
    if let Some(v) = (0..graph.vars().len()).find(|&v| matching.clause_of(v).is_none()) {
        return Err(CompactifyError::NotExpanding(graph.vars()[v]));
    }

    // Working copy: (current literals, original clause, weight).
    let mut work: Vec<(Vec<Literal>, Clause, Weight)> = formula
        .clauses()
        .map(|(c, w)| (c.literals().to_vec(), c.clone(), w.clone()))
        .collect();

    let has_unit = |var: Var| {
        formula.contains_clause(&Clause::unit(var.positive()))
            || formula.contains_clause(&Clause::unit(var.negative()))
    };
    for (vi, &var) in graph.vars().iter().enumerate() {
        if has_unit(var) {
            continue;
        }
        let ci = matching.clause_of(vi).expect("covering matching");
        let lit = graph.clauses()[ci]
            .literal_of(var)
            .expect("matched clause contains its variable");
        work[ci].0 = vec![lit];
    }

    let flipped: BTreeSet<Var> = work
        .iter()
        .filter_map(|(lits, _, _)| match lits.as_slice() {
            [l] if l.is_negative() => Some(l.var()),
            _ => None,
        })
        .collect();
    for (lits, _, _) in &mut work {
        for lit in lits.iter_mut() {
            if flipped.contains(&lit.var()) {
                *lit = lit.negate();
            }
        }
        lits.sort();
    }

    let mut merged: BTreeMap<Clause, Weight> = BTreeMap::new();
    let mut clause_trace: BTreeMap<Clause, Vec<(Clause, Weight)>> = BTreeMap::new();
    for (lits, original, weight) in work {
        let kept: Vec<Literal> = if lits.len() == 1 {
            lits
        } else if let Some(&pos) = lits.iter().find(|l| l.is_positive()) {
            vec![pos]
        } else {
            lits.into_iter().take(2).collect()
        };
        let clause = Clause::new(kept).expect("subset of a valid clause");
        *merged.entry(clause.clone()).or_default() += &weight;
        clause_trace
            .entry(clause)
            .or_default()
            .push((original, weight));
    }
    let compact = Formula::from_map(merged);
    debug_assert!(compact.is_compact());
    debug_assert_eq!(compact.num_vars(), formula.num_vars());
    Ok((
        compact,
        LiftMap {
            flipped,
            clause_trace,
        },
    ))
}

/// Undoes the polarity flips: `α(x) = ¬α′(x)` for flipped `x`.
///
/// `compact_assignment` must be total on `vars`, the compact formula's variables.
pub fn lift_assignment(
    lift: &LiftMap,
    vars: &BTreeSet<Var>,
    compact_assignment: &Assignment,
) -> Result<Assignment, CompactifyError> {
    if let Some(v) = compact_assignment.first_missing(vars.iter()) {
        return Err(FormulaError::Unassigned(v).into());
    }
    Ok(compact_assignment
        .iter()
        .map(|(v, b)| (v, b != lift.flipped.contains(&v)))
        .collect())
}
