//! Certified assignments for compact formulas.
//!
//! For a compact formula `F = (V, C)` the search below returns an assignment
//! of weight at least `φ·w(C) + γ·|V|`. Each round picks one of four cases:
//!
//! * **A** some `x` has `w_v(x) ≥ w_v(¬x)`: set `x` TRUE.
//! * **B** some `x` has `(1 − φ)·ε(x) ≥ γ`: set `x` TRUE.
//! * **C** some clause `(¬x ∨ ¬y)` is good, `ε(x) ≥ ε(y)`: set `y` FALSE, then `x` TRUE.
//! * **D** otherwise: the first 2-clause closes a triangle `x, y, z` that is
//!   isolated from the rest; take the best of its eight assignments.
//!
//! After each assignment the formula is simplified (satisfied and falsified
//! clauses removed) and made compact again by folding every new `(¬y)` into
//! `(y)`. Eliminated variables are recorded so the final assignment can be
//! rebuilt for the input formula.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::Sign;
use num_traits::Zero;
use thiserror::Error;

use crate::formula::{Assignment, Clause, Formula, Var, Weight};
use crate::q5::Q5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompactError {
    #[error("formula is not compact")]
    NotCompact,
    #[error("{0} does not occur in the formula")]
    UnknownVar(Var),
    #[error("clause (¬{0} ∨ ¬{1}) is not in the formula")]
    UnknownClause(Var, Var),
    #[error("formula has no variables")]
    NoVariables,
    #[error("case D structure missing around ({0}, {1}, {2})")]
    BrokenTriangle(Var, Var, Var),
    #[error("achieved weight {achieved} is below the certified bound {bound}")]
    BoundViolated { achieved: Weight, bound: Q5 },
}

/// The case chosen for one round, with its witness variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    A {
        x: Var,
    },
    B {
        x: Var,
    },
    /// Good clause `(¬x ∨ ¬y)` with `ε(x) ≥ ε(y)`.
    C {
        x: Var,
        y: Var,
    },
    /// `(¬x ∨ ¬y)` is the first 2-clause and `N(z) = {x, y}`.
    D {
        x: Var,
        y: Var,
        z: Var,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mechanism {
    AssignedTrue,
    AssignedFalse,
    /// Every clause on `y` was replaced by one `(y)`; the new `y` means `¬y`.
    FlipMerged,
    /// `(y)` and `(¬y)` cancelled exactly and `y` occurred nowhere else.
    ZeroedRemoved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EliminationRecord {
    pub var: Var,
    pub mechanism: Mechanism,
}

impl EliminationRecord {
    /// Whether the variable leaves the formula for good with this record.
    pub fn is_terminal(&self) -> bool {
        self.mechanism != Mechanism::FlipMerged
    }
}

/// Working form of a compact formula plus transient `(¬y)` units.
#[derive(Clone, Debug, Default)]
struct State {
    /// `(x)` weights; the key set is `V`. Zero marks a placeholder.
    unit: BTreeMap<Var, Weight>,
    /// `(¬x)` weights, only between simplification steps.
    neg_unit: BTreeMap<Var, Weight>,
    /// Symmetric adjacency of the 2-clauses `(¬x ∨ ¬y)`.
    adj: BTreeMap<Var, BTreeMap<Var, Weight>>,
    /// Total 2-clause weight at each variable.
    neg_sum: BTreeMap<Var, Weight>,
}

impl State {
    fn from_formula(formula: &Formula) -> Result<Self, CompactError> {
        if !formula.is_compact() {
            return Err(CompactError::NotCompact);
        }
        let mut s = State::default();
        for &v in formula.vars() {
            s.adj.insert(v, BTreeMap::new());
            s.neg_sum.insert(v, Weight::zero());
        }
        for (c, w) in formula.clauses() {
            match c.literals() {
                [l] => {
                    s.unit.insert(l.var(), w.clone());
                }
                [a, b] => s.add_edge(a.var(), b.var(), w),
                _ => unreachable!("compact formulas have 1- and 2-clauses only"),
            }
        }
        Ok(s)
    }

    fn to_formula(&self) -> Formula {
        let mut clauses = BTreeMap::new();
        for (&v, w) in &self.unit {
            clauses.insert(Clause::unit(v.positive()), w.clone());
        }
        for (&v, w) in &self.neg_unit {
            clauses.insert(Clause::unit(v.negative()), w.clone());
        }
        for (&x, nbrs) in &self.adj {
            for (&y, w) in nbrs.range(x..) {
                let c = Clause::new([x.negative(), y.negative()]).expect("distinct variables");
                clauses.insert(c, w.clone());
            }
        }
        Formula::from_map(clauses)
    }

    fn add_edge(&mut self, x: Var, y: Var, w: &Weight) {
        *self.adj.get_mut(&x).unwrap().entry(y).or_default() += w;
        *self.adj.get_mut(&y).unwrap().entry(x).or_default() += w;
        *self.neg_sum.get_mut(&x).unwrap() += w;
        *self.neg_sum.get_mut(&y).unwrap() += w;
    }

    /// Deletes every 2-clause on `x`, returning `(neighbour, weight)` pairs.
    fn take_edges(&mut self, x: Var) -> Vec<(Var, Weight)> {
        let nbrs = std::mem::take(self.adj.get_mut(&x).unwrap());
        for (y, w) in &nbrs {
            self.adj.get_mut(y).unwrap().remove(&x);
            *self.neg_sum.get_mut(y).unwrap() -= w;
        }
        *self.neg_sum.get_mut(&x).unwrap() = Weight::zero();
        nbrs.into_iter().collect()
    }

    fn remove_var(&mut self, x: Var) {
        self.take_edges(x);
        self.unit.remove(&x);
        self.neg_unit.remove(&x);
        self.adj.remove(&x);
        self.neg_sum.remove(&x);
    }

    fn contains(&self, x: Var) -> bool {
        self.unit.contains_key(&x)
    }

    fn is_empty(&self) -> bool {
        self.unit.is_empty()
    }

    fn w_pos(&self, x: Var) -> &Weight {
        &self.unit[&x]
    }

    fn w_neg(&self, x: Var) -> Weight {
        let mut total = self.neg_sum[&x].clone();
        if let Some(w) = self.neg_unit.get(&x) {
            total += w;
        }
        total
    }

    fn epsilon(&self, x: Var) -> Q5 {
        epsilon_of(self.w_pos(x), &self.w_neg(x))
    }

    fn edge_weight(&self, x: Var, y: Var) -> Weight {
        self.adj[&x].get(&y).cloned().unwrap_or_default()
    }

    fn edges(&self) -> impl Iterator<Item = (Var, Var)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&x, nbrs)| nbrs.range(x..).map(move |(&y, _)| (x, y)))
    }

    /// Pairs `{a, b}` equal to some `N(z)`; their edges are not good.
    fn bad_pairs(&self) -> BTreeMap<(Var, Var), Var> {
        let mut bad = BTreeMap::new();
        for (&z, nbrs) in &self.adj {
            if nbrs.len() == 2 {
                let mut it = nbrs.keys();
                let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
                bad.entry((a, b)).or_insert(z);
            }
        }
        bad
    }

    fn is_good(&self, x: Var, y: Var) -> bool {
        let key = if x < y { (x, y) } else { (y, x) };
        // Only z ∉ {x, y} can witness; N(z) = {x, y} already excludes them.
        !self.bad_pairs().contains_key(&key)
    }

    fn classify(&self) -> Result<Case, CompactError> {
        if self.is_empty() {
            return Err(CompactError::NoVariables);
        }
        if let Some(&x) = self.unit.keys().find(|&&x| *self.w_pos(x) >= self.w_neg(x)) {
            return Ok(Case::A { x });
        }
        let gamma = Q5::gamma();
        let one_minus_phi = Q5::one() - Q5::phi();
        if let Some(&x) = self
            .unit
            .keys()
            .find(|&&x| (&one_minus_phi * &self.epsilon(x) - &gamma).is_nonnegative())
        {
            return Ok(Case::B { x });
        }
        let bad = self.bad_pairs();
        if let Some((a, b)) = self.edges().find(|e| !bad.contains_key(e)) {
            let (ea, eb) = (self.epsilon(a), self.epsilon(b));
            return Ok(if ea >= eb {
                Case::C { x: a, y: b }
            } else {
                Case::C { x: b, y: a }
            });
        }
        let (x, y) = self
            .edges()
            .next()
            .expect("case A holds whenever there is no 2-clause");
        let z = bad[&(x, y)];
        let closed = |v: Var, a: Var, b: Var| {
            let keys: Vec<Var> = self.adj[&v].keys().copied().collect();
            keys == [a.min(b), a.max(b)]
        };
        if !(closed(x, y, z) && closed(y, x, z) && closed(z, x, y)) {
            return Err(CompactError::BrokenTriangle(x, y, z));
        }
        Ok(Case::D { x, y, z })
    }

    /// Best assignment of the isolated triangle; TRUE is tried before FALSE.
    fn best_triangle(&self, x: Var, y: Var, z: Var) -> [(Var, bool); 3] {
        let (wx, wy, wz) = (self.w_pos(x), self.w_pos(y), self.w_pos(z));
        let (wxy, wxz, wyz) = (
            self.edge_weight(x, y),
            self.edge_weight(x, z),
            self.edge_weight(y, z),
        );
        let mut best: Option<(Weight, [bool; 3])> = None;
        for bits in 0..8u8 {
            let vals = [bits & 4 == 0, bits & 2 == 0, bits & 1 == 0];
            let mut total = Weight::zero();
            for (on, w) in [(vals[0], wx), (vals[1], wy), (vals[2], wz)] {
                if on {
                    total += w;
                }
            }
            for (a, b, w) in [(0, 1, &wxy), (0, 2, &wxz), (1, 2, &wyz)] {
                if !vals[a] || !vals[b] {
                    total += w;
                }
            }
            if best.as_ref().is_none_or(|(bw, _)| total > *bw) {
                best = Some((total, vals));
            }
        }
        let vals = best.unwrap().1;
        [(x, vals[0]), (y, vals[1]), (z, vals[2])]
    }

    /// Assigns `values`, drops decided clauses, and restores compactness.
    fn simplify(&mut self, values: &[(Var, bool)]) -> Vec<EliminationRecord> {
        let assigned: BTreeSet<Var> = values.iter().map(|&(v, _)| v).collect();
        let mut records = Vec::new();
        for &(x, value) in values {
            for (y, w) in self.take_edges(x) {
                if value && !assigned.contains(&y) {
                    *self.neg_unit.entry(y).or_default() += w;
                }
            }
            self.remove_var(x);
            records.push(EliminationRecord {
                var: x,
                mechanism: if value {
                    Mechanism::AssignedTrue
                } else {
                    Mechanism::AssignedFalse
                },
            });
        }

        let pending: Vec<Var> = self.neg_unit.keys().copied().collect();
        for y in pending {
            let neg = self.neg_unit.remove(&y).expect("pending (¬y)");
            let pos = self.unit[&y].clone();
            if neg > pos {
                let total_neg = &neg + &self.neg_sum[&y];
                self.take_edges(y);
                self.unit.insert(y, total_neg - pos);
                records.push(EliminationRecord {
                    var: y,
                    mechanism: Mechanism::FlipMerged,
                });
            } else {
                let rest = pos - neg;
                if rest.is_zero() && self.adj[&y].is_empty() {
                    self.remove_var(y);
                    records.push(EliminationRecord {
                        var: y,
                        mechanism: Mechanism::ZeroedRemoved,
                    });
                } else {
                    self.unit.insert(y, rest);
                }
            }
        }
        records
    }
}

fn epsilon_of(w_pos: &Weight, w_neg: &Weight) -> Q5 {
    Q5::from_weight(w_pos) - Q5::phi() * Q5::from_weight(w_neg)
}

fn require_var(formula: &Formula, x: Var) -> Result<(), CompactError> {
    if formula.vars().contains(&x) {
        Ok(())
    } else {
        Err(CompactError::UnknownVar(x))
    }
}

/// `(w_v(x), w_v(¬x))`: total weight of clauses containing `x`, resp. `¬x`.
pub fn occurrence_weights(formula: &Formula, x: Var) -> Result<(Weight, Weight), CompactError> {
    require_var(formula, x)?;
    let (mut pos, mut neg) = (Weight::zero(), Weight::zero());
    for (c, w) in formula.clauses() {
        match c.literal_of(x) {
            Some(l) if l.is_positive() => pos += w,
            Some(_) => neg += w,
            None => {}
        }
    }
    Ok((pos, neg))
}

/// `ε(x) = w_v(x) − φ·w_v(¬x)`.
pub fn epsilon(formula: &Formula, x: Var) -> Result<Q5, CompactError> {
    let (pos, neg) = occurrence_weights(formula, x)?;
    Ok(epsilon_of(&pos, &neg))
}

/// Whether `(¬x ∨ ¬y)` is good: no other `z` has negative occurrences
/// exactly `{(¬x ∨ ¬z), (¬y ∨ ¬z)}`.
pub fn is_good_clause(formula: &Formula, x: Var, y: Var) -> Result<bool, CompactError> {
    let clause = Clause::new([x.negative(), y.negative()]).ok();
    if !clause.is_some_and(|c| formula.contains_clause(&c)) {
        return Err(CompactError::UnknownClause(x, y));
    }
    Ok(State::from_formula(formula)?.is_good(x, y))
}

/// The first applicable case, with lowest-id (or lowest clause) witnesses.
pub fn classify(formula: &Formula) -> Result<Case, CompactError> {
    State::from_formula(formula)?.classify()
}

/// Applies `values` to a compact formula, then restores compactness.
///
/// Returns the simplified formula and the elimination records, assigned
/// variables first, then the compaction steps in increasing variable order.
pub fn simplify_assign(
    formula: &Formula,
    values: &Assignment,
) -> Result<(Formula, Vec<EliminationRecord>), CompactError> {
    let mut state = State::from_formula(formula)?;
    if let Some(v) = values.vars().find(|&v| !state.contains(v)) {
        return Err(CompactError::UnknownVar(v));
    }
    let values: Vec<(Var, bool)> = values.iter().collect();
    let records = state.simplify(&values);
    Ok((state.to_formula(), records))
}

/// One simplification round of [`run`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub case: Case,
    pub records: Vec<EliminationRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactOutcome {
    /// Total on the input's variables.
    pub assignment: Assignment,
    pub achieved: Weight,
    /// `φ·w(C) + γ·|V|`.
    pub bound: Q5,
    pub rounds: Vec<Round>,
}

/// `φ·w + γ·n`.
pub fn compact_bound(total_weight: &Weight, num_vars: usize) -> Q5 {
    Q5::phi() * Q5::from_weight(total_weight) + Q5::gamma().scale_int(num_vars)
}

/// Finds an assignment of weight at least `φ·w(C) + γ·|V|`.
///
/// Fails with [`CompactError::BoundViolated`] if the certified inequality
/// does not hold on the returned assignment.
pub fn run(formula: &Formula) -> Result<CompactOutcome, CompactError> {
    let mut state = State::from_formula(formula)?;
    let mut rounds: Vec<Round> = Vec::new();
    while !state.is_empty() {
        let case = state.classify()?;
        let mut records = Vec::new();
        match case {
            Case::A { x } | Case::B { x } => records.extend(state.simplify(&[(x, true)])),
            Case::C { x, y } => {
                records.extend(state.simplify(&[(y, false)]));
                records.extend(state.simplify(&[(x, true)]));
            }
            Case::D { x, y, z } => {
                let values = state.best_triangle(x, y, z);
                records.extend(state.simplify(&values));
            }
        }
        rounds.push(Round { case, records });
    }

    let mut assignment = reconstruct(formula, &rounds);
    improve_locally(formula, &mut assignment);
    let achieved = formula
        .evaluate(&assignment)
        .expect("reconstruction is total");
    let bound = compact_bound(&formula.total_weight(), formula.num_vars());
    if (Q5::from_weight(&achieved) - &bound).sign() == Sign::Minus {
        return Err(CompactError::BoundViolated { achieved, bound });
    }
    Ok(CompactOutcome {
        assignment,
        achieved,
        bound,
        rounds,
    })
}

/// Unwinds the rounds in reverse to an assignment of the input formula.
fn reconstruct(formula: &Formula, rounds: &[Round]) -> Assignment {
    let occurrences = occurrence_index(formula);
    let mut alpha = Assignment::new();
    for round in rounds.iter().rev() {
        // Records after a Case C split belong to two sub-steps; walk them
        // backwards so each step sees its successors already decided.
        for rec in round.records.iter().rev() {
            match rec.mechanism {
                Mechanism::AssignedTrue => {
                    alpha.set(rec.var, true);
                }
                Mechanism::AssignedFalse => {
                    alpha.set(rec.var, false);
                }
                Mechanism::FlipMerged => {
                    let later = alpha
                        .get(rec.var)
                        .expect("flip-merged variable decided later");
                    alpha.set(rec.var, !later);
                }
                Mechanism::ZeroedRemoved => {
                    // Assigned variables of this step come before it in the
                    // record list; decide them first.
                    let value = best_local_value(rec.var, &occurrences, &alpha, round);
                    alpha.set(rec.var, value);
                }
            }
        }
    }
    for &v in formula.vars() {
        if alpha.get(v).is_none() {
            alpha.set(v, true);
        }
    }
    alpha
}

fn occurrence_index(formula: &Formula) -> BTreeMap<Var, Vec<(&Clause, &Weight)>> {
    let mut index: BTreeMap<Var, Vec<(&Clause, &Weight)>> = BTreeMap::new();
    for (c, w) in formula.clauses() {
        for v in c.vars() {
            index.entry(v).or_default().push((c, w));
        }
    }
    index
}

/// Value of `y` maximizing the weight of its input clauses already
/// satisfied, given decided variables and the round's own assignments.
fn best_local_value(
    y: Var,
    occurrences: &BTreeMap<Var, Vec<(&Clause, &Weight)>>,
    alpha: &Assignment,
    round: &Round,
) -> bool {
    let mut known = alpha.clone();
    for rec in &round.records {
        match rec.mechanism {
            Mechanism::AssignedTrue => {
                known.set(rec.var, true);
            }
            Mechanism::AssignedFalse => {
                known.set(rec.var, false);
            }
            _ => {}
        }
    }
    let score = |value: bool| -> Weight {
        let mut trial = known.clone();
        trial.set(y, value);
        occurrences
            .get(&y)
            .into_iter()
            .flatten()
            .filter(|(c, _)| c.is_satisfied_by(&trial))
            .map(|(_, w)| *w)
            .sum()
    };
    score(true) >= score(false)
}

/// One pass in variable order, flipping any variable whose flip strictly
/// increases the satisfied weight.
fn improve_locally(formula: &Formula, alpha: &mut Assignment) {
    let occurrences = occurrence_index(formula);
    for (&v, clauses) in &occurrences {
        let current = alpha.get(v).expect("total assignment");
        let sat = |a: &Assignment| -> Weight {
            clauses
                .iter()
                .filter(|(c, _)| c.is_satisfied_by(a))
                .map(|(_, w)| *w)
                .sum()
        };
        let before = sat(alpha);
        alpha.set(v, !current);
        if sat(alpha) <= before {
            alpha.set(v, current);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::formula_from_dimacs;

    fn v(i: u32) -> Var {
        Var::new(i)
    }

    fn w(n: u64) -> Weight {
        Weight::from(n)
    }

    fn triangle() -> Formula {
        formula_from_dimacs(&[
            (&[1], 1),
            (&[2], 1),
            (&[3], 1),
            (&[-1, -2], 1),
            (&[-1, -3], 1),
            (&[-2, -3], 1),
        ])
    }

    fn tight1() -> Formula {
        formula_from_dimacs(&[(&[1], 1), (&[2], 1), (&[-1, -2], 1)])
    }

    #[test]
    fn occurrence_weight_examples() {
        assert_eq!(occurrence_weights(&triangle(), v(1)).unwrap(), (w(1), w(2)));
        let single = formula_from_dimacs(&[(&[1], 5)]);
        assert_eq!(occurrence_weights(&single, v(1)).unwrap(), (w(5), w(0)));
        let heavy = formula_from_dimacs(&[(&[1], 1), (&[2], 1), (&[-1, -2], 3)]);
        assert_eq!(occurrence_weights(&heavy, v(1)).unwrap(), (w(1), w(3)));
        assert_eq!(
            occurrence_weights(&heavy, v(9)),
            Err(CompactError::UnknownVar(v(9)))
        );
    }

    #[test]
    fn epsilon_examples() {
        let e = epsilon(&tight1(), v(1)).unwrap();
        assert_eq!(e, Q5::from_ratios(3, 2, -1, 2));
        assert_eq!(e.sign(), Sign::Plus);
        let e = epsilon(&triangle(), v(1)).unwrap();
        assert_eq!(e, Q5::from_ints(2, -1));
        assert_eq!(e.sign(), Sign::Minus);
        let single = formula_from_dimacs(&[(&[1], 5)]);
        assert_eq!(epsilon(&single, v(1)).unwrap(), Q5::from_ints(5, 0));
    }

    #[test]
    fn good_clause_examples() {
        assert!(!is_good_clause(&triangle(), v(1), v(2)).unwrap());
        assert!(is_good_clause(&tight1(), v(1), v(2)).unwrap());
        let two = formula_from_dimacs(&[
            (&[1], 1),
            (&[2], 1),
            (&[3], 1),
            (&[4], 1),
            (&[-1, -2], 1),
            (&[-3, -4], 1),
        ]);
        assert!(is_good_clause(&two, v(1), v(2)).unwrap());
        assert!(is_good_clause(&two, v(3), v(4)).unwrap());
        assert_eq!(
            is_good_clause(&two, v(1), v(3)),
            Err(CompactError::UnknownClause(v(1), v(3)))
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&tight1()).unwrap(), Case::A { x: v(1) });
        assert_eq!(
            classify(&triangle()).unwrap(),
            Case::D {
                x: v(1),
                y: v(2),
                z: v(3)
            }
        );
        let two = formula_from_dimacs(&[
            (&[1], 1),
            (&[2], 1),
            (&[3], 1),
            (&[4], 1),
            (&[-1, -2], 1),
            (&[-3, -4], 1),
        ]);
        assert_eq!(classify(&two).unwrap(), Case::A { x: v(1) });
        assert_eq!(classify(&Formula::empty()), Err(CompactError::NoVariables));
    }

    #[test]
    fn classify_case_b_and_c() {
        // x1: w_v = 3 vs 4 → not A; ε = 3 − 4φ ≈ 0.528, (1−φ)ε ≈ 0.2 ≥ γ → B.
        let f = formula_from_dimacs(&[(&[1], 3), (&[2], 1), (&[-1, -2], 4)]);
        assert_eq!(classify(&f).unwrap(), Case::B { x: v(1) });
        // Weighted edges: w_v(x) = 1 < w_v(¬x) = 2 for both, ε = 1 − 2φ < 0.
        let f = formula_from_dimacs(&[(&[1], 1), (&[2], 1), (&[-1, -2], 2)]);
        assert_eq!(classify(&f).unwrap(), Case::C { x: v(1), y: v(2) });
    }

    #[test]
    fn simplify_examples() {
        let x_true: Assignment = [(v(1), true)].into_iter().collect();
        let x_false: Assignment = [(v(1), false)].into_iter().collect();

        let (g, recs) = simplify_assign(&tight1(), &x_true).unwrap();
        assert!(g.is_empty());
        assert_eq!(
            recs,
            vec![
                EliminationRecord {
                    var: v(1),
                    mechanism: Mechanism::AssignedTrue
                },
                EliminationRecord {
                    var: v(2),
                    mechanism: Mechanism::ZeroedRemoved
                },
            ]
        );

        let heavy = formula_from_dimacs(&[(&[1], 1), (&[2], 1), (&[-1, -2], 3)]);
        let (g, recs) = simplify_assign(&heavy, &x_true).unwrap();
        assert_eq!(g, formula_from_dimacs(&[(&[2], 2)]));
        assert_eq!(recs[1].mechanism, Mechanism::FlipMerged);

        let (g, _) = simplify_assign(&tight1(), &x_false).unwrap();
        assert_eq!(g, formula_from_dimacs(&[(&[2], 1)]));
    }

    #[test]
    fn placeholder_keeps_compactness() {
        // x1 TRUE turns (¬1 ∨ ¬2) into (¬2), cancelling (2) exactly while x2
        // still sits in (¬2 ∨ ¬3).
        let f = formula_from_dimacs(&[
            (&[1], 1),
            (&[2], 1),
            (&[3], 1),
            (&[-1, -2], 1),
            (&[-2, -3], 1),
        ]);
        let x_true: Assignment = [(v(1), true)].into_iter().collect();
        let (g, _) = simplify_assign(&f, &x_true).unwrap();
        assert!(g.is_compact());
        assert_eq!(g.weight_of(&Clause::unit(v(2).positive())), Some(&w(0)));
        let outcome = run(&f).unwrap();
        assert_eq!(outcome.achieved, w(4));
    }

    #[test]
    fn run_examples() {
        let out = run(&tight1()).unwrap();
        assert_eq!(out.achieved, w(2));
        assert_eq!(out.bound, Q5::from_ints(2, 0));

        let out = run(&triangle()).unwrap();
        assert_eq!(out.achieved, w(4));
        assert_eq!(out.bound, Q5::from_ratios(9, 4, 3, 4));
        assert!(matches!(out.rounds[0].case, Case::D { .. }));

        let out = run(&formula_from_dimacs(&[(&[1], 7)])).unwrap();
        assert_eq!(out.achieved, w(7));
        assert_eq!(out.assignment.get(v(1)), Some(true));
    }

    #[test]
    fn non_compact_rejected() {
        assert_eq!(
            run(&formula_from_dimacs(&[(&[1, 2], 1)])),
            Err(CompactError::NotCompact)
        );
    }
}
