//! Weighted CNF formulas.
//!
//! A [`Formula`] stores each distinct clause once, keyed by its literal set,
//! together with a non-negative integer weight. Identical clauses are merged by
//! adding weights, so a clause that "appears `t` times" is simply a clause of
//! weight `t`. Tautologies and repeated literals are removed on ingestion by
//! [`normalize`], which reports the weight that every assignment satisfies.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

/// Clause weights and satisfied weights. Unbounded, so summing never overflows.
pub type Weight = BigUint;

/// A variable identifier, always `>= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics on `0`; use [`Var::try_new`] for untrusted input.
    pub fn new(id: u32) -> Self {
        Self::try_new(id).expect("variable identifiers start at 1")
    }

    pub fn try_new(id: u32) -> Option<Self> {
        (id >= 1).then_some(Var(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A signed variable. Orders by variable first, positive before negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: Var,
    negated: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Self {
        Literal {
            var,
            negated: !positive,
        }
    }

    /// Builds a literal from DIMACS notation (`3`, `-3`). Returns `None` for `0`.
    pub fn from_dimacs(lit: i64) -> Option<Self> {
        let id = u32::try_from(lit.unsigned_abs()).ok()?;
        Var::try_new(id).map(|v| Literal::new(v, lit > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let id = i64::from(self.var.0);
        if self.negated {
            -id
        } else {
            id
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        !self.negated
    }

    pub fn is_negative(self) -> bool {
        self.negated
    }

    pub fn negate(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    /// Truth value of the literal under `value` for its variable.
    pub fn holds(self, value: bool) -> bool {
        value != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬{}", self.var)
        } else {
            write!(f, "{}", self.var)
        }
    }
}

/// The literal set of a clause, sorted by variable.
///
/// A `Clause` is non-empty and mentions each variable at most once. It is the
/// identity under which clauses merge, and its derived ordering is the
/// lexicographic clause order used for every deterministic tie-break.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause(Vec<Literal>);

impl Clause {
    /// Builds a clause, or reports why the literal list cannot be one.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self, ClauseShape> {
        let mut lits: Vec<Literal> = literals.into_iter().collect();
        if lits.is_empty() {
            return Err(ClauseShape::Empty);
        }
        lits.sort();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var == w[1].var) {
            return Err(ClauseShape::Tautology);
        }
        Ok(Clause(lits))
    }

    pub fn unit(lit: Literal) -> Self {
        Clause(vec![lit])
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.len() == 1
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|l| l.var)
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.literal_of(var).is_some()
    }

    pub fn literal_of(&self, var: Var) -> Option<Literal> {
        self.0
            .binary_search_by(|l| l.var.cmp(&var))
            .ok()
            .map(|i| self.0[i])
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literal_of(lit.var) == Some(lit)
    }

    /// `Some(true)` if satisfied, `Some(false)` if every literal is assigned and
    /// false, `None` if undetermined.
    pub fn status(&self, assignment: &Assignment) -> Option<bool> {
        let mut open = false;
        for lit in &self.0 {
            match assignment.get(lit.var) {
                Some(v) if lit.holds(v) => return Some(true),
                Some(_) => {}
                None => open = true,
            }
        }
        if open {
            None
        } else {
            Some(false)
        }
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.status(assignment) == Some(true)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, lit) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, ")")
    }
}

/// Why a literal list does not form a [`Clause`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseShape {
    Empty,
    Tautology,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("clause {index} is empty")]
    EmptyClause { index: usize },
    #[error("clause {index} has weight zero")]
    ZeroWeight { index: usize },
    #[error("assignment leaves {0} unassigned")]
    Unassigned(Var),
}

/// A total or partial truth assignment.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment(BTreeMap<Var, bool>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    pub fn set(&mut self, var: Var, value: bool) -> Option<bool> {
        self.0.insert(var, value)
    }

    pub fn remove(&mut self, var: Var) -> Option<bool> {
        self.0.remove(&var)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(&v, &b)| (v, b))
    }

    /// First variable of `vars` left unassigned, if any.
    pub fn first_missing<'a>(&self, mut vars: impl Iterator<Item = &'a Var>) -> Option<Var> {
        vars.find(|v| !self.0.contains_key(v)).copied()
    }

    /// Copies every binding of `other` into `self`, overwriting on overlap.
    pub fn extend_from(&mut self, other: &Assignment) {
        self.0.extend(other.iter());
    }

    /// Signed DIMACS literals in variable order.
    pub fn to_dimacs(&self) -> Vec<i64> {
        self.iter()
            .map(|(v, b)| Literal::new(v, b).to_dimacs())
            .collect()
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// What [`normalize`] did to reach canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalizationReport {
    /// Weight satisfied by every assignment (dropped tautologies and
    /// resolved unit conflicts).
    pub guaranteed_weight: Weight,
    pub forced_log: Vec<Rewrite>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rewrite {
    CollapsedDuplicateLiterals { index: usize },
    DroppedTautology { index: usize, weight: Weight },
    MergedDuplicate { clause: Clause, total: Weight },
    CancelledUnitConflict { var: Var, cancelled: Weight },
}

/// A weighted CNF formula `F = (V, C)` with merged duplicate clauses.
///
/// `V` is exactly the set of variables appearing in `C`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Formula {
    clauses: BTreeMap<Clause, Weight>,
    vars: BTreeSet<Var>,
}

impl Formula {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a formula from already-valid clauses, merging duplicates.
    /// Zero weights are kept; callers outside the crate should use [`normalize`].
    pub fn from_weighted(clauses: impl IntoIterator<Item = (Clause, Weight)>) -> Self {
        let mut map: BTreeMap<Clause, Weight> = BTreeMap::new();
        for (c, w) in clauses {
            *map.entry(c).or_default() += w;
        }
        Self::from_map(map)
    }

    pub(crate) fn from_map(clauses: BTreeMap<Clause, Weight>) -> Self {
        let vars = clauses.keys().flat_map(|c| c.vars()).collect();
        Formula { clauses, vars }
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = (&Clause, &Weight)> + '_ {
        self.clauses.iter()
    }

    pub fn weight_of(&self, clause: &Clause) -> Option<&Weight> {
        self.clauses.get(clause)
    }

    pub fn contains_clause(&self, clause: &Clause) -> bool {
        self.clauses.contains_key(clause)
    }

    pub fn vars(&self) -> &BTreeSet<Var> {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// `w(C)`.
    pub fn total_weight(&self) -> Weight {
        self.clauses.values().sum()
    }

    /// Weight satisfied by `assignment`, which must be total on `V`.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Weight, FormulaError> {
        if let Some(v) = assignment.first_missing(self.vars.iter()) {
            return Err(FormulaError::Unassigned(v));
        }
        Ok(self
            .clauses
            .iter()
            .filter(|(c, _)| c.is_satisfied_by(assignment))
            .map(|(_, w)| w)
            .sum())
    }

    /// Weight of the clauses `assignment` leaves unsatisfied; requires a total assignment.
    pub fn unsatisfied_weight(&self, assignment: &Assignment) -> Result<Weight, FormulaError> {
        if let Some(v) = assignment.first_missing(self.vars.iter()) {
            return Err(FormulaError::Unassigned(v));
        }
        Ok(self
            .clauses
            .iter()
            .filter(|(c, _)| !c.is_satisfied_by(assignment))
            .map(|(_, w)| w)
            .sum())
    }

    /// `F_U`: the clauses mentioning at least one variable of `vars`.
    pub fn restrict_to_vars(&self, vars: &BTreeSet<Var>) -> Formula {
        self.partition_by_vars(vars).0
    }

    /// `F \ F_U`: the clauses mentioning no variable of `vars`.
    pub fn without_vars(&self, vars: &BTreeSet<Var>) -> Formula {
        self.partition_by_vars(vars).1
    }

    /// `(F_U, F \ F_U)`.
    pub fn partition_by_vars(&self, vars: &BTreeSet<Var>) -> (Formula, Formula) {
        let (touching, rest): (BTreeMap<_, _>, BTreeMap<_, _>) = self
            .clauses
            .iter()
            .map(|(c, w)| (c.clone(), w.clone()))
            .partition(|(c, _)| c.vars().any(|v| vars.contains(&v)));
        (Formula::from_map(touching), Formula::from_map(rest))
    }

    /// Unit-conflict free: no variable has both `(x)` and `(¬x)`.
    pub fn is_ucf(&self) -> bool {
        self.clauses.keys().filter(|c| c.is_unit()).all(|c| {
            let lit = c.literals()[0];
            !lit.is_positive() || !self.clauses.contains_key(&Clause::unit(lit.negate()))
        })
    }

    /// Every clause is `(x)` or `(¬x ∨ ¬y)`, and every variable has its `(x)`.
    ///
    /// Zero-weight unit placeholders count as present.
    pub fn is_compact(&self) -> bool {
        let shapes_ok = self.clauses.keys().all(|c| match c.literals() {
            [l] => l.is_positive(),
            [a, b] => a.is_negative() && b.is_negative(),
            _ => false,
        });
        shapes_ok
            && self
                .vars
                .iter()
                .all(|v| self.clauses.contains_key(&Clause::unit(v.positive())))
    }

    /// Cancels conflicting unit pairs.
    ///
    /// Returns the reduced formula and the weight `min(a, b)` summed over all
    /// cancelled pairs; every assignment satisfies exactly that much of the
    /// removed weight.
    pub fn ucf_reduce(&self) -> (Formula, Weight) {
        let (formula, guaranteed, _) = self.ucf_reduce_logged();
        (formula, guaranteed)
    }

    pub(crate) fn ucf_reduce_logged(&self) -> (Formula, Weight, Vec<Rewrite>) {
        let mut clauses = self.clauses.clone();
        let mut guaranteed = Weight::zero();
        let mut log = Vec::new();
        for &var in &self.vars {
            let pos = Clause::unit(var.positive());
            let neg = Clause::unit(var.negative());
            let (Some(a), Some(b)) = (clauses.get(&pos).cloned(), clauses.get(&neg).cloned())
            else {
                continue;
            };
            let cancelled = a.clone().min(b.clone());
            clauses.remove(&pos);
            clauses.remove(&neg);
            if a > b {
                clauses.insert(pos, a - &cancelled);
            } else if b > a {
                clauses.insert(neg, b - &cancelled);
            }
            guaranteed += &cancelled;
            log.push(Rewrite::CancelledUnitConflict { var, cancelled });
        }
        (Formula::from_map(clauses), guaranteed, log)
    }

    /// Raw `(literals, weight)` form, for re-normalization and emission.
    pub fn to_raw(&self) -> Vec<(Vec<Literal>, Weight)> {
        self.clauses
            .iter()
            .map(|(c, w)| (c.literals().to_vec(), w.clone()))
            .collect()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (c, w)) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c} w{w}")?;
        }
        write!(f, "}}")
    }
}

/// Canonicalizes raw weighted clauses.
///
/// Repeated literals collapse, tautologies are dropped (their weight goes to
/// `guaranteed_weight`), and identical clauses merge by summing weights.
/// Empty clauses and zero weights are rejected.
pub fn normalize<I, L>(raw: I) -> Result<(Formula, NormalizationReport), FormulaError>
where
    I: IntoIterator<Item = (L, Weight)>,
    L: IntoIterator<Item = Literal>,
{
    let mut report = NormalizationReport::default();
    let mut clauses: BTreeMap<Clause, Weight> = BTreeMap::new();
    let mut merged: BTreeSet<Clause> = BTreeSet::new();
    for (index, (lits, weight)) in raw.into_iter().enumerate() {
        if weight.is_zero() {
            return Err(FormulaError::ZeroWeight { index });
        }
        let lits: Vec<Literal> = lits.into_iter().collect();
        let n = lits.len();
        match Clause::new(lits) {
            Err(ClauseShape::Empty) => return Err(FormulaError::EmptyClause { index }),
            Err(ClauseShape::Tautology) => {
                report.guaranteed_weight += &weight;
                report
                    .forced_log
                    .push(Rewrite::DroppedTautology { index, weight });
            }
            Ok(clause) => {
                if clause.len() < n {
                    report
                        .forced_log
                        .push(Rewrite::CollapsedDuplicateLiterals { index });
                }
                match clauses.get_mut(&clause) {
                    Some(w) => {
                        *w += weight;
                        merged.insert(clause);
                    }
                    None => {
                        clauses.insert(clause, weight);
                    }
                }
            }
        }
    }
    for clause in merged {
        let total = clauses[&clause].clone();
        report
            .forced_log
            .push(Rewrite::MergedDuplicate { clause, total });
    }
    Ok((Formula::from_map(clauses), report))
}

/// Shorthand for tests and examples: DIMACS literal lists with `u64` weights.
pub fn formula_from_dimacs(clauses: &[(&[i64], u64)]) -> Formula {
    let raw = clauses.iter().map(|(lits, w)| {
        (
            lits.iter()
                .map(|&l| Literal::from_dimacs(l).expect("non-zero literal"))
                .collect::<Vec<_>>(),
            Weight::from(*w),
        )
    });
    normalize(raw).expect("well-formed clauses").0
}
