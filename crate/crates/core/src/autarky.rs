//! Clause–variable incidence graphs, maximum matchings and matching autarkies.
//!
//! The incidence graph `B_F` has the variables on one side, the clauses on the
//! other, and an edge `v–c` whenever `v` or `¬v` occurs in `c`. By Hall's
//! theorem `B_F` has a matching covering `V` exactly when every variable set
//! `X` meets at least `|X|` clauses. Weights only help: a clause of weight
//! `w ≥ 1` contributes `w ≥ 1` to `w(F_X)`, so the unweighted covering test
//! certifies the weighted condition `|X| ≤ w(F_X)`.
//!
//! [`matching_autarky`] removes a satisfiable block `F_U` so that what remains
//! has surplus at least one: every non-empty `X` meets at least `|X| + 1`
//! clauses.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::formula::{Assignment, Clause, Formula, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutarkyError {
    /// Post-verification failed. Indicates a bug, never bad input.
    #[error("matching autarky invariant violated: {0}")]
    InvariantViolated(String),
}

/// `B_F` with canonical orderings: variables by id, clauses by literal set.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    vars: Vec<Var>,
    clauses: Vec<Clause>,
    var_adj: Vec<Vec<usize>>,
    clause_adj: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_edges(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    /// Clause indices adjacent to variable index `v`, in clause order.
    pub fn clauses_of(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    /// Variable indices occurring in clause index `c`, in variable order.
    pub fn vars_of(&self, c: usize) -> &[usize] {
        &self.clause_adj[c]
    }

    /// Edges ordered by (variable id, clause key).
    pub fn edges(&self) -> impl Iterator<Item = (Var, &Clause)> + '_ {
        self.var_adj
            .iter()
            .enumerate()
            .flat_map(move |(v, cs)| cs.iter().map(move |&c| (self.vars[v], &self.clauses[c])))
    }

    fn var_index(&self, var: Var) -> Option<usize> {
        self.vars.binary_search(&var).ok()
    }
}

pub fn build_incidence(formula: &Formula) -> IncidenceGraph {
    let vars: Vec<Var> = formula.vars().iter().copied().collect();
    let clauses: Vec<Clause> = formula.clauses().map(|(c, _)| c.clone()).collect();
    let mut var_adj = vec![Vec::new(); vars.len()];
    let mut clause_adj = Vec::with_capacity(clauses.len());
    for (ci, clause) in clauses.iter().enumerate() {
        let members: Vec<usize> = clause
            .vars()
            .map(|v| vars.binary_search(&v).expect("clause variable in V"))
            .collect();
        for &vi in &members {
            var_adj[vi].push(ci);
        }
        clause_adj.push(members);
    }
    IncidenceGraph {
        vars,
        clauses,
        var_adj,
        clause_adj,
    }
}

/// A matching of an [`IncidenceGraph`], stored by index on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    var_to_clause: Vec<Option<usize>>,
    clause_to_var: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.var_to_clause.iter().flatten().count()
    }

    pub fn clause_of(&self, v: usize) -> Option<usize> {
        self.var_to_clause[v]
    }

    pub fn var_of(&self, c: usize) -> Option<usize> {
        self.clause_to_var[c]
    }

    pub fn covers_all_vars(&self) -> bool {
        self.var_to_clause.iter().all(Option::is_some)
    }

    /// Matched `(variable, clause)` pairs in variable order.
    pub fn pairs<'g>(&self, graph: &'g IncidenceGraph) -> Vec<(Var, &'g Clause)> {
        self.var_to_clause
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (graph.vars[v], &graph.clauses[c])))
            .collect()
    }

    /// The clause matched to `var`, if any.
    pub fn clause_for<'g>(&self, graph: &'g IncidenceGraph, var: Var) -> Option<&'g Clause> {
        let v = graph.var_index(var)?;
        self.var_to_clause[v].map(|c| &graph.clauses[c])
    }
}

/// Maximum-cardinality matching by Hopcroft–Karp, `O(E·√V)`.
///
/// Deterministic: free variables are tried in id order and edges in clause
/// order.
pub fn maximum_matching(graph: &IncidenceGraph) -> Matching {
    const INF: usize = usize::MAX;
    let n = graph.vars.len();
    let mut m = Matching {
        var_to_clause: vec![None; n],
        clause_to_var: vec![None; graph.clauses.len()],
    };
    let mut dist = vec![INF; n];
    loop {
        // Layer the graph from the free variables.
        let mut queue = VecDeque::new();
        for v in 0..n {
            if m.var_to_clause[v].is_none() {
                dist[v] = 0;
                queue.push_back(v);
            } else {
                dist[v] = INF;
            }
        }
        let mut found = false;
        while let Some(v) = queue.pop_front() {
            for &c in &graph.var_adj[v] {
                match m.clause_to_var[c] {
                    None => found = true,
                    Some(u) if dist[u] == INF => {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for root in 0..n {
            if m.var_to_clause[root].is_none() && dist[root] == 0 {
                augment_from(graph, &mut m, &mut dist, root);
            }
        }
    }
    m
}

/// Iterative layered DFS; flips the path on success.
fn augment_from(graph: &IncidenceGraph, m: &mut Matching, dist: &mut [usize], root: usize) -> bool {
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, next) = *top;
        if next >= graph.var_adj[v].len() {
            dist[v] = usize::MAX;
            stack.pop();
            continue;
        }
        top.1 += 1;
        let c = graph.var_adj[v][next];
        match m.clause_to_var[c] {
            None => {
                for &(u, i) in &stack {
                    let cu = graph.var_adj[u][i - 1];
                    m.var_to_clause[u] = Some(cu);
                    m.clause_to_var[cu] = Some(u);
                }
                return true;
            }
            Some(u) if dist[u] != usize::MAX && dist[u] == dist[v] + 1 => stack.push((u, 0)),
            Some(_) => {}
        }
    }
    false
}

/// True iff a maximum matching covers every variable, i.e. `|X| ≤ w(F_X)`
/// for all `X ⊆ V`.
pub fn is_expanding(formula: &Formula) -> bool {
    maximum_matching(&build_incidence(formula)).covers_all_vars()
}

/// `F = F_U ∪ (F \ F_U)` where `beta` on `U` is an autarky.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutarkyDecomposition {
    pub vars: BTreeSet<Var>,
    pub beta: Assignment,
    /// `F_U`, every clause satisfied by `beta`.
    pub satisfied: Formula,
    /// `F \ F_U`, strictly expanding.
    pub remainder: Formula,
}

impl AutarkyDecomposition {
    pub fn is_trivial(&self) -> bool {
        self.vars.is_empty()
    }
}

/// Splits off a matching autarky so that the remainder is strictly expanding.
///
/// With a maximum matching `M` fixed, two sets of variables are absorbed
/// into `U`:
///
/// 1. everything reachable by `M`-alternating paths from an exposed variable
///    (leave a variable along any edge, leave a clause along its matching
///    edge). Exposed variables get FALSE.
/// 2. among the remaining variables, those that cannot reach a variable
///    adjacent to an unmatched clause, where a variable steps to the matched
///    partner of each of its clauses. This is the largest set `X` with
///    exactly `|X|` neighbouring clauses.
///
/// Every clause of `F_U` is matched into `U`, and `beta` gives that variable
/// the value satisfying its literal in its matched clause.
pub fn matching_autarky(formula: &Formula) -> Result<AutarkyDecomposition, AutarkyError> {
    let graph = build_incidence(formula);
    let matching = maximum_matching(&graph);
    let n = graph.vars.len();
    let mut in_u = vec![false; n];

    // Phase 1: alternating reachability from exposed variables.
    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&v| matching.var_to_clause[v].is_none())
        .collect();
    for &v in &queue {
        in_u[v] = true;
    }
    let mut clause_seen = vec![false; graph.clauses.len()];
    while let Some(v) = queue.pop_front() {
        for &c in &graph.var_adj[v] {
            if matching.var_to_clause[v] == Some(c) || clause_seen[c] {
                continue;
            }
            clause_seen[c] = true;
            let u = matching.clause_to_var[c]
                .ok_or_else(|| violated("alternating path reached an unmatched clause"))?;
            if !in_u[u] {
                in_u[u] = true;
                queue.push_back(u);
            }
        }
    }

    // Phase 2: clauses untouched by phase 1 form the intermediate remainder.
    // Variables that can reach a variable next to an unmatched remainder
    // clause are kept; all others form a tight, self-contained block.
    let remainder_clause: Vec<bool> = (0..graph.clauses.len())
        .map(|c| graph.clause_adj[c].iter().all(|&v| !in_u[v]))
        .collect();
    let mut escapes = vec![false; n];
    let mut queue = VecDeque::new();
    for c in (0..graph.clauses.len()).filter(|&c| remainder_clause[c]) {
        if matching.clause_to_var[c].is_none() {
            for &v in &graph.clause_adj[c] {
                if !escapes[v] {
                    escapes[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    while let Some(u) = queue.pop_front() {
        // Every variable sharing u's matched clause can step to u.
        let Some(c) = matching.var_to_clause[u] else {
            continue;
        };
        for &v in &graph.clause_adj[c] {
            if !escapes[v] && !in_u[v] {
                escapes[v] = true;
                queue.push_back(v);
            }
        }
    }
    let in_remainder: Vec<bool> = {
        let mut seen = vec![false; n];
        for c in (0..graph.clauses.len()).filter(|&c| remainder_clause[c]) {
            for &v in &graph.clause_adj[c] {
                seen[v] = true;
            }
        }
        seen
    };
    for v in 0..n {
        if in_remainder[v] && !escapes[v] {
            in_u[v] = true;
        }
    }

    let vars: BTreeSet<Var> = (0..n).filter(|&v| in_u[v]).map(|v| graph.vars[v]).collect();
    let mut beta = Assignment::new();
    for v in (0..n).filter(|&v| in_u[v]) {
        let value = match matching.var_to_clause[v] {
            Some(c) => graph.clauses[c]
                .literal_of(graph.vars[v])
                .expect("matched clause contains its variable")
                .is_positive(),
            None => false,
        };
        beta.set(graph.vars[v], value);
    }
    let (satisfied, remainder) = formula.partition_by_vars(&vars);
    let decomposition = AutarkyDecomposition {
        vars,
        beta,
        satisfied,
        remainder,
    };
    verify_decomposition(formula, &decomposition)?;
    Ok(decomposition)
}

fn violated(msg: impl Into<String>) -> AutarkyError {
    AutarkyError::InvariantViolated(msg.into())
}

fn verify_decomposition(formula: &Formula, d: &AutarkyDecomposition) -> Result<(), AutarkyError> {
    if !verify_autarky(formula, &d.beta) {
        return Err(violated("beta leaves a clause of F_U unsatisfied"));
    }
    if d.satisfied.total_weight() + d.remainder.total_weight() != formula.total_weight() {
        return Err(violated("weight not conserved"));
    }
    if !has_positive_surplus(&d.remainder) {
        return Err(violated("remainder is not strictly expanding"));
    }
    Ok(())
}

/// True iff every non-empty `X ⊆ V` meets at least `|X| + 1` clauses.
///
/// Given any matching covering `V`, a set meeting exactly `|X|` clauses is
/// closed under "step to the matched partner of a neighbouring clause", and
/// such sets are exactly the variables unable to reach an unmatched clause.
pub fn has_positive_surplus(formula: &Formula) -> bool {
    let graph = build_incidence(formula);
    let matching = maximum_matching(&graph);
    if !matching.covers_all_vars() {
        return false;
    }
    let n = graph.vars.len();
    let mut escapes = vec![false; n];
    let mut queue = VecDeque::new();
    for c in 0..graph.clauses.len() {
        if matching.clause_to_var[c].is_none() {
            for &v in &graph.clause_adj[c] {
                if !escapes[v] {
                    escapes[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    while let Some(u) = queue.pop_front() {
        let c = matching.var_to_clause[u].expect("covering matching");
        for &v in &graph.clause_adj[c] {
            if !escapes[v] {
                escapes[v] = true;
                queue.push_back(v);
            }
        }
    }
    escapes.into_iter().all(|e| e)
}

/// True iff `beta` satisfies every clause mentioning a variable it assigns.
pub fn verify_autarky(formula: &Formula, beta: &Assignment) -> bool {
    formula
        .clauses()
        .filter(|(c, _)| c.vars().any(|v| beta.get(v).is_some()))
        .all(|(c, _)| c.is_satisfied_by(beta))
}
