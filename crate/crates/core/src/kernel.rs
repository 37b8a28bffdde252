//! Kernels for MAX-SAT parameterized above a guaranteed weight.
//!
//! Two decision problems, both read with the floor convention: the
//! *excess* of `F` is `sat(F)` minus the floored guarantee, and the question
//! is whether the excess reaches `k`.
//!
//! * above `φ·m` (UCF input): `sat(F) ≥ ⌊φ·w(F)⌋ + k`;
//! * above `m/2` (any input): `sat(F) ≥ ⌊w(F)/2⌋ + k`.
//!
//! Both kernelizers split off a matching autarky, move to the expanding
//! remainder `F′` with a transferred parameter `k′ ≤ k`, and then either
//! decide the instance from the certified lower bounds, solve it exactly, or
//! emit `(F′, k′)` together with size certificates.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::autarky::{matching_autarky, AutarkyError};
use crate::formula::{normalize, Formula, FormulaError, Weight};
use crate::oracle::{max_sat_exact, OracleError, DEFAULT_BUDGET};
use crate::q5::{floor_mul_surd, floor_phi_times, Q5};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("formula is not unit-conflict free")]
    NotUcf,
    #[error(transparent)]
    Autarky(#[from] AutarkyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    /// Indicates a bug: the transferred parameter must never grow.
    #[error("reduced parameter {reduced} exceeds {original}")]
    ParameterGrew { reduced: BigInt, original: BigInt },
    /// Indicates a bug: an emitted kernel broke its size bound.
    #[error("kernel size certificate failed: {0}")]
    CertificateFailed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelConfig {
    /// Remainders with at most this many variables are solved exactly.
    pub oracle_budget: usize,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            oracle_budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// Equivalent instance `(F′, k′)` with `k′ ≤ k`.
    Kernel {
        formula: Formula,
        parameter: BigInt,
    },
}

/// Which step settled the instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// The autarky satisfied every clause.
    WholeFormulaAutarky,
    /// `k′ ≤ 0`: the base guarantee already suffices.
    NonPositiveParameter,
    /// `k′` is within the certified lower bound of the expanding remainder.
    LowerBound,
    /// An expanding formula satisfies at least `|V′|` weight.
    MatchingBound,
    /// The remainder was solved by exhaustive search.
    ExactSolve,
    /// Nothing decided; a kernel was emitted.
    Emitted,
}

/// Sizes of an emitted kernel against its theoretical limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeCertificate {
    pub num_vars: usize,
    pub total_weight: Weight,
    pub var_limit: BigUint,
    pub weight_limit: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutcome {
    pub verdict: Verdict,
    pub rule: Rule,
    /// `(F′, k′)` whenever the autarky step left a non-empty remainder.
    pub reduced: Option<(Formula, BigInt)>,
    pub certificate: Option<SizeCertificate>,
}

impl KernelOutcome {
    pub fn decided(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Kernel { .. } => None,
        }
    }
}

fn big(w: &Weight) -> BigInt {
    BigInt::from(w.clone())
}

fn ceil_half(w: &Weight) -> Weight {
    (w + 1u32) / 2u32
}

/// Canonical copy of `formula`, as emitted in kernels.
fn renormalized(formula: &Formula) -> Result<Formula, FormulaError> {
    Ok(normalize(formula.to_raw().into_iter().filter(|(_, w)| !w.is_zero()))?.0)
}

/// `sat(F) − ⌊φ·w(F)⌋ ≥ k`, by exhaustive search.
pub fn exact_phi_answer(formula: &Formula, k: &BigInt, budget: usize) -> Result<bool, OracleError> {
    let opt = max_sat_exact(formula, budget)?.optimum;
    Ok(big(&opt) >= big(&floor_phi_times(&formula.total_weight())) + k)
}

/// `sat(F) − ⌊w(F)/2⌋ ≥ k`, by exhaustive search.
pub fn exact_half_answer(
    formula: &Formula,
    k: &BigInt,
    budget: usize,
) -> Result<bool, OracleError> {
    let opt = max_sat_exact(formula, budget)?.optimum;
    Ok(big(&opt) >= big(&(formula.total_weight() / 2u32)) + k)
}

/// Resolves a [`KernelOutcome`] to a yes/no answer for the φ problem,
/// solving an emitted kernel exactly.
pub fn resolve_phi(outcome: &KernelOutcome, budget: usize) -> Result<bool, OracleError> {
    match &outcome.verdict {
        Verdict::Kernel { formula, parameter } => exact_phi_answer(formula, parameter, budget),
        _ => Ok(outcome.decided().unwrap()),
    }
}

/// Resolves a [`KernelOutcome`] to a yes/no answer for the `m/2` problem.
pub fn resolve_half(outcome: &KernelOutcome, budget: usize) -> Result<bool, OracleError> {
    match &outcome.verdict {
        Verdict::Kernel { formula, parameter } => exact_half_answer(formula, parameter, budget),
        _ => Ok(outcome.decided().unwrap()),
    }
}

fn decided(verdict: bool, rule: Rule, reduced: Option<(Formula, BigInt)>) -> KernelOutcome {
    KernelOutcome {
        verdict: if verdict { Verdict::Yes } else { Verdict::No },
        rule,
        reduced,
        certificate: None,
    }
}

/// Kernel for `sat(F) ≥ ⌊φ·w(F)⌋ + k` on UCF formulas, with at most
/// `⌊(7 + 3√5)·k⌋` variables.
pub fn kernelize_phi(
    formula: &Formula,
    k: u64,
    config: &KernelConfig,
) -> Result<KernelOutcome, KernelError> {
    if !formula.is_ucf() {
        return Err(KernelError::NotUcf);
    }
    let k_big = BigInt::from(k);
    let total = formula.total_weight();
    let d = matching_autarky(formula)?;
    if d.remainder.is_empty() {
        let yes = big(&total) >= big(&floor_phi_times(&total)) + &k_big;
        return Ok(decided(yes, Rule::WholeFormulaAutarky, None));
    }

    let reduced = renormalized(&d.remainder)?;
    let w_reduced = reduced.total_weight();
    let k_reduced = &k_big - big(&total) + big(&w_reduced) + big(&floor_phi_times(&total))
        - big(&floor_phi_times(&w_reduced));
    if k_reduced > k_big {
        return Err(KernelError::ParameterGrew {
            reduced: k_reduced,
            original: k_big,
        });
    }
    let pair = Some((reduced.clone(), k_reduced.clone()));
    if !k_reduced.is_positive() {
        return Ok(decided(true, Rule::NonPositiveParameter, pair));
    }
    let n = reduced.num_vars();
    // k′ ≤ γ·|V′|
    let slack = Q5::gamma().scale_int(n) - Q5::from_integer(k_reduced.clone());
    if slack.sign() != Sign::Minus {
        return Ok(decided(true, Rule::LowerBound, pair));
    }

    let var_limit = floor_mul_surd(7, 3, &BigUint::from(k));
    if BigUint::from(n) > var_limit {
        return Err(KernelError::CertificateFailed(format!(
            "{n} variables exceed ⌊(7+3√5)·{k}⌋ = {var_limit}"
        )));
    }
    // Large weight relative to 2^|V′| makes exhaustive search polynomial.
    let heavy = n < 64 && BigUint::from(1u64) << n <= w_reduced;
    if heavy || n <= config.oracle_budget {
        let yes = exact_phi_answer(&reduced, &k_reduced, n)?;
        return Ok(decided(yes, Rule::ExactSolve, pair));
    }
    Ok(KernelOutcome {
        verdict: Verdict::Kernel {
            formula: reduced.clone(),
            parameter: k_reduced,
        },
        rule: Rule::Emitted,
        certificate: Some(SizeCertificate {
            num_vars: n,
            total_weight: w_reduced,
            var_limit,
            weight_limit: None,
        }),
        reduced: pair,
    })
}

/// Kernel for `sat(F) ≥ ⌊w(F)/2⌋ + k` on arbitrary formulas, with at most
/// `4k` variables and `⌊(4 + 2√5)·k⌋` total clause weight.
pub fn kernelize_half(
    formula: &Formula,
    k: u64,
    config: &KernelConfig,
) -> Result<KernelOutcome, KernelError> {
    // Each cancelled pair adds `g` to sat and `2g` to w, so excess is unchanged.
    let (ucf, _) = formula.ucf_reduce();
    let k_big = BigInt::from(k);
    let total = ucf.total_weight();
    let d = matching_autarky(&ucf)?;
    if d.remainder.is_empty() {
        let yes = big(&total) >= big(&(&total / 2u32)) + &k_big;
        return Ok(decided(yes, Rule::WholeFormulaAutarky, None));
    }

    let reduced = renormalized(&d.remainder)?;
    let w_reduced = reduced.total_weight();
    let k_reduced = &k_big - big(&ceil_half(&total)) + big(&ceil_half(&w_reduced));
    if k_reduced > k_big {
        return Err(KernelError::ParameterGrew {
            reduced: k_reduced,
            original: k_big,
        });
    }
    let pair = Some((reduced.clone(), k_reduced.clone()));
    let n = reduced.num_vars();
    // k′ ≤ (φ − 1/2)·w(F′) + γ·|V′|
    let phi_minus_half = Q5::phi() - Q5::from_ratios(1, 2, 0, 1);
    let slack = phi_minus_half * Q5::from_weight(&w_reduced) + Q5::gamma().scale_int(n)
        - Q5::from_integer(k_reduced.clone());
    if slack.sign() != Sign::Minus {
        return Ok(decided(true, Rule::LowerBound, pair));
    }
    // w(F′)/2 + k′ ≤ |V′|
    if big(&w_reduced) + 2 * &k_reduced <= BigInt::from(2 * n) {
        return Ok(decided(true, Rule::MatchingBound, pair));
    }

    let var_limit = BigUint::from(4 * k);
    let weight_limit = floor_mul_surd(4, 2, &BigUint::from(k));
    if BigUint::from(n) > var_limit || w_reduced > weight_limit {
        return Err(KernelError::CertificateFailed(format!(
            "{n} variables / weight {w_reduced} exceed 4·{k} / ⌊(4+2√5)·{k}⌋ = {weight_limit}"
        )));
    }
    if n <= config.oracle_budget {
        let yes = exact_half_answer(&reduced, &k_reduced, n)?;
        return Ok(decided(yes, Rule::ExactSolve, pair));
    }
    Ok(KernelOutcome {
        verdict: Verdict::Kernel {
            formula: reduced.clone(),
            parameter: k_reduced,
        },
        rule: Rule::Emitted,
        certificate: Some(SizeCertificate {
            num_vars: n,
            total_weight: w_reduced,
            var_limit,
            weight_limit: Some(weight_limit),
        }),
        reduced: pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::formula_from_dimacs;

    fn tight1() -> Formula {
        formula_from_dimacs(&[(&[1], 1), (&[2], 1), (&[-1, -2], 1)])
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

    #[test]
    fn phi_examples() {
        let cfg = KernelConfig::default();
        let out = kernelize_phi(&tight1(), 0, &cfg).unwrap();
        assert_eq!(
            (out.verdict.clone(), out.rule),
            (Verdict::Yes, Rule::NonPositiveParameter)
        );
        // k′ = k for an autarky-free input; k = 1 needs the oracle.
        let out = kernelize_phi(&tight1(), 1, &cfg).unwrap();
        assert_eq!(
            (out.verdict.clone(), out.rule),
            (Verdict::Yes, Rule::ExactSolve)
        );
        let out = kernelize_phi(&tight1(), 2, &cfg).unwrap();
        assert_eq!(
            (out.verdict.clone(), out.rule),
            (Verdict::No, Rule::ExactSolve)
        );
    }

    #[test]
    fn phi_rejects_non_ucf() {
        let f = formula_from_dimacs(&[(&[1], 1), (&[-1], 1)]);
        assert_eq!(
            kernelize_phi(&f, 0, &KernelConfig::default()),
            Err(KernelError::NotUcf)
        );
    }

    #[test]
    fn half_examples() {
        let cfg = KernelConfig::default();
        let pair = formula_from_dimacs(&[(&[1], 1), (&[-1], 1)]);
        assert_eq!(
            kernelize_half(&pair, 0, &cfg).unwrap().verdict,
            Verdict::Yes
        );
        assert_eq!(kernelize_half(&pair, 1, &cfg).unwrap().verdict, Verdict::No);

        let out = kernelize_half(&tight1(), 1, &cfg).unwrap();
        assert_eq!(
            (out.verdict.clone(), out.rule),
            (Verdict::Yes, Rule::ExactSolve)
        );

        let out = kernelize_half(&triangle(), 1, &cfg).unwrap();
        assert_eq!(out.verdict, Verdict::Yes);
    }

    #[test]
    fn emits_kernel_without_budget() {
        let cfg = KernelConfig { oracle_budget: 0 };
        let out = kernelize_half(&triangle(), 2, &cfg).unwrap();
        // k′ = 2 − 3 + 3 = 2; 6·(φ−½) + 3γ ≈ 0.93 < 2; 3 + 2 > 3.
        let Verdict::Kernel { formula, parameter } = &out.verdict else {
            panic!("expected a kernel, got {:?}", out.verdict);
        };
        assert_eq!(formula, &triangle());
        assert_eq!(parameter, &BigInt::from(2));
        let cert = out.certificate.as_ref().unwrap();
        assert_eq!(cert.var_limit, BigUint::from(8u32));
        assert_eq!(cert.weight_limit, Some(BigUint::from(16u32)));
        assert!(!resolve_half(&out, 24).unwrap());
    }
}
