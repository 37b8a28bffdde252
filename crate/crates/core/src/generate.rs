//! Seeded random instances.
//!
//! The PRNG is ChaCha8 seeded through `SeedableRng::seed_from_u64`, so a seed
//! and config reproduce the same formula for a given build of the crate.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{normalize, Formula, Literal, Var, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Positive unit on every variable plus distinct negative 2-clauses.
    Compact,
    /// Clauses of width 1 to 3, with each variable's units in one polarity only.
    Ucf,
    /// Clauses of width 1 to 3 with arbitrary signs.
    General,
    /// `(x_i), (y_i), (¬x_i ∨ ¬y_i)` for `i = 1..=l`, all weight 1, with
    /// `x_i = 2i − 1` and `y_i = 2i`. Ignores every other field.
    Tight(usize),
    /// `n / 3` disjoint triangles `(x), (y), (z), (¬x ∨ ¬y), (¬x ∨ ¬z), (¬y ∨ ¬z)`.
    TriangleBatch,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Compact => f.write_str("compact"),
            Family::Ucf => f.write_str("ucf"),
            Family::General => f.write_str("general"),
            Family::Tight(l) => write!(f, "tight({l})"),
            Family::TriangleBatch => f.write_str("triangle-batch"),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    /// Accepts `compact`, `ucf`, `general`, `triangle-batch`, and `tight(L)` or `tight:L`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "compact" => return Ok(Family::Compact),
            "ucf" => return Ok(Family::Ucf),
            "general" => return Ok(Family::General),
            "triangle-batch" => return Ok(Family::TriangleBatch),
            _ => {}
        }
        let l = s
            .strip_prefix("tight(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("tight:"))
            .ok_or_else(|| format!("unknown family `{s}`"))?;
        l.parse()
            .map(Family::Tight)
            .map_err(|_| format!("bad tight size `{l}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub max_weight: u64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(family: Family, n: usize, m: usize, max_weight: u64, seed: u64) -> Self {
        GeneratorConfig {
            family,
            n,
            m,
            max_weight,
            seed,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("max_weight must be at least 1")]
    ZeroMaxWeight,
    #[error("{0} variables exceed the supported range")]
    TooManyVars(usize),
    #[error("{family} needs at least one variable")]
    NoVars { family: Family },
    #[error("compact family with n = {n} needs {n} <= m <= {max}, got m = {m}")]
    CompactClauseCount { n: usize, m: usize, max: usize },
    #[error("triangle-batch needs n to be a positive multiple of 3, got {0}")]
    TriangleCount(usize),
    #[error("{family} over {n} variables has only {max} distinct clauses, asked for {m}")]
    TooManyClauses {
        family: Family,
        n: usize,
        m: usize,
        max: u128,
    },
}

fn weight(rng: &mut ChaCha8Rng, max: u64) -> Weight {
    Weight::from(rng.gen_range(1..=max))
}

fn var(i: usize) -> Var {
    Var::new(i as u32 + 1)
}

/// Number of distinct clauses a family can draw from over `n` variables.
///
/// `None` for the structured families, whose size is fixed by `n` alone.
pub fn max_clauses(family: Family, n: usize) -> Option<u128> {
    let n = n as u128;
    let pairs = n * n.saturating_sub(1) / 2;
    let triples = pairs * n.saturating_sub(2) / 3;
    match family {
        Family::Compact => Some(n + pairs),
        Family::Ucf => Some(n + 4 * pairs + 8 * triples),
        Family::General => Some(2 * n + 4 * pairs + 8 * triples),
        Family::Tight(_) | Family::TriangleBatch => None,
    }
}

/// `m` distinct random clauses of width `1..=3` over `n` variables.
///
/// With `unit_sign`, unit clauses on variable `i` always use polarity `unit_sign[i]`.
fn random_clauses(
    rng: &mut ChaCha8Rng,
    cfg: &GeneratorConfig,
    unit_sign: Option<&[bool]>,
) -> Vec<(Vec<Literal>, Weight)> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(cfg.m);
    while out.len() < cfg.m {
        let width = rng.gen_range(1..=cfg.n.min(3));
        let mut lits: Vec<Literal> = sample(rng, cfg.n, width)
            .into_iter()
            .map(|i| {
                let positive = match unit_sign {
                    Some(signs) if width == 1 => signs[i],
                    _ => rng.gen(),
                };
                Literal::new(var(i), positive)
            })
            .collect();
        lits.sort();
        if seen.insert(lits.clone()) {
            out.push((lits, weight(rng, cfg.max_weight)));
        }
    }
    out
}

/// Builds a formula for `cfg`. Random families get exactly `m` distinct clauses.
pub fn generate(cfg: &GeneratorConfig) -> Result<Formula, GenerateError> {
    if let Family::Tight(l) = cfg.family {
        return tight_family(l);
    }
    if cfg.max_weight == 0 {
        return Err(GenerateError::ZeroMaxWeight);
    }
    if cfg.n >= u32::MAX as usize {
        return Err(GenerateError::TooManyVars(cfg.n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let raw: Vec<(Vec<Literal>, Weight)> = match cfg.family {
        Family::Tight(_) => unreachable!(),
        Family::Compact => {
            let n = cfg.n;
            let max = n + n * n.saturating_sub(1) / 2;
            if n == 0 || cfg.m < n || cfg.m > max {
                return Err(GenerateError::CompactClauseCount { n, m: cfg.m, max });
            }
            let mut raw: Vec<_> = (0..n)
                .map(|i| (vec![var(i).positive()], weight(&mut rng, cfg.max_weight)))
                .collect();
            // Pair index p ↦ (i, j) with i < j, in row-major order.
            let pairs = n * (n - 1) / 2;
            let mut chosen = sample(&mut rng, pairs, cfg.m - n).into_vec();
            chosen.sort_unstable();
            let mut i = 0;
            let mut row_start = 0;
            for p in chosen {
                while p >= row_start + (n - 1 - i) {
                    row_start += n - 1 - i;
                    i += 1;
                }
                let j = i + 1 + (p - row_start);
                raw.push((
                    vec![var(i).negative(), var(j).negative()],
                    weight(&mut rng, cfg.max_weight),
                ));
            }
            raw
        }
        Family::Ucf | Family::General => {
            if cfg.n == 0 {
                return Err(GenerateError::NoVars { family: cfg.family });
            }
            let max = max_clauses(cfg.family, cfg.n).unwrap();
            if cfg.m as u128 > max {
                return Err(GenerateError::TooManyClauses {
                    family: cfg.family,
                    n: cfg.n,
                    m: cfg.m,
                    max,
                });
            }
            if cfg.family == Family::Ucf {
                let signs: Vec<bool> = (0..cfg.n).map(|_| rng.gen()).collect();
                random_clauses(&mut rng, cfg, Some(&signs))
            } else {
                random_clauses(&mut rng, cfg, None)
            }
        }
        Family::TriangleBatch => {
            if cfg.n == 0 || cfg.n % 3 != 0 {
                return Err(GenerateError::TriangleCount(cfg.n));
            }
            let mut raw = Vec::new();
            for t in 0..cfg.n / 3 {
                let [x, y, z] = [var(3 * t), var(3 * t + 1), var(3 * t + 2)];
                for v in [x, y, z] {
                    raw.push((vec![v.positive()], weight(&mut rng, cfg.max_weight)));
                }
                for (a, b) in [(x, y), (x, z), (y, z)] {
                    raw.push((
                        vec![a.negative(), b.negative()],
                        weight(&mut rng, cfg.max_weight),
                    ));
                }
            }
            raw
        }
    };
    Ok(normalize(raw).expect("generated clauses are well-formed").0)
}

/// The family on which `φ·w + γ·|V|` is attained exactly: optimum `2l`.
pub fn tight_family(l: usize) -> Result<Formula, GenerateError> {
    if 2 * l >= u32::MAX as usize {
        return Err(GenerateError::TooManyVars(2 * l));
    }
    let one = || Weight::from(1u32);
    let raw = (1..=l).flat_map(|i| {
        let x = Var::new(2 * i as u32 - 1);
        let y = Var::new(2 * i as u32);
        [
            (vec![x.positive()], one()),
            (vec![y.positive()], one()),
            (vec![x.negative(), y.negative()], one()),
        ]
    });
    Ok(normalize(raw).expect("well-formed").0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_three() {
        let f = generate(&GeneratorConfig::new(Family::Tight(3), 0, 0, 0, 0)).unwrap();
        assert_eq!(f.num_clauses(), 9);
        assert_eq!(f.num_vars(), 6);
        assert!(f.clauses().all(|(_, w)| *w == 1u32.into()));
        assert!(f.is_compact());
    }

    #[test]
    fn family_predicates() {
        let c = generate(&GeneratorConfig::new(Family::Compact, 5, 9, 4, 7)).unwrap();
        assert!(c.is_compact());
        assert_eq!(c.num_clauses(), 9);
        let full = generate(&GeneratorConfig::new(Family::Compact, 5, 15, 4, 7)).unwrap();
        assert_eq!(full.num_clauses(), 15);
        let u = generate(&GeneratorConfig::new(Family::Ucf, 6, 12, 3, 1)).unwrap();
        assert!(u.is_ucf());
        assert_eq!(u.num_clauses(), 12);
        // Every one of the 8 clauses over two variables.
        let g = generate(&GeneratorConfig::new(Family::General, 2, 8, 3, 1)).unwrap();
        assert_eq!(g.num_clauses(), 8);
        let t = generate(&GeneratorConfig::new(Family::TriangleBatch, 6, 0, 1, 0)).unwrap();
        assert_eq!(t.num_clauses(), 12);
        assert!(t.is_compact());
    }

    #[test]
    fn deterministic() {
        for family in [Family::Compact, Family::Ucf, Family::General] {
            let cfg = GeneratorConfig::new(family, 8, 14, 5, 42);
            assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        }
    }

    #[test]
    fn infeasible_configs() {
        assert!(matches!(
            generate(&GeneratorConfig::new(Family::Compact, 5, 4, 1, 0)),
            Err(GenerateError::CompactClauseCount { .. })
        ));
        assert!(matches!(
            generate(&GeneratorConfig::new(Family::Compact, 3, 7, 1, 0)),
            Err(GenerateError::CompactClauseCount { .. })
        ));
        assert_eq!(
            generate(&GeneratorConfig::new(Family::Ucf, 3, 3, 0, 0)),
            Err(GenerateError::ZeroMaxWeight)
        );
        assert!(matches!(
            generate(&GeneratorConfig::new(Family::Ucf, 1, 2, 1, 0)),
            Err(GenerateError::TooManyClauses { max: 1, .. })
        ));
        assert_eq!(
            generate(&GeneratorConfig::new(Family::TriangleBatch, 4, 0, 1, 0)),
            Err(GenerateError::TriangleCount(4))
        );
    }

    #[test]
    fn family_names() {
        for s in ["compact", "ucf", "general", "triangle-batch", "tight(4)"] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        assert_eq!("tight:2".parse::<Family>(), Ok(Family::Tight(2)));
        assert!("tight(x)".parse::<Family>().is_err());
    }
}
