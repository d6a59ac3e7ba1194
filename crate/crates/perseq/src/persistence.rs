//! Integer persistent homology of a filtered chain complex: the born/dying
//! groups `BD^{i,k}_n`, the total groups `H^{i,j}_n` and the double-filtration
//! groups `H^{i,j,k}_n`, each as a basis-divisors presentation whose
//! generators are explicit ambient cycles.
//!
//! The three quotient formulas used here are:
//!
//! ```text
//! BD^{i,k}_n    = (d(Z^{k-i}_{k,n-k+1}) + C^{i-1}_n) / (d(Z^{k-i-1}_{k-1,n-k+2}) + C^{i-1}_n)
//! H^{i,j}_n     = (ker d_n ∩ C^i_n) / d(Z^{j-i}_{j,n-j+1})
//! H^{i,j,k}_n   = ((ker d_n ∩ C^{i-1}_n) + d(Z^{k-i}_{k,n-k+1})) / d(Z^{j-i}_{j,n-j+1})
//! ```
//!
//! Total and triple groups are always computed from their own formulas, never
//! reconstructed from BD groups: over the integers the BD data does not
//! determine them (extension problems).
//!
//! Stages above the top of the filtration are clamped, so queries past the
//! last stage return the stabilized groups; only stage-order violations are
//! errors.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::complex::{Chain, Degree, FilteredChainComplex, Stage};
use crate::lattice::AbelianGroupPresentation;
use crate::matrix::IntMatrix;

/// Death stage of a persistence query; `Infinite` marks classes that survive
/// the whole filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    At(Stage),
    Infinite,
}

impl fmt::Display for Death {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Death::At(k) => write!(f, "{}", k),
            Death::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PersistenceQuery {
    Bd { i: Stage, k: Death, n: Degree },
    Total { i: Stage, j: Stage, n: Degree },
    Triple { i: Stage, j: Stage, k: Death, n: Degree },
}

impl PersistenceQuery {
    pub fn degree(&self) -> Degree {
        match self {
            PersistenceQuery::Bd { n, .. }
            | PersistenceQuery::Total { n, .. }
            | PersistenceQuery::Triple { n, .. } => *n,
        }
    }

    pub fn birth(&self) -> Stage {
        match self {
            PersistenceQuery::Bd { i, .. }
            | PersistenceQuery::Total { i, .. }
            | PersistenceQuery::Triple { i, .. } => *i,
        }
    }
}

impl fmt::Display for PersistenceQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PersistenceQuery::Bd { i, k, n } => write!(f, "BD^{{{},{}}}_{}", i, k, n),
            PersistenceQuery::Total { i, j, n } => write!(f, "H^{{{},{}}}_{}", i, j, n),
            PersistenceQuery::Triple { i, j, k, n } => write!(f, "H^{{{},{},{}}}_{}", i, j, k, n),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("stage order violation in {0}")]
    StageOrder(String),
    #[error("stage {stage} is below the filtration start {start}")]
    BelowStart { stage: Stage, start: Stage },
}

/// A persistent homology group: divisors plus one ambient cycle per summand.
#[derive(Clone, Debug)]
pub struct PersistentGroup {
    pub query: PersistenceQuery,
    pub presentation: AbelianGroupPresentation,
}

impl PersistentGroup {
    pub fn is_trivial(&self) -> bool {
        self.presentation.is_trivial()
    }

    pub fn divisors(&self) -> &[BigInt] {
        self.presentation.divisors()
    }
}

fn check_order(cond: bool, desc: impl Fn() -> String) -> Result<(), QueryError> {
    if cond {
        Ok(())
    } else {
        Err(QueryError::StageOrder(desc()))
    }
}

/// `BD^{i,k}_n`: classes born at stage i that die entering stage k.
///
/// With `k = Infinite` this is the group of classes born at i that survive
/// the whole filtration, `H^{i,m}_n / H^{i-1,m}_n` (the stabilized query, the
/// graded piece the final page `E^infty` sees).
pub fn bd_group(
    c: &FilteredChainComplex,
    i: Stage,
    k: Death,
    n: Degree,
) -> Result<PersistentGroup, QueryError> {
    let fs = c.filtration_start();
    if i < fs - 1 {
        return Err(QueryError::BelowStart { stage: i, start: fs });
    }
    let query = PersistenceQuery::Bd { i, k, n };
    let (numerator, denominator, strip_against) = match k {
        Death::At(k) => {
            check_order(i < k, || format!("BD requires i < k, got i={i}, k={k}"))?;
            let z_new = c.almost_cycles(k - i, k, n - k + 1);
            let z_old = c.almost_cycles(k - i - 1, k - 1, n - k + 2);
            let lower = c.filtration_submodule(i - 1, n);
            let new_b = c.boundary_image(&z_new, n);
            let num = new_b.sum(&lower).expect("ambient");
            let den = c.boundary_image(&z_old, n).sum(&lower).expect("ambient");
            (num, den, (new_b, lower))
        }
        Death::Infinite => {
            let all_b = c.boundaries_in(c.max_stage(), n);
            let cyc_i = c.cycles_in(i, n);
            let num = cyc_i.sum(&all_b).expect("ambient");
            let den = c.cycles_in(i - 1, n).sum(&all_b).expect("ambient");
            (num, den, (cyc_i, all_b))
        }
    };
    let raw = numerator
        .quotient(&denominator)
        .expect("BD denominator contained in numerator");
    // Re-lift each generator onto its cycle component: the discarded part is
    // inside the denominator, so classes are unchanged, and the kept part is
    // a genuine cycle in C^i.
    let (cycle_part, rest) = strip_against;
    let split = cycle_part.basis().hstack(rest.basis());
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..raw.len() {
        let g = raw.generator(j);
        let x = split.solve(&g).expect("generator lies in the numerator");
        let cpart: Vec<BigInt> = x[..cycle_part.rank()].to_vec();
        gens.push(cycle_part.basis().mul_vec(&cpart));
    }
    let presentation = AbelianGroupPresentation::from_parts(
        raw.divisors().to_vec(),
        IntMatrix::from_columns(c.dim(n), &gens),
    );
    Ok(PersistentGroup {
        query,
        presentation,
    })
}

/// `H^{i,j}_n = im(H_n(K^i) -> H_n(K^j))`, the total persistent group.
pub fn total_prst_group(
    c: &FilteredChainComplex,
    i: Stage,
    j: Stage,
    n: Degree,
) -> Result<PersistentGroup, QueryError> {
    let fs = c.filtration_start();
    if i < fs - 1 {
        return Err(QueryError::BelowStart { stage: i, start: fs });
    }
    check_order(i <= j, || format!("total group requires i <= j, got i={i}, j={j}"))?;
    let numerator = c.cycles_in(i, n);
    let z = c.almost_cycles(j - i, j, n - j + 1);
    let denominator = c.boundary_image(&z, n);
    let presentation = numerator
        .quotient(&denominator)
        .expect("boundaries of Z^{j-i} land in ker d ∩ C^i");
    Ok(PersistentGroup {
        query: PersistenceQuery::Total { i, j, n },
        presentation,
    })
}

/// `H^{i,j,k}_n`: the double-filtration group of classes of `H_n(K^j)` that
/// are old (from stage i-1) or are born at stage i and die at or before k.
/// `k = Infinite` gives the supremum of the chain, `H^{i,j}_n` itself.
pub fn triple_prst_group(
    c: &FilteredChainComplex,
    i: Stage,
    j: Stage,
    k: Death,
    n: Degree,
) -> Result<PersistentGroup, QueryError> {
    let fs = c.filtration_start();
    if i < fs - 1 {
        return Err(QueryError::BelowStart { stage: i, start: fs });
    }
    check_order(i <= j, || format!("triple group requires i <= j, got i={i}, j={j}"))?;
    let k_stage = match k {
        Death::At(ks) => {
            check_order(j <= ks, || {
                format!("triple group requires j <= k, got j={j}, k={ks}")
            })?;
            ks
        }
        Death::Infinite => {
            let total = total_prst_group(c, i, j, n)?;
            return Ok(PersistentGroup {
                query: PersistenceQuery::Triple { i, j, k, n },
                presentation: total.presentation,
            });
        }
    };
    let old_cycles = c.cycles_in(i - 1, n);
    let z_dying = c.almost_cycles(k_stage - i, k_stage, n - k_stage + 1);
    let numerator = old_cycles
        .sum(&c.boundary_image(&z_dying, n))
        .expect("ambient");
    let z_den = c.almost_cycles(j - i, j, n - j + 1);
    let denominator = c.boundary_image(&z_den, n);
    let presentation = numerator
        .quotient(&denominator)
        .expect("denominator contained in the triple numerator");
    Ok(PersistentGroup {
        query: PersistenceQuery::Triple { i, j, k, n },
        presentation,
    })
}

/// One `(divisor, cycle)` pair per presentation summand.
pub fn persistent_generators(g: &PersistentGroup) -> Vec<(BigInt, Chain)> {
    let n = g.query.degree();
    (0..g.presentation.len())
        .map(|idx| {
            (
                g.presentation.divisors()[idx].clone(),
                Chain::new(n, g.presentation.generator(idx)),
            )
        })
        .collect()
}

/// Check the generator contract of a persistent group: every generator is a
/// cycle, lies in the right filtration submodule, and for finite BD queries
/// its class dies entering stage k. Used by tests and examples.
pub fn verify_persistent_group(
    c: &FilteredChainComplex,
    g: &PersistentGroup,
) -> Result<(), String> {
    let n = g.query.degree();
    let stage_bound = match g.query {
        PersistenceQuery::Bd { i, .. } | PersistenceQuery::Total { i, .. } => i,
        PersistenceQuery::Triple { j, .. } => j,
    };
    let sub = c.filtration_submodule(stage_bound, n);
    for (div, chain) in persistent_generators(g) {
        if !c.boundary(&chain).is_zero() {
            return Err(format!("generator {:?} is not a cycle", chain.coords));
        }
        if !sub.contains(&chain.coords) {
            return Err(format!(
                "generator {:?} escapes C^{}",
                chain.coords, stage_bound
            ));
        }
        if let PersistenceQuery::Bd { k: Death::At(k), .. } = g.query {
            if !c.boundaries_in(k, n).contains(&chain.coords) {
                return Err(format!(
                    "generator {:?} does not die entering stage {}",
                    chain.coords, k
                ));
            }
        }
        let _ = div;
    }
    Ok(())
}
