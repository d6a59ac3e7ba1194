//! Field-coefficient mode: Betti numbers of the persistent homology groups
//! over Q or F_p, the bar multiplicity formula, and a direct field-mode
//! pipeline for bar ranks.
//!
//! The same filtration submodules drive both modes; only the scalar domain
//! changes. Over F_p the kernels and ranks come from elimination mod p
//! (reducing an integer kernel mod p would be wrong: [2] has zero integer
//! kernel but a full kernel mod 2). Over Q the saturated integer kernels and
//! integer ranks are already the rational ones.

use num_bigint::BigInt;
use num_integer::Integer;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::complex::{Degree, FilteredChainComplex, Stage};
use crate::matrix::IntMatrix;
use crate::persistence::Death;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime (use 0 for the rationals)")]
    NotPrime(i64),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

/// The scalar domain: a prime characteristic or 0 for the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: i64,
}

impl FieldSpec {
    pub fn new(p: i64) -> Result<Self, FieldError> {
        if p == 0 || is_prime(p) {
            Ok(FieldSpec { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { p: 0 }
    }

    pub fn characteristic(&self) -> i64 {
        self.p
    }

    fn rank(&self, m: &IntMatrix) -> usize {
        if self.p == 0 {
            m.rank()
        } else {
            modp_rank_kernel(m, self.p).0
        }
    }

    fn kernel(&self, m: &IntMatrix) -> IntMatrix {
        if self.p == 0 {
            m.kernel_basis()
        } else {
            let (_, kernel) = modp_rank_kernel(m, self.p);
            IntMatrix::from_fn(m.cols(), kernel.len(), |i, j| BigInt::from(kernel[j][i]))
        }
    }
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Elimination over F_p: rank and a kernel basis (entries lifted to 0..p).
fn modp_rank_kernel(m: &IntMatrix, p: i64) -> (usize, Vec<Vec<i64>>) {
    let rows = m.rows();
    let cols = m.cols();
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<i64>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| i64::try_from(m.at(i, j).mod_floor(&pb)).expect("residue fits"))
                .collect()
        })
        .collect();
    let inv = |x: i64| -> i64 {
        // Fermat inverse; p is prime and x != 0 mod p.
        let mut result = 1i64;
        let mut base = x.rem_euclid(p);
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = (result as i128 * base as i128 % p as i128) as i64;
            }
            base = (base as i128 * base as i128 % p as i128) as i64;
            e >>= 1;
        }
        result
    };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let pinv = inv(a[rank][col]);
        for entry in a[rank][col..cols].iter_mut() {
            *entry = (*entry as i128 * pinv as i128 % p as i128) as i64;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (entry, pivot) in row[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                    let v = (*entry as i128 - factor as i128 * *pivot as i128)
                        .rem_euclid(p as i128) as i64;
                    *entry = v;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let mut kernel = Vec::new();
    for free_col in 0..cols {
        if pivot_of_col[free_col].is_some() {
            continue;
        }
        let mut v = vec![0i64; cols];
        v[free_col] = 1;
        for col in 0..cols {
            if let Some(r) = pivot_of_col[col] {
                v[col] = (-a[r][free_col]).rem_euclid(p);
            }
        }
        kernel.push(v);
    }
    (rank, kernel)
}

/// Table of persistent Betti numbers `beta^{i,j}_n = rank_F H^{i,j}_n`.
#[derive(Clone, Debug)]
pub struct FieldBettiTable {
    field: FieldSpec,
    filtration_start: Stage,
    max_stage: Stage,
    min_degree: Degree,
    max_degree: Degree,
    beta: BTreeMap<(Stage, Stage, Degree), usize>,
}

impl FieldBettiTable {
    pub fn characteristic(&self) -> i64 {
        self.field.characteristic()
    }

    pub fn max_stage(&self) -> Stage {
        self.max_stage
    }

    pub fn filtration_start(&self) -> Stage {
        self.filtration_start
    }

    /// `beta^{i,j}_n`; stages before the filtration start give 0.
    pub fn beta(&self, i: Stage, j: Stage, n: Degree) -> usize {
        if i < self.filtration_start || n < self.min_degree || n > self.max_degree {
            return 0;
        }
        assert!(i <= j && j <= self.max_stage, "beta index out of range");
        *self.beta.get(&(i, j, n)).unwrap_or(&0)
    }

    /// The bar multiplicity `mu^{i,k}_n`, from the Betti-table formula for
    /// finite deaths and the final-stage difference for infinite bars.
    pub fn mu(&self, i: Stage, k: Death, n: Degree) -> Result<usize, FieldError> {
        if i < self.filtration_start || i > self.max_stage {
            return Err(FieldError::IndexOutOfRange(format!("birth stage {}", i)));
        }
        let m = self.max_stage;
        match k {
            Death::At(ks) => {
                if ks <= i || ks > m {
                    return Err(FieldError::IndexOutOfRange(format!(
                        "death stage {} for birth {}",
                        ks, i
                    )));
                }
                let a = self.beta(i, ks - 1, n) as i64 - self.beta(i, ks, n) as i64;
                let b = self.beta(i - 1, ks - 1, n) as i64 - self.beta(i - 1, ks, n) as i64;
                Ok((a - b).max(0) as usize)
            }
            Death::Infinite => {
                Ok(self.beta(i, m, n) - self.beta(i - 1, m, n))
            }
        }
    }
}

/// Dimension over the field of `ker d_n ∩ C^i_n`.
fn cycle_dim(c: &FilteredChainComplex, field: FieldSpec, i: Stage, n: Degree) -> usize {
    if i < c.filtration_start() {
        return 0;
    }
    let incl = c.stage_inclusion(i.min(c.max_stage()), n);
    let restricted = c.differential(n).mul(&incl);
    incl.cols() - field.rank(&restricted)
}

/// Basis (over the field) of `Z^r_{p,q}` in ambient coordinates.
fn field_almost_cycles(
    c: &FilteredChainComplex,
    field: FieldSpec,
    r: i64,
    p: Stage,
    q: Degree,
) -> IntMatrix {
    let n = p + q;
    let p_eff = p.min(c.max_stage());
    if p_eff < c.filtration_start() {
        return IntMatrix::zeros(c.dim(n), 0);
    }
    let incl = c.stage_inclusion(p_eff, n);
    let restricted = c.differential(n).mul(&incl);
    let forbidden: Vec<usize> = c
        .generators(n - 1)
        .iter()
        .enumerate()
        .filter(|(_, g)| g.stage > p - r)
        .map(|(i, _)| i)
        .collect();
    let projected = restricted.select_rows(&forbidden);
    incl.mul(&field.kernel(&projected))
}

/// Dimension over the field of `d(Z^{j-i}_{j, n-j+1})`.
fn boundary_dim(c: &FilteredChainComplex, field: FieldSpec, i: Stage, j: Stage, n: Degree) -> usize {
    let z = field_almost_cycles(c, field, j - i, j, n - j + 1);
    field.rank(&c.differential(n + 1).mul(&z))
}

/// Compute the full Betti table over Q (`p = 0`) or F_p.
pub fn field_betti(c: &FilteredChainComplex, p: i64) -> Result<FieldBettiTable, FieldError> {
    let field = FieldSpec::new(p)?;
    let fs = c.filtration_start();
    let m = c.max_stage();
    let mut beta = BTreeMap::new();
    for n in c.min_degree()..=c.max_degree() {
        for i in fs..=m {
            let cyc = cycle_dim(c, field, i, n);
            for j in i..=m {
                let value = cyc - boundary_dim(c, field, i, j, n);
                if value > 0 {
                    beta.insert((i, j, n), value);
                }
            }
        }
    }
    Ok(FieldBettiTable {
        field,
        filtration_start: fs,
        max_stage: m,
        min_degree: c.min_degree(),
        max_degree: c.max_degree(),
        beta,
    })
}

/// Rank of `H^{i,j}_n` over the field, computed directly (not via the table).
pub fn field_total_rank(
    c: &FilteredChainComplex,
    p: i64,
    i: Stage,
    j: Stage,
    n: Degree,
) -> Result<usize, FieldError> {
    let field = FieldSpec::new(p)?;
    if i < c.filtration_start() {
        return Ok(0);
    }
    Ok(cycle_dim(c, field, i, n) - boundary_dim(c, field, i, j.max(i), n))
}

/// Bar multiplicity over the field from the subquotient pipeline itself:
/// the dimension of `BD^{i,k}_n` computed with field elimination throughout.
pub fn field_bd_rank(
    c: &FilteredChainComplex,
    p: i64,
    i: Stage,
    k: Death,
    n: Degree,
) -> Result<usize, FieldError> {
    let field = FieldSpec::new(p)?;
    if i < c.filtration_start() {
        return Ok(0);
    }
    let lower = c.stage_inclusion((i - 1).min(c.max_stage()), n);
    let lower = if i - 1 < c.filtration_start() {
        IntMatrix::zeros(c.dim(n), 0)
    } else {
        lower
    };
    match k {
        Death::At(ks) => {
            let z_new = field_almost_cycles(c, field, ks - i, ks, n - ks + 1);
            let z_old = field_almost_cycles(c, field, ks - i - 1, ks - 1, n - ks + 2);
            let d = c.differential(n + 1);
            let num = d.mul(&z_new).hstack(&lower);
            let den = d.mul(&z_old).hstack(&lower);
            Ok(field.rank(&num) - field.rank(&den))
        }
        Death::Infinite => {
            // (ker ∩ C^i + B) / (ker ∩ C^{i-1} + B) with B all boundaries.
            let all_b = c
                .differential(n + 1)
                .mul(&c.stage_inclusion(c.max_stage(), n + 1));
            let cyc_i = field_almost_cycles(
                c,
                field,
                c.max_stage() - c.filtration_start() + 1,
                i.min(c.max_stage()),
                n - i.min(c.max_stage()),
            );
            let cyc_prev = field_almost_cycles(
                c,
                field,
                c.max_stage() - c.filtration_start() + 1,
                (i - 1).min(c.max_stage()),
                n - (i - 1).min(c.max_stage()),
            );
            let num = cyc_i.hstack(&all_b);
            let den = cyc_prev.hstack(&all_b);
            Ok(field.rank(&num) - field.rank(&den))
        }
    }
}
