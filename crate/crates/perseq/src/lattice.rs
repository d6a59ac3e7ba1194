//! Subgroups of Z^m ("lattices", possibly of non-full rank) and basis-divisors
//! presentations of their quotients.
//!
//! Every lattice is stored in column Hermite normal form with zero columns
//! removed, so equal subgroups have identical representations and `==` is
//! subgroup equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("ambient rank mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("denominator is not contained in the numerator (generator {0})")]
    NotContained(usize),
}

/// A subgroup of Z^m given by a canonical generator matrix (m x g, column HNF,
/// no zero columns).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: IntMatrix::zeros(ambient_rank, 0),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    /// Normalize an arbitrary generator matrix (columns generate).
    pub fn from_generators(gens: IntMatrix) -> Self {
        let ambient_rank = gens.rows();
        let h = gens.hermite();
        let nz: Vec<usize> = (0..h.cols())
            .filter(|&j| (0..ambient_rank).any(|i| !h.at(i, j).is_zero()))
            .collect();
        Lattice {
            ambient_rank,
            basis: h.select_columns(&nz),
        }
    }

    /// The kernel `{x : a * x = 0}` as a saturated lattice in Z^cols.
    pub fn kernel_of(a: &IntMatrix) -> Self {
        Lattice::from_generators(a.kernel_basis())
    }

    /// The column span of `a` as a lattice in Z^rows.
    pub fn image_of(a: &IntMatrix) -> Self {
        Lattice::from_generators(a.clone())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.cols() == 0
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Smallest lattice containing both summands.
    pub fn sum(&self, other: &Lattice) -> Result<Lattice, LatticeError> {
        if self.ambient_rank != other.ambient_rank {
            return Err(LatticeError::AmbientMismatch(
                self.ambient_rank,
                other.ambient_rank,
            ));
        }
        Ok(Lattice::from_generators(self.basis.hstack(&other.basis)))
    }

    /// Elements lying in both lattices, via the kernel of the stacked
    /// generator matrix.
    pub fn intersection(&self, other: &Lattice) -> Result<Lattice, LatticeError> {
        if self.ambient_rank != other.ambient_rank {
            return Err(LatticeError::AmbientMismatch(
                self.ambient_rank,
                other.ambient_rank,
            ));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Lattice::zero(self.ambient_rank));
        }
        let stacked = self.basis.hstack(&other.basis);
        let k = stacked.kernel_basis();
        let own: Vec<usize> = (0..self.basis.cols()).collect();
        let x_part = k.select_rows(&own);
        Ok(Lattice::from_generators(self.basis.mul(&x_part)))
    }

    /// Membership test by back-substitution against the HNF basis.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.ambient_rank, "coordinate length mismatch");
        self.coordinates_of(x).is_some()
    }

    /// Coordinates of `x` in the stored basis, if `x` lies in the lattice.
    pub fn coordinates_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient_rank, "coordinate length mismatch");
        let mut rest: Vec<BigInt> = x.to_vec();
        let mut coords = vec![BigInt::zero(); self.basis.cols()];
        let mut col = 0usize;
        for row in 0..self.ambient_rank {
            if col < self.basis.cols() && !self.basis.at(row, col).is_zero() {
                let (q, r) = rest[row].div_rem(self.basis.at(row, col));
                if !r.is_zero() {
                    return None;
                }
                if !q.is_zero() {
                    for (i, entry) in rest.iter_mut().enumerate().skip(row) {
                        let v = &*entry - &q * self.basis.at(i, col);
                        *entry = v;
                    }
                }
                coords[col] = q;
                col += 1;
            } else if !rest[row].is_zero() {
                return None;
            }
        }
        Some(coords)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.columns().all(|c| self.contains(&c))
    }

    /// Basis-divisors presentation of `self / denominator`.
    ///
    /// Generators are chains in the ambient module lifting the cyclic
    /// generators through the Smith transforms; trivial (divisor 1) summands
    /// are dropped.
    pub fn quotient(&self, denominator: &Lattice) -> Result<AbelianGroupPresentation, LatticeError> {
        if self.ambient_rank != denominator.ambient_rank {
            return Err(LatticeError::AmbientMismatch(
                self.ambient_rank,
                denominator.ambient_rank,
            ));
        }
        let t = self.basis.cols();
        // Relation matrix: denominator generators in numerator coordinates.
        let mut rel = IntMatrix::zeros(t, denominator.basis.cols());
        for (j, col) in denominator.basis.columns().enumerate() {
            let coords = self
                .coordinates_of(&col)
                .ok_or(LatticeError::NotContained(j))?;
            for (i, c) in coords.into_iter().enumerate() {
                rel.set(i, j, c);
            }
        }
        let snf = rel.smith();
        let lifted = self.basis.mul(&snf.u_inv);
        let mut divisors = Vec::new();
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        let diag_len = t.min(rel.cols());
        for i in 0..t {
            let d = if i < diag_len {
                snf.d.at(i, i).clone()
            } else {
                BigInt::zero()
            };
            if d == BigInt::one() {
                continue;
            }
            divisors.push(d);
            gens.push(lifted.column(i));
        }
        // Nonzero divisors come first (ascending by the chain); zeros trail.
        let mut order: Vec<usize> = (0..divisors.len()).collect();
        order.sort_by_key(|&i| divisors[i].is_zero());
        let divisors: Vec<BigInt> = order.iter().map(|&i| divisors[i].clone()).collect();
        let gens: Vec<Vec<BigInt>> = order.iter().map(|&i| gens[i].clone()).collect();
        Ok(AbelianGroupPresentation {
            divisors,
            generators: IntMatrix::from_columns(self.ambient_rank, &gens),
        })
    }

    /// Index [self : denominator] when the quotient is finite.
    pub fn index_over(&self, denominator: &Lattice) -> Result<Option<BigInt>, LatticeError> {
        let pres = self.quotient(denominator)?;
        if pres.free_rank() > 0 {
            return Ok(None);
        }
        let mut idx = BigInt::one();
        for d in &pres.divisors {
            idx *= d;
        }
        Ok(Some(idx))
    }
}

/// Basis-divisors description of a finitely generated abelian group: a list of
/// invariant factors (each dividing the next, 0 for a free summand, never 1)
/// and one ambient generator chain per factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroupPresentation {
    divisors: Vec<BigInt>,
    generators: IntMatrix,
}

impl AbelianGroupPresentation {
    pub fn trivial(ambient_rank: usize) -> Self {
        AbelianGroupPresentation {
            divisors: Vec::new(),
            generators: IntMatrix::zeros(ambient_rank, 0),
        }
    }

    /// Construct from raw parts, normalizing order and dropping unit divisors.
    pub fn from_parts(divisors: Vec<BigInt>, generators: IntMatrix) -> Self {
        assert_eq!(divisors.len(), generators.cols(), "divisor/generator count");
        let mut order: Vec<usize> = (0..divisors.len()).filter(|&i| divisors[i] != BigInt::one()).collect();
        order.sort_by_key(|&i| (divisors[i].is_zero(), divisors[i].clone()));
        let gens: Vec<Vec<BigInt>> = order.iter().map(|&i| generators.column(i)).collect();
        AbelianGroupPresentation {
            divisors: order.iter().map(|&i| divisors[i].clone()).collect(),
            generators: IntMatrix::from_columns(generators.rows(), &gens),
        }
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.generators.column(i)
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Number of free (Z) summands.
    pub fn free_rank(&self) -> usize {
        self.divisors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.divisors.iter().filter(|d| !d.is_zero())
    }

    /// Same isomorphism type (equal divisor lists).
    pub fn iso_eq(&self, other: &AbelianGroupPresentation) -> bool {
        self.divisors == other.divisors
    }

    pub fn divisors_u64(&self) -> Vec<u64> {
        self.divisors
            .iter()
            .map(|d| u64::try_from(d.clone()).expect("divisor fits in u64"))
            .collect()
    }

    /// Compact group label: "0" for trivial, else divisors as "Z/2+Z/4+Z".
    pub fn label(&self) -> String {
        label_for_divisors(&self.divisors)
    }
}

/// Shared label syntax for divisor lists ("Z", "Z/2", "Z/2+Z/4+Z", "0").
pub fn label_for_divisors(divisors: &[BigInt]) -> String {
    if divisors.is_empty() {
        return "0".to_string();
    }
    divisors
        .iter()
        .map(|d| {
            if d.is_zero() {
                "Z".to_string()
            } else {
                format!("Z/{}", d)
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Invariant factors of a direct sum of groups given by divisor lists.
pub fn direct_sum_divisors(parts: &[&[BigInt]]) -> Vec<BigInt> {
    let torsion: Vec<BigInt> = parts
        .iter()
        .flat_map(|p| p.iter().filter(|d| !d.is_zero()).cloned())
        .collect();
    let free: usize = parts
        .iter()
        .map(|p| p.iter().filter(|d| d.is_zero()).count())
        .sum();
    let n = torsion.len();
    let mut diag = IntMatrix::zeros(n, n);
    for (i, d) in torsion.iter().enumerate() {
        diag.set(i, i, d.clone());
    }
    let snf = diag.smith();
    let mut out: Vec<BigInt> = snf
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero() && *d != BigInt::one())
        .collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), free));
    out
}
