//! Filtered chain complexes of free Z-modules: graded bases, boundary
//! matrices, a filtration stage per generator, and the submodules every
//! subquotient formula is assembled from.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::lattice::Lattice;
use crate::matrix::IntMatrix;

pub type Degree = i64;
pub type Stage = i64;
pub type Level = i64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("d o d != 0 on generator '{generator}' in degree {degree}")]
    BoundarySquare { degree: Degree, generator: String },
    #[error(
        "differential does not respect the filtration: d('{generator}') in degree {degree} \
         touches '{target}' at a later stage"
    )]
    FiltrationViolation {
        degree: Degree,
        generator: String,
        target: String,
    },
    #[error("generator '{generator}' has stage {stage}, below the filtration start {start}")]
    StageBelowStart {
        generator: String,
        stage: Stage,
        start: Stage,
    },
    #[error("differential shape mismatch in degree {0}")]
    ShapeMismatch(Degree),
    #[error("duplicate generator name '{0}'")]
    DuplicateGenerator(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("filtration start must be 0 or 1, got {0}")]
    BadFiltrationStart(Stage),
}

/// A named basis element with its filtration stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub stage: Stage,
}

impl Generator {
    pub fn new(name: impl Into<String>, stage: Stage) -> Self {
        Generator {
            name: name.into(),
            stage,
        }
    }
}

/// An element of `C_n` in the chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: Degree,
    pub coords: Vec<BigInt>,
}

impl Chain {
    pub fn new(degree: Degree, coords: Vec<BigInt>) -> Self {
        Chain { degree, coords }
    }

    pub fn zero(degree: Degree, len: usize) -> Self {
        Chain {
            degree,
            coords: vec![BigInt::zero(); len],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Render as a signed combination of generator names, e.g. "a - 2*b".
    pub fn format(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.coords.len(), "name count mismatch");
        let mut out = String::new();
        for (c, name) in self.coords.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            let sign_neg = c.sign() == num_bigint::Sign::Minus;
            if out.is_empty() {
                if sign_neg {
                    out.push('-');
                }
            } else {
                out.push_str(if sign_neg { " - " } else { " + " });
            }
            if mag == &num_bigint::BigUint::from(1u32) {
                out.push_str(name);
            } else {
                out.push_str(&format!("{}*{}", mag, name));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A finite filtered chain complex. Degrees form a contiguous range; degrees
/// with empty basis are represented, not skipped, so all quotient formulas
/// are total.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredChainComplex {
    min_degree: Degree,
    bases: Vec<Vec<Generator>>,
    /// `diffs[i]` maps degree `min_degree + i` to `min_degree + i - 1`;
    /// `diffs[0]` has zero rows.
    diffs: Vec<IntMatrix>,
    filtration_start: Stage,
    max_stage: Stage,
}

impl FilteredChainComplex {
    pub fn new(
        min_degree: Degree,
        bases: Vec<Vec<Generator>>,
        diffs: Vec<IntMatrix>,
        filtration_start: Stage,
    ) -> Result<Self, ComplexError> {
        if filtration_start != 0 && filtration_start != 1 {
            return Err(ComplexError::BadFiltrationStart(filtration_start));
        }
        if diffs.len() != bases.len() {
            return Err(ComplexError::ShapeMismatch(min_degree));
        }
        let mut max_stage = filtration_start;
        for (idx, basis) in bases.iter().enumerate() {
            let n = min_degree + idx as Degree;
            let rows = if idx == 0 { 0 } else { bases[idx - 1].len() };
            if diffs[idx].rows() != rows || diffs[idx].cols() != basis.len() {
                return Err(ComplexError::ShapeMismatch(n));
            }
            for g in basis {
                if g.stage < filtration_start {
                    return Err(ComplexError::StageBelowStart {
                        generator: g.name.clone(),
                        stage: g.stage,
                        start: filtration_start,
                    });
                }
                max_stage = max_stage.max(g.stage);
            }
        }
        let complex = FilteredChainComplex {
            min_degree,
            bases,
            diffs,
            filtration_start,
            max_stage,
        };
        complex.validate()?;
        Ok(complex)
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for idx in 0..self.bases.len() {
            let n = self.min_degree + idx as Degree;
            // d respects the filtration stage of every generator.
            for (j, g) in self.bases[idx].iter().enumerate() {
                if idx == 0 {
                    continue;
                }
                for (i, t) in self.bases[idx - 1].iter().enumerate() {
                    if !self.diffs[idx].at(i, j).is_zero() && t.stage > g.stage {
                        return Err(ComplexError::FiltrationViolation {
                            degree: n,
                            generator: g.name.clone(),
                            target: t.name.clone(),
                        });
                    }
                }
            }
            // d o d = 0, reported per generator.
            if idx >= 2 {
                let square = self.diffs[idx - 1].mul(&self.diffs[idx]);
                for j in 0..square.cols() {
                    if (0..square.rows()).any(|i| !square.at(i, j).is_zero()) {
                        return Err(ComplexError::BoundarySquare {
                            degree: n,
                            generator: self.bases[idx][j].name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn filtration_start(&self) -> Stage {
        self.filtration_start
    }

    /// The top stage `m` of the filtration.
    pub fn max_stage(&self) -> Stage {
        self.max_stage
    }

    pub fn min_degree(&self) -> Degree {
        self.min_degree
    }

    pub fn max_degree(&self) -> Degree {
        self.min_degree + self.bases.len() as Degree - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = Degree> {
        self.min_degree..=self.max_degree()
    }

    fn index_of(&self, n: Degree) -> Option<usize> {
        if n < self.min_degree || n > self.max_degree() {
            None
        } else {
            Some((n - self.min_degree) as usize)
        }
    }

    pub fn dim(&self, n: Degree) -> usize {
        self.index_of(n).map_or(0, |i| self.bases[i].len())
    }

    pub fn generators(&self, n: Degree) -> &[Generator] {
        self.index_of(n).map_or(&[], |i| &self.bases[i])
    }

    pub fn generator_names(&self, n: Degree) -> Vec<&str> {
        self.generators(n).iter().map(|g| g.name.as_str()).collect()
    }

    /// The boundary matrix `d_n : C_n -> C_{n-1}` (zero-shaped outside the
    /// degree range).
    pub fn differential(&self, n: Degree) -> IntMatrix {
        match self.index_of(n) {
            Some(i) => self.diffs[i].clone(),
            None => IntMatrix::zeros(self.dim(n - 1), self.dim(n)),
        }
    }

    pub fn boundary(&self, chain: &Chain) -> Chain {
        let d = self.differential(chain.degree);
        Chain::new(chain.degree - 1, d.mul_vec(&chain.coords))
    }

    /// Indices of degree-`n` generators with stage <= p.
    pub fn stage_indices(&self, p: Stage, n: Degree) -> Vec<usize> {
        self.generators(n)
            .iter()
            .enumerate()
            .filter(|(_, g)| g.stage <= p)
            .map(|(i, _)| i)
            .collect()
    }

    /// Inclusion matrix of the stage-p part of degree n into the full basis.
    pub fn stage_inclusion(&self, p: Stage, n: Degree) -> IntMatrix {
        let idx = self.stage_indices(p, n);
        let mut m = IntMatrix::zeros(self.dim(n), idx.len());
        for (j, &i) in idx.iter().enumerate() {
            m.set(i, j, 1.into());
        }
        m
    }

    /// The filtration submodule `C^p_n`: generators with stage <= p. Stages
    /// below the filtration start give the zero lattice; `p >= m` the full
    /// lattice.
    pub fn filtration_submodule(&self, p: Stage, n: Degree) -> Lattice {
        if p < self.filtration_start {
            return Lattice::zero(self.dim(n));
        }
        Lattice::from_generators(self.stage_inclusion(p, n))
    }

    /// `Z^r_{p,q} = { a in C^p_{p+q} : d(a) in C^{p-r}_{p+q-1} }`.
    ///
    /// `p` is clamped to the stage range; `p - r` below the filtration start
    /// means the boundary must vanish entirely.
    pub fn almost_cycles(&self, r: Level, p: Stage, q: Degree) -> Lattice {
        assert!(r >= 0, "almost-cycle level must be non-negative");
        let n = p + q;
        let p_eff = p.min(self.max_stage);
        if p_eff < self.filtration_start {
            return Lattice::zero(self.dim(n));
        }
        let incl = self.stage_inclusion(p_eff, n);
        let d = self.differential(n);
        let restricted = d.mul(&incl);
        // Rows of C_{n-1} outside C^{p-r}: the boundary must vanish there.
        // The target stage p - r uses the unclamped p, so queries past the
        // top stage keep their intended target.
        let forbidden: Vec<usize> = self
            .generators(n - 1)
            .iter()
            .enumerate()
            .filter(|(_, g)| g.stage > p - r)
            .map(|(i, _)| i)
            .collect();
        let projected = restricted.select_rows(&forbidden);
        let kernel = projected.kernel_basis();
        Lattice::from_generators(incl.mul(&kernel))
    }

    /// `ker d_n ∩ C^p_n` as a lattice.
    pub fn cycles_in(&self, p: Stage, n: Degree) -> Lattice {
        // Equivalent to almost_cycles with the target clamped to zero.
        let r = self.max_stage - self.filtration_start + 1;
        self.almost_cycles(r.max(1), p.min(self.max_stage), n - p.min(self.max_stage))
    }

    /// Image of `d_{n+1}` restricted to `C^p_{n+1}`, i.e. the boundaries
    /// visible inside the stage-p subcomplex.
    pub fn boundaries_in(&self, p: Stage, n: Degree) -> Lattice {
        if p < self.filtration_start {
            return Lattice::zero(self.dim(n));
        }
        let incl = self.stage_inclusion(p.min(self.max_stage), n + 1);
        Lattice::image_of(&self.differential(n + 1).mul(&incl))
    }

    /// Image of a lattice of degree-(n+1) chains under `d_{n+1}`.
    pub fn boundary_image(&self, z: &Lattice, n: Degree) -> Lattice {
        Lattice::image_of(&self.differential(n + 1).mul(z.basis()))
    }
}

impl fmt::Display for FilteredChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "filtered chain complex, degrees {}..={}, stages {}..={}",
            self.min_degree,
            self.max_degree(),
            self.filtration_start,
            self.max_stage
        )?;
        for n in self.min_degree..=self.max_degree() {
            let names: Vec<String> = self
                .generators(n)
                .iter()
                .map(|g| format!("{}@{}", g.name, g.stage))
                .collect();
            writeln!(f, "  C_{}: {}", n, names.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental construction of a [`FilteredChainComplex`] by named generators.
pub struct ChainComplexBuilder {
    filtration_start: Stage,
    gens: Vec<(String, Degree, Stage)>,
    boundaries: Vec<(String, Vec<(BigInt, String)>)>,
}

impl ChainComplexBuilder {
    pub fn new(filtration_start: Stage) -> Self {
        ChainComplexBuilder {
            filtration_start,
            gens: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn generator(mut self, name: &str, degree: Degree, stage: Stage) -> Self {
        self.add_generator(name, degree, stage);
        self
    }

    pub fn boundary(mut self, name: &str, terms: &[(i64, &str)]) -> Self {
        self.add_boundary(name, terms);
        self
    }

    pub fn add_generator(&mut self, name: &str, degree: Degree, stage: Stage) {
        self.gens.push((name.to_string(), degree, stage));
    }

    pub fn add_boundary(&mut self, name: &str, terms: &[(i64, &str)]) {
        self.add_boundary_big(
            name,
            &terms
                .iter()
                .map(|(c, g)| (BigInt::from(*c), g.to_string()))
                .collect::<Vec<_>>(),
        );
    }

    pub fn add_boundary_big(&mut self, name: &str, terms: &[(BigInt, String)]) {
        self.boundaries.push((name.to_string(), terms.to_vec()));
    }

    pub fn build(self) -> Result<FilteredChainComplex, ComplexError> {
        if self.gens.is_empty() {
            return FilteredChainComplex::new(
                0,
                vec![Vec::new()],
                vec![IntMatrix::zeros(0, 0)],
                self.filtration_start,
            );
        }
        let mut names = std::collections::HashSet::new();
        for (name, _, _) in &self.gens {
            if !names.insert(name.clone()) {
                return Err(ComplexError::DuplicateGenerator(name.clone()));
            }
        }
        let min_degree = self.gens.iter().map(|g| g.1).min().unwrap();
        let max_degree = self.gens.iter().map(|g| g.1).max().unwrap();
        let len = (max_degree - min_degree + 1) as usize;
        let mut bases: Vec<Vec<Generator>> = vec![Vec::new(); len];
        let mut pos = std::collections::HashMap::new();
        for (name, degree, stage) in &self.gens {
            let idx = (degree - min_degree) as usize;
            pos.insert(name.clone(), (*degree, bases[idx].len()));
            bases[idx].push(Generator::new(name.clone(), *stage));
        }
        let mut diffs: Vec<IntMatrix> = (0..len)
            .map(|i| {
                let rows = if i == 0 { 0 } else { bases[i - 1].len() };
                IntMatrix::zeros(rows, bases[i].len())
            })
            .collect();
        for (name, terms) in &self.boundaries {
            let &(degree, col) = pos
                .get(name)
                .ok_or_else(|| ComplexError::UnknownGenerator(name.clone()))?;
            let idx = (degree - min_degree) as usize;
            for (coeff, target) in terms {
                let &(tdeg, row) = pos
                    .get(target)
                    .ok_or_else(|| ComplexError::UnknownGenerator(target.clone()))?;
                if tdeg != degree - 1 {
                    return Err(ComplexError::ShapeMismatch(degree));
                }
                let cur = diffs[idx].at(row, col) + coeff;
                diffs[idx].set(row, col, cur);
            }
        }
        FilteredChainComplex::new(min_degree, bases, diffs, self.filtration_start)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    /// The example complex with three non-null groups: C_0 = Z, C_1 = Z^2,
    /// C_2 = Z, d1 = [1 0], d2 = [0;1], filtered so that stage 1 holds a and
    /// b2 and stage 2 everything.
    pub fn three_groups() -> FilteredChainComplex {
        ChainComplexBuilder::new(1)
            .generator("a", 0, 1)
            .generator("b1", 1, 2)
            .generator("b2", 1, 1)
            .generator("c", 2, 2)
            .boundary("b1", &[(1, "a")])
            .boundary("c", &[(1, "b2")])
            .build()
            .unwrap()
    }

    #[test]
    fn builder_and_shapes() {
        let c = three_groups();
        assert_eq!(c.dim(0), 1);
        assert_eq!(c.dim(1), 2);
        assert_eq!(c.dim(2), 1);
        assert_eq!(c.dim(5), 0);
        assert_eq!(c.max_stage(), 2);
        // Basis order is insertion order; b1 then b2.
        assert_eq!(c.generators(1)[0].name, "b1");
    }

    #[test]
    fn rejects_d_squared() {
        let err = ChainComplexBuilder::new(1)
            .generator("a", 0, 1)
            .generator("b", 1, 1)
            .generator("c", 2, 1)
            .boundary("b", &[(1, "a")])
            .boundary("c", &[(1, "b")])
            .build()
            .unwrap_err();
        assert!(matches!(err, ComplexError::BoundarySquare { .. }));
    }

    #[test]
    fn rejects_filtration_violation() {
        let err = ChainComplexBuilder::new(1)
            .generator("x", 1, 1)
            .generator("y", 0, 2)
            .boundary("x", &[(1, "y")])
            .build()
            .unwrap_err();
        assert!(matches!(err, ComplexError::FiltrationViolation { .. }));
    }

    #[test]
    fn filtration_submodules() {
        let c = three_groups();
        assert_eq!(c.filtration_submodule(0, 1), Lattice::zero(2));
        let c1 = c.filtration_submodule(1, 1);
        assert_eq!(c1.rank(), 1);
        // b2 is the stage-1 degree-1 generator (basis index 1).
        assert!(c1.contains(&[BigInt::from(0), BigInt::from(1)]));
        assert_eq!(c.filtration_submodule(2, 1), Lattice::full(2));
        assert_eq!(c.filtration_submodule(99, 1), Lattice::full(2));
    }

    #[test]
    fn almost_cycles_examples() {
        let c = three_groups();
        // r = 0: the boundary condition is vacuous, all of C^p.
        assert_eq!(c.almost_cycles(0, 2, -1), Lattice::full(2));
        // Z^1_{2,-1} = all degree-1 chains with boundary in C^1: both b1, b2
        // qualify (d b1 = a at stage 1).
        assert_eq!(c.almost_cycles(1, 2, -1), Lattice::full(2));
        // Z^2_{2,-1}: boundary must vanish (stage 0 is the zero module).
        let z2 = c.almost_cycles(2, 2, -1);
        assert_eq!(z2.rank(), 1);
        assert!(z2.contains(&[BigInt::from(0), BigInt::from(1)]));
        // Nesting: Z^{r+1} inside Z^r.
        assert!(c.almost_cycles(1, 2, -1).contains_lattice(&z2));
    }

    #[test]
    fn cycles_and_boundaries() {
        let c = three_groups();
        let cyc = c.cycles_in(2, 1);
        assert_eq!(cyc.rank(), 1);
        assert!(cyc.contains(&[BigInt::from(0), BigInt::from(1)]));
        let bnd = c.boundaries_in(2, 1);
        assert_eq!(bnd.rank(), 1);
        assert!(bnd.contains(&[BigInt::from(0), BigInt::from(1)]));
        assert!(c.boundaries_in(1, 1).is_zero());
    }

    #[test]
    fn chain_formatting() {
        let chain = Chain::new(
            1,
            vec![BigInt::from(1), BigInt::from(-2), BigInt::from(0)],
        );
        assert_eq!(chain.format(&["a", "b", "c"]), "a - 2*b");
        assert_eq!(Chain::zero(0, 2).format(&["x", "y"]), "0");
    }

    #[test]
    fn empty_complex_is_legal() {
        let c = ChainComplexBuilder::new(1).build().unwrap();
        assert_eq!(c.dim(0), 0);
        assert_eq!(c.max_stage(), 1);
        assert!(c.filtration_submodule(1, 0).is_zero());
    }
}
