//! Independent oracle for persistent homology, straight from the
//! definitions: compute `H_n(K^j)` for every stage by matrix diagonalization,
//! express the inclusion-induced maps `f^{j,j+1}_n` on those presentations,
//! and obtain each queried group as an image / preimage / intersection in
//! presentation coordinates.
//!
//! This path never touches the almost-cycle subquotient formulas, which is
//! the point: the two routes must agree on every query, and the tests hold
//! them to that.

use num_bigint::BigInt;

use crate::complex::{Degree, FilteredChainComplex, Stage};
use crate::lattice::{AbelianGroupPresentation, Lattice};
use crate::matrix::IntMatrix;
use crate::persistence::{Death, PersistenceQuery, PersistentGroup, QueryError};

/// Per-degree cache of stage homology presentations and the induced maps
/// between consecutive stages. Queries at different stages share it.
pub struct OracleContext<'a> {
    complex: &'a FilteredChainComplex,
    degree: Degree,
    /// One entry per stage fs..=m.
    stages: Vec<StageHomology>,
    /// `step[j]` maps stage fs+j coordinates to stage fs+j+1 coordinates.
    steps: Vec<IntMatrix>,
}

struct StageHomology {
    /// Ambient cycle representatives, one column per presentation generator.
    gens: IntMatrix,
    /// Relation lattice in presentation coordinates.
    relations: Lattice,
    /// Boundary lattice d(C^j_{n+1}) in ambient coordinates.
    boundaries: Lattice,
}

impl<'a> OracleContext<'a> {
    pub fn new(complex: &'a FilteredChainComplex, degree: Degree) -> Self {
        let fs = complex.filtration_start();
        let m = complex.max_stage();
        let mut stages = Vec::new();
        for j in fs..=m {
            let cycles = complex.cycles_in(j, degree);
            let boundaries = complex.boundaries_in(j, degree);
            let pres = cycles
                .quotient(&boundaries)
                .expect("boundaries are cycles within the same stage");
            let t = pres.len();
            let mut rel = IntMatrix::zeros(t, t);
            for (i, d) in pres.divisors().iter().enumerate() {
                rel.set(i, i, d.clone());
            }
            stages.push(StageHomology {
                gens: pres.generators().clone(),
                relations: Lattice::from_generators(rel),
                boundaries,
            });
        }
        let mut steps = Vec::new();
        for j in 0..stages.len().saturating_sub(1) {
            let next = &stages[j + 1];
            let mut cols = Vec::new();
            for g in stages[j].gens.columns() {
                cols.push(express_class(&g, next));
            }
            steps.push(IntMatrix::from_columns(
                next.gens.cols(),
                &cols,
            ));
        }
        OracleContext {
            complex,
            degree,
            stages,
            steps,
        }
    }

    fn stage_index(&self, j: Stage) -> usize {
        let fs = self.complex.filtration_start();
        let m = self.complex.max_stage();
        (j.clamp(fs, m) - fs) as usize
    }

    /// Composite induced map from stage i coordinates to stage j coordinates.
    fn composite(&self, i: Stage, j: Stage) -> IntMatrix {
        let a = self.stage_index(i);
        let b = self.stage_index(j);
        let mut m = IntMatrix::identity(self.stages[a].gens.cols());
        for step in &self.steps[a..b] {
            m = step.mul(&m);
        }
        m
    }

    /// The subgroup `H^{i,j}` of `H(K^j)` as a lattice in stage-j
    /// coordinates (always containing the relations).
    fn image_lattice(&self, i: Stage, j: Stage) -> Lattice {
        let b = self.stage_index(j);
        let rel = &self.stages[b].relations;
        if i < self.complex.filtration_start() {
            return rel.clone();
        }
        let f = self.composite(i, j);
        Lattice::image_of(&f).sum(rel).expect("coordinate space")
    }

    /// `{x : f^{j,k}(x) in target}` in stage-j coordinates.
    fn preimage_lattice(&self, j: Stage, k: Stage, target: &Lattice) -> Lattice {
        let f = self.composite(j, k);
        let stacked = f.hstack(target.basis());
        let kernel = stacked.kernel_basis();
        let own: Vec<usize> = (0..f.cols()).collect();
        let x_part = kernel.select_rows(&own);
        let b = self.stage_index(j);
        Lattice::image_of(&x_part)
            .sum(&self.stages[b].relations)
            .expect("coordinate space")
    }

    fn group_from(
        &self,
        query: PersistenceQuery,
        num: &Lattice,
        den: &Lattice,
        stage_for_coords: Stage,
    ) -> PersistentGroup {
        let pres = num.quotient(den).expect("oracle containment");
        let stage = &self.stages[self.stage_index(stage_for_coords)];
        // Map presentation-coordinate generators back to ambient cycles.
        let mut cols = Vec::new();
        for g in pres.generators().columns() {
            cols.push(stage.gens.mul_vec(&g));
        }
        let presentation = AbelianGroupPresentation::from_parts(
            pres.divisors().to_vec(),
            IntMatrix::from_columns(self.complex.dim(self.degree), &cols),
        );
        PersistentGroup {
            query,
            presentation,
        }
    }

    pub fn total(&self, i: Stage, j: Stage) -> PersistentGroup {
        let query = PersistenceQuery::Total {
            i,
            j,
            n: self.degree,
        };
        let b = self.stage_index(j);
        let num = self.image_lattice(i, j);
        self.group_from(query, &num, &self.stages[b].relations, j)
    }

    pub fn triple(&self, i: Stage, j: Stage, k: Death) -> PersistentGroup {
        let query = PersistenceQuery::Triple {
            i,
            j,
            k,
            n: self.degree,
        };
        let b = self.stage_index(j);
        let image = self.image_lattice(i, j);
        let num = match k {
            Death::Infinite => image,
            Death::At(ks) => {
                let old_at_k = self.image_lattice(i - 1, ks);
                let pre = self.preimage_lattice(j, ks, &old_at_k);
                image.intersection(&pre).expect("coordinate space")
            }
        };
        self.group_from(query, &num, &self.stages[b].relations, j)
    }

    pub fn bd(&self, i: Stage, k: Death) -> PersistentGroup {
        let query = PersistenceQuery::Bd {
            i,
            k,
            n: self.degree,
        };
        if i < self.complex.filtration_start() {
            // Nothing is born before the filtration starts.
            return PersistentGroup {
                query,
                presentation: AbelianGroupPresentation::trivial(self.complex.dim(self.degree)),
            };
        }
        match k {
            Death::Infinite => {
                let m = self.complex.max_stage();
                let num = self.image_lattice(i, m);
                let den = self.image_lattice(i - 1, m);
                self.group_from(query, &num, &den, m)
            }
            Death::At(ks) => {
                // BD^{i,k} = H^{i,i,k} / H^{i,i,k-1} inside H(K^i).
                let old_k = self.image_lattice(i - 1, ks);
                let num = self.preimage_lattice(i, ks, &old_k);
                let old_k1 = self.image_lattice(i - 1, ks - 1);
                let den = self.preimage_lattice(i, ks - 1, &old_k1);
                self.group_from(query, &num, &den, i)
            }
        }
    }
}

/// Coordinates of an ambient cycle in a stage presentation (solving against
/// generators plus boundaries).
fn express_class(cycle: &[BigInt], stage: &StageHomology) -> Vec<BigInt> {
    if stage.gens.cols() == 0 {
        return Vec::new();
    }
    let split = stage.gens.hstack(stage.boundaries.basis());
    let x = split
        .solve(cycle)
        .expect("cycle representable in stage homology");
    x[..stage.gens.cols()].to_vec()
}

/// Compute a persistence query through the oracle path alone.
pub fn oracle_persistence(
    c: &FilteredChainComplex,
    query: PersistenceQuery,
) -> Result<PersistentGroup, QueryError> {
    let fs = c.filtration_start();
    let check_birth = |i: Stage| -> Result<(), QueryError> {
        if i < fs - 1 {
            Err(QueryError::BelowStart { stage: i, start: fs })
        } else {
            Ok(())
        }
    };
    match query {
        PersistenceQuery::Bd { i, k, n } => {
            check_birth(i)?;
            if let Death::At(ks) = k {
                if i >= ks {
                    return Err(QueryError::StageOrder(format!(
                        "BD requires i < k, got i={i}, k={ks}"
                    )));
                }
            }
            let ctx = OracleContext::new(c, n);
            Ok(ctx.bd(i, k))
        }
        PersistenceQuery::Total { i, j, n } => {
            check_birth(i)?;
            if i > j {
                return Err(QueryError::StageOrder(format!(
                    "total group requires i <= j, got i={i}, j={j}"
                )));
            }
            let ctx = OracleContext::new(c, n);
            Ok(ctx.total(i, j))
        }
        PersistenceQuery::Triple { i, j, k, n } => {
            check_birth(i)?;
            if i > j {
                return Err(QueryError::StageOrder(format!(
                    "triple group requires i <= j, got i={i}, j={j}"
                )));
            }
            if let Death::At(ks) = k {
                if j > ks {
                    return Err(QueryError::StageOrder(format!(
                        "triple group requires j <= k, got j={j}, k={ks}"
                    )));
                }
            }
            let ctx = OracleContext::new(c, n);
            Ok(ctx.triple(i, j, k))
        }
    }
}
