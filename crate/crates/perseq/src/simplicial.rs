//! Filtered simplicial complexes and their canonically associated filtered
//! chain complexes (simplicial boundary with alternating signs).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{ComplexError, FilteredChainComplex, Generator, Stage};
use crate::matrix::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("simplex {0:?} has non-increasing vertex ids")]
    BadVertexOrder(Vec<u64>),
    #[error("face {face:?} of simplex {simplex:?} is missing")]
    MissingFace { simplex: Vec<u64>, face: Vec<u64> },
    #[error(
        "face {face:?} (stage {face_stage}) enters after simplex {simplex:?} (stage {stage})"
    )]
    FaceMonotonicity {
        simplex: Vec<u64>,
        stage: Stage,
        face: Vec<u64>,
        face_stage: Stage,
    },
    #[error("simplex {0:?} has stage {1}, below the filtration start {2}")]
    StageBelowStart(Vec<u64>, Stage, Stage),
    #[error(transparent)]
    Chain(#[from] ComplexError),
}

/// A finite simplicial complex with an integer filtration stage per simplex.
/// Face closure is required, never auto-completed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredSimplicialComplex {
    simplices: BTreeMap<Vec<u64>, Stage>,
}

impl FilteredSimplicialComplex {
    pub fn new(simplices: Vec<(Stage, Vec<u64>)>) -> Result<Self, SimplicialError> {
        let mut map = BTreeMap::new();
        for (stage, simplex) in simplices {
            if simplex.is_empty() || simplex.windows(2).any(|w| w[0] >= w[1]) {
                return Err(SimplicialError::BadVertexOrder(simplex));
            }
            // Last stage wins would hide input mistakes; keep the minimum so
            // re-listing a simplex at a later stage is harmless.
            let entry = map.entry(simplex).or_insert(stage);
            *entry = (*entry).min(stage);
        }
        let complex = FilteredSimplicialComplex { simplices: map };
        complex.validate()?;
        Ok(complex)
    }

    fn validate(&self) -> Result<(), SimplicialError> {
        for (simplex, &stage) in &self.simplices {
            if simplex.len() < 2 {
                continue;
            }
            for omit in 0..simplex.len() {
                let face: Vec<u64> = simplex
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != omit)
                    .map(|(_, &v)| v)
                    .collect();
                match self.simplices.get(&face) {
                    None => {
                        return Err(SimplicialError::MissingFace {
                            simplex: simplex.clone(),
                            face,
                        })
                    }
                    Some(&fs) if fs > stage => {
                        return Err(SimplicialError::FaceMonotonicity {
                            simplex: simplex.clone(),
                            stage,
                            face,
                            face_stage: fs,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn dimension(&self) -> i64 {
        self.simplices
            .keys()
            .map(|s| s.len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn simplices(&self) -> impl Iterator<Item = (&Vec<u64>, Stage)> {
        self.simplices.iter().map(|(s, &p)| (s, p))
    }

    /// The canonically associated filtered chain complex. Generators in each
    /// degree are ordered by filtration stage, then lexicographically on
    /// vertices, so all matrices are deterministic.
    pub fn chain_complex(
        &self,
        filtration_start: Stage,
    ) -> Result<FilteredChainComplex, SimplicialError> {
        for (simplex, &stage) in &self.simplices {
            if stage < filtration_start {
                return Err(SimplicialError::StageBelowStart(
                    simplex.clone(),
                    stage,
                    filtration_start,
                ));
            }
        }
        let top = self.dimension();
        if top < 0 {
            return Ok(FilteredChainComplex::new(
                0,
                vec![Vec::new()],
                vec![IntMatrix::zeros(0, 0)],
                filtration_start,
            )?);
        }
        let mut per_degree: Vec<Vec<(Vec<u64>, Stage)>> = vec![Vec::new(); (top + 1) as usize];
        for (simplex, &stage) in &self.simplices {
            per_degree[simplex.len() - 1].push((simplex.clone(), stage));
        }
        for list in &mut per_degree {
            list.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        }
        let index: Vec<BTreeMap<&Vec<u64>, usize>> = per_degree
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, (s, _))| (s, i))
                    .collect()
            })
            .collect();
        let mut bases = Vec::new();
        let mut diffs = Vec::new();
        for (deg, list) in per_degree.iter().enumerate() {
            bases.push(
                list.iter()
                    .map(|(s, p)| Generator::new(simplex_name(s), *p))
                    .collect::<Vec<_>>(),
            );
            let rows = if deg == 0 { 0 } else { per_degree[deg - 1].len() };
            let mut d = IntMatrix::zeros(rows, list.len());
            if deg > 0 {
                for (j, (simplex, _)) in list.iter().enumerate() {
                    for omit in 0..simplex.len() {
                        let face: Vec<u64> = simplex
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != omit)
                            .map(|(_, &v)| v)
                            .collect();
                        let row = index[deg - 1][&face];
                        let sign = if omit % 2 == 0 { 1 } else { -1 };
                        d.set(row, j, sign.into());
                    }
                }
            }
            diffs.push(d);
        }
        Ok(FilteredChainComplex::new(
            0,
            bases,
            diffs,
            filtration_start,
        )?)
    }
}

pub fn simplex_name(vertices: &[u64]) -> String {
    let parts: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(" "))
}
