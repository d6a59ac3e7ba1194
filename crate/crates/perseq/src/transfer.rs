//! Reductions, strong chain equivalences, homotopy filtration orders, and
//! transfer of spectral-sequence / persistence computations across an
//! equivalence.
//!
//! A reduction (f, g, h): D => C exhibits D as C plus an acyclic summand;
//! a strong equivalence C <== D ==> EC shares the top complex D. When the
//! four chain maps are filtered and both homotopies raise the filtration by
//! at most s, pages agree for r > s and persistent groups for j - i >= s
//! (total) resp. k - i > s (BD, triple). `transfer_check` recomputes both
//! sides and never silently trusts those hypotheses: it re-evaluates the
//! filtered-map conditions and homotopy orders on every call.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::complex::{
    Chain, ComplexError, Degree, FilteredChainComplex, Generator, Level, Stage,
};
use crate::matrix::IntMatrix;
use crate::persistence::{self, Death, PersistenceQuery, PersistentGroup};
use crate::spectral;

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("equivalence does not verify: {0}")]
    Unverified(String),
    #[error("the two reductions do not share the same top complex")]
    TopMismatch,
    #[error("generator is not a cycle on the effective complex")]
    NotACycle,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Query(#[from] persistence::QueryError),
}

/// A graded map between chain complexes, stored one matrix per source degree;
/// missing degrees are zero maps. `shift` is the degree it adds (0 for chain
/// maps, +1 for homotopies).
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    shift: Degree,
    mats: BTreeMap<Degree, IntMatrix>,
}

impl GradedMap {
    pub fn zero_shaped(shift: Degree) -> Self {
        GradedMap {
            shift,
            mats: BTreeMap::new(),
        }
    }

    pub fn identity_for(c: &FilteredChainComplex) -> Self {
        let mut m = GradedMap::zero_shaped(0);
        for n in c.degrees() {
            m.set_matrix(n, IntMatrix::identity(c.dim(n)));
        }
        m
    }

    pub fn shift(&self) -> Degree {
        self.shift
    }

    pub fn set_matrix(&mut self, source_degree: Degree, m: IntMatrix) {
        self.mats.insert(source_degree, m);
    }

    /// The matrix for source degree `n`, materialized at the given shape when
    /// absent.
    pub fn matrix(&self, n: Degree, rows: usize, cols: usize) -> IntMatrix {
        match self.mats.get(&n) {
            Some(m) => {
                assert_eq!((m.rows(), m.cols()), (rows, cols), "stored map shape");
                m.clone()
            }
            None => IntMatrix::zeros(rows, cols),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.values().all(IntMatrix::is_zero)
    }

    pub fn apply(
        &self,
        target: &FilteredChainComplex,
        source: &FilteredChainComplex,
        chain: &Chain,
    ) -> Chain {
        let out_degree = chain.degree + self.shift;
        let m = self.matrix(chain.degree, target.dim(out_degree), source.dim(chain.degree));
        Chain::new(out_degree, m.mul_vec(&chain.coords))
    }
}

/// The five reduction identities plus the two chain-map conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionIdentity {
    FChainMap,
    GChainMap,
    FgIsIdentity,
    GfPlusHomotopyBoundary,
    FhZero,
    HgZero,
    HhZero,
}

impl fmt::Display for ReductionIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionIdentity::FChainMap => "f d = d f",
            ReductionIdentity::GChainMap => "g d = d g",
            ReductionIdentity::FgIsIdentity => "f g = id",
            ReductionIdentity::GfPlusHomotopyBoundary => "g f + d h + h d = id",
            ReductionIdentity::FhZero => "f h = 0",
            ReductionIdentity::HgZero => "h g = 0",
            ReductionIdentity::HhZero => "h h = 0",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct ReductionViolation {
    pub identity: ReductionIdentity,
    pub degree: Degree,
    /// Offending generator (column) index in the source of the identity.
    pub generator: usize,
    pub generator_name: String,
}

impl fmt::Display for ReductionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails in degree {} on generator '{}'",
            self.identity, self.degree, self.generator_name
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReductionReport {
    pub violations: Vec<ReductionViolation>,
}

impl ReductionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Minimal filtration raise of a homotopy operator; `None` when h = 0
/// (order 0 by convention).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomotopyOrder {
    raise: Option<Stage>,
}

impl HomotopyOrder {
    pub fn is_zero_homotopy(&self) -> bool {
        self.raise.is_none()
    }

    /// The bound `s` entering the transfer theorems (never negative).
    pub fn bound(&self) -> Stage {
        self.raise.unwrap_or(0).max(0)
    }
}

impl fmt::Display for HomotopyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.raise {
            None => write!(f, "0 (zero homotopy)"),
            Some(s) => write!(f, "{}", s.max(0)),
        }
    }
}

/// A reduction (f, g, h): top => bottom with f: top -> bottom,
/// g: bottom -> top and h: top -> top of degree +1.
#[derive(Clone, Debug)]
pub struct Reduction {
    top: FilteredChainComplex,
    bottom: FilteredChainComplex,
    f: GradedMap,
    g: GradedMap,
    h: GradedMap,
}

impl Reduction {
    pub fn new(
        top: FilteredChainComplex,
        bottom: FilteredChainComplex,
        f: GradedMap,
        g: GradedMap,
        h: GradedMap,
    ) -> Self {
        assert_eq!(f.shift(), 0, "f must preserve degree");
        assert_eq!(g.shift(), 0, "g must preserve degree");
        assert_eq!(h.shift(), 1, "h must raise degree by one");
        Reduction {
            top,
            bottom,
            f,
            g,
            h,
        }
    }

    pub fn identity(c: &FilteredChainComplex) -> Self {
        Reduction::new(
            c.clone(),
            c.clone(),
            GradedMap::identity_for(c),
            GradedMap::identity_for(c),
            GradedMap::zero_shaped(1),
        )
    }

    pub fn top(&self) -> &FilteredChainComplex {
        &self.top
    }

    pub fn bottom(&self) -> &FilteredChainComplex {
        &self.bottom
    }

    pub fn f_matrix(&self, n: Degree) -> IntMatrix {
        self.f.matrix(n, self.bottom.dim(n), self.top.dim(n))
    }

    pub fn g_matrix(&self, n: Degree) -> IntMatrix {
        self.g.matrix(n, self.top.dim(n), self.bottom.dim(n))
    }

    pub fn h_matrix(&self, n: Degree) -> IntMatrix {
        self.h.matrix(n, self.top.dim(n + 1), self.top.dim(n))
    }

    pub fn apply_f(&self, chain: &Chain) -> Chain {
        self.f.apply(&self.bottom, &self.top, chain)
    }

    pub fn apply_g(&self, chain: &Chain) -> Chain {
        self.g.apply(&self.top, &self.bottom, chain)
    }

    fn degree_window(&self) -> std::ops::RangeInclusive<Degree> {
        let lo = self.top.min_degree().min(self.bottom.min_degree()) - 1;
        let hi = self.top.max_degree().max(self.bottom.max_degree()) + 1;
        lo..=hi
    }

    /// Check all reduction identities exactly, listing every violation with
    /// its degree and offending generator.
    pub fn verify(&self) -> ReductionReport {
        let mut violations = Vec::new();
        let mut record = |identity, degree, m: &IntMatrix, names: &[&str]| {
            for j in 0..m.cols() {
                if (0..m.rows()).any(|i| !m.at(i, j).is_zero()) {
                    violations.push(ReductionViolation {
                        identity,
                        degree,
                        generator: j,
                        generator_name: names.get(j).unwrap_or(&"?").to_string(),
                    });
                }
            }
        };
        for n in self.degree_window() {
            let top_names = self.top.generator_names(n);
            let bottom_names = self.bottom.generator_names(n);
            let d_top = self.top.differential(n);
            let d_bottom = self.bottom.differential(n);
            // f d = d f
            let lhs = self.f_matrix(n - 1).mul(&d_top);
            let rhs = d_bottom.mul(&self.f_matrix(n));
            record(
                ReductionIdentity::FChainMap,
                n,
                &sub(&lhs, &rhs),
                &top_names,
            );
            // g d = d g
            let lhs = self.g_matrix(n - 1).mul(&d_bottom);
            let rhs = d_top.mul(&self.g_matrix(n));
            record(
                ReductionIdentity::GChainMap,
                n,
                &sub(&lhs, &rhs),
                &bottom_names,
            );
            // f g = id
            let fg = self.f_matrix(n).mul(&self.g_matrix(n));
            record(
                ReductionIdentity::FgIsIdentity,
                n,
                &sub(&fg, &IntMatrix::identity(self.bottom.dim(n))),
                &bottom_names,
            );
            // g f + d h + h d = id
            let gf = self.g_matrix(n).mul(&self.f_matrix(n));
            let dh = self.top.differential(n + 1).mul(&self.h_matrix(n));
            let hd = self.h_matrix(n - 1).mul(&d_top);
            let total = add(&add(&gf, &dh), &hd);
            record(
                ReductionIdentity::GfPlusHomotopyBoundary,
                n,
                &sub(&total, &IntMatrix::identity(self.top.dim(n))),
                &top_names,
            );
            // f h = 0
            let fh = self.f_matrix(n + 1).mul(&self.h_matrix(n));
            record(ReductionIdentity::FhZero, n, &fh, &top_names);
            // h g = 0
            let hg = self.h_matrix(n).mul(&self.g_matrix(n));
            record(ReductionIdentity::HgZero, n, &hg, &bottom_names);
            // h h = 0
            let hh = self.h_matrix(n + 1).mul(&self.h_matrix(n));
            record(ReductionIdentity::HhZero, n, &hh, &top_names);
        }
        ReductionReport { violations }
    }

    /// Minimal s with h(D^p_n) inside D^{p+s}_{n+1}.
    pub fn homotopy_order(&self) -> HomotopyOrder {
        map_order(&self.h, &self.top, &self.top)
    }

    pub fn f_filtered(&self) -> bool {
        filtered_map_ok(&self.f, &self.top, &self.bottom)
    }

    pub fn g_filtered(&self) -> bool {
        filtered_map_ok(&self.g, &self.bottom, &self.top)
    }
}

fn add(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(a.rows(), a.cols(), |i, j| a.at(i, j) + b.at(i, j))
}

fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(a.rows(), a.cols(), |i, j| a.at(i, j) - b.at(i, j))
}

/// Maximal stage raise of a graded map, `None` when the map is zero.
fn map_order(
    map: &GradedMap,
    source: &FilteredChainComplex,
    target: &FilteredChainComplex,
) -> HomotopyOrder {
    let mut raise: Option<Stage> = None;
    for n in source.degrees() {
        let m = map.matrix(n, target.dim(n + map.shift()), source.dim(n));
        for (j, gen) in source.generators(n).iter().enumerate() {
            for (i, tgen) in target.generators(n + map.shift()).iter().enumerate() {
                if !m.at(i, j).is_zero() {
                    let delta = tgen.stage - gen.stage;
                    raise = Some(raise.map_or(delta, |r: Stage| r.max(delta)));
                }
            }
        }
    }
    HomotopyOrder { raise }
}

/// True iff every generator's image stays within the same filtration stage.
pub fn filtered_map_ok(
    map: &GradedMap,
    source: &FilteredChainComplex,
    target: &FilteredChainComplex,
) -> bool {
    match map_order(map, source, target).raise {
        None => true,
        Some(r) => r <= 0,
    }
}

/// A strong chain equivalence `bottom(left) <== top ==> bottom(right)`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub left: Reduction,
    pub right: Reduction,
}

impl Equivalence {
    pub fn new(left: Reduction, right: Reduction) -> Result<Self, TransferError> {
        if left.top != right.top {
            return Err(TransferError::TopMismatch);
        }
        Ok(Equivalence { left, right })
    }

    pub fn verify(&self) -> Result<(), TransferError> {
        let l = self.left.verify();
        if !l.ok() {
            return Err(TransferError::Unverified(format!(
                "left reduction: {}",
                l.violations[0]
            )));
        }
        let r = self.right.verify();
        if !r.ok() {
            return Err(TransferError::Unverified(format!(
                "right reduction: {}",
                r.violations[0]
            )));
        }
        Ok(())
    }

    /// The bound s = max of the two homotopy orders.
    pub fn order(&self) -> Stage {
        self.left
            .homotopy_order()
            .bound()
            .max(self.right.homotopy_order().bound())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferQuery {
    Page { r: Level },
    Bd { i: Stage, k: Death, n: Degree },
    Total { i: Stage, j: Stage, n: Degree },
    Triple { i: Stage, j: Stage, k: Death, n: Degree },
}

#[derive(Clone, Debug)]
pub struct TransferEntry {
    pub label: String,
    pub left: Vec<BigInt>,
    pub right: Vec<BigInt>,
}

impl TransferEntry {
    pub fn matched(&self) -> bool {
        self.left == self.right
    }
}

/// Outcome of computing the same query on both bottoms of an equivalence.
#[derive(Clone, Debug)]
pub struct TransferReport {
    pub order: Stage,
    pub f1_filtered: bool,
    pub g1_filtered: bool,
    pub f2_filtered: bool,
    pub g2_filtered: bool,
    /// The theorem's range condition for this query (r > s, j-i >= s,
    /// k-i > s).
    pub in_range: bool,
    pub entries: Vec<TransferEntry>,
}

impl TransferReport {
    pub fn maps_filtered(&self) -> bool {
        self.f1_filtered && self.g1_filtered && self.f2_filtered && self.g2_filtered
    }

    /// All hypotheses of the transfer theorems hold for this query.
    pub fn hypothesis_holds(&self) -> bool {
        self.maps_filtered() && self.in_range
    }

    pub fn matched(&self) -> bool {
        self.entries.iter().all(TransferEntry::matched)
    }

    /// A mismatch outside the theorem range is allowed; inside it is a bug.
    pub fn outside_theorem_range(&self) -> bool {
        !self.hypothesis_holds() && !self.matched()
    }
}

/// Compute the queried group(s) on both bottom complexes and report divisor
/// equality together with the hypothesis evaluation.
pub fn transfer_check(
    eq: &Equivalence,
    query: TransferQuery,
) -> Result<TransferReport, TransferError> {
    eq.verify()?;
    let s = eq.order();
    let c = eq.left.bottom();
    let ec = eq.right.bottom();
    let in_range = match query {
        TransferQuery::Page { r } => r > s,
        TransferQuery::Total { i, j, .. } => j - i >= s,
        TransferQuery::Bd { i, k, .. } | TransferQuery::Triple { i, k, .. } => match k {
            Death::At(ks) => ks - i > s,
            Death::Infinite => true,
        },
    };
    let mut entries = Vec::new();
    match query {
        TransferQuery::Page { r } => {
            let fs = c.filtration_start().min(ec.filtration_start());
            let m = c.max_stage().max(ec.max_stage());
            let lo = c.min_degree().min(ec.min_degree());
            let hi = c.max_degree().max(ec.max_degree());
            for n in lo..=hi {
                for p in fs..=m {
                    let q = n - p;
                    let left = spectral::page_group(c, r, p, q).presentation;
                    let right = spectral::page_group(ec, r, p, q).presentation;
                    if left.is_trivial() && right.is_trivial() {
                        continue;
                    }
                    entries.push(TransferEntry {
                        label: format!("E^{}_{{{},{}}}", r, p, q),
                        left: left.divisors().to_vec(),
                        right: right.divisors().to_vec(),
                    });
                }
            }
        }
        TransferQuery::Bd { i, k, n } => {
            let left = persistence::bd_group(c, i, k, n)?;
            let right = persistence::bd_group(ec, i, k, n)?;
            entries.push(TransferEntry {
                label: format!("{}", left.query),
                left: left.divisors().to_vec(),
                right: right.divisors().to_vec(),
            });
        }
        TransferQuery::Total { i, j, n } => {
            let left = persistence::total_prst_group(c, i, j, n)?;
            let right = persistence::total_prst_group(ec, i, j, n)?;
            entries.push(TransferEntry {
                label: format!("{}", left.query),
                left: left.divisors().to_vec(),
                right: right.divisors().to_vec(),
            });
        }
        TransferQuery::Triple { i, j, k, n } => {
            let left = persistence::triple_prst_group(c, i, j, k, n)?;
            let right = persistence::triple_prst_group(ec, i, j, k, n)?;
            entries.push(TransferEntry {
                label: format!("{}", left.query),
                left: left.divisors().to_vec(),
                right: right.divisors().to_vec(),
            });
        }
    }
    Ok(TransferReport {
        order: s,
        f1_filtered: eq.left.f_filtered(),
        g1_filtered: eq.left.g_filtered(),
        f2_filtered: eq.right.f_filtered(),
        g2_filtered: eq.right.g_filtered(),
        in_range,
        entries,
    })
}

/// Push generators of a persistent group computed on the right bottom (EC)
/// over to the left bottom (C) via f1 o g2. Every output is checked to be a
/// cycle of the correct degree.
pub fn transfer_generators(
    eq: &Equivalence,
    group: &PersistentGroup,
) -> Result<Vec<Chain>, TransferError> {
    eq.verify()?;
    let ec = eq.right.bottom();
    let c = eq.left.bottom();
    let mut out = Vec::new();
    for (_, gen) in persistence::persistent_generators(group) {
        if !ec.boundary(&gen).is_zero() {
            return Err(TransferError::NotACycle);
        }
        let lifted = eq.right.apply_g(&gen);
        let transferred = eq.left.apply_f(&lifted);
        debug_assert!(
            c.boundary(&transferred).is_zero(),
            "image of a cycle under a chain map must be a cycle"
        );
        out.push(transferred);
    }
    Ok(out)
}

/// Target stage bound for transferred generators of a query.
pub fn query_stage_bound(query: &PersistenceQuery) -> Stage {
    match *query {
        PersistenceQuery::Bd { i, .. } | PersistenceQuery::Total { i, .. } => i,
        PersistenceQuery::Triple { j, .. } => j,
    }
}

/// Base complex plus adjoined acyclic two-generator summands (x, y) with
/// d(x) = y + w, the mixing chain w drawn from the base. Contracting any
/// subset of the pairs yields an explicit reduction; the stage gap between x
/// and y controls the homotopy order.
pub struct AcyclicExtension {
    base: FilteredChainComplex,
    pairs: Vec<PairSpec>,
}

struct PairSpec {
    degree: Degree, // degree of y; x sits one higher
    stage_x: Stage,
    stage_y: Stage,
    mix: Vec<(BigInt, String)>,
}

impl AcyclicExtension {
    pub fn new(base: FilteredChainComplex) -> Self {
        AcyclicExtension {
            base,
            pairs: Vec::new(),
        }
    }

    pub fn base(&self) -> &FilteredChainComplex {
        &self.base
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Adjoin a pair x (degree+1, stage_x), y (degree, stage_y) with
    /// d x = y + w. `mix` gives w as (coefficient, base generator name).
    pub fn adjoin(
        &mut self,
        degree: Degree,
        stage_x: Stage,
        stage_y: Stage,
        mix: Vec<(BigInt, String)>,
    ) {
        self.pairs.push(PairSpec {
            degree,
            stage_x,
            stage_y,
            mix,
        });
    }

    fn pair_names(idx: usize) -> (String, String) {
        (format!("x.{}", idx), format!("y.{}", idx))
    }

    fn build_with(&self, keep: impl Fn(usize) -> bool) -> Result<FilteredChainComplex, ComplexError> {
        let mut b = crate::complex::ChainComplexBuilder::new(self.base.filtration_start());
        for n in self.base.degrees() {
            for g in self.base.generators(n) {
                b.add_generator(&g.name, n, g.stage);
            }
            let d = self.base.differential(n);
            let targets: Vec<&Generator> = self.base.generators(n - 1).iter().collect();
            for (j, g) in self.base.generators(n).iter().enumerate() {
                let terms: Vec<(BigInt, String)> = targets
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !d.at(*i, j).is_zero())
                    .map(|(i, t)| (d.at(i, j).clone(), t.name.clone()))
                    .collect();
                if !terms.is_empty() {
                    b.add_boundary_big(&g.name, &terms);
                }
            }
        }
        for (idx, pair) in self.pairs.iter().enumerate() {
            if !keep(idx) {
                continue;
            }
            let (xn, yn) = Self::pair_names(idx);
            b.add_generator(&yn, pair.degree, pair.stage_y);
            b.add_generator(&xn, pair.degree + 1, pair.stage_x);
            let mut terms: Vec<(BigInt, String)> = vec![(BigInt::from(1), yn.clone())];
            terms.extend(pair.mix.iter().cloned());
            b.add_boundary_big(&xn, &terms);
            // d(y) = -d(w) keeps d o d = 0.
            let mut dy: BTreeMap<String, BigInt> = BTreeMap::new();
            for (coeff, name) in &pair.mix {
                let (deg, col) = self
                    .base_position(name)
                    .expect("mixing chain names a base generator");
                assert_eq!(deg, pair.degree, "mixing chain must match the pair degree");
                let d = self.base.differential(deg);
                for (i, t) in self.base.generators(deg - 1).iter().enumerate() {
                    if !d.at(i, col).is_zero() {
                        let e = dy.entry(t.name.clone()).or_insert_with(BigInt::zero);
                        *e -= coeff * d.at(i, col);
                    }
                }
            }
            let dy: Vec<(BigInt, String)> = dy
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(name, c)| (c, name))
                .collect();
            if !dy.is_empty() {
                b.add_boundary_big(&yn, &dy);
            }
        }
        b.build()
    }

    fn base_position(&self, name: &str) -> Option<(Degree, usize)> {
        for n in self.base.degrees() {
            if let Some(i) = self.base.generators(n).iter().position(|g| g.name == name) {
                return Some((n, i));
            }
        }
        None
    }

    /// The total complex with all pairs adjoined.
    pub fn total(&self) -> Result<FilteredChainComplex, ComplexError> {
        self.build_with(|_| true)
    }

    /// The reduction contracting exactly the pairs in `contracted`:
    /// f drops each contracted x and sends its y to -w, g is the inclusion,
    /// h sends each contracted y to its x.
    pub fn reduction_contracting(
        &self,
        contracted: &[usize],
    ) -> Result<Reduction, ComplexError> {
        let top = self.total()?;
        let bottom = self.build_with(|idx| !contracted.contains(&idx))?;
        let mut f = GradedMap::zero_shaped(0);
        let mut g = GradedMap::zero_shaped(0);
        let mut h = GradedMap::zero_shaped(1);
        for n in top.degrees() {
            let top_gens = top.generators(n);
            let bottom_gens = bottom.generators(n);
            let bpos: BTreeMap<&str, usize> = bottom_gens
                .iter()
                .enumerate()
                .map(|(i, g)| (g.name.as_str(), i))
                .collect();
            let mut fm = IntMatrix::zeros(bottom.dim(n), top.dim(n));
            let mut gm = IntMatrix::zeros(top.dim(n), bottom.dim(n));
            for (j, gen) in top_gens.iter().enumerate() {
                if let Some(&i) = bpos.get(gen.name.as_str()) {
                    fm.set(i, j, 1.into());
                    gm.set(j, i, 1.into());
                } else if let Some(idx) = contracted
                    .iter()
                    .copied()
                    .find(|&idx| Self::pair_names(idx).1 == gen.name)
                {
                    // f(y) = -w.
                    for (coeff, name) in &self.pairs[idx].mix {
                        let &i = bpos.get(name.as_str()).expect("mixing chain survives");
                        let cur = fm.at(i, j) - coeff;
                        fm.set(i, j, cur);
                    }
                }
            }
            let mut hm = IntMatrix::zeros(top.dim(n + 1), top.dim(n));
            let above = top.generators(n + 1);
            for &idx in contracted {
                let (xn, yn) = Self::pair_names(idx);
                if self.pairs[idx].degree != n {
                    continue;
                }
                let yj = top_gens.iter().position(|g| g.name == yn).expect("y present");
                let xi = above.iter().position(|g| g.name == xn).expect("x present");
                hm.set(xi, yj, 1.into());
            }
            f.set_matrix(n, fm);
            g.set_matrix(n, gm);
            h.set_matrix(n, hm);
        }
        Ok(Reduction::new(top, bottom, f, g, h))
    }
}
