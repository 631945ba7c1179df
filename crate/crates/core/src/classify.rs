//! Classification of groups `PSL2(2^f) × R` whose character graph is a
//! K4-free graph on seven vertices, together with the enumeration scanners
//! and solvable-graph tests that the classification leans on.
//!
//! The case is decided by `(|π(2^f - 1)|, |π(2^f + 1)|)`:
//!
//! | sizes  | case | radical                                   | `Δ(G)`                  |
//! |--------|------|-------------------------------------------|-------------------------|
//! | (1, 1) | I    | two disconnected factors, 2 primes each   | `K3^c * C4`             |
//! | (2, 2) | II   | one disconnected factor with 2 primes     | `(K2 + K1 + K2) * K2^c` |
//! | (3, 3) | III  | abelian                                   | `K3 + K1 + K3`          |
//!
//! Any other size pair, including the mixed ones, has no case.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError, Factorization};
use crate::chargraph::{graph_from_cd, CharGraph, DegreeSet, GraphError};
use crate::degrees::{self, DegreeError};
use crate::shapes::{eval_shape, parse_shape, GraphExpr};

/// Largest exponent `f` accepted anywhere `2^f ± 1` is formed.
pub const MAX_F: u32 = 63;
/// Largest `q` accepted by [`scan_lemma_oddfour`].
pub const MAX_ODD_Q: u64 = 100_000;
/// Vertex count of every graph in the classification.
pub const TARGET_VERTICES: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("f = {0} outside the supported range 2..={MAX_F}")]
    FRange(u32),
    #[error("bound {0} outside the supported range")]
    BoundRange(u64),
    #[error("radical rejected: {0}")]
    Validation(ValidationFailure),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
}

/// Reasons a supplied radical model does not fit the case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum ValidationFailure {
    #[error("f = {f} has sizes {sizes:?}, which is not a classified case")]
    NoCase { f: u32, sizes: (usize, usize) },
    #[error("case {case} needs {expected} radical factor(s) with primes, got {got}")]
    WrongArity { case: Case, expected: usize, got: usize },
    #[error("factor {index} has {got} primes in ρ, expected {expected}")]
    FactorPrimeCount { index: usize, expected: usize, got: usize },
    #[error("factor {index} has an edge in its character graph")]
    FactorNotEdgeless { index: usize },
    #[error("factor {index} shares primes {primes:?} with PSL2(2^f)")]
    OverlapsSocle { index: usize, primes: Vec<u64> },
    #[error("factors {first} and {second} share primes {primes:?}")]
    OverlapsFactor { first: usize, second: usize, primes: Vec<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    I,
    II,
    III,
    None,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::None => "None",
        };
        f.write_str(s)
    }
}

impl Case {
    pub fn from_sizes(sizes: (usize, usize)) -> Case {
        match sizes {
            (1, 1) => Case::I,
            (2, 2) => Case::II,
            (3, 3) => Case::III,
            _ => Case::None,
        }
    }

    /// Shape that `Δ(G)` must have.
    pub fn expected_shape(self) -> Option<GraphExpr> {
        let text = match self {
            Case::I => "K3^c * C4",
            Case::II => "(K2 + K1 + K2) * K2^c",
            Case::III => "K3 + K1 + K3",
            Case::None => return None,
        };
        Some(parse_shape(text).expect("built-in shapes parse"))
    }

    pub fn required_radical(self) -> RadicalRequirement {
        match self {
            Case::I => RadicalRequirement::DisconnectedFactors { factors: 2, primes_per_factor: 2 },
            Case::II => RadicalRequirement::DisconnectedFactors { factors: 1, primes_per_factor: 2 },
            Case::III => RadicalRequirement::Abelian,
            Case::None => RadicalRequirement::NotApplicable,
        }
    }
}

/// What the solvable radical has to look like for a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadicalRequirement {
    /// A direct product of `factors` disconnected groups, each contributing
    /// `primes_per_factor` new, mutually non-adjacent primes.
    DisconnectedFactors { factors: usize, primes_per_factor: usize },
    Abelian,
    NotApplicable,
}

impl RadicalRequirement {
    pub fn new_primes(self) -> usize {
        match self {
            RadicalRequirement::DisconnectedFactors { factors, primes_per_factor } => factors * primes_per_factor,
            _ => 0,
        }
    }
}

/// Outcome of the individual checks made by [`verify_main`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub vertex_count: usize,
    pub socle_vertices: usize,
    pub radical_vertices: usize,
    pub k4_free: bool,
    pub clique_number: usize,
    pub complement_bipartite: bool,
    pub isomorphic_to_expected: bool,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.vertex_count == TARGET_VERTICES
            && self.socle_vertices + self.radical_vertices == TARGET_VERTICES
            && self.k4_free
            && !self.complement_bipartite
            && self.isomorphic_to_expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub f: u32,
    pub q: u64,
    pub sizes: (usize, usize),
    pub minus_primes: BTreeSet<u64>,
    pub plus_primes: BTreeSet<u64>,
    pub case: Case,
    pub socle_graph: CharGraph,
    pub required_radical: RadicalRequirement,
    pub expected_shape: Option<GraphExpr>,
    pub verified: bool,
    /// Radical degree sets used for verification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<DegreeSet>>,
    /// `Δ(G)` of the verified product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<CharGraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Checks>,
    /// Bijection `Δ(G) → eval(expected_shape)` when one was found.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<Vec<(u64, u64)>>,
}

fn check_f(f: u32) -> Result<u64, ClassifyError> {
    if !(2..=MAX_F).contains(&f) {
        return Err(ClassifyError::FRange(f));
    }
    Ok(1u64 << f)
}

/// Assigns the case of `PSL2(2^f)` without verifying any group.
pub fn classify_f(f: u32) -> Result<CaseReport, ClassifyError> {
    let q = check_f(f)?;
    let minus_primes = arith::prime_divisors(q - 1)?;
    let plus_primes = arith::prime_divisors(q + 1)?;
    let sizes = (minus_primes.len(), plus_primes.len());
    let case = Case::from_sizes(sizes);
    Ok(CaseReport {
        f,
        q,
        sizes,
        minus_primes,
        plus_primes,
        case,
        socle_graph: degrees::graph_psl2(q)?,
        required_radical: case.required_radical(),
        expected_shape: case.expected_shape(),
        verified: false,
        radical: None,
        graph: None,
        checks: None,
        isomorphism: None,
    })
}

fn validate_radical(report: &CaseReport, radical: &[DegreeSet]) -> Result<Vec<BTreeSet<u64>>, ValidationFailure> {
    let socle = report.socle_graph.vertex_set();
    let rhos = radical
        .iter()
        .map(|d| d.rho().expect("degrees are positive"))
        .collect::<Vec<_>>();

    let (expected_factors, primes_per_factor) = match report.required_radical {
        RadicalRequirement::DisconnectedFactors { factors, primes_per_factor } => (factors, primes_per_factor),
        RadicalRequirement::Abelian => (0, 0),
        RadicalRequirement::NotApplicable => {
            return Err(ValidationFailure::NoCase { f: report.f, sizes: report.sizes });
        }
    };

    if report.case == Case::III {
        // abelian radical: any number of factors, all with trivial ρ
        if let Some((index, rho)) = rhos.iter().enumerate().find(|(_, r)| !r.is_empty()) {
            return Err(ValidationFailure::FactorPrimeCount { index, expected: 0, got: rho.len() });
        }
        return Ok(rhos);
    }

    if radical.len() != expected_factors {
        return Err(ValidationFailure::WrongArity { case: report.case, expected: expected_factors, got: radical.len() });
    }
    for (index, (set, rho)) in radical.iter().zip(&rhos).enumerate() {
        if rho.len() != primes_per_factor {
            return Err(ValidationFailure::FactorPrimeCount { index, expected: primes_per_factor, got: rho.len() });
        }
        let shared: Vec<u64> = rho.intersection(&socle).copied().collect();
        if !shared.is_empty() {
            return Err(ValidationFailure::OverlapsSocle { index, primes: shared });
        }
        let g = graph_from_cd(set).map_err(|_| ValidationFailure::FactorNotEdgeless { index })?;
        if g.edge_count() != 0 {
            return Err(ValidationFailure::FactorNotEdgeless { index });
        }
    }
    for i in 0..rhos.len() {
        for j in i + 1..rhos.len() {
            let shared: Vec<u64> = rhos[i].intersection(&rhos[j]).copied().collect();
            if !shared.is_empty() {
                return Err(ValidationFailure::OverlapsFactor { first: i, second: j, primes: shared });
            }
        }
    }
    Ok(rhos)
}

/// Builds `G = PSL2(2^f) × R` from radical degree sets and checks that
/// `Δ(G)` has seven vertices, is K4-free, has a non-bipartite complement and
/// is isomorphic to the case's shape.
pub fn verify_main(f: u32, radical: &[DegreeSet]) -> Result<CaseReport, ClassifyError> {
    let mut report = classify_f(f)?;
    let rhos = validate_radical(&report, radical).map_err(ClassifyError::Validation)?;

    let mut sets = vec![degrees::cd_psl2(report.q)?];
    sets.extend(radical.iter().cloned());
    let cd = degrees::product_of_degree_sets(&sets)?;
    let graph = graph_from_cd(&cd)?;

    let expected = eval_shape(report.expected_shape.as_ref().expect("case has a shape"));
    let isomorphism = if graph.vertex_count() <= crate::chargraph::MAX_BRUTE_FORCE_VERTICES {
        graph.isomorphism_to(&expected)?
    } else {
        None
    };
    let clique_number = if graph.vertex_count() <= crate::chargraph::MAX_BRUTE_FORCE_VERTICES {
        graph.clique_number()?
    } else {
        usize::MAX
    };
    let checks = Checks {
        vertex_count: graph.vertex_count(),
        socle_vertices: report.socle_graph.vertex_count(),
        radical_vertices: rhos.iter().map(BTreeSet::len).sum(),
        k4_free: clique_number < 4,
        clique_number,
        complement_bipartite: graph.complement().is_bipartite(),
        isomorphic_to_expected: isomorphism.is_some(),
    };

    report.verified = checks.all_pass();
    report.checks = Some(checks);
    report.isomorphism = isomorphism.map(|m| m.into_iter().collect());
    report.graph = Some(graph);
    report.radical = Some(radical.to_vec());
    Ok(report)
}

/// A radical that satisfies the case requirements: `{1, a, b}` per factor
/// with `a`, `b` the smallest odd primes not dividing `2^f(2^f - 1)(2^f + 1)`
/// and not used by another factor. Such a set has an edgeless two-vertex
/// graph; no claim is made that a group with exactly these degrees exists.
pub fn synthetic_radical(f: u32) -> Result<Vec<DegreeSet>, ClassifyError> {
    let report = classify_f(f)?;
    let RadicalRequirement::DisconnectedFactors { factors, primes_per_factor } = report.required_radical else {
        return match report.case {
            Case::III => Ok(Vec::new()),
            _ => Err(ClassifyError::Validation(ValidationFailure::NoCase { f, sizes: report.sizes })),
        };
    };
    let used = report.socle_graph.vertex_set();
    let mut fresh = (3u64..).filter(|&p| arith::is_prime(p) && !used.contains(&p));
    let mut out = Vec::with_capacity(factors);
    for _ in 0..factors {
        let primes: Vec<u64> = fresh.by_ref().take(primes_per_factor).collect();
        out.push(DegreeSet::new(std::iter::once(1).chain(primes))?);
    }
    Ok(out)
}

/// One row of the case table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub f: u32,
    pub sizes: (usize, usize),
    pub case: Case,
}

/// `classify_f` for every `f` in `2..=f_max`.
pub fn scan_cases(f_max: u32) -> Result<Vec<CaseRow>, ClassifyError> {
    if f_max > MAX_F {
        return Err(ClassifyError::FRange(f_max));
    }
    (2..=f_max)
        .into_par_iter()
        .map(|f| {
            let r = classify_f(f)?;
            Ok(CaseRow { f, sizes: r.sizes, case: r.case })
        })
        .collect()
}

/// Clause matched by an `f` with `|ρ(PSL2(2^f))| = 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "lowercase")]
pub enum InterestClause {
    /// `f = 4`, `2^f + 1 = 17`, `2^f - 1 = 3·5`.
    A,
    /// `f ≥ 5` prime, `2^f - 1 = r` prime and `2^f + 1 = 3·t^β` with `t` an
    /// odd prime and `β` odd.
    B { r: u64, t: u64, beta: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterestHit {
    pub f: u32,
    pub minus: Factorization,
    pub plus: Factorization,
    /// `None` marks a counterexample.
    pub clause: Option<InterestClause>,
}

fn interest_clause(f: u32, minus: &Factorization, plus: &Factorization) -> Option<InterestClause> {
    if f == 4 && plus.n() == 17 && minus.factors() == [(3, 1), (5, 1)] {
        return Some(InterestClause::A);
    }
    if f < 5 || !arith::is_prime(u64::from(f)) {
        return None;
    }
    let r = minus.n();
    if !arith::is_prime(r) {
        return None;
    }
    match plus.factors() {
        &[(3, 1), (t, beta)] if t > 3 && beta % 2 == 1 => Some(InterestClause::B { r, t, beta }),
        _ => None,
    }
}

/// All `f ≤ f_max` where `PSL2(2^f)` has exactly four character-degree
/// primes, each matched against the two admissible clauses.
pub fn scan_lemma_interest(f_max: u32) -> Result<Vec<InterestHit>, ClassifyError> {
    if f_max > MAX_F {
        return Err(ClassifyError::FRange(f_max));
    }
    let rows: Vec<Option<InterestHit>> = (2..=f_max)
        .into_par_iter()
        .map(|f| -> Result<_, ClassifyError> {
            let q = 1u64 << f;
            let minus = arith::factorize(q - 1)?;
            let plus = arith::factorize(q + 1)?;
            // ρ = {2} ∪ π(q - 1) ∪ π(q + 1), a disjoint union
            if 1 + minus.factors().len() + plus.factors().len() != 4 {
                return Ok(None);
            }
            let clause = interest_clause(f, &minus, &plus);
            Ok(Some(InterestHit { f, minus, plus, clause }))
        })
        .collect::<Result<_, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenFiveHit {
    pub f: u32,
    pub minus_primes: BTreeSet<u64>,
    pub plus_primes: BTreeSet<u64>,
    /// `f` prime or `f ∈ {6, 9}`.
    pub conforming: bool,
}

/// All `f ≤ f_max` with `|π(2^f - 1)| = |π(2^f + 1)| = 2`.
pub fn scan_lemma_evenfive(f_max: u32) -> Result<Vec<EvenFiveHit>, ClassifyError> {
    if f_max > MAX_F {
        return Err(ClassifyError::FRange(f_max));
    }
    let rows: Vec<Option<EvenFiveHit>> = (2..=f_max)
        .into_par_iter()
        .map(|f| -> Result<_, ClassifyError> {
            let q = 1u64 << f;
            let minus_primes = arith::prime_divisors(q - 1)?;
            let plus_primes = arith::prime_divisors(q + 1)?;
            if minus_primes.len() != 2 || plus_primes.len() != 2 {
                return Ok(None);
            }
            let conforming = arith::is_prime(u64::from(f)) || f == 6 || f == 9;
            Ok(Some(EvenFiveHit { f, minus_primes, plus_primes, conforming }))
        })
        .collect::<Result<_, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OddFourClause {
    /// `q ∈ {81, 25, 49}`.
    A,
    /// `p = 3` and `f` an odd prime.
    B,
    /// `p ≥ 11` and `f = 1`.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddFourHit {
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub primes: BTreeSet<u64>,
    /// `None` marks a counterexample.
    pub clause: Option<OddFourClause>,
}

fn oddfour_clause(q: u64, p: u64, f: u32) -> Option<OddFourClause> {
    if [81, 25, 49].contains(&q) {
        Some(OddFourClause::A)
    } else if p == 3 && f % 2 == 1 && arith::is_prime(u64::from(f)) {
        Some(OddFourClause::B)
    } else if p >= 11 && f == 1 {
        Some(OddFourClause::C)
    } else {
        None
    }
}

/// All odd prime powers `q ≤ q_max` with `|π(q² - 1)| = 3`.
pub fn scan_lemma_oddfour(q_max: u64) -> Result<Vec<OddFourHit>, ClassifyError> {
    if q_max > MAX_ODD_Q {
        return Err(ClassifyError::BoundRange(q_max));
    }
    let odd: Vec<u64> = (3..=q_max).step_by(2).collect();
    let rows: Vec<Option<OddFourHit>> = odd
        .into_par_iter()
        .map(|q| -> Result<_, ClassifyError> {
            let Some((p, f)) = arith::prime_power(q) else {
                return Ok(None);
            };
            let primes = arith::prime_divisors(q * q - 1)?;
            if primes.len() != 3 {
                return Ok(None);
            }
            let clause = oddfour_clause(q, p, f);
            Ok(Some(OddFourHit { q, p, f, primes, clause }))
        })
        .collect::<Result<_, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Pálfy's condition: among any three vertices some two are adjacent. Every
/// solvable group's graph satisfies it.
pub fn check_palfy(g: &CharGraph) -> bool {
    !g.complement().has_triangle()
}

/// A solvable group's graph on at least four vertices has a triangle or is
/// `C4`.
pub fn check_solvable_shape(g: &CharGraph) -> bool {
    if g.vertex_count() <= 3 {
        return true;
    }
    if g.has_triangle() {
        return true;
    }
    g.vertex_count() == 4
        && g.isomorphism_to(&eval_shape(&GraphExpr::Cycle(4)))
            .is_ok_and(|m| m.is_some())
}

/// Raised for a K4-free graph with more than seven vertices, which cannot be
/// the character graph of any finite group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexBoundWarning {
    pub vertex_count: usize,
}

impl fmt::Display for VertexBoundWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K4-free graph with {} vertices: a K4-free character graph has at most {TARGET_VERTICES}",
            self.vertex_count
        )
    }
}

pub fn k4free_vertex_bound(g: &CharGraph) -> Result<Option<VertexBoundWarning>, GraphError> {
    if g.vertex_count() <= TARGET_VERTICES {
        return Ok(None);
    }
    if g.is_kn_free(4)? {
        Ok(Some(VertexBoundWarning { vertex_count: g.vertex_count() }))
    } else {
        Ok(None)
    }
}

/// Both solvable-graph tests on the graph of a degree set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvableCheck {
    pub graph: CharGraph,
    pub palfy: bool,
    pub solvable_shape: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_bound_warning: Option<VertexBoundWarning>,
}

impl SolvableCheck {
    pub fn plausible(&self) -> bool {
        self.palfy && self.solvable_shape
    }
}

pub fn check_solvable(cd: &DegreeSet) -> Result<SolvableCheck, ClassifyError> {
    let graph = graph_from_cd(cd)?;
    let vertex_bound_warning = k4free_vertex_bound(&graph).unwrap_or(None);
    Ok(SolvableCheck {
        palfy: check_palfy(&graph),
        solvable_shape: check_solvable_shape(&graph),
        vertex_bound_warning,
        graph,
    })
}
