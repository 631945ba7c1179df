//! Character degree models: `PSL2(q)` and its graph, degrees guaranteed by
//! almost simple extensions and Clifford theory, direct products, and the
//! table of simple groups with exactly three prime divisors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, checked_pow, gcd, ArithError};
use crate::chargraph::{CharGraph, DegreeSet, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} is below the supported range (q >= {1})")]
    TooSmall(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("q = {q} is not a power of p = {p}")]
    WrongCharacteristic { q: u64, p: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree overflow: product exceeds 64 bits")]
    Overflow,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Checks `q = p^f ≥ min` and returns `(p, f)`.
fn prime_power_at_least(q: u64, min: u64) -> Result<(u64, u32), DegreeError> {
    if q < min {
        return Err(DegreeError::TooSmall(q, min));
    }
    arith::prime_power(q).ok_or(DegreeError::NotPrimePower(q))
}

/// `cd(PSL2(q))` for a prime power `q ≥ 4`.
pub fn cd_psl2(q: u64) -> Result<DegreeSet, DegreeError> {
    prime_power_at_least(q, 4)?;
    let degrees = if q.is_multiple_of(2) {
        vec![1, q - 1, q, q + 1]
    } else if q == 5 {
        // PSL2(5) ≅ PSL2(4) ≅ A5
        vec![1, 3, 4, 5]
    } else {
        let half = if q % 4 == 1 { q.div_ceil(2) } else { (q - 1) / 2 };
        vec![1, half, q - 1, q, q + 1]
    };
    Ok(DegreeSet::new(degrees)?)
}

/// `cd(PGL2(q))` as a set: `{1, q-1, q, q+1}`. For even `q` this is
/// `PSL2(q)`.
pub fn cd_pgl2(q: u64) -> Result<DegreeSet, DegreeError> {
    prime_power_at_least(q, 4)?;
    Ok(DegreeSet::new([1, q - 1, q, q + 1])?)
}

/// `Δ(PSL2(q))` assembled from its known component structure rather than
/// from degrees:
///
/// * `q` even: complete graphs on `{2}`, `π(q-1)` and `π(q+1)`, no edges
///   between them;
/// * `q > 5` odd with `q-1` or `q+1` a power of two: `{p}` isolated and a
///   complete graph on `π(q²-1)`;
/// * otherwise `{p}` isolated, `M = π(q-1)∖{2}` and `P = π(q+1)∖{2}`
///   complete, 2 adjacent to everything in `M ∪ P`, and no `M`–`P` edges.
///
/// `q = 5` uses the `q = 4` shape.
pub fn graph_psl2(q: u64) -> Result<CharGraph, DegreeError> {
    let (p, _) = prime_power_at_least(q, 4)?;
    if q == 5 {
        return graph_psl2(4);
    }
    let minus = arith::prime_divisors(q - 1)?;
    let plus = arith::prime_divisors(q + 1)?;

    let g = if p == 2 {
        CharGraph::complete([2])?
            .disjoint_union(&CharGraph::complete(minus)?)?
            .disjoint_union(&CharGraph::complete(plus)?)?
    } else if (q - 1).is_power_of_two() || (q + 1).is_power_of_two() {
        let all: BTreeSet<u64> = minus.union(&plus).copied().collect();
        CharGraph::complete([p])?.disjoint_union(&CharGraph::complete(all)?)?
    } else {
        let m: BTreeSet<u64> = minus.into_iter().filter(|&r| r != 2).collect();
        let pl: BTreeSet<u64> = plus.into_iter().filter(|&r| r != 2).collect();
        let odd_part = CharGraph::complete(m)?.disjoint_union(&CharGraph::complete(pl)?)?;
        let connected = CharGraph::complete([2])?.join(&odd_part)?;
        CharGraph::complete([p])?.disjoint_union(&connected)?
    };
    Ok(g)
}

/// The two degrees `(q-1)·index` and `(q+1)·index` that every almost simple
/// group with socle `PSL2(q)` has, where `index = [G : G ∩ PGL2(q)]`.
///
/// Requires `q = p^f ≥ 5` with `f ≥ 2` and `q ≠ 9`.
pub fn guaranteed_degrees_almost_simple(q: u64, index: u64) -> Result<BTreeSet<u64>, DegreeError> {
    let (_, f) = prime_power_at_least(q, 5)?;
    if f < 2 {
        return Err(DegreeError::Precondition(format!("q = {q} must be a proper prime power")));
    }
    if q == 9 {
        return Err(DegreeError::Precondition("q = 9 is excluded".into()));
    }
    if index == 0 {
        return Err(DegreeError::Precondition("index must be positive".into()));
    }
    let lo = (q - 1).checked_mul(index).ok_or(DegreeError::Overflow)?;
    let hi = (q + 1).checked_mul(index).ok_or(DegreeError::Overflow)?;
    Ok(BTreeSet::from([lo, hi]))
}

/// Constraint on `cd(G|θ)` when the inertia quotient is a Frobenius group
/// with elementary abelian `p`-kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum FrobeniusConstraint {
    /// `cd(G|θ) = {θ(1)·[G:I], θ(1)·b}` with `(q²-1)/(2, q-1)` dividing `b`.
    /// `[G:I]` is left symbolic.
    Extendible { theta_deg: u64, b_divisor: u64 },
    /// Every degree in `cd(G|θ)` is divisible by `p·(q+1)·θ(1)`.
    NotExtendible { divisor: u64 },
}

impl FrobeniusConstraint {
    /// What the second degree `θ(1)·b` is guaranteed to be divisible by.
    pub fn second_degree_divisor(&self) -> Option<u64> {
        match *self {
            FrobeniusConstraint::Extendible { theta_deg, b_divisor } => theta_deg.checked_mul(b_divisor),
            FrobeniusConstraint::NotExtendible { .. } => None,
        }
    }

    /// Whether `degree` is compatible with a non-extendible constraint.
    pub fn admits(&self, degree: u64) -> bool {
        match *self {
            FrobeniusConstraint::Extendible { .. } => true,
            FrobeniusConstraint::NotExtendible { divisor } => degree.is_multiple_of(divisor),
        }
    }
}

pub fn frobenius_case_degrees(
    q: u64,
    p: u64,
    theta_deg: u64,
    extendible: bool,
) -> Result<FrobeniusConstraint, DegreeError> {
    let (base, _) = arith::prime_power(q).ok_or(DegreeError::NotPrimePower(q))?;
    if base != p {
        return Err(DegreeError::WrongCharacteristic { q, p });
    }
    if theta_deg == 0 {
        return Err(DegreeError::Precondition("θ(1) must be positive".into()));
    }
    if extendible {
        let q2 = q.checked_mul(q).ok_or(DegreeError::Overflow)? - 1;
        let b_divisor = q2 / gcd(2, q - 1);
        Ok(FrobeniusConstraint::Extendible { theta_deg, b_divisor })
    } else {
        let divisor = p
            .checked_mul(q + 1)
            .and_then(|v| v.checked_mul(theta_deg))
            .ok_or(DegreeError::Overflow)?;
        Ok(FrobeniusConstraint::NotExtendible { divisor })
    }
}

/// Clifford-theory setting for a normal `R` with `G/R ≅ PSL2(p^f)` and an
/// inertia quotient built over `PSL2(p^m)` / `PGL2(p^m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordScenario {
    pub p: u64,
    pub f: u32,
    pub m: u32,
    pub theta_deg: u64,
}

impl CliffordScenario {
    pub fn new(p: u64, f: u32, m: u32, theta_deg: u64) -> Result<Self, DegreeError> {
        if !arith::is_prime(p) {
            return Err(DegreeError::NotPrime(p));
        }
        if f == 0 || m == 0 || !f.is_multiple_of(m) {
            return Err(DegreeError::Precondition(format!("m = {m} must divide f = {f}")));
        }
        if theta_deg == 0 {
            return Err(DegreeError::Precondition("θ(1) must be positive".into()));
        }
        Ok(CliffordScenario { p, f, m, theta_deg })
    }

    /// `[G:I] = p^(f-m) · (p^(2f) - 1) / (p^(2m) - 1)`.
    pub fn inertia_index(&self) -> Result<u64, DegreeError> {
        let p = u128::from(self.p);
        let big = p.checked_pow(2 * self.f).ok_or(DegreeError::Overflow)? - 1;
        let small = p.checked_pow(2 * self.m).ok_or(DegreeError::Overflow)? - 1;
        if big % small != 0 {
            return Err(DegreeError::Precondition(format!(
                "p^(2m) - 1 does not divide p^(2f) - 1 for m = {}, f = {}",
                self.m, self.f
            )));
        }
        let index = p
            .checked_pow(self.f - self.m)
            .and_then(|v| v.checked_mul(big / small))
            .ok_or(DegreeError::Overflow)?;
        u64::try_from(index).map_err(|_| DegreeError::Overflow)
    }
}

/// `{θ(1)(p^m - 1)[G:I], θ(1)(p^m + 1)[G:I]}` for an inertia quotient
/// `PSL2(p^m)` with `m | f`, `m ≠ f`, `p^m ≥ 7` and `p^m ≠ 9`.
pub fn special_case_degrees(s: &CliffordScenario) -> Result<BTreeSet<u64>, DegreeError> {
    if s.m == s.f {
        return Err(DegreeError::Precondition("m must be a proper divisor of f".into()));
    }
    let pm = checked_pow(s.p, s.m)?;
    if pm < 7 || pm == 9 {
        return Err(DegreeError::Precondition(format!("p^m = {pm} must be >= 7 and != 9")));
    }
    special_case_degrees_formula(s)
}

/// Evaluates the same two degrees with only `m | f` enforced. Used for
/// formula checks on small parameters outside the group-theoretic range.
pub fn special_case_degrees_formula(s: &CliffordScenario) -> Result<BTreeSet<u64>, DegreeError> {
    let pm = checked_pow(s.p, s.m)?;
    let index = s.inertia_index()?;
    let scale = s.theta_deg.checked_mul(index).ok_or(DegreeError::Overflow)?;
    let lo = (pm - 1).checked_mul(scale).ok_or(DegreeError::Overflow)?;
    let hi = (pm + 1).checked_mul(scale).ok_or(DegreeError::Overflow)?;
    Ok(BTreeSet::from([lo, hi]))
}

/// When the inertia quotient is `PGL2(p^m)` (p odd, `2m | f`, `p^m ≠ 3`),
/// some degree of `cd(G|θ)` is divisible by `θ(1)·p^(f-m)·(p^f + 1)`. The
/// degree itself is not determined, so only the divisor is exposed.
pub fn pgl2_case_divisor(s: &CliffordScenario) -> Result<u64, DegreeError> {
    if s.p == 2 {
        return Err(DegreeError::Precondition("p must be odd".into()));
    }
    if !s.f.is_multiple_of(2 * s.m) {
        return Err(DegreeError::Precondition(format!("2m = {} must divide f = {}", 2 * s.m, s.f)));
    }
    if checked_pow(s.p, s.m)? == 3 {
        return Err(DegreeError::Precondition("p^m = 3 is excluded".into()));
    }
    let pf = checked_pow(s.p, s.f)?;
    checked_pow(s.p, s.f - s.m)?
        .checked_mul(pf + 1)
        .and_then(|v| v.checked_mul(s.theta_deg))
        .ok_or(DegreeError::Overflow)
}

/// Whether some degree in `degrees` meets [`pgl2_case_divisor`].
pub fn satisfies_pgl2_case(degrees: &BTreeSet<u64>, s: &CliffordScenario) -> Result<bool, DegreeError> {
    let d = pgl2_case_divisor(s)?;
    Ok(degrees.iter().any(|x| x % d == 0))
}

/// A group whose degree set the library can produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupModel {
    Psl2 { p: u64, f: u32 },
    Pgl2 { p: u64, f: u32 },
    /// A solvable group given only by its degree set.
    Solvable {
        #[serde(with = "degree_list")]
        degrees: DegreeSet,
    },
    Product { factors: Vec<GroupModel> },
}

mod degree_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::chargraph::DegreeSet;

    pub fn serialize<S: Serializer>(set: &DegreeSet, s: S) -> Result<S::Ok, S::Error> {
        set.degrees().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DegreeSet, D::Error> {
        let raw = Vec::<u64>::deserialize(d)?;
        DegreeSet::new(raw).map_err(serde::de::Error::custom)
    }
}

impl GroupModel {
    fn field_order(p: u64, f: u32) -> Result<u64, DegreeError> {
        if !arith::is_prime(p) {
            return Err(DegreeError::NotPrime(p));
        }
        let q = checked_pow(p, f)?;
        if q < 4 {
            return Err(DegreeError::TooSmall(q, 4));
        }
        Ok(q)
    }

    pub fn cd(&self) -> Result<DegreeSet, DegreeError> {
        match self {
            GroupModel::Psl2 { p, f } => cd_psl2(Self::field_order(*p, *f)?),
            GroupModel::Pgl2 { p, f } => cd_pgl2(Self::field_order(*p, *f)?),
            GroupModel::Solvable { degrees } => Ok(degrees.clone()),
            GroupModel::Product { factors } => cd_direct_product(factors),
        }
    }

    /// Checks model invariants: field orders, the solvable-graph conditions
    /// on abstract solvable factors, and disjoint `ρ` across product factors.
    pub fn validate(&self) -> Result<(), DegreeError> {
        match self {
            GroupModel::Psl2 { p, f } | GroupModel::Pgl2 { p, f } => Self::field_order(*p, *f).map(|_| ()),
            GroupModel::Solvable { degrees } => {
                let g = crate::chargraph::graph_from_cd(degrees)?;
                if !crate::classify::check_palfy(&g) {
                    return Err(DegreeError::Precondition(
                        "solvable degree set has three pairwise non-adjacent primes".into(),
                    ));
                }
                if !crate::classify::check_solvable_shape(&g) {
                    return Err(DegreeError::Precondition(
                        "solvable degree set graph has no triangle and is not C4".into(),
                    ));
                }
                Ok(())
            }
            GroupModel::Product { factors } => {
                let mut seen = BTreeSet::new();
                for factor in factors {
                    factor.validate()?;
                    let rho = factor.cd()?.rho()?;
                    if let Some(p) = rho.iter().find(|p| seen.contains(*p)) {
                        return Err(DegreeError::Precondition(format!(
                            "prime {p} appears in more than one factor"
                        )));
                    }
                    seen.extend(rho);
                }
                Ok(())
            }
        }
    }
}

/// Degree set of a direct product: every product of one degree per factor.
pub fn cd_direct_product(models: &[GroupModel]) -> Result<DegreeSet, DegreeError> {
    let sets = models.iter().map(GroupModel::cd).collect::<Result<Vec<_>, _>>()?;
    product_of_degree_sets(&sets)
}

pub fn product_of_degree_sets(sets: &[DegreeSet]) -> Result<DegreeSet, DegreeError> {
    let mut acc = BTreeSet::from([1u64]);
    for set in sets {
        let mut next = BTreeSet::new();
        for &a in &acc {
            for &b in set.degrees() {
                next.insert(a.checked_mul(b).ok_or(DegreeError::Overflow)?);
            }
        }
        acc = next;
    }
    Ok(DegreeSet::new(acc)?)
}

/// A nonabelian simple group whose order has exactly three prime divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct K3Group {
    pub name: &'static str,
    pub order: u64,
    pub primes: [u64; 3],
}

const K3_GROUPS: [K3Group; 8] = [
    K3Group { name: "A5", order: 60, primes: [2, 3, 5] },
    K3Group { name: "A6", order: 360, primes: [2, 3, 5] },
    K3Group { name: "PSL2(7)", order: 168, primes: [2, 3, 7] },
    K3Group { name: "PSL2(8)", order: 504, primes: [2, 3, 7] },
    K3Group { name: "PSL2(17)", order: 2448, primes: [2, 3, 17] },
    K3Group { name: "PSL3(3)", order: 5616, primes: [2, 3, 13] },
    K3Group { name: "PSU3(3)", order: 6048, primes: [2, 3, 7] },
    K3Group { name: "PSU4(2)", order: 25920, primes: [2, 3, 5] },
];

pub fn k3_group_table() -> &'static [K3Group] {
    &K3_GROUPS
}

pub fn k3_group(name: &str) -> Option<&'static K3Group> {
    K3_GROUPS.iter().find(|g| g.name == name)
}
