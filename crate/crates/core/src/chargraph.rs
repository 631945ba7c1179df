//! Character degree graphs and the graph predicates needed to reason about
//! them.
//!
//! Vertices are labelled by the primes themselves, so graphs coming from
//! different sources (degree sets, the `PSL2(q)` constructor, shape
//! expressions) compare directly. All orderings are deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, is_prime};

/// Largest vertex count accepted by the exhaustive clique and isomorphism
/// searches.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex label {0} is not prime")]
    NonPrimeVertex(u64),
    #[error("edge {{{0}, {1}}} references a vertex outside the graph")]
    DanglingEdge(u64, u64),
    #[error("self-loop on vertex {0}")]
    SelfLoop(u64),
    #[error("vertex sets overlap in {0:?}")]
    Overlap(Vec<u64>),
    #[error("unknown vertex {0}")]
    UnknownVertex(u64),
    #[error("graph has {0} vertices; exhaustive search supports at most {MAX_BRUTE_FORCE_VERTICES}")]
    TooLarge(usize),
    #[error("clique size must be at least 2, got {0}")]
    InvalidCliqueSize(usize),
    #[error("degree set must contain 1")]
    MissingTrivialDegree,
    #[error("character degrees must be positive")]
    ZeroDegree,
    #[error(transparent)]
    Arith(#[from] arith::ArithError),
}

/// A finite set of character degrees, `cd(G)`. Always contains 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDegreeSet", into = "RawDegreeSet")]
pub struct DegreeSet {
    degrees: BTreeSet<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawDegreeSet {
    degrees: Vec<u64>,
}

impl TryFrom<RawDegreeSet> for DegreeSet {
    type Error = GraphError;

    fn try_from(raw: RawDegreeSet) -> Result<Self, Self::Error> {
        DegreeSet::new(raw.degrees)
    }
}

impl From<DegreeSet> for RawDegreeSet {
    fn from(set: DegreeSet) -> Self {
        RawDegreeSet {
            degrees: set.degrees.into_iter().collect(),
        }
    }
}

impl DegreeSet {
    pub fn new(degrees: impl IntoIterator<Item = u64>) -> Result<Self, GraphError> {
        let degrees: BTreeSet<u64> = degrees.into_iter().collect();
        if degrees.contains(&0) {
            return Err(GraphError::ZeroDegree);
        }
        if !degrees.contains(&1) {
            return Err(GraphError::MissingTrivialDegree);
        }
        Ok(DegreeSet { degrees })
    }

    /// `{1}`, the degree set of an abelian group.
    pub fn trivial() -> Self {
        DegreeSet {
            degrees: BTreeSet::from([1]),
        }
    }

    pub fn degrees(&self) -> &BTreeSet<u64> {
        &self.degrees
    }

    pub fn contains(&self, d: u64) -> bool {
        self.degrees.contains(&d)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `ρ`: every prime dividing some degree.
    pub fn rho(&self) -> Result<BTreeSet<u64>, GraphError> {
        let mut primes = BTreeSet::new();
        for &d in &self.degrees {
            primes.extend(arith::prime_divisors(d)?);
        }
        Ok(primes)
    }
}

/// Simple undirected graph on prime-labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct CharGraph {
    adj: BTreeMap<u64, BTreeSet<u64>>,
}

/// Wire form: `{"vertices":[2,3,5],"edges":[[3,5]]}`.
#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<u64>,
    edges: Vec<[u64; 2]>,
}

impl TryFrom<RawGraph> for CharGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        CharGraph::new(raw.vertices, raw.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<CharGraph> for RawGraph {
    fn from(g: CharGraph) -> Self {
        RawGraph {
            vertices: g.vertices().collect(),
            edges: g.edges().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl CharGraph {
    /// Builds a graph, checking that labels are prime and edges are proper.
    /// Duplicate edges (in either orientation) collapse to one.
    pub fn new(
        vertices: impl IntoIterator<Item = u64>,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self, GraphError> {
        let mut adj: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
        for v in vertices {
            if !is_prime(v) {
                return Err(GraphError::NonPrimeVertex(v));
            }
            adj.entry(v).or_default();
        }
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !adj.contains_key(&a) || !adj.contains_key(&b) {
                return Err(GraphError::DanglingEdge(a, b));
            }
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        Ok(CharGraph { adj })
    }

    /// The graph with no vertices.
    pub fn empty() -> Self {
        CharGraph::default()
    }

    /// `K_n` on the given primes.
    pub fn complete(vertices: impl IntoIterator<Item = u64>) -> Result<Self, GraphError> {
        let vs: Vec<u64> = vertices.into_iter().collect();
        let edges: Vec<(u64, u64)> = pairs(&vs).collect();
        CharGraph::new(vs, edges)
    }

    /// Edgeless graph on the given primes.
    pub fn edgeless(vertices: impl IntoIterator<Item = u64>) -> Result<Self, GraphError> {
        CharGraph::new(vertices, std::iter::empty())
    }

    /// Cycle through the primes in the given order.
    pub fn cycle(vertices: &[u64]) -> Result<Self, GraphError> {
        let n = vertices.len();
        let edges = (0..n).map(|i| (vertices[i], vertices[(i + 1) % n]));
        CharGraph::new(vertices.iter().copied(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = u64> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<u64> {
        self.adj.keys().copied().collect()
    }

    /// Edges as `(smaller, larger)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, ns)| ns.range(a + 1..).map(move |&b| (a, b)))
    }

    pub fn has_vertex(&self, v: u64) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: u64, b: u64) -> bool {
        self.adj.get(&a).is_some_and(|ns| ns.contains(&b))
    }

    pub fn neighbors(&self, v: u64) -> Option<&BTreeSet<u64>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: u64) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    fn ensure_disjoint(&self, other: &CharGraph) -> Result<(), GraphError> {
        let shared: Vec<u64> = self
            .adj
            .keys()
            .filter(|v| other.adj.contains_key(v))
            .copied()
            .collect();
        if shared.is_empty() {
            Ok(())
        } else {
            Err(GraphError::Overlap(shared))
        }
    }

    /// Disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &CharGraph) -> Result<CharGraph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        for &a in self.adj.keys() {
            for &b in other.adj.keys() {
                g.adj.get_mut(&a).unwrap().insert(b);
                g.adj.get_mut(&b).unwrap().insert(a);
            }
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &CharGraph) -> Result<CharGraph, GraphError> {
        self.ensure_disjoint(other)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|(&v, ns)| (v, ns.clone())));
        Ok(CharGraph { adj })
    }

    pub fn complement(&self) -> CharGraph {
        let adj = self
            .adj
            .iter()
            .map(|(&v, ns)| {
                let others = self
                    .adj
                    .keys()
                    .filter(|&&u| u != v && !ns.contains(&u))
                    .copied()
                    .collect();
                (v, others)
            })
            .collect();
        CharGraph { adj }
    }

    /// Induced subgraph `g[s]`.
    pub fn induced(&self, s: &BTreeSet<u64>) -> Result<CharGraph, GraphError> {
        if let Some(&v) = s.iter().find(|v| !self.adj.contains_key(v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        let adj = s
            .iter()
            .map(|&v| (v, self.adj[&v].intersection(s).copied().collect()))
            .collect();
        Ok(CharGraph { adj })
    }

    /// Size of a largest clique.
    pub fn clique_number(&self) -> Result<usize, GraphError> {
        self.check_brute_force_bound()?;
        let vs: Vec<u64> = self.vertices().collect();
        let masks = self.adjacency_masks(&vs);
        let mut best = 0;
        for subset in 0u32..(1 << vs.len()) {
            let size = subset.count_ones() as usize;
            if size <= best {
                continue;
            }
            let is_clique = (0..vs.len())
                .filter(|i| subset >> i & 1 == 1)
                .all(|i| (masks[i] | 1 << i) & subset == subset);
            if is_clique {
                best = size;
            }
        }
        Ok(best)
    }

    /// True iff the graph contains no `K_n`.
    pub fn is_kn_free(&self, n: usize) -> Result<bool, GraphError> {
        if n < 2 {
            return Err(GraphError::InvalidCliqueSize(n));
        }
        Ok(self.clique_number()? < n)
    }

    /// Connected components, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<BTreeSet<u64>> {
        let mut seen = BTreeSet::new();
        let mut components = Vec::new();
        for &start in self.adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut component = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[&v] {
                    if seen.insert(u) {
                        component.insert(u);
                        queue.push_back(u);
                    }
                }
            }
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Breadth-first 2-colouring.
    pub fn is_bipartite(&self) -> bool {
        let mut colour: BTreeMap<u64, bool> = BTreeMap::new();
        for &start in self.adj.keys() {
            if colour.contains_key(&start) {
                continue;
            }
            colour.insert(start, false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = colour[&v];
                for &u in &self.adj[&v] {
                    match colour.get(&u) {
                        Some(&cu) if cu == c => return false,
                        Some(_) => {}
                        None => {
                            colour.insert(u, !c);
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        true
    }

    /// Every 3-subset of vertices that is independent here, i.e. spans a
    /// triangle in the complement. Lexicographic order.
    pub fn odd_cycle_triples(&self) -> Vec<[u64; 3]> {
        let vs: Vec<u64> = self.vertices().collect();
        let mut out = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.has_edge(vs[i], vs[j]) {
                    continue;
                }
                for k in j + 1..vs.len() {
                    if !self.has_edge(vs[i], vs[k]) && !self.has_edge(vs[j], vs[k]) {
                        out.push([vs[i], vs[j], vs[k]]);
                    }
                }
            }
        }
        out
    }

    /// Whether some three vertices are pairwise adjacent.
    pub fn has_triangle(&self) -> bool {
        self.adj.iter().any(|(&a, ns)| {
            ns.range(a + 1..)
                .any(|&b| self.adj[&b].range(b + 1..).any(|c| ns.contains(c)))
        })
    }

    /// Finds an adjacency-preserving bijection `self → other`, if any.
    ///
    /// Backtracking over vertex assignments, pruned by degree; equivalent to
    /// trying every permutation.
    pub fn isomorphism_to(&self, other: &CharGraph) -> Result<Option<BTreeMap<u64, u64>>, GraphError> {
        self.check_brute_force_bound()?;
        other.check_brute_force_bound()?;
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return Ok(None);
        }
        let mut da: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = other.vertices().map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return Ok(None);
        }

        let left: Vec<u64> = self.vertices().collect();
        let right: Vec<u64> = other.vertices().collect();
        let mut assignment: Vec<usize> = Vec::with_capacity(left.len());
        let mut used = vec![false; right.len()];
        if self.extend_mapping(other, &left, &right, &mut assignment, &mut used) {
            Ok(Some(
                left.iter()
                    .zip(&assignment)
                    .map(|(&a, &j)| (a, right[j]))
                    .collect(),
            ))
        } else {
            Ok(None)
        }
    }

    fn extend_mapping(
        &self,
        other: &CharGraph,
        left: &[u64],
        right: &[u64],
        assignment: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = assignment.len();
        if i == left.len() {
            return true;
        }
        let v = left[i];
        for j in 0..right.len() {
            if used[j] || self.degree(v) != other.degree(right[j]) {
                continue;
            }
            let consistent = assignment.iter().enumerate().all(|(k, &jk)| {
                self.has_edge(v, left[k]) == other.has_edge(right[j], right[jk])
            });
            if !consistent {
                continue;
            }
            used[j] = true;
            assignment.push(j);
            if self.extend_mapping(other, left, right, assignment, used) {
                return true;
            }
            assignment.pop();
            used[j] = false;
        }
        false
    }

    fn check_brute_force_bound(&self) -> Result<(), GraphError> {
        if self.vertex_count() > MAX_BRUTE_FORCE_VERTICES {
            Err(GraphError::TooLarge(self.vertex_count()))
        } else {
            Ok(())
        }
    }

    fn adjacency_masks(&self, vs: &[u64]) -> Vec<u32> {
        vs.iter()
            .map(|&v| {
                vs.iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.has_edge(v, u))
                    .fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect()
    }

    /// Graphviz DOT rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {v};");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }
}

fn pairs(vs: &[u64]) -> impl Iterator<Item = (u64, u64)> + '_ {
    (0..vs.len()).flat_map(move |i| (i + 1..vs.len()).map(move |j| (vs[i], vs[j])))
}

/// `Δ` of a degree set: vertices are the primes dividing some degree, and
/// `p`, `q` are adjacent when `pq` divides some degree.
pub fn graph_from_cd(cd: &DegreeSet) -> Result<CharGraph, GraphError> {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for &d in cd.degrees() {
        let primes: Vec<u64> = arith::prime_divisors(d)?.into_iter().collect();
        edges.extend(pairs(&primes));
        vertices.extend(primes);
    }
    CharGraph::new(vertices, edges)
}

/// Free-function form of [`CharGraph::isomorphism_to`].
pub fn are_isomorphic(a: &CharGraph, b: &CharGraph) -> Result<Option<BTreeMap<u64, u64>>, GraphError> {
    a.isomorphism_to(b)
}
