//! Weighted undirected graphs with self-loops, clusterings, and modularity.
//!
//! # Self-loop convention
//!
//! A loop at vertex `i` is stored once, as its weight `ℓ_i`. It counts
//! **twice** toward the degree, `d_i = Σ_{j≠i} w_ij + 2ℓ_i`, and **once**
//! toward the total weight `M` and toward the internal weight `E(C)` of the
//! community containing `i`. In the pairwise (matrix) form of modularity the
//! diagonal adjacency entry is `A_ii = 2ℓ_i`, which makes
//!
//! ```text
//! (1/2M) Σ_{i,j} (A_ij − d_i d_j / 2M) δ_ij  ==  Σ_t ( E(C_t)/M − vol(C_t)² / 4M² )
//! ```
//!
//! hold for every clustering. Contracting a community into a single vertex
//! with a loop carrying its internal weight preserves modularity exactly
//! under this convention, which is what multilevel methods rely on.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Immutable weighted undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
    degrees: Vec<f64>,
    total_weight: f64,
    edge_count: usize,
}

/// Accumulates edges; parallel edges are collapsed by summing weights.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    pairs: BTreeMap<(usize, usize), f64>,
    loops: BTreeMap<usize, f64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            ..Default::default()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Grows the vertex set to at least `n` vertices.
    pub fn ensure_vertices(&mut self, n: usize) {
        self.n = self.n.max(n);
    }

    /// Adds weight to pair `(u, v)`; `u == v` adds loop weight.
    ///
    /// Returns `true` when the pair already carried weight (a parallel edge).
    pub fn add_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<bool> {
        let n = self.n;
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            if !weight.is_finite() || weight < 0.0 {
                return Err(Error::InvalidWeight { u, v, weight });
            }
            let slot = self.loops.entry(u).or_insert(0.0);
            let existed = *slot > 0.0;
            *slot += weight;
            Ok(existed)
        } else {
            if !weight.is_finite() || weight <= 0.0 {
                return Err(Error::InvalidWeight { u, v, weight });
            }
            let key = (u.min(v), u.max(v));
            let slot = self.pairs.entry(key).or_insert(0.0);
            let existed = *slot > 0.0;
            *slot += weight;
            Ok(existed)
        }
    }

    pub fn build(self) -> Graph {
        let n = self.n;
        let mut adj = vec![Vec::new(); n];
        for (&(u, v), &w) in &self.pairs {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for row in &mut adj {
            row.sort_by_key(|&(j, _)| j);
        }
        let mut loops = vec![0.0; n];
        for (&i, &w) in &self.loops {
            loops[i] = w;
        }
        let edge_count = self.pairs.len() + self.loops.values().filter(|&&w| w > 0.0).count();
        Graph::from_parts(adj, loops, edge_count)
    }
}

impl Graph {
    fn from_parts(adj: Vec<Vec<(usize, f64)>>, loops: Vec<f64>, edge_count: usize) -> Self {
        let degrees: Vec<f64> = adj
            .iter()
            .zip(&loops)
            .map(|(row, &l)| row.iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * l)
            .collect();
        // Defined through the degree sum so that Σ d_i = 2M holds exactly.
        let total_weight = degrees.iter().sum::<f64>() / 2.0;
        Graph {
            adj,
            loops,
            degrees,
            total_weight,
            edge_count,
        }
    }

    /// Builds a graph from `(u, v, w)` triples; `u == v` is a loop.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v, w) in edges {
            b.add_edge(u, v, w)?;
        }
        Ok(b.build())
    }

    /// Unit-weight graph from vertex pairs.
    pub fn from_unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of distinct weighted pairs, loops included.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, i: usize) -> Result<f64> {
        self.degrees.get(i).copied().ok_or(Error::VertexOutOfRange {
            vertex: i,
            n: self.n(),
        })
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Total edge weight `M`; `Σ_i d_i = 2M`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn loop_weight(&self, i: usize) -> f64 {
        self.loops[i]
    }

    pub fn loops(&self) -> &[f64] {
        &self.loops
    }

    /// Off-diagonal neighbours of `i`, sorted by id.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adj[i]
    }

    /// `w_ij` for `i != j`, `ℓ_i` for `i == j`.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.loops[i];
        }
        let row = &self.adj[i];
        match row.binary_search_by_key(&j, |&(k, _)| k) {
            Ok(pos) => row[pos].1,
            Err(_) => 0.0,
        }
    }

    /// Every pair once: `(i, j, w)` with `i < j`, then loops as `(i, i, ℓ)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let pairs = self.adj.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .filter(move |&&(j, _)| j > i)
                .map(move |&(j, w)| (i, j, w))
        });
        let loops = self
            .loops
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0.0)
            .map(|(i, &l)| (i, i, l));
        pairs.chain(loops)
    }

    /// True when all weights are 1 and there are no loops.
    pub fn is_simple_unweighted(&self) -> bool {
        self.loops.iter().all(|&l| l == 0.0)
            && self.adj.iter().flatten().all(|&(_, w)| w == 1.0)
    }

    /// True when every weight is a (nonnegative) integer.
    pub fn is_integral(&self) -> bool {
        self.loops.iter().all(|l| l.fract() == 0.0)
            && self.adj.iter().flatten().all(|&(_, w)| w.fract() == 0.0)
    }

    /// Collapses each community of `c` into one vertex. Internal weight
    /// becomes the loop weight of the super-vertex; cross weights are summed.
    pub fn contract(&self, c: &Clustering) -> Result<Graph> {
        check_cover(self, c)?;
        let k = c.community_count();
        let mut b = GraphBuilder::new(k);
        let mut internal = vec![0.0; k];
        for (i, j, w) in self.edges() {
            let (ci, cj) = (c.community_of(i), c.community_of(j));
            if ci == cj {
                internal[ci] += w;
            } else {
                b.add_edge(ci, cj, w)?;
            }
        }
        for (ci, w) in internal.into_iter().enumerate() {
            if w > 0.0 {
                b.add_edge(ci, ci, w)?;
            }
        }
        Ok(b.build())
    }
}

/// A partition of `0..n` in canonical form: ids `0..l` in order of first
/// appearance, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Clustering {
    labels: Vec<usize>,
    count: usize,
}

impl Clustering {
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Clustering {
            count: map.len(),
            labels,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Clustering {
            labels: (0..n).collect(),
            count: n,
        }
    }

    pub fn single(n: usize) -> Self {
        Clustering {
            labels: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    /// Two communities from a side indicator; `true` marks the first side.
    pub fn from_sides(sides: &[bool]) -> Self {
        Self::from_labels(sides.iter().map(|&s| usize::from(!s)))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn community_of(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, &c) in self.labels.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    /// Labels of `self` refined through a clustering of its communities
    /// (used when expanding a contracted graph).
    pub fn compose(&self, upper: &Clustering) -> Clustering {
        Clustering::from_labels(self.labels.iter().map(|&c| upper.community_of(c)))
    }
}

impl From<Vec<usize>> for Clustering {
    fn from(v: Vec<usize>) -> Self {
        Clustering::from_labels(v)
    }
}

impl From<Clustering> for Vec<usize> {
    fn from(c: Clustering) -> Self {
        c.labels
    }
}

fn check_cover(g: &Graph, c: &Clustering) -> Result<()> {
    if g.n() != c.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: c.n(),
        });
    }
    Ok(())
}

fn check_weight(g: &Graph) -> Result<f64> {
    let m = g.total_weight();
    if m > 0.0 {
        Ok(m)
    } else {
        Err(Error::EmptyGraph)
    }
}

/// Internal weight `E(C_t)` and volume `vol(C_t)` per community.
pub fn community_weights(g: &Graph, c: &Clustering) -> Result<(Vec<f64>, Vec<f64>)> {
    check_cover(g, c)?;
    let k = c.community_count();
    let mut internal = vec![0.0; k];
    let mut vol = vec![0.0; k];
    for (i, &d) in g.degrees().iter().enumerate() {
        vol[c.community_of(i)] += d;
    }
    for (i, j, w) in g.edges() {
        if c.same(i, j) {
            internal[c.community_of(i)] += w;
        }
    }
    Ok((internal, vol))
}

/// Modularity `Q = Σ_t (E(C_t)/M − vol(C_t)²/4M²)`.
pub fn modularity(g: &Graph, c: &Clustering) -> Result<f64> {
    let m = check_weight(g)?;
    let (internal, vol) = community_weights(g, c)?;
    Ok(internal
        .iter()
        .zip(&vol)
        .map(|(&e, &v)| e / m - v * v / (4.0 * m * m))
        .sum())
}

/// Modularity as the double sum over all ordered pairs, with `A_ii = 2ℓ_i`.
/// Quadratic in `n`; kept as an independent route for cross-checks.
pub fn modularity_pairwise(g: &Graph, c: &Clustering) -> Result<f64> {
    let m = check_weight(g)?;
    check_cover(g, c)?;
    let d = g.degrees();
    let n = g.n();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if !c.same(i, j) {
                continue;
            }
            let a = if i == j { 2.0 * g.loop_weight(i) } else { g.weight(i, j) };
            sum += a - d[i] * d[j] / (2.0 * m);
        }
    }
    Ok(sum / (2.0 * m))
}

/// Two-community closed form `(2·vol₁·vol₂ − 4M·δ(C₁)) / 4M²`, where `δ` is
/// the crossing weight.
pub fn modularity_two_community(g: &Graph, c: &Clustering) -> Result<f64> {
    let m = check_weight(g)?;
    check_cover(g, c)?;
    if c.community_count() > 2 {
        return Err(Error::TooManyCommunities {
            found: c.community_count(),
            max: 2,
        });
    }
    let mut vol = [0.0; 2];
    for (i, &d) in g.degrees().iter().enumerate() {
        vol[c.community_of(i)] += d;
    }
    let cut: f64 = g
        .edges()
        .filter(|&(i, j, _)| !c.same(i, j))
        .map(|(_, _, w)| w)
        .sum();
    Ok((2.0 * vol[0] * vol[1] - 4.0 * m * cut) / (4.0 * m * m))
}

/// Change in modularity from merging two communities with crossing weight
/// `cross` and volumes `vol_a`, `vol_b`.
#[inline]
pub fn merge_delta(cross: f64, vol_a: f64, vol_b: f64, total_weight: f64) -> f64 {
    let m = total_weight;
    (2.0 * cross * 2.0 * m - 2.0 * vol_a * vol_b) / (4.0 * m * m)
}

/// Dense modularity matrix `B_ij = A_ij − d_i d_j / 2M` with `A_ii = 2ℓ_i`.
#[derive(Clone, Debug)]
pub struct ModularityMatrix {
    entries: DMatrix<f64>,
    total_weight: f64,
}

impl ModularityMatrix {
    pub fn new(g: &Graph) -> Result<Self> {
        let m = check_weight(g)?;
        let n = g.n();
        let d = g.degrees();
        let mut b = DMatrix::from_fn(n, n, |i, j| -d[i] * d[j] / (2.0 * m));
        for (i, j, w) in g.edges() {
            if i == j {
                b[(i, i)] += 2.0 * w;
            } else {
                b[(i, j)] += w;
                b[(j, i)] += w;
            }
        }
        Ok(ModularityMatrix {
            entries: b,
            total_weight: m,
        })
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.entries.row_iter().map(|r| r.sum()).collect()
    }

    /// `W`, the sum of the nonnegative entries.
    pub fn positive_mass(&self) -> f64 {
        self.entries.iter().filter(|&&x| x >= 0.0).sum()
    }

    /// `|Σ|` of the negative entries; equals [`positive_mass`](Self::positive_mass).
    pub fn negative_mass(&self) -> f64 {
        -self.entries.iter().filter(|&&x| x < 0.0).sum::<f64>()
    }

    /// `(1/2M) Σ_ij B_ij δ_ij`.
    pub fn modularity(&self, c: &Clustering) -> f64 {
        let n = self.n();
        let mut sum = 0.0;
        for j in 0..n {
            for i in 0..n {
                if c.same(i, j) {
                    sum += self.entries[(i, j)];
                }
            }
        }
        sum / (2.0 * self.total_weight)
    }
}

pub fn modularity_matrix(g: &Graph) -> Result<ModularityMatrix> {
    ModularityMatrix::new(g)
}
