//! Modularity-rescaling graph transformations.
//!
//! * The α-transformation adds `f·d_i d_j / 2M` to every pair, `f = (1−α)/α`.
//!   The diagonal share `f·d_i²/2M` of that mass is an adjacency-matrix
//!   diagonal entry, i.e. a loop of weight `f·d_i²/4M`. Every clustering's
//!   modularity is multiplied by `α`.
//! * The (τ,k)-transformation adds a loop of weight `β·d_i/2` to every
//!   vertex and `k` isolated vertices carrying loops of weight `β(β+1)M/k`,
//!   with `β = 1/√τ − 1`. A clustering extended by the new vertices as
//!   singletons has modularity `τ·Q + (1 − τ − ε)`, `ε = (1 − √τ)²/k`.
//!
//! Composing the two maps every clustering into a prescribed interval.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Clustering, Graph, GraphBuilder};

/// The α-transform output is dense, so its size is capped.
pub const ALPHA_TRANSFORM_LIMIT: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransformSpec {
    pub alpha: f64,
    pub tau: f64,
    pub k: usize,
    pub beta: f64,
    pub epsilon: f64,
}

impl TransformSpec {
    pub fn new(alpha: f64, tau: f64, k: usize) -> Result<Self> {
        check_alpha(alpha)?;
        check_tau_k(tau, k)?;
        Ok(TransformSpec {
            alpha,
            tau,
            k,
            beta: beta(tau),
            epsilon: epsilon(tau, k),
        })
    }

    /// Modularity of a mapped clustering as a function of the original.
    pub fn map_value(&self, q: f64) -> f64 {
        self.tau * self.alpha * q + (1.0 - self.tau - self.epsilon)
    }
}

pub fn beta(tau: f64) -> f64 {
    1.0 / tau.sqrt() - 1.0
}

/// `(1 − √τ)² / k`, which equals `β²τ/k`.
pub fn epsilon(tau: f64, k: usize) -> f64 {
    let s = 1.0 - tau.sqrt();
    s * s / k as f64
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha must lie in (0, 1], got {alpha}")))
    }
}

fn check_tau_k(tau: f64, k: usize) -> Result<()> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::InvalidParameter(format!("tau must lie in (0, 1), got {tau}")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

fn require_weight(g: &Graph) -> Result<f64> {
    let m = g.total_weight();
    if m > 0.0 {
        Ok(m)
    } else {
        Err(Error::EmptyGraph)
    }
}

/// Scales every clustering's modularity by `alpha`. Degrees become `d_i/α`
/// and the total weight `M/α`.
pub fn alpha_transform(g: &Graph, alpha: f64) -> Result<Graph> {
    check_alpha(alpha)?;
    let m = require_weight(g)?;
    let n = g.n();
    if n > ALPHA_TRANSFORM_LIMIT {
        return Err(Error::SizeLimit {
            what: "alpha transform",
            n,
            limit: ALPHA_TRANSFORM_LIMIT,
        });
    }
    if alpha == 1.0 {
        return Ok(g.clone());
    }
    let f = (1.0 - alpha) / alpha;
    let d = g.degrees();
    let mut b = GraphBuilder::new(n);
    for (i, j, w) in g.edges() {
        if i != j {
            b.add_edge(i, j, w)?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let extra = f * d[i] * d[j] / (2.0 * m);
            if extra > 0.0 {
                b.add_edge(i, j, extra)?;
            }
        }
        b.add_edge(i, i, g.loop_weight(i) + f * d[i] * d[i] / (4.0 * m))?;
    }
    Ok(b.build())
}

#[derive(Clone, Debug)]
pub struct TauKTransform {
    pub graph: Graph,
    pub tau: f64,
    pub k: usize,
    pub beta: f64,
    pub epsilon: f64,
    /// Vertex count before the transformation.
    pub original_n: usize,
}

impl TauKTransform {
    /// Extends a clustering of the original graph with the new vertices as
    /// singletons.
    pub fn map_clustering(&self, c: &Clustering) -> Result<Clustering> {
        extend_with_singletons(c, self.original_n, self.k)
    }

    pub fn map_value(&self, q: f64) -> f64 {
        self.tau * q + (1.0 - self.tau - self.epsilon)
    }
}

fn extend_with_singletons(c: &Clustering, n: usize, k: usize) -> Result<Clustering> {
    if c.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: c.n(),
        });
    }
    let base = c.community_count();
    Ok(Clustering::from_labels(
        c.labels().iter().copied().chain((0..k).map(|l| base + l)),
    ))
}

/// Adds loops of weight `β·d_i/2` and `k` new looped vertices.
pub fn tau_k_transform(g: &Graph, tau: f64, k: usize) -> Result<TauKTransform> {
    check_tau_k(tau, k)?;
    let m = require_weight(g)?;
    let n = g.n();
    let beta = beta(tau);
    let mut b = GraphBuilder::new(n + k);
    for (i, j, w) in g.edges() {
        if i != j {
            b.add_edge(i, j, w)?;
        }
    }
    for i in 0..n {
        b.add_edge(i, i, g.loop_weight(i) + beta * g.degrees()[i] / 2.0)?;
    }
    let new_loop = beta * (beta + 1.0) * m / k as f64;
    for l in 0..k {
        b.add_edge(n + l, n + l, new_loop)?;
    }
    Ok(TauKTransform {
        graph: b.build(),
        tau,
        k,
        beta,
        epsilon: epsilon(tau, k),
        original_n: n,
    })
}

#[derive(Clone, Debug)]
pub struct EngineeredGraph {
    pub graph: Graph,
    pub spec: TransformSpec,
    pub a: f64,
    pub b: f64,
    /// Smallest `k` for which the interval guarantee holds.
    pub min_k: usize,
    pub original_n: usize,
}

impl EngineeredGraph {
    pub fn map_clustering(&self, c: &Clustering) -> Result<Clustering> {
        extend_with_singletons(c, self.original_n, self.spec.k)
    }

    pub fn map_value(&self, q: f64) -> f64 {
        self.spec.map_value(q)
    }
}

/// `τ` and `α` placing mapped modularity inside `(a, b)`.
pub fn range_parameters(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && a < b && b < 1.0) {
        return Err(Error::InvalidParameter(format!("need 0 < a < b < 1, got a = {a}, b = {b}")));
    }
    let tau = 1.0 - (2.0 * a / 3.0 + b / 3.0);
    let alpha = 2.0 * (b - a) / 3.0;
    Ok((tau, alpha))
}

/// Smallest `k` with `ε < (1 − τ)(b − a)/3`.
///
/// Mapped values are `τα·Q + (1 − τ − ε)` with `Q ∈ (−1/2, 1)`. The top end
/// stays below `b` for every `k`; the bottom end `1 − τ − ε − τα/2` exceeds
/// `a` exactly when `ε < (1 − τ)(b − a)/3`.
pub fn min_k_for_range(a: f64, b: f64) -> Result<usize> {
    let (tau, _) = range_parameters(a, b)?;
    let budget = (1.0 - tau) * (b - a) / 3.0;
    let s = 1.0 - tau.sqrt();
    let ratio = s * s / budget;
    let mut k = (ratio.floor() as usize).max(1);
    while epsilon(tau, k) >= budget {
        k += 1;
    }
    Ok(k)
}

/// α-transformation followed by a (τ,k)-transformation so that every mapped
/// clustering has modularity strictly inside `(a, b)`.
pub fn engineer_range(g: &Graph, a: f64, b: f64, k: usize) -> Result<EngineeredGraph> {
    let (tau, alpha) = range_parameters(a, b)?;
    let min_k = min_k_for_range(a, b)?;
    if k < min_k {
        return Err(Error::InvalidParameter(format!(
            "k = {k} too small for ({a}, {b}): epsilon = {:.6} must be below {:.6}; smallest valid k is {min_k}",
            epsilon(tau, k.max(1)),
            (1.0 - tau) * (b - a) / 3.0
        )));
    }
    let scaled = alpha_transform(g, alpha)?;
    let t = tau_k_transform(&scaled, tau, k)?;
    Ok(EngineeredGraph {
        graph: t.graph,
        spec: TransformSpec::new(alpha, tau, k)?,
        a,
        b,
        min_k,
        original_n: g.n(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::modularity;
    use approx::assert_relative_eq;

    fn k3() -> Graph {
        Graph::from_unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn alpha_one_is_identity() {
        assert_eq!(alpha_transform(&k3(), 1.0).unwrap(), k3());
    }

    #[test]
    fn alpha_half_on_clique() {
        let h = alpha_transform(&k3(), 0.5).unwrap();
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            assert_relative_eq!(h.weight(i, j), 5.0 / 3.0, epsilon = 1e-15);
        }
        for i in 0..3 {
            assert_relative_eq!(h.loop_weight(i), 1.0 / 3.0, epsilon = 1e-15);
            assert_relative_eq!(h.degrees()[i], 4.0, epsilon = 1e-14);
        }
        assert_relative_eq!(h.total_weight(), 6.0, epsilon = 1e-14);
        let c = Clustering::singletons(3);
        assert_relative_eq!(modularity(&h, &c).unwrap(), 0.5 * modularity(&k3(), &c).unwrap(), epsilon = 1e-14);
    }

    #[test]
    fn alpha_rejects_out_of_range() {
        assert!(alpha_transform(&k3(), 0.0).is_err());
        assert!(alpha_transform(&k3(), 1.5).is_err());
    }

    #[test]
    fn tau_quarter_single_vertex() {
        let g = Graph::from_unweighted(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let t = tau_k_transform(&g, 0.25, 1).unwrap();
        assert_relative_eq!(t.beta, 1.0, epsilon = 1e-15);
        assert_relative_eq!(t.epsilon, 0.25, epsilon = 1e-15);
        assert_relative_eq!(t.graph.total_weight(), 4.0 * g.total_weight(), epsilon = 1e-12);
        for labels in [vec![0, 0, 1, 1], vec![0, 1, 2, 3], vec![0, 0, 0, 0]] {
            let c = Clustering::from_labels(labels);
            let q = modularity(&g, &c).unwrap();
            let q2 = modularity(&t.graph, &t.map_clustering(&c).unwrap()).unwrap();
            assert_relative_eq!(q2, 0.25 * q + 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn tau_rejects_bad_parameters() {
        assert!(tau_k_transform(&k3(), 1.0, 1).is_err());
        assert!(tau_k_transform(&k3(), 0.5, 0).is_err());
    }

    #[test]
    fn range_recipe() {
        let (tau, alpha) = range_parameters(0.3, 0.6).unwrap();
        assert_relative_eq!(tau, 0.6, epsilon = 1e-15);
        assert_relative_eq!(alpha, 0.2, epsilon = 1e-15);
        let k = min_k_for_range(0.3, 0.6).unwrap();
        assert!(epsilon(tau, k) < 0.4 * 0.3 / 3.0);
        assert!(epsilon(tau, k - 1) >= 0.4 * 0.3 / 3.0);
        assert!(engineer_range(&k3(), 0.3, 0.6, k - 1).is_err());
        let e = engineer_range(&k3(), 0.3, 0.6, k).unwrap();
        let q0 = modularity(&e.graph, &e.map_clustering(&Clustering::single(3)).unwrap()).unwrap();
        assert_relative_eq!(q0, 1.0 - tau - epsilon(tau, k), epsilon = 1e-12);
        assert!(range_parameters(0.6, 0.3).is_err());
    }
}
