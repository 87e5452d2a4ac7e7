//! Classical modularity heuristics: greedy agglomeration (CNM), recursive
//! leading-eigenvector bisection, and Louvain.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{merge_delta, modularity, modularity_matrix, Clustering, Graph};
use crate::seed;

const TAG_LOUVAIN: u64 = 0x10c;

/// Improvements at or below this are treated as zero.
const GAIN_EPS: f64 = 1e-12;

fn require_weight(g: &Graph) -> Result<f64> {
    let m = g.total_weight();
    if m > 0.0 {
        Ok(m)
    } else {
        Err(Error::EmptyGraph)
    }
}

/// Integer weights below this are compared in exact arithmetic.
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0;

/// Merge gain up to a positive factor. Integer-weighted graphs use the exact
/// numerator `2M·cross − vol_a·vol_b` so that ties are real ties.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Gain {
    Exact(i128),
    Float(f64),
}

impl Gain {
    fn is_positive(self) -> bool {
        match self {
            Gain::Exact(x) => x > 0,
            Gain::Float(x) => x > 0.0,
        }
    }
}

fn gain(cross: f64, vol_a: f64, vol_b: f64, m: f64, exact: bool) -> Gain {
    if exact {
        let two_m = (2.0 * m) as i128;
        Gain::Exact(two_m * cross as i128 - vol_a as i128 * vol_b as i128)
    } else {
        Gain::Float(merge_delta(cross, vol_a, vol_b, m))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MergeStep {
    /// Surviving community (the smaller original id).
    pub kept: usize,
    pub absorbed: usize,
    pub cross_weight: f64,
    pub vol_kept: f64,
    pub vol_absorbed: f64,
    pub delta: f64,
    /// Clustering of the original vertices after the merge.
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CnmResult {
    pub clustering: Clustering,
    pub q: f64,
    pub merges: Vec<MergeStep>,
}

/// Greedy agglomeration from singletons. Each step merges the pair with the
/// largest modularity gain, preferring the smallest `(a, b)` among equal
/// gains, and stops once no merge gains anything. Community ids are the
/// smallest vertex id they contain.
pub fn cnm_greedy(g: &Graph) -> Result<Clustering> {
    Ok(cnm_with_trace(g, false)?.clustering)
}

/// [`cnm_greedy`] that also records every merge; with `keep_labels` each
/// step stores the full labelling.
pub fn cnm_with_trace(g: &Graph, keep_labels: bool) -> Result<CnmResult> {
    let m = require_weight(g)?;
    let n = g.n();
    let mut cross = DMatrix::<f64>::zeros(n, n);
    for (i, j, w) in g.edges() {
        if i != j {
            cross[(i, j)] += w;
            cross[(j, i)] += w;
        }
    }
    let mut vol = g.degrees().to_vec();
    let exact = g.is_integral() && 2.0 * m < EXACT_LIMIT;
    let mut active: Vec<usize> = (0..n).collect();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut merges = Vec::new();

    while active.len() > 1 {
        let mut best: Option<(Gain, usize, usize)> = None;
        for (ia, &a) in active.iter().enumerate() {
            for &b in &active[ia + 1..] {
                let d = gain(cross[(a, b)], vol[a], vol[b], m, exact);
                if best.is_none_or(|(bd, _, _)| d > bd) {
                    best = Some((d, a, b));
                }
            }
        }
        let (gain, a, b) = best.expect("two active communities");
        if !gain.is_positive() {
            break;
        }
        let delta = merge_delta(cross[(a, b)], vol[a], vol[b], m);
        let step = MergeStep {
            kept: a,
            absorbed: b,
            cross_weight: cross[(a, b)],
            vol_kept: vol[a],
            vol_absorbed: vol[b],
            delta,
            labels: Vec::new(),
        };
        for &x in &active {
            if x != a && x != b {
                let w = cross[(b, x)];
                cross[(a, x)] += w;
                cross[(x, a)] += w;
            }
        }
        vol[a] += vol[b];
        active.retain(|&x| x != b);
        for l in &mut labels {
            if *l == b {
                *l = a;
            }
        }
        merges.push(MergeStep {
            labels: if keep_labels { labels.clone() } else { Vec::new() },
            ..step
        });
    }
    let clustering = Clustering::from_labels(labels);
    let q = modularity(g, &clustering)?;
    Ok(CnmResult { clustering, q, merges })
}

/// Recursive spectral bisection with the generalized modularity matrix.
///
/// A community is split by the signs of the leading eigenvector of its
/// generalized modularity matrix, the split is polished by single-vertex
/// moves, and it is kept only if it strictly raises modularity. Communities
/// whose eigen-decomposition fails to converge are left whole.
pub fn eig_bisect(g: &Graph) -> Result<Clustering> {
    let m = require_weight(g)?;
    let b = modularity_matrix(g)?;
    let n = g.n();
    let mut labels = vec![0usize; n];
    let mut next_label = 1;
    let mut pending = vec![(0usize, (0..n).collect::<Vec<usize>>())];

    while let Some((label, members)) = pending.pop() {
        let Some(sides) = split_community(&b, &members, m) else {
            continue;
        };
        let (left, right): (Vec<usize>, Vec<usize>) = members.iter().zip(&sides).fold(
            (Vec::new(), Vec::new()),
            |(mut l, mut r), (&v, &s)| {
                if s {
                    l.push(v);
                } else {
                    r.push(v);
                }
                (l, r)
            },
        );
        for &v in &right {
            labels[v] = next_label;
        }
        // Depth-first on the left half first.
        pending.push((next_label, right));
        pending.push((label, left));
        next_label += 1;
    }
    Ok(Clustering::from_labels(labels))
}

/// Sign split of one community, or `None` if no split raises modularity.
fn split_community(b: &crate::graph::ModularityMatrix, members: &[usize], m: f64) -> Option<Vec<bool>> {
    let k = members.len();
    if k < 2 {
        return None;
    }
    let mut bg = DMatrix::from_fn(k, k, |i, j| b.get(members[i], members[j]));
    for i in 0..k {
        let row_sum: f64 = (0..k).map(|j| b.get(members[i], members[j])).sum();
        bg[(i, i)] -= row_sum;
    }
    let eig = SymmetricEigen::try_new(bg.clone(), 1e-12, 100_000)?;
    let (lead, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, &f64)>, (i, l)| match best {
            Some((_, bl)) if bl >= l => best,
            _ => Some((i, l)),
        })?;
    if lambda <= GAIN_EPS {
        return None;
    }
    let u = eig.eigenvectors.column(lead);
    let mut s: Vec<f64> = u.iter().map(|&x| if x >= 0.0 { 1.0 } else { -1.0 }).collect();

    // Row products (Bg s)_i, kept current across flips.
    let mut bs: Vec<f64> = (0..k).map(|i| (0..k).map(|j| bg[(i, j)] * s[j]).sum()).collect();
    loop {
        let mut improved = false;
        for i in 0..k {
            // Change of sᵀ Bg s when s_i flips.
            let gain = -4.0 * s[i] * (bs[i] - bg[(i, i)] * s[i]);
            if gain / (4.0 * m) > GAIN_EPS {
                let old = s[i];
                s[i] = -old;
                for (j, bsj) in bs.iter_mut().enumerate() {
                    *bsj += bg[(j, i)] * (s[i] - old);
                }
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let quad: f64 = (0..k).map(|i| s[i] * bs[i]).sum();
    let dq = quad / (4.0 * m);
    let sides: Vec<bool> = s.iter().map(|&x| x > 0.0).collect();
    let mixed = sides.iter().any(|&x| x) && sides.iter().any(|&x| !x);
    (mixed && dq > GAIN_EPS).then_some(sides)
}

#[derive(Clone, Debug, Serialize)]
pub struct LouvainConfig {
    pub repeats: usize,
    pub seed: u64,
}

impl Default for LouvainConfig {
    fn default() -> Self {
        LouvainConfig { repeats: 20, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LouvainResult {
    pub clustering: Clustering,
    pub q: f64,
    /// Modularity reached by each repeat, in repeat order.
    pub repeat_q: Vec<f64>,
}

/// Best of `cfg.repeats` Louvain runs with independently shuffled visit
/// orders. Ties go to the earliest repeat.
pub fn louvain(g: &Graph, cfg: &LouvainConfig) -> Result<Clustering> {
    Ok(louvain_detailed(g, cfg)?.clustering)
}

pub fn louvain_detailed(g: &Graph, cfg: &LouvainConfig) -> Result<LouvainResult> {
    require_weight(g)?;
    if cfg.repeats == 0 {
        return Err(Error::InvalidParameter("repeats must be at least 1".into()));
    }
    let runs: Vec<(Clustering, f64)> = (0..cfg.repeats)
        .into_par_iter()
        .map(|r| {
            let c = louvain_once(g, cfg.seed, r as u64)?;
            let q = modularity(g, &c)?;
            Ok((c, q))
        })
        .collect::<Result<_>>()?;
    let repeat_q: Vec<f64> = runs.iter().map(|(_, q)| *q).collect();
    let mut best = 0;
    for (i, &q) in repeat_q.iter().enumerate() {
        if q > repeat_q[best] {
            best = i;
        }
    }
    let (clustering, q) = runs.into_iter().nth(best).expect("nonempty");
    Ok(LouvainResult {
        clustering,
        q,
        repeat_q,
    })
}

/// One multi-level run.
pub fn louvain_once(g: &Graph, master: u64, repeat: u64) -> Result<Clustering> {
    let m = require_weight(g)?;
    let mut rng = seed::rng(master, &[TAG_LOUVAIN, repeat]);
    let mut level = g.clone();
    let mut assignment = Clustering::singletons(g.n());
    loop {
        let mut order: Vec<usize> = (0..level.n()).collect();
        order.shuffle(&mut rng);
        let (labels, moved) = local_moves(&level, &order, m);
        if !moved {
            break;
        }
        let c = Clustering::from_labels(labels);
        if c.community_count() == level.n() {
            break;
        }
        level = level.contract(&c)?;
        assignment = assignment.compose(&c);
    }
    Ok(assignment)
}

/// Moves vertices to the neighbouring community with the best gain until a
/// full pass moves nothing. Returns the labels and whether anything moved.
fn local_moves(h: &Graph, order: &[usize], m: f64) -> (Vec<usize>, bool) {
    let n = h.n();
    let deg = h.degrees();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot: Vec<f64> = deg.to_vec();
    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &i in order {
            let own = comm[i];
            let d = deg[i];
            tot[own] -= d;
            touched.clear();
            link[own] = 0.0;
            touched.push(own);
            for &(j, w) in h.neighbors(i) {
                let c = comm[j];
                if link[c] == 0.0 && !touched.contains(&c) {
                    touched.push(c);
                }
                link[c] += w;
            }
            let gain = |c: usize| link[c] / m - tot[c] * d / (2.0 * m * m);
            let mut best = own;
            let mut best_gain = gain(own);
            for &c in &touched[1..] {
                let gc = gain(c);
                if gc > best_gain + GAIN_EPS {
                    best = c;
                    best_gain = gc;
                }
            }
            for &c in &touched {
                link[c] = 0.0;
            }
            tot[best] += d;
            if best != own {
                comm[i] = best;
                moved = true;
                moved_any = true;
            }
        }
        if !moved {
            break;
        }
    }
    (comm, moved_any)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn two_edges() -> Graph {
        Graph::from_unweighted(4, [(0, 1), (2, 3)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::from_unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn cnm_examples() {
        let g = two_edges();
        let r = cnm_with_trace(&g, true).unwrap();
        assert_relative_eq!(r.q, 0.5, epsilon = 1e-15);
        assert_eq!(r.merges.len(), 2);
        assert_eq!((r.merges[0].kept, r.merges[0].absorbed), (0, 1));
        assert_eq!(r.merges[0].labels, vec![0, 0, 2, 3]);
        assert_eq!(cnm_greedy(&k3()).unwrap(), Clustering::single(3));
    }

    #[test]
    fn cnm_merge_deltas_match_recomputation() {
        let g = Graph::from_unweighted(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let r = cnm_with_trace(&g, true).unwrap();
        let mut prev = modularity(&g, &Clustering::singletons(6)).unwrap();
        for step in &r.merges {
            let q = modularity(&g, &Clustering::from_labels(step.labels.clone())).unwrap();
            assert_relative_eq!(q - prev, step.delta, epsilon = 1e-12);
            prev = q;
        }
    }

    #[test]
    fn eig_examples() {
        let g = two_edges();
        let c = eig_bisect(&g).unwrap();
        assert_relative_eq!(modularity(&g, &c).unwrap(), 0.5, epsilon = 1e-12);
        let edge = Graph::from_unweighted(2, [(0, 1)]).unwrap();
        assert_eq!(eig_bisect(&edge).unwrap(), Clustering::single(2));
        assert_eq!(eig_bisect(&k3()).unwrap(), Clustering::single(3));
    }

    #[test]
    fn louvain_examples() {
        let g = two_edges();
        for r in 0..5 {
            let c = louvain_once(&g, 9, r).unwrap();
            assert_relative_eq!(modularity(&g, &c).unwrap(), 0.5, epsilon = 1e-15);
        }
        let res = louvain_detailed(&k3(), &LouvainConfig::default()).unwrap();
        assert_eq!(res.repeat_q.len(), 20);
        assert_eq!(res.clustering, Clustering::single(3));
    }

    #[test]
    fn louvain_is_deterministic() {
        let g = Graph::from_unweighted(8, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (6, 7), (7, 0)]).unwrap();
        let cfg = LouvainConfig { repeats: 7, seed: 4 };
        let a = louvain_detailed(&g, &cfg).unwrap();
        let b = louvain_detailed(&g, &cfg).unwrap();
        assert_eq!(a.clustering, b.clustering);
        assert_eq!(a.repeat_q, b.repeat_q);
    }

    #[test]
    fn empty_graph_is_rejected() {
        let g = Graph::from_edges(3, []).unwrap();
        assert!(cnm_greedy(&g).is_err());
        assert!(eig_bisect(&g).is_err());
        assert!(louvain(&g, &LouvainConfig::default()).is_err());
    }
}
