//! Exhaustive ground-truth solvers for small graphs.
//!
//! * [`exact_max_modularity`] walks every set partition as a restricted-growth
//!   string, accumulating modularity incrementally along the search tree.
//! * [`exact_max_modularity_two`] and [`exact_max_cut`] walk the `2^(n-1)`
//!   bipartitions with vertex 0 pinned, in Gray-code order so each step flips
//!   one vertex.
//!
//! All sweeps are sharded over a fixed prefix and merged in prefix order, so
//! results do not depend on the thread count. Among maximizers the one met
//! first in enumeration order wins; for the partition sweep that is the
//! lexicographically smallest restricted-growth string.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{modularity, Clustering, Graph};

pub const DEFAULT_PARTITION_LIMIT: usize = 13;
pub const TWO_COMMUNITY_LIMIT: usize = 30;
pub const MAX_CUT_LIMIT: usize = 24;

/// Hard ceiling for the partition sweep regardless of the caller's limit;
/// Bell(16) is already above 10^10.
const PARTITION_HARD_LIMIT: usize = 15;

/// Later candidates must beat the incumbent by more than this to replace it.
const TIE_EPS: f64 = 1e-13;

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    #[serde(rename = "clustering")]
    pub best_clustering: Clustering,
    #[serde(rename = "q_opt")]
    pub best_value: f64,
    pub partitions_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxCutResult {
    /// `true` marks membership in `S`.
    pub side: Vec<bool>,
    pub cut_size: u64,
}

/// Bell numbers `B(0..=25)`, or `None` past that.
pub fn bell_number(n: usize) -> Option<u64> {
    // Bell triangle.
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let y = next.last().unwrap() + x;
            next.push(y);
        }
        row = next;
    }
    u64::try_from(row[0]).ok()
}

fn require_weight(g: &Graph) -> Result<f64> {
    let m = g.total_weight();
    if m > 0.0 {
        Ok(m)
    } else {
        Err(Error::EmptyGraph)
    }
}

fn require_size(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeLimit { what, n, limit })
    } else {
        Ok(())
    }
}

struct PartitionSweep<'g> {
    n: usize,
    m: f64,
    deg: &'g [f64],
    loops: &'g [f64],
    /// Neighbours with smaller id.
    back: Vec<Vec<(usize, f64)>>,
    labels: Vec<usize>,
    vol: Vec<f64>,
    /// Per-depth scratch: weight from the current vertex into each block.
    scratch: Vec<f64>,
    best_q: f64,
    best: Vec<usize>,
    examined: u64,
}

impl<'g> PartitionSweep<'g> {
    fn new(g: &'g Graph, m: f64) -> Self {
        let n = g.n();
        let back = (0..n)
            .map(|v| g.neighbors(v).iter().copied().filter(|&(u, _)| u < v).collect())
            .collect();
        PartitionSweep {
            n,
            m,
            deg: g.degrees(),
            loops: g.loops(),
            back,
            labels: vec![0; n],
            vol: vec![0.0; n],
            scratch: vec![0.0; n * (n + 1)],
            best_q: f64::NEG_INFINITY,
            best: vec![0; n],
            examined: 0,
        }
    }

    /// Modularity gained by placing `v` into block `b` given the blocks of
    /// vertices `< v`.
    fn gain(&self, v: usize, b: usize) -> f64 {
        let into = self.scratch[v * self.n + b];
        let vol = self.vol[b];
        let d = self.deg[v];
        (into + self.loops[v]) / self.m - ((vol + d) * (vol + d) - vol * vol) / (4.0 * self.m * self.m)
    }

    fn fill_scratch(&mut self, v: usize, used: usize) {
        let base = v * self.n;
        self.scratch[base..base + used + 1].fill(0.0);
        for &(u, w) in &self.back[v] {
            self.scratch[base + self.labels[u]] += w;
        }
    }

    fn assign(&mut self, v: usize, b: usize) {
        self.labels[v] = b;
        self.vol[b] += self.deg[v];
    }

    fn unassign(&mut self, v: usize, b: usize) {
        self.vol[b] -= self.deg[v];
    }

    fn dfs(&mut self, v: usize, used: usize, q: f64) {
        if v == self.n {
            self.examined += 1;
            if q > self.best_q + TIE_EPS {
                self.best_q = q;
                self.best.copy_from_slice(&self.labels);
            }
            return;
        }
        self.fill_scratch(v, used);
        for b in 0..=used {
            let dq = self.gain(v, b);
            self.assign(v, b);
            self.dfs(v + 1, used.max(b + 1), q + dq);
            self.unassign(v, b);
        }
    }

    /// Applies a prefix and sweeps everything below it.
    fn run_prefix(mut self, prefix: &[usize]) -> (f64, Vec<usize>, u64) {
        let mut used = 0;
        let mut q = 0.0;
        for (v, &b) in prefix.iter().enumerate() {
            self.fill_scratch(v, used);
            q += self.gain(v, b);
            self.assign(v, b);
            used = used.max(b + 1);
        }
        self.dfs(prefix.len(), used, q);
        (self.best_q, self.best, self.examined)
    }
}

/// Restricted-growth strings of length `len`, in lexicographic order.
fn rgs_prefixes(len: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, len: usize, used: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for b in 0..=used {
            cur.push(b);
            rec(cur, len, used.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(len), len, 0, &mut out);
    out
}

/// Maximum modularity over all set partitions. Refuses graphs with more than
/// `max_n` vertices.
pub fn exact_max_modularity(g: &Graph, max_n: usize) -> Result<OracleResult> {
    let n = g.n();
    require_size("partition enumeration", n, max_n.min(PARTITION_HARD_LIMIT))?;
    let m = require_weight(g)?;

    let prefixes = rgs_prefixes(n.min(5));
    let shards: Vec<(f64, Vec<usize>, u64)> = prefixes
        .par_iter()
        .map(|p| PartitionSweep::new(g, m).run_prefix(p))
        .collect();

    let mut best_q = f64::NEG_INFINITY;
    let mut best = Vec::new();
    let mut examined = 0;
    for (q, labels, count) in shards {
        examined += count;
        if q > best_q + TIE_EPS {
            best_q = q;
            best = labels;
        }
    }
    let best_clustering = Clustering::from_labels(best);
    let best_value = modularity(g, &best_clustering)?;
    Ok(OracleResult {
        best_clustering,
        best_value,
        partitions_examined: examined,
    })
}

/// Number of top vertices fixed per shard in the bipartition sweeps.
const SHARD_BITS: usize = 6;

/// Walks all bipartitions with vertex 0 on side `false`. `score` sees the
/// current sides and returns a value; `flip` updates incremental state.
trait BipartitionState: Send {
    type Score: PartialOrd + Copy + Send;
    fn reset(&mut self, side: &[bool]);
    fn flip(&mut self, side: &[bool], v: usize);
    fn score(&self) -> Self::Score;
    fn better(new: Self::Score, old: Self::Score) -> bool;
}

fn sweep_bipartitions<S, F>(n: usize, make: F) -> (S::Score, Vec<bool>, u64)
where
    S: BipartitionState,
    F: Fn() -> S + Sync,
{
    let free = n.saturating_sub(1);
    let shard_bits = free.min(SHARD_BITS);
    let inner_bits = free - shard_bits;
    let shards: Vec<(S::Score, Vec<bool>, u64)> = (0..1u64 << shard_bits)
        .into_par_iter()
        .map(|mask| {
            let mut side = vec![false; n];
            for bit in 0..shard_bits {
                side[1 + inner_bits + bit] = mask >> bit & 1 == 1;
            }
            let mut st = make();
            st.reset(&side);
            let mut best = st.score();
            let mut best_side = side.clone();
            let steps = 1u64 << inner_bits;
            for i in 1..steps {
                let v = 1 + i.trailing_zeros() as usize;
                st.flip(&side, v);
                side[v] = !side[v];
                let s = st.score();
                if S::better(s, best) {
                    best = s;
                    best_side.copy_from_slice(&side);
                }
            }
            (best, best_side, steps)
        })
        .collect();

    let mut iter = shards.into_iter();
    let (mut best, mut best_side, mut examined) = iter.next().expect("at least one shard");
    for (s, side, count) in iter {
        examined += count;
        if S::better(s, best) {
            best = s;
            best_side = side;
        }
    }
    (best, best_side, examined)
}

struct TwoCommunity<'g> {
    g: &'g Graph,
    m: f64,
    vol_true: f64,
    cut: f64,
}

impl BipartitionState for TwoCommunity<'_> {
    type Score = f64;

    fn reset(&mut self, side: &[bool]) {
        self.vol_true = side
            .iter()
            .zip(self.g.degrees())
            .filter(|(&s, _)| s)
            .map(|(_, &d)| d)
            .sum();
        self.cut = self
            .g
            .edges()
            .filter(|&(i, j, _)| side[i] != side[j])
            .map(|(_, _, w)| w)
            .sum();
    }

    fn flip(&mut self, side: &[bool], v: usize) {
        let s = side[v];
        let delta: f64 = self
            .g
            .neighbors(v)
            .iter()
            .map(|&(u, w)| if side[u] == s { w } else { -w })
            .sum();
        self.cut += delta;
        let d = self.g.degrees()[v];
        self.vol_true += if s { -d } else { d };
    }

    fn score(&self) -> f64 {
        let m = self.m;
        let vol_false = 2.0 * m - self.vol_true;
        (2.0 * self.vol_true * vol_false - 4.0 * m * self.cut) / (4.0 * m * m)
    }

    fn better(new: f64, old: f64) -> bool {
        new > old + TIE_EPS
    }
}

/// Best modularity over divisions into at most two communities (`Q₂`).
pub fn exact_max_modularity_two(g: &Graph, max_n: usize) -> Result<OracleResult> {
    let n = g.n();
    require_size("two-community enumeration", n, max_n.min(TWO_COMMUNITY_LIMIT))?;
    let m = require_weight(g)?;
    let (_, side, examined) = sweep_bipartitions(n, || TwoCommunity {
        g,
        m,
        vol_true: 0.0,
        cut: 0.0,
    });
    let best_clustering = Clustering::from_labels(side.iter().map(|&s| usize::from(s)));
    let best_value = modularity(g, &best_clustering)?;
    Ok(OracleResult {
        best_clustering,
        best_value,
        partitions_examined: examined,
    })
}

pub(crate) fn require_simple(g: &Graph) -> Result<()> {
    if g.is_simple_unweighted() {
        Ok(())
    } else {
        Err(Error::NotSimple("all weights must be 1 and loops are not allowed".into()))
    }
}

/// Number of edges crossing the cut described by `side`.
pub fn cut_size(g: &Graph, side: &[bool]) -> u64 {
    g.edges().filter(|&(i, j, _)| side[i] != side[j]).count() as u64
}

struct Cut<'g> {
    g: &'g Graph,
    cut: i64,
}

impl BipartitionState for Cut<'_> {
    type Score = i64;

    fn reset(&mut self, side: &[bool]) {
        self.cut = cut_size(self.g, side) as i64;
    }

    fn flip(&mut self, side: &[bool], v: usize) {
        let s = side[v];
        self.cut += self
            .g
            .neighbors(v)
            .iter()
            .map(|&(u, _)| if side[u] == s { 1 } else { -1 })
            .sum::<i64>();
    }

    fn score(&self) -> i64 {
        self.cut
    }

    fn better(new: i64, old: i64) -> bool {
        new > old
    }
}

/// Maximum cut of an unweighted simple graph by exhaustive sweep.
pub fn exact_max_cut(g: &Graph, max_n: usize) -> Result<MaxCutResult> {
    require_size("max-cut enumeration", g.n(), max_n.min(MAX_CUT_LIMIT))?;
    require_simple(g)?;
    if g.n() == 0 {
        return Ok(MaxCutResult {
            side: Vec::new(),
            cut_size: 0,
        });
    }
    let (cut, side, _) = sweep_bipartitions(g.n(), || Cut { g, cut: 0 });
    Ok(MaxCutResult {
        side,
        cut_size: cut as u64,
    })
}

/// A cut no single vertex can improve by switching sides; cuts at least half
/// of the edges.
pub fn greedy_cut_lower_bound(g: &Graph) -> Result<MaxCutResult> {
    require_simple(g)?;
    let n = g.n();
    let mut side = vec![false; n];
    // Greedy placement against already placed neighbours.
    for v in 0..n {
        let (mut t, mut f) = (0, 0);
        for &(u, _) in g.neighbors(v) {
            if u < v {
                if side[u] {
                    t += 1;
                } else {
                    f += 1;
                }
            }
        }
        side[v] = f > t;
    }
    loop {
        let mut improved = false;
        for v in 0..n {
            let same = g.neighbors(v).iter().filter(|&&(u, _)| side[u] == side[v]).count();
            if 2 * same > g.neighbors(v).len() {
                side[v] = !side[v];
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let cut_size = cut_size(g, &side);
    Ok(MaxCutResult { side, cut_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cycle(n: usize) -> Graph {
        Graph::from_unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_unweighted(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn bell_numbers() {
        let known = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597, 27644437];
        for (n, &b) in known.iter().enumerate() {
            assert_eq!(bell_number(n), Some(b));
        }
        assert!(bell_number(30).is_none());
    }

    #[test]
    fn rgs_prefix_order() {
        let p = rgs_prefixes(3);
        assert_eq!(p, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn clique_optimum_is_one_community() {
        let r = exact_max_modularity(&complete(3), 13).unwrap();
        assert_eq!(r.best_value, 0.0);
        assert_eq!(r.best_clustering, Clustering::single(3));
        assert_eq!(r.partitions_examined, 5);
    }

    #[test]
    fn two_edges_optimum() {
        let g = Graph::from_unweighted(4, [(0, 1), (2, 3)]).unwrap();
        let r = exact_max_modularity(&g, 13).unwrap();
        assert_relative_eq!(r.best_value, 0.5, epsilon = 1e-15);
        assert_eq!(r.best_clustering.labels(), &[0, 0, 1, 1]);
        assert_eq!(r.partitions_examined, 15);
        let r2 = exact_max_modularity_two(&g, 30).unwrap();
        assert_relative_eq!(r2.best_value, 0.5, epsilon = 1e-15);
        assert_eq!(r2.partitions_examined, 8);
        assert_eq!(exact_max_modularity_two(&complete(3), 30).unwrap().best_value, 0.0);
    }

    #[test]
    fn size_limits_refuse() {
        let g = cycle(14);
        assert!(matches!(exact_max_modularity(&g, 13), Err(Error::SizeLimit { n: 14, limit: 13, .. })));
        assert!(matches!(exact_max_cut(&cycle(25), 24), Err(Error::SizeLimit { .. })));
        assert!(matches!(exact_max_modularity_two(&cycle(31), 40), Err(Error::SizeLimit { limit: 30, .. })));
    }

    #[test]
    fn max_cut_examples() {
        let edge = Graph::from_unweighted(2, [(0, 1)]).unwrap();
        assert_eq!(exact_max_cut(&edge, 24).unwrap().cut_size, 1);
        assert_eq!(exact_max_cut(&complete(4), 24).unwrap().cut_size, 4);
        let c5 = exact_max_cut(&cycle(5), 24).unwrap();
        assert_eq!(c5.cut_size, 4);
        assert_eq!(cut_size(&cycle(5), &c5.side), 4);
        assert!(!c5.side[0]);
    }

    #[test]
    fn max_cut_rejects_weighted() {
        let g = Graph::from_edges(2, [(0, 1, 2.0)]).unwrap();
        assert!(matches!(exact_max_cut(&g, 24), Err(Error::NotSimple(_))));
        let g = Graph::from_edges(2, [(0, 1, 1.0), (1, 1, 1.0)]).unwrap();
        assert!(greedy_cut_lower_bound(&g).is_err());
    }

    #[test]
    fn greedy_cut_examples() {
        let edge = Graph::from_unweighted(2, [(0, 1)]).unwrap();
        assert!(greedy_cut_lower_bound(&edge).unwrap().cut_size >= 1);
        assert_eq!(greedy_cut_lower_bound(&cycle(4)).unwrap().cut_size, 4);
        let k5 = complete(5);
        let r = greedy_cut_lower_bound(&k5).unwrap();
        assert!(2 * r.cut_size >= k5.edge_count() as u64);
    }
}
