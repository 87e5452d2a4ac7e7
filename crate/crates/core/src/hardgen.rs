//! Gap-producing instance generators.
//!
//! Both constructions produce graphs whose maximum modularity is strictly
//! positive exactly when the source instance is a YES instance, together with
//! the planted clustering that witnesses it.
//!
//! * From PARTITION: special vertices `s = 0` and `t = 1`, item vertices
//!   `u_i = i + 2` joined to both with weight `x_i`, and loops of weight
//!   `a = 1/(8K + 2)` on `s` and `t`, where `K = Σx/2`.
//! * From Max-Cut on an unweighted graph with `n` vertices and `m` edges:
//!   vertices `v⁺ = v`, `v⁻ = n + v`, `z⁺ = 2n`, `z⁻ = 2n + 1`. With
//!   `T = n⁴`, every source edge `uv` gives `T − 1` parallel edges on both
//!   `u⁺v⁺` and `u⁻v⁻`, `v⁺v⁻` carries nothing, `z⁺z⁻` carries
//!   `c = 4k − 2m − 1`, and every other pair carries `T`. Parallel edges are
//!   stored as integer weights.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{community_weights, modularity, Clustering, Graph, GraphBuilder};
use crate::methods::{Method, MethodOptions};
use crate::oracle::{exact_max_cut, greedy_cut_lower_bound, require_simple, MAX_CUT_LIMIT};
use crate::seed;

/// Largest item count for the exhaustive equal-sum search.
pub const PARTITION_SEARCH_LIMIT: usize = 30;

const TAG_FIG3: u64 = 0xf13;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionInstance {
    pub items: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(items: Vec<u64>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidParameter("PARTITION needs at least one item".into()));
        }
        if items.contains(&0) {
            return Err(Error::InvalidParameter("PARTITION items must be positive".into()));
        }
        if items.iter().try_fold(0u64, |acc, &x| acc.checked_add(x)).is_none_or(|s| s > 1 << 50) {
            return Err(Error::InvalidParameter("PARTITION item sum too large".into()));
        }
        Ok(PartitionInstance { items })
    }

    pub fn total(&self) -> u64 {
        self.items.iter().sum()
    }

    /// `K = Σx / 2`.
    pub fn half_sum(&self) -> f64 {
        self.total() as f64 / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// Equal-sum split as item indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PartitionReduction {
    pub instance: PartitionInstance,
    pub graph: Graph,
    /// Loop weight on `s` and `t`.
    pub a: f64,
    /// Total weight `4K + 2a`.
    pub total_weight: f64,
    pub answer: Answer,
    pub certificate: Option<PartitionCertificate>,
}

impl PartitionReduction {
    pub const S: usize = 0;
    pub const T: usize = 1;

    pub fn item_vertex(i: usize) -> usize {
        i + 2
    }

    /// `{s} ∪ S₁` against `{t} ∪ S₂`.
    pub fn certificate_clustering(&self) -> Option<Clustering> {
        let cert = self.certificate.as_ref()?;
        let mut labels = vec![1; self.graph.n()];
        labels[Self::S] = 0;
        for &i in &cert.first {
            labels[Self::item_vertex(i)] = 0;
        }
        Some(Clustering::from_labels(labels))
    }

    /// Closed-form modularity of a valid certificate, `a / M̃`.
    pub fn certificate_value(&self) -> f64 {
        self.a / self.total_weight
    }
}

/// Equal-sum split by meet in the middle. Among splits, the one whose item
/// masks come first in ascending order is returned.
pub fn find_equal_split(items: &[u64]) -> Option<PartitionCertificate> {
    let total: u64 = items.iter().sum();
    if total % 2 == 1 {
        return None;
    }
    let target = total / 2;
    let half = items.len() / 2;
    let (left, right) = items.split_at(half);
    let subset_sum = |xs: &[u64], mask: u64| -> u64 {
        xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).sum()
    };
    let mut by_sum: HashMap<u64, u64> = HashMap::new();
    for mask in 0..1u64 << left.len() {
        by_sum.entry(subset_sum(left, mask)).or_insert(mask);
    }
    for rmask in 0..1u64 << right.len() {
        let rs = subset_sum(right, rmask);
        if rs > target {
            continue;
        }
        if let Some(&lmask) = by_sum.get(&(target - rs)) {
            let full = lmask | rmask << half;
            let (first, second) = (0..items.len()).partition(|&i| full >> i & 1 == 1);
            return Some(PartitionCertificate { first, second });
        }
    }
    None
}

pub fn reduce_partition(inst: &PartitionInstance) -> Result<PartitionReduction> {
    let n = inst.items.len();
    let k = inst.half_sum();
    let a = 1.0 / (8.0 * k + 2.0);
    let mut b = GraphBuilder::new(n + 2);
    for (i, &x) in inst.items.iter().enumerate() {
        let u = PartitionReduction::item_vertex(i);
        b.add_edge(PartitionReduction::S, u, x as f64)?;
        b.add_edge(PartitionReduction::T, u, x as f64)?;
    }
    b.add_edge(PartitionReduction::S, PartitionReduction::S, a)?;
    b.add_edge(PartitionReduction::T, PartitionReduction::T, a)?;
    let graph = b.build();

    let (answer, certificate) = if inst.total() % 2 == 1 {
        (Answer::No, None)
    } else if n > PARTITION_SEARCH_LIMIT {
        (Answer::Unknown, None)
    } else {
        match find_equal_split(&inst.items) {
            Some(c) => (Answer::Yes, Some(c)),
            None => (Answer::No, None),
        }
    };
    Ok(PartitionReduction {
        instance: inst.clone(),
        graph,
        a,
        total_weight: 4.0 * k + 2.0 * a,
        answer,
        certificate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxCutReduction {
    #[serde(skip)]
    pub graph: Graph,
    pub source_n: usize,
    pub source_m: u64,
    pub k: u64,
    /// Multiplicity `T = n⁴`.
    pub t: u64,
    /// Multiplicity of `z⁺z⁻`, `4k − 2m − 1`.
    pub c: u64,
    pub n_prime: usize,
    /// Total weight `2n(n+1)T − 2m + c`.
    pub m_prime: u64,
    /// Side indicator of a cut in the source graph.
    pub certificate: Option<Vec<bool>>,
}

impl MaxCutReduction {
    pub fn plus(&self, v: usize) -> usize {
        v
    }

    pub fn minus(&self, v: usize) -> usize {
        self.source_n + v
    }

    pub fn z_plus(&self) -> usize {
        2 * self.source_n
    }

    pub fn z_minus(&self) -> usize {
        2 * self.source_n + 1
    }

    /// `S⁺ ∪ S̄⁻ ∪ {z⁺}` against `S⁻ ∪ S̄⁺ ∪ {z⁻}`.
    pub fn certificate_clustering(&self) -> Option<Clustering> {
        let side = self.certificate.as_ref()?;
        let mut labels = vec![0; self.n_prime];
        for (v, &in_s) in side.iter().enumerate() {
            labels[self.plus(v)] = usize::from(!in_s);
            labels[self.minus(v)] = usize::from(in_s);
        }
        labels[self.z_plus()] = 0;
        labels[self.z_minus()] = 1;
        Some(Clustering::from_labels(labels))
    }
}

/// Reduction with the triviality filter: instances with `k ≤ m/2 + 2` are
/// refused because a cut that large always exists. With `witness = None` and
/// a small source graph, an exact maximum cut is attached when it reaches `k`.
pub fn reduce_maxcut(g: &Graph, k: u64, witness: Option<Vec<bool>>) -> Result<MaxCutReduction> {
    require_simple(g)?;
    let m = g.edge_count() as u64;
    check_k(k, m)?;
    if 2 * k <= m + 4 {
        let greedy = greedy_cut_lower_bound(g)?;
        return Err(Error::TrivialInstance {
            k,
            m,
            greedy_cut: greedy.cut_size,
        });
    }
    build_maxcut(g, k, witness)
}

/// [`reduce_maxcut`] without the triviality filter, for constructing small
/// illustrative instances. Still requires `c = 4k − 2m − 1 ≥ 0`.
pub fn reduce_maxcut_unfiltered(g: &Graph, k: u64, witness: Option<Vec<bool>>) -> Result<MaxCutReduction> {
    require_simple(g)?;
    let m = g.edge_count() as u64;
    check_k(k, m)?;
    if 4 * k < 2 * m + 1 {
        return Err(Error::InvalidParameter(format!("4k - 2m - 1 is negative for k = {k}, m = {m}")));
    }
    build_maxcut(g, k, witness)
}

fn check_k(k: u64, m: u64) -> Result<()> {
    if k > m {
        return Err(Error::InvalidParameter(format!("cut size k = {k} exceeds the edge count m = {m}")));
    }
    Ok(())
}

/// Source graphs above this would push weights past exact `f64` integers.
const MAXCUT_SOURCE_LIMIT: usize = 200;

fn build_maxcut(g: &Graph, k: u64, witness: Option<Vec<bool>>) -> Result<MaxCutReduction> {
    let n = g.n();
    if n > MAXCUT_SOURCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "max-cut reduction",
            n,
            limit: MAXCUT_SOURCE_LIMIT,
        });
    }
    if let Some(w) = &witness {
        if w.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: w.len(),
            });
        }
    }
    let m = g.edge_count() as u64;
    let t = (n as u64).pow(4);
    let c = 4 * k - 2 * m - 1;
    let n_prime = 2 * n + 2;
    let (z_plus, z_minus) = (2 * n, 2 * n + 1);
    let mut b = GraphBuilder::new(n_prime);
    for i in 0..n_prime {
        for j in i + 1..n_prime {
            let w = if (i, j) == (z_plus, z_minus) {
                c
            } else if i < 2 * n && j < 2 * n {
                let (ui, si) = (i % n, i / n);
                let (uj, sj) = (j % n, j / n);
                if ui == uj {
                    0
                } else if si == sj && g.weight(ui, uj) > 0.0 {
                    t - 1
                } else {
                    t
                }
            } else {
                t
            };
            if w > 0 {
                b.add_edge(i, j, w as f64)?;
            }
        }
    }
    let graph = b.build();
    let certificate = match witness {
        Some(w) => Some(w),
        None if n <= MAX_CUT_LIMIT => {
            let best = exact_max_cut(g, MAX_CUT_LIMIT)?;
            (best.cut_size >= k).then_some(best.side)
        }
        None => None,
    };
    Ok(MaxCutReduction {
        graph,
        source_n: n,
        source_m: m,
        k,
        t,
        c,
        n_prime,
        m_prime: 2 * n as u64 * (n as u64 + 1) * t - 2 * m + c,
        certificate,
    })
}

/// `4M²·Q` computed exactly for graphs with integral weights:
/// `Σ_t (4M·E(C_t) − vol(C_t)²)`. `None` if some weight is not an integer
/// or the arithmetic would overflow.
pub fn exact_modularity_numerator(g: &Graph, c: &Clustering) -> Result<Option<i128>> {
    if !g.is_integral() {
        return Ok(None);
    }
    let (intra, vol) = community_weights(g, c)?;
    let m = g.total_weight();
    const EXACT: f64 = 9.0e15;
    if m > EXACT {
        return Ok(None);
    }
    let m = m as i128;
    let mut total: i128 = 0;
    for (e, v) in intra.iter().zip(&vol) {
        if *v > EXACT {
            return Ok(None);
        }
        let (e, v) = (*e as i128, *v as i128);
        total += 4 * m * e - v * v;
    }
    Ok(Some(total))
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateCheck {
    pub passed: bool,
    /// Modularity of the certificate clustering.
    pub q: f64,
    /// `a/M̃` for PARTITION (equality), `1/(2m′)` for Max-Cut (lower bound).
    pub expected: f64,
    pub relation: &'static str,
    pub detail: String,
}

pub fn verify_partition(red: &PartitionReduction) -> Result<CertificateCheck> {
    let c = red.certificate_clustering().ok_or(Error::MissingCertificate)?;
    let q = modularity(&red.graph, &c)?;
    let expected = red.certificate_value();
    let passed = q > 0.0 && (q - expected).abs() <= 1e-12;
    Ok(CertificateCheck {
        passed,
        q,
        expected,
        relation: "equal",
        detail: format!("a = {}, M = {}", red.a, red.total_weight),
    })
}

pub fn verify_maxcut(red: &MaxCutReduction) -> Result<CertificateCheck> {
    let c = red.certificate_clustering().ok_or(Error::MissingCertificate)?;
    let q = modularity(&red.graph, &c)?;
    let expected = 1.0 / (2.0 * red.m_prime as f64);
    let (_, vol) = community_weights(&red.graph, &c)?;
    let balanced = vol.len() == 2 && vol.iter().all(|&v| v == red.m_prime as f64);
    let numerator = exact_modularity_numerator(&red.graph, &c)?;
    let m = red.graph.total_weight();
    // Q ≥ 1/(2M)  ⇔  4M²Q ≥ 2M.
    let bound = numerator.is_some_and(|num| num >= 2 * m as i128);
    let consistent = m == red.m_prime as f64;
    Ok(CertificateCheck {
        passed: balanced && bound && consistent,
        q,
        expected,
        relation: "at_least",
        detail: format!(
            "volumes = {:?}, m' = {}, numerator = {}",
            vol,
            red.m_prime,
            numerator.map_or("n/a".to_string(), |x| x.to_string())
        ),
    })
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability must lie in [0, 1], got {p}")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_unweighted(n, edges)
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig3Config {
    pub sizes: Vec<usize>,
    pub repeats: usize,
    pub p: f64,
    pub methods: Vec<Method>,
    pub seed: u64,
    pub options: MethodOptions,
}

impl Default for Fig3Config {
    fn default() -> Self {
        Fig3Config {
            sizes: vec![10, 15, 20],
            repeats: 5,
            p: 0.5,
            methods: Method::ALL.to_vec(),
            seed: 0,
            options: MethodOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MethodAttempt {
    pub method: Method,
    pub q: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig3Instance {
    pub size: usize,
    pub repeat: usize,
    pub seed: u64,
    pub m: u64,
    pub max_cut: u64,
    pub trivial: bool,
    pub m_prime: Option<u64>,
    pub attempts: Vec<MethodAttempt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig3Row {
    pub size: usize,
    pub instances: usize,
    pub trivial: usize,
    /// Passes per method, in the configured method order.
    pub passes: Vec<(Method, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig3Report {
    pub p: f64,
    pub repeats: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub rows: Vec<Fig3Row>,
    pub instances: Vec<Fig3Instance>,
}

impl Fig3Report {
    /// Passes over non-trivial instances, as a fraction.
    pub fn success_rate(&self, method: Method) -> Option<f64> {
        let (mut pass, mut total) = (0, 0);
        for inst in self.instances.iter().filter(|i| !i.trivial) {
            for a in inst.attempts.iter().filter(|a| a.method == method) {
                total += 1;
                pass += usize::from(a.passed);
            }
        }
        (total > 0).then(|| pass as f64 / total as f64)
    }
}

/// Generates `G(n, p)`, finds its maximum cut exactly, reduces, and records
/// which methods find a clustering with strictly positive modularity. The
/// sign is decided in exact integer arithmetic.
pub fn fig3_experiment(cfg: &Fig3Config) -> Result<Fig3Report> {
    if cfg.methods.is_empty() {
        return Err(Error::InvalidParameter("at least one method is required".into()));
    }
    if cfg.repeats == 0 {
        return Err(Error::InvalidParameter("repeats must be at least 1".into()));
    }
    for &n in &cfg.sizes {
        if n > MAX_CUT_LIMIT {
            return Err(Error::SizeLimit {
                what: "fig3 source graph",
                n,
                limit: MAX_CUT_LIMIT,
            });
        }
    }
    let cells: Vec<(usize, usize)> = cfg
        .sizes
        .iter()
        .flat_map(|&n| (0..cfg.repeats).map(move |r| (n, r)))
        .collect();
    let instances: Vec<Fig3Instance> = cells
        .par_iter()
        .map(|&(n, r)| fig3_instance(cfg, n, r))
        .collect::<Result<_>>()?;

    let rows = cfg
        .sizes
        .iter()
        .map(|&n| {
            let here: Vec<&Fig3Instance> = instances.iter().filter(|i| i.size == n).collect();
            let passes = cfg
                .methods
                .iter()
                .map(|&m| {
                    let count = here
                        .iter()
                        .flat_map(|i| &i.attempts)
                        .filter(|a| a.method == m && a.passed)
                        .count();
                    (m, count)
                })
                .collect();
            Fig3Row {
                size: n,
                instances: here.len(),
                trivial: here.iter().filter(|i| i.trivial).count(),
                passes,
            }
        })
        .collect();
    Ok(Fig3Report {
        p: cfg.p,
        repeats: cfg.repeats,
        seed: cfg.seed,
        methods: cfg.methods.clone(),
        rows,
        instances,
    })
}

fn fig3_instance(cfg: &Fig3Config, n: usize, repeat: usize) -> Result<Fig3Instance> {
    let inst_seed = seed::derive(cfg.seed, &[TAG_FIG3, n as u64, repeat as u64]);
    let mut rng = seed::rng(inst_seed, &[]);
    let g = random_graph(n, cfg.p, &mut rng)?;
    let m = g.edge_count() as u64;
    let best = exact_max_cut(&g, MAX_CUT_LIMIT)?;
    let mut record = Fig3Instance {
        size: n,
        repeat,
        seed: inst_seed,
        m,
        max_cut: best.cut_size,
        trivial: false,
        m_prime: None,
        attempts: Vec::new(),
    };
    let red = match reduce_maxcut(&g, best.cut_size, Some(best.side)) {
        Ok(red) => red,
        Err(Error::TrivialInstance { .. }) => {
            record.trivial = true;
            return Ok(record);
        }
        Err(e) => return Err(e),
    };
    record.m_prime = Some(red.m_prime);
    let options = MethodOptions {
        seed: inst_seed,
        ..cfg.options.clone()
    };
    for &method in &cfg.methods {
        let out = method.run(&red.graph, &options)?;
        let num = exact_modularity_numerator(&red.graph, &out.clustering)?;
        record.attempts.push(MethodAttempt {
            method,
            q: out.q,
            passed: num.is_some_and(|x| x > 0),
        });
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn partition_one_one() {
        let red = reduce_partition(&PartitionInstance::new(vec![1, 1]).unwrap()).unwrap();
        assert_relative_eq!(red.a, 0.1, epsilon = 1e-15);
        assert_relative_eq!(red.total_weight, 4.2, epsilon = 1e-15);
        assert_relative_eq!(red.graph.total_weight(), 4.2, epsilon = 1e-12);
        assert_relative_eq!(red.graph.degree(0).unwrap(), 2.2, epsilon = 1e-15);
        assert_eq!(red.answer, Answer::Yes);
        let check = verify_partition(&red).unwrap();
        assert!(check.passed, "{check:?}");
        assert_relative_eq!(check.q, 1.0 / 42.0, epsilon = 1e-12);
    }

    #[test]
    fn partition_two_two() {
        let red = reduce_partition(&PartitionInstance::new(vec![2, 2]).unwrap()).unwrap();
        assert_relative_eq!(red.a, 1.0 / 18.0, epsilon = 1e-15);
        assert_relative_eq!(red.total_weight, 8.0 + 2.0 / 18.0, epsilon = 1e-12);
        assert!(verify_partition(&red).unwrap().passed);
    }

    #[test]
    fn partition_no_instances() {
        let red = reduce_partition(&PartitionInstance::new(vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(red.answer, Answer::No);
        assert!(matches!(verify_partition(&red), Err(Error::MissingCertificate)));
        let red = reduce_partition(&PartitionInstance::new(vec![1, 5]).unwrap()).unwrap();
        assert_eq!(red.answer, Answer::No);
    }

    #[test]
    fn corrupted_partition_certificate_fails() {
        let mut red = reduce_partition(&PartitionInstance::new(vec![1, 2, 3]).unwrap()).unwrap();
        red.certificate = Some(PartitionCertificate {
            first: vec![0],
            second: vec![1, 2],
        });
        let check = verify_partition(&red).unwrap();
        assert!(!check.passed);
        assert!(check.q <= 0.0);
    }

    #[test]
    fn equal_split_search() {
        let c = find_equal_split(&[3, 1, 1, 2, 2, 1]).unwrap();
        let sum = |ix: &[usize]| ix.iter().map(|&i| [3, 1, 1, 2, 2, 1][i]).sum::<u64>();
        assert_eq!(sum(&c.first), sum(&c.second));
        assert!(find_equal_split(&[2, 4, 8]).is_none());
        assert!(find_equal_split(&[1]).is_none());
    }

    #[test]
    fn single_edge_sample() {
        let g = Graph::from_unweighted(2, [(0, 1)]).unwrap();
        assert!(matches!(reduce_maxcut(&g, 1, None), Err(Error::TrivialInstance { k: 1, m: 1, .. })));
        assert!(matches!(reduce_maxcut(&g, 2, None), Err(Error::InvalidParameter(_))));
        let red = reduce_maxcut_unfiltered(&g, 1, None).unwrap();
        assert_eq!(red.n_prime, 6);
        assert_eq!(red.t, 16);
        assert_eq!(red.c, 1);
        assert_eq!(red.m_prime, 191);
        assert_eq!(red.graph.total_weight(), 191.0);
        assert_eq!(red.graph.weight(0, 1), 15.0);
        assert_eq!(red.graph.weight(2, 3), 15.0);
        assert_eq!(red.graph.weight(0, 2), 0.0);
        assert_eq!(red.graph.weight(0, 3), 16.0);
        assert_eq!(red.graph.weight(4, 5), 1.0);
        assert!(verify_maxcut(&red).unwrap().passed);
    }

    #[test]
    fn cycle_five_certificate() {
        let g = Graph::from_unweighted(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let red = reduce_maxcut_unfiltered(&g, 4, None).unwrap();
        assert!(red.certificate.is_some());
        let check = verify_maxcut(&red).unwrap();
        assert!(check.passed, "{check:?}");
        // A cut of size exactly k meets the bound with equality.
        assert!(check.q >= check.expected * (1.0 - 1e-9));
    }

    #[test]
    fn exact_numerator_matches_float() {
        let g = Graph::from_unweighted(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let c = Clustering::from_labels([0, 0, 1, 1]);
        let num = exact_modularity_numerator(&g, &c).unwrap().unwrap();
        let m = g.total_weight();
        assert_relative_eq!(num as f64 / (4.0 * m * m), modularity(&g, &c).unwrap(), epsilon = 1e-15);
        let w = Graph::from_edges(2, [(0, 1, 0.5)]).unwrap();
        assert!(exact_modularity_numerator(&w, &Clustering::single(2)).unwrap().is_none());
    }
}
