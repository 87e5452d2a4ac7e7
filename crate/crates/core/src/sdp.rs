//! Semidefinite relaxation of modularity with random-hyperplane rounding.
//!
//! The relaxation maximizes `(1/2M) Σ B_ij x_i·x_j` over unit vectors with
//! pairwise nonnegative inner products. It is solved in factored form
//! `X = V Vᵀ` with `V` of small rank: rows live on unit spheres and the
//! nonnegativity constraints are handled by an augmented Lagrangian. The
//! inner subproblem is Riemannian gradient ascent with Barzilai-Borwein
//! steps and Armijo backtracking.
//!
//! Two certificates come out of a solve. The returned embedding is made
//! exactly feasible by lifting every vector with one extra coordinate, so its
//! objective is a lower bound on the relaxation. The final multipliers give a
//! dual point and hence an upper bound on the relaxation, which in turn bounds
//! the maximum modularity.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{community_weights, modularity_matrix, Clustering, Graph};
use crate::seed;

/// Approximation constant of the Max-Agree rounding.
pub const KAPPA: f64 = 0.766;
/// `2(1 − κ)`.
pub const ADDITIVE_GAP: f64 = 2.0 * (1.0 - KAPPA);

const TAG_RESTART: u64 = 0x5d9;
const TAG_ROUND: u64 = 0x40d;

#[derive(Clone, Debug, Serialize)]
pub struct SolverConfig {
    pub seed: u64,
    pub restarts: usize,
    pub feastol: f64,
    pub grad_tol: f64,
    /// A solve also counts as converged once the dual bound is within this
    /// relative distance of the objective of a feasible embedding.
    pub gap_tol: f64,
    /// Gradient steps per restart, summed over all multiplier rounds.
    pub max_iters: usize,
    /// Factorization rank; `None` picks `ceil(sqrt(2n)) + 1`.
    pub rank: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            restarts: 5,
            feastol: 1e-6,
            grad_tol: 1e-7,
            gap_tol: 1e-5,
            max_iters: 20_000,
            rank: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SdpmConfig {
    pub solver: SolverConfig,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SdpmConfig {
    fn default() -> Self {
        SdpmConfig {
            solver: SolverConfig::default(),
            trials: 1000,
            seed: 0,
        }
    }
}

impl SdpmConfig {
    pub fn with_seed(seed: u64) -> Self {
        SdpmConfig {
            solver: SolverConfig {
                seed,
                ..SolverConfig::default()
            },
            trials: 1000,
            seed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Embedding {
    /// One unit vector per row.
    pub vectors: DMatrix<f64>,
    pub objective: f64,
    /// Largest `max(0, −x_i·x_j)` of the returned vectors.
    pub max_pairwise_violation: f64,
    /// Violation before the feasibility lift.
    pub raw_violation: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Dual bound on the relaxation; withheld when the solve did not converge.
    pub upper_bound: Option<f64>,
    pub duality_gap: Option<f64>,
}

impl Embedding {
    pub fn n(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }
}

pub fn default_rank(n: usize) -> usize {
    let r = ((2.0 * n as f64).sqrt().ceil() as usize) + 1;
    r.min(n.max(1))
}

fn normalize_rows(v: &mut DMatrix<f64>) {
    for mut row in v.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        } else {
            row.fill(0.0);
            row[0] = 1.0;
        }
    }
}

struct Problem {
    /// `B / 2M` divided by `scale`, so the largest entry has magnitude 1.
    c: DMatrix<f64>,
    /// Smallest certifiable gap, in units of `c`.
    gap_floor: f64,
    gap_tol: f64,
    n: usize,
}

impl Problem {
    fn certified(&self, objective: f64, bound: f64) -> bool {
        bound - objective <= (self.gap_tol * objective.abs().max(bound.abs())).max(self.gap_floor)
    }
}

/// Augmented-Lagrangian state for one restart.
struct AugLag<'p> {
    p: &'p Problem,
    /// Multipliers for `x_i·x_j ≥ 0`, symmetric, zero diagonal.
    lambda: DMatrix<f64>,
    mu: f64,
}

struct Eval {
    value: f64,
    /// Riemannian gradient.
    rgrad: DMatrix<f64>,
    gram: DMatrix<f64>,
}

impl AugLag<'_> {
    /// Shifted multipliers `max(0, λ − μ g)` at the Gram matrix `g`.
    fn zhat(&self, gram: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.p.n;
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                (self.lambda[(i, j)] - self.mu * gram[(i, j)]).max(0.0)
            }
        })
    }

    fn eval(&self, v: &DMatrix<f64>) -> Eval {
        let gram = v * v.transpose();
        let zhat = self.zhat(&gram);
        let mut value = self.p.c.dot(&gram);
        let mut penalty = 0.0;
        for j in 0..self.p.n {
            for i in 0..j {
                let l = self.lambda[(i, j)];
                let z = zhat[(i, j)];
                penalty += z * z - l * l;
            }
        }
        value -= penalty / (2.0 * self.mu);
        // Euclidean gradient 2(C + Ẑ/2)V, then project each row onto the
        // tangent space of its sphere.
        let s = &self.p.c * 2.0 + &zhat;
        let mut rgrad = s * v;
        for i in 0..self.p.n {
            let radial = rgrad.row(i).dot(&v.row(i));
            let vi = v.row(i);
            rgrad.row_mut(i).zip_apply(&vi, |g, x| *g -= radial * x);
        }
        Eval { value, rgrad, gram }
    }
}

fn max_row_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.norm()).fold(0.0, f64::max)
}

fn violation(gram: &DMatrix<f64>) -> f64 {
    let n = gram.nrows();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for i in 0..j {
            worst = worst.max(-gram[(i, j)]);
        }
    }
    worst
}

/// Upper bound `Σ y_i + n·max(0, λ_max(C + Z − Diag y))` valid for every
/// feasible point of the relaxation, for any `y` and any `Z ≥ 0`.
fn dual_bound(c: &DMatrix<f64>, z: &DMatrix<f64>, gram: &DMatrix<f64>) -> f64 {
    let n = c.nrows();
    let s = c + z;
    let y: Vec<f64> = (0..n).map(|i| s.row(i).dot(&gram.row(i))).collect();
    let mut shifted = s;
    for (i, yi) in y.iter().enumerate() {
        shifted[(i, i)] -= yi;
    }
    let lmax = SymmetricEigen::new(shifted)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    y.iter().sum::<f64>() + n as f64 * lmax.max(0.0)
}

struct RestartOutcome {
    /// Best exactly feasible iterate after lifting.
    vectors: DMatrix<f64>,
    objective: f64,
    raw_violation: f64,
    /// Smallest dual bound seen.
    upper_bound: f64,
    converged: bool,
    iterations: usize,
}

fn project_tangent(d: &mut DMatrix<f64>, v: &DMatrix<f64>) {
    for i in 0..v.nrows() {
        let radial = d.row(i).dot(&v.row(i));
        d.row_mut(i).zip_apply(&v.row(i), |x, y| *x -= radial * y);
    }
}

/// Riemannian L-BFGS ascent on the augmented Lagrangian until the largest
/// row of the gradient drops to `tol`. Curvature pairs are kept in the
/// ambient space and search directions are projected back onto the tangent
/// space; a direction that fails to ascend resets the memory.
fn ascend(al: &AugLag, v: &mut DMatrix<f64>, tol: f64, max_iters: usize, iterations: &mut usize) -> (Eval, bool) {
    const MEMORY: usize = 8;
    let mut cur = al.eval(v);
    // Pairs (s, y, 1/(s·y)) for the minimization of −L.
    let mut pairs: std::collections::VecDeque<(DMatrix<f64>, DMatrix<f64>, f64)> =
        std::collections::VecDeque::with_capacity(MEMORY);
    while *iterations < max_iters {
        if max_row_norm(&cur.rgrad) <= tol {
            return (cur, true);
        }
        // Two-loop recursion on the gradient of −L.
        let mut q = -&cur.rgrad;
        let mut alphas = Vec::with_capacity(pairs.len());
        for (s, y, rho) in pairs.iter().rev() {
            let a = rho * s.dot(&q);
            q -= y * a;
            alphas.push(a);
        }
        if let Some((s, y, _)) = pairs.back() {
            q *= s.dot(y) / y.norm_squared();
        } else {
            // First step: unit length along the gradient.
            q /= cur.rgrad.norm().max(f64::MIN_POSITIVE);
        }
        for ((s, y, rho), a) in pairs.iter().zip(alphas.iter().rev()) {
            let b = rho * y.dot(&q);
            q += s * (a - b);
        }
        let mut dir = -q;
        project_tangent(&mut dir, v);
        let mut slope = dir.dot(&cur.rgrad);
        if slope <= 0.0 {
            pairs.clear();
            dir = cur.rgrad.clone() / cur.rgrad.norm();
            slope = dir.dot(&cur.rgrad);
        }
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial = &*v + &dir * step;
            normalize_rows(&mut trial);
            let e = al.eval(&trial);
            if e.value >= cur.value + 1e-4 * step * slope {
                accepted = Some((trial, e));
                break;
            }
            step *= 0.5;
        }
        *iterations += 1;
        let Some((trial, e)) = accepted else {
            // No ascent possible at machine precision.
            return (cur, false);
        };
        let s = &trial - &*v;
        let y = &cur.rgrad - &e.rgrad;
        let sy = s.dot(&y);
        if sy > 1e-12 * s.norm() * y.norm() {
            if pairs.len() == MEMORY {
                pairs.pop_front();
            }
            pairs.push_back((s, y, 1.0 / sy));
        }
        *v = trial;
        cur = e;
    }
    let done = max_row_norm(&cur.rgrad) <= tol;
    (cur, done)
}

fn solve_restart(p: &Problem, cfg: &SolverConfig, rank: usize, restart: usize) -> RestartOutcome {
    let n = p.n;
    let mut rng = seed::rng(cfg.seed, &[TAG_RESTART, restart as u64]);
    let mut v = DMatrix::from_fn(n, rank, |_, _| rng.sample::<f64, _>(StandardNormal));
    normalize_rows(&mut v);

    let mu_max = 2e9;
    let mut al = AugLag {
        p,
        lambda: DMatrix::zeros(n, n),
        mu: 20.0,
    };
    let mut iterations = 0;
    let mut prev_viol = f64::INFINITY;
    // Inner tolerance, tightened every multiplier round.
    let mut omega: f64 = 1e-3;
    let mut best = RestartOutcome {
        vectors: v.clone(),
        objective: f64::NEG_INFINITY,
        raw_violation: f64::INFINITY,
        upper_bound: f64::INFINITY,
        converged: false,
        iterations: 0,
    };

    loop {
        let tol = omega.max(cfg.grad_tol);
        let (cur, stationary) = ascend(&al, &mut v, tol, cfg.max_iters, &mut iterations);
        let gram = cur.gram;
        let viol = violation(&gram);
        al.lambda = al.zhat(&gram);

        let lifted = lift(&v, viol);
        let obj = objective(&p.c, &lifted);
        if obj > best.objective {
            best.objective = obj;
            best.vectors = lifted;
            best.raw_violation = viol;
        }
        let ub = dual_bound(&p.c, &(&al.lambda * 0.5), &gram);
        best.upper_bound = best.upper_bound.min(ub);
        best.iterations = iterations;

        let kkt = viol <= cfg.feastol && stationary && tol <= cfg.grad_tol;
        if kkt || p.certified(best.objective, best.upper_bound) {
            best.converged = true;
            break;
        }
        if iterations >= cfg.max_iters {
            break;
        }
        if viol > 0.25 * prev_viol && viol > cfg.feastol {
            al.mu = (al.mu * 10.0).min(mu_max);
        }
        prev_viol = viol;
        omega *= 0.1;
    }
    best
}

/// Appends `sqrt(v)` to every row and rescales, which shifts all inner
/// products by `v` and restores unit length. Because `B` sums to zero the
/// objective only shrinks by the factor `1/(1 + v)`.
fn lift(vectors: &DMatrix<f64>, v: f64) -> DMatrix<f64> {
    if v <= 0.0 {
        return vectors.clone();
    }
    let (n, r) = vectors.shape();
    let scale = 1.0 / (1.0 + v).sqrt();
    DMatrix::from_fn(n, r + 1, |i, j| if j < r { vectors[(i, j)] * scale } else { v.sqrt() * scale })
}

fn objective(c: &DMatrix<f64>, vectors: &DMatrix<f64>) -> f64 {
    c.dot(&(vectors * vectors.transpose()))
}

/// Solves the relaxation from `cfg.restarts` random starts and keeps the
/// feasible embedding with the best objective.
pub fn solve_sdp(g: &Graph, cfg: &SolverConfig) -> Result<Embedding> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter("the relaxation needs at least 2 vertices".into()));
    }
    if cfg.restarts == 0 || cfg.max_iters == 0 {
        return Err(Error::InvalidParameter("restarts and max_iters must be positive".into()));
    }
    let b = modularity_matrix(g)?;
    let m = b.total_weight();
    let c = b.entries() / (2.0 * m);
    // Reduction instances have coefficients many orders of magnitude below
    // those of ordinary graphs; solve in normalized units.
    let scale = c.amax();
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let p = Problem {
        gap_floor: 1e-12 * c.abs().sum() / scale,
        gap_tol: cfg.gap_tol,
        c: c / scale,
        n,
    };
    let rank = cfg.rank.unwrap_or_else(|| default_rank(n)).max(1);

    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| solve_restart(&p, cfg, rank, r))
        .collect();

    let mut chosen = 0;
    for (idx, o) in outcomes.iter().enumerate() {
        if o.objective > outcomes[chosen].objective {
            chosen = idx;
        }
    }
    // Every restart's dual point bounds the relaxation.
    let bound = outcomes.iter().map(|o| o.upper_bound).fold(f64::INFINITY, f64::min);
    let best = &outcomes[chosen];
    let gap = bound - best.objective;
    let converged = best.converged || p.certified(best.objective, bound);
    let gram = &best.vectors * best.vectors.transpose();
    Ok(Embedding {
        max_pairwise_violation: violation(&gram),
        raw_violation: best.raw_violation,
        objective: best.objective * scale,
        vectors: best.vectors.clone(),
        converged,
        iterations: outcomes.iter().map(|o| o.iterations).sum(),
        upper_bound: converged.then_some(bound * scale),
        duality_gap: converged.then_some(gap * scale),
    })
}

/// Sign-pattern clustering of one trial.
fn round_once(emb: &Embedding, k: usize, seed_value: u64, trial: usize) -> Clustering {
    let mut rng = seed::rng(seed_value, &[TAG_ROUND, k as u64, trial as u64]);
    let d = emb.dim();
    let normals: Vec<f64> = (0..k * d).map(|_| rng.sample(StandardNormal)).collect();
    Clustering::from_labels(emb.vectors.row_iter().map(|row| {
        (0..k).fold(0usize, |acc, h| {
            let proj: f64 = row.iter().zip(&normals[h * d..(h + 1) * d]).map(|(x, r)| x * r).sum();
            (acc << 1) | usize::from(proj >= 0.0)
        })
    }))
}

fn fast_modularity(g: &Graph, c: &Clustering) -> f64 {
    let (intra, vol) = community_weights(g, c).expect("clustering sized to graph");
    let m = g.total_weight();
    intra
        .iter()
        .zip(&vol)
        .map(|(e, v)| e / m - v * v / (4.0 * m * m))
        .sum()
}

/// Best of `trials` roundings with `k` random hyperplanes. Trial `t` always
/// uses the same random stream, so the result only improves as `trials`
/// grows. Ties go to the earliest trial.
pub fn round_hyperplanes(g: &Graph, emb: &Embedding, k: usize, trials: usize, seed_value: u64) -> Result<Clustering> {
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidParameter(format!("k must be 2 or 3, got {k}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if emb.n() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: emb.n(),
        });
    }
    if g.total_weight() <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let scores: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| fast_modularity(g, &round_once(emb, k, seed_value, t)))
        .collect();
    let mut best = 0;
    for (t, &q) in scores.iter().enumerate() {
        if q > scores[best] {
            best = t;
        }
    }
    Ok(round_once(emb, k, seed_value, best))
}

#[derive(Clone, Debug, Serialize)]
pub struct SdpmReport {
    pub clustering: Clustering,
    pub q: f64,
    pub k: usize,
    pub q_k2: f64,
    pub q_k3: f64,
    pub sdp_objective: f64,
    pub sdp_upper_bound: Option<f64>,
    pub additive_gap_bound: f64,
    /// `κ·U − (1 − κ)` for the upper bound `U`.
    pub multiplicative_certificate: Option<f64>,
    /// `U − 2(1 − κ)`.
    pub additive_certificate: Option<f64>,
    pub converged: bool,
    pub solver_iterations: usize,
    pub max_pairwise_violation: f64,
    pub trials: usize,
}

/// Solve, round with two and three hyperplanes, keep the better clustering.
pub fn sdpm(g: &Graph, cfg: &SdpmConfig) -> Result<SdpmReport> {
    let emb = solve_sdp(g, &cfg.solver)?;
    sdpm_from_embedding(g, &emb, cfg.trials, cfg.seed)
}

pub fn sdpm_from_embedding(g: &Graph, emb: &Embedding, trials: usize, seed_value: u64) -> Result<SdpmReport> {
    let c2 = round_hyperplanes(g, emb, 2, trials, seed_value)?;
    let c3 = round_hyperplanes(g, emb, 3, trials, seed_value)?;
    let q2 = crate::graph::modularity(g, &c2)?;
    let q3 = crate::graph::modularity(g, &c3)?;
    let (clustering, q, k) = if q3 > q2 { (c3, q3, 3) } else { (c2, q2, 2) };
    Ok(SdpmReport {
        clustering,
        q,
        k,
        q_k2: q2,
        q_k3: q3,
        sdp_objective: emb.objective,
        sdp_upper_bound: emb.upper_bound,
        additive_gap_bound: ADDITIVE_GAP,
        multiplicative_certificate: emb.upper_bound.map(|u| KAPPA * u - (1.0 - KAPPA)),
        additive_certificate: emb.upper_bound.map(|u| u - ADDITIVE_GAP),
        converged: emb.converged,
        solver_iterations: emb.iterations,
        max_pairwise_violation: emb.max_pairwise_violation,
        trials,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MaxAgreeShift {
    /// Sum of the nonnegative entries of `B`.
    pub w: f64,
    /// `W / 2M`.
    pub shift: f64,
    pub total_weight: f64,
}

/// The constant that makes every objective coefficient nonnegative.
pub fn max_agree_shift(g: &Graph) -> Result<MaxAgreeShift> {
    let b = modularity_matrix(g)?;
    let w = b.positive_mass();
    let m = b.total_weight();
    Ok(MaxAgreeShift {
        w,
        shift: w / (2.0 * m),
        total_weight: m,
    })
}

/// Max-Agree form of the shifted objective: positive entries reward pairs
/// kept together, negative entries reward pairs kept apart. Equals
/// `Q + W/2M`.
pub fn shifted_objective(g: &Graph, c: &Clustering) -> Result<f64> {
    if c.n() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: c.n(),
        });
    }
    let b = modularity_matrix(g)?;
    let n = g.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let bij = b.get(i, j);
            let together = c.same(i, j);
            if bij >= 0.0 {
                if together {
                    total += bij;
                }
            } else if !together {
                total -= bij;
            }
        }
    }
    Ok(total / (2.0 * b.total_weight()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::modularity;
    use approx::assert_relative_eq;

    fn two_edges() -> Graph {
        Graph::from_unweighted(4, [(0, 1), (2, 3)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::from_unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn embedding(rows: &[&[f64]]) -> Embedding {
        let n = rows.len();
        let d = rows[0].len();
        Embedding {
            vectors: DMatrix::from_fn(n, d, |i, j| rows[i][j]),
            objective: 0.0,
            max_pairwise_violation: 0.0,
            raw_violation: 0.0,
            converged: true,
            iterations: 0,
            upper_bound: None,
            duality_gap: None,
        }
    }

    #[test]
    fn clique_relaxation_is_zero() {
        let emb = solve_sdp(&k3(), &SolverConfig::default()).unwrap();
        assert!(emb.objective.abs() < 1e-4, "{}", emb.objective);
        assert!(emb.converged);
        assert!(emb.upper_bound.unwrap() >= -1e-9);
    }

    #[test]
    fn two_edges_relaxation() {
        let emb = solve_sdp(&two_edges(), &SolverConfig::default()).unwrap();
        assert!(emb.objective >= 0.5 - 1e-4, "{}", emb.objective);
        assert!(emb.max_pairwise_violation <= 1e-6);
        let ub = emb.upper_bound.unwrap();
        assert!(ub >= emb.objective - 1e-9 && ub < 0.5 + 1e-3, "{ub}");
        for row in emb.vectors.row_iter() {
            assert_relative_eq!(row.norm(), 1.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn lift_restores_feasibility() {
        let v = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, -0.1, 0.995f64.sqrt()]);
        let mut v = v;
        normalize_rows(&mut v);
        let g = v.row(0).dot(&v.row(1));
        let lifted = lift(&v, -g);
        let gl = &lifted * lifted.transpose();
        assert!(gl[(0, 1)].abs() < 1e-15);
        assert_relative_eq!(gl[(0, 0)], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn identical_vectors_round_to_one_community() {
        let emb = embedding(&[&[1.0, 0.0], &[1.0, 0.0], &[1.0, 0.0]]);
        for k in [2, 3] {
            let c = round_hyperplanes(&k3(), &emb, k, 20, 1).unwrap();
            assert_eq!(c, Clustering::single(3));
        }
    }

    #[test]
    fn orthogonal_groups_round_to_optimum() {
        let emb = embedding(&[&[1.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.0, 1.0]]);
        let g = two_edges();
        let c = round_hyperplanes(&g, &emb, 2, 50, 3).unwrap();
        assert_relative_eq!(modularity(&g, &c).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn rounding_rejects_bad_k() {
        let emb = embedding(&[&[1.0], &[1.0], &[1.0]]);
        assert!(round_hyperplanes(&k3(), &emb, 4, 1, 0).is_err());
        assert!(round_hyperplanes(&k3(), &emb, 2, 0, 0).is_err());
    }

    #[test]
    fn sdpm_on_two_edges() {
        let r = sdpm(&two_edges(), &SdpmConfig::default()).unwrap();
        assert_relative_eq!(r.q, 0.5, epsilon = 1e-12);
        assert!(r.q <= r.sdp_upper_bound.unwrap() + 1e-6);
        assert_relative_eq!(r.additive_gap_bound, 0.468, epsilon = 1e-12);
    }

    #[test]
    fn shift_on_clique() {
        let s = max_agree_shift(&k3()).unwrap();
        assert_relative_eq!(s.w, 2.0, epsilon = 1e-12);
        assert_relative_eq!(s.shift, 1.0 / 3.0, epsilon = 1e-12);
        let all = shifted_objective(&k3(), &Clustering::single(3)).unwrap();
        assert_relative_eq!(all, s.shift, epsilon = 1e-12);
        let singles = Clustering::singletons(3);
        assert_relative_eq!(
            shifted_objective(&k3(), &singles).unwrap(),
            modularity(&k3(), &singles).unwrap() + s.shift,
            epsilon = 1e-12
        );
    }
}
