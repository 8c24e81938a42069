//! Perron-Frobenius toolkit for non-negative matrices.
//!
//! Irreducibility is grounded in graph terms: the positivity digraph of a
//! matrix has an edge `i -> j` exactly when `A[i][j] > 0`, and a
//! non-negative matrix is irreducible when that graph is strongly
//! connected. The Perron root is certified through the Collatz-Wielandt
//! bracket: for any strictly positive `v`,
//! `min_i (Av)_i / v_i <= r <= max_i (Av)_i / v_i`,
//! so a power iteration whose bracket has closed to width `tol` carries its
//! own proof. The certificate — not the iteration — is the correctness
//! claim, checkable with one matrix-vector product.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::oracle::{total_variation, ColumnStochasticMatrix, ProbabilityVector};
use crate::rng::RngStream;

/// A square matrix with validated non-negative entries.
#[derive(Clone, Debug)]
pub struct NonNegMatrix(SquareMatrix);

impl NonNegMatrix {
    pub fn new(a: SquareMatrix) -> Result<Self> {
        let k = a.dim();
        for i in 0..k {
            for j in 0..k {
                let v = a.get(i, j);
                if v.is_nan() || v < 0.0 {
                    return Err(Error::NegativeEntry { i, j, value: v });
                }
            }
        }
        Ok(Self(a))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0
    }
}

impl From<&ColumnStochasticMatrix> for NonNegMatrix {
    fn from(a: &ColumnStochasticMatrix) -> Self {
        Self(a.matrix().clone())
    }
}

/// Positivity digraph of a matrix, stored as successor lists.
#[derive(Clone, Debug)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.succ[from].contains(&to)
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }
}

/// The digraph with an edge `i -> j` iff `A[i][j] > 0`.
pub fn to_graph(a: &NonNegMatrix) -> Digraph {
    let k = a.dim();
    let succ = (0..k)
        .map(|i| (0..k).filter(|&j| a.get(i, j) > 0.0).collect())
        .collect();
    Digraph { succ }
}

/// Strong connectivity via a Kosaraju pass: a single component containing
/// every vertex.
pub fn is_strongly_connected(g: &Digraph) -> bool {
    strongly_connected_components(g).len() == 1
}

fn strongly_connected_components(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(frame) = stack.last_mut() {
            let v = frame.0;
            if frame.1 < g.succ[v].len() {
                let u = g.succ[v][frame.1];
                frame.1 += 1;
                if !visited[u] {
                    visited[u] = true;
                    stack.push((u, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for &u in &g.succ[v] {
            rev[u].push(v);
        }
    }
    visited.iter_mut().for_each(|f| *f = false);
    let mut components = Vec::new();
    for &start in order.iter().rev() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut component = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &rev[v] {
                if !visited[u] {
                    visited[u] = true;
                    component.push(u);
                    stack.push(u);
                }
            }
        }
        components.push(component);
    }
    components
}

/// Non-negativity (by construction) plus strong connectivity of the
/// positivity digraph.
pub fn is_irreducible(a: &NonNegMatrix) -> bool {
    is_strongly_connected(&to_graph(a))
}

/// Evaluates both sides of the power/path equivalence for one triple:
/// `((A^k)[i][j] > 0, exists walk of length k from i to j)`.
///
/// With the edge orientation of [`to_graph`] and row-index walks the two
/// sides agree exactly; both are computed independently so the equivalence
/// stays a standing check rather than an assumption.
pub fn pow_positivity_oracle(a: &NonNegMatrix, i: usize, j: usize, k: u32) -> (bool, bool) {
    let dim = a.dim();
    assert!(i < dim && j < dim, "vertex out of range");
    let mut power = SquareMatrix::identity(dim);
    for _ in 0..k {
        power = power.matmul(a.matrix());
    }
    let positive = power.get(i, j) > 0.0;

    let g = to_graph(a);
    let mut reach = vec![false; dim];
    reach[i] = true;
    for _ in 0..k {
        let mut next = vec![false; dim];
        for (v, &r) in reach.iter().enumerate() {
            if r {
                for &u in g.successors(v) {
                    next[u] = true;
                }
            }
        }
        reach = next;
    }
    (positive, reach[j])
}

/// The Collatz-Wielandt value `min_{i : x_i > 0} (Ax)_i / x_i` of a
/// non-negative nonzero test vector. Its supremum over all such vectors is
/// the Perron root.
pub fn collatz_wielandt_value(a: &NonNegMatrix, x: &[f64]) -> Result<f64> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            what: "test vector",
            expected: a.dim(),
            got: x.len(),
        });
    }
    if x.iter().any(|&v| v.is_nan() || v < 0.0) || x.iter().all(|&v| v == 0.0) {
        return Err(Error::InvalidTestVector);
    }
    let ax = a.matrix().matvec(x);
    let value = ax
        .iter()
        .zip(x)
        .filter(|(_, &xi)| xi > 0.0)
        .map(|(&axi, &xi)| axi / xi)
        .fold(f64::INFINITY, f64::min);
    Ok(value)
}

/// A strictly positive vector on the simplex.
#[derive(Clone, Debug)]
pub struct PositiveVector(Vec<f64>);

impl PositiveVector {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        if v.iter().any(|&x| x.is_nan() || x <= 0.0) {
            return Err(Error::InvalidProbabilityVector {
                reason: "entries must be strictly positive".into(),
            });
        }
        let sum: f64 = v.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidProbabilityVector {
                reason: format!("entries sum to {sum}"),
            });
        }
        Ok(Self(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// A certified Perron root: the Collatz-Wielandt bracket `[lower, upper]`
/// pins the root, the strictly positive eigenvector candidate is attached,
/// and `residual = ||A v - root v||_inf` is checkable in one product.
#[derive(Clone, Debug)]
pub struct PerronCertificate {
    pub root: f64,
    pub vector: PositiveVector,
    pub lower: f64,
    pub upper: f64,
    pub residual: f64,
    /// The bracket-width tolerance the certificate was requested at.
    pub tol: f64,
    pub iterations: u64,
}

/// Certified Perron root of an irreducible non-negative matrix.
///
/// Power iteration runs on `A + I` — primitive whenever `A` is irreducible,
/// so periodic matrices converge too, and the unit shift leaves the
/// eigenvectors untouched — while the bracket is evaluated on `A` itself.
/// Iteration stops once `upper - lower <= tol`; the reported root is the
/// bracket midpoint.
pub fn perron_root(a: &NonNegMatrix, tol: f64, max_iter: u64) -> Result<PerronCertificate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance { tol });
    }
    if !is_irreducible(a) {
        return Err(Error::NotIrreducible);
    }
    let k = a.dim();
    let mut v = vec![1.0 / k as f64; k];
    for iteration in 0..=max_iter {
        let av = a.matrix().matvec(&v);
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        for (&avi, &vi) in av.iter().zip(&v) {
            let ratio = avi / vi;
            lower = lower.min(ratio);
            upper = upper.max(ratio);
        }
        if upper - lower <= tol {
            let root = 0.5 * (lower + upper);
            let residual = av
                .iter()
                .zip(&v)
                .map(|(avi, vi)| (avi - root * vi).abs())
                .fold(0.0, f64::max);
            return Ok(PerronCertificate {
                root,
                vector: PositiveVector::new(v)?,
                lower,
                upper,
                residual,
                tol,
                iterations: iteration,
            });
        }
        // shifted step keeps iterates strictly positive and kills periodicity
        let mut next: Vec<f64> = av.iter().zip(&v).map(|(a, b)| a + b).collect();
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= sum);
        v = next;
    }
    Err(Error::NoConvergence { max_iter })
}

/// A stationary distribution together with the certificate that produced it.
#[derive(Clone, Debug)]
pub struct StationaryResult {
    pub pi: ProbabilityVector,
    pub certificate: PerronCertificate,
}

/// The unique stationary distribution of an irreducible column-stochastic
/// matrix: the Perron vector at root 1.
///
/// Column sums are revalidated within `1e-9` ([`Error::NotStochastic`]
/// otherwise), and `||A v - v||_inf <= tol` is verified before returning.
pub fn stationary_distribution(a: &NonNegMatrix, tol: f64) -> Result<StationaryResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance { tol });
    }
    let k = a.dim();
    for j in 0..k {
        let sum = a.matrix().column_sum(j);
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::NotStochastic { column: j, sum });
        }
    }
    let certificate = perron_root(a, 0.5 * tol, 1_000_000)?;
    let v = certificate.vector.as_slice();
    let av = a.matrix().matvec(v);
    let residual = av
        .iter()
        .zip(v)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if residual > tol {
        return Err(Error::ResidualTooLarge { residual, tol });
    }
    let pi = ProbabilityVector::new(v.to_vec())?;
    Ok(StationaryResult { pi, certificate })
}

/// Sufficient aperiodicity witness for an irreducible matrix: a strictly
/// positive diagonal entry closes a cycle of length 1, forcing period 1.
/// A zero diagonal is inconclusive and reported as `false`.
pub fn aperiodicity_by_positive_diagonal(a: &NonNegMatrix) -> bool {
    (0..a.dim()).any(|i| a.get(i, i) > 0.0)
}

/// Outcome of the multi-start uniqueness stress.
#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub trials: usize,
    pub max_pairwise_tv: f64,
    pub tol: f64,
    pub pass: bool,
}

const STRESS_BRACKET_TOL: f64 = 1e-12;
const STRESS_MAX_ITER: u64 = 1_000_000;

/// Runs unshifted power iteration — the chain evolution itself — from
/// `trials` random strictly positive simplex starts; all limits must agree
/// within `tol` in total variation.
///
/// The iteration is deliberately unshifted: on a periodic matrix the
/// iterates oscillate, the bracket never closes, and the call fails with
/// [`Error::NoConvergence`] — the reason aperiodicity is a precondition.
pub fn uniqueness_stress(
    a: &ColumnStochasticMatrix,
    tol: f64,
    trials: usize,
    rng: &mut RngStream,
) -> Result<UniquenessReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance { tol });
    }
    let k = a.dim();
    let mut limits: Vec<Vec<f64>> = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut v: Vec<f64> = (0..k).map(|_| 0.05 + rng.next_f64()).collect();
        let sum: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= sum);
        let mut converged = false;
        for _ in 0..STRESS_MAX_ITER {
            let av = a.apply(&v);
            let mut lower = f64::INFINITY;
            let mut upper = f64::NEG_INFINITY;
            for (&avi, &vi) in av.iter().zip(&v) {
                let ratio = avi / vi;
                lower = lower.min(ratio);
                upper = upper.max(ratio);
            }
            let total: f64 = av.iter().sum();
            v = av;
            v.iter_mut().for_each(|x| *x /= total);
            if upper - lower <= STRESS_BRACKET_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                max_iter: STRESS_MAX_ITER,
            });
        }
        limits.push(v.clone());
    }
    let mut max_pairwise_tv = 0.0f64;
    for i in 0..limits.len() {
        for j in (i + 1)..limits.len() {
            max_pairwise_tv = max_pairwise_tv.max(total_variation(&limits[i], &limits[j]));
        }
    }
    Ok(UniquenessReport {
        trials,
        max_pairwise_tv,
        tol,
        pass: max_pairwise_tv <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::{BoltzmannMachine, Temperature};
    use crate::oracle::{
        boltzmann_distribution, brute_force_stationary, transition_matrix_random_scan,
    };

    fn nn(rows: &[Vec<f64>]) -> NonNegMatrix {
        NonNegMatrix::new(SquareMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn random_irreducible(rng: &mut RngStream, dim: usize) -> NonNegMatrix {
        // a guaranteed full cycle plus random sprinkling
        let mut m = SquareMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, (i + 1) % dim, 0.2 + rng.next_f64());
        }
        for i in 0..dim {
            for j in 0..dim {
                if rng.next_f64() < 0.3 {
                    m.set(i, j, m.get(i, j) + rng.next_f64());
                }
            }
        }
        NonNegMatrix::new(m).unwrap()
    }

    #[test]
    fn graph_of_identity_is_self_loops_only() {
        let g = to_graph(&nn(&[vec![1.0, 0.0], vec![0.0, 1.0]]));
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 0) && g.has_edge(1, 1));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn graph_of_positive_matrix_is_complete_with_loops() {
        let g = to_graph(&nn(&[vec![1.0, 2.0], vec![0.5, 3.0]]));
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn graph_of_three_neuron_weight_support() {
        // |w| of the three-neuron reference network
        let g = to_graph(&nn(&[
            vec![0.0, 0.0, 4.0],
            vec![1.0, 0.0, 0.0],
            vec![2.0, 3.0, 0.0],
        ]));
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for v in 0..3 {
            for &u in g.successors(v) {
                edges.push((v, u));
            }
        }
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 2), (1, 0), (2, 0), (2, 1)]);
    }

    #[test]
    fn strong_connectivity_examples() {
        // single vertex, no edges: trivially strongly connected
        assert!(is_strongly_connected(&to_graph(&nn(&[vec![0.0]]))));
        // directed 2-cycle yes, single arc no
        assert!(is_strongly_connected(&to_graph(&nn(&[
            vec![0.0, 1.0],
            vec![1.0, 0.0]
        ]))));
        assert!(!is_strongly_connected(&to_graph(&nn(&[
            vec![0.0, 1.0],
            vec![0.0, 0.0]
        ]))));
    }

    #[test]
    fn irreducibility_examples() {
        // block diagonal splits into two components
        assert!(!is_irreducible(&nn(&[
            vec![1.0, 1.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 1.0],
            vec![0.0, 0.0, 1.0, 1.0],
        ])));
        assert!(is_irreducible(&nn(&[vec![0.1, 2.0], vec![0.3, 0.4]])));
        // a cyclic permutation is irreducible though periodic
        assert!(is_irreducible(&nn(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])));
    }

    #[test]
    fn random_scan_graph_is_strongly_connected() {
        let mut rng = RngStream::new(5);
        for n in 1..=6usize {
            let mut w = SquareMatrix::zeros(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    let x = rng.next_range(-1.0, 1.0);
                    w.set(u, v, x);
                    w.set(v, u, x);
                }
            }
            let theta = (0..n).map(|_| rng.next_range(-1.0, 1.0)).collect();
            let m = BoltzmannMachine::new(w, theta).unwrap();
            let k = transition_matrix_random_scan(&m, Temperature::new(1.0).unwrap()).unwrap();
            let a = NonNegMatrix::from(&k);
            assert!(is_irreducible(&a), "n = {n}");
            assert!(aperiodicity_by_positive_diagonal(&a));
        }
    }

    #[test]
    fn pow_oracle_agrees_on_edge_cases() {
        let two_cycle = nn(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        for k in 0..10u32 {
            for i in 0..2 {
                for j in 0..2 {
                    let (pow, path) = pow_positivity_oracle(&two_cycle, i, j, k);
                    assert_eq!(pow, path);
                    // parity alternation of the 2-cycle
                    let expected = (k % 2 == 0) == (i == j);
                    assert_eq!(pow, expected, "i={i} j={j} k={k}");
                }
            }
        }
        // k = 0 reduces to the identity: agree iff i == j
        let a = nn(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert_eq!(pow_positivity_oracle(&a, 0, 0, 0), (true, true));
        assert_eq!(pow_positivity_oracle(&a, 0, 1, 0), (false, false));
    }

    #[test]
    fn pow_oracle_never_disagrees_on_random_matrices() {
        let mut rng = RngStream::new(909);
        for _ in 0..200 {
            let dim = 1 + rng.next_below(7);
            let mut m = SquareMatrix::zeros(dim);
            for i in 0..dim {
                for j in 0..dim {
                    if rng.next_f64() < 0.35 {
                        m.set(i, j, 1.0);
                    }
                }
            }
            let a = NonNegMatrix::new(m).unwrap();
            for k in 0..=14u32 {
                for i in 0..dim {
                    for j in 0..dim {
                        let (pow, path) = pow_positivity_oracle(&a, i, j, k);
                        assert_eq!(pow, path, "dim={dim} i={i} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn collatz_wielandt_examples() {
        let scaled = nn(&[vec![2.5, 0.0], vec![0.0, 2.5]]);
        assert_eq!(collatz_wielandt_value(&scaled, &[1.0, 1.0]).unwrap(), 2.5);
        assert_eq!(collatz_wielandt_value(&scaled, &[0.0, 3.0]).unwrap(), 2.5);
        assert!(collatz_wielandt_value(&scaled, &[0.0, 0.0]).is_err());
        assert!(collatz_wielandt_value(&scaled, &[-1.0, 1.0]).is_err());

        // at the Perron vector the value is the root itself
        let mut rng = RngStream::new(7);
        let a = random_irreducible(&mut rng, 6);
        let cert = perron_root(&a, 1e-12, 100_000).unwrap();
        let at_vector = collatz_wielandt_value(&a, cert.vector.as_slice()).unwrap();
        assert!((at_vector - cert.root).abs() <= 1e-11);

        // at the stationary vector of a stochastic matrix the value is 1
        let cs = ColumnStochasticMatrix::new(
            SquareMatrix::from_rows(&[vec![0.6, 0.2], vec![0.4, 0.8]]).unwrap(),
        )
        .unwrap();
        let pi = brute_force_stationary(&cs).unwrap();
        let v = collatz_wielandt_value(&NonNegMatrix::from(&cs), pi.as_slice()).unwrap();
        assert!((v - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn perron_root_scalar_matrix_is_exact() {
        let a = nn(&[vec![3.25]]);
        let cert = perron_root(&a, 1e-15, 10).unwrap();
        assert_eq!(cert.root, 3.25);
        assert_eq!(cert.lower, 3.25);
        assert_eq!(cert.upper, 3.25);
        assert_eq!(cert.residual, 0.0);
        assert_eq!(cert.vector.as_slice(), &[1.0]);
    }

    #[test]
    fn perron_root_of_periodic_swap() {
        // the unit shift handles periodicity; root 1 with the uniform vector
        let a = nn(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let cert = perron_root(&a, 1e-12, 10_000).unwrap();
        assert!((cert.root - 1.0).abs() <= 1e-12);
        assert!((cert.vector.get(0) - 0.5).abs() <= 1e-12);
        assert!((cert.vector.get(1) - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn perron_certificates_are_sound_on_random_instances() {
        let mut rng = RngStream::new(1001);
        for _ in 0..25 {
            let dim = 1 + rng.next_below(16);
            let a = random_irreducible(&mut rng, dim);
            let cert = perron_root(&a, 1e-11, 200_000).unwrap();
            assert!(cert.lower <= cert.root && cert.root <= cert.upper);
            assert!(cert.upper - cert.lower <= 1e-11);
            assert!(cert.residual <= 1e-11);
            let min_entry = cert
                .vector
                .as_slice()
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min);
            assert!(min_entry > 0.0);
            // sampled Collatz-Wielandt maximality
            for _ in 0..20 {
                let x: Vec<f64> = (0..dim)
                    .map(|_| {
                        if rng.next_f64() < 0.3 {
                            0.0
                        } else {
                            rng.next_f64()
                        }
                    })
                    .collect();
                if x.iter().all(|&v| v == 0.0) {
                    continue;
                }
                let value = collatz_wielandt_value(&a, &x).unwrap();
                assert!(value <= cert.root + 1e-10);
            }
        }
    }

    #[test]
    fn perron_root_of_random_scan_matrix_is_one() {
        let mut rng = RngStream::new(1618);
        let mut w = SquareMatrix::zeros(4);
        for u in 0..4 {
            for v in (u + 1)..4 {
                let x = rng.next_range(-1.0, 1.0);
                w.set(u, v, x);
                w.set(v, u, x);
            }
        }
        let theta = (0..4).map(|_| rng.next_range(-1.0, 1.0)).collect();
        let m = BoltzmannMachine::new(w, theta).unwrap();
        let temp = Temperature::new(1.0).unwrap();
        let k = transition_matrix_random_scan(&m, temp).unwrap();
        let cert = perron_root(&NonNegMatrix::from(&k), 1e-13, 1_000_000).unwrap();
        assert!((cert.root - 1.0).abs() <= 1e-12);
        let exact = boltzmann_distribution(&m, temp).unwrap().pi;
        let tv = total_variation(cert.vector.as_slice(), exact.as_slice());
        assert!(tv <= 1e-8, "tv = {tv}");
    }

    #[test]
    fn perron_root_rejects_reducible_input() {
        let a = nn(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(matches!(
            perron_root(&a, 1e-10, 1000),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn stationary_of_doubly_stochastic_is_uniform() {
        let a = nn(&[
            vec![0.5, 0.25, 0.25],
            vec![0.25, 0.5, 0.25],
            vec![0.25, 0.25, 0.5],
        ]);
        let result = stationary_distribution(&a, 1e-12).unwrap();
        for i in 0..3 {
            assert!((result.pi.get(i) - 1.0 / 3.0).abs() <= 1e-10);
        }
        assert!((result.certificate.root - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn stationary_two_state_hand_solution() {
        let (p, q) = (0.15, 0.35);
        let a = nn(&[vec![1.0 - p, q], vec![p, 1.0 - q]]);
        let result = stationary_distribution(&a, 1e-12).unwrap();
        let z = p + q;
        assert!((result.pi.get(0) - q / z).abs() <= 1e-10);
        assert!((result.pi.get(1) - p / z).abs() <= 1e-10);
        // cross-check against the dense solver
        let cs = ColumnStochasticMatrix::new(a.matrix().clone()).unwrap();
        let brute = brute_force_stationary(&cs).unwrap();
        assert!(total_variation(result.pi.as_slice(), brute.as_slice()) <= 1e-10);
    }

    #[test]
    fn stationary_matches_boltzmann_and_brute_force() {
        let mut rng = RngStream::new(2718);
        for n in 2..=5usize {
            let mut w = SquareMatrix::zeros(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    let x = rng.next_range(-0.5, 0.5);
                    w.set(u, v, x);
                    w.set(v, u, x);
                }
            }
            let theta = (0..n).map(|_| rng.next_range(-0.3, 0.3)).collect();
            let m = BoltzmannMachine::new(w, theta).unwrap();
            let temp = Temperature::new(1.0).unwrap();
            let k = transition_matrix_random_scan(&m, temp).unwrap();
            let result = stationary_distribution(&NonNegMatrix::from(&k), 1e-12).unwrap();
            let direct = boltzmann_distribution(&m, temp).unwrap().pi;
            let brute = brute_force_stationary(&k).unwrap();
            assert!(total_variation(result.pi.as_slice(), direct.as_slice()) <= 1e-8);
            assert!(total_variation(result.pi.as_slice(), brute.as_slice()) <= 1e-8);
        }
    }

    #[test]
    fn stationary_rejects_non_stochastic_columns() {
        let a = nn(&[vec![0.5, 0.5], vec![0.4, 0.5]]);
        assert!(matches!(
            stationary_distribution(&a, 1e-10),
            Err(Error::NotStochastic { .. })
        ));
    }

    #[test]
    fn aperiodicity_witness_examples() {
        assert!(!aperiodicity_by_positive_diagonal(&nn(&[
            vec![0.0, 1.0],
            vec![1.0, 0.0]
        ])));
        assert!(aperiodicity_by_positive_diagonal(&nn(&[
            vec![0.5, 1.0],
            vec![0.5, 0.0]
        ])));
    }

    #[test]
    fn uniqueness_stress_trivial_and_boltzmann() {
        let mut rng = RngStream::new(33);
        let one = ColumnStochasticMatrix::new(SquareMatrix::identity(1)).unwrap();
        let report = uniqueness_stress(&one, 1e-12, 5, &mut rng).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_pairwise_tv, 0.0);

        let ps = [
            crate::network::NetworkState::from_spins(&[1, 1, -1, -1]).unwrap(),
            crate::network::NetworkState::from_spins(&[-1, 1, -1, 1]).unwrap(),
        ];
        let m = BoltzmannMachine::from(&crate::hopfield::hebbian(&ps).unwrap());
        let k = transition_matrix_random_scan(&m, Temperature::new(1.0).unwrap()).unwrap();
        let report = uniqueness_stress(&k, 1e-8, 20, &mut rng).unwrap();
        assert!(report.pass, "max pairwise tv {}", report.max_pairwise_tv);
    }

    #[test]
    fn uniqueness_stress_fails_on_periodic_chain() {
        let swap = ColumnStochasticMatrix::new(
            SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
        )
        .unwrap();
        let mut rng = RngStream::new(1);
        assert!(matches!(
            uniqueness_stress(&swap, 1e-8, 3, &mut rng),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn stationary_oracle_agreement_up_to_dim_64() {
        // random irreducible column-stochastic matrices, certified vector
        // against the dense kernel solver
        let mut rng = RngStream::new(64);
        for _ in 0..10 {
            let dim = 2 + rng.next_below(63);
            let raw = random_irreducible(&mut rng, dim);
            let mut m = raw.matrix().clone();
            for j in 0..dim {
                let sum = m.column_sum(j);
                for i in 0..dim {
                    m.set(i, j, m.get(i, j) / sum);
                }
            }
            let cs = ColumnStochasticMatrix::new(m).unwrap();
            let certified = stationary_distribution(&NonNegMatrix::from(&cs), 1e-12).unwrap();
            let brute = brute_force_stationary(&cs).unwrap();
            let tv = total_variation(certified.pi.as_slice(), brute.as_slice());
            assert!(tv <= 1e-8, "dim {dim}: tv = {tv}");
        }
    }
}
