//! Exhaustive enumeration of the `2^n` state space: the exact Boltzmann
//! distribution, the exact random-scan transition matrix, and the
//! detailed-balance / invariance / stationary-vector ground truths that the
//! stochastic dynamics and the spectral toolkit are checked against.
//!
//! States are indexed little-endian: bit `i` of the index is set iff
//! `act_i = +1`, so neuron 0 is the least significant bit. The encoding is
//! frozen; golden files and report indices depend on it.

use crate::error::{Error, Result};
use crate::gibbs::{conditional_prob_plus, BoltzmannMachine, Temperature};
use crate::matrix::SquareMatrix;
use crate::network::NetworkState;
use nalgebra::DMatrix;

/// Largest `n` for which distribution vectors (length `2^n`) are built.
pub const MAX_TALLY_NEURONS: usize = 20;
/// Largest `n` for which dense `2^n x 2^n` transition matrices are built.
pub const MAX_MATRIX_NEURONS: usize = 12;
/// Largest state count for the dense stationary-vector solver.
pub const MAX_SOLVER_STATES: usize = 1 << 12;

/// Index of a `{-1, +1}` state: bit `i` set iff `act_i = +1`.
pub fn encode(state: &NetworkState) -> usize {
    state
        .act()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0.0)
        .fold(0usize, |acc, (i, _)| acc | 1usize << i)
}

/// Inverse of [`encode`] for `n` neurons.
pub fn decode(index: usize, n: usize) -> NetworkState {
    let act = (0..n)
        .map(|i| if index >> i & 1 == 1 { 1.0 } else { -1.0 })
        .collect();
    NetworkState::from_acts_unchecked(act)
}

/// A distribution over enumerated states: non-negative entries summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if let Some((i, &v)) = p.iter().enumerate().find(|(_, &v)| v.is_nan() || v < 0.0) {
            return Err(Error::InvalidProbabilityVector {
                reason: format!("entry {i} = {v} is negative or NaN"),
            });
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidProbabilityVector {
                reason: format!("entries sum to {sum}"),
            });
        }
        Ok(Self(p))
    }

    pub fn uniform(len: usize) -> Self {
        Self(vec![1.0 / len as f64; len])
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

/// A transition operator in the column convention: `A[i][j]` is the
/// probability of moving from state `j` to state `i`, so every column is a
/// distribution.
#[derive(Clone, Debug)]
pub struct ColumnStochasticMatrix(SquareMatrix);

impl ColumnStochasticMatrix {
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
        for j in 0..k {
            let sum = a.column_sum(j);
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::NotStochastic { column: j, sum });
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

    /// One step of the chain on a distribution: `p' = A p`.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        self.0.matvec(p)
    }
}

/// The exact Boltzmann distribution together with its partition constant.
#[derive(Clone, Debug)]
pub struct BoltzmannExact {
    pub pi: ProbabilityVector,
    /// `c = sum_y exp(-E(y) / T)`.
    pub partition: f64,
}

/// Enumerates all `2^n` states and normalizes `exp(-E/T)`, shifting by the
/// maximum exponent so the normalization never overflows.
pub fn boltzmann_distribution(m: &BoltzmannMachine, t: Temperature) -> Result<BoltzmannExact> {
    let n = m.n();
    if n > MAX_TALLY_NEURONS {
        return Err(Error::StateSpaceTooLarge {
            n,
            max: MAX_TALLY_NEURONS,
        });
    }
    let size = 1usize << n;
    let exponents: Vec<f64> = (0..size)
        .map(|idx| -m.energy(&decode(idx, n)) / t.value())
        .collect();
    let shift = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = exponents.iter().map(|e| (e - shift).exp()).collect();
    let total: f64 = weights.iter().sum();
    let pi = ProbabilityVector::new(weights.iter().map(|w| w / total).collect())?;
    Ok(BoltzmannExact {
        pi,
        partition: total * shift.exp(),
    })
}

/// The exact random-scan kernel as a dense column-stochastic matrix:
/// column `j` is the one-step distribution out of state `j`, mixing the `n`
/// single-site Gibbs conditionals with weight `1/n` each; all no-change
/// mass accumulates on the diagonal.
pub fn transition_matrix_random_scan(
    m: &BoltzmannMachine,
    t: Temperature,
) -> Result<ColumnStochasticMatrix> {
    let n = m.n();
    if n > MAX_MATRIX_NEURONS {
        return Err(Error::StateSpaceTooLarge {
            n,
            max: MAX_MATRIX_NEURONS,
        });
    }
    let size = 1usize << n;
    let site_weight = 1.0 / n as f64;
    let mut a = SquareMatrix::zeros(size);
    for j in 0..size {
        let state = decode(j, n);
        for u in 0..n {
            let p_plus = conditional_prob_plus(m, &state, u, t).p_plus();
            let up = j | 1usize << u;
            let down = j & !(1usize << u);
            a.set(up, j, a.get(up, j) + site_weight * p_plus);
            a.set(down, j, a.get(down, j) + site_weight * (1.0 - p_plus));
        }
    }
    ColumnStochasticMatrix::new(a)
}

/// Result of a detailed-balance scan over all state pairs.
#[derive(Clone, Debug)]
pub struct BalanceReport {
    /// `max_{i,j} |pi_j A_ij - pi_i A_ji|`.
    pub max_residual: f64,
    pub worst_pair: (usize, usize),
    pub tol: f64,
    pub pass: bool,
}

/// Checks the finite-state detailed balance condition
/// `pi_j A_ij = pi_i A_ji` for all pairs.
pub fn detailed_balance_check(
    pi: &ProbabilityVector,
    a: &ColumnStochasticMatrix,
    tol: f64,
) -> BalanceReport {
    debug_assert_eq!(pi.len(), a.dim());
    let k = a.dim();
    let mut max_residual = 0.0;
    let mut worst_pair = (0, 0);
    for i in 0..k {
        for j in 0..k {
            let r = (pi.get(j) * a.get(i, j) - pi.get(i) * a.get(j, i)).abs();
            if r > max_residual {
                max_residual = r;
                worst_pair = (i, j);
            }
        }
    }
    BalanceReport {
        max_residual,
        worst_pair,
        tol,
        pass: max_residual <= tol,
    }
}

/// Result of an invariance check `A pi = pi`.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// `||A pi - pi||_inf`.
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

pub fn invariance_check(
    pi: &ProbabilityVector,
    a: &ColumnStochasticMatrix,
    tol: f64,
) -> InvarianceReport {
    debug_assert_eq!(pi.len(), a.dim());
    let api = a.apply(pi.as_slice());
    let residual = api
        .iter()
        .zip(pi.as_slice())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    InvarianceReport {
        residual,
        tol,
        pass: residual <= tol,
    }
}

/// Total variation distance `1/2 sum_i |p_i - q_i|`, in `[0, 1]` for
/// distributions.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "total variation needs equal lengths");
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Independent stationary-vector oracle: solves `(A - I)v = 0` by dense
/// SVD, keeping the kernel vector, and fails with [`Error::NotUnique`] when
/// the kernel is more than one-dimensional (reducible input).
///
/// The returned vector is verified to satisfy `||A v - v||_inf <= 1e-10`.
pub fn brute_force_stationary(a: &ColumnStochasticMatrix) -> Result<ProbabilityVector> {
    let k = a.dim();
    if k > MAX_SOLVER_STATES {
        return Err(Error::StateSpaceTooLarge {
            n: k.ilog2() as usize,
            max: MAX_SOLVER_STATES.ilog2() as usize,
        });
    }
    let m = DMatrix::from_fn(k, k, |i, j| a.get(i, j) - if i == j { 1.0 } else { 0.0 });
    let svd = m.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    // (A - I) always has a nontrivial kernel for column-stochastic A; more
    // than one near-zero singular value means the chain is reducible.
    let rank_tol = 1e-9;
    let near_zero = svd
        .singular_values
        .iter()
        .filter(|&&s| s < rank_tol)
        .count();
    if near_zero != 1 {
        return Err(Error::NotUnique {
            kernel_dim: near_zero,
        });
    }
    let (min_idx, _) =
        svd.singular_values
            .iter()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |(bi, bs), (i, &s)| {
                    if s < bs {
                        (i, s)
                    } else {
                        (bi, bs)
                    }
                },
            );
    let mut v: Vec<f64> = v_t.row(min_idx).iter().cloned().collect();
    let sum: f64 = v.iter().sum();
    if sum < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let max_abs = v.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if v.iter().any(|&x| x < -1e-8 * max_abs) {
        // a genuinely signed kernel vector cannot be a distribution
        return Err(Error::InvalidProbabilityVector {
            reason: "kernel vector has a significantly negative entry".into(),
        });
    }
    v.iter_mut().for_each(|x| *x = x.max(0.0));
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    let residual = a
        .apply(&v)
        .iter()
        .zip(&v)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if residual > 1e-10 {
        return Err(Error::ResidualTooLarge {
            residual,
            tol: 1e-10,
        });
    }
    ProbabilityVector::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfield::hebbian;
    use crate::rng::RngStream;

    fn t(v: f64) -> Temperature {
        Temperature::new(v).unwrap()
    }

    fn random_machine(rng: &mut RngStream, n: usize, scale: f64) -> BoltzmannMachine {
        let mut w = SquareMatrix::zeros(n);
        for u in 0..n {
            for v in (u + 1)..n {
                let x = rng.next_range(-scale, scale);
                w.set(u, v, x);
                w.set(v, u, x);
            }
        }
        let theta = (0..n).map(|_| rng.next_range(-scale, scale)).collect();
        BoltzmannMachine::new(w, theta).unwrap()
    }

    #[test]
    fn encode_decode_roundtrip() {
        for n in 1..=12usize {
            for idx in 0..(1usize << n) {
                let s = decode(idx, n);
                assert_eq!(encode(&s), idx);
            }
        }
        // bit 0 is neuron 0
        let s = decode(0b101, 3);
        assert_eq!(s.act(), &[1.0, -1.0, 1.0]);
    }

    #[test]
    fn zero_energy_landscape_gives_uniform_distribution() {
        let m = BoltzmannMachine::new(SquareMatrix::zeros(4), vec![0.0; 4]).unwrap();
        let exact = boltzmann_distribution(&m, t(1.0)).unwrap();
        for i in 0..16 {
            assert_eq!(exact.pi.get(i), 1.0 / 16.0);
        }
        assert!((exact.partition - 16.0).abs() < 1e-9);
    }

    #[test]
    fn single_site_distribution_matches_hand_partition_function() {
        // theta_0 = t0: E(+1) = t0, E(-1) = -t0, so p(+1) = 1/(1 + e^{2 t0/T})
        let t0 = 0.9;
        let m = BoltzmannMachine::new(SquareMatrix::zeros(1), vec![t0]).unwrap();
        let temp = 1.7;
        let exact = boltzmann_distribution(&m, t(temp)).unwrap();
        let want_up = 1.0 / (1.0 + (2.0 * t0 / temp).exp());
        assert!((exact.pi.get(1) - want_up).abs() < 1e-15);
        assert!((exact.pi.get(0) - (1.0 - want_up)).abs() < 1e-15);
    }

    #[test]
    fn infinite_temperature_limit_is_uniform() {
        // TV from uniform is at most (energy spread) / (2 T); instances are
        // kept small so 1e-6 holds with margin at T = 1e6.
        let mut rng = RngStream::new(88);
        for _ in 0..5 {
            let n = 1 + rng.next_below(4);
            let m = random_machine(&mut rng, n, 0.05);
            let exact = boltzmann_distribution(&m, t(1e6)).unwrap();
            let uniform = vec![1.0 / (1 << n) as f64; 1 << n];
            assert!(total_variation(exact.pi.as_slice(), &uniform) <= 1e-6);
        }
    }

    #[test]
    fn transition_matrix_single_site() {
        let t0 = 0.4;
        let m = BoltzmannMachine::new(SquareMatrix::zeros(1), vec![t0]).unwrap();
        let temp = 1.1;
        let k = transition_matrix_random_scan(&m, t(temp)).unwrap();
        let s_down = decode(0, 1);
        let p_plus = conditional_prob_plus(&m, &s_down, 0, t(temp)).p_plus();
        // both columns resample the single site identically
        for j in 0..2 {
            assert!((k.get(1, j) - p_plus).abs() < 1e-15);
            assert!((k.get(0, j) - (1.0 - p_plus)).abs() < 1e-15);
        }
    }

    #[test]
    fn transition_matrix_is_single_flip_local_with_positive_diagonal() {
        let mut rng = RngStream::new(99);
        for _ in 0..5 {
            let n = 2 + rng.next_below(4);
            let m = random_machine(&mut rng, n, 2.0);
            let temp = t(rng.next_range(0.5, 3.0));
            let k = transition_matrix_random_scan(&m, temp).unwrap();
            let size = 1usize << n;
            for j in 0..size {
                let state = decode(j, n);
                // diagonal dominates the per-site stay bound
                let mut stay_bound = 0.0;
                for u in 0..n {
                    let p = conditional_prob_plus(&m, &state, u, temp).p_plus();
                    stay_bound += p.min(1.0 - p) / n as f64;
                }
                assert!(k.get(j, j) >= stay_bound - 1e-15);
                assert!(k.get(j, j) > 0.0);
                for i in 0..size {
                    let hamming = (i ^ j).count_ones();
                    if hamming >= 2 {
                        assert_eq!(k.get(i, j), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn uniform_pi_with_symmetric_kernel_balances_exactly() {
        // symmetric doubly stochastic kernel: residual is exactly zero
        let a = ColumnStochasticMatrix::new(
            SquareMatrix::from_rows(&[vec![0.7, 0.3], vec![0.3, 0.7]]).unwrap(),
        )
        .unwrap();
        let pi = ProbabilityVector::uniform(2);
        let report = detailed_balance_check(&pi, &a, 1e-15);
        assert_eq!(report.max_residual, 0.0);
        assert!(report.pass);
    }

    #[test]
    fn boltzmann_kernel_satisfies_detailed_balance_and_invariance() {
        let mut rng = RngStream::new(4242);
        for _ in 0..6 {
            let n = 1 + rng.next_below(6);
            let m = random_machine(&mut rng, n, 1.5);
            let temp = t([0.5, 1.0, 2.0][rng.next_below(3)]);
            let k = transition_matrix_random_scan(&m, temp).unwrap();
            let pi = boltzmann_distribution(&m, temp).unwrap().pi;
            let balance = detailed_balance_check(&pi, &k, 1e-12);
            assert!(balance.pass, "residual {}", balance.max_residual);
            let invariance = invariance_check(&pi, &k, 1e-12);
            assert!(invariance.pass, "residual {}", invariance.residual);
        }
    }

    #[test]
    fn temperature_mismatch_breaks_detailed_balance() {
        let mut rng = RngStream::new(12);
        let m = random_machine(&mut rng, 3, 1.5);
        let k = transition_matrix_random_scan(&m, t(1.0)).unwrap();
        let pi_wrong = boltzmann_distribution(&m, t(2.0)).unwrap().pi;
        let report = detailed_balance_check(&pi_wrong, &k, 1e-12);
        assert!(!report.pass, "mismatched temperatures must not balance");
        assert!(report.max_residual > 1e-6);
    }

    #[test]
    fn invariance_examples_and_negative_control() {
        let id = ColumnStochasticMatrix::new(SquareMatrix::identity(3)).unwrap();
        let pi = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let report = invariance_check(&pi, &id, 0.0);
        assert_eq!(report.residual, 0.0);
        assert!(report.pass);

        // biased two-state chain: uniform is not invariant
        let biased = ColumnStochasticMatrix::new(
            SquareMatrix::from_rows(&[vec![0.9, 0.5], vec![0.1, 0.5]]).unwrap(),
        )
        .unwrap();
        let uniform = ProbabilityVector::uniform(2);
        assert!(!invariance_check(&uniform, &biased, 1e-12).pass);
    }

    #[test]
    fn total_variation_examples() {
        assert_eq!(total_variation(&[0.5, 0.5], &[0.5, 0.5]), 0.0);
        assert_eq!(total_variation(&[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert!((total_variation(&[0.6, 0.4], &[0.5, 0.5]) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn stationary_oracle_rejects_reducible_chains() {
        let id = ColumnStochasticMatrix::new(SquareMatrix::identity(2)).unwrap();
        assert!(matches!(
            brute_force_stationary(&id),
            Err(Error::NotUnique { kernel_dim: 2 })
        ));
    }

    #[test]
    fn stationary_oracle_two_state_hand_solution() {
        let (a_prob, b_prob) = (0.3, 0.45);
        let a = ColumnStochasticMatrix::new(
            SquareMatrix::from_rows(&[vec![1.0 - a_prob, b_prob], vec![a_prob, 1.0 - b_prob]])
                .unwrap(),
        )
        .unwrap();
        let pi = brute_force_stationary(&a).unwrap();
        let z = a_prob + b_prob;
        assert!((pi.get(0) - b_prob / z).abs() < 1e-12);
        assert!((pi.get(1) - a_prob / z).abs() < 1e-12);
    }

    #[test]
    fn stationary_oracle_agrees_with_boltzmann_distribution() {
        let mut rng = RngStream::new(777);
        for _ in 0..4 {
            let n = 2 + rng.next_below(3);
            let m = random_machine(&mut rng, n, 1.0);
            let temp = t(1.0);
            let k = transition_matrix_random_scan(&m, temp).unwrap();
            let direct = boltzmann_distribution(&m, temp).unwrap().pi;
            let solved = brute_force_stationary(&k).unwrap();
            let tv = total_variation(direct.as_slice(), solved.as_slice());
            assert!(tv <= 1e-8, "tv = {tv}");
        }
    }

    #[test]
    fn probability_vector_validation() {
        assert!(ProbabilityVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilityVector::new(vec![0.6, 0.5]).is_err());
        assert!(ProbabilityVector::new(vec![-0.1, 1.1]).is_err());
    }

    #[test]
    fn column_stochastic_validation() {
        let good = SquareMatrix::from_rows(&[vec![0.2, 0.7], vec![0.8, 0.3]]).unwrap();
        assert!(ColumnStochasticMatrix::new(good).is_ok());
        let bad_sum = SquareMatrix::from_rows(&[vec![0.2, 0.7], vec![0.7, 0.3]]).unwrap();
        assert!(matches!(
            ColumnStochasticMatrix::new(bad_sum),
            Err(Error::NotStochastic { column: 0, .. })
        ));
        let negative = SquareMatrix::from_rows(&[vec![1.2, 0.0], vec![-0.2, 1.0]]).unwrap();
        assert!(matches!(
            ColumnStochasticMatrix::new(negative),
            Err(Error::NegativeEntry { .. })
        ));
    }

    #[test]
    fn size_guards() {
        let n = 21;
        let m = BoltzmannMachine::new(SquareMatrix::zeros(n), vec![0.0; n]).unwrap();
        assert!(matches!(
            boltzmann_distribution(&m, t(1.0)),
            Err(Error::StateSpaceTooLarge { .. })
        ));
        let n2 = 13;
        let m2 = BoltzmannMachine::new(SquareMatrix::zeros(n2), vec![0.0; n2]).unwrap();
        assert!(matches!(
            transition_matrix_random_scan(&m2, t(1.0)),
            Err(Error::StateSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn detailed_balance_implies_invariance_on_generated_instances() {
        let mut rng = RngStream::new(31415);
        for _ in 0..5 {
            let n = 1 + rng.next_below(5);
            let m = random_machine(&mut rng, n, 1.0);
            let temp = t(rng.next_range(0.5, 2.0));
            let k = transition_matrix_random_scan(&m, temp).unwrap();
            let pi = boltzmann_distribution(&m, temp).unwrap().pi;
            let tol = 1e-13;
            let balance = detailed_balance_check(&pi, &k, tol);
            if balance.pass {
                let inv = invariance_check(&pi, &k, (1usize << n) as f64 * tol);
                assert!(inv.pass);
            }
        }
    }

    #[test]
    fn hebbian_pair_distribution_levels() {
        // the four stored/complement states share the lowest energy level
        let ps = [
            NetworkState::from_spins(&[1, 1, -1, -1]).unwrap(),
            NetworkState::from_spins(&[-1, 1, -1, 1]).unwrap(),
        ];
        let m = BoltzmannMachine::from(&hebbian(&ps).unwrap());
        let exact = boltzmann_distribution(&m, t(1.0)).unwrap();
        let p_attractor = exact.pi.get(encode(&ps[0]));
        for s in &ps {
            assert!((exact.pi.get(encode(s)) - p_attractor).abs() < 1e-15);
        }
        let top = exact.pi.as_slice().iter().cloned().fold(0.0_f64, f64::max);
        assert_eq!(top, p_attractor);
    }
}
