//! Hopfield networks: symmetric loop-free weights over `{-1, +1}`, the
//! energy function that makes asynchronous updates converge, convergence
//! runners with the `n * 2^n` cyclic bound, and Hebbian storage of
//! pairwise-orthogonal patterns.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::network::{self, NetworkSpec, NetworkState, Params, Schedule};

/// Parameters of a Hopfield network: at least two neurons, symmetric
/// weights, zero diagonal, `{-1, +1}` activations.
#[derive(Clone, Debug)]
pub struct HopfieldParams {
    spec: NetworkSpec,
    params: Params,
}

impl HopfieldParams {
    pub fn new(w: SquareMatrix, theta: Vec<f64>) -> Result<Self> {
        let n = w.dim();
        if n < 2 {
            return Err(Error::TooFewNeurons { n, min: 2 });
        }
        for u in 0..n {
            if w.get(u, u) != 0.0 {
                return Err(Error::NonzeroDiagonal { u });
            }
            for v in (u + 1)..n {
                if w.get(u, v) != w.get(v, u) {
                    return Err(Error::NotSymmetric { u, v });
                }
            }
        }
        let spec = NetworkSpec::hopfield(n);
        let params = Params::new(&spec, w, theta)?;
        Ok(Self { spec, params })
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn spec(&self) -> &NetworkSpec {
        &self.spec
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn weights(&self) -> &SquareMatrix {
        self.params.weights()
    }

    pub fn thresholds(&self) -> &[f64] {
        self.params.thresholds()
    }
}

/// `-1/2 sum_{u != v} w[u][v] act_u act_v + sum_u theta_u act_u`,
/// shared by the Hopfield energy and the Boltzmann machine energy.
///
/// With integer weights and `{-1, +1}` activations every intermediate value
/// is an integer, so the result is exact in floating point.
pub(crate) fn quadratic_energy(w: &SquareMatrix, theta: &[f64], act: &[f64]) -> f64 {
    energy_weights_raw(w, act) + energy_thresholds_raw(theta, act)
}

pub(crate) fn energy_weights_raw(w: &SquareMatrix, act: &[f64]) -> f64 {
    let n = w.dim();
    let mut pair_sum = 0.0;
    for u in 0..n {
        let row = w.row(u);
        let au = act[u];
        for v in 0..n {
            if v != u {
                pair_sum += row[v] * au * act[v];
            }
        }
    }
    -0.5 * pair_sum
}

pub(crate) fn energy_thresholds_raw(theta: &[f64], act: &[f64]) -> f64 {
    theta.iter().zip(act).map(|(t, a)| t * a).sum()
}

/// The energy `E = Ew + Etheta` of a state.
pub fn energy(hp: &HopfieldParams, state: &NetworkState) -> f64 {
    quadratic_energy(hp.weights(), hp.thresholds(), state.act())
}

/// The pairwise-interaction part `Ew = -1/2 sum_{u != v} w[u][v] act_u act_v`.
pub fn energy_weights(hp: &HopfieldParams, state: &NetworkState) -> f64 {
    energy_weights_raw(hp.weights(), state.act())
}

/// The threshold part `Etheta = sum_u theta_u act_u`.
pub fn energy_thresholds(hp: &HopfieldParams, state: &NetworkState) -> f64 {
    energy_thresholds_raw(hp.thresholds(), state.act())
}

/// Closed-form energy difference of updating neuron `u`:
/// `(act_old - act_new) * (net_u - theta_u)`.
///
/// Equals `energy(update(s, u)) - energy(s)`; exactly so on integer-valued
/// instances.
pub fn delta_energy(hp: &HopfieldParams, state: &NetworkState, u: usize) -> f64 {
    let net = network::net_input(&hp.spec, &hp.params, state, u);
    let theta = hp.thresholds()[u];
    let old = state.get(u);
    let new = network::threshold_activation(hp.spec.domain(), net, theta);
    (old - new) * (net - theta)
}

/// Number of `+1` activations; the tie-breaking measure when energy is flat.
pub fn pluses(state: &NetworkState) -> usize {
    state.act().iter().filter(|&&a| a > 0.0).count()
}

/// Outcome of a convergence run.
///
/// `steps` counts single-neuron updates up to the first stable state (the
/// least `N` with `seq_states(init, N)` stable); `full_cycles` is the number
/// of complete `n`-update passes those steps span, so both step units are
/// available. The traces hold energy and pluses for every visited state
/// `s_0 ..= s_steps`.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub steps: u64,
    pub full_cycles: u64,
    pub final_state: NetworkState,
    pub energy_trace: Vec<f64>,
    pub pluses_trace: Vec<usize>,
}

/// Runs cyclic asynchronous updates until stability.
///
/// Convergence within `n * 2^n` single-neuron updates is guaranteed for
/// every input; exceeding the bound is reported as
/// [`Error::ConvergenceBoundViolation`], which signals a bug rather than a
/// user error.
pub fn run_to_convergence_cyclic(
    hp: &HopfieldParams,
    init: &NetworkState,
    order: &[usize],
) -> Result<ConvergenceReport> {
    let n = hp.n();
    let schedule = Schedule::cyclic(order.to_vec())?;
    schedule.validate_for(n)?;
    let bound = cyclic_bound(n);
    // Stability detection needs at most one extra covering window.
    match run_fair_inner(hp, init, &schedule, bound.saturating_add(n as u64)) {
        Ok(report) if report.steps <= bound => Ok(report),
        Ok(_) | Err(Error::MaxStepsExceeded { .. }) => {
            Err(Error::ConvergenceBoundViolation { n, bound })
        }
        Err(e) => Err(e),
    }
}

/// The `n * 2^n` update bound guaranteed for cyclic asynchronous updates.
pub fn cyclic_bound(n: usize) -> u64 {
    if n >= 57 {
        return u64::MAX;
    }
    (n as u64) << n
}

/// Runs asynchronous updates along an arbitrary schedule.
///
/// A state is declared stable once a covering window — every neuron updated
/// since the last change — produces no change; `steps` still reports the
/// index of the first stable state. Unfair schedules or too-small horizons
/// yield [`Error::MaxStepsExceeded`].
pub fn run_to_convergence_fair(
    hp: &HopfieldParams,
    init: &NetworkState,
    schedule: &Schedule,
    max_steps: u64,
) -> Result<ConvergenceReport> {
    schedule.validate_for(hp.n())?;
    run_fair_inner(hp, init, schedule, max_steps)
}

fn run_fair_inner(
    hp: &HopfieldParams,
    init: &NetworkState,
    schedule: &Schedule,
    max_updates: u64,
) -> Result<ConvergenceReport> {
    let n = hp.n();
    if init.len() != n {
        return Err(Error::DimensionMismatch {
            what: "state vector",
            expected: n,
            got: init.len(),
        });
    }
    let mut act = init.act().to_vec();
    let mut energy_trace = vec![quadratic_energy(hp.weights(), hp.thresholds(), &act)];
    let mut pluses_trace = vec![act.iter().filter(|&&a| a > 0.0).count()];

    let mut covered = vec![false; n];
    let mut covered_count = 0usize;
    let mut last_change: u64 = 0;
    let mut updates: u64 = 0;

    while covered_count < n {
        if updates >= max_updates {
            return Err(Error::MaxStepsExceeded {
                max_steps: max_updates,
            });
        }
        let u = schedule.neuron_at(n, updates);
        let changed = network::update_in_place(&hp.spec, &hp.params, &mut act, u);
        updates += 1;
        if changed {
            last_change = updates;
            covered.iter_mut().for_each(|c| *c = false);
            covered_count = 0;
        } else if !covered[u] {
            covered[u] = true;
            covered_count += 1;
        }
        energy_trace.push(quadratic_energy(hp.weights(), hp.thresholds(), &act));
        pluses_trace.push(act.iter().filter(|&&a| a > 0.0).count());
    }

    // Everything past the last change is flat verification noise; the
    // reported trajectory ends at the first stable state.
    energy_trace.truncate(last_change as usize + 1);
    pluses_trace.truncate(last_change as usize + 1);
    Ok(ConvergenceReport {
        steps: last_change,
        full_cycles: last_change.div_ceil(n as u64),
        final_state: NetworkState::from_acts_unchecked(act),
        energy_trace,
        pluses_trace,
    })
}

/// Hebbian storage: `W = sum_i p_i p_i^T - m I`, thresholds zero.
///
/// Accepts any `{-1, +1}` patterns of a common length `n >= 2`; exact
/// stability of every pattern is guaranteed only for pairwise-orthogonal
/// patterns with `m < n`. The degenerate `m = n` case is accepted — then
/// `W p_j = 0` and stability hinges on the tie rule `net = 0 >= 0 -> +1`.
pub fn hebbian(patterns: &[NetworkState]) -> Result<HopfieldParams> {
    let m = patterns.len();
    if m == 0 {
        return Err(Error::DimensionMismatch {
            what: "pattern list",
            expected: 1,
            got: 0,
        });
    }
    let n = patterns[0].len();
    if n < 2 {
        return Err(Error::TooFewNeurons { n, min: 2 });
    }
    for p in patterns {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                what: "pattern",
                expected: n,
                got: p.len(),
            });
        }
        if let Some((index, &value)) = p
            .act()
            .iter()
            .enumerate()
            .find(|(_, &a)| a != 1.0 && a != -1.0)
        {
            return Err(Error::InvalidActivation {
                index,
                value,
                lo: -1.0,
                hi: 1.0,
            });
        }
    }
    let mut w = SquareMatrix::zeros(n);
    for p in patterns {
        let a = p.act();
        for u in 0..n {
            for v in 0..n {
                w.set(u, v, w.get(u, v) + a[u] * a[v]);
            }
        }
    }
    for u in 0..n {
        w.set(u, u, w.get(u, u) - m as f64);
    }
    HopfieldParams::new(w, vec![0.0; n])
}

/// True when all distinct pattern pairs have zero dot product.
pub fn check_pairwise_orthogonal(patterns: &[NetworkState]) -> bool {
    for i in 0..patterns.len() {
        for j in (i + 1)..patterns.len() {
            let dot: f64 = patterns[i]
                .act()
                .iter()
                .zip(patterns[j].act())
                .map(|(a, b)| a * b)
                .sum();
            if dot != 0.0 {
                return false;
            }
        }
    }
    true
}

/// Is the pattern a fixed point of the dynamics?
pub fn verify_pattern_stable(hp: &HopfieldParams, pattern: &NetworkState) -> bool {
    pattern.len() == hp.n() && network::is_stable(&hp.spec, &hp.params, pattern)
}
