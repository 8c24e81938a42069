//! Stochastic single-site dynamics for Boltzmann machines.
//!
//! A Boltzmann machine shares the Hopfield energy; each update resamples one
//! site from its exact conditional distribution given the rest. Writing
//! `E+` and `E-` for the energies with site `u` forced to `+1` / `-1`, the
//! conditional is
//!
//! `P(act_u = +1) = exp(-E+/T) / (exp(-E+/T) + exp(-E-/T))`
//!
//! which, since `E+ - E- = -2 (net_u - theta_u)`, collapses to the
//! overflow-safe logistic form `1 / (1 + exp(-2 L / T))` in the local field
//! `L = net_u - theta_u`. As `T -> 0` the update becomes the deterministic
//! threshold rule.

use crate::error::{Error, Result};
use crate::hopfield::{self, HopfieldParams};
use crate::matrix::SquareMatrix;
use crate::network::NetworkState;
use crate::oracle::{self, ProbabilityVector};
use crate::rng::RngStream;

/// Strictly positive temperature (Boltzmann's constant absorbed).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::InvalidTemperature { t });
        }
        Ok(Self(t))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// The conditional distribution of one site: `p_plus` for `+1`,
/// `1 - p_plus` for `-1`. Storing a single probability makes the pair
/// normalize exactly by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiteDistribution {
    p_plus: f64,
}

impl SiteDistribution {
    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn p_minus(&self) -> f64 {
        1.0 - self.p_plus
    }
}

/// A stochastic two-state network: symmetric weights, zero diagonal,
/// `{-1, +1}` activations. Unlike [`HopfieldParams`] a single site is
/// allowed, so exhaustive desk-scale checks can start at `n = 1`.
#[derive(Clone, Debug)]
pub struct BoltzmannMachine {
    w: SquareMatrix,
    theta: Vec<f64>,
}

impl BoltzmannMachine {
    pub fn new(w: SquareMatrix, theta: Vec<f64>) -> Result<Self> {
        let n = w.dim();
        if n == 0 {
            return Err(Error::TooFewNeurons { n, min: 1 });
        }
        if theta.len() != n {
            return Err(Error::DimensionMismatch {
                what: "threshold vector",
                expected: n,
                got: theta.len(),
            });
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
        Ok(Self { w, theta })
    }

    pub fn n(&self) -> usize {
        self.w.dim()
    }

    pub fn weights(&self) -> &SquareMatrix {
        &self.w
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.theta
    }

    /// Energy of a `{-1, +1}` state, identical to the Hopfield energy.
    pub fn energy(&self, state: &NetworkState) -> f64 {
        hopfield::quadratic_energy(&self.w, &self.theta, state.act())
    }

    pub(crate) fn net_input(&self, act: &[f64], u: usize) -> f64 {
        let row = self.w.row(u);
        let mut acc = 0.0;
        for (v, (&w, &a)) in row.iter().zip(act).enumerate() {
            if v != u {
                acc += w * a;
            }
        }
        acc
    }

    fn check_site(&self, state: &NetworkState, u: usize) -> Result<()> {
        if state.len() != self.n() {
            return Err(Error::DimensionMismatch {
                what: "state vector",
                expected: self.n(),
                got: state.len(),
            });
        }
        if u >= self.n() {
            return Err(Error::NeuronOutOfRange { u, n: self.n() });
        }
        Ok(())
    }
}

impl From<&HopfieldParams> for BoltzmannMachine {
    fn from(hp: &HopfieldParams) -> Self {
        Self {
            w: hp.weights().clone(),
            theta: hp.thresholds().to_vec(),
        }
    }
}

/// The local field `net_u - theta_u`, whose sign drives both the
/// deterministic and the stochastic update.
pub fn local_field(m: &BoltzmannMachine, state: &NetworkState, u: usize) -> f64 {
    m.net_input(state.act(), u) - m.thresholds()[u]
}

/// Exact Gibbs conditional for site `u`, in the logistic form
/// `p_plus = 1 / (1 + exp(-2 L / T))`.
pub fn conditional_prob_plus(
    m: &BoltzmannMachine,
    state: &NetworkState,
    u: usize,
    t: Temperature,
) -> SiteDistribution {
    let field = local_field(m, state, u);
    SiteDistribution {
        p_plus: 1.0 / (1.0 + (-2.0 * field / t.value()).exp()),
    }
}

/// Resamples site `u` from its Gibbs conditional: one uniform draw `x`,
/// then `+1` iff `x <= p_plus`. Other sites are untouched.
pub fn gibbs_site_update(
    m: &BoltzmannMachine,
    state: &NetworkState,
    u: usize,
    t: Temperature,
    rng: &mut RngStream,
) -> Result<NetworkState> {
    m.check_site(state, u)?;
    let p_plus = conditional_prob_plus(m, state, u, t).p_plus();
    let x = rng.next_f64();
    let mut act = state.act().to_vec();
    act[u] = if x <= p_plus { 1.0 } else { -1.0 };
    Ok(NetworkState::from_acts_unchecked(act))
}

/// One step of the random-scan kernel: the site is drawn uniformly (one rng
/// draw), then updated by the Gibbs conditional (a second draw). The draw
/// order — site first, then acceptance uniform — is fixed so trajectories
/// reproduce across implementations.
pub fn random_scan_step(
    m: &BoltzmannMachine,
    state: &NetworkState,
    t: Temperature,
    rng: &mut RngStream,
) -> Result<NetworkState> {
    let u = rng.next_below(m.n());
    gibbs_site_update(m, state, u, t, rng)
}

/// Runs the chain without tallying; available for any `n`.
pub fn run_chain(
    m: &BoltzmannMachine,
    init: &NetworkState,
    t: Temperature,
    steps: u64,
    rng: &mut RngStream,
) -> Result<NetworkState> {
    let mut state = init.clone();
    for _ in 0..steps {
        state = random_scan_step(m, &state, t, rng)?;
    }
    Ok(state)
}

/// Outcome of a tallied chain run.
#[derive(Clone, Debug)]
pub struct ChainSample {
    /// Empirical distribution over the enumerated state space.
    pub empirical: ProbabilityVector,
    pub final_state: NetworkState,
    /// Number of states that entered the tally.
    pub tallied: u64,
}

/// Runs `steps` random-scan steps and tallies the visited states (after
/// `burn_in`, every `thin`-th) into an empirical distribution over the
/// `2^n` state space.
///
/// Tallying needs `n <= 20`; use [`run_chain`] beyond that.
pub fn sample_chain(
    m: &BoltzmannMachine,
    init: &NetworkState,
    t: Temperature,
    steps: u64,
    burn_in: u64,
    thin: u64,
    rng: &mut RngStream,
) -> Result<ChainSample> {
    sample_chain_inner(m, init, t, steps, burn_in, thin, rng, None)
}

/// Like [`sample_chain`], also recording the state index after every step.
pub fn sample_chain_recorded(
    m: &BoltzmannMachine,
    init: &NetworkState,
    t: Temperature,
    steps: u64,
    burn_in: u64,
    thin: u64,
    rng: &mut RngStream,
) -> Result<(ChainSample, Vec<u32>)> {
    let mut trajectory = Vec::with_capacity(steps as usize);
    let sample = sample_chain_inner(m, init, t, steps, burn_in, thin, rng, Some(&mut trajectory))?;
    Ok((sample, trajectory))
}

#[allow(clippy::too_many_arguments)]
fn sample_chain_inner(
    m: &BoltzmannMachine,
    init: &NetworkState,
    t: Temperature,
    steps: u64,
    burn_in: u64,
    thin: u64,
    rng: &mut RngStream,
    mut trajectory: Option<&mut Vec<u32>>,
) -> Result<ChainSample> {
    let n = m.n();
    if n > oracle::MAX_TALLY_NEURONS {
        return Err(Error::StateSpaceTooLarge {
            n,
            max: oracle::MAX_TALLY_NEURONS,
        });
    }
    if thin == 0 {
        return Err(Error::ZeroThin);
    }
    if steps <= burn_in {
        return Err(Error::EmptyTally { steps, burn_in });
    }
    let mut state = init.clone();
    let mut counts = vec![0u64; 1usize << n];
    let mut tallied = 0u64;
    for step in 1..=steps {
        state = random_scan_step(m, &state, t, rng)?;
        let idx = oracle::encode(&state);
        if let Some(traj) = trajectory.as_deref_mut() {
            traj.push(idx as u32);
        }
        if step > burn_in && (step - burn_in).is_multiple_of(thin) {
            counts[idx] += 1;
            tallied += 1;
        }
    }
    let empirical =
        ProbabilityVector::new(counts.iter().map(|&c| c as f64 / tallied as f64).collect())?;
    Ok(ChainSample {
        empirical,
        final_state: state,
        tallied,
    })
}

/// The zero-temperature limit of the Gibbs update: the deterministic
/// threshold rule with ties going to `+1`.
pub fn zero_temp_update(m: &BoltzmannMachine, state: &NetworkState, u: usize) -> NetworkState {
    let field = local_field(m, state, u);
    let mut act = state.act().to_vec();
    act[u] = if field >= 0.0 { 1.0 } else { -1.0 };
    NetworkState::from_acts_unchecked(act)
}

/// How the conditional approaches its zero-temperature limit along a
/// decreasing temperature ladder.
#[derive(Clone, Debug)]
pub struct LimitCheck {
    /// 1 when the local field is positive, 0 when negative.
    pub limit: f64,
    /// `(T, |p_plus(T) - limit|)` per ladder entry.
    pub gaps: Vec<(f64, f64)>,
    /// Non-increasing, and strictly decreasing until the gap saturates at 0.
    pub monotone: bool,
}

/// Evaluates `|p_plus(T) - limit|` along a strictly decreasing temperature
/// ladder. Sites with zero local field are rejected with [`Error::TieSite`]:
/// there the Gibbs limit is 1/2, not the deterministic value.
pub fn zero_temp_limit_check(
    m: &BoltzmannMachine,
    state: &NetworkState,
    u: usize,
    temperatures: &[f64],
) -> Result<LimitCheck> {
    m.check_site(state, u)?;
    if temperatures.is_empty()
        || temperatures.iter().any(|&t| !t.is_finite() || t <= 0.0)
        || temperatures.windows(2).any(|w| w[0] <= w[1])
    {
        return Err(Error::InvalidTemperatureLadder);
    }
    let field = local_field(m, state, u);
    if field == 0.0 {
        return Err(Error::TieSite { site: u });
    }
    let limit = if field > 0.0 { 1.0 } else { 0.0 };
    let gaps: Vec<(f64, f64)> = temperatures
        .iter()
        .map(|&t| {
            let p = conditional_prob_plus(m, state, u, Temperature::new(t).expect("validated"));
            (t, (p.p_plus() - limit).abs())
        })
        .collect();
    let monotone = gaps
        .windows(2)
        .all(|w| w[1].1 <= w[0].1 && (w[1].1 < w[0].1 || w[1].1 == 0.0));
    Ok(LimitCheck {
        limit,
        gaps,
        monotone,
    })
}
