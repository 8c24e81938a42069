//! The acceptance suite: one function per criterion, each returning a
//! pass/fail result with measured numbers in the details string. The CLI
//! `verify` command and the `acceptance` integration test both run these.
//!
//! Every criterion is deterministic: all randomness flows from fixed
//! `RngStream` seeds, so two runs produce identical outcomes.

use std::path::Path;
use std::time::Instant;

use crate::error::Error;
use crate::gibbs::{
    conditional_prob_plus, local_field, sample_chain_recorded, zero_temp_limit_check,
    zero_temp_update, BoltzmannMachine, Temperature,
};
use crate::hopfield::{
    check_pairwise_orthogonal, cyclic_bound, delta_energy, energy, hebbian, pluses,
    run_to_convergence_cyclic, verify_pattern_stable, HopfieldParams,
};
use crate::io;
use crate::matrix::SquareMatrix;
use crate::network::{self, NetworkSpec, NetworkState, Params, TwoState};
use crate::oracle::{
    boltzmann_distribution, brute_force_stationary, detailed_balance_check, invariance_check,
    total_variation, transition_matrix_random_scan,
};
use crate::rng::RngStream;
use crate::spectral::{
    aperiodicity_by_positive_diagonal, collatz_wielandt_value, is_irreducible, perron_root,
    stationary_distribution, uniqueness_stress, NonNegMatrix,
};

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub passed: bool,
    pub details: String,
}

type Check = std::result::Result<String, String>;

const CRITERIA: &[(u32, &str, &[&str])] = &[
    (1, "three-neuron reference traces", &["network"]),
    (2, "cyclic convergence bound", &["hopfield"]),
    (3, "energy descent dichotomy", &["hopfield"]),
    (4, "pattern recall fixture", &["hopfield"]),
    (5, "orthogonal pattern spectrum", &["hopfield"]),
    (6, "detailed balance and invariance", &["oracle", "gibbs"]),
    (7, "ergodicity pipeline", &["spectral", "oracle"]),
    (8, "perron certificates", &["spectral"]),
    (9, "power-path equivalence", &["spectral"]),
    (10, "sampling accuracy and golden trajectory", &["gibbs"]),
    (11, "zero-temperature limit", &["gibbs"]),
];

/// All criterion ids, names, and tags.
pub fn criteria() -> &'static [(u32, &'static str, &'static [&'static str])] {
    CRITERIA
}

/// Runs one criterion; fixture problems surface as failures, not panics.
pub fn run_criterion(id: u32, fixtures: &Path) -> CriterionResult {
    let (name, tags) = CRITERIA
        .iter()
        .find(|(cid, _, _)| *cid == id)
        .map(|(_, n, t)| (*n, *t))
        .unwrap_or(("unknown criterion", &[]));
    let body: Check = match id {
        1 => criterion_1(fixtures),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(fixtures),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => Err(format!("no criterion with id {id}")),
    };
    match body {
        Ok(details) => CriterionResult {
            id,
            name,
            tags,
            passed: true,
            details,
        },
        Err(details) => CriterionResult {
            id,
            name,
            tags,
            passed: false,
            details,
        },
    }
}

/// Runs every criterion, optionally filtered by id or tag.
pub fn run_all(fixtures: &Path, only: Option<&str>) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter(|(id, _, tags)| match only {
            None => true,
            Some(f) => id.to_string() == f || tags.contains(&f),
        })
        .map(|(id, _, _)| run_criterion(*id, fixtures))
        .collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

// --- criterion 1: three-neuron reference traces -------------------------

fn criterion_1(fixtures: &Path) -> Check {
    let dir = fixtures.join("three_neuron");
    let (w, theta) = io::read_params(&dir.join("params.json")).map_err(err)?;
    check(theta == vec![1.0, 1.0, 1.0], || {
        format!("fixture thresholds {theta:?} drifted from the recovered (1, 1, 1)")
    })?;
    let spec = NetworkSpec::from_weight_support(&w, TwoState::binary());
    let params = Params::new(&spec, w, theta).map_err(err)?;
    let init = io::read_state(&dir.join("initial.txt"), TwoState::binary()).map_err(err)?;

    let started = Instant::now();
    let settled =
        network::work_phase(&spec, &params, &init, &[2, 0, 1, 2, 0, 1, 2]).map_err(err)?;
    let oscillated =
        network::work_phase(&spec, &params, &init, &[2, 1, 0, 2, 1, 0, 2]).map_err(err)?;
    let elapsed = started.elapsed();

    check(settled.act() == [0.0, 0.0, 0.0], || {
        format!(
            "order [2,0,1,...] reached {:?}, want [0, 0, 0]",
            settled.act()
        )
    })?;
    for u in 0..3 {
        let net = network::net_input(&spec, &params, &settled, u);
        check(net == 0.0, || format!("net_{u} = {net}, want 0"))?;
    }
    check(network::is_stable(&spec, &params, &settled), || {
        "settled state is not stable".into()
    })?;
    check(oscillated.act() == [1.0, 0.0, 0.0], || {
        format!(
            "order [2,1,0,...] reached {:?}, want the initial [1, 0, 0]",
            oscillated.act()
        )
    })?;
    let nets: Vec<f64> = (0..3)
        .map(|u| network::net_input(&spec, &params, &oscillated, u))
        .collect();
    check(nets == [0.0, 1.0, -2.0], || {
        format!("oscillating-order nets {nets:?}, want [0, 1, -2]")
    })?;
    check(elapsed.as_micros() < 1000, || {
        format!("traces took {elapsed:?}, want < 1 ms")
    })?;
    Ok(format!(
        "both traces exact (integer match), runtime {:?}",
        elapsed
    ))
}

// --- criteria 2 and 3: exhaustive cyclic sweep ---------------------------

const SWEEP_SEED: u64 = 0xC0FFEE;
const SWEEP_INSTANCES_PER_N: usize = 50;

fn sweep_instance(rng: &mut RngStream, n: usize) -> HopfieldParams {
    let mut w = SquareMatrix::zeros(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let x = rng.next_int(-3, 3) as f64;
            w.set(u, v, x);
            w.set(v, u, x);
        }
    }
    let theta = (0..n).map(|_| rng.next_int(-3, 3) as f64).collect();
    HopfieldParams::new(w, theta).expect("generated weights are symmetric and loop-free")
}

fn spin_state(idx: usize, n: usize) -> NetworkState {
    crate::oracle::decode(idx, n)
}

fn criterion_2() -> Check {
    let mut rng = RngStream::new(SWEEP_SEED);
    let mut runs = 0u64;
    let mut worst_ratio = 0.0f64;
    for n in 2..=8usize {
        let bound = cyclic_bound(n);
        let order: Vec<usize> = (0..n).collect();
        for _ in 0..SWEEP_INSTANCES_PER_N {
            let hp = sweep_instance(&mut rng, n);
            for idx in 0..(1usize << n) {
                let init = spin_state(idx, n);
                let report = run_to_convergence_cyclic(&hp, &init, &order)
                    .map_err(|e| format!("n={n} idx={idx}: {e}"))?;
                check(report.steps <= bound, || {
                    format!(
                        "n={n} idx={idx}: steps {} exceed bound {bound}",
                        report.steps
                    )
                })?;
                for pair in report.energy_trace.windows(2) {
                    check(pair[1] <= pair[0], || {
                        format!(
                            "n={n} idx={idx}: energy rose from {} to {}",
                            pair[0], pair[1]
                        )
                    })?;
                }
                worst_ratio = worst_ratio.max(report.steps as f64 / bound as f64);
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{runs} exhaustive runs, worst steps/bound ratio {worst_ratio:.3e}"
    ))
}

fn criterion_3() -> Check {
    let mut rng = RngStream::new(SWEEP_SEED);
    let mut changing_updates = 0u64;
    let mut flat_flips = 0u64;
    for n in 2..=8usize {
        for _ in 0..SWEEP_INSTANCES_PER_N {
            let hp = sweep_instance(&mut rng, n);
            for idx in 0..(1usize << n) {
                let mut state = spin_state(idx, n);
                let budget = cyclic_bound(n) + n as u64;
                let mut quiet = 0usize;
                let mut step = 0u64;
                while quiet < n && step < budget {
                    let u = (step % n as u64) as usize;
                    let before = energy(&hp, &state);
                    let closed = delta_energy(&hp, &state, u);
                    let next = network::update(hp.spec(), hp.params(), &state, u);
                    let after = energy(&hp, &next);
                    check(closed == after - before, || {
                        format!(
                            "n={n} idx={idx} u={u}: closed-form delta {closed} != energy difference {}",
                            after - before
                        )
                    })?;
                    if next != state {
                        changing_updates += 1;
                        let strict_drop = after < before;
                        let flat_gain = after == before && pluses(&next) > pluses(&state);
                        check(strict_drop || flat_gain, || {
                            format!(
                                "n={n} idx={idx} u={u}: changing update neither drops energy \
                                 ({before} -> {after}) nor raises pluses"
                            )
                        })?;
                        if flat_gain {
                            flat_flips += 1;
                            check(pluses(&next) == pluses(&state) + 1, || {
                                format!("n={n} idx={idx} u={u}: flat flip changed pluses by != 1")
                            })?;
                        }
                        quiet = 0;
                    } else {
                        quiet += 1;
                    }
                    state = next;
                    step += 1;
                }
                check(quiet >= n, || {
                    format!("n={n} idx={idx}: no stability within the bound")
                })?;
            }
        }
    }
    Ok(format!(
        "{changing_updates} changing updates checked, {flat_flips} flat flips, \
         closed-form and energy-difference deltas identical"
    ))
}

// --- criterion 4: pattern recall fixture ---------------------------------

fn criterion_4(fixtures: &Path) -> Check {
    let dir = fixtures.join("stored_patterns");
    let patterns = io::read_patterns(&dir.join("patterns.txt")).map_err(err)?;
    check(check_pairwise_orthogonal(&patterns), || {
        "fixture patterns are not pairwise orthogonal".into()
    })?;
    let hp = hebbian(&patterns).map_err(err)?;
    for (i, p) in patterns.iter().enumerate() {
        check(verify_pattern_stable(&hp, p), || {
            format!("stored pattern {i} is not stable")
        })?;
        let neg: Vec<f64> = p.act().iter().map(|a| -a).collect();
        let comp = NetworkState::new(neg, TwoState::spin()).map_err(err)?;
        check(verify_pattern_stable(&hp, &comp), || {
            format!("complement of pattern {i} is not stable")
        })?;
    }
    let init = io::read_state(&dir.join("initial.txt"), TwoState::spin()).map_err(err)?;
    let order: Vec<usize> = (0..hp.n()).collect();
    let report = run_to_convergence_cyclic(&hp, &init, &order).map_err(err)?;
    check(report.final_state.act() == [-1.0, 1.0, -1.0, 1.0], || {
        format!(
            "recall reached {:?}, want [-1, 1, -1, 1]",
            report.final_state.act()
        )
    })?;
    check(report.steps == 2, || {
        format!(
            "convergence took {} single-neuron updates, want the recorded 2",
            report.steps
        )
    })?;
    Ok(format!(
        "patterns and complements stable; recall in {} updates ({} cycle)",
        report.steps, report.full_cycles
    ))
}

// --- criterion 5: orthogonal pattern spectrum ----------------------------

fn hadamard_rows(n: usize) -> Vec<Vec<f64>> {
    // Sylvester construction; n must be a power of two.
    let mut rows = vec![vec![1.0]];
    while rows.len() < n {
        let k = rows.len();
        let mut next = Vec::with_capacity(2 * k);
        for r in &rows {
            let mut doubled = r.clone();
            doubled.extend_from_slice(r);
            next.push(doubled);
        }
        for r in &rows {
            let mut flipped = r.clone();
            flipped.extend(r.iter().map(|x| -x));
            next.push(flipped);
        }
        rows = next;
    }
    rows
}

fn criterion_5() -> Check {
    let mut rng = RngStream::new(0x0DDBA11);
    let mut sets = 0u64;
    for n in [4usize, 8] {
        let basis = hadamard_rows(n);
        for _ in 0..20 {
            let m = 1 + rng.next_below(n - 1); // m < n
                                               // random distinct basis rows, random sign, one shared permutation
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < m {
                let c = rng.next_below(n);
                if !picked.contains(&c) {
                    picked.push(c);
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.next_below(i + 1);
                perm.swap(i, j);
            }
            let patterns: Vec<NetworkState> = picked
                .iter()
                .map(|&row| {
                    let sign = if rng.next_f64() < 0.5 { -1.0 } else { 1.0 };
                    let act: Vec<f64> = (0..n).map(|i| sign * basis[row][perm[i]]).collect();
                    NetworkState::new(act, TwoState::spin()).expect("hadamard rows are +-1")
                })
                .collect();
            check(check_pairwise_orthogonal(&patterns), || {
                format!("generated n={n} m={m} set is not orthogonal")
            })?;
            let hp = hebbian(&patterns).map_err(err)?;
            let factor = (n - m) as f64;
            for (j, p) in patterns.iter().enumerate() {
                let wp = hp.weights().matvec(p.act());
                for (i, (&got, &want)) in wp.iter().zip(p.act()).enumerate() {
                    check(got == factor * want, || {
                        format!(
                            "n={n} m={m} pattern {j} entry {i}: (W p)_i = {got}, want {} exactly",
                            factor * want
                        )
                    })?;
                }
            }
            sets += 1;
        }
    }
    Ok(format!(
        "{sets} random orthogonal sets: W p_j = (n - m) p_j exactly, every pattern"
    ))
}

// --- criterion 6: detailed balance and invariance ------------------------

fn random_machine(rng: &mut RngStream, n: usize, w_scale: f64, t_scale: f64) -> BoltzmannMachine {
    let mut w = SquareMatrix::zeros(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let x = rng.next_range(-w_scale, w_scale);
            w.set(u, v, x);
            w.set(v, u, x);
        }
    }
    let theta = (0..n).map(|_| rng.next_range(-t_scale, t_scale)).collect();
    BoltzmannMachine::new(w, theta).expect("generated weights are symmetric and loop-free")
}

fn criterion_6() -> Check {
    let mut rng = RngStream::new(0xBA1A2CE);
    let mut worst_balance = 0.0f64;
    let mut worst_invariance = 0.0f64;
    for i in 0..20usize {
        let n = 2 + i % 5; // n in 2..=6
        let m = random_machine(&mut rng, n, 1.0, 1.0);
        for t in [0.5, 1.0, 2.0] {
            let temp = Temperature::new(t).map_err(err)?;
            let k = transition_matrix_random_scan(&m, temp).map_err(err)?;
            let pi = boltzmann_distribution(&m, temp).map_err(err)?.pi;
            let balance = detailed_balance_check(&pi, &k, 1e-12);
            check(balance.pass, || {
                format!(
                    "instance {i} T={t}: balance residual {} at pair {:?}",
                    balance.max_residual, balance.worst_pair
                )
            })?;
            let inv = invariance_check(&pi, &k, 1e-12);
            check(inv.pass, || {
                format!("instance {i} T={t}: invariance residual {}", inv.residual)
            })?;
            worst_balance = worst_balance.max(balance.max_residual);
            worst_invariance = worst_invariance.max(inv.residual);
        }
    }
    Ok(format!(
        "20 instances x 3 temperatures: max balance residual {worst_balance:.2e}, \
         max invariance residual {worst_invariance:.2e} (tol 1e-12)"
    ))
}

// --- criterion 7: ergodicity pipeline ------------------------------------

fn criterion_7() -> Check {
    let mut rng = RngStream::new(0xE2900D1C);
    let mut worst_tv_exact = 0.0f64;
    let mut worst_tv_brute = 0.0f64;
    let mut worst_stress = 0.0f64;
    for i in 0..10usize {
        let n = 2 + i % 5; // n in 2..=6
        let m = random_machine(&mut rng, n, 0.5, 0.3);
        let temp = Temperature::new(if i % 2 == 0 { 1.0 } else { 2.0 }).map_err(err)?;
        let k = transition_matrix_random_scan(&m, temp).map_err(err)?;
        let a = NonNegMatrix::from(&k);
        check(is_irreducible(&a), || {
            format!("instance {i}: random-scan matrix not irreducible")
        })?;
        check((0..k.dim()).all(|j| k.get(j, j) > 0.0), || {
            format!("instance {i}: random-scan diagonal not strictly positive")
        })?;
        check(aperiodicity_by_positive_diagonal(&a), || {
            format!("instance {i}: aperiodicity witness failed")
        })?;
        let stationary =
            stationary_distribution(&a, 1e-12).map_err(|e| format!("instance {i}: {e}"))?;
        let exact = boltzmann_distribution(&m, temp).map_err(err)?.pi;
        let brute = brute_force_stationary(&k).map_err(err)?;
        let tv_exact = total_variation(stationary.pi.as_slice(), exact.as_slice());
        let tv_brute = total_variation(stationary.pi.as_slice(), brute.as_slice());
        check(tv_exact <= 1e-8, || {
            format!("instance {i}: TV(stationary, boltzmann) = {tv_exact:.3e} > 1e-8")
        })?;
        check(tv_brute <= 1e-8, || {
            format!("instance {i}: TV(stationary, kernel solve) = {tv_brute:.3e} > 1e-8")
        })?;
        worst_tv_exact = worst_tv_exact.max(tv_exact);
        worst_tv_brute = worst_tv_brute.max(tv_brute);
        if n <= 4 {
            let stress = uniqueness_stress(&k, 1e-8, 20, &mut rng)
                .map_err(|e| format!("instance {i}: {e}"))?;
            check(stress.pass, || {
                format!(
                    "instance {i}: stress max pairwise TV {:.3e} > 1e-8",
                    stress.max_pairwise_tv
                )
            })?;
            worst_stress = worst_stress.max(stress.max_pairwise_tv);
        }
    }
    Ok(format!(
        "10 instances: irreducible with positive diagonal; worst TV vs exact {worst_tv_exact:.2e}, \
         vs kernel solve {worst_tv_brute:.2e}, stress spread {worst_stress:.2e} (tol 1e-8)"
    ))
}

// --- criterion 8: perron certificates ------------------------------------

fn criterion_8() -> Check {
    let mut rng = RngStream::new(0x9E1207);
    let mut worst_width = 0.0f64;
    let mut worst_root_gap = 0.0f64;
    for i in 0..100usize {
        let dim = 1 + rng.next_below(32);
        let mut m = SquareMatrix::zeros(dim);
        for r in 0..dim {
            m.set(r, (r + 1) % dim, 0.2 + rng.next_f64());
        }
        for r in 0..dim {
            for c in 0..dim {
                if rng.next_f64() < 0.3 {
                    m.set(r, c, m.get(r, c) + rng.next_f64());
                }
            }
        }
        let stochastic = i % 2 == 1;
        if stochastic {
            for c in 0..dim {
                let sum = m.column_sum(c);
                for r in 0..dim {
                    m.set(r, c, m.get(r, c) / sum);
                }
            }
        }
        let a = NonNegMatrix::new(m).map_err(err)?;
        let cert = perron_root(&a, 1e-10, 1_000_000).map_err(|e| format!("matrix {i}: {e}"))?;
        check(cert.lower <= cert.root && cert.root <= cert.upper, || {
            format!("matrix {i}: root outside its own bracket")
        })?;
        check(cert.upper - cert.lower <= 1e-10, || {
            format!("matrix {i}: bracket width {:.3e}", cert.upper - cert.lower)
        })?;
        let min_entry = cert
            .vector
            .as_slice()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        check(min_entry > 0.0, || {
            format!("matrix {i}: perron vector entry not strictly positive")
        })?;
        for _ in 0..100 {
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
            let value = collatz_wielandt_value(&a, &x).map_err(err)?;
            check(value <= cert.root + 1e-10, || {
                format!(
                    "matrix {i}: CW value {value} exceeds certified root {} + 1e-10",
                    cert.root
                )
            })?;
        }
        if stochastic {
            check((cert.root - 1.0).abs() <= 1e-10, || {
                format!(
                    "matrix {i}: stochastic root {} not within 1e-10 of 1",
                    cert.root
                )
            })?;
            worst_root_gap = worst_root_gap.max((cert.root - 1.0).abs());
        }
        worst_width = worst_width.max(cert.upper - cert.lower);
    }
    Ok(format!(
        "100 certificates: worst bracket width {worst_width:.2e}, \
         worst |root - 1| on stochastic inputs {worst_root_gap:.2e}"
    ))
}

// --- criterion 9: power-path equivalence ---------------------------------

fn criterion_9() -> Check {
    let mut rng = RngStream::new(0x90A7);
    let mut checks = 0u64;
    for i in 0..200usize {
        let dim = 1 + rng.next_below(7);
        let mut m = SquareMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                if rng.next_f64() < 0.35 {
                    m.set(r, c, 1.0);
                }
            }
        }
        let a = NonNegMatrix::new(m).map_err(err)?;
        for k in 0..=14u32 {
            for r in 0..dim {
                for c in 0..dim {
                    let (pow, path) = crate::spectral::pow_positivity_oracle(&a, r, c, k);
                    check(pow == path, || {
                        format!("matrix {i} dim={dim}: disagreement at i={r} j={c} k={k}")
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} triples checked, zero disagreements"))
}

// --- criterion 10: sampling accuracy and golden trajectory ----------------

const CHAIN_STEPS: u64 = 1_000_000;
const CHAIN_BURN_IN: u64 = 100_000;
const FERRO_SEED: u64 = 101;
const HEBBIAN_SEED: u64 = 202;
// SHA-256 of the per-step state-index trajectories (little-endian u32),
// generated once from the documented rng and frozen as regression pins.
const FERRO_TRAJ_SHA256: &str = "ad4d0dc6ab3f14a11170fd5d883e897019e515516ac841bb400ed122d6b5e4e9";
const HEBBIAN_TRAJ_SHA256: &str =
    "8522f6120b3244c13809c8680b1c9eef143ed59a0d93f346a801909e95d53f6a";

fn trajectory_sha256(trajectory: &[u32]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    for &idx in trajectory {
        hasher.update(idx.to_le_bytes());
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn criterion_10() -> Check {
    let temp = Temperature::new(1.0).map_err(err)?;

    // two-neuron ferromagnet
    let w = SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).map_err(err)?;
    let ferro = BoltzmannMachine::new(w, vec![0.0, 0.0]).map_err(err)?;
    let init = NetworkState::from_spins(&[-1, -1]).map_err(err)?;
    let mut rng = RngStream::new(FERRO_SEED);
    let (sample, trajectory) =
        sample_chain_recorded(&ferro, &init, temp, CHAIN_STEPS, CHAIN_BURN_IN, 1, &mut rng)
            .map_err(err)?;
    let exact = boltzmann_distribution(&ferro, temp).map_err(err)?.pi;
    let tv_ferro = total_variation(sample.empirical.as_slice(), exact.as_slice());
    check(tv_ferro <= 0.02, || {
        format!("ferromagnet TV {tv_ferro:.4} > 0.02")
    })?;
    let hash_ferro = trajectory_sha256(&trajectory);
    check(hash_ferro == FERRO_TRAJ_SHA256, || {
        format!("ferromagnet trajectory hash {hash_ferro} != pinned {FERRO_TRAJ_SHA256}")
    })?;

    // four-neuron stored-pattern machine
    let patterns = [
        NetworkState::from_spins(&[1, 1, -1, -1]).map_err(err)?,
        NetworkState::from_spins(&[-1, 1, -1, 1]).map_err(err)?,
    ];
    let machine = BoltzmannMachine::from(&hebbian(&patterns).map_err(err)?);
    let init4 = NetworkState::from_spins(&[1, 1, 1, 1]).map_err(err)?;
    let mut rng4 = RngStream::new(HEBBIAN_SEED);
    let (sample4, trajectory4) = sample_chain_recorded(
        &machine,
        &init4,
        temp,
        CHAIN_STEPS,
        CHAIN_BURN_IN,
        1,
        &mut rng4,
    )
    .map_err(err)?;
    let exact4 = boltzmann_distribution(&machine, temp).map_err(err)?.pi;
    let tv_hebbian = total_variation(sample4.empirical.as_slice(), exact4.as_slice());
    check(tv_hebbian <= 0.02, || {
        format!("stored-pattern machine TV {tv_hebbian:.4} > 0.02")
    })?;
    let hash_hebbian = trajectory_sha256(&trajectory4);
    check(hash_hebbian == HEBBIAN_TRAJ_SHA256, || {
        format!("stored-pattern trajectory hash {hash_hebbian} != pinned {HEBBIAN_TRAJ_SHA256}")
    })?;

    Ok(format!(
        "1e6 steps each: ferromagnet TV {tv_ferro:.4}, stored-pattern TV {tv_hebbian:.4} \
         (tol 0.02); both trajectory hashes match"
    ))
}

// --- criterion 11: zero-temperature limit ---------------------------------

fn criterion_11() -> Check {
    let mut rng = RngStream::new(0x2E20);
    let ladder = [1.0, 0.1, 0.01, 0.001];
    let mut triples = 0u64;
    let mut attempts = 0u64;
    while triples < 50 {
        attempts += 1;
        check(attempts < 10_000, || {
            "could not find 50 triples with nonzero local field".into()
        })?;
        let n = 2 + rng.next_below(7); // n in 2..=8
        let mut w = SquareMatrix::zeros(n);
        for u in 0..n {
            for v in (u + 1)..n {
                let x = rng.next_int(-2, 2) as f64;
                w.set(u, v, x);
                w.set(v, u, x);
            }
        }
        let theta: Vec<f64> = (0..n).map(|_| rng.next_int(-2, 2) as f64).collect();
        let m = BoltzmannMachine::new(w, theta).map_err(err)?;
        let idx = rng.next_below(1 << n);
        let state = crate::oracle::decode(idx, n);
        let site = rng.next_below(n);
        let field = local_field(&m, &state, site);
        if field == 0.0 {
            continue;
        }
        let limit_check = zero_temp_limit_check(&m, &state, site, &ladder).map_err(err)?;
        check(limit_check.monotone, || {
            format!(
                "triple {triples}: gaps {:?} not monotone toward the limit",
                limit_check.gaps
            )
        })?;
        // tail bound at T = 0.01 |field|: the gap is 1/(1 + e^200)
        let t_star = Temperature::new(0.01 * field.abs()).map_err(err)?;
        let p = conditional_prob_plus(&m, &state, site, t_star).p_plus();
        let gap = (p - limit_check.limit).abs();
        check(gap <= 1e-6, || {
            format!("triple {triples}: gap {gap:.3e} at T = 0.01|field| exceeds 1e-6")
        })?;
        triples += 1;
    }

    // the limit kernel is the deterministic threshold update, exhaustively
    let mut checked = 0u64;
    for _ in 0..10 {
        let n = 2 + rng.next_below(5); // n in 2..=6
        let hp = {
            let mut w = SquareMatrix::zeros(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    let x = rng.next_int(-3, 3) as f64;
                    w.set(u, v, x);
                    w.set(v, u, x);
                }
            }
            let theta = (0..n).map(|_| rng.next_int(-3, 3) as f64).collect();
            HopfieldParams::new(w, theta).map_err(err)?
        };
        let m = BoltzmannMachine::from(&hp);
        for idx in 0..(1usize << n) {
            let s = crate::oracle::decode(idx, n);
            for u in 0..n {
                let a = zero_temp_update(&m, &s, u);
                let b = network::update(hp.spec(), hp.params(), &s, u);
                check(a == b, || {
                    format!("n={n} idx={idx} u={u}: limit update disagrees with threshold update")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "50 triples monotone with tail gaps <= 1e-6; limit kernel matches threshold \
         update on {checked} exhaustive cases"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_rows_are_orthogonal() {
        for n in [2usize, 4, 8] {
            let rows = hadamard_rows(n);
            assert_eq!(rows.len(), n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
                    assert_eq!(dot, 0.0);
                }
            }
        }
    }

    #[test]
    fn filter_selects_by_tag_and_id() {
        let ids: Vec<u32> = CRITERIA
            .iter()
            .filter(|(_, _, tags)| tags.contains(&"spectral"))
            .map(|(id, _, _)| *id)
            .collect();
        assert_eq!(ids, vec![7, 8, 9]);
    }
}
