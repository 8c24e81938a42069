//! Shared instance generators for the benchmarks.

use spinnet_core::gibbs::BoltzmannMachine;
use spinnet_core::hopfield::HopfieldParams;
use spinnet_core::matrix::SquareMatrix;
use spinnet_core::rng::RngStream;
use spinnet_core::spectral::NonNegMatrix;

/// Symmetric zero-diagonal integer weights in `[-3, 3]`, integer thresholds.
pub fn random_hopfield(seed: u64, n: usize) -> HopfieldParams {
    let mut rng = RngStream::new(seed);
    let mut w = SquareMatrix::zeros(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let x = rng.next_int(-3, 3) as f64;
            w.set(u, v, x);
            w.set(v, u, x);
        }
    }
    let theta = (0..n).map(|_| rng.next_int(-3, 3) as f64).collect();
    HopfieldParams::new(w, theta).expect("generated weights are valid")
}

pub fn random_machine(seed: u64, n: usize, scale: f64) -> BoltzmannMachine {
    let mut rng = RngStream::new(seed);
    let mut w = SquareMatrix::zeros(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let x = rng.next_range(-scale, scale);
            w.set(u, v, x);
            w.set(v, u, x);
        }
    }
    let theta = (0..n).map(|_| rng.next_range(-scale, scale)).collect();
    BoltzmannMachine::new(w, theta).expect("generated weights are valid")
}

/// Irreducible non-negative matrix: a guaranteed cycle plus sprinkling.
pub fn random_irreducible(seed: u64, dim: usize) -> NonNegMatrix {
    let mut rng = RngStream::new(seed);
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
    NonNegMatrix::new(m).expect("entries are non-negative")
}
