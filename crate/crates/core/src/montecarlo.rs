//! Monte Carlo oracle for the mirror-frame photon gas.
//!
//! Photons are drawn from the energy-weighted density `∝ x³ n(x, μ, β)`.
//! Integrating out `x` leaves the direction marginal `∝ (1 + βμ)⁻⁴`, which is
//! inverted in closed form. Given `μ`, `y = γ(1 + βμ) x` follows the
//! energy-weighted Planck law `y³/(eʸ − 1)`, sampled exactly as the mixture
//! `Σⱼ (j⁻⁴/ζ(4)) Gamma(4, rate j)`.
//!
//! Under this density the momentum density is `p̂ = K(β) E[μ]` with
//! `K = (4/3)(3 + β²)γ²`, so the estimator is a plain sample mean.
//!
//! Randomness comes from ChaCha8 keyed by the seed, one stream per chunk of
//! [`CHUNK_SIZE`] samples. Chunk results are combined in chunk order, so an
//! estimate depends only on `(seed, n, β)` and not on the thread count.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma as GammaDist};

use crate::kinematics::{gamma, gamma_sq, Beta};
use crate::quadrature::ZETA_4;
use crate::{Error, Result};

pub const CHUNK_SIZE: usize = 65_536;

/// Mixture components tabulated explicitly; the remaining tail mass is ~5e-12.
const MIXTURE_TABLE_LEN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonSample {
    pub x: f64,
    pub mu: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Distance from `target` in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        if self.std_error == 0.0 {
            if self.mean == target { 0.0 } else { f64::INFINITY }
        } else {
            (self.mean - target) / self.std_error
        }
    }
}

/// CDF of the direction marginal `∝ (1 + βμ)⁻⁴` on `[−1, 1]`.
pub fn direction_cdf(beta: Beta, mu: f64) -> f64 {
    let b = beta.value();
    if b == 0.0 {
        return 0.5 * (mu + 1.0);
    }
    let lo = (1.0 - b).powi(-3);
    let hi = (1.0 + b).powi(-3);
    ((lo - b.mul_add(mu, 1.0).powi(-3)) / (lo - hi)).clamp(0.0, 1.0)
}

/// Mean of the direction marginal, `−4β/(3 + β²)`.
pub fn direction_mean(beta: Beta) -> f64 {
    let b = beta.value();
    -4.0 * b / (3.0 + b * b)
}

/// `K(β)` with `p̂ = K E[μ]`: `2γ⁻⁴ ∫(1 + βμ)⁻⁴ dμ`.
pub fn momentum_normalization(beta: Beta) -> f64 {
    let b = beta.value();
    4.0 / 3.0 * (3.0 + b * b) * gamma_sq(beta)
}

/// Inverse of [`direction_cdf`] at `u ∈ [0, 1]`.
///
/// Written as `(1 + βμ)⁻³ = 1 + s` with `s` expanded so no term cancels,
/// which keeps full relative accuracy for small β.
pub fn sample_direction(beta: Beta, u: f64) -> f64 {
    let b = beta.value();
    if b == 0.0 {
        return (2.0 * u - 1.0).clamp(-1.0, 1.0);
    }
    let lo = 1.0 - b;
    let hi = 1.0 + b;
    // (1−β)⁻³ − 1 and (1+β)⁻³ − 1, each factored by β.
    let lo_excess = (3.0 - 3.0 * b + b * b) / (lo * lo * lo);
    let hi_excess = -(3.0 + 3.0 * b + b * b) / (hi * hi * hi);
    let s = b * ((1.0 - u) * lo_excess + u * hi_excess);
    let w_minus_one = (-s.ln_1p() / 3.0).exp_m1();
    (w_minus_one / b).clamp(-1.0, 1.0)
}

fn mixture_cdf() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut acc = 0.0;
        (1..=MIXTURE_TABLE_LEN)
            .map(|j| {
                let j = j as f64;
                acc += 1.0 / (j * j * j * j * ZETA_4);
                acc
            })
            .collect()
    })
}

/// Index `j ≥ 1` of the mixture component for uniform `u`.
fn mixture_component(u: f64) -> f64 {
    let table = mixture_cdf();
    let idx = table.partition_point(|&c| c < u);
    if idx < table.len() {
        (idx + 1) as f64
    } else {
        // Σ_{j>k} j⁻⁴ ≈ 1/(3(k + ½)³)
        let k = (3.0 * ZETA_4 * (1.0 - u)).powf(-1.0 / 3.0) - 0.5;
        k.ceil().max(MIXTURE_TABLE_LEN as f64 + 1.0)
    }
}

/// Draws from the mirror-frame photon distribution at a fixed β.
#[derive(Debug, Clone)]
pub struct PhotonSampler {
    beta: Beta,
    gamma: f64,
    shape4: GammaDist<f64>,
}

impl PhotonSampler {
    pub fn new(beta: Beta) -> Self {
        Self {
            beta,
            gamma: gamma(beta).value(),
            shape4: GammaDist::new(4.0, 1.0).expect("shape and scale are positive"),
        }
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    /// Rest-frame energy-weighted Planck variate `y ∝ y³/(eʸ − 1)`.
    pub fn planck_energy<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let j = mixture_component(rng.gen());
        self.shape4.sample(rng) / j
    }

    /// Reduced frequency `x` for a photon travelling along `mu`.
    pub fn energy<R: Rng + ?Sized>(&self, mu: f64, rng: &mut R) -> f64 {
        let doppler = self.gamma * self.beta.value().mul_add(mu, 1.0);
        self.planck_energy(rng) / doppler
    }

    pub fn photon<R: Rng + ?Sized>(&self, rng: &mut R) -> PhotonSample {
        let mu = sample_direction(self.beta, rng.gen());
        let x = self.energy(mu, rng);
        let phi = TAU * rng.gen::<f64>();
        PhotonSample { x, mu, phi }
    }
}

/// Reduced frequency for a photon along `mu`; see [`PhotonSampler::energy`].
pub fn sample_energy<R: Rng + ?Sized>(beta: Beta, mu: f64, rng: &mut R) -> f64 {
    PhotonSampler::new(beta).energy(mu, rng)
}

/// The generator for one chunk of a run.
pub fn chunk_rng(seed: u64, chunk_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk_index);
    rng
}

/// Mean and sum of squared deviations of one chunk.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let weight = other.count as f64 / count as f64;
        Moments {
            count,
            mean: self.mean + delta * weight,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * weight,
        }
    }
}

fn run_chunks<F>(n: u64, seed: u64, per_sample: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    if n == 0 {
        return Err(Error::usage("Monte Carlo estimate needs at least one sample"));
    }
    let chunk = CHUNK_SIZE as u64;
    let n_chunks = n.div_ceil(chunk);
    let run = |c: u64| {
        let mut rng = chunk_rng(seed, c);
        let len = chunk.min(n - c * chunk);
        let mut m = Moments::default();
        for _ in 0..len {
            m.push(per_sample(&mut rng));
        }
        m
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<Moments> = {
        use rayon::prelude::*;
        (0..n_chunks).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Moments> = (0..n_chunks).map(run).collect();

    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let std_error = if total.count > 1 {
        (total.m2 / (total.count - 1) as f64 / total.count as f64).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate { mean: total.mean, std_error, n_samples: total.count, seed })
}

/// Estimate of `E[μ]` under the energy-weighted density; analytic value
/// [`direction_mean`].
pub fn estimate_mu_moment(beta: Beta, n: u64, seed: u64) -> Result<McEstimate> {
    run_chunks(n, seed, |rng| sample_direction(beta, rng.gen()))
}

/// Estimate of the reduced momentum density `p̂` from full photon samples.
pub fn estimate_momentum_density(beta: Beta, n: u64, seed: u64) -> Result<McEstimate> {
    let sampler = PhotonSampler::new(beta);
    let k = momentum_normalization(beta);
    run_chunks(n, seed, |rng| k * sampler.photon(rng).mu)
}

/// Mean rest-frame photon energy under the energy-weighted Planck law,
/// estimated with the mixture sampler. Analytic value `4ζ(5)/ζ(4)`.
pub fn estimate_planck_energy_mean(n: u64, seed: u64) -> Result<McEstimate> {
    let sampler = PhotonSampler::new(Beta::ZERO);
    run_chunks(n, seed, |rng| sampler.planck_energy(rng))
}

/// Kolmogorov–Smirnov distance between `n` sampled directions and
/// [`direction_cdf`].
pub fn direction_ks_statistic(beta: Beta, n: usize, seed: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::usage("KS statistic needs at least one sample"));
    }
    let mut samples = Vec::with_capacity(n);
    let mut chunk = 0u64;
    while samples.len() < n {
        let mut rng = chunk_rng(seed, chunk);
        let take = CHUNK_SIZE.min(n - samples.len());
        samples.extend((0..take).map(|_| sample_direction(beta, rng.gen())));
        chunk += 1;
    }
    samples.sort_by(f64::total_cmp);
    let nf = n as f64;
    Ok(samples
        .iter()
        .enumerate()
        .map(|(i, &mu)| {
            let f = direction_cdf(beta, mu);
            ((i + 1) as f64 / nf - f).max(f - i as f64 / nf)
        })
        .fold(0.0, f64::max))
}
