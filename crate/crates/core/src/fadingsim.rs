//! Monte Carlo check of the closed-form outage and rate expressions.
//!
//! Each trial draws an independent unit-mean exponential power gain for
//! every link and direction, forms the per-hop SNRs and declares an outage
//! when the weakest hop is at or below the threshold. Trial `t` draws from
//! ChaCha8 stream `t` of the seed, so results do not depend on how trials
//! are split across threads.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{
    end_to_end_rate, outage_probability, ChainPowers, Direction, QosSpec, RadioEnvironment, Scheme,
};
use crate::error::{CoverError, Result};

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub env: RadioEnvironment,
    pub powers: ChainPowers,
    pub distances: Vec<f64>,
    pub qos: QosSpec,
    pub scheme: Scheme,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutageEstimate {
    pub empirical: f64,
    /// `sqrt(p̂(1-p̂)/trials)`.
    pub std_error: f64,
    pub analytic: f64,
    /// `(p̂ - p)/SE`; the analytic standard error stands in when `p̂` is 0 or 1.
    pub z_score: f64,
    pub empirical_rate_bps: f64,
    pub analytic_rate_bps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub trials: u64,
    pub seed: u64,
    pub forward: OutageEstimate,
    pub backward: OutageEstimate,
}

impl SimReport {
    pub fn get(&self, dir: Direction) -> &OutageEstimate {
        match dir {
            Direction::Forward => &self.forward,
            Direction::Backward => &self.backward,
        }
    }
}

/// Unit-mean exponential sample by inversion, `-ln U` with `U` in `(0, 1)`.
pub fn sample_exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    -u.ln()
}

/// Random stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Per-hop SNR margins: hop `k` is up when `gain_k > margin_k`.
fn margins(config: &SimConfig, dir: Direction) -> Vec<f64> {
    let env = &config.env;
    let thr = config.qos.snr_thresh(dir);
    let alpha = env.pathloss_exponent;
    let div = config.scheme.exponent_divisor(config.powers.links());
    config
        .powers
        .direction(dir)
        .iter()
        .zip(&config.distances)
        .map(|(p, d)| {
            thr * d.powf(alpha) * env.noise_power_watts() / (div * p * env.pathloss_linear())
        })
        .collect()
}

/// Runs `trials` draws and compares against the closed forms.
pub fn estimate(config: &SimConfig) -> Result<SimReport> {
    if config.trials == 0 {
        return Err(CoverError::param("trials", "must be at least 1"));
    }
    let fwd_margin = margins(config, Direction::Forward);
    let bwd_margin = margins(config, Direction::Backward);
    // validates lengths and distances
    let analytic_fwd = outage_probability(
        &config.env,
        &config.powers,
        &config.distances,
        &config.qos,
        config.scheme,
        Direction::Forward,
    )?;
    let analytic_bwd = outage_probability(
        &config.env,
        &config.powers,
        &config.distances,
        &config.qos,
        config.scheme,
        Direction::Backward,
    )?;
    let (rate_fwd, rate_bwd) = end_to_end_rate(
        &config.env,
        &config.powers,
        &config.distances,
        &config.qos,
        config.scheme,
    )?;

    let chunks = config.trials.div_ceil(CHUNK);
    let (out_fwd, out_bwd) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let (mut f, mut b) = (0u64, 0u64);
            for t in c * CHUNK..((c + 1) * CHUNK).min(config.trials) {
                let mut rng = trial_rng(config.seed, t);
                // Draw every gain so each link owns a fixed slot in the stream.
                let mut down = false;
                for m in &fwd_margin {
                    down |= sample_exponential(&mut rng) <= *m;
                }
                let mut up = false;
                for m in &bwd_margin {
                    up |= sample_exponential(&mut rng) <= *m;
                }
                f += down as u64;
                b += up as u64;
            }
            (f, b)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let n = config.trials as f64;
    let k = config.powers.links() as f64;
    let build = |count: u64, analytic: f64, rate: f64, dir: Direction| {
        let p = count as f64 / n;
        let mut se = (p * (1.0 - p) / n).sqrt();
        let diff = p - analytic;
        let denom = if se > 0.0 {
            se
        } else {
            (analytic * (1.0 - analytic) / n).sqrt()
        };
        let z_score = if denom > 0.0 { diff / denom } else { 0.0 };
        if !se.is_finite() {
            se = 0.0;
        }
        let cap = config.env.bandwidth_hz / (2.0 * k) * config.qos.snr_thresh(dir).ln_1p();
        OutageEstimate {
            empirical: p,
            std_error: se,
            analytic,
            z_score,
            empirical_rate_bps: cap * (1.0 - p),
            analytic_rate_bps: rate,
        }
    };
    Ok(SimReport {
        trials: config.trials,
        seed: config.seed,
        forward: build(out_fwd, analytic_fwd, rate_fwd, Direction::Forward),
        backward: build(out_bwd, analytic_bwd, rate_bwd, Direction::Backward),
    })
}
