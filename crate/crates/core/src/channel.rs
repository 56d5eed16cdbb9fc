//! Radio parameters and the closed-form link model.
//!
//! Every link sees Rayleigh fading on top of a power-law path loss
//! `A·d^(-α)`. Under decode-and-forward the chain is only as good as its
//! weakest hop, so the end-to-end success probability is the product of
//! the per-hop success probabilities. All quantities are SI linear units
//! internally; dB and dBm appear only in constructors and accessors.
//!
//! Rates use the natural logarithm: `(W/2K)·ln(1+γ)`.

use serde::{Deserialize, Serialize};

use crate::error::{CoverError, Result};

/// Converts a power in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Converts a power in watts to dBm.
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Converts a ratio in dB to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear ratio to dB.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Path-loss and noise parameters shared by every link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioEnvironment {
    /// `A` in dB: path gain at one meter, including shadowing and antenna gain.
    pub pathloss_const_db: f64,
    /// `α`, must exceed one.
    pub pathloss_exponent: f64,
    /// `σ²` in dBm/Hz.
    pub noise_psd_dbm_per_hz: f64,
    /// `W` in hertz.
    pub bandwidth_hz: f64,
}

impl RadioEnvironment {
    pub fn new(
        pathloss_const_db: f64,
        pathloss_exponent: f64,
        noise_psd_dbm_per_hz: f64,
        bandwidth_hz: f64,
    ) -> Result<Self> {
        let env = RadioEnvironment {
            pathloss_const_db,
            pathloss_exponent,
            noise_psd_dbm_per_hz,
            bandwidth_hz,
        };
        env.validate()?;
        Ok(env)
    }

    /// LTE-like defaults: `-15.3 - 37.6·log10(d)` dB path loss,
    /// -174 dBm/Hz noise, 9 MHz of bandwidth.
    pub fn lte_default() -> Self {
        RadioEnvironment {
            pathloss_const_db: -15.3,
            pathloss_exponent: 3.76,
            noise_psd_dbm_per_hz: -174.0,
            bandwidth_hz: 9.0e6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.pathloss_const_db.is_finite() {
            return Err(CoverError::param("pathloss_const_db", "must be finite"));
        }
        if !(self.pathloss_exponent.is_finite() && self.pathloss_exponent > 1.0) {
            return Err(CoverError::param(
                "pathloss_exponent",
                format!("must be finite and > 1, got {}", self.pathloss_exponent),
            ));
        }
        if !self.noise_psd_dbm_per_hz.is_finite() {
            return Err(CoverError::param("noise_psd_dbm_per_hz", "must be finite"));
        }
        if !(self.bandwidth_hz.is_finite() && self.bandwidth_hz > 0.0) {
            return Err(CoverError::param(
                "bandwidth_hz",
                format!("must be finite and > 0, got {}", self.bandwidth_hz),
            ));
        }
        Ok(())
    }

    /// `A` in linear scale.
    pub fn pathloss_linear(&self) -> f64 {
        db_to_linear(self.pathloss_const_db)
    }

    /// `σ²` in W/Hz.
    pub fn noise_psd_watts_per_hz(&self) -> f64 {
        dbm_to_watts(self.noise_psd_dbm_per_hz)
    }

    /// Noise power over the full band, `W·σ²`, in watts.
    pub fn noise_power_watts(&self) -> f64 {
        self.bandwidth_hz * self.noise_psd_watts_per_hz()
    }

    /// Mean power gain `A·d^(-α)` of a link of length `d` meters.
    pub fn path_gain(&self, d: f64) -> Result<f64> {
        if !(d.is_finite() && d > 0.0) {
            return Err(CoverError::param(
                "distance",
                format!("must be finite and > 0, got {d}"),
            ));
        }
        Ok(self.pathloss_linear() * d.powf(-self.pathloss_exponent))
    }
}

impl Default for RadioEnvironment {
    fn default() -> Self {
        Self::lte_default()
    }
}

/// End-to-end rate requirements and per-hop SNR thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QosSpec {
    /// `B`, forward (downlink) requirement in bit/s.
    pub rate_fwd_bps: f64,
    /// `C`, backward (uplink) requirement in bit/s.
    pub rate_bwd_bps: f64,
    /// `γ` in dB.
    pub snr_thresh_fwd_db: f64,
    /// `τ` in dB.
    pub snr_thresh_bwd_db: f64,
}

impl QosSpec {
    pub fn new(
        rate_fwd_bps: f64,
        rate_bwd_bps: f64,
        snr_thresh_fwd_db: f64,
        snr_thresh_bwd_db: f64,
    ) -> Result<Self> {
        let qos = QosSpec {
            rate_fwd_bps,
            rate_bwd_bps,
            snr_thresh_fwd_db,
            snr_thresh_bwd_db,
        };
        qos.validate()?;
        Ok(qos)
    }

    /// 2 Mbit/s both ways at a 20 dB threshold.
    pub fn lte_default() -> Self {
        QosSpec {
            rate_fwd_bps: 2.0e6,
            rate_bwd_bps: 2.0e6,
            snr_thresh_fwd_db: 20.0,
            snr_thresh_bwd_db: 20.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, rate) in [
            ("rate_fwd_bps", self.rate_fwd_bps),
            ("rate_bwd_bps", self.rate_bwd_bps),
        ] {
            if !(rate.is_finite() && rate > 0.0) {
                return Err(CoverError::param(
                    name,
                    format!("must be finite and > 0, got {rate}"),
                ));
            }
        }
        for (name, thr) in [
            ("snr_thresh_fwd_db", self.snr_thresh_fwd_db),
            ("snr_thresh_bwd_db", self.snr_thresh_bwd_db),
        ] {
            if !thr.is_finite() {
                return Err(CoverError::param(name, "must be finite"));
            }
        }
        Ok(())
    }

    pub fn snr_thresh_fwd(&self) -> f64 {
        db_to_linear(self.snr_thresh_fwd_db)
    }

    pub fn snr_thresh_bwd(&self) -> f64 {
        db_to_linear(self.snr_thresh_bwd_db)
    }

    pub fn rate(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Forward => self.rate_fwd_bps,
            Direction::Backward => self.rate_bwd_bps,
        }
    }

    pub fn snr_thresh(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Forward => self.snr_thresh_fwd(),
            Direction::Backward => self.snr_thresh_bwd(),
        }
    }
}

impl Default for QosSpec {
    fn default() -> Self {
        Self::lte_default()
    }
}

/// Uniform resource split between the `2K` link-directions of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Scheme {
    /// Each link-direction gets `1/2K` of the time and the full band.
    #[default]
    #[serde(rename = "td")]
    TimeDivision,
    /// Each link-direction gets `1/2K` of the band for the full time.
    #[serde(rename = "fd")]
    FrequencyDivision,
}

impl Scheme {
    /// Factor dividing the exponent of each per-hop success probability:
    /// `1` for time division, `2K` for frequency division.
    pub fn exponent_divisor(self, links: usize) -> f64 {
        match self {
            Scheme::TimeDivision => 1.0,
            Scheme::FrequencyDivision => 2.0 * links as f64,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Scheme::TimeDivision => "td",
            Scheme::FrequencyDivision => "fd",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = CoverError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "td" | "time" | "time-division" => Ok(Scheme::TimeDivision),
            "fd" | "freq" | "frequency-division" => Ok(Scheme::FrequencyDivision),
            other => Err(CoverError::param(
                "scheme",
                format!("unknown scheme `{other}`"),
            )),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// Transmit powers of a K-link chain, in watts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainPowers {
    /// `p_1..p_K`: forward link k is sent by device k (device 1 is the base station).
    pub fwd_watts: Vec<f64>,
    /// `q_1..q_K`: backward link k is sent by device k+1 (device K+1 is the destination).
    pub bwd_watts: Vec<f64>,
}

impl ChainPowers {
    pub fn new(fwd_watts: Vec<f64>, bwd_watts: Vec<f64>) -> Result<Self> {
        if fwd_watts.is_empty() {
            return Err(CoverError::param(
                "powers",
                "a chain needs at least one link",
            ));
        }
        if fwd_watts.len() != bwd_watts.len() {
            return Err(CoverError::LengthMismatch {
                expected: fwd_watts.len(),
                actual: bwd_watts.len(),
            });
        }
        if let Some(bad) = fwd_watts
            .iter()
            .chain(bwd_watts.iter())
            .find(|p| !(p.is_finite() && **p > 0.0))
        {
            return Err(CoverError::param(
                "powers",
                format!("every transmit power must be finite and > 0, got {bad}"),
            ));
        }
        Ok(ChainPowers {
            fwd_watts,
            bwd_watts,
        })
    }

    /// Every device transmits with the same power.
    pub fn uniform(watts: f64, links: usize) -> Result<Self> {
        Self::new(vec![watts; links], vec![watts; links])
    }

    pub fn links(&self) -> usize {
        self.fwd_watts.len()
    }

    pub fn direction(&self, dir: Direction) -> &[f64] {
        match dir {
            Direction::Forward => &self.fwd_watts,
            Direction::Backward => &self.bwd_watts,
        }
    }
}

/// Transmit powers of the three device roles, in watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DevicePowers {
    pub bs_watts: f64,
    pub relay_watts: f64,
    pub dest_watts: f64,
}

impl DevicePowers {
    pub fn from_dbm(bs_dbm: f64, relay_dbm: f64, dest_dbm: f64) -> Result<Self> {
        for (name, v) in [
            ("bs_dbm", bs_dbm),
            ("relay_dbm", relay_dbm),
            ("dest_dbm", dest_dbm),
        ] {
            if !v.is_finite() {
                return Err(CoverError::param(name, "must be finite"));
            }
        }
        Ok(DevicePowers {
            bs_watts: dbm_to_watts(bs_dbm),
            relay_watts: dbm_to_watts(relay_dbm),
            dest_watts: dbm_to_watts(dest_dbm),
        })
    }

    /// Base station at `p` dBm, relays 3 dB lower, destination 6 dB lower.
    pub fn ladder(p_dbm: f64) -> Self {
        DevicePowers {
            bs_watts: dbm_to_watts(p_dbm),
            relay_watts: dbm_to_watts(p_dbm - 3.0),
            dest_watts: dbm_to_watts(p_dbm - 6.0),
        }
    }

    /// Per-link powers for a chain of `links` hops.
    ///
    /// Forward link k is transmitted by device k and backward link k by
    /// device k+1, so `p = [bs, relay, ..]` and `q = [.., relay, dest]`.
    pub fn chain(&self, links: usize) -> Result<ChainPowers> {
        if links == 0 {
            return Err(CoverError::param(
                "links",
                "a chain needs at least one link",
            ));
        }
        let mut fwd = vec![self.relay_watts; links];
        let mut bwd = vec![self.relay_watts; links];
        fwd[0] = self.bs_watts;
        bwd[links - 1] = self.dest_watts;
        ChainPowers::new(fwd, bwd)
    }
}

/// Constraint budgets of the reach problem.
///
/// The rate requirement rewrites as `Σ d_k^α/p_k ≤ b` and
/// `Σ d_k^α/q_k ≤ c`. `b` and `c` here are already scaled for the scheme
/// (frequency division multiplies by `2K`). A nonpositive budget means the
/// link count cannot meet the rate at any distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budgets {
    pub b: f64,
    pub c: f64,
    /// `W·ln(1+γ)/(2B)`.
    pub beta: f64,
    /// `W·ln(1+τ)/(2C)`.
    pub zeta: f64,
}

impl Budgets {
    pub fn get(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Forward => self.b,
            Direction::Backward => self.c,
        }
    }
}

/// `W·ln(1+thr)/(2·rate)`: the largest link count with a nonnegative budget.
pub fn beta_for(env: &RadioEnvironment, qos: &QosSpec, dir: Direction) -> f64 {
    env.bandwidth_hz * qos.snr_thresh(dir).ln_1p() / (2.0 * qos.rate(dir))
}

/// Budgets `b`, `c` for a chain of `links` hops under `scheme`.
pub fn budgets(
    env: &RadioEnvironment,
    qos: &QosSpec,
    links: usize,
    scheme: Scheme,
) -> Result<Budgets> {
    if links == 0 {
        return Err(CoverError::param(
            "links",
            "a chain needs at least one link",
        ));
    }
    let beta = beta_for(env, qos, Direction::Forward);
    let zeta = beta_for(env, qos, Direction::Backward);
    let a = env.pathloss_linear();
    let noise = env.noise_power_watts();
    let k = links as f64;
    let scale = scheme.exponent_divisor(links);
    let b = a / (qos.snr_thresh_fwd() * noise) * (beta / k).ln() * scale;
    let c = a / (qos.snr_thresh_bwd() * noise) * (zeta / k).ln() * scale;
    Ok(Budgets { b, c, beta, zeta })
}

fn check_chain(powers: &ChainPowers, distances: &[f64]) -> Result<()> {
    if distances.len() != powers.links() {
        return Err(CoverError::LengthMismatch {
            expected: powers.links(),
            actual: distances.len(),
        });
    }
    if let Some(bad) = distances.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(CoverError::param(
            "distances",
            format!("every hop length must be finite and > 0, got {bad}"),
        ));
    }
    Ok(())
}

/// Sum of the per-hop exponents `thr·d_k^α·W·σ²/(s·pow_k·A)`, with
/// `s` the scheme divisor. The chain succeeds with probability `exp(-sum)`.
fn outage_exponent(
    env: &RadioEnvironment,
    powers: &ChainPowers,
    distances: &[f64],
    qos: &QosSpec,
    scheme: Scheme,
    dir: Direction,
) -> f64 {
    let alpha = env.pathloss_exponent;
    let scale = qos.snr_thresh(dir) * env.noise_power_watts()
        / (env.pathloss_linear() * scheme.exponent_divisor(powers.links()));
    powers
        .direction(dir)
        .iter()
        .zip(distances)
        .map(|(p, d)| d.powf(alpha) / p)
        .sum::<f64>()
        * scale
}

/// Probability that some hop of the chain falls below the SNR threshold.
pub fn outage_probability(
    env: &RadioEnvironment,
    powers: &ChainPowers,
    distances: &[f64],
    qos: &QosSpec,
    scheme: Scheme,
    dir: Direction,
) -> Result<f64> {
    check_chain(powers, distances)?;
    let x = outage_exponent(env, powers, distances, qos, scheme, dir);
    Ok((-(-x).exp_m1()).clamp(0.0, 1.0))
}

/// End-to-end rates `(forward, backward)` in bit/s.
pub fn end_to_end_rate(
    env: &RadioEnvironment,
    powers: &ChainPowers,
    distances: &[f64],
    qos: &QosSpec,
    scheme: Scheme,
) -> Result<(f64, f64)> {
    check_chain(powers, distances)?;
    let k = powers.links() as f64;
    let rate = |dir| {
        let x = outage_exponent(env, powers, distances, qos, scheme, dir);
        env.bandwidth_hz / (2.0 * k) * qos.snr_thresh(dir).ln_1p() * (-x).exp()
    };
    Ok((rate(Direction::Forward), rate(Direction::Backward)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn lte_defaults() -> (RadioEnvironment, QosSpec) {
        (RadioEnvironment::lte_default(), QosSpec::lte_default())
    }

    #[test]
    fn unit_conversions() {
        assert_relative_eq!(dbm_to_watts(30.0), 1.0);
        assert_relative_eq!(dbm_to_watts(20.0), 0.1, max_relative = 1e-15);
        assert_relative_eq!(db_to_linear(0.0), 1.0);
        assert_relative_eq!(watts_to_dbm(0.1), 20.0, max_relative = 1e-15);
        assert_relative_eq!(linear_to_db(100.0), 20.0);
    }

    #[test]
    fn path_gain_matches_lte_formula() {
        let (env, _) = lte_defaults();
        assert_relative_eq!(
            env.path_gain(1.0).unwrap(),
            db_to_linear(-15.3),
            max_relative = 1e-14
        );
        for d in [2.0, 37.0, 100.0, 1234.5] {
            let db = linear_to_db(env.path_gain(d).unwrap());
            assert_relative_eq!(db, -15.3 - 37.6 * f64::log10(d), max_relative = 1e-12);
        }
        // -15.3 - 37.6 * 2 dB at 100 m
        assert_relative_eq!(
            env.path_gain(100.0).unwrap(),
            10f64.powf(-9.05),
            max_relative = 1e-12
        );
        assert!(env.path_gain(0.0).is_err());
        assert!(env.path_gain(-3.0).is_err());
    }

    #[test]
    fn environment_validation() {
        assert!(RadioEnvironment::new(-15.3, 1.0, -174.0, 9e6).is_err());
        assert!(RadioEnvironment::new(-15.3, 3.0, -174.0, 0.0).is_err());
        assert!(RadioEnvironment::new(f64::NAN, 3.0, -174.0, 1.0).is_err());
        assert!(QosSpec::new(0.0, 1.0, 20.0, 20.0).is_err());
        assert!(QosSpec::new(1.0, 1.0, f64::INFINITY, 20.0).is_err());
    }

    #[test]
    fn beta_uses_natural_log() {
        let (env, qos) = lte_defaults();
        let bud = budgets(&env, &qos, 1, Scheme::TimeDivision).unwrap();
        // 9e6 * ln(101) / 4e6
        assert_relative_eq!(bud.beta, 9.0e6 * 101f64.ln() / 4.0e6, max_relative = 1e-14);
        assert!((bud.beta - 10.38).abs() < 0.01);
        assert_eq!((bud.beta - 1.0).floor(), 9.0);
        // base-2 logs would allow 13 relays instead.
        assert!(9.0e6 * 101f64.log2() / 4.0e6 > 14.9);
    }

    #[test]
    fn budget_vanishes_at_rate_limit() {
        let env = RadioEnvironment::lte_default();
        let k = 3;
        let rate = env.bandwidth_hz * 101f64.ln() / (2.0 * k as f64);
        let qos = QosSpec::new(rate, rate, 20.0, 20.0).unwrap();
        let bud = budgets(&env, &qos, k, Scheme::TimeDivision).unwrap();
        assert!(bud.b.abs() < 1e-6 * env.pathloss_linear() / env.noise_power_watts());
        assert!(budgets(&env, &qos, k + 1, Scheme::TimeDivision).unwrap().b < 0.0);
    }

    #[test]
    fn frequency_division_budget_scales_by_2k() {
        let (env, qos) = lte_defaults();
        for k in 1..=10 {
            let td = budgets(&env, &qos, k, Scheme::TimeDivision).unwrap();
            let fd = budgets(&env, &qos, k, Scheme::FrequencyDivision).unwrap();
            assert_relative_eq!(fd.b, 2.0 * k as f64 * td.b, max_relative = 1e-14);
            assert_relative_eq!(fd.c, 2.0 * k as f64 * td.c, max_relative = 1e-14);
        }
    }

    #[test]
    fn single_link_outage_closed_form() {
        let (env, qos) = lte_defaults();
        let p = 0.1;
        let d = 150.0;
        let powers = ChainPowers::uniform(p, 1).unwrap();
        let out = outage_probability(
            &env,
            &powers,
            &[d],
            &qos,
            Scheme::TimeDivision,
            Direction::Forward,
        )
        .unwrap();
        let expect = 1.0
            - (-100.0 * d.powf(3.76) * env.noise_power_watts() / (p * env.pathloss_linear())).exp();
        assert_relative_eq!(out, expect, max_relative = 1e-12);
    }

    #[test]
    fn near_zero_distance_limits() {
        let (env, qos) = lte_defaults();
        let powers = DevicePowers::ladder(20.0).chain(3).unwrap();
        let d = [1e-6; 3];
        let out = outage_probability(
            &env,
            &powers,
            &d,
            &qos,
            Scheme::TimeDivision,
            Direction::Backward,
        )
        .unwrap();
        assert!(out < 1e-12);
        let (bf, bb) = end_to_end_rate(&env, &powers, &d, &qos, Scheme::TimeDivision).unwrap();
        let cap = 9.0e6 / 6.0 * 101f64.ln();
        assert_relative_eq!(bf, cap, max_relative = 1e-12);
        assert_relative_eq!(bb, cap, max_relative = 1e-12);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let (env, qos) = lte_defaults();
        let powers = ChainPowers::uniform(0.1, 2).unwrap();
        assert!(matches!(
            end_to_end_rate(&env, &powers, &[1.0], &qos, Scheme::TimeDivision),
            Err(CoverError::LengthMismatch {
                expected: 2,
                actual: 1
            })
        ));
        assert!(ChainPowers::new(vec![1.0], vec![1.0, 1.0]).is_err());
        assert!(ChainPowers::new(vec![], vec![]).is_err());
        assert!(ChainPowers::new(vec![0.0], vec![1.0]).is_err());
    }

    #[test]
    fn device_mapping() {
        let dev = DevicePowers {
            bs_watts: 4.0,
            relay_watts: 2.0,
            dest_watts: 1.0,
        };
        let one = dev.chain(1).unwrap();
        assert_eq!(one.fwd_watts, vec![4.0]);
        assert_eq!(one.bwd_watts, vec![1.0]);
        let three = dev.chain(3).unwrap();
        assert_eq!(three.fwd_watts, vec![4.0, 2.0, 2.0]);
        assert_eq!(three.bwd_watts, vec![2.0, 2.0, 1.0]);
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("TD".parse::<Scheme>().unwrap(), Scheme::TimeDivision);
        assert_eq!("fd".parse::<Scheme>().unwrap(), Scheme::FrequencyDivision);
        assert!("cdma".parse::<Scheme>().is_err());
    }

    fn chain_strategy() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
        (1usize..6).prop_flat_map(|k| {
            (
                prop::collection::vec(1e-3f64..1.0, k),
                prop::collection::vec(1e-3f64..1.0, k),
                prop::collection::vec(1.0f64..300.0, k),
            )
        })
    }

    proptest! {
        #[test]
        fn rate_is_capacity_times_success((p, q, d) in chain_strategy(), fd in any::<bool>()) {
            let (env, qos) = lte_defaults();
            let scheme = if fd { Scheme::FrequencyDivision } else { Scheme::TimeDivision };
            let powers = ChainPowers::new(p, q).unwrap();
            let k = powers.links() as f64;
            let (bf, bb) = end_to_end_rate(&env, &powers, &d, &qos, scheme).unwrap();
            let of = outage_probability(&env, &powers, &d, &qos, scheme, Direction::Forward).unwrap();
            let ob = outage_probability(&env, &powers, &d, &qos, scheme, Direction::Backward).unwrap();
            let cap = 9.0e6 / (2.0 * k) * 101f64.ln();
            prop_assert!((bf - cap * (1.0 - of)).abs() <= 1e-9 * cap);
            prop_assert!((bb - cap * (1.0 - ob)).abs() <= 1e-9 * cap);
            prop_assert!((0.0..=1.0).contains(&of) && (0.0..=1.0).contains(&ob));
        }

        #[test]
        fn fd_matches_td_with_scaled_powers((p, q, d) in chain_strategy()) {
            let (env, qos) = lte_defaults();
            let k = p.len() as f64;
            let fd_powers = ChainPowers::new(p.clone(), q.clone()).unwrap();
            let td_powers = ChainPowers::new(
                p.iter().map(|x| 2.0 * k * x).collect(),
                q.iter().map(|x| 2.0 * k * x).collect(),
            ).unwrap();
            let (f1, b1) = end_to_end_rate(&env, &fd_powers, &d, &qos, Scheme::FrequencyDivision).unwrap();
            let (f2, b2) = end_to_end_rate(&env, &td_powers, &d, &qos, Scheme::TimeDivision).unwrap();
            prop_assert!((f1 - f2).abs() <= 1e-12 * f1.max(1e-300));
            prop_assert!((b1 - b2).abs() <= 1e-12 * b1.max(1e-300));
            let (f0, b0) = end_to_end_rate(&env, &fd_powers, &d, &qos, Scheme::TimeDivision).unwrap();
            prop_assert!(f1 >= f0 && b1 >= b0);
        }

        #[test]
        fn outage_increases_with_each_hop((p, q, d) in chain_strategy(), idx in 0usize..6, grow in 1.01f64..2.0) {
            let (env, qos) = lte_defaults();
            let k = p.len();
            let idx = idx % k;
            // stay away from the saturated tail where both are 1.0 in f64
            let d: Vec<f64> = d.iter().map(|x| x / 4.0).collect();
            let powers = ChainPowers::new(p, q).unwrap();
            let mut longer = d.clone();
            longer[idx] *= grow;
            for dir in [Direction::Forward, Direction::Backward] {
                let a = outage_probability(&env, &powers, &d, &qos, Scheme::TimeDivision, dir).unwrap();
                let b = outage_probability(&env, &powers, &longer, &qos, Scheme::TimeDivision, dir).unwrap();
                prop_assert!(b > a || a == 1.0);
            }
            let (f0, b0) = end_to_end_rate(&env, &powers, &d, &qos, Scheme::TimeDivision).unwrap();
            let (f1, b1) = end_to_end_rate(&env, &powers, &longer, &qos, Scheme::TimeDivision).unwrap();
            prop_assert!((f1 < f0 || f0 == 0.0) && (b1 < b0 || b0 == 0.0));
        }
    }
}
