//! JSON scenario documents.
//!
//! Every section and field is optional; omitted values fall back to the
//! LTE defaults (20 dBm base station with a 3 dB step down per role, and
//! the reference quadrilateral). Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::channel::{DevicePowers, QosSpec, RadioEnvironment, Scheme};
use crate::error::{CoverError, Result};
use crate::geometry::{PlacementMode, Point, Polygon};
use crate::planner::{HopPlacement, Scenario};

/// Reference deployment area, in meters.
pub const DEFAULT_POLYGON: [[f64; 2]; 4] =
    [[0.0, 350.0], [300.0, 650.0], [500.0, 600.0], [600.0, 300.0]];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioSection {
    pub pathloss_const_db: f64,
    pub pathloss_exponent: f64,
    pub noise_psd_dbm_per_hz: f64,
    pub bandwidth_mhz: f64,
}

impl Default for RadioSection {
    fn default() -> Self {
        let env = RadioEnvironment::lte_default();
        RadioSection {
            pathloss_const_db: env.pathloss_const_db,
            pathloss_exponent: env.pathloss_exponent,
            noise_psd_dbm_per_hz: env.noise_psd_dbm_per_hz,
            bandwidth_mhz: env.bandwidth_hz / 1e6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QosSection {
    pub rate_fwd_mbps: f64,
    pub rate_bwd_mbps: f64,
    pub snr_fwd_db: f64,
    pub snr_bwd_db: f64,
}

impl Default for QosSection {
    fn default() -> Self {
        QosSection {
            rate_fwd_mbps: 2.0,
            rate_bwd_mbps: 2.0,
            snr_fwd_db: 20.0,
            snr_bwd_db: 20.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowerSection {
    pub bs_dbm: f64,
    pub relay_dbm: f64,
    pub dest_dbm: f64,
}

impl Default for PowerSection {
    fn default() -> Self {
        PowerSection {
            bs_dbm: 20.0,
            relay_dbm: 17.0,
            dest_dbm: 14.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolygonSection {
    pub vertices: Vec<[f64; 2]>,
}

impl Default for PolygonSection {
    fn default() -> Self {
        PolygonSection {
            vertices: DEFAULT_POLYGON.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioFile {
    pub radio: RadioSection,
    pub qos: QosSection,
    pub powers: PowerSection,
    pub scheme: Scheme,
    pub polygon: PolygonSection,
    pub placement_mode: PlacementMode,
    pub destinations: Option<Vec<[f64; 2]>>,
    pub hop_placement: HopPlacement,
}

impl Default for ScenarioFile {
    fn default() -> Self {
        ScenarioFile {
            radio: RadioSection::default(),
            qos: QosSection::default(),
            powers: PowerSection::default(),
            scheme: Scheme::TimeDivision,
            polygon: PolygonSection::default(),
            placement_mode: PlacementMode::Anywhere,
            destinations: None,
            hop_placement: HopPlacement::Anchored,
        }
    }
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CoverError::Scenario(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn env(&self) -> Result<RadioEnvironment> {
        let r = &self.radio;
        RadioEnvironment::new(
            r.pathloss_const_db,
            r.pathloss_exponent,
            r.noise_psd_dbm_per_hz,
            r.bandwidth_mhz * 1e6,
        )
    }

    pub fn qos(&self) -> Result<QosSpec> {
        let q = &self.qos;
        QosSpec::new(
            q.rate_fwd_mbps * 1e6,
            q.rate_bwd_mbps * 1e6,
            q.snr_fwd_db,
            q.snr_bwd_db,
        )
    }

    pub fn devices(&self) -> Result<DevicePowers> {
        let p = &self.powers;
        DevicePowers::from_dbm(p.bs_dbm, p.relay_dbm, p.dest_dbm)
    }

    pub fn polygon(&self) -> Result<Polygon> {
        Polygon::from_coords(&self.polygon.vertices)
    }

    /// Builds and validates the library scenario.
    pub fn to_scenario(&self) -> Result<Scenario> {
        let scenario = Scenario {
            env: self.env()?,
            qos: self.qos()?,
            devices: self.devices()?,
            scheme: self.scheme,
            polygon: self.polygon()?,
            placement_mode: self.placement_mode,
            destinations: self
                .destinations
                .as_ref()
                .map(|d| d.iter().copied().map(Point::from).collect()),
            hop_placement: self.hop_placement,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}
