//! Coverage planning for a mobile base station with decode-and-forward
//! relays.
//!
//! - [`channel`]: link model, budgets, outage and end-to-end rate.
//! - [`relay_opt`]: optimal hop lengths and relay counts.
//! - [`geometry`]: base-station placement over a polygon.
//! - [`planner`]: full deployment plans.
//! - [`fadingsim`]: Monte Carlo cross-check of the link model.
//! - [`scenario`]: JSON scenario documents.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod fadingsim;
pub mod geometry;
pub mod planner;
pub mod relay_opt;
pub mod scenario;

pub use channel::{
    Budgets, ChainPowers, DevicePowers, Direction, QosSpec, RadioEnvironment, Scheme,
};
pub use error::{CoverError, Result};
pub use geometry::{Disk, PlacementMode, Point, Polygon, RegionClass};
pub use planner::{DeploymentPlan, DestinationPlan, HopPlacement, Scenario};
pub use relay_opt::{
    DistanceTuple, KktCase, Multipliers, ReachResult, RelayRequirement, RelaySweep,
};
