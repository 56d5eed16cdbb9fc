//! End-to-end deployment plans: where the mobile base station goes and how
//! many relays each destination needs.

use serde::{Deserialize, Serialize};

use crate::channel::{DevicePowers, QosSpec, RadioEnvironment, Scheme};
use crate::error::{CoverError, Result};
use crate::geometry::{
    classify_point, place_base_station, PlacementMode, Point, Polygon, RegionClass,
};
use crate::relay_opt::{
    max_relay_count, min_relays_for_distance, solve_optimal_distances, RelayRequirement,
};

/// How hops are laid out when the destination is closer than the chain's
/// maximum reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopPlacement {
    /// Relays sit at their optimal offsets from the base station; only the
    /// last hop is shortened. Falls back to `Scaled` if that hop would vanish.
    #[default]
    Anchored,
    /// Every hop is shrunk by `distance / max_reach`.
    Scaled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub env: RadioEnvironment,
    pub qos: QosSpec,
    pub devices: DevicePowers,
    pub scheme: Scheme,
    pub polygon: Polygon,
    pub placement_mode: PlacementMode,
    pub destinations: Option<Vec<Point>>,
    pub hop_placement: HopPlacement,
}

impl Scenario {
    /// Checks parameter ranges and that every destination lies inside or
    /// on the polygon.
    pub fn validate(&self) -> Result<()> {
        self.env.validate()?;
        self.qos.validate()?;
        for (name, w) in [
            ("bs power", self.devices.bs_watts),
            ("relay power", self.devices.relay_watts),
            ("destination power", self.devices.dest_watts),
        ] {
            if !(w.is_finite() && w > 0.0) {
                return Err(CoverError::Scenario(format!(
                    "{name} must be finite and > 0"
                )));
            }
        }
        for (i, d) in self.destinations.iter().flatten().enumerate() {
            if !(d.x.is_finite() && d.y.is_finite()) {
                return Err(CoverError::Scenario(format!(
                    "destination {i} is not finite"
                )));
            }
            if classify_point(&self.polygon, *d) == RegionClass::Exterior {
                return Err(CoverError::Scenario(format!(
                    "destination {i} at ({}, {}) lies outside the polygon",
                    d.x, d.y
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DestinationPlan {
    pub destination: Point,
    /// Straight-line distance from the base station.
    pub distance: f64,
    pub relay_count: usize,
    /// Relay positions ordered from the base station outwards.
    pub relay_positions: Vec<Point>,
    /// Planned hop lengths; they sum to `distance` when feasible.
    pub hop_lengths: Vec<f64>,
    /// Maximum reach of the chosen relay count (best reach when infeasible).
    pub achieved_reach: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeploymentPlan {
    pub bs_position: Point,
    pub placement_mode: PlacementMode,
    pub scheme: Scheme,
    /// Radius of the smallest disk around the base station covering the polygon.
    pub covering_radius: f64,
    /// Reach of the base station without relays.
    pub single_hop_radius: f64,
    pub relay_bound: usize,
    /// Distance from the base station to each vertex, in input order.
    pub vertex_distances: Vec<f64>,
    /// Plan for the farthest vertex.
    pub worst_case: DestinationPlan,
    pub destinations: Vec<DestinationPlan>,
}

/// Reach of the base station alone.
pub fn coverage_radius(
    env: &RadioEnvironment,
    qos: &QosSpec,
    devices: &DevicePowers,
    scheme: Scheme,
) -> Result<f64> {
    Ok(
        solve_optimal_distances(env, qos, &devices.chain(1)?, scheme)?
            .tuple
            .total,
    )
}

fn lay_out(hops: &[f64], distance: f64, placement: HopPlacement) -> Vec<f64> {
    let total: f64 = hops.iter().sum();
    if let HopPlacement::Anchored = placement {
        let head: f64 = hops[..hops.len() - 1].iter().sum();
        let last = distance - head;
        if last > 0.0 {
            let mut out = hops.to_vec();
            *out.last_mut().expect("at least one hop") = last;
            return out;
        }
    }
    let s = distance / total;
    hops.iter().map(|h| h * s).collect()
}

/// Relay chain from `bs` to `dest`.
pub fn plan_destination(
    env: &RadioEnvironment,
    qos: &QosSpec,
    devices: &DevicePowers,
    scheme: Scheme,
    placement: HopPlacement,
    bs: Point,
    dest: Point,
) -> Result<DestinationPlan> {
    let distance = bs.distance(dest);
    if distance == 0.0 {
        return Ok(DestinationPlan {
            destination: dest,
            distance,
            relay_count: 0,
            relay_positions: Vec::new(),
            hop_lengths: vec![0.0],
            achieved_reach: coverage_radius(env, qos, devices, scheme)?,
            feasible: true,
        });
    }
    match min_relays_for_distance(env, qos, devices, scheme, distance)? {
        RelayRequirement::Reachable { relays, result } => {
            let hops = lay_out(&result.tuple.d, distance, placement);
            let ux = (dest.x - bs.x) / distance;
            let uy = (dest.y - bs.y) / distance;
            let mut along = 0.0;
            let relay_positions = hops[..relays]
                .iter()
                .map(|h| {
                    along += h;
                    Point::new(bs.x + ux * along, bs.y + uy * along)
                })
                .collect();
            Ok(DestinationPlan {
                destination: dest,
                distance,
                relay_count: relays,
                relay_positions,
                hop_lengths: hops,
                achieved_reach: result.tuple.total,
                feasible: true,
            })
        }
        RelayRequirement::Unreachable {
            best_relays,
            best_reach,
        } => Ok(DestinationPlan {
            destination: dest,
            distance,
            relay_count: best_relays,
            relay_positions: Vec::new(),
            hop_lengths: Vec::new(),
            achieved_reach: best_reach,
            feasible: false,
        }),
    }
}

/// Places the base station and plans a relay chain for every destination.
///
/// Unreachable destinations are flagged in the plan; only invalid input
/// or a rate requirement no single hop can meet is an error.
pub fn plan(scenario: &Scenario) -> Result<DeploymentPlan> {
    scenario.validate()?;
    let Scenario {
        env,
        qos,
        devices,
        scheme,
        ref polygon,
        placement_mode,
        ref destinations,
        hop_placement,
    } = *scenario;
    let disk = place_base_station(polygon, placement_mode);
    let bs = disk.center;
    let single_hop_radius = coverage_radius(&env, &qos, &devices, scheme)?;
    let relay_bound = max_relay_count(&env, &qos)?;
    let vertices = polygon.input_order();
    let vertex_distances: Vec<f64> = vertices.iter().map(|v| v.distance(bs)).collect();
    let max_distance = vertex_distances.iter().copied().fold(0.0, f64::max);
    // first vertex in input order among near-ties
    let farthest = vertices
        .iter()
        .zip(&vertex_distances)
        .find(|(_, d)| **d >= max_distance * (1.0 - 1e-9))
        .map(|(v, _)| *v)
        .expect("polygon has vertices");
    let worst_case = plan_destination(&env, &qos, &devices, scheme, hop_placement, bs, farthest)?;
    let destinations = destinations
        .iter()
        .flatten()
        .map(|d| plan_destination(&env, &qos, &devices, scheme, hop_placement, bs, *d))
        .collect::<Result<Vec<_>>>()?;
    Ok(DeploymentPlan {
        bs_position: bs,
        placement_mode,
        scheme,
        covering_radius: disk.radius,
        single_hop_radius,
        relay_bound,
        vertex_distances,
        worst_case,
        destinations,
    })
}
