//! Reach maximization for a decode-and-forward relay chain.
//!
//! With the rate requirement rewritten as the two budget constraints
//! `Σ d_k^α/p_k ≤ b` and `Σ d_k^α/q_k ≤ c`, maximizing `Σ d_k` is a
//! convex program. Stationarity of the Lagrangian gives every hop length
//! as a function of the two multipliers,
//!
//! ```text
//! d_k = (p_k·q_k / (α·λ·q_k + α·ν·p_k))^(1/(α-1))
//! ```
//!
//! so the solver only has to find `(λ, ν)` for each of the three
//! complementary-slackness cases (only the backward budget binds, only the
//! forward budget binds, both bind) and keep the feasible tuple with the
//! largest total.

use serde::{Deserialize, Serialize};

use crate::channel::{
    budgets, Budgets, ChainPowers, DevicePowers, Direction, QosSpec, RadioEnvironment, Scheme,
};
use crate::error::{CoverError, Result};

/// Relative slack allowed when checking a budget constraint.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Relative difference under which two candidate totals count as tied.
pub const TIE_TOL: f64 = 1e-9;

const MAX_BISECTIONS: usize = 400;
const MULTIPLIER_RTOL: f64 = 1e-12;
const OUTER_RTOL: f64 = 1e-12;

/// Hop lengths `d_1..d_K` of a chain, base station first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceTuple {
    pub d: Vec<f64>,
    pub total: f64,
}

impl DistanceTuple {
    pub fn new(d: Vec<f64>) -> Self {
        let total = d.iter().sum();
        DistanceTuple { d, total }
    }

    /// `Σ d_k^α / pow_k`.
    pub fn load(&self, powers: &[f64], alpha: f64) -> f64 {
        constraint_load(&self.d, powers, alpha)
    }

    /// Distances of the relays from the base station.
    pub fn relay_offsets(&self) -> Vec<f64> {
        self.d[..self.d.len() - 1]
            .iter()
            .scan(0.0, |acc, d| {
                *acc += d;
                Some(*acc)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Multipliers {
    pub lambda: f64,
    pub nu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KktCase {
    /// `λ = 0`, `ν > 0`: only the backward budget binds.
    NuOnly,
    /// `λ > 0`, `ν = 0`: only the forward budget binds.
    LambdaOnly,
    /// Both budgets bind.
    Both,
}

impl KktCase {
    fn preference(self) -> u8 {
        match self {
            KktCase::Both => 2,
            KktCase::LambdaOnly => 1,
            KktCase::NuOnly => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReachResult {
    pub tuple: DistanceTuple,
    pub multipliers: Multipliers,
    /// Constraints that hold with equality (within [`FEASIBILITY_TOL`]).
    pub active_constraints: Vec<Direction>,
    pub kkt_case: KktCase,
    pub budgets: Budgets,
}

fn constraint_load(d: &[f64], powers: &[f64], alpha: f64) -> f64 {
    d.iter().zip(powers).map(|(d, p)| d.powf(alpha) / p).sum()
}

/// Hop lengths solving the stationarity conditions for given multipliers.
pub fn distances_from_multipliers(
    mult: Multipliers,
    powers: &ChainPowers,
    alpha: f64,
) -> Result<Vec<f64>> {
    if !(mult.lambda >= 0.0 && mult.nu >= 0.0) {
        return Err(CoverError::param("multipliers", "must be nonnegative"));
    }
    if mult.lambda == 0.0 && mult.nu == 0.0 {
        return Err(CoverError::param(
            "multipliers",
            "at least one must be positive",
        ));
    }
    let e = 1.0 / (alpha - 1.0);
    Ok(powers
        .fwd_watts
        .iter()
        .zip(&powers.bwd_watts)
        .map(|(p, q)| (p * q / (alpha * mult.lambda * q + alpha * mult.nu * p)).powf(e))
        .collect())
}

/// Finds the root of a strictly decreasing function on `(0, ∞)` by
/// bracket expansion and bisection in log space.
fn decreasing_root(f: impl Fn(f64) -> f64, start: f64, rtol: f64) -> f64 {
    let mut lo = start;
    let mut hi = start;
    while f(lo) <= 0.0 {
        lo /= 2.0;
        if lo < 1e-300 {
            return lo;
        }
    }
    while f(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return hi;
        }
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= rtol * hi {
            break;
        }
        let mid = (lo * hi).sqrt();
        let mid = if mid > lo && mid < hi {
            mid
        } else {
            0.5 * (lo + hi)
        };
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Multiplier and hop lengths when a single budget binds.
///
/// Solves `Σ pow_k^(1/(α-1)) / (α·m)^(α/(α-1)) = budget` for `m`; the
/// hop lengths are then `(pow_k/(α·m))^(1/(α-1))`.
pub fn solve_single_constraint(budget: f64, powers: &[f64], alpha: f64) -> Result<(f64, Vec<f64>)> {
    if !(budget.is_finite() && budget > 0.0) {
        return Err(CoverError::InfeasibleLinkCount {
            links: powers.len(),
            reason: format!("budget must be > 0, got {budget}"),
        });
    }
    if powers.is_empty() {
        return Err(CoverError::param(
            "powers",
            "a chain needs at least one link",
        ));
    }
    let e = 1.0 / (alpha - 1.0);
    let num: f64 = powers.iter().map(|p| p.powf(e)).sum();
    let g = |m: f64| num / (alpha * m).powf(alpha * e) - budget;
    let start = powers[0] / alpha;
    let m = decreasing_root(g, start, MULTIPLIER_RTOL);
    let d = powers.iter().map(|p| (p / (alpha * m)).powf(e)).collect();
    Ok((m, d))
}

/// Left sides of the two budget equations at `(λ, ν)`.
fn loads_at(mult: Multipliers, powers: &ChainPowers, alpha: f64) -> (f64, f64) {
    let d = distances_from_multipliers(mult, powers, alpha).expect("positive multipliers");
    (
        constraint_load(&d, &powers.fwd_watts, alpha),
        constraint_load(&d, &powers.bwd_watts, alpha),
    )
}

/// Both budgets binding with `λ > 0` and `ν > 0`.
///
/// For each `λ` below the forward-only multiplier, the forward equation
/// fixes `ν(λ)`; the backward residual along that curve is bisected in
/// `λ`. Returns `None` when the residual does not change sign inside the
/// open bracket, i.e. when no strictly positive solution exists.
pub fn solve_both_constraints(
    b: f64,
    c: f64,
    powers: &ChainPowers,
    alpha: f64,
) -> Result<Option<(Multipliers, Vec<f64>)>> {
    if !(b > 0.0 && c > 0.0) {
        return Err(CoverError::InfeasibleLinkCount {
            links: powers.links(),
            reason: format!("budgets must be > 0, got b = {b}, c = {c}"),
        });
    }
    let (lambda_max, _) = solve_single_constraint(b, &powers.fwd_watts, alpha)?;

    // ν solving the forward equation for a fixed λ in [0, λ_max).
    let nu_for = |lambda: f64| {
        let f = |nu: f64| loads_at(Multipliers { lambda, nu }, powers, alpha).0 - b;
        decreasing_root(f, lambda_max.max(1e-300), MULTIPLIER_RTOL)
    };
    let residual = |lambda: f64| {
        let nu = nu_for(lambda);
        loads_at(Multipliers { lambda, nu }, powers, alpha).1 - c
    };

    let r_lo = residual(0.0);
    let r_hi = constraint_load(
        &distances_from_multipliers(
            Multipliers {
                lambda: lambda_max,
                nu: 0.0,
            },
            powers,
            alpha,
        )?,
        &powers.bwd_watts,
        alpha,
    ) - c;

    let tol = FEASIBILITY_TOL * c;
    if r_lo.abs() <= tol && r_hi.abs() <= tol {
        // Both budgets coincide along the whole curve; any split is optimal.
        let lambda = 0.5 * lambda_max;
        let nu = nu_for(lambda);
        let d = distances_from_multipliers(Multipliers { lambda, nu }, powers, alpha)?;
        return Ok(Some((Multipliers { lambda, nu }, d)));
    }
    if r_lo.signum() == r_hi.signum() || r_lo == 0.0 || r_hi == 0.0 {
        return Ok(None);
    }

    let (mut lo, mut hi) = (0.0, lambda_max);
    let lo_positive = r_lo > 0.0;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= OUTER_RTOL * lambda_max {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    let nu = nu_for(lambda);
    if !(lambda > 0.0 && nu > 0.0) || lambda >= lambda_max {
        return Ok(None);
    }
    let mult = Multipliers { lambda, nu };
    let d = distances_from_multipliers(mult, powers, alpha)?;
    Ok(Some((mult, d)))
}

fn feasible(load: f64, budget: f64) -> bool {
    load <= budget * (1.0 + FEASIBILITY_TOL)
}

/// Hop lengths maximizing the total reach of a chain with the given
/// per-link powers.
pub fn solve_optimal_distances(
    env: &RadioEnvironment,
    qos: &QosSpec,
    powers: &ChainPowers,
    scheme: Scheme,
) -> Result<ReachResult> {
    let links = powers.links();
    let bud = budgets(env, qos, links, scheme)?;
    if !(bud.b > 0.0 && bud.c > 0.0) {
        return Err(CoverError::InfeasibleLinkCount {
            links,
            reason: format!(
                "rate requirement leaves no budget (b = {:.6e}, c = {:.6e}); at most {} link(s) are allowed",
                bud.b,
                bud.c,
                bud.beta.min(bud.zeta).floor().max(0.0)
            ),
        });
    }
    solve_budgeted(bud, powers, env.pathloss_exponent)
}

/// Three-case KKT selection on explicit budgets.
pub fn solve_budgeted(bud: Budgets, powers: &ChainPowers, alpha: f64) -> Result<ReachResult> {
    let links = powers.links();
    let mut candidates: Vec<(KktCase, Multipliers, Vec<f64>)> = Vec::with_capacity(3);
    let (nu, d) = solve_single_constraint(bud.c, &powers.bwd_watts, alpha)?;
    if feasible(constraint_load(&d, &powers.fwd_watts, alpha), bud.b) {
        candidates.push((KktCase::NuOnly, Multipliers { lambda: 0.0, nu }, d));
    }
    let (lambda, d) = solve_single_constraint(bud.b, &powers.fwd_watts, alpha)?;
    if feasible(constraint_load(&d, &powers.bwd_watts, alpha), bud.c) {
        candidates.push((KktCase::LambdaOnly, Multipliers { lambda, nu: 0.0 }, d));
    }
    if let Some((mult, d)) = solve_both_constraints(bud.b, bud.c, powers, alpha)? {
        candidates.push((KktCase::Both, mult, d));
    }

    let best = candidates
        .into_iter()
        .map(|(case, mult, d)| (case, mult, DistanceTuple::new(d)))
        .reduce(|best, cand| {
            let scale = best.2.total.max(cand.2.total);
            if (cand.2.total - best.2.total).abs() <= TIE_TOL * scale {
                if cand.0.preference() > best.0.preference() {
                    cand
                } else {
                    best
                }
            } else if cand.2.total > best.2.total {
                cand
            } else {
                best
            }
        })
        .ok_or_else(|| CoverError::InfeasibleLinkCount {
            links,
            reason: "no KKT case produced a feasible tuple".into(),
        })?;

    let (kkt_case, multipliers, tuple) = best;
    let mut active_constraints = Vec::with_capacity(2);
    if (tuple.load(&powers.fwd_watts, alpha) - bud.b).abs() <= FEASIBILITY_TOL * bud.b {
        active_constraints.push(Direction::Forward);
    }
    if (tuple.load(&powers.bwd_watts, alpha) - bud.c).abs() <= FEASIBILITY_TOL * bud.c {
        active_constraints.push(Direction::Backward);
    }
    Ok(ReachResult {
        tuple,
        multipliers,
        active_constraints,
        kkt_case,
        budgets: bud,
    })
}

/// Closed-form optimum when every link uses power `p`.
///
/// Returns `(per_link_distance, total_reach)`. With asymmetric rate
/// requirements the smaller of the two budgets binds.
pub fn identical_closed_form(
    env: &RadioEnvironment,
    qos: &QosSpec,
    p: f64,
    links: usize,
    scheme: Scheme,
) -> Result<(f64, f64)> {
    let td = budgets(env, qos, links, Scheme::TimeDivision)?;
    let b = td.b.min(td.c);
    if !(b > 0.0) {
        return Err(CoverError::InfeasibleLinkCount {
            links,
            reason: format!("budget must be > 0, got {b}"),
        });
    }
    let inv = 1.0 / env.pathloss_exponent;
    let k = links as f64;
    Ok(match scheme {
        Scheme::TimeDivision => {
            let d = (b * p / k).powf(inv);
            (d, (b * p).powf(inv) * k.powf(1.0 - inv))
        }
        Scheme::FrequencyDivision => {
            let d = (2.0 * b * p).powf(inv);
            (d, d * k)
        }
    })
}

/// Link counts bracketing the peak of the identical-power reach curve:
/// reach increases up to the first value and decreases from the second.
pub fn prop2_turning_points(
    env: &RadioEnvironment,
    qos: &QosSpec,
    scheme: Scheme,
) -> Result<(u64, u64)> {
    let beta = crate::channel::beta_for(env, qos, Direction::Forward);
    if !(beta > 0.0) {
        return Err(CoverError::param("qos", "rate requirement admits no link"));
    }
    let alpha = env.pathloss_exponent;
    let x = match scheme {
        Scheme::TimeDivision => beta * (1.0 / (1.0 - alpha)).exp(),
        Scheme::FrequencyDivision => beta * (-1.0 / alpha).exp(),
    };
    Ok((x.floor() as u64, x.ceil() as u64))
}

/// Largest relay count `K-1` for which both budgets stay nonnegative.
pub fn max_relay_count(env: &RadioEnvironment, qos: &QosSpec) -> Result<usize> {
    let beta = crate::channel::beta_for(env, qos, Direction::Forward);
    let zeta = crate::channel::beta_for(env, qos, Direction::Backward);
    let bound = (beta - 1.0).floor().min((zeta - 1.0).floor());
    if bound < 0.0 {
        return Err(CoverError::InfeasibleLinkCount {
            links: 1,
            reason: format!(
                "rate requirement exceeds the single-hop capacity (beta = {beta:.6}, zeta = {zeta:.6})"
            ),
        });
    }
    Ok(bound as usize)
}

/// One row of a relay-count sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub relays: usize,
    /// `None` when the budget is exactly zero at this link count.
    pub result: Option<ReachResult>,
}

impl SweepRow {
    pub fn total(&self) -> f64 {
        self.result.as_ref().map_or(0.0, |r| r.tuple.total)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaySweep {
    pub best_relays: usize,
    pub max_reach: f64,
    pub rows: Vec<SweepRow>,
}

/// Optimal chain for an explicit relay count with the role-based power
/// mapping, rejecting counts above the rate bound.
pub fn solve_for_relays(
    env: &RadioEnvironment,
    qos: &QosSpec,
    devices: &DevicePowers,
    scheme: Scheme,
    relays: usize,
) -> Result<ReachResult> {
    let bound = max_relay_count(env, qos)?;
    if relays > bound {
        return Err(CoverError::RelayBoundExceeded {
            requested: relays,
            bound,
        });
    }
    solve_optimal_distances(env, qos, &devices.chain(relays + 1)?, scheme)
}

/// Evaluates every admissible relay count and returns the best one with
/// the full table.
pub fn best_relay_count(
    env: &RadioEnvironment,
    qos: &QosSpec,
    devices: &DevicePowers,
    scheme: Scheme,
) -> Result<RelaySweep> {
    let bound = max_relay_count(env, qos)?;
    let mut rows = Vec::with_capacity(bound + 1);
    for relays in 0..=bound {
        let result = match solve_optimal_distances(env, qos, &devices.chain(relays + 1)?, scheme) {
            Ok(r) => Some(r),
            // b or c exactly zero at the bound
            Err(CoverError::InfeasibleLinkCount { .. }) if relays == bound => None,
            Err(e) => return Err(e),
        };
        rows.push(SweepRow { relays, result });
    }
    let best = rows.iter().fold(&rows[0], |best, row| {
        if row.total() > best.total() {
            row
        } else {
            best
        }
    });
    Ok(RelaySweep {
        best_relays: best.relays,
        max_reach: best.total(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RelayRequirement {
    /// The fewest relays whose optimal chain reaches the target.
    Reachable { relays: usize, result: ReachResult },
    /// No admissible relay count reaches the target.
    Unreachable { best_relays: usize, best_reach: f64 },
}

/// Fewest relays whose maximum reach covers `target` meters.
pub fn min_relays_for_distance(
    env: &RadioEnvironment,
    qos: &QosSpec,
    devices: &DevicePowers,
    scheme: Scheme,
    target: f64,
) -> Result<RelayRequirement> {
    if !(target.is_finite() && target > 0.0) {
        return Err(CoverError::param(
            "target",
            format!("must be finite and > 0, got {target}"),
        ));
    }
    let bound = max_relay_count(env, qos)?;
    let mut best = (0, 0.0);
    for relays in 0..=bound {
        let result = match solve_optimal_distances(env, qos, &devices.chain(relays + 1)?, scheme) {
            Ok(r) => r,
            Err(CoverError::InfeasibleLinkCount { .. }) if relays == bound => break,
            Err(e) => return Err(e),
        };
        if result.tuple.total >= target {
            return Ok(RelayRequirement::Reachable { relays, result });
        }
        if result.tuple.total > best.1 {
            best = (relays, result.tuple.total);
        }
    }
    Ok(RelayRequirement::Unreachable {
        best_relays: best.0,
        best_reach: best.1,
    })
}
