use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use relaycover::channel::{DevicePowers, Direction, Scheme};
use relaycover::fadingsim::{estimate, SimConfig};
use relaycover::geometry::{classify_point, place_base_station, PlacementMode};
use relaycover::planner::{plan as build_plan, DestinationPlan};
use relaycover::relay_opt::{best_relay_count, solve_for_relays, ReachResult};
use relaycover::scenario::ScenarioFile;

use crate::table::{num, Table};
use crate::Failure;

fn emit(table: &Table, out: Option<&Path>) -> Result<(), Failure> {
    let res = match out {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| Failure::Output(format!("cannot create {}: {e}", path.display())))?;
            table.write_csv(f)
        }
        None => table.write_csv(io::stdout().lock()),
    };
    res.map_err(|e| Failure::Output(e.to_string()))
}

fn write_text(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    let res = match out {
        Some(path) => std::fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure::Output(e.to_string()))
}

fn placement_name(mode: PlacementMode) -> &'static str {
    match mode {
        PlacementMode::Anywhere => "anywhere",
        PlacementMode::ExteriorOrBoundary => "exterior_or_boundary",
    }
}

fn kkt_name(r: &ReachResult) -> &'static str {
    match r.kkt_case {
        relaycover::KktCase::NuOnly => "backward",
        relaycover::KktCase::LambdaOnly => "forward",
        relaycover::KktCase::Both => "both",
    }
}

/// Parses `lo:hi:step` into the list of sweep points.
pub fn parse_power_sweep(spec: &str) -> Result<Vec<f64>, Failure> {
    let bad = || {
        Failure::Input(format!(
            "--power-sweep expects lo:hi:step in dBm, got `{spec}`"
        ))
    };
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [lo, hi, step] = parts[..] else {
        return Err(bad());
    };
    if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0 && hi >= lo) {
        return Err(bad());
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

struct RelayRow {
    bs_dbm: f64,
    relays: usize,
    result: Option<ReachResult>,
}

pub fn relays(
    file: &ScenarioFile,
    relays: Option<usize>,
    power_sweep: Option<&str>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let env = file.env()?;
    let qos = file.qos()?;
    let scheme = file.scheme;
    let powers = &file.powers;
    let bs_levels = match power_sweep {
        Some(spec) => parse_power_sweep(spec)?,
        None => vec![powers.bs_dbm],
    };
    let sweeping_power = power_sweep.is_some();

    let mut rows = Vec::new();
    for bs_dbm in bs_levels {
        let dev = DevicePowers::from_dbm(
            bs_dbm,
            bs_dbm + (powers.relay_dbm - powers.bs_dbm),
            bs_dbm + (powers.dest_dbm - powers.bs_dbm),
        )?;
        match relays {
            Some(k) => rows.push(RelayRow {
                bs_dbm,
                relays: k,
                result: Some(solve_for_relays(&env, &qos, &dev, scheme, k)?),
            }),
            None => {
                let sweep = best_relay_count(&env, &qos, &dev, scheme)?;
                if sweeping_power {
                    let best = sweep
                        .rows
                        .into_iter()
                        .find(|r| r.relays == sweep.best_relays)
                        .expect("best row present");
                    rows.push(RelayRow {
                        bs_dbm,
                        relays: best.relays,
                        result: best.result,
                    });
                } else {
                    rows.extend(sweep.rows.into_iter().map(|r| RelayRow {
                        bs_dbm,
                        relays: r.relays,
                        result: r.result,
                    }));
                }
            }
        }
    }

    let width = rows.iter().map(|r| r.relays + 1).max().unwrap_or(1);
    let mut header: Vec<String> = [
        "scheme",
        "bs_power_dbm",
        "relays",
        "total_reach_m",
        "binding",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend((1..=width).map(|k| format!("d_{k}_m")));
    let mut table = Table::new(header);
    for row in rows {
        let mut cells = vec![
            scheme.short_name().to_string(),
            num(row.bs_dbm),
            row.relays.to_string(),
        ];
        match &row.result {
            Some(r) => {
                cells.push(num(r.tuple.total));
                cells.push(kkt_name(r).into());
                cells.extend(r.tuple.d.iter().map(|d| num(*d)));
            }
            None => cells.push(num(0.0)),
        }
        table.push(cells);
    }
    emit(&table, out)
}

pub fn cover(file: &ScenarioFile, out: Option<&Path>) -> Result<(), Failure> {
    let poly = file.polygon()?;
    let disk = place_base_station(&poly, file.placement_mode);
    let vertices = poly.input_order();
    let mut header: Vec<String> = [
        "placement_mode",
        "bs_x_m",
        "bs_y_m",
        "radius_m",
        "bs_region",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend((1..=vertices.len()).map(|i| format!("vertex_{i}_distance_m")));
    let mut table = Table::new(header);
    let region = format!("{:?}", classify_point(&poly, disk.center)).to_lowercase();
    let mut cells = vec![
        placement_name(file.placement_mode).to_string(),
        num(disk.center.x),
        num(disk.center.y),
        num(disk.radius),
        region,
    ];
    cells.extend(vertices.iter().map(|v| num(v.distance(disk.center))));
    table.push(cells);
    emit(&table, out)
}

pub fn plan(
    file: &ScenarioFile,
    json: bool,
    plan_out: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let scenario = file.to_scenario()?;
    let plan = build_plan(&scenario)?;
    let doc =
        serde_json::to_string_pretty(&plan).map_err(|e| Failure::Output(e.to_string()))? + "\n";
    if let Some(path) = plan_out {
        std::fs::write(path, &doc)
            .map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display())))?;
    }
    if json {
        return write_text(&doc, out);
    }

    let entries: Vec<(&str, &DestinationPlan)> = std::iter::once(("worst_case", &plan.worst_case))
        .chain(plan.destinations.iter().map(|d| ("destination", d)))
        .collect();
    let width = entries
        .iter()
        .map(|(_, d)| d.relay_positions.len())
        .max()
        .unwrap_or(0);
    let mut header: Vec<String> = [
        "kind",
        "scheme",
        "placement_mode",
        "bs_x_m",
        "bs_y_m",
        "single_hop_radius_m",
        "dest_x_m",
        "dest_y_m",
        "distance_m",
        "relay_count",
        "feasible",
        "achieved_reach_m",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for k in 1..=width {
        header.extend([
            format!("relay_{k}_x_m"),
            format!("relay_{k}_y_m"),
            format!("relay_{k}_offset_m"),
        ]);
    }
    let mut table = Table::new(header);
    for (kind, d) in entries {
        let mut cells = vec![
            kind.to_string(),
            plan.scheme.short_name().to_string(),
            placement_name(plan.placement_mode).to_string(),
            num(plan.bs_position.x),
            num(plan.bs_position.y),
            num(plan.single_hop_radius),
            num(d.destination.x),
            num(d.destination.y),
            num(d.distance),
            d.relay_count.to_string(),
            d.feasible.to_string(),
            num(d.achieved_reach),
        ];
        for p in &d.relay_positions {
            cells.extend([num(p.x), num(p.y), num(p.distance(plan.bs_position))]);
        }
        table.push(cells);
    }
    emit(&table, out)
}

pub fn simulate(
    file: &ScenarioFile,
    trials: u64,
    seed: u64,
    relays: usize,
    distances: Option<Vec<f64>>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    if trials == 0 {
        return Err(Failure::Input("--trials must be at least 1".into()));
    }
    let env = file.env()?;
    let qos = file.qos()?;
    let dev = file.devices()?;
    let scheme: Scheme = file.scheme;
    let (powers, distances) = match distances {
        Some(d) => {
            if d.is_empty() {
                return Err(Failure::Input("--distances needs at least one hop".into()));
            }
            (dev.chain(d.len())?, d)
        }
        None => {
            let r = solve_for_relays(&env, &qos, &dev, scheme, relays)?;
            (dev.chain(relays + 1)?, r.tuple.d)
        }
    };
    let links = distances.len();
    let report = estimate(&SimConfig {
        trials,
        seed,
        env,
        powers,
        distances,
        qos,
        scheme,
    })?;
    let mut table = Table::new([
        "direction",
        "scheme",
        "links",
        "trials",
        "seed",
        "empirical_outage",
        "std_error",
        "analytic_outage",
        "z_score",
        "empirical_rate_bps",
        "analytic_rate_bps",
    ]);
    for dir in [Direction::Forward, Direction::Backward] {
        let e = report.get(dir);
        table.push(vec![
            format!("{dir:?}").to_lowercase(),
            scheme.short_name().to_string(),
            links.to_string(),
            trials.to_string(),
            seed.to_string(),
            num(e.empirical),
            num(e.std_error),
            num(e.analytic),
            num(e.z_score),
            num(e.empirical_rate_bps),
            num(e.analytic_rate_bps),
        ]);
    }
    emit(&table, out)
}
