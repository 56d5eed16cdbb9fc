//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type P2 = (f64, f64);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dist(a: P2, b: P2) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

pub fn max_dist(pts: &[P2], c: P2) -> f64 {
    pts.iter().map(|p| dist(*p, c)).fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Minimum enclosing circle (Welzl, iterative move-to-front form)
// ---------------------------------------------------------------------------

fn circle2(a: P2, b: P2) -> (P2, f64) {
    let c = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    (c, dist(a, c))
}

fn circle3(a: P2, b: P2, c: P2) -> Option<(P2, f64)> {
    let (bx, by) = (b.0 - a.0, b.1 - a.1);
    let (cx, cy) = (c.0 - a.0, c.1 - a.1);
    let d = 2.0 * (bx * cy - by * cx);
    if d.abs() < 1e-12 * (bx * bx + by * by + cx * cx + cy * cy) {
        return None;
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    let center = (a.0 + ux, a.1 + uy);
    Some((center, ux.hypot(uy)))
}

fn inside(circle: (P2, f64), p: P2) -> bool {
    dist(circle.0, p) <= circle.1 * (1.0 + 1e-12) + 1e-12
}

/// Smallest circle containing every point.
pub fn welzl(points: &[P2], seed: u64) -> (P2, f64) {
    let mut pts = points.to_vec();
    let mut r = rng(seed);
    for i in (1..pts.len()).rev() {
        let j = r.random_range(0..=i);
        pts.swap(i, j);
    }
    let mut c = (pts[0], 0.0);
    for i in 1..pts.len() {
        if inside(c, pts[i]) {
            continue;
        }
        c = (pts[i], 0.0);
        for j in 0..i {
            if inside(c, pts[j]) {
                continue;
            }
            c = circle2(pts[i], pts[j]);
            for k in 0..j {
                if inside(c, pts[k]) {
                    continue;
                }
                // Collinear triples cannot reach here for a valid enclosing
                // sequence; fall back to the widest pair if they do.
                c = circle3(pts[i], pts[j], pts[k]).unwrap_or_else(|| {
                    [
                        circle2(pts[i], pts[j]),
                        circle2(pts[i], pts[k]),
                        circle2(pts[j], pts[k]),
                    ]
                    .into_iter()
                    .fold((pts[i], 0.0), |a, b| if b.1 > a.1 { b } else { a })
                });
            }
        }
    }
    c
}

// ---------------------------------------------------------------------------
// Point location (winding number) and the exterior/boundary grid search
// ---------------------------------------------------------------------------

fn seg_dist(p: P2, a: P2, b: P2) -> f64 {
    let (ex, ey) = (b.0 - a.0, b.1 - a.1);
    let l2 = ex * ex + ey * ey;
    let t = (((p.0 - a.0) * ex + (p.1 - a.1) * ey) / l2).clamp(0.0, 1.0);
    dist(p, (a.0 + t * ex, a.1 + t * ey))
}

fn winding(poly: &[P2], p: P2) -> i32 {
    let n = poly.len();
    let mut w = 0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let side = (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1);
        if a.1 <= p.1 {
            if b.1 > p.1 && side > 0.0 {
                w += 1;
            }
        } else if b.1 <= p.1 && side < 0.0 {
            w -= 1;
        }
    }
    w
}

pub fn diameter(poly: &[P2]) -> f64 {
    let mut d: f64 = 0.0;
    for a in poly {
        for b in poly {
            d = d.max(dist(*a, *b));
        }
    }
    d
}

/// True when `p` lies outside the polygon or within `tol` of its boundary.
pub fn admissible(poly: &[P2], p: P2, tol: f64) -> bool {
    let n = poly.len();
    if (0..n).any(|i| seg_dist(p, poly[i], poly[(i + 1) % n]) <= tol) {
        return true;
    }
    winding(poly, p) == 0
}

/// Best `(center, radius)` over a regular grid of admissible points plus
/// samples along every edge, refined around the coarse winner.
///
/// The result is attained by an admissible point, so it bounds the true
/// optimum from above; the fine pass spacing is `0.001 * diameter`.
pub fn constrained_grid(poly: &[P2]) -> (P2, f64) {
    let diam = diameter(poly);
    let tol = 1e-9 * diam;
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in poly {
        xmin = xmin.min(p.0);
        xmax = xmax.max(p.0);
        ymin = ymin.min(p.1);
        ymax = ymax.max(p.1);
    }
    let mut best = ((0.0, 0.0), f64::INFINITY);
    let consider = |c: P2, best: &mut (P2, f64)| {
        if admissible(poly, c, tol) {
            let r = max_dist(poly, c);
            if r < best.1 {
                *best = (c, r);
            }
        }
    };

    // coarse grid at 1% of the diameter; the optimum is never farther than
    // one diameter from the bounding box
    let h = 0.01 * diam;
    let nx = ((xmax - xmin + 2.0 * diam) / h).ceil() as usize;
    let ny = ((ymax - ymin + 2.0 * diam) / h).ceil() as usize;
    for i in 0..=nx {
        for j in 0..=ny {
            consider(
                (xmin - diam + i as f64 * h, ymin - diam + j as f64 * h),
                &mut best,
            );
        }
    }
    // boundary samples at the fine spacing
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let steps = (dist(a, b) / (0.001 * diam)).ceil() as usize;
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            consider((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)), &mut best);
        }
    }
    // fine grid around the coarse winner
    let h = 0.001 * diam;
    let (cx, cy) = best.0;
    let span = 30;
    for i in -span..=span {
        for j in -span..=span {
            consider((cx + i as f64 * h, cy + j as f64 * h), &mut best);
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Random polygons
// ---------------------------------------------------------------------------

/// Sorted angles with a minimum gap so neighbouring vertices stay apart.
fn spread_angles(r: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    let slot = tau / m as f64;
    let offset = r.random_range(0.0..tau);
    (0..m)
        .map(|i| offset + slot * (i as f64 + r.random_range(0.15..0.85)))
        .collect()
}

/// Star-shaped simple polygon with `m` vertices, not necessarily convex.
pub fn star_polygon(r: &mut ChaCha8Rng, m: usize) -> Vec<P2> {
    let c = (r.random_range(-500.0..500.0), r.random_range(-500.0..500.0));
    let scale = r.random_range(10.0..1000.0);
    spread_angles(r, m)
        .into_iter()
        .map(|a| {
            let rad = scale * r.random_range(0.3..1.0);
            (c.0 + rad * a.cos(), c.1 + rad * a.sin())
        })
        .collect()
}

/// Convex polygon: vertices on a rotated ellipse.
pub fn convex_polygon(r: &mut ChaCha8Rng, m: usize) -> Vec<P2> {
    let c = (r.random_range(-500.0..500.0), r.random_range(-500.0..500.0));
    let ax = r.random_range(10.0..1000.0);
    let ay = ax * r.random_range(0.2..1.0);
    let rot: f64 = r.random_range(0.0..std::f64::consts::PI);
    spread_angles(r, m)
        .into_iter()
        .map(|a| {
            let (x, y) = (ax * a.cos(), ay * a.sin());
            (
                c.0 + x * rot.cos() - y * rot.sin(),
                c.1 + x * rot.sin() + y * rot.cos(),
            )
        })
        .collect()
}

pub fn to_coords(poly: &[P2]) -> Vec<[f64; 2]> {
    poly.iter().map(|p| [p.0, p.1]).collect()
}

// ---------------------------------------------------------------------------
// Relay chain reach by grid search
// ---------------------------------------------------------------------------

/// Longest final hop that keeps both budgets, or `None` if already over.
fn last_hop(b_left: f64, c_left: f64, p: f64, q: f64, alpha: f64) -> Option<f64> {
    if b_left < 0.0 || c_left < 0.0 {
        return None;
    }
    Some((b_left * p).min(c_left * q).powf(1.0 / alpha))
}

/// Maximum `Σ d_k` subject to `Σ d_k^α/p_k ≤ b` and `Σ d_k^α/q_k ≤ c`,
/// for chains of at most three links.
///
/// The last hop is taken at its largest feasible value; each earlier hop is
/// searched on a grid that is repeatedly narrowed to the two cells around
/// the best point. Partial maxima of this problem are concave, so every
/// one-dimensional slice is unimodal and the narrowing never loses the peak.
pub fn grid_reach(b: f64, c: f64, p: &[f64], q: &[f64], alpha: f64) -> f64 {
    let k = p.len();
    assert!((1..=3).contains(&k) && q.len() == k);
    let mut prefix = Vec::with_capacity(k);
    reach_from(b, c, p, q, alpha, &mut prefix)
}

fn reach_from(b: f64, c: f64, p: &[f64], q: &[f64], alpha: f64, prefix: &mut Vec<f64>) -> f64 {
    let k = p.len();
    let used_b: f64 = prefix.iter().zip(p).map(|(d, p)| d.powf(alpha) / p).sum();
    let used_c: f64 = prefix.iter().zip(q).map(|(d, q)| d.powf(alpha) / q).sum();
    let i = prefix.len();
    if i == k - 1 {
        return match last_hop(b - used_b, c - used_c, p[i], q[i], alpha) {
            Some(last) => prefix.iter().sum::<f64>() + last,
            None => f64::NEG_INFINITY,
        };
    }
    let Some(hi) = last_hop(b - used_b, c - used_c, p[i], q[i], alpha) else {
        return f64::NEG_INFINITY;
    };
    let (mut lo, mut hi) = (0.0, hi);
    let mut best = (0.0, f64::NEG_INFINITY);
    let n = 48;
    for _ in 0..14 {
        let h = (hi - lo) / n as f64;
        for s in 0..=n {
            let x = lo + s as f64 * h;
            prefix.push(x);
            let v = reach_from(b, c, p, q, alpha, prefix);
            prefix.pop();
            if v > best.1 {
                best = (x, v);
            }
        }
        lo = (best.0 - h).max(0.0);
        hi = best.0 + h;
    }
    best.1
}

/// Budgets computed directly from raw parameters: path loss in dB, noise
/// PSD in dBm/Hz, bandwidth in Hz, rates in bit/s, thresholds in dB.
#[allow(clippy::too_many_arguments)]
pub fn raw_budgets(
    pathloss_db: f64,
    noise_dbm_hz: f64,
    bandwidth: f64,
    rate_f: f64,
    rate_b: f64,
    thr_f_db: f64,
    thr_b_db: f64,
    links: usize,
    fd: bool,
) -> (f64, f64) {
    let a = 10f64.powf(pathloss_db / 10.0);
    let n0 = 10f64.powf(noise_dbm_hz / 10.0) * 1e-3 * bandwidth;
    let gf = 10f64.powf(thr_f_db / 10.0);
    let gb = 10f64.powf(thr_b_db / 10.0);
    let k = links as f64;
    let beta = bandwidth * (1.0 + gf).ln() / (2.0 * rate_f);
    let zeta = bandwidth * (1.0 + gb).ln() / (2.0 * rate_b);
    let s = if fd { 2.0 * k } else { 1.0 };
    (
        a / (gf * n0) * (beta / k).ln() * s,
        a / (gb * n0) * (zeta / k).ln() * s,
    )
}
