//! Base-station placement over a simple polygon.
//!
//! Covering a polygon with a disk is the same as covering its vertices, so
//! the best unrestricted position is the center of the minimum enclosing
//! disk of the vertex set. That disk is fixed either by two vertices on a
//! diameter or by three on its circumference, which gives a finite
//! candidate set: pair midpoints and triangle circumcenters.
//!
//! When the station must stay outside or on the boundary, two more
//! families appear: the foot of the perpendicular from a vertex onto an
//! edge, and the point of an edge equidistant from two vertices. Polygon
//! corners are added as well, since a reflex corner can be optimal with a
//! single farthest vertex.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{CoverError, Result};

/// Relative tolerance for boundary tests and degenerate denominators.
pub const GEOM_REL_EPS: f64 = 1e-9;
/// Relative difference under which two candidate radii count as tied.
pub const RADIUS_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order on `(x, y)`.
    fn lex_cmp(&self, o: &Point) -> Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionClass {
    Interior,
    Boundary,
    Exterior,
}

/// Where the base station may be placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlacementMode {
    #[default]
    Anywhere,
    ExteriorOrBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

/// A simple polygon, stored counter-clockwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polygon {
    vertices: Vec<Point>,
    reversed: bool,
    convex: bool,
    diameter: f64,
}

fn segments_intersect(a: Point, b: Point, c: Point, d: Point, eps: f64) -> bool {
    // Proper crossings plus touching within eps.
    let d1 = b.sub(a).cross(c.sub(a));
    let d2 = b.sub(a).cross(d.sub(a));
    let d3 = d.sub(c).cross(a.sub(c));
    let d4 = d.sub(c).cross(b.sub(c));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    point_segment_distance(c, a, b) <= eps
        || point_segment_distance(d, a, b) <= eps
        || point_segment_distance(a, c, d) <= eps
        || point_segment_distance(b, c, d) <= eps
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let e = b.sub(a);
    let len2 = e.dot(e);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (p.sub(a).dot(e) / len2).clamp(0.0, 1.0);
    p.distance(a.add(e.scale(t)))
}

impl Polygon {
    /// Validates and normalizes a vertex list.
    ///
    /// Rejects fewer than three vertices, non-finite coordinates, repeated
    /// consecutive vertices, collinear vertex sets and self-intersections.
    /// Clockwise input is reversed in place, keeping the first vertex first.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let m = vertices.len();
        if m < 3 {
            return Err(CoverError::InvalidPolygon(format!(
                "need at least 3 vertices, got {m}"
            )));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(CoverError::InvalidPolygon(format!(
                "vertex {i} is not finite"
            )));
        }
        let mut diameter = 0.0f64;
        for (i, a) in vertices.iter().enumerate() {
            for b in &vertices[i + 1..] {
                diameter = diameter.max(a.distance(*b));
            }
        }
        let eps = GEOM_REL_EPS * diameter;
        for i in 0..m {
            if vertices[i].distance(vertices[(i + 1) % m]) <= eps {
                return Err(CoverError::InvalidPolygon(format!(
                    "vertices {i} and {} coincide",
                    (i + 1) % m
                )));
            }
        }
        let spread = vertices
            .iter()
            .map(|v| v.sub(vertices[0]).cross(vertices[1].sub(vertices[0])).abs())
            .fold(0.0, f64::max);
        if spread <= eps * diameter {
            return Err(CoverError::InvalidPolygon(
                "all vertices are collinear".into(),
            ));
        }
        for i in 0..m {
            let (a, b) = (vertices[i], vertices[(i + 1) % m]);
            for j in i + 1..m {
                let (c, d) = (vertices[j], vertices[(j + 1) % m]);
                let adjacent = j == i + 1 || (i == 0 && j == m - 1);
                if adjacent {
                    // Shared endpoint; reject only a fold-back onto the previous edge.
                    let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    let u = p.sub(shared);
                    let w = q.sub(shared);
                    if u.cross(w).abs() <= eps * u.norm().max(w.norm()) && u.dot(w) > 0.0 {
                        return Err(CoverError::InvalidPolygon(format!(
                            "edges {i} and {j} overlap"
                        )));
                    }
                } else if segments_intersect(a, b, c, d, eps) {
                    return Err(CoverError::InvalidPolygon(format!(
                        "edges {i} and {j} intersect"
                    )));
                }
            }
        }

        let signed_area: f64 = (0..m)
            .map(|i| vertices[i].cross(vertices[(i + 1) % m]))
            .sum::<f64>()
            * 0.5;
        let mut vertices = vertices;
        let reversed = signed_area < 0.0;
        if reversed {
            vertices[1..].reverse();
        }
        let convex = (0..m).all(|i| {
            let a = vertices[i];
            let b = vertices[(i + 1) % m];
            let c = vertices[(i + 2) % m];
            b.sub(a).cross(c.sub(b)) >= -eps * diameter
        });
        Ok(Polygon {
            vertices,
            reversed,
            convex,
            diameter,
        })
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    /// Vertices in counter-clockwise order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Vertices in the order they were given.
    pub fn input_order(&self) -> Vec<Point> {
        let mut v = self.vertices.clone();
        if self.reversed {
            v[1..].reverse();
        }
        v
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn eps(&self) -> f64 {
        GEOM_REL_EPS * self.diameter
    }

    /// Edges `(v_i, v_{i+1})` with wrap-around.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let m = self.vertices.len();
        (0..m).map(move |i| (self.vertices[i], self.vertices[(i + 1) % m]))
    }

    pub fn classify_point(&self, p: Point) -> RegionClass {
        classify_point(self, p)
    }
}

/// Interior, boundary or exterior, by ray casting with an edge-distance
/// tolerance of `1e-9 × diameter` for the boundary.
pub fn classify_point(poly: &Polygon, p: Point) -> RegionClass {
    let eps = poly.eps();
    if poly
        .edges()
        .any(|(a, b)| point_segment_distance(p, a, b) <= eps)
    {
        return RegionClass::Boundary;
    }
    let mut inside = false;
    for (a, b) in poly.edges() {
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        RegionClass::Interior
    } else {
        RegionClass::Exterior
    }
}

/// Midpoint of two vertices: the center when they span a diameter.
pub fn pair_candidate(a: Point, b: Point) -> Result<Point> {
    if a == b {
        return Err(CoverError::Degenerate(
            "pair candidate needs two distinct points",
        ));
    }
    Ok(Point::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0))
}

/// Circumcenter of a triangle, `None` for (near-)collinear points.
pub fn circumcenter(a: Point, b: Point, c: Point) -> Option<Point> {
    // Same closed form, evaluated relative to `a` for conditioning.
    let (b, c) = (b.sub(a), c.sub(a));
    let denom = 2.0 * b.cross(c);
    let scale = b.norm().max(c.norm()).max(b.distance(c));
    if denom.abs() <= GEOM_REL_EPS * scale * scale || !denom.is_finite() {
        return None;
    }
    let b2 = b.dot(b);
    let c2 = c.dot(c);
    let x = (b2 * c.y - c2 * b.y) / denom;
    let y = (c2 * b.x - b2 * c.x) / denom;
    Some(Point::new(a.x + x, a.y + y))
}

/// Farthest vertex distance from `p`: the radius a station at `p` needs.
pub fn max_dist_to_vertices(poly: &Polygon, p: Point) -> f64 {
    poly.vertices
        .iter()
        .map(|v| v.distance(p))
        .fold(0.0, f64::max)
}

/// Projection of a vertex onto the line through an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Foot {
    pub point: Point,
    /// Position along the edge: 0 at the first endpoint, 1 at the second.
    pub t: f64,
    pub on_segment: bool,
}

pub fn foot_of_perpendicular(v: Point, a: Point, b: Point) -> Result<Foot> {
    let e = b.sub(a);
    let len2 = e.dot(e);
    if len2 == 0.0 {
        return Err(CoverError::Degenerate("edge endpoints coincide"));
    }
    let t = v.sub(a).dot(e) / len2;
    let tol = GEOM_REL_EPS;
    Ok(Foot {
        point: a.add(e.scale(t)),
        t,
        on_segment: (-tol..=1.0 + tol).contains(&t),
    })
}

/// Point of edge `a–b` equidistant from `pj` and `pk`.
///
/// `None` when the perpendicular bisector of `pj–pk` misses the edge's
/// line or crosses it outside the segment.
pub fn bisector_edge_candidate(pj: Point, pk: Point, a: Point, b: Point) -> Option<Point> {
    let w = pk.sub(pj);
    let e = b.sub(a);
    if pj == pk || e.dot(e) == 0.0 {
        return None;
    }
    let mid = pj.add(pk).scale(0.5);
    let denom = e.dot(w);
    let t = if denom.abs() <= GEOM_REL_EPS * e.norm() * w.norm() {
        // Edge parallel to the bisector: either no intersection or the
        // whole edge is equidistant, in which case take the point nearest
        // to both vertices.
        let offset = w.dot(mid.sub(a)) / w.norm();
        if offset.abs() > GEOM_REL_EPS * e.norm().max(w.norm()) {
            return None;
        }
        mid.sub(a).dot(e) / e.dot(e)
    } else {
        w.dot(mid.sub(a)) / denom
    };
    let tol = GEOM_REL_EPS;
    if !(-tol..=1.0 + tol).contains(&t) {
        return None;
    }
    Some(a.add(e.scale(t.clamp(0.0, 1.0))))
}

/// Candidate centers for the unrestricted problem: every pair midpoint and
/// every non-degenerate circumcenter, `(M³ - M)/6` at most.
pub fn unconstrained_candidates(poly: &Polygon) -> Vec<Point> {
    let v = &poly.vertices;
    let m = v.len();
    let mut out = Vec::with_capacity((m * m * m - m) / 6);
    for i in 0..m {
        for j in i + 1..m {
            out.push(pair_candidate(v[i], v[j]).expect("distinct vertices"));
            for k in j + 1..m {
                out.extend(circumcenter(v[i], v[j], v[k]));
            }
        }
    }
    out
}

/// Candidate centers outside or on the boundary.
///
/// Pair midpoints of non-adjacent vertices and circumcenters not strictly
/// inside; perpendicular feet and bisector-edge points lying on their
/// edge; and the polygon corners. Midpoints of adjacent vertices are
/// produced by the bisector-edge family on their shared edge.
pub fn constrained_candidates(poly: &Polygon) -> Vec<Point> {
    let v = &poly.vertices;
    let m = v.len();
    let mut out = Vec::new();
    let keep = |p: &Point| classify_point(poly, *p) != RegionClass::Interior;
    for i in 0..m {
        for j in i + 1..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            if !adjacent {
                let mid = pair_candidate(v[i], v[j]).expect("distinct vertices");
                if keep(&mid) {
                    out.push(mid);
                }
            }
            for k in j + 1..m {
                if let Some(c) = circumcenter(v[i], v[j], v[k]).filter(keep) {
                    out.push(c);
                }
            }
        }
    }
    for (i, (a, b)) in poly.edges().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            if j == i || j == (i + 1) % m {
                continue;
            }
            let foot = foot_of_perpendicular(*vj, a, b).expect("valid edge");
            if foot.on_segment {
                let t = foot.t.clamp(0.0, 1.0);
                out.push(a.add(b.sub(a).scale(t)));
            }
        }
        for j in 0..m {
            for k in j + 1..m {
                out.extend(bisector_edge_candidate(v[j], v[k], a, b));
            }
        }
    }
    out.extend(v.iter().copied());
    out
}

/// Smallest-radius candidate; near-ties go to the lexicographically
/// smallest center.
fn best_disk(poly: &Polygon, candidates: impl IntoIterator<Item = Point>) -> Disk {
    candidates
        .into_iter()
        .map(|c| Disk {
            center: c,
            radius: max_dist_to_vertices(poly, c),
        })
        .reduce(|best, cand| {
            let scale = best.radius.max(cand.radius);
            if (cand.radius - best.radius).abs() <= RADIUS_TIE_TOL * scale {
                if cand.center.lex_cmp(&best.center) == Ordering::Less {
                    cand
                } else {
                    best
                }
            } else if cand.radius < best.radius {
                cand
            } else {
                best
            }
        })
        .expect("a valid polygon yields candidates")
}

/// Minimum enclosing disk of the polygon's vertices.
pub fn min_enclosing_disk(poly: &Polygon) -> Disk {
    best_disk(poly, unconstrained_candidates(poly))
}

/// Smallest covering disk whose center lies outside or on the boundary.
pub fn constrained_min_enclosing_disk(poly: &Polygon) -> Disk {
    best_disk(poly, constrained_candidates(poly))
}

pub fn place_base_station(poly: &Polygon, mode: PlacementMode) -> Disk {
    match mode {
        PlacementMode::Anywhere => min_enclosing_disk(poly),
        PlacementMode::ExteriorOrBoundary => constrained_min_enclosing_disk(poly),
    }
}
