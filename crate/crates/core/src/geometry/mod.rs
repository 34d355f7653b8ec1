//! Planar geometry for the refined invariants: winding potentials of closed
//! polylines, geometric smoothing of states, and shortcut arcs.

mod resolve;
mod shortcut;

use std::ops::{Add, Mul, Sub};

use num_traits::{Float, FloatConst};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use resolve::{
    geometric_resolution, state_winding_pair, winding_identity_holds, GeometricResolution, WindingFrame,
};
pub use shortcut::{alternate_shortcuts, default_shortcut, is_generic_shortcut, shortcut_crossings};

/// Snap tolerance for winding numbers, as a fraction of a full turn.
pub const TURN_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Float> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }

    pub fn unit(self) -> Self {
        self * (T::one() / self.norm())
    }

    pub fn perp(self) -> Self {
        Point2::new(-self.y, self.x)
    }

    pub fn from_angle(theta: T) -> Self {
        Point2::new(theta.cos(), theta.sin())
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }
}

impl<T: Float> Add for Point2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Float> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Float> Mul<T> for Point2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Distance from `p` to the segment `a b`, and the parameter of the closest point.
pub fn point_segment_distance<T: Float>(p: Point2<T>, a: Point2<T>, b: Point2<T>) -> (T, T) {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == T::zero() {
        return (p.dist(a), T::zero());
    }
    let t = ((p - a).dot(ab) / len2).max(T::zero()).min(T::one());
    (p.dist(a.lerp(b, t)), t)
}

/// Intersection parameters `(t, u)` of segments `p0 p1` and `q0 q1` when the
/// lines are not parallel and both parameters lie in `[0, 1]`.
pub fn segment_intersection<T: Float>(
    p0: Point2<T>,
    p1: Point2<T>,
    q0: Point2<T>,
    q1: Point2<T>,
) -> Option<(T, T)> {
    let r = p1 - p0;
    let s = q1 - q0;
    let denom = r.cross(s);
    if denom == T::zero() {
        return None;
    }
    let t = (q0 - p0).cross(s) / denom;
    let u = (q0 - p0).cross(r) / denom;
    if t >= T::zero() && t <= T::one() && u >= T::zero() && u <= T::one() {
        Some((t, u))
    } else {
        None
    }
}

/// Oriented closed polyline; the last vertex connects back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedCurve<T> {
    pub vertices: Vec<Point2<T>>,
}

impl<T: Float + FloatConst> ClosedCurve<T> {
    pub fn new(vertices: Vec<Point2<T>>) -> Self {
        ClosedCurve { vertices }
    }

    fn segments(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Signed number of turns of the curve around an off-curve point.
    fn turns(&self, p: Point2<T>) -> T {
        let mut total = T::zero();
        for (a, b) in self.segments() {
            let (va, vb) = (a - p, b - p);
            total = total + va.cross(vb).atan2(va.dot(vb));
        }
        total / (T::PI() + T::PI())
    }

    fn min_feature(&self) -> T {
        self.segments().map(|(a, b)| a.dist(b)).filter(|&l| l > T::zero()).fold(T::infinity(), T::min)
    }

    /// Directions of the curve leaving `p`, for every passage of the curve
    /// through `p` (both the backward and forward ray of each passage).
    fn rays_at(&self, p: Point2<T>, tol: T) -> Vec<Point2<T>> {
        let n = self.vertices.len();
        let mut rays = Vec::new();
        for i in 0..n {
            let v = self.vertices[i];
            if v.dist(p) <= tol {
                let prev = self.vertices[(i + n - 1) % n];
                let next = self.vertices[(i + 1) % n];
                rays.push((prev - v).unit());
                rays.push((next - v).unit());
            }
        }
        for (a, b) in self.segments() {
            if a.dist(p) <= tol || b.dist(p) <= tol {
                continue;
            }
            let (d, _) = point_segment_distance(p, a, b);
            if d <= tol {
                rays.push((a - b).unit());
                rays.push((b - a).unit());
            }
        }
        rays
    }
}

/// Winding potential of `curve` at `p`, returned doubled (so always an integer).
///
/// Off the curve this is twice the winding number. On the curve it is the
/// average over the local regions around `p`: the two sides of a simple
/// passage, or the four quadrants of a double point.
pub fn winding_potential<T: Float + FloatConst>(curve: &ClosedCurve<T>, p: Point2<T>, tol: T) -> Result<i64> {
    if curve.vertices.len() < 2 {
        return Err(Error::Degenerate("curve needs at least two vertices".into()));
    }
    let rays = curve.rays_at(p, tol);
    if rays.is_empty() {
        return snap(curve.turns(p) * (T::one() + T::one()));
    }
    let mut angles: Vec<T> = rays.iter().map(|r| r.angle()).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let two_pi = T::PI() + T::PI();
    // Sample distance: well inside every local sector and far from other strands.
    let mut eps = curve.min_feature() * T::from(1e-3).unwrap();
    for (a, b) in curve.segments() {
        let (d, _) = point_segment_distance(p, a, b);
        if d > tol {
            eps = eps.min(d * T::from(1e-2).unwrap());
        }
    }
    let k = angles.len();
    let mut sum = T::zero();
    for i in 0..k {
        let lo = angles[i];
        let hi = if i + 1 < k { angles[i + 1] } else { angles[0] + two_pi };
        if hi - lo <= T::epsilon() {
            return Err(Error::Degenerate("curve folds back on itself at the query point".into()));
        }
        let mid = (lo + hi) / (T::one() + T::one());
        let q = p + Point2::from_angle(mid) * eps;
        sum = sum + curve.turns(q);
    }
    // Average of k region values, doubled.
    snap(sum * (T::one() + T::one()) / T::from(k).unwrap())
}

fn snap<T: Float>(value: T) -> Result<i64> {
    let r = value.round();
    if (value - r).abs() > T::from(TURN_TOLERANCE).unwrap() * T::from(2.0).unwrap() {
        return Err(Error::Degenerate(format!(
            "winding value {} is not a half-integer",
            value.to_f64().unwrap_or(f64::NAN) / 2.0
        )));
    }
    Ok(r.to_i64().expect("finite winding value"))
}

/// True iff the closed curve winds around `p`.
pub fn surrounds<T: Float + FloatConst>(circle: &ClosedCurve<T>, p: Point2<T>, tol: T) -> Result<bool> {
    if !circle.rays_at(p, tol).is_empty() {
        return Err(Error::Degenerate("point lies on the circle".into()));
    }
    Ok(winding_potential(circle, p, tol)? != 0)
}
