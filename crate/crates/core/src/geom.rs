//! Planar primitives: points, triangles, convex polygons and 2x2 lattices.
//!
//! Everything here is plain `f64`. Comparisons take explicit tolerances;
//! [`DEFAULT_TOL`] is the absolute default used by callers that do not care.

use std::f64::consts::TAU;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used when a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A point (or vector) in the plane. Serializes as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector `(cos theta, sin theta)`.
    #[inline]
    pub fn unit(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Counter-clockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn lerp(self, other: Point, s: f64) -> Self {
        self + (other - self) * s
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn approx_eq(self, other: Point, tol: f64) -> bool {
        self.dist(other) <= tol
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    #[inline]
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    #[inline]
    fn div(self, s: f64) -> Point {
        Point::new(self.x / s, self.y / s)
    }
}

/// Signed doubled area of `abc`: positive when counter-clockwise.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// Unsigned area of the triangle `abc`.
#[inline]
pub fn triangle_area(a: Point, b: Point, c: Point) -> f64 {
    orient(a, b, c).abs() / 2.0
}

/// Reduce an angle to `[0, 2*pi)`.
#[inline]
pub fn wrap_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A triangle stored in counter-clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    /// Builds a triangle, swapping `b` and `c` if needed so the order is CCW.
    pub fn new(a: Point, b: Point, c: Point) -> Self {
        if orient(a, b, c) < 0.0 {
            Self { a, b: c, c: b }
        } else {
            Self { a, b, c }
        }
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    pub fn area(&self) -> f64 {
        triangle_area(self.a, self.b, self.c)
    }

    pub fn is_degenerate(&self, tol: f64) -> bool {
        self.area() <= tol
    }

    pub fn negated(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c)
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Self {
        Self::new(f(self.a), f(self.b), f(self.c))
    }

    /// Side midpoints, ordered opposite to `a`, `b`, `c`.
    pub fn midpoints(&self) -> [Point; 3] {
        [
            (self.b + self.c) * 0.5,
            (self.c + self.a) * 0.5,
            (self.a + self.b) * 0.5,
        ]
    }

    /// Smallest signed distance from `p` to the three edge lines; positive
    /// when `p` is strictly inside.
    pub fn interior_margin(&self, p: Point) -> f64 {
        let v = self.vertices();
        (0..3)
            .map(|i| {
                let (s, e) = (v[i], v[(i + 1) % 3]);
                orient(s, e, p) / s.dist(e)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// True when both triangles have the same vertex set within `tol`.
    pub fn same_vertices(&self, other: &Triangle, tol: f64) -> bool {
        let ov = other.vertices();
        self.vertices()
            .iter()
            .all(|p| ov.iter().any(|q| p.approx_eq(*q, tol)))
            && ov
                .iter()
                .all(|q| self.vertices().iter().any(|p| p.approx_eq(*q, tol)))
    }
}

/// A lattice `B Z^2` given by its two generators (the columns of `B`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice {
    b1: Point,
    b2: Point,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    basis: [Point; 2],
    determinant: f64,
}

impl TryFrom<LatticeRepr> for Lattice {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        Lattice::new(r.basis[0], r.basis[1])
    }
}

impl From<Lattice> for LatticeRepr {
    fn from(l: Lattice) -> Self {
        LatticeRepr {
            basis: [l.b1, l.b2],
            determinant: l.determinant(),
        }
    }
}

impl Lattice {
    /// Rejects bases whose determinant vanishes relative to the generator lengths.
    pub fn new(b1: Point, b2: Point) -> Result<Self> {
        let det = b1.cross(b2);
        let scale = b1.norm() * b2.norm();
        if !det.is_finite() || scale == 0.0 || det.abs() <= 1e-14 * scale {
            return Err(Error::SingularLattice { det });
        }
        Ok(Self { b1, b2 })
    }

    pub fn basis(&self) -> [Point; 2] {
        [self.b1, self.b2]
    }

    /// `|det B|`, independent of the chosen basis.
    pub fn determinant(&self) -> f64 {
        self.b1.cross(self.b2).abs()
    }

    pub fn point(&self, m: i64, n: i64) -> Point {
        self.b1 * m as f64 + self.b2 * n as f64
    }

    /// Coordinates of `p` in the basis.
    pub fn coords(&self, p: Point) -> (f64, f64) {
        let det = self.b1.cross(self.b2);
        (p.cross(self.b2) / det, self.b1.cross(p) / det)
    }

    /// Basis `B U` for an integer matrix `U = [[u11, u12], [u21, u22]]`.
    pub fn transformed(&self, u: [[i64; 2]; 2]) -> Result<Self> {
        let c1 = self.b1 * u[0][0] as f64 + self.b2 * u[1][0] as f64;
        let c2 = self.b1 * u[0][1] as f64 + self.b2 * u[1][1] as f64;
        Lattice::new(c1, c2)
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Lattice::new(self.b1 * s, self.b2 * s)
    }

    /// Length of the longer diagonal of the fundamental parallelogram.
    pub fn cell_diameter(&self) -> f64 {
        (self.b1 + self.b2).norm().max((self.b1 - self.b2).norm())
    }
}

/// `|det B|` of a lattice.
pub fn lattice_determinant(lattice: &Lattice) -> f64 {
    lattice.determinant()
}

/// Convex polygon with vertices in counter-clockwise order.
///
/// One- and two-vertex polygons (a point, a segment) are accepted as
/// degenerate convex sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPolygon);
        }
        let n = vertices.len();
        if n >= 3 {
            let mut turning = 0.0;
            for i in 0..n {
                let e1 = vertices[(i + 1) % n] - vertices[i];
                let e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
                let scale = e1.norm() * e2.norm();
                if scale == 0.0 {
                    return Err(Error::PolygonNotConvex { vertex: (i + 1) % n });
                }
                let c = e1.cross(e2);
                if c < -DEFAULT_TOL * scale {
                    return Err(Error::PolygonNotConvex { vertex: (i + 1) % n });
                }
                turning += c.atan2(e1.dot(e2));
            }
            if (turning - TAU).abs() > 1e-6 {
                return Err(Error::PolygonNotConvex { vertex: 0 });
            }
        }
        Ok(Self { vertices })
    }

    /// Convex hull of an arbitrary point set (Andrew's monotone chain),
    /// collinear points dropped.
    pub fn hull(points: &[Point]) -> Result<Self> {
        let mut pts: Vec<Point> = points.iter().copied().filter(|p| p.is_finite()).collect();
        if pts.is_empty() {
            return Err(Error::EmptyPolygon);
        }
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup_by(|a, b| a.approx_eq(*b, 1e-15));
        if pts.len() < 3 {
            return Ok(Self { vertices: pts });
        }
        let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while hull.len() >= start + 2
                    && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
                {
                    hull.pop();
                }
                hull.push(p);
            }
            hull.pop();
        }
        Ok(Self { vertices: hull })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        self.edges().map(|(p, q)| p.cross(q)).sum::<f64>() / 2.0
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p * s).collect(),
        }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        match self.vertices.len() {
            1 => self.vertices[0].approx_eq(p, tol),
            2 => point_segment_distance(p, self.vertices[0], self.vertices[1]) <= tol,
            _ => self
                .edges()
                .all(|(a, b)| orient(a, b, p) / a.dist(b) >= -tol),
        }
    }

    /// Euclidean distance from `p` to the polygon as a region (0 inside).
    pub fn distance_to(&self, p: Point) -> f64 {
        if self.vertices.len() >= 3 && self.contains(p, 0.0) {
            return 0.0;
        }
        match self.vertices.len() {
            1 => self.vertices[0].dist(p),
            _ => self
                .edges()
                .map(|(a, b)| point_segment_distance(p, a, b))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let s = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * s)
}

/// Hausdorff distance between two convex polygons.
///
/// For convex sets the distance from one to the other is a convex function
/// of position, so the maximum over a polygon is attained at a vertex.
/// Polygonized curved domains carry an additional O(1/N^2) discretization
/// error on top of this.
pub fn hausdorff_distance(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    let one_way = |a: &ConvexPolygon, b: &ConvexPolygon| {
        a.vertices()
            .iter()
            .map(|&v| b.distance_to(v))
            .fold(0.0, f64::max)
    };
    one_way(p, q).max(one_way(q, p))
}
