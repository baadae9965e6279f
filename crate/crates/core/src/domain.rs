//! Origin-symmetric convex domains bounded by line segments and elliptic arcs.
//!
//! A [`Domain`] owns an ordered, closed, counter-clockwise list of
//! [`BoundaryPiece`]s. Support heights, chords, radial distances and the area
//! are evaluated exactly on the pieces; a dense symmetric polygon is cached
//! for convexity validation and for callers that need vertices.
//!
//! Pieces may meet with a small gap (up to the closure tolerance the domain was
//! built with). Each gap is bridged by an implicit segment so every query sees
//! a closed curve.

use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{wrap_angle, ConvexPolygon, Point};

/// Default half vertex count of the cached polygonization.
pub const DEFAULT_POLYGONIZE_N: usize = 1024;
/// Default closure tolerance between consecutive pieces.
pub const CLOSURE_TOL: f64 = 1e-9;
/// Angle between an edge normal and `u_theta` below which the support
/// contact is reported as a segment.
pub const CONTACT_ANGLE_TOL: f64 = 1e-9;

const PARAM_EPS: f64 = 1e-12;
const BRIDGE_MIN: f64 = 1e-12;

/// Arc of the ellipse `center + R(rotation) (rx cos phi, ry sin phi)`,
/// traversed counter-clockwise from `start` to `end` (`start < end`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticArc {
    pub center: Point,
    pub rx: f64,
    pub ry: f64,
    pub rotation: f64,
    pub start: f64,
    pub end: f64,
}

impl EllipticArc {
    /// Normalizes `end` so the span lies in `(0, 2*pi]`.
    pub fn new(center: Point, rx: f64, ry: f64, rotation: f64, start: f64, end: f64) -> Self {
        let mut span = (end - start).rem_euclid(TAU);
        if span == 0.0 && end != start {
            span = TAU;
        }
        Self {
            center,
            rx,
            ry,
            rotation,
            start,
            end: start + span,
        }
    }

    #[inline]
    fn axes(&self) -> (Point, Point) {
        let e1 = Point::unit(self.rotation);
        (e1, e1.perp())
    }

    #[inline]
    pub fn span(&self) -> f64 {
        self.end - self.start
    }

    pub fn point_at_param(&self, phi: f64) -> Point {
        let (e1, e2) = self.axes();
        let (s, c) = phi.sin_cos();
        self.center + e1 * (self.rx * c) + e2 * (self.ry * s)
    }

    /// Derivative with respect to the parameter (points along the traversal).
    pub fn tangent_at_param(&self, phi: f64) -> Point {
        let (e1, e2) = self.axes();
        let (s, c) = phi.sin_cos();
        e1 * (-self.rx * s) + e2 * (self.ry * c)
    }

    /// Representative of `phi` inside `[start, end]` (with slack), if any.
    fn param_in_range(&self, phi: f64, eps: f64) -> Option<f64> {
        let shifted = self.start - eps + (phi - (self.start - eps)).rem_euclid(TAU);
        (shifted <= self.end + eps).then(|| shifted.clamp(self.start, self.end))
    }

    /// Coefficients of `<p(phi) - center, w> = a cos phi + b sin phi`.
    #[inline]
    fn projection_coeffs(&self, w: Point) -> (f64, f64) {
        let (e1, e2) = self.axes();
        (self.rx * e1.dot(w), self.ry * e2.dot(w))
    }

    /// Parameters in range solving `a cos phi + b sin phi = r`.
    fn solve_params(&self, a: f64, b: f64, r: f64, out: &mut Vec<f64>) {
        let amp = a.hypot(b);
        if amp == 0.0 {
            return;
        }
        let q = r / amp;
        if q.abs() > 1.0 + 1e-12 {
            return;
        }
        let alpha = b.atan2(a);
        let delta = q.clamp(-1.0, 1.0).acos();
        for phi in [alpha + delta, alpha - delta] {
            if let Some(p) = self.param_in_range(phi, PARAM_EPS) {
                out.push(p);
            }
        }
    }
}

/// One piece of a domain boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPiece {
    Segment { from: Point, to: Point },
    Arc(EllipticArc),
}

/// Intersection of a line with the boundary, with the boundary tangent there.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Hit {
    pub point: Point,
    pub tangent: Point,
}

impl BoundaryPiece {
    pub fn segment(from: Point, to: Point) -> Self {
        Self::Segment { from, to }
    }

    pub fn arc(center: Point, rx: f64, ry: f64, rotation: f64, start: f64, end: f64) -> Self {
        Self::Arc(EllipticArc::new(center, rx, ry, rotation, start, end))
    }

    pub fn start(&self) -> Point {
        match self {
            Self::Segment { from, .. } => *from,
            Self::Arc(a) => a.point_at_param(a.start),
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Self::Segment { to, .. } => *to,
            Self::Arc(a) => a.point_at_param(a.end),
        }
    }

    pub fn is_segment(&self) -> bool {
        matches!(self, Self::Segment { .. })
    }

    /// Point at normalized parameter `s` in `[0, 1]`.
    pub fn point_at(&self, s: f64) -> Point {
        match self {
            Self::Segment { from, to } => from.lerp(*to, s),
            Self::Arc(a) => a.point_at_param(a.start + s * a.span()),
        }
    }

    /// Direction of travel at normalized parameter `s`.
    pub fn tangent_at(&self, s: f64) -> Point {
        match self {
            Self::Segment { from, to } => *to - *from,
            Self::Arc(a) => a.tangent_at_param(a.start + s * a.span()),
        }
    }

    /// Outward normal angle at normalized parameter `s` (CCW traversal).
    pub fn normal_angle_at(&self, s: f64) -> f64 {
        let t = self.tangent_at(s);
        wrap_angle(Point::new(t.y, -t.x).angle())
    }

    pub fn negated(&self) -> Self {
        match self {
            Self::Segment { from, to } => Self::Segment {
                from: -*from,
                to: -*to,
            },
            Self::Arc(a) => Self::Arc(EllipticArc {
                center: -a.center,
                start: a.start + PI,
                end: a.end + PI,
                ..*a
            }),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Self::Segment { from, to } => from.dist(*to),
            Self::Arc(a) => {
                // Composite Simpson on |p'(phi)|.
                let k = 64;
                let h = a.span() / k as f64;
                let f = |i: usize| a.tangent_at_param(a.start + i as f64 * h).norm();
                let mut sum = f(0) + f(k);
                for i in 1..k {
                    sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i);
                }
                sum * h / 3.0
            }
        }
    }

    /// Total turn of the tangent along the piece.
    pub fn turning(&self) -> f64 {
        match self {
            Self::Segment { .. } => 0.0,
            Self::Arc(a) => {
                let t0 = a.tangent_at_param(a.start);
                let t1 = a.tangent_at_param(a.end);
                let d = t0.cross(t1).atan2(t0.dot(t1)).rem_euclid(TAU);
                if a.span() > PI && d < PI {
                    d + TAU * (a.span() / TAU).floor()
                } else {
                    d
                }
            }
        }
    }

    /// `(max <p, u>, argmax)` over the piece.
    fn support(&self, u: Point) -> (f64, Point) {
        match self {
            Self::Segment { from, to } => {
                let (a, b) = (from.dot(u), to.dot(u));
                if a >= b {
                    (a, *from)
                } else {
                    (b, *to)
                }
            }
            Self::Arc(arc) => {
                let (ca, cb) = arc.projection_coeffs(u);
                let best = cb.atan2(ca);
                let mut candidates = [arc.start, arc.end, f64::NAN];
                if let Some(p) = arc.param_in_range(best, 0.0) {
                    candidates[2] = p;
                }
                candidates
                    .iter()
                    .filter(|p| p.is_finite())
                    .map(|&p| {
                        let q = arc.point_at_param(p);
                        (q.dot(u), q)
                    })
                    .fold((f64::NEG_INFINITY, Point::ORIGIN), |acc, x| {
                        if x.0 > acc.0 {
                            x
                        } else {
                            acc
                        }
                    })
            }
        }
    }

    /// Intersections with the line `<p, u> = t`.
    fn line_hits(&self, u: Point, t: f64, out: &mut Vec<Hit>) {
        match self {
            Self::Segment { from, to } => {
                let e = *to - *from;
                let d = e.dot(u);
                let len = e.norm();
                let off = t - from.dot(u);
                if d.abs() <= 1e-15 * len {
                    if off.abs() <= 1e-12 * (1.0 + t.abs()) {
                        out.push(Hit {
                            point: *from,
                            tangent: e,
                        });
                        out.push(Hit {
                            point: *to,
                            tangent: e,
                        });
                    }
                    return;
                }
                let s = off / d;
                if (-1e-12..=1.0 + 1e-12).contains(&s) {
                    out.push(Hit {
                        point: from.lerp(*to, s.clamp(0.0, 1.0)),
                        tangent: e,
                    });
                }
            }
            Self::Arc(arc) => {
                let (ca, cb) = arc.projection_coeffs(u);
                let mut params = Vec::with_capacity(2);
                arc.solve_params(ca, cb, t - arc.center.dot(u), &mut params);
                out.extend(params.into_iter().map(|p| Hit {
                    point: arc.point_at_param(p),
                    tangent: arc.tangent_at_param(p),
                }));
            }
        }
    }

    /// Distances `lambda > 0` with `lambda * d` on the piece.
    fn ray_hits(&self, d: Point, out: &mut Vec<f64>) {
        match self {
            Self::Segment { from, to } => {
                let e = *to - *from;
                let den = e.cross(d);
                if den.abs() <= 1e-15 * e.norm() {
                    return;
                }
                let s = -from.cross(d) / den;
                if (-1e-12..=1.0 + 1e-12).contains(&s) {
                    let lambda = from.lerp(*to, s.clamp(0.0, 1.0)).dot(d);
                    if lambda > 0.0 {
                        out.push(lambda);
                    }
                }
            }
            Self::Arc(arc) => {
                // cross(p(phi), d) = 0  <=>  <p(phi) - c, n> = -<c, n>, n = (d.y, -d.x)
                let n = Point::new(d.y, -d.x);
                let (ca, cb) = arc.projection_coeffs(n);
                let mut params = Vec::with_capacity(2);
                arc.solve_params(ca, cb, -arc.center.dot(n), &mut params);
                out.extend(
                    params
                        .into_iter()
                        .map(|p| arc.point_at_param(p).dot(d))
                        .filter(|&l| l > 0.0),
                );
            }
        }
    }

    /// Contribution to `1/2 * closed integral of (x dy - y dx)`.
    fn area_term(&self) -> f64 {
        match self {
            Self::Segment { from, to } => from.cross(*to) / 2.0,
            Self::Arc(a) => {
                let q0 = a.point_at_param(a.start) - a.center;
                let q1 = a.point_at_param(a.end) - a.center;
                (a.center.cross(q1 - q0) + a.rx * a.ry * a.span()) / 2.0
            }
        }
    }

    fn validate(&self, index: usize) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidPiece {
                piece: index,
                reason: reason.to_string(),
            })
        };
        match self {
            Self::Segment { from, to } => {
                if !from.is_finite() || !to.is_finite() {
                    return bad("non-finite endpoint");
                }
                if from.dist(*to) == 0.0 {
                    return bad("zero-length segment");
                }
            }
            Self::Arc(a) => {
                if !(a.rx > 0.0 && a.ry > 0.0 && a.rx.is_finite() && a.ry.is_finite()) {
                    return bad("semi-axes must be positive");
                }
                if !(a.center.is_finite() && a.rotation.is_finite() && a.start.is_finite()) {
                    return bad("non-finite arc parameter");
                }
                if !(a.span() > 0.0 && a.span() < TAU) {
                    return bad("angular span must lie in (0, 2*pi)");
                }
            }
        }
        Ok(())
    }

    /// Image under a linear map with positive determinant.
    fn mapped(&self, m: [[f64; 2]; 2]) -> Self {
        let apply = |p: Point| Point::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y);
        match self {
            Self::Segment { from, to } => Self::Segment {
                from: apply(*from),
                to: apply(*to),
            },
            Self::Arc(a) => {
                // G = M R(rotation) diag(rx, ry) = R(gamma) diag(s1, s2) R(beta)
                let (e1, e2) = a.axes();
                let c1 = apply(e1 * a.rx);
                let c2 = apply(e2 * a.ry);
                let (g00, g01, g10, g11) = (c1.x, c2.x, c1.y, c2.y);
                let e = (g00 + g11) / 2.0;
                let f = (g00 - g11) / 2.0;
                let g = (g10 + g01) / 2.0;
                let h = (g10 - g01) / 2.0;
                let q = e.hypot(h);
                let r = f.hypot(g);
                let a1 = g.atan2(f);
                let a2 = h.atan2(e);
                let gamma = (a2 + a1) / 2.0;
                let beta = (a2 - a1) / 2.0;
                Self::Arc(EllipticArc {
                    center: apply(a.center),
                    rx: q + r,
                    ry: q - r,
                    rotation: gamma,
                    start: a.start + beta,
                    end: a.end + beta,
                })
            }
        }
    }
}

/// Support contact set `L(theta) ∩ ∂K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contact {
    Point(Point),
    Segment(Point, Point),
}

impl Contact {
    /// The point itself, or the midpoint of a contact segment.
    pub fn representative(&self) -> Point {
        match self {
            Contact::Point(p) => *p,
            Contact::Segment(a, b) => (*a + *b) * 0.5,
        }
    }

    pub fn points(&self) -> Vec<Point> {
        match self {
            Contact::Point(p) => vec![*p],
            Contact::Segment(a, b) => vec![*a, *b],
        }
    }
}

/// Support height `h(theta)` and the contact set of `L(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportResult {
    pub h: f64,
    pub contact: Contact,
}

/// Chord `K ∩ {<p, u_theta> = t}`. `y` is the endpoint further along
/// `u_theta` rotated a quarter turn counter-clockwise, so that
/// `(apex, y, z)` is counter-clockwise for an apex on `L(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub y: Point,
    pub z: Point,
    pub width: f64,
}

/// Boundary point together with its cone of outward normal angles
/// `[lo, hi]` (`lo == hi` at smooth points; `hi` may exceed `2*pi`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub point: Point,
    pub piece: usize,
    pub normal_lo: f64,
    pub normal_hi: f64,
}

/// An origin-symmetric convex domain.
#[derive(Debug, Clone)]
pub struct Domain {
    pieces: Vec<BoundaryPiece>,
    /// Implicit segments closing sub-tolerance gaps between pieces.
    bridges: Vec<BoundaryPiece>,
    approx: ConvexPolygon,
    polygonize_n: usize,
    closure_tol: f64,
    circumradius: f64,
}

impl Domain {
    /// Validates closure, central symmetry, convexity and interior origin.
    pub fn new(pieces: Vec<BoundaryPiece>, polygonize_n: usize) -> Result<Self> {
        Self::with_closure_tolerance(pieces, polygonize_n, CLOSURE_TOL)
    }

    pub fn with_closure_tolerance(
        pieces: Vec<BoundaryPiece>,
        polygonize_n: usize,
        closure_tol: f64,
    ) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidPiece {
                piece: 0,
                reason: "no boundary pieces".into(),
            });
        }
        for (i, p) in pieces.iter().enumerate() {
            p.validate(i)?;
        }
        let m = pieces.len();
        let mut bridges = Vec::new();
        for i in 0..m {
            let (e, s) = (pieces[i].end(), pieces[(i + 1) % m].start());
            let gap = e.dist(s);
            if gap > closure_tol {
                return Err(Error::NotClosed { piece: i, gap });
            }
            // Shorter gaps are absorbed by the intersection slack.
            if gap > BRIDGE_MIN {
                bridges.push(BoundaryPiece::segment(e, s));
            }
        }

        let sym_tol = closure_tol.max(CLOSURE_TOL);
        if !m.is_multiple_of(2) {
            return Err(Error::NotSymmetric { piece: 0 });
        }
        for i in 0..m / 2 {
            let a = pieces[i].negated();
            let b = &pieces[i + m / 2];
            let matches = a.is_segment() == b.is_segment()
                && [0.0, 0.5, 1.0]
                    .iter()
                    .all(|&s| a.point_at(s).approx_eq(b.point_at(s), sym_tol));
            if !matches {
                return Err(Error::NotSymmetric { piece: i });
            }
        }

        let polygonize_n = polygonize_n.max(8);
        let (verts, owners) = sample_symmetric(&pieces, polygonize_n);

        let n = verts.len();
        let mut turning = 0.0;
        for i in 0..n {
            let (p0, p1, p2) = (verts[i], verts[(i + 1) % n], verts[(i + 2) % n]);
            let (e1, e2) = (p1 - p0, p2 - p1);
            let slack = 1e-9 * e1.norm() * e2.norm() + closure_tol * (e1.norm() + e2.norm());
            let c = e1.cross(e2);
            if c < -slack {
                return Err(Error::NotConvex {
                    piece: owners[(i + 1) % n],
                });
            }
            turning += c.atan2(e1.dot(e2));
        }
        if (turning - TAU).abs() > 1e-6 {
            return Err(Error::NotConvex { piece: 0 });
        }
        for i in 0..n {
            let (p, q) = (verts[i], verts[(i + 1) % n]);
            if p.cross(q) <= 1e-12 * p.norm() * q.norm() {
                return Err(Error::OriginNotInterior { piece: owners[i] });
            }
        }

        let circumradius = verts.iter().map(|p| p.norm()).fold(0.0, f64::max);
        let approx = polygon_from_samples(verts);
        let mut d = Self {
            pieces,
            bridges,
            approx,
            polygonize_n,
            closure_tol,
            circumradius: 0.0,
        };
        // Polygon vertices underestimate the radius on arcs.
        let arc_slack = d
            .pieces
            .iter()
            .filter(|p| !p.is_segment())
            .map(|p| p.length() / polygonize_n as f64)
            .fold(0.0, f64::max);
        d.circumradius = circumradius + arc_slack;
        Ok(d)
    }

    /// Symmetric polygon from vertices listed counter-clockwise.
    pub fn polygon(vertices: &[Point]) -> Result<Self> {
        let n = vertices.len();
        let pieces = (0..n)
            .map(|i| BoundaryPiece::segment(vertices[i], vertices[(i + 1) % n]))
            .collect();
        Self::new(pieces, DEFAULT_POLYGONIZE_N)
    }

    pub fn disk(r: f64) -> Result<Self> {
        Self::ellipse(r, r, 0.0)
    }

    /// Ellipse with semi-axes `a` (along angle `phi`) and `b`.
    pub fn ellipse(a: f64, b: f64, phi: f64) -> Result<Self> {
        let c = Point::ORIGIN;
        Self::new(
            vec![
                BoundaryPiece::arc(c, a, b, phi, 0.0, PI),
                BoundaryPiece::arc(c, a, b, phi, PI, TAU),
            ],
            DEFAULT_POLYGONIZE_N,
        )
    }

    /// Parallelogram with vertices `±(u+v)/2`, `±(u-v)/2`.
    pub fn parallelogram(u: Point, v: Point) -> Result<Self> {
        let (u, v) = if u.cross(v) < 0.0 { (v, u) } else { (u, v) };
        Self::polygon(&[(u - v) * 0.5, (u + v) * 0.5, (v - u) * 0.5, (u + v) * -0.5])
    }

    /// Regular `n`-gon of circumradius `r` with a vertex at angle 0.
    pub fn regular_polygon(n: usize, r: f64) -> Result<Self> {
        let spec = format!("ngon:{n}:{r}");
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidNamed {
                spec,
                reason: "vertex count must be even and at least 4".into(),
            });
        }
        if !(r > 0.0) {
            return Err(Error::InvalidNamed {
                spec,
                reason: "radius must be positive".into(),
            });
        }
        let verts: Vec<Point> = (0..n)
            .map(|k| Point::unit(TAU * k as f64 / n as f64) * r)
            .collect();
        Self::polygon(&verts)
    }

    pub fn from_named(kind: &NamedDomain) -> Result<Self> {
        match *kind {
            NamedDomain::Disk { r } => {
                if !(r > 0.0) {
                    return Err(named_err(kind, "radius must be positive"));
                }
                Self::disk(r)
            }
            NamedDomain::Ellipse { a, b, phi } => {
                if !(a > 0.0 && b > 0.0) {
                    return Err(named_err(kind, "semi-axes must be positive"));
                }
                Self::ellipse(a, b, phi)
            }
            NamedDomain::Parallelogram { u, v } => {
                if u.cross(v).abs() <= 1e-14 * u.norm() * v.norm() {
                    return Err(named_err(kind, "generators must be linearly independent"));
                }
                Self::parallelogram(u, v)
            }
            NamedDomain::RegularPolygon { n, r } => Self::regular_polygon(n, r),
        }
    }

    pub fn pieces(&self) -> &[BoundaryPiece] {
        &self.pieces
    }

    /// Pieces plus the implicit gap bridges.
    fn all_pieces(&self) -> impl Iterator<Item = &BoundaryPiece> {
        self.pieces.iter().chain(self.bridges.iter())
    }

    pub fn polygonize_n(&self) -> usize {
        self.polygonize_n
    }

    pub fn closure_tolerance(&self) -> f64 {
        self.closure_tol
    }

    /// Largest distance between the end of a piece and the start of the next.
    pub fn max_gap(&self) -> f64 {
        let m = self.pieces.len();
        (0..m)
            .map(|i| self.pieces[i].end().dist(self.pieces[(i + 1) % m].start()))
            .fold(0.0, f64::max)
    }

    /// The cached polygonization built at construction.
    pub fn approx(&self) -> &ConvexPolygon {
        &self.approx
    }

    /// Upper bound on `max |p|` over the domain.
    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn is_polygonal(&self) -> bool {
        self.pieces.iter().all(BoundaryPiece::is_segment)
    }

    /// Piece start points (the vertices, for polygonal domains).
    pub fn corner_points(&self) -> Vec<Point> {
        self.all_pieces().map(BoundaryPiece::start).collect()
    }

    pub fn support(&self, theta: f64) -> SupportResult {
        let u = Point::unit(theta);
        let (h, arg) = self
            .all_pieces()
            .map(|p| p.support(u))
            .fold((f64::NEG_INFINITY, Point::ORIGIN), |acc, x| {
                if x.0 > acc.0 {
                    x
                } else {
                    acc
                }
            });
        let edge = self.pieces.iter().find_map(|p| match p {
            BoundaryPiece::Segment { from, to } => {
                let e = *to - *from;
                let n = Point::new(e.y, -e.x);
                let off = n.cross(u).atan2(n.dot(u));
                (off.abs() <= CONTACT_ANGLE_TOL).then_some(Contact::Segment(*from, *to))
            }
            BoundaryPiece::Arc(_) => None,
        });
        SupportResult {
            h,
            contact: edge.unwrap_or(Contact::Point(arg)),
        }
    }

    pub fn support_height(&self, theta: f64) -> f64 {
        let u = Point::unit(theta);
        self.all_pieces()
            .map(|p| p.support(u).0)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Chord at offset `t` in direction `theta`.
    pub fn chord(&self, theta: f64, t: f64) -> Result<Chord> {
        let h = self.support_height(theta);
        if t.abs() > h + 1e-12 * (1.0 + h) || !t.is_finite() {
            return Err(Error::OutOfSlab { t, h });
        }
        let (y, z) = self.chord_hits(theta, t);
        let v = Point::unit(theta).perp();
        Ok(Chord {
            y: y.point,
            z: z.point,
            width: (y.point - z.point).dot(v).max(0.0),
        })
    }

    /// Chord endpoints with boundary tangents; `t` must lie in the slab.
    pub(crate) fn chord_hits(&self, theta: f64, t: f64) -> (Hit, Hit) {
        let u = Point::unit(theta);
        let v = u.perp();
        let mut hits = Vec::with_capacity(4);
        for p in self.all_pieces() {
            p.line_hits(u, t, &mut hits);
        }
        if hits.is_empty() {
            // Round-off at the very top or bottom of the slab.
            let contact = if t >= 0.0 {
                self.support(theta).contact
            } else {
                self.support(theta + PI).contact
            };
            let pts = contact.points();
            hits.extend(pts.into_iter().map(|point| Hit {
                point,
                tangent: v,
            }));
        }
        let key = |h: &Hit| h.point.dot(v);
        let y = *hits
            .iter()
            .max_by(|a, b| key(a).total_cmp(&key(b)))
            .expect("non-empty");
        let z = *hits
            .iter()
            .min_by(|a, b| key(a).total_cmp(&key(b)))
            .expect("non-empty");
        (y, z)
    }

    /// Width of the chord at offset `t`; zero outside the slab.
    pub fn width(&self, theta: f64, t: f64) -> f64 {
        self.chord(theta, t).map(|c| c.width).unwrap_or(0.0)
    }

    /// Distance from the origin to the boundary along angle `phi`.
    pub fn radial(&self, phi: f64) -> f64 {
        let d = Point::unit(phi);
        let mut out = Vec::with_capacity(4);
        for p in self.all_pieces() {
            p.ray_hits(d, &mut out);
        }
        out.into_iter().fold(0.0, f64::max)
    }

    /// Membership with `slack` toward inclusion.
    pub fn contains(&self, p: Point, slack: f64) -> bool {
        let r = p.norm();
        if r <= slack {
            return true;
        }
        if r > self.circumradius + slack {
            return false;
        }
        r <= self.radial(p.angle()) + slack
    }

    /// Exact area: shoelace terms for segments plus elliptic sector terms.
    pub fn area(&self) -> f64 {
        self.all_pieces().map(BoundaryPiece::area_term).sum()
    }

    /// `2n` (or more, for polygons with more than `n` vertices per half)
    /// boundary points, closed under negation and including every piece
    /// endpoint.
    pub fn polygonize(&self, n: usize) -> ConvexPolygon {
        let (verts, _) = sample_symmetric(&self.pieces, n.max(8));
        polygon_from_samples(verts)
    }

    /// `m` boundary points spread by arc length, with their normal cones.
    pub fn boundary_samples(&self, m: usize) -> Vec<BoundarySample> {
        let lengths: Vec<f64> = self.pieces.iter().map(BoundaryPiece::length).collect();
        let total: f64 = lengths.iter().sum();
        let k = self.pieces.len();
        let mut out = Vec::with_capacity(m);
        let mut piece = 0;
        let mut before = 0.0;
        for j in 0..m {
            let target = total * j as f64 / m as f64;
            while piece + 1 < k && before + lengths[piece] <= target {
                before += lengths[piece];
                piece += 1;
            }
            let s = ((target - before) / lengths[piece]).clamp(0.0, 1.0);
            let p = &self.pieces[piece];
            let (lo, hi) = if s == 0.0 {
                let prev = &self.pieces[(piece + k - 1) % k];
                let lo = prev.normal_angle_at(1.0);
                // Signed turn in (-pi, pi]; round-off can make it slightly negative.
                let turn = (p.normal_angle_at(0.0) - lo + PI).rem_euclid(TAU) - PI;
                (lo, lo + turn.max(0.0))
            } else {
                let a = p.normal_angle_at(s);
                (a, a)
            };
            out.push(BoundarySample {
                point: p.point_at(s),
                piece,
                normal_lo: lo,
                normal_hi: hi,
            });
        }
        out
    }

    /// Image under the linear map `m` (row-major, `det m > 0`).
    pub fn linear_map(&self, m: [[f64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !(det > 0.0) {
            return Err(Error::InvalidPiece {
                piece: 0,
                reason: "linear map must preserve orientation".into(),
            });
        }
        let pieces = self.pieces.iter().map(|p| p.mapped(m)).collect();
        Self::with_closure_tolerance(pieces, self.polygonize_n, self.closure_tol)
    }

    pub fn to_file(&self) -> DomainFile {
        DomainFile {
            pieces: self.pieces.iter().map(PieceSpec::from).collect(),
            polygonize_n: Some(self.polygonize_n),
            closure_tol: (self.closure_tol != CLOSURE_TOL).then_some(self.closure_tol),
        }
    }

    pub fn from_file(file: &DomainFile) -> Result<Self> {
        let pieces = file.pieces.iter().map(BoundaryPiece::from).collect();
        Self::with_closure_tolerance(
            pieces,
            file.polygonize_n.unwrap_or(DEFAULT_POLYGONIZE_N),
            file.closure_tol.unwrap_or(CLOSURE_TOL),
        )
    }

    pub fn from_json(text: &str) -> std::result::Result<Result<Self>, serde_json::Error> {
        let file: DomainFile = serde_json::from_str(text)?;
        Ok(Self::from_file(&file))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("domain file serializes")
    }
}

/// Keeps every sample when they already form a convex polygon, otherwise
/// falls back to the hull (tiny junction gaps can create round-off dents).
fn polygon_from_samples(verts: Vec<Point>) -> ConvexPolygon {
    match ConvexPolygon::new(verts.clone()) {
        Ok(p) => p,
        Err(_) => ConvexPolygon::hull(&verts).expect("domain boundary is non-empty"),
    }
}

fn named_err(kind: &NamedDomain, reason: &str) -> Error {
    Error::InvalidNamed {
        spec: kind.to_string(),
        reason: reason.into(),
    }
}

/// Samples the first half of the pieces (the second half is its negation)
/// with `n` points, always including piece starts. Interior samples are
/// shared out in proportion to each piece's share of arc length plus its
/// share of tangent turning. Returns the points and their owning piece.
fn sample_symmetric(pieces: &[BoundaryPiece], n: usize) -> (Vec<Point>, Vec<usize>) {
    let half = pieces.len() / 2;
    let lens: Vec<f64> = pieces[..half].iter().map(BoundaryPiece::length).collect();
    let turns: Vec<f64> = pieces[..half].iter().map(BoundaryPiece::turning).collect();
    let (total_len, total_turn): (f64, f64) = (lens.iter().sum(), turns.iter().sum());
    let weights: Vec<f64> = (0..half)
        .map(|i| {
            let l = if total_len > 0.0 { lens[i] / total_len } else { 0.0 };
            let t = if total_turn > 0.0 { turns[i] / total_turn } else { 0.0 };
            l + t
        })
        .collect();
    let wsum: f64 = weights.iter().sum();
    let extra = n.saturating_sub(half);

    // Largest-remainder apportionment.
    let quotas: Vec<f64> = weights.iter().map(|w| extra as f64 * w / wsum).collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut left = extra - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..half).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().cycle().take(half * 2) {
        if left == 0 {
            break;
        }
        counts[i] += 1;
        left -= 1;
    }

    let mut pts = Vec::with_capacity(2 * n.max(half));
    let mut owners = Vec::with_capacity(2 * n.max(half));
    for (i, piece) in pieces[..half].iter().enumerate() {
        let k = counts[i];
        for j in 0..=k {
            pts.push(piece.point_at(j as f64 / (k + 1) as f64));
            owners.push(i);
        }
    }
    let first = pts.len();
    for j in 0..first {
        pts.push(-pts[j]);
        owners.push(owners[j] + half);
    }
    (pts, owners)
}

/// Named domain shorthands accepted by the CLI: `disk:r`, `ellipse:a:b:phi`,
/// `parallelogram:ux:uy:vx:vy`, `ngon:n:r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedDomain {
    Disk { r: f64 },
    Ellipse { a: f64, b: f64, phi: f64 },
    Parallelogram { u: Point, v: Point },
    RegularPolygon { n: usize, r: f64 },
}

impl std::fmt::Display for NamedDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Disk { r } => write!(f, "disk:{r}"),
            Self::Ellipse { a, b, phi } => write!(f, "ellipse:{a}:{b}:{phi}"),
            Self::Parallelogram { u, v } => {
                write!(f, "parallelogram:{}:{}:{}:{}", u.x, u.y, v.x, v.y)
            }
            Self::RegularPolygon { n, r } => write!(f, "ngon:{n}:{r}"),
        }
    }
}

impl FromStr for NamedDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::InvalidNamed {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let nums = |count: usize| -> Result<Vec<f64>> {
            if args.len() != count {
                return Err(err(&format!("expected {count} arguments")));
            }
            args.iter()
                .map(|a| a.parse::<f64>().map_err(|_| err(&format!("bad number {a:?}"))))
                .collect()
        };
        match kind {
            "disk" => Ok(Self::Disk { r: nums(1)?[0] }),
            "ellipse" => {
                let v = nums(3)?;
                Ok(Self::Ellipse {
                    a: v[0],
                    b: v[1],
                    phi: v[2],
                })
            }
            "parallelogram" => {
                let v = nums(4)?;
                Ok(Self::Parallelogram {
                    u: Point::new(v[0], v[1]),
                    v: Point::new(v[2], v[3]),
                })
            }
            "ngon" => {
                if args.len() != 2 {
                    return Err(err("expected 2 arguments"));
                }
                let n = args[0]
                    .parse::<usize>()
                    .map_err(|_| err("vertex count must be an integer"))?;
                let r = args[1].parse::<f64>().map_err(|_| err("bad radius"))?;
                Ok(Self::RegularPolygon { n, r })
            }
            _ => Err(err("unknown kind (expected disk, ellipse, parallelogram or ngon)")),
        }
    }
}

/// On-disk domain description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainFile {
    pub pieces: Vec<PieceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygonize_n: Option<usize>,
    /// Junction gap allowed between pieces; defaults to `1e-9`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceSpec {
    Segment {
        from: [f64; 2],
        to: [f64; 2],
    },
    Arc {
        center: [f64; 2],
        rx: f64,
        ry: f64,
        rotation_rad: f64,
        start_rad: f64,
        end_rad: f64,
    },
}

impl From<&BoundaryPiece> for PieceSpec {
    fn from(p: &BoundaryPiece) -> Self {
        match p {
            BoundaryPiece::Segment { from, to } => PieceSpec::Segment {
                from: (*from).into(),
                to: (*to).into(),
            },
            BoundaryPiece::Arc(a) => PieceSpec::Arc {
                center: a.center.into(),
                rx: a.rx,
                ry: a.ry,
                rotation_rad: a.rotation,
                start_rad: a.start,
                end_rad: a.end,
            },
        }
    }
}

impl From<&PieceSpec> for BoundaryPiece {
    fn from(p: &PieceSpec) -> Self {
        match *p {
            PieceSpec::Segment { from, to } => BoundaryPiece::segment(from.into(), to.into()),
            PieceSpec::Arc {
                center,
                rx,
                ry,
                rotation_rad,
                start_rad,
                end_rad,
            } => BoundaryPiece::arc(center.into(), rx, ry, rotation_rad, start_rad, end_rad),
        }
    }
}
