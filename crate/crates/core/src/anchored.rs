//! Largest triangles with a vertex on a support line, and the area profile
//! `A(theta)` they define.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{Contact, Domain};
use crate::geom::{wrap_angle, ConvexPolygon, Point, Triangle};
use crate::search::{bisect_sign_change, golden_max};

/// Grid size used for the critical determinant.
pub const PROFILE_N: usize = 360;
/// Angular tolerance of profile refinement.
pub const REFINE_TOL: f64 = 1e-10;
/// Relative spread below which a profile is treated as flat.
pub const FLAT_SPREAD: f64 = 1e-12;
const MAX_REFINED: usize = 32;

/// Largest triangle with apex on the support line `L(theta)` and base on a
/// parallel chord.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnchoredTriangle {
    pub theta: f64,
    pub apex_contact: Contact,
    pub apex: Point,
    pub base_y: Point,
    pub base_z: Point,
    pub area: f64,
    /// Offset `t` of the base chord along `u_theta`.
    pub base_height: f64,
}

impl AnchoredTriangle {
    pub fn triangle(&self) -> Triangle {
        Triangle::new(self.apex, self.base_y, self.base_z)
    }
}

/// Maximizes `f(t) = w(t) (h - t) / 2` over `t` in `[-h, h]`.
///
/// Polygons are handled exactly: the width is linear between vertex heights,
/// so each piece of `f` is a quadratic. Curved boundaries use bisection on the
/// sign of `d/dt log f`, which is decreasing because `f` is log-concave.
pub fn anchored_triangle(k: &Domain, theta: f64) -> AnchoredTriangle {
    let support = k.support(theta);
    let h = support.h;
    let t = if k.is_polygonal() {
        best_offset_polygonal(k, theta, h)
    } else {
        best_offset_smooth(k, theta, h)
    };
    let chord = k.chord(theta, t).unwrap_or_else(|_| {
        // t was clamped into the slab; only round-off can land here.
        k.chord(theta, t.clamp(-h, h) * (1.0 - 1e-15)).expect("offset inside slab")
    });
    let area = 0.5 * chord.width * (h - t);
    AnchoredTriangle {
        theta,
        apex_contact: support.contact,
        apex: support.contact.representative(),
        base_y: chord.y,
        base_z: chord.z,
        area,
        base_height: t,
    }
}

/// `A(theta)`.
pub fn anchored_area(k: &Domain, theta: f64) -> f64 {
    anchored_triangle(k, theta).area
}

fn best_offset_polygonal(k: &Domain, theta: f64, h: f64) -> f64 {
    let u = Point::unit(theta);
    let mut ts: Vec<f64> = k
        .corner_points()
        .iter()
        .map(|p| p.dot(u).clamp(-h, h))
        .chain([-h, h])
        .collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * (1.0 + h));
    let ws: Vec<f64> = ts.iter().map(|&t| k.width(theta, t)).collect();
    let f = |t: f64, w: f64| 0.5 * w * (h - t);

    let (mut best_t, mut best) = (ts[0], f(ts[0], ws[0]));
    let mut consider = |t: f64, w: f64| {
        let v = f(t, w);
        if v > best {
            best = v;
            best_t = t;
        }
    };
    for i in 0..ts.len() {
        consider(ts[i], ws[i]);
        if i + 1 < ts.len() {
            let (t0, t1) = (ts[i], ts[i + 1]);
            let beta = (ws[i + 1] - ws[i]) / (t1 - t0);
            if beta != 0.0 {
                let alpha = ws[i] - beta * t0;
                let ts_ = (beta * h - alpha) / (2.0 * beta);
                if ts_ > t0 && ts_ < t1 {
                    consider(ts_, alpha + beta * ts_);
                }
            }
        }
    }
    best_t
}

fn best_offset_smooth(k: &Domain, theta: f64, h: f64) -> f64 {
    let u = Point::unit(theta);
    let v = u.perp();
    // Rate of change of <endpoint, v> per unit of t along the boundary.
    let slope = |tau: Point| {
        let du = tau.dot(u);
        let dv = tau.dot(v);
        if du == 0.0 {
            f64::INFINITY.copysign(dv)
        } else {
            dv / du
        }
    };
    // Sign of w'(t) (h - t) - w(t), a positive multiple of d/dt log f.
    let increasing = |t: f64| {
        let (y, z) = k.chord_hits(theta, t);
        let w = (y.point - z.point).dot(v);
        let dw = slope(y.tangent) - slope(z.tangent);
        if dw.is_nan() {
            return false;
        }
        dw * (h - t) - w > 0.0
    };
    let lo = -h;
    // Step inside the slab past any junction bridges: right at the bottom
    // contact the tangents are unreliable and f moves by a negligible amount.
    let start = lo + (1e-9 * h).max(4.0 * k.closure_tolerance());
    let t = if increasing(start) {
        bisect_sign_change(increasing, start, h, 1e-15 * h.max(1e-300))
    } else {
        start
    };
    // Junction heights are kinks of f; on rounded input data f can fail to be
    // log-concave right at a junction, so they are candidates too.
    let fa = |t: f64| 0.5 * k.width(theta, t) * (h - t);
    k.pieces()
        .iter()
        .flat_map(|p| [p.start().dot(u), p.end().dot(u)])
        .filter(|&s| s > lo && s < h)
        .chain([lo, start])
        .fold((t, fa(t)), |best, c| {
            let v = fa(c);
            if v > best.1 {
                (c, v)
            } else {
                best
            }
        })
        .0
}

/// Sampled area profile over `[0, pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaProfile {
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest grid value.
    pub grid_max: f64,
    /// Smallest grid value.
    pub grid_min: f64,
    /// Maximum after golden-section refinement of local grid maxima.
    pub a_max: f64,
    pub argmax_set: Vec<f64>,
    /// `(grid_max - grid_min) / grid_max`.
    pub relative_spread: f64,
}

/// `A(theta)` at `theta_i = i pi / n` for `i < n`, plus refined maxima.
pub fn area_profile(k: &Domain, n: usize) -> AreaProfile {
    let n = n.max(3);
    let thetas: Vec<f64> = (0..n).map(|i| i as f64 * PI / n as f64).collect();
    let values: Vec<f64> = thetas.par_iter().map(|&t| anchored_area(k, t)).collect();
    let grid_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let grid_min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let relative_spread = (grid_max - grid_min) / grid_max;

    if relative_spread <= FLAT_SPREAD {
        return AreaProfile {
            argmax_set: thetas.clone(),
            thetas,
            values,
            grid_max,
            grid_min,
            a_max: grid_max,
            relative_spread,
        };
    }

    let refined = refine_extrema(k, &thetas, &values, true);
    let a_max = refined.iter().map(|r| r.1).fold(grid_max, f64::max);
    let cut = a_max * (1.0 - 1e-9);
    let mut argmax_set: Vec<f64> = refined
        .iter()
        .filter(|r| r.1 >= cut)
        .map(|r| r.0.rem_euclid(PI))
        .collect();
    argmax_set.sort_by(f64::total_cmp);
    AreaProfile {
        thetas,
        values,
        grid_max,
        grid_min,
        a_max,
        argmax_set,
        relative_spread,
    }
}

/// Golden-section refinement of up to 32 cyclic local maxima (or minima)
/// of a grid over one period `[0, pi)`. Returns `(theta, A(theta))`.
pub fn refine_extrema(k: &Domain, thetas: &[f64], values: &[f64], maximize: bool) -> Vec<(f64, f64)> {
    let n = values.len();
    let sign = if maximize { 1.0 } else { -1.0 };
    let step = PI / n as f64;
    let mut locals: Vec<usize> = (0..n)
        .filter(|&i| {
            let (a, b, c) = (values[(i + n - 1) % n], values[i], values[(i + 1) % n]);
            sign * (b - a) >= 0.0 && sign * (b - c) >= 0.0
        })
        .collect();
    locals.sort_by(|&a, &b| (sign * values[b]).total_cmp(&(sign * values[a])));
    locals.truncate(MAX_REFINED);
    locals
        .par_iter()
        .map(|&i| {
            let c = thetas[i];
            let (t, v) = golden_max(|t| sign * anchored_area(k, t), c - step, c + step, REFINE_TOL);
            let v = sign * v;
            if sign * v >= sign * values[i] {
                (wrap_angle(t), v)
            } else {
                (c, values[i])
            }
        })
        .collect()
}

/// `Delta(K) = 2 max A(theta)`.
pub fn critical_determinant(k: &Domain) -> f64 {
    2.0 * area_profile(k, PROFILE_N).a_max
}

/// A triangle of maximal area together with the anchor angles of its
/// vertices (the outward normal of the support line through each vertex,
/// parallel to the opposite side), sorted so `a1 < a3 < a5 < a1 + 2 pi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalTriangle {
    pub triangle: Triangle,
    pub anchors: [f64; 3],
}

/// Anchor angles of a triangle inscribed in a domain.
pub fn anchor_angles(t: &Triangle) -> [f64; 3] {
    let v = t.vertices();
    let mut out = [0.0; 3];
    for i in 0..3 {
        let (p, q, r) = (v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
        let e = r - q;
        let mut n = Point::new(e.y, -e.x);
        if n.dot(p - q) < 0.0 {
            n = -n;
        }
        out[i] = wrap_angle(n.angle());
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Triangles of area within `tol` (relative) of `A_max`, up to negation,
/// sampled over the profile grid and refined maxima.
pub fn critical_triangles(k: &Domain, tol: f64) -> Vec<CriticalTriangle> {
    let profile = area_profile(k, PROFILE_N);
    let cut = profile.a_max * (1.0 - tol);
    let mut thetas: Vec<f64> = profile
        .thetas
        .iter()
        .zip(&profile.values)
        .filter(|(_, &v)| v >= cut)
        .map(|(&t, _)| t)
        .collect();
    thetas.extend(profile.argmax_set.iter().copied());

    let mut out: Vec<CriticalTriangle> = Vec::new();
    for th in thetas {
        let at = anchored_triangle(k, th);
        if at.area < cut {
            continue;
        }
        let tri = at.triangle();
        let seen = out.iter().any(|c| {
            c.triangle.same_vertices(&tri, 1e-6) || c.triangle.same_vertices(&tri.negated(), 1e-6)
        });
        if !seen {
            out.push(CriticalTriangle {
                triangle: tri,
                anchors: anchor_angles(&tri),
            });
        }
    }
    out
}

/// Largest triangle on the vertices of a convex polygon, by exhaustive search.
pub fn brute_max_triangle(p: &ConvexPolygon) -> (Triangle, f64) {
    let v = p.vertices();
    let n = v.len();
    if n < 3 {
        let t = Triangle::new(v[0], v[n - 1], v[0]);
        return (t, 0.0);
    }
    let (i, j, l, a) = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut best = (i, i, i, f64::NEG_INFINITY);
            for j in i + 1..n {
                for l in j + 1..n {
                    let a = crate::geom::triangle_area(v[i], v[j], v[l]);
                    if a > best.3 {
                        best = (i, j, l, a);
                    }
                }
            }
            best
        })
        .reduce(|| (0, 0, 0, f64::NEG_INFINITY), |a, b| if b.3 > a.3 { b } else { a });
    (Triangle::new(v[i], v[j], v[l]), a)
}

/// Angle of `u_theta` as a full-turn value, for callers that index profiles.
pub fn full_turn(theta: f64) -> f64 {
    theta.rem_euclid(TAU)
}
