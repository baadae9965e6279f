//! Checks built on the area profile: the inextensibility verdict, anchor
//! interspersion, outer billiard triangles, the Sas bound and extension
//! witnesses.

pub mod family;

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::anchored::{
    anchored_area, area_profile, critical_determinant, critical_triangles, refine_extrema,
    FLAT_SPREAD, REFINE_TOL,
};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Point, Triangle};
use crate::search::golden_max;

/// Default relative spread below which `A` counts as constant.
pub const VERDICT_TOL: f64 = 1e-6;
/// Default profile grid for verdicts.
pub const VERDICT_N: usize = 360;
/// Angle tolerance for the equalities allowed in interspersion.
pub const ANGLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InextensibilityVerdict {
    pub inextensible: bool,
    pub a_max: f64,
    pub a_min: f64,
    pub relative_spread: f64,
    /// Angle of minimal `A`, present when the domain is extensible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_theta: Option<f64>,
}

/// `K` is inextensible exactly when `A(theta)` is constant; here, when the
/// refined relative spread is at most `tol`.
pub fn inextensibility_verdict(k: &Domain, n: usize, tol: f64) -> InextensibilityVerdict {
    let profile = area_profile(k, n);
    let (min_idx, _) = profile
        .values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    let (mut a_min, mut theta_min) = (profile.grid_min, profile.thetas[min_idx]);
    if profile.relative_spread > FLAT_SPREAD {
        for (t, v) in refine_extrema(k, &profile.thetas, &profile.values, false) {
            if v < a_min {
                a_min = v;
                theta_min = t;
            }
        }
    }
    let a_max = profile.a_max;
    let relative_spread = ((a_max - a_min) / a_max).max(0.0);
    let inextensible = relative_spread <= tol;
    InextensibilityVerdict {
        inextensible,
        a_max,
        a_min,
        relative_spread,
        witness_theta: (!inextensible).then_some(theta_min),
    }
}

fn validate_triple(t: [f64; 3]) -> Result<()> {
    let ok = t.iter().all(|x| x.is_finite()) && t[0] < t[1] && t[1] < t[2] && t[2] < t[0] + TAU;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidTriple(t))
    }
}

/// Whether the triples alternate: for some even shift `k`,
/// `a1 <= b_{k+1} <= a3 <= b_{k+3} <= a5 <= b_{k+5} <= a1 + 2 pi`
/// (with `b_{j+6} = b_j + 2 pi`), up to [`ANGLE_TOL`].
pub fn interspersion_check(a: [f64; 3], b: [f64; 3]) -> Result<bool> {
    validate_triple(a)?;
    validate_triple(b)?;
    let base = a[0];
    let mut c: Vec<f64> = b.iter().map(|&x| base + (x - base).rem_euclid(TAU)).collect();
    c.sort_by(f64::total_cmp);
    let le = |x: f64, y: f64| x <= y + ANGLE_TOL;
    for r in 0..3 {
        for shift in [0.0, -TAU] {
            let s: Vec<f64> = (0..3)
                .map(|j| {
                    let idx = r + j;
                    c[idx % 3] + if idx >= 3 { TAU } else { 0.0 } + shift
                })
                .collect();
            if le(a[0], s[0])
                && le(s[0], a[1])
                && le(a[1], s[1])
                && le(s[1], a[2])
                && le(a[2], s[2])
                && le(s[2], a[0] + TAU)
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Anchor triple of `-T` given that of `T`.
fn negated_anchors(a: [f64; 3]) -> [f64; 3] {
    let mut out = a.map(|x| (x + PI).rem_euclid(TAU));
    out.sort_by(f64::total_cmp);
    out
}

/// Interspersion over every pair of critical triangles (and their negations).
pub fn all_pairs_interspersed(k: &Domain) -> Result<bool> {
    let crit = critical_triangles(k, 1e-7);
    if crit.len() < 2 {
        return Err(Error::NotApplicable(format!(
            "{} critical triangle(s) up to sign; need at least 2",
            crit.len()
        )));
    }
    let triples: Vec<[f64; 3]> = crit
        .iter()
        .flat_map(|c| [c.anchors, negated_anchors(c.anchors)])
        .collect();
    for i in 0..triples.len() {
        for j in i + 1..triples.len() {
            if !interspersion_check(triples[i], triples[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The triangle `(y+z-x, z+x-y, x+y-z)` whose side midpoints are `x, y, z`.
pub fn outer_billiard_triangle(t: &Triangle) -> Result<Triangle> {
    if t.is_degenerate(1e-14) {
        return Err(Error::DegenerateTriangle { area: t.area() });
    }
    let [x, y, z] = t.vertices();
    Ok(Triangle::new(y + z - x, z + x - y, x + y - z))
}

/// Whether every one of `m` boundary samples is a vertex of a critical
/// triangle (area within `1e-6` relative of `A_max`).
pub fn circle_of_triangles_check(k: &Domain, m: usize) -> bool {
    let a_max = area_profile(k, VERDICT_N).a_max;
    let cut = a_max * (1.0 - 1e-6);
    k.boundary_samples(m.max(36)).iter().all(|s| {
        // p is the apex for every theta in its normal cone, and a vertex of a
        // critical triangle exactly when one of those is anchored at A_max.
        let on_line = |theta: f64| (s.point.dot(Point::unit(theta)) - k.support_height(theta)).abs() <= 1e-6;
        let (lo, hi) = (s.normal_lo, s.normal_hi);
        let best = if hi - lo <= REFINE_TOL {
            anchored_area(k, lo)
        } else {
            let steps = 16;
            let grid = (0..=steps)
                .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
                .map(|t| anchored_area(k, t))
                .fold(f64::NEG_INFINITY, f64::max);
            grid.max(golden_max(|t| anchored_area(k, t), lo, hi, REFINE_TOL).1)
        };
        best >= cut && on_line(0.5 * (lo + hi))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SasReport {
    pub area: f64,
    pub a_max: f64,
    /// `A_max / area(K)`.
    pub ratio: f64,
    /// `3 sqrt 3 / (4 pi)`, the ellipse value.
    pub lower_bound: f64,
    /// `4 pi A_max / sqrt 27`, an upper bound on the area.
    pub corollary_bound: f64,
}

impl SasReport {
    pub fn ratio_holds(&self) -> bool {
        self.ratio >= self.lower_bound - 1e-9
    }

    pub fn corollary_holds(&self) -> bool {
        self.area <= self.corollary_bound + 1e-9 * self.area
    }
}

pub fn sas_lower_bound() -> f64 {
    3.0 * 3f64.sqrt() / (4.0 * PI)
}

pub fn sas_check(k: &Domain) -> SasReport {
    let area = k.area();
    let a_max = area_profile(k, VERDICT_N).a_max;
    SasReport {
        area,
        a_max,
        ratio: a_max / area,
        lower_bound: sas_lower_bound(),
        corollary_bound: 4.0 * PI * a_max / 27f64.sqrt(),
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionWitness {
    pub theta: f64,
    pub point: Point,
    pub superdomain: Domain,
    /// `Delta(K') - Delta(K)`.
    pub delta_change: f64,
}

/// Pushes the support contact at the angle of minimal `A` outwards by `eps`
/// and returns `conv(K ∪ {p, -p})` with the resulting change in `Delta`.
pub fn extension_witness(k: &Domain, eps: f64) -> Result<ExtensionWitness> {
    let verdict = inextensibility_verdict(k, VERDICT_N, VERDICT_TOL);
    let theta = match verdict.witness_theta {
        Some(t) if !verdict.inextensible => t,
        _ => {
            return Err(Error::NotExtensible {
                spread: verdict.relative_spread,
            })
        }
    };
    let u = Point::unit(theta);
    let point = k.support(theta).contact.representative() + u * eps;
    let mut pts = if k.is_polygonal() {
        k.corner_points()
    } else {
        k.polygonize(256).vertices().to_vec()
    };
    pts.push(point);
    pts.push(-point);
    let hull = ConvexPolygon::hull(&pts)?;
    let superdomain = Domain::polygon(hull.vertices())?;
    let delta_change = critical_determinant(&superdomain) - critical_determinant(k);
    Ok(ExtensionWitness {
        theta,
        point,
        superdomain,
        delta_change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Domain {
        Domain::parallelogram(Point::new(1.0, 0.0), Point::new(0.0, 1.0)).unwrap()
    }

    #[test]
    fn verdict_examples() {
        let v = inextensibility_verdict(&square(), 360, VERDICT_TOL);
        assert!(v.inextensible && v.relative_spread < 1e-9 && v.witness_theta.is_none());

        let v = inextensibility_verdict(&Domain::regular_polygon(10, 1.0).unwrap(), 360, VERDICT_TOL);
        assert!(v.inextensible, "{v:?}");

        let v = inextensibility_verdict(&Domain::regular_polygon(6, 1.0).unwrap(), 360, VERDICT_TOL);
        assert!(!v.inextensible);
        assert!((v.relative_spread - 0.25).abs() < 1e-9);
        let w = v.witness_theta.unwrap();
        // Minima sit at edge normals, pi/6 + k pi/3.
        let off = (w - PI / 6.0).rem_euclid(PI / 3.0);
        assert!(off.min(PI / 3.0 - off) < 1e-8, "{w}");
    }

    #[test]
    fn interspersion_examples() {
        let a = [0.0, TAU / 3.0, 2.0 * TAU / 3.0];
        assert!(interspersion_check(a, a).unwrap());
        assert!(interspersion_check(a, [PI / 3.0, PI, 5.0 * PI / 3.0]).unwrap());
        assert!(!interspersion_check([0.0, 0.1, 0.2], [1.0, 1.1, 1.2]).unwrap());
        assert!(matches!(
            interspersion_check([0.0, 0.1, 0.1], a),
            Err(Error::InvalidTriple(_))
        ));
        assert!(matches!(
            interspersion_check(a, [0.0, 1.0, 7.0]),
            Err(Error::InvalidTriple(_))
        ));
    }

    #[test]
    fn billiard_examples() {
        let t = Triangle::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0));
        let b = outer_billiard_triangle(&t).unwrap();
        let want = Triangle::new(Point::new(1.0, 1.0), Point::new(-1.0, 1.0), Point::new(1.0, -1.0));
        assert!(b.same_vertices(&want, 1e-15));
        let mids = b.midpoints();
        for v in t.vertices() {
            assert!(mids.iter().any(|m| m.approx_eq(v, 1e-12)));
        }

        let eq = Triangle::new(Point::unit(0.0), Point::unit(TAU / 3.0), Point::unit(2.0 * TAU / 3.0));
        let b = outer_billiard_triangle(&eq).unwrap();
        for v in b.vertices() {
            assert!((v.norm() - 2.0).abs() < 1e-12);
        }
        let flat = Triangle::new(Point::ORIGIN, Point::new(1.0, 0.0), Point::new(2.0, 0.0));
        assert!(outer_billiard_triangle(&flat).is_err());
    }

    #[test]
    fn sas_examples() {
        let r = sas_check(&Domain::ellipse(2.0, 1.0, 0.0).unwrap());
        assert!((r.ratio - 0.413_497).abs() < 1e-6);
        assert!((r.corollary_bound - TAU).abs() < 1e-9);
        let r = sas_check(&square());
        assert!((r.ratio - 0.5).abs() < 1e-12 && r.ratio_holds() && r.corollary_holds());
    }

    #[test]
    fn circle_of_triangles_examples() {
        assert!(circle_of_triangles_check(&Domain::disk(1.0).unwrap(), 72));
        assert!(circle_of_triangles_check(&square(), 72));
        assert!(!circle_of_triangles_check(&Domain::regular_polygon(6, 1.0).unwrap(), 72));
    }

    #[test]
    fn witness_examples() {
        assert!(matches!(extension_witness(&square(), 0.05), Err(Error::NotExtensible { .. })));
        let hex = Domain::regular_polygon(6, 1.0).unwrap();
        let w = extension_witness(&hex, 0.05).unwrap();
        let delta = critical_determinant(&hex);
        assert!(w.delta_change.abs() < 1e-6 * delta, "{}", w.delta_change);
        assert!(w.superdomain.area() - hex.area() > 1e-4);
        let w = extension_witness(&hex, 1.0).unwrap();
        assert!(w.delta_change > 0.0);
    }

    #[test]
    fn hexagon_has_one_critical_triangle() {
        let hex = Domain::regular_polygon(6, 1.0).unwrap();
        assert!(matches!(all_pairs_interspersed(&hex), Err(Error::NotApplicable(_))));
    }
}
