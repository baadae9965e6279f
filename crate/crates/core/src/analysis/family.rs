//! A one-parameter family of inextensible domains between the disk and the
//! square, built from four segments and twelve arcs of four congruent
//! ellipses with semi-axes `e^s` and `e^-s`.

use std::f64::consts::{FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anchored::{anchored_area, area_profile};
use crate::domain::{BoundaryPiece, Domain, DEFAULT_POLYGONIZE_N};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::search::nelder_mead;

/// Gap allowed between consecutive family pieces.
pub const FAMILY_CLOSURE_TOL: f64 = 1e-6;
/// Profile grid used to accept a solved member.
pub const ACCEPT_N: usize = 720;
const COARSE_N: usize = 60;

/// Reference construction data for `s = 0.1`, rounded to six significant digits.
pub const REFERENCE_PARAMS: FamilyParams = FamilyParams {
    s: 0.1,
    a: 0.099_672_9,
    t: 0.099_339_9,
    x: 0.910_311,
    y: 0.299_019,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub s: f64,
    pub a: f64,
    /// Arc trim angle, radians.
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Y")]
    pub y: f64,
}

/// The twelve arcs, unordered. Ellipses `±A` are rotated by `pi/4`, `±B` by
/// `3 pi/4`; the negated ellipse of each pair uses parameters shifted by
/// `pi` so the pair is centrally symmetric.
fn family_arcs(s: f64, a: f64, trim: f64) -> Vec<BoundaryPiece> {
    let (rx, ry) = (s.exp(), (-s).exp());
    let ellipses = [
        (Point::new(-a, a), FRAC_PI_4, 0.0),
        (Point::new(a, -a), FRAC_PI_4, PI),
        (Point::new(-a, -a), 3.0 * FRAC_PI_4, 0.0),
        (Point::new(a, a), 3.0 * FRAC_PI_4, PI),
    ];
    let mut out = Vec::with_capacity(12);
    for (center, rot, off) in ellipses {
        for k in 0..3 {
            let base = (120.0 * k as f64).to_radians() + off;
            let start = 75f64.to_radians() + trim + base;
            let end = 105f64.to_radians() - trim + base;
            out.push(BoundaryPiece::arc(center, rx, ry, rot, start, end));
        }
    }
    out
}

fn mid_angle(p: &BoundaryPiece) -> f64 {
    p.point_at(0.5).angle().rem_euclid(2.0 * PI)
}

fn assemble(p: &FamilyParams) -> Vec<BoundaryPiece> {
    let mut pieces = family_arcs(p.s, p.a, p.t);
    if p.y > 1e-12 {
        let (x, y) = (p.x, p.y);
        pieces.extend([
            BoundaryPiece::segment(Point::new(x, -y), Point::new(x, y)),
            BoundaryPiece::segment(Point::new(y, x), Point::new(-y, x)),
            BoundaryPiece::segment(Point::new(-x, y), Point::new(-x, -y)),
            BoundaryPiece::segment(Point::new(-y, -x), Point::new(y, -x)),
        ]);
    }
    pieces.sort_by(|a, b| mid_angle(a).total_cmp(&mid_angle(b)));
    pieces
}

fn max_gap(pieces: &[BoundaryPiece]) -> f64 {
    let m = pieces.len();
    (0..m)
        .map(|i| pieces[i].end().dist(pieces[(i + 1) % m].start()))
        .fold(0.0, f64::max)
}

/// Largest negative turn (as `-sin`) at a junction; zero when convex.
fn convexity_violation(pieces: &[BoundaryPiece]) -> f64 {
    let m = pieces.len();
    (0..m)
        .map(|i| {
            let t0 = pieces[i].tangent_at(1.0);
            let t1 = pieces[(i + 1) % m].tangent_at(0.0);
            (-t0.cross(t1) / (t0.norm() * t1.norm())).max(0.0)
        })
        .fold(0.0, f64::max)
}

/// Start of the arc centred at direction 15 degrees, which is where the
/// segment `x = X` ends: `(X, Y)`.
fn segment_corner(s: f64, a: f64, trim: f64) -> Point {
    let target = 15f64.to_radians();
    family_arcs(s, a, trim)
        .into_iter()
        .min_by(|p, q| {
            let dp = (mid_angle(p) - target).abs();
            let dq = (mid_angle(q) - target).abs();
            dp.total_cmp(&dq)
        })
        .map(|p| p.start())
        .expect("twelve arcs")
}

/// Completes `(s, a, T)` with the segment data implied by the arcs.
pub fn params_from_arcs(s: f64, a: f64, trim: f64) -> FamilyParams {
    let c = segment_corner(s, a, trim);
    FamilyParams {
        s,
        a,
        t: trim,
        x: c.x,
        y: c.y.max(0.0),
    }
}

/// Assembles the sixteen pieces (twelve when `Y` vanishes) into a domain.
pub fn build_family_domain(p: &FamilyParams) -> Result<Domain> {
    let pieces = assemble(p);
    let gap = max_gap(&pieces);
    if gap > FAMILY_CLOSURE_TOL || !gap.is_finite() {
        return Err(Error::ClosureFailure { gap });
    }
    Domain::with_closure_tolerance(pieces, DEFAULT_POLYGONIZE_N, FAMILY_CLOSURE_TOL)
}

/// Variance of `A` over `n` grid angles, or `None` if the pieces do not form
/// a valid domain even with a loose closure tolerance.
fn loose_variance(p: &FamilyParams, n: usize) -> Option<f64> {
    let d = Domain::with_closure_tolerance(assemble(p), 256, 1e-2).ok()?;
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| anchored_area(&d, i as f64 * PI / n as f64))
        .collect();
    let mean = values.iter().sum::<f64>() / n as f64;
    Some(values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64)
}

/// Solves for the member of the family with parameter `s`: `(a, T)` are
/// found by Nelder-Mead on closure, convexity and `A`-variance residuals
/// (equal weights), and `X, Y` follow from the arc endpoints.
pub fn solve_family(s: f64) -> Result<FamilyParams> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::NotApplicable(format!("family parameter s = {s} must be >= 0")));
    }
    if s == 0.0 {
        return Ok(FamilyParams {
            s,
            a: 0.0,
            t: 0.0,
            x: 1.0,
            y: 0.0,
        });
    }

    let residual = |v: &[f64]| {
        let p = params_from_arcs(s, v[0], v[1]);
        let pieces = assemble(&p);
        let gap = max_gap(&pieces);
        let conv = convexity_violation(&pieces);
        let var = loose_variance(&p, COARSE_N).unwrap_or(1.0);
        gap * gap + conv * conv + var
    };
    // a and T both start near s: the table of solved members is close to linear.
    let (best, _) = nelder_mead(residual, &[s, s], 0.1 * s, 200, 0.0);
    // The variance term is flat to round-off near the optimum; finish on
    // closure alone.
    let closure = |v: &[f64]| {
        let p = params_from_arcs(s, v[0], v[1]);
        max_gap(&assemble(&p)).powi(2)
    };
    let (best, _) = nelder_mead(closure, &best, 1e-4 * s, 2000, 0.0);

    let p = params_from_arcs(s, best[0], best[1]);
    let pieces = assemble(&p);
    let gap = max_gap(&pieces);
    let convexity = convexity_violation(&pieces);
    let spread = build_family_domain(&p)
        .ok()
        .map(|d| area_profile(&d, ACCEPT_N).relative_spread)
        .unwrap_or(f64::INFINITY);
    if gap < 1e-9 && spread < 1e-6 && convexity < 1e-9 && p.y < p.x {
        Ok(p)
    } else {
        Err(Error::NoConvergence {
            closure: gap,
            convexity,
            spread,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::hausdorff_distance;

    #[test]
    fn fixture_closes_and_is_valid() {
        let pieces = assemble(&REFERENCE_PARAMS);
        assert_eq!(pieces.len(), 16);
        assert_eq!(pieces.iter().filter(|p| p.is_segment()).count(), 4);
        assert!(max_gap(&pieces) < 1e-6);
        let d = build_family_domain(&REFERENCE_PARAMS).unwrap();
        assert!(d.max_gap() < 1e-6);
    }

    #[test]
    fn fixture_corner_matches_arcs() {
        let p = params_from_arcs(REFERENCE_PARAMS.s, REFERENCE_PARAMS.a, REFERENCE_PARAMS.t);
        assert!((p.x - REFERENCE_PARAMS.x).abs() < 1e-6);
        assert!((p.y - REFERENCE_PARAMS.y).abs() < 1e-6);
    }

    #[test]
    fn zero_parameter_is_the_disk() {
        let p = solve_family(0.0).unwrap();
        let d = build_family_domain(&p).unwrap();
        assert_eq!(d.pieces().len(), 12);
        let disk = Domain::disk(1.0).unwrap();
        assert!(hausdorff_distance(&d.polygonize(512), &disk.polygonize(512)) < 1e-3);
        assert!((d.area() - PI).abs() < 1e-12);
    }

    #[test]
    fn wide_gap_is_closure_failure() {
        let mut p = REFERENCE_PARAMS;
        p.x += 0.01;
        assert!(matches!(build_family_domain(&p), Err(Error::ClosureFailure { .. })));
    }

    #[test]
    fn negative_parameter_rejected() {
        assert!(solve_family(-0.1).is_err());
    }

    #[test]
    fn params_json_uses_single_letter_names() {
        let text = serde_json::to_string(&REFERENCE_PARAMS).unwrap();
        assert!(text.contains("\"T\"") && text.contains("\"X\"") && text.contains("\"Y\""));
        let back: FamilyParams = serde_json::from_str(&text).unwrap();
        assert_eq!(back, REFERENCE_PARAMS);
    }
}
