//! Lattices spanned by critical triangles and sampled covering checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anchored::critical_triangles;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geom::{Lattice, Point, Triangle};

/// Default sampling resolution per basis direction.
pub const DEFAULT_RESOLUTION: usize = 128;
const CONTAINS_SLACK: f64 = 1e-12;

/// Lattice with basis `(x - z, y - z)` for the triangle `(x, y, z)`.
pub fn lattice_from_triangle(t: &Triangle) -> Result<Lattice> {
    if t.is_degenerate(1e-14) {
        return Err(Error::DegenerateTriangle { area: t.area() });
    }
    let [x, y, z] = t.vertices();
    Lattice::new(x - z, y - z)
}

/// Lattice of the first critical triangle.
pub fn critical_lattice(k: &Domain) -> Result<Lattice> {
    let crit = critical_triangles(k, 1e-7);
    let first = crit
        .first()
        .ok_or_else(|| Error::NotApplicable("no critical triangle found".into()))?;
    lattice_from_triangle(&first.triangle)
}

/// `area(K) / det(L)`.
pub fn covering_density(k: &Domain, l: &Lattice) -> f64 {
    k.area() / l.determinant()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringReport {
    pub lattice: Lattice,
    pub resolution: usize,
    pub sampled_points: usize,
    /// Sample points of the fundamental cell not covered by any translate.
    pub uncovered: Vec<Point>,
    pub density: f64,
}

impl CoveringReport {
    pub fn covers(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Checks whether `K + L` covers the cell centres
/// `B ((i + 1/2) / res, (j + 1/2) / res)` of the fundamental parallelogram.
pub fn covering_check(k: &Domain, l: &Lattice, resolution: usize) -> CoveringReport {
    let res = resolution.max(1);
    let [b1, b2] = l.basis();
    let radius = k.circumradius();
    // |B^-1 w|_inf <= |w| * row norm of B^-1.
    let det = b1.cross(b2);
    let (r1, r2) = (b2.norm() / det.abs(), b1.norm() / det.abs());
    let (span1, span2) = (radius * r1, radius * r2);

    let uncovered: Vec<Point> = (0..res * res)
        .into_par_iter()
        .filter_map(|idx| {
            let (i, j) = (idx / res, idx % res);
            let (s, t) = ((i as f64 + 0.5) / res as f64, (j as f64 + 0.5) / res as f64);
            let p = b1 * s + b2 * t;
            let m_lo = (s - span1).floor() as i64;
            let m_hi = (s + span1).ceil() as i64;
            let n_lo = (t - span2).floor() as i64;
            let n_hi = (t + span2).ceil() as i64;
            for m in m_lo..=m_hi {
                for n in n_lo..=n_hi {
                    if k.contains(p - l.point(m, n), CONTAINS_SLACK) {
                        return None;
                    }
                }
            }
            Some(p)
        })
        .collect();

    CoveringReport {
        lattice: *l,
        resolution: res,
        sampled_points: res * res,
        uncovered,
        density: covering_density(k, l),
    }
}
