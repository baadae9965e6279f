use std::f64::consts::PI;

use inextensible::*;
use proptest::prelude::*;

const CASES: u32 = 64;

fn rot(a: f64) -> [[f64; 2]; 2] {
    [[a.cos(), -a.sin()], [a.sin(), a.cos()]]
}

fn mul(p: [[f64; 2]; 2], q: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
        }
    }
    r
}

/// Determinant-one map: rotation, axis stretch, shear.
fn unimodular() -> impl Strategy<Value = [[f64; 2]; 2]> {
    (0.0..PI, 0.5f64..2.0, -1.0f64..1.0)
        .prop_map(|(a, l, s)| mul(mul(rot(a), [[l, 0.0], [0.0, 1.0 / l]]), [[1.0, s], [0.0, 1.0]]))
}

fn symmetric_polygon() -> impl Strategy<Value = Domain> {
    prop::collection::vec((0.0..PI, 0.4f64..1.5), 3..7).prop_filter_map("degenerate hull", |pts| {
        let mut all: Vec<Point> = pts.iter().map(|&(a, r)| Point::unit(a) * r).collect();
        all.extend(all.clone().into_iter().map(|p| -p));
        let hull = ConvexPolygon::hull(&all).ok()?;
        Domain::polygon(hull.vertices()).ok().filter(|d| d.area() > 0.2)
    })
}

fn any_domain() -> impl Strategy<Value = Domain> {
    prop_oneof![
        (0.5f64..2.0, 0.0..PI, 0.5f64..2.0, 0.4f64..(PI - 0.4)).prop_map(|(a, t, b, d)| {
            Domain::parallelogram(Point::unit(t) * a, Point::unit(t + d) * b).unwrap()
        }),
        (0.5f64..2.0, 0.5f64..2.0, 0.0..PI).prop_map(|(a, b, phi)| Domain::ellipse(a, b, phi).unwrap()),
        (prop::sample::select(vec![4usize, 6, 8, 10, 12]), unimodular())
            .prop_map(|(n, m)| Domain::regular_polygon(n, 1.0).unwrap().linear_map(m).unwrap()),
        symmetric_polygon(),
    ]
}

fn is_parallelogram(k: &Domain) -> bool {
    k.is_polygonal() && k.corner_points().len() == 4
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn support_is_even(k in any_domain()) {
        for i in 0..360 {
            let th = (i as f64).to_radians();
            let (a, b) = (k.support_height(th), k.support_height(th + PI));
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0), "h({th}) = {a} vs {b}");
        }
    }

    #[test]
    fn width_is_concave_in_offset(k in any_domain(), theta in 0.0..PI) {
        let h = k.support_height(theta);
        let n = 40;
        let ts: Vec<f64> = (0..=n).map(|i| -h + 2.0 * h * i as f64 / n as f64).collect();
        let ws: Vec<f64> = ts.iter().map(|&t| k.width(theta, t)).collect();
        for i in 1..n {
            let mid = 0.5 * (ws[i - 1] + ws[i + 1]);
            prop_assert!(ws[i] >= mid - 1e-9 * h, "w not concave at t = {}", ts[i]);
        }
    }

    #[test]
    fn polygonization_is_inscribed_and_grows(k in any_domain()) {
        let mut last = 0.0;
        for n in [8, 32, 128] {
            let p = k.polygonize(n);
            prop_assert!(p.area() >= last - 1e-12);
            prop_assert!(p.area() <= k.area() + 1e-9);
            last = p.area();
            for i in 0..90 {
                let th = i as f64 * PI / 45.0;
                let h = k.support_height(th);
                let u = Point::unit(th);
                prop_assert!(p.vertices().iter().all(|v| v.dot(u) <= h + 1e-9));
            }
        }
    }

    #[test]
    fn anchored_triangle_flips_with_direction(k in any_domain(), theta in 0.0..PI) {
        let a = anchored_triangle(&k, theta).triangle();
        let b = anchored_triangle(&k, theta + PI).triangle();
        prop_assert!(a.same_vertices(&b.negated(), 1e-9), "{a:?} vs {b:?}");
    }

    #[test]
    fn optimum_beats_every_offset(k in any_domain(), theta in 0.0..PI) {
        let at = anchored_triangle(&k, theta);
        let h = k.support_height(theta);
        let a_max = area_profile(&k, 90).a_max;
        for i in 1..200 {
            let t = -h + 2.0 * h * i as f64 / 200.0;
            let f = 0.5 * k.width(theta, t) * (h - t);
            prop_assert!(f <= at.area + 1e-9 * a_max, "f({t}) = {f} > {}", at.area);
        }
    }

    #[test]
    fn critical_triangles_touch_their_support_lines(k in any_domain()) {
        let parallelogram = is_parallelogram(&k);
        for c in critical_triangles(&k, 1e-7).iter().take(8) {
            for &th in &c.anchors {
                let u = Point::unit(th);
                let h = k.support_height(th);
                let gap = c.triangle.vertices().iter().map(|v| h - v.dot(u)).fold(f64::INFINITY, f64::min);
                prop_assert!(gap.abs() < 1e-7, "anchor {th}: gap {gap}");
            }
            let margin = c.triangle.interior_margin(Point::ORIGIN);
            if parallelogram {
                prop_assert!(margin >= -1e-9);
            } else {
                prop_assert!(margin > 0.0, "origin margin {margin}");
            }
        }
    }

    #[test]
    fn determinant_is_affine_invariant(k in any_domain(), m in unimodular()) {
        let d = critical_determinant(&k);
        let dm = critical_determinant(&k.linear_map(m).unwrap());
        prop_assert!(((d - dm) / d).abs() <= 1e-8, "{d} vs {dm}");
    }

    #[test]
    fn determinant_scales_quadratically(k in any_domain(), c in 0.3f64..3.0) {
        let d = critical_determinant(&k);
        let dc = critical_determinant(&k.linear_map([[c, 0.0], [0.0, c]]).unwrap());
        prop_assert!((dc / (c * c * d) - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn critical_lattice_determinant(k in any_domain()) {
        let l = critical_lattice(&k).unwrap();
        let d = critical_determinant(&k);
        prop_assert!(((lattice_determinant(&l) - d) / d).abs() <= 1e-9);
        prop_assert!(d <= k.area() * (1.0 + 1e-9));
    }

    #[test]
    fn sas_bounds_hold(k in any_domain()) {
        let r = sas_check(&k);
        prop_assert!(r.ratio_holds() && r.corollary_holds(), "{r:?}");
    }
}
