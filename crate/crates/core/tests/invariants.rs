use std::f64::consts::PI;

use inextensible::analysis::{VERDICT_N, VERDICT_TOL};
use inextensible::covering::DEFAULT_RESOLUTION;
use inextensible::*;

fn suite() -> Vec<(&'static str, Domain)> {
    vec![
        ("square", Domain::parallelogram(Point::new(1.0, 0.0), Point::new(0.0, 1.0)).unwrap()),
        ("disk", Domain::disk(1.0).unwrap()),
        ("ellipse", Domain::ellipse(2.0, 1.0, 0.3).unwrap()),
        ("hexagon", Domain::regular_polygon(6, 1.0).unwrap()),
        ("octagon", Domain::regular_polygon(8, 1.0).unwrap()),
        ("10-gon", Domain::regular_polygon(10, 1.0).unwrap()),
        ("fixture", build_family_domain(&REFERENCE_PARAMS).unwrap()),
    ]
}

fn equilateral_delta() -> f64 {
    1.5 * 3f64.sqrt()
}

#[test]
fn determinant_is_monotone_under_inclusion() {
    let disk = critical_determinant(&Domain::disk(1.0).unwrap());
    let square = critical_determinant(&Domain::parallelogram(Point::new(2.0, 0.0), Point::new(0.0, 2.0)).unwrap());
    let hexagon = critical_determinant(&Domain::regular_polygon(6, 1.0).unwrap());
    assert!(hexagon <= disk + 1e-9);
    assert!(disk <= square + 1e-9);
    assert!((square - 4.0).abs() < 1e-12);
}

#[test]
fn critical_lattices_cover() {
    for (name, k) in suite() {
        let l = critical_lattice(&k).unwrap();
        let report = covering_check(&k, &l, DEFAULT_RESOLUTION);
        assert!(report.covers(), "{name}: {} uncovered", report.uncovered.len());
    }
}

#[test]
fn ellipses_of_equal_area_share_the_determinant() {
    let d0 = critical_determinant(&Domain::disk(1.0).unwrap());
    for (a, phi) in [(1.5, 0.0), (2.0, 0.4), (3.0, 1.2)] {
        let d = critical_determinant(&Domain::ellipse(a, 1.0 / a, phi).unwrap());
        assert!((d - d0).abs() <= 1e-8, "a = {a}: {d}");
    }
}

#[test]
fn circle_check_agrees_with_verdict() {
    for (name, k) in suite() {
        let v = inextensibility_verdict(&k, VERDICT_N, if name == "fixture" { 1e-3 } else { VERDICT_TOL });
        assert_eq!(circle_of_triangles_check(&k, 180), v.inextensible, "{name}");
    }
}

#[test]
fn sas_equality_only_for_ellipses() {
    let bound = analysis::sas_lower_bound();
    for (name, k) in suite() {
        let r = sas_check(&k);
        if matches!(name, "disk" | "ellipse") {
            assert!((r.ratio - bound).abs() <= 1e-9, "{name}: {}", r.ratio);
        } else {
            assert!(r.ratio > bound + 1e-6, "{name}: {}", r.ratio);
        }
    }
}

#[test]
fn family_members_keep_the_disk_determinant() {
    for s in [0.0, 0.025, 0.05, 0.075, 0.1] {
        let p = solve_family(s).unwrap();
        assert!(p.y < p.x);
        let k = build_family_domain(&p).unwrap();
        let delta = critical_determinant(&k);
        assert!((delta - equilateral_delta()).abs() <= 1e-6, "s = {s}: {delta}");
        assert!(inextensibility_verdict(&k, VERDICT_N, VERDICT_TOL).inextensible, "s = {s}");
    }
}

#[test]
fn family_area_shrinks_towards_the_square() {
    let mut last = f64::INFINITY;
    for s in [0.0, 0.05, 0.1] {
        let area = build_family_domain(&solve_family(s).unwrap()).unwrap().area();
        assert!(area < last && area > equilateral_delta());
        last = area;
    }
}

#[test]
fn witnesses_are_sound() {
    let irregular = Domain::polygon(&[
        Point::new(1.0, 0.0),
        Point::new(0.4, 0.9),
        Point::new(-0.7, 0.8),
        Point::new(-1.0, 0.0),
        Point::new(-0.4, -0.9),
        Point::new(0.7, -0.8),
    ])
    .unwrap();
    for k in [Domain::regular_polygon(6, 1.0).unwrap(), irregular] {
        let w = extension_witness(&k, 0.02).unwrap();
        assert!(w.superdomain.area() > k.area());
        assert!(w.delta_change >= -1e-9);
        for v in k.corner_points() {
            assert!(w.superdomain.contains(v, 1e-9));
        }
    }
}

#[test]
fn inextensible_domains_have_no_witness() {
    assert!(matches!(
        extension_witness(&Domain::disk(1.0).unwrap(), 0.1),
        Err(Error::NotExtensible { .. })
    ));
}

#[test]
fn anchored_area_is_periodic_and_bounded() {
    for (name, k) in suite() {
        let p = area_profile(&k, 120);
        for &th in &p.thetas {
            let a = anchored_area(&k, th);
            assert!((a - anchored_area(&k, th + PI)).abs() <= 1e-9, "{name} at {th}");
            assert!(a <= p.a_max + 1e-12);
        }
    }
}

#[test]
fn domain_json_round_trip() {
    for (name, k) in suite() {
        let back = Domain::from_json(&k.to_json()).unwrap().unwrap();
        assert_eq!(back.pieces().len(), k.pieces().len(), "{name}");
        assert_eq!(critical_determinant(&back), critical_determinant(&k), "{name}");
    }
}

#[test]
fn invalid_domains_are_rejected() {
    let shifted = Domain::polygon(&[
        Point::new(2.0, 0.0),
        Point::new(3.0, 0.0),
        Point::new(3.0, 1.0),
        Point::new(2.0, 1.0),
    ]);
    assert!(shifted.is_err());
    let lopsided = Domain::polygon(&[Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0)]);
    assert!(lopsided.is_err());
    assert!(Domain::regular_polygon(5, 1.0).is_err());
    assert!(Domain::disk(-1.0).is_err());
    let disk = Domain::disk(1.0).unwrap();
    assert!(matches!(disk.chord(0.0, 1.5), Err(Error::OutOfSlab { .. })));
}
