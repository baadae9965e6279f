//! Small one-dimensional searches used by the profile and witness code.

/// Golden-section maximization of a unimodal `f` on `[a, b]`.
/// Returns `(x, f(x))` for the best point seen.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        for cand in [(c, fc), (d, fd)] {
            if cand.1 > best.1 {
                best = cand;
            }
        }
    }
    best
}

/// Last point of `[a, b]` where the non-increasing predicate `positive`
/// holds, located by bisection to width `tol`. Assumes `positive(a)`.
pub fn bisect_sign_change(positive: impl Fn(f64) -> bool, mut a: f64, mut b: f64, tol: f64) -> f64 {
    if positive(b) {
        return b;
    }
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if positive(m) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Nelder-Mead minimization. Returns the best vertex and its value.
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    step: f64,
    max_iter: usize,
    ftol: f64,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    let combine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };
    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        if (vals[n] - vals[0]).abs() <= ftol {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64)
            .collect();
        let reflected = combine(&centroid, &simplex[n], -1.0);
        let fr = f(&reflected);
        if fr < vals[0] {
            let expanded = combine(&centroid, &simplex[n], -2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                vals[n] = fe;
            } else {
                simplex[n] = reflected;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = reflected;
            vals[n] = fr;
        } else {
            let contracted = if fr < vals[n] {
                combine(&centroid, &reflected, 0.5)
            } else {
                combine(&centroid, &simplex[n], 0.5)
            };
            let fc = f(&contracted);
            if fc < vals[n].min(fr) {
                simplex[n] = contracted;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = combine(&simplex[0], &simplex[i], 0.5);
                    vals[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    (simplex[best].clone(), vals[best])
}
