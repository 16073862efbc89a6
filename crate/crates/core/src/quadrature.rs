//! Composite Gauss–Legendre quadrature, used by the Pareto oracles and the
//! normalisation checks.

use std::sync::OnceLock;

use crate::special::series::Accumulator;

const POINTS: usize = 10;

fn nodes() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| gauss_legendre_nodes(POINTS))
}

/// Nodes and weights of the `n`-point rule on `[-1, 1]`, by Newton iteration
/// on the Legendre polynomial.
pub fn gauss_legendre_nodes(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `∫_a^b f` with `panels` equal panels of the 10-point rule.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut acc = Accumulator::default();
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for &(x, w) in nodes() {
            acc.add(w * f(mid + 0.5 * h * x));
        }
    }
    0.5 * h * acc.value()
}

/// Integral together with the change when the panel count is halved, a
/// practical error estimate for smooth integrands.
pub fn integrate_with_estimate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> (f64, f64) {
    let panels = panels.max(2);
    let fine = integrate(&f, a, b, panels);
    let coarse = integrate(&f, a, b, panels / 2);
    (fine, (fine - coarse).abs())
}
