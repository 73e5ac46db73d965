//! Shared helpers for the integration and acceptance suites: an independent
//! Runge-Kutta oracle for the Schrodinger equation, a Numerov sweep, least
//! squares fits and seam-aware finite-difference residuals.

use invosc::oscillator::OscillatorKind;
use invosc::wave::WaveFunction;
use invosc::Complex64;

/// Fixed-step RK4 for psi'' = q(x) psi from (psi0, dpsi0) at x0 to x1.
/// Completely independent of the hypergeometric evaluation path.
pub fn rk4_sse<Q>(q: Q, x0: f64, psi0: Complex64, dpsi0: Complex64, x1: f64, step: f64) -> (Complex64, Complex64)
where
    Q: Fn(f64) -> Complex64,
{
    let n = ((x1 - x0).abs() / step).ceil().max(1.0) as usize;
    let h = (x1 - x0) / n as f64;
    let mut y = psi0;
    let mut dy = dpsi0;
    let mut x = x0;
    let f = |x: f64, y: Complex64, dy: Complex64| (dy, q(x) * y);
    for _ in 0..n {
        let (k1y, k1d) = f(x, y, dy);
        let (k2y, k2d) = f(x + h / 2.0, y + h / 2.0 * k1y, dy + h / 2.0 * k1d);
        let (k3y, k3d) = f(x + h / 2.0, y + h / 2.0 * k2y, dy + h / 2.0 * k2d);
        let (k4y, k4d) = f(x + h, y + h * k3y, dy + h * k3d);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        x += h;
    }
    (y, dy)
}

/// Numerov sweep of y'' = q(x) y over a uniform grid given y[0], y[1].
pub fn numerov(q: &[f64], h: f64, y0: f64, y1: f64) -> Vec<f64> {
    let n = q.len();
    let mut y = vec![0.0; n];
    y[0] = y0;
    y[1] = y1;
    let h2 = h * h;
    for i in 1..n - 1 {
        let a = 1.0 + h2 * q[i + 1] / 12.0;
        let b = 2.0 * (1.0 - 5.0 * h2 * q[i] / 12.0) * y[i];
        let c = (1.0 + h2 * q[i - 1] / 12.0) * y[i - 1];
        y[i + 1] = (b - c) / a;
    }
    y
}

/// slope, intercept, r^2 of a least-squares line.
pub fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let syy: f64 = pts.iter().map(|p| p.1 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let r_num = (n * sxy - sx * sy) * (n * sxy - sx * sy);
    let r_den = (n * sxx - sx * sx) * (n * syy - sy * sy);
    (slope, intercept, if r_den == 0.0 { 1.0 } else { r_num / r_den })
}

/// Log-log points of the local-maximum envelope of |f| over [lo, hi].
pub fn envelope_points<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, samples: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    let step = (hi - lo) / samples as f64;
    let mut prev2 = f(lo);
    let mut prev1 = f(lo + step);
    for k in 2..=samples {
        let x = lo + step * k as f64;
        let cur = f(x);
        if prev1 > prev2 && prev1 > cur {
            pts.push(((x - step).ln(), prev1.ln()));
        }
        prev2 = prev1;
        prev1 = cur;
    }
    pts
}

/// Worst scaled SSE residual of `wave` by a five-point stencil on values,
/// skipping stencils that straddle the evaluator seams in `seams`.
pub fn sse_residual_fd(
    wave: &dyn WaveFunction,
    kind: OscillatorKind,
    energy: f64,
    lo: f64,
    hi: f64,
    points: usize,
    seams: &[f64],
) -> f64 {
    let h = 1e-3;
    let mut worst = 0.0f64;
    let mut used = 0;
    for k in 0..points {
        let x = lo + (hi - lo) * (k as f64 + 0.5) / points as f64;
        if seams.iter().any(|s| (x.abs() - s).abs() < 3.0 * h + 0.02) {
            continue;
        }
        used += 1;
        let mut dd = Complex64::new(0.0, 0.0);
        for (o, wt) in [(-2.0, -1.0), (-1.0, 16.0), (0.0, -30.0), (1.0, 16.0), (2.0, -1.0)] {
            dd += wt * wave.value(x + o * h).unwrap();
        }
        dd /= 12.0 * h * h;
        let v = wave.value(x).unwrap();
        let residual = -0.5 * dd + kind.potential(x) * v - energy * v;
        let scale = (0.5 * dd).norm() + (energy * v).norm() + 1.0;
        worst = worst.max(residual.norm() / scale);
    }
    assert!(used >= points - 4, "seam skipping removed too many sample points");
    worst
}

/// Residual of a partner-Hamiltonian eigenfunction under -psi''/2 + V2 psi = E psi
/// with psi'' from the five-point stencil and V2 evaluated analytically.
pub fn h2_residual_fd<V, W>(value: W, v2: V, energy: f64, lo: f64, hi: f64, points: usize, seams: &[f64]) -> f64
where
    V: Fn(f64) -> f64,
    W: Fn(f64) -> Complex64,
{
    let h = 1e-3;
    let mut worst = 0.0f64;
    for k in 0..points {
        let x = lo + (hi - lo) * (k as f64 + 0.5) / points as f64;
        if seams.iter().any(|s| (x.abs() - s).abs() < 3.0 * h + 0.02) {
            continue;
        }
        let mut dd = Complex64::new(0.0, 0.0);
        for (o, wt) in [(-2.0, -1.0), (-1.0, 16.0), (0.0, -30.0), (1.0, 16.0), (2.0, -1.0)] {
            dd += wt * value(x + o * h);
        }
        dd /= 12.0 * h * h;
        let v = value(x);
        let residual = -0.5 * dd + v2(x) * v - energy * v;
        let scale = (0.5 * dd).norm() + (energy * v).norm() + 1.0;
        worst = worst.max(residual.norm() / scale);
    }
    worst
}
