use invosc::susy::ComplexTransform;
use invosc::Complex64;

fn numerov(q: &[f64], h: f64, y0: f64, y1: f64) -> Vec<f64> {
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

fn main() {
    let t = ComplexTransform::new(Complex64::new(1e-5, 5.0)).unwrap();
    let h = 0.005;
    let half = 40.0;
    let n = (2.0 * half / h) as usize + 1;
    let e = -3.0;
    let xs: Vec<f64> = (0..n).map(|k| -half + h * k as f64).collect();
    let q: Vec<f64> = xs.iter().map(|&x| 2.0 * (t.v2(x).unwrap() - e)).collect();
    let origin = n / 2;
    println!("x[origin] = {}, q[origin] = {}", xs[origin], q[origin]);
    let right = numerov(&q[origin..], h, 1.0, 1.0 + 0.5*h*h*q[origin]);
    let mut peak = (0usize, 0.0f64);
    for (i, v) in right.iter().enumerate() {
        if v.abs() > peak.1 { peak = (i, v.abs()); }
    }
    println!("right sweep: max |y| = {:9.2e} at x = {}", peak.1, xs[origin + peak.0]);
    for (i, v) in right.iter().enumerate().step_by(800) {
        println!("x = {:6.2}: y = {:12.4e}  q = {:10.3}", xs[origin + i], v, q[origin + i]);
    }
}
