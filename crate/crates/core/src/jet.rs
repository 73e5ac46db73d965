//! Truncated derivative towers ("jets") at a point.
//!
//! A `Jet` stores the value and the first few derivatives of a function at a
//! fixed real coordinate. Products, quotients and shifts implement the
//! Leibniz and quotient rules, so coefficient functions like g = w'/w and
//! their high derivatives are obtained analytically; operator stacks (B+, the
//! ladder operators, H2) then never touch finite differences.
//!
//! Solutions of psi'' = q(x) psi extend a (value, slope) pair to any order via
//! the recurrence d[k+2] = sum_j C(k,j) q^(j) d[k-j] with polynomial q.

use num_complex::Complex64;

/// Derivative capacity used by the operator pipelines.
pub const JET_LEN: usize = 18;

fn binom(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// d[k] holds the k-th derivative value at the expansion point.
#[derive(Clone, Debug)]
pub struct Jet {
    d: Vec<Complex64>,
}

impl Jet {
    pub fn from_derivs(d: Vec<Complex64>) -> Self {
        assert!(!d.is_empty());
        Jet { d }
    }

    pub fn constant(c: Complex64, len: usize) -> Self {
        let mut d = vec![Complex64::new(0.0, 0.0); len];
        d[0] = c;
        Jet { d }
    }

    /// The coordinate function x itself.
    pub fn coordinate(x: f64, len: usize) -> Self {
        let mut d = vec![Complex64::new(0.0, 0.0); len];
        d[0] = Complex64::new(x, 0.0);
        if len > 1 {
            d[1] = Complex64::new(1.0, 0.0);
        }
        Jet { d }
    }

    /// Jet of a polynomial sum c_k x^k.
    pub fn polynomial(coeffs: &[Complex64], x: f64, len: usize) -> Self {
        let mut d = vec![Complex64::new(0.0, 0.0); len];
        for (k, slot) in d.iter_mut().enumerate() {
            // k-th derivative: sum_{m >= k} c_m m!/(m-k)! x^{m-k}
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, &cm) in coeffs.iter().enumerate().skip(k) {
                let mut fall = 1.0;
                for j in 0..k {
                    fall *= (m - j) as f64;
                }
                acc += cm * fall * x.powi((m - k) as i32);
            }
            *slot = acc;
        }
        Jet { d }
    }

    /// Extend a solution of psi'' = q psi from (value, slope); `q` must be the
    /// jet of the coefficient function at the same point.
    pub fn from_sse(value: Complex64, slope: Complex64, q: &Jet, len: usize) -> Self {
        let mut d = vec![Complex64::new(0.0, 0.0); len];
        d[0] = value;
        if len > 1 {
            d[1] = slope;
        }
        for k in 0..len.saturating_sub(2) {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=k.min(q.d.len() - 1) {
                acc += binom(k, j) * q.d[j] * d[k - j];
            }
            d[k + 2] = acc;
        }
        Jet { d }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn value(&self) -> Complex64 {
        self.d[0]
    }

    pub fn get(&self, k: usize) -> Complex64 {
        self.d[k]
    }

    /// d/dx: shifts the tower down, losing one order.
    pub fn derivative(&self) -> Jet {
        assert!(self.d.len() > 1, "jet order exhausted");
        Jet { d: self.d[1..].to_vec() }
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let n = self.d.len().min(o.d.len());
        Jet { d: (0..n).map(|k| self.d[k] + o.d[k]).collect() }
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        let n = self.d.len().min(o.d.len());
        Jet { d: (0..n).map(|k| self.d[k] - o.d[k]).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Jet {
        Jet { d: self.d.iter().map(|v| v * c).collect() }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let n = self.d.len().min(o.d.len());
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        for (k, slot) in d.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=k {
                acc += binom(k, j) * self.d[j] * o.d[k - j];
            }
            *slot = acc;
        }
        Jet { d }
    }

    /// Quotient rule solved order by order; the divisor value must be nonzero.
    pub fn div(&self, o: &Jet) -> Jet {
        let n = self.d.len().min(o.d.len());
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let mut acc = self.d[k];
            for j in 0..k {
                acc -= binom(k, j) * d[j] * o.d[k - j];
            }
            d[k] = acc / o.d[0];
        }
        Jet { d }
    }

    /// Complex conjugate; valid because the expansion coordinate is real.
    pub fn conj(&self) -> Jet {
        Jet { d: self.d.iter().map(|v| v.conj()).collect() }
    }
}
