//! Factorization operators a_omega^± = (∓ d/dx + omega x)/sqrt(2) and the
//! four Hermite wavefunction ladders: the harmonic bound states, the
//! non-normalizable harmonic ladder, and both polynomial ladders of the
//! inverted oscillator at imaginary eigenvalues.

use num_complex::Complex64;

use crate::diagnostics::DiagnosticReport;
use crate::error::{Error, Result};
use crate::oscillator::OscillatorKind;
use crate::specfun::hermite;
use crate::wave::{WaveEval, WaveFunction};

/// Which of the four ladders a state belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderFamily {
    /// psi_n: harmonic bound states, E_n = n + 1/2.
    BoundHarmonic,
    /// phi_n: e^{+x^2/2} H_n(ix) ladder, e_n = -n - 1/2.
    NonphysHarmonic,
    /// phi_n^-: e^{-ix^2/2} H_n(i^{1/2} x) ladder, eps_n^- = i(n + 1/2).
    InvertedMinus,
    /// phi_n^+: e^{+ix^2/2} H_n(i^{3/2} x) ladder, eps_n^+ = -i(n + 1/2).
    InvertedPlus,
}

impl LadderFamily {
    pub fn kind(self) -> OscillatorKind {
        match self {
            LadderFamily::BoundHarmonic | LadderFamily::NonphysHarmonic => OscillatorKind::Harmonic,
            LadderFamily::InvertedMinus | LadderFamily::InvertedPlus => OscillatorKind::Inverted,
        }
    }
}

/// One rung of a ladder with its exact eigenvalue tag.
#[derive(Clone, Copy, Debug)]
pub struct LadderState {
    pub family: LadderFamily,
    pub n: u32,
}

impl LadderState {
    pub fn new(family: LadderFamily, n: u32) -> Self {
        LadderState { family, n }
    }

    /// The exact (possibly imaginary) SSE eigenvalue of this rung.
    pub fn eigenvalue(&self) -> Complex64 {
        let half = self.n as f64 + 0.5;
        match self.family {
            LadderFamily::BoundHarmonic => Complex64::new(half, 0.0),
            LadderFamily::NonphysHarmonic => Complex64::new(-half, 0.0),
            LadderFamily::InvertedMinus => Complex64::new(0.0, half),
            LadderFamily::InvertedPlus => Complex64::new(0.0, -half),
        }
    }

    /// 1/(2^{n/2} pi^{1/4} sqrt(n!)) together with the family phase factor.
    fn prefactor(&self) -> Complex64 {
        let n = self.n;
        let mut norm = std::f64::consts::PI.powf(-0.25);
        for k in 1..=n {
            norm /= (2.0 * k as f64).sqrt();
        }
        let quarter_turns = std::f64::consts::FRAC_PI_4;
        let phase = match self.family {
            LadderFamily::BoundHarmonic => Complex64::new(1.0, 0.0),
            // i^{-n}
            LadderFamily::NonphysHarmonic => (-Complex64::i() * 2.0 * quarter_turns * n as f64).exp(),
            // i^{n/2}
            LadderFamily::InvertedMinus => (Complex64::i() * quarter_turns * n as f64).exp(),
            // i^{-n/2}
            LadderFamily::InvertedPlus => (-Complex64::i() * quarter_turns * n as f64).exp(),
        };
        phase * norm
    }

    /// (gaussian exponent slope g'(x)/x, Hermite argument scale) per family:
    /// the state is prefactor * e^{s x^2/2} H_n(c x) with s = g'' constant.
    fn shape(&self) -> (Complex64, Complex64) {
        let i = Complex64::i();
        match self.family {
            LadderFamily::BoundHarmonic => (Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)),
            LadderFamily::NonphysHarmonic => (Complex64::new(1.0, 0.0), i),
            // i^{1/2} = e^{i pi/4}, i^{3/2} = e^{3 i pi/4}
            LadderFamily::InvertedMinus => (-i, (i * std::f64::consts::FRAC_PI_4).exp()),
            LadderFamily::InvertedPlus => (i, (i * 3.0 * std::f64::consts::FRAC_PI_4).exp()),
        }
    }
}

impl WaveFunction for LadderState {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        let (s, c) = self.shape();
        let pref = self.prefactor();
        let gauss = (s * x * x / 2.0).exp();
        let h = hermite(self.n, c * x);
        let value = pref * gauss * h;
        let dh = if self.n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            2.0 * self.n as f64 * c * hermite(self.n - 1, c * x)
        };
        let deriv = pref * gauss * (s * x * h + dh);
        WaveEval::new(value, deriv, x)
    }

    fn energy(&self) -> Option<Complex64> {
        Some(self.eigenvalue())
    }

    fn kind(&self) -> Option<OscillatorKind> {
        Some(self.family.kind())
    }
}

/// Raising (a^+) or lowering (a^-).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderSign {
    Raise,
    Lower,
}

/// a_omega^± applied to a wavefunction; itself a wavefunction.
///
/// The derivative of the result needs psi''. With an SSE energy tag it is
/// replaced analytically by (omega^2 x^2 - 2E) psi; otherwise a five-point
/// stencil on the inner derivative stands in.
pub struct LadderApplied<W: WaveFunction> {
    inner: W,
    kind: OscillatorKind,
    sign: LadderSign,
}

pub fn ladder_apply<W: WaveFunction>(kind: OscillatorKind, sign: LadderSign, psi: W) -> LadderApplied<W> {
    LadderApplied { inner: psi, kind, sign }
}

impl<W: WaveFunction> LadderApplied<W> {
    fn second_derivative(&self, x: f64, value: Complex64) -> Result<Complex64> {
        if let Some(e) = self.inner.energy() {
            let q = self.kind.omega_sq() * x * x - 2.0 * e;
            return Ok(q * value);
        }
        let h = 1e-4;
        let mut acc = Complex64::new(0.0, 0.0);
        for (offset, weight) in [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)] {
            acc += weight * self.inner.eval(x + offset * h)?.deriv;
        }
        Ok(acc / (12.0 * h))
    }
}

impl<W: WaveFunction> WaveFunction for LadderApplied<W> {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        let w = self.inner.eval(x)?;
        let omega = self.kind.omega();
        let sq2 = std::f64::consts::SQRT_2;
        let sgn = match self.sign {
            LadderSign::Raise => -1.0,
            LadderSign::Lower => 1.0,
        };
        let dd = self.second_derivative(x, w.value)?;
        let value = (sgn * w.deriv + omega * x * w.value) / sq2;
        let deriv = (sgn * dd + omega * (w.value + x * w.deriv)) / sq2;
        WaveEval::new(value, deriv, x)
    }

    fn energy(&self) -> Option<Complex64> {
        let omega = self.kind.omega();
        self.inner.energy().map(|e| match self.sign {
            LadderSign::Raise => e + omega,
            LadderSign::Lower => e - omega,
        })
    }

    fn kind(&self) -> Option<OscillatorKind> {
        Some(self.kind)
    }
}

/// Polynomial-times-Gaussian test functions p(x) e^{-x^2/4}.
///
/// The family is closed under d/dx, multiplication by x, and hence under the
/// ladder operators and H; operator identities can be checked on it without
/// any numerical differentiation.
#[derive(Clone, Debug)]
pub struct GaussPoly {
    /// coefficients of p, lowest degree first
    pub coeffs: Vec<Complex64>,
}

impl GaussPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        GaussPoly { coeffs }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let mut p = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            p = p * x + c;
        }
        p * (-x * x / 4.0).exp()
    }

    pub fn mul_x(&self) -> GaussPoly {
        let mut c = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (k, &v) in self.coeffs.iter().enumerate() {
            c[k + 1] = v;
        }
        GaussPoly::new(c)
    }

    /// d/dx maps p -> p' - x p / 2 within the family.
    pub fn derivative(&self) -> GaussPoly {
        let n = self.coeffs.len();
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, &v) in self.coeffs.iter().enumerate() {
            if k > 0 {
                c[k - 1] += v * k as f64;
            }
            c[k + 1] -= v / 2.0;
        }
        GaussPoly::new(c)
    }

    pub fn scale(&self, s: Complex64) -> GaussPoly {
        GaussPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, o: &GaussPoly) -> GaussPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for (k, &v) in self.coeffs.iter().enumerate() {
            c[k] += v;
        }
        for (k, &v) in o.coeffs.iter().enumerate() {
            c[k] += v;
        }
        GaussPoly::new(c)
    }

    pub fn sub(&self, o: &GaussPoly) -> GaussPoly {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    /// a_omega^± within the family.
    pub fn ladder(&self, kind: OscillatorKind, sign: LadderSign) -> GaussPoly {
        let omega = kind.omega();
        let sq2 = std::f64::consts::SQRT_2;
        let sgn = match sign {
            LadderSign::Raise => -1.0,
            LadderSign::Lower => 1.0,
        };
        self.derivative()
            .scale(Complex64::new(sgn / sq2, 0.0))
            .add(&self.mul_x().scale(omega / sq2))
    }

    /// H = -d^2/dx^2 / 2 + omega^2 x^2 / 2 within the family.
    pub fn hamiltonian(&self, kind: OscillatorKind) -> GaussPoly {
        let kin = self.derivative().derivative().scale(Complex64::new(-0.5, 0.0));
        let pot = self
            .mul_x()
            .mul_x()
            .scale(Complex64::new(0.5 * kind.omega_sq(), 0.0));
        kin.add(&pot)
    }

    /// Derivative tower at x, for the jet-level operator pipelines.
    pub fn jet(&self, x: f64, len: usize) -> crate::jet::Jet {
        let mut d = Vec::with_capacity(len);
        let mut cur = self.clone();
        for _ in 0..len {
            d.push(cur.eval(x));
            cur = cur.derivative();
        }
        crate::jet::Jet::from_derivs(d)
    }

    pub fn sup_norm(&self, lo: f64, hi: f64, samples: usize) -> f64 {
        let mut m = 0.0f64;
        for k in 0..samples {
            let x = lo + (hi - lo) * k as f64 / (samples - 1) as f64;
            m = m.max(self.eval(x).norm());
        }
        m
    }
}

/// Numerical verification of the omega-deformed Heisenberg-Weyl algebra on
/// random Gaussian-damped polynomials: [H, a^±] = ±omega a^±,
/// [a^-, a^+] = omega, and both orderings of Eq-(2wf)-style factorization.
pub fn algebra_residuals(kind: OscillatorKind, trials: usize) -> Result<DiagnosticReport> {
    use rand::prelude::*;
    if trials < 1 {
        return Err(Error::InvalidSpec("trials must be >= 1".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1adde2);
    let mut r_comm_h_raise = 0.0f64;
    let mut r_comm_h_lower = 0.0f64;
    let mut r_comm_pm = 0.0f64;
    let mut r_fact = 0.0f64;
    let omega = kind.omega();
    for _ in 0..trials {
        let deg = rng.random_range(0..=4usize);
        let coeffs: Vec<Complex64> = (0..=deg)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let f = GaussPoly::new(coeffs);
        let scale = f.sup_norm(-5.0, 5.0, 201).max(1e-6);
        for (sign, acc) in [(LadderSign::Raise, &mut r_comm_h_raise), (LadderSign::Lower, &mut r_comm_h_lower)] {
            let sgn = if sign == LadderSign::Raise { 1.0 } else { -1.0 };
            let af = f.ladder(kind, sign);
            let comm = af.hamiltonian(kind).sub(&f.hamiltonian(kind).ladder(kind, sign));
            let res = comm.sub(&af.scale(sgn * omega));
            *acc = acc.max(res.sup_norm(-5.0, 5.0, 201) / scale);
        }
        let a_minus_a_plus = f.ladder(kind, LadderSign::Raise).ladder(kind, LadderSign::Lower);
        let a_plus_a_minus = f.ladder(kind, LadderSign::Lower).ladder(kind, LadderSign::Raise);
        let comm = a_minus_a_plus.sub(&a_plus_a_minus).sub(&f.scale(omega));
        r_comm_pm = r_comm_pm.max(comm.sup_norm(-5.0, 5.0, 201) / scale);
        // H = a^+ a^- + omega/2 = a^- a^+ - omega/2
        let h = f.hamiltonian(kind);
        let f1 = a_plus_a_minus.add(&f.scale(omega / 2.0)).sub(&h);
        let f2 = a_minus_a_plus.sub(&f.scale(omega / 2.0)).sub(&h);
        r_fact = r_fact
            .max(f1.sup_norm(-5.0, 5.0, 201) / scale)
            .max(f2.sup_norm(-5.0, 5.0, 201) / scale);
    }
    let mut report = DiagnosticReport::new(format!("ladder-algebra-{kind:?}"));
    report.push("[H,a^+] - omega a^+", r_comm_h_raise, 1e-8);
    report.push("[H,a^-] + omega a^-", r_comm_h_lower, 1e-8);
    report.push("[a^-,a^+] - omega", r_comm_pm, 1e-8);
    report.push("H - a^+a^- - omega/2 and H - a^-a^+ + omega/2", r_fact, 1e-8);
    Ok(report.finish())
}
