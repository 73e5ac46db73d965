//! Closed-form solutions of the stationary Schrodinger equation
//! H psi = -psi''/2 + (omega^2 x^2/2) psi = E psi for omega in {1, 0, i},
//! their large-x behaviour, Dirac normalization, scattering combinations and
//! windowed inner products.
//!
//! Negative x is always handled through parity: the confluent hypergeometric
//! argument is omega x^2, so evaluating at |x| and extending by symmetry
//! avoids every branch question.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{self, QuadOptions};
use crate::specfun::{self, Hyp1f1, SeriesControl};
use crate::wave::{WaveEval, WaveFunction};

/// Which member of the omega family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OscillatorKind {
    /// omega = 1
    Harmonic,
    /// omega = 0
    Free,
    /// omega = i
    Inverted,
}

impl OscillatorKind {
    pub fn omega(self) -> Complex64 {
        match self {
            OscillatorKind::Harmonic => Complex64::new(1.0, 0.0),
            OscillatorKind::Free => Complex64::new(0.0, 0.0),
            OscillatorKind::Inverted => Complex64::new(0.0, 1.0),
        }
    }

    /// omega^2 is real for all three members.
    pub fn omega_sq(self) -> f64 {
        match self {
            OscillatorKind::Harmonic => 1.0,
            OscillatorKind::Free => 0.0,
            OscillatorKind::Inverted => -1.0,
        }
    }

    pub fn potential(self, x: f64) -> f64 {
        0.5 * self.omega_sq() * x * x
    }
}

/// Linear-combination choice on top of a kind and energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Combo {
    Even,
    Odd,
    General { c: f64, d: f64 },
    Plus,
    Minus,
    Left,
    Right,
}

/// Full recipe for one wavefunction.
#[derive(Clone, Copy, Debug)]
pub struct SolutionSpec {
    pub kind: OscillatorKind,
    pub energy: f64,
    pub combo: Combo,
}

impl SolutionSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.energy.is_finite() {
            return Err(Error::InvalidSpec("energy must be finite".into()));
        }
        match self.combo {
            Combo::General { c, d } if !(c.is_finite() && d.is_finite()) => {
                Err(Error::InvalidSpec("combination constants must be finite".into()))
            }
            Combo::Plus | Combo::Minus | Combo::Left | Combo::Right
                if self.kind != OscillatorKind::Inverted =>
            {
                Err(Error::InvalidSpec(
                    "Plus/Minus/Left/Right combinations exist only for the inverted oscillator".into(),
                ))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// One definite-parity solution at (possibly complex) energy.
#[derive(Clone, Debug)]
pub struct ParityWave {
    kind: OscillatorKind,
    energy: Complex64,
    parity: Parity,
    f: Hyp1f1,
    fd: Hyp1f1,
}

impl ParityWave {
    pub fn new(kind: OscillatorKind, energy: Complex64, parity: Parity) -> Result<Self> {
        Self::with_control(kind, energy, parity, SeriesControl::default())
    }

    pub fn with_control(
        kind: OscillatorKind,
        energy: Complex64,
        parity: Parity,
        ctl: SeriesControl,
    ) -> Result<Self> {
        if kind == OscillatorKind::Free {
            return Err(Error::UnsupportedKind);
        }
        let omega = kind.omega();
        let (a, b) = match parity {
            Parity::Even => (0.25 - energy / (2.0 * omega), Complex64::new(0.5, 0.0)),
            Parity::Odd => (0.75 - energy / (2.0 * omega), Complex64::new(1.5, 0.0)),
        };
        Ok(ParityWave {
            kind,
            energy,
            parity,
            f: Hyp1f1::new(a, b, ctl)?,
            fd: Hyp1f1::new(a + 1.0, b + 1.0, ctl)?,
        })
    }

    fn ab(&self) -> (Complex64, Complex64) {
        match self.parity {
            Parity::Even => (0.25 - self.energy / (2.0 * self.kind.omega()), Complex64::new(0.5, 0.0)),
            Parity::Odd => (0.75 - self.energy / (2.0 * self.kind.omega()), Complex64::new(1.5, 0.0)),
        }
    }
}

impl WaveFunction for ParityWave {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        let ax = x.abs();
        let om = self.kind.omega();
        let z = om * ax * ax;
        let gauss = (-om * ax * ax / 2.0).exp();
        let (a, b) = self.ab();
        let f = self.f.eval(z)?;
        let fd = a / b * self.fd.eval(z)?;
        let (v, d) = match self.parity {
            Parity::Even => {
                let v = gauss * f;
                let d = gauss * (2.0 * om * ax * fd - om * ax * f);
                (v, d)
            }
            Parity::Odd => {
                let v = ax * gauss * f;
                let d = gauss * ((1.0 - om * ax * ax) * f + 2.0 * om * ax * ax * fd);
                (v, d)
            }
        };
        let (v, d) = match (self.parity, x < 0.0) {
            (Parity::Even, true) => (v, -d),
            (Parity::Odd, true) => (-v, d),
            _ => (v, d),
        };
        WaveEval::new(v, d, x)
    }

    fn value(&self, x: f64) -> Result<Complex64> {
        let ax = x.abs();
        let om = self.kind.omega();
        let z = om * ax * ax;
        let gauss = (-om * ax * ax / 2.0).exp();
        let f = self.f.eval(z)?;
        let v = match self.parity {
            Parity::Even => gauss * f,
            Parity::Odd => {
                let v = ax * gauss * f;
                if x < 0.0 { -v } else { v }
            }
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(x))
        }
    }

    fn energy(&self) -> Option<Complex64> {
        Some(self.energy)
    }

    fn kind(&self) -> Option<OscillatorKind> {
        Some(self.kind)
    }
}

/// ce * psi_e + co * psi_o at a common (possibly complex) energy.
#[derive(Clone, Debug)]
pub struct LinearCombo {
    pub even: ParityWave,
    pub odd: ParityWave,
    pub ce: Complex64,
    pub co: Complex64,
    kind: OscillatorKind,
    energy: Complex64,
}

impl LinearCombo {
    pub fn new(kind: OscillatorKind, energy: Complex64, ce: Complex64, co: Complex64) -> Result<Self> {
        Ok(LinearCombo {
            even: ParityWave::new(kind, energy, Parity::Even)?,
            odd: ParityWave::new(kind, energy, Parity::Odd)?,
            ce,
            co,
            kind,
            energy,
        })
    }
}

impl WaveFunction for LinearCombo {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        let e = self.even.eval(x)?;
        let o = self.odd.eval(x)?;
        WaveEval::new(
            self.ce * e.value + self.co * o.value,
            self.ce * e.deriv + self.co * o.deriv,
            x,
        )
    }

    fn value(&self, x: f64) -> Result<Complex64> {
        Ok(self.ce * self.even.value(x)? + self.co * self.odd.value(x)?)
    }

    fn energy(&self) -> Option<Complex64> {
        Some(self.energy)
    }

    fn kind(&self) -> Option<OscillatorKind> {
        Some(self.kind)
    }
}

/// Free-particle solutions: cos(kx) and sin(kx)/k with k = sqrt(2E).
///
/// Written this way the pair stays the identity-Wronskian basis (1,0)/(0,1)
/// at the origin for every E, including E <= 0 where k is imaginary.
#[derive(Clone, Debug)]
pub struct FreeWave {
    energy: Complex64,
    ce: Complex64,
    co: Complex64,
}

impl FreeWave {
    pub fn new(energy: Complex64, ce: Complex64, co: Complex64) -> Self {
        FreeWave { energy, ce, co }
    }

    fn k(&self) -> Complex64 {
        (2.0 * self.energy).sqrt()
    }
}

impl WaveFunction for FreeWave {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        let k = self.k();
        let kx = k * x;
        let (even_v, even_d) = ((kx).cos(), -k * (kx).sin());
        let (odd_v, odd_d) = if k.norm() < 1e-8 {
            // sin(kx)/k by series around k = 0
            let k2x2 = kx * kx;
            (x * (1.0 - k2x2 / 6.0 + k2x2 * k2x2 / 120.0), (kx).cos())
        } else {
            ((kx).sin() / k, (kx).cos())
        };
        WaveEval::new(
            self.ce * even_v + self.co * odd_v,
            self.ce * even_d + self.co * odd_d,
            x,
        )
    }

    fn energy(&self) -> Option<Complex64> {
        Some(self.energy)
    }

    fn kind(&self) -> Option<OscillatorKind> {
        Some(OscillatorKind::Free)
    }
}

/// Dirac-normalization factor N_E of the scattering combinations.
#[derive(Clone, Copy, Debug)]
pub struct NormalizationNe {
    pub energy: f64,
    pub value: Complex64,
}

/// N_E = e^{i(1/2 - iE) pi/4} 2^{iE/2 - 1} Gamma(1/2 - iE) / [sqrt(pi) Gamma(3/4 - iE/2)].
pub fn normalization_ne(energy: f64) -> Result<NormalizationNe> {
    let pi = std::f64::consts::PI;
    let i = Complex64::i();
    let phase = (i * (0.5 - i * energy) * pi / 4.0).exp();
    let two_pow = (i * energy / 2.0 * 2f64.ln()).exp() * 0.5;
    let lg = specfun::ln_gamma(Complex64::new(0.5, -energy))?
        - specfun::ln_gamma(Complex64::new(0.75, -energy / 2.0))?;
    let value = phase * two_pow * lg.exp() / pi.sqrt();
    if !value.re.is_finite() || !value.im.is_finite() || value.norm() == 0.0 {
        return Err(Error::NonFinite(energy));
    }
    Ok(NormalizationNe { energy, value })
}

/// Odd-part coefficient of the decaying scattering combinations:
/// kappa(eps) = 2 e^{-i pi/4} Gamma(3/4 - i eps/2) / Gamma(1/4 - i eps/2).
pub fn scattering_coefficient(eps: Complex64) -> Result<Complex64> {
    let i = Complex64::i();
    let lg = specfun::ln_gamma(0.75 - i * eps / 2.0)? - specfun::ln_gamma(0.25 - i * eps / 2.0)?;
    Ok(2.0 * (-i * std::f64::consts::PI / 4.0).exp() * lg.exp())
}

/// Build the evaluator for any solution spec, including the free particle.
pub fn solution_wave(spec: &SolutionSpec) -> Result<Box<dyn WaveFunction>> {
    spec.validate()?;
    let e = Complex64::new(spec.energy, 0.0);
    if spec.kind == OscillatorKind::Free {
        let (ce, co) = match spec.combo {
            Combo::Even => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            Combo::Odd => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
            Combo::General { c, d } => (Complex64::new(c, 0.0), Complex64::new(d, 0.0)),
            _ => unreachable!("validated above"),
        };
        return Ok(Box::new(FreeWave::new(e, ce, co)));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let combo = match spec.combo {
        Combo::Even => LinearCombo::new(spec.kind, e, one, zero)?,
        Combo::Odd => LinearCombo::new(spec.kind, e, zero, one)?,
        Combo::General { c, d } => {
            LinearCombo::new(spec.kind, e, Complex64::new(c, 0.0), Complex64::new(d, 0.0))?
        }
        Combo::Plus => {
            let n = normalization_ne(spec.energy)?.value;
            let kappa = scattering_coefficient(e)?;
            LinearCombo::new(spec.kind, e, n, -n * kappa)?
        }
        Combo::Minus => {
            let n = normalization_ne(spec.energy)?.value;
            let kappa = scattering_coefficient(e)?;
            LinearCombo::new(spec.kind, e, n, n * kappa)?
        }
        Combo::Left => {
            let kappa = scattering_coefficient(e)?;
            LinearCombo::new(spec.kind, e, one, Complex64::new(-kappa.re, 0.0))?
        }
        Combo::Right => {
            let kappa = scattering_coefficient(e)?;
            LinearCombo::new(spec.kind, e, one, Complex64::new(kappa.re, 0.0))?
        }
    };
    Ok(Box::new(combo))
}

/// General 1F1-form solution e^{-omega x^2/2}[C 1F1 + D x 1F1]; the free
/// particle is excluded here (its limit is singular in these parameters).
pub fn general_solution(spec: &SolutionSpec, x: f64) -> Result<WaveEval> {
    if spec.kind == OscillatorKind::Free {
        return Err(Error::UnsupportedKind);
    }
    match spec.combo {
        Combo::General { .. } => solution_wave(spec)?.eval(x),
        _ => Err(Error::InvalidSpec("general_solution expects the General combination".into())),
    }
}

/// Even inverted-oscillator solution at (possibly complex) energy.
pub fn psi_even(energy: Complex64, x: f64) -> Result<WaveEval> {
    ParityWave::new(OscillatorKind::Inverted, energy, Parity::Even)?.eval(x)
}

/// Odd inverted-oscillator solution at (possibly complex) energy.
pub fn psi_odd(energy: Complex64, x: f64) -> Result<WaveEval> {
    ParityWave::new(OscillatorKind::Inverted, energy, Parity::Odd)?.eval(x)
}

/// Scattering combinations Plus/Minus/Left/Right of the inverted oscillator.
pub fn psi_combo(spec: &SolutionSpec, x: f64) -> Result<WaveEval> {
    match spec.combo {
        Combo::Plus | Combo::Minus | Combo::Left | Combo::Right => solution_wave(spec)?.eval(x),
        _ => Err(Error::InvalidSpec("psi_combo expects Plus/Minus/Left/Right".into())),
    }
}

/// Below this |x| the closed asymptotic forms are not meaningful.
pub const X_MIN_ASYMP: f64 = 6.0;

fn asymptotic_parts(energy: f64, x: f64) -> Result<(Complex64, Complex64, Complex64)> {
    if x < X_MIN_ASYMP {
        return Err(Error::Domain(format!("asymptotic form needs x >= {X_MIN_ASYMP}, got {x}")));
    }
    let pi = std::f64::consts::PI;
    let i = Complex64::i();
    let pref = pi.sqrt() * (-pi * energy / 4.0).exp() / x.sqrt();
    // phases e^{i(. - x^2/2)} x^{-iE} and conjugate
    let osc = (i * (-x * x / 2.0 - energy * x.ln())).exp();
    Ok((Complex64::new(pref, 0.0), osc, osc.conj()))
}

/// Leading large-x form of psi_e for real E.
pub fn asymptotic_even(energy: f64, x: f64) -> Result<Complex64> {
    let (pref, osc, osc_c) = asymptotic_parts(energy, x)?;
    let i = Complex64::i();
    let g_m = specfun::ln_gamma(Complex64::new(0.25, -energy / 2.0))?;
    let g_p = specfun::ln_gamma(Complex64::new(0.25, energy / 2.0))?;
    let t1 = (i * std::f64::consts::PI / 8.0).exp() * osc * (-g_m).exp();
    let t2 = (-i * std::f64::consts::PI / 8.0).exp() * osc_c * (-g_p).exp();
    Ok(pref * (t1 + t2))
}

/// Leading large-x form of psi_o for real E.
pub fn asymptotic_odd(energy: f64, x: f64) -> Result<Complex64> {
    let (pref, osc, osc_c) = asymptotic_parts(energy, x)?;
    let i = Complex64::i();
    let g_m = specfun::ln_gamma(Complex64::new(0.75, -energy / 2.0))?;
    let g_p = specfun::ln_gamma(Complex64::new(0.75, energy / 2.0))?;
    let t1 = (i * 3.0 * std::f64::consts::PI / 8.0).exp() * osc * (-g_m).exp();
    let t2 = (-i * 3.0 * std::f64::consts::PI / 8.0).exp() * osc_c * (-g_p).exp();
    Ok(pref / 2.0 * (t1 + t2))
}

/// Windowed inner product int_{-L}^{L} conj(f) g dx with oscillation-aware
/// panel sizing (the solutions carry phase ~ x^2/2).
pub fn window_inner_product<F, G>(f: F, g: G, half_width: f64, quad_tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
    G: Fn(f64) -> Result<Complex64>,
{
    if !(half_width > 0.0) {
        return Err(Error::Domain("window half-width must be positive".into()));
    }
    let opt = QuadOptions { rel_tol: quad_tol, abs_floor: 1e-12, ..Default::default() };
    quad::integrate_with_widths(
        |x| Ok(f(x)?.conj() * g(x)?),
        -half_width,
        half_width,
        |x| (std::f64::consts::PI / (4.0 * x.abs().max(1.0))).min(0.5),
        &opt,
    )
}

/// Half-line support selector of the bilateral Mellin basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfLine {
    Plus,
    Minus,
}

/// Bilateral Mellin basis element (2 pi)^{-1/2} x_sigma^{i lambda - 1/2},
/// supported on one half-line and zero on the other.
pub fn mellin_basis(sigma: HalfLine, lambda: f64, x: f64) -> Result<Complex64> {
    if x == 0.0 {
        return Err(Error::Domain("Mellin basis is undefined at x = 0".into()));
    }
    let arg = match sigma {
        HalfLine::Plus if x > 0.0 => x,
        HalfLine::Minus if x < 0.0 => -x,
        _ => return Ok(Complex64::new(0.0, 0.0)),
    };
    let expo = Complex64::new(-0.5, lambda) * arg.ln();
    Ok(expo.exp() / (2.0 * std::f64::consts::PI).sqrt())
}

/// Truncated Fourier-type integral representation of psi_E^sigma:
/// 2^{iE/2} (2 pi)^{-1} int dp p_sigma^{-iE-1/2} e^{i(p^2/4 + xp + x^2/2)}
/// over |p| <= p_cutoff, for direct comparison with the Plus/Minus combos.
pub fn integral_representation_check(
    sigma: HalfLine,
    energy: f64,
    x: f64,
    p_cutoff: f64,
) -> Result<Complex64> {
    if !(p_cutoff > 0.0) {
        return Err(Error::Domain("p_cutoff must be positive".into()));
    }
    // sigma = Minus is the p -> -p reflection, i.e. x -> -x with the Plus kernel
    let xs = match sigma {
        HalfLine::Plus => x,
        HalfLine::Minus => -x,
    };
    let i = Complex64::i();
    let phase = |p: f64| (i * (p * p / 4.0 + xs * p + x * x / 2.0)).exp();
    let kernel = |p: f64| -> Result<Complex64> {
        let power = (Complex64::new(-0.5, -energy)) * p.ln();
        Ok(power.exp() * phase(p))
    };
    let opt = QuadOptions { rel_tol: 1e-7, abs_floor: 1e-10, ..Default::default() };
    // [0, 1]: p = t^2 regularizes the endpoint power
    let inner = quad::integrate(
        |t| {
            let power = Complex64::new(0.0, -2.0 * energy) * t.ln();
            Ok(2.0 * power.exp() * phase(t * t))
        },
        0.0,
        p_cutoff.min(1.0).sqrt(),
        &opt,
    )?;
    let outer = if p_cutoff > 1.0 {
        quad::integrate_with_widths(
            kernel,
            1.0,
            p_cutoff,
            |p| std::f64::consts::PI / (4.0 * (p / 2.0 + xs.abs()).max(1.0)),
            &opt,
        )?
    } else {
        Complex64::new(0.0, 0.0)
    };
    let pref = (i * energy / 2.0 * 2f64.ln()).exp() / (2.0 * std::f64::consts::PI);
    Ok(pref * (inner + outer))
}
