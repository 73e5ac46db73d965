//! First- and second-order Darboux transformations of the inverted
//! oscillator.
//!
//! First order and the real/confluent second-order cases are implemented to
//! exhibit their unavoidable singularities; the complex case (conjugate pair
//! of factorization energies, c < 0) produces the new non-singular real
//! partner potentials.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::oscillator::{self, LinearCombo, OscillatorKind};
use crate::quad::{self, QuadOptions};
use crate::specfun;
use crate::wave::{WaveEval, WaveFunction};

/// Fig.-4 classification of a candidate factorization energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsClass {
    /// Im eps > 0: transform through u_P.
    QuadrantUpper,
    /// Im eps < 0: transform through u_N.
    QuadrantLower,
    /// Real axis: the analysis needs Im eps != 0.
    ExcludedRealAxis,
    /// eps = ±i(m + 1/2): the solutions degenerate to the polynomial ladders.
    ExcludedLatticePoint,
}

#[derive(Clone, Copy, Debug)]
pub struct FactorizationEnergy {
    pub eps: Complex64,
    pub classification: EpsClass,
}

impl FactorizationEnergy {
    pub fn usable(&self) -> bool {
        matches!(self.classification, EpsClass::QuadrantUpper | EpsClass::QuadrantLower)
    }

    pub fn reason(&self) -> &'static str {
        match self.classification {
            EpsClass::QuadrantUpper => "quadrants I/II (seed u_P)",
            EpsClass::QuadrantLower => "quadrants III/IV (seed u_N)",
            EpsClass::ExcludedRealAxis => "real factorization energies give singular transforms",
            EpsClass::ExcludedLatticePoint => {
                "eps = ±i(m + 1/2) degenerates to the polynomial solutions"
            }
        }
    }
}

const EXCLUSION_TOL: f64 = 1e-9;

/// Classify eps against the excluded real axis and lattice points ±i(m+1/2).
pub fn validate_epsilon(eps: Complex64) -> FactorizationEnergy {
    let classification = if eps.im.abs() < EXCLUSION_TOL {
        EpsClass::ExcludedRealAxis
    } else {
        let m = (eps.im.abs() - 0.5).round().max(0.0);
        let lattice = Complex64::new(0.0, (m + 0.5).copysign(eps.im));
        if (eps - lattice).norm() < EXCLUSION_TOL {
            EpsClass::ExcludedLatticePoint
        } else if eps.im > 0.0 {
            EpsClass::QuadrantUpper
        } else {
            EpsClass::QuadrantLower
        }
    };
    FactorizationEnergy { eps, classification }
}

/// What vanished at a flagged point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroKind {
    SeedZero,
    WronskianZero,
    WZero,
}

/// Output of a zero scan over an interval.
#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub zeros: Vec<(f64, ZeroKind)>,
    pub interval: (f64, f64),
    pub is_singular: bool,
}

/// Sign-change scan refined by bisection (to 1e-10 in x); sampled values with
/// |f| < 1e-8 at interior local minima are flagged as well.
pub fn singularity_scan<F>(
    f: F,
    interval: (f64, f64),
    samples: usize,
    kind: ZeroKind,
) -> Result<SingularityReport>
where
    F: Fn(f64) -> Result<f64>,
{
    if samples < 2 {
        return Err(Error::InvalidSpec("scan needs at least 2 samples".into()));
    }
    let (lo, hi) = interval;
    let step = (hi - lo) / (samples - 1) as f64;
    let mut vals = Vec::with_capacity(samples);
    for k in 0..samples {
        vals.push(f(lo + step * k as f64)?);
    }
    let mut zeros = Vec::new();
    for k in 0..samples - 1 {
        let (a, b) = (lo + step * k as f64, lo + step * (k + 1) as f64);
        let (fa, fb) = (vals[k], vals[k + 1]);
        if fa == 0.0 {
            zeros.push((a, kind));
            continue;
        }
        if fa * fb < 0.0 {
            let (mut a, mut b, mut fa) = (a, b, fa);
            while b - a > 1e-10 {
                let m = 0.5 * (a + b);
                let fm = f(m)?;
                if fa * fm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            zeros.push((0.5 * (a + b), kind));
        }
    }
    // near-zero interior minima that never change sign
    for k in 1..samples - 1 {
        let v = vals[k].abs();
        if v < 1e-8 && v < vals[k - 1].abs() && v < vals[k + 1].abs() {
            let x = lo + step * k as f64;
            if !zeros.iter().any(|(z, _)| (z - x).abs() < 2.0 * step) {
                zeros.push((x, kind));
            }
        }
    }
    zeros.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(SingularityReport { is_singular: !zeros.is_empty(), zeros, interval })
}

/// Superpotential u'/u of a transformation function.
pub fn superpotential(u: &dyn WaveFunction, x: f64) -> Result<Complex64> {
    let w = u.eval(x)?;
    if w.value.norm() < 1e-12 * w.deriv.norm().max(1.0) {
        return Err(Error::SeedZero(x));
    }
    Ok(w.deriv / w.value)
}

/// First-order partner potential from any SSE-tagged seed:
/// V1 = V0 - (u'/u)' = -V0 + 2 eps + (u'/u)^2 after the Riccati reduction.
pub fn first_order_partner_from_seed(seed: &dyn WaveFunction, x: f64) -> Result<Complex64> {
    let kind = seed.kind().ok_or_else(|| Error::InvalidSpec("seed carries no oscillator kind".into()))?;
    let eps = seed.energy().ok_or_else(|| Error::InvalidSpec("seed carries no energy tag".into()))?;
    let alpha = superpotential(seed, x)?;
    Ok(-kind.potential(x) + 2.0 * eps + alpha * alpha)
}

/// First-order partner of the inverted oscillator with the real seed
/// C psi_e + D psi_o at real factorization energy.
pub fn first_order_partner(eps: f64, c: f64, d: f64, x: f64) -> Result<f64> {
    let seed = LinearCombo::new(
        OscillatorKind::Inverted,
        Complex64::new(eps, 0.0),
        Complex64::new(c, 0.0),
        Complex64::new(d, 0.0),
    )?;
    Ok(first_order_partner_from_seed(&seed, x)?.re)
}

/// First-order partner from the decaying complex combination u_P(eps) at real
/// eps. The result is a complex potential: Re V1 -> -x^2/2 at large |x| while
/// Im V1 -> -1, which is why the paper confines first-order transforms to
/// real seeds and rejects them as singular.
pub fn first_order_partner_complex_seed(eps: f64, x: f64) -> Result<Complex64> {
    let seed = seed_up_wave(Complex64::new(eps, 0.0))?;
    first_order_partner_from_seed(&seed, x)
}

fn inv_gamma(z: Complex64) -> Result<Complex64> {
    if specfun::near_nonpositive_integer(z) {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        Ok((-specfun::ln_gamma(z)?).exp())
    }
}

/// Leading coefficient of the decaying branch of u_P: matching the kept
/// x^{+i eps} terms of the psi_e/psi_o asymptotic forms.
fn up_tail_amplitude(eps: Complex64) -> Result<Complex64> {
    let i = Complex64::i();
    let pi = std::f64::consts::PI;
    let kappa = oscillator::scattering_coefficient(eps)?;
    let t_even = (-i * pi / 8.0).exp() * inv_gamma(0.25 + i * eps / 2.0)?;
    let t_odd = kappa * (-i * 3.0 * pi / 8.0).exp() * inv_gamma(0.75 + i * eps / 2.0)? / 2.0;
    Ok(pi.sqrt() * (-pi * eps / 4.0).exp() * (t_even - t_odd))
}

/// The decaying branch of u_P as its own complete expansion
/// A e^{i x^2/2} x^{rho} (1 + c_1 x^{-2} + ...), rho = -1/2 + i eps.
///
/// Substituting into the Schrodinger equation gives
/// c_k = c_{k-1} (rho - 2k + 2)(rho - 2k + 1) / (4 i k); the other branch
/// cancels to all orders (this is what singles the solution out), so no
/// subtraction of same-size combination terms appears.
fn up_tail_eval(amp: Complex64, eps: Complex64, x: f64) -> Result<WaveEval> {
    let i = Complex64::i();
    let rho = Complex64::new(-0.5, 0.0) + i * eps;
    let mut ck = Complex64::new(1.0, 0.0);
    let mut series = Complex64::new(1.0, 0.0);
    let mut series_d = Complex64::new(0.0, 0.0);
    let mut prev = f64::INFINITY;
    let x2 = x * x;
    for k in 1..=16 {
        let kf = k as f64;
        ck = ck * (rho - (2.0 * kf - 2.0)) * (rho - (2.0 * kf - 1.0)) / (4.0 * i * kf);
        let term = ck * x2.powi(-(k as i32));
        if term.norm() > prev {
            break;
        }
        prev = term.norm();
        series += term;
        series_d += term * (-2.0 * kf) / x;
        if prev < 1e-17 * series.norm() {
            break;
        }
    }
    let carrier = amp * (i * x2 / 2.0 + rho * x.ln()).exp();
    WaveEval::new(
        carrier * series,
        carrier * ((i * x + rho / x) * series + series_d),
        x,
    )
}

/// Decaying seed u_P = psi_e - kappa(eps) psi_o (square-integrable towards
/// +infinity), or its mirror u_N.
///
/// Past `switch_x` on the decay side the combination loses x^{2|Im eps|} of
/// its precision to cancellation, so evaluation switches to the direct tail
/// expansion there.
pub struct DecayingSeed {
    eps: Complex64,
    combo: LinearCombo,
    /// tail amplitude and kappa, computed at conj(eps) for the u_N mirror
    amp: Complex64,
    kappa_eff: Complex64,
    conj_mode: bool,
    switch_x: f64,
    series_radius: f64,
}

impl DecayingSeed {
    fn build(eps: Complex64, conj_mode: bool) -> Result<Self> {
        let eff = if conj_mode { eps.conj() } else { eps };
        let kappa_eff = oscillator::scattering_coefficient(eff)?;
        let kappa = if conj_mode { kappa_eff.conj() } else { kappa_eff };
        let combo = LinearCombo::new(
            OscillatorKind::Inverted,
            eps,
            Complex64::new(1.0, 0.0),
            -kappa,
        )?;
        let amp = up_tail_amplitude(eff)?;
        let rho_norm = (Complex64::new(-0.5, 0.0) + Complex64::i() * eff).norm();
        let switch_x = (0.8 * rho_norm + 2.0).max(8.0);
        Ok(DecayingSeed {
            eps,
            combo,
            amp,
            kappa_eff,
            conj_mode,
            switch_x,
            series_radius: crate::specfun::SeriesControl::default().switch_radius,
        })
    }

    pub fn eps(&self) -> Complex64 {
        self.eps
    }

    /// Where evaluation hands over from the combination to the tail
    /// expansion; finite-difference probes should not straddle this point.
    pub fn switch_x(&self) -> f64 {
        self.switch_x
    }

    /// Double-double assembly of psi_e - kappa psi_o inside the series
    /// region: the combination cancels ~x^{2 Im eps} of the operands, so the
    /// subtraction runs on the unrounded series sums. The argument i x^2 is
    /// carried as an exact double-double square and every coefficient chain
    /// multiplies through exact products, keeping the prefactors consistent
    /// with the argument (an ulp of slack there re-enters magnified by the
    /// cancellation). The common Gaussian phase multiplies the remainder at
    /// the end.
    fn combo_eval_dd(&self, x: f64) -> Result<WaveEval> {
        use crate::dd::{CDd, Dd};
        use crate::specfun::kummer_series_cdd;
        let ctl = crate::specfun::SeriesControl::default();
        let eff = if self.conj_mode { self.eps.conj() } else { self.eps };
        let kappa = self.kappa_eff;
        let ax = x.abs();
        let sgn = if x < 0.0 { -1.0 } else { 1.0 };
        let i = Complex64::i();
        // z = i x^2 exactly
        let z = CDd { re: Dd::from(0.0), im: Dd::from_prod(ax, ax) };
        let b_e = Complex64::new(0.5, 0.0);
        let b_o = Complex64::new(1.5, 0.0);
        let a_e = 0.25 + i * eff / 2.0;
        let a_o = 0.75 + i * eff / 2.0;
        let fe = kummer_series_cdd(a_e, b_e, z, &ctl, 1e-31)?;
        let fed = kummer_series_cdd(a_e + 1.0, b_e + 1.0, z, &ctl, 1e-31)?;
        let fo = kummer_series_cdd(a_o, b_o, z, &ctl, 1e-31)?;
        let fod = kummer_series_cdd(a_o + 1.0, b_o + 1.0, z, &ctl, 1e-31)?;
        let inner_v = fe.sub(fo.mul_c64(kappa).mul_f64(sgn * ax));
        // psi_e' / gauss = -i x F_e + 2 i x (a/b) F_e'; the i x^2 factors
        // reuse z itself
        let d_even = fe
            .mul_c64(-i)
            .mul_f64(ax)
            .add(fed.mul_c64(i * (a_e / b_e)).mul_f64(2.0 * ax));
        let d_odd = fo
            .sub(fo.mul(z))
            .add(fod.mul(z).mul_c64(2.0 * (a_o / b_o)));
        let inner_d = d_even.mul_f64(sgn).sub(d_odd.mul_c64(kappa));
        // gauss = e^{-i x^2/2} from the dd phase: e^{-i hi/2} (1 - i lo/2)
        let phase = z.im;
        let gauss = Complex64::new(0.0, -phase.hi / 2.0).exp()
            * (Complex64::new(1.0, -phase.lo / 2.0));
        let (v, d) = (gauss * inner_v.to_c64(), gauss * inner_d.to_c64());
        if self.conj_mode {
            WaveEval::new(v.conj(), d.conj(), x)
        } else {
            WaveEval::new(v, d, x)
        }
    }
}

impl WaveFunction for DecayingSeed {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        if x <= self.switch_x {
            if x * x <= self.series_radius {
                return self.combo_eval_dd(x);
            }
            return self.combo.eval(x);
        }
        let eff = if self.conj_mode { self.eps.conj() } else { self.eps };
        let w = up_tail_eval(self.amp, eff, x)?;
        if self.conj_mode {
            WaveEval::new(w.value.conj(), w.deriv.conj(), x)
        } else {
            Ok(w)
        }
    }

    fn energy(&self) -> Option<Complex64> {
        Some(self.eps)
    }

    fn kind(&self) -> Option<OscillatorKind> {
        Some(OscillatorKind::Inverted)
    }
}

pub fn seed_up_wave(eps: Complex64) -> Result<DecayingSeed> {
    DecayingSeed::build(eps, false)
}

/// Mirror seed u_N; by conjugation symmetry u_N(x, eps) = conj(u_P(x, conj eps)).
pub fn seed_un_wave(eps: Complex64) -> Result<DecayingSeed> {
    DecayingSeed::build(eps, true)
}

pub fn seed_up(eps: Complex64, x: f64) -> Result<WaveEval> {
    seed_up_wave(eps)?.eval(x)
}

pub fn seed_un(eps: Complex64, x: f64) -> Result<WaveEval> {
    seed_un_wave(eps)?.eval(x)
}

/// The three second-order cases plus the first-order descriptor.
#[derive(Clone, Copy, Debug)]
pub enum SusyCase {
    FirstOrder { eps: f64 },
    Real { eps1: f64, eps2: f64 },
    Confluent { eps: f64, w0: f64, x0: f64 },
    Complex { eps: Complex64 },
}

/// A fully specified transformation with its integration constants
/// c = (eps1 - eps2)^2 and d = eps1 + eps2 (conjugates in the complex case).
#[derive(Clone, Copy, Debug)]
pub struct SusyTransform {
    pub order: u8,
    pub case: SusyCase,
    pub c: f64,
    pub d: f64,
}

impl SusyTransform {
    pub fn first_order(eps: f64) -> Self {
        SusyTransform { order: 1, case: SusyCase::FirstOrder { eps }, c: 0.0, d: 0.0 }
    }

    pub fn real(eps1: f64, eps2: f64) -> Result<Self> {
        if eps1 == eps2 {
            return Err(Error::InvalidSpec(
                "real case needs distinct factorization energies (equal ones are the confluent case)".into(),
            ));
        }
        let diff = eps1 - eps2;
        Ok(SusyTransform { order: 2, case: SusyCase::Real { eps1, eps2 }, c: diff * diff, d: eps1 + eps2 })
    }

    pub fn confluent(eps: f64, w0: f64, x0: f64) -> Self {
        SusyTransform { order: 2, case: SusyCase::Confluent { eps, w0, x0 }, c: 0.0, d: 2.0 * eps }
    }

    pub fn complex(eps: Complex64) -> Result<Self> {
        let fe = validate_epsilon(eps);
        if !fe.usable() {
            return Err(Error::ExcludedEpsilon { eps, reason: fe.reason() });
        }
        Ok(SusyTransform {
            order: 2,
            case: SusyCase::Complex { eps },
            c: -4.0 * eps.im * eps.im,
            d: 2.0 * eps.re,
        })
    }

    /// Case trichotomy: the stored c must carry the sign of its case.
    pub fn validate(&self) -> Result<()> {
        let ok = match self.case {
            SusyCase::FirstOrder { .. } => self.order == 1,
            SusyCase::Real { .. } => self.order == 2 && self.c > 0.0,
            SusyCase::Confluent { .. } => self.order == 2 && self.c == 0.0,
            SusyCase::Complex { .. } => self.order == 2 && self.c < 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("inconsistent transform descriptor: {self:?}")))
        }
    }
}

/// Real second-order case: V2 = V0 - (log W(u1, u2))'' from two seeds at
/// distinct real energies. The Wronskian derivative is analytic,
/// W' = 2(eps1 - eps2) u1 u2.
pub struct RealCasePartner<U1: WaveFunction, U2: WaveFunction> {
    kind: OscillatorKind,
    eps1: f64,
    eps2: f64,
    u1: U1,
    u2: U2,
}

impl<U1: WaveFunction, U2: WaveFunction> RealCasePartner<U1, U2> {
    pub fn new(kind: OscillatorKind, eps1: f64, u1: U1, eps2: f64, u2: U2) -> Result<Self> {
        if eps1 == eps2 {
            return Err(Error::InvalidSpec(
                "degenerate energies rejected: W(u1, u2) is constant when eps1 = eps2".into(),
            ));
        }
        Ok(RealCasePartner { kind, eps1, eps2, u1, u2 })
    }

    pub fn wronskian(&self, x: f64) -> Result<Complex64> {
        let a = self.u1.eval(x)?;
        let b = self.u2.eval(x)?;
        Ok(a.value * b.deriv - a.deriv * b.value)
    }

    pub fn v2(&self, x: f64) -> Result<f64> {
        let a = self.u1.eval(x)?;
        let b = self.u2.eval(x)?;
        let w = a.value * b.deriv - a.deriv * b.value;
        let scale = (a.value.norm() * b.deriv.norm() + a.deriv.norm() * b.value.norm()).max(1.0);
        if w.norm() < 1e-12 * scale {
            return Err(Error::WronskianZero(x));
        }
        let de = 2.0 * (self.eps1 - self.eps2);
        let wp = de * a.value * b.value;
        let wpp = de * (a.deriv * b.value + a.value * b.deriv);
        let log_w_dd = wpp / w - (wp / w) * (wp / w);
        Ok(self.kind.potential(x) - log_w_dd.re)
    }
}

/// Spec-level entry point for the real case.
pub fn real_case_partner(
    eps1: f64,
    u1: &dyn WaveFunction,
    eps2: f64,
    u2: &dyn WaveFunction,
    x: f64,
) -> Result<f64> {
    let kind = u1.kind().ok_or_else(|| Error::InvalidSpec("seed carries no oscillator kind".into()))?;
    RealCasePartner::new(kind, eps1, u1, eps2, u2)?.v2(x)
}

/// Confluent case: w(x) = w0 + int_{x0}^{x} u^2 dz for a real seed
/// C psi_e + D psi_o of the inverted oscillator at real eps.
pub struct ConfluentTransform {
    seed: LinearCombo,
    eps: f64,
    cs: (f64, f64),
    pub w0: f64,
    pub x0: f64,
    memo: Mutex<HashMap<u64, f64>>,
}

impl ConfluentTransform {
    pub fn new(eps: f64, c: f64, d: f64, w0: f64, x0: f64) -> Result<Self> {
        if c == 0.0 && d == 0.0 {
            return Err(Error::InvalidSpec("confluent seed must not vanish identically".into()));
        }
        let seed = LinearCombo::new(
            OscillatorKind::Inverted,
            Complex64::new(eps, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )?;
        Ok(ConfluentTransform { seed, eps, cs: (c, d), w0, x0, memo: Mutex::new(HashMap::new()) })
    }

    pub fn seed(&self) -> &LinearCombo {
        &self.seed
    }

    fn integrate_sq(&self, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
        let opt = QuadOptions { rel_tol: 1e-10, abs_floor: 1e-12, ..Default::default() };
        let v = quad::integrate_with_widths(
            |x| {
                let u = self.seed.value(x)?;
                Ok(u * u)
            },
            lo,
            hi,
            |x| std::f64::consts::PI / (8.0 * x.abs().max(1.0)),
            &opt,
        )?;
        Ok(sign * v.re)
    }

    /// w(x); repeated x values hit an exact-key memo, so results are
    /// identical across call orders and threads.
    pub fn w(&self, x: f64) -> Result<f64> {
        if let Some(v) = self.memo.lock().unwrap().get(&x.to_bits()) {
            return Ok(*v);
        }
        let v = self.w0 + self.integrate_sq(self.x0, x)?;
        self.memo.lock().unwrap().insert(x.to_bits(), v);
        Ok(v)
    }

    /// w on many points with one cumulative sweep (scan helper).
    pub fn w_on_grid(&self, grid: &[f64]) -> Result<Vec<f64>> {
        let mut order: Vec<usize> = (0..grid.len()).collect();
        order.sort_by(|&i, &j| grid[i].total_cmp(&grid[j]));
        let mut out = vec![0.0; grid.len()];
        // walk right of x0
        let mut acc = 0.0;
        let mut prev = self.x0;
        for &i in order.iter().filter(|&&i| grid[i] >= self.x0) {
            acc += self.integrate_sq(prev, grid[i])?;
            prev = grid[i];
            out[i] = self.w0 + acc;
        }
        // walk left of x0
        acc = 0.0;
        prev = self.x0;
        for &i in order.iter().rev().filter(|&&i| grid[i] < self.x0) {
            acc += self.integrate_sq(prev, grid[i])?;
            prev = grid[i];
            out[i] = self.w0 + acc;
        }
        Ok(out)
    }

    /// Mean growth coefficient of int u^2: the solutions fall off like
    /// |x|^{-1/2} with an O(1) oscillation, so int^x u^2 ~ coeff * ln x. The
    /// coefficient comes from the leading asymptotic forms of psi_e/psi_o.
    pub fn mean_tail_coefficient(&self) -> Result<f64> {
        let i = Complex64::i();
        let e = self.eps;
        let (c, d) = self.cs;
        let g14 = specfun::ln_gamma(Complex64::new(0.25, -e / 2.0))?;
        let g34 = specfun::ln_gamma(Complex64::new(0.75, -e / 2.0))?;
        let pi = std::f64::consts::PI;
        let big_g = c * (i * pi / 8.0).exp() * (-g14).exp()
            + d / 2.0 * (i * 3.0 * pi / 8.0).exp() * (-g34).exp();
        Ok(2.0 * pi * (-pi * e / 2.0).exp() * big_g.norm_sqr())
    }

    /// w with the quadrature confined to |x| <= x_num and the logarithmic
    /// mean tail beyond; lets zero scans reach the far-out crossings that a
    /// large |w0| pushes beyond any desk-scale window.
    pub fn w_extended(&self, x: f64, x_num: f64) -> Result<f64> {
        if x.abs() <= x_num {
            return self.w(x);
        }
        let mc = self.mean_tail_coefficient()?;
        if x > 0.0 {
            Ok(self.w(x_num)? + mc * (x / x_num).ln())
        } else {
            Ok(self.w(-x_num)? - mc * (-x / x_num).ln())
        }
    }
}

/// Spec-level confluent op: w at a point for the seed C psi_e + D psi_o.
pub fn confluent_w(eps: f64, c: f64, d: f64, w0: f64, x0: f64, x: f64) -> Result<f64> {
    ConfluentTransform::new(eps, c, d, w0, x0)?.w(x)
}

/// Derivative frames of the complex transform at one point, as jets.
pub struct ComplexFrames {
    pub u: Jet,
    pub w: Jet,
    pub g: Jet,
    pub h: Jet,
    pub v2: Jet,
}

/// Complex second-order case: conjugate energies (eps, conj eps), seed u_P or
/// u_N per the Fig.-4 quadrant; produces real non-singular partners.
pub struct ComplexTransform {
    fe: FactorizationEnergy,
    seed: DecayingSeed,
}

impl ComplexTransform {
    pub fn new(eps: Complex64) -> Result<Self> {
        let fe = validate_epsilon(eps);
        let seed = match fe.classification {
            EpsClass::QuadrantUpper => seed_up_wave(eps)?,
            EpsClass::QuadrantLower => seed_un_wave(eps)?,
            _ => return Err(Error::ExcludedEpsilon { eps, reason: fe.reason() }),
        };
        Ok(ComplexTransform { fe, seed })
    }

    pub fn eps(&self) -> Complex64 {
        self.fe.eps
    }

    pub fn classification(&self) -> EpsClass {
        self.fe.classification
    }

    /// Seed evaluation seam (see [`DecayingSeed::switch_x`]).
    pub fn seed_switch_x(&self) -> f64 {
        self.seed.switch_x()
    }

    pub fn descriptor(&self) -> SusyTransform {
        SusyTransform::complex(self.fe.eps).expect("constructor validated eps")
    }

    pub fn seed_eval(&self, x: f64) -> Result<WaveEval> {
        self.seed.eval(x)
    }

    /// w = W(u, conj u) / (2 (eps - conj eps)); real by construction, with
    /// w' = |u|^2 >= 0.
    pub fn w_complex(&self, x: f64) -> Result<Complex64> {
        let u = self.seed.eval(x)?;
        let denom = 2.0 * (self.fe.eps - self.fe.eps.conj());
        Ok((u.value * u.deriv.conj() - u.deriv * u.value.conj()) / denom)
    }

    pub fn w(&self, x: f64) -> Result<f64> {
        Ok(self.w_complex(x)?.re)
    }

    fn w_guarded(&self, x: f64) -> Result<(WaveEval, f64)> {
        let u = self.seed.eval(x)?;
        let denom = 2.0 * (self.fe.eps - self.fe.eps.conj());
        let w = ((u.value * u.deriv.conj() - u.deriv * u.value.conj()) / denom).re;
        // threshold relative to the local |u|^2 scale: w moves by about
        // |u|^2 (1 + |x|) over an O(x) neighbourhood. An absolute floor would
        // misfire out in the tail, where w and |u|^2 vanish together while
        // their ratio stays regular.
        if w.abs() < 1e-12 * (u.value.norm_sqr() * (1.0 + x.abs())).max(1e-280) {
            return Err(Error::WZero(x));
        }
        Ok((u, w))
    }

    /// g = w'/w = u conj(u) / w.
    pub fn g(&self, x: f64) -> Result<f64> {
        let (u, w) = self.w_guarded(x)?;
        Ok(u.value.norm_sqr() / w)
    }

    /// h = g'/2 + g^2/2 - 2 V0 + d, reduced to (|u|^2)'/(2w) + x^2 + d.
    pub fn h(&self, x: f64) -> Result<f64> {
        let (u, w) = self.w_guarded(x)?;
        let sp = 2.0 * (u.value.conj() * u.deriv).re;
        Ok(sp / (2.0 * w) + x * x + self.descriptor().d)
    }

    /// The new potential V2 = -x^2/2 - [(u conj u)'/w - (u conj u)^2/w^2].
    pub fn v2(&self, x: f64) -> Result<f64> {
        let (u, w) = self.w_guarded(x)?;
        let s = u.value.norm_sqr();
        let sp = 2.0 * (u.value.conj() * u.deriv).re;
        Ok(-x * x / 2.0 - (sp / w - (s / w) * (s / w)))
    }

    /// Jet frames for the operator pipelines; `len` derivative orders.
    pub fn frames(&self, x: f64, len: usize) -> Result<ComplexFrames> {
        let (u0, w0) = self.w_guarded(x)?;
        let eps = self.fe.eps;
        // u'' = (-x^2 - 2 eps) u
        let q = Jet::polynomial(
            &[-2.0 * eps, Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
            x,
            len,
        );
        let u = Jet::from_sse(u0.value, u0.deriv, &q, len);
        let s = u.mul(&u.conj());
        let mut wd = Vec::with_capacity(len);
        wd.push(Complex64::new(w0, 0.0));
        for k in 0..len - 1 {
            wd.push(s.get(k));
        }
        let w = Jet::from_derivs(wd);
        let g = w.derivative().div(&w);
        let x2 = Jet::polynomial(
            &[Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            x,
            len,
        );
        let h = g
            .derivative()
            .scale(Complex64::new(0.5, 0.0))
            .add(&g.mul(&g).scale(Complex64::new(0.5, 0.0)))
            .add(&x2)
            .add(&Jet::constant(Complex64::new(self.descriptor().d, 0.0), len));
        let v2 = x2.scale(Complex64::new(-0.5, 0.0)).sub(&g.derivative());
        Ok(ComplexFrames { u, w, g, h, v2 })
    }
}

/// Spec-level ops for the complex case.
pub fn complex_w(eps: Complex64, x: f64) -> Result<f64> {
    ComplexTransform::new(eps)?.w(x)
}

pub fn complex_partner(eps: Complex64, x: f64) -> Result<f64> {
    ComplexTransform::new(eps)?.v2(x)
}
