//! Complex special functions behind the oscillator solutions: the confluent
//! hypergeometric function 1F1 with complex parameters and argument, the
//! complex log-gamma, and Hermite polynomials at complex argument.
//!
//! The 1F1 evaluation is split in two regimes. Inside `switch_radius` the
//! Kummer series is summed with double-double compensated arithmetic (see
//! [`crate::dd`]); outside it the large-|z| expansion is used, each branch
//! refined by its Poincare correction series under optimal truncation.

use num_complex::Complex64;

use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};

/// Numerical policy for the 1F1 evaluation regimes.
#[derive(Clone, Copy, Debug)]
pub struct SeriesControl {
    /// Kummer series term budget.
    pub max_terms: usize,
    /// Relative term size at which the series is declared converged.
    pub rel_tol: f64,
    /// |z| threshold between the series and asymptotic regimes.
    pub switch_radius: f64,
    /// Cap on the Poincare correction terms per asymptotic branch.
    pub asymp_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 600,
            rel_tol: 1e-15,
            switch_radius: 30.0,
            asymp_terms: 12,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::InvalidSpec("max_terms must be >= 1".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidSpec("rel_tol must be > 0".into()));
        }
        if !(self.switch_radius > 0.0) {
            return Err(Error::InvalidSpec("switch_radius must be > 0".into()));
        }
        Ok(())
    }
}

const POLE_TOL: f64 = 1e-12;

/// True when z is within `POLE_TOL` of a non-positive integer.
pub fn near_nonpositive_integer(z: Complex64) -> bool {
    z.im.abs() < POLE_TOL && (z.re - z.re.round()).abs() < POLE_TOL && z.re.round() <= 0.0
}

/// True when z is exactly a non-positive integer (terminating Pochhammer).
fn exact_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re == z.re.round() && z.re <= 0.0
}

// Lanczos coefficients, g = 607/128, N = 15 (Godfrey's set).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_C: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Log-gamma of a complex argument.
///
/// Lanczos rational approximation for Re z >= 0.5 and the reflection formula
/// below it. The result is the continuous log-gamma (real on the positive
/// axis); in the reflection region the imaginary part may differ from the
/// principal branch by a multiple of 2*pi, which every downstream use (ratios
/// and exponentials) is insensitive to.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        // reflection: ln Gamma(z) = ln pi - ln sin(pi z) - ln Gamma(1 - z)
        let pi = std::f64::consts::PI;
        return Ok(Complex64::new(pi.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(Complex64::new(1.0, 0.0) - z)?);
    }
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_C[0], 0.0);
    for (k, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        acc += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    let half_log_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok(half_log_2pi + (zm1 + 0.5) * t.ln() - t + acc.ln())
}

/// log(sin(pi z)) avoiding overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    if z.im.abs() <= 10.0 {
        return (z * pi).sin().ln();
    }
    if z.im > 0.0 {
        // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
        let small = (Complex64::i() * 2.0 * pi * z).exp();
        -Complex64::i() * pi * z + (small - 1.0).ln() - Complex64::new(2f64.ln(), pi / 2.0)
    } else {
        ln_sin_pi(z.conj()).conj()
    }
}

/// Kummer series sum(n) (a)_n/(b)_n z^n/n!, carried in double-double terms.
fn kummer_series(a: Complex64, b: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    kummer_series_cdd(a, b, CDd::from_c64(z), ctl, ctl.rel_tol.min(1e-16)).map(CDd::to_c64)
}

/// Like [`kummer_series`] but with a double-double argument and sum;
/// combinations that cancel many leading digits subtract these before
/// rounding, must pass the argument exactly (e.g. an exact-squared i x^2),
/// and must sum to `stop` ~ 1e-31 so uncancelled series tails sit below
/// their target.
pub(crate) fn kummer_series_cdd(
    a: Complex64,
    b: Complex64,
    zdd: CDd,
    ctl: &SeriesControl,
    stop: f64,
) -> Result<CDd> {
    let mut term = CDd::one();
    let mut sum = CDd::one();
    let mut small_run = 0u32;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        let an = CDd { re: Dd::from_sum(a.re, nf), im: Dd::from(a.im) };
        let bn = CDd { re: Dd::from_sum(b.re, nf), im: Dd::from(b.im) };
        let div = CDd { re: bn.re.mul_f64(nf + 1.0), im: bn.im.mul_f64(nf + 1.0) };
        term = term.mul(an).mul(zdd).div(div);
        sum = sum.add(term);
        let t = term.norm_est();
        if t == 0.0 {
            // terminating series
            return Ok(sum);
        }
        if t <= stop * sum.norm_est() {
            small_run += 1;
            if small_run >= 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence(ctl.max_terms))
}

/// 1F1 by the Kummer series; valid for |z| <= `ctl.switch_radius`.
pub fn hyp1f1_series(a: Complex64, b: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if near_nonpositive_integer(b) {
        return Err(Error::ParameterPole(b));
    }
    if z.norm() > ctl.switch_radius && !exact_nonpositive_integer(a) {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds the series radius {}",
            z.norm(),
            ctl.switch_radius
        )));
    }
    kummer_series(a, b, z, ctl)
}

/// One Poincare correction series, optimally truncated.
///
/// `num(n)` supplies the two Pochhammer factors of term n; `den` is the
/// per-term division argument (-z or z).
fn poincare_sum(a1: Complex64, a2: Complex64, den: Complex64, cap: usize) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    for n in 1..=cap {
        let nf = n as f64;
        term *= (a1 + (nf - 1.0)) * (a2 + (nf - 1.0)) / (nf * den);
        let t = term.norm();
        if t > prev {
            break; // past the smallest term
        }
        sum += term;
        prev = t;
        if t < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

fn asymptotic_with_prefactors(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    ctl: &SeriesControl,
    lg_recessive: Option<Complex64>, // ln Gamma(b) - ln Gamma(b - a)
    lg_dominant: Option<Complex64>,  // ln Gamma(b) - ln Gamma(a)
) -> Result<Complex64> {
    let pi = std::f64::consts::PI;
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let lnz = z.ln();
    let mut out = Complex64::new(0.0, 0.0);
    if let Some(lg) = lg_recessive {
        let s = poincare_sum(a, a - b + 1.0, -z, ctl.asymp_terms);
        out += (lg + Complex64::i() * sign * pi * a - a * lnz).exp() * s;
    }
    if let Some(lg) = lg_dominant {
        let s = poincare_sum(b - a, 1.0 - a, z, ctl.asymp_terms);
        out += (lg + z + (a - b) * lnz).exp() * s;
    }
    if !out.re.is_finite() || !out.im.is_finite() {
        return Err(Error::NonFinite(z.norm()));
    }
    Ok(out)
}

/// Large-|z| expansion of 1F1; valid for |z| > `ctl.switch_radius`.
///
/// When a or b-a sits on a gamma pole the corresponding branch vanishes and
/// the surviving branch is returned.
pub fn hyp1f1_asymptotic(a: Complex64, b: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if near_nonpositive_integer(b) {
        return Err(Error::ParameterPole(b));
    }
    if z.norm() <= ctl.switch_radius {
        return Err(Error::Domain(format!(
            "|z| = {} is inside the series radius {}",
            z.norm(),
            ctl.switch_radius
        )));
    }
    let lgb = ln_gamma(b)?;
    let lg_recessive = if near_nonpositive_integer(b - a) { None } else { Some(lgb - ln_gamma(b - a)?) };
    let lg_dominant = if near_nonpositive_integer(a) { None } else { Some(lgb - ln_gamma(a)?) };
    asymptotic_with_prefactors(a, b, z, ctl, lg_recessive, lg_dominant)
}

/// 1F1(a, b; z): series inside the switch radius, asymptotic outside.
pub fn hyp1f1(a: Complex64, b: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if near_nonpositive_integer(b) {
        return Err(Error::ParameterPole(b));
    }
    if exact_nonpositive_integer(a) || z.norm() <= ctl.switch_radius {
        kummer_series(a, b, z, ctl)
    } else {
        hyp1f1_asymptotic(a, b, z, ctl)
    }
}

/// d/dz 1F1(a, b; z) via the contiguous relation (a/b) 1F1(a+1, b+1; z).
pub fn hyp1f1_derivative(a: Complex64, b: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    Ok(a / b * hyp1f1(a + 1.0, b + 1.0, z, ctl)?)
}

/// 1F1 evaluator with fixed (a, b): pre-computes the gamma-ratio prefactors
/// so grid sweeps do not pass through `ln_gamma` per point.
#[derive(Clone, Debug)]
pub struct Hyp1f1 {
    a: Complex64,
    b: Complex64,
    ctl: SeriesControl,
    terminating: bool,
    lg_recessive: Option<Complex64>,
    lg_dominant: Option<Complex64>,
}

impl Hyp1f1 {
    pub fn new(a: Complex64, b: Complex64, ctl: SeriesControl) -> Result<Self> {
        if near_nonpositive_integer(b) {
            return Err(Error::ParameterPole(b));
        }
        let lgb = ln_gamma(b)?;
        let lg_recessive = if near_nonpositive_integer(b - a) { None } else { Some(lgb - ln_gamma(b - a)?) };
        let lg_dominant = if near_nonpositive_integer(a) { None } else { Some(lgb - ln_gamma(a)?) };
        Ok(Hyp1f1 {
            a,
            b,
            ctl,
            terminating: exact_nonpositive_integer(a),
            lg_recessive,
            lg_dominant,
        })
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if self.terminating || z.norm() <= self.ctl.switch_radius {
            kummer_series(self.a, self.b, z, &self.ctl)
        } else {
            asymptotic_with_prefactors(self.a, self.b, z, &self.ctl, self.lg_recessive, self.lg_dominant)
        }
    }
}

/// Hermite polynomial H_n at complex argument, by the three-term recurrence.
pub fn hermite(n: u32, z: Complex64) -> Complex64 {
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => 2.0 * z,
        _ => {
            let mut hm1 = Complex64::new(1.0, 0.0);
            let mut h = 2.0 * z;
            for k in 1..n {
                let next = 2.0 * z * h - 2.0 * (k as f64) * hm1;
                hm1 = h;
                h = next;
            }
            h
        }
    }
}


#[cfg(test)]
mod dd_depth_tests {
    use super::*;

    #[test]
    fn cdd_series_reaches_double_double_depth() {
        // F(a, 1/2, i 4.3^2) at a = (1 + 2i(1e-5 + 5i))/4, the square carried
        // exactly; mpmath 45-digit reference split into hi + lo f64 pairs
        let eps = Complex64::new(1e-5, 5.0);
        let a = 0.25 + Complex64::i() * eps / 2.0;
        let z = CDd { re: Dd::from(0.0), im: Dd::from_prod(4.3, 4.3) };
        let ctl = SeriesControl::default();
        let f = kummer_series_cdd(a, Complex64::new(0.5, 0.0), z, &ctl, 1e-31).unwrap();
        let err_re = (f.re.hi - -781.5638375857889) + (f.re.lo - -4.558568656455764e-14);
        let err_im = (f.im.hi - 143.6579117553519) + (f.im.lo - -5.307559413782022e-15);
        assert!(err_re.abs() < 1e-22, "re error {err_re:e}");
        assert!(err_im.abs() < 1e-22, "im error {err_im:e}");
    }
}
