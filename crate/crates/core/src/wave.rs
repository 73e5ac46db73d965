//! Point-evaluation bundle and the wavefunction evaluator trait shared by all
//! solution families and transforms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oscillator::OscillatorKind;

/// Value and d/dx of a wavefunction at a real coordinate.
#[derive(Clone, Copy, Debug)]
pub struct WaveEval {
    pub value: Complex64,
    pub deriv: Complex64,
}

impl WaveEval {
    pub fn new(value: Complex64, deriv: Complex64, x: f64) -> Result<Self> {
        if value.re.is_finite() && value.im.is_finite() && deriv.re.is_finite() && deriv.im.is_finite() {
            Ok(WaveEval { value, deriv })
        } else {
            Err(Error::NonFinite(x))
        }
    }
}

/// A wavefunction that can be evaluated (value and derivative) at any real x.
///
/// `energy` is the stationary Schrodinger equation tag: when present, callers
/// may replace second derivatives by 2(V - E) psi.
pub trait WaveFunction {
    fn eval(&self, x: f64) -> Result<WaveEval>;

    /// Value alone; the default goes through `eval`, implementors override it
    /// when the derivative costs extra special-function calls.
    fn value(&self, x: f64) -> Result<Complex64> {
        Ok(self.eval(x)?.value)
    }

    fn energy(&self) -> Option<Complex64> {
        None
    }

    fn kind(&self) -> Option<OscillatorKind> {
        None
    }
}

impl<T: WaveFunction + ?Sized> WaveFunction for &T {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        (**self).eval(x)
    }
    fn value(&self, x: f64) -> Result<Complex64> {
        (**self).value(x)
    }
    fn energy(&self) -> Option<Complex64> {
        (**self).energy()
    }
    fn kind(&self) -> Option<OscillatorKind> {
        (**self).kind()
    }
}

impl WaveFunction for Box<dyn WaveFunction> {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        (**self).eval(x)
    }
    fn value(&self, x: f64) -> Result<Complex64> {
        (**self).value(x)
    }
    fn energy(&self) -> Option<Complex64> {
        (**self).energy()
    }
    fn kind(&self) -> Option<OscillatorKind> {
        (**self).kind()
    }
}

/// Wraps a value-only closure, supplying the derivative by central finite
/// differences; lets arbitrary test functions enter operator pipelines.
pub struct FiniteDiffWave<F: Fn(f64) -> Complex64> {
    f: F,
    step: f64,
}

impl<F: Fn(f64) -> Complex64> FiniteDiffWave<F> {
    pub fn new(f: F, step: f64) -> Self {
        FiniteDiffWave { f, step }
    }
}

impl<F: Fn(f64) -> Complex64> WaveFunction for FiniteDiffWave<F> {
    fn eval(&self, x: f64) -> Result<WaveEval> {
        let h = self.step;
        let value = (self.f)(x);
        let deriv = ((self.f)(x + h) - (self.f)(x - h)) / (2.0 * h);
        WaveEval::new(value, deriv, x)
    }
}
