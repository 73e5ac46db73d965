//! Adaptive Gauss-Kronrod quadrature for complex-valued integrands.
//!
//! Panels start from caller-provided oscillation-aware widths and are then
//! bisected globally (worst panel first) until the summed error estimate
//! drops below max(abs_floor, rel_tol * |integral|).

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 21-point Gauss-Kronrod rule (QUADPACK nodes/weights).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { rel_tol: 1e-9, abs_floor: 1e-12, max_panels: 60_000 }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

fn gk21<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_g = Complex64::new(0.0, 0.0);
    let mut res_k = fc * WGK[10];
    for (j, &x) in XGK.iter().enumerate().take(10) {
        let dx = half * x;
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        let sum = f1 + f2;
        res_k += WGK[j] * sum;
        if j % 2 == 1 {
            res_g += WG[j / 2] * sum;
        }
    }
    let value = res_k * half;
    let err = ((res_k - res_g) * half).norm();
    Ok(Panel { a, b, value, err })
}

/// Integrate `f` over [a, b]; `width(x)` bounds the initial panel width near
/// x so that oscillatory integrands start resolved.
pub fn integrate_with_widths<F, W>(f: F, a: f64, b: f64, width: W, opt: &QuadOptions) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
    W: Fn(f64) -> f64,
{
    if !(b > a) {
        if b == a {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
    }
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut count = 0usize;
    let mut x = a;
    while x < b {
        let w = width(x).max(1e-6);
        let next = (x + w).min(b);
        let p = gk21(&f, x, next)?;
        total += p.value;
        total_err += p.err;
        heap.push(p);
        count += 1;
        if count > opt.max_panels {
            return Err(Error::Quadrature { estimate: total_err, target: opt.abs_floor });
        }
        x = next;
    }
    loop {
        let target = opt.abs_floor.max(opt.rel_tol * total.norm());
        if total_err <= target {
            return Ok(total);
        }
        if count >= opt.max_panels {
            return Err(Error::Quadrature { estimate: total_err, target });
        }
        let worst = heap.pop().expect("non-empty panel heap");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(&f, worst.a, mid)?;
        let right = gk21(&f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        count += 1;
    }
}

/// Integrate with uniform initial panels.
pub fn integrate<F>(f: F, a: f64, b: f64, opt: &QuadOptions) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let w = (b - a).max(1e-300);
    integrate_with_widths(f, a, b, |_| w, opt)
}
