//! Double-double ("compensated") arithmetic built from error-free transforms.
//!
//! The Kummer series for oscillatory arguments suffers cancellation that grows
//! like e^{|z|}; the series terms must therefore be carried with more than f64
//! precision up to the series/asymptotic switch radius. A double-double value
//! keeps an unevaluated sum hi + lo of two f64 and retains ~31 significant
//! digits, which is enough headroom for |z| up to ~45.
//!
//! The error-free transforms below are the classical Dekker/Knuth ones; no FMA
//! is assumed.

/// Exact sum: returns (s, e) with s = fl(a + b) and a + b = s + e exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Like `two_sum` but requires |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

/// Exact product: returns (p, e) with p = fl(a * b) and a * b = p + e exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
    (p, e)
}

/// A double-double real number hi + lo with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    #[inline]
    pub fn from(a: f64) -> Self {
        Dd { hi: a, lo: 0.0 }
    }

    /// Exact sum of two f64 as a double-double.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    /// Exact product of two f64 as a double-double.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, o: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, o);
        let p2 = p2 + self.lo * o;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from(q3))
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }
}

/// Complex double-double.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    #[inline]
    pub fn one() -> Self {
        CDd { re: Dd::from(1.0), im: Dd::from(0.0) }
    }

    #[inline]
    pub fn from_c64(z: num_complex::Complex64) -> Self {
        CDd { re: Dd::from(z.re), im: Dd::from(z.im) }
    }

    #[inline]
    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, o: CDd) -> CDd {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    #[inline]
    pub fn sub(self, o: CDd) -> CDd {
        CDd { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    /// Multiply by an ordinary complex number (exact products, dd sums).
    #[inline]
    pub fn mul_c64(self, o: num_complex::Complex64) -> CDd {
        CDd {
            re: self.re.mul_f64(o.re).sub(self.im.mul_f64(o.im)),
            im: self.re.mul_f64(o.im).add(self.im.mul_f64(o.re)),
        }
    }

    #[inline]
    pub fn mul_f64(self, o: f64) -> CDd {
        CDd { re: self.re.mul_f64(o), im: self.im.mul_f64(o) }
    }

    #[inline]
    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    /// Divide by a complex double-double via conjugate and real division.
    #[inline]
    pub fn div(self, o: CDd) -> CDd {
        let den = o.re.mul(o.re).add(o.im.mul(o.im));
        let re = self.re.mul(o.re).add(self.im.mul(o.im));
        let im = self.im.mul(o.re).sub(self.re.mul(o.im));
        CDd { re: re.div(den), im: im.div(den) }
    }

    #[inline]
    pub fn div_f64(self, o: f64) -> CDd {
        CDd { re: self.re.div(Dd::from(o)), im: self.im.div(Dd::from(o)) }
    }

    /// Cheap magnitude estimate from the leading components.
    #[inline]
    pub fn norm_est(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}
