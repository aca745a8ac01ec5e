//! `f64` helpers that do not depend on `std`.

use core::f64::consts::PI;

use num_complex::Complex64;

pub(crate) const TAU: f64 = 2.0 * PI;

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `e^{2πi x}`, reducing `x` modulo 1 first so large frequencies keep their
/// phase accuracy.
#[inline]
pub(crate) fn cis_turns(x: f64) -> Complex64 {
    let frac = x - floor(x);
    let (s, c) = libm::sincos(TAU * frac);
    Complex64::new(c, s)
}

/// `a·b` as an unevaluated sum `hi + lo` (Dekker's product, exact barring
/// overflow).
#[inline]
pub(crate) fn two_product(a: f64, b: f64) -> (f64, f64) {
    const SPLIT: f64 = 134_217_729.0; // 2^27 + 1
    let hi = a * b;
    let split = |x: f64| {
        let c = SPLIT * x;
        let h = c - (c - x);
        (h, x - h)
    };
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let lo = ((ah * bh - hi) + ah * bl + al * bh) + al * bl;
    (hi, lo)
}

/// `e^{2πi·num/den}` with the product reduced exactly in integers.
#[inline]
pub(crate) fn root_of_unity(num: i128, den: i128) -> Complex64 {
    let r = num.rem_euclid(den);
    let (s, c) = libm::sincos(TAU * r as f64 / den as f64);
    Complex64::new(c, s)
}

/// Phase angle in `[-π, π)`.
#[inline]
pub(crate) fn arg(z: Complex64) -> f64 {
    let a = libm::atan2(z.im, z.re);
    if a >= PI {
        a - TAU
    } else {
        a
    }
}
