//! Arbitrary-length complex DFTs.
//!
//! Powers of two use an iterative radix-2 transform. Every other length goes
//! through Bluestein's chirp-z reduction to a power-of-two circular
//! convolution, so primes cost `O(p log p)` as well.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Kernel `e^{-2πi jh/n}`.
    Forward,
    /// Kernel `e^{+2πi jh/n}`, unnormalized.
    Inverse,
}

/// A precomputed transform of one fixed length.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Trivial,
    Radix2(Radix2),
    Bluestein(Bluestein),
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        let kind = if len <= 1 {
            Kind::Trivial
        } else if len.is_power_of_two() {
            Kind::Radix2(Radix2::new(len))
        } else {
            Kind::Bluestein(Bluestein::new(len))
        };
        Self { len, kind }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Transforms `data` in place. Panics if `data.len() != self.len()`.
    pub fn process(&self, data: &mut [Complex64], dir: Direction) {
        assert_eq!(data.len(), self.len, "buffer length does not match plan");
        match &self.kind {
            Kind::Trivial => {}
            Kind::Radix2(r) => r.process(data, dir),
            Kind::Bluestein(b) => match dir {
                Direction::Forward => b.forward(data),
                Direction::Inverse => {
                    data.iter_mut().for_each(|z| *z = z.conj());
                    b.forward(data);
                    data.iter_mut().for_each(|z| *z = z.conj());
                }
            },
        }
    }
}

/// One-shot forward transform.
pub fn fft(data: &mut [Complex64]) {
    FftPlan::new(data.len()).process(data, Direction::Forward);
}

/// One-shot unnormalized inverse transform.
pub fn ifft(data: &mut [Complex64]) {
    FftPlan::new(data.len()).process(data, Direction::Inverse);
}

/// Direct `O(n²)` summation. Twiddles are reduced exactly in integers.
pub fn naive_dft(input: &[Complex64], dir: Direction) -> Vec<Complex64> {
    let n = input.len() as i128;
    let sign: i128 = match dir {
        Direction::Forward => -1,
        Direction::Inverse => 1,
    };
    (0..n)
        .map(|h| {
            input
                .iter()
                .enumerate()
                .map(|(j, &x)| x * math::root_of_unity(sign * j as i128 * h, n))
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone)]
struct Radix2 {
    len: usize,
    // e^{-2πi m/len} for m in [0, len/2)
    twiddles: Vec<Complex64>,
}

impl Radix2 {
    fn new(len: usize) -> Self {
        let twiddles = (0..len / 2)
            .map(|m| math::root_of_unity(-(m as i128), len as i128))
            .collect();
        Self { len, twiddles }
    }

    fn process(&self, data: &mut [Complex64], dir: Direction) {
        let n = self.len;
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if i < j {
                data.swap(i, j);
            }
        }
        let mut size = 2;
        while size <= n {
            let half = size / 2;
            let stride = n / size;
            for start in (0..n).step_by(size) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if dir == Direction::Inverse {
                        w = w.conj();
                    }
                    let a = data[start + k];
                    let b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
            size *= 2;
        }
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    len: usize,
    // c_k = e^{-πi k²/len}
    chirp: Vec<Complex64>,
    // forward transform of the conjugate chirp laid out circularly
    kernel: Vec<Complex64>,
    inner: Radix2,
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let n = len as i128;
        let chirp: Vec<Complex64> = (0..n)
            .map(|k| math::root_of_unity(-((k * k) % (2 * n)), 2 * n))
            .collect();
        let m = (2 * len - 1).next_power_of_two();
        let inner = Radix2::new(m);
        let mut kernel = vec![Complex64::new(0.0, 0.0); m];
        kernel[0] = chirp[0].conj();
        for k in 1..len {
            let v = chirp[k].conj();
            kernel[k] = v;
            kernel[m - k] = v;
        }
        inner.process(&mut kernel, Direction::Forward);
        let scale = 1.0 / m as f64;
        kernel.iter_mut().for_each(|z| *z *= scale);
        Self {
            len,
            chirp,
            kernel,
            inner,
        }
    }

    fn forward(&self, data: &mut [Complex64]) {
        let m = self.kernel.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for (b, (x, c)) in buf.iter_mut().zip(data.iter().zip(&self.chirp)) {
            *b = x * c;
        }
        self.inner.process(&mut buf, Direction::Forward);
        for (b, k) in buf.iter_mut().zip(&self.kernel) {
            *b *= k;
        }
        self.inner.process(&mut buf, Direction::Inverse);
        for (out, (b, c)) in data.iter_mut().zip(buf.iter().zip(&self.chirp)) {
            *out = b * c;
        }
        debug_assert_eq!(data.len(), self.len);
    }
}
