//! Complex FFT kernels: iterative radix-2 for power-of-two lengths and
//! Bluestein's chirp-z algorithm for everything else.
//!
//! Transforms are unnormalized in both directions. Forward uses the kernel
//! `exp(-2 pi i k n / N)`.

use num_complex::Complex;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone)]
enum Kernel<T> {
    Identity,
    Radix2 { twiddles: Vec<Complex<T>>, bitrev: Vec<usize> },
    Bluestein { chirp: Vec<Complex<T>>, filter: Vec<Complex<T>>, inner: Box<FftPlan<T>> },
}

/// Precomputed transform for one length.
#[derive(Debug, Clone)]
pub struct FftPlan<T> {
    len: usize,
    kernel: Kernel<T>,
}

impl<T: Scalar> FftPlan<T> {
    pub fn new(len: usize) -> Self {
        let kernel = if len <= 1 {
            Kernel::Identity
        } else if len.is_power_of_two() {
            radix2_kernel(len)
        } else {
            bluestein_kernel(len)
        };
        Self { len, kernel }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place transform of `buf` (length must match the plan).
    pub fn process(&self, buf: &mut [Complex<T>], dir: Direction) {
        assert_eq!(buf.len(), self.len, "buffer length does not match plan");
        match dir {
            Direction::Forward => self.forward(buf),
            Direction::Inverse => {
                // IDFT(x) = conj(DFT(conj(x)))
                buf.iter_mut().for_each(|c| *c = c.conj());
                self.forward(buf);
                buf.iter_mut().for_each(|c| *c = c.conj());
            }
        }
    }

    fn forward(&self, buf: &mut [Complex<T>]) {
        match &self.kernel {
            Kernel::Identity => {}
            Kernel::Radix2 { twiddles, bitrev } => radix2_forward(buf, twiddles, bitrev),
            Kernel::Bluestein { chirp, filter, inner } => {
                let m = inner.len;
                let mut work = vec![Complex::new(T::zero(), T::zero()); m];
                for (w, (&x, &c)) in work.iter_mut().zip(buf.iter().zip(chirp)) {
                    *w = x * c;
                }
                inner.forward(&mut work);
                for (w, &f) in work.iter_mut().zip(filter) {
                    *w *= f;
                }
                inner.process(&mut work, Direction::Inverse);
                let scale = T::one() / T::from_usize_lossy(m);
                for (out, (&w, &c)) in buf.iter_mut().zip(work.iter().zip(chirp)) {
                    *out = w * c * scale;
                }
            }
        }
    }
}

/// Convenience wrapper planning and running a single transform.
pub fn fft<T: Scalar>(buf: &mut [Complex<T>], dir: Direction) {
    FftPlan::new(buf.len()).process(buf, dir);
}

fn radix2_kernel<T: Scalar>(n: usize) -> Kernel<T> {
    let bits = n.trailing_zeros();
    let bitrev = (0..n).map(|i| i.reverse_bits() >> (usize::BITS - bits)).collect();
    let step = -T::TAU() / T::from_usize_lossy(n);
    let twiddles = (0..n / 2)
        .map(|k| {
            let (s, c) = (step * T::from_usize_lossy(k)).sin_cos();
            Complex::new(c, s)
        })
        .collect();
    Kernel::Radix2 { twiddles, bitrev }
}

fn radix2_forward<T: Scalar>(buf: &mut [Complex<T>], twiddles: &[Complex<T>], bitrev: &[usize]) {
    let n = buf.len();
    for (i, &r) in bitrev.iter().enumerate() {
        if i < r {
            buf.swap(i, r);
        }
    }
    let mut half = 1;
    while half < n {
        let stride = n / (2 * half);
        for block in buf.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let t = *b * twiddles[k * stride];
                *b = *a - t;
                *a += t;
            }
        }
        half *= 2;
    }
}

fn bluestein_kernel<T: Scalar>(n: usize) -> Kernel<T> {
    let m = (2 * n - 1).next_power_of_two();
    // chirp[k] = exp(-i pi k^2 / n); k^2 is reduced mod 2n to keep the angle small
    let two_n = 2 * n as u128;
    let chirp: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let k2 = (k as u128 * k as u128) % two_n;
            let angle = -T::PI() * T::from_u128(k2).unwrap() / T::from_usize_lossy(n);
            let (s, c) = angle.sin_cos();
            Complex::new(c, s)
        })
        .collect();
    let mut filter = vec![Complex::new(T::zero(), T::zero()); m];
    filter[0] = chirp[0].conj();
    for k in 1..n {
        filter[k] = chirp[k].conj();
        filter[m - k] = chirp[k].conj();
    }
    let inner = FftPlan::new(m);
    inner.forward(&mut filter);
    Kernel::Bluestein { chirp, filter, inner: Box::new(inner) }
}
