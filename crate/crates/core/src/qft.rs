//! Discrete right-sided quaternion Fourier transform with axis `j`.
//!
//! Forward: `Z[k] = sum_n q[n] exp(-j 2 pi k n / N)`, inverse:
//! `q[n] = (1/N) sum_k Z[k] exp(+j 2 pi k n / N)`, the exponential always on
//! the right.
//!
//! Writing `q = c1 + i c2` with `c1 = w + y j` and `c2 = x + z j`, both halves
//! commute with the kernel, so the transform is exactly two ordinary complex
//! DFTs (imaginary unit `j`) and `Z = C1 + i C2`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fft::{Direction, FftPlan};
use crate::quaternion::{Axis, Quaternion};
use crate::scalar::Scalar;
use crate::signal::{ComplexSignal, QuaternionSamples, QuaternionSignal};

/// Length above which the two component transforms run on separate threads.
const PARALLEL_LEN: usize = 1 << 14;

/// Where a bin sits on the frequency axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinClass {
    Dc,
    Positive,
    Negative,
    /// Bin `N/2` of an even-length transform.
    Nyquist,
}

/// Classifies bin `k` of an `n`-point transform in natural DFT order.
pub fn bin_class(k: usize, n: usize) -> BinClass {
    if k == 0 {
        BinClass::Dc
    } else if 2 * k == n {
        BinClass::Nyquist
    } else if 2 * k < n {
        BinClass::Positive
    } else {
        BinClass::Negative
    }
}

/// Signed frequency index of bin `k`: `k` for the lower half, `k - n` above.
/// The even-length Nyquist bin maps to `-n/2`.
pub fn signed_index(k: usize, n: usize) -> isize {
    if 2 * k < n {
        k as isize
    } else {
        k as isize - n as isize
    }
}

/// Quaternion spectrum in natural DFT order with `df = 1 / (N dt)` Hz per bin.
#[derive(Debug, Clone, PartialEq)]
pub struct QSpectrum<T> {
    bins: Vec<Quaternion<T>>,
    df: T,
}

impl<T: Scalar> QSpectrum<T> {
    pub fn new(bins: Vec<Quaternion<T>>, df: T) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::InvalidSignal("spectrum has no bins".into()));
        }
        if !(df.is_finite() && df > T::zero()) {
            return Err(Error::InvalidSignal(format!("bin spacing must be positive, got {df}")));
        }
        Ok(Self { bins, df })
    }

    pub fn bins(&self) -> &[Quaternion<T>] {
        &self.bins
    }

    pub fn bins_mut(&mut self) -> &mut [Quaternion<T>] {
        &mut self.bins
    }

    pub fn into_bins(self) -> Vec<Quaternion<T>> {
        self.bins
    }

    pub fn df(&self) -> T {
        self.df
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Sample interval of the time signal this spectrum came from.
    pub fn dt(&self) -> T {
        T::one() / (self.df * T::from_usize_lossy(self.len()))
    }

    /// Signed frequency of bin `k` in Hz.
    pub fn frequency(&self, k: usize) -> T {
        T::from_isize(signed_index(k, self.len())).unwrap() * self.df
    }

    pub fn class(&self, k: usize) -> BinClass {
        bin_class(k, self.len())
    }

    /// Largest bin modulus.
    pub fn max_modulus(&self) -> T {
        self.bins.iter().map(|b| b.modulus()).fold(T::zero(), T::max)
    }

    /// Bin indices sorted by signed frequency (fftshift order).
    pub fn centered_order(&self) -> Vec<usize> {
        let n = self.len();
        let start = n / 2 + n % 2;
        (start..n).chain(0..start).collect()
    }

    /// `(frequency, bin)` pairs in fftshift order, for plotting.
    pub fn centered(&self) -> Vec<(T, Quaternion<T>)> {
        self.centered_order().into_iter().map(|k| (self.frequency(k), self.bins[k])).collect()
    }

    /// Bin-wise product `self[k] * rhs[k]` in that order.
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        if self.len() != rhs.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: rhs.len() });
        }
        Ok(Self { bins: self.bins.iter().zip(&rhs.bins).map(|(&a, &b)| a * b).collect(), df: self.df })
    }
}

/// Reusable transform for a fixed length.
#[derive(Debug, Clone)]
pub struct QftPlan<T> {
    fft: FftPlan<T>,
}

impl<T: Scalar> QftPlan<T> {
    pub fn new(len: usize) -> Self {
        Self { fft: FftPlan::new(len) }
    }

    pub fn len(&self) -> usize {
        self.fft.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fft.is_empty()
    }

    /// Unnormalized forward transform of raw samples.
    pub fn forward_samples(&self, samples: &[Quaternion<T>]) -> Vec<Quaternion<T>> {
        self.run(samples, Direction::Forward, T::one())
    }

    /// Inverse transform including the `1/N` factor.
    pub fn inverse_samples(&self, bins: &[Quaternion<T>]) -> Vec<Quaternion<T>> {
        let scale = T::one() / T::from_usize_lossy(bins.len());
        self.run(bins, Direction::Inverse, scale)
    }

    fn run(&self, input: &[Quaternion<T>], dir: Direction, scale: T) -> Vec<Quaternion<T>> {
        assert_eq!(input.len(), self.len(), "input length does not match plan");
        let mut c1: Vec<Complex<T>> = input.iter().map(|q| Complex::new(q.w, q.y)).collect();
        let mut c2: Vec<Complex<T>> = input.iter().map(|q| Complex::new(q.x, q.z)).collect();
        if input.len() >= PARALLEL_LEN {
            rayon::join(|| self.fft.process(&mut c1, dir), || self.fft.process(&mut c2, dir));
        } else {
            self.fft.process(&mut c1, dir);
            self.fft.process(&mut c2, dir);
        }
        c1.iter()
            .zip(&c2)
            .map(|(a, b)| Quaternion::new(a.re * scale, b.re * scale, a.im * scale, b.im * scale))
            .collect()
    }
}

/// Forward transform; works for complex and quaternion signals alike.
pub fn qft_forward<T: Scalar, S: QuaternionSamples<T> + ?Sized>(s: &S) -> QSpectrum<T> {
    let samples = s.quaternion_samples();
    let n = samples.len();
    let bins = QftPlan::new(n).forward_samples(&samples);
    QSpectrum { bins, df: T::one() / (T::from_usize_lossy(n) * s.sample_interval()) }
}

/// Direct `O(N^2)` summation of the forward transform.
pub fn qft_forward_naive<T: Scalar, S: QuaternionSamples<T> + ?Sized>(s: &S) -> QSpectrum<T> {
    let samples = s.quaternion_samples();
    let n = samples.len();
    let step = -T::TAU() / T::from_usize_lossy(n);
    let kernel: Vec<Quaternion<T>> = (0..n).map(|m| Quaternion::exp_j(step * T::from_usize_lossy(m))).collect();
    let bins = (0..n)
        .map(|k| samples.iter().enumerate().fold(Quaternion::zero(), |acc, (t, &q)| acc + q * kernel[(k * t) % n]))
        .collect();
    QSpectrum { bins, df: T::one() / (T::from_usize_lossy(n) * s.sample_interval()) }
}

pub fn qft_inverse<T: Scalar>(spec: &QSpectrum<T>) -> QuaternionSignal<T> {
    let samples = QftPlan::new(spec.len()).inverse_samples(&spec.bins);
    QuaternionSignal::from_parts_unchecked(samples, spec.dt())
}

/// Bin-wise real, i, j and k components of a spectrum.
///
/// For a complex input these hold, respectively, the even part of `z_r`, the
/// even part of `z_i`, the odd part of `z_r` and the odd part of `z_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryComponents<T> {
    pub re: Vec<T>,
    pub im_i: Vec<T>,
    pub im_j: Vec<T>,
    pub im_k: Vec<T>,
}

pub fn symmetry_components<T: Scalar>(spec: &QSpectrum<T>) -> SymmetryComponents<T> {
    SymmetryComponents {
        re: spec.bins.iter().map(|q| q.w).collect(),
        im_i: spec.bins.iter().map(|q| q.x).collect(),
        im_j: spec.bins.iter().map(|q| q.y).collect(),
        im_k: spec.bins.iter().map(|q| q.z).collect(),
    }
}

/// `max_k |Z[-k] - (-i Z[k] i)|`; zero (up to rounding) for any complex input.
pub fn check_i_involution_reversal<T: Scalar>(spec: &QSpectrum<T>) -> T {
    involution_reversal_deviation(spec, |q| q.involution(Axis::I))
}

pub(crate) fn involution_reversal_deviation<T: Scalar>(
    spec: &QSpectrum<T>,
    involution: impl Fn(Quaternion<T>) -> Quaternion<T>,
) -> T {
    let n = spec.len();
    (0..n)
        .map(|k| {
            let mirrored = spec.bins[(n - k) % n];
            (mirrored - involution(spec.bins[k])).modulus()
        })
        .fold(T::zero(), T::max)
}

/// Spectrum of `conj(z)` from the spectrum of a complex `z`: bin-wise `-j Z j`.
pub fn qft_of_conjugate<T: Scalar>(spec: &QSpectrum<T>) -> QSpectrum<T> {
    QSpectrum { bins: spec.bins.iter().map(|q| q.involution(Axis::J)).collect(), df: spec.df }
}

/// Circular shift `out[k] = Z[k - k0]`, the spectral image of right
/// multiplication by `exp(j 2 pi k0 n / N)` in time.
pub fn frequency_shift<T: Scalar>(spec: &QSpectrum<T>, k0: isize) -> QSpectrum<T> {
    let n = spec.len();
    let shift = k0.rem_euclid(n as isize) as usize;
    let mut bins = spec.bins.clone();
    bins.rotate_right(shift);
    QSpectrum { bins, df: spec.df }
}

/// Circular convolution `(g * f)[n] = sum_m g[m] f[n - m]` of a complex signal
/// with a real sequence. Its spectrum is `QFT(g) QFT(f)` with `g` on the left.
pub fn convolve_right_real<T: Scalar>(g: &ComplexSignal<T>, f: &[T]) -> Result<ComplexSignal<T>> {
    let n = g.len();
    if f.len() != n {
        return Err(Error::LengthMismatch { left: n, right: f.len() });
    }
    let gs = g.samples();
    let out = (0..n)
        .map(|t| (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, m| acc + gs[m] * f[(t + n - m) % n]))
        .collect();
    ComplexSignal::new(out, g.dt())
}
