//! Uniformly sampled complex and quaternion time series.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

fn check_dt<T: Scalar>(dt: T) -> Result<()> {
    if !(dt.is_finite() && dt > T::zero()) {
        return Err(Error::InvalidSignal(format!("sample interval must be positive and finite, got {dt}")));
    }
    Ok(())
}

/// Complex (i-plane) samples `z[n] = z_r[n] + i z_i[n]` taken every `dt` seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal<T> {
    samples: Vec<Complex<T>>,
    dt: T,
}

impl<T: Scalar> ComplexSignal<T> {
    pub fn new(samples: Vec<Complex<T>>, dt: T) -> Result<Self> {
        check_dt(dt)?;
        if samples.is_empty() {
            return Err(Error::InvalidSignal("signal has no samples".into()));
        }
        if let Some(n) = samples.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidSignal(format!("sample {n} is not finite")));
        }
        Ok(Self { samples, dt })
    }

    /// Record normalized to `t in [0, 1)`: `dt = 1 / N`.
    pub fn unit_record(samples: Vec<Complex<T>>) -> Result<Self> {
        let dt = T::one() / T::from_usize_lossy(samples.len().max(1));
        Self::new(samples, dt)
    }

    pub fn from_real(values: &[T], dt: T) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex::new(v, T::zero())).collect(), dt)
    }

    pub fn zeros(n: usize, dt: T) -> Result<Self> {
        Self::new(vec![Complex::new(T::zero(), T::zero()); n], dt)
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex<T>> {
        self.samples
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, n: usize) -> T {
        T::from_usize_lossy(n) * self.dt
    }

    pub fn conj(&self) -> Self {
        Self { samples: self.samples.iter().map(|c| c.conj()).collect(), dt: self.dt }
    }

    pub fn scale(&self, s: T) -> Self {
        Self { samples: self.samples.iter().map(|&c| c * s).collect(), dt: self.dt }
    }

    pub fn to_quaternion(&self) -> QuaternionSignal<T> {
        QuaternionSignal { samples: self.samples.iter().map(|&c| Quaternion::from_complex(c)).collect(), dt: self.dt }
    }

    pub fn energy(&self) -> T {
        self.samples.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Quaternion samples taken every `dt` seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionSignal<T> {
    samples: Vec<Quaternion<T>>,
    dt: T,
}

impl<T: Scalar> QuaternionSignal<T> {
    pub fn new(samples: Vec<Quaternion<T>>, dt: T) -> Result<Self> {
        check_dt(dt)?;
        if samples.is_empty() {
            return Err(Error::InvalidSignal("signal has no samples".into()));
        }
        if let Some(n) = samples.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidSignal(format!("sample {n} is not finite")));
        }
        Ok(Self { samples, dt })
    }

    pub fn samples(&self) -> &[Quaternion<T>] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Quaternion<T>> {
        self.samples
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, n: usize) -> T {
        T::from_usize_lossy(n) * self.dt
    }

    /// First Cayley-Dickson component of every sample.
    pub fn simplex_part(&self) -> ComplexSignal<T> {
        ComplexSignal { samples: self.samples.iter().map(|q| q.simplex()).collect(), dt: self.dt }
    }

    pub fn energy(&self) -> T {
        self.samples.iter().map(|q| q.norm()).sum()
    }

    pub(crate) fn from_parts_unchecked(samples: Vec<Quaternion<T>>, dt: T) -> Self {
        Self { samples, dt }
    }
}

impl<T: Scalar> From<&ComplexSignal<T>> for QuaternionSignal<T> {
    fn from(s: &ComplexSignal<T>) -> Self {
        s.to_quaternion()
    }
}

/// Anything the quaternion Fourier transform can consume.
pub trait QuaternionSamples<T: Scalar> {
    fn quaternion_samples(&self) -> Vec<Quaternion<T>>;
    fn sample_interval(&self) -> T;
}

impl<T: Scalar> QuaternionSamples<T> for ComplexSignal<T> {
    fn quaternion_samples(&self) -> Vec<Quaternion<T>> {
        self.samples.iter().map(|&c| Quaternion::from_complex(c)).collect()
    }

    fn sample_interval(&self) -> T {
        self.dt
    }
}

impl<T: Scalar> QuaternionSamples<T> for QuaternionSignal<T> {
    fn quaternion_samples(&self) -> Vec<Quaternion<T>> {
        self.samples.clone()
    }

    fn sample_interval(&self) -> T {
        self.dt
    }
}

/// Root-mean-square of the sample-wise difference between two complex sequences.
pub fn rms_diff<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    let n = a.len().max(1);
    let s: T = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    (s / T::from_usize_lossy(n)).sqrt()
}

/// Root-mean-square of a complex sequence.
pub fn rms<T: Scalar>(a: &[Complex<T>]) -> T {
    let n = a.len().max(1);
    let s: T = a.iter().map(|x| x.norm_sqr()).sum();
    (s / T::from_usize_lossy(n)).sqrt()
}
