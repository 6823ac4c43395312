//! Short-time quaternion Fourier transform and its modulus spectrogram.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qft::{signed_index, QftPlan};
use crate::scalar::Scalar;
use crate::signal::QuaternionSamples;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    Rect,
    /// Periodic Hann, `0.5 - 0.5 cos(2 pi n / L)`.
    #[default]
    Hann,
}

impl Window {
    pub fn coefficients<T: Scalar>(self, len: usize) -> Vec<T> {
        match self {
            Self::Rect => vec![T::one(); len],
            Self::Hann => (0..len)
                .map(|n| {
                    let x = T::TAU() * T::from_usize_lossy(n) / T::from_usize_lossy(len);
                    T::half() - T::half() * x.cos()
                })
                .collect(),
        }
    }
}

impl std::str::FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rect" => Ok(Self::Rect),
            "hann" => Ok(Self::Hann),
            other => Err(Error::InvalidParameter(format!("unknown window {other:?} (rect|hann)"))),
        }
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Rect => "rect",
            Self::Hann => "hann",
        })
    }
}

/// Frame-major matrix of quaternion moduli `mags[frame][bin]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram<T> {
    pub mags: Vec<Vec<T>>,
    pub frame_hop: usize,
    pub window_len: usize,
    /// Bin spacing in Hz.
    pub df: T,
    /// Time between frames.
    pub dt_frame: T,
    /// Sample interval of the source signal.
    pub dt: T,
    /// `true` when only bins `0..=L/2` are kept; otherwise all `L` bins in natural order.
    pub one_sided: bool,
}

impl<T: Scalar> Spectrogram<T> {
    pub fn n_frames(&self) -> usize {
        self.mags.len()
    }

    pub fn n_bins(&self) -> usize {
        self.mags.first().map_or(0, Vec::len)
    }

    /// Time of the frame center.
    pub fn frame_time(&self, frame: usize) -> T {
        T::from_usize_lossy(frame) * self.dt_frame + T::from_usize_lossy(self.window_len) * self.dt * T::half()
    }

    pub fn bin_frequency(&self, k: usize) -> T {
        if self.one_sided {
            T::from_usize_lossy(k) * self.df
        } else {
            T::from_isize(signed_index(k, self.window_len)).unwrap_or_else(T::nan) * self.df
        }
    }

    pub fn frequencies(&self) -> Vec<T> {
        (0..self.n_bins()).map(|k| self.bin_frequency(k)).collect()
    }

    pub fn frame_times(&self) -> Vec<T> {
        (0..self.n_frames()).map(|f| self.frame_time(f)).collect()
    }
}

/// Spectrogram keeping the non-negative frequency bins `0..=L/2`.
pub fn stqft<T: Scalar, S: QuaternionSamples<T> + ?Sized>(
    s: &S,
    window_len: usize,
    hop: usize,
    window: Window,
) -> Result<Spectrogram<T>> {
    compute(s, window_len, hop, window, true)
}

/// Spectrogram with all `L` bins per frame.
pub fn stqft_full<T: Scalar, S: QuaternionSamples<T> + ?Sized>(
    s: &S,
    window_len: usize,
    hop: usize,
    window: Window,
) -> Result<Spectrogram<T>> {
    compute(s, window_len, hop, window, false)
}

fn compute<T: Scalar, S: QuaternionSamples<T> + ?Sized>(
    s: &S,
    window_len: usize,
    hop: usize,
    window: Window,
    one_sided: bool,
) -> Result<Spectrogram<T>> {
    let samples = s.quaternion_samples();
    let n = samples.len();
    if window_len == 0 || window_len > n {
        return Err(Error::InvalidParameter(format!(
            "window length {window_len} must be between 1 and the signal length {n}"
        )));
    }
    if hop == 0 {
        return Err(Error::InvalidParameter("hop must be at least 1".into()));
    }
    let dt = s.sample_interval();
    let frames = (n - window_len) / hop + 1;
    let keep = if one_sided { window_len / 2 + 1 } else { window_len };
    let w = window.coefficients::<T>(window_len);
    let plan = QftPlan::new(window_len);
    let mags = (0..frames)
        .into_par_iter()
        .map(|f| {
            let start = f * hop;
            let frame: Vec<_> = samples[start..start + window_len].iter().zip(&w).map(|(&q, &c)| q * c).collect();
            plan.forward_samples(&frame)[..keep].iter().map(|b| b.modulus()).collect()
        })
        .collect();
    Ok(Spectrogram {
        mags,
        frame_hop: hop,
        window_len,
        df: T::one() / (T::from_usize_lossy(window_len) * dt),
        dt_frame: T::from_usize_lossy(hop) * dt,
        dt,
        one_sided,
    })
}

/// Frequency of the largest bin in every frame; ties go to the lower bin, so
/// an all-zero frame reports bin 0.
pub fn ridge<T: Scalar>(spec: &Spectrogram<T>) -> Vec<T> {
    spec.mags
        .iter()
        .map(|row| {
            let mut best = 0;
            for (k, &m) in row.iter().enumerate() {
                if m > row[best] {
                    best = k;
                }
            }
            spec.bin_frequency(best)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;
    use crate::signal::{ComplexSignal, QuaternionSignal};
    use num_complex::Complex;
    use std::f64::consts::TAU;

    fn tone(n: usize, k0: f64) -> QuaternionSignal<f64> {
        let s = (0..n).map(|t| Quaternion::exp_j(TAU * k0 * t as f64 / n as f64)).collect();
        QuaternionSignal::new(s, 1.0 / n as f64).unwrap()
    }

    #[test]
    fn stationary_tone_peaks_at_its_bin() {
        let s = tone(512, 40.0);
        let sp = stqft(&s, 64, 64, Window::Rect).unwrap();
        assert_eq!(sp.n_frames(), 8);
        assert_eq!(sp.n_bins(), 33);
        // bin width is 8 cycles per record
        assert!(ridge(&sp).iter().all(|&f| f == 40.0));
    }

    #[test]
    fn frame_count_and_errors() {
        let s = tone(100, 3.0);
        assert_eq!(stqft(&s, 30, 7, Window::Hann).unwrap().n_frames(), (100 - 30) / 7 + 1);
        assert!(stqft(&s, 101, 1, Window::Hann).is_err());
        assert!(stqft(&s, 10, 0, Window::Hann).is_err());
    }

    #[test]
    fn zero_signal_gives_zero_spectrogram() {
        let z = ComplexSignal::<f64>::zeros(256, 1.0).unwrap();
        let sp = stqft(&z, 128, 32, Window::Hann).unwrap();
        assert!(sp.mags.iter().flatten().all(|&m| m == 0.0));
        assert!(ridge(&sp).iter().all(|&f| f == 0.0));
    }

    #[test]
    fn parseval_per_frame() {
        let n = 300;
        let z: Vec<_> = (0..n).map(|t| Complex::new((t as f64 * 0.37).sin(), (t as f64 * 0.11).cos())).collect();
        let z = ComplexSignal::new(z, 0.5).unwrap();
        let (l, hop) = (50, 23);
        let sp = stqft_full(&z, l, hop, Window::Rect).unwrap();
        for (f, row) in sp.mags.iter().enumerate() {
            let spectral: f64 = row.iter().map(|m| m * m).sum::<f64>() / l as f64;
            let direct: f64 = z.samples()[f * hop..f * hop + l].iter().map(|c| c.norm_sqr()).sum();
            assert!((spectral - direct).abs() < 1e-10 * direct);
        }
    }

    #[test]
    fn hann_is_periodic() {
        let w = Window::Hann.coefficients::<f64>(8);
        assert_eq!(w[0], 0.0);
        assert!((w[4] - 1.0).abs() < 1e-15);
        assert!((w[2] - 0.5).abs() < 1e-15);
    }
}
