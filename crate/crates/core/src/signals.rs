//! Test-signal generators: band-limited random baseband, orthocomplex
//! modulation `q = A exp(B j)` and the three phase laws of the worked examples.
//!
//! Records span `t in [0, 1)` with `dt = 1 / N`, so frequencies in Hz are
//! cycles per record.

use num_complex::Complex;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::qft::{frequency_shift, qft_forward, qft_inverse, signed_index, QSpectrum};
use crate::quaternion::{PolarCd, Quaternion};
use crate::scalar::Scalar;
use crate::signal::{ComplexSignal, QuaternionSignal};

/// Identifier of the pseudo-random stream, written to file metadata.
pub const PRNG_ALGORITHM: &str = "xoshiro256++ seeded by splitmix64; uniform (u64>>11)*2^-53 mapped to [-1,1)";

/// Bins below `RELATIVE_FLOOR * max |Z|` count as empty when measuring bandwidth.
pub const RELATIVE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasebandSpec {
    pub n_samples: usize,
    /// Highest retained frequency in cycles per record.
    pub max_cycles: usize,
    pub seed: u64,
}

impl BasebandSpec {
    pub fn validate(&self) -> Result<()> {
        if self.max_cycles == 0 || 2 * self.max_cycles >= self.n_samples {
            return Err(Error::InvalidParameter(format!(
                "max_cycles must satisfy 0 < max_cycles < n/2 (got max_cycles={}, n={})",
                self.max_cycles, self.n_samples
            )));
        }
        Ok(())
    }
}

/// Uniform complex white noise with both parts in `[-1, 1)`.
pub fn white_noise<T: Scalar>(n: usize, seed: u64) -> Vec<Complex<T>> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut uniform = move || {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        T::lit(2.0 * u - 1.0)
    };
    (0..n)
        .map(|_| {
            let re = uniform();
            Complex::new(re, uniform())
        })
        .collect()
}

/// Seeded white noise low-passed in the quaternion spectrum: bins with
/// `|k| > max_cycles` are zeroed on both sides, then the `{1, i}` part is kept.
pub fn bandlimited_random<T: Scalar>(spec: &BasebandSpec) -> Result<ComplexSignal<T>> {
    spec.validate()?;
    let n = spec.n_samples;
    let white = ComplexSignal::unit_record(white_noise(n, spec.seed))?;
    let mut z = qft_forward(&white);
    for (k, b) in z.bins_mut().iter_mut().enumerate() {
        if signed_index(k, n).unsigned_abs() > spec.max_cycles {
            *b = Quaternion::zero();
        }
    }
    Ok(qft_inverse(&z).simplex_part())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseKind {
    ConstantFreq,
    StepFreq,
    TriangleSweep,
}

impl std::fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::ConstantFreq => "constant_freq",
            Self::StepFreq => "step_freq",
            Self::TriangleSweep => "triangle_sweep",
        })
    }
}

/// Carrier phase `B(t)`, defined through its instantaneous frequency.
///
/// * constant: `f = nu0`
/// * step: `f = nu1` on `[t1, t2)`, `nu0` elsewhere; the phase stays continuous
/// * triangle: `f = nu0 + alpha * max(0, T - |t - T|)`, the convolution of two
///   boxcars of width `T` centered at `T`; with `alpha = nu0 / T` the sweep
///   reaches `2 nu0` at `t = T`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseLaw<T> {
    pub kind: PhaseKind,
    pub nu0: T,
    pub nu1: T,
    pub alpha: T,
    pub width: T,
    pub t1: T,
    pub t2: T,
    /// Initial phase offset in radians.
    pub theta: T,
}

impl<T: Scalar> PhaseLaw<T> {
    pub fn constant(nu0: T) -> Self {
        Self {
            kind: PhaseKind::ConstantFreq,
            nu0,
            nu1: nu0,
            alpha: T::zero(),
            width: T::zero(),
            t1: T::zero(),
            t2: T::zero(),
            theta: T::zero(),
        }
    }

    pub fn step(nu0: T, nu1: T, t1: T, t2: T) -> Self {
        Self { kind: PhaseKind::StepFreq, nu1, t1, t2, ..Self::constant(nu0) }
    }

    pub fn triangle(nu0: T, alpha: T, width: T) -> Self {
        Self { kind: PhaseKind::TriangleSweep, alpha, width, ..Self::constant(nu0) }
    }

    pub fn with_theta(self, theta: T) -> Self {
        Self { theta, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.nu0.is_finite() && self.nu0 > T::zero()) {
            return bad(format!("nu0 must be positive, got {}", self.nu0));
        }
        match self.kind {
            PhaseKind::ConstantFreq => Ok(()),
            PhaseKind::StepFreq => {
                if !(self.nu1.is_finite() && self.nu1 > T::zero()) {
                    bad(format!("nu1 must be positive, got {}", self.nu1))
                } else if !(T::zero() <= self.t1 && self.t1 < self.t2) {
                    bad(format!("switch times must satisfy 0 <= t1 < t2, got {} and {}", self.t1, self.t2))
                } else {
                    Ok(())
                }
            }
            PhaseKind::TriangleSweep => {
                if !(self.width.is_finite() && self.width > T::zero()) {
                    bad(format!("sweep width T must be positive, got {}", self.width))
                } else if !self.alpha.is_finite() {
                    bad(format!("alpha must be finite, got {}", self.alpha))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Instantaneous carrier frequency in Hz.
    pub fn frequency(&self, t: T) -> T {
        match self.kind {
            PhaseKind::ConstantFreq => self.nu0,
            PhaseKind::StepFreq => {
                if t >= self.t1 && t < self.t2 {
                    self.nu1
                } else {
                    self.nu0
                }
            }
            PhaseKind::TriangleSweep => {
                let w = self.width;
                self.nu0 + self.alpha * (w - (t - w).abs()).max(T::zero())
            }
        }
    }

    /// `B(t) = theta + 2 pi * integral_0^t f`.
    pub fn phase(&self, t: T) -> T {
        let cycles = match self.kind {
            PhaseKind::ConstantFreq => self.nu0 * t,
            PhaseKind::StepFreq => {
                let inside = (t.min(self.t2) - self.t1).max(T::zero());
                self.nu0 * t + (self.nu1 - self.nu0) * inside
            }
            PhaseKind::TriangleSweep => self.nu0 * t + self.alpha * triangle_integral(t, self.width),
        };
        self.theta + T::TAU() * cycles
    }
}

/// `integral_0^t max(0, w - |s - w|) ds`.
fn triangle_integral<T: Scalar>(t: T, w: T) -> T {
    let h = T::half();
    if t <= T::zero() {
        T::zero()
    } else if t <= w {
        h * t * t
    } else if t <= w + w {
        let r = w + w - t;
        w * w - h * r * r
    } else {
        w * w
    }
}

/// `B(n dt)` for `n = 0..n`.
pub fn phase_samples<T: Scalar>(law: &PhaseLaw<T>, n: usize, dt: T) -> Vec<T> {
    (0..n).map(|i| law.phase(T::from_usize_lossy(i) * dt)).collect()
}

/// `q = z + o j` split into its Cayley-Dickson parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Modulated<T> {
    pub q: QuaternionSignal<T>,
    pub z: ComplexSignal<T>,
    pub o: ComplexSignal<T>,
}

impl<T: Scalar> Modulated<T> {
    fn from_quaternion(q: QuaternionSignal<T>) -> Result<Self> {
        let z = q.simplex_part();
        let o = ComplexSignal::new(q.samples().iter().map(|s| Complex::new(s.y, s.z)).collect(), q.dt())?;
        Ok(Self { q, z, o })
    }
}

/// Time-domain orthocomplex modulation `q[n] = A[n] exp(B[n] j)`.
pub fn modulate<T: Scalar>(a: &ComplexSignal<T>, b: &[T]) -> Result<Modulated<T>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    let samples = a
        .samples()
        .iter()
        .zip(b)
        .map(|(&a, &b)| Quaternion::from_polar_cd(PolarCd { a, b: Complex::new(b, T::zero()) }))
        .collect();
    Modulated::from_quaternion(QuaternionSignal::new(samples, a.dt())?)
}

/// Highest occupied frequency `max |k| df` over bins above the relative floor.
pub fn occupied_bandwidth<T: Scalar>(spec: &QSpectrum<T>) -> T {
    let floor = spec.max_modulus() * T::lit(RELATIVE_FLOOR);
    let n = spec.len();
    spec.bins()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.modulus() > floor)
        .map(|(k, _)| signed_index(k, n).unsigned_abs())
        .max()
        .map_or(T::zero(), |k| T::from_usize_lossy(k) * spec.df())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralModulation<T> {
    pub modulated: Modulated<T>,
    /// Bandwidth of the baseband in bins.
    pub band_edge: usize,
    /// Set when `k0 <= band_edge`: the result is not guaranteed one-sided.
    pub separation_warning: Option<String>,
}

/// Modulation by a spectral shift of `k0` bins, equivalent to
/// `modulate(A, 2 pi k0 n / N)`.
pub fn modulate_spectral<T: Scalar>(a: &ComplexSignal<T>, k0: isize) -> Result<SpectralModulation<T>> {
    let spec = qft_forward(a);
    let band_edge = (occupied_bandwidth(&spec) / spec.df()).round().to_usize().unwrap_or(0);
    let separation_warning = (k0 <= band_edge as isize)
        .then(|| format!("carrier shift of {k0} bins does not exceed the baseband edge of {band_edge} bins"));
    let q = qft_inverse(&frequency_shift(&spec, k0));
    Ok(SpectralModulation { modulated: Modulated::from_quaternion(q)?, band_edge, separation_warning })
}

/// Frequency-separation diagnostics for a baseband spectrum and a carrier law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationReport<T> {
    /// Highest baseband frequency.
    pub nu_m: T,
    pub carrier_min: T,
    pub carrier_max: T,
    /// `carrier_min - nu_m`.
    pub margin: T,
    /// `1 / (2 dt) - (carrier_max + nu_m)`.
    pub nyquist_headroom: T,
    /// Positive margin and headroom: the modulated spectrum is one-sided.
    pub one_sided: bool,
}

pub fn separation_check<T: Scalar>(baseband: &QSpectrum<T>, law: &PhaseLaw<T>) -> SeparationReport<T> {
    let n = baseband.len();
    let dt = baseband.dt();
    let nu_m = occupied_bandwidth(baseband);
    let freqs = (0..n).map(|i| law.frequency(T::from_usize_lossy(i) * dt));
    let (carrier_min, carrier_max) =
        freqs.fold((T::infinity(), T::neg_infinity()), |(lo, hi), f| (lo.min(f), hi.max(f)));
    let margin = carrier_min - nu_m;
    let nyquist_headroom = T::half() / dt - (carrier_max + nu_m);
    SeparationReport {
        nu_m,
        carrier_min,
        carrier_max,
        margin,
        nyquist_headroom,
        one_sided: margin > T::zero() && nyquist_headroom > T::zero(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    /// Constant carrier, built by a spectral shift.
    One,
    /// Carrier frequency doubling on `[0.25, 0.75)`.
    Two,
    /// Triangular sweep from `nu0` to `2 nu0` and back.
    Three,
}

impl Example {
    pub fn number(self) -> u8 {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            _ => Err(Error::InvalidParameter(format!("unknown example {n} (expected 1, 2 or 3)"))),
        }
    }
}

/// Full parameter set for one worked example.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExampleConfig<T> {
    pub example: Example,
    pub baseband: BasebandSpec,
    pub law: PhaseLaw<T>,
}

impl<T: Scalar> ExampleConfig<T> {
    /// Defaults: band edge 16 cycles; carriers at 4x, 12.5x and 25x the band
    /// edge. Example 3 uses `N = 4096` because its `2 nu0 = 800` cycle apex
    /// does not fit under the Nyquist limit of a 1024-sample record.
    pub fn defaults(example: Example, seed: u64) -> Self {
        let edge = 16usize;
        let e = T::from_usize_lossy(edge);
        let (n, law) = match example {
            Example::One => (1024, PhaseLaw::constant(T::lit(4.0) * e)),
            Example::Two => {
                let nu0 = T::lit(12.5) * e;
                (1024, PhaseLaw::step(nu0, nu0 * T::two(), T::lit(0.25), T::lit(0.75)))
            }
            Example::Three => {
                let nu0 = T::lit(25.0) * e;
                let width = T::half();
                (4096, PhaseLaw::triangle(nu0, nu0 / width, width))
            }
        };
        Self { example, baseband: BasebandSpec { n_samples: n, max_cycles: edge, seed }, law }
    }

    pub fn dt(&self) -> T {
        T::one() / T::from_usize_lossy(self.baseband.n_samples)
    }
}

/// Everything produced for one example.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated<T> {
    pub baseband: ComplexSignal<T>,
    pub phase: Vec<T>,
    pub modulated: Modulated<T>,
    pub separation: SeparationReport<T>,
}

/// Builds an example. Example 1 is modulated by a spectral shift and needs
/// an integer carrier in cycles per record; the others are modulated in time.
pub fn generate<T: Scalar>(cfg: &ExampleConfig<T>) -> Result<Generated<T>> {
    cfg.law.validate()?;
    let baseband = bandlimited_random::<T>(&cfg.baseband)?;
    let n = baseband.len();
    let phase = phase_samples(&cfg.law, n, baseband.dt());
    let separation = separation_check(&qft_forward(&baseband), &cfg.law);
    let modulated = match cfg.example {
        Example::One => {
            let k0 = cfg.law.nu0 * T::from_usize_lossy(n) * baseband.dt();
            if (k0 - k0.round()).abs() > T::lit(1e-9) || cfg.law.theta != T::zero() {
                return Err(Error::InvalidParameter(format!(
                    "example 1 is built by a spectral shift and needs an integer carrier with zero offset, got nu0 = {}",
                    cfg.law.nu0
                )));
            }
            modulate_spectral(&baseband, k0.round().to_isize().unwrap_or(0))?.modulated
        }
        Example::Two | Example::Three => modulate(&baseband, &phase)?,
    };
    Ok(Generated { baseband, phase, modulated, separation })
}
