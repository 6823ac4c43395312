//! Hypercomplex (quaternion) representation of complex-valued signals.
//!
//! A complex signal `z(t)` in the `{1, i}` plane is transformed with a right
//! quaternion Fourier transform whose kernel axis is `j`. Suppressing the
//! negative frequencies gives a quaternion signal `z_hat = z + o j`, whose
//! polar Cayley-Dickson form `rho exp(phi j)` yields a complex envelope, an
//! instantaneous phase and frequency, and the normal of the osculating plane.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below name the common concrete types.
//!
//! ```
//! use hyperan::{analytic, features, ComplexSignal64};
//! use num_complex::Complex;
//!
//! let n = 256;
//! let z: Vec<_> = (0..n)
//!     .map(|t| Complex::new((std::f64::consts::TAU * 20.0 * t as f64 / n as f64).cos(), 0.0))
//!     .collect();
//! let z = ComplexSignal64::unit_record(z).unwrap();
//! let f = features::extract(&analytic::hypercomplex(&z).unwrap()).unwrap();
//! assert!((f.freq[100] - 20.0).abs() < 1e-9);
//! ```

pub mod analytic;
pub mod error;
pub mod features;
pub mod fft;
pub mod io;
pub mod qft;
pub mod quaternion;
pub mod scalar;
pub mod signal;
pub mod signals;
pub mod stqft;
pub mod verify;

pub use analytic::HyperRep;
pub use error::{Error, Result};
pub use features::{InstFeatures, SampleFlags};
pub use qft::QSpectrum;
pub use quaternion::{Axis, Quaternion};
pub use scalar::Scalar;
pub use signal::{ComplexSignal, QuaternionSignal};
pub use stqft::Spectrogram;

pub type Quaternion64 = Quaternion<f64>;
pub type Quaternion32 = Quaternion<f32>;
pub type ComplexSignal64 = ComplexSignal<f64>;
pub type ComplexSignal32 = ComplexSignal<f32>;
pub type QuaternionSignal64 = QuaternionSignal<f64>;
pub type QuaternionSignal32 = QuaternionSignal<f32>;
pub type QSpectrum64 = QSpectrum<f64>;
pub type QSpectrum32 = QSpectrum<f32>;
pub type HyperRep64 = HyperRep<f64>;
pub type InstFeatures64 = InstFeatures<f64>;
pub type Spectrogram64 = Spectrogram<f64>;
