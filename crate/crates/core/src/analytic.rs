//! Hypercomplex representation of a complex signal.
//!
//! `z_hat = z + j H_j[z]` where `H_j` multiplies the quaternion spectrum by
//! `-j sign(nu)` on the left. Its spectrum is `(1 + sign(nu)) Z(nu)`, i.e. one
//! sided, so it is built directly with the discrete mask
//! `(1, 2, ..., 2, [1], 0, ..., 0)` (DC, positive bins, Nyquist, negative bins).

use crate::error::{Error, Result};
use crate::qft::{bin_class, qft_forward, qft_inverse, BinClass, QSpectrum};
use crate::quaternion::{Axis, Quaternion};
use crate::scalar::Scalar;
use crate::signal::{ComplexSignal, QuaternionSignal};

/// Quaternion-valued representation `z_hat` of a complex source signal.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperRep<T> {
    signal: QuaternionSignal<T>,
}

impl<T: Scalar> HyperRep<T> {
    /// Wraps an existing quaternion signal (e.g. one read back from disk).
    pub fn from_signal(signal: QuaternionSignal<T>) -> Self {
        Self { signal }
    }

    pub fn signal(&self) -> &QuaternionSignal<T> {
        &self.signal
    }

    pub fn into_signal(self) -> QuaternionSignal<T> {
        self.signal
    }

    pub fn samples(&self) -> &[Quaternion<T>] {
        self.signal.samples()
    }

    pub fn source_len(&self) -> usize {
        self.signal.len()
    }

    pub fn dt(&self) -> T {
        self.signal.dt()
    }
}

fn require_len<T: Scalar>(z: &ComplexSignal<T>) -> Result<()> {
    if z.len() < 2 {
        return Err(Error::TooShort { needed: 2, got: z.len() });
    }
    Ok(())
}

fn sign_mask(k: usize, n: usize) -> i8 {
    match bin_class(k, n) {
        BinClass::Positive => 1,
        BinClass::Negative => -1,
        BinClass::Dc | BinClass::Nyquist => 0,
    }
}

/// One-sided mask weight for bin `k`.
fn step_mask<T: Scalar>(k: usize, n: usize) -> T {
    match bin_class(k, n) {
        BinClass::Dc | BinClass::Nyquist => T::one(),
        BinClass::Positive => T::two(),
        BinClass::Negative => T::zero(),
    }
}

/// Hilbert transform `IQFT[-j sign(nu) Z(nu)]` of a complex signal, with the
/// multiplier on the left of the spectrum.
///
/// For `z = z_r + i z_i` the result is `H[z_r] - i H[z_i]`, where `H` is the
/// classical Hilbert transform of a real sequence. Multiplying on the right
/// instead would give the conjugate-sign `H[z_r] + i H[z_i]` (see
/// [`perplex`]).
pub fn hilbert_j<T: Scalar>(z: &ComplexSignal<T>) -> Result<ComplexSignal<T>> {
    require_len(z)?;
    let mut spec = qft_forward(z);
    let n = spec.len();
    let minus_j = -Quaternion::j();
    for (k, b) in spec.bins_mut().iter_mut().enumerate() {
        *b = match sign_mask(k, n) {
            1 => minus_j * *b,
            -1 => Quaternion::j() * *b,
            _ => Quaternion::zero(),
        };
    }
    let h = qft_inverse(&spec);
    ComplexSignal::new(h.samples().iter().map(|q| q.simplex()).collect(), z.dt())
}

/// One-sided spectrum of `z`: `m[k] Z[k]` with the discrete unit-step mask.
pub fn one_sided_spectrum<T: Scalar>(z: &ComplexSignal<T>) -> Result<QSpectrum<T>> {
    require_len(z)?;
    let mut spec = qft_forward(z);
    let n = spec.len();
    for (k, b) in spec.bins_mut().iter_mut().enumerate() {
        *b = *b * step_mask::<T>(k, n);
    }
    Ok(spec)
}

/// Hypercomplex representation built in the frequency domain.
pub fn hypercomplex<T: Scalar>(z: &ComplexSignal<T>) -> Result<HyperRep<T>> {
    let spec = one_sided_spectrum(z)?;
    Ok(HyperRep { signal: qft_inverse(&spec) })
}

/// Time-domain cross-check `z + j H_j[z]`; equals [`hypercomplex`] up to rounding.
pub fn hypercomplex_via_hilbert<T: Scalar>(z: &ComplexSignal<T>) -> Result<HyperRep<T>> {
    let h = hilbert_j(z)?;
    let j = Quaternion::j();
    let samples = z
        .samples()
        .iter()
        .zip(h.samples())
        .map(|(&a, &b)| Quaternion::from_complex(a) + j * Quaternion::from_complex(b))
        .collect();
    Ok(HyperRep { signal: QuaternionSignal::new(samples, z.dt())? })
}

/// `(z_hat + (-i z_hat i)) / 2`: the original complex signal.
pub fn simplex<T: Scalar>(h: &HyperRep<T>) -> ComplexSignal<T> {
    let samples = h.samples().iter().map(|&q| ((q + q.involution(Axis::I)) * T::half()).simplex()).collect();
    ComplexSignal::new(samples, h.dt()).expect("finite samples")
}

/// Quadrature companion `o` with `z_hat = z + o j`: the `{j, k}` half
/// `(z_hat - (-i z_hat i)) / 2` right-divided by `j`.
pub fn perplex<T: Scalar>(h: &HyperRep<T>) -> ComplexSignal<T> {
    let minus_j = -Quaternion::j();
    let samples =
        h.samples().iter().map(|&q| (((q - q.involution(Axis::I)) * T::half()) * minus_j).simplex()).collect();
    ComplexSignal::new(samples, h.dt()).expect("finite samples")
}

/// Rebuilds `z + o j` from a simplex/perplex pair.
pub fn recombine<T: Scalar>(z: &ComplexSignal<T>, o: &ComplexSignal<T>) -> Result<HyperRep<T>> {
    if z.len() != o.len() {
        return Err(Error::LengthMismatch { left: z.len(), right: o.len() });
    }
    let samples = z.samples().iter().zip(o.samples()).map(|(&a, &b)| Quaternion::new(a.re, a.im, b.re, b.im)).collect();
    Ok(HyperRep { signal: QuaternionSignal::new(samples, z.dt())? })
}

/// Largest strictly-negative-frequency bin modulus relative to the largest bin.
/// Zero for an exactly one-sided signal; `0` is also returned for a zero signal.
pub fn negative_leakage<T: Scalar>(spec: &QSpectrum<T>) -> T {
    let max = spec.max_modulus();
    if max == T::zero() {
        return T::zero();
    }
    let n = spec.len();
    spec.bins()
        .iter()
        .enumerate()
        .filter(|&(k, _)| bin_class(k, n) == BinClass::Negative)
        .map(|(_, b)| b.modulus())
        .fold(T::zero(), T::max)
        / max
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::rms_diff;
    use num_complex::Complex;
    use std::f64::consts::TAU;

    fn unit(n: usize, f: impl Fn(f64) -> Complex<f64>) -> ComplexSignal<f64> {
        ComplexSignal::unit_record((0..n).map(|t| f(t as f64 / n as f64)).collect()).unwrap()
    }

    #[test]
    fn hilbert_of_cosine_is_sine() {
        let z = unit(64, |t| Complex::new((TAU * t).cos(), 0.0));
        let h = hilbert_j(&z).unwrap();
        let want = unit(64, |t| Complex::new((TAU * t).sin(), 0.0));
        assert!(rms_diff(h.samples(), want.samples()) < 1e-10);
    }

    #[test]
    fn hilbert_of_imaginary_sine_uses_left_ordering() {
        // left multiplication by -j sign(nu) anticommutes with i: H_j[i y] = -i H[y]
        let z = unit(64, |t| Complex::new(0.0, (TAU * t).sin()));
        let h = hilbert_j(&z).unwrap();
        let want = unit(64, |t| Complex::new(0.0, (TAU * t).cos()));
        assert!(rms_diff(h.samples(), want.samples()) < 1e-10);
    }

    #[test]
    fn hilbert_kills_dc() {
        let h = hilbert_j(&unit(10, |_| Complex::new(2.0, -1.0))).unwrap();
        assert!(h.samples().iter().all(|c| c.norm() < 1e-14));
        assert!(matches!(hilbert_j(&unit(1, |_| Complex::new(1.0, 0.0))), Err(Error::TooShort { .. })));
    }

    #[test]
    fn cosine_becomes_orthocomplex_exponential() {
        let n = 32;
        let h = hypercomplex(&unit(n, |t| Complex::new((TAU * t).cos(), 0.0))).unwrap();
        for (t, &q) in h.samples().iter().enumerate() {
            let want = Quaternion::exp_j(TAU * t as f64 / n as f64);
            assert!(q.max_abs_diff(want) < 1e-10);
        }
        let zero = hypercomplex(&ComplexSignal::<f64>::zeros(8, 1.0).unwrap()).unwrap();
        assert!(zero.samples().iter().all(|&q| q == Quaternion::zero()));
    }

    #[test]
    fn simplex_and_perplex_of_constants() {
        let dt = 1.0;
        let q = QuaternionSignal::new(vec![Quaternion::new(1.0, 1.0, 1.0, 1.0); 3], dt).unwrap();
        let h = HyperRep::from_signal(q);
        assert!(simplex(&h).samples().iter().all(|&c| c == Complex::new(1.0, 1.0)));
        let pure =
            HyperRep::from_signal(QuaternionSignal::new(vec![Quaternion::new(0.0, 0.0, 2.0, -1.0); 3], dt).unwrap());
        assert!(simplex(&pure).samples().iter().all(|&c| c == Complex::new(0.0, 0.0)));
        let flat =
            HyperRep::from_signal(QuaternionSignal::new(vec![Quaternion::new(1.0, 1.0, 0.0, 0.0); 3], dt).unwrap());
        assert!(perplex(&flat).samples().iter().all(|&c| c == Complex::new(0.0, 0.0)));
        // o j with o = 2 - i gives 2j - k
        assert!(perplex(&pure).samples().iter().all(|&c| c == Complex::new(2.0, -1.0)));
    }

    #[test]
    fn perplex_of_cosine_is_sine() {
        let h = hypercomplex(&unit(50, |t| Complex::new((TAU * 3.0 * t).cos(), 0.0))).unwrap();
        let want = unit(50, |t| Complex::new((TAU * 3.0 * t).sin(), 0.0));
        assert!(rms_diff(perplex(&h).samples(), want.samples()) < 1e-10);
    }

    #[test]
    fn proper_input_gives_minus_i_copy() {
        let z = unit(40, |t| Complex::from_polar(1.0, TAU * 5.0 * t));
        let o = perplex(&hypercomplex(&z).unwrap());
        let want: Vec<_> = z.samples().iter().map(|&c| c * Complex::new(0.0, -1.0)).collect();
        assert!(rms_diff(o.samples(), &want) < 1e-10);
    }
}
