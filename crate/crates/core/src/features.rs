//! Instantaneous complex amplitude, phase, frequency and osculating-plane
//! normal of a hypercomplex signal `z_hat = rho exp(phi u j)`.
//!
//! Per sample the polar Cayley-Dickson form only determines the phase modulo
//! `pi` (the pair `(A, B)` and `(-A, B + pi)` describe the same quaternion).
//! Extraction therefore works in three passes:
//!
//! 1. the axis `u` of the complex phase is estimated at well-conditioned
//!    samples and sign-aligned along the record (for a real phase `u = 1`);
//! 2. with `u` fixed, each sample gives a phase on the `(-pi/2, pi/2]` branch
//!    and an amplitude `+-A`, computed without dividing by `cos |B|`;
//! 3. the sign of `A` is chosen to keep the amplitude continuous, which lifts
//!    the phase to a full `2 pi` period, and the phase is then unwrapped.

use std::fmt;
use std::ops::BitOr;

use num_complex::Complex;

use crate::analytic::HyperRep;
use crate::error::{Error, Result};
use crate::quaternion::{exp_degenerate, Quaternion};
use crate::scalar::Scalar;

/// Per-sample status bits written to the `mask` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct SampleFlags(u8);

impl SampleFlags {
    pub const NONE: Self = Self(0);
    /// `q0^2 + q1^2` is negligible against `|q|^2`: the sample sits on the
    /// `|B| = pi/2` branch point and its phase axis was taken from neighbors.
    pub const POLAR_DEGENERATE: Self = Self(1);
    /// The amplitude vanished; `rho` and `phi` were interpolated.
    pub const INTERPOLATED: Self = Self(2);
    /// The amplitude vanished over a run too long to bridge; values are NaN.
    pub const GAP: Self = Self(4);

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn from_bits(bits: u8) -> Self {
        Self(bits & 7)
    }

    pub fn contains(self, other: Self) -> bool {
        self.0 & other.0 == other.0 && other.0 != 0
    }

    pub fn is_clean(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, other: Self) {
        self.0 |= other.0;
    }
}

impl BitOr for SampleFlags {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        Self(self.0 | rhs.0)
    }
}

impl fmt::Display for SampleFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which vector [`osculating_normal`] returns for the curve `r = (Re rho, Im rho, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OsculatingMode {
    /// `r' x r''`, normal to the osculating plane.
    #[default]
    Frenet,
    /// `r x r'`, the product as literally written for the envelope vector.
    Literal,
}

impl std::str::FromStr for OsculatingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frenet" => Ok(Self::Frenet),
            "literal" => Ok(Self::Literal),
            other => Err(Error::InvalidParameter(format!("unknown osculating mode {other:?} (frenet|literal)"))),
        }
    }
}

impl fmt::Display for OsculatingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Frenet => "frenet",
            Self::Literal => "literal",
        })
    }
}

/// How the phase is differentiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Derivative {
    /// Second-order central differences, second-order one-sided at the ends.
    #[default]
    Central,
    /// Least-squares slope over `2 * half_width + 1` samples (window clipped at the ends).
    SavitzkyGolay { half_width: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureOptions<T> {
    pub mode: OsculatingMode,
    pub derivative: Derivative,
    /// Relative threshold on `(q0^2 + q1^2) / |q|^2` for [`SampleFlags::POLAR_DEGENERATE`].
    pub degenerate_eps: T,
    /// Samples with `|q|^2 <= vanish_eps * max |q|^2` carry no phase.
    pub vanish_eps: T,
    /// Vanishing runs shorter than this are interpolated, longer ones become gaps.
    pub max_interp_run: usize,
}

impl<T: Scalar> Default for FeatureOptions<T> {
    fn default() -> Self {
        Self {
            mode: OsculatingMode::Frenet,
            derivative: Derivative::Central,
            degenerate_eps: T::lit(1e-12),
            vanish_eps: T::lit(1e-24),
            max_interp_run: 5,
        }
    }
}

/// Instantaneous features, one entry per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct InstFeatures<T> {
    /// Complex envelope.
    pub rho: Vec<Complex<T>>,
    /// Unwrapped phase in radians.
    pub phi: Vec<T>,
    /// Instantaneous frequency in Hz.
    pub freq: Vec<T>,
    /// Osculating normal (unnormalized).
    pub normal: Vec<[T; 3]>,
    /// Unit axis `u` of the complex phase `B = phi u`; `1` for a real phase.
    pub axis: Vec<Complex<T>>,
    pub mask: Vec<SampleFlags>,
    pub dt: T,
}

impl<T: Scalar> InstFeatures<T> {
    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn time(&self, n: usize) -> T {
        T::from_usize_lossy(n) * self.dt
    }

    /// Phase reduced to `(-pi, pi]`.
    pub fn phi_wrapped(&self) -> Vec<T> {
        self.phi.iter().map(|&p| wrap_to_pi(p)).collect()
    }

    /// `rho exp(phi u j)` at sample `n`.
    pub fn reconstruct(&self, n: usize) -> Quaternion<T> {
        let b = self.axis[n] * self.phi[n];
        Quaternion::from_complex(self.rho[n]) * exp_degenerate(b.re, b.im)
    }

    /// Unit osculating normals; `None` where the plane is undefined.
    pub fn unit_normals(&self) -> Vec<Option<[T; 3]>> {
        unit_vectors(&self.normal)
    }
}

/// Reduces an angle to `(-pi, pi]`.
pub fn wrap_to_pi<T: Scalar>(x: T) -> T {
    wrap_period(x, T::TAU())
}

fn wrap_period<T: Scalar>(x: T, period: T) -> T {
    let half = period * T::half();
    let mut r = x - period * (x / period).round();
    if r <= -half {
        r += period;
    } else if r > half {
        r -= period;
    }
    r
}

/// Removes jumps by integer multiples of `period`: each successive difference
/// is brought into `(-period/2, period/2]`. NaN samples are passed through and
/// skipped. Use `period = pi` for phases on the polar branch `[0, pi/2)` and
/// `2 pi` once the amplitude sign has been resolved.
pub fn unwrap<T: Scalar>(phase: &[T], period: T) -> Vec<T> {
    let mut out = Vec::with_capacity(phase.len());
    let mut last: Option<(T, T)> = None; // (raw, unwrapped)
    for &p in phase {
        if p.is_nan() {
            out.push(p);
            continue;
        }
        let u = match last {
            None => p,
            Some((raw, un)) => un + wrap_period(p - raw, period),
        };
        last = Some((p, u));
        out.push(u);
    }
    out
}

/// First derivative by second-order finite differences.
pub fn derivative<T: Scalar>(x: &[T], dt: T) -> Result<Vec<T>> {
    let n = x.len();
    if n < 3 {
        return Err(Error::TooShort { needed: 3, got: n });
    }
    let h2 = T::two() * dt;
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let mut d = Vec::with_capacity(n);
    d.push((-three * x[0] + four * x[1] - x[2]) / h2);
    for i in 1..n - 1 {
        d.push((x[i + 1] - x[i - 1]) / h2);
    }
    d.push((three * x[n - 1] - four * x[n - 2] + x[n - 3]) / h2);
    Ok(d)
}

/// Second derivative: central interior, second-order one-sided ends.
pub fn second_derivative<T: Scalar>(x: &[T], dt: T) -> Result<Vec<T>> {
    let n = x.len();
    if n < 4 {
        return Err(Error::TooShort { needed: 4, got: n });
    }
    let h = dt * dt;
    let (two, four, five) = (T::two(), T::lit(4.0), T::lit(5.0));
    let mut d = Vec::with_capacity(n);
    d.push((two * x[0] - five * x[1] + four * x[2] - x[3]) / h);
    for i in 1..n - 1 {
        d.push((x[i + 1] - two * x[i] + x[i - 1]) / h);
    }
    d.push((two * x[n - 1] - five * x[n - 2] + four * x[n - 3] - x[n - 4]) / h);
    Ok(d)
}

/// Least-squares slope over a sliding window.
pub fn smoothed_derivative<T: Scalar>(x: &[T], dt: T, half_width: usize) -> Result<Vec<T>> {
    let n = x.len();
    if n < 3 {
        return Err(Error::TooShort { needed: 3, got: n });
    }
    if half_width == 0 {
        return derivative(x, dt);
    }
    Ok((0..n)
        .map(|i| {
            let lo = i.saturating_sub(half_width);
            let hi = (i + half_width).min(n - 1);
            let m = T::from_usize_lossy(hi - lo + 1);
            let tm = (lo..=hi).map(T::from_usize_lossy).sum::<T>() / m;
            let xm = x[lo..=hi].iter().copied().sum::<T>() / m;
            let (mut num, mut den) = (T::zero(), T::zero());
            for (k, &v) in (lo..=hi).zip(&x[lo..=hi]) {
                let dtk = T::from_usize_lossy(k) - tm;
                num += dtk * (v - xm);
                den += dtk * dtk;
            }
            num / den / dt
        })
        .collect())
}

/// `f = (1 / 2 pi) d phi / dt`.
pub fn inst_frequency<T: Scalar>(phi: &[T], dt: T) -> Result<Vec<T>> {
    inst_frequency_with(phi, dt, Derivative::Central)
}

pub fn inst_frequency_with<T: Scalar>(phi: &[T], dt: T, method: Derivative) -> Result<Vec<T>> {
    let d = match method {
        Derivative::Central => derivative(phi, dt)?,
        Derivative::SavitzkyGolay { half_width } => smoothed_derivative(phi, dt, half_width)?,
    };
    let scale = T::one() / T::TAU();
    Ok(d.into_iter().map(|v| v * scale).collect())
}

fn cross<T: Scalar>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Normal vectors of the curve `r[n] = (Re rho[n], Im rho[n], n dt)`.
pub fn osculating_normal<T: Scalar>(rho: &[Complex<T>], dt: T, mode: OsculatingMode) -> Result<Vec<[T; 3]>> {
    let n = rho.len();
    if n < 5 {
        return Err(Error::TooShort { needed: 5, got: n });
    }
    let re: Vec<T> = rho.iter().map(|c| c.re).collect();
    let im: Vec<T> = rho.iter().map(|c| c.im).collect();
    let (dre, dim) = (derivative(&re, dt)?, derivative(&im, dt)?);
    let velocity = |i: usize| [dre[i], dim[i], T::one()];
    Ok(match mode {
        OsculatingMode::Frenet => {
            let (ddre, ddim) = (second_derivative(&re, dt)?, second_derivative(&im, dt)?);
            (0..n).map(|i| cross(velocity(i), [ddre[i], ddim[i], T::zero()])).collect()
        }
        OsculatingMode::Literal => {
            (0..n).map(|i| cross([re[i], im[i], T::from_usize_lossy(i) * dt], velocity(i))).collect()
        }
    })
}

/// Normalizes each vector; `None` for zero, tiny or non-finite ones.
pub fn unit_vectors<T: Scalar>(v: &[[T; 3]]) -> Vec<Option<[T; 3]>> {
    let scale = v
        .iter()
        .filter(|a| a.iter().all(|x| x.is_finite()))
        .map(|a| a.iter().map(|x| x.abs()).fold(T::zero(), T::max))
        .fold(T::zero(), T::max);
    let floor = scale * T::epsilon() * T::lit(64.0);
    v.iter()
        .map(|a| {
            let m = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
            (m.is_finite() && m > floor && m > T::zero()).then(|| [a[0] / m, a[1] / m, a[2] / m])
        })
        .collect()
}

/// Full feature extraction with default options.
pub fn extract<T: Scalar>(h: &HyperRep<T>) -> Result<InstFeatures<T>> {
    extract_with(h, &FeatureOptions::default())
}

pub fn extract_with<T: Scalar>(h: &HyperRep<T>, opts: &FeatureOptions<T>) -> Result<InstFeatures<T>> {
    let q = h.samples();
    let n = q.len();
    if n < 5 {
        return Err(Error::TooShort { needed: 5, got: n });
    }
    let dt = h.dt();
    let energy: Vec<T> = q.iter().map(|s| s.norm()).collect();
    let max_e = energy.iter().copied().fold(T::zero(), T::max);
    if max_e == T::zero() {
        return Err(Error::DegenerateEverywhere);
    }
    let vanishing: Vec<bool> = energy.iter().map(|&e| e <= opts.vanish_eps * max_e).collect();
    if vanishing.iter().all(|&v| v) {
        return Err(Error::DegenerateEverywhere);
    }

    let mut mask = vec![SampleFlags::NONE; n];
    for i in 0..n {
        let z1 = q[i].w * q[i].w + q[i].x * q[i].x;
        if !vanishing[i] && z1 < opts.degenerate_eps * energy[i] {
            mask[i].insert(SampleFlags::POLAR_DEGENERATE);
        }
    }

    let axis = phase_axes(q, &energy, &vanishing);

    // Branch-local phase and signed amplitude; the sign per sample is then
    // chosen globally.
    let live: Vec<usize> = (0..n).filter(|&i| !vanishing[i]).collect();
    let branch: Vec<(Complex<T>, T)> = live
        .iter()
        .map(|&i| {
            let cd = q[i].cayley_dickson();
            let z1 = cd.z1;
            let w2 = cd.z2 * axis[i].conj();
            let beta = T::half() * (T::two() * (w2 * z1.conj()).re).atan2(z1.norm_sqr() - w2.norm_sqr());
            let (s, c) = beta.sin_cos();
            (z1 * c + w2 * s, beta)
        })
        .collect();
    let signs = resolve_signs(&branch);
    let mut rho = vec![Complex::new(T::nan(), T::nan()); n];
    let mut wrapped = vec![T::nan(); n];
    for ((&i, &(a, beta)), &flip) in live.iter().zip(&branch).zip(&signs) {
        (rho[i], wrapped[i]) = if flip { (-a, wrap_to_pi(beta + T::PI())) } else { (a, beta) };
    }
    let mut phi = unwrap(&wrapped, T::TAU());

    bridge_vanishing_runs(&vanishing, opts.max_interp_run, &mut rho, &mut phi, &mut mask);

    let freq = inst_frequency_with(&phi, dt, opts.derivative)?;
    let normal = osculating_normal(&rho, dt, opts.mode)?;
    Ok(InstFeatures { rho, phi, freq, normal, axis, mask, dt })
}

/// Picks the sign of each branch amplitude by minimising, over the whole
/// record, the normalised amplitude jumps plus the squared wrapped phase
/// curvature. Alternating sign patterns that keep the phase smooth modulo
/// pi are rejected by the amplitude term. The amplitude term is bounded by
/// 2 per step, so the curvature weight of 4 keeps a single slip from ever
/// paying off, even at the record ends or where the envelope passes zero.
/// The first sample keeps its principal branch.
fn resolve_signs<T: Scalar>(branch: &[(Complex<T>, T)]) -> Vec<bool> {
    let m = branch.len();
    if m < 2 {
        return vec![false; m];
    }
    let cand = |k: usize, s: usize| {
        let (a, beta) = branch[k];
        if s == 1 {
            (-a, beta + T::PI())
        } else {
            (a, beta)
        }
    };
    let tiny = T::min_positive_value();
    let amp = |k: usize, sp: usize, s: usize| {
        let (a, _) = cand(k, s);
        let (b, _) = cand(k - 1, sp);
        (a - b).norm_sqr() / (a.norm_sqr() + b.norm_sqr() + tiny)
    };
    let curv = |k: usize, s2: usize, s1: usize, s0: usize| {
        let c = wrap_to_pi(cand(k, s0).1 - T::two() * cand(k - 1, s1).1 + cand(k - 2, s2).1) / T::PI();
        T::lit(4.0) * c * c
    };

    // state = (sign at k-1, sign at k), encoded as 2 * prev + cur
    let inf = T::infinity();
    let mut cost = [inf; 4];
    for (s, c) in cost.iter_mut().take(2).enumerate() {
        *c = amp(1, 0, s);
    }
    let mut back: Vec<[usize; 4]> = Vec::with_capacity(m);
    back.push([0; 4]);
    back.push([0; 4]);
    for k in 2..m {
        let mut next = [inf; 4];
        let mut from = [0usize; 4];
        for state in 0..4 {
            let (s1, s0) = (state >> 1, state & 1);
            for s2 in 0..2 {
                let prev = 2 * s2 + s1;
                let c = cost[prev] + amp(k, s1, s0) + curv(k, s2, s1, s0);
                if c < next[state] {
                    next[state] = c;
                    from[state] = prev;
                }
            }
        }
        cost = next;
        back.push(from);
    }
    let mut state = (0..4).fold(0, |best, s| if cost[s] < cost[best] { s } else { best });
    let mut signs = vec![false; m];
    for k in (1..m).rev() {
        signs[k] = state & 1 == 1;
        if k >= 2 {
            state = back[k][state];
        } else {
            signs[0] = state >> 1 == 1;
        }
    }
    signs
}

/// Estimates the unit axis of the complex phase per sample.
fn phase_axes<T: Scalar>(q: &[Quaternion<T>], energy: &[T], vanishing: &[bool]) -> Vec<Complex<T>> {
    // ratio bound keeping |B| away from 0 and pi/2, where the axis is ill-conditioned
    let cond = T::lit(1e-6);
    let n = q.len();
    let mut raw: Vec<Option<Complex<T>>> = vec![None; n];
    let mut prev: Option<Complex<T>> = None;
    for i in 0..n {
        if vanishing[i] {
            continue;
        }
        let cd = q[i].cayley_dickson();
        let (r1, r2) = (cd.z1.norm_sqr(), cd.z2.norm_sqr());
        if r1 < cond * energy[i] || r2 < cond * energy[i] {
            continue;
        }
        let p = cd.z2 * cd.z1.conj();
        let mut u = p / p.norm();
        let reference = prev.unwrap_or(Complex::new(T::one(), T::zero()));
        if (u * reference.conj()).re < T::zero() {
            u = -u;
        }
        prev = Some(u);
        raw[i] = Some(u);
    }
    let first = raw.iter().flatten().next().copied().unwrap_or(Complex::new(T::one(), T::zero()));
    let mut current = first;
    raw.into_iter()
        .map(|u| {
            if let Some(u) = u {
                current = u;
            }
            current
        })
        .collect()
}

fn bridge_vanishing_runs<T: Scalar>(
    vanishing: &[bool],
    max_run: usize,
    rho: &mut [Complex<T>],
    phi: &mut [T],
    mask: &mut [SampleFlags],
) {
    let n = vanishing.len();
    let mut i = 0;
    while i < n {
        if !vanishing[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && vanishing[i] {
            i += 1;
        }
        let end = i; // exclusive
        let bounded = start > 0 && end < n;
        if bounded && end - start < max_run {
            let (l, r) = (start - 1, end);
            let span = T::from_usize_lossy(r - l);
            for k in start..end {
                let f = T::from_usize_lossy(k - l) / span;
                rho[k] = rho[l] * (T::one() - f) + rho[r] * f;
                phi[k] = phi[l] * (T::one() - f) + phi[r] * f;
                mask[k].insert(SampleFlags::INTERPOLATED);
            }
        } else {
            for k in start..end {
                rho[k] = Complex::new(T::nan(), T::nan());
                phi[k] = T::nan();
                mask[k].insert(SampleFlags::GAP);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::QuaternionSignal;
    use std::f64::consts::{PI, TAU};

    fn rep(samples: Vec<Quaternion<f64>>) -> HyperRep<f64> {
        let dt = 1.0 / samples.len() as f64;
        HyperRep::from_signal(QuaternionSignal::new(samples, dt).unwrap())
    }

    #[test]
    fn orthocomplex_tone() {
        let n = 256;
        let k0 = 37.0;
        let h = rep((0..n).map(|t| Quaternion::exp_j(TAU * k0 * t as f64 / n as f64)).collect());
        let f = extract(&h).unwrap();
        for t in 0..n {
            assert!((f.rho[t] - Complex::new(1.0, 0.0)).norm() < 1e-12);
            assert!(wrap_to_pi(f.phi[t] - TAU * k0 * t as f64 / n as f64).abs() < 1e-12);
            assert!((f.freq[t] - k0).abs() < 1e-9);
            assert!(f.reconstruct(t).max_abs_diff(h.samples()[t]) < 1e-12);
        }
    }

    #[test]
    fn constant_complex_has_zero_phase() {
        let a0 = Complex::new(0.7, -1.3);
        let f = extract(&rep(vec![Quaternion::from_complex(a0); 12])).unwrap();
        assert!(f.rho.iter().all(|&r| (r - a0).norm() < 1e-15));
        assert!(f.phi.iter().all(|&p| p.abs() < 1e-15));
        assert!(f.mask.iter().all(|m| m.is_clean()));
    }

    #[test]
    fn zero_signal_is_degenerate_everywhere() {
        assert!(matches!(extract(&rep(vec![Quaternion::zero(); 8])), Err(Error::DegenerateEverywhere)));
    }

    #[test]
    fn branch_point_samples_are_flagged_but_resolved() {
        // cos(2 pi 64 n / 1024) vanishes at n = 4 mod 8
        let n = 1024;
        let a = Complex::new(0.6, 0.8);
        let samples =
            (0..n).map(|t| Quaternion::from_complex(a) * Quaternion::exp_j(TAU * 64.0 * t as f64 / n as f64)).collect();
        let f = extract(&rep(samples)).unwrap();
        assert!(f.mask[4].contains(SampleFlags::POLAR_DEGENERATE));
        assert!(f.rho.iter().all(|&r| (r - a).norm() < 1e-12));
    }

    #[test]
    fn short_vanishing_runs_are_interpolated_long_ones_gapped() {
        let n = 64;
        let mut samples: Vec<_> = (0..n).map(|t| Quaternion::exp_j(0.2 * t as f64)).collect();
        for s in &mut samples[10..12] {
            *s = Quaternion::zero();
        }
        for s in &mut samples[30..40] {
            *s = Quaternion::zero();
        }
        let f = extract(&rep(samples)).unwrap();
        assert!(f.mask[10].contains(SampleFlags::INTERPOLATED));
        assert!((f.phi[11] - 2.2).abs() < 1e-12);
        assert!(f.mask[35].contains(SampleFlags::GAP));
        assert!(f.phi[35].is_nan());
        assert!(f.mask[20].is_clean());
    }

    #[test]
    fn unwrap_examples() {
        let slow: Vec<f64> = (0..20).map(|i| 0.1 * i as f64).collect();
        assert_eq!(unwrap(&slow, PI), slow);
        // sawtooth with the pi branch period
        let saw: Vec<f64> = (0..40).map(|i| (0.3 * i as f64 + PI / 2.0).rem_euclid(PI) - PI / 2.0).collect();
        let ramp = unwrap(&saw, PI);
        for w in ramp.windows(2) {
            assert!(w[1] > w[0]);
            assert!((w[1] - w[0] - 0.3).abs() < 1e-12);
        }
        let wrapped: Vec<f64> = (0..40).map(|i| wrap_to_pi(1.1 * i as f64)).collect();
        let lifted = unwrap(&wrapped, TAU);
        for (i, &v) in lifted.iter().enumerate() {
            assert!((v - 1.1 * i as f64).abs() < 1e-12);
        }
        let with_nan = unwrap(&[0.0, f64::NAN, 4.0], TAU);
        assert!(with_nan[1].is_nan());
        assert!((with_nan[2] - (4.0 - TAU)).abs() < 1e-15);
    }

    #[test]
    fn frequency_of_linear_and_constant_phase() {
        let dt = 0.01;
        let phi: Vec<f64> = (0..50).map(|i| TAU * 3.5 * i as f64 * dt + 0.4).collect();
        assert!(inst_frequency(&phi, dt).unwrap().iter().all(|f| (f - 3.5).abs() < 1e-9));
        assert!(inst_frequency(&[1.0; 10], dt).unwrap().iter().all(|&f| f == 0.0));
        assert!(matches!(inst_frequency(&[0.0, 1.0], dt), Err(Error::TooShort { .. })));
        let sg = inst_frequency_with(&phi, dt, Derivative::SavitzkyGolay { half_width: 4 }).unwrap();
        assert!(sg.iter().all(|f| (f - 3.5).abs() < 1e-9));
    }

    /// Closed-form Frenet binormal direction of the helix
    /// `(R cos wt, R sin wt, t)`: `r' x r'' = (R w^2 sin wt, -R w^2 cos wt, R^2 w^3)`.
    fn helix_binormal(r: f64, w: f64, t: f64) -> [f64; 3] {
        [r * w * w * (w * t).sin(), -r * w * w * (w * t).cos(), r * r * w * w * w]
    }

    fn angle(a: [f64; 3], b: [f64; 3]) -> f64 {
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let c = cross(a, b);
        (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt().atan2(dot)
    }

    #[test]
    fn helix_binormal_matches_closed_form() {
        let n = 4096;
        let dt = 1.0 / n as f64;
        let (r, w) = (1.0, TAU);
        let rho: Vec<_> = (0..n).map(|i| Complex::from_polar(r, w * i as f64 * dt)).collect();
        let normals = osculating_normal(&rho, dt, OsculatingMode::Frenet).unwrap();
        let worst = (0..n).map(|i| angle(normals[i], helix_binormal(r, w, i as f64 * dt))).fold(0.0, f64::max);
        assert!(worst < 1e-6, "worst angular deviation {worst}");
    }

    #[test]
    fn straight_line_has_undefined_plane() {
        let rho = vec![Complex::new(0.5, 0.25); 16];
        let normals = osculating_normal(&rho, 0.1, OsculatingMode::Frenet).unwrap();
        assert!(normals.iter().all(|v| v.iter().all(|&x| x == 0.0)));
        assert!(unit_vectors(&normals).iter().all(|u| u.is_none()));
        assert!(matches!(osculating_normal(&rho[..4], 0.1, OsculatingMode::Frenet), Err(Error::TooShort { .. })));
    }

    #[test]
    fn literal_mode_is_origin_sensitive() {
        let rho: Vec<_> = (0..32).map(|i| Complex::from_polar(1.0, 0.2 * i as f64)).collect();
        let shifted: Vec<_> = rho.iter().map(|&c| c + Complex::new(3.0, 0.0)).collect();
        let a = osculating_normal(&rho, 0.1, OsculatingMode::Literal).unwrap();
        let b = osculating_normal(&shifted, 0.1, OsculatingMode::Literal).unwrap();
        assert!(angle(a[10], b[10]) > 1e-3);
        let a = osculating_normal(&rho, 0.1, OsculatingMode::Frenet).unwrap();
        let b = osculating_normal(&shifted, 0.1, OsculatingMode::Frenet).unwrap();
        assert!(angle(a[10], b[10]) < 1e-12);
    }
}
