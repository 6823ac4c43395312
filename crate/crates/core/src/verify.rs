//! Self-verification suite: named property checks over every module plus a
//! fast-versus-naive transform benchmark.

use std::fmt;
use std::time::Instant;

use num_complex::Complex;

use crate::analytic::{hypercomplex, negative_leakage, simplex};
use crate::error::Error;
use crate::features::extract;
use crate::qft::{
    check_i_involution_reversal, convolve_right_real, frequency_shift, involution_reversal_deviation, qft_forward,
    qft_forward_naive, qft_inverse, symmetry_components, QSpectrum,
};
use crate::quaternion::{Axis, PolarCd, Quaternion};
use crate::signal::{rms, rms_diff, ComplexSignal, QuaternionSignal};
use crate::signals::{generate, white_noise, Example, ExampleConfig};
use crate::stqft::{stqft_full, Window};

/// Deliberate defects used to show that the suite catches them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Uses `mu q mu` instead of `-mu q mu` in the involution-reversal check.
    InvolutionSign,
}

impl std::str::FromStr for Fault {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "involution-sign" => Ok(Self::InvolutionSign),
            other => Err(Error::InvalidParameter(format!("unknown fault {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Lengths for the naive-oracle sweep.
    pub sizes: Vec<usize>,
    pub fault: Option<Fault>,
    /// Length for the benchmark; `None` skips it.
    pub bench_len: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 1, sizes: (1..=64).collect(), fault: None, bench_len: Some(4096) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} measured={:.3e} tolerance={:.3e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance
        )?;
        if !self.detail.is_empty() {
            write!(f, "  ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Benchmark {
    pub len: usize,
    pub fast_seconds: f64,
    pub naive_seconds: f64,
}

impl Benchmark {
    pub fn speedup(&self) -> f64 {
        self.naive_seconds / self.fast_seconds
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BENCH N={} fast={:.3e}s naive={:.3e}s speedup={:.1}x",
            self.len,
            self.fast_seconds,
            self.naive_seconds,
            self.speedup()
        )
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub checks: Vec<Check>,
    pub benchmark: Option<Benchmark>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &'static str, measured: f64, tolerance: f64, detail: impl Into<String>) -> Check {
    Check { name, passed: measured.is_finite() && measured < tolerance, measured, tolerance, detail: detail.into() }
}

fn random_complex(n: usize, seed: u64) -> ComplexSignal<f64> {
    ComplexSignal::unit_record(white_noise(n, seed)).expect("non-empty")
}

fn random_quaternion(n: usize, seed: u64) -> QuaternionSignal<f64> {
    let a = white_noise::<f64>(n, seed);
    let b = white_noise::<f64>(n, seed ^ 0x9e37_79b9_7f4a_7c15);
    let q = a.iter().zip(&b).map(|(p, r)| Quaternion::new(p.re, p.im, r.re, r.im)).collect();
    QuaternionSignal::new(q, 1.0 / n.max(1) as f64).expect("finite")
}

fn max_bin_diff(a: &QSpectrum<f64>, b: &QSpectrum<f64>) -> f64 {
    a.bins().iter().zip(b.bins()).map(|(x, y)| x.max_abs_diff(*y)).fold(0.0, f64::max)
}

/// Runs every check.
pub fn run(opts: &VerifyOptions) -> Report {
    let seed = opts.seed;
    let mut checks = vec![
        oracle_sweep(&opts.sizes, seed),
        round_trip(seed),
        symmetry(),
        involution_reversal(seed, opts.fault),
        convolution(seed),
        one_sided(seed),
        polar_round_trip(seed),
        polar_degenerate(),
        stqft_parseval(seed),
        stqft_shift(seed),
    ];
    checks.extend(examples(seed));
    let benchmark = opts.bench_len.map(benchmark);
    Report { checks, benchmark }
}

pub fn oracle_sweep(sizes: &[usize], seed: u64) -> Check {
    let mut worst = 0.0f64;
    for &n in sizes.iter().filter(|&&n| n > 0) {
        let z = random_complex(n, seed.wrapping_add(n as u64));
        worst = worst.max(max_bin_diff(&qft_forward(&z), &qft_forward_naive(&z)));
        let q = random_quaternion(n, seed.wrapping_add(1000 + n as u64));
        worst = worst.max(max_bin_diff(&qft_forward(&q), &qft_forward_naive(&q)));
    }
    check("qft_vs_naive_oracle", worst, 1e-10, format!("{} lengths", sizes.len()))
}

pub fn round_trip(seed: u64) -> Check {
    let q = random_quaternion(1024, seed);
    let back = qft_inverse(&qft_forward(&q));
    let num: f64 = q.samples().iter().zip(back.samples()).map(|(a, b)| (*a - *b).norm()).sum();
    let den: f64 = q.samples().iter().map(|a| a.norm()).sum();
    check("qft_round_trip", (num / den).sqrt(), 1e-10, "N=1024 relative RMS")
}

/// Even/odd real/imaginary inputs must leave three of the four components empty.
pub fn symmetry() -> Check {
    let n = 64;
    let t = |k: usize| std::f64::consts::TAU * k as f64 / n as f64;
    type Case = (fn(f64) -> Complex<f64>, usize);
    let cases: [Case; 4] = [
        (|x| Complex::new(x.cos() + 0.3 * (3.0 * x).cos(), 0.0), 0),
        (|x| Complex::new(0.0, x.cos() - 0.2 * (5.0 * x).cos()), 1),
        (|x| Complex::new(x.sin() + 0.5 * (2.0 * x).sin(), 0.0), 2),
        (|x| Complex::new(0.0, (4.0 * x).sin()), 3),
    ];
    let mut worst = 0.0f64;
    for (f, keep) in cases {
        let z = ComplexSignal::unit_record((0..n).map(|k| f(t(k))).collect()).expect("finite");
        let spec = qft_forward(&z);
        let c = symmetry_components(&spec);
        let parts = [&c.re, &c.im_i, &c.im_j, &c.im_k];
        let max = spec.max_modulus();
        for (_, p) in parts.iter().enumerate().filter(|&(i, _)| i != keep) {
            worst = worst.max(p.iter().map(|v| v.abs()).fold(0.0, f64::max) / max);
        }
    }
    check("spectral_symmetry", worst, 1e-12, "excluded components / max bin")
}

pub fn involution_reversal(seed: u64, fault: Option<Fault>) -> Check {
    let mut worst = 0.0f64;
    for s in 0..100u64 {
        let spec = qft_forward(&random_complex(256, seed.wrapping_mul(7919).wrapping_add(s)));
        let dev = match fault {
            None => check_i_involution_reversal(&spec),
            Some(Fault::InvolutionSign) => involution_reversal_deviation(&spec, |q| -q.involution(Axis::I)),
        };
        worst = worst.max(dev / spec.max_modulus());
    }
    check("i_involution_reversal", worst, 1e-10, "100 signals, N=256, relative to max bin")
}

pub fn convolution(seed: u64) -> Check {
    let n = 128;
    let g = random_complex(n, seed.wrapping_add(17));
    let f: Vec<f64> = white_noise::<f64>(n, seed.wrapping_add(18)).iter().map(|c| c.re).collect();
    let fs = ComplexSignal::from_real(&f, g.dt()).expect("finite");
    let (gz, fz) = (qft_forward(&g), qft_forward(&fs));
    let direct = convolve_right_real(&g, &f).expect("equal lengths");
    let spectral = qft_inverse(&gz.product(&fz).expect("equal lengths")).simplex_part();
    let reversed = qft_inverse(&fz.product(&gz).expect("equal lengths")).simplex_part();
    let err = rms_diff(direct.samples(), spectral.samples());
    let control = rms_diff(direct.samples(), reversed.samples()) / rms(direct.samples());
    let mut c = check("convolution_theorem", err, 1e-9, format!("reversed-order relative error {control:.2e}"));
    if control < 1e-3 {
        c.passed = false;
        c.detail = format!("negative control did not fail: reversed-order relative error {control:.2e}");
    }
    c
}

pub fn one_sided(seed: u64) -> Check {
    let mut leak = 0.0f64;
    let mut recovery = 0.0f64;
    for s in 0..100u64 {
        let z = random_complex(128, seed.wrapping_mul(104_729).wrapping_add(s));
        let h = hypercomplex(&z).expect("long enough");
        leak = leak.max(negative_leakage(&qft_forward(h.signal())));
        recovery = recovery.max(rms_diff(simplex(&h).samples(), z.samples()));
    }
    let mut c = check("one_sided_spectrum", leak, 1e-9, format!("simplex recovery {recovery:.2e}"));
    if recovery >= 1e-12 {
        c.passed = false;
        c.detail = format!("simplex recovery error {recovery:.2e} exceeds 1e-12");
    }
    c
}

pub fn polar_round_trip(seed: u64) -> Check {
    let a = white_noise::<f64>(10_000, seed.wrapping_add(31));
    let b = white_noise::<f64>(10_000, seed.wrapping_add(32));
    let mut worst = 0.0f64;
    let mut skipped = 0;
    for (p, r) in a.iter().zip(&b) {
        let q = Quaternion::new(p.re, p.im, r.re, r.im);
        match q.to_polar_cd() {
            Ok(pc) => worst = worst.max(Quaternion::from_polar_cd(pc).max_abs_diff(q)),
            Err(_) => skipped += 1,
        }
    }
    check("polar_cd_round_trip", worst, 1e-12, format!("10000 quaternions, {skipped} degenerate"))
}

pub fn polar_degenerate() -> Check {
    let raised = [Quaternion::new(0.0, 0.0, 1.0, 0.0), Quaternion::new(0.0, 0.0, 0.3, -2.0), Quaternion::zero()]
        .iter()
        .filter(|q| matches!(q.to_polar_cd(), Err(Error::DegeneratePolar)))
        .count();
    let ok = Quaternion::from_polar_cd(PolarCd { a: Complex::new(1.0, 0.0), b: Complex::new(0.0, 0.0) })
        == Quaternion::one();
    check("polar_cd_degenerate_error", (3 - raised) as f64 + if ok { 0.0 } else { 1.0 }, 0.5, "q0 = q1 = 0 must error")
}

/// Rect-window frames satisfy Parseval: `sum |Z|^2 / L = sum |x|^2`.
pub fn stqft_parseval(seed: u64) -> Check {
    let z = random_complex(1000, seed.wrapping_add(41));
    let (l, hop) = (96, 37);
    let worst = match stqft_full(&z, l, hop, Window::Rect) {
        Ok(sp) => sp
            .mags
            .iter()
            .enumerate()
            .map(|(f, row)| {
                let spectral = row.iter().map(|m| m * m).sum::<f64>() / l as f64;
                let direct: f64 = z.samples()[f * hop..f * hop + l].iter().map(|c| c.norm_sqr()).sum();
                (spectral - direct).abs() / direct
            })
            .fold(0.0, f64::max),
        Err(_) => f64::NAN,
    };
    check("stqft_parseval", worst, 1e-10, "rect window, relative per frame")
}

/// Shifting the signal by whole frame bins rotates every frame's moduli.
pub fn stqft_shift(seed: u64) -> Check {
    let n = 1024;
    let (l, hop, bins) = (64, 16, 3);
    let z = random_complex(n, seed.wrapping_add(43));
    let shifted = qft_inverse(&frequency_shift(&qft_forward(&z), (bins * n / l) as isize));
    let worst = match (stqft_full(&z, l, hop, Window::Rect), stqft_full(&shifted, l, hop, Window::Rect)) {
        (Ok(a), Ok(b)) => a
            .mags
            .iter()
            .zip(&b.mags)
            .flat_map(|(ra, rb)| (0..l).map(move |k| (ra[k] - rb[(k + bins) % l]).abs()))
            .fold(0.0, f64::max),
        _ => f64::NAN,
    };
    check("stqft_shift_invariance", worst, 1e-9, "integer-bin shift, rect window")
}

/// Feature recovery on the three worked examples.
pub fn examples(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for ex in [Example::One, Example::Two, Example::Three] {
        let cfg = ExampleConfig::<f64>::defaults(ex, seed);
        let g = match generate(&cfg) {
            Ok(g) => g,
            Err(e) => {
                out.push(Check {
                    name: "example_generation",
                    passed: false,
                    measured: f64::NAN,
                    tolerance: 0.0,
                    detail: e.to_string(),
                });
                continue;
            }
        };
        let features = hypercomplex(&g.modulated.z).and_then(|h| extract(&h));
        let f = match features {
            Ok(f) => f,
            Err(e) => {
                out.push(Check {
                    name: "example_features",
                    passed: false,
                    measured: f64::NAN,
                    tolerance: 0.0,
                    detail: e.to_string(),
                });
                continue;
            }
        };
        let n = f.len();
        match ex {
            Example::One => {
                out.push(check("example1_envelope", rms_diff(&f.rho, g.baseband.samples()), 1e-8, "RMS vs baseband"));
                let offset = f.phi[0] - g.phase[0];
                let resid = (0..n).map(|i| (f.phi[i] - g.phase[i] - offset).abs()).fold(0.0, f64::max);
                out.push(check("example1_phase", resid, 1e-6, "max residual after offset removal (rad)"));
            }
            Example::Two => {
                let t1 = (cfg.law.t1 * n as f64).round() as usize;
                let t2 = (cfg.law.t2 * n as f64).round() as usize;
                let guard = 8;
                let mean = |r: std::ops::Range<usize>| f.freq[r.clone()].iter().sum::<f64>() / r.len() as f64;
                let low = (mean(guard..t1 - guard) + mean(t2 + guard..n - guard)) / 2.0;
                let high = mean(t1 + guard..t2 - guard);
                let err = ((low - cfg.law.nu0).abs() / cfg.law.nu0).max((high - cfg.law.nu1).abs() / cfg.law.nu1);
                out.push(check("example2_plateaus", err, 5e-3, "relative error of plateau means"));
            }
            Example::Three => {
                let half = n / 2;
                let worst = (0..n)
                    .filter(|&i| i.abs_diff(half) > 8)
                    .map(|i| {
                        let want = cfg.law.frequency(i as f64 / n as f64);
                        (f.freq[i] - want).abs() / want
                    })
                    .fold(0.0, f64::max);
                out.push(check("example3_frequency_law", worst, 0.02, "relative error outside the apex window"));
            }
        }
    }
    out
}

/// Times the fast and naive forward transforms on the same random input.
pub fn benchmark(len: usize) -> Benchmark {
    let q = random_quaternion(len, 0xb0b);
    let start = Instant::now();
    let slow = qft_forward_naive(&q);
    let naive_seconds = start.elapsed().as_secs_f64();
    let reps = 20;
    let mut fast_seconds = f64::INFINITY;
    let mut sink = 0.0;
    for _ in 0..reps {
        let start = Instant::now();
        let s = qft_forward(&q);
        fast_seconds = fast_seconds.min(start.elapsed().as_secs_f64());
        sink += s.bins()[0].w;
    }
    std::hint::black_box((sink, slow));
    Benchmark { len, fast_seconds: fast_seconds.max(1e-9), naive_seconds }
}
