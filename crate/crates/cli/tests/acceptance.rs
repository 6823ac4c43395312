//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any hard criterion fails. Oracles here are written
//! against plain `[f64; 4]` arithmetic rather than the library's types.

use std::f64::consts::TAU;
use std::process::Command;
use std::time::Instant;

use hyperan::analytic::{hypercomplex, simplex};
use hyperan::features::{extract, SampleFlags};
use hyperan::qft::{qft_forward, qft_inverse};
use hyperan::signals::{generate, white_noise, Example, ExampleConfig, Generated};
use hyperan::stqft::{ridge, stqft, Window};
use hyperan::{ComplexSignal, Error, InstFeatures, Quaternion, QuaternionSignal};
use num_complex::Complex;

const SEED: u64 = 1;

type Q = [f64; 4];

fn hamilton(a: Q, b: Q) -> Q {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn arr(q: Quaternion<f64>) -> Q {
    [q.w, q.x, q.y, q.z]
}

/// `X[k] = sum_t x[t] exp(-j 2 pi k t / N)`, kernel on the right.
fn oracle_qft(x: &[Q]) -> Vec<Q> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter().enumerate().fold([0.0; 4], |acc, (t, &q)| {
                let th = TAU * ((k * t) % n) as f64 / n as f64;
                let p = hamilton(q, [th.cos(), 0.0, -th.sin(), 0.0]);
                [acc[0] + p[0], acc[1] + p[1], acc[2] + p[2], acc[3] + p[3]]
            })
        })
        .collect()
}

fn random_complex(n: usize, seed: u64) -> ComplexSignal<f64> {
    ComplexSignal::unit_record(white_noise(n, seed)).unwrap()
}

fn random_quaternion(n: usize, seed: u64) -> QuaternionSignal<f64> {
    let a = white_noise::<f64>(n, seed);
    let b = white_noise::<f64>(n, seed.wrapping_add(0x5151));
    let q = a.iter().zip(&b).map(|(p, r)| Quaternion::new(p.re, p.im, r.re, r.im)).collect();
    QuaternionSignal::new(q, 1.0 / n as f64).unwrap()
}

fn max_component(a: &[Q], b: &[Q]) -> f64 {
    a.iter().zip(b).flat_map(|(x, y)| (0..4).map(move |c| (x[c] - y[c]).abs())).fold(0.0, f64::max)
}

fn modulus(q: Q) -> f64 {
    q.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn example(ex: Example) -> (ExampleConfig<f64>, Generated<f64>, InstFeatures<f64>) {
    let cfg = ExampleConfig::<f64>::defaults(ex, SEED);
    let g = generate(&cfg).unwrap();
    let f = extract(&hypercomplex(&g.modulated.z).unwrap()).unwrap();
    (cfg, g, f)
}

struct Outcome {
    passed: bool,
    hard: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, hard: true, detail }
}

fn c01_transform_correctness() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=64usize {
        let z = random_complex(n, 100 + n as u64);
        let zq: Vec<Q> = z.samples().iter().map(|c| [c.re, c.im, 0.0, 0.0]).collect();
        let fast: Vec<Q> = qft_forward(&z).bins().iter().map(|&b| arr(b)).collect();
        worst = worst.max(max_component(&fast, &oracle_qft(&zq)));

        let q = random_quaternion(n, 200 + n as u64);
        let qa: Vec<Q> = q.samples().iter().map(|&s| arr(s)).collect();
        let fast: Vec<Q> = qft_forward(&q).bins().iter().map(|&b| arr(b)).collect();
        worst = worst.max(max_component(&fast, &oracle_qft(&qa)));
    }
    let q = random_quaternion(1024, 7);
    let back = qft_inverse(&qft_forward(&q));
    let num: f64 = q.samples().iter().zip(back.samples()).map(|(a, b)| (*a - *b).norm()).sum();
    let den: f64 = q.samples().iter().map(|a| a.norm()).sum();
    let rt = (num / den).sqrt();
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst < 1e-10 && rt < 1e-10 && secs < 5.0,
        format!("oracle max dev {worst:.2e} (<1e-10), round trip rel RMS {rt:.2e} (<1e-10), {secs:.2} s (<5 s)"),
    )
}

fn c02_symmetry() -> Outcome {
    let n = 256;
    let r: Vec<f64> = white_noise::<f64>(n, 31).iter().map(|c| c.re).collect();
    let even: Vec<f64> = (0..n).map(|t| 0.5 * (r[t] + r[(n - t) % n])).collect();
    let odd: Vec<f64> = (0..n).map(|t| 0.5 * (r[t] - r[(n - t) % n])).collect();
    let cases = [
        (even.iter().map(|&v| Complex::new(v, 0.0)).collect::<Vec<_>>(), 0),
        (even.iter().map(|&v| Complex::new(0.0, v)).collect(), 1),
        (odd.iter().map(|&v| Complex::new(v, 0.0)).collect(), 2),
        (odd.iter().map(|&v| Complex::new(0.0, v)).collect(), 3),
    ];
    let mut worst = 0.0f64;
    for (z, keep) in cases {
        let spec: Vec<Q> =
            qft_forward(&ComplexSignal::unit_record(z).unwrap()).bins().iter().map(|&b| arr(b)).collect();
        let max = spec.iter().map(|&b| modulus(b)).fold(0.0, f64::max);
        for b in &spec {
            for c in (0..4).filter(|&c| c != keep) {
                worst = worst.max(b[c].abs() / max);
            }
        }
    }
    outcome(worst < 1e-12, format!("excluded components {worst:.2e} of max bin (<1e-12)"))
}

fn c03_involution_reversal() -> Outcome {
    let n = 256;
    let mut worst = 0.0f64;
    for s in 0..100 {
        let spec: Vec<Q> = qft_forward(&random_complex(n, 1000 + s)).bins().iter().map(|&b| arr(b)).collect();
        let max = spec.iter().map(|&b| modulus(b)).fold(0.0, f64::max);
        for k in 0..n {
            // -i q i flips the signs of the j and k parts
            let b = spec[k];
            let want = [b[0], b[1], -b[2], -b[3]];
            let got = spec[(n - k) % n];
            worst = worst.max(modulus([got[0] - want[0], got[1] - want[1], got[2] - want[2], got[3] - want[3]]) / max);
        }
    }
    outcome(worst < 1e-10, format!("deviation {worst:.2e} of max bin over 100 signals (<1e-10)"))
}

fn c04_convolution() -> Outcome {
    let n = 128;
    let g = random_complex(n, 41);
    let f: Vec<f64> = white_noise::<f64>(n, 42).iter().map(|c| c.re).collect();
    let direct: Vec<Complex<f64>> = (0..n).map(|t| (0..n).map(|m| g.samples()[m] * f[(t + n - m) % n]).sum()).collect();
    let gz = qft_forward(&g);
    let fz = qft_forward(&ComplexSignal::from_real(&f, g.dt()).unwrap());
    let rms = |y: &QuaternionSignal<f64>| {
        let s: f64 = y
            .samples()
            .iter()
            .zip(&direct)
            .map(|(q, d)| (q.w - d.re).powi(2) + (q.x - d.im).powi(2) + q.y * q.y + q.z * q.z)
            .sum();
        (s / n as f64).sqrt()
    };
    let err = rms(&qft_inverse(&gz.product(&fz).unwrap()));
    let scale = (direct.iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64).sqrt();
    let control = rms(&qft_inverse(&fz.product(&gz).unwrap())) / scale;
    outcome(
        err < 1e-9 && control > 1e-3,
        format!("RMS deviation {err:.2e} (<1e-9); reversed order relative error {control:.2e} (must fail)"),
    )
}

fn c05_one_sided() -> Outcome {
    let n = 256;
    let (mut leak, mut recovery) = (0.0f64, 0.0f64);
    for s in 0..100 {
        let z = random_complex(n, 2000 + s);
        let h = hypercomplex(&z).unwrap();
        let spec: Vec<Q> = qft_forward(h.signal()).bins().iter().map(|&b| arr(b)).collect();
        let max = spec.iter().map(|&b| modulus(b)).fold(0.0, f64::max);
        for b in &spec[n / 2 + 1..] {
            leak = leak.max(modulus(*b) / max);
        }
        for (a, b) in simplex(&h).samples().iter().zip(z.samples()) {
            recovery = recovery.max((a.re - b.re).abs()).max((a.im - b.im).abs());
        }
    }
    outcome(
        leak < 1e-9 && recovery < 1e-12,
        format!("negative-frequency leakage {leak:.2e} (<1e-9), simplex recovery {recovery:.2e} (<1e-12)"),
    )
}

fn c06_example1() -> Outcome {
    let (cfg, g, f) = example(Example::One);
    let n = f.len();
    let env = (f.rho.iter().zip(g.baseband.samples()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>() / n as f64).sqrt();
    let resid: Vec<f64> = (0..n).map(|i| f.phi[i] - TAU * cfg.law.nu0 * i as f64 / n as f64).collect();
    let offset = resid.iter().sum::<f64>() / n as f64;
    let phase = resid.iter().map(|r| (r - offset).abs()).fold(0.0, f64::max);
    outcome(
        env < 1e-8 && phase < 1e-6,
        format!("envelope RMS {env:.2e} (<1e-8), phase residual {phase:.2e} rad (<1e-6)"),
    )
}

fn c07_example2() -> Outcome {
    let (cfg, _, f) = example(Example::Two);
    let n = f.len();
    let (nu0, nu1) = (cfg.law.nu0, cfg.law.nu1);
    let (t1, t2) = ((cfg.law.t1 * n as f64).round() as usize, (cfg.law.t2 * n as f64).round() as usize);
    let mid = 0.5 * (nu0 + nu1);
    // transition = first sample past the midpoint level, searched around each switch
    let crossing = |from: usize, to: usize, rising: bool| {
        (from..to).find(|&i| if rising { f.freq[i] >= mid } else { f.freq[i] <= mid })
    };
    let up = crossing(t1 - 64, t1 + 64, true);
    let down = crossing(t2 - 64, t2 + 64, false);
    let guard = 3;
    let mean = |r: std::ops::Range<usize>| f.freq[r.clone()].iter().sum::<f64>() / r.len() as f64;
    let plateaus = [(mean(0..t1 - guard), nu0), (mean(t1 + guard..t2 - guard), nu1), (mean(t2 + guard..n), nu0)];
    let plateau_err = plateaus.iter().map(|(m, want)| (m - want).abs() / want).fold(0.0, f64::max);
    let offsets = match (up, down) {
        (Some(u), Some(d)) => Some((u.abs_diff(t1), d.abs_diff(t2))),
        _ => None,
    };
    let passed = plateau_err < 5e-3 && offsets.is_some_and(|(a, b)| a <= 3 && b <= 3);
    outcome(
        passed,
        format!(
            "plateau means {:.2}/{:.2}/{:.2} (rel err {plateau_err:.2e} <5e-3), transition offsets {offsets:?} samples (<=3)",
            plateaus[0].0, plateaus[1].0, plateaus[2].0
        ),
    )
}

fn c08_example3() -> Outcome {
    let (cfg, _, f) = example(Example::Three);
    let n = f.len();
    let window = n / 2 - 8..n / 2 + 8;
    let worst = (0..n)
        .filter(|i| !window.contains(i))
        .map(|i| {
            let want = cfg.law.frequency(i as f64 / n as f64);
            (f.freq[i] - want).abs() / want
        })
        .fold(0.0, f64::max);
    let flagged = window.clone().filter(|&i| f.mask[i].contains(SampleFlags::POLAR_DEGENERATE)).count();
    let total = f.mask.iter().filter(|m| m.contains(SampleFlags::POLAR_DEGENERATE)).count();
    outcome(
        worst < 0.02 && flagged > 0,
        format!(
            "frequency rel err {worst:.2e} outside window (<2e-2); degenerate flags in window {flagged}/16 ({total} in record)"
        ),
    )
}

fn c09_stqft_ridge() -> Outcome {
    let (cfg, g, _) = example(Example::Three);
    let (l, hop) = (128, 32);
    let sp = stqft(&g.modulated.z, l, hop, Window::Hann).unwrap();
    let r = ridge(&sp);
    let n = g.modulated.z.len();
    let apex = n / 2;
    let (mut worst, mut bad, mut used) = (0.0f64, 0usize, 0usize);
    for (frame, &nu) in r.iter().enumerate() {
        let start = frame * hop;
        // frames straddling the apex see both sides of the sweep
        if (start..start + l).contains(&apex) {
            continue;
        }
        used += 1;
        let want = cfg.law.frequency(sp.frame_time(frame));
        let bins = (nu - want).abs() / sp.df;
        worst = worst.max(bins);
        if bins > 1.0 {
            bad += 1;
        }
    }
    outcome(worst <= 1.0, format!("worst ridge error {worst:.2} bins (<=1), {bad}/{used} frames over"))
}

fn c10_polar_cd() -> Outcome {
    let a = white_noise::<f64>(10_000, 51);
    let b = white_noise::<f64>(10_000, 52);
    let mut worst = 0.0f64;
    for (p, r) in a.iter().zip(b.iter()) {
        let q = Quaternion::new(p.re, p.im, r.re, r.im);
        let back = Quaternion::from_polar_cd(q.to_polar_cd().unwrap());
        worst = worst.max(max_component(&[arr(back)], &[arr(q)]));
    }
    let degenerate = [Quaternion::zero(), Quaternion::j(), Quaternion::k(), Quaternion::new(0.0, 0.0, -0.4, 1.5)];
    let raised = degenerate.iter().filter(|q| matches!(q.to_polar_cd(), Err(Error::DegeneratePolar))).count();
    outcome(
        worst < 1e-12 && raised == degenerate.len(),
        format!("round trip max component error {worst:.2e} (<1e-12), degenerate errors {raised}/{}", degenerate.len()),
    )
}

fn c11_performance() -> Outcome {
    let b = hyperan::verify::benchmark(4096);
    Outcome {
        passed: b.speedup() >= 20.0,
        hard: false,
        detail: format!(
            "speedup {:.0}x (>=20x, informational) fast {:.2e} s naive {:.2e} s",
            b.speedup(),
            b.fast_seconds,
            b.naive_seconds
        ),
    }
}

fn c12_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_hyperan"))
            .args(["generate", "--example", "3", "--seed", "7", "--deterministic", "-o"])
            .arg(&path)
            .env_remove("HYPERAN_SEED")
            .output()
            .unwrap()
            .status;
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    outcome(a == b && !a.is_empty(), format!("{} and {} bytes, identical: {}", a.len(), b.len(), a == b))
}

#[test]
fn acceptance_criteria() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("transform correctness", c01_transform_correctness),
        ("spectral symmetry", c02_symmetry),
        ("i-involution reversal", c03_involution_reversal),
        ("convolution theorem", c04_convolution),
        ("one-sided spectrum", c05_one_sided),
        ("example 1 envelope and phase", c06_example1),
        ("example 2 frequency steps", c07_example2),
        ("example 3 frequency law", c08_example3),
        ("STQFT ridge", c09_stqft_ridge),
        ("polar Cayley-Dickson round trip", c10_polar_cd),
        ("performance", c11_performance),
        ("determinism", c12_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {}", i + 1, o.detail);
        if !o.passed && o.hard {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
