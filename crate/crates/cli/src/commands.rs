use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use hyperan::analytic::{hypercomplex, perplex, simplex};
use hyperan::features::{extract_with, Derivative, FeatureOptions};
use hyperan::io::{self, Metadata, SignalData};
use hyperan::qft::{qft_forward, qft_forward_naive, qft_inverse};
use hyperan::signals::{
    bandlimited_random, generate, BasebandSpec, Example, ExampleConfig, PhaseKind, PhaseLaw, PRNG_ALGORITHM,
};
use hyperan::stqft::{ridge, stqft, stqft_full};
use hyperan::verify::{self, Fault, VerifyOptions};
use hyperan::{ComplexSignal, HyperRep};

use crate::args::*;
use crate::svg::{line_chart, Series};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn base_metadata(command: &str, out: &OutputOpts) -> Metadata {
    let mut m =
        Metadata::new().with("generator", concat!("hyperan ", env!("CARGO_PKG_VERSION"))).with("command", command);
    if !out.deterministic {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        m.set("created_unix", secs);
    }
    m
}

/// Carries the header of an input file over under an `input.` prefix.
fn inherit(meta: &mut Metadata, input: &Path, source: &Metadata) {
    meta.set("input", input.display());
    for (k, v) in source.iter().filter(|(k, _)| !matches!(*k, "format" | "schema" | "created_unix")) {
        let key = if k.starts_with("input.") { k.to_string() } else { format!("input.{k}") };
        if meta.get(&key).is_none() {
            meta.set(&key, v);
        }
    }
}

fn print_params(meta: &Metadata) {
    for (k, v) in meta.iter().filter(|(k, _)| !k.starts_with("input.")) {
        println!("{k} = {v}");
    }
}

fn chart(out: &OutputOpts, title: &str, xlabel: &str, series: &[Series]) -> Result<()> {
    if let Some(path) = &out.svg {
        line_chart(path, title, xlabel, series).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn complex_series(s: &ComplexSignal<f64>) -> [Series<'static>; 2] {
    let t = |n: usize| s.time(n);
    [
        Series { label: "real", points: s.samples().iter().enumerate().map(|(n, c)| (t(n), c.re)).collect() },
        Series { label: "imag", points: s.samples().iter().enumerate().map(|(n, c)| (t(n), c.im)).collect() },
    ]
}

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<()> {
    let mut meta = base_metadata("generate", &a.out);
    meta.set("seed", a.seed).set("prng", PRNG_ALGORITHM);

    if a.baseband {
        let spec = BasebandSpec { n_samples: a.n.unwrap_or(1024), max_cycles: a.max_cycles, seed: a.seed };
        meta.set("signal", "baseband").set("n_samples", spec.n_samples).set("max_cycles", spec.max_cycles);
        let s = bandlimited_random::<f64>(&spec)?;
        print_params(&meta);
        io::write_signal(&a.output, &SignalData::Complex(s.clone()), &meta)?;
        return chart(&a.out, "band-limited baseband", "t", &complex_series(&s));
    }

    let example =
        Example::from_number(a.example.ok_or_else(|| validation("either --example or --baseband is required"))?)?;
    let mut cfg = ExampleConfig::<f64>::defaults(example, a.seed);
    if let Some(n) = a.n {
        cfg.baseband.n_samples = n;
    }
    cfg.baseband.max_cycles = a.max_cycles;
    let nu0 = a.nu0.unwrap_or(cfg.law.nu0);
    cfg.law = match cfg.law.kind {
        PhaseKind::ConstantFreq => PhaseLaw::constant(nu0),
        PhaseKind::StepFreq => PhaseLaw::step(nu0, a.nu1.unwrap_or(2.0 * nu0), a.t1, a.t2),
        PhaseKind::TriangleSweep => PhaseLaw::triangle(nu0, a.alpha.unwrap_or(nu0 / a.width), a.width),
    }
    .with_theta(a.theta);
    if example != Example::Two && a.nu1.is_some() {
        return Err(validation("--nu1 only applies to example 2"));
    }
    if example != Example::Three && a.alpha.is_some() {
        return Err(validation("--alpha only applies to example 3"));
    }
    if example == Example::One && a.theta != 0.0 {
        return Err(validation("example 1 is built by a spectral shift; --theta must be 0"));
    }
    cfg.baseband.validate()?;
    cfg.law.validate()?;

    let law = &cfg.law;
    meta.set("example", example.number())
        .set("n_samples", cfg.baseband.n_samples)
        .set("max_cycles", cfg.baseband.max_cycles)
        .set("phase_law", law.kind)
        .set("nu0", law.nu0);
    match law.kind {
        PhaseKind::ConstantFreq => {}
        PhaseKind::StepFreq => {
            meta.set("nu1", law.nu1).set("t1", law.t1).set("t2", law.t2);
        }
        PhaseKind::TriangleSweep => {
            meta.set("alpha", law.alpha).set("width", law.width);
        }
    }
    meta.set("theta", law.theta)
        .set("construction", if example == Example::One { "spectral_shift" } else { "time_domain" });

    let g = generate(&cfg)?;
    let sep = g.separation;
    meta.set("nu_m", sep.nu_m)
        .set("carrier_min", sep.carrier_min)
        .set("carrier_max", sep.carrier_max)
        .set("separation_margin", sep.margin)
        .set("nyquist_headroom", sep.nyquist_headroom)
        .set("one_sided", sep.one_sided);
    print_params(&meta);
    if !sep.one_sided {
        eprintln!(
            "warning: carrier range [{}, {}] with baseband edge {} does not guarantee a one-sided spectrum (margin {}, Nyquist headroom {})",
            sep.carrier_min, sep.carrier_max, sep.nu_m, sep.margin, sep.nyquist_headroom
        );
    }

    io::write_signal(&a.output, &SignalData::Complex(g.modulated.z.clone()), &meta.clone().with("signal", "z"))?;
    if let Some(p) = &a.quadrature {
        io::write_signal(p, &SignalData::Complex(g.modulated.o.clone()), &meta.clone().with("signal", "o"))?;
    }
    if let Some(p) = &a.envelope {
        io::write_signal(p, &SignalData::Complex(g.baseband.clone()), &meta.clone().with("signal", "A"))?;
    }
    if let Some(p) = &a.phase {
        let b = SignalData::Real { values: g.phase.clone(), dt: g.baseband.dt() };
        io::write_signal(p, &b, &meta.clone().with("signal", "B"))?;
    }
    chart(&a.out, &format!("example {} z(t)", example.number()), "t", &complex_series(&g.modulated.z))
}

pub fn cmd_qft(a: &QftArgs) -> Result<()> {
    let mut meta = base_metadata("qft", &a.out);
    if a.inverse {
        let (spec, src) = io::read_spectrum::<f64>(&a.input)?;
        inherit(&mut meta, &a.input, &src);
        meta.set("direction", "inverse");
        print_params(&meta);
        let s = qft_inverse(&spec);
        io::write_signal(&a.output, &SignalData::Quaternion(s.clone()), &meta)?;
        let w = s.samples().iter().enumerate().map(|(n, q)| (s.time(n), q.w)).collect();
        return chart(&a.out, "inverse QFT (real part)", "t", &[Series { label: "w", points: w }]);
    }
    let (data, src) = io::read_signal::<f64>(&a.input)?;
    inherit(&mut meta, &a.input, &src);
    meta.set("direction", "forward").set("axis", "j").set("side", "right");
    meta.set("algorithm", if a.naive { "naive" } else { "fft" });
    print_params(&meta);
    let q = data.into_quaternion()?;
    let spec = if a.naive { qft_forward_naive(&q) } else { qft_forward(&q) };
    io::write_spectrum(&a.output, &spec, &meta)?;
    let pts = spec.centered().into_iter().map(|(nu, b)| (nu, b.modulus())).collect();
    chart(&a.out, "|Z(nu)|", "nu", &[Series { label: "modulus", points: pts }])
}

pub fn cmd_analytic(a: &AnalyticArgs) -> Result<()> {
    let mut meta = base_metadata("analytic", &a.out);
    let (data, src) = io::read_signal::<f64>(&a.input)?;
    inherit(&mut meta, &a.input, &src);
    let z = data.into_complex()?;
    print_params(&meta);
    let h = hypercomplex(&z)?;
    io::write_signal(&a.output, &SignalData::Quaternion(h.signal().clone()), &meta.clone().with("signal", "z_hat"))?;
    if let Some(p) = &a.simplex {
        io::write_signal(p, &SignalData::Complex(simplex(&h)), &meta.clone().with("signal", "simplex"))?;
    }
    let o = perplex(&h);
    if let Some(p) = &a.perplex {
        io::write_signal(p, &SignalData::Complex(o.clone()), &meta.clone().with("signal", "perplex"))?;
    }
    chart(&a.out, "perplex o(t)", "t", &complex_series(&o))
}

pub fn cmd_features(a: &FeaturesArgs) -> Result<()> {
    let mut meta = base_metadata("features", &a.out);
    let (data, src) = io::read_signal::<f64>(&a.input)?;
    inherit(&mut meta, &a.input, &src);
    let h = match data {
        SignalData::Quaternion(q) => {
            meta.set("representation", "input");
            HyperRep::from_signal(q)
        }
        other => {
            meta.set("representation", "hypercomplex");
            hypercomplex(&other.into_complex()?)?
        }
    };
    let opts = FeatureOptions {
        mode: a.mode,
        derivative: if a.smooth == 0 {
            Derivative::Central
        } else {
            Derivative::SavitzkyGolay { half_width: a.smooth }
        },
        ..FeatureOptions::default()
    };
    meta.set("mode", opts.mode)
        .set("derivative", if a.smooth == 0 { "central".to_string() } else { format!("least_squares:{}", a.smooth) })
        .set("degenerate_eps", opts.degenerate_eps)
        .set("vanish_eps", opts.vanish_eps)
        .set("max_interp_run", opts.max_interp_run);
    print_params(&meta);
    let f = extract_with(&h, &opts)?;

    let max_rho = f.rho.iter().map(|r| r.norm()).filter(|v| v.is_finite()).fold(0.0, f64::max);
    let finite: Vec<f64> = f.freq.iter().copied().filter(|v| v.is_finite()).collect();
    let mean_freq = finite.iter().sum::<f64>() / finite.len().max(1) as f64;
    let flagged = f.mask.iter().filter(|m| !m.is_clean()).count();
    println!("max |rho| = {max_rho:.6e}");
    println!("mean freq = {mean_freq:.6e}");
    println!("flagged samples = {flagged}");

    io::write_features(&a.output, &f, &meta)?;
    let freq = (0..f.len()).map(|n| (f.time(n), f.freq[n])).collect();
    chart(&a.out, "instantaneous frequency", "t", &[Series { label: "freq", points: freq }])
}

pub fn cmd_stqft(a: &StqftArgs) -> Result<()> {
    let mut meta = base_metadata("stqft", &a.out);
    let (data, src) = io::read_signal::<f64>(&a.input)?;
    inherit(&mut meta, &a.input, &src);
    meta.set("window", a.window);
    print_params(&meta);
    let q = data.into_quaternion()?;
    let sp =
        if a.full { stqft_full(&q, a.window_len, a.hop, a.window)? } else { stqft(&q, a.window_len, a.hop, a.window)? };
    io::write_spectrogram(&a.output, &sp, &meta)?;
    let r = ridge(&sp);
    if let Some(p) = &a.ridge {
        let rm = meta.clone().with("signal", "ridge").with("t0", sp.frame_time(0));
        io::write_signal(p, &SignalData::Real { values: r.clone(), dt: sp.dt_frame }, &rm)?;
    }
    let pts = r.iter().enumerate().map(|(k, &f)| (sp.frame_time(k), f)).collect();
    chart(&a.out, "spectrogram ridge", "t", &[Series { label: "ridge", points: pts }])
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let bad = || validation(format!("--sizes must be `a..b` or a comma list of lengths, got {s:?}"));
    let sizes: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi): (usize, usize) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
        (lo..=hi).collect()
    } else {
        s.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(bad());
    }
    Ok(sizes)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<()> {
    let fault = a.inject_fault.as_deref().map(str::parse::<Fault>).transpose()?;
    if a.bench_len == 0 {
        return Err(validation("--bench-len must be positive"));
    }
    let opts = VerifyOptions {
        seed: a.seed,
        sizes: parse_sizes(&a.sizes)?,
        fault,
        bench_len: (!a.no_bench).then_some(a.bench_len),
    };
    println!("seed = {}", opts.seed);
    println!("sizes = {}", a.sizes);
    if let Some(f) = fault {
        println!("injected fault = {f:?}");
    }
    let report = verify::run(&opts);
    for c in &report.checks {
        println!("{c}");
    }
    if let Some(b) = report.benchmark {
        println!("{b}");
    }
    if report.passed() {
        println!("all {} checks passed", report.checks.len());
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        Err(CliError::Verification(format!("failed checks: {}", names.join(", "))))
    }
}
