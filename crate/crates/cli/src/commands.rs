use std::fmt::{Display, Write as _};
use std::fs;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use triaffine::dimension::{affinity_dimension, phase_transition_profile, theorem_dimension, Theorem};
use triaffine::estimate::{
    box_dimension, chaos_game, correlation_dimension, dyadic_scales, lq_refinement, read_binary, slice_dimension,
    write_binary, write_csv, DimensionReport, PointCloud,
};
use triaffine::model::{AffineIfs, Number, SystemDocument};
use triaffine::projective::{derive_scalar_ifs, ScalarIfs, ScalarIfsKind};
use triaffine::registry;
use triaffine::scalar::Rational;
use triaffine::separation::{
    count_intersecting_pairs, delta_n_exact, delta_n_symbolic, line_system_offsets, ssp_certificate,
    verify_certificate, Offset, SeparationError, SspOutcome,
};
use triaffine::Scalar;

use crate::{CheckKind, Cli, Command, EstimateMethod, Projection, SystemSource};

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_NO_THEOREM: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_VALIDATION,
        message: message.into(),
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError {
        code: 1,
        message: e.to_string(),
    }
}

impl From<SeparationError> for CliError {
    fn from(e: SeparationError) -> Self {
        let code = if e.is_guard() { EXIT_GUARD } else { EXIT_VALIDATION };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                invalid(e.to_string())
            }
        }
    )*};
}

validation_from!(
    triaffine::model::DocumentError,
    triaffine::registry::RegistryError,
    triaffine::estimate::EstimateError,
    triaffine::dimension::DimensionError,
    triaffine::projective::ProjectiveError
);

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> Result<u8> {
    registry::validate_registry()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(invalid("--threads must be at least 1"));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| invalid(e.to_string()))?;
    let out = cli.out.clone();
    pool.install(|| dispatch(cli.command, out.as_deref()))
}

/// Payload goes to `--out` when given, else stdout.
fn emit(out: Option<&Path>, payload: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, payload).map_err(io_error),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn load(source: &SystemSource) -> Result<(String, SystemDocument)> {
    match (&source.system, &source.example) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            let doc = SystemDocument::parse(&text)?;
            let name = doc.label.clone().unwrap_or_else(|| path.display().to_string());
            Ok((name, doc))
        }
        (None, Some(name)) => Ok((name.clone(), registry::lookup(name)?.document())),
        _ => Err(invalid("give exactly one of --system or --example")),
    }
}

fn f(x: f64) -> String {
    format!("{x:.9}")
}

fn dispatch(command: Command, out: Option<&Path>) -> Result<u8> {
    match command {
        Command::Dim { source } => dim(&source, out),
        Command::Estimate {
            source,
            method,
            points,
            seed,
            burn_in,
            scales,
            strip_width,
            cloud,
        } => {
            let cloud = match cloud {
                Some(path) => {
                    let file = fs::File::open(&path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                    read_binary(BufReader::new(file))?
                }
                None => generate(&source, points, seed, burn_in)?,
            };
            estimate(&cloud, method, &scales, strip_width, out)
        }
        Command::Density {
            source,
            q,
            bins,
            points,
            seed,
        } => {
            let bins = parse_list(&bins, "--bins")?;
            let cloud = generate(&source, points, seed, 64)?;
            let mut csv = String::from("q,bins,c_q,worst_interval_ratio\n");
            for d in lq_refinement(&cloud, q, &bins)? {
                writeln!(csv, "{},{},{},{}", d.q, d.bins, f(d.c_q_estimate), f(d.worst_interval_ratio)).unwrap();
            }
            emit(out, &csv)?;
            Ok(0)
        }
        Command::Check {
            source,
            kind,
            max_level,
            eps,
            n,
            ratio,
            offsets,
            projection,
            level,
            l,
        } => match kind {
            CheckKind::Ssp => check_ssp(&source, max_level, &eps, out),
            CheckKind::Delta => {
                let n = n.ok_or_else(|| invalid("--n is required for delta"))?;
                check_delta(&source, n, ratio.as_deref(), offsets.as_deref(), projection, out)
            }
            CheckKind::Pairs => {
                let level = level.ok_or_else(|| invalid("--level is required for pairs"))?;
                check_pairs(&source, level, l, out)
            }
        },
        Command::Sweep { c, b_min, b_max, steps } => sweep(c, b_min, b_max, steps, out),
        Command::Cloud {
            source,
            points,
            seed,
            burn_in,
        } => {
            let out = out.ok_or_else(|| invalid("cloud needs --out"))?;
            let cloud = generate(&source, points, seed, burn_in)?;
            let file = fs::File::create(out).map_err(io_error)?;
            let mut w = BufWriter::new(file);
            if out.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
                write_csv(&cloud, &mut w).map_err(io_error)?;
            } else {
                write_binary(&cloud, &mut w).map_err(io_error)?;
            }
            w.flush().map_err(io_error)?;
            Ok(0)
        }
    }
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| invalid(format!("{flag}: {s:?}: {e}"))))
        .collect()
}

fn generate(source: &SystemSource, points: usize, seed: u64, burn_in: usize) -> Result<PointCloud> {
    if points == 0 {
        return Err(invalid("--points must be at least 1"));
    }
    let (_, doc) = load(source)?;
    Ok(chaos_game(&doc.float(), points, seed, burn_in))
}

fn dim(source: &SystemSource, out: Option<&Path>) -> Result<u8> {
    let (name, doc) = load(source)?;
    let system = doc.float();
    let a = affinity_dimension(&system);
    let v = theorem_dimension(&system);
    let mut r = String::new();
    writeln!(r, "system: {name}").unwrap();
    writeln!(r, "maps: {}", system.len()).unwrap();
    for (k, x) in [
        ("s_x", a.s_x),
        ("s_y", a.s_y),
        ("s_hat_x", a.s_hat_x),
        ("s_hat_y", a.s_hat_y),
        ("d_x", a.d_x),
        ("d_y", a.d_y),
        ("dim_aff", a.dim_aff),
    ] {
        writeln!(r, "{k}: {}", f(x)).unwrap();
    }
    writeln!(r, "dominant: {}", a.dominant).unwrap();
    writeln!(r, "theorem: {}", v.theorem).unwrap();
    if let Some(x) = v.formula_value {
        writeln!(r, "dimension: {}", f(x)).unwrap();
    }
    for c in &v.checked_assumptions {
        let status = if c.passed { "pass" } else { "fail" };
        writeln!(r, "assumption {}: {status} ({})", c.name, c.statement).unwrap();
    }
    if !v.unverifiable_assumptions.is_empty() {
        writeln!(r, "unverifiable: {}", v.unverifiable_assumptions.join(", ")).unwrap();
    }
    emit(out, &r)?;
    Ok(if v.theorem == Theorem::None { EXIT_NO_THEOREM } else { 0 })
}

fn parse_scales(text: &str) -> Result<Vec<f64>> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| invalid(format!("--scales {text:?}: expected k_min:k_max")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|e| invalid(format!("--scales {text:?}: {e}")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi || hi > 31 {
        return Err(invalid(format!("--scales {text:?}: need k_min <= k_max <= 31")));
    }
    Ok(dyadic_scales(lo, hi))
}

fn estimate(
    cloud: &PointCloud,
    method: EstimateMethod,
    scales: &str,
    strip_width: Option<f64>,
    out: Option<&Path>,
) -> Result<u8> {
    let scales = parse_scales(scales)?;
    let strip_width = strip_width.unwrap_or_else(|| scales.last().copied().unwrap_or(1.0));
    let report = match method {
        EstimateMethod::Box => box_dimension(cloud, &scales)?,
        EstimateMethod::Corr => correlation_dimension(cloud, &scales)?,
        EstimateMethod::Slice => slice_dimension(cloud, strip_width, &scales)?,
    };
    let csv = report_csv(&report);
    let summary = format!(
        "method={:?} estimate={} slope_stderr={} r_squared={} points={} seed={}",
        report.method,
        f(report.estimate),
        f(report.slope_stderr),
        f(report.r_squared),
        cloud.len(),
        cloud.seed
    )
    .to_lowercase();
    match out {
        Some(_) => {
            emit(out, &csv)?;
            println!("{summary}");
        }
        None => print!("{csv}# {summary}\n"),
    }
    Ok(0)
}

fn report_csv(report: &DimensionReport) -> String {
    let mut csv = String::from("scale,statistic,log_scale,log_statistic\n");
    for (r, s, lr, ls) in report.rows() {
        writeln!(csv, "{r},{s},{},{}", f(lr), f(ls)).unwrap();
    }
    csv
}

fn check_ssp(source: &SystemSource, max_level: usize, eps: &str, out: Option<&Path>) -> Result<u8> {
    let (name, doc) = load(source)?;
    let eps: Number = eps.parse().map_err(|e: triaffine::model::NumberError| invalid(e.to_string()))?;
    let report = match (doc.exact(), eps.exact()) {
        (Some(system), Some(e)) => ssp_report(&name, "exact", &system, max_level, e.clone())?,
        _ => ssp_report(&name, "float", &doc.float(), max_level, eps.to_f64())?,
    };
    emit(out, &report)?;
    Ok(0)
}

fn ssp_report<T: Scalar + Display>(
    name: &str,
    arithmetic: &str,
    system: &AffineIfs<T>,
    max_level: usize,
    eps: T,
) -> Result<String> {
    let outcome = ssp_certificate(system, max_level, &eps)?;
    let mut r = String::new();
    writeln!(r, "system: {name}").unwrap();
    writeln!(r, "arithmetic: {arithmetic}").unwrap();
    for a in outcome.attempts() {
        match &a.overlap {
            Some((w1, w2)) => writeln!(r, "level {}: {} images, overlap {:?} {:?}", a.level, a.images, w1, w2),
            None => writeln!(r, "level {}: {} images, disjoint", a.level, a.images),
        }
        .unwrap();
    }
    let region = match &outcome {
        SspOutcome::Certified { certificate, .. } => &certificate.region,
        SspOutcome::Unknown { region, .. } => region,
    };
    writeln!(r, "shrink: {}", region.shrink).unwrap();
    writeln!(r, "interval: [{}, {}]", region.interval.lo, region.interval.hi).unwrap();
    match outcome.certificate() {
        Some(cert) => {
            let again = verify_certificate(system, cert)?;
            writeln!(r, "outcome: certified").unwrap();
            writeln!(r, "level: {}", cert.level).unwrap();
            writeln!(r, "margin: {}", cert.margin).unwrap();
            writeln!(r, "margin_float: {}", f(cert.margin.to_f64_lossy())).unwrap();
            let verdict = match again {
                Some(m) if m == cert.margin => "reproduced".to_string(),
                Some(m) => format!("margin differs: {m}"),
                None => "failed".to_string(),
            };
            writeln!(r, "verification: {verdict}").unwrap();
        }
        None => writeln!(r, "outcome: unknown (not a refutation)").unwrap(),
    }
    Ok(r)
}

fn kind_of(p: Projection) -> ScalarIfsKind {
    match p {
        Projection::H => ScalarIfsKind::HorizontalProjection,
        Projection::V => ScalarIfsKind::VerticalProjection,
        Projection::F => ScalarIfsKind::FurstenbergForward,
        Projection::B => ScalarIfsKind::FurstenbergBackward,
    }
}

fn offset_of(n: Number) -> Offset {
    match n {
        Number::Exact { value, .. } => Offset::Exact(value),
        Number::Irrational { value, .. } => Offset::Symbolic(value),
    }
}

fn check_delta(
    source: &SystemSource,
    n: usize,
    ratio: Option<&str>,
    offsets: Option<&str>,
    projection: Projection,
    out: Option<&Path>,
) -> Result<u8> {
    let (ratio, offs): (Rational, Vec<Offset>) = match (ratio, offsets) {
        (Some(r), Some(o)) => {
            if source.system.is_some() || source.example.is_some() {
                return Err(invalid("--ratio/--offsets exclude --system/--example"));
            }
            let ratio = triaffine::model::parse_rational(r.trim()).map_err(|e| invalid(format!("--ratio: {e}")))?;
            let offs = o
                .split(',')
                .map(|s| s.parse::<Number>().map(offset_of).map_err(|e| invalid(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            (ratio, offs)
        }
        (None, None) => {
            let (_, doc) = load(source)?;
            if let Some(system) = doc.exact() {
                // exact systems may be heterogeneous; handled by the exact route directly
                let s = derive_scalar_ifs(&system, kind_of(projection))?;
                return delta_exact_report(&s, n, out);
            }
            line_system_offsets(&doc, kind_of(projection))?
        }
        _ => return Err(invalid("--ratio and --offsets go together")),
    };
    let symbolic = offs.iter().filter(|o| matches!(o, Offset::Symbolic(_))).count();
    if symbolic == 0 {
        let pairs: Vec<(Rational, Rational)> = offs
            .into_iter()
            .map(|o| match o {
                Offset::Exact(v) => (ratio.clone(), v),
                Offset::Symbolic(_) => unreachable!(),
            })
            .collect();
        let s = ScalarIfs::from_pairs(&pairs)?;
        return delta_exact_report(&s, n, out);
    }
    let rep = delta_n_symbolic(&ratio, &offs, n)?;
    let mut r = String::new();
    let opt = |x: Option<String>| x.unwrap_or_else(|| "none".into());
    writeln!(r, "level: {}", rep.level).unwrap();
    writeln!(r, "words: {}", rep.words).unwrap();
    writeln!(r, "tau: {}", rep.tau).unwrap();
    writeln!(r, "coincident_pairs: {}", rep.coincident_pairs).unwrap();
    writeln!(r, "rational_pairs: {}", rep.rational_pairs).unwrap();
    writeln!(r, "certified_floor: {}", opt(rep.certified_floor.map(|x| x.to_string()))).unwrap();
    writeln!(r, "rational_min_gap: {}", opt(rep.rational_min_gap.map(|x| x.to_string()))).unwrap();
    writeln!(r, "symbolic_min_gap: {}", opt(rep.symbolic_min_gap.map(|x| format!("{x:e}")))).unwrap();
    writeln!(r, "symbolic_error_bound: {}", opt(rep.symbolic_error_bound.map(|x| format!("{x:e}")))).unwrap();
    writeln!(r, "witness: {}", opt(rep.witness.map(|w| w.to_string()))).unwrap();
    writeln!(r, "possible_rationality: {}", rep.possible_rationality).unwrap();
    writeln!(r, "coefficient_bound_holds: {}", rep.coefficient_bound_holds).unwrap();
    writeln!(r, "min_gap_float: {:e}", rep.min_gap_float).unwrap();
    emit(out, &r)?;
    Ok(0)
}

fn delta_exact_report(s: &ScalarIfs<Rational>, n: usize, out: Option<&Path>) -> Result<u8> {
    let d = delta_n_exact(s, n)?;
    let mut r = format!("level: {n}\ndelta: {d}\n");
    if let Some(v) = d.finite() {
        writeln!(r, "delta_float: {:e}", v.to_f64_lossy()).unwrap();
    }
    emit(out, &r)?;
    Ok(0)
}

fn check_pairs(source: &SystemSource, level: usize, l: f64, out: Option<&Path>) -> Result<u8> {
    let (name, doc) = load(source)?;
    let rep = count_intersecting_pairs(&doc.float(), level, l)?;
    let mut r = String::new();
    writeln!(r, "system: {name}").unwrap();
    writeln!(r, "level: {}", rep.level).unwrap();
    writeln!(r, "L: {}", rep.l).unwrap();
    writeln!(r, "count: {}", rep.count).unwrap();
    writeln!(r, "rate: {}", rep.rate.map(f).unwrap_or_else(|| "none".into())).unwrap();
    writeln!(r, "growth_bound: {}", f(rep.growth_bound)).unwrap();
    emit(out, &r)?;
    Ok(0)
}

fn sweep(c: f64, b_min: f64, b_max: Option<f64>, steps: usize, out: Option<&Path>) -> Result<u8> {
    if steps == 0 {
        return Err(invalid("--steps must be at least 1"));
    }
    let b_max = b_max.unwrap_or(c / 2.0);
    if !(b_min <= b_max) {
        return Err(invalid("--b-min exceeds --b-max"));
    }
    let grid: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                b_min
            } else {
                b_min + (b_max - b_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let profile = phase_transition_profile(c, &grid)?;
    let mut csv = String::from("b,dim,breakpoint\n");
    for (b, d) in &profile.points {
        writeln!(csv, "{:.6},{:.6},{:.6}", b, d, profile.breakpoint).unwrap();
    }
    emit(out, &csv)?;
    Ok(0)
}
