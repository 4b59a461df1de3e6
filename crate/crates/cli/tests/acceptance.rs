//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a criterion fails that is not a documented known failure.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triaffine::dimension::{
    affinity_dimension, homogeneous_affinity, lyapunov_dimension, phase_branch, phase_transition_profile,
};
use triaffine::estimate::{box_dimension, chaos_game, correlation_dimension, dyadic_scales, slice_dimension};
use triaffine::model::{AffineIfs, HighPrecision, TriangularMap};
use triaffine::projective::ScalarIfs;
use triaffine::registry;
use triaffine::scalar::{ratio, Rational};
use triaffine::separation::{
    count_intersecting_pairs, delta_n_exact, delta_n_symbolic, ssp_certificate, verify_certificate, Offset,
};

/// Criteria that fail at the stated sample sizes; see the decisions ledger.
const KNOWN_FAILURES: &[u32] = &[9, 10];

const POINTS: usize = 1_000_000;
const SEED: u64 = 0;
const BURN_IN: usize = 64;
/// One window for every desk-scale estimate: 2^-4 .. 2^-10.
const WINDOW: (u32, u32) = (4, 10);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Homogeneous system with the translations spread along the diagonal.
fn spread(n: usize, c: f64, b: f64) -> AffineIfs<f64> {
    let step = |span: f64| if n > 1 { span / (n - 1) as f64 } else { 0.0 };
    let maps = (0..n)
        .map(|i| {
            let (u, v) = (i as f64 * step(1.0 - c), i as f64 * step(1.0 - b));
            TriangularMap::new(c, b, 0.0, u.min(1.0 - c), v.min(1.0 - b))
        })
        .collect();
    AffineIfs::new(maps, None).unwrap()
}

fn c1_moran_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst, mut drawn, mut tested, mut y_dominated) = (0.0f64, 0, 0, 0);
    while tested < 100 {
        drawn += 1;
        let n = rng.random_range(1..=8usize);
        let c = rng.random_range(0.02..0.98);
        let b = rng.random_range(0.01..c);
        // the closed form is the x-dominated branch; for c > b that is Ncb <= 1
        if n as f64 * c * b > 1.0 {
            y_dominated += 1;
            continue;
        }
        let s = spread(n, c, b);
        worst = worst.max((affinity_dimension(&s).dim_aff - homogeneous_affinity(n, c, b).unwrap()).abs());
        tested += 1;
    }
    outcome(
        worst <= 1e-9,
        format!("max |solver - closed form| = {worst:.2e} over {tested} systems ({y_dominated} of {drawn} draws y-dominated, skipped)"),
    )
}

fn c2_lyapunov_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst, mut tested) = (0.0f64, 0);
    while tested < 100 {
        let n = rng.random_range(2..=8usize);
        let c = rng.random_range(0.02..0.98);
        let b = rng.random_range(0.01..c);
        let nf = n as f64;
        if !(nf * c > 1.0 && nf * c * b <= 1.0) {
            continue;
        }
        let s = spread(n, c, b);
        let lyap = lyapunov_dimension(&s, &vec![1.0 / nf; n]).unwrap();
        worst = worst.max((lyap - homogeneous_affinity(n, c, b).unwrap()).abs());
        tested += 1;
    }
    outcome(worst <= 1e-9, format!("max |lyapunov - closed form| = {worst:.2e} over {tested} systems"))
}

fn c3_phase_transition() -> Outcome {
    let c = 8.0 / 9.0;
    let grid: Vec<f64> = (1..=400).map(|k| k as f64 / 400.0 * c / 2.0).collect();
    let profile = phase_transition_profile(c, &grid).unwrap();
    let star = 3.0 / 8.0;
    let piecewise_ok = profile.points.iter().all(|&(b, d)| {
        let expected = if b <= star { 1.0 + (3.0 * c).ln() / -b.ln() } else { 2.0 };
        (d - expected).abs() <= 1e-12
    });
    let branch_gap = (phase_branch(c, star) - 2.0).abs();
    let flat_ok = profile.points.iter().filter(|p| p.0 >= star).all(|p| p.1 == 2.0);
    let breakpoint_ok = (profile.breakpoint - star).abs() <= 1e-15;
    outcome(
        piecewise_ok && branch_gap <= 1e-12 && flat_ok && breakpoint_ok,
        format!("piecewise match {piecewise_ok}, |branch(3/8) - 2| = {branch_gap:.1e}, flat on [3/8, 4/9] {flat_ok}"),
    )
}

/// Minimum over distinct words of `|sum tau_k 2^-(k-1)|` differences.
fn brute_force_gap(n: usize) -> Rational {
    let points: Vec<Rational> = (0..1u64 << n)
        .map(|bits| {
            (0..n)
                .filter(|k| bits >> k & 1 == 1)
                .map(|k| ratio(1, 1i64 << k))
                .fold(ratio(0, 1), |a, b| a + b)
        })
        .collect();
    let mut best: Option<Rational> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = &points[i] - &points[j];
            let g = if d < ratio(0, 1) { -d } else { d };
            best = Some(best.map_or(g.clone(), |b: Rational| b.min(g)));
        }
    }
    best.unwrap()
}

fn c4_exact_delta() -> Outcome {
    let s = ScalarIfs::from_pairs(&[(ratio(1, 2), ratio(0, 1)), (ratio(1, 2), ratio(1, 1))]).unwrap();
    let formula_ok = (1..=20).all(|n| {
        delta_n_exact(&s, n).unwrap().finite() == Some(&Rational::new(2.into(), (1u64 << n).into()))
    });
    let oracle_ok = (1..=10).all(|n| delta_n_exact(&s, n).unwrap().finite() == Some(&brute_force_gap(n)));
    outcome(
        formula_ok && oracle_ok,
        format!("2^(1-n) for n <= 20: {formula_ok}; brute force for n <= 10: {oracle_ok}"),
    )
}

/// `(p1, p2)` of every word, scaled by `2^n`, for offsets `(0, 1, tau)` and ratio 1/2.
fn split_words(n: usize) -> Vec<(i64, i64)> {
    let mut out = vec![(0i64, 0i64)];
    for k in 0..n {
        let weight = 1i64 << (n - k);
        out = out
            .iter()
            .flat_map(|&(p1, p2)| [(p1, p2), (p1 + weight, p2), (p1, p2 + weight)])
            .collect();
    }
    out
}

fn c5_symbolic_structure() -> Outcome {
    let tau = HighPrecision::sqrt(&ratio(2, 1), 256).scale(&ratio(1, 2));
    let offsets = [Offset::Exact(ratio(0, 1)), Offset::Exact(ratio(1, 1)), Offset::Symbolic(tau)];
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=10 {
        let r = delta_n_symbolic(&ratio(1, 2), &offsets, n).unwrap();
        let floor = Rational::new(1.into(), (1i64 << n).into());
        let certified = r.certified_floor.as_ref() == Some(&floor)
            && r.rational_min_gap.as_ref().is_some_and(|g| *g >= floor);
        ok &= certified && r.coefficient_bound_holds && !r.possible_rationality;
        if n <= 6 {
            // independent enumeration of the term-wise differences
            let words = split_words(n);
            let bound = 4i64.pow(n as u32);
            let mut min_rational: Option<i64> = None;
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    let (p1, p2) = (words[i].0 - words[j].0, words[i].1 - words[j].1);
                    ok &= p1.abs() <= bound && p2.abs() <= bound;
                    if p2 == 0 && p1 != 0 {
                        min_rational = Some(min_rational.map_or(p1.abs(), |m| m.min(p1.abs())));
                    }
                }
            }
            let oracle = min_rational.map(|m| Rational::new(m.into(), (1i64 << n).into()));
            ok &= oracle == r.rational_min_gap;
        }
        if n == 10 {
            notes.push(format!(
                "n=10: {} p2=0 pairs, exact min gap {}, float min gap {:.3e}",
                r.rational_pairs,
                r.rational_min_gap.unwrap(),
                r.min_gap_float
            ));
        }
    }
    outcome(ok, format!("floors, (2q)^n bound and oracle agreement for n <= 10; {}", notes.join("")))
}

fn c6_ssp() -> Outcome {
    let j29 = registry::lookup("j29").unwrap().document().exact().unwrap();
    let out = ssp_certificate(&j29, 8, &ratio(1, 100)).unwrap();
    let (certified, detail) = match out.certificate() {
        Some(cert) => {
            let again = verify_certificate(&j29, cert).unwrap();
            let agree = again.as_ref().is_some_and(|m| {
                let d = m - &cert.margin;
                let d = if d < ratio(0, 1) { -d } else { d };
                d <= ratio(1, 1_000_000_000_000)
            });
            (
                cert.level <= 8 && agree,
                format!("j29 certified at level {} with margin {}, re-verified {agree}", cert.level, cert.margin),
            )
        }
        None => (false, "j29 not certified".to_string()),
    };
    let m = TriangularMap::new(0.5, 0.25, 0.1, 0.2, 0.3);
    let dup = AffineIfs::new(vec![m.clone(), m], None).unwrap();
    let dup_out = ssp_certificate(&dup, 8, &0.01).unwrap();
    let unknown = dup_out.certificate().is_none()
        && dup_out.attempts().len() == 8
        && dup_out.attempts().iter().all(|a| a.overlap.is_some());
    outcome(certified && unknown, format!("{detail}; duplicate maps unknown at levels 1..8: {unknown}"))
}

fn c7_pair_growth() -> Outcome {
    let j49 = registry::lookup("j49").unwrap().system();
    let rep = count_intersecting_pairs(&j49, 12, 1.0).unwrap();
    let bound = (4.0f64 * 0.49).ln() + 0.15;
    let rate = rep.rate.unwrap_or(f64::NEG_INFINITY);
    let disjoint = AffineIfs::new(
        vec![
            TriangularMap::new(0.3, 0.2, 0.1, 0.0, 0.1),
            TriangularMap::new(0.3, 0.2, -0.1, 0.6, 0.5),
        ],
        None,
    )
    .unwrap();
    let zero = count_intersecting_pairs(&disjoint, 12, 1.0).unwrap().count;
    outcome(
        rate <= bound && rep.count % 2 == 0 && zero == 0,
        format!("B_12 = {}, rate {rate:.4} <= {bound:.4}; disjoint system count {zero}", rep.count),
    )
}

fn c8_theorem_a() -> Outcome {
    let cloud = chaos_game(&registry::lookup("j49").unwrap().system(), POINTS, SEED, BURN_IN);
    let scales = dyadic_scales(WINDOW.0, WINDOW.1);
    let target = homogeneous_affinity(2, 0.7, 0.3).unwrap();
    let fibre = 1.4f64.ln() / (10.0f64 / 3.0).ln();
    let bx = box_dimension(&cloud, &scales).unwrap().estimate;
    let width = *scales.last().unwrap();
    let slice = slice_dimension(&cloud, width, &scales).unwrap().estimate;
    outcome(
        (bx - target).abs() <= 0.12 && (slice - fibre).abs() <= 0.12,
        format!("box {bx:.4} vs {target:.4}, slice {slice:.4} vs {fibre:.4} (strip width 2^-{})", WINDOW.1),
    )
}

fn c9_theorem_b() -> Outcome {
    let system = registry::j48_with_b(0.4).unwrap();
    let cloud = chaos_game(&system, POINTS, SEED, BURN_IN);
    let scales = dyadic_scales(WINDOW.0, WINDOW.1);
    let bx = box_dimension(&cloud, &scales).unwrap().estimate;
    let corr = correlation_dimension(&cloud, &scales).unwrap().estimate;
    outcome(bx >= 1.80 && corr >= 1.75, format!("box {bx:.4} (need >= 1.80), correlation {corr:.4} (need >= 1.75)"))
}

fn c10_ordering() -> Outcome {
    let scales = dyadic_scales(WINDOW.0, WINDOW.1);
    let mut ok = true;
    let mut parts = Vec::new();
    for e in registry::examples() {
        let cloud = chaos_game(&e.system(), POINTS, SEED, BURN_IN);
        let bx = box_dimension(&cloud, &scales).unwrap().estimate;
        let corr = correlation_dimension(&cloud, &scales).unwrap().estimate;
        let good = corr <= bx + 0.1;
        ok &= good;
        parts.push(format!("{} corr {corr:.3} box {bx:.3}{}", e.name, if good { "" } else { " (violated)" }));
    }
    outcome(ok, parts.join("; "))
}

fn run_cli(args: &[&str], threads: usize, out: Option<&Path>) -> Vec<u8> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_triaffine"));
    cmd.args(args).args(["--threads", &threads.to_string()]);
    if let Some(p) = out {
        cmd.arg("--out").arg(p);
    }
    let res = cmd.output().expect("spawn triaffine");
    let mut payload = res.stdout;
    payload.extend_from_slice(format!("exit {:?}", res.status.code()).as_bytes());
    if let Some(p) = out {
        payload.extend(std::fs::read(p).unwrap_or_default());
    }
    payload
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<(Vec<&str>, Option<&str>)> = vec![
        (vec!["dim", "--example", "j49"], None),
        (vec!["dim", "--example", "j33"], None),
        (vec!["estimate", "--example", "j49", "--method", "box", "--points", "300000"], None),
        (vec!["estimate", "--example", "j48", "--method", "corr", "--points", "300000"], Some("est.csv")),
        (vec!["estimate", "--example", "j49", "--method", "slice", "--points", "300000"], None),
        (vec!["density", "--example", "j48", "--points", "200000", "--bins", "16,64,256"], None),
        (vec!["check", "--example", "j29", "--kind", "ssp"], None),
        (vec!["check", "--kind", "delta", "--n", "8", "--ratio", "1/2", "--offsets", "0,1,sqrt(2)/2"], None),
        (vec!["check", "--example", "j49", "--kind", "pairs", "--level", "10", "--L", "1"], None),
        (vec!["sweep", "--c", "0.888889", "--steps", "50"], None),
        (vec!["cloud", "--example", "j33", "--points", "300000"], Some("cloud.bin")),
    ];
    let mut bad = Vec::new();
    for (args, file) in &runs {
        let path = file.map(|f| dir.path().join(f));
        let reference = run_cli(args, 1, path.as_deref());
        for threads in [1, 2, 8] {
            if run_cli(args, threads, path.as_deref()) != reference {
                bad.push(format!("{} --threads {threads}", args.join(" ")));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{} commands byte-identical at --threads 1, 2, 8 and on rerun", runs.len())
    } else {
        format!("differs: {}", bad.join("; "))
    };
    outcome(bad.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 11] = [
        (1, "Moran/closed-form agreement", Duration::from_secs(1), c1_moran_closed_form),
        (2, "Lyapunov/affinity identity", Duration::from_secs(1), c2_lyapunov_identity),
        (3, "phase transition", Duration::from_secs(1), c3_phase_transition),
        (4, "exact gap oracle", Duration::from_secs(10), c4_exact_delta),
        (5, "symbolic gap structure", Duration::from_secs(30), c5_symbolic_structure),
        (6, "SSP certificate", Duration::from_secs(60), c6_ssp),
        (7, "pair-count growth", Duration::from_secs(120), c7_pair_growth),
        (8, "theorem A at desk scale", Duration::from_secs(120), c8_theorem_a),
        (9, "theorem B at desk scale", Duration::from_secs(180), c9_theorem_b),
        (10, "estimator ordering", Duration::from_secs(600), c10_ordering),
        (11, "determinism", Duration::from_secs(600), c11_determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = o.pass && in_time;
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        let timing = if in_time { String::new() } else { format!(", over the {}s limit", limit.as_secs()) };
        println!("criterion {id:>2} {tag}: {name}: {} [{:.2}s{timing}]", o.detail, elapsed.as_secs_f64());
        if !pass && !known {
            unexpected.push(id);
        }
        if pass && known {
            println!("criterion {id:>2} now passes; drop it from KNOWN_FAILURES");
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
