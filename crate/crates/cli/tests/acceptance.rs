//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use pragpal_cli::core::prag::ESCAPE_TURN;
use pragpal_cli::core::{
    choose_beta, corridor_points, gallery_layout, ray_boundary_hit, ray_fan, run_simulation,
    BoundedArea, CaseTag, EscapeSide, EventKind, HeadYaw, PathConfig, Point2, Ray,
    SeededRandomSource, SimOptions, StopCondition, WalkTrace,
};
use pragpal_cli::render::{render_svg, RenderOptions};
use pragpal_cli::TraceFile;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($msg)+)),
        }
    };
}

const SEEDS: u64 = 32;
const ADVANCES: u64 = 10_000;
const SEGMENT: f64 = 1.3;

fn prototype_room(seed: u64) -> PathConfig {
    let config = PathConfig::prototype(seed);
    assert_eq!(config.area, BoundedArea::new(24.0, 17.0).unwrap());
    assert_eq!((config.segment_length, config.path_width, config.rays), (1.3, 1.2, 4));
    config
}

fn long_run(seed: u64) -> WalkTrace {
    let options = SimOptions {
        stop: StopCondition::Advances { count: ADVANCES },
        sample_every: 1,
        ..SimOptions::default()
    };
    run_simulation(&prototype_room(seed), &options).expect("prototype room never traps")
}

/// Per-seed results shared by criteria 1 and 2.
struct RunCheck {
    outside_points: usize,
    outside_samples: usize,
    samples: usize,
    worst_gap: f64,
    worst_free_turn: f64,
    worst_escape_error: f64,
    escapes: usize,
    advances: u64,
}

fn check_run(seed: u64) -> RunCheck {
    let trace = long_run(seed);
    let area = trace.config.area;
    let mut r = RunCheck {
        outside_points: 0,
        outside_samples: trace.samples.iter().filter(|s| !area.contains(s.position)).count(),
        samples: trace.samples.len(),
        worst_gap: 0.0,
        worst_free_turn: 0.0,
        worst_escape_error: 0.0,
        escapes: 0,
        advances: trace.totals.advance_count,
    };
    for event in &trace.events {
        r.outside_points += event.window.points.iter().filter(|p| !area.contains(**p)).count();
        for pair in event.window.points.windows(2) {
            r.worst_gap = r.worst_gap.max((pair[0].distance(pair[1]) - SEGMENT).abs());
        }
        for d in &event.decisions {
            let turn = d.turn().abs();
            if d.case_tag == CaseTag::CornerEscape {
                r.escapes += 1;
                r.worst_escape_error = r.worst_escape_error.max((turn - ESCAPE_TURN).abs());
            } else {
                r.worst_free_turn = r.worst_free_turn.max(turn);
            }
        }
    }
    r
}

fn ac1_ac2() -> (Outcome, Outcome) {
    let started = Instant::now();
    let runs: Vec<RunCheck> = (0..SEEDS).map(check_run).collect();
    let elapsed = started.elapsed().as_secs_f64();

    let containment = (|| {
        let points: usize = runs.iter().map(|r| r.outside_points).sum();
        let samples: usize = runs.iter().map(|r| r.outside_samples).sum();
        let total_samples: usize = runs.iter().map(|r| r.samples).sum();
        ensure!(runs.iter().all(|r| r.advances == ADVANCES), "a run stopped early");
        ensure!(points == 0 && samples == 0, "{points} window points and {samples} samples outside");
        ensure!(elapsed < 30.0, "took {elapsed:.1}s, budget 30s");
        Ok(format!(
            "{SEEDS} seeds x {ADVANCES} advances, {total_samples} walker samples, 0 outside, {elapsed:.1}s"
        ))
    })();

    let exactness = (|| {
        let gap = runs.iter().map(|r| r.worst_gap).fold(0.0, f64::max);
        let turn = runs.iter().map(|r| r.worst_free_turn).fold(0.0, f64::max);
        let esc = runs.iter().map(|r| r.worst_escape_error).fold(0.0, f64::max);
        let escapes: usize = runs.iter().map(|r| r.escapes).sum();
        ensure!(gap <= 1e-9, "segment length off by {gap:e}");
        ensure!(turn <= FRAC_PI_2 + 1e-12, "non-escape turn {turn} > pi/2");
        ensure!(esc <= 1e-12, "escape turn off by {esc:e}");
        Ok(format!(
            "max |gap-1.3| = {gap:.1e}, max non-escape |turn| = {turn:.15}, {escapes} escapes with max error {esc:.1e}"
        ))
    })();
    (containment, exactness)
}

fn march(origin: Point2, yaw: f64, length: f64, area: &BoundedArea) -> Option<f64> {
    const STEP: f64 = 1e-4;
    let (s, c) = yaw.sin_cos();
    let mut k = 1u64;
    loop {
        let t = (k as f64 * STEP).min(length);
        if !area.contains(Point2::new(origin.x + t * s, origin.z + t * c)) {
            return Some(t);
        }
        if t >= length {
            return None;
        }
        k += 1;
    }
}

fn true_hit_distance(origin: Point2, yaw: f64, area: &BoundedArea) -> f64 {
    let (s, c) = yaw.sin_cos();
    let mut t = f64::INFINITY;
    if s > 0.0 {
        t = t.min((area.width_x() - origin.x) / s);
    } else if s < 0.0 {
        t = t.min(-origin.x / s);
    }
    if c > 0.0 {
        t = t.min((area.depth_z() - origin.z) / c);
    } else if c < 0.0 {
        t = t.min(-origin.z / c);
    }
    t
}

fn ac3() -> Outcome {
    let started = Instant::now();
    let area = BoundedArea::new(24.0, 17.0).unwrap();
    let mut rng = SeededRandomSource::new(2024);
    let (mut hits, mut grazing) = (0, 0);
    for _ in 0..10_000 {
        let origin = Point2::new(rng.uniform_open(0.0, 24.0), rng.uniform_open(0.0, 17.0));
        let yaw = rng.uniform_open(-PI, PI);
        let length = rng.uniform_open(0.1, 6.0);
        let ray = Ray::new(origin, HeadYaw::new(yaw).unwrap(), length).unwrap();
        let analytic = ray_boundary_hit(&ray, &area).unwrap();
        let marched = march(origin, yaw, length, &area);
        let agree = match (analytic, marched) {
            (Some(a), Some(m)) => (a - m).abs() <= 1e-4 + 1e-9,
            (None, None) => true,
            _ => false,
        };
        if analytic.is_some() {
            hits += 1;
        }
        if !agree {
            let truth = true_hit_distance(origin, yaw, &area);
            ensure!(
                (truth - length).abs() <= 2e-4,
                "analytic {analytic:?} vs marched {marched:?} at {origin:?} yaw {yaw} length {length}"
            );
            grazing += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    ensure!(elapsed < 10.0, "took {elapsed:.1}s, budget 10s");
    Ok(format!("10000 rays, {hits} hits, {grazing} grazing disagreements, {elapsed:.2}s"))
}

fn ac4() -> Outcome {
    let area = BoundedArea::new(24.0, 17.0).unwrap();
    let mut rng = SeededRandomSource::new(4);
    let mut worst = 0.0f64;
    for j in [1u32, 2, 4, 8] {
        for _ in 0..1000 {
            let beta = HeadYaw::new(rng.uniform_open(-PI, PI)).unwrap();
            let fan = ray_fan(beta, j, Point2::new(12.0, 8.5), 1.9, &area).unwrap();
            ensure!(fan.angles.len() == j as usize + 1, "j={j}: {} angles", fan.angles.len());
            let err = |a: HeadYaw, expected: f64| HeadYaw::new(a.radians() - expected).unwrap().radians().abs();
            worst = worst.max(err(fan.angles[0], beta.radians() - FRAC_PI_2));
            worst = worst.max(err(fan.angles[j as usize], beta.radians() + FRAC_PI_2));
            for (k, pair) in fan.angles.windows(2).enumerate() {
                worst = worst.max(err(pair[1], pair[0].radians() + PI / j as f64));
                // gamma_k = beta - pi/2 + (pi/j) k
                worst = worst.max(err(pair[0], beta.radians() - FRAC_PI_2 + PI / j as f64 * k as f64));
            }
        }
    }
    ensure!(worst <= 1e-12, "worst angular error {worst:e}");
    Ok(format!("j in {{1,2,4,8}} x 1000 yaws, worst error {worst:.1e}"))
}

fn ac5(dir: &Path) -> Outcome {
    let bin = env!("CARGO_BIN_EXE_pragpal");
    let run = |seed: &str, name: &str| -> Result<Vec<u8>, String> {
        let out = dir.join(name);
        let status = Command::new(bin)
            .args(["simulate", "--area", "24x17", "--segment-length", "1.3", "--path-width", "1.2"])
            .args(["--rays", "4", "--duration", "300", "--seed", seed, "--out"])
            .arg(&out)
            .env_remove("PRAGPAL_SEED")
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(status.status.success(), "simulate failed: {}", String::from_utf8_lossy(&status.stderr));
        fs::read(&out).map_err(|e| e.to_string())
    };
    let a = run("42", "a.json")?;
    let b = run("42", "b.json")?;
    ensure!(a == b, "same seed produced different bytes");
    let c = run("43", "c.json")?;
    let betas = |bytes: &[u8]| -> Result<Vec<f64>, String> {
        let t = TraceFile::from_json(std::str::from_utf8(bytes).unwrap(), Path::new("t")).map_err(|e| e.to_string())?;
        Ok(t.events
            .iter()
            .filter(|e| e.kind != EventKind::Start)
            .take(100)
            .map(|e| e.decisions[0].beta_next.radians())
            .collect())
    };
    let (ba, bc) = (betas(&a)?, betas(&c)?);
    ensure!(ba.len() == 100 && bc.len() == 100, "fewer than 100 advances");
    let differing = ba.iter().zip(&bc).filter(|(x, y)| x != y).count();
    ensure!(differing >= 1, "seed 42 and 43 agree on the first 100 betas");
    Ok(format!("{} identical bytes for seed 42; seed 43 differs in {differing}/100 betas", a.len()))
}

fn ac6() -> Outcome {
    let straight = corridor_points(&[Point2::new(0.0, 0.0), Point2::new(0.0, 1.0), Point2::new(0.0, 2.0)], 1.2)
        .map_err(|e| e.to_string())?;
    let mut worst_width = 0.0f64;
    for i in 0..3 {
        // path runs along +z, so the separation is measured along x
        worst_width = worst_width.max((straight.right[i].x - straight.left[i].x - 1.2).abs());
    }
    ensure!(worst_width <= 1e-9, "straight-run width off by {worst_width:e}");

    let turn = corridor_points(&[Point2::new(0.0, 0.0), Point2::new(0.0, 1.0), Point2::new(1.0, 1.0)], 1.2)
        .map_err(|e| e.to_string())?;
    // average of (0,1) and (1,0), normalized -> (s, s); right perpendicular (s, -s)
    let s = FRAC_1_SQRT_2;
    let expected = Point2::new(0.0 + 0.6 * s, 1.0 - 0.6 * s);
    let err = turn.right[1].distance(expected);
    ensure!(err <= 1e-9, "Pr_1 = {:?}, expected {expected:?}", turn.right[1]);
    let expected_left = Point2::new(-0.6 * s, 1.0 + 0.6 * s);
    ensure!(turn.left[1].distance(expected_left) <= 1e-9, "Pl_1 = {:?}", turn.left[1]);

    let layout = gallery_layout(1.3, 0.5, 0.1);
    ensure!(layout.panel_centers.len() == 2, "{} panels on a 1.3 wall", layout.panel_centers.len());
    ensure!(
        (layout.panel_centers[0] - 0.35).abs() < 1e-12 && (layout.panel_centers[1] - 0.95).abs() < 1e-12,
        "centers {:?}",
        layout.panel_centers
    );
    Ok(format!(
        "straight width error {worst_width:.1e}; Pr_1 = ({:.9}, {:.9}), error {err:.1e}; 2 panels at 0.35, 0.95",
        turn.right[1].x, turn.right[1].z
    ))
}

fn ac7() -> Outcome {
    let mut lines = Vec::new();
    for (seed, seconds, dt) in [(42u64, 300.0, 1.0 / 72.0), (7, 123.4, 0.01), (9, 59.99, 1.0 / 90.0)] {
        let mut config = prototype_room(seed);
        config.walker_speed = if seed == 7 { 0.9 } else { 1.4 };
        let options = SimOptions {
            stop: StopCondition::Duration { seconds },
            dt,
            sample_every: 50,
            ..SimOptions::default()
        };
        let trace = run_simulation(&config, &options).map_err(|e| e.to_string())?;
        let expected = config.walker_speed * seconds;
        let quantum = config.walker_speed * dt;
        let err = (trace.totals.pal_units - expected).abs();
        ensure!(err <= quantum, "seed {seed}: pal {} vs {expected}", trace.totals.pal_units);
        lines.push(format!("{:.4}/{expected:.4}", trace.totals.pal_units));
    }
    Ok(format!("pal vs speed*duration within one step: {}", lines.join(", ")))
}

fn ac8() -> Outcome {
    let config = prototype_room(0);
    let length = config.ray_length();
    let hits = |origin: Point2, yaw: f64| true_hit_distance(origin, yaw, &config.area) <= length;

    let mut report = Vec::new();
    // Facing straight into the (0,0) corner: both escape rays run along a wall.
    // Rotated by 0.5 rad: only the minus escape ray is clear.
    for (origin, beta) in [
        (Point2::new(0.5, 0.5), -3.0 * PI / 4.0),
        (Point2::new(0.5, 0.5), -3.0 * PI / 4.0 - 0.5),
        (Point2::new(23.6, 16.4), PI / 4.0),
    ] {
        let beta_prev = HeadYaw::new(beta).unwrap();
        let fan_hits = (0..=4).filter(|&k| hits(origin, beta - FRAC_PI_2 + PI / 4.0 * k as f64)).count();
        ensure!(fan_hits == 5, "{origin:?}: oracle sees only {fan_hits} fan hits");
        let minus_clear = !hits(origin, beta - ESCAPE_TURN);
        let plus_clear = !hits(origin, beta + ESCAPE_TURN);
        ensure!(minus_clear || plus_clear, "{origin:?}: both escape rays blocked");

        let mut seen = (false, false);
        for seed in 0..32 {
            let d = choose_beta(origin, beta_prev, &config, &mut SeededRandomSource::new(seed))
                .map_err(|e| e.to_string())?;
            ensure!(d.case_tag == CaseTag::CornerEscape, "{origin:?}: case {:?}", d.case_tag);
            let side = d.chosen_escape.ok_or("no escape side recorded")?;
            let clear = match side {
                EscapeSide::Minus => {
                    seen.0 = true;
                    minus_clear
                }
                EscapeSide::Plus => {
                    seen.1 = true;
                    plus_clear
                }
            };
            ensure!(clear, "{origin:?}: took blocked escape {side:?}");
            ensure!((d.turn() - side.turn()).abs() < 1e-12, "turn {} for {side:?}", d.turn());
            let expected_prag = 5 + (!minus_clear) as u32 + (!plus_clear) as u32;
            ensure!(d.prag_units == expected_prag, "prag {} vs {expected_prag}", d.prag_units);
        }
        ensure!(seen.0 == minus_clear && seen.1 == plus_clear, "{origin:?}: picks {seen:?}");
        report.push(format!("({}, {}) minus={minus_clear} plus={plus_clear}", origin.x, origin.z));
    }
    Ok(report.join("; "))
}

fn ac9(dir: &Path) -> Outcome {
    let bin = env!("CARGO_BIN_EXE_pragpal");
    let o = Command::new(bin)
        .args(["simulate", "--area", "2x2", "--segment-length", "1.3", "--path-width", "1.2", "--out"])
        .arg(dir.join("never.json"))
        .output()
        .map_err(|e| e.to_string())?;
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    ensure!(o.status.code() == Some(2), "exit {:?}", o.status.code());
    ensure!(
        err.contains("min(width_x, depth_z) >= 2*(segment_length + path_width/2)") && err.contains("2 < 2*1.9"),
        "message does not name the rule: {err}"
    );

    let config = prototype_room(0);
    let path: Vec<Point2> = (0..8).map(|i| Point2::new(12.0, 3.0 + 1.3 * i as f64)).collect();
    let synthetic = TraceFile::from_center_path(config, &path).map_err(|e| e.to_string())?;
    let trace_path = dir.join("straight.json");
    let svg_path = dir.join("straight.svg");
    synthetic.write(&trace_path).map_err(|e| e.to_string())?;
    let o = Command::new(bin)
        .arg("render")
        .arg(&trace_path)
        .arg("--out")
        .arg(&svg_path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(o.status.success(), "render failed: {}", String::from_utf8_lossy(&o.stderr));
    let svg = fs::read_to_string(&svg_path).map_err(|e| e.to_string())?;
    let walls = svg.matches(r#"<polyline class="wall "#).count();
    ensure!(walls == 2, "{walls} wall polylines");
    ensure!(svg == render_svg(&synthetic, &RenderOptions::default()).unwrap(), "CLI and library SVG differ");
    Ok(format!("exit 2 naming the rule; straight-run SVG has {walls} wall polylines"))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let guarded = |f: &dyn Fn() -> Outcome| -> Outcome {
        catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()))
    };
    let (ac1, ac2) = catch_unwind(ac1_ac2).unwrap_or_else(|_| (Err("panicked".into()), Err("panicked".into())));
    let results = [
        ("AC1 containment", ac1),
        ("AC2 geometry exactness", ac2),
        ("AC3 ray oracle equivalence", guarded(&ac3)),
        ("AC4 fan correctness", guarded(&ac4)),
        ("AC5 determinism", guarded(&|| ac5(dir.path()))),
        ("AC6 corridor", guarded(&ac6)),
        ("AC7 pal accounting", guarded(&ac7)),
        ("AC8 corner escape", guarded(&ac8)),
        ("AC9 CLI contract", guarded(&|| ac9(dir.path()))),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
