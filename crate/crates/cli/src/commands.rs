use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use fpvac::bogoliubov::{extrapolated_entry, verify_table, CoefficientTable, RelationReport};
use fpvac::config::{
    parse_scenario, BogoliubovConfig, DetectorConfig, FeasibilityConfig, ModesConfig, QuadrantConfig, VacuumConfig,
};
use fpvac::detector::{
    extrapolated_rate, integrand_identity_check, thermal_rate, windowed_response, ResponseConfig, TrajectoryKind,
    WindowConfig,
};
use fpvac::export::{write_csv, write_json, CoefficientRecord};
use fpvac::modes::{g_mode_positivity, mode_big_g, mode_g_of_v, GVariant, ModeSpec};
use fpvac::spacetime::{classify, from_quadrant, to_quadrant, Quadrant, Region, SpacetimeEvent};
use fpvac::{feasibility, vacuum};
use log::info;
use rayon::prelude::*;
use serde::Serialize;

use crate::Failure;

pub const QUADRANT_COLUMNS: &str = "\
Writes quadrant.csv with columns:
  t, z            event coordinates
  region          F, P, R, L or boundary
  u_time, u_space chart coordinates (empty on the light cone)
  v, u            null coordinates t + z and t - z
  roundtrip_error distance between the event and its chart round trip";

pub const MODES_COLUMNS: &str = "\
Writes modes.csv with columns:
  omega                   mode frequency
  v                       null coordinate V (negative V uses the P mode)
  re_g, im_g              quadrant mode g at V
  re_big_g, im_big_g      combined mode G
  re_big_gbar, im_big_gbar combined mode G-bar
and modes_positivity.csv with columns:
  omega, variant (G or GBar), sigma, cell_width, fraction (negative-frequency power fraction)";

pub const BOGOLIUBOV_COLUMNS: &str = "\
Writes bogoliubov.csv with columns:
  quadrant, omega, k    mode labels
  delta                 damping of a raw projection; 0 for the extrapolated row
  re_alpha, im_alpha    alpha coefficient
  re_beta, im_beta      beta coefficient
  err                   error estimate
Raw ladder rows precede the extrapolated row for each (omega, k, quadrant).
Relation deviations go to bogoliubov.json.";

pub const VACUUM_COLUMNS: &str = "\
Writes vacuum.csv with columns:
  n            occupation number
  amplitude    coefficient of |n>_F |n>_P in the normalized state
  probability  reduced density matrix diagonal
and the summary to vacuum.json.";

pub const DETECTOR_COLUMNS: &str = "\
Writes detector_rates.csv with columns:
  energy_over_a, energy  detector gap
  rate                   extrapolated stationary response rate
  error_estimate         extrapolation plus quadrature error
  thermal                Planckian reference rate
  relative_deviation     |rate - thermal| / thermal
  epsilon                finest regulator of the extrapolation ladder
  range                  half-range of the proper-time difference integral
detector_windowed.csv with columns:
  energy_over_a, energy, inertial, accelerated, difference
and the identity check to detector.json.";

pub const FEASIBILITY_COLUMNS: &str = "Writes feasibility.json; no CSV output.";

fn create(out_dir: &Path, name: &str) -> Result<BufWriter<File>, Failure> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", out_dir.display())))?;
    let path: PathBuf = out_dir.join(name);
    let file = File::create(&path).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    info!("writing {}", path.display());
    Ok(BufWriter::new(file))
}

#[derive(Serialize)]
struct QuadrantRow {
    t: f64,
    z: f64,
    region: String,
    u_time: Option<f64>,
    u_space: Option<f64>,
    v: f64,
    u: f64,
    roundtrip_error: Option<f64>,
}

fn quadrant_row(t: f64, z: f64, a: f64) -> Result<QuadrantRow, Failure> {
    let event = SpacetimeEvent::new(t, z)?;
    let null = event.null();
    let mut row = QuadrantRow {
        t,
        z,
        region: "boundary".into(),
        u_time: None,
        u_space: None,
        v: null.v,
        u: null.u,
        roundtrip_error: None,
    };
    if let Region::Inside(q) = classify(event) {
        let qc = to_quadrant(event, a)?;
        let back = from_quadrant(qc);
        row.region = q.to_string();
        row.u_time = Some(qc.u_time);
        row.u_space = Some(qc.u_space);
        row.roundtrip_error = Some((back.t - t).hypot(back.z - z));
    }
    Ok(row)
}

pub fn quadrant(out_dir: &Path, cfg: QuadrantConfig) -> Result<(), Failure> {
    cfg.validate()?;
    if let (Some(t), Some(z)) = (cfg.t, cfg.z) {
        let row = quadrant_row(t, z, cfg.a)?;
        println!("event (t = {t}, z = {z}): region {}", row.region);
        if let (Some(x), Some(y), Some(err)) = (row.u_time, row.u_space, row.roundtrip_error) {
            println!("chart coordinates ({x}, {y}), round-trip error {err:e}");
        }
        println!("null coordinates V = {}, U = {}", row.v, row.u);
        write_json(create(out_dir, "quadrant.json")?, &cfg, &row)?;
        return Ok(());
    }
    let step = 2.0 * cfg.extent / (cfg.points - 1) as f64;
    let coords: Vec<f64> = (0..cfg.points).map(|j| -cfg.extent + step * j as f64).collect();
    let rows = coords
        .par_iter()
        .flat_map_iter(|&t| coords.iter().map(move |&z| (t, z)))
        .map(|(t, z)| quadrant_row(t, z, cfg.a))
        .collect::<Result<Vec<_>, _>>()?;
    let worst = rows.iter().filter_map(|r| r.roundtrip_error).fold(0.0, f64::max);
    println!("{} events, worst round-trip error {worst:e}", rows.len());
    write_csv(create(out_dir, "quadrant.csv")?, &cfg, &rows)?;
    Ok(())
}

#[derive(Serialize)]
struct ModeRow {
    omega: f64,
    v: f64,
    re_g: f64,
    im_g: f64,
    re_big_g: f64,
    im_big_g: f64,
    re_big_gbar: f64,
    im_big_gbar: f64,
}

#[derive(Serialize)]
struct PositivityRow {
    omega: f64,
    variant: &'static str,
    sigma: f64,
    cell_width: f64,
    fraction: f64,
}

pub fn modes(out_dir: &Path, cfg: ModesConfig) -> Result<(), Failure> {
    cfg.validate()?;
    let a = cfg.a;
    let positive = fpvac::bogoliubov::log_grid(cfg.v_min, cfg.v_max, cfg.points)?;
    let grid: Vec<f64> = positive.iter().rev().map(|v| -v).chain(positive.iter().copied()).collect();
    let refinements = cfg.refinements();

    let per_omega = cfg
        .omega_over_a
        .par_iter()
        .map(|&w| -> Result<(Vec<ModeRow>, Vec<PositivityRow>), Failure> {
            let omega = w * a;
            let f = ModeSpec::new(Quadrant::F, omega, a)?;
            let p = ModeSpec::new(Quadrant::P, omega, a)?;
            let mut rows = Vec::with_capacity(grid.len());
            for &v in &grid {
                let g = if v > 0.0 { mode_g_of_v(&f, v) } else { mode_g_of_v(&p, v) };
                let big = mode_big_g(omega, a, v, GVariant::G)?;
                let bar = mode_big_g(omega, a, v, GVariant::GBar)?;
                rows.push(ModeRow {
                    omega,
                    v,
                    re_g: g.re,
                    im_g: g.im,
                    re_big_g: big.re,
                    im_big_g: big.im,
                    re_big_gbar: bar.re,
                    im_big_gbar: bar.im,
                });
            }
            let mut fractions = Vec::new();
            for (variant, label) in [(GVariant::G, "G"), (GVariant::GBar, "GBar")] {
                for level in g_mode_positivity(omega, a, variant, &refinements)? {
                    fractions.push(PositivityRow {
                        omega,
                        variant: label,
                        sigma: level.sigma,
                        cell_width: level.cell_width,
                        fraction: level.fraction,
                    });
                }
            }
            Ok((rows, fractions))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let (mut rows, mut fractions) = (Vec::new(), Vec::new());
    for (r, f) in per_omega {
        rows.extend(r);
        fractions.extend(f);
    }
    for f in &fractions {
        println!(
            "omega = {:<8} {:<4} sigma = {:<8.4} negative-frequency fraction {:.3e}",
            f.omega, f.variant, f.sigma, f.fraction
        );
    }
    write_csv(create(out_dir, "modes.csv")?, &cfg, &rows)?;
    write_csv(create(out_dir, "modes_positivity.csv")?, &cfg, &fractions)?;
    Ok(())
}

pub fn bogoliubov(out_dir: &Path, cfg: BogoliubovConfig) -> Result<(), Failure> {
    cfg.validate()?;
    let (a, ladder) = (cfg.a, cfg.ladder());
    let jobs: Vec<(f64, f64, Quadrant)> = cfg
        .omega_over_a
        .iter()
        .flat_map(|&w| {
            cfg.k
                .iter()
                .flat_map(move |&k| Quadrant::ALL.into_iter().map(move |q| (w * a, k, q)))
        })
        .collect();
    let mut results = jobs
        .par_iter()
        .map(|&(omega, k, q)| extrapolated_entry(&ModeSpec::new(q, omega, a)?, k, &ladder, &cfg.quad))
        .collect::<fpvac::Result<Vec<_>>>()?
        .into_iter();

    let mut rows = Vec::new();
    let mut reports: Vec<RelationReport> = Vec::new();
    for &w in &cfg.omega_over_a {
        let per_omega: Vec<_> = results.by_ref().take(cfg.k.len() * Quadrant::ALL.len()).collect();
        for (raw, limit) in &per_omega {
            rows.extend(raw.iter().map(CoefficientRecord::from));
            rows.push(CoefficientRecord::from(limit));
        }
        let table = CoefficientTable::assemble(w * a, a, &cfg.k, per_omega)?;
        let report = verify_table(&table)?;
        println!(
            "omega/a = {w}: identity deviation {:.3e}, |beta/alpha| - exp(-pi omega/a) {:.3e}, phase {:.3e}",
            report.max_identity_deviation(),
            report.modulus_ratio,
            report.phase
        );
        reports.push(report);
    }
    write_csv(create(out_dir, "bogoliubov.csv")?, &cfg, &rows)?;
    write_json(create(out_dir, "bogoliubov.json")?, &cfg, &reports)?;
    Ok(())
}

#[derive(Serialize)]
struct VacuumRow {
    n: usize,
    amplitude: f64,
    probability: f64,
}

pub fn vacuum(out_dir: &Path, cfg: VacuumConfig) -> Result<(), Failure> {
    cfg.validate()?;
    let state = match cfg.n_trunc {
        Some(n) => vacuum::build_state(cfg.omega, cfg.a, n)?,
        None => vacuum::build_state_default(cfg.omega, cfg.a)?,
    };
    let summary = vacuum::summarize(&state)?;
    let reduced = vacuum::reduce_to_f(&state);
    println!("q = {:.15e}", summary.q);
    println!("n̄ = {:.15e}", summary.mean_occupation);
    println!("S = {:.15e}", summary.entropy_closed_form);
    println!(
        "n_trunc = {}, truncated-state S = {:.15e}, residuals {:.3e} / {:.3e} / {:.3e}",
        summary.n_trunc, summary.entropy, summary.residual_lower_f, summary.residual_lower_p, summary.residual_number
    );
    if let Some(w) = &summary.warning {
        eprintln!("warning: {w}");
    }
    let rows: Vec<VacuumRow> = state
        .amplitudes
        .iter()
        .zip(&reduced.probabilities)
        .enumerate()
        .map(|(n, (&c, &p))| VacuumRow { n, amplitude: c, probability: p })
        .collect();
    write_csv(create(out_dir, "vacuum.csv")?, &cfg, &rows)?;
    write_json(create(out_dir, "vacuum.json")?, &cfg, &summary)?;
    Ok(())
}

#[derive(Serialize)]
struct RateRow {
    energy_over_a: f64,
    energy: f64,
    rate: f64,
    error_estimate: f64,
    thermal: f64,
    relative_deviation: f64,
    epsilon: f64,
    range: f64,
}

#[derive(Serialize)]
struct WindowRow {
    energy_over_a: f64,
    energy: f64,
    inertial: f64,
    accelerated: f64,
    difference: f64,
}

#[derive(Serialize)]
struct DetectorSummary {
    identity_samples: usize,
    identity_deviation: f64,
    worst_rate_deviation: f64,
}

pub fn detector(out_dir: &Path, cfg: DetectorConfig) -> Result<(), Failure> {
    cfg.validate()?;
    let a = cfg.a;
    let n = cfg.identity_samples.max(1);
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let s = (-5.0 + 10.0 * j as f64 / n as f64) / a;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            (s, s + sign * 0.25 * (1 + j % 7) as f64 / a)
        })
        .collect();
    let identity_deviation = integrand_identity_check(a, &samples)?;
    println!("integrand identity: worst relative deviation {identity_deviation:.3e} over {n} pairs");

    let epsilons: Vec<f64> = cfg.epsilons.iter().map(|e| e / a).collect();
    let rates = cfg
        .energy_over_a
        .par_iter()
        .map(|&w| {
            let energy = w * a;
            let base = ResponseConfig::new(energy, a, epsilons[0], cfg.delta_range / a);
            let limit = extrapolated_rate(&base, &epsilons)?;
            let thermal = thermal_rate(energy, a);
            Ok(RateRow {
                energy_over_a: w,
                energy,
                rate: limit.value,
                error_estimate: limit.error_estimate,
                thermal,
                relative_deviation: (limit.value - thermal).abs() / thermal,
                epsilon: epsilons[epsilons.len() - 1],
                range: cfg.delta_range / a,
            })
        })
        .collect::<fpvac::Result<Vec<_>>>()?;
    let windowed = cfg
        .energy_over_a
        .par_iter()
        .map(|&w| {
            let energy = w * a;
            let wc = WindowConfig::new(energy, a, cfg.window_epsilon / a, cfg.window_start / a, cfg.window_end / a);
            let inertial = windowed_response(TrajectoryKind::InertialScaled, &wc)?.value;
            let accelerated = windowed_response(TrajectoryKind::Accelerated, &wc)?.value;
            Ok(WindowRow { energy_over_a: w, energy, inertial, accelerated, difference: inertial - accelerated })
        })
        .collect::<fpvac::Result<Vec<_>>>()?;

    for r in &rates {
        println!(
            "E/a = {:<6} rate {:.10e}  thermal {:.10e}  relative deviation {:.2e}",
            r.energy_over_a, r.rate, r.thermal, r.relative_deviation
        );
    }
    let summary = DetectorSummary {
        identity_samples: n,
        identity_deviation,
        worst_rate_deviation: rates.iter().map(|r| r.relative_deviation).fold(0.0, f64::max),
    };
    write_csv(create(out_dir, "detector_rates.csv")?, &cfg, &rates)?;
    write_csv(create(out_dir, "detector_windowed.csv")?, &cfg, &windowed)?;
    write_json(create(out_dir, "detector.json")?, &cfg, &summary)?;
    Ok(())
}

pub fn feasibility(out_dir: &Path, cfg: FeasibilityConfig) -> Result<(), Failure> {
    cfg.validate()?;
    let scenario = match &cfg.scenario {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read scenario {path}: {e}")))?;
            Some(parse_scenario(&text)?)
        }
        None => None,
    };
    let report = feasibility::report(cfg.temperature, scenario.as_ref())?;
    println!("T = {} K", report.temperature_k);
    println!("a = {:.6e} rad/s ({:.6e} Hz as ordinary frequency)", report.a_angular, report.a_ordinary_hz);
    println!("equivalent Unruh acceleration = {:.6e} m/s^2", report.unruh_acceleration);
    println!("growth threshold at t1*E1 = 1: {:.6}", report.threshold_at_unit_product);
    if let Some(s) = &report.scenario {
        println!(
            "scenario: T = {:.6e} K, E2 = {:.6e} Hz, threshold {:.6e}, margin {:.6e}",
            s.temperature_k, s.e_bar_2, s.threshold, s.margin
        );
    }
    write_json(create(out_dir, "feasibility.json")?, &cfg, &report)?;
    Ok(())
}

pub fn verify() -> Result<(), Failure> {
    let outcomes = fpvac::acceptance::run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed || !o.within_limit()).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        return Err(Failure::Numerical(format!("{failed} acceptance criteria failed")));
    }
    Ok(())
}
