//! The experiment commands behind the CLI subcommands.

use anyhow::{anyhow, bail, Result};

use billiard_core::liouville;
use billiard_core::map::{self, PhasePoint, SingularReason, Termination};
use billiard_core::rotation;
use billiard_core::stats;

use crate::config::Experiment;
use crate::output::{cols, Table, Value};

fn termination_label(t: &Termination<f64>) -> &'static str {
    match t {
        Termination::Completed => "completed",
        Termination::Singular(SingularReason::CornerHit { .. }) => "corner_hit",
        Termination::Singular(SingularReason::Tangential { .. }) => "tangential",
        Termination::Singular(SingularReason::NoIntersection) => "no_intersection",
    }
}

/// Trace a single orbit: one row per visited phase point with its outgoing
/// chord, a trailer with the termination reason.
pub fn orbit(exp: &Experiment) -> Result<()> {
    let z = exp.initial.ok_or_else(|| {
        anyhow!("orbit requires an initial phase point ([initial] in the config or --component/--s0/--theta0)")
    })?;
    let mut table = Table::new(
        exp,
        cols(&["k", "component", "s", "theta", "x", "y", "chord_length"]),
    );
    let dom = &exp.domain;
    let summary = map::orbit(dom, &z, exp.steps, |k, cur, _next, chord| {
        let p = map::footpoint(dom, cur);
        table.rows.push(vec![
            Value::Int(k as i64),
            Value::Int(cur.component as i64),
            Value::Real(cur.s),
            Value::Real(cur.theta),
            Value::Real(p.x),
            Value::Real(p.y),
            Value::Real(chord),
        ]);
    });
    table.push_trailer("termination", termination_label(&summary.termination));
    table.push_trailer("steps_completed", summary.steps_completed);
    table.emit(exp)
}

/// Draw a sample (redrawing within the substream on singular estimates is
/// the caller's policy; here we just expose the substream sampling).
fn sample_at(exp: &Experiment, index: u64) -> PhasePoint<f64> {
    let mut rng = liouville::substream_rng(exp.seed, index);
    liouville::sample(&exp.domain, &mut rng)
}

/// Rotation number estimates on a simply connected table: one row per
/// sample, or a single row for an explicit initial point.
pub fn rotnum(exp: &Experiment) -> Result<()> {
    if exp.domain.num_components() != 1 {
        bail!("rotnum requires a simply connected table (q = 1); use rotvec for annuli");
    }
    let mut table = Table::new(
        exp,
        cols(&[
            "sample_id",
            "component",
            "s0",
            "theta0",
            "rho_N",
            "half_width",
            "steps_completed",
            "singular",
        ]),
    );
    let points: Vec<PhasePoint<f64>> = match exp.initial {
        Some(z) => vec![z],
        None => (0..exp.samples).map(|i| sample_at(exp, i as u64)).collect(),
    };
    for (i, z) in points.iter().enumerate() {
        let est = rotation::rotation_number(&exp.domain, z, exp.steps)
            .map_err(|e| anyhow!("rotation number: {e}"))?;
        table.rows.push(vec![
            Value::Int(i as i64),
            Value::Int(z.component as i64),
            Value::Real(z.s),
            Value::Real(z.theta),
            Value::Real(est.rho),
            Value::Real(est.half_width),
            Value::Int(est.steps as i64),
            Value::Int(est.terminated_singular as i64),
        ]);
    }
    table.emit(exp)
}

/// Per-component rotation vector estimates plus the total rotation number.
pub fn rotvec(exp: &Experiment) -> Result<()> {
    let q = exp.domain.num_components();
    let mut names: Vec<String> = vec![
        "sample_id".into(),
        "component".into(),
        "s0".into(),
        "theta0".into(),
    ];
    for alpha in 0..q {
        names.push(format!("rho_{alpha}"));
        names.push(format!("upsilon_{alpha}"));
        names.push(format!("n_{alpha}"));
    }
    names.push("rho_total".into());
    names.push("steps_completed".into());
    names.push("singular".into());
    let mut table = Table::new(exp, names);

    let points: Vec<PhasePoint<f64>> = match exp.initial {
        Some(z) => vec![z],
        None => (0..exp.samples).map(|i| sample_at(exp, i as u64)).collect(),
    };
    for (i, z) in points.iter().enumerate() {
        let v = rotation::rotation_vector(&exp.domain, z, exp.steps)
            .map_err(|e| anyhow!("rotation vector: {e}"))?;
        let mut row = vec![
            Value::Int(i as i64),
            Value::Int(z.component as i64),
            Value::Real(z.s),
            Value::Real(z.theta),
        ];
        for alpha in 0..q {
            row.push(Value::Real(v.rho[alpha]));
            row.push(Value::Real(v.upsilon[alpha]));
            row.push(Value::Int(v.visits[alpha] as i64));
        }
        row.push(Value::Real(rotation::rotation_number_total(&v)));
        row.push(Value::Int(v.steps as i64));
        row.push(Value::Int(v.terminated_singular as i64));
        table.rows.push(row);
    }
    table.emit(exp)
}

/// Monte Carlo mean of the rotation number (q = 1) or rotation vector
/// (q > 1) against the theoretical target `perimeter_a / (2 |boundary|)`,
/// with a PASS/FAIL verdict at 3 standard errors plus the finite-N bias
/// allowance 2/N.
pub fn mean_check(exp: &Experiment) -> Result<()> {
    let dom = &exp.domain;
    let q = dom.num_components();
    let n = exp.steps;
    if exp.samples < 2 {
        bail!("mean-check needs at least 2 samples");
    }
    let est = liouville::mc_integrate(
        dom,
        q,
        |z, out| match rotation::rotation_vector(dom, z, n) {
            Ok(v) if !v.terminated_singular => {
                out.copy_from_slice(&v.rho);
                true
            }
            _ => false,
        },
        exp.samples,
        exp.seed,
    )
    .map_err(|e| anyhow!("monte carlo integration failed: {e}"))?;

    let total = dom.total_perimeter();
    let mut table = Table::new(
        exp,
        cols(&[
            "component",
            "target",
            "estimate",
            "std_error",
            "tolerance",
            "abs_error",
            "pass",
        ]),
    );
    let mut all_pass = true;
    println!(
        "mean-check: q={q}, samples={}, steps={n}, seed={}, singular_discarded={}",
        exp.samples, exp.seed, est.n_singular_discarded
    );
    for alpha in 0..q {
        let target = 0.5 * dom.perimeter(alpha).unwrap() / total;
        let tol = 3.0 * est.std_error[alpha] + 2.0 / n as f64;
        let err = (est.mean[alpha] - target).abs();
        let pass = err <= tol;
        all_pass &= pass;
        println!(
            "  component {alpha}: estimate {:.6} +- {:.6}, target {:.6}, |error| {:.3e} <= {:.3e} -> {}",
            est.mean[alpha],
            est.std_error[alpha],
            target,
            err,
            tol,
            if pass { "PASS" } else { "FAIL" }
        );
        table.rows.push(vec![
            Value::Int(alpha as i64),
            Value::Real(target),
            Value::Real(est.mean[alpha]),
            Value::Real(est.std_error[alpha]),
            Value::Real(tol),
            Value::Real(err),
            Value::Str(if pass { "PASS".into() } else { "FAIL".into() }),
        ]);
    }
    println!("  overall: {}", if all_pass { "PASS" } else { "FAIL" });
    table.push_trailer("result", if all_pass { "PASS" } else { "FAIL" });
    table.push_trailer("n_singular_discarded", est.n_singular_discarded);
    if exp.out.is_some() {
        table.emit(exp)?;
    }
    Ok(())
}

/// Estimate rho_N for `samples` Liouville points, redrawing singular orbits
/// within each sample's substream.
fn rho_samples(exp: &Experiment) -> Result<Vec<f64>> {
    let dom = &exp.domain;
    let mut out = Vec::with_capacity(exp.samples);
    for i in 0..exp.samples {
        let mut rng = liouville::substream_rng(exp.seed, i as u64);
        let mut redraws = 0;
        loop {
            let z = liouville::sample(dom, &mut rng);
            let v = rotation::rotation_vector(dom, &z, exp.steps)
                .map_err(|e| anyhow!("rotation estimate: {e}"))?;
            if !v.terminated_singular {
                out.push(rotation::rotation_number_total(&v));
                break;
            }
            redraws += 1;
            if redraws > 1000 {
                bail!("too many singular samples; the table geometry looks suspicious");
            }
        }
    }
    Ok(out)
}

/// Histogram of rho over [0, 1] plus a mirror-gap statistic and a
/// two-sample KS test of {rho} against {1 - rho} at the 99.9% level.
pub fn symmetry_check(exp: &Experiment) -> Result<()> {
    if exp.samples < 2 {
        bail!(
            "symmetry-check: insufficient samples (need at least 2, got {})",
            exp.samples
        );
    }
    let rhos = rho_samples(exp)?;
    let mirrored: Vec<f64> = rhos.iter().map(|r| 1.0 - r).collect();

    let bins = exp.bins;
    let mut counts = vec![0usize; bins];
    for r in &rhos {
        let b = ((r * bins as f64).floor() as usize).min(bins - 1);
        counts[b] += 1;
    }
    let mut table = Table::new(exp, cols(&["bin", "lo", "hi", "count", "mirror_count"]));
    let mut max_gap = 0i64;
    for b in 0..bins {
        let mirror = counts[bins - 1 - b];
        max_gap = max_gap.max((counts[b] as i64 - mirror as i64).abs());
        table.rows.push(vec![
            Value::Int(b as i64),
            Value::Real(b as f64 / bins as f64),
            Value::Real((b + 1) as f64 / bins as f64),
            Value::Int(counts[b] as i64),
            Value::Int(mirror as i64),
        ]);
    }
    let d = stats::two_sample_ks(&rhos, &mirrored);
    let thr: f64 = stats::ks_threshold_999(rhos.len(), mirrored.len());
    let pass = d <= thr;
    table.push_trailer("max_mirror_gap", max_gap);
    table.push_trailer("ks_statistic", format!("{d:.6}"));
    table.push_trailer("ks_threshold_999", format!("{thr:.6}"));
    table.push_trailer("result", if pass { "PASS" } else { "FAIL" });
    table.emit(exp)
}

/// Involution identities on random regular phase points: sigma^2 = id,
/// tau^2 = id, the sigma-conjugation of the map with its inverse, and the
/// reversal identity for rotation numbers (q = 1 tables).
pub fn involution_check(exp: &Experiment) -> Result<()> {
    let dom = &exp.domain;
    let n = exp.steps;
    let q = dom.num_components();

    // Regular sample points (two steps are enough for the involution rows).
    let mut points = Vec::with_capacity(exp.samples);
    let mut idx = 0u64;
    while points.len() < exp.samples {
        let mut rng = liouville::substream_rng(exp.seed, idx);
        idx += 1;
        if idx > 100 * exp.samples as u64 + 1000 {
            bail!("too many singular samples; the table geometry looks suspicious");
        }
        let z = liouville::sample(dom, &mut rng);
        if map::orbit(dom, &z, 2, |_, _, _, _| {}).completed() {
            points.push(z);
        }
    }

    let mut worst_sigma = 0.0f64;
    let mut worst_tau = 0.0f64;
    let mut worst_conj = 0.0f64;
    for z in &points {
        let ss = map::sigma(&map::sigma(z));
        worst_sigma = worst_sigma.max((ss.theta - z.theta).abs());

        let (t1, _) = map::tau(dom, z).regular().expect("checked regular");
        if let Some((t2, _)) = map::tau(dom, &t1).regular() {
            let d = map::footpoint(dom, &t2).distance(map::footpoint(dom, z))
                + (t2.theta - z.theta).abs();
            worst_tau = worst_tau.max(d);
        }

        let (fwd, _) = map::step(dom, z).regular().expect("checked regular");
        if let Some((back, _)) = map::inverse_step(dom, &fwd).regular() {
            let d = map::footpoint(dom, &back).distance(map::footpoint(dom, z))
                + (back.theta - z.theta).abs();
            worst_conj = worst_conj.max(d);
        }
    }

    let mut table = Table::new(
        exp,
        cols(&["check", "points", "worst_deviation", "tolerance", "pass"]),
    );
    let mut all_pass = true;
    let mut push = |table: &mut Table, name: &str, count: usize, worst: f64, tol: f64| {
        let pass = worst <= tol;
        all_pass &= pass;
        table.rows.push(vec![
            Value::Str(name.into()),
            Value::Int(count as i64),
            Value::Real(worst),
            Value::Real(tol),
            Value::Str(if pass { "PASS".into() } else { "FAIL".into() }),
        ]);
    };
    let diam = dom.diameter();
    push(
        &mut table,
        "sigma_squared",
        points.len(),
        worst_sigma,
        4.0 * f64::EPSILON * std::f64::consts::PI,
    );
    push(
        &mut table,
        "tau_squared",
        points.len(),
        worst_tau,
        1e-9 * diam,
    );
    push(
        &mut table,
        "conjugation_inverse",
        points.len(),
        worst_conj,
        1e-8 * diam,
    );

    if q == 1 {
        let mut worst_rev = 0.0f64;
        let mut used = 0usize;
        for z in &points {
            if let Ok((f, r)) = rotation::reversed_estimate_check(dom, z, n) {
                worst_rev = worst_rev.max((f + r - 1.0).abs());
                used += 1;
            }
        }
        if used == 0 {
            bail!("no sample produced a regular {n}-step orbit for the reversal identity");
        }
        push(
            &mut table,
            "reversal_identity",
            used,
            worst_rev,
            2.0 / n as f64 + 1e-9,
        );
    }

    table.push_trailer("result", if all_pass { "PASS" } else { "FAIL" });
    table.emit(exp)
}
