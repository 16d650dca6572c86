//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them all).

mod common;

use std::f64::consts::PI;

use billiard_core::domain::{builtin, Domain};
use billiard_core::liouville;
use billiard_core::map::{self, PhasePoint};
use billiard_core::rotation;
use billiard_core::stats;

use common::{s_distance, AnnulusOracle, OracleState};

fn unit_square() -> Domain<f64> {
    builtin::polygon(&[
        billiard_core::Point2::new(0.0, 0.0),
        billiard_core::Point2::new(1.0, 0.0),
        billiard_core::Point2::new(1.0, 1.0),
        billiard_core::Point2::new(0.0, 1.0),
    ])
    .unwrap()
}

fn four_tables() -> Vec<(&'static str, Domain<f64>)> {
    vec![
        ("circle", builtin::circle(1.0).unwrap()),
        ("ellipse(2,1)", builtin::ellipse(2.0, 1.0).unwrap()),
        ("stadium(2,1)", builtin::stadium(2.0, 1.0).unwrap()),
        ("unit square", unit_square()),
    ]
}

fn liouville_points(dom: &Domain<f64>, count: usize, seed: u64) -> Vec<PhasePoint<f64>> {
    (0..count)
        .map(|i| {
            let mut rng = liouville::substream_rng(seed, i as u64);
            liouville::sample(dom, &mut rng)
        })
        .collect()
}

/// Liouville samples whose orbit completes at least `steps` regular steps.
fn regular_points(
    dom: &Domain<f64>,
    count: usize,
    steps: usize,
    seed: u64,
) -> Vec<PhasePoint<f64>> {
    let mut out = Vec::with_capacity(count);
    let mut idx = 0u64;
    while out.len() < count {
        let mut rng = liouville::substream_rng(seed, idx);
        idx += 1;
        let z = liouville::sample(dom, &mut rng);
        if map::orbit(dom, &z, steps, |_, _, _, _| {}).completed() {
            out.push(z);
        }
        assert!(idx < 10 * count as u64 + 1000, "too many singular samples");
    }
    out
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

/// Criterion 1: on the unit circle the rotation number estimate equals
/// theta / pi to 1e-9 for every N (the increment is identically 2 R theta).
#[test]
fn criterion_1_circle_closed_form() {
    let dom = builtin::circle(1.0).unwrap();
    let pts = liouville_points(&dom, 100, 101);
    let mut worst = 0.0f64;
    for z in &pts {
        // Cross-check one step against the chord-geometry oracle.
        let (next, _) = map::step(&dom, z).regular().unwrap();
        let (s_oracle, theta_oracle) = common::circle_next(1.0, z.s, z.theta);
        worst = worst.max(s_distance(next.s, s_oracle, dom.total_perimeter()));
        worst = worst.max((next.theta - theta_oracle).abs());
        for n in [1usize, 10, 1000] {
            let est = rotation::rotation_number(&dom, z, n).unwrap();
            assert!(!est.terminated_singular);
            worst = worst.max((est.rho - z.theta / PI).abs());
        }
    }
    report(
        "1 (circle closed form)",
        worst <= 1e-9,
        &format!(
            "worst deviation {:.3e} over 100 points, N in {{1,10,1000}}",
            worst
        ),
    );
}

/// Criterion 2: involution suite on four tables. sigma^2 is exact (bit-equal
/// s, machine-epsilon theta); tau^2 and sigma.phi.sigma.phi return to the
/// start within 1e-8 * diameter.
#[test]
fn criterion_2_involution_suite() {
    let mut detail = String::new();
    let mut pass = true;
    for (name, dom) in four_tables() {
        let tol_pos = 1e-8 * dom.diameter();
        let pts = regular_points(&dom, 100, 2, 202);
        let mut worst_tau = 0.0f64;
        let mut worst_conj = 0.0f64;
        for z in &pts {
            let ss = map::sigma(&map::sigma(z));
            assert_eq!(ss.component, z.component);
            assert_eq!(ss.s.to_bits(), z.s.to_bits(), "sigma^2 must not move s");
            assert!(
                (ss.theta - z.theta).abs() <= 4.0 * f64::EPSILON * PI,
                "sigma^2 theta deviation {:.3e}",
                (ss.theta - z.theta).abs()
            );

            let (t1, _) = map::tau(&dom, z).regular().expect("regular point");
            let (t2, _) = map::tau(&dom, &t1).regular().expect("regular point");
            let d_tau = map::footpoint(&dom, &t2).distance(map::footpoint(&dom, z))
                + (t2.theta - z.theta).abs();
            worst_tau = worst_tau.max(d_tau);

            let (fwd, _) = map::step(&dom, z).regular().expect("regular point");
            let (back, _) = map::inverse_step(&dom, &fwd)
                .regular()
                .expect("regular point");
            let d_conj = map::footpoint(&dom, &back).distance(map::footpoint(&dom, z))
                + (back.theta - z.theta).abs();
            worst_conj = worst_conj.max(d_conj);
        }
        if worst_tau > tol_pos || worst_conj > tol_pos {
            pass = false;
        }
        detail.push_str(&format!(
            "{name}: tau2 {:.2e}, conj {:.2e}; ",
            worst_tau, worst_conj
        ));
    }
    report("2 (involution suite)", pass, &detail);
}

/// Criterion 3: reversal identity |rho_N(z) + rho_N(tau z) - 1| <= 2/N + 1e-9
/// at N = 1e4 on 50 regular points per table.
#[test]
fn criterion_3_reversal_identity() {
    let n = 10_000usize;
    let tol = 2.0 / n as f64 + 1e-9;
    let mut pass = true;
    let mut detail = String::new();
    for (name, dom) in four_tables() {
        let mut worst = 0.0f64;
        let mut found = 0usize;
        let mut idx = 0u64;
        while found < 50 {
            let mut rng = liouville::substream_rng(303, idx);
            idx += 1;
            assert!(idx < 5000, "too many singular samples on {name}");
            let z = liouville::sample(&dom, &mut rng);
            match rotation::reversed_estimate_check(&dom, &z, n) {
                Ok((f, r)) => {
                    found += 1;
                    worst = worst.max((f + r - 1.0).abs());
                }
                Err(_) => continue,
            }
        }
        if worst > tol {
            pass = false;
        }
        detail.push_str(&format!("{name}: worst {:.2e}; ", worst));
    }
    report(
        "3 (reversal identity)",
        pass,
        &format!("tolerance {:.2e}; {detail}", tol),
    );
}

/// Criterion 4: the phase-space mean of rho_N is 1/2 on the circle, ellipse
/// and stadium (M = 2000 samples, N = 2000 steps, 3 sigma + 2/N allowance).
#[test]
fn criterion_4_mean_rotation_number() {
    let (m, n) = (2000usize, 2000usize);
    let mut pass = true;
    let mut detail = String::new();
    for (name, dom, seed) in [
        ("circle", builtin::circle(1.0).unwrap(), 404u64),
        ("ellipse(2,1)", builtin::ellipse(2.0, 1.0).unwrap(), 405),
        ("stadium(2,1)", builtin::stadium(2.0, 1.0).unwrap(), 406),
    ] {
        let est = liouville::mc_integrate_scalar(
            &dom,
            |z| {
                let e = rotation::rotation_number(&dom, z, n).ok()?;
                if e.terminated_singular {
                    None
                } else {
                    Some(e.rho)
                }
            },
            m,
            seed,
        )
        .unwrap();
        let (mean, se) = est.scalar();
        let tol = 3.0 * se + 2.0 / n as f64;
        let err = (mean - 0.5).abs();
        if err > tol {
            pass = false;
        }
        detail.push_str(&format!(
            "{name}: mean {:.5} (err {:.2e}, tol {:.2e}); ",
            mean, err, tol
        ));
    }
    report("4 (mean rotation number 1/2)", pass, &detail);
}

/// Criterion 5: the phase-space mean of the rotation vector is
/// (|C_1|/2|C|, ..., |C_q|/2|C|): (1/3, 1/6) on the concentric annulus
/// (R=1, r=0.5) and (5/13, 3/26) on the asymmetric annulus (1, 0.3, 0.2).
#[test]
fn criterion_5_mean_rotation_vector() {
    let (m, n) = (2000usize, 2000usize);
    let mut pass = true;
    let mut detail = String::new();
    let cases = [
        (
            "concentric(1,0.5)",
            builtin::concentric_annulus(1.0, 0.5).unwrap(),
            [1.0 / 3.0, 1.0 / 6.0],
            505u64,
        ),
        (
            "asymmetric(1,0.3,+0.2)",
            builtin::asymmetric_annulus(1.0, 0.3, billiard_core::Vec2::new(0.2, 0.0)).unwrap(),
            [5.0 / 13.0, 3.0 / 26.0],
            506,
        ),
    ];
    for (name, dom, target, seed) in cases {
        let est = liouville::mc_integrate(
            &dom,
            2,
            |z, out| match rotation::rotation_vector(&dom, z, n) {
                Ok(v) if !v.terminated_singular => {
                    out[0] = v.rho[0];
                    out[1] = v.rho[1];
                    true
                }
                _ => false,
            },
            m,
            seed,
        )
        .unwrap();
        for (alpha, target_a) in target.iter().enumerate() {
            let tol = 3.0 * est.std_error[alpha] + 2.0 / n as f64;
            let err = (est.mean[alpha] - target_a).abs();
            if err > tol {
                pass = false;
            }
            detail.push_str(&format!(
                "{name}[{alpha}]: {:.5} vs {:.5} (err {:.2e}, tol {:.2e}); ",
                est.mean[alpha], target_a, err, tol
            ));
        }
    }
    report("5 (mean rotation vector)", pass, &detail);
}

/// Criterion 6: the distribution of rho_N is symmetric about 1/2: a
/// two-sample KS test of {rho} vs {1 - rho} passes at the 99.9% level
/// (M = 5000, N = 1e4) on the ellipse and the asymmetric annulus.
#[test]
fn criterion_6_distribution_symmetry() {
    let (m, n) = (5000usize, 10_000usize);
    let thr: f64 = stats::ks_threshold_999(m, m);
    let mut pass = true;
    let mut detail = String::new();

    // Ellipse: plain rotation number.
    {
        let dom = builtin::ellipse(2.0, 1.0).unwrap();
        let mut rhos = Vec::with_capacity(m);
        let mut idx = 0u64;
        while rhos.len() < m {
            let mut rng = liouville::substream_rng(606, idx);
            idx += 1;
            let z = liouville::sample(&dom, &mut rng);
            let est = rotation::rotation_number(&dom, &z, n).unwrap();
            if !est.terminated_singular {
                rhos.push(est.rho);
            }
        }
        let mirrored: Vec<f64> = rhos.iter().map(|r| 1.0 - r).collect();
        let d = stats::two_sample_ks(&rhos, &mirrored);
        if d > thr {
            pass = false;
        }
        detail.push_str(&format!("ellipse: D {:.4} (thr {:.4}); ", d, thr));
    }

    // Asymmetric annulus: total rotation number of the vector estimate.
    {
        let dom =
            builtin::asymmetric_annulus(1.0, 0.3, billiard_core::Vec2::new(0.2, 0.0)).unwrap();
        let mut rhos = Vec::with_capacity(m);
        let mut idx = 0u64;
        while rhos.len() < m {
            let mut rng = liouville::substream_rng(607, idx);
            idx += 1;
            let z = liouville::sample(&dom, &mut rng);
            let v = rotation::rotation_vector(&dom, &z, n).unwrap();
            if !v.terminated_singular {
                rhos.push(rotation::rotation_number_total(&v));
            }
        }
        let mirrored: Vec<f64> = rhos.iter().map(|r| 1.0 - r).collect();
        let d = stats::two_sample_ks(&rhos, &mirrored);
        if d > thr {
            pass = false;
        }
        detail.push_str(&format!("asymmetric annulus: D {:.4} (thr {:.4})", d, thr));
    }

    report("6 (distribution symmetry)", pass, &detail);
}

/// Criterion 7: ergodic concentration on the stadium: single orbits of
/// N = 1e6 steps land in [0.48, 0.52] for ten seeds.
#[test]
fn criterion_7_stadium_concentration() {
    let dom = builtin::stadium(2.0, 1.0).unwrap();
    let n = 1_000_000usize;
    let mut pass = true;
    let mut detail = String::new();
    for seed in 0..10u64 {
        let mut idx = 0u64;
        let rho = loop {
            let mut rng = liouville::substream_rng(700 + seed, idx);
            idx += 1;
            assert!(idx < 50, "too many singular stadium samples");
            let z = liouville::sample(&dom, &mut rng);
            let est = rotation::rotation_number(&dom, &z, n).unwrap();
            if !est.terminated_singular {
                break est.rho;
            }
        };
        if !(0.48..=0.52).contains(&rho) {
            pass = false;
        }
        detail.push_str(&format!("{:.4} ", rho));
    }
    report(
        "7 (stadium rho -> 1/2)",
        pass,
        &format!("rho_N values: {detail}"),
    );
}

/// Criterion 8: an independently coded circle-circle chord oracle reproduces
/// step, footpoint_increment and rotation_vector on the concentric annulus.
#[test]
fn criterion_8_oracle_equivalence() {
    let dom = builtin::concentric_annulus(1.0, 0.5).unwrap();
    let oracle = AnnulusOracle {
        outer_r: 1.0,
        inner_r: 0.5,
        inner_c: (0.0, 0.0),
    };
    let n = 10_000usize;
    let pts = regular_points(&dom, 20, n, 808);
    let mut worst_step = 0.0f64;
    let mut worst_inc = 0.0f64;
    let mut worst_vec = 0.0f64;
    for z in &pts {
        let state = OracleState {
            component: z.component,
            s: z.s,
            theta: z.theta,
        };

        // One application of the map.
        let (next, chord) = map::step(&dom, z).regular().unwrap();
        let (onext, ochord) = oracle.step(state).unwrap();
        assert_eq!(
            next.component, onext.component,
            "step landed on different components"
        );
        let p_next = dom.perimeter(next.component).unwrap();
        worst_step = worst_step
            .max(s_distance(next.s, onext.s, p_next))
            .max((next.theta - onext.theta).abs())
            .max((chord - ochord).abs());

        // First same-component increment along the orbit.
        let mut cur = *z;
        let mut ocur = state;
        for _ in 0..16 {
            let (nx, _) = map::step(&dom, &cur).regular().unwrap();
            let (onx, _) = oracle.step(ocur).unwrap();
            if nx.component == cur.component {
                let xi = rotation::footpoint_increment(&dom, &cur, &nx).unwrap();
                let p = dom.perimeter(cur.component).unwrap();
                let oxi = ((onx.s - ocur.s) % p + p) % p;
                worst_inc = worst_inc.max((xi - oxi).abs());
                break;
            }
            cur = nx;
            ocur = onx;
        }

        // Full rotation vector at N = 1e4.
        let v = rotation::rotation_vector(&dom, z, n).unwrap();
        assert!(!v.terminated_singular);
        let (oups, orho, ovisits) = oracle.rotation_vector(state, n).unwrap();
        for alpha in 0..2 {
            assert_eq!(v.visits[alpha], ovisits[alpha], "visit counts differ");
            worst_vec = worst_vec
                .max((v.upsilon[alpha] - oups[alpha]).abs())
                .max((v.rho[alpha] - orho[alpha]).abs());
        }
    }
    let pass = worst_step <= 1e-9 && worst_inc <= 1e-9 && worst_vec <= 1e-9;
    report(
        "8 (brute-force oracle equivalence)",
        pass,
        &format!(
            "worst step {:.2e}, increment {:.2e}, vector {:.2e}",
            worst_step, worst_inc, worst_vec
        ),
    );
}

/// Criterion 9: finite-N phase-shift invariance:
/// |rho_N(z) - rho_N(phi^10 z)| <= 10/N + 1e-9 on every builtin table
/// (componentwise for the annuli).
#[test]
fn criterion_9_shift_invariance() {
    let n = 10_000usize;
    let k = 10usize;
    let tol = k as f64 / n as f64 + 1e-9;
    let mut pass = true;
    let mut detail = String::new();

    let tables: Vec<(&str, Domain<f64>)> = vec![
        ("circle", builtin::circle(1.0).unwrap()),
        ("ellipse(2,1)", builtin::ellipse(2.0, 1.0).unwrap()),
        ("stadium(2,1)", builtin::stadium(2.0, 1.0).unwrap()),
        ("unit square", unit_square()),
        (
            "concentric(1,0.5)",
            builtin::concentric_annulus(1.0, 0.5).unwrap(),
        ),
        (
            "asymmetric(1,0.3,+0.2)",
            builtin::asymmetric_annulus(1.0, 0.3, billiard_core::Vec2::new(0.2, 0.0)).unwrap(),
        ),
    ];
    for (name, dom) in tables {
        let pts = regular_points(&dom, 10, n + k, 909);
        let mut worst = 0.0f64;
        for z in &pts {
            let mut w = *z;
            for _ in 0..k {
                w = map::step(&dom, &w).regular().expect("verified regular").0;
            }
            if dom.num_components() == 1 {
                let a = rotation::rotation_number(&dom, z, n).unwrap();
                let b = rotation::rotation_number(&dom, &w, n).unwrap();
                worst = worst.max((a.rho - b.rho).abs());
            } else {
                let a = rotation::rotation_vector(&dom, z, n).unwrap();
                let b = rotation::rotation_vector(&dom, &w, n).unwrap();
                for alpha in 0..dom.num_components() {
                    worst = worst.max((a.rho[alpha] - b.rho[alpha]).abs());
                }
            }
        }
        if worst > tol {
            pass = false;
        }
        detail.push_str(&format!("{name}: {:.2e}; ", worst));
    }
    report(
        "9 (phase-shift invariance)",
        pass,
        &format!("tolerance {:.2e}; {detail}", tol),
    );
}
