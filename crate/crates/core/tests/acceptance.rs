//! Acceptance criteria 1–10. Each test prints one `criterion N: PASS|FAIL`
//! line with the measured value and its threshold (visible with
//! `--nocapture`; the harness line `test criterion_NN_... ok|FAILED` carries
//! the same verdict).

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use dkp_s3::angular::{recurrence_residuals, sigma_apply, sigma_operator, slot_functions};
use dkp_s3::dkp_algebra::{
    beta_raw_transcription, betas, spin_generator, trilinear_residual, trilinear_residual_triple,
    ComplexMatrix10, Vector10, DIM,
};
use dkp_s3::geometry::{christoffel_at, ricci_rotation_at, tetrad_divergence};
use dkp_s3::hypergeom::profile_f;
use dkp_s3::modes::{
    build_mode, dkp_equation_residual, dkp_equation_residual_at, interior_grid,
    landau_residual, lorentz_residual, max_norm, DkpOperator, ModeKind, ModeSpec, SpacetimePoint,
};
use dkp_s3::oracles::{fd_christoffel, fd_ricci_rotation, fd_tetrad_divergence, max_abs_diff3};
use dkp_s3::radial::{
    residual_electric_landau, residual_electric_reduced, residual_full, residual_magnetic_system,
    residual_second_order, shoot_regularity, ShootingGrid,
};
use dkp_s3::verify::{run_suite, Suite, VerifyConfig};
use dkp_s3::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_917;

/// One verdict line; `pass` must already include every sub-condition.
fn report(n: u32, title: &str, detail: &str, pass: bool) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} - {title}: {detail}");
    assert!(pass, "criterion {n} failed: {title}: {detail}");
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn criterion_01_spectrum_reproduction() {
    let exe = env!("CARGO_BIN_EXE_dkp-s3");
    let mut worst_mismatch = 0usize;
    let mut rows = 0usize;
    let mut elapsed = Duration::ZERO;
    for (rho, cl) in [(1.0_f64, 1.0_f64), (2.0, 1.0), (6.371e6, 2.99792458e8)] {
        let start = Instant::now();
        let out = Command::new(exe)
            .args(["spectrum", "--j-max", "10", "--n-max", "10"])
            .args(["--rho", &rho.to_string(), "--c-light", &cl.to_string()])
            .output()
            .expect("binary runs");
        elapsed = elapsed.max(start.elapsed());
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let mut expected = Vec::new();
        for j in 1..=10u32 {
            for n in 0..=10u32 {
                expected.push((j, n));
            }
        }
        let body: Vec<&str> = text.lines().skip(2).collect();
        assert_eq!(body.len(), expected.len());
        for (line, (j, n)) in body.iter().zip(expected) {
            rows += 1;
            let cells: Vec<&str> = line.split(',').collect();
            let k = n + 1 + j;
            let w: f64 = cells[3].parse().unwrap();
            let ok = cells[0] == j.to_string()
                && cells[1] == n.to_string()
                && cells[2] == k.to_string()
                && w == f64::from(k) * (cl / rho);
            if !ok {
                worst_mismatch += 1;
            }
        }
    }
    let pass = worst_mismatch == 0 && elapsed < Duration::from_secs(1);
    report(
        1,
        "spectrum table equals (n+1+j)·c/ρ exactly, j ≤ 10, n ≤ 10",
        &format!("{rows} rows, {worst_mismatch} mismatches, slowest run {elapsed:.2?} (< 1 s)"),
        pass,
    );
}

#[test]
fn criterion_02_independent_quantization() {
    let start = Instant::now();
    let mut on = 0.0_f64;
    let mut off = f64::INFINITY;
    for j in 1..=3u32 {
        for n in 0..=2u32 {
            let w = f64::from(n + 1 + j);
            on = on.max(shoot_regularity(j, w, ShootingGrid::default()).unwrap());
            off = off.min(shoot_regularity(j, w + 0.5, ShootingGrid::default()).unwrap());
        }
    }
    let elapsed = start.elapsed();
    let pass = on <= 1e-3 && off >= 0.05 && elapsed < Duration::from_secs(10);
    report(
        2,
        "shooting indicator, j ≤ 3, n ≤ 2",
        &format!("max at ω = n+1+j: {on:.3e} (≤ 1e-3); min at ω + 0.5: {off:.3e} (≥ 0.05); {elapsed:.2?} (< 10 s)"),
        pass,
    );
}

#[test]
fn criterion_03_closed_form_modes() {
    let grid = interior_grid(128, 0.02);
    let mut closed = 0.0_f64;
    let mut ode = 0.0_f64;
    for &chi in &grid {
        let (s, co) = chi.sin_cos();
        let f10 = profile_f(1, 0, chi).unwrap();
        let f11 = profile_f(1, 1, chi).unwrap();
        closed = closed.max((f10 - c(-4.0 * s * s, 0.0)).norm());
        closed = closed.max((f11 - c(-4.0 * s * s * co, 0.0)).norm());
        // second derivatives of the closed forms, written out by hand
        let d2_10 = c(-8.0 * (2.0 * chi).cos(), 0.0);
        let d2_11 = c(-4.0 * (2.0 * co * co * co - 7.0 * s * s * co), 0.0);
        ode = ode.max(residual_second_order(f10, d2_10, 2.0, 1, chi).unwrap().norm());
        ode = ode.max(residual_second_order(f11, d2_11, 3.0, 1, chi).unwrap().norm());
    }
    let pass = closed <= 1e-10 && ode <= 1e-9;
    report(
        3,
        "(j,n) = (1,0), (1,1) profiles equal −4sin²χ, −4sin²χcosχ on 128 points",
        &format!("pointwise {closed:.3e} (≤ 1e-10); second-order equation {ode:.3e} (≤ 1e-9)"),
        pass,
    );
}

#[test]
fn criterion_04_matrix_transcription() {
    let set = betas();
    let mut triples = 0;
    let mut worst = 0.0_f64;
    for a in 0..4 {
        for b in 0..4 {
            for cc in 0..4 {
                worst = worst.max(trilinear_residual_triple(&set, a, b, cc));
                triples += 1;
            }
        }
    }
    let ij12 = spin_generator(1, 2).unwrap() * c(0.0, 1.0);
    let t3 = [1.0, 0.0, -1.0];
    let mut expected = [0.0; DIM];
    for block in 0..3 {
        expected[1 + 3 * block..4 + 3 * block].copy_from_slice(&t3);
    }
    // products of ±1/√2 entries round to within one ulp of the integers
    let structure = ij12.max_abs_diff(&ComplexMatrix10::from_diagonal(expected));
    let pass = triples == 64 && worst <= 1e-12 && structure <= 4.0 * f64::EPSILON;
    report(
        4,
        "trilinear DKP relation and iJ¹² = diag(0, t₃, t₃, t₃)",
        &format!("{triples} triples, max residual {worst:.3e} (≤ 1e-12); iJ¹² deviation {structure:.3e}"),
        pass,
    );
}

fn random_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (rng.gen_range(0.05..PI - 0.05), rng.gen_range(0.05..PI - 0.05))
}

#[test]
fn criterion_05_geometry_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = [0.0_f64; 3];
    for _ in 0..20 {
        let (chi, theta) = random_point(&mut rng);
        worst[0] = worst[0].max(max_abs_diff3(
            &fd_christoffel(chi, theta).unwrap().dense,
            &christoffel_at(chi, theta).unwrap().dense,
        ));
        worst[1] = worst[1].max(max_abs_diff3(
            &fd_ricci_rotation(chi, theta).unwrap().gamma,
            &ricci_rotation_at(chi, theta).unwrap().gamma,
        ));
        for a in 0..4 {
            let d = fd_tetrad_divergence(a, chi, theta).unwrap() - tetrad_divergence(a, chi, theta).unwrap();
            worst[2] = worst[2].max(d.abs());
        }
    }
    let pass = worst.iter().all(|&w| w <= 1e-8);
    report(
        5,
        "finite-difference geometry vs closed forms at 20 random points",
        &format!(
            "Christoffel {:.3e}, rotation coefficients {:.3e}, tetrad divergences {:.3e} (each ≤ 1e-8)",
            worst[0], worst[1], worst[2]
        ),
        pass,
    );
}

#[test]
fn criterion_06_angular_machinery() {
    let mut recur = 0.0_f64;
    for j in 1..=4u32 {
        let ji = j as i32;
        for m in -ji..=ji {
            for k in 0..20 {
                let theta = 0.1 + (PI - 0.2) * f64::from(k) / 19.0;
                recur = recur.max(recurrence_residuals(j, m, theta).unwrap().max());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut sigma = 0.0_f64;
    for j in 1..=4u32 {
        let ji = j as i32;
        for m in -ji..=ji {
            let theta = rng.gen_range(0.2..PI - 0.2);
            let f: Vector10 = std::array::from_fn(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let closed = sigma_apply(&f, j, m, theta).unwrap();
            let direct = sigma_operator(
                |t| {
                    let d = slot_functions(j, m, t);
                    std::array::from_fn(|k| f[k] * d[k])
                },
                m,
                theta,
            )
            .unwrap();
            let diff: Vec<Complex64> = (0..10).map(|k| closed[k] - direct[k]).collect();
            sigma = sigma.max(max_norm(&diff));
        }
    }
    let pass = recur <= 1e-6 && sigma <= 1e-6;
    report(
        6,
        "D-function recurrences and angular operator closed form, j ≤ 4",
        &format!("recurrences {recur:.3e} (≤ 1e-6); closed form vs direct {sigma:.3e} (≤ 1e-6)"),
        pass,
    );
}

#[test]
fn criterion_07_radial_systems() {
    let grid = interior_grid(50, 0.05);
    let mut worst = [0.0_f64; 2];
    for j in 1..=3 {
        for n in 0..=2 {
            let mag = build_mode(&ModeSpec::new(ModeKind::Magnetic, j, n, 0).unwrap()).unwrap();
            let ele = build_mode(&ModeSpec::new(ModeKind::Electric, j, n, 0).unwrap()).unwrap();
            for &chi in &grid {
                let st = mag.eval(chi).unwrap();
                worst[0] = worst[0]
                    .max(max_norm(&residual_magnetic_system(&st).unwrap()))
                    .max(max_norm(&residual_full(&st).unwrap()));
                let st = ele.eval(chi).unwrap();
                worst[1] = worst[1]
                    .max(max_norm(&residual_electric_landau(&st).unwrap()))
                    .max(max_norm(&residual_full(&st).unwrap()))
                    .max(max_norm(&residual_electric_reduced(&ele.reduced_electric(chi).unwrap()).unwrap()));
            }
        }
    }
    let pass = worst[0] <= 1e-10 && worst[1] <= 1e-10;
    report(
        7,
        "radial systems for constructed modes, j ≤ 3, n ≤ 2, 50-point grid",
        &format!("magnetic {:.3e}, electric (full, split and reduced) {:.3e} (each ≤ 1e-10)", worst[0], worst[1]),
        pass,
    );
}

#[test]
fn criterion_08_gauge_conditions() {
    let grid = interior_grid(50, 0.05);
    let mut lor = [0.0_f64; 2];
    let mut landau = 0.0_f64;
    for j in 1..=3 {
        for n in 0..=2 {
            let mag = build_mode(&ModeSpec::new(ModeKind::Magnetic, j, n, 0).unwrap()).unwrap();
            let ele = build_mode(&ModeSpec::new(ModeKind::Electric, j, n, 0).unwrap()).unwrap();
            for &chi in &grid {
                lor[0] = lor[0].max(lorentz_residual(&mag, chi).unwrap().norm());
                lor[1] = lor[1].max(lorentz_residual(&ele, chi).unwrap().norm());
                let (f1, g) = landau_residual(&ele, chi).unwrap();
                landau = landau.max(f1.norm()).max(g.norm());
            }
        }
    }
    let pass = lor[0] <= 1e-12 && lor[1] <= 1e-9 && landau <= 1e-9;
    report(
        8,
        "Lorentz and Landau conditions, j ≤ 3, n ≤ 2",
        &format!(
            "Lorentz magnetic {:.3e} (≤ 1e-12), electric {:.3e} (≤ 1e-9); Landau {landau:.3e} (≤ 1e-9)",
            lor[0], lor[1]
        ),
        pass,
    );
}

fn random_spacetime(rng: &mut ChaCha8Rng) -> SpacetimePoint {
    let (chi, theta) = random_point(rng);
    SpacetimePoint::new(rng.gen_range(0.0..2.0 * PI), chi, theta, rng.gen_range(0.0..2.0 * PI))
}

#[test]
fn criterion_09_covariant_equation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0_f64;
    let mut evaluations = 0;
    for kind in [ModeKind::Magnetic, ModeKind::Electric] {
        for j in 1..=2u32 {
            for n in 0..=1u32 {
                for m in -(j as i32)..=(j as i32) {
                    let spec = ModeSpec::new(kind, j, n, m).unwrap();
                    let sol = build_mode(&spec).unwrap();
                    for _ in 0..5 {
                        let p = random_spacetime(&mut rng);
                        worst = worst.max(max_norm(&dkp_equation_residual(&spec, &sol, p).unwrap()));
                        evaluations += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = worst <= 1e-5 && elapsed < Duration::from_secs(30);
    report(
        9,
        "full covariant DKP residual, both kinds, j ≤ 2, n ≤ 1, all m, 5 random points each",
        &format!("{evaluations} evaluations, max residual {worst:.3e} (≤ 1e-5), {elapsed:.2?} (< 30 s)"),
        pass,
    );
}

#[test]
fn criterion_10_negative_controls() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    // criterion 2 harness: detuned shooting
    let mut shoot = f64::INFINITY;
    for j in 1..=3u32 {
        for n in 0..=2u32 {
            let w = f64::from(n + 1 + j) + 0.5;
            shoot = shoot.min(shoot_regularity(j, w, ShootingGrid::default()).unwrap());
        }
    }
    // criterion 7 harness: radial residual with a detuned ω
    let mut radial = f64::INFINITY;
    for kind in [ModeKind::Magnetic, ModeKind::Electric] {
        for j in 1..=3 {
            for n in 0..=2 {
                let sol = build_mode(&ModeSpec::new(kind, j, n, 0).unwrap()).unwrap();
                let mut mode_worst = 0.0_f64;
                for chi in interior_grid(50, 0.05) {
                    let mut st = sol.eval(chi).unwrap();
                    st.omega += 0.5;
                    mode_worst = mode_worst.max(max_norm(&residual_full(&st).unwrap()));
                }
                radial = radial.min(mode_worst);
            }
        }
    }
    // criterion 9 harness: detuned ω and a random field
    let mut detuned = f64::INFINITY;
    for kind in [ModeKind::Magnetic, ModeKind::Electric] {
        for (j, n, m) in [(1, 0, 0), (1, 1, 1), (2, 0, -2), (2, 1, 1)] {
            let spec = ModeSpec::new(kind, j, n, m).unwrap();
            let sol = build_mode(&spec).unwrap();
            let mut mode_worst = 0.0_f64;
            for _ in 0..5 {
                let p = random_spacetime(&mut rng);
                let r = dkp_equation_residual_at(&spec, &sol, p, sol.omega() + 0.5).unwrap();
                mode_worst = mode_worst.max(max_norm(&r));
            }
            detuned = detuned.min(mode_worst);
        }
    }
    let amp: Vec<f64> = (0..40).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let field = |p: SpacetimePoint| -> Vector10 {
        std::array::from_fn(|k| {
            let a = &amp[4 * k..4 * k + 4];
            c(a[0] * (p.chi + a[1]).sin() * (2.0 * p.theta + a[2]).cos(), a[3] * (p.t - a[1] * p.phi).cos())
        })
    };
    let op = DkpOperator::new();
    let mut random = f64::INFINITY;
    for _ in 0..5 {
        random = random.min(max_norm(&op.residual_of(field, random_spacetime(&mut rng)).unwrap()));
    }
    // the end-to-end harness itself reports failure under detuning
    let cfg = VerifyConfig { detune: 0.5, ..Default::default() };
    let radial_suite_fails = !run_suite(Suite::Radial, &cfg).unwrap().passed();
    // and an uncorrected matrix transcription does not satisfy the algebra
    let raw = [0, 1, 2, 3].map(|a| beta_raw_transcription(a).unwrap());
    let raw_residual = trilinear_residual(&raw);

    let pass = shoot >= 0.01
        && radial >= 0.01
        && detuned >= 0.01
        && random >= 0.01
        && radial_suite_fails
        && raw_residual >= 0.01;
    report(
        10,
        "detuned frequencies and random fields are rejected",
        &format!(
            "shooting {shoot:.3e}, radial {radial:.3e}, DKP detuned {detuned:.3e}, DKP random field {random:.3e} \
             (each ≥ 0.01); detuned radial suite fails: {radial_suite_fails}; raw transcription {raw_residual:.3e}"
        ),
        pass,
    );
}
