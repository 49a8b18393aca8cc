//! Invariant suites run by `dkp-s3 verify`.
//!
//! Every check compares one aggregated residual against a tolerance, either
//! as an upper bound (the invariant holds) or as a lower bound (a negative
//! control that must visibly fail). A nonzero `detune` shifts the frequency
//! fed to the on-shell radial and full-equation checks, which should then
//! be reported as failures.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::angular::{recurrence_residuals, sigma_apply, sigma_operator, slot_functions};
use crate::dkp_algebra::{
    beta_raw_transcription, dkp_trilinear_residual, parity_matrix, projector_p6, spin_generator,
    trilinear_residual, ComplexMatrix10, Vector10,
};
use crate::error::{Error, Result};
use crate::geometry::{
    azimuthal_connection, christoffel_at, connection_from_rotation, connection_term,
    ricci_rotation_at, tetrad_at, tetrad_divergence,
};
use crate::hypergeom::Profile;
use crate::modes::{
    build_mode, dkp_equation_residual_at, field_sample, interior_grid, landau_residual,
    lorentz_divergence_covariant, lorentz_residual_of_state, max_norm, DkpOperator, ModeKind,
    ModeSpec, SpacetimePoint,
};
use crate::oracles::{
    fd_christoffel, fd_ricci_rotation, fd_tetrad_divergence, max_abs_diff3,
    metric_compatibility_residual, orthogonality_residual,
};
use crate::radial::{
    residual_electric_landau, residual_electric_reduced, residual_full, residual_magnetic_system,
    residual_second_order, shoot_regularity, RadialState, ShootingGrid,
};
use crate::{c64, Complex64};

/// Every pass/fail threshold used by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub trilinear: f64,
    pub orthonormality: f64,
    pub geometry: f64,
    pub metric_compat: f64,
    pub connection: f64,
    pub recurrence: f64,
    pub sigma: f64,
    pub orthogonality: f64,
    pub radial: f64,
    pub ode: f64,
    pub closed_form: f64,
    pub shoot_on: f64,
    pub shoot_off: f64,
    pub lorentz_magnetic: f64,
    pub lorentz_electric: f64,
    pub lorentz_covariant: f64,
    pub landau: f64,
    pub dkp: f64,
    pub negative_control: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            trilinear: 1e-12,
            orthonormality: 1e-12,
            geometry: 1e-8,
            metric_compat: 1e-6,
            connection: 1e-12,
            recurrence: 1e-6,
            sigma: 1e-6,
            orthogonality: 1e-8,
            radial: 1e-10,
            ode: 1e-9,
            closed_form: 1e-10,
            shoot_on: 1e-3,
            shoot_off: 0.05,
            lorentz_magnetic: 1e-12,
            lorentz_electric: 1e-9,
            lorentz_covariant: 1e-6,
            landau: 1e-9,
            dkp: 1e-5,
            negative_control: 0.01,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 19] = [
        "trilinear",
        "orthonormality",
        "geometry",
        "metric_compat",
        "connection",
        "recurrence",
        "sigma",
        "orthogonality",
        "radial",
        "ode",
        "closed_form",
        "shoot_on",
        "shoot_off",
        "lorentz_magnetic",
        "lorentz_electric",
        "lorentz_covariant",
        "landau",
        "dkp",
        "negative_control",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "trilinear" => &mut self.trilinear,
            "orthonormality" => &mut self.orthonormality,
            "geometry" => &mut self.geometry,
            "metric_compat" => &mut self.metric_compat,
            "connection" => &mut self.connection,
            "recurrence" => &mut self.recurrence,
            "sigma" => &mut self.sigma,
            "orthogonality" => &mut self.orthogonality,
            "radial" => &mut self.radial,
            "ode" => &mut self.ode,
            "closed_form" => &mut self.closed_form,
            "shoot_on" => &mut self.shoot_on,
            "shoot_off" => &mut self.shoot_off,
            "lorentz_magnetic" => &mut self.lorentz_magnetic,
            "lorentz_electric" => &mut self.lorentz_electric,
            "lorentz_covariant" => &mut self.lorentz_covariant,
            "landau" => &mut self.landau,
            "dkp" => &mut self.dkp,
            "negative_control" => &mut self.negative_control,
            _ => return None,
        })
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::Argument(format!("tolerance {key} = {value} must be finite and ≥ 0")));
        }
        match self.slot(key) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::Argument(format!(
                "unknown tolerance key '{key}' (expected one of: {})",
                Self::KEYS.join(", ")
            ))),
        }
    }

    /// Parses `KEY=VALUE` and applies it.
    pub fn apply_override(&mut self, spec: &str) -> Result<()> {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::Argument(format!("tolerance override '{spec}' is not KEY=VALUE")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("tolerance value '{value}' is not a number")))?;
        self.set(key.trim(), value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Geometry,
    Angular,
    Radial,
    Gauge,
    Full,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Algebra, Suite::Geometry, Suite::Angular, Suite::Radial, Suite::Gauge, Suite::Full];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Geometry => "geometry",
            Suite::Angular => "angular",
            Suite::Radial => "radial",
            Suite::Gauge => "gauge",
            Suite::Full => "full",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::Argument(format!(
                    "unknown suite '{s}' (expected algebra, geometry, angular, radial, gauge or full)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    AtLeast,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name.into(), value, Comparison::AtMost, tolerance)
    }

    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name.into(), value, Comparison::AtLeast, tolerance)
    }

    fn new(name: String, value: f64, comparison: Comparison, tolerance: f64) -> Self {
        // NaN fails either way
        let passed = match comparison {
            Comparison::AtMost => value <= tolerance,
            Comparison::AtLeast => value >= tolerance,
        };
        Self { name, value, comparison, tolerance, passed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Inputs shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub tolerances: Tolerances,
    pub seed: u64,
    /// Frequency offset added to on-shell checks; 0 for a normal run.
    pub detune: f64,
    /// Random sample points for the geometry suite.
    pub geometry_points: usize,
    /// Random spacetime points per mode for the full suite.
    pub spacetime_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            seed: 2024,
            detune: 0.0,
            geometry_points: 20,
            spacetime_points: 5,
        }
    }
}

/// Offset used by the built-in negative controls.
pub const CONTROL_DETUNE: f64 = 0.5;

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Algebra => algebra(cfg)?,
        Suite::Geometry => geometry(cfg)?,
        Suite::Angular => angular(cfg)?,
        Suite::Radial => radial(cfg)?,
        Suite::Gauge => gauge(cfg)?,
        Suite::Full => full(cfg)?,
    };
    Ok(SuiteReport { suite, checks })
}

/// Expected diagonal of iJ¹² in the cyclic slot order.
pub const I_J12_DIAGONAL: [f64; 10] = [0.0, 1.0, 0.0, -1.0, 1.0, 0.0, -1.0, 1.0, 0.0, -1.0];

fn algebra(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let ij12 = spin_generator(1, 2)? * c64(0.0, 1.0);
    let p6 = projector_p6();
    let parity = parity_matrix().to_matrix();
    let raw: [ComplexMatrix10; 4] = [
        beta_raw_transcription(0)?,
        beta_raw_transcription(1)?,
        beta_raw_transcription(2)?,
        beta_raw_transcription(3)?,
    ];
    Ok(vec![
        Check::at_most("trilinear relation, 64 index triples", dkp_trilinear_residual(), tol.trilinear),
        Check::at_most(
            "iJ12 equals diag(0,1,0,-1,1,0,-1,1,0,-1)",
            ij12.max_abs_diff(&ComplexMatrix10::from_diagonal(I_J12_DIAGONAL)),
            tol.trilinear,
        ),
        Check::at_most("P6 idempotent", (p6 * p6).max_abs_diff(&p6), 0.0),
        Check::at_most(
            "parity squares to identity",
            (parity * parity).max_abs_diff(&ComplexMatrix10::identity()),
            0.0,
        ),
        Check::at_least(
            "negative control: uncorrected transcription breaks trilinear relation",
            trilinear_residual(&raw),
            tol.negative_control,
        ),
    ])
}

fn random_interior(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let lo = 0.05;
    let hi = std::f64::consts::PI - 0.05;
    (rng.gen_range(lo..hi), rng.gen_range(lo..hi))
}

fn geometry(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = [0.0_f64; 6];
    for k in 0..cfg.geometry_points {
        let (chi, theta) = random_interior(&mut rng);
        worst[0] = worst[0].max(tetrad_at(chi, theta)?.orthonormality_residual(chi, theta));
        worst[1] = worst[1]
            .max(max_abs_diff3(&fd_christoffel(chi, theta)?.dense, &christoffel_at(chi, theta)?.dense));
        worst[2] = worst[2]
            .max(max_abs_diff3(&fd_ricci_rotation(chi, theta)?.gamma, &ricci_rotation_at(chi, theta)?.gamma));
        for a in 0..4 {
            let d = fd_tetrad_divergence(a, chi, theta)? - tetrad_divergence(a, chi, theta)?;
            worst[3] = worst[3].max(d.abs());
        }
        if k < 10 {
            worst[4] = worst[4].max(metric_compatibility_residual(chi, theta)?);
        }
        let specialized = connection_term(chi)? + azimuthal_connection(chi, theta)?;
        worst[5] = worst[5].max(connection_from_rotation(chi, theta)?.max_abs_diff(&specialized));
    }
    let n = cfg.geometry_points;
    Ok(vec![
        Check::at_most(format!("tetrad orthonormality, {n} points"), worst[0], tol.orthonormality),
        Check::at_most(format!("Christoffel symbols vs metric differences, {n} points"), worst[1], tol.geometry),
        Check::at_most(format!("rotation coefficients vs covariant differences, {n} points"), worst[2], tol.geometry),
        Check::at_most(format!("tetrad divergences vs density differences, {n} points"), worst[3], tol.geometry),
        Check::at_most(
            format!("metric compatibility, {} points", n.min(10)),
            worst[4],
            tol.metric_compat,
        ),
        Check::at_most(format!("general vs specialized connection, {n} points"), worst[5], tol.connection),
    ])
}

fn angular(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let thetas: Vec<f64> = (0..20).map(|k| 0.1 + (std::f64::consts::PI - 0.2) * k as f64 / 19.0).collect();
    let mut checks = Vec::new();
    for j in 1..=4u32 {
        let ji = j as i32;
        let mut worst = 0.0_f64;
        for m in -ji..=ji {
            for &theta in &thetas {
                worst = worst.max(recurrence_residuals(j, m, theta)?.max());
            }
        }
        checks.push(Check::at_most(format!("D-function recurrences, j = {j}"), worst, tol.recurrence));
    }
    for j in 1..=3u32 {
        let ji = j as i32;
        let mut worst = 0.0_f64;
        for m in -ji..=ji {
            let theta = rng.gen_range(0.2..std::f64::consts::PI - 0.2);
            let f: Vector10 = std::array::from_fn(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let closed = sigma_apply(&f, j, m, theta)?;
            let direct = sigma_operator(
                |t| {
                    let d = slot_functions(j, m, t);
                    std::array::from_fn(|k| f[k] * d[k])
                },
                m,
                theta,
            )?;
            let diff: Vec<Complex64> = (0..10).map(|k| closed[k] - direct[k]).collect();
            worst = worst.max(max_norm(&diff));
        }
        checks.push(Check::at_most(format!("angular operator closed form vs direct, j = {j}"), worst, tol.sigma));
    }
    checks.push(Check::at_most(
        "d-function orthogonality, j ≤ 3",
        orthogonality_residual(3, 2000),
        tol.orthogonality,
    ));
    Ok(checks)
}

fn detuned(mut st: RadialState, detune: f64) -> RadialState {
    st.omega += detune;
    st
}

fn radial(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let grid = interior_grid(50, 0.05);
    let mut checks = Vec::new();
    let mut control = f64::INFINITY;
    for kind in [ModeKind::Magnetic, ModeKind::Electric] {
        for j in 1..=3 {
            for n in 0..=2 {
                let sol = build_mode(&ModeSpec::new(kind, j, n, 0)?)?;
                let mut worst = 0.0_f64;
                let mut off = 0.0_f64;
                for &chi in &grid {
                    let st = sol.eval(chi)?;
                    worst = worst.max(radial_residual(kind, &sol, &detuned(st, cfg.detune), chi)?);
                    off = off.max(radial_residual(kind, &sol, &detuned(st, CONTROL_DETUNE), chi)?);
                }
                control = control.min(off);
                let system = match kind {
                    ModeKind::Magnetic => "magnetic subsystem and full system",
                    ModeKind::Electric => "electric subsystem, reduced and full system",
                };
                checks.push(Check::at_most(format!("{system}, j = {j}, n = {n}"), worst, tol.radial));
            }
        }
    }
    checks.push(Check::at_least(
        format!("negative control: radial residual at ω + {CONTROL_DETUNE}"),
        control,
        tol.negative_control,
    ));

    let fine = interior_grid(128, 0.02);
    let mut closed = 0.0_f64;
    let mut ode = 0.0_f64;
    let p10 = Profile::new(1, 0)?;
    let p11 = Profile::new(1, 1)?;
    for &chi in &fine {
        let (s, c) = chi.sin_cos();
        closed = closed.max((p10.value(chi) - c64(-4.0 * s * s, 0.0)).norm());
        closed = closed.max((p11.value(chi) - c64(-4.0 * s * s * c, 0.0)).norm());
        for p in [&p10, &p11] {
            let w = p.omega() + cfg.detune;
            ode = ode.max(residual_second_order(p.value(chi), p.second_derivative(chi), w, 1, chi)?.norm());
        }
    }
    checks.push(Check::at_most("closed forms −4 sin²χ and −4 sin²χ cosχ, 128 points", closed, tol.closed_form));
    checks.push(Check::at_most("second-order equation for j = 1 profiles, 128 points", ode, tol.ode));

    let mut on = 0.0_f64;
    let mut off = f64::INFINITY;
    for j in 1..=3u32 {
        for n in 0..=2u32 {
            let w = f64::from(n + 1 + j);
            on = on.max(shoot_regularity(j, w + cfg.detune, ShootingGrid::default())?);
            off = off.min(shoot_regularity(j, w + CONTROL_DETUNE, ShootingGrid::default())?);
        }
    }
    checks.push(Check::at_most("shooting indicator at ω = n + 1 + j, j ≤ 3, n ≤ 2", on, tol.shoot_on));
    checks.push(Check::at_least(
        format!("shooting indicator at ω = n + 1 + j + {CONTROL_DETUNE}"),
        off,
        tol.shoot_off,
    ));
    Ok(checks)
}

fn radial_residual(
    kind: ModeKind,
    sol: &crate::modes::RadialSolution,
    st: &RadialState,
    chi: f64,
) -> Result<f64> {
    let mut worst = max_norm(&residual_full(st)?);
    match kind {
        ModeKind::Magnetic => worst = worst.max(max_norm(&residual_magnetic_system(st)?)),
        ModeKind::Electric => {
            worst = worst.max(max_norm(&residual_electric_landau(st)?));
            let mut red = sol.reduced_electric(chi)?;
            red.omega = st.omega;
            worst = worst.max(max_norm(&residual_electric_reduced(&red)?));
        }
    }
    Ok(worst)
}

fn gauge(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let grid = interior_grid(50, 0.05);
    let mut lor = [0.0_f64; 2];
    let mut landau = 0.0_f64;
    let mut covariant = 0.0_f64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (k, kind) in [ModeKind::Magnetic, ModeKind::Electric].into_iter().enumerate() {
        for j in 1..=3 {
            for n in 0..=2 {
                let spec = ModeSpec::new(kind, j, n, 0)?;
                let sol = build_mode(&spec)?;
                for &chi in &grid {
                    let st = sol.eval(chi)?;
                    lor[k] = lor[k].max(lorentz_residual_of_state(&st)?.norm());
                    if kind == ModeKind::Electric {
                        let (f1, g) = landau_residual(&sol, chi)?;
                        landau = landau.max(f1.norm()).max(g.norm());
                    }
                }
                if j <= 2 && n <= 1 {
                    for m in -(j as i32)..=(j as i32) {
                        let spec = ModeSpec::new(kind, j, n, m)?;
                        let p = random_spacetime(&mut rng);
                        covariant = covariant.max(lorentz_divergence_covariant(&spec, &sol, p)?.norm());
                    }
                }
            }
        }
    }
    Ok(vec![
        Check::at_most("radial Lorentz condition, magnetic modes", lor[0], tol.lorentz_magnetic),
        Check::at_most("radial Lorentz condition, electric modes", lor[1], tol.lorentz_electric),
        Check::at_most("Landau conditions, electric modes", landau, tol.landau),
        Check::at_most("covariant divergence of the 4-potential, j ≤ 2, n ≤ 1", covariant, tol.lorentz_covariant),
    ])
}

fn random_spacetime(rng: &mut ChaCha8Rng) -> SpacetimePoint {
    let tau = std::f64::consts::TAU;
    let (chi, theta) = random_interior(rng);
    SpacetimePoint::new(rng.gen_range(0.0..tau), chi, theta, rng.gen_range(0.0..tau))
}

fn full(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = Vec::new();
    let mut control = f64::INFINITY;
    for kind in [ModeKind::Magnetic, ModeKind::Electric] {
        for j in 1..=2u32 {
            for n in 0..=1u32 {
                let mut worst = 0.0_f64;
                let mut detuned_mode = 0.0_f64;
                for m in -(j as i32)..=(j as i32) {
                    let spec = ModeSpec::new(kind, j, n, m)?;
                    let sol = build_mode(&spec)?;
                    for _ in 0..cfg.spacetime_points {
                        let p = random_spacetime(&mut rng);
                        let w = sol.omega();
                        let r = dkp_equation_residual_at(&spec, &sol, p, w + cfg.detune)?;
                        worst = worst.max(max_norm(&r));
                        let off = dkp_equation_residual_at(&spec, &sol, p, w + CONTROL_DETUNE)?;
                        let rel = relative(&off, &field_sample(&spec, &sol, p)?.components);
                        detuned_mode = detuned_mode.max(rel);
                    }
                }
                control = control.min(detuned_mode);
                checks.push(Check::at_most(
                    format!("{kind} j = {j}, n = {n}, all m, {} points each", cfg.spacetime_points),
                    worst,
                    tol.dkp,
                ));
            }
        }
    }
    checks.push(Check::at_least(
        format!("negative control: relative residual at ω + {CONTROL_DETUNE}, weakest mode"),
        control,
        tol.negative_control,
    ));
    checks.push(Check::at_least(
        "negative control: random smooth field",
        random_field_residual(&mut rng, cfg.spacetime_points)?,
        tol.negative_control,
    ));
    Ok(checks)
}

/// `|r| / |Φ|` in the max norm; a residual that is small only because the
/// field happens to be small at the point does not count as a pass.
fn relative(r: &Vector10, field: &Vector10) -> f64 {
    max_norm(r) / max_norm(field).max(f64::MIN_POSITIVE)
}

/// Smallest operator residual of a random trigonometric field over a few
/// points, normalized like [`relative`].
pub fn random_field_residual(rng: &mut ChaCha8Rng, points: usize) -> Result<f64> {
    let amp: [[f64; 4]; 10] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
    let field = move |p: SpacetimePoint| -> Vector10 {
        std::array::from_fn(|k| {
            let a = &amp[k];
            c64(
                a[0] * (p.chi + a[1]).sin() * (p.theta * 2.0 + a[2]).cos(),
                a[3] * (p.t - p.phi * a[1]).cos(),
            )
        })
    };
    let op = DkpOperator::new();
    let mut smallest = f64::INFINITY;
    for _ in 0..points.max(1) {
        let p = random_spacetime(rng);
        smallest = smallest.min(relative(&op.residual_of(field, p)?, &field(p)));
    }
    Ok(smallest)
}
