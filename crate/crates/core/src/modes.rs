//! Magnetic- and electric-type spherical wave modes on S³.
//!
//! A mode is labelled by (j, n, m) with j ≥ 1, n ≥ 0, |m| ≤ j and has
//! dimensionless frequency ω = n + 1 + j, i.e. ω·c/ρ in physical units for
//! curvature radius ρ. All internal evaluation uses ρ = c = 1.
//!
//! Magnetic modes (parity (−1)^{j+1}) are built from `f2 = f/sinχ`;
//! electric modes (parity (−1)^j, Landau gauge) from `F8 = f`, where `f`
//! is the regular profile of [`crate::hypergeom::Profile`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angular::{nu, slot_functions};
use crate::dkp_algebra::{
    beta, projector_p6, spin_generator, zero_vector, ComplexMatrix10, Vector10, INV_SQRT2,
};
use crate::error::{check_open_angle, Error, Result};
use crate::fd::{five_point_array, FIVE_POINT_STEP};
use crate::geometry::{connection_term, tetrad_divergence};
use crate::hypergeom::Profile;
use crate::radial::{RadialState, ReducedElectricState};
use crate::{c64, Complex64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Magnetic,
    Electric,
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeKind::Magnetic => "magnetic",
            ModeKind::Electric => "electric",
        })
    }
}

impl FromStr for ModeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "magnetic" | "m" => Ok(ModeKind::Magnetic),
            "electric" | "e" => Ok(ModeKind::Electric),
            other => Err(Error::Argument(format!("unknown mode kind '{other}'"))),
        }
    }
}

/// Quantum numbers and units of one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub kind: ModeKind,
    pub j: u32,
    pub n: u32,
    pub m: i32,
    /// Curvature radius ρ.
    pub rho: f64,
    /// Light speed c.
    pub c: f64,
}

impl ModeSpec {
    pub fn new(kind: ModeKind, j: u32, n: u32, m: i32) -> Result<Self> {
        Self::with_units(kind, j, n, m, 1.0, 1.0)
    }

    pub fn with_units(kind: ModeKind, j: u32, n: u32, m: i32, rho: f64, c: f64) -> Result<Self> {
        if j == 0 {
            return Err(Error::Argument(
                "j = 0 is excluded: both parity families need σ = ±1 harmonics, which vanish at j = 0"
                    .into(),
            ));
        }
        if m.unsigned_abs() > j {
            return Err(Error::Argument(format!("|m| = {} exceeds j = {j}", m.abs())));
        }
        check_units(rho, c)?;
        Ok(Self { kind, j, n, m, rho, c })
    }

    /// n + 1 + j.
    pub fn omega_dimensionless(&self) -> u32 {
        self.n + 1 + self.j
    }

    pub fn omega(&self) -> f64 {
        f64::from(self.omega_dimensionless())
    }

    /// (c/ρ)(n + 1 + j).
    pub fn omega_physical(&self) -> f64 {
        physical_frequency(self.omega_dimensionless(), self.rho, self.c)
    }

    /// Spatial parity eigenvalue: (−1)^{j+1} magnetic, (−1)^j electric.
    pub fn parity(&self) -> i32 {
        let base = if self.j % 2 == 0 { 1 } else { -1 };
        match self.kind {
            ModeKind::Magnetic => -base,
            ModeKind::Electric => base,
        }
    }
}

fn check_units(rho: f64, c: f64) -> Result<()> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Argument(format!("curvature radius ρ = {rho} must be positive")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Argument(format!("light speed c = {c} must be positive")));
    }
    Ok(())
}

fn physical_frequency(k: u32, rho: f64, c: f64) -> f64 {
    f64::from(k) * (c / rho)
}

/// Eigenfrequency (c/ρ)(n + 1 + j).
pub fn spectrum(j: u32, n: u32, rho: f64, c: f64) -> Result<f64> {
    if j == 0 {
        return Err(Error::Argument("j = 0 carries no electromagnetic modes".into()));
    }
    check_units(rho, c)?;
    Ok(physical_frequency(n + 1 + j, rho, c))
}

/// Uniform grid of `points` values on `[margin, π − margin]`.
pub fn interior_grid(points: usize, margin: f64) -> Vec<f64> {
    let span = std::f64::consts::PI - 2.0 * margin;
    match points {
        0 => Vec::new(),
        1 => vec![0.5 * std::f64::consts::PI],
        _ => (0..points)
            .map(|k| margin + span * k as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// The ten radial amplitudes of one mode with analytic χ-derivatives.
///
/// Independent of m: the azimuthal number enters only the angular factors.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub kind: ModeKind,
    pub j: u32,
    pub n: u32,
    profile: Profile,
    scale: Complex64,
}

pub fn magnetic_mode(spec: &ModeSpec) -> Result<RadialSolution> {
    if spec.kind != ModeKind::Magnetic {
        return Err(Error::Argument("magnetic_mode called with an electric spec".into()));
    }
    RadialSolution::new(spec)
}

pub fn electric_mode(spec: &ModeSpec) -> Result<RadialSolution> {
    if spec.kind != ModeKind::Electric {
        return Err(Error::Argument("electric_mode called with a magnetic spec".into()));
    }
    RadialSolution::new(spec)
}

/// Builds the radial solution matching `spec.kind`.
pub fn build_mode(spec: &ModeSpec) -> Result<RadialSolution> {
    RadialSolution::new(spec)
}

impl RadialSolution {
    fn new(spec: &ModeSpec) -> Result<Self> {
        Ok(Self {
            kind: spec.kind,
            j: spec.j,
            n: spec.n,
            profile: Profile::new(spec.j, spec.n)?,
            scale: c64(1.0, 0.0),
        })
    }

    pub fn omega(&self) -> f64 {
        self.profile.omega()
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    /// Copy rescaled so that max |f2| = 1 over `grid`.
    pub fn normalized(&self, grid: &[f64]) -> Result<Self> {
        let mut peak = 0.0_f64;
        for &chi in grid {
            peak = peak.max(self.eval(chi)?.f[1].norm());
        }
        if peak == 0.0 {
            return Err(Error::Numerical("f2 vanishes on the whole grid".into()));
        }
        Ok(Self { scale: self.scale / peak, ..self.clone() })
    }

    /// Profile value and its first two derivatives, times the scale.
    fn profile_jet(&self, chi: f64) -> [Complex64; 3] {
        [
            self.profile.value(chi) * self.scale,
            self.profile.derivative(chi) * self.scale,
            self.profile.second_derivative(chi) * self.scale,
        ]
    }

    /// All ten amplitudes and derivatives at χ.
    pub fn eval(&self, chi: f64) -> Result<RadialState> {
        check_open_angle("chi", chi)?;
        let (s, c) = chi.sin_cos();
        let [p, dp, ddp] = self.profile_jet(chi);
        let w = self.omega();
        let nu = nu(self.j);
        let i = c64(0.0, 1.0);
        // g/s and g/s² with derivatives
        let over_s = |g: Complex64, dg: Complex64| (g / s, dg / s - g * c / (s * s));
        let over_s2 = |g: Complex64, dg: Complex64| (g / (s * s), dg / (s * s) - g * (2.0 * c) / (s * s * s));
        let mut f = zero_vector();
        let mut df = zero_vector();
        match self.kind {
            ModeKind::Magnetic => {
                let (f2, d2) = over_s(p, dp);
                let (q, dq) = over_s(dp, ddp);
                let (f9, d9) = over_s2(p, dp);
                f[1] = f2;
                df[1] = d2;
                f[4] = -i * w * f2;
                df[4] = -i * w * d2;
                f[7] = -i * q;
                df[7] = -i * dq;
                f[8] = i * (2.0 * nu) * f9;
                df[8] = i * (2.0 * nu) * d9;
                for (dst, src, sign) in [(3, 1, -1.0), (6, 4, -1.0), (9, 7, 1.0)] {
                    f[dst] = f[src] * sign;
                    df[dst] = df[src] * sign;
                }
            }
            ModeKind::Electric => {
                let (f8, d8) = over_s(p, dp);
                let (q, dq) = over_s(dp, ddp);
                let (r, dr) = over_s2(p, dp);
                f[7] = f8;
                df[7] = d8;
                f[4] = -q / w;
                df[4] = -dq / w;
                f[5] = r * (2.0 * nu / w);
                df[5] = dr * (2.0 * nu / w);
                f[1] = -i * q / (w * w);
                df[1] = -i * dq / (w * w);
                f[2] = i * r * (2.0 * nu / (w * w));
                df[2] = i * dr * (2.0 * nu / (w * w));
                for (dst, src, sign) in [(3, 1, 1.0), (6, 4, 1.0), (9, 7, -1.0)] {
                    f[dst] = f[src] * sign;
                    df[dst] = df[src] * sign;
                }
            }
        }
        Ok(RadialState::new(self.j, w, chi, f, df))
    }

    /// Electric amplitudes in the reduced variables F2, F3, F5, F6, F8.
    pub fn reduced_electric(&self, chi: f64) -> Result<ReducedElectricState> {
        if self.kind != ModeKind::Electric {
            return Err(Error::Argument("reduced variables exist only for electric modes".into()));
        }
        check_open_angle("chi", chi)?;
        let [p, dp, ddp] = self.profile_jet(chi);
        let w = self.omega();
        let nu = nu(self.j);
        let i = c64(0.0, 1.0);
        let s2 = chi.sin().powi(2);
        Ok(ReducedElectricState {
            big_f2: -i * dp / (w * w),
            big_f3: i * p * (2.0 * nu / (w * w * s2)),
            big_f5: -dp / w,
            big_f6: p * (2.0 * nu / w),
            big_f8: p,
            d_big_f2: -i * ddp / (w * w),
            d_big_f6: dp * (2.0 * nu / w),
            d_big_f8: dp,
            chi,
            omega: w,
            j: self.j,
        })
    }
}

/// A spacetime point (t, χ, θ, φ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub t: f64,
    pub chi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SpacetimePoint {
    pub fn new(t: f64, chi: f64, theta: f64, phi: f64) -> Self {
        Self { t, chi, theta, phi }
    }
}

/// The 10-component wavefunction at one spacetime point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub point: SpacetimePoint,
    pub components: Vector10,
}

/// `Φ = e^{−iωt}(f1 D0, f2 D−1, f3 D0, f4 D+1, f5 D−1, f6 D0, f7 D+1, f8 D−1, f9 D0, f10 D+1)`.
pub fn field_sample(spec: &ModeSpec, solution: &RadialSolution, point: SpacetimePoint) -> Result<FieldSample> {
    check_open_angle("theta", point.theta)?;
    let state = solution.eval(point.chi)?;
    let d = slot_functions(spec.j, spec.m, point.theta);
    let phase = Complex64::from_polar(1.0, f64::from(spec.m) * point.phi - solution.omega() * point.t);
    Ok(FieldSample {
        point,
        components: std::array::from_fn(|k| state.f[k] * d[k] * phase),
    })
}

/// Cyclic → Cartesian tetrad components of a 4-vector,
/// acting on `(A_0, A_{−1}, A_0', A_{+1})` in slot order.
pub fn cyclic_to_cartesian_matrix() -> [[Complex64; 4]; 4] {
    let r = INV_SQRT2;
    let z = c64(0.0, 0.0);
    [
        [c64(1.0, 0.0), z, z, z],
        [z, c64(-r, 0.0), z, c64(r, 0.0)],
        [z, c64(0.0, -r), z, c64(0.0, -r)],
        [z, z, c64(1.0, 0.0), z],
    ]
}

pub fn cyclic_to_cartesian(cyclic: &[Complex64; 4]) -> [Complex64; 4] {
    let m = cyclic_to_cartesian_matrix();
    std::array::from_fn(|a| (0..4).map(|b| m[a][b] * cyclic[b]).sum())
}

/// Tetrad 4-potential of a mode at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub point: SpacetimePoint,
    /// Slot order (time, σ = −1, σ = 0, σ = +1).
    pub cyclic: [Complex64; 4],
    /// Φ_(0), Φ_(1), Φ_(2), Φ_(3).
    pub cartesian: [Complex64; 4],
}

/// 4-potential: magnetic `(0, f2 D−1, 0, −f2 D+1)`, electric
/// `(0, f2 D−1, f3 D0, f2 D+1)`, times `e^{−iωt} e^{imφ}`.
pub fn potential(spec: &ModeSpec, solution: &RadialSolution, point: SpacetimePoint) -> Result<PotentialSample> {
    let field = field_sample(spec, solution, point)?;
    let cyclic: [Complex64; 4] = std::array::from_fn(|k| field.components[k]);
    Ok(PotentialSample { point, cyclic, cartesian: cyclic_to_cartesian(&cyclic) })
}

/// Radial Lorentz condition
/// `−iω f1 − (d/dχ + 2 ctgχ) f3 − √(j(j+1))/(√2 sinχ) (f2 + f4)`.
pub fn lorentz_residual(solution: &RadialSolution, chi: f64) -> Result<Complex64> {
    let st = solution.eval(chi)?;
    lorentz_residual_of_state(&st)
}

pub fn lorentz_residual_of_state(st: &RadialState) -> Result<Complex64> {
    check_open_angle("chi", st.chi)?;
    let (s, c) = st.chi.sin_cos();
    let jf = f64::from(st.j);
    let root = (jf * (jf + 1.0)).sqrt();
    let (f, d) = (&st.f, &st.df);
    Ok(c64(0.0, -st.omega) * f[0] - (d[2] + f[2] * (2.0 * c / s)) - (f[1] + f[3]) * (root * INV_SQRT2 / s))
}

/// Parity-(−1)^j form `iω f1 + (d/dχ + 2 ctgχ) f3 + 2ν/sinχ f2`, the
/// negative of [`lorentz_residual`] once f4 = f2.
pub fn lorentz_residual_electric_form(solution: &RadialSolution, chi: f64) -> Result<Complex64> {
    let st = solution.eval(chi)?;
    let (s, c) = chi.sin_cos();
    let (f, d) = (&st.f, &st.df);
    Ok(c64(0.0, st.omega) * f[0] + d[2] + f[2] * (2.0 * c / s) + f[1] * (2.0 * st.nu / s))
}

/// Landau gauge: returns `(f1, (d/dχ + 2 ctgχ) f3 + 2ν/sinχ f2)`, both of
/// which vanish for electric modes.
pub fn landau_residual(solution: &RadialSolution, chi: f64) -> Result<(Complex64, Complex64)> {
    if solution.kind != ModeKind::Electric {
        return Err(Error::Argument("the Landau condition applies to electric modes".into()));
    }
    let st = solution.eval(chi)?;
    let (s, c) = chi.sin_cos();
    let (f, d) = (&st.f, &st.df);
    Ok((f[0], d[2] + f[2] * (2.0 * c / s) + f[1] * (2.0 * st.nu / s)))
}

/// Covariant Lorentz divergence `Φ_(a) e^(a)α_;α + e^(a)α ∂_α Φ_(a)` of the
/// Cartesian tetrad potential, with ∂_χ and ∂_θ by 5-point differences.
pub fn lorentz_divergence_covariant(
    spec: &ModeSpec,
    solution: &RadialSolution,
    point: SpacetimePoint,
) -> Result<Complex64> {
    let h = FIVE_POINT_STEP;
    check_fd_window(point, h)?;
    let cart = |p: SpacetimePoint| -> [Complex64; 4] {
        potential(spec, solution, p).map(|s| s.cartesian).unwrap_or([c64(f64::NAN, 0.0); 4])
    };
    let here = cart(point);
    let d_chi = five_point_array(|x| cart(SpacetimePoint { chi: x, ..point }), point.chi, h);
    let d_theta = five_point_array(|x| cart(SpacetimePoint { theta: x, ..point }), point.theta, h);
    let w = solution.omega();
    let m = f64::from(spec.m);
    let (s, st) = (point.chi.sin(), point.theta.sin());
    let mut total = c64(0.0, 0.0);
    for a in 0..4 {
        total += here[a] * tetrad_divergence(a, point.chi, point.theta)?;
    }
    total += c64(0.0, -w) * here[0];
    total -= d_chi[3];
    total -= d_theta[1] / s;
    total -= c64(0.0, m) * here[2] / (s * st);
    Ok(total)
}

fn check_fd_window(point: SpacetimePoint, h: f64) -> Result<()> {
    check_open_angle("chi", point.chi)?;
    check_open_angle("theta", point.theta)?;
    let pi = std::f64::consts::PI;
    for (name, v) in [("chi", point.chi), ("theta", point.theta)] {
        if v - 2.0 * h <= 0.0 || v + 2.0 * h >= pi {
            return Err(Error::Numerical(format!(
                "{name} = {v} is within two finite-difference steps (h = {h}) of a pole"
            )));
        }
    }
    Ok(())
}

/// The first-order DKP operator on S³,
/// `iβ⁰∂_t + iβ³∂_χ + i ctgχ(β¹J³¹ + β²J³²) + Σ/sinχ − P₆`, with
/// `Σ = iβ¹∂_θ + β²(i∂_φ + iJ¹² cosθ)/sinθ`.
#[derive(Debug, Clone)]
pub struct DkpOperator {
    beta: [ComplexMatrix10; 4],
    i_j12: ComplexMatrix10,
    p6: ComplexMatrix10,
}

/// Partial derivatives of Φ at a point, in coordinate order (t, χ, θ, φ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJet {
    pub value: Vector10,
    pub d: [Vector10; 4],
}

impl DkpOperator {
    pub fn new() -> Self {
        Self {
            beta: std::array::from_fn(|a| beta(a).expect("index in range")),
            i_j12: spin_generator(1, 2).expect("index in range") * c64(0.0, 1.0),
            p6: projector_p6(),
        }
    }

    pub fn apply(&self, point: SpacetimePoint, jet: &FieldJet) -> Result<Vector10> {
        let i = c64(0.0, 1.0);
        let (s, st, ct) = (point.chi.sin(), point.theta.sin(), point.theta.cos());
        let conn = connection_term(point.chi)?;
        let t_part = self.beta[0].apply(&jet.d[0]);
        let chi_part = self.beta[3].apply(&jet.d[1]);
        let theta_part = self.beta[1].apply(&jet.d[2]);
        let rotated = self.i_j12.apply(&jet.value);
        let inner: Vector10 = std::array::from_fn(|k| (i * jet.d[3][k] + rotated[k] * ct) / st);
        let phi_part = self.beta[2].apply(&inner);
        let conn_part = conn.apply(&jet.value);
        let mass = self.p6.apply(&jet.value);
        Ok(std::array::from_fn(|k| {
            i * t_part[k] + i * chi_part[k] + conn_part[k] + (i * theta_part[k] + phi_part[k]) / s - mass[k]
        }))
    }

    /// Applies the operator to an arbitrary field, differentiating in all
    /// four coordinates with the 5-point stencil.
    pub fn residual_of<F>(&self, field: F, point: SpacetimePoint) -> Result<Vector10>
    where
        F: Fn(SpacetimePoint) -> Vector10,
    {
        let h = FIVE_POINT_STEP;
        check_fd_window(point, h)?;
        let jet = FieldJet {
            value: field(point),
            d: [
                five_point_array(|x| field(SpacetimePoint { t: x, ..point }), point.t, h),
                five_point_array(|x| field(SpacetimePoint { chi: x, ..point }), point.chi, h),
                five_point_array(|x| field(SpacetimePoint { theta: x, ..point }), point.theta, h),
                five_point_array(|x| field(SpacetimePoint { phi: x, ..point }), point.phi, h),
            ],
        };
        self.apply(point, &jet)
    }
}

impl Default for DkpOperator {
    fn default() -> Self {
        Self::new()
    }
}

/// Full covariant DKP residual of a mode: exact ∂_t = −iω and ∂_φ = im,
/// 5-point differences (h = 1e−4) in χ and θ.
pub fn dkp_equation_residual(
    spec: &ModeSpec,
    solution: &RadialSolution,
    point: SpacetimePoint,
) -> Result<Vector10> {
    dkp_equation_residual_at(spec, solution, point, solution.omega())
}

/// [`dkp_equation_residual`] with the time derivative taken as `−iω` for a
/// caller-chosen ω (the mode's own ω gives a solution; anything else is a
/// detuned control).
pub fn dkp_equation_residual_at(
    spec: &ModeSpec,
    solution: &RadialSolution,
    point: SpacetimePoint,
    omega: f64,
) -> Result<Vector10> {
    let h = FIVE_POINT_STEP;
    check_fd_window(point, h)?;
    let sample = |p: SpacetimePoint| -> Vector10 {
        field_sample(spec, solution, p)
            .map(|s| s.components)
            .unwrap_or([c64(f64::NAN, 0.0); 10])
    };
    let value = sample(point);
    let w = omega;
    let m = f64::from(spec.m);
    let jet = FieldJet {
        value,
        d: [
            value.map(|v| v * c64(0.0, -w)),
            five_point_array(|x| sample(SpacetimePoint { chi: x, ..point }), point.chi, h),
            five_point_array(|x| sample(SpacetimePoint { theta: x, ..point }), point.theta, h),
            value.map(|v| v * c64(0.0, m)),
        ],
    };
    DkpOperator::new().apply(point, &jet)
}

/// Largest component modulus.
pub fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{
        residual_electric_landau, residual_electric_reduced, residual_full, residual_magnetic_system,
    };
    use std::f64::consts::{FRAC_PI_2, PI};

    fn spec(kind: ModeKind, j: u32, n: u32, m: i32) -> ModeSpec {
        ModeSpec::new(kind, j, n, m).unwrap()
    }

    #[test]
    fn spectrum_values() {
        assert_eq!(spectrum(1, 0, 1.0, 1.0).unwrap(), 2.0);
        assert_eq!(spectrum(2, 3, 1.0, 1.0).unwrap(), 6.0);
        assert_eq!(spectrum(1, 0, 2.0, 1.0).unwrap(), 1.0);
        assert!(spectrum(0, 0, 1.0, 1.0).is_err());
        assert!(spectrum(1, 0, 0.0, 1.0).is_err());
        assert!(spectrum(1, 0, 1.0, -1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(ModeSpec::new(ModeKind::Magnetic, 0, 0, 0).is_err());
        assert!(ModeSpec::new(ModeKind::Magnetic, 1, 0, 2).is_err());
        let s = spec(ModeKind::Electric, 3, 2, -3);
        assert_eq!(s.omega_dimensionless(), 6);
        assert_eq!(s.parity(), -1);
        assert_eq!(spec(ModeKind::Magnetic, 3, 2, 0).parity(), 1);
        assert_eq!("Electric".parse::<ModeKind>().unwrap(), ModeKind::Electric);
        assert!("scalar".parse::<ModeKind>().is_err());
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        assert!(magnetic_mode(&spec(ModeKind::Electric, 1, 0, 0)).is_err());
        assert!(electric_mode(&spec(ModeKind::Magnetic, 1, 0, 0)).is_err());
        let m = magnetic_mode(&spec(ModeKind::Magnetic, 1, 0, 0)).unwrap();
        assert!(landau_residual(&m, 1.0).is_err());
        assert!(m.reduced_electric(1.0).is_err());
    }

    #[test]
    fn magnetic_low_mode_shape() {
        let sol = magnetic_mode(&spec(ModeKind::Magnetic, 1, 0, 0)).unwrap();
        for chi in interior_grid(16, 0.05) {
            let st = sol.eval(chi).unwrap();
            // f2 = −4 sinχ, f9 = 2iν f2 / sinχ = −8i (ν = 1)
            assert!((st.f[1] - c64(-4.0 * chi.sin(), 0.0)).norm() < 1e-12);
            assert!((st.f[8] - c64(0.0, -8.0)).norm() < 1e-12);
            assert_eq!(st.magnetic_parity_violation(), 0.0);
        }
    }

    #[test]
    fn electric_low_mode_shape() {
        let sol = electric_mode(&spec(ModeKind::Electric, 1, 0, 0)).unwrap();
        for chi in interior_grid(16, 0.05) {
            let st = sol.eval(chi).unwrap();
            assert!((st.f[5] - c64(-4.0, 0.0)).norm() < 1e-12);
            assert_eq!(st.f[0], c64(0.0, 0.0));
            assert_eq!(st.electric_parity_violation(), 0.0);
        }
    }

    #[test]
    fn modes_satisfy_radial_systems() {
        for j in 1..=3 {
            for n in 0..=2 {
                let mag = magnetic_mode(&spec(ModeKind::Magnetic, j, n, 0)).unwrap();
                let ele = electric_mode(&spec(ModeKind::Electric, j, n, 0)).unwrap();
                for chi in interior_grid(50, 0.05) {
                    let sm = mag.eval(chi).unwrap();
                    assert!(max_norm(&residual_magnetic_system(&sm).unwrap()) <= 1e-10);
                    assert!(max_norm(&residual_full(&sm).unwrap()) <= 1e-10);
                    let se = ele.eval(chi).unwrap();
                    assert!(max_norm(&residual_electric_landau(&se).unwrap()) <= 1e-10);
                    assert!(max_norm(&residual_full(&se).unwrap()) <= 1e-10);
                    let red = ele.reduced_electric(chi).unwrap();
                    assert!(max_norm(&residual_electric_reduced(&red).unwrap()) <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn gauge_conditions() {
        for (j, n) in [(1, 0), (2, 1), (3, 2)] {
            let mag = magnetic_mode(&spec(ModeKind::Magnetic, j, n, 0)).unwrap();
            let ele = electric_mode(&spec(ModeKind::Electric, j, n, 0)).unwrap();
            for chi in interior_grid(40, 0.05) {
                assert!(lorentz_residual(&mag, chi).unwrap().norm() <= 1e-12);
                assert!(lorentz_residual(&ele, chi).unwrap().norm() <= 1e-9);
                let alt = lorentz_residual_electric_form(&ele, chi).unwrap();
                assert!((alt + lorentz_residual(&ele, chi).unwrap()).norm() <= 1e-12);
                let (f1, g) = landau_residual(&ele, chi).unwrap();
                assert_eq!(f1, c64(0.0, 0.0));
                assert!(g.norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn covariant_lorentz_divergence_vanishes() {
        let p = SpacetimePoint::new(0.4, 1.2, 0.9, 0.7);
        for kind in [ModeKind::Magnetic, ModeKind::Electric] {
            for (j, n, m) in [(1, 0, 0), (1, 1, 1), (2, 1, -1), (2, 0, 2)] {
                let s = spec(kind, j, n, m);
                let sol = build_mode(&s).unwrap();
                let r = lorentz_divergence_covariant(&s, &sol, p).unwrap();
                assert!(r.norm() <= 1e-6, "{kind} j={j} n={n} m={m}: {r}");
            }
        }
    }

    #[test]
    fn m_does_not_enter_radial_amplitudes() {
        for kind in [ModeKind::Magnetic, ModeKind::Electric] {
            let a = build_mode(&spec(kind, 2, 1, -2)).unwrap();
            let b = build_mode(&spec(kind, 2, 1, 1)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.eval(0.77).unwrap(), b.eval(0.77).unwrap());
        }
    }

    #[test]
    fn potential_structure() {
        let s = spec(ModeKind::Magnetic, 2, 1, 1);
        let sol = build_mode(&s).unwrap();
        let pot = potential(&s, &sol, SpacetimePoint::new(0.2, 1.0, 0.6, 0.3)).unwrap();
        assert_eq!(pot.cyclic[0], c64(0.0, 0.0));
        assert_eq!(pot.cyclic[2], c64(0.0, 0.0));

        let s = spec(ModeKind::Electric, 1, 0, 0);
        let sol = build_mode(&s).unwrap();
        let p = SpacetimePoint::new(0.0, 0.8, FRAC_PI_2, 0.0);
        let pot = potential(&s, &sol, p).unwrap();
        let f2 = sol.eval(0.8).unwrap().f[1];
        let dm = crate::angular::wigner_d(1, 0, -1, FRAC_PI_2);
        let dp = crate::angular::wigner_d(1, 0, 1, FRAC_PI_2);
        let expected = -(f2 * dm - f2 * dp) * INV_SQRT2;
        assert!((pot.cartesian[1] - expected).norm() < 1e-14);
    }

    #[test]
    fn time_period_returns_same_field() {
        let s = spec(ModeKind::Electric, 2, 0, 1);
        let sol = build_mode(&s).unwrap();
        let p = SpacetimePoint::new(0.3, 1.3, 0.5, 2.0);
        let q = SpacetimePoint { t: p.t + 2.0 * PI / sol.omega(), ..p };
        let a = potential(&s, &sol, p).unwrap();
        let b = potential(&s, &sol, q).unwrap();
        for k in 0..4 {
            assert!((a.cyclic[k] - b.cyclic[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn field_sample_zero_slots() {
        let p = SpacetimePoint::new(0.1, 1.4, 1.1, 2.0);
        let s = spec(ModeKind::Magnetic, 2, 1, 1);
        let f = field_sample(&s, &build_mode(&s).unwrap(), p).unwrap();
        for k in [0, 2, 5] {
            assert_eq!(f.components[k], c64(0.0, 0.0));
        }
        let s = spec(ModeKind::Electric, 2, 1, 1);
        let f = field_sample(&s, &build_mode(&s).unwrap(), p).unwrap();
        assert_eq!(f.components[8], c64(0.0, 0.0));
    }

    #[test]
    fn field_at_north_pole_keeps_matching_helicity() {
        // d^j_{−m,σ}(0) = δ_{−m,σ}: with m = j = 1 only σ = −1 slots survive
        let s = spec(ModeKind::Electric, 1, 0, 1);
        let sol = build_mode(&s).unwrap();
        let st = sol.eval(1.0).unwrap();
        let d = slot_functions(1, 1, 0.0);
        for k in 0..10 {
            let expected = if crate::dkp_algebra::SLOT_HELICITY[k] == -1 { 1.0 } else { 0.0 };
            assert!((d[k] - expected).abs() < 1e-15);
        }
        assert!(st.f[1].norm() > 0.0);
    }

    #[test]
    fn full_equation_examples() {
        let p = SpacetimePoint::new(0.3, 1.0, 0.8, 0.5);
        let s = spec(ModeKind::Magnetic, 1, 0, 0);
        let r = dkp_equation_residual(&s, &build_mode(&s).unwrap(), p).unwrap();
        assert!(max_norm(&r) <= 1e-5);
        let p = SpacetimePoint::new(0.1, 1.4, 1.1, 2.0);
        let s = spec(ModeKind::Electric, 1, 0, 1);
        let r = dkp_equation_residual(&s, &build_mode(&s).unwrap(), p).unwrap();
        assert!(max_norm(&r) <= 1e-5);
    }

    #[test]
    fn generic_operator_agrees_with_mode_residual() {
        let s = spec(ModeKind::Electric, 2, 1, -1);
        let sol = build_mode(&s).unwrap();
        let p = SpacetimePoint::new(0.5, 0.9, 1.7, 1.1);
        let field = |q: SpacetimePoint| field_sample(&s, &sol, q).unwrap().components;
        let r = DkpOperator::new().residual_of(field, p).unwrap();
        assert!(max_norm(&r) <= 1e-5);
    }

    #[test]
    fn fd_window_near_pole_is_numerical_error() {
        let s = spec(ModeKind::Magnetic, 1, 0, 0);
        let sol = build_mode(&s).unwrap();
        let r = dkp_equation_residual(&s, &sol, SpacetimePoint::new(0.0, 1e-4, 1.0, 0.0));
        assert!(matches!(r, Err(Error::Numerical(_))));
    }

    #[test]
    fn normalizer() {
        let grid = interior_grid(64, 0.02);
        let sol = build_mode(&spec(ModeKind::Magnetic, 2, 1, 0)).unwrap().normalized(&grid).unwrap();
        let peak = grid.iter().map(|&x| sol.eval(x).unwrap().f[1].norm()).fold(0.0, f64::max);
        assert!((peak - 1.0).abs() < 1e-14);
    }

    #[test]
    fn grid_helper() {
        let g = interior_grid(128, 0.02);
        assert_eq!(g.len(), 128);
        assert_eq!(g[0], 0.02);
        assert!((g[127] - (PI - 0.02)).abs() < 1e-15);
    }
}
