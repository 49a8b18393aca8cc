//! Separated radial equations.
//!
//! The ten first-order equations below are what the DKP operator reduces
//! to after separating `e^{−iωt}` and the D-functions, with ν = √(j(j+1)/2),
//! s = sinχ and ctg = cosχ/sinχ (f_k written 1-based):
//!
//! ```text
//!  1: −(d + 2ctg) f6 − (ν/s)(f5 + f7)            = 0
//!  2:  iω f5 + i(d + ctg) f8 + i(ν/s) f9          = 0
//!  3:  iω f6 + i(ν/s)(−f8 + f10)                  = 0
//!  4:  iω f7 − i(d + ctg) f10 − i(ν/s) f9         = 0
//!  5: −iω f2 + (ν/s) f1 − f5                      = 0
//!  6: −iω f3 − d f1 − f6                          = 0
//!  7: −iω f4 + (ν/s) f1 − f7                      = 0
//!  8: −i(d + ctg) f2 − i(ν/s) f3 − f8             = 0
//!  9:  i(ν/s)(f2 − f4) − f9                       = 0
//! 10:  i(d + ctg) f4 + i(ν/s) f3 − f10            = 0
//! ```
//!
//! Under the two parity constraints the system splits into the magnetic
//! (4 equations) and electric (6 equations) subsystems, and the magnetic
//! one collapses to `f'' + (ω² − j(j+1)/sin²χ) f = 0` for `f = sinχ·f2`.

use crate::angular::nu;
use crate::dkp_algebra::Vector10;
use crate::error::{check_open_angle, Error, Result};
use crate::{c64, Complex64};

/// Radial amplitudes and their χ-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    /// `f[k]` is f_{k+1}.
    pub f: Vector10,
    pub df: Vector10,
    pub chi: f64,
    pub omega: f64,
    pub j: u32,
    pub nu: f64,
}

impl RadialState {
    pub fn new(j: u32, omega: f64, chi: f64, f: Vector10, df: Vector10) -> Self {
        Self { f, df, chi, omega, j, nu: nu(j) }
    }

    /// Largest violation of f1 = f3 = f6 = 0, f4 = −f2, f7 = −f5, f10 = f8.
    pub fn magnetic_parity_violation(&self) -> f64 {
        let f = &self.f;
        [f[0].norm(), f[2].norm(), f[5].norm(), (f[3] + f[1]).norm(), (f[6] + f[4]).norm(), (f[9] - f[7]).norm()]
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Largest violation of f9 = 0, f4 = f2, f7 = f5, f10 = −f8.
    pub fn electric_parity_violation(&self) -> f64 {
        let f = &self.f;
        [f[8].norm(), (f[3] - f[1]).norm(), (f[6] - f[4]).norm(), (f[9] + f[7]).norm()]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

struct Coeffs {
    ctg: f64,
    nu_s: f64,
    iw: Complex64,
}

fn coeffs(state: &RadialState) -> Result<Coeffs> {
    check_open_angle("chi", state.chi)?;
    let (s, c) = state.chi.sin_cos();
    Ok(Coeffs { ctg: c / s, nu_s: state.nu / s, iw: c64(0.0, state.omega) })
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Left-hand sides of the full ten-equation system.
pub fn residual_full(state: &RadialState) -> Result<[Complex64; 10]> {
    let Coeffs { ctg, nu_s, iw, .. } = coeffs(state)?;
    let (f, d) = (&state.f, &state.df);
    let dc = |k: usize| d[k] + f[k] * ctg;
    Ok([
        -(d[5] + f[5] * (2.0 * ctg)) - (f[4] + f[6]) * nu_s,
        iw * f[4] + I * dc(7) + I * f[8] * nu_s,
        iw * f[5] + I * (f[9] - f[7]) * nu_s,
        iw * f[6] - I * dc(9) - I * f[8] * nu_s,
        -iw * f[1] + f[0] * nu_s - f[4],
        -iw * f[2] - d[0] - f[5],
        -iw * f[3] + f[0] * nu_s - f[6],
        -I * dc(1) - I * f[2] * nu_s - f[7],
        I * (f[1] - f[3]) * nu_s - f[8],
        I * dc(3) + I * f[2] * nu_s - f[9],
    ])
}

/// Magnetic-parity subsystem in f2, f5, f8, f9.
pub fn residual_magnetic_system(state: &RadialState) -> Result<[Complex64; 4]> {
    let Coeffs { ctg, nu_s, iw, .. } = coeffs(state)?;
    let (f, d) = (&state.f, &state.df);
    Ok([
        iw * f[4] + I * (d[7] + f[7] * ctg) + I * f[8] * nu_s,
        -iw * f[1] - f[4],
        -I * (d[1] + f[1] * ctg) - f[7],
        I * f[1] * (2.0 * nu_s) - f[8],
    ])
}

/// Electric-parity subsystem in f1, f2, f3, f5, f6, f8.
pub fn residual_electric_system(state: &RadialState) -> Result<[Complex64; 6]> {
    let Coeffs { ctg, nu_s, iw, .. } = coeffs(state)?;
    let (f, d) = (&state.f, &state.df);
    Ok([
        d[5] + f[5] * (2.0 * ctg) + f[4] * (2.0 * nu_s),
        iw * f[4] + I * (d[7] + f[7] * ctg),
        iw * f[5] - I * f[7] * (2.0 * nu_s),
        -iw * f[1] + f[0] * nu_s - f[4],
        iw * f[2] + d[0] + f[5],
        I * (d[1] + f[1] * ctg) + I * f[2] * nu_s + f[7],
    ])
}

/// Electric subsystem in the Landau gauge (f1 = 0).
pub fn residual_electric_landau(state: &RadialState) -> Result<[Complex64; 6]> {
    let Coeffs { ctg, nu_s, iw, .. } = coeffs(state)?;
    let (f, d) = (&state.f, &state.df);
    Ok([
        d[5] + f[5] * (2.0 * ctg) + f[4] * (2.0 * nu_s),
        iw * f[4] + I * (d[7] + f[7] * ctg),
        iw * f[5] - I * f[7] * (2.0 * nu_s),
        -iw * f[1] - f[4],
        iw * f[2] + f[5],
        I * (d[1] + f[1] * ctg) + I * f[2] * nu_s + f[7],
    ])
}

/// Electric amplitudes after `f2 = F2/s, f3 = F3, f5 = F5/s, f6 = F6/s², f8 = F8/s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedElectricState {
    pub big_f2: Complex64,
    pub big_f3: Complex64,
    pub big_f5: Complex64,
    pub big_f6: Complex64,
    pub big_f8: Complex64,
    pub d_big_f2: Complex64,
    pub d_big_f6: Complex64,
    pub d_big_f8: Complex64,
    pub chi: f64,
    pub omega: f64,
    pub j: u32,
}

/// Left-hand sides of the electric system in the reduced variables.
pub fn residual_electric_reduced(st: &ReducedElectricState) -> Result<[Complex64; 6]> {
    check_open_angle("chi", st.chi)?;
    let s2 = st.chi.sin().powi(2);
    let nu = nu(st.j);
    let w = st.omega;
    Ok([
        st.d_big_f6 + st.big_f5 * (2.0 * nu),
        st.big_f5 * w + st.d_big_f8,
        st.big_f6 * w - st.big_f8 * (2.0 * nu),
        -I * w * st.big_f2 - st.big_f5,
        I * w * st.big_f3 + st.big_f6 / s2,
        I * st.d_big_f2 + I * nu * st.big_f3 + st.big_f8,
    ])
}

/// `(d/dχ + ctgχ)² f2 + (ω² − j(j+1)/sin²χ) f2`.
pub fn residual_magnetic(
    f2: Complex64,
    df2: Complex64,
    d2f2: Complex64,
    omega: f64,
    j: u32,
    chi: f64,
) -> Result<Complex64> {
    if j == 0 {
        return Err(Error::Argument("j = 0 has no σ = ±1 harmonics".into()));
    }
    check_open_angle("chi", chi)?;
    let (s, c) = chi.sin_cos();
    let ctg = c / s;
    let l = f64::from(j * (j + 1));
    // (d + ctg)² = d² + 2 ctg d − 1
    Ok(d2f2 + df2 * (2.0 * ctg) - f2 + f2 * (omega * omega - l / (s * s)))
}

/// `f'' + (ω² − j(j+1)/sin²χ) f` for the reduced profile `f = sinχ·f2`.
pub fn residual_second_order(f: Complex64, d2f: Complex64, omega: f64, j: u32, chi: f64) -> Result<Complex64> {
    check_open_angle("chi", chi)?;
    let s = chi.sin();
    Ok(d2f + f * (omega * omega - f64::from(j * (j + 1)) / (s * s)))
}

/// `f = sinχ·f2` on a grid of `(χ, f2)` samples.
pub fn second_order_form(f2_profile: &[(f64, Complex64)]) -> Vec<(f64, Complex64)> {
    f2_profile.iter().map(|&(chi, v)| (chi, v * chi.sin())).collect()
}

/// Inverse of [`second_order_form`].
pub fn first_order_form(f_profile: &[(f64, Complex64)]) -> Vec<(f64, Complex64)> {
    f_profile.iter().map(|&(chi, v)| (chi, v / chi.sin())).collect()
}

/// Complex variable `z = 1 − e^{−2iχ}` together with its factored form
/// `2 sinχ e^{i(π/2 − χ)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZPoint {
    pub z: Complex64,
    pub factored: Complex64,
}

pub fn z_of_chi(chi: f64) -> ZPoint {
    let z = c64(1.0, 0.0) - Complex64::from_polar(1.0, -2.0 * chi);
    let factored = Complex64::from_polar(2.0 * chi.sin(), std::f64::consts::FRAC_PI_2 - chi);
    ZPoint { z, factored }
}

/// Exponents and hypergeometric parameters of `f = z^a (1−z)^b F(α, β; γ; z)`
/// on the regular, polynomial branch a = j+1, b = −ω/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricReduction {
    pub j: u32,
    pub omega: f64,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta_param: f64,
    pub gamma_param: f64,
    /// Polynomial degree when α = −n for a non-negative integer n.
    pub n: Option<u32>,
}

impl HypergeometricReduction {
    pub fn is_quantized(&self) -> bool {
        self.n.is_some()
    }

    /// Residuals of `a(a−1) = j(j+1)` and `b² = ω²/4`.
    pub fn indicial_residuals(&self) -> [f64; 2] {
        let l = f64::from(self.j * (self.j + 1));
        [
            (self.a * (self.a - 1.0) - l).abs(),
            (self.b * self.b - 0.25 * self.omega * self.omega).abs(),
        ]
    }

    /// Residuals of `α+β = 2a+2b` and `αβ = (a+b)² − ω²/4`.
    pub fn parameter_residuals(&self) -> [f64; 2] {
        let ab = self.a + self.b;
        [
            (self.alpha + self.beta_param - 2.0 * ab).abs(),
            (self.alpha * self.beta_param - (ab * ab - 0.25 * self.omega * self.omega)).abs(),
        ]
    }
}

pub fn reduction_params(j: u32, omega: f64) -> HypergeometricReduction {
    let a = f64::from(j) + 1.0;
    let b = -0.5 * omega;
    let alpha = a + b - 0.5 * omega;
    let beta_param = a + b + 0.5 * omega;
    let degree = omega - a;
    let n = if degree >= 0.0 && degree.fract() == 0.0 && degree <= f64::from(u32::MAX) {
        Some(degree as u32)
    } else {
        None
    };
    HypergeometricReduction { j, omega, a, b, alpha, beta_param, gamma_param: 2.0 * a, n }
}

/// Integration window and resolution for [`shoot_regularity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingGrid {
    pub chi_start: f64,
    pub chi_end_margin: f64,
    pub steps: usize,
}

impl Default for ShootingGrid {
    fn default() -> Self {
        Self { chi_start: 0.01, chi_end_margin: 0.01, steps: 20_000 }
    }
}

/// Taylor coefficients of 1/sin²x: x⁻² + 1/3 + x²/15 + 2x⁴/189 + x⁶/675.
const INV_SIN2_SERIES: [f64; 5] = [1.0, 1.0 / 3.0, 1.0 / 15.0, 2.0 / 189.0, 1.0 / 675.0];

/// Frobenius coefficients `a_k` of the regular solution
/// `f = χ^{j+1} Σ a_k χ^{2k}` of `f'' + (ω² − j(j+1)/sin²χ) f = 0`.
pub fn frobenius_coefficients(j: u32, omega: f64, terms: usize) -> Vec<f64> {
    let s = f64::from(j) + 1.0;
    let l = f64::from(j * (j + 1));
    let mut a = vec![1.0];
    for k in 1..terms.min(INV_SIN2_SERIES.len()) {
        let kf = k as f64;
        let mut rhs = -omega * omega * a[k - 1];
        for i in 1..=k {
            rhs += l * INV_SIN2_SERIES[i] * a[k - i];
        }
        let lead = (s + 2.0 * kf) * (s + 2.0 * kf - 1.0) - l;
        a.push(rhs / lead);
    }
    a
}

/// Shooting regularity indicator for trial frequency ω.
///
/// Starts the regular Frobenius branch at `chi_start`, integrates
/// `f'' + (ω² − j(j+1)/sin²χ) f = 0` with classical RK4 up to
/// `π − chi_end_margin` and returns `|f(end)| / max|f|`. The value is small
/// (∼ margin^{j+1}) only when the solution is also regular at χ = π.
pub fn shoot_regularity(j: u32, omega: f64, grid: ShootingGrid) -> Result<f64> {
    if j == 0 {
        return Err(Error::Argument("shooting needs j ≥ 1".into()));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Argument(format!("ω = {omega} must be positive")));
    }
    let end = std::f64::consts::PI - grid.chi_end_margin;
    if grid.steps < 2 || !(grid.chi_start > 0.0 && grid.chi_start < end) {
        return Err(Error::Argument(format!("invalid shooting grid {grid:?}")));
    }
    let l = f64::from(j * (j + 1));
    let coeffs = frobenius_coefficients(j, omega, 4);
    let p = f64::from(j) + 1.0;
    let x0 = grid.chi_start;
    let (mut f, mut df) = (0.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate() {
        let e = p + 2.0 * k as f64;
        f += c * x0.powf(e);
        df += c * e * x0.powf(e - 1.0);
    }
    let rhs = |x: f64, y: [f64; 2]| -> [f64; 2] {
        let s = x.sin();
        [y[1], -(omega * omega - l / (s * s)) * y[0]]
    };
    let h = (end - x0) / grid.steps as f64;
    let mut y = [f, df];
    let mut peak = f.abs();
    for step in 0..grid.steps {
        let x = x0 + step as f64 * h;
        let k1 = rhs(x, y);
        let k2 = rhs(x + 0.5 * h, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = rhs(x + 0.5 * h, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = rhs(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        for i in 0..2 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !y[0].is_finite() || !y[1].is_finite() {
            return Err(Error::Numerical(format!(
                "shooting diverged at χ = {:.6} (step {step} of {}, h = {h:.3e}, j = {j}, ω = {omega})",
                x + h,
                grid.steps
            )));
        }
        peak = peak.max(y[0].abs());
    }
    if peak == 0.0 {
        return Err(Error::Numerical("shooting produced an identically zero solution".into()));
    }
    Ok(y[0].abs() / peak)
}
