//! Wigner D-functions for the helicity slots of the separated ansatz and
//! the angular part Σ of the DKP operator.
//!
//! Convention: the slot with helicity σ carries
//! `D_σ(θ, φ) = e^{imφ} d^j_{−m,σ}(θ)`, i.e. `D^j_{−m,σ}(φ, θ, 0)` in the
//! (α, β, γ) Euler-angle notation with `D^j_{MM'} = e^{−iMα} d^j_{MM'}(β) e^{−iM'γ}`.
//! With that choice `i∂_φ D_σ = −m D_σ`, and the first-order recurrences
//! in [`recurrence_residuals`] hold with the signs below. The opposite row
//! sign (`d^j_{m,σ}`) fails them; see the tests.

use std::sync::OnceLock;

use crate::dkp_algebra::{beta, spin_generator, zero_vector, Vector10, SLOT_HELICITY};
use crate::error::{Error, Result};
use crate::fd::{five_point, five_point_array, FIVE_POINT_STEP};
use crate::{c64, Complex64};

/// Largest j supported by the log-factorial table.
pub const JMAX: u32 = 20;

/// Sign applied to m in the row index of d^j: `D_σ ∝ d^j_{ROW_SIGN·m, σ}`.
pub const ROW_SIGN: i32 = -1;

fn ln_factorials() -> &'static [f64; 2 * JMAX as usize + 2] {
    static TABLE: OnceLock<[f64; 2 * JMAX as usize + 2]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; 2 * JMAX as usize + 2];
        for k in 1..t.len() {
            t[k] = t[k - 1] + (k as f64).ln();
        }
        t
    })
}

/// Wigner small-d function `d^j_{m,σ}(θ)` from the explicit finite sum
///
/// `d^j_{m'm}(β) = Σ_k (−1)^{k+m'−m} √((j+m')!(j−m')!(j+m)!(j−m)!)
///     / ((j+m−k)! k! (j−k−m')! (k+m'−m)!) · cos^{2j+m−m'−2k}(β/2) sin^{2k+m'−m}(β/2)`.
///
/// Returns 0 when |m| > j or |σ| > j, where the function vanishes.
///
/// # Panics
/// If `j > JMAX`.
pub fn wigner_d(j: u32, m: i32, sigma: i32, theta: f64) -> f64 {
    assert!(j <= JMAX, "wigner_d supports j ≤ {JMAX}, got {j}");
    let ji = j as i32;
    if m.abs() > ji || sigma.abs() > ji {
        return 0.0;
    }
    let lf = ln_factorials();
    let f = |k: i32| lf[k as usize];
    let (mp, mm) = (m, sigma);
    let norm = 0.5 * (f(ji + mp) + f(ji - mp) + f(ji + mm) + f(ji - mm));
    let (s, c) = (0.5 * theta).sin_cos();
    let k_min = 0.max(mm - mp);
    let k_max = (ji + mm).min(ji - mp);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let ln_den = f(ji + mm - k) + f(k) + f(ji - k - mp) + f(k + mp - mm);
        let sign = if (k + mp - mm).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let pc = 2 * ji + mm - mp - 2 * k;
        let ps = 2 * k + mp - mm;
        sum += sign * (norm - ln_den).exp() * c.powi(pc) * s.powi(ps);
    }
    sum
}

/// `d^j_{ROW_SIGN·m, σ}(θ)`: the θ-dependence of the slot with helicity σ.
pub fn slot_d(j: u32, m: i32, sigma: i32, theta: f64) -> f64 {
    wigner_d(j, ROW_SIGN * m, sigma, theta)
}

/// The five functions D_{−2} … D_{+2} (azimuthal phase factored out) at one
/// (j, m, θ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerTriple {
    pub j: u32,
    pub m: i32,
    pub theta: f64,
    /// `values[σ + 2] = d^j_{−m,σ}(θ)` for σ ∈ −2..=2.
    pub values: [f64; 5],
}

impl WignerTriple {
    pub fn new(j: u32, m: i32, theta: f64) -> Result<Self> {
        if m.unsigned_abs() > j {
            return Err(Error::Argument(format!("|m| = {} exceeds j = {j}", m.abs())));
        }
        if j > JMAX {
            return Err(Error::Argument(format!("j = {j} exceeds supported maximum {JMAX}")));
        }
        Ok(Self {
            j,
            m,
            theta,
            values: std::array::from_fn(|k| slot_d(j, m, k as i32 - 2, theta)),
        })
    }

    /// Real θ-part of D_σ, σ ∈ −2..=2.
    pub fn d(&self, sigma: i32) -> f64 {
        self.values[(sigma + 2) as usize]
    }

    /// Full D_σ including the azimuthal phase e^{imφ}.
    pub fn with_phase(&self, sigma: i32, phi: f64) -> Complex64 {
        Complex64::from_polar(self.d(sigma), f64::from(self.m) * phi)
    }

    /// `a = √((j−1)(j+2))`, the coupling to the |σ| = 2 functions.
    pub fn a(&self) -> f64 {
        let j = f64::from(self.j);
        ((j - 1.0) * (j + 2.0)).max(0.0).sqrt()
    }

    /// `√(j(j+1))`.
    pub fn casimir_root(&self) -> f64 {
        let j = f64::from(self.j);
        (j * (j + 1.0)).sqrt()
    }
}

/// `ν = √(j(j+1)/2)`.
pub fn nu(j: u32) -> f64 {
    let j = f64::from(j);
    (0.5 * j * (j + 1.0)).sqrt()
}

/// Absolute residuals of the first-order recurrences, with ∂_θ replaced
/// by a 5-point finite difference of the d-functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceResiduals {
    /// ∂_θ and (−m ± cosθ)/sinθ relations for D_{−1}, D_0, D_{+1}, in that
    /// order (derivative relation first in each pair).
    pub ladder: [f64; 6],
    /// `((−m+cosθ)/sinθ + ∂_θ) D_{−1} + √(j(j+1)) D_0` and
    /// `((m+cosθ)/sinθ + ∂_θ) D_{+1} − √(j(j+1)) D_0`.
    pub divergence: [f64; 2],
}

impl RecurrenceResiduals {
    pub fn max(&self) -> f64 {
        self.ladder
            .iter()
            .chain(self.divergence.iter())
            .copied()
            .fold(0.0, f64::max)
    }
}

pub fn recurrence_residuals(j: u32, m: i32, theta: f64) -> Result<RecurrenceResiduals> {
    recurrence_residuals_with_row_sign(j, m, theta, ROW_SIGN)
}

/// Same as [`recurrence_residuals`] with an explicit row-index sign, so the
/// alternative convention `d^j_{m,σ}` can be tested and rejected.
pub fn recurrence_residuals_with_row_sign(
    j: u32,
    m: i32,
    theta: f64,
    row_sign: i32,
) -> Result<RecurrenceResiduals> {
    if j == 0 || j > JMAX {
        return Err(Error::Argument(format!("recurrences need 1 ≤ j ≤ {JMAX}, got {j}")));
    }
    if m.unsigned_abs() > j {
        return Err(Error::Argument(format!("|m| = {} exceeds j = {j}", m.abs())));
    }
    crate::error::check_open_angle("theta", theta)?;
    let d = |sigma: i32, th: f64| wigner_d(j, row_sign * m, sigma, th);
    let dd = |sigma: i32| five_point(|th| d(sigma, th), theta, FIVE_POINT_STEP);
    let jf = f64::from(j);
    let a = ((jf - 1.0) * (jf + 2.0)).sqrt();
    let l = (jf * (jf + 1.0)).sqrt();
    let mf = f64::from(m);
    let (st, ct) = theta.sin_cos();
    let v = |sigma: i32| d(sigma, theta);

    let ladder = [
        dd(-1) - 0.5 * (a * v(-2) - l * v(0)),
        (-mf + ct) / st * v(-1) - 0.5 * (-a * v(-2) - l * v(0)),
        dd(0) - 0.5 * l * (v(-1) - v(1)),
        -mf / st * v(0) - 0.5 * l * (-v(-1) - v(1)),
        dd(1) - 0.5 * (l * v(0) - a * v(2)),
        (-mf - ct) / st * v(1) - 0.5 * (-l * v(0) - a * v(2)),
    ];
    let divergence = [
        (-mf + ct) / st * v(-1) + dd(-1) + l * v(0),
        (mf + ct) / st * v(1) + dd(1) - l * v(0),
    ];
    Ok(RecurrenceResiduals {
        ladder: ladder.map(f64::abs),
        divergence: divergence.map(f64::abs),
    })
}

/// θ-parts `d^j_{−m,σ_k}(θ)` for each of the ten component slots.
pub fn slot_functions(j: u32, m: i32, theta: f64) -> [f64; 10] {
    std::array::from_fn(|k| slot_d(j, m, SLOT_HELICITY[k], theta))
}

/// Closed form of Σ acting on the ansatz `(f_1 D_0, f_2 D_{−1}, …, f_10 D_{+1})`:
///
/// ```text
/// Σ Φ = ν · ( −(f5+f7) D0,  i f9 D−1,  (−i f8 + i f10) D0,  −i f9 D+1,
///             f1 D−1,  0,  f1 D+1,  −i f3 D−1,  (i f2 − i f4) D0,  i f3 D+1 )
/// ```
///
/// with ν = √(j(j+1)/2) and the azimuthal phase factored out. `f` holds
/// the radial amplitudes at one χ.
pub fn sigma_apply(f: &Vector10, j: u32, m: i32, theta: f64) -> Result<Vector10> {
    if j == 0 {
        let helicity_slots = (0..10).filter(|&k| SLOT_HELICITY[k] != 0);
        if helicity_slots.into_iter().any(|k| f[k] != c64(0.0, 0.0)) {
            return Err(Error::Constraint(
                "j = 0 admits no σ = ±1 harmonics; those slots must vanish".into(),
            ));
        }
        return Ok(zero_vector());
    }
    let w = WignerTriple::new(j, m, theta)?;
    let (dm, d0, dp) = (w.d(-1), w.d(0), w.d(1));
    let i = c64(0.0, 1.0);
    let out = [
        -(f[4] + f[6]) * d0,
        i * f[8] * dm,
        (-i * f[7] + i * f[9]) * d0,
        -i * f[8] * dp,
        f[0] * dm,
        c64(0.0, 0.0),
        f[0] * dp,
        -i * f[2] * dm,
        (i * f[1] - i * f[3]) * d0,
        i * f[2] * dp,
    ];
    Ok(out.map(|v| v * nu(j)))
}

/// Direct action of `Σ = iβ¹∂_θ + β²(i∂_φ + iJ¹² cosθ)/sinθ` on a field
/// with azimuthal dependence e^{imφ}: ∂_φ is exact, ∂_θ is a 5-point finite
/// difference of `field`.
pub fn sigma_operator<F>(field: F, m: i32, theta: f64) -> Result<Vector10>
where
    F: Fn(f64) -> Vector10,
{
    crate::error::check_open_angle("theta", theta)?;
    let b1 = beta(1)?;
    let b2 = beta(2)?;
    let ij12 = spin_generator(1, 2)? * c64(0.0, 1.0);
    let phi_val = field(theta);
    let d_theta = five_point_array(&field, theta, FIVE_POINT_STEP);
    let first = b1.apply(&d_theta);
    let (st, ct) = theta.sin_cos();
    let rotated = ij12.apply(&phi_val);
    let inner: Vector10 =
        std::array::from_fn(|k| (phi_val[k] * (-f64::from(m)) + rotated[k] * ct) / st);
    let second = b2.apply(&inner);
    Ok(std::array::from_fn(|k| c64(0.0, 1.0) * first[k] + second[k]))
}
