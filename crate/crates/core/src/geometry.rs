//! Static S³ universe in spherical coordinates,
//! `dS² = dt² − dχ² − sin²χ (dθ² + sin²θ dφ²)` at unit curvature radius.
//!
//! Coordinate indices are ordered (t, χ, θ, φ) = (0, 1, 2, 3). Tetrad
//! (local) indices are (0, 1, 2, 3) with e_(3) radial, e_(1) along θ and
//! e_(2) along φ.

use crate::dkp_algebra::{beta, spin_generator, ComplexMatrix10, ETA};
use crate::error::{check_open_angle, Result};
use crate::{c64, Error};

pub type Tensor3 = [[[f64; 4]; 4]; 4];

/// Diagonal of g_{αβ} at (χ, θ).
pub fn metric_diag(chi: f64, theta: f64) -> [f64; 4] {
    let s = chi.sin();
    let st = theta.sin();
    [1.0, -1.0, -s * s, -s * s * st * st]
}

/// Tetrad vectors: `vectors[a][α] = e^α_(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrad {
    pub vectors: [[f64; 4]; 4],
}

impl Tetrad {
    /// Covariant components `e_(a)α = g_{αβ} e^β_(a)`.
    pub fn lowered(&self, chi: f64, theta: f64) -> [[f64; 4]; 4] {
        let g = metric_diag(chi, theta);
        std::array::from_fn(|a| std::array::from_fn(|al| g[al] * self.vectors[a][al]))
    }

    /// max |g_{αβ} e^α_(a) e^β_(b) − η_ab|.
    pub fn orthonormality_residual(&self, chi: f64, theta: f64) -> f64 {
        orthonormality_residual(&self.vectors, &metric_diag(chi, theta))
    }
}

pub(crate) fn orthonormality_residual(vectors: &[[f64; 4]; 4], g: &[f64; 4]) -> f64 {
    let mut worst = 0.0_f64;
    for a in 0..4 {
        for b in 0..4 {
            let dot: f64 = (0..4).map(|al| g[al] * vectors[a][al] * vectors[b][al]).sum();
            let eta = if a == b { ETA[a] } else { 0.0 };
            worst = worst.max((dot - eta).abs());
        }
    }
    worst
}

fn check_point(chi: f64, theta: f64) -> Result<()> {
    check_open_angle("chi", chi)?;
    check_open_angle("theta", theta)
}

/// Diagonal tetrad of the spherical chart.
///
/// The φ-leg is `e_(2) = (0, 0, 0, 1/(sinχ sinθ))`; a unit time component
/// on that leg, which appears in some tabulations, is not orthonormal.
pub fn tetrad_at(chi: f64, theta: f64) -> Result<Tetrad> {
    check_point(chi, theta)?;
    let s = chi.sin();
    Ok(Tetrad {
        vectors: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0 / s, 0.0],
            [0.0, 0.0, 0.0, 1.0 / (s * theta.sin())],
            [0.0, 1.0, 0.0, 0.0],
        ],
    })
}

/// Levi-Civita connection Γ^λ_{μν}, stored dense as `gamma[λ][μ][ν]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel {
    pub dense: Tensor3,
}

impl Christoffel {
    /// Nonzero symbols `(λ, μ, ν, value)` with μ ≤ ν.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for l in 0..4 {
            for m in 0..4 {
                for n in m..4 {
                    let v = self.dense[l][m][n];
                    if v != 0.0 {
                        out.push((l, m, n, v));
                    }
                }
            }
        }
        out
    }

    pub fn get(&self, upper: usize, lower1: usize, lower2: usize) -> f64 {
        self.dense[upper][lower1][lower2]
    }
}

const CHI: usize = 1;
const THETA: usize = 2;
const PHI: usize = 3;

/// Closed-form Christoffel symbols of the S³ chart.
pub fn christoffel_at(chi: f64, theta: f64) -> Result<Christoffel> {
    check_point(chi, theta)?;
    let (s, c) = chi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let mut g = [[[0.0; 4]; 4]; 4];
    let mut set = |l: usize, m: usize, n: usize, v: f64| {
        g[l][m][n] = v;
        g[l][n][m] = v;
    };
    set(CHI, PHI, PHI, -s * c * st * st);
    set(CHI, THETA, THETA, -s * c);
    set(THETA, PHI, PHI, -st * ct);
    set(THETA, THETA, CHI, c / s);
    set(PHI, PHI, THETA, ct / st);
    set(PHI, CHI, PHI, c / s);
    Ok(Christoffel { dense: g })
}

/// Ricci rotation coefficients γ_{abc} = e_(b)β;α e^β_(a) e^α_(c),
/// antisymmetric in (a, b). Stored as `gamma[a][b][c]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicciRotation {
    pub gamma: Tensor3,
}

impl RicciRotation {
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.gamma[a][b][c]
    }

    /// Returns the `c`-slice as a 4×4 matrix indexed `[a][b]`.
    pub fn slice(&self, c: usize) -> [[f64; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.gamma[a][b][c]))
    }

    /// max |γ_{abc} + γ_{bac}|.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    worst = worst.max((self.gamma[a][b][c] + self.gamma[b][a][c]).abs());
                }
            }
        }
        worst
    }
}

/// Closed-form rotation coefficients: only the c = 1 and c = 2 slices are
/// nonzero.
pub fn ricci_rotation_at(chi: f64, theta: f64) -> Result<RicciRotation> {
    check_point(chi, theta)?;
    let cot_chi = chi.cos() / chi.sin();
    let cot_theta_over_sin = theta.cos() / theta.sin() / chi.sin();
    let mut g = [[[0.0; 4]; 4]; 4];
    let mut pair = |a: usize, b: usize, c: usize, v: f64| {
        g[a][b][c] = v;
        g[b][a][c] = -v;
    };
    pair(1, 3, 1, -cot_chi);
    pair(1, 2, 2, cot_theta_over_sin);
    pair(2, 3, 2, -cot_chi);
    Ok(RicciRotation { gamma: g })
}

/// All geometric data at one spatial point.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryPoint {
    pub chi: f64,
    pub theta: f64,
    pub metric_diag: [f64; 4],
    pub tetrad: Tetrad,
    pub christoffel: Christoffel,
    pub gamma: RicciRotation,
}

pub fn geometry_at(chi: f64, theta: f64) -> Result<GeometryPoint> {
    Ok(GeometryPoint {
        chi,
        theta,
        metric_diag: metric_diag(chi, theta),
        tetrad: tetrad_at(chi, theta)?,
        christoffel: christoffel_at(chi, theta)?,
        gamma: ricci_rotation_at(chi, theta)?,
    })
}

/// Radial connection piece of the DKP operator,
/// `i ctgχ (β¹J³¹ + β²J³²)`.
///
/// The remaining part of the spin connection, `iβ²J¹² ctgθ / sinχ`, is
/// carried by the angular operator (see [`crate::angular::sigma_operator`]).
pub fn connection_term(chi: f64) -> Result<ComplexMatrix10> {
    check_open_angle("chi", chi)?;
    let b1 = beta(1)?;
    let b2 = beta(2)?;
    let sum = b1 * spin_generator(3, 1)? + b2 * spin_generator(3, 2)?;
    Ok(sum * c64(0.0, chi.cos() / chi.sin()))
}

/// General tetrad assembly `i βᶜ · ½ Jᵃᵇ γ_{abc}` from the rotation
/// coefficients at (χ, θ). Includes both the radial and the azimuthal
/// pieces of the connection.
pub fn connection_from_rotation(chi: f64, theta: f64) -> Result<ComplexMatrix10> {
    connection_from_gamma(&ricci_rotation_at(chi, theta)?)
}

/// `i βᶜ · ½ Jᵃᵇ γ_{abc}` for arbitrary rotation coefficients.
pub fn connection_from_gamma(gamma: &RicciRotation) -> Result<ComplexMatrix10> {
    let mut total = ComplexMatrix10::zero();
    for c in 0..4 {
        let mut half_j = ComplexMatrix10::zero();
        for a in 0..4 {
            for b in 0..4 {
                let g = gamma.get(a, b, c);
                if g != 0.0 {
                    half_j = half_j + spin_generator(a, b)? * (0.5 * g);
                }
            }
        }
        total = total + beta(c)? * half_j;
    }
    Ok(total * c64(0.0, 1.0))
}

/// Azimuthal connection piece `β² (iJ¹²) ctgθ / sinχ`.
pub fn azimuthal_connection(chi: f64, theta: f64) -> Result<ComplexMatrix10> {
    check_point(chi, theta)?;
    let ij12 = spin_generator(1, 2)? * c64(0.0, 1.0);
    Ok(beta(2)? * ij12 * (theta.cos() / theta.sin() / chi.sin()))
}

/// Covariant divergence `e^(a)α_;α` of the tetrad leg with raised local
/// index.
pub fn tetrad_divergence(a: usize, chi: f64, theta: f64) -> Result<f64> {
    check_point(chi, theta)?;
    match a {
        0 | 2 => Ok(0.0),
        1 => Ok(-theta.cos() / (theta.sin() * chi.sin())),
        3 => Ok(-2.0 * chi.cos() / chi.sin()),
        _ => Err(Error::Argument(format!("tetrad index {a} not in 0..=3"))),
    }
}
