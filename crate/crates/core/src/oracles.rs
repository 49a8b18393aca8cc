//! Independent numerical oracles for the closed-form geometry and angular
//! data: everything here is rebuilt from the metric (or the D-functions)
//! by finite differences and quadrature, never from the closed forms it is
//! compared against.

use crate::angular::wigner_d;
use crate::dkp_algebra::ETA;
use crate::error::{check_open_angle, Error, Result};
use crate::fd::{central_richardson, GEOMETRY_STEP};
use crate::geometry::{christoffel_at, metric_diag, tetrad_at, Christoffel, RicciRotation, Tensor3};

fn check_window(chi: f64, theta: f64, h: f64) -> Result<()> {
    check_open_angle("chi", chi)?;
    check_open_angle("theta", theta)?;
    let pi = std::f64::consts::PI;
    for (name, v) in [("chi", chi), ("theta", theta)] {
        if v - h <= 0.0 || v + h >= pi {
            return Err(Error::Numerical(format!("{name} = {v} too close to a pole for step {h}")));
        }
    }
    Ok(())
}

/// `∂_α f(χ, θ)` for α in coordinate order; t and φ derivatives vanish on
/// the static, axially symmetric chart.
fn gradient<F: Fn(f64, f64) -> f64>(f: F, chi: f64, theta: f64) -> [f64; 4] {
    let h = GEOMETRY_STEP;
    [
        0.0,
        central_richardson(|x| f(x, theta), chi, h),
        central_richardson(|y| f(chi, y), theta, h),
        0.0,
    ]
}

/// `dg[α][β] = ∂_α g_ββ` of the diagonal metric.
pub fn fd_metric_derivative(chi: f64, theta: f64) -> Result<[[f64; 4]; 4]> {
    check_window(chi, theta, GEOMETRY_STEP)?;
    let mut dg = [[0.0; 4]; 4];
    for b in 0..4 {
        let grad = gradient(|x, y| metric_diag(x, y)[b], chi, theta);
        for a in 0..4 {
            dg[a][b] = grad[a];
        }
    }
    Ok(dg)
}

/// Γ^λ_{μν} = ½ g^{λλ}(∂_μ g_{λν} + ∂_ν g_{λμ} − ∂_λ g_{μν}) from
/// differentiated metric components.
pub fn fd_christoffel(chi: f64, theta: f64) -> Result<Christoffel> {
    let dg = fd_metric_derivative(chi, theta)?;
    let g = metric_diag(chi, theta);
    let mut out: Tensor3 = [[[0.0; 4]; 4]; 4];
    for l in 0..4 {
        for m in 0..4 {
            for n in 0..4 {
                let mut sum = 0.0;
                if l == n {
                    sum += dg[m][l];
                }
                if l == m {
                    sum += dg[n][l];
                }
                if m == n {
                    sum -= dg[l][m];
                }
                out[l][m][n] = 0.5 * sum / g[l];
            }
        }
    }
    Ok(Christoffel { dense: out })
}

/// γ_{abc} = e_(b)β;α e^β_(a) e^α_(c) with the covariant derivative built
/// from differentiated tetrad legs and [`fd_christoffel`].
pub fn fd_ricci_rotation(chi: f64, theta: f64) -> Result<RicciRotation> {
    check_window(chi, theta, GEOMETRY_STEP)?;
    let gam = fd_christoffel(chi, theta)?;
    let tetrad = tetrad_at(chi, theta)?;
    let lowered = tetrad.lowered(chi, theta);
    let lowered_at = |b: usize, be: usize| {
        move |x: f64, y: f64| tetrad_at(x, y).map(|t| t.lowered(x, y)[b][be]).unwrap_or(f64::NAN)
    };
    // cov[b][β][α] = ∂_α e_(b)β − Γ^λ_{αβ} e_(b)λ
    let mut cov = [[[0.0; 4]; 4]; 4];
    for b in 0..4 {
        for be in 0..4 {
            let grad = gradient(lowered_at(b, be), chi, theta);
            for al in 0..4 {
                let conn: f64 = (0..4).map(|l| gam.dense[l][al][be] * lowered[b][l]).sum();
                cov[b][be][al] = grad[al] - conn;
            }
        }
    }
    let e = &tetrad.vectors;
    let mut out: Tensor3 = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let mut sum = 0.0;
                for be in 0..4 {
                    for al in 0..4 {
                        sum += cov[b][be][al] * e[a][be] * e[c][al];
                    }
                }
                out[a][b][c] = sum;
            }
        }
    }
    Ok(RicciRotation { gamma: out })
}

/// `(1/√−g) ∂_α(√−g e^(a)α)` with `e^(a)α = η^{aa} e^α_(a)`.
pub fn fd_tetrad_divergence(a: usize, chi: f64, theta: f64) -> Result<f64> {
    if a > 3 {
        return Err(Error::Argument(format!("tetrad index {a} not in 0..=3")));
    }
    check_window(chi, theta, GEOMETRY_STEP)?;
    let density = |x: f64, y: f64| {
        let g = metric_diag(x, y);
        (-(g[0] * g[1] * g[2] * g[3])).sqrt()
    };
    let weighted = |al: usize| {
        move |x: f64, y: f64| {
            let leg = tetrad_at(x, y).map(|t| t.vectors[a][al]).unwrap_or(f64::NAN);
            density(x, y) * ETA[a] * leg
        }
    };
    let mut total = 0.0;
    for al in 0..4 {
        total += gradient(weighted(al), chi, theta)[al];
    }
    Ok(total / density(chi, theta))
}

/// max over (α, β, γ) of |∇_α g_{βγ}| using differentiated metric and the
/// closed-form connection.
pub fn metric_compatibility_residual(chi: f64, theta: f64) -> Result<f64> {
    let dg = fd_metric_derivative(chi, theta)?;
    let gam = christoffel_at(chi, theta)?;
    let g = metric_diag(chi, theta);
    let mut worst = 0.0_f64;
    for al in 0..4 {
        for be in 0..4 {
            for ga in 0..4 {
                let partial = if be == ga { dg[al][be] } else { 0.0 };
                let r = partial - gam.dense[ga][al][be] * g[ga] - gam.dense[be][al][ga] * g[be];
                worst = worst.max(r.abs());
            }
        }
    }
    Ok(worst)
}

pub fn max_abs_diff3(a: &Tensor3, b: &Tensor3) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                worst = worst.max((a[i][j][k] - b[i][j][k]).abs());
            }
        }
    }
    worst
}

/// Composite Simpson rule on `[lo, hi]` with `intervals` (rounded up to
/// even) subintervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, intervals: usize) -> f64 {
    let n = (intervals.max(2) + 1) & !1;
    let h = (hi - lo) / n as f64;
    let mut sum = f(lo) + f(hi);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(lo + h * k as f64);
    }
    sum * h / 3.0
}

/// `∫₀^π d^{j1}_{m,σ} d^{j2}_{m,σ} sinθ dθ`, expected `δ_{j1 j2}·2/(2j1+1)`.
pub fn d_overlap(j1: u32, j2: u32, m: i32, sigma: i32, intervals: usize) -> f64 {
    simpson(
        |t| wigner_d(j1, m, sigma, t) * wigner_d(j2, m, sigma, t) * t.sin(),
        0.0,
        std::f64::consts::PI,
        intervals,
    )
}

/// Worst deviation from orthogonality over all j1, j2 ≤ `jmax` and
/// admissible (m, σ).
pub fn orthogonality_residual(jmax: u32, intervals: usize) -> f64 {
    let mut worst = 0.0_f64;
    let jm = jmax as i32;
    for m in -jm..=jm {
        for sigma in -jm..=jm {
            let lo = m.unsigned_abs().max(sigma.unsigned_abs());
            for j1 in lo..=jmax {
                for j2 in lo..=jmax {
                    let expected = if j1 == j2 { 2.0 / (2.0 * f64::from(j1) + 1.0) } else { 0.0 };
                    worst = worst.max((d_overlap(j1, j2, m, sigma, intervals) - expected).abs());
                }
            }
        }
    }
    worst
}
