//! Terminating Gauss hypergeometric series and the regular radial profile
//! `f(χ) = z^{j+1} (1−z)^{−ω/2} F(−n, j+1; 2j+2; z)` with `z = 1 − e^{−2iχ}`.
//!
//! Since `1 − z = e^{−2iχ}` and `z = 2i sinχ e^{−iχ}`, the prefactor is
//! evaluated as `(2i)^{j+1} sin^{j+1}χ · e^{inχ}` (ω = n + 1 + j), which has
//! no branch cut to choose.

use crate::error::{check_open_angle, Error, Result};
use crate::radial::z_of_chi;
use crate::{c64, Complex64};

/// `₂F₁(−n, β; γ; z)` as an explicit polynomial of degree n.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialHyp {
    pub n: u32,
    pub beta_param: f64,
    pub gamma_param: f64,
    /// `coefficients[k]` multiplies `z^k`; built from
    /// `c_{k+1}/c_k = (−n+k)(β+k)/((γ+k)(1+k))`, `c_0 = 1`.
    pub coefficients: Vec<f64>,
}

impl PolynomialHyp {
    pub fn new(n: u32, beta_param: f64, gamma_param: f64) -> Result<Self> {
        if !gamma_param.is_finite() || (gamma_param <= 0.0 && gamma_param.fract() == 0.0) {
            return Err(Error::Argument(format!(
                "γ = {gamma_param} must not be a non-positive integer"
            )));
        }
        if !beta_param.is_finite() {
            return Err(Error::Argument(format!("β = {beta_param} is not finite")));
        }
        let alpha = -f64::from(n);
        let mut coefficients = Vec::with_capacity(n as usize + 1);
        let mut c = 1.0;
        coefficients.push(c);
        for k in 0..n {
            let k = f64::from(k);
            c *= (alpha + k) * (beta_param + k) / ((gamma_param + k) * (1.0 + k));
            coefficients.push(c);
        }
        Ok(Self { n, beta_param, gamma_param, coefficients })
    }

    pub fn alpha(&self) -> f64 {
        -f64::from(self.n)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(c64(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(c64(0.0, 0.0), |acc, (k, &c)| acc * z + c * k as f64)
    }

    pub fn second_derivative(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(2)
            .rev()
            .fold(c64(0.0, 0.0), |acc, (k, &c)| acc * z + c * (k * (k - 1)) as f64)
    }
}

/// `₂F₁(−n, β; γ; z)`, exact terminating sum of n+1 terms.
pub fn hyp2f1_poly(n: u32, beta_param: f64, gamma_param: f64, z: Complex64) -> Result<Complex64> {
    Ok(PolynomialHyp::new(n, beta_param, gamma_param)?.eval(z))
}

/// Regular-branch radial profile for quantum numbers (j, n).
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub j: u32,
    pub n: u32,
    poly: PolynomialHyp,
}

impl Profile {
    pub fn new(j: u32, n: u32) -> Result<Self> {
        if j == 0 {
            return Err(Error::Argument("radial profiles need j ≥ 1".into()));
        }
        let jf = f64::from(j);
        Ok(Self { j, n, poly: PolynomialHyp::new(n, jf + 1.0, 2.0 * jf + 2.0)? })
    }

    /// Dimensionless frequency ω = n + 1 + j.
    pub fn omega(&self) -> f64 {
        f64::from(self.n + 1 + self.j)
    }

    pub fn polynomial(&self) -> &PolynomialHyp {
        &self.poly
    }

    /// `(2i)^{j+1} e^{inχ}` and the derivatives of `sin^{j+1}χ e^{inχ}`
    /// stripped of that constant, as (value, first, second).
    fn prefactor(&self, chi: f64) -> [Complex64; 3] {
        let p = self.j as i32 + 1;
        let nf = f64::from(self.n);
        let (s, c) = chi.sin_cos();
        let phase = Complex64::from_polar(1.0, nf * chi);
        let lead = c64(0.0, 2.0).powi(p) * phase;
        let pf = f64::from(p);
        let sp = s.powi(p);
        let sp1 = s.powi(p - 1);
        let sp2 = if p >= 2 { s.powi(p - 2) } else { 0.0 };
        let i = c64(0.0, 1.0);
        let value = lead * sp;
        let first = lead * (c64(pf * sp1 * c, 0.0) + i * nf * sp);
        let second = lead
            * (c64(pf * ((pf - 1.0) * sp2 * c * c - sp), 0.0)
                + i * (2.0 * nf * pf * sp1 * c)
                - nf * nf * sp);
        [value, first, second]
    }

    pub fn value(&self, chi: f64) -> Complex64 {
        let [a, _, _] = self.prefactor(chi);
        a * self.poly.eval(z_of_chi(chi).z)
    }

    /// Analytic df/dχ.
    pub fn derivative(&self, chi: f64) -> Complex64 {
        let [a, da, _] = self.prefactor(chi);
        let z = z_of_chi(chi).z;
        let dz = c64(0.0, 2.0) * Complex64::from_polar(1.0, -2.0 * chi);
        da * self.poly.eval(z) + a * self.poly.derivative(z) * dz
    }

    /// Analytic d²f/dχ².
    pub fn second_derivative(&self, chi: f64) -> Complex64 {
        let [a, da, dda] = self.prefactor(chi);
        let z = z_of_chi(chi).z;
        let e = Complex64::from_polar(1.0, -2.0 * chi);
        let dz = c64(0.0, 2.0) * e;
        let ddz = e * 4.0;
        let (p, dp, ddp) = (
            self.poly.eval(z),
            self.poly.derivative(z),
            self.poly.second_derivative(z),
        );
        dda * p + da * dp * dz * 2.0 + a * (ddp * dz * dz + dp * ddz)
    }
}

/// `f(χ)` for the mode (j, n).
pub fn profile_f(j: u32, n: u32, chi: f64) -> Result<Complex64> {
    check_open_angle("chi", chi)?;
    Ok(Profile::new(j, n)?.value(chi))
}

/// Analytic `df/dχ` for the mode (j, n).
pub fn profile_derivative(j: u32, n: u32, chi: f64) -> Result<Complex64> {
    check_open_angle("chi", chi)?;
    Ok(Profile::new(j, n)?.derivative(chi))
}
