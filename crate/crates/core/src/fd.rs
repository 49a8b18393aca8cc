//! Finite-difference stencils shared by the numerical oracles.

use std::ops::{Add, Mul, Sub};

/// Step used by the geometric oracles.
pub const GEOMETRY_STEP: f64 = 1e-5;

/// Step used by the angular and full-equation oracles (5-point stencil).
pub const FIVE_POINT_STEP: f64 = 1e-4;

/// Second-order central difference `(f(x+h) − f(x−h)) / 2h`.
pub fn central<T, F>(f: F, x: f64, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: Sub<Output = T> + Mul<f64, Output = T>,
{
    (f(x + h) - f(x - h)) * (0.5 / h)
}

/// Central difference with one Richardson step: `(4·D(h/2) − D(h)) / 3`,
/// truncation O(h⁴).
pub fn central_richardson<T, F>(f: F, x: f64, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let coarse = central(&f, x, h);
    let fine = central(&f, x, 0.5 * h);
    fine * (4.0 / 3.0) - coarse * (1.0 / 3.0)
}

/// Fourth-order 5-point first-derivative stencil.
pub fn five_point<T, F>(f: F, x: f64, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let a = f(x - 2.0 * h) - f(x + 2.0 * h);
    let b = f(x + h) - f(x - h);
    (a + b * 8.0) * (1.0 / (12.0 * h))
}

/// [`five_point`] for fixed-size arrays of complex values.
pub fn five_point_array<const N: usize, F>(f: F, x: f64, h: f64) -> [crate::Complex64; N]
where
    F: Fn(f64) -> [crate::Complex64; N],
{
    let (m2, m1, p1, p2) = (f(x - 2.0 * h), f(x - h), f(x + h), f(x + 2.0 * h));
    std::array::from_fn(|k| (m2[k] - p2[k] + (p1[k] - m1[k]) * 8.0) / (12.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_on_polynomials() {
        let cubic = |x: f64| x * x * x - 2.0 * x;
        let exact = 3.0 * 1.3 * 1.3 - 2.0;
        assert!((central(cubic, 1.3, 1e-5) - exact).abs() < 1e-8);
        assert!((central_richardson(cubic, 1.3, 1e-3) - exact).abs() < 1e-11);
        assert!((five_point(cubic, 1.3, 1e-3) - exact).abs() < 1e-11);
    }

    #[test]
    fn five_point_on_sine() {
        let d = five_point(f64::sin, 0.7, FIVE_POINT_STEP);
        assert!((d - 0.7_f64.cos()).abs() < 1e-11);
    }
}
