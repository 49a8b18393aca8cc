//! Cyclic-basis Duffin–Kemmer matrices for the 10-component massless
//! vector field.
//!
//! Component layout of the wavefunction Φ (0-based):
//!
//! | slots | content                          | helicity |
//! |-------|----------------------------------|----------|
//! | 0     | time component of the potential  | 0        |
//! | 1..=3 | spatial potential, cyclic        | −1, 0, +1 |
//! | 4..=6 | electric-type field, cyclic      | −1, 0, +1 |
//! | 7..=9 | magnetic-type field, cyclic      | −1, 0, +1 |
//!
//! The spacetime signature is (+, −, −, −).

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::{c64, Complex64};

pub const DIM: usize = 10;

/// Minkowski metric diagonal, signature (+, −, −, −).
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Shared 1/√2 so that fixture comparisons are exact at the f64 level.
pub const INV_SQRT2: f64 = FRAC_1_SQRT_2;

/// Helicity σ carried by each component slot in the separated ansatz.
pub const SLOT_HELICITY: [i32; DIM] = [0, -1, 0, 1, -1, 0, 1, -1, 0, 1];

pub type Vector10 = [Complex64; DIM];

pub fn zero_vector() -> Vector10 {
    [Complex64::new(0.0, 0.0); DIM]
}

/// Dense 10×10 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix10 {
    entries: [[Complex64; DIM]; DIM],
}

impl Default for ComplexMatrix10 {
    fn default() -> Self {
        Self::zero()
    }
}

impl ComplexMatrix10 {
    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::new(0.0, 0.0); DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m.entries[i][i] = c64(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: [f64; DIM]) -> Self {
        let mut m = Self::zero();
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i][i] = c64(d, 0.0);
        }
        m
    }

    /// Builds a matrix from a sparse list of `(row, col, value)` entries.
    pub fn from_sparse(items: &[(usize, usize, Complex64)]) -> Self {
        let mut m = Self::zero();
        for &(r, c, v) in items {
            m.entries[r][c] = v;
        }
        m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[[Complex64; DIM]; DIM] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..DIM).map(|i| self.entries[i][i]).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                m.entries[j][i] = self.entries[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|e| *e *= s);
        m
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..DIM).all(|i| (0..DIM).all(|j| i == j || self.entries[i][j].norm() <= tol))
    }

    pub fn diagonal(&self) -> [Complex64; DIM] {
        std::array::from_fn(|i| self.entries[i][i])
    }

    pub fn apply(&self, v: &Vector10) -> Vector10 {
        std::array::from_fn(|i| {
            self.entries[i]
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a * b)
                .sum()
        })
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }
}

impl Index<(usize, usize)> for ComplexMatrix10 {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r][c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix10 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r][c]
    }
}

impl Add for ComplexMatrix10 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..DIM {
            for j in 0..DIM {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix10 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..DIM {
            for j in 0..DIM {
                self.entries[i][j] -= rhs.entries[i][j];
            }
        }
        self
    }
}

impl Neg for ComplexMatrix10 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(c64(-1.0, 0.0))
    }
}

impl Mul for ComplexMatrix10 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self.entries[i][k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..DIM {
                    m.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        m
    }
}

impl Mul<Complex64> for ComplexMatrix10 {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for ComplexMatrix10 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(c64(rhs, 0.0))
    }
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn check_index(a: usize) -> Result<()> {
    if a < 4 {
        Ok(())
    } else {
        Err(Error::Argument(format!("tetrad index {a} not in 0..=3")))
    }
}

fn beta1_entries() -> Vec<(usize, usize, Complex64)> {
    let s = INV_SQRT2;
    vec![
        (0, 4, -I * s),
        (0, 6, I * s),
        (1, 8, ONE * s),
        (2, 7, ONE * s),
        (2, 9, ONE * s),
        (3, 8, ONE * s),
        (4, 0, -I * s),
        (6, 0, I * s),
        (7, 2, -ONE * s),
        (8, 1, -ONE * s),
        (8, 3, -ONE * s),
        (9, 2, -ONE * s),
    ]
}

fn beta2_entries() -> Vec<(usize, usize, Complex64)> {
    let s = INV_SQRT2;
    vec![
        (0, 4, ONE * s),
        (0, 6, ONE * s),
        (1, 8, -I * s),
        (2, 7, I * s),
        (2, 9, -I * s),
        (3, 8, I * s),
        (4, 0, -ONE * s),
        (6, 0, -ONE * s),
        (7, 2, I * s),
        (8, 1, -I * s),
        (8, 3, I * s),
        (9, 2, -I * s),
    ]
}

/// Duffin–Kemmer matrix βᵃ in the cyclic basis, `a ∈ 0..=3`.
///
/// β¹ and β² are taken entry for entry from the standard tabulation. β⁰
/// and β³ differ from that tabulation in four entries, each of which breaks
/// the algebra `βᵃβᵇβᶜ + βᶜβᵇβᵃ = ηᵃᵇβᶜ + ηᶜᵇβᵃ` (see
/// [`TRANSCRIPTION_ADJUSTMENTS`]); with them repaired the algebra holds to
/// rounding and the operator reproduces the separated radial equations.
pub fn beta(a: usize) -> Result<ComplexMatrix10> {
    check_index(a)?;
    let m = match a {
        0 => ComplexMatrix10::from_sparse(&[
            (1, 4, I),
            (2, 5, I),
            (3, 6, I),
            (4, 1, -I),
            (5, 2, -I),
            (6, 3, -I),
        ]),
        1 => ComplexMatrix10::from_sparse(&beta1_entries()),
        2 => ComplexMatrix10::from_sparse(&beta2_entries()),
        _ => ComplexMatrix10::from_sparse(&[
            (0, 5, I),
            (1, 7, ONE),
            (3, 9, -ONE),
            (5, 0, I),
            (7, 1, -ONE),
            (9, 3, ONE),
        ]),
    };
    Ok(m)
}

/// βᵃ exactly as tabulated, misplaced entries included. Kept so the
/// repair recorded in [`TRANSCRIPTION_ADJUSTMENTS`] stays auditable.
pub fn beta_raw_transcription(a: usize) -> Result<ComplexMatrix10> {
    check_index(a)?;
    let m = match a {
        0 => ComplexMatrix10::from_sparse(&[
            (1, 4, I),
            (2, 5, I),
            (3, 6, I),
            (4, 1, -I),
            (5, 2, -I),
            (6, 0, I),
            (6, 3, -I),
        ]),
        1 => ComplexMatrix10::from_sparse(&beta1_entries()),
        2 => ComplexMatrix10::from_sparse(&beta2_entries()),
        _ => ComplexMatrix10::from_sparse(&[
            (0, 5, I),
            (1, 7, ONE),
            (3, 9, -ONE),
            (6, 0, I),
            (7, 1, -ONE),
            (9, 2, ONE),
            (9, 5, I),
        ]),
    };
    Ok(m)
}

/// One entry that differs between [`beta_raw_transcription`] and [`beta`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryAdjustment {
    pub matrix: usize,
    pub row: usize,
    pub col: usize,
    pub raw: Complex64,
    pub corrected: Complex64,
}

pub const TRANSCRIPTION_ADJUSTMENTS: [EntryAdjustment; 6] = [
    // stray entry in the β⁰ row of the ε₊₁ slot
    EntryAdjustment { matrix: 0, row: 6, col: 0, raw: I, corrected: Complex64::new(0.0, 0.0) },
    // β³ row 6 belongs to row 5 (∂_χ of the time component feeds ε₀)
    EntryAdjustment { matrix: 3, row: 6, col: 0, raw: I, corrected: Complex64::new(0.0, 0.0) },
    EntryAdjustment { matrix: 3, row: 5, col: 0, raw: Complex64::new(0.0, 0.0), corrected: I },
    // β³ row 9 couples to the A₊₁ slot, not A₀
    EntryAdjustment { matrix: 3, row: 9, col: 2, raw: ONE, corrected: Complex64::new(0.0, 0.0) },
    EntryAdjustment { matrix: 3, row: 9, col: 3, raw: Complex64::new(0.0, 0.0), corrected: ONE },
    EntryAdjustment { matrix: 3, row: 9, col: 5, raw: I, corrected: Complex64::new(0.0, 0.0) },
];

/// All four corrected β-matrices.
pub fn betas() -> [ComplexMatrix10; 4] {
    std::array::from_fn(|a| beta(a).expect("index in range"))
}

/// Spin generator Jᵃᵇ = βᵃβᵇ − βᵇβᵃ. Returns the zero matrix for `a == b`.
pub fn spin_generator(a: usize, b: usize) -> Result<ComplexMatrix10> {
    Ok(beta(a)?.commutator(&beta(b)?))
}

/// P₆: identity on the six field-strength slots, zero on the potential.
pub fn projector_p6() -> ComplexMatrix10 {
    ComplexMatrix10::from_diagonal([0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0])
}

/// Residual of `βᵃβᵇβᶜ + βᶜβᵇβᵃ − ηᵃᵇβᶜ − ηᶜᵇβᵃ` for one index triple.
pub fn trilinear_residual_triple(set: &[ComplexMatrix10; 4], a: usize, b: usize, c: usize) -> f64 {
    let lhs = set[a] * set[b] * set[c] + set[c] * set[b] * set[a];
    let mut rhs = ComplexMatrix10::zero();
    if a == b {
        rhs = rhs + set[c] * ETA[a];
    }
    if c == b {
        rhs = rhs + set[a] * ETA[c];
    }
    lhs.max_abs_diff(&rhs)
}

/// Maximum trilinear residual over all 64 index triples of `set`.
pub fn trilinear_residual(set: &[ComplexMatrix10; 4]) -> f64 {
    let mut worst = 0.0_f64;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                worst = worst.max(trilinear_residual_triple(set, a, b, c));
            }
        }
    }
    worst
}

/// Trilinear residual of the corrected matrices returned by [`beta`].
pub fn dkp_trilinear_residual() -> f64 {
    trilinear_residual(&betas())
}

/// Spatial-inversion operator in the cyclic basis: a signed permutation
/// exchanging the σ = −1 and σ = +1 slots of each triplet, with an extra
/// sign on the magnetic-type triplet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityMatrix {
    /// Row `i` holds a single entry `sign` in column `col`.
    rows: [(usize, f64); DIM],
}

/// Parity operator matrix.
pub fn parity_matrix() -> ParityMatrix {
    ParityMatrix {
        rows: [
            (0, 1.0),
            (3, 1.0),
            (2, 1.0),
            (1, 1.0),
            (6, 1.0),
            (5, 1.0),
            (4, 1.0),
            (9, -1.0),
            (8, -1.0),
            (7, -1.0),
        ],
    }
}

impl ParityMatrix {
    pub fn to_matrix(&self) -> ComplexMatrix10 {
        let mut m = ComplexMatrix10::zero();
        for (i, &(col, sign)) in self.rows.iter().enumerate() {
            m[(i, col)] = c64(sign, 0.0);
        }
        m
    }

    pub fn apply(&self, v: &Vector10) -> Vector10 {
        std::array::from_fn(|i| {
            let (col, sign) = self.rows[i];
            v[col] * sign
        })
    }

    /// Projector `(1 + λP̂)/2` onto the eigenspace with matrix eigenvalue `λ = ±1`.
    pub fn eigenprojector(&self, eigenvalue: i32) -> Result<ComplexMatrix10> {
        if eigenvalue.abs() != 1 {
            return Err(Error::Argument(format!(
                "parity eigenvalue must be ±1, got {eigenvalue}"
            )));
        }
        Ok((ComplexMatrix10::identity() + self.to_matrix() * f64::from(eigenvalue)) * 0.5)
    }
}
