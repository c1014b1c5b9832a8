//! Small dense tensors: the 3x3 complex symmetric perturbation tensor and
//! the 4x4 real spacetime metric.

use num_complex::Complex64;

use crate::{Error, Result};

/// 3x3 complex symmetric tensor holding perturbation amplitudes A_jk or
/// field values psi_jk, in dimensionless metric-perturbation units.
///
/// Symmetry `entries[j][k] == entries[k][j]` holds exactly: constructors
/// either build from the upper triangle or reject asymmetric input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymTensor3 {
    entries: [[Complex64; 3]; 3],
}

impl SymTensor3 {
    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::ZERO; 3]; 3],
        }
    }

    /// Builds from the upper triangle (a11, a12, a13, a22, a23, a33);
    /// symmetry holds by construction.
    pub fn from_upper(
        a11: Complex64,
        a12: Complex64,
        a13: Complex64,
        a22: Complex64,
        a23: Complex64,
        a33: Complex64,
    ) -> Self {
        Self {
            entries: [[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]],
        }
    }

    /// Real upper-triangle variant.
    pub fn from_upper_real(a11: f64, a12: f64, a13: f64, a22: f64, a23: f64, a33: f64) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        Self::from_upper(c(a11), c(a12), c(a13), c(a22), c(a23), c(a33))
    }

    /// Real diagonal tensor.
    pub fn diag(d1: f64, d2: f64, d3: f64) -> Self {
        Self::from_upper_real(d1, 0.0, 0.0, d2, 0.0, d3)
    }

    /// Validates exact symmetry of a full matrix.
    pub fn from_entries(entries: [[Complex64; 3]; 3]) -> Result<Self> {
        for j in 0..3 {
            for k in (j + 1)..3 {
                if entries[j][k] != entries[k][j] {
                    return Err(Error::NotSymmetric { row: j, col: k });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j][k]
    }

    pub fn entries(&self) -> &[[Complex64; 3]; 3] {
        &self.entries
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.im == 0.0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.entries;
        for row in &mut out {
            for e in row {
                *e *= s;
            }
        }
        Self { entries: out }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.entries;
        for (row, orow) in out.iter_mut().zip(other.entries.iter()) {
            for (e, o) in row.iter_mut().zip(orow.iter()) {
                *e += o;
            }
        }
        Self { entries: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_re(-1.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise |self - other|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// Matrix-vector product with a real vector.
    pub fn mul_vec(&self, v: [f64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::ZERO; 3];
        for (j, o) in out.iter_mut().enumerate() {
            for k in 0..3 {
                *o += self.entries[j][k] * v[k];
            }
        }
        out
    }

    /// Re(T) v, the real part applied to a real vector.
    pub fn re_mul_vec(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (j, o) in out.iter_mut().enumerate() {
            for k in 0..3 {
                *o += self.entries[j][k].re * v[k];
            }
        }
        out
    }

    /// Im(T) v.
    pub fn im_mul_vec(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (j, o) in out.iter_mut().enumerate() {
            for k in 0..3 {
                *o += self.entries[j][k].im * v[k];
            }
        }
        out
    }
}

/// 4x4 real symmetric spacetime metric, signature (-,+,+,+).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric4 {
    entries: [[f64; 4]; 4],
}

impl Metric4 {
    /// Flat Minkowski metric diag(-1, 1, 1, 1).
    pub fn minkowski() -> Self {
        let mut entries = [[0.0; 4]; 4];
        entries[0][0] = -1.0;
        entries[1][1] = 1.0;
        entries[2][2] = 1.0;
        entries[3][3] = 1.0;
        Self { entries }
    }

    pub fn from_entries(entries: [[f64; 4]; 4]) -> Result<Self> {
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                if entries[mu][nu] != entries[nu][mu] {
                    return Err(Error::NotSymmetric { row: mu, col: nu });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.entries[mu][nu]
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub(crate) fn set(&mut self, mu: usize, nu: usize, value: f64) {
        self.entries[mu][nu] = value;
        self.entries[nu][mu] = value;
    }
}
