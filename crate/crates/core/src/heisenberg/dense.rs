use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::heisenberg::monomial::stride;
use crate::phasering::DimensionProfile;

/// Unitarity tolerance for dense matrices.
pub const UNITARITY_TOL: f64 = 1e-9;

/// Row-major `N x N` complex matrix, double precision.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    profile: DimensionProfile,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    pub(crate) fn from_raw(profile: &DimensionProfile, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), profile.hilbert_dim().pow(2));
        Self { profile: profile.clone(), data }
    }

    /// Wraps `data` after checking `U^dagger U = I` within [`UNITARITY_TOL`].
    pub fn new(profile: &DimensionProfile, data: Vec<Complex64>) -> Result<Self> {
        let n = profile.hilbert_dim();
        if data.len() != n * n {
            return Err(Error::ShapeMismatch { expected: n * n, got: data.len() });
        }
        let u = Self::from_raw(profile, data);
        let residual = u.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary(residual));
        }
        Ok(u)
    }

    pub fn identity(profile: &DimensionProfile) -> Self {
        let n = profile.hilbert_dim();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self::from_raw(profile, data)
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.profile.hilbert_dim()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim() + c]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        let n = self.dim();
        (0..n).map(|r| self.data[r * n + c]).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.profile.ensure_same(&other.profile)?;
        let n = self.dim();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (out, &b) in data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *out += a * b;
                }
            }
        }
        Ok(Self::from_raw(&self.profile, data))
    }

    /// Conjugate transpose, which is the inverse of a unitary matrix.
    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        Self::from_raw(&self.profile, data)
    }

    /// `max |(U^dagger U - I)_{rc}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    s += self.data[r * n + a].conj() * self.data[r * n + b];
                }
                if a == b {
                    s -= 1.0;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `I ⊗ op ⊗ I` with a single-subsystem `op` placed on subsystem `i`.
    pub fn embed(profile: &DimensionProfile, i: usize, op: &Self) -> Result<Self> {
        if i >= profile.k() {
            return Err(Error::IndexRange { index: i, limit: profile.k() });
        }
        if op.profile.k() != 1 || op.profile.dim(0) != profile.dim(i) {
            return Err(Error::ProfileMismatch);
        }
        let n = profile.hilbert_dim();
        let ni = profile.dim(i) as usize;
        let st = stride(profile, i);
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for c in 0..n {
            let dc = (c / st) % ni;
            let rest = c - dc * st;
            for dr in 0..ni {
                data[(rest + dr * st) * n + c] = op.data[dr * ni + dc];
            }
        }
        Ok(Self::from_raw(profile, data))
    }

    /// Kronecker product over the concatenated profile.
    pub fn tensor(&self, other: &Self) -> Self {
        let dims: Vec<u64> = self.profile.dims().iter().chain(other.profile.dims()).copied().collect();
        let profile = DimensionProfile::new(&dims).expect("valid dims");
        let (na, nb) = (self.dim(), other.dim());
        let n = na * nb;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for ra in 0..na {
            for ca in 0..na {
                let a = self.data[ra * na + ca];
                for rb in 0..nb {
                    for cb in 0..nb {
                        data[(ra * nb + rb) * n + ca * nb + cb] = a * other.data[rb * nb + cb];
                    }
                }
            }
        }
        Self::from_raw(&profile, data)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|r| self.data[r * n..(r + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}
