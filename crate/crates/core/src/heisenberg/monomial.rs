use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::heisenberg::dense::DenseUnitary;
use crate::heisenberg::root_of_unity;
use crate::modarith::reduce;
use crate::phasering::DimensionProfile;

/// A generalized permutation matrix whose nonzero entries are powers of
/// `omega_M`, `M = lcm(4, n1, ..., nk)`.
///
/// Column `j` has its single nonzero entry `omega_M^{phase[j]}` in row
/// `perm[j]`. All arithmetic on this type is exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialUnitary {
    profile: DimensionProfile,
    perm: Vec<usize>,
    phase: Vec<u64>,
}

impl MonomialUnitary {
    pub fn identity(profile: &DimensionProfile) -> Self {
        let n = profile.hilbert_dim();
        Self { profile: profile.clone(), perm: (0..n).collect(), phase: vec![0; n] }
    }

    /// `omega_M^e * I`.
    pub fn scalar(profile: &DimensionProfile, e: i64) -> Self {
        let mut out = Self::identity(profile);
        let v = reduce(e, profile.phase_order());
        out.phase.iter_mut().for_each(|p| *p = v);
        out
    }

    /// Diagonal matrix with the given phase exponents.
    pub fn diagonal(profile: &DimensionProfile, phases: Vec<u64>) -> Result<Self> {
        let n = profile.hilbert_dim();
        Self::from_parts(profile, (0..n).collect(), phases)
    }

    pub fn from_parts(profile: &DimensionProfile, perm: Vec<usize>, phase: Vec<u64>) -> Result<Self> {
        let n = profile.hilbert_dim();
        if perm.len() != n || phase.len() != n {
            return Err(Error::ShapeMismatch { expected: n, got: perm.len().min(phase.len()) });
        }
        let mut hit = vec![false; n];
        for &r in &perm {
            if r >= n || hit[r] {
                return Err(Error::InvalidProfile("column map is not a permutation".into()));
            }
            hit[r] = true;
        }
        let m = profile.phase_order();
        let phase = phase.into_iter().map(|e| e % m).collect();
        Ok(Self { profile: profile.clone(), perm, phase })
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn phase_order(&self) -> u64 {
        self.profile.phase_order()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[u64] {
        &self.phase
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &r)| r == j)
    }

    /// Phase exponent at `(row, col)`, or `None` for a zero entry.
    pub fn entry(&self, row: usize, col: usize) -> Option<u64> {
        (self.perm[col] == row).then(|| self.phase[col])
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.profile.ensure_same(&other.profile)?;
        let m = self.phase_order();
        let (perm, phase) = other
            .perm
            .iter()
            .zip(&other.phase)
            .map(|(&r, &e)| (self.perm[r], (e + self.phase[r]) % m))
            .unzip();
        Ok(Self { profile: self.profile.clone(), perm, phase })
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let m = self.phase_order();
        let mut perm = vec![0usize; n];
        let mut phase = vec![0u64; n];
        for (j, (&r, &e)) in self.perm.iter().zip(&self.phase).enumerate() {
            perm[r] = j;
            phase[r] = (m - e) % m;
        }
        Self { profile: self.profile.clone(), perm, phase }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::identity(&self.profile);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq).expect("same profile");
            }
            sq = sq.mul(&sq).expect("same profile");
            k >>= 1;
        }
        acc
    }

    /// `e` such that `self == omega_M^e * other`, if one exists.
    pub fn ratio(&self, other: &Self) -> Option<u64> {
        if self.profile != other.profile || self.perm != other.perm {
            return None;
        }
        let m = self.phase_order();
        let e = (self.phase[0] + m - other.phase[0]) % m;
        self.phase
            .iter()
            .zip(&other.phase)
            .all(|(&a, &b)| (a + m - b) % m == e)
            .then_some(e)
    }

    /// `Some(e)` when the matrix equals `omega_M^e * I`.
    pub fn scalar_exponent(&self) -> Option<u64> {
        self.ratio(&Self::identity(&self.profile))
    }

    /// Kronecker product; the result lives on the concatenated profile.
    pub fn tensor(&self, other: &Self) -> Self {
        let dims: Vec<u64> = self.profile.dims().iter().chain(other.profile.dims()).copied().collect();
        let profile = DimensionProfile::new(&dims).expect("valid dims");
        let m = profile.phase_order();
        let (sa, sb) = (m / self.phase_order(), m / other.phase_order());
        let nb = other.dim();
        let n = self.dim() * nb;
        let mut perm = vec![0usize; n];
        let mut phase = vec![0u64; n];
        for (ja, (&ra, &ea)) in self.perm.iter().zip(&self.phase).enumerate() {
            for (jb, (&rb, &eb)) in other.perm.iter().zip(&other.phase).enumerate() {
                perm[ja * nb + jb] = ra * nb + rb;
                phase[ja * nb + jb] = (ea * sa + eb * sb) % m;
            }
        }
        Self { profile, perm, phase }
    }

    /// `I ⊗ op ⊗ I` with `op` (a single-subsystem operator) acting on
    /// subsystem `i` of `profile`.
    pub fn embed(profile: &DimensionProfile, i: usize, op: &Self) -> Result<Self> {
        if i >= profile.k() {
            return Err(Error::IndexRange { index: i, limit: profile.k() });
        }
        if op.profile.k() != 1 || op.profile.dim(0) != profile.dim(i) {
            return Err(Error::ProfileMismatch);
        }
        let m = profile.phase_order();
        let scale = m / op.phase_order();
        let stride = stride(profile, i);
        let ni = profile.dim(i) as usize;
        let n = profile.hilbert_dim();
        let mut perm = vec![0usize; n];
        let mut phase = vec![0u64; n];
        for x in 0..n {
            let digit = (x / stride) % ni;
            let rest = x - digit * stride;
            perm[x] = rest + op.perm[digit] * stride;
            phase[x] = op.phase[digit] * scale % m;
        }
        Ok(Self { profile: profile.clone(), perm, phase })
    }

    pub fn to_dense(&self) -> DenseUnitary {
        let n = self.dim();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        let m = self.phase_order();
        for (j, (&r, &e)) in self.perm.iter().zip(&self.phase).enumerate() {
            data[r * n + j] = root_of_unity(e, m);
        }
        DenseUnitary::from_raw(&self.profile, data)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let m = self.phase_order();
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (j, (&r, &e)) in self.perm.iter().zip(&self.phase).enumerate() {
            out[r] = root_of_unity(e, m) * v[j];
        }
        out
    }
}

/// Stride of subsystem `i` in the row-major (first factor most significant)
/// tensor index.
pub fn stride(profile: &DimensionProfile, i: usize) -> usize {
    profile.dims()[i + 1..].iter().map(|&n| n as usize).product()
}

/// Digits `(x_1, ..., x_k)` of a tensor index.
pub fn digits(profile: &DimensionProfile, mut index: usize) -> Vec<u64> {
    let mut out = vec![0u64; profile.k()];
    for i in (0..profile.k()).rev() {
        let n = profile.dim(i) as usize;
        out[i] = (index % n) as u64;
        index /= n;
    }
    out
}

pub fn index_of(profile: &DimensionProfile, digits: &[u64]) -> usize {
    digits
        .iter()
        .zip(profile.dims())
        .fold(0usize, |acc, (&d, &n)| acc * n as usize + d as usize)
}

impl fmt::Debug for MonomialUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial[{}; w{}](", self.profile, self.phase_order())?;
        for (j, (&r, &e)) in self.perm.iter().zip(&self.phase).enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{j}->{r}:{e}")?;
        }
        write!(f, ")")
    }
}
