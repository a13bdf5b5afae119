//! The finite ring `M_[n1,...,nk]` of `2k x 2k` integer matrices whose
//! `(i, j)` block is a multiple of `n_i / gcd(n_i, n_j)`, taken modulo the
//! congruence induced by the weight matrix `D`, together with its
//! `*`-involution and its action on the phase space
//! `Z_{n1}^2 x ... x Z_{nk}^2`.
//!
//! Elements are stored canonically: entry `(r, s)` keeps the coefficient
//! `a_rs` in `[0, gcd(n_i, n_j))` where `i`, `j` are the subsystems owning
//! row `r` and column `s`, so that the integer lift is `h_rs = d_ij * a_rs`
//! with `d_ij = n_i / gcd(n_i, n_j)`. Two matrices are congruent exactly
//! when their canonical coefficient arrays agree.
//!
//! Indices are zero-based: row `r` belongs to subsystem `r / 2`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::modarith::reduce;

#[derive(Debug)]
struct ProfileTables {
    dims: Vec<u64>,
    lcm: u64,
    gcd: Vec<Vec<u64>>,
    div: Vec<Vec<u64>>,
    weight: Vec<u64>,
    phase_order: u64,
    hilbert_dim: usize,
}

/// The dimension tuple `(n1, ..., nk)` with its gcd, divisor and weight
/// tables. Cloning is cheap.
#[derive(Clone)]
pub struct DimensionProfile(Arc<ProfileTables>);

impl DimensionProfile {
    pub fn new(dims: &[u64]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidProfile("at least one subsystem is required".into()));
        }
        if let Some(&bad) = dims.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidProfile(format!("dimension {bad} is below 2")));
        }
        let k = dims.len();
        let lcm = dims.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        let gcd: Vec<Vec<u64>> =
            (0..k).map(|i| (0..k).map(|j| dims[i].gcd(&dims[j])).collect()).collect();
        let div = (0..k).map(|i| (0..k).map(|j| dims[i] / gcd[i][j]).collect()).collect();
        let weight = dims.iter().map(|&n| lcm / n).collect();
        let phase_order = dims
            .iter()
            .fold(4u64, |acc, &n| acc.lcm(&if n % 2 == 0 { 2 * n } else { n }));
        let hilbert_dim = dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n as usize))
            .ok_or_else(|| Error::InvalidProfile("Hilbert space dimension overflows".into()))?;
        Ok(Self(Arc::new(ProfileTables {
            dims: dims.to_vec(),
            lcm,
            gcd,
            div,
            weight,
            phase_order,
            hilbert_dim,
        })))
    }

    /// Parses `"2,3,4"`.
    pub fn parse(text: &str) -> Result<Self> {
        let dims = text
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidProfile(format!("cannot parse {text:?}: {e}")))?;
        Self::new(&dims)
    }

    pub fn dims(&self) -> &[u64] {
        &self.0.dims
    }

    /// Number of subsystems `k`.
    pub fn k(&self) -> usize {
        self.0.dims.len()
    }

    /// Side length `2k` of the block matrices.
    pub fn size(&self) -> usize {
        2 * self.k()
    }

    pub fn dim(&self, i: usize) -> u64 {
        self.0.dims[i]
    }

    pub fn lcm(&self) -> u64 {
        self.0.lcm
    }

    pub fn gcd(&self, i: usize, j: usize) -> u64 {
        self.0.gcd[i][j]
    }

    /// `n_i / gcd(n_i, n_j)`.
    pub fn divisor(&self, i: usize, j: usize) -> u64 {
        self.0.div[i][j]
    }

    /// `lcm / n_i`, the `i`-th diagonal weight of `D`.
    pub fn weight(&self, i: usize) -> u64 {
        self.0.weight[i]
    }

    /// Order of the root of unity used for exact phases: the lcm of 4, every
    /// odd `n_i`, and `2 n_i` for every even `n_i`.
    pub fn phase_order(&self) -> u64 {
        self.0.phase_order
    }

    /// `N = n1 * ... * nk`.
    pub fn hilbert_dim(&self) -> usize {
        self.0.hilbert_dim
    }

    /// Modulus of row `r` of a block matrix (or of component `r` of a
    /// phase vector).
    pub fn row_modulus(&self, r: usize) -> u64 {
        self.0.dims[r / 2]
    }

    /// Canonical range bound of entry `(r, s)`.
    pub fn coeff_bound(&self, r: usize, s: usize) -> u64 {
        self.0.gcd[r / 2][s / 2]
    }

    /// Scale factor between the coefficient and the lift of entry `(r, s)`.
    pub fn entry_divisor(&self, r: usize, s: usize) -> u64 {
        self.0.div[r / 2][s / 2]
    }

    pub fn all_equal(&self) -> bool {
        self.0.dims.iter().all(|&n| n == self.0.dims[0])
    }

    /// Number of canonical matrices, `prod gcd(n_{r/2}, n_{s/2})`.
    pub fn ring_size(&self) -> u128 {
        let m = self.size();
        let mut total = 1u128;
        for r in 0..m {
            for s in 0..m {
                total = total.saturating_mul(self.coeff_bound(r, s) as u128);
            }
        }
        total
    }

    pub(crate) fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ProfileMismatch)
        }
    }
}

impl PartialEq for DimensionProfile {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || self.0.dims == other.0.dims
    }
}

impl Eq for DimensionProfile {}

impl Hash for DimensionProfile {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.dims.hash(state);
    }
}

impl fmt::Debug for DimensionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DimensionProfile{:?}", self.0.dims)
    }
}

impl fmt::Display for DimensionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.dims.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// An element of the phase space `Z_{n1}^2 x ... x Z_{nk}^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhaseVector {
    profile: DimensionProfile,
    x: Vec<u64>,
}

impl PhaseVector {
    /// Reduces each component modulo its subsystem dimension.
    pub fn new(profile: &DimensionProfile, components: &[i64]) -> Result<Self> {
        if components.len() != profile.size() {
            return Err(Error::ShapeMismatch { expected: profile.size(), got: components.len() });
        }
        let x = components.iter().enumerate().map(|(r, &c)| reduce(c, profile.row_modulus(r))).collect();
        Ok(Self { profile: profile.clone(), x })
    }

    pub fn zero(profile: &DimensionProfile) -> Self {
        Self { profile: profile.clone(), x: vec![0; profile.size()] }
    }

    /// The canonical generator `f_j` (zero-based).
    pub fn generator(profile: &DimensionProfile, j: usize) -> Self {
        let mut v = Self::zero(profile);
        v.x[j] = 1;
        v
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    pub fn components(&self) -> &[u64] {
        &self.x
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.profile.ensure_same(&other.profile)?;
        let x = (0..self.x.len())
            .map(|r| (self.x[r] + other.x[r]) % self.profile.row_modulus(r))
            .collect();
        Ok(Self { profile: self.profile.clone(), x })
    }

    pub fn scale(&self, c: i64) -> Self {
        let x = (0..self.x.len())
            .map(|r| {
                let m = self.profile.row_modulus(r);
                (self.x[r] as u128 * reduce(c, m) as u128 % m as u128) as u64
            })
            .collect();
        Self { profile: self.profile.clone(), x }
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.x)
    }
}

/// Canonical element of `M_[n1,...,nk]`.
#[derive(Clone)]
pub struct BlockMatrix {
    profile: DimensionProfile,
    a: Vec<u64>,
}

impl PartialEq for BlockMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.profile == other.profile
    }
}

impl Eq for BlockMatrix {}

impl Hash for BlockMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
    }
}

impl PartialOrd for BlockMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BlockMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.profile
            .dims()
            .cmp(other.profile.dims())
            .then_with(|| self.a.cmp(&other.a))
    }
}

impl BlockMatrix {
    pub fn zero(profile: &DimensionProfile) -> Self {
        let m = profile.size();
        Self { profile: profile.clone(), a: vec![0; m * m] }
    }

    pub fn identity(profile: &DimensionProfile) -> Self {
        let mut out = Self::zero(profile);
        let m = profile.size();
        for r in 0..m {
            out.a[r * m + r] = 1;
        }
        out
    }

    /// Wraps already-canonical coefficients, rejecting out-of-range entries.
    pub fn from_coefficients(profile: &DimensionProfile, coeffs: Vec<u64>) -> Result<Self> {
        let m = profile.size();
        if coeffs.len() != m * m {
            return Err(Error::ShapeMismatch { expected: m * m, got: coeffs.len() });
        }
        for (idx, &value) in coeffs.iter().enumerate() {
            let (r, s) = (idx / m, idx % m);
            let bound = profile.coeff_bound(r, s);
            if value >= bound {
                return Err(Error::OutOfRange { row: r, col: s, value, bound });
            }
        }
        Ok(Self { profile: profile.clone(), a: coeffs })
    }

    /// Canonical form of a row-major array of integer lifts `h_rs`.
    ///
    /// Each `h_rs mod n_{r/2}` must be a multiple of `d = n_{r/2} /
    /// gcd(n_{r/2}, n_{s/2})`; the stored coefficient is the quotient, which
    /// then lies in `[0, gcd)`.
    pub fn canonicalize(profile: &DimensionProfile, raw: &[i64]) -> Result<Self> {
        let m = profile.size();
        if raw.len() != m * m {
            return Err(Error::ShapeMismatch { expected: m * m, got: raw.len() });
        }
        let mut a = vec![0u64; m * m];
        for r in 0..m {
            let modulus = profile.row_modulus(r);
            for s in 0..m {
                let d = profile.entry_divisor(r, s);
                let h = reduce(raw[r * m + s], modulus);
                if !h.is_multiple_of(d) {
                    return Err(Error::NotInRing {
                        row: r,
                        col: s,
                        value: raw[r * m + s],
                        divisor: d,
                        modulus,
                    });
                }
                a[r * m + s] = h / d;
            }
        }
        Ok(Self { profile: profile.clone(), a })
    }

    pub(crate) fn from_lift_unchecked(profile: &DimensionProfile, raw: &[i64]) -> Self {
        Self::canonicalize(profile, raw).expect("ring operations stay inside the ring")
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    /// Side length `2k`.
    pub fn size(&self) -> usize {
        self.profile.size()
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.a
    }

    pub fn coeff(&self, r: usize, s: usize) -> u64 {
        self.a[r * self.size() + s]
    }

    /// Integer lift `h_rs = d * a_rs`.
    pub fn lift_entry(&self, r: usize, s: usize) -> i64 {
        (self.profile.entry_divisor(r, s) * self.coeff(r, s)) as i64
    }

    /// Row-major integer lift with entries in `[0, n_{r/2})`.
    pub fn lift(&self) -> Vec<i64> {
        let m = self.size();
        (0..m * m).map(|idx| self.lift_entry(idx / m, idx % m)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.profile)
    }

    pub fn ring_add(&self, other: &Self) -> Result<Self> {
        self.profile.ensure_same(&other.profile)?;
        let raw: Vec<i64> = self.lift().iter().zip(other.lift()).map(|(x, y)| x + y).collect();
        Ok(Self::from_lift_unchecked(&self.profile, &raw))
    }

    pub fn ring_neg(&self) -> Self {
        let raw: Vec<i64> = self.lift().iter().map(|x| -x).collect();
        Self::from_lift_unchecked(&self.profile, &raw)
    }

    pub fn ring_sub(&self, other: &Self) -> Result<Self> {
        self.ring_add(&other.ring_neg())
    }

    /// Product computed on integer lifts, then canonicalized.
    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.profile.ensure_same(&other.profile)?;
        let m = self.size();
        let x = self.lift();
        let y = other.lift();
        let mut raw = vec![0i64; m * m];
        for r in 0..m {
            for t in 0..m {
                let xrt = x[r * m + t];
                if xrt == 0 {
                    continue;
                }
                for s in 0..m {
                    raw[r * m + s] += xrt * y[t * m + s];
                }
            }
        }
        Ok(Self::from_lift_unchecked(&self.profile, &raw))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.profile);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.ring_mul(&base).expect("same profile");
            }
            base = base.ring_mul(&base).expect("same profile");
            e >>= 1;
        }
        acc
    }

    /// The adjoint `H*`: block `(i, j)` carries `d_ij * A_ji^T`. On canonical
    /// coefficients this is the plain transpose.
    pub fn adjoint(&self) -> Self {
        let m = self.size();
        let mut a = vec![0u64; m * m];
        for r in 0..m {
            for s in 0..m {
                a[r * m + s] = self.a[s * m + r];
            }
        }
        Self { profile: self.profile.clone(), a }
    }

    /// `(Hx)_r = sum_s h_rs x_s mod n_{r/2}`.
    pub fn act(&self, x: &PhaseVector) -> Result<PhaseVector> {
        self.profile.ensure_same(&x.profile)?;
        let m = self.size();
        let comps = (0..m)
            .map(|r| {
                let modulus = self.profile.row_modulus(r) as i128;
                let sum: i128 = (0..m)
                    .map(|s| self.lift_entry(r, s) as i128 * x.x[s] as i128)
                    .sum();
                sum.rem_euclid(modulus) as u64
            })
            .collect();
        Ok(PhaseVector { profile: self.profile.clone(), x: comps })
    }

    /// Column `s` of the lift, read as a phase vector.
    pub fn column(&self, s: usize) -> PhaseVector {
        let m = self.size();
        let x = (0..m).map(|r| self.lift_entry(r, s) as u64).collect();
        PhaseVector { profile: self.profile.clone(), x }
    }

    /// The unique matrix mapping generator `f_j` to `images[j]`.
    ///
    /// An image of `f_j` must be killed by `n_{j/2}`, which forces component
    /// `r` to be a multiple of `n_{r/2} / gcd(n_{r/2}, n_{j/2})`.
    pub fn endo_from_images(profile: &DimensionProfile, images: &[PhaseVector]) -> Result<Self> {
        let m = profile.size();
        if images.len() != m {
            return Err(Error::ShapeMismatch { expected: m, got: images.len() });
        }
        let mut a = vec![0u64; m * m];
        for (s, img) in images.iter().enumerate() {
            profile.ensure_same(&img.profile)?;
            for r in 0..m {
                let d = profile.entry_divisor(r, s);
                if img.x[r] % d != 0 {
                    return Err(Error::NotAnEndomorphism { generator: s });
                }
                a[r * m + s] = img.x[r] / d;
            }
        }
        Ok(Self { profile: profile.clone(), a })
    }

    /// The 2x2 coefficient block `A_ij` as `[[a, b], [c, d]]`.
    pub fn block(&self, i: usize, j: usize) -> [[u64; 2]; 2] {
        [
            [self.coeff(2 * i, 2 * j), self.coeff(2 * i, 2 * j + 1)],
            [self.coeff(2 * i + 1, 2 * j), self.coeff(2 * i + 1, 2 * j + 1)],
        ]
    }

    /// Space-separated row-major coefficients.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.a.iter().map(u64::to_string).collect();
        parts.join(" ")
    }
}

impl fmt::Debug for BlockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.size();
        write!(f, "BlockMatrix[{}](", self.profile)?;
        for r in 0..m {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..m).map(|s| self.coeff(r, s).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, ")")
    }
}
