//! Unitary realizations: generalized Pauli matrices, Weyl operators,
//! the normalizer generators `P, Q, D, S, R_ij`, and the map sending a
//! normalizer element to the block matrix describing its conjugation action
//! on the Weyl operators.
//!
//! Conventions: `P` is the cyclic shift `(P)_{i,j} = delta_{i,j-1}`, `Q` the
//! phase ramp `diag(1, w, w^2, ...)`. The phase-space generator `f_{2i}`
//! (zero-based) corresponds to `P` on subsystem `i` and `f_{2i+1}` to `Q`, so
//! the block matrix of a normalizer element `M` has as column `j` the
//! exponents of `M A_j M^{-1}` in the ordered word `A_0^{h_0} ... A_{2k-1}^{h_{2k-1}}`.

pub mod dense;
pub mod monomial;

use std::collections::HashSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::modarith::reduce;
use crate::phasering::{BlockMatrix, DimensionProfile, PhaseVector};

pub use dense::{DenseUnitary, UNITARITY_TOL};
pub use monomial::{digits, index_of, stride, MonomialUnitary};

/// Overlap modulus required to accept a Weyl decomposition.
pub const DECOMPOSE_TOL: f64 = 1e-6;
/// Dense products longer than this are re-checked for unitarity.
pub const RECHECK_CHAIN: usize = 8;
/// Default cap on the Heisenberg group closure.
pub const HEISENBERG_CAP: usize = 512;

/// `exp(2 pi i e / m)`.
pub fn root_of_unity(e: u64, m: u64) -> Complex64 {
    let e = e % m;
    // Exact values on the axes keep products of monomials clean.
    if e == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * e == m {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * e == m {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * e == 3 * m {
        return Complex64::new(0.0, -1.0);
    }
    let theta = 2.0 * PI * e as f64 / m as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// Exact monomial or dense double-precision unitary.
#[derive(Clone, Debug, PartialEq)]
pub enum Unitary {
    Monomial(MonomialUnitary),
    Dense(DenseUnitary),
}

impl From<MonomialUnitary> for Unitary {
    fn from(m: MonomialUnitary) -> Self {
        Unitary::Monomial(m)
    }
}

impl From<DenseUnitary> for Unitary {
    fn from(d: DenseUnitary) -> Self {
        Unitary::Dense(d)
    }
}

impl Unitary {
    pub fn profile(&self) -> &DimensionProfile {
        match self {
            Unitary::Monomial(m) => m.profile(),
            Unitary::Dense(d) => d.profile(),
        }
    }

    pub fn identity(profile: &DimensionProfile) -> Self {
        MonomialUnitary::identity(profile).into()
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self, Unitary::Monomial(_))
    }

    pub fn to_dense(&self) -> DenseUnitary {
        match self {
            Unitary::Monomial(m) => m.to_dense(),
            Unitary::Dense(d) => d.clone(),
        }
    }

    pub fn as_monomial(&self) -> Option<&MonomialUnitary> {
        match self {
            Unitary::Monomial(m) => Some(m),
            Unitary::Dense(_) => None,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Unitary::Monomial(a), Unitary::Monomial(b)) => Ok(a.mul(b)?.into()),
            _ => Ok(self.to_dense().mul(&other.to_dense())?.into()),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Unitary::Monomial(m) => m.inverse().into(),
            Unitary::Dense(d) => d.adjoint().into(),
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        match self {
            Unitary::Monomial(m) => m.apply(v),
            Unitary::Dense(d) => d.apply(v),
        }
    }
}

/// `M X M^{-1}`; exact when both operands are monomial.
pub fn conjugate(m: &Unitary, x: &Unitary) -> Result<Unitary> {
    m.profile().ensure_same(x.profile())?;
    m.mul(x)?.mul(&m.inverse())
}

/// Ordered product of `factors`; dense chains longer than
/// [`RECHECK_CHAIN`] are re-checked for unitarity.
pub fn product(profile: &DimensionProfile, factors: &[Unitary]) -> Result<Unitary> {
    let mut acc = Unitary::identity(profile);
    for f in factors {
        acc = acc.mul(f)?;
    }
    if factors.len() > RECHECK_CHAIN {
        if let Unitary::Dense(d) = &acc {
            let residual = d.unitarity_residual();
            if residual > UNITARITY_TOL {
                return Err(Error::NotUnitary(residual));
            }
        }
    }
    Ok(acc)
}

fn single(n: u64) -> DimensionProfile {
    DimensionProfile::new(&[n]).expect("n >= 2")
}

/// Clock matrix `Q_n = diag(1, w_n, ..., w_n^{n-1})`.
pub fn pauli_q(n: u64) -> MonomialUnitary {
    let profile = single(n);
    let step = profile.phase_order() / n;
    MonomialUnitary::diagonal(&profile, (0..n).map(|i| i * step).collect()).expect("shape")
}

/// Shift matrix `(P_n)_{i,j} = delta_{i,j-1}`: column `j` lands in row `j - 1`.
pub fn pauli_p(n: u64) -> MonomialUnitary {
    let profile = single(n);
    let nn = n as usize;
    let perm = (0..nn).map(|j| (j + nn - 1) % nn).collect();
    MonomialUnitary::from_parts(&profile, perm, vec![0; nn]).expect("cyclic shift")
}

/// `D_n = diag(eps^{-i} w_n^{i(i-1)/2})` with `eps = w_{2n}` for even `n`
/// and `1` for odd `n`. For `n = 2 mod 4` this `eps` is a square root of -1.
pub fn d_matrix(n: u64) -> MonomialUnitary {
    let profile = single(n);
    let m = profile.phase_order();
    let eps = if n.is_multiple_of(2) { m / (2 * n) } else { 0 };
    let step = m / n;
    let phases = (0..n)
        .map(|i| {
            let binom = i * i.saturating_sub(1) / 2;
            (binom % n * step + (m - (i * eps) % m)) % m
        })
        .collect();
    MonomialUnitary::diagonal(&profile, phases).expect("shape")
}

/// Fourier matrix `(S_n)_{ij} = w_n^{ij} / sqrt(n)`.
pub fn s_matrix(n: u64) -> DenseUnitary {
    let profile = single(n);
    let norm = 1.0 / (n as f64).sqrt();
    let nn = n as usize;
    let mut data = Vec::with_capacity(nn * nn);
    for i in 0..n {
        for j in 0..n {
            data.push(root_of_unity(i * j % n, n) * norm);
        }
    }
    DenseUnitary::new(&profile, data).expect("DFT is unitary")
}

/// `A_j` (zero-based): `P` on subsystem `j / 2` for even `j`, `Q` for odd.
pub fn a_generator(profile: &DimensionProfile, j: usize) -> Result<MonomialUnitary> {
    if j >= profile.size() {
        return Err(Error::IndexRange { index: j, limit: profile.size() });
    }
    let n = profile.dim(j / 2);
    let op = if j.is_multiple_of(2) { pauli_p(n) } else { pauli_q(n) };
    MonomialUnitary::embed(profile, j / 2, &op)
}

/// Diagonal coupling `R_ij` (zero-based `i < j`) with entries
/// `w_g^{x_i x_j}`, `g = gcd(n_i, n_j)`.
pub fn r_matrix(profile: &DimensionProfile, i: usize, j: usize) -> Result<MonomialUnitary> {
    let k = profile.k();
    if i >= j || j >= k {
        return Err(Error::IndexOrder { i, j, k });
    }
    // T_ij = I ⊗ Q_{n_j}^{n_j/g}; block x_i of R carries T_ij^{x_i}.
    let m = profile.phase_order();
    let g = profile.gcd(i, j);
    let t_step = (m / profile.dim(j)) * (profile.dim(j) / g);
    let phases = (0..profile.hilbert_dim())
        .map(|x| {
            let d = digits(profile, x);
            (d[i] * d[j] % g) * t_step % m
        })
        .collect();
    MonomialUnitary::diagonal(profile, phases)
}

/// Exponent pairs `(k_i, l_i)` per subsystem indexing `A[alpha] = ⊗ Q^{k_i} P^{l_i}`,
/// stored interleaved as `[k_1, l_1, k_2, l_2, ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylIndex {
    profile: DimensionProfile,
    alpha: Vec<u64>,
}

impl WeylIndex {
    pub fn new(profile: &DimensionProfile, alpha: &[i64]) -> Result<Self> {
        if alpha.len() != profile.size() {
            return Err(Error::ShapeMismatch { expected: profile.size(), got: alpha.len() });
        }
        let alpha = alpha.iter().enumerate().map(|(r, &a)| reduce(a, profile.row_modulus(r))).collect();
        Ok(Self { profile: profile.clone(), alpha })
    }

    pub fn zero(profile: &DimensionProfile) -> Self {
        Self { profile: profile.clone(), alpha: vec![0; profile.size()] }
    }

    /// From separate Q- and P-exponent lists.
    pub fn from_qp(profile: &DimensionProfile, q: &[i64], p: &[i64]) -> Result<Self> {
        let k = profile.k();
        if q.len() != k || p.len() != k {
            return Err(Error::ShapeMismatch { expected: k, got: q.len().min(p.len()) });
        }
        let interleaved: Vec<i64> = q.iter().zip(p).flat_map(|(&a, &b)| [a, b]).collect();
        Self::new(profile, &interleaved)
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.alpha
    }

    pub fn q_exp(&self, i: usize) -> u64 {
        self.alpha[2 * i]
    }

    pub fn p_exp(&self, i: usize) -> u64 {
        self.alpha[2 * i + 1]
    }

    /// Every index in lexicographic order.
    pub fn all(profile: &DimensionProfile) -> Vec<WeylIndex> {
        let n = profile.hilbert_dim();
        let mut out = Vec::with_capacity(n * n);
        let m = profile.size();
        let total = n * n;
        for mut t in 0..total {
            let mut alpha = vec![0u64; m];
            for r in (0..m).rev() {
                let b = profile.row_modulus(r) as usize;
                alpha[r] = (t % b) as u64;
                t /= b;
            }
            out.push(WeylIndex { profile: profile.clone(), alpha });
        }
        out
    }

    /// Phase-space vector of this operator in the `A_j` word order:
    /// component `2i` is the `P` exponent and `2i + 1` the `Q` exponent.
    pub fn to_phase_vector(&self) -> PhaseVector {
        let comps: Vec<i64> = (0..self.profile.k())
            .flat_map(|i| [self.p_exp(i) as i64, self.q_exp(i) as i64])
            .collect();
        PhaseVector::new(&self.profile, &comps).expect("shape")
    }
}

/// `A[alpha] = ⊗_i Q_{n_i}^{k_i} P_{n_i}^{l_i}` as an exact monomial.
pub fn weyl_op(alpha: &WeylIndex) -> MonomialUnitary {
    let profile = &alpha.profile;
    let m = profile.phase_order();
    let n = profile.hilbert_dim();
    let mut perm = vec![0usize; n];
    let mut phase = vec![0u64; n];
    for x in 0..n {
        let d = digits(profile, x);
        let mut target = Vec::with_capacity(d.len());
        let mut e = 0u64;
        for (i, &xi) in d.iter().enumerate() {
            let ni = profile.dim(i);
            let shifted = (xi + ni - alpha.p_exp(i)) % ni;
            e = (e + (m / ni) * (alpha.q_exp(i) * shifted % ni)) % m;
            target.push(shifted);
        }
        perm[x] = index_of(profile, &target);
        phase[x] = e;
    }
    MonomialUnitary::from_parts(profile, perm, phase).expect("valid permutation")
}

/// Exponent `e` with `A[alpha] A[beta] = w_M^e A[beta] A[alpha]`,
/// `e = sum_i (M / n_i) (l_i k'_i - l'_i k_i) mod M`.
pub fn commutation_phase(alpha: &WeylIndex, beta: &WeylIndex) -> Result<u64> {
    alpha.profile.ensure_same(&beta.profile)?;
    let profile = &alpha.profile;
    let m = profile.phase_order() as i64;
    let total = (0..profile.k()).fold(0i64, |acc, i| {
        let ni = profile.dim(i) as i64;
        let cross = alpha.p_exp(i) as i64 * beta.q_exp(i) as i64 - beta.p_exp(i) as i64 * alpha.q_exp(i) as i64;
        (acc + (m / ni) * cross.rem_euclid(ni)).rem_euclid(m)
    });
    Ok(total as u64)
}

/// Closure of `{w_n I, Q_n, P_n}`.
pub fn heisenberg_group(n: u64, cap: usize) -> Result<Vec<MonomialUnitary>> {
    if n < 2 {
        return Err(Error::InvalidProfile(format!("dimension {n} is below 2")));
    }
    let profile = single(n);
    let omega = MonomialUnitary::scalar(&profile, (profile.phase_order() / n) as i64);
    let gens = [omega, pauli_q(n), pauli_p(n)];
    let mut seen = HashSet::new();
    let mut order = vec![MonomialUnitary::identity(&profile)];
    seen.insert(order[0].clone());
    let mut cursor = 0;
    while cursor < order.len() {
        let current = order[cursor].clone();
        cursor += 1;
        for g in &gens {
            let next = current.mul(g)?;
            if seen.insert(next.clone()) {
                if order.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                order.push(next);
            }
        }
    }
    Ok(order)
}

/// Elements of `group` commuting with every element of `group`.
pub fn center(group: &[MonomialUnitary]) -> Vec<MonomialUnitary> {
    group
        .iter()
        .filter(|z| {
            group
                .iter()
                .all(|g| z.mul(g).expect("same profile") == g.mul(z).expect("same profile"))
        })
        .cloned()
        .collect()
}

/// Result of expanding an operator as `scalar * A[index]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylDecomposition {
    pub index: WeylIndex,
    pub scalar: Complex64,
    /// `e` with `scalar = w_M^e`, when the decomposition was exact.
    pub exact_phase: Option<u64>,
}

/// Finds `(nu, alpha)` with `x = nu * A[alpha]`.
///
/// Monomial inputs are decomposed exactly from their shift and phase
/// pattern. Dense inputs use the Hilbert-Schmidt overlaps
/// `Tr(A[alpha]^dagger x) / N`; since the Weyl operators are orthogonal,
/// exactly one overlap may have modulus at least `1 - DECOMPOSE_TOL`.
pub fn weyl_decompose(x: &Unitary) -> Result<WeylDecomposition> {
    match x {
        Unitary::Monomial(m) => decompose_monomial(m),
        Unitary::Dense(d) => decompose_dense(d),
    }
}

fn decompose_monomial(x: &MonomialUnitary) -> Result<WeylDecomposition> {
    let profile = x.profile();
    let m = profile.phase_order();
    let origin = digits(profile, x.perm()[0]);
    let mut q = Vec::with_capacity(profile.k());
    let mut p = Vec::with_capacity(profile.k());
    for i in 0..profile.k() {
        let ni = profile.dim(i);
        p.push(((ni - origin[i]) % ni) as i64);
        let diff = (x.phases()[stride(profile, i)] + m - x.phases()[0]) % m;
        let step = m / ni;
        if !diff.is_multiple_of(step) {
            return Err(Error::NotAWeylWord);
        }
        q.push((diff / step) as i64);
    }
    let index = WeylIndex::from_qp(profile, &q, &p)?;
    let e = x.ratio(&weyl_op(&index)).ok_or(Error::NotAWeylWord)?;
    Ok(WeylDecomposition { index, scalar: root_of_unity(e, m), exact_phase: Some(e) })
}

fn hs_overlap(a: &MonomialUnitary, x: &DenseUnitary) -> Complex64 {
    let m = a.phase_order();
    let n = a.dim();
    let total: Complex64 = a
        .perm()
        .iter()
        .zip(a.phases())
        .enumerate()
        .map(|(col, (&row, &e))| root_of_unity(e, m).conj() * x.get(row, col))
        .sum();
    total / n as f64
}

fn decompose_dense(x: &DenseUnitary) -> Result<WeylDecomposition> {
    let mut hit: Option<(WeylIndex, Complex64)> = None;
    for index in WeylIndex::all(x.profile()) {
        let overlap = hs_overlap(&weyl_op(&index), x);
        if overlap.norm() >= 1.0 - DECOMPOSE_TOL {
            if hit.is_some() {
                return Err(Error::NotAWeylWord);
            }
            hit = Some((index, overlap));
        }
    }
    let (index, scalar) = hit.ok_or(Error::NotAWeylWord)?;
    Ok(WeylDecomposition { index, scalar, exact_phase: None })
}

/// Block matrix of the conjugation action of `m` on the Weyl operators:
/// column `j` holds the exponents of `m A_j m^{-1}`.
pub fn symplectic_image(m: &Unitary) -> Result<BlockMatrix> {
    let profile = m.profile().clone();
    let images = (0..profile.size())
        .map(|j| {
            let aj: Unitary = a_generator(&profile, j)?.into();
            let conj = conjugate(m, &aj)?;
            let dec = weyl_decompose(&conj).map_err(|_| Error::NotInNormalizer { generator: j })?;
            Ok(dec.index.to_phase_vector())
        })
        .collect::<Result<Vec<_>>>()?;
    BlockMatrix::endo_from_images(&profile, &images).map_err(|e| match e {
        Error::NotAnEndomorphism { generator } => Error::NotInNormalizer { generator },
        other => other,
    })
}

/// A generator of the normalizer with a human-readable name.
#[derive(Clone, Debug)]
pub struct NamedUnitary {
    pub name: String,
    pub op: Unitary,
}

/// `P_i, Q_i, D_i, S_i` for each subsystem, then `R_ij` for `i < j`.
pub fn normalizer_generators(profile: &DimensionProfile) -> Vec<NamedUnitary> {
    let k = profile.k();
    let mut out = Vec::with_capacity(4 * k + k * (k - 1) / 2);
    for i in 0..k {
        let n = profile.dim(i);
        let emb = |op: MonomialUnitary| -> Unitary { MonomialUnitary::embed(profile, i, &op).expect("matching dims").into() };
        out.push(NamedUnitary { name: format!("P{}", i + 1), op: emb(pauli_p(n)) });
        out.push(NamedUnitary { name: format!("Q{}", i + 1), op: emb(pauli_q(n)) });
        out.push(NamedUnitary { name: format!("D{}", i + 1), op: emb(d_matrix(n)) });
        let s = DenseUnitary::embed(profile, i, &s_matrix(n)).expect("matching dims");
        out.push(NamedUnitary { name: format!("S{}", i + 1), op: s.into() });
    }
    for i in 0..k {
        for j in i + 1..k {
            let r = r_matrix(profile, i, j).expect("ordered indices");
            out.push(NamedUnitary { name: format!("R{}{}", i + 1, j + 1), op: r.into() });
        }
    }
    out
}

/// `gcd(n_i, n_j)`-based exponent `n_j / gcd(n_i, n_j)` used in the
/// coupling identities.
pub fn coupling_exponent(profile: &DimensionProfile, i: usize, j: usize) -> u64 {
    profile.dim(j) / profile.dim(i).gcd(&profile.dim(j))
}
