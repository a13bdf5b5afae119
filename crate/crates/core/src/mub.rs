//! Complete families of `p^n + 1` mutually unbiased bases in `C^{p^n}`.
//!
//! The standard basis `E` is the common eigenbasis of the diagonal Weyl
//! operators. Every other basis has the form `K S^{⊗n} E`, where `S` is the
//! Fourier matrix and `K` runs over products of the diagonal normalizer
//! elements `K_l` built from a Wootters-Fields system of symmetric matrices.
//!
//! Phase-space vectors here use the Q-first order `(k_1..k_n, l_1..l_n)` for
//! `A[alpha] = ⊗ Q^{k_i} P^{l_i}`, and `J' = [[0, -I], [I, 0]]`.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heisenberg::{
    commutation_phase, d_matrix, r_matrix, root_of_unity, s_matrix, weyl_op, DenseUnitary, MonomialUnitary,
    WeylIndex,
};
use crate::modarith::{det_mod_p, make_field, FieldElement, FieldSpec, ZpMatrix};
use crate::phasering::{BlockMatrix, DimensionProfile};

/// Largest `p^n` accepted by [`wootters_fields_system`].
pub const SYSTEM_LIMIT: u64 = 1 << 12;
/// Largest `p^n` accepted by [`generate_mubs`].
pub const MUB_LIMIT: u64 = 1 << 10;
/// Default tolerance for unbiasedness, orthonormality and eigen-residuals.
pub const MUB_TOL: f64 = 1e-9;

/// Sign relating `K_c` to its class label: `K_c S E` is the common
/// eigenbasis of `C((LABEL_SIGN * A_c; I))`, `A_c = sum c_l B_l`.
///
/// The Q-first image of `Ad_{K_c}` is `[[I, -A_c], [0, I]]`: conjugation by
/// `D` sends `P` to a multiple of `Q^{-1} P`.
pub const LABEL_SIGN: i64 = -1;

fn zp_zero(rows: usize, cols: usize) -> ZpMatrix {
    vec![vec![0; cols]; rows]
}

#[cfg(test)]
fn zp_identity(n: usize) -> ZpMatrix {
    let mut m = zp_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// `p^n` as `u64`, or `TooLarge` beyond `limit`.
fn checked_order(p: u64, n: u32, limit: u64) -> Result<u64> {
    match p.checked_pow(n) {
        Some(q) if q <= limit => Ok(q),
        _ => Err(Error::TooLarge { size: (p as u128).saturating_pow(n), limit: limit as u128 }),
    }
}

/// Symmetric matrices `B_1..B_n` over `Z_p` with every nonzero combination
/// `sum a_l B_l` regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSystem {
    field: Arc<FieldSpec>,
    b: Vec<ZpMatrix>,
}

impl SymmetricSystem {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn matrices(&self) -> &[ZpMatrix] {
        &self.b
    }

    /// `sum_l c_l B_l mod p`.
    pub fn combination(&self, c: &[u64]) -> ZpMatrix {
        let (p, n) = (self.p(), self.n());
        let mut out = zp_zero(n, n);
        for (cl, bl) in c.iter().zip(&self.b) {
            for i in 0..n {
                for j in 0..n {
                    out[i][j] = (out[i][j] + cl * bl[i][j]) % p;
                }
            }
        }
        out
    }

    /// Exhaustive check that every `B_l` is symmetric and every nonzero
    /// combination is invertible.
    pub fn check_regular(&self) -> Result<()> {
        let n = self.n();
        for bl in &self.b {
            for i in 0..n {
                for j in 0..i {
                    if bl[i][j] != bl[j][i] {
                        return Err(Error::InvalidProfile("system matrix is not symmetric".into()));
                    }
                }
            }
        }
        for c in coefficient_vectors(self.p(), n).into_iter().skip(1) {
            if det_mod_p(&self.combination(&c), self.p()) == 0 {
                return Err(Error::RegularityFailure(c));
            }
        }
        Ok(())
    }
}

/// Every `c in Z_p^n` in lexicographic order, last component fastest.
pub fn coefficient_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = p.pow(n as u32);
    (0..total)
        .map(|mut t| {
            let mut c = vec![0u64; n];
            for slot in c.iter_mut().rev() {
                *slot = t % p;
                t /= p;
            }
            c
        })
        .collect()
}

/// Structure constants of `F_{p^n}` in the basis `1, x, ..., x^{n-1}`:
/// `(B_l)_{ij}` is the coefficient of `x^l` in `x^i x^j`.
pub fn wootters_fields_system(p: u64, n: u32) -> Result<SymmetricSystem> {
    let field = make_field(p, n)?;
    checked_order(p, n, SYSTEM_LIMIT)?;
    let nn = n as usize;
    let mut b = vec![zp_zero(nn, nn); nn];
    for i in 0..nn {
        for j in 0..nn {
            let prod = FieldElement::basis(&field, i)?.mul(&FieldElement::basis(&field, j)?)?;
            for (l, &c) in prod.coeffs().iter().enumerate() {
                b[l][i][j] = c;
            }
        }
    }
    let sys = SymmetricSystem { field, b };
    sys.check_regular()?;
    Ok(sys)
}

/// A maximal isotropic class `U`: either `(I; 0)` or `(A; I)` with `A`
/// symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassMatrix {
    Standard { p: u64, n: usize },
    Graph { p: u64, a: ZpMatrix },
}

impl ClassMatrix {
    pub fn p(&self) -> u64 {
        match self {
            ClassMatrix::Standard { p, .. } | ClassMatrix::Graph { p, .. } => *p,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ClassMatrix::Standard { n, .. } => *n,
            ClassMatrix::Graph { a, .. } => a.len(),
        }
    }

    /// The `2n x n` matrix `U`.
    pub fn u(&self) -> ZpMatrix {
        let n = self.n();
        let mut u = zp_zero(2 * n, n);
        match self {
            ClassMatrix::Standard { .. } => {
                for i in 0..n {
                    u[i][i] = 1;
                }
            }
            ClassMatrix::Graph { a, .. } => {
                for i in 0..n {
                    u[i].copy_from_slice(&a[i]);
                    u[n + i][i] = 1;
                }
            }
        }
        u
    }

    /// `U^T J' U = 0 mod p`.
    pub fn is_isotropic(&self) -> bool {
        let u = self.u();
        let (n, p) = (self.n(), self.p());
        (0..n).all(|i| (0..n).all(|j| symplectic_form(&column(&u, i), &column(&u, j), p) == 0))
    }

    /// Weyl indices of the columns of `U` on the profile `[p; n]`.
    pub fn weyl_columns(&self) -> Vec<WeylIndex> {
        let (n, p) = (self.n(), self.p());
        let profile = qudit_profile(p, n);
        let u = self.u();
        (0..n)
            .map(|i| {
                let col = column(&u, i);
                let q: Vec<i64> = col[..n].iter().map(|&x| x as i64).collect();
                let pe: Vec<i64> = col[n..].iter().map(|&x| x as i64).collect();
                WeylIndex::from_qp(&profile, &q, &pe).expect("shape")
            })
            .collect()
    }
}

fn column(m: &ZpMatrix, j: usize) -> Vec<u64> {
    m.iter().map(|row| row[j]).collect()
}

/// `x^T J' y mod p` for Q-first vectors of length `2n`.
pub fn symplectic_form(x: &[u64], y: &[u64], p: u64) -> u64 {
    let n = x.len() / 2;
    let mut s: i128 = 0;
    for i in 0..n {
        s += x[n + i] as i128 * y[i] as i128 - x[i] as i128 * y[n + i] as i128;
    }
    s.rem_euclid(p as i128) as u64
}

/// `J' = [[0, -I], [I, 0]]` over `Z_p`.
pub fn j_prime(n: usize, p: u64) -> ZpMatrix {
    let mut j = zp_zero(2 * n, 2 * n);
    for i in 0..n {
        j[i][n + i] = p - 1;
        j[n + i][i] = 1;
    }
    j
}

/// The `p^n + 1` classes `(I; 0)` and `(A_c; I)` with `A_c = sum c_l B_l`,
/// `c` in lexicographic order.
pub fn star_system(sys: &SymmetricSystem) -> Vec<ClassMatrix> {
    let p = sys.p();
    std::iter::once(ClassMatrix::Standard { p, n: sys.n() })
        .chain(
            coefficient_vectors(p, sys.n())
                .into_iter()
                .map(|c| ClassMatrix::Graph { p, a: sys.combination(&c) }),
        )
        .collect()
}

/// Profile `[p, p, ..., p]` with `n` factors.
pub fn qudit_profile(p: u64, n: usize) -> DimensionProfile {
    DimensionProfile::new(&vec![p; n]).expect("p >= 2")
}

/// `K_l = prod_i F_i^{b_ii} prod_{i<j} R_ij^{b_ij}` (zero-based `l`), where
/// `F_i` is `D_p` on subsystem `i`.
///
/// The diagonal phase of `K_l` at `alpha` is `w_p` raised to
/// `(alpha^T B_l alpha - sum_i b_ii alpha_i) / 2` (times `eps` powers for
/// `p = 2`), and its Q-first image is `[[I, -B_l], [0, I]]`.
pub fn k_operator(sys: &SymmetricSystem, l: usize) -> Result<MonomialUnitary> {
    let n = sys.n();
    if l >= n {
        return Err(Error::IndexRange { index: l, limit: n });
    }
    let profile = qudit_profile(sys.p(), n);
    let b = &sys.b[l];
    let d = d_matrix(sys.p());
    let mut k = MonomialUnitary::identity(&profile);
    for i in 0..n {
        let f = MonomialUnitary::embed(&profile, i, &d)?;
        k = k.mul(&f.pow(b[i][i] as i64))?;
    }
    for i in 0..n {
        for j in i + 1..n {
            k = k.mul(&r_matrix(&profile, i, j)?.pow(b[i][j] as i64))?;
        }
    }
    Ok(k)
}

/// `prod_l K_l^{c_l}`.
pub fn k_element(sys: &SymmetricSystem, c: &[u64]) -> Result<MonomialUnitary> {
    let profile = qudit_profile(sys.p(), sys.n());
    let mut k = MonomialUnitary::identity(&profile);
    for (l, &cl) in c.iter().enumerate() {
        k = k.mul(&k_operator(sys, l)?.pow(cl as i64))?;
    }
    Ok(k)
}

/// `S_p ⊗ ... ⊗ S_p` (`n` factors) by repeated Kronecker products.
pub fn fourier_tensor(p: u64, n: usize) -> DenseUnitary {
    let s = s_matrix(p);
    (1..n).fold(s.clone(), |acc, _| acc.tensor(&s))
}

/// Reorders a block matrix over `[p; n]` into the Q-first basis
/// `(Q_1..Q_n, P_1..P_n)`.
pub fn to_qp_convention(h: &BlockMatrix) -> Result<ZpMatrix> {
    let profile = h.profile();
    let dims = profile.dims();
    let p = dims[0];
    if !profile.all_equal() || !crate::modarith::is_prime(p) {
        return Err(Error::NotEqualPrimeDims(dims.to_vec()));
    }
    let n = profile.k();
    let old = |r: usize| if r < n { 2 * r + 1 } else { 2 * (r - n) };
    Ok((0..2 * n).map(|r| (0..2 * n).map(|s| h.coeff(old(r), old(s))).collect()).collect())
}

/// `M^T J' M = J' mod p`.
pub fn is_symplectic_qp(m: &ZpMatrix, p: u64) -> bool {
    let size = m.len();
    (0..size).all(|i| {
        (0..size).all(|j| {
            let expect = if j + size / 2 == i { 1 } else if i + size / 2 == j { p - 1 } else { 0 };
            symplectic_form(&column(m, i), &column(m, j), p) == expect
        })
    })
}

/// One basis of a family; `vectors[j]` is the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct MubBasis {
    pub label: ClassMatrix,
    pub vectors: Vec<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MubFamily {
    pub p: u64,
    pub n: u32,
    pub field_modulus: Vec<u64>,
    pub bases: Vec<MubBasis>,
}

impl MubFamily {
    pub fn dim(&self) -> usize {
        (self.p as usize).pow(self.n)
    }
}

fn graph_label(sys: &SymmetricSystem, c: &[u64], sign: i64) -> ClassMatrix {
    let p = sys.p();
    let a = sys
        .combination(c)
        .into_iter()
        .map(|row| row.into_iter().map(|x| crate::modarith::reduce(sign * x as i64, p)).collect())
        .collect();
    ClassMatrix::Graph { p, a }
}

/// `E`, then `K_c S^{⊗n} E` for every `c` in lexicographic order.
pub fn generate_mubs(p: u64, n: u32) -> Result<MubFamily> {
    generate_signed(p, n, LABEL_SIGN)
}

fn generate_signed(p: u64, n: u32, sign: i64) -> Result<MubFamily> {
    let field = make_field(p, n)?;
    let dim = checked_order(p, n, MUB_LIMIT)? as usize;
    let sys = wootters_fields_system(p, n)?;
    let nn = n as usize;
    let s = fourier_tensor(p, nn);
    let standard = MubBasis {
        label: ClassMatrix::Standard { p, n: nn },
        vectors: (0..dim)
            .map(|j| (0..dim).map(|r| Complex64::new(if r == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect(),
    };
    let rest = coefficient_vectors(p, nn)
        .into_par_iter()
        .map(|c| {
            let k = k_element(&sys, &c)?;
            let m = k.phase_order();
            let vectors = (0..dim)
                .map(|j| (0..dim).map(|r| root_of_unity(k.phases()[r], m) * s.get(r, j)).collect())
                .collect();
            Ok(MubBasis { label: graph_label(&sys, &c, sign), vectors })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut bases = Vec::with_capacity(dim + 1);
    bases.push(standard);
    bases.extend(rest);
    Ok(MubFamily { p, n, field_modulus: field.modulus().to_vec(), bases })
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairDeviation {
    pub first: usize,
    pub second: usize,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnbiasedReport {
    pub bases: usize,
    pub dim: usize,
    pub tol: f64,
    pub gram_residuals: Vec<f64>,
    pub pairs: Vec<PairDeviation>,
    pub max_gram_residual: f64,
    pub max_pair_deviation: f64,
    pub pass: bool,
}

/// Orthonormality of each basis and `| |<u, v>| - 1/sqrt(N) |` over every
/// pair of bases.
pub fn verify_unbiased(family: &MubFamily, tol: f64) -> UnbiasedReport {
    let dim = family.dim();
    let target = 1.0 / (dim as f64).sqrt();
    let gram_residuals: Vec<f64> = family
        .bases
        .par_iter()
        .map(|b| {
            let mut worst: f64 = 0.0;
            for (i, u) in b.vectors.iter().enumerate() {
                for (j, v) in b.vectors.iter().enumerate() {
                    let g = inner(u, v) - if i == j { 1.0 } else { 0.0 };
                    worst = worst.max(g.norm());
                }
            }
            worst
        })
        .collect();
    let count = family.bases.len();
    let index_pairs: Vec<(usize, usize)> = (0..count).flat_map(|a| (a + 1..count).map(move |b| (a, b))).collect();
    let pairs: Vec<PairDeviation> = index_pairs
        .into_par_iter()
        .map(|(a, b)| {
            let mut worst: f64 = 0.0;
            for u in &family.bases[a].vectors {
                for v in &family.bases[b].vectors {
                    worst = worst.max((inner(u, v).norm() - target).abs());
                }
            }
            PairDeviation { first: a, second: b, max_deviation: worst }
        })
        .collect();
    let max_gram_residual = gram_residuals.iter().copied().fold(0.0, f64::max);
    let max_pair_deviation = pairs.iter().map(|d| d.max_deviation).fold(0.0, f64::max);
    let pass = count == dim + 1 && max_gram_residual <= tol && max_pair_deviation <= tol;
    UnbiasedReport { bases: count, dim, tol, gram_residuals, pairs, max_gram_residual, max_pair_deviation, pass }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenbasisEntry {
    pub basis: usize,
    pub isotropic: bool,
    pub commuting: bool,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenbasisReport {
    pub tol: f64,
    pub entries: Vec<EigenbasisEntry>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Checks that each basis is a common eigenbasis of the Weyl operators
/// named by the columns of its label, with Rayleigh-quotient eigenvalues.
pub fn verify_eigenbasis(family: &MubFamily, tol: f64) -> EigenbasisReport {
    let entries: Vec<EigenbasisEntry> = family
        .bases
        .par_iter()
        .enumerate()
        .map(|(idx, basis)| {
            let cols = basis.label.weyl_columns();
            let commuting = cols
                .iter()
                .all(|a| cols.iter().all(|b| commutation_phase(a, b).map(|e| e == 0).unwrap_or(false)));
            let mut worst: f64 = 0.0;
            for alpha in &cols {
                let op = weyl_op(alpha);
                for b in &basis.vectors {
                    let ab = op.apply(b);
                    let norm = inner(b, b).re;
                    let lambda = if norm > 0.0 { inner(b, &ab) / norm } else { Complex64::new(0.0, 0.0) };
                    for (x, y) in ab.iter().zip(b) {
                        worst = worst.max((x - lambda * y).norm());
                    }
                }
            }
            EigenbasisEntry { basis: idx, isotropic: basis.label.is_isotropic(), commuting, max_residual: worst }
        })
        .collect();
    let max_residual = entries.iter().map(|e| e.max_residual).fold(0.0, f64::max);
    let pass = entries.iter().all(|e| e.isotropic && e.commuting && e.max_residual <= tol);
    EigenbasisReport { tol, entries, max_residual, pass }
}

/// Both verifications together.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MubReport {
    pub p: u64,
    pub n: u32,
    pub unbiased: UnbiasedReport,
    pub eigenbasis: EigenbasisReport,
    pub pass: bool,
}

pub fn verify_family(family: &MubFamily, tol: f64) -> MubReport {
    let unbiased = verify_unbiased(family, tol);
    let eigenbasis = verify_eigenbasis(family, tol);
    let pass = unbiased.pass && eigenbasis.pass;
    MubReport { p: family.p, n: family.n, unbiased, eigenbasis, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::symplectic_image;

    #[test]
    fn small_systems() {
        let s = wootters_fields_system(2, 1).unwrap();
        assert_eq!(s.matrices(), &[vec![vec![1]]]);
        let s = wootters_fields_system(2, 2).unwrap();
        assert_eq!(s.matrices(), &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]]);
        let s = wootters_fields_system(3, 2).unwrap();
        assert_eq!(s.matrices(), &[vec![vec![1, 0], vec![0, 2]], vec![vec![0, 1], vec![1, 0]]]);
    }

    #[test]
    fn system_limits() {
        assert!(matches!(wootters_fields_system(2, 13), Err(Error::TooLarge { .. })));
        assert_eq!(wootters_fields_system(6, 1), Err(Error::NotPrime(6)));
        assert!(matches!(generate_mubs(2, 11), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn regularity_failure_detected() {
        let field = make_field(2, 2).unwrap();
        let bad = SymmetricSystem { field, b: vec![zp_identity(2), zp_identity(2)] };
        assert_eq!(bad.check_regular(), Err(Error::RegularityFailure(vec![1, 1])));
    }

    #[test]
    fn star_system_qubit() {
        let sys = wootters_fields_system(2, 1).unwrap();
        let us: Vec<ZpMatrix> = star_system(&sys).iter().map(|c| c.u()).collect();
        assert_eq!(us, vec![vec![vec![1], vec![0]], vec![vec![0], vec![1]], vec![vec![1], vec![1]]]);
    }

    #[test]
    fn star_system_isotropic() {
        for (p, n) in [(2, 2), (3, 2), (2, 3)] {
            let classes = star_system(&wootters_fields_system(p, n).unwrap());
            assert_eq!(classes.len() as u64, p.pow(n) + 1);
            assert!(classes.iter().all(ClassMatrix::is_isotropic));
        }
    }

    #[test]
    fn k_examples() {
        let sys = wootters_fields_system(2, 2).unwrap();
        // M = 4: 1, -i, -i, -1 and 1, -i, 1, i
        assert_eq!(k_operator(&sys, 0).unwrap().phases(), &[0, 3, 3, 2]);
        assert_eq!(k_operator(&sys, 1).unwrap().phases(), &[0, 3, 0, 1]);
        assert!(matches!(k_operator(&sys, 2), Err(Error::IndexRange { .. })));
    }

    #[test]
    fn k_images_are_upper_triangular() {
        for (p, n) in [(2u64, 2u32), (3, 2), (5, 1)] {
            let sys = wootters_fields_system(p, n).unwrap();
            let nn = n as usize;
            for l in 0..nn {
                let img = symplectic_image(&k_operator(&sys, l).unwrap().into()).unwrap();
                let qp = to_qp_convention(&img).unwrap();
                for i in 0..nn {
                    for j in 0..nn {
                        assert_eq!(qp[i][j], u64::from(i == j));
                        assert_eq!(qp[n as usize + i][j], 0);
                        assert_eq!(qp[nn + i][nn + j], u64::from(i == j));
                        assert_eq!(qp[i][nn + j], (p - sys.matrices()[l][i][j]) % p);
                    }
                }
            }
        }
    }

    #[test]
    fn fourier_tensor_image_is_j_prime() {
        for (p, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
            let img = symplectic_image(&fourier_tensor(p, n).into()).unwrap();
            assert_eq!(to_qp_convention(&img).unwrap(), j_prime(n, p));
        }
    }

    #[test]
    fn qp_convention_rejects_mixed() {
        let h = BlockMatrix::identity(&DimensionProfile::new(&[2, 3]).unwrap());
        assert_eq!(to_qp_convention(&h), Err(Error::NotEqualPrimeDims(vec![2, 3])));
        let h = BlockMatrix::identity(&DimensionProfile::new(&[4, 4]).unwrap());
        assert!(to_qp_convention(&h).is_err());
        let h = BlockMatrix::identity(&DimensionProfile::new(&[3, 3]).unwrap());
        assert_eq!(to_qp_convention(&h).unwrap(), zp_identity(4));
    }

    #[test]
    fn label_sign_is_forced_at_odd_p() {
        for (p, n) in [(3, 1), (3, 2), (5, 1)] {
            assert!(verify_eigenbasis(&generate_signed(p, n, LABEL_SIGN).unwrap(), MUB_TOL).pass);
            assert!(!verify_eigenbasis(&generate_signed(p, n, -LABEL_SIGN).unwrap(), MUB_TOL).pass);
        }
    }

    #[test]
    fn qubit_family() {
        let fam = generate_mubs(2, 1).unwrap();
        assert_eq!(fam.bases.len(), 3);
        let r = verify_unbiased(&fam, MUB_TOL);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.pairs.len(), 3);
    }

    #[test]
    fn repeated_basis_fails() {
        let mut fam = generate_mubs(2, 2).unwrap();
        fam.bases[2] = fam.bases[1].clone();
        let r = verify_unbiased(&fam, MUB_TOL);
        assert!(!r.pass);
        assert!((r.max_pair_deviation - 0.5).abs() < 1e-9);
    }
}
