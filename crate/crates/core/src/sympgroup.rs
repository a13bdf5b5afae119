//! The group `Sp_[n1,...,nk] = { H : H* J H = J }` inside the block-matrix
//! ring, its standard generators, enumeration by closure and by brute force,
//! and the column-pair set `Delta_k` on which the generated group acts
//! transitively.

use std::collections::{HashSet, VecDeque};

use indexmap::IndexSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modarith::reduce;
use crate::phasering::{BlockMatrix, DimensionProfile, PhaseVector};

/// Default cap for closures and orbits.
pub const DEFAULT_CAP: usize = 1_000_000;
/// Largest candidate space scanned by [`brute_force_sp`].
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;
/// Largest pair space scanned by [`delta_members`].
pub const DELTA_LIMIT: u128 = 10_000_000;

/// `J = diag(J_2, ..., J_2)` with `J_2 = [[0, 1], [-1, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticJ {
    value: BlockMatrix,
}

impl SymplecticJ {
    pub fn new(profile: &DimensionProfile) -> Self {
        let m = profile.size();
        let mut raw = vec![0i64; m * m];
        for b in 0..profile.k() {
            raw[(2 * b) * m + 2 * b + 1] = 1;
            raw[(2 * b + 1) * m + 2 * b] = -1;
        }
        Self { value: BlockMatrix::canonicalize(profile, &raw).expect("J lies in the ring") }
    }

    pub fn value(&self) -> &BlockMatrix {
        &self.value
    }

    pub fn into_inner(self) -> BlockMatrix {
        self.value
    }

    /// Entry `w_rs` of `J` as a signed integer.
    pub fn w(r: usize, s: usize) -> i64 {
        if r / 2 != s / 2 {
            0
        } else if r.is_multiple_of(2) && s == r + 1 {
            1
        } else if r % 2 == 1 && s + 1 == r {
            -1
        } else {
            0
        }
    }
}

/// `H* J H == J`, evaluated with ring operations.
pub fn is_symplectic(h: &BlockMatrix) -> bool {
    let j = SymplecticJ::new(h.profile());
    let lhs = h
        .adjoint()
        .ring_mul(j.value())
        .and_then(|x| x.ring_mul(h))
        .expect("same profile");
    lhs == *j.value()
}

/// Entrywise congruence form of the membership test: for all `r, s`
///
/// `sum_m d(r,m) * (n_m / gcd(n_m, n_s)) * (a_{2m,r} a_{2m+1,s} - a_{2m,s} a_{2m+1,r}) == w_rs (mod n_r)`
///
/// where `d(r,m) = n_r / gcd(n_m, n_r)` and subsystem indices are taken
/// from the rows and columns involved.
pub fn is_symplectic_congruence(h: &BlockMatrix) -> bool {
    let p = h.profile();
    let m = p.size();
    for r in 0..m {
        let cr = r / 2;
        let nr = p.dim(cr) as i64;
        for s in 0..m {
            let cs = s / 2;
            let mut total: i64 = 0;
            for b in 0..p.k() {
                let weight = (p.divisor(cr, b) * p.divisor(b, cs)) as i64;
                let minor = h.coeff(2 * b, r) as i64 * h.coeff(2 * b + 1, s) as i64
                    - h.coeff(2 * b, s) as i64 * h.coeff(2 * b + 1, r) as i64;
                total = (total + weight * minor).rem_euclid(nr);
            }
            if total != SymplecticJ::w(r, s).rem_euclid(nr) {
                return false;
            }
        }
    }
    true
}

/// `G_ij(l)`: identity plus `d * l * [[0, 0], [1, 0]]` in blocks `(i, j)` and
/// `(j, i)`. Subsystem indices are zero-based with `i < j`.
pub fn g_ij(profile: &DimensionProfile, i: usize, j: usize, ell: i64) -> Result<BlockMatrix> {
    let k = profile.k();
    if i >= j || j >= k {
        return Err(Error::IndexOrder { i, j, k });
    }
    let m = profile.size();
    let mut raw = BlockMatrix::identity(profile).lift();
    raw[(2 * i + 1) * m + 2 * j] = profile.divisor(i, j) as i64 * ell;
    raw[(2 * j + 1) * m + 2 * i] = profile.divisor(j, i) as i64 * ell;
    BlockMatrix::canonicalize(profile, &raw)
}

/// Block-diagonal embedding of a unimodular 2x2 matrix into subsystem `i`.
pub fn sl2_embed(profile: &DimensionProfile, i: usize, block: [[i64; 2]; 2]) -> Result<BlockMatrix> {
    if i >= profile.k() {
        return Err(Error::IndexRange { index: i, limit: profile.k() });
    }
    let n = profile.dim(i);
    let det = block[0][0] * block[1][1] - block[0][1] * block[1][0];
    if reduce(det, n) != 1 % n {
        return Err(Error::NotUnimodular { det, modulus: n });
    }
    let m = profile.size();
    let mut raw = BlockMatrix::identity(profile).lift();
    for (dr, row) in block.iter().enumerate() {
        for (ds, &v) in row.iter().enumerate() {
            raw[(2 * i + dr) * m + 2 * i + ds] = v;
        }
    }
    BlockMatrix::canonicalize(profile, &raw)
}

/// Upper unitriangular generator of `SL_2(Z_n)`.
pub const SL2_SHEAR: [[i64; 2]; 2] = [[1, 1], [0, 1]];
/// Quarter-turn generator of `SL_2(Z_n)`.
pub const SL2_TURN: [[i64; 2]; 2] = [[0, -1], [1, 0]];

/// `[shear, turn]` for every subsystem, followed by `G_ij(1)` for `i < j`.
pub fn standard_generators(profile: &DimensionProfile) -> Vec<BlockMatrix> {
    let k = profile.k();
    let mut gens = Vec::with_capacity(2 * k + k * (k - 1) / 2);
    for i in 0..k {
        gens.push(sl2_embed(profile, i, SL2_SHEAR).expect("unimodular"));
        gens.push(sl2_embed(profile, i, SL2_TURN).expect("unimodular"));
    }
    for i in 0..k {
        for j in i + 1..k {
            gens.push(g_ij(profile, i, j, 1).expect("ordered indices"));
        }
    }
    gens
}

/// Subgroup generated by `generators`, in breadth-first discovery order
/// starting from the identity and multiplying by generators on the right.
pub fn group_closure(
    profile: &DimensionProfile,
    generators: &[BlockMatrix],
    cap: usize,
) -> Result<IndexSet<BlockMatrix>> {
    for g in generators {
        profile.ensure_same(g.profile())?;
    }
    let mut seen: IndexSet<BlockMatrix> = IndexSet::new();
    seen.insert(BlockMatrix::identity(profile));
    let mut cursor = 0;
    while cursor < seen.len() {
        let current = seen[cursor].clone();
        cursor += 1;
        for g in generators {
            let next = current.ring_mul(g)?;
            if seen.insert(next) && seen.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
        }
    }
    Ok(seen)
}

fn decode_candidate(profile: &DimensionProfile, bounds: &[u64], mut index: u128) -> BlockMatrix {
    let mut coeffs = vec![0u64; bounds.len()];
    for (slot, &b) in coeffs.iter_mut().zip(bounds).rev() {
        *slot = (index % b as u128) as u64;
        index /= b as u128;
    }
    BlockMatrix::from_coefficients(profile, coeffs).expect("digits within bounds")
}

/// Every canonical matrix whose coefficients are drawn by `index` in
/// mixed radix, last entry fastest.
pub fn candidate_count(profile: &DimensionProfile) -> u128 {
    profile.ring_size()
}

/// All canonical matrices of the ring that pass [`is_symplectic`], sorted by
/// coefficient array.
pub fn brute_force_sp(profile: &DimensionProfile) -> Result<Vec<BlockMatrix>> {
    let size = candidate_count(profile);
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { size, limit: BRUTE_FORCE_LIMIT });
    }
    let m = profile.size();
    let bounds: Vec<u64> = (0..m * m).map(|idx| profile.coeff_bound(idx / m, idx % m)).collect();
    let mut found: Vec<BlockMatrix> = (0..size as u64)
        .into_par_iter()
        .map(|idx| decode_candidate(profile, &bounds, idx as u128))
        .filter(is_symplectic)
        .collect();
    found.sort();
    Ok(found)
}

/// Scans the whole ring and returns the pairs `(is_symplectic,
/// is_symplectic_congruence)` that disagree, if any.
pub fn membership_disagreements(profile: &DimensionProfile) -> Result<Vec<BlockMatrix>> {
    let size = candidate_count(profile);
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { size, limit: BRUTE_FORCE_LIMIT });
    }
    let m = profile.size();
    let bounds: Vec<u64> = (0..m * m).map(|idx| profile.coeff_bound(idx / m, idx % m)).collect();
    Ok((0..size as u64)
        .into_par_iter()
        .map(|idx| decode_candidate(profile, &bounds, idx as u128))
        .filter(|h| is_symplectic(h) != is_symplectic_congruence(h))
        .collect())
}

/// Inverse of a symplectic matrix, `J* H* J`.
pub fn symplectic_inverse(h: &BlockMatrix) -> BlockMatrix {
    let j = SymplecticJ::new(h.profile()).into_inner();
    j.adjoint()
        .ring_mul(&h.adjoint())
        .and_then(|x| x.ring_mul(&j))
        .expect("same profile")
}

/// The two columns `(v, u)` of a last block-column `U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnPair {
    pub v: PhaseVector,
    pub u: PhaseVector,
}

impl ColumnPair {
    /// Validates that both columns can be the last block-column of a ring
    /// element: component `r` must be a multiple of `n_{r/2} / gcd(n_{r/2}, n_k)`.
    pub fn new(v: PhaseVector, u: PhaseVector) -> Result<Self> {
        v.profile().ensure_same(u.profile())?;
        let p = v.profile();
        let last = p.size() - 1;
        for col in [&v, &u] {
            for (r, &x) in col.components().iter().enumerate() {
                let d = p.entry_divisor(r, last);
                if x % d != 0 {
                    return Err(Error::NotInRing {
                        row: r,
                        col: last,
                        value: x as i64,
                        divisor: d,
                        modulus: p.row_modulus(r),
                    });
                }
            }
        }
        Ok(Self { v, u })
    }

    /// `(v0, u0) = (f_{2k-2}, f_{2k-1})`, the last block-column of the identity.
    pub fn standard(profile: &DimensionProfile) -> Self {
        let m = profile.size();
        Self {
            v: PhaseVector::generator(profile, m - 2),
            u: PhaseVector::generator(profile, m - 1),
        }
    }

    pub fn profile(&self) -> &DimensionProfile {
        self.v.profile()
    }

    /// `U* J U` modulo `n_k` as a 2x2 matrix.
    pub fn gram(&self) -> [[u64; 2]; 2] {
        let p = self.profile();
        let kk = p.k() - 1;
        let nk = p.dim(kk) as i64;
        let cols = [&self.v, &self.u];
        let coeff = |c: &PhaseVector, r: usize| (c.components()[r] / p.divisor(r / 2, kk)) as i64;
        let mut out = [[0u64; 2]; 2];
        for (x, cx) in cols.iter().enumerate() {
            for (y, cy) in cols.iter().enumerate() {
                let mut total = 0i64;
                for b in 0..p.k() {
                    let weight = (p.divisor(kk, b) * p.divisor(b, kk)) as i64;
                    let minor = coeff(cx, 2 * b) * coeff(cy, 2 * b + 1)
                        - coeff(cx, 2 * b + 1) * coeff(cy, 2 * b);
                    total = (total + weight * minor).rem_euclid(nk);
                }
                out[x][y] = total as u64;
            }
        }
        out
    }

    /// Membership in `Delta_k`: `U* J U == J_2 (mod n_k)`.
    pub fn in_delta(&self) -> bool {
        let nk = self.profile().dim(self.profile().k() - 1);
        self.gram() == [[0, 1 % nk], [nk - 1, 0]]
    }

    pub fn act(&self, h: &BlockMatrix) -> Result<Self> {
        Ok(Self { v: h.act(&self.v)?, u: h.act(&self.u)? })
    }
}

fn last_column_candidates(profile: &DimensionProfile) -> Vec<PhaseVector> {
    let m = profile.size();
    let last = m - 1;
    let bounds: Vec<u64> = (0..m).map(|r| profile.coeff_bound(r, last)).collect();
    let count: u64 = bounds.iter().product();
    (0..count)
        .map(|mut idx| {
            let mut comps = vec![0i64; m];
            for r in (0..m).rev() {
                let a = idx % bounds[r];
                idx /= bounds[r];
                comps[r] = (a * profile.entry_divisor(r, last)) as i64;
            }
            PhaseVector::new(profile, &comps).expect("shape")
        })
        .collect()
}

/// All column pairs in `Delta_k`, in enumeration order.
pub fn delta_members(profile: &DimensionProfile) -> Result<Vec<ColumnPair>> {
    let columns = last_column_candidates(profile);
    let size = (columns.len() as u128).pow(2);
    if size > DELTA_LIMIT {
        return Err(Error::TooLarge { size, limit: DELTA_LIMIT });
    }
    Ok(columns
        .par_iter()
        .flat_map_iter(|v| {
            columns.iter().filter_map(move |u| {
                let pair = ColumnPair { v: v.clone(), u: u.clone() };
                pair.in_delta().then_some(pair)
            })
        })
        .collect())
}

/// Breadth-first orbit of `start` under `generators` acting columnwise.
pub fn orbit(start: &ColumnPair, generators: &[BlockMatrix], cap: usize) -> Result<Vec<ColumnPair>> {
    let mut seen: HashSet<ColumnPair> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    order.push(start.clone());
    queue.push_back(start.clone());
    while let Some(pair) = queue.pop_front() {
        for g in generators {
            let next = pair.act(g)?;
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}
