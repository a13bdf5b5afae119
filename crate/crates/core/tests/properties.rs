use num_bigint::BigInt;
use proptest::prelude::*;

use std::collections::HashSet;

use num_complex::Complex64;

use hsym_core::heisenberg::{
    commutation_phase, normalizer_generators, pauli_q, root_of_unity, symplectic_image, weyl_decompose, weyl_op,
};
use hsym_core::modarith::{det_mod_p, inverse_mod_p, make_field, mat_mul_mod, FieldElement, ModInt, ZpMatrix};
use hsym_core::mub::{coefficient_vectors, is_symplectic_qp, j_prime, k_element, qudit_profile, wootters_fields_system};
use hsym_core::sympgroup::{is_symplectic, is_symplectic_congruence, symplectic_inverse, standard_generators};
use hsym_core::{BlockMatrix, DimensionProfile, MonomialUnitary, Unitary, WeylIndex};

fn big_mod(x: BigInt, m: u64) -> u64 {
    let m = BigInt::from(m);
    let r = ((x % &m) + &m) % &m;
    r.try_into().unwrap()
}

proptest! {
    #[test]
    fn modint_matches_bigint(a in any::<i64>(), b in any::<i64>(), m in 1u64..u64::MAX, e in 0u64..1000) {
        let (x, y) = (ModInt::new(a, m), ModInt::new(b, m));
        prop_assert_eq!((x + y).value(), big_mod(BigInt::from(a) + b, m));
        prop_assert_eq!((x - y).value(), big_mod(BigInt::from(a) - b, m));
        prop_assert_eq!((x * y).value(), big_mod(BigInt::from(a) * b, m));
        prop_assert_eq!((-x).value(), big_mod(-BigInt::from(a), m));
        let pw = BigInt::from(big_mod(BigInt::from(a), m)).modpow(&BigInt::from(e), &BigInt::from(m));
        prop_assert_eq!(x.pow(e).value(), big_mod(pw, m));
    }

    #[test]
    fn modint_inverse(a in any::<i64>(), m in 2u64..u64::MAX) {
        let x = ModInt::new(a, m);
        match x.inverse() {
            Some(inv) => prop_assert_eq!((x * inv).value(), 1),
            None => prop_assert!(num_integer::Integer::gcd(&x.value(), &m) != 1),
        }
    }
}

fn field_case() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(2u64, 1u32), (2, 3), (2, 4), (3, 2), (5, 2), (7, 1)])
}

proptest! {
    #[test]
    fn field_axioms((p, n) in field_case(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = make_field(p, n).unwrap();
        let q = f.order();
        let (x, y, z) = (
            FieldElement::from_index(&f, a % q),
            FieldElement::from_index(&f, b % q),
            FieldElement::from_index(&f, c % q),
        );
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
        prop_assert!(x.sub(&x).unwrap().is_zero());
        prop_assert_eq!(x.pow(q), x.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inverse().unwrap()).unwrap(), FieldElement::one(&f));
        } else {
            prop_assert!(x.inverse().is_none());
        }
    }
}

fn ring_profile() -> impl Strategy<Value = DimensionProfile> {
    prop::sample::select(vec![vec![2u64, 2], vec![2, 3], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![4, 6]])
        .prop_map(|d| DimensionProfile::new(&d).unwrap())
}

fn element(p: &DimensionProfile, seed: &[u64]) -> BlockMatrix {
    let m = p.size();
    let coeffs = (0..m * m).map(|i| seed[i % seed.len()].wrapping_add(i as u64 * 7919) % p.coeff_bound(i / m, i % m)).collect();
    BlockMatrix::from_coefficients(p, coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in ring_profile(), a in prop::collection::vec(any::<u64>(), 1..40),
                 b in prop::collection::vec(any::<u64>(), 1..40), c in prop::collection::vec(any::<u64>(), 1..40)) {
        let (h, g, k) = (element(&p, &a), element(&p, &b), element(&p, &c));
        let one = BlockMatrix::identity(&p);
        prop_assert_eq!(h.ring_mul(&one).unwrap(), h.clone());
        prop_assert_eq!(one.ring_mul(&h).unwrap(), h.clone());
        prop_assert_eq!(h.ring_add(&g).unwrap(), g.ring_add(&h).unwrap());
        prop_assert!(h.ring_sub(&h).unwrap() == BlockMatrix::zero(&p));
        prop_assert_eq!(
            h.ring_mul(&g).unwrap().ring_mul(&k).unwrap(),
            h.ring_mul(&g.ring_mul(&k).unwrap()).unwrap()
        );
        prop_assert_eq!(h.ring_mul(&g).unwrap().adjoint(), g.adjoint().ring_mul(&h.adjoint()).unwrap());
        prop_assert_eq!(h.pow(3), h.ring_mul(&h).unwrap().ring_mul(&h).unwrap());
    }

    #[test]
    fn symplectic_words(p in ring_profile(), word in prop::collection::vec(any::<prop::sample::Index>(), 0..12)) {
        let gens = standard_generators(&p);
        let mut h = BlockMatrix::identity(&p);
        for w in &word {
            h = h.ring_mul(w.get(&gens)).unwrap();
        }
        prop_assert!(is_symplectic(&h));
        prop_assert!(is_symplectic_congruence(&h));
        prop_assert!(h.ring_mul(&symplectic_inverse(&h)).unwrap().is_identity());
    }

    #[test]
    fn images_respect_products(dims in prop::sample::select(vec![vec![2u64, 2], vec![2, 3], vec![3], vec![4]]),
                               word in prop::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        let p = DimensionProfile::new(&dims).unwrap();
        let gens = normalizer_generators(&p);
        let mut op = Unitary::identity(&p);
        let mut img = BlockMatrix::identity(&p);
        for w in &word {
            let g = w.get(&gens);
            op = op.mul(&g.op).unwrap();
            img = img.ring_mul(&symplectic_image(&g.op).unwrap()).unwrap();
        }
        prop_assert_eq!(symplectic_image(&op).unwrap(), img);
    }
}

fn monomial(p: &DimensionProfile, perm_seed: u64, phases: &[u64]) -> MonomialUnitary {
    let n = p.hilbert_dim();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = perm_seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    let m = p.phase_order();
    let phase = (0..n).map(|i| phases[i % phases.len()] % m).collect();
    MonomialUnitary::from_parts(p, perm, phase).unwrap()
}

proptest! {
    #[test]
    fn tensor_mixed_product(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), s4 in any::<u64>(),
                            ph in prop::collection::vec(any::<u64>(), 1..8)) {
        let (pa, pb) = (DimensionProfile::new(&[2]).unwrap(), DimensionProfile::new(&[3]).unwrap());
        let (a, a2) = (monomial(&pa, s1, &ph), monomial(&pa, s2, &ph[ph.len() / 2..]));
        let (b, b2) = (monomial(&pb, s3, &ph), monomial(&pb, s4, &ph));
        let lhs = a.tensor(&b).mul(&a2.tensor(&b2)).unwrap();
        let rhs = a.mul(&a2).unwrap().tensor(&b.mul(&b2).unwrap());
        prop_assert_eq!(lhs, rhs);
        let dense = a.to_dense().tensor(&b.to_dense());
        prop_assert!(dense.max_abs_diff(&a.tensor(&b).to_dense()) < 1e-12);
    }

    #[test]
    fn tensor_identity_needs_scalars(e in 0i64..12, s1 in any::<u64>(), ph in prop::collection::vec(any::<u64>(), 1..4)) {
        let (pa, pb) = (DimensionProfile::new(&[2]).unwrap(), DimensionProfile::new(&[3]).unwrap());
        // phases live in w_4 on [2] and w_12 on [3]; w_4^e ⊗ w_12^{-3e} = I
        let a = MonomialUnitary::scalar(&pa, e);
        let b = MonomialUnitary::scalar(&pb, -3 * e);
        prop_assert!(a.tensor(&b).scalar_exponent() == Some(0));
        let x = monomial(&pa, s1, &ph);
        if x.scalar_exponent().is_none() {
            let y = MonomialUnitary::identity(&pb);
            prop_assert!(x.tensor(&y).scalar_exponent().is_none());
        }
    }

    #[test]
    fn weyl_operators_are_orthogonal(a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let p = DimensionProfile::new(&[2, 3]).unwrap();
        let all = WeylIndex::all(&p);
        let (x, y) = (weyl_op(a.get(&all)), weyl_op(b.get(&all)));
        let (dx, dy) = (x.to_dense(), y.to_dense());
        let n = p.hilbert_dim();
        let mut tr = Complex64::new(0.0, 0.0);
        for r in 0..n {
            for c in 0..n {
                tr += dx.get(r, c).conj() * dy.get(r, c);
            }
        }
        let expect = if a.get(&all) == b.get(&all) { n as f64 } else { 0.0 };
        prop_assert!((tr.norm() - expect).abs() < 1e-9);
    }
}

fn qf_vector(alpha: &WeylIndex, n: usize) -> Vec<u64> {
    (0..n).map(|i| alpha.q_exp(i)).chain((0..n).map(|i| alpha.p_exp(i))).collect()
}

#[test]
fn commuting_criterion_exhaustive() {
    for (p, n) in [(2u64, 1usize), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)] {
        let profile = qudit_profile(p, n);
        let all = WeylIndex::all(&profile);
        let vecs: Vec<Vec<u64>> = all.iter().map(|a| qf_vector(a, n)).collect();
        for (a, x) in all.iter().zip(&vecs) {
            for (b, y) in all.iter().zip(&vecs) {
                let mut s: i64 = 0;
                for i in 0..n {
                    s += -(x[i] as i64) * y[n + i] as i64 + x[n + i] as i64 * y[i] as i64;
                }
                let commutes = commutation_phase(a, b).unwrap() == 0;
                assert_eq!(commutes, s.rem_euclid(p as i64) == 0, "p={p} n={n}");
            }
        }
    }
}

fn symmetric(p: u64, n: usize, seed: &[u64]) -> ZpMatrix {
    let mut a = vec![vec![0; n]; n];
    let mut t = 0;
    for i in 0..n {
        for j in i..n {
            a[i][j] = seed[t % seed.len()].wrapping_add(t as u64) % p;
            a[j][i] = a[i][j];
            t += 1;
        }
    }
    a
}

fn mat_vec(m: &ZpMatrix, v: &[u64], p: u64) -> Vec<u64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b % p).sum::<u64>() % p).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn classes_are_mapped_by_witnesses(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1usize..4,
                                       sa in prop::collection::vec(any::<u64>(), 1..10),
                                       sb in prop::collection::vec(any::<u64>(), 1..10)) {
        let (a, b) = (symmetric(p, n, &sa), symmetric(p, n, &sb));
        let diff: ZpMatrix = (0..n).map(|i| (0..n).map(|j| (a[i][j] + p - b[i][j]) % p).collect()).collect();
        prop_assume!(det_mod_p(&diff, p) != 0);
        let x = inverse_mod_p(&diff, p).unwrap();
        let xb = mat_mul_mod(&x, &b, p);
        let mut h = vec![vec![0; 2 * n]; 2 * n];
        let mut g = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            h[i][i] = 1;
            h[n + i][n + i] = 1;
            g[n + i][i] = p - 1;
            for j in 0..n {
                h[i][n + j] = (p - a[i][j]) % p;
                g[i][j] = x[i][j];
                g[i][n + j] = (p - xb[i][j]) % p;
                g[n + i][n + j] = a[i][j];
            }
        }
        prop_assert!(is_symplectic_qp(&h, p));
        prop_assert!(is_symplectic_qp(&g, p));
        let jp = j_prime(n, p);
        let gt: ZpMatrix = (0..2 * n).map(|i| (0..2 * n).map(|j| g[j][i]).collect()).collect();
        prop_assert_eq!(mat_mul_mod(&mat_mul_mod(&gt, &jp, p), &g, p), jp);
        for col in 0..n {
            let ua: Vec<u64> = (0..n).map(|i| a[i][col]).chain((0..n).map(|i| (i == col) as u64)).collect();
            let ub: Vec<u64> = (0..n).map(|i| b[i][col]).chain((0..n).map(|i| (i == col) as u64)).collect();
            let e: Vec<u64> = (0..2 * n).map(|i| (i == col) as u64).collect();
            let f: Vec<u64> = (0..2 * n).map(|i| (i == n + col) as u64).collect();
            prop_assert_eq!(mat_vec(&h, &ua, p), f);
            prop_assert_eq!(mat_vec(&g, &ua, p), e);
            let gb = mat_vec(&g, &ub, p);
            prop_assert!(gb[..n].iter().all(|&v| v == 0));
            prop_assert_eq!(&gb[n..], &(0..n).map(|i| diff[i][col]).collect::<Vec<_>>()[..]);
        }
    }
}

#[test]
fn generic_diagonal_combination_separates_standard_basis() {
    for (p, n) in [(2u64, 3usize), (3, 2), (5, 2), (7, 1)] {
        let profile = qudit_profile(p, n);
        let dim = profile.hilbert_dim();
        let mut diag = vec![Complex64::new(0.0, 0.0); dim];
        for i in 0..n {
            let q = MonomialUnitary::embed(&profile, i, &pauli_q(p)).unwrap();
            let m = q.phase_order();
            for (x, d) in diag.iter_mut().enumerate() {
                *d += root_of_unity(q.entry(x, x).unwrap(), m) * 10f64.powi(i as i32);
            }
        }
        for x in 0..dim {
            for y in x + 1..dim {
                assert!((diag[x] - diag[y]).norm() > 1e-6, "p={p} n={n}");
            }
        }
    }
}

#[test]
fn k_group_structure() {
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let sys = wootters_fields_system(p, n).unwrap();
        let cs = coefficient_vectors(p, n as usize);
        let ks: Vec<MonomialUnitary> = cs.iter().map(|c| k_element(&sys, c).unwrap()).collect();
        let set: HashSet<&MonomialUnitary> = ks.iter().collect();
        assert_eq!(set.len(), ks.len(), "p={p} n={n}");
        for a in &ks {
            for b in &ks {
                let ab = a.mul(b).unwrap();
                assert_eq!(ab, b.mul(a).unwrap());
                if p > 2 {
                    assert!(set.contains(&ab));
                }
            }
            if p > 2 {
                assert_eq!(a.pow(p as i64), MonomialUnitary::identity(a.profile()));
            } else {
                let sq: Unitary = a.pow(2).into();
                assert!(weyl_decompose(&sq).is_ok());
            }
        }
    }
}
