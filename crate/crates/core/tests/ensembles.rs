mod common;

use std::collections::HashSet;

use common::*;
use pfclab::ensembles::{
    exact_twise_perm, haar_isometry, haar_unitary, irreducible_poly, keyed_prf, keyed_prp, kwise_perm_delta,
    kwise_poly_family, pfc, pfc_sample, plus_extension, pri_isometry, CliffordEnsemble, FeistelPrp, Gf2n,
    HaarEnsemble, KeyedPfcEnsemble, Pauli, PermDistribution, PermutationEnsemble, PhaseEnsemble, PriEnsemble,
    PriKeys, UnitaryEnsemble,
};
use pfclab::{Isometry, Operator};

fn is_unitary(u: &Isometry, tol: f64) -> bool {
    u.to_dense().is_isometry(tol) && u.dim_in() == u.dim_out()
}

/// Index of the Pauli proportional to `m`, with the proportionality constant.
fn as_pauli(m: &Operator, n: usize) -> Option<(u32, C)> {
    let d = 1 << n;
    for p in Pauli::all(n) {
        let q: Operator = p.to_operator();
        let k = (0..d).map(|i| (0..d).map(|j| q.get(i, j).conj() * m.get(i, j)).sum::<C>()).sum::<C>() / d as f64;
        if k.norm() > 0.5 && q.scale(k).max_abs_diff(m).unwrap() < 1e-10 {
            return Some((p.vector(), k));
        }
    }
    None
}

type C = pfclab::C64;

#[test]
fn single_qubit_clifford_group_has_24_elements_up_to_phase() {
    let e = CliffordEnsemble::new(1).unwrap();
    let card = UnitaryEnsemble::<f64>::cardinality(&e).unwrap();
    assert_eq!(card, 24);
    let mut seen = HashSet::new();
    for i in 0..card {
        let u = UnitaryEnsemble::<f64>::element(&e, i).unwrap().to_dense();
        assert!(u.is_isometry(1e-12));
        // Fix the global phase by the first nonzero entry.
        let pivot = (0..4).map(|k| u.get(k / 2, k % 2)).find(|z| z.norm() > 1e-9).unwrap();
        let ph = pivot / pivot.norm();
        let key: Vec<(i64, i64)> = (0..4)
            .map(|k| {
                let z = u.get(k / 2, k % 2) / ph;
                ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)
            })
            .collect();
        seen.insert(key);
    }
    assert_eq!(seen.len(), 24);
}

#[test]
fn cliffords_normalise_the_pauli_group() {
    for n in 1..=2 {
        let e = CliffordEnsemble::new(n).unwrap();
        let mut r = seeded(20 + n as u64);
        for _ in 0..20 {
            let u = UnitaryEnsemble::<f64>::sample_with(&e, &mut r).to_dense();
            let mut images = HashSet::new();
            for p in Pauli::all(n) {
                let q: Operator = p.to_operator();
                let img = u.matmul(&q).unwrap().matmul(&u.adjoint()).unwrap();
                let (v, k) = as_pauli(&img, n).expect("Clifford maps Paulis to Paulis");
                assert!((k.im).abs() < 1e-10 && (k.re.abs() - 1.0).abs() < 1e-10);
                images.insert(v);
            }
            assert_eq!(images.len(), 1 << (2 * n));
        }
    }
    let u: Operator = pfclab::ensembles::clifford(3, &mut seeded(3)).unwrap();
    assert!(u.is_isometry(1e-10));
    assert!(CliffordEnsemble::new(4).is_err());
}

#[test]
fn two_qubit_clifford_group_order() {
    let e = CliffordEnsemble::new(2).unwrap();
    assert_eq!(UnitaryEnsemble::<f64>::cardinality(&e), Some(11520));
    assert!(UnitaryEnsemble::<f64>::cardinality(&CliffordEnsemble::new(3).unwrap()).is_none());
}

#[test]
fn symplectic_form_is_alternating() {
    for u in 0..16u32 {
        assert_eq!(pfclab::ensembles::symplectic_form(2, u, u), 0);
        for v in 0..16u32 {
            assert_eq!(
                pfclab::ensembles::symplectic_form(2, u, v),
                pfclab::ensembles::symplectic_form(2, v, u)
            );
        }
    }
}

#[test]
fn field_axioms_hold_in_small_fields() {
    for n in 1..=6u32 {
        assert!(irreducible_poly(n).is_ok());
        let f = Gf2n::new(n).unwrap();
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, a), 0);
            if a != 0 {
                let inverses = (1..q).filter(|&b| f.mul(a, b) == 1).count();
                assert_eq!(inverses, 1, "n={n} a={a}");
            }
            for b in 0..q {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q.min(8) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }
}

#[test]
fn feistel_network_is_a_bijection() {
    for n in [2u32, 4, 8, 12] {
        let p = keyed_prp(n, 99).unwrap();
        let mut s = p.clone();
        s.sort_unstable();
        assert_eq!(s, (0..1usize << n).collect::<Vec<_>>());
    }
    assert_ne!(keyed_prp(8, 1).unwrap(), keyed_prp(8, 2).unwrap());
    assert_eq!(FeistelPrp::new(6, 5).unwrap().table(), keyed_prp(6, 5).unwrap());
    assert!(FeistelPrp::new(5, 1).is_err());
    let f = keyed_prf(10, 3).unwrap();
    let ones = f.iter().filter(|&&b| b == 1).count();
    assert!((400..624).contains(&ones), "unbalanced: {ones}");
    assert!(KeyedPfcEnsemble::new(3).is_err());
    let k = KeyedPfcEnsemble::new(2).unwrap();
    assert!(UnitaryEnsemble::<f64>::descriptor(&k).contains("NOT SECURE"));
    assert!(is_unitary(&k.unitary(4), 1e-10));
}

#[test]
fn polynomial_family_is_kwise_uniform_by_counting() {
    let fam = kwise_poly_family(3, 2).unwrap();
    let seeds = fam.seed_count().unwrap();
    assert_eq!(seeds, 64);
    for x in 0..8u32 {
        for y in 0..8u32 {
            if x == y {
                continue;
            }
            let mut counts = [0u32; 4];
            for s in 0..seeds {
                let c = fam.coefficients(s);
                counts[(fam.eval(&c, x) * 2 + fam.eval(&c, y)) as usize] += 1;
            }
            assert_eq!(counts, [16; 4]);
        }
    }
}

#[test]
fn samplers_produce_unitaries_of_the_declared_size() {
    let mut r = seeded(30);
    let ensembles: Vec<Box<dyn UnitaryEnsemble<f64>>> = vec![
        Box::new(HaarEnsemble { d: 5 }),
        Box::new(PermutationEnsemble { d: 6 }),
        Box::new(PhaseEnsemble { d: 6 }),
        Box::new(CliffordEnsemble::new(2).unwrap()),
        Box::new(pfc::<f64>(2).unwrap()),
    ];
    for e in &ensembles {
        for _ in 0..5 {
            let u = e.sample_with(&mut r);
            assert_eq!(u.dim_in(), e.dim_in());
            assert!(is_unitary(&u, 1e-10), "{}", e.descriptor());
        }
        assert_eq!(e.sample(7), e.sample(7));
    }
    let p: Operator = pfc_sample(2, 1).unwrap();
    assert!(p.is_isometry(1e-10));
    let u: Operator = haar_unitary(4, &mut r);
    assert!(u.is_isometry(1e-10));
    let v: Operator = haar_isometry(2, 6, &mut r).unwrap();
    assert!(v.is_isometry(1e-10) && v.rows() == 6);
}

#[test]
fn enumerations_list_every_member_once() {
    let perms = PermutationEnsemble { d: 4 };
    let mut seen = HashSet::new();
    for i in 0..24 {
        match UnitaryEnsemble::<f64>::element(&perms, i).unwrap() {
            Isometry::Monomial { perm, .. } => assert!(seen.insert(perm)),
            Isometry::Dense(_) => panic!("permutations are monomial"),
        }
    }
    assert!(UnitaryEnsemble::<f64>::element(&perms, 24).is_none());
    let phases = PhaseEnsemble { d: 3 };
    assert_eq!(UnitaryEnsemble::<f64>::cardinality(&phases), Some(8));
    let prod = pfc::<f64>(1).unwrap();
    assert_eq!(prod.cardinality(), Some(2 * 4 * 24));
}

#[test]
fn pri_isometry_is_the_plus_restriction_of_its_extension() {
    for keys in [PriKeys::Random, PriKeys::Keyed] {
        let e = PriEnsemble::new(4, 1, keys).unwrap();
        let mut r = seeded(40);
        for _ in 0..5 {
            let mut r2 = r.clone();
            let v = UnitaryEnsemble::<f64>::sample_with(&e, &mut r).to_dense();
            let u = e.sample_plus_extension::<f64>(&mut r2).to_dense();
            assert!(v.is_isometry(1e-12));
            assert!(u.is_isometry(1e-12));
            // V = U (I ⊗ |+>).
            let plus = Operator::from_fn(&[16], &[8], |i, j| {
                if i / 2 == j {
                    c(std::f64::consts::FRAC_1_SQRT_2, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            })
            .unwrap();
            assert!(u.matmul(&plus).unwrap().max_abs_diff(&v).unwrap() < 1e-12);
        }
    }
    assert!(PriEnsemble::new(3, 1, PriKeys::Keyed).is_err());
    assert!(PriEnsemble::new(3, 3, PriKeys::Random).is_err());
    let v: Operator = pri_isometry(3, 2, 1, PriKeys::Random).unwrap();
    assert_eq!((v.rows(), v.cols()), (8, 2));
}

#[test]
fn plus_extension_extends_a_dense_isometry() {
    let v: Operator = haar_isometry(3, 6, &mut seeded(41)).unwrap();
    assert!(plus_extension(&v, 2).is_err());
    assert!(plus_extension(&v, 1).unwrap().is_isometry(1e-10));
    let v: Operator = haar_isometry(2, 8, &mut seeded(42)).unwrap();
    let u = plus_extension(&v, 2).unwrap();
    assert!(u.is_isometry(1e-10));
    let plus = Operator::from_fn(&[8], &[2], |i, j| if i / 4 == j { c(0.5, 0.0) } else { c(0.0, 0.0) }).unwrap();
    assert!(u.matmul(&plus).unwrap().max_abs_diff(&v).unwrap() < 1e-10);
}

#[test]
fn uniform_permutations_are_exactly_independent() {
    for n in 3..=5 {
        for t in 1..=3 {
            assert_eq!(kwise_perm_delta(&exact_twise_perm(n), t).unwrap(), 0.0);
        }
    }
}

#[test]
fn cyclic_shifts_are_one_wise_but_not_two_wise() {
    let n = 4;
    let shifts = (0..n).map(|s| ((0..n).map(|x| (x + s) % n).collect(), 1.0)).collect();
    let dist = PermDistribution::weighted(n, 2, shifts).unwrap();
    assert!(kwise_perm_delta(&dist, 1).unwrap() < 1e-15);
    // Pr[pi(0)=0, pi(1)=1] = 1/4 against 1/12.
    let delta = kwise_perm_delta(&dist, 2).unwrap();
    assert!((delta - (1.0 / 4.0 - 1.0 / 12.0)).abs() < 1e-15, "{delta}");
    assert!(PermDistribution::weighted(3, 1, vec![(vec![0, 0, 1], 1.0)]).is_err());
}

#[test]
fn brute_force_delta_agrees_for_a_random_mixture() {
    let mut r = seeded(43);
    let n = 4;
    let perms = all_perms(n);
    let entries: Vec<(Vec<usize>, f64)> = perms.iter().take(9).map(|p| (p.clone(), rand::Rng::random::<f64>(&mut r))).collect();
    let total: f64 = entries.iter().map(|e| e.1).sum();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let pr: f64 = entries.iter().filter(|(p, _)| p[x] == a && p[y] == b).map(|e| e.1).sum::<f64>() / total;
                    worst = worst.max((pr - 1.0 / 12.0).abs());
                }
            }
        }
    }
    let dist = PermDistribution::weighted(n, 2, entries).unwrap();
    assert!((kwise_perm_delta(&dist, 2).unwrap() - worst).abs() < 1e-12);
}
