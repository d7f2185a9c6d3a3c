mod common;

use std::sync::Arc;

use common::*;
use num_rational::Ratio;
use pfclab::ensembles::{
    pfc, CliffordEnsemble, HaarEnsemble, PermutationEnsemble, PhaseEnsemble, UnitaryEnsemble,
};
use pfclab::moments::{
    amplification_identity_check, distinct_data, distinct_projector, distinct_tuples, epsilon_star, max_deficiency,
    mc_scalar, perm_twirl_exact, pf_twirl_closed_form, pf_twirl_exact, phase_twirl_exact, superoperator_matrix,
    twirl_exact_enum, twirl_exact_enum_pure, twirl_mc, MomentChannel,
};
use pfclab::symgroup::haar_twirl_exact;
use pfclab::{Channel, Operator, C64};

fn pf_unitaries(d: usize) -> Vec<Vec<Vec<C64>>> {
    let mut out = Vec::new();
    for p in all_perms(d) {
        for f in 0..1usize << d {
            let signs: Vec<f64> = (0..d).map(|x| if f >> x & 1 == 1 { -1.0 } else { 1.0 }).collect();
            // P_pi F_f
            let pf = naive_matmul(&monomial(&p, &vec![1.0; d]), &monomial(&(0..d).collect::<Vec<_>>(), &signs));
            out.push(pf);
        }
    }
    out
}

fn perm_unitaries(d: usize) -> Vec<Vec<Vec<C64>>> {
    all_perms(d).iter().map(|p| monomial(p, &vec![1.0; d])).collect()
}

fn phase_unitaries(d: usize) -> Vec<Vec<Vec<C64>>> {
    let id: Vec<usize> = (0..d).collect();
    (0..1usize << d)
        .map(|f| monomial(&id, &(0..d).map(|x| if f >> x & 1 == 1 { -1.0 } else { 1.0 }).collect::<Vec<_>>()))
        .collect()
}

#[test]
fn fast_paths_match_dense_enumeration() {
    let mut r = seeded(50);
    for (d, t, env) in [(3, 2, 1), (3, 2, 2), (4, 2, 1), (2, 3, 1), (3, 3, 1)] {
        let mut dims = vec![d; t];
        if env > 1 {
            dims.push(env);
        }
        let x = random_matrix(&dims, &mut r);
        let ph = phase_twirl_exact(&x, d, t).unwrap();
        assert!(max_diff_op(&ph, &naive_twirl(&phase_unitaries(d), t, &x)) < 1e-12, "phase d={d} t={t}");
        let pe = perm_twirl_exact(&x, d, t).unwrap();
        assert!(max_diff_op(&pe, &naive_twirl(&perm_unitaries(d), t, &x)) < 1e-12, "perm d={d} t={t}");
        let pf = pf_twirl_exact(&x, d, t).unwrap();
        assert!(max_diff_op(&pf, &naive_twirl(&pf_unitaries(d), t, &x)) < 1e-12, "pf d={d} t={t}");
    }
}

#[test]
fn closed_form_matches_enumeration_on_basis_pairs() {
    let (d, t) = (4, 2);
    let us = pf_unitaries(d);
    let tuples = distinct_tuples(d, t);
    for x in &tuples {
        for y in &tuples {
            let xi = x[0] * d + x[1];
            let yi = y[0] * d + y[1];
            let e = Operator::from_fn(&[d, d], &[d, d], |i, j| {
                if i == xi && j == yi {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            })
            .unwrap();
            let cf = pf_twirl_closed_form::<f64>(x, y, d, t).unwrap();
            assert!(max_diff_op(&cf, &naive_twirl(&us, t, &e)) < 1e-13, "{x:?} {y:?}");
        }
    }
    assert!(pf_twirl_closed_form::<f64>(&[1, 1], &[0, 1], d, t).is_err());
}

#[test]
fn enumerated_twirl_matches_dense_oracle() {
    let mut r = seeded(51);
    let x = random_matrix(&[2, 2, 3], &mut r);
    let e = CliffordEnsemble::new(1).unwrap();
    let us: Vec<_> = (0..24).map(|i| dense(&UnitaryEnsemble::<f64>::element(&e, i).unwrap().to_dense())).collect();
    let y = twirl_exact_enum(&e, 2, &x).unwrap();
    assert!(max_diff_op(&y, &naive_twirl(&us, 2, &x)) < 1e-12);
    let pf = pfc::<f64>(1).unwrap();
    let us: Vec<_> = (0..pf.cardinality().unwrap()).map(|i| dense(&pf.element(i).unwrap().to_dense())).collect();
    let y = twirl_exact_enum(&pf, 2, &x).unwrap();
    assert!(max_diff_op(&y, &naive_twirl(&us, 2, &x)) < 1e-12);
}

#[test]
fn pure_state_path_matches_operator_path() {
    let mut r = seeded(52);
    let v: Vec<C64> = (0..18).map(|_| c(rand::Rng::random::<f64>(&mut r) - 0.5, rand::Rng::random::<f64>(&mut r) - 0.5)).collect();
    let dims = [3, 3, 2];
    let rho = Operator::outer(&dims, &v, &v).unwrap();
    let e = PermutationEnsemble { d: 3 };
    let a = twirl_exact_enum(&e, 2, &rho).unwrap();
    let b = twirl_exact_enum_pure(&e, 2, &v, &dims).unwrap();
    assert!(a.max_abs_diff(&b).unwrap() < 1e-13);
}

#[test]
fn clifford_twirl_reproduces_haar_up_to_three_copies() {
    let mut r = seeded(53);
    for t in 1..=2 {
        let x = random_matrix(&vec![4; t], &mut r);
        let ch: Channel = MomentChannel::pfc(2, t, 1, 0).unwrap();
        assert!(ch.is_exact());
        let a = ch.apply(&x).unwrap();
        let h = haar_twirl_exact(&x, 4, t).unwrap();
        assert!(a.max_abs_diff(&h).unwrap() < 1e-11);
    }
    // One qubit, three copies: the Gram matrix is singular (d < t), so the
    // reference is a long Haar Monte-Carlo run.
    let x = random_matrix(&[2, 2, 2], &mut r);
    let c1 = twirl_exact_enum(&CliffordEnsemble::new(1).unwrap(), 3, &x).unwrap();
    let haar = twirl_mc(&HaarEnsemble { d: 2 }, 3, &x, 20000, 9).unwrap();
    let diff = c1.entries().iter().zip(&haar.mean).zip(&haar.stderr).map(|((a, b), s)| (a - b).norm() / s.max(1e-12));
    assert!(diff.fold(0.0f64, f64::max) < 6.0);
}

#[test]
fn monte_carlo_agrees_with_exact_within_errors() {
    let mut r = seeded(54);
    let x = random_matrix(&[3, 3], &mut r);
    let est = twirl_mc(&HaarEnsemble { d: 3 }, 2, &x, 4000, 1).unwrap();
    let exact = haar_twirl_exact(&x, 3, 2).unwrap();
    let mut worst = 0.0f64;
    for ((m, s), e) in est.mean.iter().zip(&est.stderr).zip(exact.entries()) {
        worst = worst.max((m - e).norm() / s.max(1e-15));
    }
    // 81 entries: allow a generous multiple of the per-entry error.
    assert!(worst < 5.0, "worst z-score {worst}");
    assert_eq!(est.samples, 4000);
}

#[test]
fn quadrupling_samples_halves_the_standard_error() {
    let a = mc_scalar(1000, 3, rand::Rng::random::<f64>);
    let b = mc_scalar(4000, 3, rand::Rng::random::<f64>);
    let ratio = b.stderr / a.stderr;
    assert!((0.42..0.58).contains(&ratio), "ratio {ratio}");
    // Uniform on [0,1]: sd = 1/sqrt(12).
    assert!((a.stderr - (1.0f64 / 12.0).sqrt() / 1000f64.sqrt()).abs() < 0.1 * a.stderr);
}

#[test]
fn monte_carlo_is_reproducible_across_thread_counts() {
    let mut r = seeded(55);
    let x = random_matrix(&[2, 2], &mut r);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| twirl_mc(&HaarEnsemble { d: 2 }, 2, &x, 1500, 77).unwrap())
    };
    let a = run(1);
    let b = run(3);
    assert_eq!(a.mean, b.mean);
    assert_eq!(a.stderr, b.stderr);
    let c = twirl_mc(&HaarEnsemble { d: 2 }, 2, &x, 1500, 78).unwrap();
    assert_ne!(a.mean, c.mean);
}

#[test]
fn distinct_data_for_sixteen_dimensions() {
    let dd = distinct_data::<f64>(16, 2).unwrap();
    assert_eq!(dd.trace_lambda, 240);
    let mut defs: Vec<Ratio<i128>> = dd.blocks.iter().map(|b| b.deficiency).collect();
    defs.sort();
    assert_eq!(defs, vec![Ratio::from_integer(0), Ratio::new(2, 17)]);
    assert_eq!(dd.epsilon_star(), Ratio::new(2, 15));
    assert_eq!(epsilon_star(16, 2).unwrap(), Ratio::new(2, 15));
    assert_eq!(epsilon_star(8, 2).unwrap(), Ratio::new(2, 7));
    assert_eq!(max_deficiency(16, 2).unwrap(), Ratio::new(2, 17));
    for b in &dd.blocks {
        let predicted = *b.block_trace_predicted.numer() as f64 / *b.block_trace_predicted.denom() as f64;
        assert!((b.block_trace - predicted).abs() < 1e-9);
    }
    assert!(epsilon_star(2, 3).is_err());
}

/// Block traces against a brute count of distinct tuples inside each
/// isotypic component, for `t = 3`.
#[test]
fn distinct_block_traces_sum_to_trace_lambda() {
    for (d, t) in [(4, 3), (5, 3), (4, 4)] {
        let dd = distinct_data::<f64>(d, t).unwrap();
        let total: f64 = dd.blocks.iter().map(|b| b.block_trace).sum();
        assert!((total - dd.trace_lambda as f64).abs() < 1e-8);
        let lam: Operator = distinct_projector(d, t).unwrap();
        assert!((lam.trace().re - distinct_tuples(d, t).len() as f64).abs() < 1e-12);
    }
}

#[test]
fn superoperator_of_haar_is_a_projector() {
    let ch: Channel = MomentChannel::haar(2, 2);
    let m = superoperator_matrix(&ch).unwrap();
    assert!(m.matmul(&m).unwrap().max_abs_diff(&m).unwrap() < 1e-12);
    // Rank = number of permutations.
    assert!((m.trace().re - 2.0).abs() < 1e-12);
}

#[test]
fn amplification_identity_holds_for_pf_and_perm_only() {
    let pf: Channel = MomentChannel::pf(2, 2);
    for m in 1..=3 {
        let rep = amplification_identity_check(&pf, m).unwrap();
        assert!(rep.residual < 1e-12);
        assert!(rep.power_norm <= rep.norm_power + 1e-12);
    }
    let perm: Channel = MomentChannel::exact(Arc::new(PermutationEnsemble { d: 3 }), 2);
    let rep = amplification_identity_check(&perm, 2).unwrap();
    assert!(rep.residual < 1e-12);
    assert!(amplification_identity_check(&perm, 0).is_err());
}

#[test]
fn channel_composition_and_descriptor() {
    let a: Channel = MomentChannel::exact(Arc::new(PhaseEnsemble { d: 3 }), 2);
    let b: Channel = MomentChannel::exact(Arc::new(PermutationEnsemble { d: 3 }), 2);
    let ab = a.then(b).unwrap();
    assert_eq!(ab.stages().len(), 2);
    assert!(ab.descriptor().contains(" then "));
    let mut r = seeded(56);
    let x = random_matrix(&[3, 3], &mut r);
    let y = ab.apply(&x).unwrap();
    let z = pf_twirl_exact(&x, 3, 2).unwrap();
    assert!(y.max_abs_diff(&z).unwrap() < 1e-13);
    let bad: Channel = MomentChannel::haar(4, 2);
    assert!(MomentChannel::<f64>::pf(3, 2).then(bad).is_err());
    let id: Channel = MomentChannel::identity(3, 2);
    assert_eq!(id.apply(&x).unwrap(), x);
}
