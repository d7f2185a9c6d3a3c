mod common;

use common::*;
use pfclab::tensor::{
    apply_local, flatten, read_operator, unflatten, write_operator, ComplexOperator, Layout, RegisterState,
};
use pfclab::{Error, Operator};

#[test]
fn matmul_and_kron_match_naive_products() {
    let mut r = seeded(1);
    let a = random_matrix(&[2, 3], &mut r);
    let b = random_matrix(&[2, 3], &mut r);
    let ab = a.matmul(&b).unwrap();
    assert!(max_diff_op(&ab, &naive_matmul(&dense(&a), &dense(&b))) < 1e-13);
    let k = a.kron(&b).unwrap();
    assert_eq!(k.dims_out(), &[2, 3, 2, 3]);
    assert!(max_diff_op(&k, &naive_kron(&dense(&a), &dense(&b))) < 1e-15);
}

#[test]
fn large_matmul_uses_parallel_rows_consistently() {
    let mut r = seeded(2);
    let a = random_matrix(&[70], &mut r);
    let b = random_matrix(&[70], &mut r);
    let ab = a.matmul(&b).unwrap();
    assert!(max_diff_op(&ab, &naive_matmul(&dense(&a), &dense(&b))) < 1e-12);
}

#[test]
fn mismatched_shapes_are_rejected() {
    let a: Operator = ComplexOperator::identity(&[2]).unwrap();
    let b: Operator = ComplexOperator::identity(&[3]).unwrap();
    assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch(_))));
    assert!(a.try_add(&b).is_err());
    assert!(ComplexOperator::<f64>::new(vec![2], vec![2], vec![c(0.0, 0.0); 3]).is_err());
}

#[test]
fn partial_trace_matches_index_sum() {
    let mut r = seeded(3);
    let x = random_matrix(&[2, 3, 2], &mut r);
    let kept = x.partial_trace(&[0, 2]).unwrap();
    assert_eq!(kept.dims_out(), &[2, 2]);
    let dims = [2, 3, 2];
    for a0 in 0..2 {
        for a2 in 0..2 {
            for b0 in 0..2 {
                for b2 in 0..2 {
                    let mut s = c(0.0, 0.0);
                    for m in 0..3 {
                        s += x.get(flatten(&[a0, m, a2], &dims), flatten(&[b0, m, b2], &dims));
                    }
                    assert!((kept.get(a0 * 2 + a2, b0 * 2 + b2) - s).norm() < 1e-14);
                }
            }
        }
    }
    let scalar = x.partial_trace(&[]).unwrap();
    assert_eq!(scalar.dims_out(), &[1]);
    assert!((scalar.get(0, 0) - x.trace()).norm() < 1e-13);
    assert!(x.partial_trace(&[2, 0]).is_err());
}

#[test]
fn partial_trace_of_product_recovers_factor() {
    let mut r = seeded(4);
    let a = random_matrix(&[3], &mut r);
    let b = random_matrix(&[2], &mut r);
    let ab = a.kron(&b).unwrap();
    let ta = ab.partial_trace(&[0]).unwrap();
    let expected: Vec<Vec<_>> = dense(&a).iter().map(|row| row.iter().map(|v| v * b.trace()).collect()).collect();
    assert!(max_diff_op(&ta, &expected) < 1e-13);
}

#[test]
fn permute_registers_swaps_kron_factors() {
    let mut r = seeded(5);
    let a = random_matrix(&[2], &mut r);
    let b = random_matrix(&[3], &mut r);
    let swapped = a.kron(&b).unwrap().permute_registers(&[1, 0]).unwrap();
    let ba = b.kron(&a).unwrap();
    assert_eq!(swapped.dims_out(), &[3, 2]);
    assert!(swapped.max_abs_diff(&ba).unwrap() < 1e-15);
}

#[test]
fn apply_local_equals_dense_embedding() {
    let mut r = seeded(6);
    let g = random_matrix(&[2, 3], &mut r);
    // Gate on registers (2, 0) of a [3, 2, 2] layout: move them to the front
    // as (2, 0, 1), apply G ⊗ I, and move back.
    let dims = [3usize, 2, 2];
    let v: Vec<_> = (0..12).map(|i| c(i as f64, -(i as f64) / 3.0)).collect();
    let mut w = v.clone();
    let g23 = g.clone().with_layout(vec![6], vec![6]).unwrap();
    let g_regs = g23.clone().with_layout(vec![2, 3], vec![2, 3]).unwrap();
    apply_local(&mut w, &dims, 1, &[2, 0], &g_regs).unwrap();
    let big = naive_kron(&dense(&g23), &identity(2));
    let mut expected = vec![c(0.0, 0.0); 12];
    let mut digits = [0usize; 3];
    for (i, e) in expected.iter_mut().enumerate() {
        unflatten(i, &dims, &mut digits);
        let row = flatten(&[digits[2], digits[0], digits[1]], &[2, 3, 2]);
        for (j, vj) in v.iter().enumerate() {
            let mut dj = [0usize; 3];
            unflatten(j, &dims, &mut dj);
            let col = flatten(&[dj[2], dj[0], dj[1]], &[2, 3, 2]);
            *e += big[row][col] * vj;
        }
    }
    for (a, b) in w.iter().zip(&expected) {
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn conjugate_local_matches_full_conjugation() {
    let mut r = seeded(7);
    let x = random_matrix(&[2, 2], &mut r);
    let g = random_matrix(&[2], &mut r);
    let local = x.conjugate_local(&[1], &g).unwrap();
    let full = naive_kron(&identity(2), &dense(&g));
    let expected = naive_matmul(&naive_matmul(&full, &dense(&x)), &naive_adjoint(&full));
    assert!(max_diff_op(&local, &expected) < 1e-13);
}

#[test]
fn trace_norm_matches_singular_values() {
    let mut r = seeded(8);
    let x = random_matrix(&[5], &mut r);
    assert!((x.trace_norm() - trace_norm_oracle(&x)).abs() < 1e-10);
    let h = x.hermitian_part();
    assert!((h.trace_norm() - trace_norm_oracle(&h)).abs() < 1e-10);
    let (ev, res) = h.eigenvalues_hermitian().unwrap();
    assert!(res < 1e-12);
    assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    let sum: f64 = ev.iter().sum();
    assert!((sum - h.trace().re).abs() < 1e-10);
}

#[test]
fn eigenvalues_reject_non_hermitian() {
    let mut r = seeded(9);
    let x = random_matrix(&[4], &mut r);
    assert!(matches!(x.eigenvalues_hermitian(), Err(Error::NotHermitian { .. })));
}

#[test]
fn isometry_check() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h: Operator = ComplexOperator::new(vec![2], vec![2], vec![c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]).unwrap();
    assert!(h.is_isometry(1e-12));
    let v: Operator = ComplexOperator::new(vec![2], vec![1], vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
    assert!(v.is_isometry(1e-12));
    assert!(!h.scale_real(2.0).is_isometry(1e-6));
}

#[test]
fn dump_round_trips_exactly() {
    let mut r = seeded(10);
    let x = random_matrix(&[2, 3], &mut r);
    let text = write_operator(&x);
    let y: Operator = read_operator(&text).unwrap();
    assert_eq!(x, y);
    assert!(read_operator::<f64>("operator v2\n").is_err());
}

#[test]
fn states_validate_layout_and_norm() {
    let layout = Layout::new([("A", 2), ("E", 3)]).unwrap();
    assert_eq!(layout.total_dim(), 6);
    assert_eq!(layout.position("E").unwrap(), 1);
    assert!(layout.position("B").is_err());
    assert!(Layout::new([("A", 2), ("A", 2)]).is_err());
    let bad = vec![c(1.0, 0.0); 6];
    assert!(RegisterState::pure(layout.clone(), bad.clone(), true).is_err());
    let unnorm = RegisterState::pure(layout.clone(), bad, false).unwrap();
    assert!((unnorm.norm() - 6f64.sqrt()).abs() < 1e-12);
    let b = RegisterState::<f64>::basis(layout.clone(), 4).unwrap();
    let rho = b.density().unwrap();
    assert_eq!(rho.get(4, 4), c(1.0, 0.0));
    let mixed = RegisterState::mixed(layout.clone(), rho, true).unwrap();
    assert!((mixed.norm() - 1.0).abs() < 1e-12);
    let neg: Operator = ComplexOperator::identity(&[2, 3]).unwrap().scale_real(-1.0);
    assert!(RegisterState::mixed(layout, neg, false).is_err());
}

#[test]
fn flatten_is_row_major_with_first_register_most_significant() {
    let dims = [2, 3, 4];
    assert_eq!(flatten(&[1, 0, 0], &dims), 12);
    assert_eq!(flatten(&[0, 1, 0], &dims), 4);
    assert_eq!(flatten(&[0, 0, 1], &dims), 1);
    let mut d = [0; 3];
    unflatten(23, &dims, &mut d);
    assert_eq!(d, [1, 2, 3]);
}
