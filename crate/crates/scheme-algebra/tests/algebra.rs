use group_graph_code::{diffset_lines, singer_difference_set};
use jacobi_bounds::JacobiFamily;
use lineset_core::{Complex64, Field, LineSet};
use mub_constructions::wf_mubs;
use nalgebra::DMatrix;
use proptest::prelude::*;
use scheme_algebra::*;
use sic_constructions::{builtin_fiducial, wh_orbit};

const TOL: f64 = 1e-9;

fn real_lines(d: usize, rows: &[Vec<f64>]) -> LineSet {
    let vectors = rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
    LineSet::from_unnormalized(d, Field::Real, vectors, None, TOL).unwrap()
}

fn icosahedron() -> LineSet {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    real_lines(
        3,
        &[
            vec![0.0, 1.0, phi],
            vec![0.0, 1.0, -phi],
            vec![1.0, phi, 0.0],
            vec![1.0, -phi, 0.0],
            vec![phi, 0.0, 1.0],
            vec![-phi, 0.0, 1.0],
        ],
    )
}

fn mercedes() -> LineSet {
    let rows: Vec<Vec<f64>> = (0..3).map(|k| k as f64 * std::f64::consts::PI / 3.0).map(|t| vec![t.cos(), t.sin()]).collect();
    real_lines(2, &rows)
}

#[test]
fn mub_jacobi_idempotents_are_orthogonal() {
    let x = wf_mubs(3).unwrap().to_lineset(TOL).unwrap();
    let e = jacobi_idempotents(&x, &JacobiFamily::new(3).unwrap(), 1).unwrap();
    assert!(e.max_residual <= 1e-8, "{}", e.max_residual);
    let n = x.len();
    let j = DMatrix::from_element(n, n, 1.0 / n as f64);
    assert!((&e.matrices[0] - j).amax() < 1e-14);
    assert!((e.traces[0] - 1.0).abs() < 1e-12 && (e.traces[1] - 8.0).abs() < 1e-9);
}

#[test]
fn sic_two_idempotents_resolve_the_identity() {
    let x = wh_orbit(&builtin_fiducial(2).unwrap(), TOL).unwrap();
    let e = jacobi_idempotents(&x, &JacobiFamily::new(2).unwrap(), 2).unwrap();
    assert!(e.residuals[0][0] < 1e-12 && e.residuals[1][1] < 1e-9 && e.residuals[0][1] < 1e-9);
    assert!((e.traces[0] + e.traces[1] - 4.0).abs() < 1e-9);
    let sum = &e.matrices[0] + &e.matrices[1];
    assert!((sum - DMatrix::<f64>::identity(4, 4)).amax() < 1e-9);
    assert!(e.residuals[2][2] > 1e-3);
}

#[test]
fn mub_gram_matrices_satisfy_a_quadratic() {
    for q in [2u64, 3, 4, 5, 7] {
        let family = wf_mubs(q).unwrap();
        for m in [2, family.len()] {
            let x = family.clone().truncate(m).to_lineset(TOL).unwrap();
            let r = gram_algebra_check(&x).unwrap();
            assert!(r.closed, "q={q} m={m}: {}", r.closure_residual);
            assert!(r.quadratic_residual < 1e-10);
            assert!((r.quadratic.0 - m as f64).abs() < 1e-9 && r.quadratic.1.abs() < 1e-9);
        }
    }
}

#[test]
fn singer_gram_algebra_is_spanned_by_i_and_g() {
    for q in [2u64, 3] {
        let (g, d) = singer_difference_set(q).unwrap();
        let x = diffset_lines(&g, &d, TOL).unwrap();
        let r = gram_algebra_check(&x).unwrap();
        assert!(r.closed && r.angles.len() == 1);
        let dim = (q + 1) as f64;
        assert!((r.quadratic.0 - x.len() as f64 / dim).abs() < 1e-9);
    }
}

#[test]
fn generic_lines_leave_the_gram_algebra() {
    let x = real_lines(3, &[vec![1.0, 0.2, 0.1], vec![0.3, 1.0, -0.4], vec![0.5, -0.7, 1.0], vec![0.9, 0.1, 0.6], vec![-0.2, 0.8, 0.3]]);
    let r = gram_algebra_check(&x).unwrap();
    assert!(!r.closed && r.closure_residual > 1e-3);
    assert!(r.quadratic_residual > 1e-3);
}

#[test]
fn icosahedron_seidel_spectrum() {
    let x = icosahedron();
    let r = seidel_analysis(&x).unwrap();
    assert!((r.alpha_angle - 0.2).abs() < 1e-12);
    assert!(r.two_eigenvalue && r.relative_tight);
    let s5 = 5f64.sqrt();
    assert_eq!(r.spectrum.len(), 2);
    assert!((r.spectrum[0].0 + s5).abs() < 1e-9 && r.spectrum[0].1 == 3);
    assert!((r.spectrum[1].0 - s5).abs() < 1e-9 && r.spectrum[1].1 == 3);
    assert_eq!(r.spectrum_matches, Some(true));
    let g = x.gram().map(|z| z.re);
    let rebuilt = DMatrix::<f64>::identity(6, 6) + r.matrix() * r.alpha_inner;
    assert!((g - rebuilt).amax() < 1e-12);
}

#[test]
fn three_lines_in_the_plane() {
    let r = seidel_analysis(&mercedes()).unwrap();
    assert!((r.alpha_inner - 0.5).abs() < 1e-12);
    assert!(r.two_eigenvalue && r.relative_tight);
    assert!((r.spectrum[0].0 + 2.0).abs() < 1e-12 && r.spectrum[0].1 == 1);
    assert!((r.spectrum[1].0 - 1.0).abs() < 1e-12 && r.spectrum[1].1 == 2);
    assert_eq!(r.spectrum_matches, Some(true));
    for (i, row) in r.seidel.iter().enumerate() {
        assert_eq!(row[i], 0);
        for (j, &v) in row.iter().enumerate() {
            assert_eq!(v, r.seidel[j][i]);
        }
    }
}

#[test]
fn seidel_preconditions() {
    let basis = real_lines(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
    assert_eq!(seidel_analysis(&basis), Err(SchemeError::ZeroAngle));
    let sic2 = wh_orbit(&builtin_fiducial(2).unwrap(), TOL).unwrap();
    assert_eq!(seidel_analysis(&sic2), Err(SchemeError::NotReal));
    let uneven = real_lines(2, &[vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 3.0]]);
    assert!(matches!(seidel_analysis(&uneven), Err(SchemeError::NotEquiangular(_))));
}

#[test]
fn tetrahedral_quadruple_is_tight() {
    let x = real_lines(3, &[vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0], vec![-1.0, -1.0, 1.0]]);
    let r = seidel_analysis(&x).unwrap();
    assert!((r.relative_bound.unwrap() - 4.0).abs() < 1e-9 && r.relative_tight);
    assert_eq!(r.spectrum_matches, Some(true));
    assert!((r.spectrum[0].0 + 3.0).abs() < 1e-9 && r.spectrum[0].1 == 1);
}

#[test]
fn part_of_the_icosahedron_is_not_tight() {
    let six = icosahedron();
    let x = LineSet::new(3, Field::Real, six.vectors()[..3].to_vec(), None, TOL).unwrap();
    let r = seidel_analysis(&x).unwrap();
    assert!((r.relative_bound.unwrap() - 6.0).abs() < 1e-9);
    assert!(!r.relative_tight && r.predicted_spectrum.is_none() && r.spectrum_matches.is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn switching_preserves_the_seidel_spectrum(signs in prop::collection::vec(any::<bool>(), 6)) {
        let base = icosahedron();
        let vectors = base.vectors().iter().zip(&signs).map(|(v, &s)| v.iter().map(|z| if s { -z } else { *z }).collect()).collect();
        let x = LineSet::new(3, Field::Real, vectors, None, TOL).unwrap();
        let a = seidel_analysis(&base).unwrap();
        let b = seidel_analysis(&x).unwrap();
        for ((ea, ma), (eb, mb)) in a.spectrum.iter().zip(&b.spectrum) {
            prop_assert!((ea - eb).abs() < 1e-9 && ma == mb);
        }
    }
}
