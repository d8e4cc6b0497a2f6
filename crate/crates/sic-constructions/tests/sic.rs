use lineset_core::{angle, gram_degree_set, CMatrix, Complex64, LineSet};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use sic_constructions::*;

fn close(a: &CMatrix, b: &CMatrix) -> bool {
    (a - b).norm() < 1e-9
}

fn proportional(a: &CMatrix, b: &CMatrix) -> bool {
    let tr: Complex64 = (a.adjoint() * b).trace();
    let n = a.nrows() as f64;
    (tr.norm() - n).abs() < 1e-9
}

#[test]
fn identity_and_shift() {
    for d in 2..8 {
        assert!(close(&displacement(d, 0, 0), &CMatrix::identity(d, d)));
        let x1 = displacement(d, 1, 0);
        for k in 0..d {
            assert_eq!(x1[((k + 1) % d, k)], Complex64::new(1.0, 0.0));
        }
    }
}

#[test]
fn displacements_are_unitary_and_distinct_mod_phase() {
    for d in 2..7 {
        let ops = DisplacementGroup::Cyclic(d).operators();
        assert_eq!(ops.len(), d * d);
        for (i, a) in ops.iter().enumerate() {
            assert!(close(&(a.adjoint() * a), &CMatrix::identity(d, d)));
            for b in &ops[i + 1..] {
                assert!(!proportional(a, b));
            }
        }
    }
}

#[test]
fn commutation_criterion() {
    let (a, b) = (displacement(5, 1, 2), displacement(5, 2, 4));
    assert!(close(&(&a * &b), &(&b * &a)));
    for d in 2..8 {
        for j in 0..d {
            for k in 0..d {
                for jp in 0..d {
                    for kp in 0..d {
                        let (p, q) = (displacement(d, j, k), displacement(d, jp, kp));
                        let commute = close(&(&p * &q), &(&q * &p));
                        assert_eq!(commute, (jp * k) % d == (j * kp) % d, "d={d} ({j},{k}) ({jp},{kp})");
                    }
                }
            }
        }
    }
}

#[test]
fn basis_vector_orbit_collapses() {
    let v = FiducialCandidate::user(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
    let x = wh_orbit(&v, 1e-9).unwrap();
    assert_eq!(x.len(), 2);
    assert!(!verify_sic(&x).unwrap().is_sic);
}

#[test]
fn builtin_qubit_fiducial() {
    let v = builtin_fiducial(2).unwrap();
    assert!((v.vector[0].norm_sqr() - (3.0 + 3f64.sqrt()) / 6.0).abs() < 1e-12);
    let x = wh_orbit(&v, 1e-9).unwrap();
    assert_eq!(x.len(), 4);
    let r = verify_sic(&x).unwrap();
    assert!(r.is_sic);
    assert!((r.alpha - 1.0 / 3.0).abs() < 1e-9);
    assert!(r.strength >= 2);
}

#[test]
fn builtin_qutrit_fiducial() {
    let v = builtin_fiducial(3).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(v.vector, vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0), Complex64::new(0.0, 0.0)]);
    let r = verify_sic(&wh_orbit(&v, 1e-9).unwrap()).unwrap();
    assert!(r.is_sic);
    assert_eq!(r.count, 9);
    assert!((r.alpha - 0.25).abs() < 1e-9);
}

#[test]
fn hoggar_lines() {
    let v = builtin_fiducial(8).unwrap();
    assert_eq!(v.group, DisplacementGroup::BinaryTriple);
    assert!((v.vector.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12);
    let x = wh_orbit(&v, 1e-9).unwrap();
    assert_eq!(x.len(), 64);
    let deg = gram_degree_set(&x).unwrap();
    assert_eq!(deg.s, 1);
    assert!((deg.angles[0] - 1.0 / 9.0).abs() < 1e-9);
    let r = verify_sic(&x).unwrap();
    assert!(r.is_sic && r.strength >= 2);
}

#[test]
fn unsupported_builtin() {
    assert_eq!(builtin_fiducial(5).unwrap_err(), SicError::UnsupportedDimension(5));
}

#[test]
fn standard_basis_is_not_sic() {
    let x = LineSet::from_bases(&[CMatrix::identity(3, 3)], 1e-9).unwrap();
    assert!(!verify_sic(&x).unwrap().is_sic);
}

#[test]
fn appleby_seven_and_nineteen() {
    for d in [7, 19] {
        let c = appleby_candidates(d, 1e-9).unwrap();
        assert!(c.iter().any(|c| c.report.is_sic), "d = {d}");
        for cand in c.iter().filter(|c| c.report.is_sic) {
            assert!(cand.report.strength >= 2);
        }
        for cand in &c {
            assert!(cand.residual.abs() <= 1e-10);
        }
    }
}

#[test]
fn appleby_five_has_no_fiducial() {
    let c = appleby_candidates(5, 1e-9).unwrap();
    assert!(c.iter().all(|c| !c.report.is_sic));
}

#[test]
fn appleby_other_odd_dimensions() {
    for d in (9..=31).step_by(2).filter(|&d| d != 19) {
        let c = appleby_candidates(d, 1e-9).unwrap();
        assert!(c.iter().all(|c| !c.report.is_sic), "d = {d}");
        assert!(c.iter().all(|c| c.residual.abs() <= 1e-10));
    }
}

#[test]
fn appleby_three_degenerates_to_cubic() {
    let q = appleby_quartic(3);
    assert!(q[4].abs() < 1e-15 && q[2].abs() < 1e-15);
    let c = appleby_candidates(3, 1e-9).unwrap();
    assert!(c.iter().all(|c| c.residual.abs() <= 1e-10));
    assert!(c.iter().any(|c| matches!(c.candidate.source, FiducialSource::Appleby { y, .. } if (y + 1.0).abs() < 1e-9)));
}

#[test]
fn appleby_rejects_even_dimension() {
    assert_eq!(appleby_candidates(4, 1e-9).unwrap_err(), SicError::NeedOddDimension(4));
}

#[test]
fn quartic_matches_direct_evaluation() {
    for d in [3usize, 5, 7, 19, 101] {
        let (a, b) = appleby_amplitudes(d);
        let q = appleby_quartic(d);
        for k in 0..=20 {
            let y = -1.0 + k as f64 / 10.0;
            let direct = (2.0 * b * y + (d as f64 - 1.0) * a * y * y - a).powi(2) + 4.0 * (1.0 - y * y) * (b - a * y).powi(2)
                - 1.0 / (a * a * (d as f64 + 1.0));
            let poly = q.iter().rev().fold(0.0, |acc, c| acc * y + c);
            assert!((direct - poly).abs() < 1e-12);
        }
    }
}

#[test]
fn root_finder_handles_degree_drop() {
    // (y − 0.5)(y + 0.25) with vanishing higher coefficients.
    let r = real_roots_in_unit_interval(&[-0.125, -0.25, 1.0, 0.0, 0.0]);
    assert_eq!(r.len(), 2);
    assert!((r[0] + 0.25).abs() < 1e-12 && (r[1] - 0.5).abs() < 1e-12);
    assert!(real_roots_in_unit_interval(&[4.0, 0.0, -1.0]).is_empty());
}

#[test]
fn jacobi_symbol_matches_euler_criterion() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        for x in 0..p {
            let e = (0..(p - 1) / 2).fold(1u64, |acc, _| acc * x % p);
            let want = if x == 0 { 0 } else if e == 1 { 1 } else { -1 };
            assert_eq!(jacobi_symbol(x as i64, p), want, "({x}|{p})");
        }
    }
    for x in -20i64..40 {
        assert_eq!(jacobi_symbol(x, 15), jacobi_symbol(x, 3) * jacobi_symbol(x, 5));
        assert_eq!(jacobi_symbol(x, 45), jacobi_symbol(x, 3).pow(2) * jacobi_symbol(x, 5));
    }
}

#[test]
fn almost_flat_branches() {
    let [minus, plus] = almost_flat_params(7).unwrap();
    assert!((minus.a2 - (1.0 - 1.0 / 8f64.sqrt()) / 7.0).abs() < 1e-15);
    let (a, b) = appleby_amplitudes(7);
    assert!((minus.a2 - a * a).abs() < 1e-15 && (minus.b2 - b * b).abs() < 1e-15);
    assert!(minus.feasible && !plus.feasible);
    for d in 2..40 {
        for br in almost_flat_params(d).unwrap() {
            assert!(((d as f64 - 1.0) * br.a2 + br.b2 - 1.0).abs() < 1e-12);
        }
    }
}

/// Gram matrix of `{v_i v_i*} ∪ {e_l e_l*}` with the block pattern of an
/// almost-flat fiducial orbit.
fn block_gram(d: usize, a: f64, b: f64) -> DMatrix<f64> {
    let al = 1.0 / (d as f64 + 1.0);
    let n = d * d + d;
    DMatrix::from_fn(n, n, |i, j| {
        let (bi, bj) = (i / d, j / d);
        let (ri, rj) = (i % d, j % d);
        let last = d;
        match (bi == last, bj == last) {
            (true, true) => (i == j) as u8 as f64,
            (false, false) if i == j => 1.0,
            (false, false) => al,
            _ => {
                if ri == rj {
                    b
                } else {
                    a
                }
            }
        }
    })
}

#[test]
fn almost_flat_rank_condition_in_dimension_three() {
    let d = 3;
    for br in almost_flat_params(d).unwrap() {
        let g = block_gram(d, br.a2, br.b2);
        let ev = g.symmetric_eigen().eigenvalues;
        let rank = ev.iter().filter(|e| e.abs() > 1e-9).count();
        assert!(rank <= d * d, "rank {rank}");
    }
    let off = block_gram(d, 0.3, 0.4);
    let rank = off.symmetric_eigen().eigenvalues.iter().filter(|e| e.abs() > 1e-9).count();
    assert!(rank > d * d);
}

fn sign_variant(s1: f64, s2: f64) -> Vec<Complex64> {
    let r3 = 3f64.sqrt();
    let k = 1.0 / 6f64.sqrt();
    vec![
        Complex64::new((3.0 + s1 * r3).sqrt() * k, 0.0),
        Complex64::from_polar(s2 * (3.0 - s1 * r3).sqrt() * k, std::f64::consts::FRAC_PI_4),
    ]
}

#[test]
fn qubit_sign_choices_agree() {
    let spectra: Vec<Vec<usize>> = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .iter()
        .map(|&(s1, s2)| {
            let x = wh_orbit(&FiducialCandidate::user(sign_variant(s1, s2)).unwrap(), 1e-9).unwrap();
            let r = gram_degree_set(&x).unwrap();
            assert!((r.angles[0] - 1.0 / 3.0).abs() < 1e-9);
            r.multiplicities
        })
        .collect();
    assert!(spectra.windows(2).all(|w| w[0] == w[1]));
}

fn unit_vector(parts: &[(f64, f64)]) -> Vec<Complex64> {
    let v: Vec<Complex64> = parts.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbit_is_displacement_invariant(d in 2usize..6, parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6), j in 0usize..6, k in 0usize..6) {
        let v = unit_vector(&parts[..d]);
        prop_assume!(v.iter().all(|z| z.is_finite()));
        let x = wh_orbit(&FiducialCandidate::user(v).unwrap(), 1e-9).unwrap();
        for i in 0..x.len() {
            prop_assert!((angle(x.vector(i), x.vector(i)) - 1.0).abs() < 1e-12);
        }
        let op = displacement(d, j % d, k % d);
        for i in 0..x.len() {
            let w: Vec<Complex64> = (&op * DVector::from_column_slice(x.vector(i))).iter().copied().collect();
            prop_assert!((0..x.len()).any(|t| angle(x.vector(t), &w) > 1.0 - 1e-9));
        }
    }

    #[test]
    fn sic_implies_two_design(d in prop::sample::select(vec![2usize, 3, 8]), phase in 0.0f64..6.3) {
        let mut v = builtin_fiducial(d).unwrap();
        v.vector.iter_mut().for_each(|z| *z *= Complex64::from_polar(1.0, phase));
        let r = verify_sic(&wh_orbit(&v, 1e-9).unwrap()).unwrap();
        prop_assert!(r.is_sic);
        prop_assert!(r.strength >= 2);
    }
}
