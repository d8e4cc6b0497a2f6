use std::f64::consts::PI;

use finite_algebra::GaloisField;
use jacobi_bounds::JacobiFamily;
use lineset_core::{design_strength, gram_degree_set, verify_mub, CMatrix, Complex64, LineSet};
use mub_constructions::*;

fn lines(f: &MubFamily) -> LineSet {
    f.to_lineset(1e-9).unwrap()
}

fn assert_mub(f: &MubFamily, bases: usize) {
    assert_eq!(f.len(), bases, "{}", f.provenance());
    let r = verify_mub(&lines(f)).unwrap();
    assert!(r.unbiased, "{}: {:?}", f.provenance(), r.failures);
    assert_eq!(r.count, bases);
}

#[test]
fn wf_qubit_matches_direct_evaluation() {
    let f = wf_mubs(2).unwrap();
    assert_mub(&f, 3);
    let s = 0.5f64.sqrt();
    for z in 0..2u32 {
        let b = &f.bases()[1 + z as usize];
        for x in 0..2u32 {
            for y in 0..2u32 {
                let e = (z * x * x + 2 * y * x) % 4;
                let want = Complex64::i().powu(e) * s;
                assert!((b[(x as usize, y as usize)] - want).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn wf_three_uses_cube_roots() {
    let f = wf_mubs(3).unwrap();
    assert_mub(&f, 4);
    for b in &f.bases()[1..] {
        for z in b.iter() {
            let w = z * 3f64.sqrt();
            assert!((w.norm() - 1.0).abs() < 1e-12);
            assert!((w.powu(3) - 1.0).norm() < 1e-9);
        }
    }
}

#[test]
fn wf_prime_powers_are_complete() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32] {
        assert_mub(&wf_mubs(q).unwrap(), q as usize + 1);
    }
}

#[test]
fn wf_nine_is_two_design() {
    let f = wf_mubs(9).unwrap();
    assert_mub(&f, 10);
    let x = lines(&f);
    assert_eq!(x.len(), 90);
    let fam = JacobiFamily::new(9).unwrap();
    let r = design_strength(&x, &fam, 3).unwrap();
    assert!(r.strength >= 2);
}

#[test]
fn wf_designs_have_vanishing_low_pair_sums() {
    for q in [2u64, 3, 4, 5, 7, 8] {
        let x = lines(&wf_mubs(q).unwrap());
        let fam = JacobiFamily::new(q as u32).unwrap();
        let r = design_strength(&x, &fam, 2).unwrap();
        assert!(r.relative[0] <= 1e-8 && r.relative[1] <= 1e-8, "q = {q}: {:?}", r.relative);
    }
}

#[test]
fn wf_rejects_non_prime_powers() {
    assert_eq!(wf_mubs(1).unwrap_err(), MubError::NotPrimePower(1));
    assert_eq!(wf_mubs(6).unwrap_err(), MubError::NotPrimePower(6));
}

#[test]
fn alltop_small_primes() {
    let f5 = alltop_mubs(5).unwrap();
    assert_mub(&f5, 6);
    let f7 = alltop_mubs(7).unwrap();
    assert_mub(&f7, 8);
    let deg = gram_degree_set(&lines(&f7)).unwrap();
    assert_eq!(deg.s, 2);
    assert!(deg.angles[0].abs() < 1e-9 && (deg.angles[1] - 1.0 / 7.0).abs() < 1e-9);
    assert!(alltop_equivalence_probe(&f5).unwrap() < 1e-9);
    assert_mub(&alltop_mubs(25).unwrap(), 26);
}

#[test]
fn alltop_rejects_small_characteristic() {
    assert_eq!(alltop_mubs(3).unwrap_err(), MubError::SmallCharacteristic(3));
    assert_eq!(alltop_mubs(8).unwrap_err(), MubError::SmallCharacteristic(2));
}

#[test]
fn alltop_and_wf_agree_on_degree_sets_and_strength() {
    for q in [5u64, 7] {
        let (a, w) = (lines(&alltop_mubs(q).unwrap()), lines(&wf_mubs(q).unwrap()));
        let (da, dw) = (gram_degree_set(&a).unwrap(), gram_degree_set(&w).unwrap());
        assert_eq!(da.multiplicities, dw.multiplicities);
        assert!(da.angles.iter().zip(&dw.angles).all(|(x, y)| (x - y).abs() < 1e-9));
        let fam = JacobiFamily::new(q as u32).unwrap();
        assert_eq!(design_strength(&a, &fam, 4).unwrap().strength, design_strength(&w, &fam, 4).unwrap().strength);
    }
}

#[test]
fn spin_models_are_type_two_and_unbiased() {
    for n in 2..=12 {
        let f = spin_model_mubs(n).unwrap();
        assert_mub(&f, 3);
        let w = spin_model_matrix(n);
        let wm = w.map(|z| z.inv());
        let prod = &w * wm.transpose();
        assert!((prod - CMatrix::identity(n, n) * Complex64::new(n as f64, 0.0)).norm() < 1e-9);
    }
}

#[test]
fn spin_theta_square_is_primitive() {
    for n in 2..=20usize {
        let w = spin_model_matrix(n);
        let theta2 = w[(1, 0)] * w[(1, 0)];
        let order = (1..=n).find(|&k| (theta2.powu(k as u32) - 1.0).norm() < 1e-9).unwrap();
        assert_eq!(order, n);
    }
}

#[test]
fn spin_two_matches_wf_two() {
    let (s, w) = (lines(&spin_model_mubs(2).unwrap()), lines(&wf_mubs(2).unwrap()));
    let (ds, dw) = (gram_degree_set(&s).unwrap(), gram_degree_set(&w).unwrap());
    assert_eq!(ds.multiplicities, dw.multiplicities);
    assert!(ds.angles.iter().zip(&dw.angles).all(|(x, y)| (x - y).abs() < 1e-12));
}

#[test]
fn tensor_products() {
    let t = tensor_mubs(&wf_mubs(2).unwrap(), &wf_mubs(3).unwrap()).unwrap();
    assert_eq!(t.d(), 6);
    assert_mub(&t, 3);
    let t = tensor_mubs(&wf_mubs(2).unwrap(), &wf_mubs(2).unwrap()).unwrap();
    assert_eq!(t.d(), 4);
    assert_mub(&t, 3);
    let single = MubFamily::new(vec![CMatrix::identity(3, 3)], Provenance::new("identity")).unwrap();
    let t = tensor_mubs(&wf_mubs(5).unwrap(), &single).unwrap();
    assert_eq!((t.d(), t.len()), (15, 1));
}

#[test]
fn semifield_field_tables() {
    let g3 = GaloisField::new(3, 1, None).unwrap();
    assert_mub(&semifield_mubs(&SemifieldTable::from_field(&g3).unwrap()).unwrap(), 4);
    let g9 = GaloisField::new(3, 2, None).unwrap();
    let t9 = SemifieldTable::from_field(&g9).unwrap();
    assert_eq!(t9.identity(), 1);
    let s = semifield_mubs(&t9).unwrap();
    assert_mub(&s, 10);
    let w = wf_mubs(9).unwrap();
    let (ds, dw) = (gram_degree_set(&lines(&s)).unwrap(), gram_degree_set(&lines(&w)).unwrap());
    assert_eq!(ds.multiplicities, dw.multiplicities);
    assert!(ds.angles.iter().zip(&dw.angles).all(|(x, y)| (x - y).abs() < 1e-9));
    for m in s.bases().iter().chain(w.bases()) {
        let inner = s.bases()[1].adjoint() * m;
        let flat = inner.iter().all(|z| (z.norm() - 1.0 / 3.0).abs() < 1e-9);
        let same = inner.iter().all(|z| z.norm() < 1e-9 || (z.norm() - 1.0).abs() < 1e-9);
        assert!(flat || same);
    }
}

#[test]
fn twisted_field_gives_mubs() {
    let g = GaloisField::new(3, 3, None).unwrap();
    let t = SemifieldTable::twisted_field(&g, 1).unwrap();
    assert_mub(&semifield_mubs(&t).unwrap(), 28);
}

#[test]
fn broken_distributivity_is_reported() {
    let g = GaloisField::new(3, 2, None).unwrap();
    let t = SemifieldTable::from_field(&g).unwrap();
    let (a, b) = (3, 5);
    let bad = g.add(t.mul(a, b), 1);
    let mut mult = t.corrupted(a, b, bad);
    mult[(b * 9 + a) as usize] = bad;
    match SemifieldTable::new(3, 2, mult) {
        Err(MubError::Semifield { axiom, witnesses }) => {
            assert!(matches!(axiom, SemifieldAxiom::LeftDistributive | SemifieldAxiom::RightDistributive));
            assert_eq!(witnesses.len(), 3);
        }
        other => panic!("unexpected {other:?}"),
    }
    let asym = t.corrupted(a, b, bad);
    assert!(matches!(SemifieldTable::new(3, 2, asym), Err(MubError::Semifield { axiom: SemifieldAxiom::Commutative, .. })));
}

#[test]
fn semifield_csv_roundtrip() {
    let g = GaloisField::new(5, 1, None).unwrap();
    let t = SemifieldTable::from_field(&g).unwrap();
    let back = SemifieldTable::from_csv(5, 1, &t.to_csv()).unwrap();
    assert_eq!(t, back);
    assert!(matches!(SemifieldTable::from_csv(5, 1, "0,0\n0,1\n"), Err(MubError::BadTable(_))));
}

#[test]
fn char_family_at_one_is_z6_character_table() {
    let one = Complex64::new(1.0, 0.0);
    let h = hadamard6(Hadamard6Family::Char, &[one, one]).unwrap();
    // Rows are indexed by Z₂ × Z₃ characters, columns by elements in the order
    // (0,0),(1,0),(0,1),(1,1),(0,2),(1,2).
    let cols = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)];
    let rows = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)];
    for (i, &(a2, a3)) in rows.iter().enumerate() {
        for (j, &(g2, g3)) in cols.iter().enumerate() {
            let want = Complex64::from_polar(1.0, PI * (a2 * g2) as f64 + 2.0 * PI * (a3 * g3) as f64 / 3.0);
            assert!((h[(i, j)] - want).norm() < 1e-12, "({i},{j})");
        }
    }
}

#[test]
fn sym_and_char_families_are_hadamard() {
    for k in 0..16 {
        let t = Complex64::from_polar(1.0, k as f64 * 0.41);
        let s = Complex64::from_polar(1.0, k as f64 * 1.3);
        hadamard6(Hadamard6Family::Sym, &[t]).unwrap();
        hadamard6(Hadamard6Family::Char, &[s, t]).unwrap();
    }
    let h = hadamard6(Hadamard6Family::Sym, &[Complex64::new(1.0, 0.0)]).unwrap();
    assert!((h.adjoint() * &h - CMatrix::identity(6, 6) * Complex64::new(6.0, 0.0)).norm() < 1e-12);
    let hi = hadamard6(Hadamard6Family::Sym, &[Complex64::i()]).unwrap();
    assert!((hi.transpose() - &hi).norm() < 1e-12);
}

#[test]
fn skew_family_generalizes_isolated_matrix() {
    let d = hadamard6_parameter();
    assert!((d.norm() - 1.0).abs() < 1e-12);
    let h = hadamard6(Hadamard6Family::Skew, &[d * d, d * d, -d.conj()]).unwrap();
    let solved = hadamard6(Hadamard6Family::Skew, &[d * d, d * d]).unwrap();
    assert!((&h - &solved).norm() < 1e-9);
    let iso = hadamard6_d();
    let defect = (iso.adjoint() * &iso - CMatrix::identity(6, 6) * Complex64::new(6.0, 0.0)).norm();
    assert!(defect < 1e-9);
    assert_eq!(haagerup_invariants(&h, 6), haagerup_invariants(&iso, 6));
    let fourier = hadamard6(Hadamard6Family::Char, &[Complex64::new(1.0, 0.0); 2]).unwrap();
    assert_ne!(haagerup_invariants(&h, 6), haagerup_invariants(&fourier, 6));
}

#[test]
fn skew_family_errors() {
    let i = Complex64::i();
    assert!(matches!(hadamard6(Hadamard6Family::Skew, &[i, i]), Err(MubError::Degenerate(_))));
    let s = Complex64::from_polar(1.0, 0.3);
    assert!(matches!(hadamard6(Hadamard6Family::Skew, &[s, s]), Err(MubError::NotUnimodular { name: "u", .. })));
    assert!(matches!(hadamard6(Hadamard6Family::Sym, &[Complex64::new(2.0, 0.0)]), Err(MubError::NotUnimodular { .. })));
}

#[test]
fn hadamard_pairs_are_unbiased_with_identity() {
    let d = hadamard6_parameter();
    let h = hadamard6(Hadamard6Family::Skew, &[d * d, d * d]).unwrap() / Complex64::new(6f64.sqrt(), 0.0);
    assert_mub(&MubFamily::new(vec![CMatrix::identity(6, 6), h], Provenance::new("hadamard6")).unwrap(), 2);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn family(method: usize, q: u64) -> MubFamily {
        match method {
            0 => wf_mubs(q).unwrap(),
            1 => alltop_mubs([5, 7, 11, 13][q as usize % 4]).unwrap(),
            2 => spin_model_mubs(q as usize).unwrap(),
            _ => tensor_mubs(&wf_mubs(2).unwrap(), &wf_mubs([2, 3, 5][q as usize % 3]).unwrap()).unwrap(),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

        #[test]
        fn truncated_families_stay_unbiased(
            method in 0usize..4,
            q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]),
            keep in 1usize..12,
        ) {
            let f = family(method, q);
            let k = keep.min(f.len());
            let t = f.truncate(k);
            let r = verify_mub(&lines(&t)).unwrap();
            prop_assert!(r.unbiased, "{}: {:?}", t.provenance(), r.failures);
            prop_assert_eq!(r.count, k);
        }

        #[test]
        fn spin_matrix_is_type_two(n in 2usize..=24) {
            let w = spin_model_matrix(n);
            let prod = &w * w.map(|z| z.inv()).transpose();
            prop_assert!((prod - CMatrix::identity(n, n) * Complex64::new(n as f64, 0.0)).norm() < 1e-8);
        }
    }
}
