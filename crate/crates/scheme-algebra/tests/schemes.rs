use group_graph_code::{diffset_lines, singer_difference_set};
use jacobi_bounds::JacobiFamily;
use lineset_core::{Complex64, Field, LineSet};
use mub_constructions::{alltop_mubs, wf_mubs};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scheme_algebra::*;
use sic_constructions::{builtin_fiducial, wh_orbit};

const TOL: f64 = 1e-9;

fn fam(d: usize) -> JacobiFamily {
    JacobiFamily::new(d as u32).unwrap()
}

fn wf(q: u64) -> LineSet {
    wf_mubs(q).unwrap().to_lineset(TOL).unwrap()
}

fn sic(d: usize) -> LineSet {
    wh_orbit(&builtin_fiducial(d).unwrap(), TOL).unwrap()
}

fn singer(q: u64) -> LineSet {
    let (g, d) = singer_difference_set(q).unwrap();
    diffset_lines(&g, &d, TOL).unwrap()
}

fn random_lines(d: usize, n: usize, seed: u64) -> LineSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors =
        (0..n).map(|_| (0..d).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()).collect();
    LineSet::from_unnormalized(d, Field::Complex, vectors, None, TOL).unwrap()
}

/// `p_ij(k)` by counting the `c` with `a ~_i c ~_j b` for one pair in `R_k`.
fn counted_intersections(x: &LineSet) -> Vec<Vec<Vec<f64>>> {
    let n = x.len();
    let (angles, rel) = relation_masks(x).unwrap();
    let s = angles.len();
    let mut out = vec![vec![vec![0.0; s + 1]; s + 1]; s + 1];
    for k in 0..=s {
        let idx = rel.iter().position(|&r| r == k).unwrap();
        let (a, b) = (idx / n, idx % n);
        for c in 0..n {
            out[rel[a * n + c]][rel[c * n + b]][k] += 1.0;
        }
    }
    out
}

fn assert_close(a: &[Vec<f64>], b: &[Vec<f64>]) {
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            assert!((x - y).abs() < 1e-8, "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn complete_mubs_give_the_complete_multipartite_scheme() {
    let x = wf(3);
    let r = scheme_from_lineset(&x, &fam(3)).unwrap();
    assert_eq!(r.classes, 2);
    assert_eq!(r.valencies, vec![1, 2, 9]);
    assert!(r.angles[0].abs() < 1e-12 && (r.angles[1] - 1.0 / 3.0).abs() < 1e-12);
    assert!(r.closed && r.predicted_closed && r.certified());
    let sp = r.spectral.as_ref().unwrap();
    assert_eq!(sp.multiplicities, vec![1, 3, 8]);
    assert_close(&sp.p, &[vec![1.0, 2.0, 9.0], vec![1.0, 2.0, -3.0], vec![1.0, -1.0, 0.0]]);
}

#[test]
fn equiangular_sets_give_the_complete_graph() {
    for (x, d) in [(sic(2), 2), (sic(3), 3), (singer(2), 3), (singer(3), 4)] {
        let v = x.len();
        let r = scheme_from_lineset(&x, &fam(d)).unwrap();
        assert_eq!(r.classes, 1);
        assert_eq!(r.valencies, vec![1, v - 1]);
        assert!(r.closure_residual <= 1e-12, "{}", r.closure_residual);
        let sp = r.spectral.as_ref().unwrap();
        assert_eq!(sp.multiplicities, vec![1, v - 1]);
        assert_close(&sp.p, &[vec![1.0, (v - 1) as f64], vec![1.0, -1.0]]);
        assert!(r.certified());
    }
}

#[test]
fn random_lines_do_not_close() {
    let x = random_lines(3, 5, 7);
    let r = scheme_from_lineset(&x, &fam(3)).unwrap();
    assert_eq!(r.classes, 10);
    assert!(!r.closed && r.closure_residual > 0.1);
    assert!(r.spectral.is_none());
    assert!(!r.certified());
}

#[test]
fn intersection_numbers_match_direct_counts() {
    for (x, d) in [(wf(4), 4), (wf(5), 5), (alltop_mubs(5).unwrap().to_lineset(TOL).unwrap(), 5), (singer(2), 3)] {
        let r = scheme_from_lineset(&x, &fam(d)).unwrap();
        let counted = counted_intersections(&x);
        for (pi, ci) in r.intersection_numbers.iter().zip(&counted) {
            assert_close(pi, ci);
        }
        let sp = r.spectral.unwrap();
        assert!(sp.reconstruction_residual < 1e-8, "{}", sp.reconstruction_residual);
    }
}

#[test]
fn eigenmatrices_and_krein_parameters() {
    let fixtures = [(wf(2), 2), (wf(3), 3), (wf(4), 4), (wf(5), 5), (sic(2), 2), (sic(3), 3), (sic(8), 8), (singer(2), 3), (singer(3), 4)];
    for (x, d) in fixtures {
        let r = scheme_from_lineset(&x, &fam(d)).unwrap();
        assert!(r.predicted_closed && r.closed);
        let sp = r.spectral.as_ref().unwrap();
        assert_eq!(sp.idempotents, r.classes + 1);
        assert!(sp.pq_residual <= 1e-8 * r.v as f64);
        assert!(sp.min_krein >= -1e-8);
        let q0: Vec<f64> = sp.q[0].clone();
        for (m, q) in sp.multiplicities.iter().zip(q0) {
            assert!((*m as f64 - q).abs() < 1e-8);
        }
        for (k, p) in r.valencies.iter().zip(&sp.p[0]) {
            assert!((*k as f64 - p).abs() < 1e-8);
        }
    }
}

#[test]
fn partial_mub_families_still_close() {
    let x = wf_mubs(5).unwrap().truncate(3).to_lineset(TOL).unwrap();
    let r = scheme_from_lineset(&x, &fam(5)).unwrap();
    assert!(r.certified());
    assert_eq!(r.valencies, vec![1, 4, 10]);
}

#[test]
fn reports_are_deterministic_and_serialize() {
    let x = wf(3);
    let a = scheme_from_lineset(&x, &fam(3)).unwrap();
    let b = scheme_from_lineset(&x, &fam(3)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let json: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(json["classes"], 2);
    assert!(json["spectral"]["krein"].is_array());
    let other = scheme_from_lineset_seeded(&x, &fam(3), 99).unwrap();
    assert_close(&a.spectral.as_ref().unwrap().p, &other.spectral.unwrap().p);
}

fn random_unitary(d: usize, seed: u64) -> lineset_core::CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = lineset_core::CMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    m.qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unions_of_bases_are_certified_schemes(q in prop::sample::select(vec![2u64, 3, 4, 5]), keep in 1usize..7, seed in any::<u64>()) {
        let family = wf_mubs(q).unwrap();
        let m = keep.min(family.len());
        let x = family.truncate(m).to_lineset(TOL).unwrap().apply_unitary(&random_unitary(q as usize, seed)).unwrap();
        let r = scheme_from_lineset(&x, &fam(q as usize)).unwrap();
        prop_assert!(r.certified());
        let sp = r.spectral.unwrap();
        prop_assert!(sp.reconstruction_residual < 1e-8);
        let expected = if m == 1 { vec![1, q as usize - 1] } else { vec![1, m - 1, m * (q as usize - 1)] };
        let mut got = sp.multiplicities.clone();
        got[1..].sort();
        let mut want = expected.clone();
        want[1..].sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn closed_random_sets_satisfy_pq_and_krein(n in 2usize..6, seed in any::<u64>()) {
        let x = random_lines(2, n, seed);
        let r = scheme_from_lineset(&x, &fam(2)).unwrap();
        if let Some(sp) = r.spectral.as_ref() {
            prop_assert!(sp.pq_residual <= 1e-8 * r.v as f64);
            prop_assert!(sp.min_krein >= -1e-8);
        }
        prop_assert_eq!(r.closed, r.closure_residual <= CLOSURE_TOL);
    }
}
