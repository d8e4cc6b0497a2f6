//! Plain and relative difference sets, their character lines and the
//! semi-regular relative difference set route to mutually unbiased bases.

use std::collections::BTreeSet;

use finite_algebra::{prime_power, AbelianGroup, GaloisField, GaloisRing, GroupAlgebraElement};
use lineset_core::{CMatrix, Field, LineSet};
use mub_constructions::{MubFamily, Provenance, SemifieldTable};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::GgcError;

/// Largest group for which the excluded subgroup is searched for.
pub const SUBGROUP_SEARCH_LIMIT: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DifferenceSetKind {
    Plain { v: usize, k: usize, lambda: i64 },
    Relative { m: usize, n: usize, k: usize, lambda: i64 },
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceSetReport {
    pub kind: DifferenceSetKind,
    pub excluded_subgroup: Option<Vec<usize>>,
    /// `DD⁻¹` in `Z[G]`.
    pub difference_multiset: GroupAlgebraElement,
}

impl DifferenceSetReport {
    /// Relative with `m = k`.
    pub fn is_semi_regular(&self) -> bool {
        matches!(self.kind, DifferenceSetKind::Relative { m, k, .. } if m == k)
    }
}

fn check_subset(g: &AbelianGroup, d: &[usize]) -> Result<(), GgcError> {
    let mut seen = BTreeSet::new();
    for &x in d {
        if x >= g.order() {
            return Err(GgcError::BadElement(x));
        }
        if !seen.insert(x) {
            return Err(GgcError::RepeatedElement(x));
        }
    }
    Ok(())
}

/// Common value of `e` on `elems`, if any (`Some(0)` on an empty list).
fn constant_on(e: &GroupAlgebraElement, elems: impl Iterator<Item = usize>) -> Option<i64> {
    let mut value = None;
    for g in elems {
        let c = e.coefficient(g);
        match value {
            None => value = Some(c),
            Some(v) if v != c => return None,
            _ => {}
        }
    }
    Some(value.unwrap_or(0))
}

fn relative_fit(g: &AbelianGroup, e: &GroupAlgebraElement, n: &[usize]) -> Option<i64> {
    let members: BTreeSet<usize> = n.iter().copied().collect();
    if n.iter().any(|&x| x != 0 && e.coefficient(x) != 0) {
        return None;
    }
    constant_on(e, g.elements().filter(|x| !members.contains(x)))
}

/// Matches `DD⁻¹` against `k·1 + λ(G∖{1})` and then `k·1 + λ(G∖N)`.
/// Without `n`, every subgroup is tried when `|G| ≤ 512`.
pub fn classify_difference_set(g: &AbelianGroup, d: &[usize], n: Option<&[usize]>) -> Result<DifferenceSetReport, GgcError> {
    check_subset(g, d)?;
    if let Some(n) = n {
        check_subset(g, n)?;
        if !g.is_subgroup(n) {
            return Err(GgcError::NotSubgroup);
        }
    }
    let ds = GroupAlgebraElement::from_subset(g, d);
    let e = &ds * &ds.inverse();
    let k = d.len();
    let v = g.order();
    let report = |kind, excluded_subgroup| DifferenceSetReport { kind, excluded_subgroup, difference_multiset: e.clone() };
    let relative = |n: &[usize], lambda| {
        let mut sorted = n.to_vec();
        sorted.sort_unstable();
        report(DifferenceSetKind::Relative { m: v / n.len(), n: n.len(), k, lambda }, Some(sorted))
    };
    match n {
        Some(n) if n.len() > 1 => {
            return Ok(match relative_fit(g, &e, n) {
                Some(lambda) => relative(n, lambda),
                None => report(DifferenceSetKind::None, None),
            });
        }
        _ => {}
    }
    if let Some(lambda) = constant_on(&e, g.elements().skip(1)) {
        return Ok(report(DifferenceSetKind::Plain { v, k, lambda }, None));
    }
    if n.is_none() && v <= SUBGROUP_SEARCH_LIMIT {
        for h in g.subgroups().into_iter().filter(|h| h.len() > 1 && h.len() < v && v.is_multiple_of(h.len())) {
            if let Some(lambda) = relative_fit(g, &e, &h) {
                return Ok(relative(&h, lambda));
            }
        }
    }
    Ok(report(DifferenceSetKind::None, None))
}

fn restricted_character(g: &AbelianGroup, a: usize, d: &[usize]) -> Vec<Complex64> {
    let s = 1.0 / (d.len() as f64).sqrt();
    d.iter().map(|&x| g.character(a, x) * s).collect()
}

fn field_of(vectors: &[Vec<Complex64>]) -> Field {
    if vectors.iter().flatten().all(|z| z.im.abs() < 1e-12) {
        Field::Real
    } else {
        Field::Complex
    }
}

/// `v_a = (χ_a(x))_{x ∈ D}/√|D|` for every `a ∈ G`, in element order.
pub fn diffset_lines(g: &AbelianGroup, d: &[usize], tol: f64) -> Result<LineSet, GgcError> {
    check_subset(g, d)?;
    let span = g.span(d).len();
    if d.is_empty() || span != g.order() {
        return Err(GgcError::DoesNotGenerate { span, order: g.order() });
    }
    let vectors: Vec<Vec<Complex64>> = g.elements().map(|a| restricted_character(g, a, d)).collect();
    Ok(LineSet::new(d.len(), field_of(&vectors), vectors, None, tol)?)
}

/// `D = {i mod q²+q+1 : tr(θ^i) = 0}` for the trace `GF(q³) → GF(q)` and the
/// default primitive element `θ` of `GF(q³)`.
pub fn singer_difference_set(q: u64) -> Result<(AbelianGroup, Vec<usize>), GgcError> {
    let (p, m) = prime_power(q).ok_or(GgcError::Algebra(finite_algebra::AlgebraError::NotPrimePower(q)))?;
    let f = GaloisField::new(p as u32, 3 * m, None)?;
    let v = (q * q + q + 1) as usize;
    let d: Vec<usize> = (0..v).filter(|&i| f.relative_trace(f.exp(i as u64), m) == 0).collect();
    Ok((AbelianGroup::cyclic(v)?, d))
}

/// A group with a subset and an optional excluded subgroup, stored as element indices.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffSetInput {
    pub group: AbelianGroup,
    pub d: Vec<usize>,
    pub n: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DiffSetFile {
    orders: Vec<usize>,
    #[serde(rename = "D")]
    d: Vec<Vec<usize>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    n: Option<Vec<Vec<usize>>>,
}

impl DiffSetInput {
    /// Parses `{orders:[...], D:[[coords],...], N:[[coords],...]?}`.
    pub fn from_json(text: &str) -> Result<Self, GgcError> {
        let file: DiffSetFile = serde_json::from_str(text).map_err(|e| GgcError::Parse(e.to_string()))?;
        let group = AbelianGroup::new(&file.orders)?;
        let index = |c: &Vec<usize>| -> Result<usize, GgcError> {
            if c.len() != file.orders.len() || c.iter().zip(&file.orders).any(|(x, n)| x >= n) {
                return Err(GgcError::Parse(format!("coordinates {c:?} do not fit orders {:?}", file.orders)));
            }
            Ok(group.index(c))
        };
        let d = file.d.iter().map(index).collect::<Result<Vec<_>, _>>()?;
        let n = file.n.as_ref().map(|n| n.iter().map(index).collect::<Result<Vec<_>, _>>()).transpose()?;
        check_subset(&group, &d)?;
        Ok(DiffSetInput { group, d, n })
    }

    pub fn to_json(&self) -> String {
        let coords = |s: &[usize]| s.iter().map(|&x| self.group.coords(x)).collect();
        let file = DiffSetFile { orders: self.group.orders().to_vec(), d: coords(&self.d), n: self.n.as_deref().map(coords) };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn classify(&self) -> Result<DifferenceSetReport, GgcError> {
        classify_difference_set(&self.group, &self.d, self.n.as_deref())
    }
}

/// The Hughes group of an odd commutative semifield in coordinates
/// `(a, b − a∘a/2) ∈ Z_p^{2m}`, with `D = {G_{a,0}}` and `N = {G_{0,b}}`.
pub fn semifield_rds(t: &SemifieldTable) -> Result<DiffSetInput, GgcError> {
    let (p, m) = (t.p(), t.m() as usize);
    if p == 2 {
        return Err(GgcError::Mub(mub_constructions::MubError::EvenCharacteristic(2)));
    }
    let group = AbelianGroup::new(&vec![p as usize; 2 * m])?;
    let half = p.div_ceil(2);
    let point = |a: u32, b: &[u32]| {
        let mut c: Vec<usize> = t.coords(a).into_iter().map(|x| x as usize).collect();
        c.extend(b.iter().map(|&x| x as usize));
        group.index(&c)
    };
    let d = (0..t.order())
        .map(|a| {
            let b: Vec<u32> = t.coords(t.mul(a, a)).into_iter().map(|c| (p - c * half % p) % p).collect();
            point(a, &b)
        })
        .collect();
    let n = (0..t.order()).map(|b| point(0, &t.coords(b))).collect();
    Ok(DiffSetInput { group, d, n: Some(n) })
}

/// The Hughes group of `GF(2^m)` realized additively on `GR(4^m) ≅ Z₄^m`
/// via `G_{a,b} ↦ â + 2·(√b)^`: `D` is the Teichmüller set and `N = 2R`.
pub fn galois_ring_rds(m: u32) -> Result<DiffSetInput, GgcError> {
    let r = GaloisRing::new(m)?;
    let group = AbelianGroup::new(&vec![4; m as usize])?;
    let index = |z: u32| group.index(&r.coeffs(z).into_iter().map(|c| c as usize).collect::<Vec<_>>());
    let d = r.teichmuller_set().iter().map(|&z| index(z)).collect();
    let n = r.elements().filter(|&z| r.coeffs(z).iter().all(|c| c % 2 == 0)).map(index).collect();
    Ok(DiffSetInput { group, d, n: Some(n) })
}

/// Characters restricted to `D`, grouped into the `n` cosets of the
/// `N`-trivial characters, after the standard basis.
pub fn rds_to_mubs(g: &AbelianGroup, d: &[usize], n: &[usize]) -> Result<MubFamily, GgcError> {
    let report = classify_difference_set(g, d, Some(n))?;
    let DifferenceSetKind::Relative { m, n: nn, k, lambda } = report.kind else {
        return Err(GgcError::NotSemiRegular(format!("classification gave {:?}", report.kind)));
    };
    if m != k {
        return Err(GgcError::NotSemiRegular(format!("m = {m} differs from k = {k}")));
    }
    let h: Vec<usize> = g.elements().filter(|&a| n.iter().all(|&x| (g.character(a, x) - Complex64::new(1.0, 0.0)).norm() < 1e-9)).collect();
    let mut assigned = vec![false; g.order()];
    let mut bases = vec![CMatrix::identity(k, k)];
    for a in g.elements() {
        if assigned[a] {
            continue;
        }
        let mut coset: Vec<usize> = h.iter().map(|&x| g.add(a, x)).collect();
        coset.sort_unstable();
        for &c in &coset {
            assigned[c] = true;
        }
        let cols: Vec<Vec<Complex64>> = coset.iter().map(|&c| restricted_character(g, c, d)).collect();
        bases.push(CMatrix::from_fn(k, k, |i, j| cols[j][i]));
    }
    let prov = Provenance::new("rds").with("orders", format!("{:?}", g.orders())).with("k", k).with("n", nn).with("lambda", lambda);
    Ok(MubFamily::new(bases, prov)?)
}
