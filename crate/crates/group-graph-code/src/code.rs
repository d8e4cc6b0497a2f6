//! Linear codes over `GF(q)` and `Z₄`: enumeration, Hamming and Lee weights,
//! duals, coset-graph spectra and the character map `c ↦ φ(c)/√n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use finite_algebra::GaloisField;
use lineset_core::{angle, Field, LineSet};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::GgcError;

pub const MAX_CODEWORDS: u64 = 1 << 20;
/// Coset graphs are only built with at most this many vertices.
pub const MAX_COSETS: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub enum Alphabet {
    Gf(GaloisField),
    Z4,
}

impl Alphabet {
    /// `GF(q)` with the default modulus.
    pub fn gf(q: u64) -> Result<Self, GgcError> {
        let (p, m) = finite_algebra::prime_power(q).ok_or(GgcError::Algebra(finite_algebra::AlgebraError::NotPrimePower(q)))?;
        Ok(Alphabet::Gf(GaloisField::new(p as u32, m, None)?))
    }

    pub fn size(&self) -> u32 {
        match self {
            Alphabet::Gf(f) => f.order(),
            Alphabet::Z4 => 4,
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            Alphabet::Gf(f) => f.add(a, b),
            Alphabet::Z4 => (a + b) % 4,
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match self {
            Alphabet::Gf(f) => f.neg(a),
            Alphabet::Z4 => (4 - a) % 4,
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            Alphabet::Gf(f) => f.mul(a, b),
            Alphabet::Z4 => (a * b) % 4,
        }
    }

    /// `ω^{tr(x)}` with `ω = e^{2πi/p}`, or `i^x` over `Z₄`.
    pub fn character(&self, x: u32) -> Complex64 {
        let (e, n) = match self {
            Alphabet::Gf(f) => (f.trace(x), f.p()),
            Alphabet::Z4 => (x, 4),
        };
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / n as f64)
    }

    /// Hamming weight over `GF(q)`, Lee weight over `Z₄`.
    pub fn weight(&self, x: u32) -> usize {
        match self {
            Alphabet::Gf(_) => usize::from(x != 0),
            Alphabet::Z4 => x.min(4 - x) as usize,
        }
    }

    /// Nonzero scalars over `GF(q)`, `{1, 3}` over `Z₄`.
    fn steps(&self) -> Vec<u32> {
        match self {
            Alphabet::Gf(f) => (1..f.order()).collect(),
            Alphabet::Z4 => vec![1, 3],
        }
    }

    pub fn label(&self) -> String {
        match self {
            Alphabet::Gf(f) => format!("GF({})", f.order()),
            Alphabet::Z4 => "Z4".into(),
        }
    }

    /// `GF(q)` or `Z4`.
    pub fn parse(label: &str) -> Result<Self, GgcError> {
        let s = label.trim();
        if s.eq_ignore_ascii_case("z4") {
            return Ok(Alphabet::Z4);
        }
        let q = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|q| q.parse::<u64>().ok())
            .ok_or_else(|| GgcError::Parse(format!("unknown alphabet '{s}'")))?;
        Alphabet::gf(q)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearCode {
    alphabet: Alphabet,
    n: usize,
    /// Reduced generators; over `Z₄` the first `units` rows have order 4.
    basis: Vec<Vec<u32>>,
    units: usize,
    size: u64,
    codewords: Option<Vec<Vec<u32>>>,
}

/// `[I A B; 0 2I 2C]` after permuting columns by `perm` (position `j` holds original column `perm[j]`).
struct Z4Form {
    perm: Vec<usize>,
    k1: usize,
    k2: usize,
    rows: Vec<Vec<u32>>,
}

fn z4_standard_form(rows: &[Vec<u32>], n: usize) -> Z4Form {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut r = 0;
    let mut pivot = |m: &mut Vec<Vec<u32>>, r: usize, want: fn(u32) -> bool, from: usize| -> bool {
        let Some((i, j)) = (from..m.len()).find_map(|i| (r..n).find(|&j| want(m[i][j])).map(|j| (i, j))) else {
            return false;
        };
        m.swap(i, r);
        for row in m.iter_mut() {
            row.swap(j, r);
        }
        perm.swap(j, r);
        true
    };
    while r < m.len() && pivot(&mut m, r, |x| x % 2 == 1, r) {
        let inv = m[r][r];
        m[r] = m[r].iter().map(|&x| x * inv % 4).collect();
        for i in 0..m.len() {
            let f = m[i][r];
            if i != r && f != 0 {
                let pr = m[r].clone();
                m[i] = m[i].iter().zip(&pr).map(|(&x, &y)| (x + 4 * 4 - f * y) % 4).collect();
            }
        }
        r += 1;
    }
    let k1 = r;
    while r < m.len() && pivot(&mut m, r, |x| x == 2, r) {
        for i in k1..m.len() {
            if i != r && m[i][r] == 2 {
                let pr = m[r].clone();
                m[i] = m[i].iter().zip(&pr).map(|(&x, &y)| (x + 4 - y) % 4).collect();
            }
        }
        r += 1;
    }
    m.truncate(r);
    Z4Form { perm, k1, k2: r - k1, rows: m }
}

/// Reduced row echelon form over `GF(q)`; returns nonzero rows and pivot columns.
fn gf_rref(f: &GaloisField, rows: &[Vec<u32>], n: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(i) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(i, r);
        let inv = f.inv(m[r][col]).expect("nonzero pivot");
        m[r] = m[r].iter().map(|&x| f.mul(x, inv)).collect();
        for i in 0..m.len() {
            let c = m[i][col];
            if i != r && c != 0 {
                let pr = m[r].clone();
                m[i] = m[i].iter().zip(&pr).map(|(&x, &y)| f.sub(x, f.mul(c, y))).collect();
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

impl LinearCode {
    /// The row space of `rows`; codewords are cached when `|C| ≤ 2²⁰`.
    pub fn new(alphabet: Alphabet, n: usize, rows: Vec<Vec<u32>>) -> Result<Self, GgcError> {
        if n == 0 {
            return Err(GgcError::BadCode("length must be positive".into()));
        }
        let qs = alphabet.size();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GgcError::BadCode(format!("row {i} has {} entries, expected {n}", r.len())));
            }
            if let Some(x) = r.iter().find(|&&x| x >= qs) {
                return Err(GgcError::BadCode(format!("entry {x} in row {i} is not in {}", alphabet.label())));
            }
        }
        let (basis, units, size) = match &alphabet {
            Alphabet::Gf(f) => {
                let (b, _) = gf_rref(f, &rows, n);
                let size = (f.order() as u64).checked_pow(b.len() as u32);
                let k = b.len();
                (b, k, size)
            }
            Alphabet::Z4 => {
                let form = z4_standard_form(&rows, n);
                let size = 4u64.checked_pow(form.k1 as u32).and_then(|a| a.checked_mul(2u64.checked_pow(form.k2 as u32)?));
                let basis = form
                    .rows
                    .iter()
                    .map(|row| {
                        let mut orig = vec![0; n];
                        for (j, &x) in row.iter().enumerate() {
                            orig[form.perm[j]] = x;
                        }
                        orig
                    })
                    .collect();
                (basis, form.k1, size)
            }
        };
        let size = size.unwrap_or(u64::MAX);
        let mut code = LinearCode { alphabet, n, basis, units, size, codewords: None };
        if size <= MAX_CODEWORDS {
            code.codewords = Some(code.enumerate());
        }
        Ok(code)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Reduced generator rows.
    pub fn generator(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Over `Z₄`, the type `(k₁, k₂)` with `|C| = 4^{k₁}2^{k₂}`; over `GF(q)`, `(k, 0)`.
    pub fn code_type(&self) -> (usize, usize) {
        (self.units, self.basis.len() - self.units)
    }

    fn scalar_range(&self, row: usize) -> u32 {
        match self.alphabet {
            Alphabet::Z4 if row >= self.units => 2,
            _ => self.alphabet.size(),
        }
    }

    fn enumerate(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.n]];
        for (i, row) in self.basis.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * self.scalar_range(i) as usize);
            for c in 0..self.scalar_range(i) {
                let scaled: Vec<u32> = row.iter().map(|&x| self.alphabet.mul(c, x)).collect();
                next.extend(out.iter().map(|w| w.iter().zip(&scaled).map(|(&a, &b)| self.alphabet.add(a, b)).collect::<Vec<u32>>()));
            }
            out = next;
        }
        out
    }

    pub fn codewords(&self) -> Result<&[Vec<u32>], GgcError> {
        self.codewords.as_deref().ok_or_else(|| GgcError::TooLarge(format!("code of size {}", self.size)))
    }

    pub fn weight(&self, w: &[u32]) -> usize {
        w.iter().map(|&x| self.alphabet.weight(x)).sum()
    }

    /// Weight → number of codewords.
    pub fn weight_distribution(&self) -> Result<BTreeMap<usize, usize>, GgcError> {
        let mut out = BTreeMap::new();
        for w in self.codewords()? {
            *out.entry(self.weight(w)).or_insert(0) += 1;
        }
        Ok(out)
    }

    /// Smallest nonzero weight (`None` for the zero code).
    pub fn min_distance(&self) -> Result<Option<usize>, GgcError> {
        Ok(self.weight_distribution()?.keys().copied().find(|&w| w > 0))
    }

    pub fn contains(&self, w: &[u32]) -> Result<bool, GgcError> {
        Ok(self.codewords()?.iter().any(|c| c == w))
    }

    fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.alphabet.add(acc, self.alphabet.mul(x, y)))
    }

    /// `C⊥ = {x : xᵀc = 0 for all c ∈ C}`.
    pub fn dual(&self) -> Result<LinearCode, GgcError> {
        let n = self.n;
        let rows = match &self.alphabet {
            Alphabet::Gf(f) => {
                let (r, pivots) = gf_rref(f, &self.basis, n);
                (0..n)
                    .filter(|c| !pivots.contains(c))
                    .map(|free| {
                        let mut x = vec![0; n];
                        x[free] = 1;
                        for (row, &p) in r.iter().zip(&pivots) {
                            x[p] = f.neg(row[free]);
                        }
                        x
                    })
                    .collect()
            }
            Alphabet::Z4 => z4_dual_rows(&self.basis, n),
        };
        LinearCode::new(self.alphabet.clone(), n, rows)
    }

    /// First record `alphabet,<label>`, then one generator row per record.
    pub fn from_csv(text: &str) -> Result<Self, GgcError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut records = reader.records();
        let header = records.next().ok_or_else(|| GgcError::Parse("empty code file".into()))?.map_err(|e| GgcError::Parse(e.to_string()))?;
        if header.len() != 2 || &header[0] != "alphabet" {
            return Err(GgcError::Parse("first record must be 'alphabet,<GF(q)|Z4>'".into()));
        }
        let alphabet = Alphabet::parse(&header[1])?;
        let mut rows = Vec::new();
        for rec in records {
            let rec = rec.map_err(|e| GgcError::Parse(e.to_string()))?;
            let row = rec.iter().map(|s| s.parse::<u32>().map_err(|e| GgcError::Parse(format!("'{s}': {e}")))).collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let n = rows.first().map_or(0, Vec::len);
        LinearCode::new(alphabet, n, rows)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        w.write_record(["alphabet".to_string(), self.alphabet.label()]).expect("in-memory write");
        let rows: Vec<Vec<u32>> = if self.basis.is_empty() { vec![vec![0; self.n]] } else { self.basis.clone() };
        for row in rows {
            w.write_record(row.iter().map(u32::to_string)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

/// Rows of `[−Bᵀ−CᵀAᵀ, Cᵀ, I; 2Aᵀ, 2I, 0]`, mapped back to the original columns.
fn z4_dual_rows(rows: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let Z4Form { perm, k1, k2, rows: m } = z4_standard_form(rows, n);
    let r = n - k1 - k2;
    let a = |i: usize, j: usize| m[i][k1 + j];
    let b = |i: usize, j: usize| m[i][k1 + k2 + j];
    let c = |i: usize, j: usize| m[k1 + i][k1 + k2 + j] / 2;
    let mut out = Vec::new();
    for t in 0..r {
        let mut w = vec![0u32; n];
        for (s, ws) in w.iter_mut().enumerate().take(k1) {
            let ca: u32 = (0..k2).map(|j| c(j, t) * a(s, j)).sum();
            *ws = (4 * 4 - (b(s, t) + ca) % 4) % 4;
        }
        for j in 0..k2 {
            w[k1 + j] = c(j, t);
        }
        w[k1 + k2 + t] = 1;
        out.push(w);
    }
    for j in 0..k2 {
        let mut w = vec![0u32; n];
        for (s, ws) in w.iter_mut().enumerate().take(k1) {
            *ws = 2 * a(s, j) % 4;
        }
        w[k1 + j] = 2;
        out.push(w);
    }
    out.into_iter()
        .map(|w| {
            let mut orig = vec![0; n];
            for (j, &x) in w.iter().enumerate() {
                orig[perm[j]] = x;
            }
            orig
        })
        .collect()
}

/// Eigenvalue → multiplicity of the coset graph `Γ(C)`: `(q−1)n − q·a` over
/// `GF(q)` and `2(n − a)` over `Z₄`, one per dual codeword of weight `a`.
/// The connection set is the multiset `{α e_i}`, so `Γ(C)` has repeated
/// edges when the minimum distance of `C` is below 3.
pub fn coset_spectrum(c: &LinearCode) -> Result<BTreeMap<i64, usize>, GgcError> {
    let dual = c.dual()?;
    let n = c.n as i64;
    let mut out = BTreeMap::new();
    for (a, count) in dual.weight_distribution()? {
        let a = a as i64;
        let lambda = match c.alphabet {
            Alphabet::Gf(ref f) => (f.order() as i64 - 1) * n - f.order() as i64 * a,
            Alphabet::Z4 => 2 * (n - a),
        };
        *out.entry(lambda).or_insert(0) += count;
    }
    Ok(out)
}

/// `χ_z(S) = Σ_{s ∈ S} χ(zᵀs)` evaluated numerically for every `z ∈ C⊥`.
pub fn coset_character_sums(c: &LinearCode) -> Result<BTreeMap<i64, usize>, GgcError> {
    let dual = c.dual()?;
    if dual.size > MAX_COSETS {
        return Err(GgcError::TooLarge(format!("{} cosets", dual.size)));
    }
    let steps = c.alphabet.steps();
    let mut out = BTreeMap::new();
    for z in dual.codewords()? {
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..c.n {
            for &alpha in &steps {
                let mut s = vec![0; c.n];
                s[i] = alpha;
                sum += c.alphabet.character(c.dot(z, &s));
            }
        }
        let rounded = sum.re.round();
        if (sum - Complex64::new(rounded, 0.0)).norm() > 1e-6 {
            return Err(GgcError::BadCode(format!("character sum {sum} is not an integer")));
        }
        *out.entry(rounded as i64).or_insert(0) += 1;
    }
    Ok(out)
}

/// `Γ(C)` on syndromes `Hx`, with edge multiplicities from the connection multiset.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub syndromes: Vec<Vec<u32>>,
    pub adjacency: DMatrix<f64>,
}

impl CosetGraph {
    pub fn spectrum(&self) -> Vec<f64> {
        let mut v: Vec<f64> = nalgebra::SymmetricEigen::new(self.adjacency.clone()).eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

pub fn coset_graph(c: &LinearCode) -> Result<CosetGraph, GgcError> {
    let dual = c.dual()?;
    if dual.size > MAX_COSETS {
        return Err(GgcError::TooLarge(format!("{} cosets", dual.size)));
    }
    let h = dual.generator();
    let a = &c.alphabet;
    let steps: Vec<Vec<u32>> = (0..c.n)
        .flat_map(|i| a.steps().into_iter().map(move |alpha| (i, alpha)))
        .map(|(i, alpha)| h.iter().map(|row| a.mul(alpha, row[i])).collect())
        .collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut syndromes = vec![vec![0; h.len()]];
    index.insert(syndromes[0].clone(), 0);
    let mut edges = Vec::new();
    let mut next = 0;
    while next < syndromes.len() {
        let s = syndromes[next].clone();
        for step in &steps {
            let t: Vec<u32> = s.iter().zip(step).map(|(&x, &y)| a.add(x, y)).collect();
            let j = *index.entry(t.clone()).or_insert_with(|| {
                syndromes.push(t);
                syndromes.len() - 1
            });
            edges.push((next, j));
        }
        next += 1;
    }
    let v = syndromes.len();
    let mut adjacency = DMatrix::zeros(v, v);
    for (i, j) in edges {
        adjacency[(i, j)] += 1.0;
    }
    Ok(CosetGraph { syndromes, adjacency })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeLineVariant {
    GfBalanced,
    GfNearBalanced,
    Z4,
}

impl fmt::Display for CodeLineVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeLineVariant::GfBalanced => "gf-balanced",
            CodeLineVariant::GfNearBalanced => "gf-near-balanced",
            CodeLineVariant::Z4 => "z4",
        })
    }
}

impl std::str::FromStr for CodeLineVariant {
    type Err = GgcError;
    fn from_str(s: &str) -> Result<Self, GgcError> {
        match s {
            "gf-balanced" => Ok(CodeLineVariant::GfBalanced),
            "gf-near-balanced" => Ok(CodeLineVariant::GfNearBalanced),
            "z4" => Ok(CodeLineVariant::Z4),
            _ => Err(GgcError::Parse(format!("unknown code-to-lines variant '{s}'"))),
        }
    }
}

/// Occurrence counts of each alphabet symbol.
fn symbol_counts(q: u32, w: &[u32]) -> Vec<usize> {
    let mut counts = vec![0; q as usize];
    for &x in w {
        counts[x as usize] += 1;
    }
    counts
}

/// `φ(c) = (χ(c_1),…,χ(c_n))/√n` for every codeword, keeping the first
/// representative of each projective class.
pub fn code_to_lines(c: &LinearCode, variant: CodeLineVariant, tol: f64) -> Result<LineSet, GgcError> {
    let words = c.codewords()?;
    let fail = |witness: &[u32], reason: &str| Err(GgcError::Hypothesis { variant, witness: witness.to_vec(), reason: reason.into() });
    let is_gf = matches!(c.alphabet, Alphabet::Gf(_));
    let q = c.alphabet.size();
    let ones = vec![1; c.n];
    match variant {
        CodeLineVariant::GfBalanced | CodeLineVariant::GfNearBalanced if !is_gf => return fail(&ones, "code is over Z4"),
        CodeLineVariant::Z4 if is_gf => return fail(&ones, "code is not over Z4"),
        _ => {}
    }
    match variant {
        CodeLineVariant::GfBalanced => {
            for w in words {
                let counts = symbol_counts(q, w);
                if counts[1..].iter().any(|&x| x != counts[1]) {
                    return fail(w, "nonzero symbols occur unequally often");
                }
            }
        }
        CodeLineVariant::GfNearBalanced => {
            if !c.contains(&ones)? {
                return fail(&ones, "the all-ones word is not in the code");
            }
            for w in words {
                let counts = symbol_counts(q, w);
                let near = (0..q as usize).any(|skip| {
                    let mut rest = counts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x);
                    let first = rest.next();
                    rest.all(|x| Some(x) == first)
                });
                if !near {
                    return fail(w, "no symbol can be excluded to balance the word");
                }
            }
        }
        CodeLineVariant::Z4 => {
            if !c.contains(&ones)? {
                return fail(&ones, "the all-ones word is not in the code");
            }
        }
    }
    let s = 1.0 / (c.n as f64).sqrt();
    let mut vectors: Vec<Vec<Complex64>> = Vec::new();
    for w in words {
        let v: Vec<Complex64> = w.iter().map(|&x| c.alphabet.character(x) * s).collect();
        if vectors.iter().all(|u| angle(u, &v) <= 1.0 - tol) {
            vectors.push(v);
        }
    }
    let field = if vectors.iter().flatten().all(|z| z.im.abs() < 1e-12) { Field::Real } else { Field::Complex };
    Ok(LineSet::new(c.n, field, vectors, None, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_arithmetic_and_lee_weight() {
        let a = Alphabet::Z4;
        assert_eq!((a.add(3, 2), a.neg(1), a.mul(2, 3)), (1, 3, 2));
        assert_eq!((0..4).map(|x| a.weight(x)).collect::<Vec<_>>(), vec![0, 1, 2, 1]);
        assert!((a.character(1) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(a.steps(), vec![1, 3]);
    }

    #[test]
    fn gf_labels_parse_back() {
        for q in [2u64, 3, 4, 9] {
            let a = Alphabet::gf(q).unwrap();
            assert_eq!(Alphabet::parse(&a.label()).unwrap().size(), q as u32);
        }
        assert!(Alphabet::parse("GF(6)").is_err());
        assert_eq!(Alphabet::parse(" z4 ").unwrap(), Alphabet::Z4);
    }

    #[test]
    fn symbol_counts_tally_each_symbol() {
        assert_eq!(symbol_counts(3, &[0, 1, 2, 2, 1, 2]), vec![1, 2, 3]);
        assert_eq!(symbol_counts(2, &[]), vec![0, 0]);
    }
}
