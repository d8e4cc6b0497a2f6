//! Commutative semifields of odd order as full multiplication tables.
//!
//! Elements of `E = GF(p)^m` are indexed by `Σ c_i p^i`; addition is
//! coordinatewise mod `p`.

use finite_algebra::{is_prime, GaloisField};
use lineset_core::CMatrix;
use serde::Serialize;

use crate::{root_of_unity, MubError, MubFamily, Provenance};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SemifieldAxiom {
    EntryRange,
    Commutative,
    LeftDistributive,
    RightDistributive,
    ZeroDivisor,
    Identity,
}

impl std::fmt::Display for SemifieldAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SemifieldAxiom::EntryRange => "entry range",
            SemifieldAxiom::Commutative => "commutativity",
            SemifieldAxiom::LeftDistributive => "left distributivity",
            SemifieldAxiom::RightDistributive => "right distributivity",
            SemifieldAxiom::ZeroDivisor => "no zero divisors",
            SemifieldAxiom::Identity => "identity element",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemifieldTable {
    p: u32,
    m: u32,
    q: u32,
    mult: Vec<u32>,
    identity: u32,
}

impl SemifieldTable {
    /// Checks every axiom; `mult[a·q + b] = a ∘ b`.
    pub fn new(p: u32, m: u32, mult: Vec<u32>) -> Result<Self, MubError> {
        if !is_prime(p as u64) || m == 0 {
            return Err(MubError::BadTable(format!("order {p}^{m} is not a prime power")));
        }
        let q = p.checked_pow(m).filter(|&q| q <= 4096).ok_or_else(|| MubError::BadTable("order too large".into()))?;
        if mult.len() != (q * q) as usize {
            return Err(MubError::BadTable(format!("expected {} entries, found {}", q * q, mult.len())));
        }
        let mut t = SemifieldTable { p, m, q, mult, identity: 0 };
        t.identity = t.check()?;
        Ok(t)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[(a * self.q + b) as usize]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.coords(a), self.coords(b));
        self.index(&ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect::<Vec<_>>())
    }

    pub fn coords(&self, mut a: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    fn index(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    /// `Σ_i a_i b_i mod p`.
    pub fn dot(&self, a: u32, b: u32) -> u32 {
        self.coords(a).iter().zip(self.coords(b)).map(|(x, y)| x * y).sum::<u32>() % self.p
    }

    /// Returns the identity element, or the first failing axiom with witnesses.
    fn check(&self) -> Result<u32, MubError> {
        let q = self.q;
        let fail = |axiom, witnesses: Vec<u32>| Err(MubError::Semifield { axiom, witnesses });
        if let Some(i) = self.mult.iter().position(|&v| v >= q) {
            return fail(SemifieldAxiom::EntryRange, vec![i as u32 / q, i as u32 % q]);
        }
        for a in 0..q {
            for b in 0..q {
                if self.mul(a, b) != self.mul(b, a) {
                    return fail(SemifieldAxiom::Commutative, vec![a, b]);
                }
                if a != 0 && b != 0 && self.mul(a, b) == 0 {
                    return fail(SemifieldAxiom::ZeroDivisor, vec![a, b]);
                }
            }
        }
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail(SemifieldAxiom::LeftDistributive, vec![a, b, c]);
                    }
                    if self.mul(self.add(b, c), a) != self.add(self.mul(b, a), self.mul(c, a)) {
                        return fail(SemifieldAxiom::RightDistributive, vec![b, c, a]);
                    }
                }
            }
        }
        match (0..q).find(|&e| (0..q).all(|x| self.mul(e, x) == x)) {
            Some(e) => Ok(e),
            None => fail(SemifieldAxiom::Identity, vec![]),
        }
    }

    /// Multiplication table of the field itself.
    pub fn from_field(f: &GaloisField) -> Result<Self, MubError> {
        let q = f.order();
        let mult = (0..q).flat_map(|a| (0..q).map(move |b| f.mul(a, b))).collect();
        Self::new(f.p(), f.m(), mult)
    }

    /// Albert's commutative twisted field `a∘b = a·b^σ + a^σ·b` with
    /// `σ = x ↦ x^{p^k}`, normalized to a semifield through `x ↦ x∘1`.
    pub fn twisted_field(f: &GaloisField, k: u32) -> Result<Self, MubError> {
        let q = f.order();
        let sigma = |x: u32| (0..k).fold(x, |acc, _| f.frobenius(acc));
        let pre = |a: u32, b: u32| f.add(f.mul(a, sigma(b)), f.mul(sigma(a), b));
        let mut r_inv = vec![u32::MAX; q as usize];
        for x in 0..q {
            let y = pre(x, 1) as usize;
            if r_inv[y] != u32::MAX {
                return Err(MubError::Semifield { axiom: SemifieldAxiom::ZeroDivisor, witnesses: vec![x, 1] });
            }
            r_inv[y] = x;
        }
        let mult = (0..q).flat_map(|a| (0..q).map(|b| pre(r_inv[a as usize], r_inv[b as usize])).collect::<Vec<_>>()).collect();
        Self::new(f.p(), f.m(), mult)
    }

    /// `q` rows of `q` comma-separated indices.
    pub fn from_csv(p: u32, m: u32, text: &str) -> Result<Self, MubError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut mult = Vec::new();
        for (r, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| MubError::BadTable(e.to_string()))?;
            for field in rec.iter() {
                let v = field.parse::<u32>().map_err(|_| MubError::BadTable(format!("row {r}: bad entry '{field}'")))?;
                mult.push(v);
            }
        }
        Self::new(p, m, mult)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.mult.chunks(self.q as usize) {
            w.write_record(row.iter().map(|v| v.to_string())).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }

    /// Copy with one table entry replaced, without validation.
    pub fn corrupted(&self, a: u32, b: u32, value: u32) -> Vec<u32> {
        let mut m = self.mult.clone();
        m[(a * self.q + b) as usize] = value;
        m
    }
}

/// `{I} ∪ {W_z}` with `(W_z)_{a,y} = q^{-1/2} ω^{zᵀ(a∘a) + 2yᵀa}`.
pub fn semifield_mubs(tbl: &SemifieldTable) -> Result<MubFamily, MubError> {
    if tbl.p == 2 {
        return Err(MubError::EvenCharacteristic(2));
    }
    let q = tbl.q as usize;
    let p = tbl.p as u64;
    let scale = 1.0 / (q as f64).sqrt();
    let squares: Vec<u32> = (0..tbl.q).map(|a| tbl.mul(a, a)).collect();
    let mut bases = vec![CMatrix::identity(q, q)];
    for z in 0..tbl.q {
        bases.push(CMatrix::from_fn(q, q, |a, y| {
            let e = tbl.dot(z, squares[a]) + 2 * tbl.dot(y as u32, a as u32);
            root_of_unity(p, e as u64) * scale
        }));
    }
    MubFamily::new(bases, Provenance::new("semifield").with("p", tbl.p).with("m", tbl.m))
}
