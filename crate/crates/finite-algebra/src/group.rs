//! Finite abelian groups `Z_{n_1} × … × Z_{n_r}` and their integral group algebras.
//!
//! Elements are indexed in lexicographic order of their coordinate tuples,
//! the last coordinate varying fastest. Characters share the same indexing:
//! `χ_a(g) = Π exp(2πi a_i g_i / n_i)`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<usize>,
    size: usize,
}

impl AbelianGroup {
    pub fn new(orders: &[usize]) -> Result<Self, AlgebraError> {
        if orders.contains(&0) {
            return Err(AlgebraError::InvalidGroup("cyclic orders must be positive".into()));
        }
        let size = orders.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
        match size {
            Some(size) if size <= 1 << 20 => Ok(AbelianGroup { orders: orders.to_vec(), size }),
            _ => Err(AlgebraError::TooLarge(format!("group of orders {orders:?}"))),
        }
    }

    pub fn cyclic(n: usize) -> Result<Self, AlgebraError> {
        Self::new(&[n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        assert_eq!(coords.len(), self.orders.len(), "coordinate count mismatch");
        coords.iter().zip(&self.orders).fold(0, |acc, (&c, &n)| acc * n + c % n)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.orders.len()];
        for (c, &n) in out.iter_mut().zip(&self.orders).rev() {
            *c = idx % n;
            idx /= n;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let s: Vec<usize> = ca.iter().zip(&cb).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect();
        self.index(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<usize> = self.coords(a).iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect();
        self.index(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `χ_a(g)`.
    pub fn character(&self, a: usize, g: usize) -> Complex64 {
        let (ca, cg) = (self.coords(a), self.coords(g));
        let phase: f64 = ca
            .iter()
            .zip(&cg)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| ((x * y) % n) as f64 / n as f64)
            .sum();
        Complex64::from_polar(1.0, 2.0 * PI * phase)
    }

    /// Full `|G| × |G|` table, row `a`, column `g`.
    pub fn character_table(&self) -> Vec<Vec<Complex64>> {
        self.elements().map(|a| self.elements().map(|g| self.character(a, g)).collect()).collect()
    }

    /// The subgroup generated by `gens`, as a sorted list of indices.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.sub(a, b))))
    }

    /// Every subgroup, each sorted, in order of increasing size.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![0];
        seen.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            let members: BTreeSet<usize> = h.iter().copied().collect();
            for g in self.elements().filter(|g| !members.contains(g)) {
                let mut bigger: Vec<usize> = h.clone();
                let mut kg = g;
                while !members.contains(&kg) {
                    bigger.extend(h.iter().map(|&x| self.add(x, kg)));
                    kg = self.add(kg, g);
                }
                bigger.sort_unstable();
                if seen.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by_key(|h| (h.len(), h.clone()));
        out
    }
}

/// An element `Σ c_g g` of `Z[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    group: AbelianGroup,
    coeffs: Vec<i64>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &AbelianGroup) -> Self {
        GroupAlgebraElement { group: group.clone(), coeffs: vec![0; group.order()] }
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        Self::basis(group, 0)
    }

    pub fn basis(group: &AbelianGroup, g: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[g] = 1;
        e
    }

    /// The sum of the elements of `subset`, counted with repetition.
    pub fn from_subset(group: &AbelianGroup, subset: &[usize]) -> Self {
        let mut e = Self::zero(group);
        for &g in subset {
            e.coeffs[g] += 1;
        }
        e
    }

    pub fn from_coeffs(group: &AbelianGroup, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), group.order());
        GroupAlgebraElement { group: group.clone(), coeffs }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, g: usize) -> i64 {
        self.coeffs[g]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&g| self.coeffs[g] != 0).collect()
    }

    /// `Σ c_g g ↦ Σ c_g g⁻¹`.
    pub fn inverse(&self) -> Self {
        let mut e = Self::zero(&self.group);
        for (g, &c) in self.coeffs.iter().enumerate() {
            e.coeffs[self.group.neg(g)] += c;
        }
        e
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_coeffs(&self.group, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `χ_a(Σ c_g g) = Σ c_g χ_a(g)`.
    pub fn character_value(&self, a: usize) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(g, &c)| self.group.character(a, g) * c as f64)
            .sum()
    }

    fn convolve(&self, other: &Self) -> Self {
        assert_eq!(self.group, other.group, "elements of different group algebras");
        let mut out = Self::zero(&self.group);
        for (g, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (h, &b) in other.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                out.coeffs[self.group.add(g, h)] += a * b;
            }
        }
        out
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: Self) -> GroupAlgebraElement {
        assert_eq!(self.group, rhs.group, "elements of different group algebras");
        let c = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        GroupAlgebraElement::from_coeffs(&self.group, c)
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: Self) -> GroupAlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        self.scale(-1)
    }
}

impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: Self) -> GroupAlgebraElement {
        self.convolve(rhs)
    }
}
