//! Bipartite graphs of relative difference sets, the tank-trap 3-fold cover
//! of `K_{6,6}`, and the definitional distance-regularity census.

use std::collections::VecDeque;
use std::fmt;

use finite_algebra::AbelianGroup;
use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::diffset::{classify_difference_set, DifferenceSetKind};
use crate::GgcError;

const EIGEN_TOL: f64 = 1e-6;

/// A simple undirected graph as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Rejects loops and out-of-range endpoints; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GgcError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(GgcError::Parse(format!("bad edge ({u}, {v}) on {n} vertices")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj.iter().enumerate().flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v))).collect()
    }

    pub fn adjacency(&self) -> DMatrix<f64> {
        let n = self.order();
        let mut m = DMatrix::zeros(n, n);
        for (u, a) in self.adj.iter().enumerate() {
            for &v in a {
                m[(u, v)] = 1.0;
            }
        }
        m
    }

    /// One `u v` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        self.edges().iter().map(|(u, v)| format!("{u} {v}\n")).collect()
    }

    pub fn from_edge_list(text: &str) -> Result<Self, GgcError> {
        let mut edges = Vec::new();
        let mut n = 0;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = parts[..] else {
                return Err(GgcError::Parse(format!("expected two vertices, got '{line}'")));
            };
            let parse = |s: &str| s.parse::<usize>().map_err(|e| GgcError::Parse(format!("'{s}': {e}")));
            let (u, v) = (parse(u)?, parse(v)?);
            n = n.max(u + 1).max(v + 1);
            edges.push((u, v));
        }
        Graph::from_edges(n, &edges)
    }

    fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap_or(0);
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Eigenvalues of the adjacency matrix, clustered to within `1e−6`.
    pub fn spectrum(&self) -> Vec<(f64, usize)> {
        let mut values: Vec<f64> = SymmetricEigen::new(self.adjacency()).eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        cluster(&values)
    }
}

fn cluster(sorted: &[f64]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((mean, count, last)) if x - *last <= EIGEN_TOL => {
                *mean = (*mean * *count as f64 + x) / (*count + 1) as f64;
                *count += 1;
                *last = x;
            }
            _ => out.push((x, 1, x)),
        }
    }
    out.into_iter().map(|(m, c, _)| (m, c)).collect()
}

/// `{b_0,…,b_{d−1}; c_1,…,c_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn new(b: Vec<usize>, c: Vec<usize>) -> Self {
        IntersectionArray { b, c }
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn valency(&self) -> usize {
        self.b.first().copied().unwrap_or(0)
    }

    /// `k_i = k_{i−1} b_{i−1} / c_i`.
    pub fn class_sizes(&self) -> Vec<f64> {
        let mut k = vec![1.0];
        for i in 0..self.diameter() {
            k.push(k[i] * self.b[i] as f64 / self.c[i] as f64);
        }
        k
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// The first pair whose local parameters disagree with an earlier pair at the same distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusFailure {
    pub distance: usize,
    pub reference: (usize, usize),
    pub witness: (usize, usize),
    /// `(b, c)` at `reference` and at `witness`.
    pub expected: (usize, usize),
    pub found: (usize, usize),
}

impl fmt::Display for CensusFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.distance == usize::MAX {
            return write!(f, "vertices {} and {} are in different components", self.witness.0, self.witness.1);
        }
        write!(
            f,
            "pairs {:?} and {:?} at distance {} have (b, c) = {:?} and {:?}",
            self.reference, self.witness, self.distance, self.expected, self.found
        )
    }
}

/// Counts `b_i(u,v)` and `c_i(u,v)` for every ordered pair.
pub fn distance_census(g: &Graph) -> Result<IntersectionArray, CensusFailure> {
    let n = g.order();
    let dist: Vec<Vec<Option<usize>>> = (0..n).into_par_iter().map(|s| g.bfs(s)).collect();
    for (u, row) in dist.iter().enumerate() {
        if let Some(v) = row.iter().position(Option::is_none) {
            return Err(CensusFailure { distance: usize::MAX, reference: (u, u), witness: (u, v), expected: (0, 0), found: (0, 0) });
        }
    }
    let d = |u: usize, v: usize| dist[u][v].unwrap_or(usize::MAX);
    let local: Vec<Vec<(usize, usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|u| {
            (0..n)
                .map(|v| {
                    let i = d(u, v);
                    let b = g.neighbours(v).iter().filter(|&&w| d(u, w) == i + 1).count();
                    let c = g.neighbours(v).iter().filter(|&&w| i > 0 && d(u, w) == i - 1).count();
                    (i, b, c)
                })
                .collect()
        })
        .collect();
    let diameter = local.iter().flatten().map(|t| t.0).max().unwrap_or(0);
    let mut params: Vec<Option<((usize, usize), (usize, usize))>> = vec![None; diameter + 1];
    for (u, row) in local.iter().enumerate() {
        for (v, &(i, b, c)) in row.iter().enumerate() {
            match params[i] {
                None => params[i] = Some(((u, v), (b, c))),
                Some((reference, expected)) if expected != (b, c) => {
                    return Err(CensusFailure { distance: i, reference, witness: (u, v), expected, found: (b, c) });
                }
                _ => {}
            }
        }
    }
    let bc: Vec<(usize, usize)> = params.iter().map(|p| p.map_or((0, 0), |p| p.1)).collect();
    Ok(IntersectionArray::new(bc[..diameter].iter().map(|x| x.0).collect(), bc[1..].iter().map(|x| x.1).collect()))
}

/// Eigenvalues and multiplicities `v / Σ k_i u_i(θ)²` from the intersection matrix.
pub fn array_spectrum(a: &IntersectionArray) -> Vec<(f64, f64)> {
    let d = a.diameter();
    let k = a.valency() as f64;
    let c = |i: usize| if i == 0 { 0.0 } else { a.c[i - 1] as f64 };
    let b = |i: usize| if i < d { a.b[i] as f64 } else { 0.0 };
    let sym = DMatrix::from_fn(d + 1, d + 1, |i, j| {
        if i == j {
            k - b(i) - c(i)
        } else if j == i + 1 {
            (b(i) * c(j)).sqrt()
        } else if i == j + 1 {
            (b(j) * c(i)).sqrt()
        } else {
            0.0
        }
    });
    let sizes = a.class_sizes();
    let v: f64 = sizes.iter().sum();
    let mut thetas: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    thetas.sort_by(f64::total_cmp);
    thetas
        .into_iter()
        .map(|theta| {
            let mut u = vec![1.0, if d > 0 { theta / k } else { 0.0 }];
            for i in 1..d {
                let next = ((theta - (k - b(i) - c(i))) * u[i] - c(i) * u[i - 1]) / b(i);
                u.push(next);
            }
            u.truncate(d + 1);
            let norm: f64 = u.iter().zip(&sizes).map(|(x, s)| s * x * x).sum();
            (theta, v / norm)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct GraphWithSpectrum {
    pub graph: Graph,
    pub eigenvalues: Vec<(f64, usize)>,
    pub intersection_array: Option<IntersectionArray>,
}

impl GraphWithSpectrum {
    pub fn multiplicity_total(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.1).sum()
    }
}

/// Census, diameter-4 array `{k,k−1,k−λ,1;1,λ,k−1,k}` with `λ = k/n`,
/// and spectrum `{±k, 0, ±√k}` with multiplicities `1, 2(k−1), k(n−1)`.
fn certify_cover(graph: Graph, k: usize, n: usize) -> Result<GraphWithSpectrum, GgcError> {
    let array = distance_census(&graph).map_err(GgcError::NotDistanceRegular)?;
    if array.diameter() != 4 {
        return Err(GgcError::NotCover(format!("diameter {} with array {array}", array.diameter())));
    }
    let lambda = k / n;
    let want = IntersectionArray::new(vec![k, k - 1, k - lambda, 1], vec![1, lambda, k - 1, k]);
    if array != want {
        return Err(GgcError::NotCover(format!("array {array}, expected {want}")));
    }
    let eigenvalues = graph.spectrum();
    let kf = k as f64;
    let expected = [(-kf, 1), (-kf.sqrt(), k * (n - 1)), (0.0, 2 * (k - 1)), (kf.sqrt(), k * (n - 1)), (kf, 1)];
    let expected: Vec<(f64, usize)> = expected.into_iter().filter(|e| e.1 > 0).collect();
    let matches = eigenvalues.len() == expected.len()
        && eigenvalues.iter().zip(&expected).all(|(a, b)| (a.0 - b.0).abs() < EIGEN_TOL && a.1 == b.1);
    if !matches {
        return Err(GgcError::NotCover(format!("spectrum {eigenvalues:?}, expected {expected:?}")));
    }
    Ok(GraphWithSpectrum { graph, eigenvalues, intersection_array: Some(array) })
}

/// The bipartite graph on `Z₂ × G` with `(0,x) ~ (1,y)` iff `y − x ∈ D`;
/// vertex `(i, x)` has index `i·|G| + x`.
pub fn rds_cover_graph(g: &AbelianGroup, d: &[usize], n: &[usize]) -> Result<GraphWithSpectrum, GgcError> {
    let report = classify_difference_set(g, d, Some(n))?;
    let (k, nn) = match report.kind {
        DifferenceSetKind::Relative { m, n, k, .. } if m == k => (k, n),
        DifferenceSetKind::Plain { v, k, .. } if n.len() == 1 && v == k => (k, 1),
        other => return Err(GgcError::NotSemiRegular(format!("classification gave {other:?}"))),
    };
    let v = g.order();
    let edges: Vec<(usize, usize)> = g.elements().flat_map(|x| d.iter().map(move |&s| (x, s))).map(|(x, s)| (x, v + g.add(x, s))).collect();
    certify_cover(Graph::from_edges(2 * v, &edges)?, k, nn)
}

/// Aldred's tank-trap 3-fold cover of `K_{6,6}`. Fibres are indexed
/// `0..5` then `∞ = 5`; `B_i(j)` is vertex `3i + j` and `W_k(h)` is `18 + 3k + h`.
pub fn tank_trap_graph() -> Graph {
    const INF: usize = 5;
    let row = |i: usize, h: usize| -> [usize; 2] {
        match h % 3 {
            0 => [INF, i],
            1 => [(1 + i) % 5, (4 + i) % 5],
            _ => [(2 + i) % 5, (3 + i) % 5],
        }
    };
    let b = |i: usize, j: usize| 3 * i + j;
    let w = |k: usize, h: usize| 18 + 3 * k + h;
    let mut edges = Vec::new();
    for i in 0..5 {
        for j in 0..3 {
            for h in 0..3 {
                for k in row(i, h + 3 - j) {
                    edges.push((b(i, j), w(k, h)));
                }
            }
        }
    }
    for j in 0..3 {
        for k in 0..=INF {
            edges.push((b(INF, j), w(k, j)));
            edges.push((b(k, j), w(INF, j)));
        }
    }
    Graph::from_edges(36, &edges).expect("valid tank-trap edges")
}

pub fn tank_trap_cover() -> Result<GraphWithSpectrum, GgcError> {
    certify_cover(tank_trap_graph(), 6, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sizes_of_the_cube() {
        let a = IntersectionArray::new(vec![3, 2, 1], vec![1, 2, 3]);
        assert_eq!(a.class_sizes(), vec![1.0, 3.0, 3.0, 1.0]);
        assert_eq!((a.diameter(), a.valency()), (3, 3));
        assert_eq!(a.to_string(), "{3,2,1;1,2,3}");
    }

    #[test]
    fn clustering_merges_close_eigenvalues() {
        assert_eq!(cluster(&[-1.0, -1.0 + 1e-9, 2.0]), vec![(-1.0 + 5e-10, 2), (2.0, 1)]);
    }

    #[test]
    fn four_cycle_census() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(distance_census(&g).unwrap(), IntersectionArray::new(vec![2, 1], vec![1, 2]));
    }
}
