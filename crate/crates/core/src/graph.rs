//! Finite graphs with darts (directed edges) and a fixed-point-free
//! inversion, together with their Laplacian, spanning-tree count, Ihara zeta
//! function and reduced closed path counts.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::det::{bareiss, Determinant};
use crate::algebra::{Matrix, Rational, Ring, TruncSeries, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub origin: usize,
    pub terminus: usize,
    pub inverse: usize,
}

/// Vertices are named; darts refer to vertices and to each other by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreGraph {
    vertices: Vec<String>,
    darts: Vec<Dart>,
}

impl SerreGraph {
    pub fn new(vertices: Vec<String>, darts: Vec<Dart>) -> Result<Self> {
        let g = SerreGraph { vertices, darts };
        g.validate()?;
        Ok(g)
    }

    /// Edge `i = (a, b)` becomes dart `2i: a → b` and dart `2i+1: b → a`.
    pub fn from_edges(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut darts = Vec::with_capacity(2 * edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            darts.push(Dart {
                origin: a,
                terminus: b,
                inverse: 2 * i + 1,
            });
            darts.push(Dart {
                origin: b,
                terminus: a,
                inverse: 2 * i,
            });
        }
        Self::new(vertices, darts)
    }

    /// Vertices named `v0, v1, …`.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<String>, darts: Vec<Dart>) -> Self {
        let g = SerreGraph { vertices, darts };
        debug_assert!(g.validate().is_ok());
        g
    }

    /// Checks the dart invariants, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        let nd = self.darts.len();
        for (i, d) in self.darts.iter().enumerate() {
            if d.origin >= nv || d.terminus >= nv {
                return Err(Error::InvalidGraph(format!(
                    "dart {i} references a missing vertex"
                )));
            }
            if d.inverse >= nd {
                return Err(Error::InvalidGraph(format!(
                    "dart {i} references a missing inverse dart {}",
                    d.inverse
                )));
            }
        }
        for (i, d) in self.darts.iter().enumerate() {
            if d.inverse == i {
                return Err(Error::InvalidGraph(format!(
                    "inversion has a fixed point at dart {i}"
                )));
            }
            let inv = &self.darts[d.inverse];
            if inv.inverse != i {
                return Err(Error::InvalidGraph(format!(
                    "inversion is not an involution at dart {i}"
                )));
            }
            if inv.origin != d.terminus || inv.terminus != d.origin {
                return Err(Error::InvalidGraph(format!(
                    "incidence mismatch between dart {i} and its inverse {}",
                    d.inverse
                )));
            }
        }
        let mut names: Vec<&String> = self.vertices.iter().collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate vertex name {}", w[0])));
        }
        Ok(())
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, i: usize) -> &Dart {
        &self.darts[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_darts(&self) -> usize {
        self.darts.len()
    }

    pub fn num_edges(&self) -> usize {
        self.darts.len() / 2
    }

    /// Number of darts leaving `v`; loops count twice.
    pub fn degree(&self, v: usize) -> usize {
        self.darts.iter().filter(|d| d.origin == v).count()
    }

    pub fn darts_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.darts.len()).filter(move |&i| self.darts[i].origin == v)
    }

    /// `|V| − |E|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64
    }

    /// `(A, D)` with `A[i][j]` the number of darts from `v_j` to `v_i`.
    pub fn adjacency_and_degree(&self) -> (Matrix<BigInt>, Matrix<BigInt>) {
        let n = self.num_vertices();
        let mut a = vec![vec![0u64; n]; n];
        let mut deg = vec![0u64; n];
        for d in &self.darts {
            a[d.terminus][d.origin] += 1;
            deg[d.origin] += 1;
        }
        let a = Matrix::from_fn(n, BigInt::one(), |i, j| BigInt::from(a[i][j]));
        let d = Matrix::diagonal(deg.into_iter().map(BigInt::from).collect(), BigInt::one());
        (a, d)
    }

    pub fn laplacian(&self) -> Matrix<BigInt> {
        let (a, d) = self.adjacency_and_degree();
        d.sub(&a)
    }

    fn component_labels(&self) -> (usize, Vec<usize>) {
        let n = self.num_vertices();
        let mut adj = vec![Vec::new(); n];
        for d in &self.darts {
            adj[d.origin].push(d.terminus);
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn num_components(&self) -> usize {
        self.component_labels().0
    }

    /// Breadth-first reachability; the empty graph counts as disconnected.
    pub fn connected(&self) -> bool {
        self.num_components() == 1
    }

    /// Matrix-Tree count `κ`, deleting the last row and column.
    pub fn spanning_tree_count(&self) -> Result<BigInt> {
        self.spanning_tree_count_deleting(self.num_vertices().saturating_sub(1))
    }

    pub fn spanning_tree_count_deleting(&self, k: usize) -> Result<BigInt> {
        if !self.connected() {
            return Err(Error::Disconnected);
        }
        Ok(bareiss(&self.laplacian().minor(k, k)))
    }

    /// Non-backtracking transition matrix: `B[e][f] = 1` iff `t(e) = o(f)`
    /// and `f ≠ ē`.
    pub fn non_backtracking_matrix(&self) -> Matrix<BigInt> {
        Matrix::from_fn(self.num_darts(), BigInt::one(), |e, f| {
            let (de, df) = (&self.darts[e], &self.darts[f]);
            if de.terminus == df.origin && f != de.inverse {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// `N_k = tr(B^k)` for `k = 1..=k_max`.
    pub fn reduced_closed_path_counts(&self, k_max: usize) -> Vec<BigInt> {
        let nd = self.num_darts();
        // successors of each dart under B
        let succ: Vec<Vec<usize>> = (0..nd)
            .map(|e| {
                let de = &self.darts[e];
                self.darts_from(de.terminus).filter(|&f| f != de.inverse).collect()
            })
            .collect();
        let mut power: Vec<Vec<BigInt>> = (0..nd)
            .map(|i| (0..nd).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut out = Vec::with_capacity(k_max);
        for _ in 0..k_max {
            let mut next = vec![vec![BigInt::zero(); nd]; nd];
            for i in 0..nd {
                for l in 0..nd {
                    if Zero::is_zero(&power[i][l]) {
                        continue;
                    }
                    for &j in &succ[l] {
                        next[i][j] += &power[i][l];
                    }
                }
            }
            power = next;
            out.push((0..nd).map(|i| power[i][i].clone()).sum());
        }
        out
    }

    /// `h(u) = det(I − Au + (D − I)u²)` over `ℤ[u]`.
    pub fn ihara_h_integer(&self) -> UniPoly<BigInt> {
        let (a, d) = self.adjacency_and_degree();
        let n = self.num_vertices();
        let one = UniPoly::constant(BigInt::one());
        let m = Matrix::from_fn(n, one, |i, j| {
            let delta = if i == j { 1 } else { 0 };
            let q = d.get(i, j) - BigInt::from(delta);
            UniPoly::new(
                vec![BigInt::from(delta), -a.get(i, j).clone(), q],
                BigInt::zero(),
            )
        });
        m.det()
    }

    /// `(h, χ)` with `Z(u)^{-1} = (1 − u²)^{−χ}·h(u)`.
    pub fn ihara_zeta_reciprocal(&self) -> (UniPoly<Rational>, i64) {
        (self.ihara_h_integer().to_rational_poly(), self.euler_characteristic())
    }

    /// `exp(Σ_{k≤k_max} N_k u^k / k)` to precision `k_max + 1`.
    pub fn zeta_series_from_paths(&self, k_max: usize) -> TruncSeries<Rational> {
        let counts = self.reduced_closed_path_counts(k_max);
        let mut log = vec![Rational::zero()];
        for (k, n) in counts.into_iter().enumerate() {
            log.push(Rational::new(n, BigInt::from(k + 1)));
        }
        TruncSeries::new(log, k_max + 1, Rational::zero())
            .exp()
            .expect("logarithm has no constant term")
    }

    /// The inverse of `(1 − u²)^{−χ}·h(u)` to precision `k_max + 1`.
    pub fn zeta_series_from_determinant(&self, k_max: usize) -> TruncSeries<Rational> {
        let prec = k_max + 1;
        let (h, chi) = self.ihara_zeta_reciprocal();
        let one_minus_u2 = TruncSeries::from_poly(&UniPoly::<Rational>::from_ints(&[1, 0, -1]), prec);
        let c_abs = one_minus_u2.pow(chi.unsigned_abs());
        let h = TruncSeries::from_poly(&h, prec);
        let reciprocal = if chi <= 0 {
            h.mul(&c_abs)
        } else {
            h.mul(&c_abs.inverse().expect("unit constant term"))
        };
        reciprocal.inverse().expect("constant term is 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SerreGraph {
        SerreGraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn double_edge() -> SerreGraph {
        SerreGraph::from_edge_list(2, &[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn validation_errors() {
        let names = vec!["v1".to_string(), "v2".to_string()];
        let ok = SerreGraph::new(
            names.clone(),
            vec![
                Dart { origin: 0, terminus: 1, inverse: 1 },
                Dart { origin: 1, terminus: 0, inverse: 0 },
            ],
        );
        assert!(ok.is_ok());
        let fixed = SerreGraph::new(names.clone(), vec![Dart { origin: 0, terminus: 0, inverse: 0 }]);
        assert!(fixed.unwrap_err().to_string().contains("inversion has a fixed point"));
        let dangling = SerreGraph::new(names.clone(), vec![Dart { origin: 0, terminus: 1, inverse: 7 }]);
        assert!(dangling.unwrap_err().to_string().contains("missing inverse"));
        let mismatch = SerreGraph::new(
            names,
            vec![
                Dart { origin: 0, terminus: 1, inverse: 1 },
                Dart { origin: 0, terminus: 1, inverse: 0 },
            ],
        );
        assert!(mismatch.unwrap_err().to_string().contains("incidence mismatch"));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(SerreGraph::from_edge_list(1, &[]).unwrap().euler_characteristic(), 1);
        assert_eq!(double_edge().euler_characteristic(), 0);
    }

    #[test]
    fn loops_count_twice() {
        let g = SerreGraph::from_edge_list(1, &[(0, 0)]).unwrap();
        let (a, d) = g.adjacency_and_degree();
        assert_eq!(a.get(0, 0), &BigInt::from(2));
        assert_eq!(d.get(0, 0), &BigInt::from(2));
    }

    #[test]
    fn double_edge_matrices() {
        let (a, d) = double_edge().adjacency_and_degree();
        assert_eq!(a.rows(), vec![vec![BigInt::from(0), BigInt::from(2)], vec![BigInt::from(2), BigInt::from(0)]]);
        assert_eq!(d.get(0, 0), &BigInt::from(2));
        assert_eq!(d.get(1, 1), &BigInt::from(2));
        let (h, chi) = double_edge().ihara_zeta_reciprocal();
        assert_eq!(h, UniPoly::<Rational>::from_ints(&[1, 0, -2, 0, 1]));
        assert_eq!(chi, 0);
    }

    #[test]
    fn spanning_trees() {
        assert_eq!(triangle().spanning_tree_count().unwrap(), BigInt::from(3));
        assert_eq!(double_edge().spanning_tree_count().unwrap(), BigInt::from(2));
        let cycle4 = SerreGraph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for k in 0..4 {
            assert_eq!(cycle4.spanning_tree_count_deleting(k).unwrap(), BigInt::from(4));
        }
        let split = SerreGraph::from_edge_list(3, &[(1, 2)]).unwrap();
        assert!(!split.connected());
        assert_eq!(split.spanning_tree_count(), Err(Error::Disconnected));
    }

    #[test]
    fn path_counts() {
        let tree = SerreGraph::from_edge_list(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(tree.reduced_closed_path_counts(8).iter().all(Zero::is_zero));
        let counts = triangle().reduced_closed_path_counts(6);
        assert_eq!(counts[2], BigInt::from(6));
        assert_eq!(counts[5], BigInt::from(6));
        assert_eq!(counts[0], BigInt::zero());
    }

    #[test]
    fn isolated_vertex_zeta() {
        let g = SerreGraph::from_edge_list(1, &[]).unwrap();
        let (h, chi) = g.ihara_zeta_reciprocal();
        assert_eq!(h, UniPoly::<Rational>::from_ints(&[1, 0, -1]));
        assert_eq!(chi, 1);
        assert_eq!(g.zeta_series_from_paths(6), g.zeta_series_from_determinant(6));
    }

    #[test]
    fn zeta_series_agree_on_small_graphs() {
        for g in [triangle(), double_edge(), SerreGraph::from_edge_list(2, &[(0, 0), (0, 1), (1, 1)]).unwrap()] {
            assert_eq!(g.zeta_series_from_paths(12), g.zeta_series_from_determinant(12));
        }
    }
}
