//! Voltage data for branched `ℤ_p`-towers and the graphs at each level.
//!
//! At level `n` the group is `Γ_n = ℤ/p^nℤ`. A vertex `v` ramified with
//! exponent `k` has stabilizer `Γ_{n,v} = p^{min(k,n)}ℤ/p^nℤ`; an unramified
//! vertex has trivial stabilizer. Writing `e_v(n)` for the exponent with
//! `Γ_{n,v} = p^{e_v(n)}ℤ/p^nℤ`, the fiber over `v` has `p^{e_v(n)}` vertices,
//! labelled by coset representatives `0 … p^{e_v(n)} − 1`.
//!
//! Dart `(s, σ)` runs from `(o(s), σ mod p^{e_{o(s)}})` to
//! `(t(s), σ + α(s) mod p^{e_{t(s)}})` and has inverse `(s̄, σ + α(s))`.
//! Vertices are ordered by base vertex then representative, darts by base
//! dart then `σ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::action::CyclicAction;
use crate::algebra::rational::is_prime;
use crate::algebra::{GroupRingElem, Matrix, Ring};
use crate::error::{Error, Result};
use crate::graph::{Dart, SerreGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ramification {
    /// Trivial decomposition group.
    Unramified,
    /// Decomposition group `p^k ℤ_p`.
    Ramified(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerDatum {
    base: SerreGraph,
    p: u64,
    voltage: Vec<BigInt>,
    ram: Vec<Ramification>,
}

impl TowerDatum {
    pub fn new(base: SerreGraph, p: u64, voltage: Vec<BigInt>, ram: Vec<Ramification>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidDatum(format!("{p} is not prime")));
        }
        if voltage.len() != base.num_darts() {
            return Err(Error::InvalidDatum(format!(
                "{} voltages for {} darts",
                voltage.len(),
                base.num_darts()
            )));
        }
        if ram.len() != base.num_vertices() {
            return Err(Error::InvalidDatum(format!(
                "{} ramification entries for {} vertices",
                ram.len(),
                base.num_vertices()
            )));
        }
        for (i, d) in base.darts().iter().enumerate() {
            if voltage[d.inverse] != -&voltage[i] {
                return Err(Error::InvalidDatum(format!(
                    "voltage of dart {i} is not the negative of its inverse's"
                )));
            }
        }
        if !base.connected() {
            return Err(Error::InvalidDatum("base graph is not connected".into()));
        }
        Ok(TowerDatum {
            base,
            p,
            voltage,
            ram,
        })
    }

    /// Builds from undirected edges `(from, to, voltage)`; the inverse dart
    /// gets the negated voltage.
    pub fn from_edges(
        vertices: Vec<String>,
        p: u64,
        edges: &[(usize, usize, BigInt)],
        ram: Vec<Ramification>,
    ) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = edges.iter().map(|(a, b, _)| (*a, *b)).collect();
        let base = SerreGraph::from_edges(vertices, &pairs)?;
        let voltage = edges
            .iter()
            .flat_map(|(_, _, v)| [v.clone(), -v])
            .collect();
        Self::new(base, p, voltage, ram)
    }

    pub fn base(&self) -> &SerreGraph {
        &self.base
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn voltages(&self) -> &[BigInt] {
        &self.voltage
    }

    pub fn voltage(&self, s: usize) -> &BigInt {
        &self.voltage[s]
    }

    pub fn ramification(&self) -> &[Ramification] {
        &self.ram
    }

    pub fn ramified_vertices(&self) -> Vec<usize> {
        (0..self.ram.len())
            .filter(|&v| matches!(self.ram[v], Ramification::Ramified(_)))
            .collect()
    }

    pub fn unramified_vertices(&self) -> Vec<usize> {
        (0..self.ram.len())
            .filter(|&v| self.ram[v] == Ramification::Unramified)
            .collect()
    }

    /// `n₁ = max k_v` over ramified vertices (0 if there are none).
    pub fn n1(&self) -> u32 {
        self.ram
            .iter()
            .filter_map(|r| match r {
                Ramification::Ramified(k) => Some(*k),
                Ramification::Unramified => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// `Σ_{v ∈ V^ram} p^{k_v}`.
    pub fn ramified_fiber_sum(&self) -> u64 {
        self.ram
            .iter()
            .filter_map(|r| match r {
                Ramification::Ramified(k) => Some(self.p.pow(*k)),
                Ramification::Unramified => None,
            })
            .sum()
    }

    /// `e` with `Γ_{n,v} = p^e ℤ/p^nℤ`.
    pub fn stabilizer_exponent(&self, v: usize, n: u32) -> u32 {
        match self.ram[v] {
            Ramification::Unramified => n,
            Ramification::Ramified(k) => k.min(n),
        }
    }

    /// `|Γ_{n,v}|`, the ramification index of every vertex above `v`.
    pub fn stabilizer_order(&self, v: usize, n: u32) -> u64 {
        self.p.pow(n - self.stabilizer_exponent(v, n))
    }

    pub fn fiber_size(&self, v: usize, n: u32) -> u64 {
        self.p.pow(self.stabilizer_exponent(v, n))
    }

    /// Per base vertex: (fiber size, ramification index).
    pub fn ramification_profile(&self, n: u32) -> Vec<(u64, u64)> {
        (0..self.base.num_vertices())
            .map(|v| (self.fiber_size(v, n), self.stabilizer_order(v, n)))
            .collect()
    }

    /// `α(s) mod p^n` in `0..p^n`.
    pub fn voltage_mod(&self, s: usize, n: u32) -> u64 {
        let m = BigInt::from(self.p.pow(n));
        self.voltage[s].mod_floor(&m).to_u64().expect("residue fits")
    }

    /// `χ(X_n) = Σ_v p^{e_v(n)} − p^n·|E_X|`.
    pub fn euler_characteristic(&self, n: u32) -> i64 {
        let vertices: u64 = (0..self.base.num_vertices()).map(|v| self.fiber_size(v, n)).sum();
        vertices as i64 - (self.p.pow(n) * self.base.num_edges() as u64) as i64
    }

    /// `p^n(χ(X) − |V^ram|) + Σ p^{k_v}`, valid once `n ≥ n₁`.
    pub fn euler_characteristic_closed_form(&self, n: u32) -> i64 {
        let slope = self.base.euler_characteristic() - self.ramified_vertices().len() as i64;
        self.p.pow(n) as i64 * slope + self.ramified_fiber_sum() as i64
    }

    /// `[X_n : X]·χ(X) − Σ_{w}(m_w − 1)`.
    pub fn euler_characteristic_riemann_hurwitz(&self, n: u32) -> i64 {
        let correction: i64 = self
            .ramification_profile(n)
            .iter()
            .map(|&(fiber, index)| fiber as i64 * (index as i64 - 1))
            .sum();
        self.p.pow(n) as i64 * self.base.euler_characteristic() - correction
    }

    /// Whether `χ(X_n) < 0` for all large `n`.
    pub fn eventually_negative_euler_characteristic(&self) -> bool {
        self.base.euler_characteristic() - (self.ramified_vertices().len() as i64) < 0
    }

    /// The least level with `χ(X_n) < 0`, searched up to `limit`.
    pub fn first_negative_level(&self, limit: u32) -> Option<u32> {
        (0..=limit).find(|&n| self.euler_characteristic(n) < 0)
    }

    pub fn build_level_graph(&self, n: u32) -> LevelGraph {
        let p = self.p;
        let m = p.pow(n);
        let nv = self.base.num_vertices();
        let fibers: Vec<u64> = (0..nv).map(|v| self.fiber_size(v, n)).collect();
        let mut offsets = Vec::with_capacity(nv);
        let mut vertex_labels = Vec::new();
        let mut names = Vec::new();
        for v in 0..nv {
            offsets.push(vertex_labels.len());
            for r in 0..fibers[v] {
                vertex_labels.push((v, r));
                if n == 0 {
                    names.push(self.base.vertex_names()[v].clone());
                } else {
                    names.push(format!("{}.{}", self.base.vertex_names()[v], r));
                }
            }
        }
        let alpha: Vec<u64> = (0..self.base.num_darts()).map(|s| self.voltage_mod(s, n)).collect();
        let mut darts = Vec::with_capacity(self.base.num_darts() * m as usize);
        let mut dart_labels = Vec::with_capacity(darts.capacity());
        for (s, base_dart) in self.base.darts().iter().enumerate() {
            for sigma in 0..m {
                let (o, t) = (base_dart.origin, base_dart.terminus);
                let target = (sigma + alpha[s]) % m;
                darts.push(Dart {
                    origin: offsets[o] + (sigma % fibers[o]) as usize,
                    terminus: offsets[t] + (target % fibers[t]) as usize,
                    inverse: base_dart.inverse * m as usize + target as usize,
                });
                dart_labels.push((s, sigma));
            }
        }
        LevelGraph {
            level: n,
            p,
            graph: SerreGraph::from_parts_unchecked(names, darts),
            vertex_labels,
            dart_labels,
            offsets,
            fibers,
        }
    }

    /// `(𝐀_α, 𝐂, 𝐃)` at level `n`, indexed by base vertices.
    pub fn level_matrices(&self, n: u32) -> LevelMatrices {
        let m = self.p.pow(n);
        let nv = self.base.num_vertices();
        let one = GroupRingElem::one(m);
        let mut a = Matrix::zeros(nv, one.clone());
        for (s, d) in self.base.darts().iter().enumerate() {
            let sigma = GroupRingElem::basis(m, self.voltage_mod(s, n) as i64);
            let entry = a.get(d.terminus, d.origin).add(&sigma);
            a.set(d.terminus, d.origin, entry);
        }
        let c = (0..nv)
            .map(|v| GroupRingElem::norm_element(m, self.stabilizer_order(v, n)))
            .collect();
        let d = (0..nv).map(|v| self.base.degree(v) as u64).collect();
        LevelMatrices {
            p: self.p,
            level: n,
            a_alpha: a,
            c,
            d,
            stabilizer_exponents: (0..nv).map(|v| self.stabilizer_exponent(v, n)).collect(),
        }
    }
}

/// The level-`n` cover `X_n` with its labels.
#[derive(Clone, Debug)]
pub struct LevelGraph {
    level: u32,
    p: u64,
    graph: SerreGraph,
    vertex_labels: Vec<(usize, u64)>,
    dart_labels: Vec<(usize, u64)>,
    offsets: Vec<usize>,
    fibers: Vec<u64>,
}

impl LevelGraph {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    pub fn into_graph(self) -> SerreGraph {
        self.graph
    }

    /// `(base vertex, coset representative)`.
    pub fn vertex_label(&self, w: usize) -> (usize, u64) {
        self.vertex_labels[w]
    }

    /// `(base dart, σ)`.
    pub fn dart_label(&self, e: usize) -> (usize, u64) {
        self.dart_labels[e]
    }

    pub fn vertex_index(&self, v: usize, sigma: u64) -> usize {
        self.offsets[v] + (sigma % self.fibers[v]) as usize
    }

    pub fn dart_index(&self, s: usize, sigma: u64) -> usize {
        let m = self.p.pow(self.level);
        s * m as usize + (sigma % m) as usize
    }

    pub fn fiber(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v] + self.fibers[v] as usize
    }

    /// The action of `Γ_n` through its generator `1`.
    pub fn group_action(&self) -> CyclicAction {
        let vertex_gen = self
            .vertex_labels
            .iter()
            .map(|&(v, r)| self.vertex_index(v, r + 1))
            .collect();
        let dart_gen = self
            .dart_labels
            .iter()
            .map(|&(s, sigma)| self.dart_index(s, sigma + 1))
            .collect();
        CyclicAction::new(self.graph.clone(), self.p, self.level, vertex_gen, dart_gen)
            .expect("translation is a free action on darts")
    }
}

/// `𝐀_α` over `ℚ[Γ_n]`, the diagonal of `𝐂` (`𝐜_ii = N_{Γ_{n,v_i}}`), and the
/// base degrees.
#[derive(Clone, Debug)]
pub struct LevelMatrices {
    pub p: u64,
    pub level: u32,
    pub a_alpha: Matrix<GroupRingElem>,
    pub c: Vec<GroupRingElem>,
    pub d: Vec<u64>,
    pub stabilizer_exponents: Vec<u32>,
}

impl LevelMatrices {
    pub fn c_matrix(&self) -> Matrix<GroupRingElem> {
        let m = self.p.pow(self.level);
        Matrix::diagonal(self.c.clone(), GroupRingElem::one(m))
    }

    pub fn d_matrix(&self) -> Matrix<GroupRingElem> {
        let m = self.p.pow(self.level);
        let diag = self
            .d
            .iter()
            .map(|&d| GroupRingElem::from_rational(m, BigInt::from(d).into()))
            .collect();
        Matrix::diagonal(diag, GroupRingElem::one(m))
    }
}

/// Shorthand used by tests and examples: integer voltages from `i64`.
pub fn int_voltages(edges: &[(usize, usize, i64)]) -> Vec<(usize, usize, BigInt)> {
    edges.iter().map(|&(a, b, v)| (a, b, BigInt::from(v))).collect()
}
