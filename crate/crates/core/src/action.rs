//! Actions of a cyclic `p`-group `ℤ/p^hℤ` on a graph, given by the
//! permutations of vertices and darts induced by the generator `1`.
//!
//! This is independent of any voltage description: the per-character
//! determinant is assembled from vertex orbit representatives `w_i`, so it
//! also serves as a second route to the L-functions of a tower level and to
//! the zeta functions of subgroup actions and quotient actions.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::algebra::character::reassemble_poly;
use crate::algebra::{Character, CycloNum, Determinant, GroupRingElem, Matrix, Ring, UniPoly};
use crate::error::{Error, Result};
use crate::graph::{Dart, SerreGraph};

#[derive(Clone, Debug)]
pub struct CyclicAction {
    graph: SerreGraph,
    p: u64,
    h: u32,
    vertex_gen: Vec<usize>,
    dart_gen: Vec<usize>,
}

/// A vertex orbit: its representative (least index), its size, and for each
/// member `w` the least `σ` with `w = σ·rep`.
#[derive(Clone, Debug)]
struct Orbits {
    rep: Vec<usize>,
    size: Vec<u64>,
    orbit_of: Vec<usize>,
    offset_of: Vec<u64>,
}

fn orbits(perm: &[usize]) -> Orbits {
    let n = perm.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut offset_of = vec![0; n];
    let (mut rep, mut size) = (Vec::new(), Vec::new());
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = rep.len();
        let mut w = start;
        let mut k = 0;
        loop {
            orbit_of[w] = id;
            offset_of[w] = k;
            k += 1;
            w = perm[w];
            if w == start {
                break;
            }
        }
        rep.push(start);
        size.push(k);
    }
    Orbits {
        rep,
        size,
        orbit_of,
        offset_of,
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&x| x < perm.len() && !std::mem::replace(&mut seen[x], true))
}

fn compose_power(perm: &[usize], k: u64) -> Vec<usize> {
    (0..perm.len())
        .map(|mut x| {
            for _ in 0..k {
                x = perm[x];
            }
            x
        })
        .collect()
}

impl CyclicAction {
    /// Checks that the generator is a graph automorphism of order dividing
    /// `p^h` acting freely on darts.
    pub fn new(graph: SerreGraph, p: u64, h: u32, vertex_gen: Vec<usize>, dart_gen: Vec<usize>) -> Result<Self> {
        if vertex_gen.len() != graph.num_vertices() || dart_gen.len() != graph.num_darts() {
            return Err(Error::InvalidGraph("action permutations have the wrong size".into()));
        }
        if !is_permutation(&vertex_gen) || !is_permutation(&dart_gen) {
            return Err(Error::InvalidGraph("action generator is not a bijection".into()));
        }
        for (e, d) in graph.darts().iter().enumerate() {
            let ge = graph.dart(dart_gen[e]);
            if ge.origin != vertex_gen[d.origin]
                || ge.terminus != vertex_gen[d.terminus]
                || ge.inverse != dart_gen[d.inverse]
            {
                return Err(Error::InvalidGraph(format!(
                    "action generator does not respect dart {e}"
                )));
            }
        }
        let m = p.pow(h);
        let dart_orbits = orbits(&dart_gen);
        if dart_orbits.size.iter().any(|&s| s != m) {
            return Err(Error::InvalidGraph("action is not free on darts".into()));
        }
        if orbits(&vertex_gen).size.iter().any(|&s| !m.is_multiple_of(s)) {
            return Err(Error::InvalidGraph("generator order does not divide the group order".into()));
        }
        Ok(CyclicAction {
            graph,
            p,
            h,
            vertex_gen,
            dart_gen,
        })
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `h` with group order `p^h`.
    pub fn exponent(&self) -> u32 {
        self.h
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.h)
    }

    /// The restriction to the subgroup of order `p^k`, generated by
    /// `p^{h−k}`. Its element `j` is the element `j·p^{h−k}` of the full
    /// group.
    pub fn restrict(&self, k: u32) -> CyclicAction {
        assert!(k <= self.h);
        let step = self.p.pow(self.h - k);
        CyclicAction {
            graph: self.graph.clone(),
            p: self.p,
            h: k,
            vertex_gen: compose_power(&self.vertex_gen, step),
            dart_gen: compose_power(&self.dart_gen, step),
        }
    }

    /// Quotient by the subgroup of order `p^k`, with the induced action of
    /// the quotient group `ℤ/p^{h−k}ℤ`.
    pub fn quotient(&self, k: u32) -> Result<CyclicAction> {
        let sub = self.restrict(k);
        let vo = orbits(&sub.vertex_gen);
        let dorb = orbits(&sub.dart_gen);
        let names = vo.rep.iter().map(|&w| self.graph.vertex_names()[w].clone()).collect();
        let darts: Vec<Dart> = dorb
            .rep
            .iter()
            .map(|&e| {
                let d = self.graph.dart(e);
                Dart {
                    origin: vo.orbit_of[d.origin],
                    terminus: vo.orbit_of[d.terminus],
                    inverse: dorb.orbit_of[d.inverse],
                }
            })
            .collect();
        let graph = SerreGraph::new(names, darts)?;
        let vertex_gen = vo.rep.iter().map(|&w| vo.orbit_of[self.vertex_gen[w]]).collect();
        let dart_gen = dorb.rep.iter().map(|&e| dorb.orbit_of[self.dart_gen[e]]).collect();
        CyclicAction::new(graph, self.p, self.h - k, vertex_gen, dart_gen)
    }

    /// Vertex orbit representatives with their stabilizer orders.
    pub fn vertex_orbits(&self) -> Vec<(usize, u64)> {
        let o = orbits(&self.vertex_gen);
        o.rep
            .iter()
            .zip(&o.size)
            .map(|(&r, &s)| (r, self.order() / s))
            .collect()
    }

    pub fn num_dart_orbits(&self) -> usize {
        self.graph.num_darts() / self.order() as usize
    }

    /// `χ_{ℚ[G]} = Σ_{vertex orbits} e_{G_w} − |E_X|`.
    pub fn equivariant_euler_characteristic(&self) -> GroupRingElem {
        let m = self.order();
        let mut acc = GroupRingElem::zero(m);
        for (_, stab) in self.vertex_orbits() {
            acc = acc.add(&GroupRingElem::idempotent(m, stab));
        }
        let edges = (self.num_dart_orbits() / 2) as i64;
        acc.sub(&GroupRingElem::from_rational(m, BigInt::from(edges).into()))
    }

    /// `h(u, ψ) = det(I − M_ψ u + Q u²)` on the orbits whose stabilizer lies
    /// in `ker ψ`, with `M_ψ[i][j] = Σ ψ(σ)` over darts `ε` leaving `w_j` with
    /// `t(ε) = σ·w_i`, and `Q_jj = val(w_j) − 1`.
    pub fn h_character(&self, psi: &Character) -> UniPoly<CycloNum> {
        assert_eq!(psi.modulus(), self.order(), "character of the wrong group");
        let o = orbits(&self.vertex_gen);
        let kept: Vec<usize> = (0..o.rep.len())
            .filter(|&i| {
                let e = o.size[i].trailing_zeros_base(self.p);
                psi.is_trivial_on(e)
            })
            .collect();
        let mut index = vec![usize::MAX; o.rep.len()];
        for (pos, &i) in kept.iter().enumerate() {
            index[i] = pos;
        }
        let (p, j) = (self.p, psi.order_level());
        let zero = CycloNum::zero(p, j);
        let dim = kept.len();
        let mut adj = vec![vec![zero.clone(); dim]; dim];
        for (col, &orb) in kept.iter().enumerate() {
            let w = o.rep[orb];
            for e in self.graph.darts_from(w) {
                let t = self.graph.dart(e).terminus;
                let row = index[o.orbit_of[t]];
                if row == usize::MAX {
                    continue;
                }
                adj[row][col] = adj[row][col].add(&psi.value(o.offset_of[t] as i64));
            }
        }
        let poly_one = UniPoly::constant(CycloNum::one(p, j));
        let m = Matrix::from_fn(dim, poly_one, |r, c| {
            let w = o.rep[kept[c]];
            let diag = r == c;
            let c0 = if diag { CycloNum::one(p, j) } else { zero.clone() };
            let c2 = if diag {
                CycloNum::from_rational(p, j, BigInt::from(self.graph.degree(w) as i64 - 1).into())
            } else {
                zero.clone()
            };
            UniPoly::new(vec![c0, adj[r][c].neg(), c2], zero.clone())
        });
        m.det()
    }

    /// `η(u) = Σ_ψ h(u, ψ)·e_ψ` over `ℚ[ℤ/p^hℤ]`.
    pub fn eta(&self) -> Result<UniPoly<GroupRingElem>> {
        let values: Vec<UniPoly<CycloNum>> = Character::all(self.p, self.h)
            .par_iter()
            .map(|psi| self.h_character(psi))
            .collect();
        reassemble_poly(self.p, self.h, &values)
    }

    /// Per-character Euler characteristics `χ_ψ = ψ(χ_{ℚ[G]})`.
    pub fn character_euler_characteristics(&self) -> Vec<i64> {
        let chi = self.equivariant_euler_characteristic();
        Character::all(self.p, self.h)
            .iter()
            .map(|psi| {
                let v = psi.apply(&chi).expect("same group").to_rational().expect("rational");
                i64::try_from(v.to_integer()).expect("small")
            })
            .collect()
    }
}

trait PadicExponent {
    fn trailing_zeros_base(self, p: u64) -> u32;
}

impl PadicExponent for u64 {
    /// `e` with `self = p^e` (orbit sizes are powers of `p`).
    fn trailing_zeros_base(mut self, p: u64) -> u32 {
        let mut e = 0;
        while self > 1 && self.is_multiple_of(p) {
            self /= p;
            e += 1;
        }
        debug_assert!(self.is_one());
        e
    }
}
