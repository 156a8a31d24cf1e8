//! Group-ring valued invariants of a tower level: `χ_{ℚ[G]}`, `η(u)`, the
//! exponent vector of `γ(u)`, the norm and trace down to a subgroup, and the
//! comparison behind the failure of inflation.
//!
//! Subgroups of `G = ℤ/p^nℤ` are named by `h` with `|H| = p^h`. Elements of
//! `ℚ[H]` are stored in the coordinates of `ℤ/p^hℤ`, element `k` standing for
//! `k·p^{n−h}` in `G`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::character::reassemble_poly;
use crate::algebra::det::cofactor_det;
use crate::algebra::{Character, CycloNum, Determinant, GroupRingElem, Matrix, Ring, UniPoly};
use crate::error::{Error, Result};
use crate::lfunctions::{h_poly, xi_matrix};
use crate::tower::TowerDatum;

/// `Σ_v e_{Γ_{n,v}} − |E_X|`.
pub fn equivariant_euler_char(d: &TowerDatum, n: u32) -> GroupRingElem {
    let m = d.prime().pow(n);
    let mut acc = GroupRingElem::zero(m);
    for v in 0..d.base().num_vertices() {
        acc = acc.add(&GroupRingElem::idempotent(m, d.stabilizer_order(v, n)));
    }
    let edges = BigInt::from(d.base().num_edges());
    acc.sub(&GroupRingElem::from_rational(m, edges.into()))
}

/// `η(u) = Σ_ψ h(u,ψ)e_ψ`.
pub fn eta_poly(d: &TowerDatum, n: u32) -> Result<UniPoly<GroupRingElem>> {
    let values: Vec<_> = Character::all(d.prime(), n)
        .par_iter()
        .map(|psi| h_poly(d, n, psi))
        .collect();
    reassemble_poly(d.prime(), n, &values)
}

/// `η(u)` by cofactor expansion over `ℚ[G][u]` of
/// `𝐈 − E𝐀_α𝐂u + diag((d_i|Γ_i| − 1)e_i)u²`, `E = diag(e_{Γ_i})`.
pub fn eta_poly_direct(d: &TowerDatum, n: u32) -> Result<UniPoly<GroupRingElem>> {
    if d.base().num_vertices() > 3 {
        return Err(Error::InvalidDatum("direct group-ring determinant limited to 3 vertices".into()));
    }
    let m = d.prime().pow(n);
    let full = xi_matrix(d, n);
    let zero = GroupRingElem::zero(m);
    let matrix = Matrix::from_fn(full.dim(), full.one().clone(), |r, c| {
        let order = d.stabilizer_order(r, n);
        let e = GroupRingElem::idempotent(m, order);
        let a = full.get(r, c).coeff(1).mul(&e);
        let (c0, c2) = if r == c {
            let q = d.base().degree(r) as i64 * order as i64 - 1;
            (GroupRingElem::one(m), e.mul_int(&BigInt::from(q)))
        } else {
            (zero.clone(), zero.clone())
        };
        UniPoly::new(vec![c0, a, c2], zero.clone())
    });
    Ok(cofactor_det(&matrix))
}

/// `η_{(X_n, H)}` for the subgroup of order `p^h` acting on the level graph.
pub fn eta_subgroup(d: &TowerDatum, n: u32, h: u32) -> Result<UniPoly<GroupRingElem>> {
    d.build_level_graph(n).group_action().restrict(h).eta()
}

/// `χ_{ℚ[H]}(X_n)` for the subgroup of order `p^h`.
pub fn equivariant_euler_char_subgroup(d: &TowerDatum, n: u32, h: u32) -> GroupRingElem {
    d.build_level_graph(n)
        .group_action()
        .restrict(h)
        .equivariant_euler_characteristic()
}

/// `γ(u) = Σ_ψ (1−u²)^{−χ_ψ}e_ψ`, kept as the vector `(χ_ψ)_ψ` over
/// characters ordered by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub p: u64,
    pub h: u32,
    pub chi: Vec<i64>,
}

impl Gamma {
    pub fn from_euler_char(p: u64, h: u32, chi: &GroupRingElem) -> Result<Self> {
        let chi = Character::all(p, h)
            .iter()
            .map(|psi| {
                let v = psi.apply(chi)?;
                let q = v
                    .to_rational()
                    .filter(|q| q.is_integer())
                    .ok_or_else(|| Error::NotRational(format!("χ_ψ = {v}")))?;
                Ok(i64::try_from(q.to_integer()).expect("small Euler characteristic"))
            })
            .collect::<Result<_>>()?;
        Ok(Gamma { p, h, chi })
    }

    /// The expanded polynomial when every `χ_ψ ≤ 0`.
    pub fn to_poly(&self) -> Result<Option<UniPoly<GroupRingElem>>> {
        let m = self.p.pow(self.h);
        let mut values = Vec::with_capacity(self.chi.len());
        for (psi, &chi) in Character::all(self.p, self.h).iter().zip(&self.chi) {
            let Ok(e) = u64::try_from(-chi) else {
                return Ok(None);
            };
            let j = psi.order_level();
            let one = CycloNum::one(self.p, j);
            let base = UniPoly::new(vec![one.clone(), one.zero_like(), one.neg()], one.zero_like());
            values.push(base.pow(e));
        }
        let poly = reassemble_poly(self.p, self.h, &values)?;
        debug_assert_eq!(poly.zero_elem().modulus(), m);
        Ok(Some(poly))
    }

    /// `N_{G/H}` on exponent vectors: `ψ|_H = χ` collects the exponents of
    /// every `ψ` restricting to `χ`.
    pub fn norm_to(&self, h: u32) -> Gamma {
        assert!(h <= self.h);
        let sub = self.p.pow(h);
        let mut chi = vec![0; sub as usize];
        for (a, &c) in self.chi.iter().enumerate() {
            chi[a % sub as usize] += c;
        }
        Gamma { p: self.p, h, chi }
    }
}

pub fn gamma(d: &TowerDatum, n: u32) -> Result<Gamma> {
    Gamma::from_euler_char(d.prime(), n, &equivariant_euler_char(d, n))
}

pub fn gamma_subgroup(d: &TowerDatum, n: u32, h: u32) -> Result<Gamma> {
    Gamma::from_euler_char(d.prime(), h, &equivariant_euler_char_subgroup(d, n, h))
}

/// Coordinates of `g ∈ ℤ/p^nℤ` as (coset representative in `0..r`, element
/// of `H ≅ ℤ/p^hℤ`), `r = p^{n−h}`.
fn split(g: u64, r: u64) -> (usize, i64) {
    ((g % r) as usize, (g / r) as i64)
}

/// Multiplication by `x` on `ℚ[G]` as a matrix over `ℚ[H][u]` in the basis of
/// coset representatives.
fn multiplication_matrix(x: &UniPoly<GroupRingElem>, p: u64, n: u32, h: u32) -> Matrix<UniPoly<GroupRingElem>> {
    let m = p.pow(n);
    let mh = p.pow(h);
    let r = m / mh;
    let zero = GroupRingElem::zero(mh);
    let deg = x.degree().unwrap_or(0);
    let mut entries = vec![vec![vec![zero.clone(); deg + 1]; r as usize]; r as usize];
    for (k, coeff) in x.coeffs().iter().enumerate() {
        for (e, c) in coeff.coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            for i in 0..r {
                let (row, hk) = split((e as u64 + i) % m, r);
                let term = GroupRingElem::basis(mh, hk).scale(c);
                let cell = &mut entries[row][i as usize][k];
                *cell = cell.add(&term);
            }
        }
    }
    let one = UniPoly::constant(GroupRingElem::one(mh));
    Matrix::from_fn(r as usize, one, |i, j| UniPoly::new(entries[i][j].clone(), zero.clone()))
}

fn subgroup_coords(x: &GroupRingElem, h: u32) -> (u64, u32) {
    let (p, n) = crate::algebra::det::cyclic_prime_power(x.modulus());
    assert!(h <= n, "subgroup larger than the group");
    (p, n)
}

/// `N_{G/H}(x) = det_{ℚ[H][u]}(m_x)`, coefficientwise in `u`.
pub fn norm_map(x: &UniPoly<GroupRingElem>, h: u32) -> UniPoly<GroupRingElem> {
    let (p, n) = subgroup_coords(x.zero_elem(), h);
    multiplication_matrix(x, p, n, h).det()
}

/// `T_{G/H}(x) = tr_{ℚ[H]}(m_x)`.
pub fn trace_map(x: &GroupRingElem, h: u32) -> GroupRingElem {
    let (p, n) = subgroup_coords(x, h);
    let poly = UniPoly::constant(x.clone());
    multiplication_matrix(&poly, p, n, h).trace().coeff(0)
}

/// `π_H: ℚ[G][u] → ℚ[G/H][u]`, `G/H ≅ ℤ/p^{n−h}ℤ`.
pub fn project(x: &UniPoly<GroupRingElem>, h: u32) -> UniPoly<GroupRingElem> {
    let (p, n) = subgroup_coords(x.zero_elem(), h);
    let r = p.pow(n - h);
    x.map(GroupRingElem::zero(r), |c| c.project(r))
}

#[derive(Clone, Debug, PartialEq)]
pub struct InflationReport {
    /// `π_H(η_{(X_n, G)})`.
    pub lhs: UniPoly<GroupRingElem>,
    /// `η_{(X_n/H, G/H)}`.
    pub rhs: UniPoly<GroupRingElem>,
    pub equal: bool,
}

pub fn inflation_check(d: &TowerDatum, n: u32, h: u32) -> Result<InflationReport> {
    let lhs = project(&eta_poly(d, n)?, h);
    let rhs = d.build_level_graph(n).group_action().quotient(h)?.eta()?;
    let equal = lhs == rhs;
    Ok(InflationReport { lhs, rhs, equal })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormReport {
    pub norm_of_eta: UniPoly<GroupRingElem>,
    pub eta_subgroup: UniPoly<GroupRingElem>,
    pub norm_of_gamma: Gamma,
    pub gamma_subgroup: Gamma,
    pub trace_of_euler_char: GroupRingElem,
    pub euler_char_subgroup: GroupRingElem,
}

impl NormReport {
    pub fn eta_holds(&self) -> bool {
        self.norm_of_eta == self.eta_subgroup
    }

    pub fn gamma_holds(&self) -> bool {
        self.norm_of_gamma == self.gamma_subgroup
    }

    pub fn trace_holds(&self) -> bool {
        self.trace_of_euler_char == self.euler_char_subgroup
    }
}

/// Induction for the subgroup of order `p^h`: the norm of the `G`-objects
/// against the same objects computed for the restricted action.
pub fn norm_check(d: &TowerDatum, n: u32, h: u32) -> Result<NormReport> {
    if h > n {
        return Err(Error::InvalidDatum(format!("subgroup of order p^{h} in ℤ/p^{n}")));
    }
    let action = d.build_level_graph(n).group_action().restrict(h);
    let chi_h = action.equivariant_euler_characteristic();
    Ok(NormReport {
        norm_of_eta: norm_map(&eta_poly(d, n)?, h),
        eta_subgroup: action.eta()?,
        norm_of_gamma: gamma(d, n)?.norm_to(h),
        gamma_subgroup: Gamma::from_euler_char(d.prime(), h, &chi_h)?,
        trace_of_euler_char: trace_map(&equivariant_euler_char(d, n), h),
        euler_char_subgroup: chi_h,
    })
}

/// Renders an element of `ℚ[H]` with labels in `G`.
pub fn subgroup_label_scale(p: u64, n: u32, h: u32) -> u64 {
    p.pow(n - h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int, Rational};
    use crate::tower::{int_voltages, Ramification};

    fn ex11() -> TowerDatum {
        TowerDatum::from_edges(
            vec!["v1".into(), "v2".into()],
            2,
            &int_voltages(&[(0, 1, 1), (0, 1, 2)]),
            vec![Ramification::Unramified, Ramification::Ramified(1)],
        )
        .unwrap()
    }

    fn g(m: u64, cs: &[Rational]) -> GroupRingElem {
        GroupRingElem::new(m, cs.to_vec())
    }

    #[test]
    fn ex11_eta_routes() {
        let d = ex11();
        let eta = eta_poly(&d, 2).unwrap();
        assert_eq!(eta, eta_poly_direct(&d, 2).unwrap());
        assert_eq!(eta.coeff(2), g(4, &[rat(1, 2), rat_int(-2), rat(-1, 2), rat_int(-2)]));
        assert_eq!(eta.coeff(4), GroupRingElem::idempotent(4, 2).scale(&rat_int(3)));
        assert_eq!(eta, d.build_level_graph(2).group_action().eta().unwrap());
    }

    #[test]
    fn ex11_euler_characteristics() {
        let d = ex11();
        let e2 = GroupRingElem::idempotent(4, 2);
        assert_eq!(equivariant_euler_char(&d, 2), e2.sub(&GroupRingElem::one(4)));
        assert!(equivariant_euler_char(&d, 1).is_zero());
        assert_eq!(gamma(&d, 2).unwrap().chi, vec![0, -1, 0, -1]);
    }

    #[test]
    fn ex11_norm_and_trace() {
        let d = ex11();
        let report = norm_check(&d, 2, 1).unwrap();
        assert!(report.eta_holds() && report.gamma_holds() && report.trace_holds());
        let eh = GroupRingElem::idempotent(2, 2);
        assert_eq!(report.norm_of_eta.coeff(8), eh.scale(&rat_int(9)));
        let gamma_h = report.gamma_subgroup.to_poly().unwrap().unwrap();
        let expected = UniPoly::new(
            vec![
                GroupRingElem::one(2),
                GroupRingElem::zero(2),
                g(2, &[rat_int(-1), rat_int(1)]),
                GroupRingElem::zero(2),
                g(2, &[rat(1, 2), rat(-1, 2)]),
            ],
            GroupRingElem::zero(2),
        );
        assert_eq!(gamma_h, expected);
        let gamma_g = gamma(&d, 2).unwrap().to_poly().unwrap().unwrap();
        assert_eq!(norm_map(&gamma_g, 1), expected);
        // T(e_K) for K = H = ⟨2⟩ in ℤ/4: index 2 times e_H.
        assert_eq!(trace_map(&GroupRingElem::idempotent(4, 2), 1), eh.scale(&rat_int(2)));
        assert!(trace_map(&GroupRingElem::basis(4, 1), 1).is_zero());
    }

    #[test]
    fn ex11_inflation() {
        let d = ex11();
        let report = inflation_check(&d, 2, 1).unwrap();
        let a = GroupRingElem::basis(2, 1);
        let lhs = UniPoly::new(
            vec![
                GroupRingElem::one(2),
                GroupRingElem::zero(2),
                a.scale(&rat_int(-4)),
                GroupRingElem::zero(2),
                GroupRingElem::one(2).scale(&rat_int(3)),
            ],
            GroupRingElem::zero(2),
        );
        assert_eq!(report.lhs, lhs);
        assert!(!report.equal);
        assert_eq!(report.rhs, eta_poly(&d, 1).unwrap());
        let full = inflation_check(&d, 2, 0).unwrap();
        assert!(full.equal);
    }

    #[test]
    fn norm_is_multiplicative() {
        let x = UniPoly::new(
            vec![GroupRingElem::one(8), GroupRingElem::basis(8, 3).scale(&rat(-1, 2))],
            GroupRingElem::zero(8),
        );
        let y = UniPoly::new(
            vec![GroupRingElem::one(8), GroupRingElem::zero(8), GroupRingElem::idempotent(8, 4)],
            GroupRingElem::zero(8),
        );
        for h in 0..=3 {
            assert_eq!(norm_map(&x.mul(&y), h), norm_map(&x, h).mul(&norm_map(&y, h)));
        }
        assert_eq!(norm_map(&x, 3), x);
    }
}
