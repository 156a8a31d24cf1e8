//! Character L-functions of a tower level: `h(u,ψ)`, the exponent of
//! `c(u,ψ) = (1−u²)^{−χ_ψ}`, the unreduced `z(u,ψ)`, special values at
//! `u = 1` and the product and vanishing-order identities.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::character::reassemble_poly;
use crate::algebra::det::cofactor_det;
use crate::algebra::{Character, CycloNum, Determinant, GroupRingElem, Matrix, Rational, Ring, UniPoly};
use crate::error::{Error, Result};
use crate::tower::TowerDatum;

/// Per-character data at one level.
#[derive(Clone, Debug, PartialEq)]
pub struct LfnData {
    pub character: Character,
    pub h: UniPoly<CycloNum>,
    /// `χ_ψ(X_n) = χ(X) − r₀(ψ)`.
    pub chi: i64,
    pub r0: usize,
}

impl LfnData {
    /// Exponent `e` of `c(u,ψ) = (1−u²)^e`.
    pub fn c_exponent(&self) -> i64 {
        -self.chi
    }

    /// `L(u,ψ)^{−1} = (1−u²)^{−χ_ψ}·h(u,ψ)` when the exponent is nonnegative.
    pub fn l_inverse(&self) -> Option<UniPoly<CycloNum>> {
        let e = u64::try_from(self.c_exponent()).ok()?;
        Some(one_minus_u2(self.h.zero_elem()).pow(e).mul(&self.h))
    }
}

fn one_minus_u2(zero: &CycloNum) -> UniPoly<CycloNum> {
    let one = zero.one_like();
    UniPoly::new(vec![one.clone(), zero.clone(), one.neg()], zero.clone())
}

/// Number of base vertices whose level-`n` stabilizer is not in `ker ψ`.
pub fn r0(d: &TowerDatum, n: u32, psi: &Character) -> usize {
    (0..d.base().num_vertices())
        .filter(|&v| !psi.is_trivial_on(d.stabilizer_exponent(v, n)))
        .count()
}

/// `h(u,ψ)` from the level matrices, rows and columns of vertices whose
/// stabilizer is not in `ker ψ` removed.
pub fn h_poly(d: &TowerDatum, n: u32, psi: &Character) -> UniPoly<CycloNum> {
    let lm = d.level_matrices(n);
    let (p, j) = (d.prime(), psi.order_level());
    let kept: Vec<usize> = (0..d.base().num_vertices())
        .filter(|&v| psi.is_trivial_on(lm.stabilizer_exponents[v]))
        .collect();
    let zero = CycloNum::zero(p, j);
    let gamma: Vec<i64> = kept.iter().map(|&v| d.stabilizer_order(v, n) as i64).collect();
    let m = Matrix::from_fn(kept.len(), UniPoly::constant(CycloNum::one(p, j)), |r, c| {
        let (vi, vj) = (kept[r], kept[c]);
        let a = psi
            .apply(lm.a_alpha.get(vi, vj))
            .expect("level matrices live in the character's group ring")
            .mul_int(&BigInt::from(gamma[c]));
        let (c0, c2) = if r == c {
            let q = lm.d[vi] as i64 * gamma[r] - 1;
            (CycloNum::one(p, j), CycloNum::from_rational(p, j, Rational::from_integer(q.into())))
        } else {
            (zero.clone(), zero.clone())
        };
        UniPoly::new(vec![c0, a.neg(), c2], zero.clone())
    });
    m.det()
}

/// `𝐈 − 𝐀_α𝐂u + (𝐃𝐂 − 𝐈)u²` over `ℚ[Γ_n][u]`.
pub fn xi_matrix(d: &TowerDatum, n: u32) -> Matrix<UniPoly<GroupRingElem>> {
    let lm = d.level_matrices(n);
    let m = d.prime().pow(n);
    let zero = GroupRingElem::zero(m);
    Matrix::from_fn(lm.a_alpha.dim(), UniPoly::constant(GroupRingElem::one(m)), |r, c| {
        let a = lm.a_alpha.get(r, c).mul(&lm.c[c]);
        let (c0, c2) = if r == c {
            let dc = lm.c[r].mul_int(&BigInt::from(lm.d[r]));
            (GroupRingElem::one(m), dc.sub(&GroupRingElem::one(m)))
        } else {
            (zero.clone(), zero.clone())
        };
        UniPoly::new(vec![c0, a.neg(), c2], zero.clone())
    })
}

/// `z(u,ψ)`: `ψ` applied to the full, unreduced matrix.
pub fn z_poly(d: &TowerDatum, n: u32, psi: &Character) -> UniPoly<CycloNum> {
    let one = UniPoly::constant(CycloNum::one(d.prime(), psi.order_level()));
    xi_matrix(d, n)
        .map(one, |x| psi.apply_poly(x).expect("same group"))
        .det()
}

/// `ξ(u) = Σ_ψ z(u,ψ)e_ψ`.
pub fn xi_poly(d: &TowerDatum, n: u32) -> Result<UniPoly<GroupRingElem>> {
    let values: Vec<_> = Character::all(d.prime(), n)
        .par_iter()
        .map(|psi| z_poly(d, n, psi))
        .collect();
    reassemble_poly(d.prime(), n, &values)
}

/// `ξ(u)` by cofactor expansion directly over the group ring; small bases only.
pub fn xi_poly_direct(d: &TowerDatum, n: u32) -> Result<UniPoly<GroupRingElem>> {
    if d.base().num_vertices() > 3 {
        return Err(Error::InvalidDatum("direct group-ring determinant limited to 3 vertices".into()));
    }
    Ok(cofactor_det(&xi_matrix(d, n)))
}

pub fn lfunction(d: &TowerDatum, n: u32, psi: &Character) -> LfnData {
    let r0 = r0(d, n, psi);
    LfnData {
        character: *psi,
        h: h_poly(d, n, psi),
        chi: d.base().euler_characteristic() - r0 as i64,
        r0,
    }
}

/// One row per character, ordered by exponent `a`.
pub fn lfunction_table(d: &TowerDatum, n: u32) -> Vec<LfnData> {
    Character::all(d.prime(), n)
        .par_iter()
        .map(|psi| lfunction(d, n, psi))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecialValues {
    pub h_at_1: CycloNum,
    /// `h′(1,ψ₀)`, for the trivial character only.
    pub h_prime_at_1: Option<Rational>,
}

pub fn special_values(d: &TowerDatum, n: u32, psi: &Character) -> SpecialValues {
    special_values_of(&h_poly(d, n, psi), psi)
}

fn special_values_of(h: &UniPoly<CycloNum>, psi: &Character) -> SpecialValues {
    let one = h.zero_elem().one_like();
    let h_prime_at_1 = psi.is_trivial().then(|| {
        h.derivative()
            .eval(&one)
            .to_rational()
            .expect("trivial character values are rational")
    });
    SpecialValues {
        h_at_1: h.eval(&one),
        h_prime_at_1,
    }
}

/// `Π_{ψ ∈ Γ̂_n^{(j)}} h(1,ψ)` for `j = 1..n`, each asserted rational.
pub fn orbit_products(d: &TowerDatum, n: u32) -> Result<Vec<(u32, Rational)>> {
    orbit_products_of(d.prime(), n, &lfunction_table(d, n))
}

fn orbit_products_of(p: u64, n: u32, table: &[LfnData]) -> Result<Vec<(u32, Rational)>> {
    (1..=n)
        .map(|j| {
            let mut acc = CycloNum::one(p, j);
            for row in table.iter().filter(|r| r.character.order_level() == j) {
                acc = acc.mul(&special_values_of(&row.h, &row.character).h_at_1);
            }
            let q = acc.to_rational().ok_or_else(|| {
                Error::NotRational(format!("orbit product of order {p}^{j} is {acc}"))
            })?;
            Ok((j, q))
        })
        .collect()
}

/// Product over all characters of per-character polynomials, lifted to the
/// top level and asserted rational.
fn rational_product(p: u64, n: u32, polys: impl Iterator<Item = UniPoly<CycloNum>>) -> Result<UniPoly<Rational>> {
    let mut acc = UniPoly::constant(CycloNum::one(p, n));
    for h in polys {
        acc = acc.mul(&h.map(CycloNum::zero(p, n), |c| c.lift(n)));
    }
    acc.try_map(Rational::zero(), |c| {
        c.to_rational()
            .ok_or_else(|| Error::NotRational(format!("character product coefficient {c}")))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductFormulaReport {
    /// `h_{X_n}(u)` from the level graph.
    pub direct: UniPoly<Rational>,
    /// `Π_ψ h(u,ψ)`.
    pub product: UniPoly<Rational>,
    pub chi: i64,
    pub chi_sum: i64,
}

impl ProductFormulaReport {
    pub fn holds(&self) -> bool {
        self.direct == self.product && self.chi == self.chi_sum
    }
}

pub fn product_formula_check(d: &TowerDatum, n: u32) -> Result<ProductFormulaReport> {
    let table = lfunction_table(d, n);
    let product = rational_product(d.prime(), n, table.iter().map(|r| r.h.clone()))?;
    let graph = d.build_level_graph(n).into_graph();
    let (direct, chi) = graph.ihara_zeta_reciprocal();
    Ok(ProductFormulaReport {
        direct,
        product,
        chi,
        chi_sum: table.iter().map(|r| r.chi).sum(),
    })
}

/// `(1−u²)^{r₀(ψ)}·h(u,ψ) = z(u,ψ)` for every character.
pub fn reduction_identity_holds(d: &TowerDatum, n: u32) -> bool {
    Character::all(d.prime(), n).par_iter().all(|psi| {
        let h = h_poly(d, n, psi);
        let lhs = one_minus_u2(h.zero_elem()).pow(r0(d, n, psi) as u64).mul(&h);
        lhs == z_poly(d, n, psi)
    })
}

/// `Σ_ψ r₀(ψ) = Σ_w (m_w − 1)` over the vertices `w` of `X_n`.
pub fn sum_order_holds(d: &TowerDatum, n: u32) -> bool {
    let lhs: usize = Character::all(d.prime(), n).iter().map(|psi| r0(d, n, psi)).sum();
    let rhs: u64 = d
        .ramification_profile(n)
        .iter()
        .map(|&(fiber, index)| fiber * (index - 1))
        .sum();
    lhs as u64 == rhs
}

/// Conjugate characters give conjugate `h`: `h(u, ψ^k) = σ_k(h(u,ψ))`.
pub fn galois_stability_holds(d: &TowerDatum, n: u32) -> bool {
    let table = lfunction_table(d, n);
    table.iter().all(|row| {
        let j = row.character.order_level();
        if j == 0 {
            return true;
        }
        let b = row.character.exponent() / d.prime().pow(n - j);
        let base = &table[d.prime().pow(n - j) as usize];
        row.h == base.h.map(CycloNum::zero(d.prime(), j), |c| c.conjugate(b))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingReport {
    pub chi: i64,
    pub h_prime_trivial: Rational,
    pub trivial_vanishes: bool,
    /// Exponents `a` of nontrivial characters with `h(1,ψ) = 0`.
    pub vanishing_nontrivial: Vec<u64>,
}

impl VanishingReport {
    pub fn holds(&self) -> bool {
        self.trivial_vanishes && !Zero::is_zero(&self.h_prime_trivial) && self.vanishing_nontrivial.is_empty()
    }
}

/// Checks `ord_{u=1} h(u,ψ₀) = 1` and `h(1,ψ) ≠ 0` for `ψ ≠ ψ₀`.
pub fn vanishing_order_check(d: &TowerDatum, n: u32) -> Result<VanishingReport> {
    let chi = d.euler_characteristic(n);
    if chi == 0 {
        return Err(Error::Hypothesis(format!("χ(X_{n}) = 0")));
    }
    if !d.build_level_graph(n).graph().connected() {
        return Err(Error::LevelDisconnected(n));
    }
    let table = lfunction_table(d, n);
    let trivial = special_values_of(&table[0].h, &table[0].character);
    let vanishing_nontrivial = table[1..]
        .iter()
        .filter(|r| Ring::is_zero(&special_values_of(&r.h, &r.character).h_at_1))
        .map(|r| r.character.exponent())
        .collect();
    Ok(VanishingReport {
        chi,
        h_prime_trivial: trivial.h_prime_at_1.expect("trivial character"),
        trivial_vanishes: Ring::is_zero(&trivial.h_at_1),
        vanishing_nontrivial,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainIdentityReport {
    /// `h′(1,ψ₀)·Π_{ψ≠ψ₀} h(1,ψ)`.
    pub lhs: Rational,
    /// `−2χ(X_n)κ(X_n)`.
    pub rhs: Rational,
    pub kappa: BigInt,
}

impl MainIdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Relates the special values to the spanning-tree count of `X_n`.
pub fn main_identity(d: &TowerDatum, n: u32) -> Result<MainIdentityReport> {
    let graph = d.build_level_graph(n).into_graph();
    let kappa = graph.spanning_tree_count().map_err(|_| Error::LevelDisconnected(n))?;
    let table = lfunction_table(d, n);
    let trivial = special_values_of(&table[0].h, &table[0].character);
    let mut lhs = trivial.h_prime_at_1.expect("trivial character");
    for (_, q) in orbit_products_of(d.prime(), n, &table)? {
        lhs *= q;
    }
    let chi = graph.euler_characteristic();
    let rhs = Rational::from_integer(BigInt::from(-2 * chi) * &kappa);
    Ok(MainIdentityReport { lhs, rhs, kappa })
}

/// `Π_ψ L(u,ψ)^{−1}` as a product of rational polynomials, when every
/// `c`-exponent is nonnegative; compare with `(1−u²)^{−χ}h_{X_n}(u)`.
pub fn l_product(d: &TowerDatum, n: u32) -> Result<Option<UniPoly<Rational>>> {
    let table = lfunction_table(d, n);
    let Some(parts) = table.iter().map(LfnData::l_inverse).collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    rational_product(d.prime(), n, parts.into_iter()).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;
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

    fn rat_poly(h: &UniPoly<CycloNum>) -> UniPoly<Rational> {
        h.map(Rational::zero(), |c| c.to_rational().expect("rational"))
    }

    #[test]
    fn ex11_characters_at_level_two() {
        let d = ex11();
        let table = lfunction_table(&d, 2);
        let by_a: Vec<UniPoly<Rational>> = table.iter().map(|r| rat_poly(&r.h)).collect();
        assert_eq!(by_a[0], UniPoly::<Rational>::from_ints(&[1, 0, -4, 0, 3]));
        assert_eq!(by_a[2], UniPoly::<Rational>::from_ints(&[1, 0, 4, 0, 3]));
        assert_eq!(by_a[1], UniPoly::<Rational>::from_ints(&[1, 0, 1]));
        assert_eq!(by_a[3], UniPoly::<Rational>::from_ints(&[1, 0, 1]));
        let r0s: Vec<usize> = table.iter().map(|r| r.r0).collect();
        assert_eq!(r0s, vec![0, 1, 0, 1]);
        let c: Vec<i64> = table.iter().map(LfnData::c_exponent).collect();
        assert_eq!(c, vec![0, 1, 0, 1]);
    }

    #[test]
    fn trivial_character_closed_form() {
        let d = ex11();
        for n in 1..=4 {
            let h = rat_poly(&h_poly(&d, n, &Character::trivial(2, n)));
            let q = 1i64 << n;
            assert_eq!(h, UniPoly::<Rational>::from_ints(&[1, 0, -q, 0, q - 1]));
        }
    }

    #[test]
    fn ex11_xi_and_z() {
        let d = ex11();
        let g = |cs: [i64; 4]| GroupRingElem::new(4, cs.iter().map(|&c| rat_int(c)).collect());
        let expected = UniPoly::new(
            vec![g([1, 0, 0, 0]), g([0; 4]), g([0, -2, 0, -2]), g([0; 4]), g([1, 0, 2, 0])],
            g([0; 4]),
        );
        assert_eq!(xi_poly(&d, 2).unwrap(), expected);
        assert_eq!(xi_poly_direct(&d, 2).unwrap(), expected);
        let z = rat_poly(&z_poly(&d, 2, &Character::new(2, 2, 1)));
        assert_eq!(z, UniPoly::<Rational>::from_ints(&[1, 0, 0, 0, -1]));
        assert!(reduction_identity_holds(&d, 2));
    }

    #[test]
    fn ex11_special_values_and_identities() {
        let d = ex11();
        let sv = special_values(&d, 2, &Character::trivial(2, 2));
        assert!(Ring::is_zero(&sv.h_at_1));
        assert_eq!(sv.h_prime_at_1, Some(rat_int(4)));
        let two = special_values(&d, 2, &Character::new(2, 2, 2));
        assert_eq!(two.h_at_1.to_rational(), Some(rat_int(8)));
        assert_eq!(orbit_products(&d, 2).unwrap(), vec![(1, rat_int(8)), (2, rat_int(4))]);
        let main = main_identity(&d, 2).unwrap();
        assert_eq!(main.kappa, BigInt::from(32));
        assert_eq!(main.lhs, rat_int(128));
        assert!(main.holds());
        let report = product_formula_check(&d, 2).unwrap();
        assert_eq!(
            report.direct,
            UniPoly::<Rational>::from_ints(&[1, 0, 2, 0, -9, 0, -20, 0, -1, 0, 18, 0, 9])
        );
        assert!(report.holds());
        assert_eq!(report.chi_sum, -2);
        assert!(sum_order_holds(&d, 2));
        assert!(galois_stability_holds(&d, 3));
        assert!(vanishing_order_check(&d, 2).unwrap().holds());
        assert!(matches!(vanishing_order_check(&d, 1), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn l_product_matches_zeta_reciprocal() {
        let d = ex11();
        let prod = l_product(&d, 2).unwrap().unwrap();
        let (h, chi) = d.build_level_graph(2).graph().ihara_zeta_reciprocal();
        assert_eq!(chi, -2);
        let c = UniPoly::<Rational>::from_ints(&[1, 0, -1]).pow(2);
        assert_eq!(prod, c.mul(&h));
    }
}
