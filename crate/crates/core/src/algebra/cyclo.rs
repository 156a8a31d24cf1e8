//! Exact arithmetic in the cyclotomic fields `ℚ(ζ_{p^j})`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(p^j)-1}` after
//! reduction modulo `Φ_{p^j}(x) = Σ_{i<p} x^{i·p^{j-1}}`, so two elements are
//! equal exactly when their coefficient vectors are.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{format_rational, ord_p_rational, phi_prime_power, Rational, Valuation};
use super::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    p: u64,
    level: u32,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn from_rational(p: u64, level: u32, q: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); phi_prime_power(p, level) as usize];
        coeffs[0] = q;
        CycloNum { p, level, coeffs }
    }

    pub fn zero(p: u64, level: u32) -> Self {
        Self::from_rational(p, level, Rational::zero())
    }

    pub fn one(p: u64, level: u32) -> Self {
        Self::from_rational(p, level, Rational::one())
    }

    /// `ζ_{p^level}^k`.
    pub fn root_of_unity(p: u64, level: u32, k: i64) -> Self {
        let order = p.pow(level) as i64;
        let mut dense = vec![Rational::zero(); order as usize];
        dense[k.rem_euclid(order) as usize] = Rational::one();
        Self::reduce(p, level, dense)
    }

    /// Builds an element from coefficients of an arbitrary polynomial in `ζ`.
    pub fn from_poly_coeffs(p: u64, level: u32, poly: &[Rational]) -> Self {
        let order = p.pow(level) as usize;
        let mut dense = vec![Rational::zero(); order];
        for (e, c) in poly.iter().enumerate() {
            dense[e % order] += c;
        }
        Self::reduce(p, level, dense)
    }

    /// Reduces a dense vector indexed by exponents `0..p^level`.
    fn reduce(p: u64, level: u32, mut dense: Vec<Rational>) -> Self {
        let phi = phi_prime_power(p, level) as usize;
        if level > 0 {
            let step = p.pow(level - 1) as usize;
            for e in (phi..dense.len()).rev() {
                if Zero::is_zero(&dense[e]) {
                    continue;
                }
                let c = std::mem::replace(&mut dense[e], Rational::zero());
                // ζ^φ = -Σ_{i=0}^{p-2} ζ^{i·step}
                for i in 0..(p as usize - 1) {
                    dense[e - phi + i * step] -= &c;
                }
            }
        }
        dense.truncate(phi);
        CycloNum {
            p,
            level,
            coeffs: dense,
        }
    }

    /// Multiplication by `ζ^k`: a rotation of exponents.
    pub fn mul_root(&self, k: i64) -> Self {
        let order = self.order() as i64;
        let mut dense = vec![Rational::zero(); order as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                dense[(e as i64 + k).rem_euclid(order) as usize] = c.clone();
            }
        }
        Self::reduce(self.p, self.level, dense)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    fn order(&self) -> u64 {
        self.p.pow(self.level)
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.p == other.p && self.level == other.level,
            "cyclotomic level mismatch: Q(ζ_{}^{}) vs Q(ζ_{}^{})",
            self.p,
            self.level,
            other.p,
            other.level
        );
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses `self` in `ℚ(ζ_{p^level})` for a level at least as high,
    /// through `ζ_{p^j} = ζ_{p^{j'}}^{p^{j'-j}}`.
    pub fn lift(&self, level: u32) -> Self {
        assert!(level >= self.level, "cannot lift to a lower level");
        if level == self.level {
            return self.clone();
        }
        let scale = self.p.pow(level - self.level) as usize;
        let mut dense = vec![Rational::zero(); self.p.pow(level) as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            dense[e * scale] = c.clone();
        }
        Self::reduce(self.p, level, dense)
    }

    /// Galois automorphism `ζ ↦ ζ^k` for `k` prime to `p`.
    pub fn conjugate(&self, k: u64) -> Self {
        let order = self.order();
        debug_assert!(k.gcd(&self.p) == 1 || order == 1);
        let mut dense = vec![Rational::zero(); order as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                dense[((e as u64 * k) % order) as usize] += c;
            }
        }
        Self::reduce(self.p, self.level, dense)
    }

    /// Exponents `k` in `1..p^level` prime to `p` (all Galois conjugations).
    pub fn galois_exponents(p: u64, level: u32) -> Vec<u64> {
        let order = p.pow(level);
        if order == 1 {
            return vec![1];
        }
        (1..order).filter(|k| k % p != 0).collect()
    }

    /// Field norm down to `ℚ`: the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let mut acc = CycloNum::one(self.p, self.level);
        for k in Self::galois_exponents(self.p, self.level) {
            acc = Ring::mul(&acc, &self.conjugate(k));
        }
        acc.to_rational()
            .expect("a product over the full Galois orbit is rational")
    }

    /// The unique extension of `ord_p` to `ℚ(ζ_{p^j})`, normalized by
    /// `ord_p(p) = 1`.
    pub fn ord_p(&self) -> Valuation {
        match ord_p_rational(&self.norm(), self.p) {
            Valuation::Infinite => Valuation::Infinite,
            Valuation::Finite(v) => Valuation::Finite(
                v / Rational::from_integer(BigInt::from(phi_prime_power(self.p, self.level))),
            ),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloNum {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

impl Ring for CycloNum {
    fn zero_like(&self) -> Self {
        CycloNum::zero(self.p, self.level)
    }

    fn one_like(&self) -> Self {
        CycloNum::one(self.p, self.level)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        CycloNum {
            p: self.p,
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn neg(&self) -> Self {
        CycloNum {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        if self.level == 0 {
            return CycloNum::from_rational(self.p, 0, &self.coeffs[0] * &rhs.coeffs[0]);
        }
        let mut dense = vec![Rational::zero(); self.order() as usize];
        let order = dense.len();
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    dense[(i + j) % order] += a * b;
                }
            }
        }
        Self::reduce(self.p, self.level, dense)
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        self.scale(&Rational::from_integer(k.clone()))
    }
}

impl Field for CycloNum {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        // x^{-1} = (Π_{k≠1} σ_k(x)) / N(x)
        let mut others = CycloNum::one(self.p, self.level);
        for k in Self::galois_exponents(self.p, self.level) {
            if k != 1 {
                others = Ring::mul(&others, &self.conjugate(k));
            }
        }
        let n = Ring::mul(&others, self)
            .to_rational()
            .expect("norm is rational");
        Some(others.scale(&n.recip()))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]@({},{})", coeffs.join(", "), self.p, self.level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn zeta(p: u64, j: u32) -> CycloNum {
        CycloNum::root_of_unity(p, j, 1)
    }

    #[test]
    fn cyclotomic_relations_hold() {
        // ζ_4² = -1
        let i = zeta(2, 2);
        assert_eq!(Ring::mul(&i, &i), CycloNum::from_rational(2, 2, rat_int(-1)));
        // 1 + ζ_3 + ζ_3² = 0
        let w = zeta(3, 1);
        let s = CycloNum::one(3, 1).add(&w).add(&Ring::mul(&w, &w));
        assert!(Ring::is_zero(&s));
        // ζ_9^9 = 1
        assert!(zeta(3, 2).pow(9).is_one());
        assert_eq!(zeta(3, 2).pow(3), zeta(3, 1).lift(2));
    }

    #[test]
    fn norms_of_small_elements() {
        assert_eq!(CycloNum::one(2, 3).norm(), rat_int(1));
        let one = CycloNum::one(2, 2);
        assert_eq!(zeta(2, 2).sub(&one).norm(), rat_int(2));
        let one = CycloNum::one(3, 1);
        assert_eq!(zeta(3, 1).sub(&one).norm(), rat_int(3));
    }

    #[test]
    fn norm_agrees_with_resultant() {
        // N(a + bζ) for ζ = ζ_5: resultant of a + bT with Φ_5, i.e.
        // Σ a^k (-b)^{4-k} scaled: (-b)^4 Φ_5(-a/b).
        let x = CycloNum::from_poly_coeffs(5, 1, &[rat_int(2), rat_int(3)]);
        let t = rat(-2, 3);
        let mut phi = rat_int(0);
        let mut power = rat_int(1);
        for _ in 0..5 {
            phi += &power;
            power *= &t;
        }
        assert_eq!(x.norm(), phi * rat_int(81));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            CycloNum::from_rational(2, 2, rat_int(2)).ord_p(),
            Valuation::Finite(rat_int(1))
        );
        let one = CycloNum::one(2, 2);
        assert_eq!(zeta(2, 2).sub(&one).ord_p(), Valuation::Finite(rat(1, 2)));
        assert_eq!(
            CycloNum::from_rational(2, 1, rat_int(8)).ord_p(),
            Valuation::Finite(rat_int(3))
        );
        assert_eq!(CycloNum::zero(3, 2).ord_p(), Valuation::Infinite);
    }

    #[test]
    fn inverse_roundtrip() {
        let x = CycloNum::from_poly_coeffs(3, 2, &[rat_int(1), rat(2, 3), rat_int(0), rat_int(-5)]);
        let y = x.inv().unwrap();
        assert!(Ring::mul(&x, &y).is_one());
        assert!(CycloNum::zero(3, 2).inv().is_none());
    }

    fn arb_cyclo(p: u64, level: u32) -> impl Strategy<Value = CycloNum> {
        let phi = phi_prime_power(p, level) as usize;
        proptest::collection::vec((-6i64..=6, 1i64..=3), phi)
            .prop_map(move |cs| {
                let cs: Vec<Rational> = cs.into_iter().map(|(n, d)| rat(n, d)).collect();
                CycloNum::from_poly_coeffs(p, level, &cs)
            })
    }

    fn arb_level() -> impl Strategy<Value = (u64, u32)> {
        prop_oneof![Just((2u64, 1u32)), Just((2, 2)), Just((2, 3)), Just((3, 1)), Just((3, 2)), Just((5, 1))]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn valuation_is_additive(
            (x, y) in arb_level().prop_flat_map(|(p, j)| (arb_cyclo(p, j), arb_cyclo(p, j)))
        ) {
            prop_assume!(!Ring::is_zero(&x) && !Ring::is_zero(&y));
            prop_assert_eq!(Ring::mul(&x, &y).ord_p(), x.ord_p() + y.ord_p());
        }

        #[test]
        fn conjugation_is_a_ring_morphism(
            (x, y, k) in arb_level().prop_flat_map(|(p, j)| {
                let ks = CycloNum::galois_exponents(p, j);
                (arb_cyclo(p, j), arb_cyclo(p, j), proptest::sample::select(ks))
            })
        ) {
            prop_assert_eq!(Ring::mul(&x, &y).conjugate(k), Ring::mul(&x.conjugate(k), &y.conjugate(k)));
            prop_assert_eq!(x.add(&y).conjugate(k), x.conjugate(k).add(&y.conjugate(k)));
        }

        #[test]
        fn lifting_is_a_ring_morphism(
            (x, y) in arb_level().prop_flat_map(|(p, j)| (arb_cyclo(p, j), arb_cyclo(p, j)))
        ) {
            let target = x.level() + 1;
            prop_assert_eq!(Ring::mul(&x, &y).lift(target), Ring::mul(&x.lift(target), &y.lift(target)));
            prop_assert_eq!(x.lift(target).ord_p(), x.ord_p());
        }
    }
}
