//! Characters of `ℤ/p^nℤ` and the idempotent decomposition of `ℚ[ℤ/p^nℤ]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::cyclo::CycloNum;
use super::group_ring::GroupRingElem;
use super::poly::UniPoly;
use super::rational::Rational;
use super::ring::Ring;
use crate::error::{Error, Result};

/// `ψ_a(x) = ζ_{p^n}^{a·x}`.
///
/// Values are expressed in `ℚ(ζ_{p^j})` where `p^j` is the exact order of
/// `ψ_a`, using `ζ_{p^n}^a = ζ_{p^j}^{a/p^{n-j}}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    p: u64,
    n: u32,
    a: u64,
}

impl Character {
    pub fn new(p: u64, n: u32, a: u64) -> Self {
        Character {
            p,
            n,
            a: a % p.pow(n),
        }
    }

    pub fn trivial(p: u64, n: u32) -> Self {
        Self::new(p, n, 0)
    }

    /// All `p^n` characters, ordered by exponent.
    pub fn all(p: u64, n: u32) -> Vec<Character> {
        (0..p.pow(n)).map(|a| Self::new(p, n, a)).collect()
    }

    /// The `φ(p^j)` characters of exact order `p^j`.
    pub fn of_order_level(p: u64, n: u32, j: u32) -> Vec<Character> {
        Self::all(p, n)
            .into_iter()
            .filter(|c| c.order_level() == j)
            .collect()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn exponent(&self) -> u64 {
        self.a
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn is_trivial(&self) -> bool {
        self.a == 0
    }

    /// `j` with `ord(ψ) = p^j`.
    pub fn order_level(&self) -> u32 {
        if self.a == 0 {
            return 0;
        }
        let mut a = self.a;
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        self.n - v
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.order_level())
    }

    /// Exponent `b` with `ψ(1) = ζ_{p^j}^b`.
    fn reduced_exponent(&self) -> u64 {
        self.a / self.p.pow(self.n - self.order_level())
    }

    pub fn value(&self, x: i64) -> CycloNum {
        let j = self.order_level();
        let order = self.p.pow(j) as i64;
        let e = (self.reduced_exponent() as i64 % order.max(1)) * x.rem_euclid(order.max(1));
        CycloNum::root_of_unity(self.p, j, e)
    }

    /// Whether `ψ` is trivial on the subgroup `p^e ℤ/p^nℤ`.
    pub fn is_trivial_on(&self, e: u32) -> bool {
        let e = e.min(self.n);
        (self.a * self.p.pow(e)).is_multiple_of(self.modulus())
    }

    /// The character `ψ^k`, i.e. `ψ_{k·a}`.
    pub fn power(&self, k: u64) -> Self {
        Self::new(self.p, self.n, (self.a * k) % self.modulus())
    }

    /// Extension of `ψ` to `ℚ[ℤ/p^nℤ] → ℚ(ζ_{p^j})`.
    pub fn apply(&self, x: &GroupRingElem) -> Result<CycloNum> {
        if x.modulus() != self.modulus() {
            return Err(Error::ModulusMismatch(x.modulus(), self.modulus()));
        }
        let j = self.order_level();
        let b = self.reduced_exponent() as usize;
        let order = self.p.pow(j) as usize;
        let mut dense = vec![Rational::zero(); order];
        for (k, c) in x.coeffs().iter().enumerate() {
            if !Zero::is_zero(c) {
                dense[(b * k) % order] += c;
            }
        }
        Ok(CycloNum::from_poly_coeffs(self.p, j, &dense))
    }

    pub fn apply_poly(&self, x: &UniPoly<GroupRingElem>) -> Result<UniPoly<CycloNum>> {
        let zero = CycloNum::zero(self.p, self.order_level());
        x.try_map(zero, |c| self.apply(c))
    }

    /// Coefficients of `e_ψ = (1/m)Σ_σ ψ(σ)σ^{-1}` in `ℚ(ζ_{p^n})`, indexed
    /// by group element.
    pub fn idempotent_coeffs(&self) -> Vec<CycloNum> {
        let m = self.modulus();
        let inv_m = Rational::new(1.into(), BigInt::from(m));
        (0..m as i64)
            .map(|s| {
                CycloNum::root_of_unity(self.p, self.n, -(self.a as i64) * s).scale(&inv_m)
            })
            .collect()
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi_{}(mod {}^{})", self.a, self.p, self.n)
    }
}

/// Value of `ψ_a` at every group element, for the decomposition
/// `x = Σ_ψ ψ(x)·e_ψ`.
pub fn decompose(p: u64, n: u32, x: &GroupRingElem) -> Result<Vec<CycloNum>> {
    Character::all(p, n).iter().map(|c| c.apply(x)).collect()
}

/// `Σ_a v_a·e_{ψ_a}`, which must be rational; `values[a]` lives at the order
/// level of `ψ_a`.
///
/// The coefficient of `[τ]` is `(1/m)Σ_a v_a·ψ_a(-τ)`.
pub fn reassemble(p: u64, n: u32, values: &[CycloNum]) -> Result<GroupRingElem> {
    let m = p.pow(n);
    assert_eq!(values.len() as u64, m, "one value per character");
    let lifted: Vec<CycloNum> = values.iter().map(|v| v.lift(n)).collect();
    let inv_m = Rational::new(1.into(), BigInt::from(m));
    let mut coeffs = Vec::with_capacity(m as usize);
    for tau in 0..m as i64 {
        let mut acc = CycloNum::zero(p, n);
        for (a, v) in lifted.iter().enumerate() {
            if !Ring::is_zero(v) {
                acc = acc.add(&v.mul_root(-(a as i64) * tau));
            }
        }
        let q = acc.to_rational().ok_or_else(|| {
            Error::NotRational(format!("idempotent reassembly produced {acc}"))
        })?;
        coeffs.push(q * &inv_m);
    }
    Ok(GroupRingElem::new(m, coeffs))
}

/// Coefficientwise [`reassemble`] of per-character polynomials.
pub fn reassemble_poly(p: u64, n: u32, values: &[UniPoly<CycloNum>]) -> Result<UniPoly<GroupRingElem>> {
    let m = p.pow(n);
    let deg = values.iter().filter_map(UniPoly::degree).max();
    let Some(deg) = deg else {
        return Ok(UniPoly::zero(GroupRingElem::zero(m)));
    };
    let mut coeffs = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        let column: Vec<CycloNum> = values.iter().map(|v| v.coeff(k)).collect();
        coeffs.push(reassemble(p, n, &column)?);
    }
    Ok(UniPoly::new(coeffs, GroupRingElem::zero(m)))
}
