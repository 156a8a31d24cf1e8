//! The group algebra `ℚ[ℤ/mℤ]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};
use super::ring::Ring;

/// `Σ_k c_k·[k]` with `k` ranging over `ℤ/mℤ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    m: u64,
    coeffs: Vec<Rational>,
}

impl GroupRingElem {
    pub fn new(m: u64, coeffs: Vec<Rational>) -> Self {
        assert!(m >= 1, "group order must be positive");
        assert_eq!(coeffs.len() as u64, m, "need exactly m coefficients");
        GroupRingElem { m, coeffs }
    }

    pub fn zero(m: u64) -> Self {
        Self::new(m, vec![Rational::zero(); m as usize])
    }

    pub fn one(m: u64) -> Self {
        Self::basis(m, 0)
    }

    pub fn from_rational(m: u64, q: Rational) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[0] = q;
        x
    }

    /// The group element `[k]`.
    pub fn basis(m: u64, k: i64) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[k.rem_euclid(m as i64) as usize] = Rational::one();
        x
    }

    /// Reduces a big-integer group label into `ℤ/mℤ`.
    pub fn basis_big(m: u64, k: &BigInt) -> Self {
        let r = ((k % BigInt::from(m)) + BigInt::from(m)) % BigInt::from(m);
        Self::basis(m, i64::try_from(r).expect("residue fits"))
    }

    /// Norm element `N_H` of the subgroup of order `d`.
    pub fn norm_element(m: u64, d: u64) -> Self {
        assert!(d >= 1 && m.is_multiple_of(d), "subgroup order must divide m");
        let step = m / d;
        let mut x = Self::zero(m);
        for i in 0..d {
            x.coeffs[(i * step) as usize] = Rational::one();
        }
        x
    }

    /// Idempotent `e_H = N_H/|H|` of the subgroup of order `d`.
    pub fn idempotent(m: u64, d: u64) -> Self {
        Self::norm_element(m, d).scale(&Rational::new(BigInt::one(), BigInt::from(d)))
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: u64) -> &Rational {
        &self.coeffs[(k % self.m) as usize]
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.m, self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Sum of coefficients (the trivial character).
    pub fn augmentation(&self) -> Rational {
        self.coeffs.iter().sum()
    }

    /// `Σ c_k [k] ↦ Σ c_k [-k]`.
    pub fn involution(&self) -> Self {
        let m = self.m as usize;
        Self::new(
            self.m,
            (0..m).map(|k| self.coeffs[(m - k) % m].clone()).collect(),
        )
    }

    /// Image under `ℤ/mℤ → ℤ/rℤ` for `r | m`.
    pub fn project(&self, r: u64) -> Self {
        assert!(r >= 1 && self.m.is_multiple_of(r), "target order must divide m");
        let mut out = Self::zero(r);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[k % r as usize] += c;
        }
        out
    }

    /// Multiplication by the group element `[k]`: a cyclic shift.
    pub fn shift(&self, k: i64) -> Self {
        let m = self.m as i64;
        let mut out = vec![Rational::zero(); self.m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i as i64 + k).rem_euclid(m) as usize] = c.clone();
        }
        Self::new(self.m, out)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Image in `ℚ[ℤ/(m·s)ℤ]` under `[k] ↦ [k·s]`.
    pub fn embed(&self, s: u64) -> Self {
        let mut out = Self::zero(self.m * s);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[k * s as usize] = c.clone();
        }
        out
    }

    /// `"c0*[0] + c1*[1] + …"`; terms with zero coefficient are omitted.
    pub fn to_labeled_string(&self, label_scale: u64) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| format!("{}*[{}]", format_rational(c), k as u64 * label_scale))
            .collect();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        out
    }
}

impl Ring for GroupRingElem {
    fn zero_like(&self) -> Self {
        Self::zero(self.m)
    }

    fn one_like(&self) -> Self {
        Self::one(self.m)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "group ring modulus mismatch");
        Self::new(
            self.m,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        )
    }

    fn neg(&self) -> Self {
        Self::new(self.m, self.coeffs.iter().map(|c| -c).collect())
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "group ring modulus mismatch");
        let m = self.m as usize;
        let mut out = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    out[(i + j) % m] += a * b;
                }
            }
        }
        Self::new(self.m, out)
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        self.scale(&Rational::from_integer(k.clone()))
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_labeled_string(1))
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.m)
    }
}
