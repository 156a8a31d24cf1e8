//! Power series truncated at a fixed precision.

use num_bigint::BigInt;

use super::poly::UniPoly;
use super::ring::{Field, Ring};

/// Coefficients of `u^0 … u^{prec-1}`; nothing past the precision is ever read.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> TruncSeries<R> {
    pub fn new(mut coeffs: Vec<R>, prec: usize, zero: R) -> Self {
        coeffs.resize(prec, zero.clone());
        TruncSeries { coeffs, zero }
    }

    pub fn from_poly(p: &UniPoly<R>, prec: usize) -> Self {
        Self::new(
            p.coeffs().iter().take(prec).cloned().collect(),
            prec,
            p.zero_elem().clone(),
        )
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn to_poly(&self) -> UniPoly<R> {
        UniPoly::new(self.coeffs.clone(), self.zero.clone())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec <= self.precision(), "cannot raise precision");
        Self::new(self.coeffs[..prec].to_vec(), prec, self.zero.clone())
    }
}

impl<F: Field> TruncSeries<F> {
    /// Multiplicative inverse; `None` when the constant term is not a unit.
    pub fn inverse(&self) -> Option<Self> {
        let prec = self.precision();
        if prec == 0 {
            return Some(self.clone());
        }
        let c0_inv = self.coeffs[0].inv()?;
        let mut out = vec![self.zero.clone(); prec];
        out[0] = c0_inv.clone();
        for k in 1..prec {
            let mut acc = self.zero.clone();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out[k] = acc.neg().mul(&c0_inv);
        }
        Some(Self::new(out, prec, self.zero.clone()))
    }

    /// `exp(self)` for a series without constant term, via `f' = g'f`.
    pub fn exp(&self) -> Option<Self> {
        let prec = self.precision();
        if prec == 0 {
            return Some(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return None;
        }
        let one = self.zero.one_like();
        let mut f = vec![self.zero.clone(); prec];
        f[0] = one.clone();
        for n in 1..prec {
            let mut acc = self.zero.clone();
            for k in 1..=n {
                acc = acc.add(&self.coeffs[k].mul_int(&BigInt::from(k)).mul(&f[n - k]));
            }
            f[n] = acc.div(&one.mul_int(&BigInt::from(n)))?;
        }
        Some(Self::new(f, prec, self.zero.clone()))
    }
}

impl<R: Ring> Ring for TruncSeries<R> {
    fn zero_like(&self) -> Self {
        Self::new(Vec::new(), self.precision(), self.zero.clone())
    }

    fn one_like(&self) -> Self {
        Self::new(vec![self.zero.one_like()], self.precision(), self.zero.clone())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        let prec = self.precision().min(rhs.precision());
        let coeffs = (0..prec).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect();
        Self::new(coeffs, prec, self.zero.clone())
    }

    fn neg(&self) -> Self {
        Self::new(
            self.coeffs.iter().map(Ring::neg).collect(),
            self.precision(),
            self.zero.clone(),
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        let prec = self.precision().min(rhs.precision());
        let mut out = vec![self.zero.clone(); prec];
        for i in 0..prec {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..prec - i {
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
            }
        }
        Self::new(out, prec, self.zero.clone())
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(
            self.coeffs.iter().map(|c| c.mul_int(k)).collect(),
            self.precision(),
            self.zero.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_int, Rational};

    #[test]
    fn geometric_series_inverse() {
        let one_minus_u = TruncSeries::new(vec![rat_int(1), rat_int(-1)], 6, rat_int(0));
        let inv = one_minus_u.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == rat_int(1)));
        assert!(one_minus_u.mul(&inv).is_one());
    }

    #[test]
    fn exp_of_log_series() {
        // exp(Σ u^k/k) = 1/(1-u)
        let g: Vec<Rational> = (0..8).map(|k| if k == 0 { rat_int(0) } else { rat(1, k) }).collect();
        let e = TruncSeries::new(g, 8, rat_int(0)).exp().unwrap();
        assert!(e.coeffs().iter().all(|c| *c == rat_int(1)));
        let not_small = TruncSeries::new(vec![rat_int(1)], 3, rat_int(0));
        assert!(not_small.exp().is_none());
    }

    #[test]
    fn precision_is_respected() {
        let a = TruncSeries::new(vec![rat_int(1), rat_int(2), rat_int(3)], 3, rat_int(0));
        let b = TruncSeries::new(vec![rat_int(1), rat_int(1)], 2, rat_int(0));
        assert_eq!(a.mul(&b).precision(), 2);
        assert_eq!(a.mul(&b).coeffs(), &[rat_int(1), rat_int(3)]);
    }
}
