//! Dense univariate polynomials over a [`Ring`].

use std::fmt::Display;

use num_bigint::BigInt;
use num_traits::One;

use super::rational::{format_rational, Rational};
use super::ring::{Field, Ring};

/// Dense polynomial `c_0 + c_1 u + …`, trailing zeros trimmed.
///
/// The polynomial keeps a zero of its coefficient ring so that the zero
/// polynomial (and coefficient lookups past the degree) stay well defined
/// for rings with runtime parameters.
#[derive(Clone, Debug)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn new(coeffs: Vec<R>, zero: R) -> Self {
        let mut p = UniPoly { coeffs, zero };
        p.trim();
        p
    }

    /// Builds from a nonempty coefficient list.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        let zero = coeffs
            .first()
            .expect("coefficient list must be nonempty")
            .zero_like();
        Self::new(coeffs, zero)
    }

    pub fn zero(zero: R) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            zero,
        }
    }

    pub fn constant(c: R) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], zero)
    }

    /// `c·u^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Self::new(coeffs, zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul_int(&BigInt::from(k)))
            .collect();
        Self::new(coeffs, self.zero.clone())
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), zero)
    }

    pub fn try_map<S: Ring, E>(
        &self,
        zero: S,
        f: impl Fn(&R) -> Result<S, E>,
    ) -> Result<UniPoly<S>, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(UniPoly::new(coeffs, zero))
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(
            self.coeffs.iter().map(|x| x.mul(c)).collect(),
            self.zero.clone(),
        )
    }

    /// Multiplication by `u^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero_poly() {
            return self.clone();
        }
        let mut coeffs = vec![self.zero.clone(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, self.zero.clone())
    }

    /// Exact division by `u^k`, or `None` when `u^k` does not divide.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(
            self.coeffs.iter().skip(k).cloned().collect(),
            self.zero.clone(),
        ))
    }

    /// Substitution `u ↦ u²`-style stretching: `Σ c_k u^{k·s}`.
    pub fn stretch(&self, s: usize) -> Self {
        let mut coeffs = vec![self.zero.clone(); self.coeffs.len().saturating_sub(1) * s + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * s] = c.clone();
        }
        Self::new(coeffs, self.zero.clone())
    }

    /// Renders with variable `var` and a coefficient formatter.
    pub fn format_with(&self, var: &str, fmt_coeff: impl Fn(&R) -> String) -> String {
        if self.is_zero_poly() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut s = fmt_coeff(c);
            let compound = s.contains(' ') || s[1..].contains(['+', '-']);
            if k > 0 {
                let monomial = if k == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{k}")
                };
                if c.is_one() {
                    s = monomial;
                } else if compound {
                    s = format!("({s})*{monomial}");
                } else {
                    s = format!("{s}*{monomial}");
                }
            } else if compound {
                s = format!("({s})");
            }
            terms.push(s);
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) if !t.starts_with("-(") => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                _ => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        out
    }
}

impl<R: Ring + Display> UniPoly<R> {
    pub fn to_string_in(&self, var: &str) -> String {
        self.format_with(var, |c| c.to_string())
    }
}

impl UniPoly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            Rational::from_integer(0.into()),
        )
    }

    pub fn to_string_rational(&self, var: &str) -> String {
        self.format_with(var, format_rational)
    }

    /// The polynomial with integer coefficients, if every coefficient is one.
    pub fn to_integer_poly(&self) -> Option<UniPoly<BigInt>> {
        self.try_map(BigInt::from(0), |c| if c.is_integer() { Ok(c.to_integer()) } else { Err(()) })
            .ok()
    }
}

impl UniPoly<BigInt> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(0))
    }

    pub fn to_rational_poly(&self) -> UniPoly<Rational> {
        self.map(Rational::from_integer(0.into()), |c| Rational::from_integer(c.clone()))
    }

    /// `(1 + T)^k` by the binomial theorem.
    pub fn one_plus_t_pow(k: u64) -> Self {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut c = BigInt::one();
        coeffs.push(c.clone());
        for i in 0..k {
            c = c * BigInt::from(k - i) / BigInt::from(i + 1);
            coeffs.push(c.clone());
        }
        Self::new(coeffs, BigInt::from(0))
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.zero.clone())
    }

    fn one_like(&self) -> Self {
        UniPoly::constant(self.zero.one_like())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs, self.zero.clone())
    }

    fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(Ring::neg).collect(), self.zero.clone())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero_poly() || rhs.is_zero_poly() {
            return self.zero_like();
        }
        let mut coeffs = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(coeffs, self.zero.clone())
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(
            self.coeffs.iter().map(|c| c.mul_int(k)).collect(),
            self.zero.clone(),
        )
    }
}

/// Newton interpolation through `(xs[i], ys[i])` with distinct nodes.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UniPoly<F> {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty(), "interpolation needs at least one node");
    let zero = ys[0].zero_like();
    // divided differences in place
    let mut dd = ys.to_vec();
    for level in 1..xs.len() {
        for i in (level..xs.len()).rev() {
            let num = dd[i].sub(&dd[i - 1]);
            let den = xs[i].sub(&xs[i - level]);
            dd[i] = num.div(&den).expect("interpolation nodes must be distinct");
        }
    }
    let mut acc = UniPoly::constant(dd[xs.len() - 1].clone());
    for i in (0..xs.len() - 1).rev() {
        // acc = acc·(u − x_i) + dd_i
        let linear = UniPoly::new(vec![xs[i].neg(), xs[i].one_like()], zero.clone());
        acc = acc.mul(&linear).add(&UniPoly::constant(dd[i].clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn h_y() -> UniPoly<Rational> {
        UniPoly::<Rational>::from_ints(&[1, 0, 2, 0, -9, 0, -20, 0, -1, 0, 18, 0, 9])
    }

    #[test]
    fn derivative_at_one() {
        let h = h_y();
        assert_eq!(h.derivative().eval(&rat_int(1)), rat_int(128));
        let h0 = UniPoly::<Rational>::from_ints(&[1, 0, -4, 0, 3]);
        assert_eq!(h0.derivative().eval(&rat_int(1)), rat_int(4));
        assert!(UniPoly::<Rational>::from_ints(&[7]).derivative().is_zero_poly());
    }

    #[test]
    fn product_of_character_factors() {
        let a = UniPoly::<Rational>::from_ints(&[1, 0, -4, 0, 3]);
        let b = UniPoly::<Rational>::from_ints(&[1, 0, 4, 0, 3]);
        let c = UniPoly::<Rational>::from_ints(&[1, 0, 1]);
        assert_eq!(a.mul(&b).mul(&c).mul(&c), h_y());
    }

    #[test]
    fn formatting() {
        let p = UniPoly::<Rational>::new(vec![rat_int(1), rat_int(0), rat(-1, 2), rat_int(1)], rat_int(0));
        assert_eq!(p.to_string_rational("u"), "1 - 1/2*u^2 + u^3");
        assert_eq!(UniPoly::<Rational>::from_ints(&[]).to_string_rational("u"), "0");
    }

    #[test]
    fn binomial_powers() {
        assert_eq!(UniPoly::<BigInt>::one_plus_t_pow(3), UniPoly::<BigInt>::from_ints(&[1, 3, 3, 1]));
        assert_eq!(UniPoly::<BigInt>::one_plus_t_pow(0), UniPoly::<BigInt>::from_ints(&[1]));
    }

    proptest! {
        #[test]
        fn interpolation_recovers_polynomial(cs in proptest::collection::vec(-20i64..20, 1..8)) {
            let p = UniPoly::<Rational>::from_ints(&cs);
            let n = cs.len();
            let xs: Vec<Rational> = (0..n as i64).map(rat_int).collect();
            let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
            prop_assert_eq!(interpolate(&xs, &ys), p);
        }

        #[test]
        fn evaluation_is_a_morphism(a in proptest::collection::vec(-9i64..9, 0..6),
                                    b in proptest::collection::vec(-9i64..9, 0..6),
                                    x in -5i64..5) {
            let (pa, pb) = (UniPoly::<Rational>::from_ints(&a), UniPoly::<Rational>::from_ints(&b));
            let x = rat_int(x);
            prop_assert_eq!(pa.mul(&pb).eval(&x), pa.eval(&x) * pb.eval(&x));
            prop_assert_eq!(pa.add(&pb).derivative(), pa.derivative().add(&pb.derivative()));
        }
    }
}
