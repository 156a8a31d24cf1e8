//! Determinants over the commutative rings of the kernel.
//!
//! * integers: fraction-free Bareiss elimination;
//! * fields (`ℚ`, `ℚ(ζ_{p^j})`): Gaussian elimination;
//! * polynomial entries: cofactor expansion up to dimension
//!   [`COFACTOR_LIMIT`], otherwise evaluation at integer points followed by
//!   interpolation;
//! * group-ring entries: one determinant per character in a cyclotomic field,
//!   reassembled through the idempotents (the group ring has zero divisors,
//!   so elimination is not available there directly).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::character::{reassemble, reassemble_poly, Character};
use super::cyclo::CycloNum;
use super::group_ring::GroupRingElem;
use super::matrix::Matrix;
use super::poly::{interpolate, UniPoly};
use super::rational::{prime_power, Rational};
use super::ring::{Field, Ring};
use super::series::TruncSeries;

pub const COFACTOR_LIMIT: usize = 6;

pub trait Determinant {
    type Output;
    fn det(&self) -> Self::Output;
}

/// Fraction-free elimination; every intermediate division is exact.
pub fn bareiss(m: &Matrix<BigInt>) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.rows();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if Zero::is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !Zero::is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

pub fn gauss_det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.dim();
    let mut a = m.rows();
    let mut det = m.one().clone();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return m.one().zero_like();
        };
        if piv != k {
            a.swap(k, piv);
            det = det.neg();
        }
        let inv = a[k][k].inv().expect("nonzero pivot");
        det = det.mul(&a[k][k]);
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].mul(&inv);
            for j in k + 1..n {
                let v = a[i][j].sub(&factor.mul(&a[k][j]));
                a[i][j] = v;
            }
        }
    }
    det
}

/// Laplace expansion along rows; valid over any commutative ring.
pub fn cofactor_det<R: Ring>(m: &Matrix<R>) -> R {
    fn rec<R: Ring>(m: &Matrix<R>, row: usize, cols: &mut Vec<usize>) -> R {
        if row == m.dim() {
            return m.one().clone();
        }
        let mut acc = m.one().zero_like();
        for idx in 0..cols.len() {
            let c = cols[idx];
            let entry = m.get(row, c);
            if entry.is_zero() {
                continue;
            }
            cols.remove(idx);
            let sub = rec(m, row + 1, cols);
            cols.insert(idx, c);
            let term = entry.mul(&sub);
            acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    let mut cols: Vec<usize> = (0..m.dim()).collect();
    rec(m, 0, &mut cols)
}

/// Upper bound for the degree of a polynomial determinant.
fn degree_bound<R: Ring>(m: &Matrix<UniPoly<R>>) -> Option<usize> {
    let mut total = 0;
    for i in 0..m.dim() {
        let row_max = m.row(i).iter().filter_map(UniPoly::degree).max()?;
        total += row_max;
    }
    Some(total)
}

/// Determinant of a polynomial matrix over a field by evaluation at
/// `0, 1, …, D` and interpolation.
pub fn poly_det_interpolated<F, D>(m: &Matrix<UniPoly<F>>, det_at: D) -> UniPoly<F>
where
    F: Field + Send + Sync,
    D: Fn(&Matrix<F>) -> F + Sync,
{
    let zero = m.one().zero_elem().clone();
    let one = zero.one_like();
    let Some(bound) = degree_bound(m) else {
        return UniPoly::zero(zero);
    };
    let xs: Vec<F> = (0..=bound).map(|k| one.mul_int(&BigInt::from(k))).collect();
    let ys: Vec<F> = xs
        .par_iter()
        .map(|x| det_at(&m.map(one.clone(), |p| p.eval(x))))
        .collect();
    interpolate(&xs, &ys)
}

impl Determinant for Matrix<BigInt> {
    type Output = BigInt;
    fn det(&self) -> BigInt {
        bareiss(self)
    }
}

impl Determinant for Matrix<Rational> {
    type Output = Rational;
    fn det(&self) -> Rational {
        gauss_det(self)
    }
}

impl Determinant for Matrix<CycloNum> {
    type Output = CycloNum;
    fn det(&self) -> CycloNum {
        gauss_det(self)
    }
}

impl Determinant for Matrix<UniPoly<BigInt>> {
    type Output = UniPoly<BigInt>;
    fn det(&self) -> UniPoly<BigInt> {
        if self.dim() <= COFACTOR_LIMIT {
            return cofactor_det(self);
        }
        let Some(bound) = degree_bound(self) else {
            return UniPoly::zero(BigInt::zero());
        };
        let xs: Vec<BigInt> = (0..=bound).map(BigInt::from).collect();
        let ys: Vec<Rational> = xs
            .par_iter()
            .map(|x| Rational::from_integer(bareiss(&self.map(BigInt::one(), |p| p.eval(x)))))
            .collect();
        let xs: Vec<Rational> = xs.into_iter().map(Rational::from_integer).collect();
        interpolate(&xs, &ys)
            .to_integer_poly()
            .expect("determinant of an integer polynomial matrix is integral")
    }
}

impl Determinant for Matrix<UniPoly<Rational>> {
    type Output = UniPoly<Rational>;
    fn det(&self) -> UniPoly<Rational> {
        if self.dim() <= COFACTOR_LIMIT {
            cofactor_det(self)
        } else {
            poly_det_interpolated(self, gauss_det)
        }
    }
}

impl Determinant for Matrix<UniPoly<CycloNum>> {
    type Output = UniPoly<CycloNum>;
    fn det(&self) -> UniPoly<CycloNum> {
        if self.dim() <= COFACTOR_LIMIT {
            cofactor_det(self)
        } else {
            poly_det_interpolated(self, gauss_det)
        }
    }
}

impl<R: Ring> Determinant for Matrix<TruncSeries<R>> {
    type Output = TruncSeries<R>;
    fn det(&self) -> TruncSeries<R> {
        cofactor_det(self)
    }
}

/// `(p, n)` with `m = p^n`; the trivial group is treated as `2^0`.
pub fn cyclic_prime_power(m: u64) -> (u64, u32) {
    if m == 1 {
        return (2, 0);
    }
    prime_power(m).expect("group order must be a prime power")
}

impl Determinant for Matrix<GroupRingElem> {
    type Output = GroupRingElem;
    fn det(&self) -> GroupRingElem {
        let (p, n) = cyclic_prime_power(self.one().modulus());
        let values: Vec<CycloNum> = Character::all(p, n)
            .par_iter()
            .map(|psi| {
                let one = CycloNum::one(p, psi.order_level());
                gauss_det(&self.map(one, |x| psi.apply(x).expect("same modulus")))
            })
            .collect();
        reassemble(p, n, &values).expect("determinant over a rational group ring is rational")
    }
}

impl Determinant for Matrix<UniPoly<GroupRingElem>> {
    type Output = UniPoly<GroupRingElem>;
    fn det(&self) -> UniPoly<GroupRingElem> {
        let (p, n) = cyclic_prime_power(self.one().zero_elem().modulus());
        let values: Vec<UniPoly<CycloNum>> = Character::all(p, n)
            .par_iter()
            .map(|psi| {
                let one = UniPoly::constant(CycloNum::one(p, psi.order_level()));
                self.map(one, |x| psi.apply_poly(x).expect("same modulus")).det()
            })
            .collect();
        reassemble_poly(p, n, &values).expect("determinant over a rational group ring is rational")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            BigInt::one(),
        )
    }

    #[test]
    fn small_integer_determinants() {
        assert_eq!(int_matrix(&[&[2, 1], &[1, 2]]).det(), BigInt::from(3));
        assert_eq!(Matrix::identity(5, BigInt::one()).det(), BigInt::one());
        assert_eq!(Matrix::<BigInt>::identity(0, BigInt::one()).det(), BigInt::one());
        assert_eq!(int_matrix(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn identity_over_every_ring() {
        assert!(Matrix::identity(3, GroupRingElem::one(4)).det().is_one());
        assert!(Matrix::identity(3, CycloNum::one(3, 2)).det().is_one());
        let one = UniPoly::constant(GroupRingElem::one(8));
        assert!(Matrix::identity(2, one).det().is_one());
    }

    #[test]
    fn polynomial_routes_agree() {
        // 7×7 matrix forces interpolation; compare with cofactor expansion.
        let m = Matrix::from_fn(7, UniPoly::<BigInt>::from_ints(&[1]), |i, j| {
            let a = ((i * 3 + j * 5) % 7) as i64 - 3;
            let b = ((i + 2 * j) % 4) as i64 - 1;
            UniPoly::<BigInt>::from_ints(&[a, b, if i == j { 1 } else { 0 }])
        });
        assert_eq!(m.det(), cofactor_det(&m));
        let q = m.map(UniPoly::<Rational>::from_ints(&[1]), UniPoly::to_rational_poly);
        assert_eq!(q.det(), cofactor_det(&q));
    }

    #[test]
    fn group_ring_routes_agree() {
        let g = |cs: &[i64]| GroupRingElem::new(4, cs.iter().map(|&c| rat_int(c)).collect());
        let m = Matrix::from_rows(
            vec![
                vec![g(&[1, 2, 0, -1]), g(&[0, 0, 1, 1]), g(&[3, 0, 0, 0])],
                vec![g(&[0, 1, 0, 0]), g(&[2, -1, 1, 0]), g(&[1, 1, 1, 1])],
                vec![g(&[1, 0, 1, 0]), g(&[0, 0, 0, 5]), g(&[-2, 0, 1, 0])],
            ],
            GroupRingElem::one(4),
        );
        assert_eq!(m.det(), cofactor_det(&m));
    }

    fn arb_rat_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
        proptest::collection::vec((-6i64..6, 1i64..3), n * n).prop_map(move |v| {
            let mut it = v.into_iter();
            Matrix::from_fn(n, rat_int(1), |_, _| {
                let (a, b) = it.next().unwrap();
                rat(a, b)
            })
        })
    }

    proptest! {
        #[test]
        fn determinant_is_multiplicative((a, b) in (1usize..5).prop_flat_map(|n| (arb_rat_matrix(n), arb_rat_matrix(n)))) {
            prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
            prop_assert_eq!(a.det(), cofactor_det(&a));
        }

        #[test]
        fn bareiss_matches_cofactor(v in proptest::collection::vec(-9i64..9, 25)) {
            let m = Matrix::from_fn(5, BigInt::one(), |i, j| BigInt::from(v[i * 5 + j]));
            prop_assert_eq!(m.det(), cofactor_det(&m));
        }

        #[test]
        fn cyclotomic_gauss_matches_cofactor(v in proptest::collection::vec((-4i64..4, 0i64..9), 9)) {
            let m = Matrix::from_fn(3, CycloNum::one(3, 2), |i, j| {
                let (c, e) = v[i * 3 + j];
                CycloNum::root_of_unity(3, 2, e).scale(&rat_int(c))
            });
            prop_assert_eq!(m.det(), cofactor_det(&m));
        }
    }
}
