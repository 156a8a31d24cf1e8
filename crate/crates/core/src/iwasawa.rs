//! Iwasawa invariants of a branched `ℤ_p`-tower: the power series `g(T)`,
//! closed-form `μ` and `λ`, sweeps of `ord_p κ(X_n)`, the fitted `ν`, and
//! the characteristic-ideal generator.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::rational::{ord_p_int, ord_p_rational};
use crate::algebra::{Character, CycloNum, Determinant, Matrix, Rational, Ring, UniPoly, Valuation};
use crate::error::{Error, Result};
use crate::lfunctions::{lfunction_table, special_values, LfnData};
use crate::tower::{Ramification, TowerDatum};

/// Voltages of larger absolute value make `(1+T)^α` unreasonably large.
pub const MAX_SERIES_VOLTAGE: u64 = 4096;

/// Sweep depth used when none is given.
pub fn default_max_level(p: u64) -> u32 {
    match p {
        2 => 6,
        3 => 4,
        5 => 3,
        _ => 2,
    }
}

/// `(μ, λ)` of a nonzero integer polynomial or truncated series: the least
/// coefficient valuation and the least index attaining it.
pub fn mu_lambda(coeffs: &[BigInt], p: u64) -> Option<(u64, usize)> {
    let mut best: Option<(u64, usize)> = None;
    for (i, c) in coeffs.iter().enumerate() {
        if let Some(v) = ord_p_int(c, p) {
            if best.is_none_or(|(mu, _)| v < mu) {
                best = Some((v, i));
            }
        }
    }
    best
}

/// `g(T)·(1+T)^shift`, an honest polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GSeries {
    pub p: u64,
    pub poly: UniPoly<BigInt>,
    pub shift: u64,
}

impl GSeries {
    pub fn mu_lambda(&self) -> Result<(u64, usize)> {
        mu_lambda(self.poly.coeffs(), self.p)
            .ok_or_else(|| Error::Hypothesis("g(T) vanishes identically".into()))
    }

    /// `g(ζ − 1)·ζ^{shift}`, the representative evaluated at `T = ψ(1) − 1`.
    pub fn eval_at_character(&self, psi: &Character) -> CycloNum {
        let zeta = psi.value(1);
        let t = zeta.sub(&zeta.one_like());
        let coeffs: Vec<CycloNum> = self
            .poly
            .coeffs()
            .iter()
            .map(|c| CycloNum::from_rational(psi.prime(), psi.order_level(), Rational::from_integer(c.clone())))
            .collect();
        UniPoly::new(coeffs, zeta.zero_like()).eval(&t)
    }
}

/// `det(𝐃̃ − 𝐀̃_ρ)` on the unramified block, `ρ(a) = (1+T)^a`, with row `i`
/// multiplied by `(1+T)^{M_i}` for `M_i` the largest negative exponent in it.
pub fn g_series(d: &TowerDatum) -> Result<GSeries> {
    let p = d.prime();
    let unr = d.unramified_vertices();
    let mut index = vec![usize::MAX; d.base().num_vertices()];
    for (i, &v) in unr.iter().enumerate() {
        index[v] = i;
    }
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); unr.len()];
    for (s, dart) in d.base().darts().iter().enumerate() {
        let (i, j) = (index[dart.terminus], index[dart.origin]);
        if i == usize::MAX || j == usize::MAX {
            continue;
        }
        let a = d.voltage(s);
        if a.abs() > BigInt::from(MAX_SERIES_VOLTAGE) {
            return Err(Error::InvalidDatum(format!(
                "voltage {a} exceeds {MAX_SERIES_VOLTAGE} in absolute value"
            )));
        }
        rows[i].push((j, a.to_i64().expect("bounded")));
    }
    let shifts: Vec<u64> = rows
        .iter()
        .map(|r| r.iter().map(|&(_, a)| (-a).max(0) as u64).max().unwrap_or(0))
        .collect();
    let zero = BigInt::zero();
    let one = UniPoly::constant(BigInt::one());
    let matrix = Matrix::from_fn(unr.len(), one, |i, j| {
        let m = shifts[i];
        let mut entry = UniPoly::zero(zero.clone());
        if i == j {
            entry = UniPoly::<BigInt>::one_plus_t_pow(m).scale(&BigInt::from(d.base().degree(unr[i])));
        }
        for &(col, a) in &rows[i] {
            if col == j {
                entry = entry.sub(&UniPoly::<BigInt>::one_plus_t_pow((m as i64 + a) as u64));
            }
        }
        entry
    });
    Ok(GSeries {
        p,
        poly: matrix.det(),
        shift: shifts.iter().sum(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaComponents {
    pub mu_unr: u64,
    pub lambda_unr: u64,
    pub lambda0: u64,
    /// `λ_j` for `j = 1..n₁`.
    pub lambda_j: Vec<u64>,
}

pub fn lambda_components(d: &TowerDatum) -> Result<LambdaComponents> {
    let ram = d.ramified_vertices();
    if ram.is_empty() && d.base().euler_characteristic() == 0 {
        return Err(Error::Undefined("V^ram = ∅ and χ(X) = 0".into()));
    }
    let (mu_unr, lambda_unr) = g_series(d)?.mu_lambda()?;
    let p = d.prime();
    let lambda_j = (1..=d.n1())
        .map(|j| {
            let count = ram
                .iter()
                .filter(|&&v| matches!(d.ramification()[v], Ramification::Ramified(k) if k >= j))
                .count() as u64;
            crate::algebra::rational::phi_prime_power(p, j) * count
        })
        .collect();
    Ok(LambdaComponents {
        mu_unr,
        lambda_unr: lambda_unr as u64,
        lambda0: (ram.len() as u64).saturating_sub(1),
        lambda_j,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub mu: u64,
    /// `λ₀ + Σλ_j + λ_unr`, minus one in the unramified case.
    pub lambda: i64,
    /// `λ_unr + Σ p^{k_v} − 1`, ramified case only.
    pub lambda_algebraic: Option<i64>,
    pub components: LambdaComponents,
}

pub fn closed_form_invariants(d: &TowerDatum) -> Result<ClosedForm> {
    let c = lambda_components(d)?;
    if !d.eventually_negative_euler_characteristic() {
        return Err(Error::Hypothesis("tower does not satisfy χ(X_n) < 0 eventually".into()));
    }
    let assembled = (c.lambda0 + c.lambda_j.iter().sum::<u64>() + c.lambda_unr) as i64;
    let (lambda, lambda_algebraic) = if d.ramified_vertices().is_empty() {
        (assembled - 1, None)
    } else {
        let alg = c.lambda_unr as i64 + d.ramified_fiber_sum() as i64 - 1;
        if alg != assembled {
            return Err(Error::Certification(format!(
                "λ assemblies disagree: {assembled} vs {alg}"
            )));
        }
        (assembled, Some(alg))
    };
    Ok(ClosedForm {
        mu: c.mu_unr,
        lambda,
        lambda_algebraic,
        components: c,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerRow {
    pub n: u32,
    pub vertices: usize,
    pub edges: usize,
    pub chi: i64,
    pub kappa: BigInt,
    pub ord: u64,
}

/// One row per level `0..=n_max`, `κ` by Matrix-Tree.
pub fn tower_sweep(d: &TowerDatum, n_max: u32) -> Result<Vec<TowerRow>> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let g = d.build_level_graph(n).into_graph();
            if !g.connected() {
                return Err(Error::LevelDisconnected(n));
            }
            let kappa = g.spanning_tree_count()?;
            Ok(TowerRow {
                n,
                vertices: g.num_vertices(),
                edges: g.num_edges(),
                chi: g.euler_characteristic(),
                ord: ord_p_int(&kappa, d.prime()).expect("κ ≥ 1"),
                kappa,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwasawaInvariants {
    pub mu: u64,
    pub lambda: i64,
    pub nu: i64,
    pub n0: u32,
}

/// `ord_p κ(X_n) − μp^n − λn` per row.
pub fn residuals(p: u64, rows: &[TowerRow], mu: u64, lambda: i64) -> Vec<(u32, i64)> {
    rows.iter()
        .map(|r| {
            let main = mu as i64 * p.pow(r.n) as i64 + lambda * r.n as i64;
            (r.n, r.ord as i64 - main)
        })
        .collect()
}

/// Fits `ν` from the last row and certifies it on the rows beyond `start`.
pub fn fit_and_certify(p: u64, rows: &[TowerRow], mu: u64, lambda: i64, start: u32) -> Result<IwasawaInvariants> {
    let beyond = rows.iter().filter(|r| r.n > start).count();
    if beyond < 3 {
        return Err(Error::Certification(format!(
            "need three levels beyond n = {start}, have {beyond}"
        )));
    }
    let res = residuals(p, rows, mu, lambda);
    let nu = res.last().expect("nonempty").1;
    if res[res.len() - 3..].iter().any(|&(_, r)| r != nu) {
        return Err(Error::Certification("asymptotic regime not reached by n_max".into()));
    }
    let tail = res.iter().rev().take_while(|&&(_, r)| r == nu).count();
    let n0 = res[res.len() - tail].0;
    Ok(IwasawaInvariants { mu, lambda, nu, n0 })
}

/// `(μ, λ, ν)` solved from the last three rows alone, ignoring the closed
/// form. Rational in general; integral once the regime is reached.
pub fn sweep_estimate(p: u64, rows: &[TowerRow]) -> Option<(Rational, Rational, Rational)> {
    let [a, b, c] = rows.get(rows.len().checked_sub(3)?..)? else {
        return None;
    };
    let ord = |r: &TowerRow| Rational::from_integer(BigInt::from(r.ord));
    let pn = Rational::from_integer(BigInt::from(p).pow(a.n));
    let pm1 = Rational::from_integer(BigInt::from(p - 1));
    let (d1, d2) = (ord(b) - ord(a), ord(c) - ord(b));
    let mu = (&d2 - &d1) / (&pn * &pm1 * &pm1);
    let lambda = &d1 - &mu * &pn * &pm1;
    let nu = ord(a) - &mu * &pn - &lambda * Rational::from_integer(BigInt::from(a.n));
    Some((mu, lambda, nu))
}

/// `max(n₁, first level with χ < 0)`.
pub fn regime_start(d: &TowerDatum, n_max: u32) -> Result<u32> {
    let first = d
        .first_negative_level(n_max)
        .ok_or_else(|| Error::Hypothesis(format!("χ(X_n) ≥ 0 for all n ≤ {n_max}")))?;
    Ok(first.max(d.n1()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharIdeal {
    /// `g(T)·(1+T)^shift·Π((1+T)^{p^{k_v}} − 1)`.
    pub f: UniPoly<BigInt>,
    pub shift: u64,
    /// `f(T)/T`.
    pub generator: UniPoly<BigInt>,
    pub mu: u64,
    pub lambda: usize,
}

pub fn char_ideal_generator(d: &TowerDatum) -> Result<CharIdeal> {
    let g = g_series(d)?;
    let p = d.prime();
    let mut f = g.poly.clone();
    for v in d.ramified_vertices() {
        let Ramification::Ramified(k) = d.ramification()[v] else {
            unreachable!()
        };
        let factor = UniPoly::<BigInt>::one_plus_t_pow(p.pow(k)).sub(&UniPoly::constant(BigInt::one()));
        f = f.mul(&factor);
    }
    if !Zero::is_zero(&f.coeff(0)) {
        return Err(Error::Hypothesis("f(0) ≠ 0".into()));
    }
    let generator = f
        .shift_down(1)
        .ok_or_else(|| Error::Hypothesis("f(T) vanishes identically".into()))?;
    let (mu, lambda) = mu_lambda(generator.coeffs(), p)
        .ok_or_else(|| Error::Hypothesis("f(T) vanishes identically".into()))?;
    Ok(CharIdeal {
        f,
        shift: g.shift,
        generator,
        mu,
        lambda,
    })
}

/// For every `ψ` of order `p^j > p^{n₁}`: `g(ζ−1)ζ^{M} = h_{X_n}(1,ψ)ζ^{M}`
/// exactly, hence equal valuations.
pub fn specialization_holds(d: &TowerDatum, n: u32) -> Result<bool> {
    let g = g_series(d)?;
    let n1 = d.n1();
    Ok(Character::all(d.prime(), n)
        .par_iter()
        .filter(|psi| psi.order_level() > n1)
        .all(|psi| {
            let lhs = g.eval_at_character(psi);
            let h1 = special_values(d, n, psi).h_at_1;
            let rhs = h1.mul(&psi.value(g.shift as i64));
            lhs == rhs && lhs.ord_p() == h1.ord_p()
        }))
}

/// Valuations at one level that grow with slopes `λ_j`, `λ₀` and the
/// Euler-characteristic rule.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockValuations {
    pub n: u32,
    /// `ord_p Π_{ψ ∈ Γ̂_n^{(j)}} h(1,ψ)` for `j = 1..n₁`.
    pub ramified_blocks: Vec<Rational>,
    /// `ord_p h′(1,ψ₀)`.
    pub trivial: Rational,
    pub chi: u64,
}

pub fn block_valuations(d: &TowerDatum, n: u32) -> Result<BlockValuations> {
    let p = d.prime();
    let table: Vec<LfnData> = lfunction_table(d, n);
    let ord = |v: Valuation, what: &str| -> Result<Rational> {
        v.finite()
            .cloned()
            .ok_or_else(|| Error::Hypothesis(format!("{what} vanishes at level {n}")))
    };
    let mut ramified_blocks = Vec::new();
    for j in 1..=d.n1().min(n) {
        let mut acc = CycloNum::one(p, j);
        for row in table.iter().filter(|r| r.character.order_level() == j) {
            acc = acc.mul(&row.h.eval(&row.h.zero_elem().one_like()));
        }
        ramified_blocks.push(ord(acc.ord_p(), "orbit product")?);
    }
    let h0 = &table[0].h;
    let h_prime = h0.derivative().eval(&h0.zero_elem().one_like()).to_rational().expect("rational");
    let chi = d.euler_characteristic(n);
    Ok(BlockValuations {
        n,
        ramified_blocks,
        trivial: ord(ord_p_rational(&h_prime, p), "h′(1,ψ₀)")?,
        chi: ord_p_int(&BigInt::from(chi), p)
            .ok_or_else(|| Error::Hypothesis(format!("χ(X_{n}) = 0")))?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlopeReport {
    pub lambda_j_expected: Vec<u64>,
    pub lambda_j_observed: Vec<Rational>,
    pub lambda0_expected: u64,
    pub lambda0_observed: Rational,
    /// Expected increase of `ord_p χ(X_n)` per level: 0 when ramified, 1 when not.
    pub chi_slope_expected: u64,
    pub chi_slope_observed: i64,
}

impl SlopeReport {
    pub fn holds(&self) -> bool {
        self.lambda_j_expected.len() == self.lambda_j_observed.len()
            && self
                .lambda_j_expected
                .iter()
                .zip(&self.lambda_j_observed)
                .all(|(e, o)| Rational::from_integer((*e).into()) == *o)
            && Rational::from_integer(self.lambda0_expected.into()) == self.lambda0_observed
            && self.chi_slope_expected as i64 == self.chi_slope_observed
    }
}

/// Compares the growth of the block valuations between levels `n − 1` and
/// `n` with `λ_j`, `λ₀` and the Euler-characteristic rule.
pub fn slope_check(d: &TowerDatum, n: u32) -> Result<SlopeReport> {
    assert!(n >= 1);
    let c = lambda_components(d)?;
    let (a, b) = (block_valuations(d, n - 1)?, block_valuations(d, n)?);
    let k = a.ramified_blocks.len().min(b.ramified_blocks.len());
    Ok(SlopeReport {
        lambda_j_expected: c.lambda_j.clone(),
        lambda_j_observed: (0..k).map(|i| &b.ramified_blocks[i] - &a.ramified_blocks[i]).collect(),
        lambda0_expected: c.lambda0,
        lambda0_observed: &b.trivial - &a.trivial,
        chi_slope_expected: u64::from(d.ramified_vertices().is_empty()),
        chi_slope_observed: b.chi as i64 - a.chi as i64,
    })
}

/// Everything the invariants report shows.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantsReport {
    pub g: GSeries,
    pub closed_form: ClosedForm,
    pub rows: Vec<TowerRow>,
    pub start: u32,
    pub fitted: IwasawaInvariants,
    pub char_ideal: CharIdeal,
}

impl InvariantsReport {
    /// Closed form, fit and characteristic ideal tell the same story.
    pub fn consistent(&self) -> bool {
        self.char_ideal.mu == self.closed_form.mu && self.char_ideal.lambda as i64 == self.closed_form.lambda
    }
}

/// Closed-form `(μ, λ)`, certified against a sweep to `n_max`.
pub fn certify(d: &TowerDatum, n_max: u32) -> Result<InvariantsReport> {
    let closed_form = closed_form_invariants(d)?;
    let rows = tower_sweep(d, n_max)?;
    let start = regime_start(d, n_max)?;
    let fitted = fit_and_certify(d.prime(), &rows, closed_form.mu, closed_form.lambda, start)?;
    Ok(InvariantsReport {
        g: g_series(d)?,
        char_ideal: char_ideal_generator(d)?,
        closed_form,
        rows,
        start,
        fitted,
    })
}
