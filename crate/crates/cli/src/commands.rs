use zeta_towers::algebra::{format_rational, Rational, Ring, UniPoly};
use zeta_towers::equivariant::{inflation_check, norm_check, subgroup_label_scale};
use zeta_towers::iwasawa::{
    char_ideal_generator, closed_form_invariants, default_max_level, fit_and_certify, g_series,
    regime_start, sweep_estimate, tower_sweep, TowerRow,
};
use zeta_towers::lfunctions::{
    galois_stability_holds, lfunction_table, main_identity, orbit_products, product_formula_check,
    reduction_identity_holds, special_values, sum_order_holds, vanishing_order_check,
};
use zeta_towers::tower::TowerDatum;
use zeta_towers::{Error, Result};

use crate::report::{Cell, Report};

/// A report, plus the error that decides the exit status when the report
/// is worth printing anyway.
pub struct Outcome {
    pub report: Report,
    pub failure: Option<Error>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, failure: None }
    }
}

const PATH_PRECISION: usize = 12;
const DETAIL_WIDTH: usize = 100;

/// `text` when it fits in a table cell, `summary` otherwise.
fn brief(text: String, summary: impl FnOnce() -> String) -> String {
    if text.chars().count() <= DETAIL_WIDTH {
        text
    } else {
        summary()
    }
}

fn header(r: &mut Report, d: &TowerDatum) {
    r.field("prime", Cell::int(d.prime()));
    r.field("base_vertices", Cell::int(d.base().num_vertices()));
    r.field("base_edges", Cell::int(d.base().num_edges()));
}

fn one_minus_u2() -> UniPoly<Rational> {
    UniPoly::<Rational>::from_ints(&[1, 0, -1])
}

pub fn zeta(d: &TowerDatum, level: u32) -> Result<Outcome> {
    let graph = d.build_level_graph(level).into_graph();
    if !graph.connected() {
        return Err(Error::LevelDisconnected(level));
    }
    let kappa = graph.spanning_tree_count()?;
    let (h, chi) = graph.ihara_zeta_reciprocal();
    let mut r = Report::new("zeta");
    header(&mut r, d);
    r.field("level", Cell::int(level));
    r.field("vertices", Cell::int(graph.num_vertices()));
    r.field("edges", Cell::int(graph.num_edges()));
    r.field("chi", Cell::int(chi));
    r.field("kappa", Cell::int(&kappa));
    r.field("h", Cell::rational_poly(&h, "u"));
    r.field("zeta_inverse_factored", Cell::text(format!("(1 - u^2)^{} * h(u)", -chi)));
    let expanded = u64::try_from(-chi)
        .map(|e| Cell::rational_poly(&one_minus_u2().pow(e).mul(&h), "u"))
        .unwrap_or(Cell::Missing);
    r.field("zeta_inverse", expanded);
    Ok(r.into())
}

pub fn lfunctions(d: &TowerDatum, level: u32) -> Result<Outcome> {
    let p = d.prime();
    let table = lfunction_table(d, level);
    let mut r = Report::new("lfunctions");
    header(&mut r, d);
    r.field("level", Cell::int(level));
    r.field(
        "characters",
        Cell::text(format!("psi_a(x) = zeta^(a*x), zeta = exp(2*pi*i/{})", p.pow(level))),
    );
    let rows = table
        .iter()
        .map(|row| {
            let sv = special_values(d, level, &row.character);
            vec![
                Cell::int(row.character.exponent()),
                Cell::int(row.character.order()),
                Cell::int(row.r0),
                Cell::int(row.chi),
                Cell::int(row.c_exponent()),
                Cell::cyclo_poly(&row.h, "u"),
                Cell::Cyclo(sv.h_at_1),
                sv.h_prime_at_1.map_or(Cell::Missing, Cell::Rat),
            ]
        })
        .collect();
    r.table(
        "lfunctions",
        &["a", "order", "r0", "chi_psi", "c_exponent", "h", "h_at_1", "h_prime_at_1"],
        rows,
    );
    let orbits = orbit_products(d, level)?
        .into_iter()
        .map(|(j, q)| vec![Cell::int(j), Cell::int(p.pow(j)), Cell::Rat(q)])
        .collect();
    r.table("orbit_products", &["j", "order", "product_h_at_1"], orbits);
    Ok(r.into())
}

fn tower_rows(d: &TowerDatum, rows: &[TowerRow]) -> Vec<Vec<Cell>> {
    rows.iter()
        .map(|row| {
            vec![
                Cell::int(row.n),
                Cell::int(row.vertices),
                Cell::int(row.edges),
                Cell::int(row.chi),
                Cell::int(d.euler_characteristic_riemann_hurwitz(row.n)),
                Cell::int(&row.kappa),
                Cell::int(row.ord),
            ]
        })
        .collect()
}

const TOWER_COLUMNS: [&str; 7] = ["n", "vertices", "edges", "chi", "chi_riemann_hurwitz", "kappa", "ord_p_kappa"];

pub fn tower(d: &TowerDatum, max_level: Option<u32>) -> Result<Outcome> {
    let n_max = max_level.unwrap_or_else(|| default_max_level(d.prime()));
    let rows = tower_sweep(d, n_max)?;
    let mut r = Report::new("tower");
    header(&mut r, d);
    r.field("max_level", Cell::int(n_max));
    r.table("levels", &TOWER_COLUMNS, tower_rows(d, &rows));
    Ok(r.into())
}

pub fn invariants(d: &TowerDatum, max_level: Option<u32>) -> Result<Outcome> {
    let p = d.prime();
    let n_max = max_level.unwrap_or_else(|| default_max_level(p));
    let closed = closed_form_invariants(d)?;
    let g = g_series(d)?;
    let ideal = char_ideal_generator(d)?;
    let rows = tower_sweep(d, n_max)?;
    let start = regime_start(d, n_max)?;
    let fit = fit_and_certify(p, &rows, closed.mu, closed.lambda, start);

    let mut r = Report::new("invariants");
    header(&mut r, d);
    r.field("max_level", Cell::int(n_max));
    r.fields(
        "g",
        vec![
            ("representative", Cell::Poly { var: "T", coeffs: g.poly.coeffs().iter().map(Cell::int).collect() }),
            ("shift", Cell::int(g.shift)),
            ("meaning", Cell::text(format!("g(T)*(1+T)^{}", g.shift))),
        ],
    );
    let c = &closed.components;
    r.fields(
        "closed_form",
        vec![
            ("mu_unr", Cell::int(c.mu_unr)),
            ("lambda_unr", Cell::int(c.lambda_unr)),
            ("lambda_0", Cell::int(c.lambda0)),
            ("lambda_j", Cell::int_list(c.lambda_j.iter())),
            ("mu", Cell::int(closed.mu)),
            ("lambda", Cell::int(closed.lambda)),
            ("lambda_algebraic", closed.lambda_algebraic.map_or(Cell::Missing, Cell::int)),
        ],
    );
    r.table("levels", &TOWER_COLUMNS, tower_rows(d, &rows));

    let mut flags = Vec::new();
    if closed.lambda < 0 {
        flags.push(Cell::text(format!("closed-form lambda = {} is negative", closed.lambda)));
    }
    let estimate = sweep_estimate(p, &rows);
    let estimate_cell = |f: fn(&(Rational, Rational, Rational)) -> &Rational| {
        estimate.as_ref().map_or(Cell::Missing, |e| Cell::Rat(f(e).clone()))
    };
    let (certified, failure) = match fit {
        Ok(f) => (
            vec![
                ("status", Cell::text("certified")),
                ("mu", Cell::int(f.mu)),
                ("lambda", Cell::int(f.lambda)),
                ("nu", Cell::int(f.nu)),
                ("n0", Cell::int(f.n0)),
            ],
            None,
        ),
        Err(e) => {
            flags.push(Cell::text(format!("closed form and sweep disagree: {e}")));
            (
                vec![
                    ("status", Cell::text(e.to_string())),
                    ("mu", Cell::Missing),
                    ("lambda", Cell::Missing),
                    ("nu", Cell::Missing),
                    ("n0", Cell::Missing),
                ],
                Some(e),
            )
        }
    };
    let mut sweep = vec![("regime_start", Cell::int(start))];
    sweep.extend(certified);
    sweep.push(("estimate_mu", estimate_cell(|e| &e.0)));
    sweep.push(("estimate_lambda", estimate_cell(|e| &e.1)));
    sweep.push(("estimate_nu", estimate_cell(|e| &e.2)));
    r.fields("sweep", sweep);

    if ideal.mu != closed.mu || ideal.lambda as i64 != closed.lambda {
        flags.push(Cell::text(format!(
            "characteristic ideal gives (mu, lambda) = ({}, {})",
            ideal.mu, ideal.lambda
        )));
    }
    r.fields(
        "characteristic_ideal",
        vec![
            ("f", Cell::Poly { var: "T", coeffs: ideal.f.coeffs().iter().map(Cell::int).collect() }),
            ("generator", Cell::Poly { var: "T", coeffs: ideal.generator.coeffs().iter().map(Cell::int).collect() }),
            ("mu", Cell::int(ideal.mu)),
            ("lambda", Cell::int(ideal.lambda)),
        ],
    );
    let failure = failure.or_else(|| {
        (!flags.is_empty()).then(|| {
            let text: Vec<String> = flags.iter().map(Cell::to_human).collect();
            Error::Certification(text.join("; "))
        })
    });
    r.field("flags", Cell::List(flags));
    Ok(Outcome { report: r, failure })
}

/// One row of the verification battery.
struct Item {
    name: &'static str,
    status: &'static str,
    detail: String,
}

fn pass_fail(name: &'static str, ok: bool, detail: String) -> Item {
    Item {
        name,
        status: if ok { "pass" } else { "fail" },
        detail,
    }
}

fn skipped(name: &'static str, reason: String) -> Item {
    Item {
        name,
        status: "skipped",
        detail: reason,
    }
}

/// `p^s = order`, or a validation error.
fn subgroup_exponent(p: u64, level: u32, order: u64) -> Result<u32> {
    let mut s = 0;
    let mut q = 1u64;
    while q < order && s < level {
        q *= p;
        s += 1;
    }
    if q != order {
        return Err(Error::InvalidDatum(format!(
            "--subgroup-order {order} is not the order of a subgroup of Z/{}Z",
            p.pow(level)
        )));
    }
    Ok(s)
}

pub fn verify(d: &TowerDatum, level: u32, subgroup_order: Option<u64>) -> Result<Outcome> {
    let p = d.prime();
    let h = match subgroup_order {
        Some(order) => Some(subgroup_exponent(p, level, order)?),
        None if level >= 1 => Some(1),
        None => None,
    };
    let graph = d.build_level_graph(level).into_graph();
    let connected = graph.connected();
    let chi = graph.euler_characteristic();
    let mut items = Vec::new();

    let pf = product_formula_check(d, level)?;
    items.push(pass_fail(
        "product formula",
        pf.direct == pf.product,
        brief(format!("h_Y(u) = {}", Cell::rational_poly(&pf.direct, "u").to_human()), || {
            format!("h_Y(u) of degree {}", pf.direct.degree().unwrap_or(0))
        }),
    ));
    items.push(pass_fail(
        "euler characteristic sum",
        pf.chi == pf.chi_sum,
        format!("sum of chi_psi = {}, chi = {}", pf.chi_sum, pf.chi),
    ));
    items.push(pass_fail("reduction identity", reduction_identity_holds(d, level), "(1-u^2)^r0 h = z".into()));
    items.push(pass_fail("galois stability", galois_stability_holds(d, level), "h(u, psi^k) = sigma_k h(u, psi)".into()));
    items.push(pass_fail("sum order", sum_order_holds(d, level), "sum of r0 = sum of (m_w - 1)".into()));

    let rh = d.euler_characteristic_riemann_hurwitz(level);
    items.push(pass_fail(
        "riemann-hurwitz",
        rh == chi && d.euler_characteristic(level) == chi,
        format!("chi = {chi}, riemann-hurwitz = {rh}"),
    ));

    let paths = graph.zeta_series_from_paths(PATH_PRECISION);
    let det = graph.zeta_series_from_determinant(PATH_PRECISION);
    items.push(pass_fail(
        "path counts",
        paths == det,
        format!("exp(sum N_k u^k / k) through u^{PATH_PRECISION}"),
    ));

    if connected {
        let kappa = graph.spanning_tree_count()?;
        let hp: Rational = graph.ihara_zeta_reciprocal().0.derivative().eval(&Rational::from_integer(1.into()));
        let rhs = Rational::from_integer((-2 * chi).into()) * Rational::from_integer(kappa.clone());
        items.push(pass_fail(
            "hashimoto",
            hp == rhs,
            format!("h'(1) = {}, -2 chi kappa = {}", format_rational(&hp), format_rational(&rhs)),
        ));
        let main = main_identity(d, level)?;
        items.push(pass_fail(
            "link_zak",
            main.holds(),
            format!("h'(1,psi_0) prod h(1,psi) = {}, -2 chi kappa = {}", format_rational(&main.lhs), format_rational(&main.rhs)),
        ));
    } else {
        items.push(skipped("hashimoto", format!("level {level} disconnected")));
        items.push(skipped("link_zak", format!("level {level} disconnected")));
    }

    match vanishing_order_check(d, level) {
        Ok(v) => items.push(pass_fail(
            "vanishing order",
            v.holds(),
            format!("h'(1,psi_0) = {}, nontrivial zeros at a = {:?}", format_rational(&v.h_prime_trivial), v.vanishing_nontrivial),
        )),
        Err(Error::Hypothesis(reason)) => items.push(skipped("vanishing order", reason)),
        Err(e @ Error::LevelDisconnected(_)) => items.push(skipped("vanishing order", e.to_string())),
        Err(e) => return Err(e),
    }

    match h {
        Some(h) => {
            let order = p.pow(h);
            let norm = norm_check(d, level, h)?;
            items.push(pass_fail(
                "induction (eta)",
                norm.eta_holds(),
                brief(
                    format!(
                        "N(eta) = {}",
                        norm.norm_of_eta
                            .format_with("u", |c| c.to_labeled_string(subgroup_label_scale(p, level, h)))
                    ),
                    || format!("N(eta) of degree {}", norm.norm_of_eta.degree().unwrap_or(0)),
                ),
            ));
            items.push(pass_fail("induction (gamma)", norm.gamma_holds(), format!("subgroup of order {order}")));
            items.push(pass_fail("trace of euler characteristic", norm.trace_holds(), format!("subgroup of order {order}")));
            let infl = inflation_check(d, level, h)?;
            items.push(Item {
                name: "inflation",
                status: if infl.equal { "equal" } else { "not equal (expected)" },
                detail: brief(
                    format!(
                        "projection {} vs quotient {}",
                        infl.lhs.format_with("u", |c| c.to_labeled_string(1)),
                        infl.rhs.format_with("u", |c| c.to_labeled_string(1))
                    ),
                    || format!("subgroup of order {order}"),
                ),
            });
        }
        None => {
            items.push(skipped("induction (eta)", "level 0 has no proper subgroup".into()));
            items.push(skipped("inflation", "level 0 has no proper subgroup".into()));
        }
    }

    let failed: Vec<&str> = items.iter().filter(|i| i.status == "fail").map(|i| i.name).collect();
    let mut r = Report::new("verify");
    header(&mut r, d);
    r.field("level", Cell::int(level));
    r.field("subgroup_order", h.map_or(Cell::Missing, |h| Cell::int(p.pow(h))));
    r.table(
        "checks",
        &["check", "status", "detail"],
        items
            .into_iter()
            .map(|i| vec![Cell::text(i.name), Cell::text(i.status), Cell::text(i.detail)])
            .collect(),
    );
    r.field("all_passed", Cell::Bool(failed.is_empty()));
    let failure = (!failed.is_empty()).then(|| Error::Certification(format!("failed checks: {}", failed.join(", "))));
    Ok(Outcome { report: r, failure })
}

