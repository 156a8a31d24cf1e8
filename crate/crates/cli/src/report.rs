//! Reports with one content model and two renderings: JSON and aligned text.

use std::str::FromStr;

use serde_json::{Map, Number, Value};
use zeta_towers::algebra::{format_rational, CycloNum, Rational, UniPoly};

/// One exact value.
#[derive(Clone, Debug)]
pub enum Cell {
    /// Decimal digits of an integer of any size.
    Int(String),
    Rat(Rational),
    Text(String),
    Bool(bool),
    /// Coefficients from degree 0 up.
    Poly { var: &'static str, coeffs: Vec<Cell> },
    Cyclo(CycloNum),
    /// Polynomial over one cyclotomic field, tagged once.
    CycloPoly { var: &'static str, coeffs: Vec<CycloNum> },
    List(Vec<Cell>),
    Missing,
}

impl Cell {
    pub fn int(x: impl ToString) -> Self {
        Cell::Int(x.to_string())
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn rational_poly(p: &UniPoly<Rational>, var: &'static str) -> Self {
        Cell::Poly {
            var,
            coeffs: p.coeffs().iter().cloned().map(Cell::Rat).collect(),
        }
    }

    pub fn cyclo_poly(p: &UniPoly<CycloNum>, var: &'static str) -> Self {
        let level = p.coeffs().iter().map(CycloNum::level).max().unwrap_or(0);
        Cell::CycloPoly {
            var,
            coeffs: p.coeffs().iter().map(|c| c.lift(level)).collect(),
        }
    }

    pub fn int_list<T: ToString>(xs: impl IntoIterator<Item = T>) -> Self {
        Cell::List(xs.into_iter().map(Cell::int).collect())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Int(s) => Value::Number(Number::from_str(s).expect("decimal integer")),
            Cell::Rat(q) if q.is_integer() => Cell::Int(q.numer().to_string()).to_json(),
            Cell::Rat(q) => Value::String(format_rational(q)),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Poly { coeffs, .. } | Cell::List(coeffs) => {
                Value::Array(coeffs.iter().map(Cell::to_json).collect())
            }
            Cell::Cyclo(c) => tagged(c.prime(), c.level(), rationals(c)),
            Cell::CycloPoly { coeffs, .. } => {
                let (p, j) = coeffs.first().map_or((0, 0), |c| (c.prime(), c.level()));
                tagged(p, j, Value::Array(coeffs.iter().map(rationals).collect()))
            }
            Cell::Missing => Value::Null,
        }
    }

    pub fn to_human(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Rat(q) => format_rational(q),
            Cell::Bool(b) => b.to_string(),
            Cell::Poly { var, coeffs } => poly_text(var, coeffs),
            Cell::Cyclo(c) => cyclo_text(c),
            Cell::CycloPoly { var, coeffs } => {
                poly_text(var, &coeffs.iter().cloned().map(Cell::Cyclo).collect::<Vec<_>>())
            }
            Cell::List(xs) => {
                let parts: Vec<String> = xs.iter().map(Cell::to_human).collect();
                format!("[{}]", parts.join(", "))
            }
            Cell::Missing => "-".into(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Cell::Int(s) => s == "0",
            Cell::Rat(q) => q.numer().to_string() == "0",
            Cell::Cyclo(c) => c.coeffs().iter().all(|q| q.numer().to_string() == "0"),
            _ => false,
        }
    }
}

fn rationals(c: &CycloNum) -> Value {
    Value::Array(c.coeffs().iter().map(|q| Cell::Rat(q.clone()).to_json()).collect())
}

fn tagged(p: u64, j: u32, coefficients: Value) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), Value::from(p));
    m.insert("j".into(), Value::from(j));
    m.insert("coefficients".into(), coefficients);
    Value::Object(m)
}

/// `ζ` stands for `e^{2πi/p^j}`, written `ζ8` for `p^j = 8`.
fn cyclo_text(c: &CycloNum) -> String {
    if let Some(q) = c.to_rational() {
        return format_rational(&q);
    }
    let zeta = format!("ζ{}", c.prime().pow(c.level()));
    let coeffs: Vec<Cell> = c.coeffs().iter().cloned().map(Cell::Rat).collect();
    poly_text(&zeta, &coeffs)
}

fn poly_text(var: &str, coeffs: &[Cell]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_human();
        let compound = s.contains(' ') || s.get(1..).is_some_and(|t| t.contains(['+', '-']));
        let monomial = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let term = if k == 0 {
            if compound { format!("({s})") } else { s }
        } else if s == "1" {
            monomial
        } else if s == "-1" {
            format!("-{monomial}")
        } else if compound {
            format!("({s})*{monomial}")
        } else {
            format!("{s}*{monomial}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return "0".into();
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

#[derive(Clone, Debug)]
pub enum Section {
    Fields(Vec<(String, Cell)>),
    Table { columns: Vec<String>, rows: Vec<Vec<Cell>> },
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, Cell)>,
    pub sections: Vec<(String, Section)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            fields: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: Cell) {
        self.fields.push((key.into(), value));
    }

    pub fn fields(&mut self, name: &str, fields: Vec<(&str, Cell)>) {
        let fields = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self.sections.push((name.into(), Section::Fields(fields)));
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<Cell>>) {
        self.sections.push((
            name.into(),
            Section::Table {
                columns: columns.iter().map(|c| c.to_string()).collect(),
                rows,
            },
        ));
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        for (k, v) in &self.fields {
            out.insert(k.clone(), v.to_json());
        }
        for (name, section) in &self.sections {
            let value = match section {
                Section::Fields(fields) => {
                    Value::Object(fields.iter().map(|(k, v)| (k.clone(), v.to_json())).collect())
                }
                Section::Table { columns, rows } => Value::Array(
                    rows.iter()
                        .map(|row| {
                            Value::Object(
                                columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect(),
                            )
                        })
                        .collect(),
                ),
            };
            out.insert(name.clone(), value);
        }
        Value::Object(out)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("{}\n", self.command);
        out.push_str(&key_values(&self.fields));
        for (name, section) in &self.sections {
            out.push_str(&format!("\n{name}\n"));
            match section {
                Section::Fields(fields) => out.push_str(&key_values(fields)),
                Section::Table { columns, rows } => out.push_str(&table(columns, rows)),
            }
        }
        out
    }
}

fn key_values(fields: &[(String, Cell)]) -> String {
    let width = fields.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    fields
        .iter()
        .map(|(k, v)| format!("  {k:<width$}  {}\n", v.to_human()))
        .collect()
}

fn table(columns: &[String], rows: &[Vec<Cell>]) -> String {
    let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(Cell::to_human).collect()).collect();
    let widths: Vec<usize> = (0..columns.len())
        .map(|i| {
            text.iter()
                .map(|r| r[i].chars().count())
                .chain([columns[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(columns);
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for r in &text {
        out.push_str(&line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use zeta_towers::algebra::{rat, rat_int};

    #[test]
    fn polynomial_text() {
        let p = UniPoly::<Rational>::from_ints(&[1, 0, -4, 0, 3]);
        assert_eq!(Cell::rational_poly(&p, "u").to_human(), "1 - 4*u^2 + 3*u^4");
        let q = UniPoly::new(vec![rat(1, 2), rat_int(-1)], rat_int(0));
        assert_eq!(Cell::rational_poly(&q, "T").to_human(), "1/2 - T");
    }

    #[test]
    fn cyclotomic_cells() {
        let zeta = CycloNum::root_of_unity(2, 3, 1);
        assert_eq!(Cell::Cyclo(zeta.clone()).to_human(), "ζ8");
        let json = Cell::Cyclo(zeta).to_json();
        assert_eq!(json.to_string(), r#"{"p":2,"j":3,"coefficients":[0,1,0,0]}"#);
        let h = UniPoly::new(
            vec![CycloNum::one(2, 1), CycloNum::root_of_unity(2, 2, 1)],
            CycloNum::zero(2, 2),
        );
        let cell = Cell::cyclo_poly(&h, "u");
        assert_eq!(cell.to_json().to_string(), r#"{"p":2,"j":2,"coefficients":[[1,0],[0,1]]}"#);
        assert_eq!(cell.to_human(), "1 + ζ4*u");
    }

    #[test]
    fn json_numbers_are_exact() {
        let big = "123456789012345678901234567890";
        assert_eq!(Cell::int(big).to_json().to_string(), big);
        assert_eq!(Cell::Rat(rat(-3, 4)).to_json(), Value::String("-3/4".into()));
    }

    #[test]
    fn tables_align() {
        let mut r = Report::new("demo");
        r.field("level", Cell::int(2));
        r.table("rows", &["n", "kappa"], vec![vec![Cell::int(0), Cell::int(2)], vec![Cell::int(10), Cell::int(32)]]);
        assert_eq!(r.to_human(), "demo\n  level  2\n\nrows\n  n   kappa\n  --  -----\n  0   2\n  10  32\n");
    }
}
