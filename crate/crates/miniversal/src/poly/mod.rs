//! Sparse multivariate polynomials with exact coefficients.
//!
//! A polynomial is a map from exponent vectors to nonzero scalars, tied to an
//! ordered variable list and a coefficient field. Values are immutable;
//! arithmetic checks that both operands live in the same ring.

mod parse;

pub use parse::parse_poly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Ordered variable list shared by the values of one session.
pub type Variables = Arc<[String]>;

/// Builds a variable list, rejecting empty lists, malformed names, duplicates.
pub fn variables<S: AsRef<str>>(names: &[S]) -> Result<Variables> {
    if names.is_empty() {
        return Err(Error::InvalidArgument("empty variable list".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        let n = n.as_ref();
        let mut chars = n.chars();
        let head_ok = chars
            .next()
            .map(|c| c.is_ascii_alphabetic() || c == '_')
            .unwrap_or(false);
        if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::InvalidArgument(format!("bad variable name `{n}`")));
        }
        if !seen.insert(n) {
            return Err(Error::InvalidArgument(format!("duplicate variable `{n}`")));
        }
    }
    Ok(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// Exponent vector; position `i` is the exponent of the ring's `i`-th variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Monomial {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Graded reverse lexicographic comparison (variable 0 has highest
    /// precedence): higher total degree wins; on ties the monomial with the
    /// smaller exponent in the last differing position is larger.
    pub fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }

    /// Pure lexicographic comparison with variable 0 strongest.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        for i in 0..self.0.len() {
            if self.0[i] != other.0[i] {
                return self.0[i].cmp(&other.0[i]);
            }
        }
        Ordering::Equal
    }

    /// Human form over the named variables: `x^2*y`, or `1` for the constant.
    pub fn display(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars[i].clone()),
                _ => parts.push(format!("{}^{}", vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Term order used by the division algorithm and the canonical printer.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.cmp_degrevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
        }
    }
}

/// Sparse polynomial over a declared ring. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    vars: Variables,
    field: Field,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(vars: Variables, field: Field) -> Polynomial {
        Polynomial {
            vars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Variables, c: FieldElement) -> Polynomial {
        let field = c.field();
        let nv = vars.len();
        Polynomial::from_terms(vars, field, [(Monomial::one(nv), c)]).expect("constant term")
    }

    pub fn variable(vars: Variables, field: Field, i: usize) -> Polynomial {
        let nv = vars.len();
        Polynomial::from_terms(vars, field, [(Monomial::var(nv, i, 1), field.one())])
            .expect("variable term")
    }

    /// Builds from raw terms, combining duplicates and dropping zeros.
    pub fn from_terms<I>(vars: Variables, field: Field, terms: I) -> Result<Polynomial>
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Polynomial::zero(vars, field);
        for (m, c) in terms {
            if m.nvars() != p.vars.len() {
                return Err(Error::InvalidArgument(
                    "exponent vector length does not match the variable list".into(),
                ));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn compat(&self, other: &Polynomial) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compat(other)?;
        let mut out = Polynomial::zero(self.vars.clone(), self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(self.vars.clone(), self.field));
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        Ok(out)
    }

    /// `c * x^m * self`, the division-step workhorse.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Result<Polynomial> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(self.vars.clone(), self.field));
        }
        let mut out = Polynomial::zero(self.vars.clone(), self.field);
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca.mul(c));
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut out = Polynomial::constant(self.vars.clone(), self.field.one());
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone(), self.field);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c.mul(&self.field.from_i64(e as i64)));
        }
        out
    }

    /// Vector of all formal partials, in variable order.
    pub fn jacobian(&self) -> Vec<Polynomial> {
        (0..self.vars.len()).map(|i| self.partial(i)).collect()
    }

    /// Canonical string: terms descending under `order`, exact coefficients,
    /// one space around `+`/`-`. Reparses to an equal polynomial.
    pub fn format_with(&self, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ts: Vec<(&Monomial, &FieldElement)> = self.terms.iter().collect();
        ts.sort_by(|a, b| order.cmp(b.0, a.0));
        let mut out = String::new();
        for (i, (m, c)) in ts.iter().enumerate() {
            let (neg, mag) = c.sign_split();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&m.display(&self.vars));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(MonomialOrder::DegRevLex))
    }
}

/// All monomials of exact total degree `deg` in `nvars` variables, ascending
/// in the derived lexicographic order on exponent vectors.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    rec(0, deg, &mut cur, &mut out);
    out.sort();
    out
}

/// All monomials of total degree at most `maxdeg`, ascending by (degree, lex).
pub fn monomials_up_to(nvars: usize, maxdeg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=maxdeg {
        out.extend(monomials_of_degree(nvars, d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Variables {
        variables(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &xy(), Field::Q).unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        let prod = p("x + y").mul(&p("x - y")).unwrap();
        assert_eq!(prod, p("x^2 - y^2"));
    }

    #[test]
    fn jacobian_of_node_and_cusp() {
        let node = p("x*y");
        let parts = node.jacobian();
        assert_eq!(parts, vec![p("y"), p("x")]);
        let cusp = p("y^2 - x^3");
        assert_eq!(cusp.jacobian(), vec![p("-3*x^2"), p("2*y")]);
        let c = p("5");
        assert_eq!(c.jacobian(), vec![p("0"), p("0")]);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("y^2 - x^3").to_string(), "-x^3 + y^2");
        assert_eq!(p("x*y").to_string(), "x*y");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("2/4*x - 1").to_string(), "1/2*x - 1");
        assert_eq!(p("-x").to_string(), "-x");
        // degrevlex: x^2 > x*y > y^2 at equal degree
        assert_eq!(p("y^2 + x*y + x^2").to_string(), "x^2 + x*y + y^2");
    }

    #[test]
    fn ring_checks() {
        let other = variables(&["x", "z"]).unwrap();
        let q = parse_poly("x", &other, Field::Q).unwrap();
        assert_eq!(p("x").add(&q).unwrap_err().kind(), "variable_mismatch");
        let f7 = parse_poly("x", &xy(), Field::prime(7).unwrap()).unwrap();
        assert_eq!(p("x").mul(&f7).unwrap_err().kind(), "field_mismatch");
    }

    #[test]
    fn derivative_in_characteristic_p() {
        let f5 = Field::prime(5).unwrap();
        let q = parse_poly("x^5 + x", &xy(), f5).unwrap();
        // d/dx x^5 = 5x^4 = 0 in F_5
        assert_eq!(q.partial(0), parse_poly("1", &xy(), f5).unwrap());
    }

    #[test]
    fn degrevlex_vs_lex() {
        // x: (1,0,0) etc. in three variables
        let x = Monomial(vec![1, 0, 0]);
        let y = Monomial(vec![0, 1, 0]);
        let xz = Monomial(vec![1, 0, 1]);
        let y2 = Monomial(vec![0, 2, 0]);
        assert_eq!(x.cmp_degrevlex(&y), Ordering::Greater);
        // deg 2 tie: x*z vs y^2 — last differing index is z, x*z has larger
        // exponent there, so x*z is smaller under degrevlex
        assert_eq!(xz.cmp_degrevlex(&y2), Ordering::Less);
        assert_eq!(xz.cmp_lex(&y2), Ordering::Greater);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 2).len(), 3);
        assert_eq!(monomials_up_to(2, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one(3)]);
    }

    #[test]
    fn variable_list_validation() {
        assert!(variables(&["x", "y"]).is_ok());
        assert!(variables::<&str>(&[]).is_err());
        assert!(variables(&["x", "x"]).is_err());
        assert!(variables(&["2x"]).is_err());
        assert!(variables(&[""]).is_err());
    }
}
