//! Shared fixtures and independent oracles.  Everything here recomputes
//! results by a different route than the library — dense coefficient arrays,
//! naive long division, truncated linear algebra — so agreement with the
//! engine is evidence rather than tautology.

#![allow(dead_code)] // each integration test binary uses a subset

use std::collections::BTreeMap;

use miniversal::field::{Field, FieldElement};
use miniversal::groebner::leading_term;
use miniversal::linalg::Mat;
use miniversal::poly::{
    monomials_up_to, parse_poly, variables, Monomial, MonomialOrder, Polynomial, Variables,
};

pub fn vars(names: &[&str]) -> Variables {
    variables(names).unwrap()
}

pub fn p(text: &str, vs: &Variables) -> Polynomial {
    parse_poly(text, vs, Field::Q).unwrap()
}

/// Dense convolution oracle for multiplication: expand both factors into
/// dense coefficient boxes indexed by flat exponent offsets and convolve.
pub fn dense_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.vars(), b.vars());
    let nv = a.vars().len();
    let field = a.field();
    let mut dims = vec![1usize; nv];
    for f in [a, b] {
        let mut bs = vec![0usize; nv];
        for (m, _) in f.terms() {
            for (bi, e) in bs.iter_mut().zip(&m.0) {
                *bi = (*bi).max(*e as usize);
            }
        }
        for (d, bi) in dims.iter_mut().zip(&bs) {
            *d += bi;
        }
    }
    let size: usize = dims.iter().product();
    let encode = |e: &[usize]| -> usize {
        let mut idx = 0;
        for i in 0..nv {
            idx = idx * dims[i] + e[i];
        }
        idx
    };
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut e = vec![0usize; nv];
        for i in (0..nv).rev() {
            e[i] = idx % dims[i];
            idx /= dims[i];
        }
        e
    };
    let dense = |f: &Polynomial| -> Vec<FieldElement> {
        let mut v = vec![field.zero(); size];
        for (m, c) in f.terms() {
            let e: Vec<usize> = m.0.iter().map(|&x| x as usize).collect();
            v[encode(&e)] = c.clone();
        }
        v
    };
    let da = dense(a);
    let db = dense(b);
    let mut out = vec![field.zero(); size];
    for (ia, ca) in da.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        let ea = decode(ia);
        for (ib, cb) in db.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let eb = decode(ib);
            let es: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
            let idx = encode(&es);
            out[idx] = out[idx].add(&ca.mul(cb));
        }
    }
    let terms = out.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
        let e = decode(i);
        (Monomial(e.into_iter().map(|x| x as u32).collect()), c)
    });
    Polynomial::from_terms(a.vars().clone(), field, terms).unwrap()
}

/// Naive long-division remainder: repeatedly cancel the largest term (in the
/// given order) divisible by some divisor's leading term.  A different loop
/// shape from the engine's reducer; against a Gröbner basis the remainder is
/// unique, so the two must agree.
pub fn long_division_remainder(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Polynomial {
    let leads: Vec<(Monomial, FieldElement)> = divisors
        .iter()
        .filter_map(|d| leading_term(d, order))
        .collect();
    let live: Vec<&Polynomial> = divisors.iter().filter(|d| !d.is_zero()).collect();
    let mut rem = f.clone();
    'reduce: loop {
        let mut terms: Vec<(Monomial, FieldElement)> =
            rem.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|x, y| order.cmp(&y.0, &x.0));
        for (m, c) in terms {
            for (d, (lm, lc)) in live.iter().zip(&leads) {
                if let Some(q) = lm.div_into(&m) {
                    let factor = c.div(lc).unwrap();
                    rem = rem.sub(&d.mul_term(&q, &factor).unwrap()).unwrap();
                    continue 'reduce;
                }
            }
        }
        return rem;
    }
}

/// Quotient-dimension oracle: count monomials of degree ≤ D modulo the row
/// space of all multiples m·gᵢ that stay within degree D, raising D until the
/// count repeats three times.  Returns None if it never settles (not
/// zero-dimensional at test scale).
pub fn quotient_dim_oracle(vs: &Variables, field: Field, gens: &[Polynomial]) -> Option<usize> {
    let nv = vs.len();
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return None; // zero ideal: infinite-dimensional quotient
    }
    let mut history: Vec<usize> = Vec::new();
    for cap in 2u32..=16 {
        let cols = monomials_up_to(nv, cap);
        let col_of: BTreeMap<&Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for g in &gens {
            let gd = g.total_degree().unwrap() as u32;
            if gd > cap {
                continue;
            }
            for m in monomials_up_to(nv, cap - gd) {
                // m·g written out by adding exponent vectors directly
                let mut row = vec![field.zero(); cols.len()];
                for (gm, gc) in g.terms() {
                    let prod = Monomial(
                        gm.0.iter().zip(&m.0).map(|(a, b)| a + b).collect(),
                    );
                    row[col_of[&prod]] = gc.clone();
                }
                rows.push(row);
            }
        }
        let rank = if rows.is_empty() {
            0
        } else {
            Mat::from_rows(field, rows).rank()
        };
        let dim = cols.len() - rank;
        history.push(dim);
        let h = history.len();
        if h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3] {
            return Some(dim);
        }
    }
    None
}
