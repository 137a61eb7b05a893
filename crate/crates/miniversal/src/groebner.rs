//! Buchberger's algorithm, normal forms, and quotient-ring monomial bases.
//!
//! Output bases are reduced (monic, no generator's term divisible by another
//! generator's leading monomial) and sorted by ascending leading monomial, so
//! equal ideals produce identical bases.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{Monomial, Polynomial, Variables};

pub use crate::poly::MonomialOrder;

/// Leading (monomial, coefficient) of a nonzero polynomial under `order`.
pub fn leading_term(p: &Polynomial, order: MonomialOrder) -> Option<(Monomial, FieldElement)> {
    p.terms()
        .max_by(|a, b| order.cmp(a.0, b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
}

/// A reduced basis of an ideal under a fixed monomial order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    vars: Variables,
    field: Field,
    order: MonomialOrder,
    /// Monic generators, ascending by leading monomial. Empty for the zero
    /// ideal; the unit ideal is represented by the single generator `1`.
    gens: Vec<Polynomial>,
    lms: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.lms.iter().any(|m| m.is_one())
    }

    /// Ideal membership.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }
}

/// Fully reduces `p` by the basis: the result has no term divisible by any
/// basis leading monomial, and `p - normal_form(p)` lies in the ideal.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if p.vars() != &gb.vars {
        return Err(Error::VariableMismatch);
    }
    if p.field() != gb.field {
        return Err(Error::FieldMismatch);
    }
    let mut rem = Polynomial::zero(gb.vars.clone(), gb.field);
    let mut work = p.clone();
    while let Some((lm, lc)) = leading_term(&work, gb.order) {
        match gb.lms.iter().position(|g| g.divides(&lm)) {
            Some(i) => {
                // work -= (lc/1) * (lm/lm_i) * g_i   (generators are monic)
                let q = gb.lms[i].div_into(&lm).expect("divisibility checked");
                work = work.sub(&gb.gens[i].mul_term(&q, &lc)?)?;
            }
            None => {
                // irreducible leading term moves to the remainder
                let t = Polynomial::from_terms(gb.vars.clone(), gb.field, [(lm.clone(), lc)])?;
                rem = rem.add(&t)?;
                work = work.sub(&t)?;
            }
        }
    }
    Ok(rem)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    order: MonomialOrder,
) -> Result<Polynomial> {
    let (lmf, lcf) = leading_term(f, order).ok_or(Error::InvalidArgument(
        "s-polynomial of the zero polynomial".into(),
    ))?;
    let (lmg, lcg) = leading_term(g, order).ok_or(Error::InvalidArgument(
        "s-polynomial of the zero polynomial".into(),
    ))?;
    let l = lmf.lcm(&lmg);
    let uf = lmf.div_into(&l).expect("lcm divisibility");
    let ug = lmg.div_into(&l).expect("lcm divisibility");
    let a = f.mul_term(&uf, &lcf.inv()?)?;
    let b = g.mul_term(&ug, &lcg.inv()?)?;
    a.sub(&b)
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree first, ties by pair-creation order) and the coprime-leading-term
/// criterion. Returns the reduced basis.
pub fn buchberger(
    vars: &Variables,
    field: Field,
    generators: &[Polynomial],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    for g in generators {
        if g.vars() != vars {
            return Err(Error::VariableMismatch);
        }
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
    }
    let mut basis: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut lms: Vec<Monomial> = basis
        .iter()
        .map(|g| leading_term(g, order).expect("nonzero").0)
        .collect();

    // queue of (lcm degree, creation index, i, j); BinaryHeap is max-first so
    // wrap in Reverse for smallest-degree-first
    let mut queue: BinaryHeap<Reverse<(u64, u64, usize, usize)>> = BinaryHeap::new();
    let mut counter: u64 = 0;
    let push_pairs = |queue: &mut BinaryHeap<_>,
                          counter: &mut u64,
                          lms: &[Monomial],
                          j: usize| {
        for i in 0..j {
            let l = lms[i].lcm(&lms[j]);
            queue.push(Reverse((l.degree(), *counter, i, j)));
            *counter += 1;
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &mut counter, &lms, j);
    }

    while let Some(Reverse((_, _, i, j))) = queue.pop() {
        // coprime leading terms reduce to zero automatically
        if lms[i].lcm(&lms[j]).degree() == lms[i].degree() + lms[j].degree() {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = reduce_by(&s, &basis, &lms, order)?;
        if r.is_zero() {
            continue;
        }
        basis.push(r.clone());
        lms.push(leading_term(&r, order).expect("nonzero remainder").0);
        let j = basis.len() - 1;
        push_pairs(&mut queue, &mut counter, &lms, j);
    }

    Ok(reduce_basis(vars.clone(), field, order, basis))
}

/// Full reduction of `p` against an explicit (not yet reduced) generator list.
fn reduce_by(
    p: &Polynomial,
    basis: &[Polynomial],
    lms: &[Monomial],
    order: MonomialOrder,
) -> Result<Polynomial> {
    let mut rem = Polynomial::zero(p.vars().clone(), p.field());
    let mut work = p.clone();
    while let Some((lm, lc)) = leading_term(&work, order) {
        match lms.iter().position(|g| g.divides(&lm)) {
            Some(i) => {
                let q = lms[i].div_into(&lm).expect("divisibility checked");
                let (_, lci) = leading_term(&basis[i], order).expect("nonzero");
                let coef = lc.div(&lci)?;
                work = work.sub(&basis[i].mul_term(&q, &coef)?)?;
            }
            None => {
                let t = Polynomial::from_terms(p.vars().clone(), p.field(), [(lm.clone(), lc)])?;
                rem = rem.add(&t)?;
                work = work.sub(&t)?;
            }
        }
    }
    Ok(rem)
}

/// Minimalizes (drops generators whose leading monomial another divides),
/// makes everything monic, tail-reduces to a fixpoint, and sorts.
fn reduce_basis(
    vars: Variables,
    field: Field,
    order: MonomialOrder,
    mut basis: Vec<Polynomial>,
) -> GroebnerBasis {
    basis.retain(|g| !g.is_zero());
    // minimal: remove g when some other leading monomial divides lm(g)
    let lms: Vec<Monomial> = basis
        .iter()
        .map(|g| leading_term(g, order).expect("nonzero").0)
        .collect();
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && lms[j].divides(&lms[i])
                    && (lms[j] != lms[i] || j < i)
            })
        })
        .collect();
    let mut minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // monic
    for g in minimal.iter_mut() {
        let (_, lc) = leading_term(g, order).expect("nonzero");
        *g = g.scale(&lc.inv().expect("leading coefficient nonzero")).expect("same field");
    }

    // tail-reduce each against the others until stable
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let olms: Vec<Monomial> = others
                .iter()
                .map(|g| leading_term(g, order).expect("nonzero").0)
                .collect();
            let r = reduce_by(&minimal[i], &others, &olms, order).expect("same ring");
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    minimal.sort_by(|a, b| {
        let la = leading_term(a, order).expect("nonzero").0;
        let lb = leading_term(b, order).expect("nonzero").0;
        order.cmp(&la, &lb)
    });
    let lms = minimal
        .iter()
        .map(|g| leading_term(g, order).expect("nonzero").0)
        .collect();
    GroebnerBasis {
        vars,
        field,
        order,
        gens: minimal,
        lms,
    }
}

/// Monomial basis of the quotient ring, ascending under the basis order.
/// Finite exactly when every variable has a pure power among the leading
/// monomials; otherwise the quotient is infinite-dimensional.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    let n = gb.vars.len();
    if gb.is_unit_ideal() {
        return Ok(Vec::new());
    }
    // bound[i] = least e with x_i^e a leading monomial
    let mut bound = vec![None::<u32>; n];
    for lm in &gb.lms {
        let nz: Vec<usize> = (0..n).filter(|&i| lm.0[i] > 0).collect();
        if let [i] = nz[..] {
            let e = lm.0[i];
            bound[i] = Some(bound[i].map_or(e, |b| b.min(e)));
        }
    }
    let bounds: Vec<u32> = bound
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.ok_or_else(|| {
                Error::NotZeroDimensional(format!(
                    "no pure power of `{}` in the leading ideal",
                    gb.vars[i]
                ))
            })
        })
        .collect::<Result<_>>()?;

    let mut basis = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let m = Monomial(cur.clone());
        if !gb.lms.iter().any(|lm| lm.divides(&m)) {
            basis.push(m);
        }
        // odometer over the box [0, bounds)
        let mut i = 0;
        loop {
            if i == n {
                basis.sort_by(|a, b| gb.order.cmp(a, b));
                return Ok(basis);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}
