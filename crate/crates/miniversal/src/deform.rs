//! Deformation calculus for an affine hypersurface V(f) with isolated
//! singularities: Tjurina data, Kodaira–Spencer classes, the miniversal
//! family, specialization to a finite base, lifting along small extensions,
//! gluing over fibered products, and the minimal-generator count μ(I).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::artin::{fibered_product, AlgebraJson, AlgebraMorphism, FiberedProduct, FiniteKAlgebra, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::groebner::{buchberger, normal_form, quotient_basis, GroebnerBasis, MonomialOrder};
use crate::linalg::{unit_vec, Mat};
use crate::poly::{monomials_up_to, parse_poly, variables, Monomial, Polynomial, Variables};

/// Tjurina algebra data of a hypersurface equation: the quotient by
/// (f, ∂f/∂x₁, …, ∂f/∂xₙ), its dimension, and its monomial basis.
#[derive(Clone, Debug)]
pub struct TjurinaData {
    f: Polynomial,
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
}

impl TjurinaData {
    pub fn equation(&self) -> &Polynomial {
        &self.f
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// The Tjurina number: dim of the Tjurina algebra.
    pub fn number(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|m| m.display(self.f.vars()))
            .collect()
    }
}

/// Tjurina data of `f`. Fails on constant equations and on non-isolated
/// singularities (infinite-dimensional quotient).
pub fn tjurina(f: &Polynomial) -> Result<TjurinaData> {
    if f.is_constant() {
        return Err(Error::ConstantEquation);
    }
    let mut gens = vec![f.clone()];
    gens.extend(f.jacobian());
    let gb = buchberger(f.vars(), f.field(), &gens, MonomialOrder::DegRevLex)?;
    let basis = match quotient_basis(&gb) {
        Ok(b) => b,
        Err(Error::NotZeroDimensional(_)) => return Err(Error::NotIsolated),
        Err(e) => return Err(e),
    };
    Ok(TjurinaData {
        f: f.clone(),
        gb,
        basis,
    })
}

/// Kodaira–Spencer class of the first-order deformation f + εg: the
/// coordinates of g's class in the Tjurina algebra basis. Zero exactly when
/// g lies in (f, ∂f).
pub fn ks_class(td: &TjurinaData, g: &Polynomial) -> Result<Vec<FieldElement>> {
    let nf = normal_form(g, &td.gb)?;
    let field = td.f.field();
    let mut coords = vec![field.zero(); td.basis.len()];
    for (m, c) in nf.terms() {
        let k = td
            .basis
            .iter()
            .position(|b| b == m)
            .expect("normal form is supported on the quotient basis");
        coords[k] = c.clone();
    }
    Ok(coords)
}

/// The family f + Σ tᵢ·gᵢ over parameters t₁…t_m, one per Tjurina basis
/// monomial gᵢ, together with its Kodaira–Spencer matrix (the identity in
/// these bases — the miniversality witness).
#[derive(Clone, Debug)]
pub struct MiniversalFamily {
    td: TjurinaData,
    params: Vec<String>,
    ring: Variables,
    family: Polynomial,
    ks: Mat,
}

impl MiniversalFamily {
    pub fn tjurina_data(&self) -> &TjurinaData {
        &self.td
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Variables of the total ring: the x-variables followed by the
    /// parameters.
    pub fn ring(&self) -> &Variables {
        &self.ring
    }

    pub fn family(&self) -> &Polynomial {
        &self.family
    }

    pub fn kodaira_spencer_matrix(&self) -> &Mat {
        &self.ks
    }
}

/// Widens `p` to a ring whose variable list starts with p's variables.
fn embed_prefix(p: &Polynomial, ring: &Variables) -> Polynomial {
    let pad = ring.len() - p.vars().len();
    Polynomial::from_terms(
        ring.clone(),
        p.field(),
        p.terms().map(|(m, c)| {
            let mut e = m.0.clone();
            e.extend(std::iter::repeat_n(0, pad));
            (Monomial(e), c.clone())
        }),
    )
    .expect("widening preserves validity")
}

/// Builds the miniversal family of td's equation. Parameters are named
/// t1…tm; the x-variables must not use those names.
pub fn miniversal_family(td: &TjurinaData) -> Result<MiniversalFamily> {
    let m = td.number();
    let params: Vec<String> = (1..=m).map(|i| format!("t{i}")).collect();
    for p in &params {
        if td.f.vars().iter().any(|v| v == p) {
            return Err(Error::InvalidArgument(format!(
                "parameter name `{p}` collides with a variable of the equation"
            )));
        }
    }
    let mut names: Vec<String> = td.f.vars().to_vec();
    names.extend(params.iter().cloned());
    let ring = variables(&names)?;
    let field = td.f.field();
    let nx = td.f.vars().len();

    let mut family = embed_prefix(&td.f, &ring);
    for (i, g) in td.basis.iter().enumerate() {
        let mut e = g.0.clone();
        e.extend(std::iter::repeat_n(0, ring.len() - nx));
        e[nx + i] += 1; // t_i * g_i
        family = family.add(&Polynomial::from_terms(
            ring.clone(),
            field,
            [(Monomial(e), field.one())],
        )?)?;
    }

    let mut ks = Mat::zero(field, m, m);
    for (i, g) in td.basis.iter().enumerate() {
        let gp = Polynomial::from_terms(td.f.vars().clone(), field, [(g.clone(), field.one())])?;
        let col = ks_class(td, &gp)?;
        for (r, c) in col.into_iter().enumerate() {
            ks.set(r, i, c);
        }
    }
    assert!(
        m == 0 || ks.is_identity(),
        "the Kodaira–Spencer matrix of the monomial-basis family is the identity"
    );

    Ok(MiniversalFamily {
        td: td.clone(),
        params,
        ring,
        family,
        ks,
    })
}

/// A deformation of f over a finite local base A: an equation with A-valued
/// coefficients, stored as one polynomial per A-basis element. Entry 0 is the
/// central fiber.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeformationOverA {
    base: Arc<FiniteKAlgebra>,
    x_vars: Variables,
    coeffs: Vec<Polynomial>,
}

/// Serialized form: the base algebra plus basis-label → polynomial strings.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DeformationJson {
    pub base: AlgebraJson,
    pub coefficients: BTreeMap<String, String>,
}

impl DeformationOverA {
    pub fn new(
        base: Arc<FiniteKAlgebra>,
        x_vars: Variables,
        coeffs: Vec<Polynomial>,
    ) -> Result<DeformationOverA> {
        if coeffs.len() != base.dim() {
            return Err(Error::InvalidArgument(format!(
                "a deformation over a dimension-{} base needs {} coefficient \
                 polynomials, got {}",
                base.dim(),
                base.dim(),
                coeffs.len()
            )));
        }
        for c in &coeffs {
            if c.vars() != &x_vars {
                return Err(Error::VariableMismatch);
            }
            if c.field() != base.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(DeformationOverA {
            base,
            x_vars,
            coeffs,
        })
    }

    pub fn base(&self) -> &Arc<FiniteKAlgebra> {
        &self.base
    }

    pub fn x_vars(&self) -> &Variables {
        &self.x_vars
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn central_fiber(&self) -> &Polynomial {
        &self.coeffs[0]
    }

    /// Applies a base change along `m` (whose source must be this base):
    /// coefficients transform by the matrix.
    pub fn pushforward(&self, m: &AlgebraMorphism) -> Result<DeformationOverA> {
        if m.source() != &self.base {
            return Err(Error::AlgebraMismatch(
                "base change must start at the deformation's base".into(),
            ));
        }
        let field = self.base.field();
        let mut out = Vec::with_capacity(m.target().dim());
        for r in 0..m.target().dim() {
            let mut acc = Polynomial::zero(self.x_vars.clone(), field);
            for (k, c) in self.coeffs.iter().enumerate() {
                acc = acc.add(&c.scale(m.matrix().at(r, k))?)?;
            }
            out.push(acc);
        }
        DeformationOverA::new(m.target().clone(), self.x_vars.clone(), out)
    }

    pub fn to_json(&self) -> DeformationJson {
        DeformationJson {
            base: self.base.to_json(),
            coefficients: self
                .base
                .labels()
                .iter()
                .cloned()
                .zip(self.coeffs.iter().map(|c| c.to_string()))
                .collect(),
        }
    }
}

/// Specializes the miniversal family along tᵢ ↦ aᵢ (coordinate vectors of
/// maximal-ideal elements of the target).
pub fn specialize_family(
    mf: &MiniversalFamily,
    base: &Arc<FiniteKAlgebra>,
    assignment: &[Vec<FieldElement>],
) -> Result<DeformationOverA> {
    let m = mf.params.len();
    if assignment.len() != m {
        return Err(Error::ParameterCount {
            expected: m,
            got: assignment.len(),
        });
    }
    let field = mf.td.f.field();
    if base.field() != field {
        return Err(Error::FieldMismatch);
    }
    for a in assignment {
        if a.len() != base.dim() {
            return Err(Error::InvalidArgument(format!(
                "assignment vectors must have {} coordinates",
                base.dim()
            )));
        }
        if a.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if !base.in_maximal_ideal(a) {
            return Err(Error::AssignmentNotInMaximalIdeal);
        }
    }
    let x_vars = mf.td.f.vars().clone();
    let mut coeffs = vec![Polynomial::zero(x_vars.clone(), field); base.dim()];
    coeffs[0] = mf.td.f.clone();
    for (i, g) in mf.td.basis.iter().enumerate() {
        let gp = Polynomial::from_terms(x_vars.clone(), field, [(g.clone(), field.one())])?;
        for (k, c) in assignment[i].iter().enumerate() {
            coeffs[k] = coeffs[k].add(&gp.scale(c)?)?;
        }
    }
    DeformationOverA::new(base.clone(), x_vars, coeffs)
}

/// Lifts a deformation along a small extension ext: A′ → A: the coefficients
/// are pulled back through the canonical linear section of ext (basis
/// elements with matching labels map to each other when ext sends them
/// across; remaining coordinates are solved exactly). The pushforward of the
/// lift along ext equals the input coefficientwise.
pub fn lift_deformation(
    d: &DeformationOverA,
    ext: &AlgebraMorphism,
) -> Result<DeformationOverA> {
    if ext.target() != &d.base {
        return Err(Error::AlgebraMismatch(
            "the extension must end at the deformation's base".into(),
        ));
    }
    if !ext.is_surjective() {
        return Err(Error::NotSurjective);
    }
    if !ext.is_small_extension() {
        return Err(Error::NotSmall);
    }
    let src = ext.source();
    let tgt = ext.target();
    let field = src.field();

    // section column for e_k of the target: prefer the source basis element
    // with the same label when ext maps it straight onto e_k
    let mut section_cols = Vec::with_capacity(tgt.dim());
    for k in 0..tgt.dim() {
        let ek = unit_vec(field, tgt.dim(), k);
        let labeled = src
            .labels()
            .iter()
            .position(|l| l == &tgt.labels()[k])
            .filter(|&j| ext.matrix().col(j) == ek);
        let col = match labeled {
            Some(j) => unit_vec(field, src.dim(), j),
            None => ext
                .matrix()
                .solve(&ek)
                .expect("a surjection admits a linear section"),
        };
        section_cols.push(col);
    }
    let section = Mat::from_cols(field, section_cols);

    let mut coeffs = Vec::with_capacity(src.dim());
    for j in 0..src.dim() {
        let mut acc = Polynomial::zero(d.x_vars.clone(), field);
        for (k, c) in d.coeffs.iter().enumerate() {
            acc = acc.add(&c.scale(section.at(j, k))?)?;
        }
        coeffs.push(acc);
    }
    DeformationOverA::new(src.clone(), d.x_vars.clone(), coeffs)
}

/// Glues two deformations along p: A′ → A and q: A″ → A (q surjective) into
/// the unique deformation over B = A′ ×_A A″ projecting back onto both.
/// Requires the pushforwards to A to agree coefficientwise.
pub fn glue_deformations(
    d1: &DeformationOverA,
    d2: &DeformationOverA,
    p: &AlgebraMorphism,
    q: &AlgebraMorphism,
) -> Result<(DeformationOverA, FiberedProduct)> {
    if p.source() != &d1.base {
        return Err(Error::AlgebraMismatch(
            "the first leg must start at the first deformation's base".into(),
        ));
    }
    if q.source() != &d2.base {
        return Err(Error::AlgebraMismatch(
            "the second leg must start at the second deformation's base".into(),
        ));
    }
    if d1.x_vars != d2.x_vars {
        return Err(Error::VariableMismatch);
    }
    let fp = fibered_product(p, q)?;
    if d1.pushforward(p)? != d2.pushforward(q)? {
        return Err(Error::GluingMismatch);
    }
    let field = d1.base.field();
    let da = d1.base.dim();
    let db = d2.base.dim();
    let dim_b = fp.algebra().dim();

    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for c in d1.coeffs.iter().chain(d2.coeffs.iter()) {
        monos.extend(c.terms().map(|(m, _)| m.clone()));
    }

    let mut coeffs = vec![Polynomial::zero(d1.x_vars.clone(), field); dim_b];
    for mono in monos {
        let mut stacked = Vec::with_capacity(da + db);
        stacked.extend(d1.coeffs.iter().map(|c| c.coeff(&mono)));
        stacked.extend(d2.coeffs.iter().map(|c| c.coeff(&mono)));
        let z = fp
            .embedding()
            .solve(&stacked)
            .expect("agreeing pushforwards land inside the fibered product");
        let mp = Polynomial::from_terms(d1.x_vars.clone(), field, [(mono, field.one())])?;
        for (r, c) in z.into_iter().enumerate() {
            coeffs[r] = coeffs[r].add(&mp.scale(&c)?)?;
        }
    }
    let glued = DeformationOverA::new(fp.algebra().clone(), d1.x_vars.clone(), coeffs)?;
    Ok((glued, fp))
}

/// Reads a deformation from a single polynomial over the joint ring whose
/// variables are the x-variables followed by the base quotient's variables:
/// each term splits into an x-part times a base-ring part, and the base part
/// is reduced to coordinates.
pub fn deformation_from_joint(
    joint: &Polynomial,
    x_vars: &Variables,
    base: &QuotientAlgebra,
) -> Result<DeformationOverA> {
    let nx = x_vars.len();
    let expected: Vec<&str> = x_vars
        .iter()
        .chain(base.vars().iter())
        .map(|s| s.as_str())
        .collect();
    let actual: Vec<&str> = joint.vars().iter().map(|s| s.as_str()).collect();
    if expected != actual {
        return Err(Error::VariableMismatch);
    }
    let field = joint.field();
    let dim = base.dim();
    let mut coeffs = vec![Polynomial::zero(x_vars.clone(), field); dim];
    for (m, c) in joint.terms() {
        let mx = Monomial(m.0[..nx].to_vec());
        let mb = Monomial(m.0[nx..].to_vec());
        let bpoly = Polynomial::from_terms(
            base.vars().clone(),
            field,
            [(mb, field.one())],
        )?;
        let coords = base.element(&bpoly)?;
        let xterm = Polynomial::from_terms(x_vars.clone(), field, [(mx, c.clone())])?;
        for (k, v) in coords.into_iter().enumerate() {
            coeffs[k] = coeffs[k].add(&xterm.scale(&v)?)?;
        }
    }
    DeformationOverA::new(base.algebra().clone(), x_vars.clone(), coeffs)
}

/// Parses `name=polynomial` specs (one per parameter, any order) into
/// coordinate vectors over the base quotient. Membership in the maximal
/// ideal is checked later, at specialization.
pub fn parse_assignments(
    specs: &[String],
    params: &[String],
    base: &QuotientAlgebra,
) -> Result<Vec<Vec<FieldElement>>> {
    let mut out: Vec<Option<Vec<FieldElement>>> = vec![None; params.len()];
    for spec in specs {
        let (name, rhs) = spec.split_once('=').ok_or_else(|| {
            Error::InvalidArgument(format!(
                "assignment `{spec}` must have the form name=polynomial"
            ))
        })?;
        let name = name.trim();
        let idx = params
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter `{name}`")))?;
        if out[idx].is_some() {
            return Err(Error::InvalidArgument(format!(
                "parameter `{name}` assigned twice"
            )));
        }
        let p = parse_poly(rhs, base.vars(), base.field())?;
        out[idx] = Some(base.element(&p)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| {
                Error::InvalidArgument(format!("parameter `{}` has no assignment", params[i]))
            })
        })
        .collect()
}

/// μ at one truncation level: dim of I/(𝔪·I) computed inside the space of
/// polynomials of degree ≤ n.
fn mu_at(vars: &Variables, field: Field, gens: &[Polynomial], n: u32) -> Result<usize> {
    let nv = vars.len();
    let cols_monos = monomials_up_to(nv, n);
    let width = cols_monos.len();
    let multipliers = monomials_up_to(nv, n.saturating_sub(1));
    let rows = gens.len() * multipliers.len();
    // RREF cost scales with rows · width²; refuse absurd truncations
    if (rows as u128) * (width as u128) * (width as u128) > 200_000_000 {
        return Err(Error::LimitExceeded(format!(
            "truncation at degree {n} needs a {rows} × {width} elimination"
        )));
    }
    let index: BTreeMap<&Monomial, usize> =
        cols_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let truncated_row = |mult: &Monomial, g: &Polynomial| -> Vec<FieldElement> {
        let mut row = vec![field.zero(); width];
        for (m, c) in g.terms() {
            let prod = mult.mul(m);
            if prod.degree() <= n as u64 {
                row[index[&prod]] = c.clone();
            }
        }
        row
    };

    // rows spanning 𝔪·I first, then the generators themselves on top
    let mut mat_rows: Vec<Vec<FieldElement>> = Vec::new();
    for mult in multipliers.iter().filter(|m| !m.is_one()) {
        for g in gens {
            mat_rows.push(truncated_row(mult, g));
        }
    }
    let ideal_rank_lower = Mat::from_rows(field, mat_rows.clone()).rank();
    let one = Monomial::one(nv);
    for g in gens {
        mat_rows.push(truncated_row(&one, g));
    }
    let ideal_rank = Mat::from_rows(field, mat_rows).rank();
    Ok(ideal_rank - ideal_rank_lower)
}

/// Minimal number of generators μ(I) = dim_k I/(𝔪·I) of the ideal generated
/// by `gens` in the local ring at the origin, computed by truncation linear
/// algebra. The truncation degree starts at (max generator degree + 2) and
/// doubles until the value is seen three times in a row; degrees are capped
/// at 64 and non-stabilization within the cap is an error.
pub fn mu_generators(vars: &Variables, field: Field, gens: &[Polynomial]) -> Result<usize> {
    for g in gens {
        if g.vars() != vars {
            return Err(Error::VariableMismatch);
        }
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !g.coeff(&Monomial::one(vars.len())).is_zero() {
            return Err(Error::InvalidArgument(
                "ideal generators must have zero constant term".into(),
            ));
        }
    }
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(0);
    }
    let maxdeg = gens
        .iter()
        .map(|g| g.total_degree().expect("nonzero"))
        .max()
        .expect("nonempty") as u32;
    const CAP: u32 = 64;
    let mut n = (maxdeg + 2).min(CAP);
    let mut history: Vec<usize> = Vec::new();
    loop {
        let v = mu_at(vars, field, &gens, n)?;
        history.push(v);
        if history.len() >= 3 && history[history.len() - 3..].iter().all(|&x| x == v) {
            return Ok(v);
        }
        if n == CAP {
            return Err(Error::NonStabilization { cap: CAP });
        }
        n = (n * 2).min(CAP);
    }
}
