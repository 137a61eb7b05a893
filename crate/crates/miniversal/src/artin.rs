//! Finite-dimensional local algebras as structure-constant tables.
//!
//! An algebra here is a commutative associative unital k-algebra A of finite
//! dimension whose span of the non-unit basis elements is a nilpotent ideal 𝔪
//! with A/𝔪 ≅ k. Morphisms are unital k-algebra maps stored as matrices in
//! the chosen bases. On top of that sit fibered products A′ ×_A A″ and the
//! factorization of any surjection into tiny extensions (surjections with a
//! one-dimensional kernel killed by the maximal ideal).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::groebner::{buchberger, normal_form, quotient_basis, GroebnerBasis, MonomialOrder};
use crate::linalg::{span_basis, unit_vec, Mat};
use crate::poly::{Monomial, Polynomial, Variables};

/// Multiplication table of a local algebra: `table[i][j]` is the coordinate
/// vector of `e_i * e_j`. Basis element 0 is the unit, labeled `"1"`; the
/// maximal ideal is spanned by the remaining basis elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteKAlgebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    table: Vec<Vec<Vec<FieldElement>>>,
    /// least n with 𝔪^(n+1) = 0
    order: u32,
}

fn mul_vec_raw(
    field: Field,
    dim: usize,
    table: &[Vec<Vec<FieldElement>>],
    u: &[FieldElement],
    w: &[FieldElement],
) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); dim];
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            if wj.is_zero() {
                continue;
            }
            let f = ui.mul(wj);
            for (o, c) in out.iter_mut().zip(&table[i][j]) {
                *o = o.add(&f.mul(c));
            }
        }
    }
    out
}

/// Least n with 𝔪^(n+1) = 0, via the filtration 𝔪 ⊇ 𝔪² ⊇ …; errors when the
/// filtration stalls at a nonzero space (𝔪 not nilpotent).
fn compute_order(
    field: Field,
    dim: usize,
    table: &[Vec<Vec<FieldElement>>],
) -> Result<u32> {
    if dim == 1 {
        return Ok(0);
    }
    let mut cur: Vec<Vec<FieldElement>> = (1..dim).map(|i| unit_vec(field, dim, i)).collect();
    let mut order = 0u32;
    while !cur.is_empty() {
        order += 1;
        let mut prods = Vec::new();
        for v in &cur {
            for j in 1..dim {
                let p = mul_vec_raw(field, dim, table, &unit_vec(field, dim, j), v);
                if p.iter().any(|c| !c.is_zero()) {
                    prods.push(p);
                }
            }
        }
        let next = span_basis(field, &prods, dim);
        if next.len() >= cur.len() {
            return Err(Error::NotLocalArtinian(
                "the maximal ideal is not nilpotent".into(),
            ));
        }
        cur = next;
    }
    Ok(order)
}

impl FiniteKAlgebra {
    /// Validates the full set of axioms (shape, unit, commutativity,
    /// associativity, the maximal ideal being a nilpotent ideal) and computes
    /// the order.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vec<FieldElement>>>,
    ) -> Result<FiniteKAlgebra> {
        FiniteKAlgebra::build(field, labels, table, true)
    }

    /// Same as `new` but skips the cubic-in-dimension associativity sweep;
    /// reserved for tables that are associative by construction (normal-form
    /// multiplication in a quotient ring).
    fn build(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vec<FieldElement>>>,
        check_assoc: bool,
    ) -> Result<FiniteKAlgebra> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("an algebra needs a nonempty basis".into()));
        }
        if labels[0] != "1" {
            return Err(Error::InvalidArgument(
                "basis element 0 must be the unit, labeled `1`".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidArgument(format!("duplicate basis label `{l}`")));
            }
        }
        if table.len() != dim
            || table.iter().any(|r| r.len() != dim)
            || table.iter().flatten().any(|v| v.len() != dim)
        {
            return Err(Error::InvalidArgument(
                "structure-constant tensor shape must be dim × dim × dim".into(),
            ));
        }
        for v in table.iter().flatten().flatten() {
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        for (j, row) in table.iter().enumerate() {
            let ej = unit_vec(field, dim, j);
            if table[0][j] != ej || row[0] != ej {
                return Err(Error::InvalidArgument(
                    "basis element 0 is not a two-sided unit".into(),
                ));
            }
        }
        for i in 0..dim {
            for j in 0..i {
                if table[i][j] != table[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "multiplication is not commutative on ({}, {})",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        for i in 1..dim {
            for j in 1..dim {
                if !table[i][j][0].is_zero() {
                    return Err(Error::NotLocalArtinian(format!(
                        "the product {} * {} has a nonzero constant part, so the \
                         span of the non-unit basis elements is not an ideal",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        if check_assoc {
            for i in 0..dim {
                for j in 0..dim {
                    for l in 0..dim {
                        let left =
                            mul_vec_raw(field, dim, &table, &table[i][j], &unit_vec(field, dim, l));
                        let right =
                            mul_vec_raw(field, dim, &table, &unit_vec(field, dim, i), &table[j][l]);
                        if left != right {
                            return Err(Error::InvalidArgument(format!(
                                "multiplication is not associative on ({}, {}, {})",
                                labels[i], labels[j], labels[l]
                            )));
                        }
                    }
                }
            }
        }
        let order = compute_order(field, dim, &table)?;
        Ok(FiniteKAlgebra {
            field,
            dim,
            labels,
            table,
            order,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<FieldElement>>> {
        &self.table
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[FieldElement] {
        &self.table[i][j]
    }

    pub fn unit_coords(&self) -> Vec<FieldElement> {
        unit_vec(self.field, self.dim, 0)
    }

    /// Product of two elements given by coordinate vectors.
    pub fn mul_vec(&self, u: &[FieldElement], w: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(u.len(), self.dim, "coordinate length");
        assert_eq!(w.len(), self.dim, "coordinate length");
        mul_vec_raw(self.field, self.dim, &self.table, u, w)
    }

    /// Whether the element lies in the maximal ideal (zero constant part).
    pub fn in_maximal_ideal(&self, u: &[FieldElement]) -> bool {
        u[0].is_zero()
    }

    /// Span basis of 𝔪 · span(`space`), for filtration arguments.
    pub fn multiply_by_maximal_ideal(&self, space: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
        let mut prods = Vec::new();
        for v in space {
            for j in 1..self.dim {
                let p = self.mul_vec(&unit_vec(self.field, self.dim, j), v);
                if p.iter().any(|c| !c.is_zero()) {
                    prods.push(p);
                }
            }
        }
        span_basis(self.field, &prods, self.dim)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            dimension: self.dim,
            basis: self.labels.clone(),
            structure_constants: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|c| c.to_string()).collect())
                        .collect()
                })
                .collect(),
            order: self.order,
        }
    }
}

/// Serialized form: exact scalars as strings.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dimension: usize,
    pub basis: Vec<String>,
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub order: u32,
}

/// A quotient k[x]/I presented with its reduced basis, monomial k-basis, and
/// structure-constant table. Keeps the Gröbner data so elements given as
/// polynomials can be reduced to coordinates.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    algebra: Arc<FiniteKAlgebra>,
}

impl QuotientAlgebra {
    /// Builds k[vars]/(gens). The ideal must contain a power of every
    /// variable — equivalently the quotient is local artinian with residue
    /// field k in the presentation centered at the origin.
    pub fn new(vars: Variables, field: Field, gens: &[Polynomial]) -> Result<QuotientAlgebra> {
        let gb = buchberger(&vars, field, gens, MonomialOrder::DegRevLex)?;
        let basis = quotient_basis(&gb).map_err(|e| match e {
            Error::NotZeroDimensional(msg) => Error::NotLocalArtinian(format!(
                "the quotient is infinite-dimensional ({msg})"
            )),
            other => other,
        })?;
        if basis.is_empty() {
            return Err(Error::NotLocalArtinian(
                "the ideal is the unit ideal, so the quotient is the zero ring".into(),
            ));
        }
        let dim = basis.len();
        // every variable must be nilpotent modulo the ideal, else the
        // presentation is not centered at the origin (e.g. (x - 1))
        for (i, name) in vars.iter().enumerate() {
            let e = u32::try_from(dim).map_err(|_| {
                Error::LimitExceeded("quotient dimension exceeds the exponent range".into())
            })?;
            let power = Polynomial::from_terms(
                vars.clone(),
                field,
                [(Monomial::var(vars.len(), i, e), field.one())],
            )?;
            if !normal_form(&power, &gb)?.is_zero() {
                return Err(Error::NotLocalArtinian(format!(
                    "variable `{name}` is not nilpotent modulo the ideal; the quotient \
                     is not local with residue field k at the origin"
                )));
            }
        }
        let labels: Vec<String> = basis.iter().map(|m| m.display(&vars)).collect();
        let index: BTreeMap<Monomial, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..=i {
                let prod = Polynomial::from_terms(
                    vars.clone(),
                    field,
                    [(basis[i].mul(&basis[j]), field.one())],
                )?;
                let nf = normal_form(&prod, &gb)?;
                let mut coords = vec![field.zero(); dim];
                for (m, c) in nf.terms() {
                    let k = index[m];
                    coords[k] = c.clone();
                }
                table[i][j] = coords.clone();
                table[j][i] = coords;
            }
        }
        // associativity holds by construction (normal-form multiplication in
        // a quotient ring); the remaining axioms are still validated
        let algebra = FiniteKAlgebra::build(field, labels, table, false)?;
        Ok(QuotientAlgebra {
            gb,
            basis,
            index,
            algebra: Arc::new(algebra),
        })
    }

    pub fn vars(&self) -> &Variables {
        self.gb.vars()
    }

    pub fn field(&self) -> Field {
        self.gb.field()
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn monomial_basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn algebra(&self) -> &Arc<FiniteKAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of `p` in the monomial basis.
    pub fn element(&self, p: &Polynomial) -> Result<Vec<FieldElement>> {
        let nf = normal_form(p, &self.gb)?;
        let mut coords = vec![self.field().zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            let k = *self
                .index
                .get(m)
                .expect("normal form is supported on standard monomials");
            coords[k] = c.clone();
        }
        Ok(coords)
    }

    /// Canonical polynomial representative of a coordinate vector.
    pub fn poly_of(&self, coords: &[FieldElement]) -> Result<Polynomial> {
        if coords.len() != self.basis.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.basis.len(),
                coords.len()
            )));
        }
        Polynomial::from_terms(
            self.vars().clone(),
            self.field(),
            self.basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    /// The reduction map onto a further quotient of the same ring: requires
    /// the ideal of `self` to be contained in the ideal of `target`.
    pub fn surjection_onto(&self, target: &QuotientAlgebra) -> Result<AlgebraMorphism> {
        if self.vars() != target.vars() {
            return Err(Error::VariableMismatch);
        }
        if self.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        for g in self.gb.generators() {
            if !normal_form(g, &target.gb)?.is_zero() {
                return Err(Error::AlgebraMismatch(
                    "the source ideal is not contained in the target ideal, so \
                     reduction does not define a map"
                        .into(),
                ));
            }
        }
        let mut cols = Vec::with_capacity(self.basis.len());
        for m in &self.basis {
            let p = Polynomial::from_terms(
                self.vars().clone(),
                self.field(),
                [(m.clone(), self.field().one())],
            )?;
            cols.push(target.element(&p)?);
        }
        AlgebraMorphism::new(
            self.algebra.clone(),
            target.algebra.clone(),
            Mat::from_cols(self.field(), cols),
        )
    }
}

/// Structure-constant table of k[vars]/(gens).
pub fn algebra_from_quotient(
    vars: &Variables,
    field: Field,
    gens: &[Polynomial],
) -> Result<FiniteKAlgebra> {
    Ok(QuotientAlgebra::new(vars.clone(), field, gens)?
        .algebra()
        .as_ref()
        .clone())
}

/// Unital k-algebra map between two local algebras, as a matrix whose column
/// `j` holds the coordinates of the image of the source's `e_j`.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Arc<FiniteKAlgebra>,
    target: Arc<FiniteKAlgebra>,
    matrix: Mat,
}

impl PartialEq for AlgebraMorphism {
    fn eq(&self, other: &AlgebraMorphism) -> bool {
        self.source == other.source && self.target == other.target && self.matrix == other.matrix
    }
}

impl Eq for AlgebraMorphism {}

impl AlgebraMorphism {
    /// Validates unitality, multiplicativity on all basis pairs, and locality
    /// (maximal ideal maps into maximal ideal — implied by the first two, but
    /// cheap to confirm).
    pub fn new(
        source: Arc<FiniteKAlgebra>,
        target: Arc<FiniteKAlgebra>,
        matrix: Mat,
    ) -> Result<AlgebraMorphism> {
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidArgument(format!(
                "morphism matrix must be {} × {}, got {} × {}",
                target.dim(),
                source.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.col(0) != target.unit_coords() {
            return Err(Error::InvalidArgument("the map does not send 1 to 1".into()));
        }
        for j in 1..source.dim() {
            if !matrix.at(0, j).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "the image of maximal-ideal element `{}` has a nonzero constant part",
                    source.labels()[j]
                )));
            }
        }
        for i in 0..source.dim() {
            for j in 0..=i {
                let lhs = matrix.mul_vec(source.product(i, j));
                let rhs = target.mul_vec(&matrix.col(i), &matrix.col(j));
                if lhs != rhs {
                    return Err(Error::InvalidArgument(format!(
                        "the map is not multiplicative on ({}, {})",
                        source.labels()[i],
                        source.labels()[j]
                    )));
                }
            }
        }
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(a: &Arc<FiniteKAlgebra>) -> AlgebraMorphism {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Mat::identity(a.field(), a.dim()),
        }
    }

    pub fn source(&self) -> &Arc<FiniteKAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteKAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, u: &[FieldElement]) -> Vec<FieldElement> {
        self.matrix.mul_vec(u)
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }

    /// Canonical basis of the kernel.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        self.matrix.kernel_basis()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if inner.target != self.source {
            return Err(Error::AlgebraMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(AlgebraMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.matmul(&inner.matrix),
        })
    }

    /// Surjective with the kernel annihilated by the source's maximal ideal.
    pub fn is_small_extension(&self) -> bool {
        if !self.is_surjective() {
            return false;
        }
        let kern = self.kernel();
        kern.iter().all(|v| {
            (1..self.source.dim()).all(|j| {
                self.source
                    .mul_vec(&unit_vec(self.source.field(), self.source.dim(), j), v)
                    .iter()
                    .all(|c| c.is_zero())
            })
        })
    }

    /// Small with one-dimensional kernel.
    pub fn is_tiny_extension(&self) -> bool {
        self.kernel().len() == 1 && self.is_small_extension()
    }
}

/// The fibered product B = A′ ×_A A″ of `p`, `q`, re-presented with its own
/// structure constants, together with both projections. The embedding matrix
/// records the chosen basis of B as vectors in A′ ⊕ A″.
#[derive(Clone, Debug)]
pub struct FiberedProduct {
    algebra: Arc<FiniteKAlgebra>,
    proj_left: AlgebraMorphism,
    proj_right: AlgebraMorphism,
    embedding: Mat,
    p: AlgebraMorphism,
    q: AlgebraMorphism,
}

/// Kernel-of-difference construction of A′ ×_A A″. Requires `q` surjective,
/// which makes dim B = dim A′ + dim A″ − dim A.
pub fn fibered_product(p: &AlgebraMorphism, q: &AlgebraMorphism) -> Result<FiberedProduct> {
    if p.target != q.target {
        return Err(Error::AlgebraMismatch(
            "the two maps of a fibered product must share a target".into(),
        ));
    }
    if !q.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let field = p.source.field();
    let da = p.source.dim();
    let db = q.source.dim();
    let dt = p.target.dim();

    // difference map (a, b) ↦ p(a) − q(b) as the block matrix [P | −Q]
    let mut diff = Mat::zero(field, dt, da + db);
    for i in 0..dt {
        for j in 0..da {
            diff.set(i, j, p.matrix.at(i, j).clone());
        }
        for j in 0..db {
            diff.set(i, da + j, q.matrix.at(i, j).neg());
        }
    }
    let kern = diff.kernel_basis();

    // canonical basis: the pair (1, 1) first, then an echelon basis of the
    // maximal ideal obtained by stripping each kernel vector's scalar part
    let mut e0 = vec![field.zero(); da + db];
    e0[0] = field.one();
    e0[da] = field.one();
    let stripped: Vec<Vec<FieldElement>> = kern
        .iter()
        .map(|v| {
            let c = v[0].clone();
            v.iter()
                .zip(&e0)
                .map(|(a, b)| a.sub(&c.mul(b)))
                .collect::<Vec<FieldElement>>()
        })
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    let mbasis = span_basis(field, &stripped, da + db);
    let mut basis = vec![e0];
    basis.extend(mbasis);
    let dim_b = basis.len();
    assert_eq!(
        dim_b,
        da + db - dt,
        "fibered product dimension law violated"
    );
    // scalar parts: both component constants agree on B and were stripped
    for v in basis.iter().skip(1) {
        assert!(v[0].is_zero() && v[da].is_zero(), "maximal-ideal basis");
    }

    let embedding = Mat::from_cols(field, basis.clone());
    let labels: Vec<String> = std::iter::once("1".to_string())
        .chain((1..dim_b).map(|i| format!("e{i}")))
        .collect();

    let mut table = vec![vec![Vec::new(); dim_b]; dim_b];
    for i in 0..dim_b {
        for j in 0..=i {
            let left = p.source.mul_vec(&basis[i][..da], &basis[j][..da]);
            let right = q.source.mul_vec(&basis[i][da..], &basis[j][da..]);
            let mut prod = left;
            prod.extend(right);
            let coords = embedding
                .solve(&prod)
                .expect("the fibered product is closed under multiplication");
            table[i][j] = coords.clone();
            table[j][i] = coords;
        }
    }
    let algebra = Arc::new(FiniteKAlgebra::new(field, labels, table)?);

    let plmat = Mat::from_cols(field, basis.iter().map(|v| v[..da].to_vec()).collect());
    let prmat = Mat::from_cols(field, basis.iter().map(|v| v[da..].to_vec()).collect());
    let proj_left = AlgebraMorphism::new(algebra.clone(), p.source.clone(), plmat)?;
    let proj_right = AlgebraMorphism::new(algebra.clone(), q.source.clone(), prmat)?;
    Ok(FiberedProduct {
        algebra,
        proj_left,
        proj_right,
        embedding,
        p: p.clone(),
        q: q.clone(),
    })
}

impl FiberedProduct {
    pub fn algebra(&self) -> &Arc<FiniteKAlgebra> {
        &self.algebra
    }

    pub fn proj_left(&self) -> &AlgebraMorphism {
        &self.proj_left
    }

    pub fn proj_right(&self) -> &AlgebraMorphism {
        &self.proj_right
    }

    pub fn legs(&self) -> (&AlgebraMorphism, &AlgebraMorphism) {
        (&self.p, &self.q)
    }

    /// Columns are the basis of B as vectors in A′ ⊕ A″.
    pub fn embedding(&self) -> &Mat {
        &self.embedding
    }

    /// The unique morphism C → B induced by a commuting pair u: C → A′,
    /// v: C → A″ (p∘u = q∘v).
    pub fn induced(&self, u: &AlgebraMorphism, v: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if u.source != v.source {
            return Err(Error::AlgebraMismatch(
                "the two maps of a commuting pair must share a source".into(),
            ));
        }
        if u.target != self.p.source {
            return Err(Error::AlgebraMismatch(
                "the first map must land in the left factor".into(),
            ));
        }
        if v.target != self.q.source {
            return Err(Error::AlgebraMismatch(
                "the second map must land in the right factor".into(),
            ));
        }
        if self.p.compose(u)? != self.q.compose(v)? {
            return Err(Error::InvalidArgument(
                "the square does not commute: composing with the legs disagrees".into(),
            ));
        }
        let field = self.algebra.field();
        let mut cols = Vec::with_capacity(u.source.dim());
        for k in 0..u.source.dim() {
            let mut stacked = u.matrix.col(k);
            stacked.extend(v.matrix.col(k));
            cols.push(
                self.embedding
                    .solve(&stacked)
                    .expect("a commuting pair lands inside the fibered product"),
            );
        }
        AlgebraMorphism::new(
            u.source.clone(),
            self.algebra.clone(),
            Mat::from_cols(field, cols),
        )
    }
}

/// Factorization of a surjection into tiny extensions: composable steps whose
/// composite is the original map.
#[derive(Clone, Debug)]
pub struct SmallExtensionChain {
    source: Arc<FiniteKAlgebra>,
    target: Arc<FiniteKAlgebra>,
    steps: Vec<AlgebraMorphism>,
}

impl SmallExtensionChain {
    pub fn steps(&self) -> &[AlgebraMorphism] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn source(&self) -> &Arc<FiniteKAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteKAlgebra> {
        &self.target
    }

    /// Composite of all steps (the identity for the empty chain).
    pub fn composite(&self) -> AlgebraMorphism {
        let mut acc = AlgebraMorphism::identity(&self.source);
        for s in &self.steps {
            acc = s.compose(&acc).expect("chain is composable");
        }
        acc
    }
}

/// Quotient of `a` by the line spanned by `v` (an ideal killed by 𝔪, inside
/// the maximal ideal), together with the quotient map. The surviving basis
/// elements keep their labels.
fn quotient_by_line(
    a: &Arc<FiniteKAlgebra>,
    v: &[FieldElement],
) -> Result<(Arc<FiniteKAlgebra>, AlgebraMorphism)> {
    let field = a.field();
    let dim = a.dim();
    let pivot = v
        .iter()
        .position(|c| !c.is_zero())
        .expect("quotient by a nonzero line");
    assert!(pivot >= 1 && v[pivot].is_one(), "line is normalized inside 𝔪");
    let survivors: Vec<usize> = (0..dim).filter(|&i| i != pivot).collect();

    let reduce = |w: &[FieldElement]| -> Vec<FieldElement> {
        let f = w[pivot].clone();
        survivors
            .iter()
            .map(|&i| w[i].sub(&f.mul(&v[i])))
            .collect()
    };

    let labels: Vec<String> = survivors.iter().map(|&i| a.labels()[i].clone()).collect();
    let table: Vec<Vec<Vec<FieldElement>>> = survivors
        .iter()
        .map(|&i| {
            survivors
                .iter()
                .map(|&j| reduce(a.product(i, j)))
                .collect()
        })
        .collect();
    let quotient = Arc::new(FiniteKAlgebra::new(field, labels, table)?);

    let cols: Vec<Vec<FieldElement>> = (0..dim)
        .map(|i| reduce(&unit_vec(field, dim, i)))
        .collect();
    let sigma = AlgebraMorphism::new(a.clone(), quotient.clone(), Mat::from_cols(field, cols))?;
    Ok((quotient, sigma))
}

/// Factors a surjection into tiny extensions by repeatedly quotienting the
/// source by a line in the deepest nonzero piece of the filtration
/// ker ⊇ 𝔪·ker ⊇ 𝔪²·ker ⊇ …, lines chosen in basis (echelon) order. The
/// number of steps equals the kernel dimension. A map that is already an
/// isomorphism factors only when it is the identity (the empty chain).
pub fn factor_small_extension(phi: &AlgebraMorphism) -> Result<SmallExtensionChain> {
    if !phi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let field = phi.source.field();
    let mut steps: Vec<AlgebraMorphism> = Vec::new();
    let mut current = phi.clone();
    loop {
        let kern = current.matrix.kernel_basis();
        if kern.is_empty() {
            if steps.is_empty() {
                return if current.is_identity() {
                    Ok(SmallExtensionChain {
                        source: phi.source.clone(),
                        target: phi.target.clone(),
                        steps,
                    })
                } else {
                    Err(Error::Unsupported(
                        "factoring a surjection that is a nontrivial isomorphism".into(),
                    ))
                };
            }
            if !current.is_identity() {
                // fold the terminal isomorphism into the last tiny step so
                // the chain lands exactly on the original target
                let last = steps.pop().expect("nonempty");
                steps.push(current.compose(&last)?);
            }
            return Ok(SmallExtensionChain {
                source: phi.source.clone(),
                target: phi.target.clone(),
                steps,
            });
        }

        let src_dim = current.source.dim();
        let mut piece = span_basis(field, &kern, src_dim);
        loop {
            let deeper = current.source.multiply_by_maximal_ideal(&piece);
            if deeper.is_empty() {
                break;
            }
            piece = deeper;
        }
        let line = piece[0].clone();
        assert!(line[0].is_zero(), "kernel of a local morphism lies in 𝔪");
        let pivot = line.iter().position(|c| !c.is_zero()).expect("nonzero line");

        let (quotient, sigma) = quotient_by_line(&current.source, &line)?;
        let cols: Vec<Vec<FieldElement>> = (0..src_dim)
            .filter(|&i| i != pivot)
            .map(|i| current.matrix.col(i))
            .collect();
        let next = AlgebraMorphism::new(
            quotient,
            current.target.clone(),
            Mat::from_cols(field, cols),
        )?;
        steps.push(sigma);
        current = next;
    }
}
