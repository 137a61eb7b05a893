//! Batch front end for the deformation-theory library. Every verb is
//! non-interactive, reads nothing but argv, and prints one result to stdout:
//! `key: value` lines (or a bare number for scalar answers) by default,
//! a single compact JSON object with `--json`. Exact scalars are rendered
//! as `p/q` strings, never floats. Domain errors exit 1 with
//! `error[kind]: message` on stderr; usage errors exit 2.

use clap::{Parser, Subcommand, ValueEnum};
use miniversal::artin::{factor_small_extension, fibered_product, AlgebraJson, QuotientAlgebra};
use miniversal::deform::{
    deformation_from_joint, glue_deformations, ks_class, lift_deformation, miniversal_family,
    mu_generators, parse_assignments, specialize_family, tjurina, DeformationJson,
};
use miniversal::error::Result;
use miniversal::field::Field;
use miniversal::poly::{parse_poly, variables, Polynomial, Variables};
use miniversal::projective::{
    chi_normal_p3, coh_dim, curve_moduli_dim, delta_surjective, euler_characteristic,
    hypersurface_report, CohMethod, CohomologyQuery, DeltaMethod, NormalEulerChar,
};
use serde::Serialize;

fn parse_field(s: &str) -> Result<Field> {
    Field::parse(s)
}

#[derive(Parser)]
#[command(
    name = "miniversal",
    version,
    about = "Exact calculator for infinitesimal deformation theory"
)]
struct Cli {
    /// Emit one compact JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Coefficient field: `Q` or `Fp:<prime>`
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    field: Field,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum CohArg {
    /// Closed-form dimension count
    Formula,
    /// Chart-by-chart rank computation
    Cech,
    /// Both, for cross-checking
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeltaArg {
    /// The classification by (n, d)
    #[value(name = "closed_form")]
    ClosedForm,
    /// Explicit multiplication-map ranks
    #[value(name = "linear_algebra")]
    LinearAlgebra,
    /// Both, for cross-checking
    Both,
}

#[derive(Subcommand)]
enum Verb {
    /// Tjurina number and monomial basis of f's Tjurina algebra
    Tjurina {
        /// Ring variables, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Defining equation with an isolated singularity at the origin
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Coordinates of the first-order deformation f + eps*g in the Tjurina basis
    KsClass {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// The family f + t1*g1 + ... + tm*gm with identity Kodaira-Spencer matrix
    Miniversal {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Specialize the miniversal family of f along parameter assignments
    Specialize {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Variables of the base quotient ring
        #[arg(long, value_delimiter = ',', required = true)]
        base_vars: Vec<String>,
        /// Ideal generators presenting the local artinian base
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<String>,
        /// Assignments `t1=<poly>,...`, one per family parameter
        #[arg(long, value_delimiter = ',', required = true)]
        assign: Vec<String>,
    },
    /// Lift a deformation along the small extension between two quotient bases
    Lift {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        base_vars: Vec<String>,
        /// Ideal of the current base A
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<String>,
        /// Ideal of the extension A', contained in the ideal of A
        #[arg(long, value_delimiter = ',', required = true)]
        ext: Vec<String>,
        /// Deformation over A as one polynomial in vars followed by base-vars
        #[arg(allow_hyphen_values = true)]
        joint: String,
    },
    /// Glue two deformations agreeing over a shared quotient of their bases
    Glue {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        base_vars: Vec<String>,
        /// Ideal of the left base
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<String>,
        /// Ideal of the right base
        #[arg(long, value_delimiter = ',', required = true)]
        right: Vec<String>,
        /// Ideal of the shared quotient, containing both
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<String>,
        /// Deformation over the left base (joint-ring polynomial)
        #[arg(allow_hyphen_values = true)]
        joint_left: String,
        /// Deformation over the right base (joint-ring polynomial)
        #[arg(allow_hyphen_values = true)]
        joint_right: String,
    },
    /// Minimal number of generators of the ideal in the local ring at 0
    Mu {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Ideal generators (empty list means the zero ideal); put
        /// hyphen-leading polynomials after `--`
        #[arg(num_args = 0..)]
        gens: Vec<String>,
    },
    /// Structure constants of the local artinian quotient k[vars]/(gens)
    Algebra {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Ideal generators; put hyphen-leading polynomials after `--`
        #[arg(num_args = 1..)]
        gens: Vec<String>,
    },
    /// Fibered product of two quotients over a shared further quotient
    Fprod {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        right: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<String>,
    },
    /// Factor a surjection of quotients into one-dimensional-kernel steps
    FactorExt {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Ideal of the source quotient
        #[arg(long, value_delimiter = ',', required = true)]
        source: Vec<String>,
        /// Ideal of the target quotient, containing the source ideal
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<String>,
    },
    /// Dimension of H^q of the twist O(d) on projective n-space
    Cohomology {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "formula")]
        method: CohArg,
    },
    /// Whether every abstract deformation of a smooth degree-d hypersurface embeds
    Delta {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: i64,
        #[arg(long, value_enum, default_value = "both")]
        method: DeltaArg,
    },
    /// Tangent/obstruction dimensions and embeddedness verdict for V(f) in P^n
    HypersurfaceReport {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: i64,
    },
    /// Dimension of the moduli space of smooth curves of genus g
    CurveModuli {
        #[arg(long)]
        genus: u32,
    },
    /// Euler characteristic of the normal bundle of a degree-d genus-g space curve
    ChiNormal {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        genus: u32,
    },
}

#[derive(Serialize)]
struct TjurinaOut {
    tjurina: usize,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct KsClassOut {
    class: Vec<String>,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct MiniversalOut {
    family: String,
    params: Vec<String>,
    tjurina: usize,
}

#[derive(Serialize)]
struct MuOut {
    mu: usize,
}

#[derive(Serialize)]
struct FprodOut {
    dimension: usize,
    left_dimension: usize,
    right_dimension: usize,
    base_dimension: usize,
    algebra: AlgebraJson,
    proj_left: Vec<Vec<String>>,
    proj_right: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct FactorExtOut {
    length: usize,
    /// Dimensions along the chain, source first
    dimensions: Vec<usize>,
    steps: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct CohOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cech: Option<u64>,
    euler_characteristic: i64,
}

#[derive(Serialize)]
struct DeltaOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    linear_algebra: Option<bool>,
}

#[derive(Serialize)]
struct DimensionOut {
    dimension: u64,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct ErrorOut {
    error: ErrorBody,
}

fn emit<T: Serialize>(json: bool, value: &T, text: String) {
    if json {
        println!("{}", serde_json::to_string(value).expect("output serializes"));
    } else {
        println!("{text}");
    }
}

fn parse_ring(names: &[String]) -> Result<Variables> {
    variables(names)
}

fn parse_polys(texts: &[String], vs: &Variables, field: Field) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| parse_poly(t, vs, field)).collect()
}

fn quotient(vars: &[String], gens: &[String], field: Field) -> Result<QuotientAlgebra> {
    let vs = parse_ring(vars)?;
    let gs = parse_polys(gens, &vs, field)?;
    QuotientAlgebra::new(vs, field, &gs)
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn deformation_text(d: &DeformationJson) -> String {
    let mut lines = vec![format!("base dimension: {}", d.base.dimension)];
    for (label, poly) in &d.coefficients {
        lines.push(format!("{label}: {poly}"));
    }
    lines.join("\n")
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    let field = cli.field;
    match cli.verb {
        Verb::Tjurina { vars, f } => {
            let vs = parse_ring(&vars)?;
            let td = tjurina(&parse_poly(&f, &vs, field)?)?;
            let out = TjurinaOut {
                tjurina: td.number(),
                basis: td.basis_labels(),
            };
            emit(
                json,
                &out,
                format!("tjurina: {}\nbasis: {}", out.tjurina, join(&out.basis)),
            );
        }
        Verb::KsClass { vars, f, g } => {
            let vs = parse_ring(&vars)?;
            let td = tjurina(&parse_poly(&f, &vs, field)?)?;
            let class = ks_class(&td, &parse_poly(&g, &vs, field)?)?;
            let out = KsClassOut {
                class: class.iter().map(|c| c.to_string()).collect(),
                basis: td.basis_labels(),
            };
            emit(
                json,
                &out,
                format!("class: {}\nbasis: {}", join(&out.class), join(&out.basis)),
            );
        }
        Verb::Miniversal { vars, f } => {
            let vs = parse_ring(&vars)?;
            let td = tjurina(&parse_poly(&f, &vs, field)?)?;
            let mf = miniversal_family(&td)?;
            let out = MiniversalOut {
                family: mf.family().to_string(),
                params: mf.params().to_vec(),
                tjurina: td.number(),
            };
            emit(
                json,
                &out,
                format!(
                    "family: {}\nparams: {}\ntjurina: {}",
                    out.family,
                    join(&out.params),
                    out.tjurina
                ),
            );
        }
        Verb::Specialize {
            vars,
            f,
            base_vars,
            base,
            assign,
        } => {
            let vs = parse_ring(&vars)?;
            let mf = miniversal_family(&tjurina(&parse_poly(&f, &vs, field)?)?)?;
            let bq = quotient(&base_vars, &base, field)?;
            let assignment = parse_assignments(&assign, mf.params(), &bq)?;
            let d = specialize_family(&mf, bq.algebra(), &assignment)?;
            let out = d.to_json();
            emit(json, &out, deformation_text(&out));
        }
        Verb::Lift {
            vars,
            base_vars,
            base,
            ext,
            joint,
        } => {
            let vs = parse_ring(&vars)?;
            let a = quotient(&base_vars, &base, field)?;
            let aprime = quotient(&base_vars, &ext, field)?;
            let phi = aprime.surjection_onto(&a)?;
            let joint_vars = parse_ring(
                &vars
                    .iter()
                    .chain(base_vars.iter())
                    .cloned()
                    .collect::<Vec<_>>(),
            )?;
            let d = deformation_from_joint(&parse_poly(&joint, &joint_vars, field)?, &vs, &a)?;
            let lifted = lift_deformation(&d, &phi)?;
            let out = lifted.to_json();
            emit(json, &out, deformation_text(&out));
        }
        Verb::Glue {
            vars,
            base_vars,
            left,
            right,
            base,
            joint_left,
            joint_right,
        } => {
            let vs = parse_ring(&vars)?;
            let l = quotient(&base_vars, &left, field)?;
            let r = quotient(&base_vars, &right, field)?;
            let b = quotient(&base_vars, &base, field)?;
            let pm = l.surjection_onto(&b)?;
            let qm = r.surjection_onto(&b)?;
            let joint_vars = parse_ring(
                &vars
                    .iter()
                    .chain(base_vars.iter())
                    .cloned()
                    .collect::<Vec<_>>(),
            )?;
            let d1 = deformation_from_joint(&parse_poly(&joint_left, &joint_vars, field)?, &vs, &l)?;
            let d2 =
                deformation_from_joint(&parse_poly(&joint_right, &joint_vars, field)?, &vs, &r)?;
            let (glued, _) = glue_deformations(&d1, &d2, &pm, &qm)?;
            let out = glued.to_json();
            emit(json, &out, deformation_text(&out));
        }
        Verb::Mu { vars, gens } => {
            let vs = parse_ring(&vars)?;
            let gs = parse_polys(&gens, &vs, field)?;
            let out = MuOut {
                mu: mu_generators(&vs, field, &gs)?,
            };
            emit(json, &out, format!("{}", out.mu));
        }
        Verb::Algebra { vars, gens } => {
            let q = quotient(&vars, &gens, field)?;
            let out = q.algebra().to_json();
            emit(
                json,
                &out,
                format!(
                    "dimension: {}\nbasis: {}\norder: {}",
                    out.dimension,
                    join(&out.basis),
                    out.order
                ),
            );
        }
        Verb::Fprod {
            vars,
            left,
            right,
            base,
        } => {
            let l = quotient(&vars, &left, field)?;
            let r = quotient(&vars, &right, field)?;
            let b = quotient(&vars, &base, field)?;
            let fp = fibered_product(&l.surjection_onto(&b)?, &r.surjection_onto(&b)?)?;
            let out = FprodOut {
                dimension: fp.algebra().dim(),
                left_dimension: l.dim(),
                right_dimension: r.dim(),
                base_dimension: b.dim(),
                algebra: fp.algebra().to_json(),
                proj_left: fp.proj_left().matrix().to_string_rows(),
                proj_right: fp.proj_right().matrix().to_string_rows(),
            };
            emit(
                json,
                &out,
                format!(
                    "dimension: {}\nleft dimension: {}\nright dimension: {}\nbase dimension: {}",
                    out.dimension, out.left_dimension, out.right_dimension, out.base_dimension
                ),
            );
        }
        Verb::FactorExt {
            vars,
            source,
            target,
        } => {
            let s = quotient(&vars, &source, field)?;
            let t = quotient(&vars, &target, field)?;
            let chain = factor_small_extension(&s.surjection_onto(&t)?)?;
            let mut dimensions = vec![s.dim()];
            dimensions.extend(chain.steps().iter().map(|m| m.target().dim()));
            let out = FactorExtOut {
                length: chain.len(),
                dimensions,
                steps: chain
                    .steps()
                    .iter()
                    .map(|m| m.matrix().to_string_rows())
                    .collect(),
            };
            emit(
                json,
                &out,
                format!(
                    "length: {}\ndimensions: {}",
                    out.length,
                    join(&out.dimensions)
                ),
            );
        }
        Verb::Cohomology { n, d, q, method } => {
            let query = CohomologyQuery { n, d, q };
            let formula = match method {
                CohArg::Formula | CohArg::Both => Some(coh_dim(query, CohMethod::Formula)?),
                CohArg::Cech => None,
            };
            let cech = match method {
                CohArg::Cech | CohArg::Both => Some(coh_dim(query, CohMethod::Cech)?),
                CohArg::Formula => None,
            };
            let out = CohOut {
                formula,
                cech,
                euler_characteristic: euler_characteristic(n, d),
            };
            let text = match (formula, cech) {
                (Some(a), Some(b)) => format!("formula: {a}\ncech: {b}"),
                (Some(a), None) => format!("{a}"),
                (None, Some(b)) => format!("{b}"),
                (None, None) => unreachable!("one method always runs"),
            };
            emit(json, &out, text);
        }
        Verb::Delta { n, d, method } => {
            let closed_form = match method {
                DeltaArg::ClosedForm | DeltaArg::Both => {
                    Some(delta_surjective(n, d, DeltaMethod::ClosedForm)?)
                }
                DeltaArg::LinearAlgebra => None,
            };
            let linear_algebra = match method {
                DeltaArg::LinearAlgebra | DeltaArg::Both => {
                    Some(delta_surjective(n, d, DeltaMethod::LinearAlgebra)?)
                }
                DeltaArg::ClosedForm => None,
            };
            let out = DeltaOut {
                closed_form,
                linear_algebra,
            };
            let text = match (closed_form, linear_algebra) {
                (Some(a), Some(b)) => format!("closed_form: {a}\nlinear_algebra: {b}"),
                (Some(a), None) => format!("{a}"),
                (None, Some(b)) => format!("{b}"),
                (None, None) => unreachable!("one method always runs"),
            };
            emit(json, &out, text);
        }
        Verb::HypersurfaceReport { n, d } => {
            let r = hypersurface_report(n, d)?;
            let mut text = format!(
                "n: {}\nd: {}\nhilb_tangent_dim: {}\nhilb_obstruction_dim: {}\n\
                 delta_surjective: {}\nall_deformations_embedded: {}",
                r.n,
                r.d,
                r.hilb_tangent_dim,
                r.hilb_obstruction_dim,
                r.delta_surjective,
                r.all_deformations_embedded
            );
            for c in &r.citations {
                text.push_str(&format!("\ncitation: {c}"));
            }
            emit(json, &r, text);
        }
        Verb::CurveModuli { genus } => {
            let out = DimensionOut {
                dimension: curve_moduli_dim(genus),
            };
            emit(json, &out, format!("{}", out.dimension));
        }
        Verb::ChiNormal { d, genus } => {
            let c: NormalEulerChar = chi_normal_p3(d, genus)?;
            emit(
                json,
                &c,
                format!(
                    "total: {}\nfour_chi_twist: {}\nchi_structure: {}\nchi_tangent: {}",
                    c.total, c.four_chi_twist, c.chi_structure, c.chi_tangent
                ),
            );
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let json = cli.json;
    if let Err(e) = run(cli) {
        if json {
            let out = ErrorOut {
                error: ErrorBody {
                    kind: e.kind(),
                    message: e.to_string(),
                },
            };
            eprintln!("{}", serde_json::to_string(&out).expect("error serializes"));
        } else {
            eprintln!("error[{}]: {e}", e.kind());
        }
        std::process::exit(1);
    }
}
