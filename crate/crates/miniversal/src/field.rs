//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! A session declares its coefficient [`Field`] once; every scalar carries
//! enough information to detect cross-field mixing, which is a programming
//! error at this layer (the polynomial layer reports it as `FieldMismatch`
//! before any scalar arithmetic happens).

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field for a session.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    /// The rational numbers.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..(1 << 62)).contains(&p) || !is_prime_u64(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field::Fp(p))
    }

    /// Parses a field descriptor: `Q` or `Fp:<p>`.
    pub fn parse(s: &str) -> Result<Field> {
        if s == "Q" {
            return Ok(Field::Q);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad modulus `{rest}`")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidArgument(format!(
            "unknown field `{s}` (expected `Q` or `Fp:<p>`)"
        )))
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Q => FieldElement::Q(BigRational::zero()),
            Field::Fp(p) => FieldElement::Fp { p: *p, v: 0 },
        }
    }

    pub fn one(&self) -> FieldElement {
        match self {
            Field::Q => FieldElement::Q(BigRational::one()),
            Field::Fp(p) => FieldElement::Fp { p: *p, v: 1 },
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            Field::Q => FieldElement::Q(BigRational::from(n.clone())),
            Field::Fp(p) => FieldElement::Fp {
                p: *p,
                v: bigint_mod_u64(n, *p),
            },
        }
    }

    /// `num/den` as a field element; `den` must be invertible.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        match self {
            Field::Q => {
                if den.is_zero() {
                    return Err(Error::ZeroDenominator { position: 0 });
                }
                Ok(FieldElement::Q(BigRational::new(num.clone(), den.clone())))
            }
            Field::Fp(p) => {
                let d = bigint_mod_u64(den, *p);
                if d == 0 {
                    return Err(Error::NotRepresentable { position: 0 });
                }
                let n = bigint_mod_u64(num, *p);
                Ok(FieldElement::Fp {
                    p: *p,
                    v: mul_mod(n, inv_mod(d, *p), *p),
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// A scalar in the session field, always in canonical form: reduced fraction
/// with positive denominator over `Q`, residue in `0..p` over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElement {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Q(_) => Field::Q,
            FieldElement::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_zero(),
            FieldElement::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_one(),
            FieldElement::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a + b),
            (FieldElement::Fp { p, v: a }, FieldElement::Fp { p: q, v: b }) if p == q => {
                FieldElement::Fp {
                    p: *p,
                    v: add_mod(*a, *b, *p),
                }
            }
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Q(a) => FieldElement::Q(-a),
            FieldElement::Fp { p, v } => FieldElement::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a * b),
            (FieldElement::Fp { p, v: a }, FieldElement::Fp { p: q, v: b }) if p == q => {
                FieldElement::Fp {
                    p: *p,
                    v: mul_mod(*a, *b, *p),
                }
            }
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    /// Multiplicative inverse; dividing by zero is an invalid-argument error.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        Ok(match self {
            FieldElement::Q(a) => FieldElement::Q(a.recip()),
            FieldElement::Fp { p, v } => FieldElement::Fp {
                p: *p,
                v: inv_mod(*v, *p),
            },
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inv()?))
    }

    /// Sign split used by the canonical printer: `(is_negative, magnitude)`.
    /// Prime-field residues are never negative.
    pub fn sign_split(&self) -> (bool, FieldElement) {
        match self {
            FieldElement::Q(r) => (r.is_negative(), FieldElement::Q(r.abs())),
            fp @ FieldElement::Fp { .. } => (false, fp.clone()),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Q(r) => write!(f, "{r}"),
            FieldElement::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn bigint_mod_u64(n: &BigInt, p: u64) -> u64 {
    use num::ToPrimitive;
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().expect("residue fits u64")
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: p is prime and a != 0 mod p.
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
