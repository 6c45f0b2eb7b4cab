//! Exact scalars over ℚ, ℚ(√d) and GF(p).
//!
//! A [`Scalar`] always knows which field it lives in; mixing fields is a
//! logic error. The operator impls panic on a mismatch, while the
//! `checked_*` methods report [`Error::FieldMismatch`] instead.

mod number;
mod roots;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use number::{factor_integer, hilbert_symbol, is_prime_u32, square_free_part, Place};
pub use roots::{rational_roots, roots_in_field, ternary_isotropic, ternary_isotropic_rational};
pub(crate) use roots::roots_any_degree;

/// Largest prime accepted for `GF(p)`.
pub const MAX_PRIME: u32 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    QuadExt { d: i64 },
    PrimeField { p: u32 },
}

impl FieldSpec {
    pub fn quad(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidField(format!("Q(sqrt,{d}): d must not be 0 or 1")));
        }
        let sf = square_free_part(&BigInt::from(d))?;
        if sf != BigInt::from(d) {
            return Err(Error::InvalidField(format!("Q(sqrt,{d}): d must be square-free")));
        }
        Ok(FieldSpec::QuadExt { d })
    }

    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime_u32(p) {
            return Err(Error::InvalidField(format!("GF({p}): {p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("GF({p}): p exceeds {MAX_PRIME}")));
        }
        Ok(FieldSpec::PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        match *self {
            FieldSpec::PrimeField { p } => p,
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField { .. })
    }

    pub fn order(&self) -> Option<u32> {
        match *self {
            FieldSpec::PrimeField { p } => Some(p),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldSpec::QuadExt { d } => Scalar::Quad(Box::new(QuadNum {
                d,
                r: BigRational::from_integer(n.clone()),
                s: BigRational::zero(),
            })),
            FieldSpec::PrimeField { p } => {
                let v = n.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits");
                Scalar::Gf(Fp { v, p })
            }
        }
    }

    /// Embeds a rational number; fails in GF(p) when the denominator vanishes.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rat(q.clone())),
            FieldSpec::QuadExt { d } => Ok(Scalar::Quad(Box::new(QuadNum {
                d,
                r: q.clone(),
                s: BigRational::zero(),
            }))),
            FieldSpec::PrimeField { .. } => {
                let n = self.from_bigint(q.numer());
                let m = self.from_bigint(q.denom());
                n.checked_div(&m)
            }
        }
    }

    /// The adjoined square root `s = √d` of a quadratic extension.
    pub fn sqrt_generator(&self) -> Option<Scalar> {
        match *self {
            FieldSpec::QuadExt { d } => Some(Scalar::Quad(Box::new(QuadNum {
                d,
                r: BigRational::zero(),
                s: BigRational::one(),
            }))),
            _ => None,
        }
    }

    /// All elements, for finite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            FieldSpec::PrimeField { p } => Some((0..p).map(|v| Scalar::Gf(Fp { v, p })).collect()),
            _ => None,
        }
    }

    /// Parses a scalar literal in this field (see [`Scalar::to_literal`]).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::parse("scalar", "empty scalar literal"));
        }
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rat(parse_rational(&t)?)),
            FieldSpec::PrimeField { p } => {
                let n: BigInt = t
                    .parse()
                    .map_err(|_| Error::parse("scalar", format!("`{t}` is not a residue mod {p}")))?;
                Ok(self.from_bigint(&n))
            }
            FieldSpec::QuadExt { d } => {
                let (r, s) = parse_quadratic(&t)?;
                Ok(Scalar::Quad(Box::new(QuadNum { d, r, s })))
            }
        }
    }
}

fn parse_rational(t: &str) -> Result<BigRational> {
    let err = || Error::parse("scalar", format!("`{t}` is not a rational literal"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = n.strip_prefix('+').unwrap_or(n).parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(Error::parse("scalar", format!("`{t}` has zero denominator")));
    }
    Ok(BigRational::new(n, d))
}

/// Accepts `r`, `r+t*s`, `r-t*s`, `t*s`, `s`, `-s` with rational `r`, `t`.
fn parse_quadratic(t: &str) -> Result<(BigRational, BigRational)> {
    if !t.ends_with('s') {
        return Ok((parse_rational(t)?, BigRational::zero()));
    }
    let body = &t[..t.len() - 1];
    let body = body.strip_suffix('*').unwrap_or(body);
    // locate the sign that separates the rational part from the s-coefficient
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'+' {
            split = Some(i);
            break;
        }
    }
    let (rpart, spart) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let spart = spart.strip_prefix('+').unwrap_or(spart);
    let s = match spart {
        "" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other)?,
    };
    Ok((parse_rational(rpart)?, s))
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::QuadExt { d } => write!(f, "Q(sqrt,{d})"),
            FieldSpec::PrimeField { p } => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(inner) = t.strip_prefix("Q(sqrt,").and_then(|r| r.strip_suffix(')')) {
            let d: i64 = inner
                .parse()
                .map_err(|_| Error::InvalidField(format!("`{s}`: bad d")))?;
            return FieldSpec::quad(d);
        }
        if let Some(inner) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u32 = inner
                .parse()
                .map_err(|_| Error::InvalidField(format!("`{s}`: bad p")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::InvalidField(format!("unrecognised field literal `{s}`")))
    }
}

/// Element `r + s·√d` of ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadNum {
    pub d: i64,
    pub r: BigRational,
    pub s: BigRational,
}

/// Residue `v` modulo the prime `p`, with `v < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    pub v: u32,
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Quad(Box<QuadNum>),
    Gf(Fp),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Quad(q) => FieldSpec::QuadExt { d: q.d },
            Scalar::Gf(x) => FieldSpec::PrimeField { p: x.p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Quad(q) => q.r.is_zero() && q.s.is_zero(),
            Scalar::Gf(x) => x.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Quad(q) => q.r.is_one() && q.s.is_zero(),
            Scalar::Gf(x) => x.v == 1,
        }
    }

    /// The rational value, when the scalar lies in the prime subfield ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Quad(q) if q.s.is_zero() => Some(q.r.clone()),
            _ => None,
        }
    }

    /// Residue for GF(p) scalars.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Gf(x) => Some(x.v),
            _ => None,
        }
    }

    /// Rough bit size, used to prefer small pivots during elimination.
    pub fn size_hint(&self) -> u64 {
        match self {
            Scalar::Rat(r) => r.numer().bits() + r.denom().bits(),
            Scalar::Quad(q) => q.r.numer().bits() + q.r.denom().bits() + q.s.numer().bits() + q.s.denom().bits(),
            Scalar::Gf(_) => 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(Error::FieldMismatch(a, b))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Quad(q) => {
                let d = BigRational::from_integer(BigInt::from(q.d));
                let norm = &q.r * &q.r - &d * &q.s * &q.s;
                Scalar::Quad(Box::new(QuadNum {
                    d: q.d,
                    r: &q.r / &norm,
                    s: -(&q.s / &norm),
                }))
            }
            Scalar::Gf(x) => Scalar::Gf(Fp {
                v: pow_mod(x.v as u64, x.p as u64 - 2, x.p as u64) as u32,
                p: x.p,
            }),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::Quad(Box::new(QuadNum {
                d: q.d,
                r: -&q.r,
                s: -&q.s,
            })),
            Scalar::Gf(x) => Scalar::Gf(Fp {
                v: (x.p - x.v) % x.p,
                p: x.p,
            }),
        }
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Quad(a), Scalar::Quad(b)) => Scalar::Quad(Box::new(QuadNum {
                d: a.d,
                r: &a.r + &b.r,
                s: &a.s + &b.s,
            })),
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf(Fp {
                v: (a.v + b.v) % a.p,
                p: a.p,
            }),
            _ => unreachable!("field checked by caller"),
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Quad(a), Scalar::Quad(b)) => {
                let d = BigRational::from_integer(BigInt::from(a.d));
                Scalar::Quad(Box::new(QuadNum {
                    d: a.d,
                    r: &a.r * &b.r + d * &a.s * &b.s,
                    s: &a.r * &b.s + &a.s * &b.r,
                }))
            }
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf(Fp {
                v: ((a.v as u64 * b.v as u64) % a.p as u64) as u32,
                p: a.p,
            }),
            _ => unreachable!("field checked by caller"),
        }
    }

    /// File-format literal: `a/b` over ℚ, `a/b+c/e*s` over ℚ(√d), a residue over GF(p).
    pub fn to_literal(&self) -> String {
        fn frac(q: &BigRational) -> String {
            format!("{}/{}", q.numer(), q.denom())
        }
        match self {
            Scalar::Rat(r) => frac(r),
            Scalar::Quad(q) => format!("{}+{}*s", frac(&q.r), frac(&q.s)),
            Scalar::Gf(x) => x.v.to_string(),
        }
    }

    pub fn is_square(&self) -> (bool, Option<Scalar>) {
        match roots::sqrt(self) {
            Some(r) => (true, Some(r)),
            None => (false, None),
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => fmt_rational(r, f),
            Scalar::Gf(x) => write!(f, "{}", x.v),
            Scalar::Quad(q) => {
                if q.s.is_zero() {
                    return fmt_rational(&q.r, f);
                }
                if !q.r.is_zero() {
                    fmt_rational(&q.r, f)?;
                    if q.s.is_positive() {
                        write!(f, "+")?;
                    }
                }
                if q.s == -BigRational::one() {
                    write!(f, "-")?;
                } else if !q.s.is_one() {
                    fmt_rational(&q.s, f)?;
                    write!(f, "*")?;
                }
                write!(f, "√{}", q.d)
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Scalar, b: &Scalar| a.checked_add(b).expect("scalar add"));
binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.checked_sub(b).expect("scalar sub"));
binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.checked_mul(b).expect("scalar mul"));
binop!(Div, div, |a: &Scalar, b: &Scalar| a.checked_div(b).expect("scalar div"));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
