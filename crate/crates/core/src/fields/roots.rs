//! Square roots, polynomial roots and ternary isotropy.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::number::{factor_integer, hilbert_symbol, Place};
use super::{pow_mod, FieldSpec, Fp, QuadNum, Scalar};
use crate::error::{Error, Result};

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// A square root of `a` if one exists in its field. Deterministic: over GF(p)
/// the smaller residue, over ℚ the nonnegative root.
pub(crate) fn sqrt(a: &Scalar) -> Option<Scalar> {
    match a {
        Scalar::Rat(q) => rational_sqrt(q).map(Scalar::Rat),
        Scalar::Gf(x) => {
            let p = x.p as u64;
            (0..x.p)
                .find(|&r| (r as u64 * r as u64) % p == x.v as u64)
                .map(|v| Scalar::Gf(Fp { v, p: x.p }))
        }
        Scalar::Quad(q) => quad_sqrt(q).map(|n| Scalar::Quad(Box::new(n))),
    }
}

fn quad_sqrt(q: &QuadNum) -> Option<QuadNum> {
    let d = BigRational::from_integer(BigInt::from(q.d));
    let mk = |r: BigRational, s: BigRational| QuadNum { d: q.d, r, s };
    if q.s.is_zero() {
        if let Some(r) = rational_sqrt(&q.r) {
            return Some(mk(r, BigRational::zero()));
        }
        // (t√d)² = t²d
        return rational_sqrt(&(&q.r / &d)).map(|t| mk(BigRational::zero(), t));
    }
    // (a + b√d)² = a² + d b² + 2ab√d; the norm r² − d s² equals (a² − d b²)².
    let norm = &q.r * &q.r - &d * &q.s * &q.s;
    let n = rational_sqrt(&norm)?;
    let two = BigRational::from_integer(BigInt::from(2));
    for cand in [(&q.r + &n) / &two, (&q.r - &n) / &two] {
        if let Some(a) = rational_sqrt(&cand) {
            if a.is_zero() {
                continue;
            }
            let b = &q.s / (&two * &a);
            let root = mk(a, b);
            let sq_r = &root.r * &root.r + &d * &root.s * &root.s;
            let sq_s = &two * &root.r * &root.s;
            if sq_r == q.r && sq_s == q.s {
                return Some(root);
            }
        }
    }
    None
}

fn eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn trim(poly: &[Scalar]) -> Vec<Scalar> {
    let mut v = poly.to_vec();
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

/// Divides by `(x − root)`; the remainder is discarded.
fn deflate(poly: &[Scalar], root: &Scalar) -> Vec<Scalar> {
    let n = poly.len() - 1;
    let mut out = vec![root.field().zero(); n];
    let mut carry = root.field().zero();
    for i in (1..=n).rev() {
        carry = &poly[i] + &(&carry * root);
        out[i - 1] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(n)? {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// Distinct rational roots of a polynomial with rational coefficients
/// (low degree first), any degree, by the rational root theorem.
pub fn rational_roots(coeffs: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let lcm = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = c.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = BTreeSet::new();
    if ints[0].is_zero() {
        roots.insert(BigRational::zero());
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    if ints.len() > 1 {
        let lead = ints.last().unwrap().clone();
        let num_divs = divisors(&ints[0])?;
        let den_divs = divisors(&lead)?;
        for p in &num_divs {
            for q in &den_divs {
                for sign in [1i32, -1] {
                    let x = BigRational::new(p * sign, q.clone());
                    let mut acc = BigRational::zero();
                    for k in ints.iter().rev() {
                        acc = acc * &x + BigRational::from_integer(k.clone());
                    }
                    if acc.is_zero() {
                        roots.insert(x);
                    }
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

fn quadratic_roots(poly: &[Scalar]) -> Vec<Scalar> {
    // a x² + b x + c, characteristic zero
    let (c, b, a) = (&poly[0], &poly[1], &poly[2]);
    let f = a.field();
    let disc = b * b - &(&f.from_int(4) * &(a * c));
    match sqrt(&disc) {
        None => Vec::new(),
        Some(r) => {
            let two_a = &f.from_int(2) * a;
            let mut v = vec![&(&(-b) + &r) / &two_a, &(&(-b) - &r) / &two_a];
            v.sort();
            v.dedup();
            v
        }
    }
}

/// The roots lying in the field of a polynomial of degree at most 3
/// (coefficients low degree first, leading coefficient nonzero).
pub fn roots_in_field(poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let poly = trim(poly);
    let deg = poly.len().saturating_sub(1);
    if deg > 3 {
        return Err(Error::DegreeOutOfRange(deg));
    }
    roots_any_degree(&poly)
}

/// Same as [`roots_in_field`] without the degree cap where the field allows it
/// (ℚ and GF(p)); over ℚ(√d) degree three is supported only for rational
/// coefficients.
pub(crate) fn roots_any_degree(poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let poly = trim(poly);
    if poly.is_empty() || (poly.len() == 1) {
        return Ok(Vec::new());
    }
    let field = poly[0].field();
    let mut out = match field {
        FieldSpec::PrimeField { p } => (0..p)
            .map(|v| Scalar::Gf(Fp { v, p }))
            .filter(|x| eval(&poly, x).is_zero())
            .collect(),
        FieldSpec::Rationals => {
            let rat: Vec<BigRational> = poly.iter().map(|c| c.as_rational().unwrap()).collect();
            rational_roots(&rat)?.into_iter().map(Scalar::Rat).collect()
        }
        FieldSpec::QuadExt { .. } => quad_field_roots(&poly)?,
    };
    out.sort();
    out.dedup();
    Ok(out)
}

fn quad_field_roots(poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let field = poly[0].field();
    let deg = poly.len() - 1;
    match deg {
        1 => return Ok(vec![-(&poly[0] / &poly[1])]),
        2 => return Ok(quadratic_roots(poly)),
        _ => {}
    }
    let rational: Option<Vec<BigRational>> = poly.iter().map(|c| c.as_rational()).collect();
    let Some(rat) = rational else {
        if deg == 3 {
            return Err(Error::UnsupportedField(
                "cubic with irrational coefficients over Q(sqrt,d)".into(),
            ));
        }
        return Err(Error::DegreeOutOfRange(deg));
    };
    // Rational roots first; a leftover factor of degree ≤ 2 may split over ℚ(√d).
    // A leftover of degree ≥ 3 without rational roots has no roots of degree ≤ 2
    // over ℚ only when its degree is exactly 3.
    let mut roots = Vec::new();
    let mut rest: Vec<Scalar> = poly.to_vec();
    for r in rational_roots(&rat)? {
        let x = field.from_rational(&r)?;
        while rest.len() > 1 && eval(&rest, &x).is_zero() {
            rest = deflate(&rest, &x);
        }
        roots.push(x);
    }
    match rest.len() - 1 {
        0 | 1 => {}
        2 => roots.extend(quadratic_roots(&rest)),
        3 => {}
        d => return Err(Error::DegreeOutOfRange(d)),
    }
    Ok(roots)
}

/// Isotropy of `a x² + b y² + c z²` over ℚ (Hasse–Minkowski with Hilbert symbols).
pub fn ternary_isotropic_rational(a: &BigRational, b: &BigRational, c: &BigRational) -> Result<bool> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::BadParameters("ternary form coefficients must be nonzero".into()));
    }
    // Same square class: n/d ~ n·d.
    let int = |q: &BigRational| q.numer() * q.denom();
    let (a, b, c) = (int(a), int(b), int(c));
    // ⟨a,b,c⟩ isotropic ⇔ ⟨−ac, −bc⟩ represents 1 ⇔ (−ac, −bc)_v = 1 at every place.
    let x = -(&a * &c);
    let y = -(&b * &c);
    let mut places = vec![Place::Infinite, Place::Prime(BigUint::from(2u32))];
    for n in [&x, &y] {
        for (p, _) in factor_integer(n)? {
            if p != BigUint::from(2u32) {
                places.push(Place::Prime(p));
            }
        }
    }
    places.sort();
    places.dedup();
    Ok(places.iter().all(|v| hilbert_symbol(&x, &y, v) == 1))
}

/// Isotropy of a diagonal ternary form. Always true over GF(p); over ℚ(√d)
/// the question is not decided here.
pub fn ternary_isotropic(diag: [&Scalar; 3]) -> Result<bool> {
    let field = diag[0].field();
    if diag.iter().any(|s| s.field() != field) {
        return Err(Error::FieldMismatch(field, diag.iter().find(|s| s.field() != field).unwrap().field()));
    }
    if diag.iter().any(|s| s.is_zero()) {
        return Err(Error::BadParameters("ternary form coefficients must be nonzero".into()));
    }
    match field {
        FieldSpec::PrimeField { .. } => Ok(true),
        FieldSpec::QuadExt { .. } => Err(Error::UnsupportedField(field.to_string())),
        FieldSpec::Rationals => {
            let r: Vec<BigRational> = diag.iter().map(|s| s.as_rational().unwrap()).collect();
            ternary_isotropic_rational(&r[0], &r[1], &r[2])
        }
    }
}

/// Euler's criterion, exposed for tests.
#[allow(dead_code)]
pub(crate) fn euler_is_square(v: u32, p: u32) -> bool {
    v == 0 || p == 2 || pow_mod(v as u64, (p as u64 - 1) / 2, p as u64) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(n.into(), d.into()))
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn squares_over_q_and_gf5() {
        assert_eq!(q(4, 9).is_square(), (true, Some(q(2, 3))));
        assert_eq!(q(-1, 1).is_square(), (false, None));
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.from_int(2).is_square(), (false, None));
        assert_eq!(f.from_int(4).is_square(), (true, Some(f.from_int(2))));
    }

    #[test]
    fn squares_in_quadratic_fields() {
        let f = FieldSpec::quad(-1).unwrap();
        let i = f.sqrt_generator().unwrap();
        // 2i = (1 + i)²
        let x = &f.from_int(2) * &i;
        let (ok, root) = x.is_square();
        assert!(ok);
        let root = root.unwrap();
        assert_eq!(&root * &root, x);
        // -1 = i²
        assert!(f.from_int(-1).is_square().0);
        assert!(!f.from_int(3).is_square().0);
        let g = FieldSpec::quad(2).unwrap();
        // 3 + 2√2 = (1 + √2)²
        let y = g.from_int(3) + g.from_int(2) * g.sqrt_generator().unwrap();
        assert!(y.is_square().0);
        assert!(g.from_int(2).is_square().0);
        assert!(!g.from_int(-1).is_square().0);
    }

    #[test]
    fn is_square_matches_exhaustive_search() {
        for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let f = FieldSpec::prime(p).unwrap();
            let squares: BTreeSet<u32> = (0..p).map(|x| x * x % p).collect();
            for v in 0..p {
                let (flag, root) = f.from_int(v as i64).is_square();
                assert_eq!(flag, squares.contains(&v), "p={p} v={v}");
                assert_eq!(flag, euler_is_square(v, p));
                if let Some(root) = root {
                    assert_eq!(&root * &root, f.from_int(v as i64));
                }
            }
        }
    }

    #[test]
    fn roots_examples() {
        let qf = FieldSpec::Rationals;
        let x2p1 = |f: FieldSpec| vec![f.one(), f.zero(), f.one()];
        assert!(roots_in_field(&x2p1(qf)).unwrap().is_empty());
        let gi = FieldSpec::quad(-1).unwrap();
        let i = gi.sqrt_generator().unwrap();
        let mut expect = vec![i.clone(), -i];
        expect.sort();
        assert_eq!(roots_in_field(&x2p1(gi)).unwrap(), expect);
        let g5 = FieldSpec::prime(5).unwrap();
        assert_eq!(roots_in_field(&x2p1(g5)).unwrap(), vec![g5.from_int(2), g5.from_int(3)]);
        // (x - 1/2)(x + 3)(x - 2) = x³ + x²/2 − 13x/2 + 3
        let cubic = vec![q(3, 1), q(-13, 2), q(1, 2), q(1, 1)];
        assert_eq!(roots_in_field(&cubic).unwrap(), vec![q(-3, 1), q(1, 2), q(2, 1)]);
        let quartic = vec![q(1, 1); 5];
        assert_eq!(roots_in_field(&quartic), Err(Error::DegreeOutOfRange(4)));
    }

    #[test]
    fn cubic_over_quadratic_field() {
        // (x − 1)(x² − 2) over ℚ(√2): roots 1, ±√2
        let f = FieldSpec::quad(2).unwrap();
        let poly = vec![f.from_int(2), f.from_int(-2), f.from_int(-1), f.one()];
        let roots = roots_in_field(&poly).unwrap();
        assert_eq!(roots.len(), 3);
        for x in &roots {
            assert!(eval(&poly, x).is_zero());
        }
        // x³ − 2 has no roots in ℚ(√2)
        let poly = vec![f.from_int(-2), f.zero(), f.zero(), f.one()];
        assert!(roots_in_field(&poly).unwrap().is_empty());
    }

    #[test]
    fn ternary_examples() {
        assert!(ternary_isotropic_rational(&r(1), &r(1), &r(-1)).unwrap());
        assert!(!ternary_isotropic_rational(&r(1), &r(1), &r(1)).unwrap());
        assert!(!ternary_isotropic_rational(&r(-1), &r(-1), &r(-1)).unwrap());
        // x² + y² − 3z²: anisotropic (3 is not a sum of two rational squares)
        assert!(!ternary_isotropic_rational(&r(1), &r(1), &r(-3)).unwrap());
        // x² + y² − 5z²: isotropic (1 + 4 = 5)
        assert!(ternary_isotropic_rational(&r(1), &r(1), &r(-5)).unwrap());
        // x² + 2y² − 3z²: isotropic (1 + 2 = 3)
        assert!(ternary_isotropic_rational(&r(1), &r(2), &r(-3)).unwrap());
        let g = FieldSpec::prime(7).unwrap();
        assert!(ternary_isotropic([&g.one(), &g.one(), &g.one()]).unwrap());
        let h = FieldSpec::quad(-1).unwrap();
        assert!(matches!(
            ternary_isotropic([&h.one(), &h.one(), &h.one()]),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn ternary_brute_force_agreement() {
        // Holzer's bound puts a solution of height ≤ 12 within reach for these
        // coefficients, so the search decides isotropy exactly.
        let vals = [-5i64, -3, -2, -1, 1, 2, 3, 5, 6];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    let mut found = false;
                    'outer: for x in 0i64..=12 {
                        for y in 0i64..=12 {
                            for z in 0i64..=12 {
                                if (x, y, z) != (0, 0, 0) && a * x * x + b * y * y + c * z * z == 0 {
                                    found = true;
                                    break 'outer;
                                }
                            }
                        }
                    }
                    let iso = ternary_isotropic_rational(&r(a), &r(b), &r(c)).unwrap();
                    assert_eq!(iso, found, "({a},{b},{c})");
                }
            }
        }
    }
}
