//! Exact scalar types: rationals and complex rationals.
//!
//! Everything in this crate computes over these two fields. There is no
//! floating point and no tolerance anywhere; an equality test means literal
//! equality of reduced fractions.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational scalar, always stored in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Complex number with exact rational real and imaginary parts.
pub type CScalar = Complex<Scalar>;

/// The field operations the linear algebra layer needs.
///
/// Implemented by [`Scalar`] and [`CScalar`]; both are exact, so every
/// elimination step below is exact as well.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + std::fmt::Debug
    + std::fmt::Display
{
}

impl Field for Scalar {}
impl Field for CScalar {}

/// Rational `n/d`.
pub fn rat(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer rational `n`.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Complex rational from real and imaginary parts.
pub fn crat(re: Scalar, im: Scalar) -> CScalar {
    Complex::new(re, im)
}

/// Real complex scalar.
pub fn cre(re: Scalar) -> CScalar {
    Complex::new(re, Scalar::zero())
}

/// Purely imaginary complex scalar.
pub fn cim(im: Scalar) -> CScalar {
    Complex::new(Scalar::zero(), im)
}

/// The imaginary unit.
pub fn ci() -> CScalar {
    cim(Scalar::one())
}

/// Renders a rational the way reports expect: `p/q`, or just `p` for integers.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or a plain decimal like `-1.25` into an exact rational.
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d: BigInt = den.trim().parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let w: BigInt = whole.parse().map_err(|e| format!("bad number {s:?}: {e}"))?;
        let digits = frac.len() as u32;
        let f: BigInt = frac.parse().map_err(|e| format!("bad number {s:?}: {e}"))?;
        let base = BigInt::from(10u32).pow(digits);
        let num = w * &base + BigInt::from(sign) * f;
        return Ok(BigRational::new(num, base));
    }
    let n: BigInt = s.parse().map_err(|e| format!("bad number {s:?}: {e}"))?;
    Ok(BigRational::from_integer(n))
}

/// Complex conjugate.
pub fn conj(z: &CScalar) -> CScalar {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// Squared absolute value `z z̄` as a rational.
pub fn norm_sqr(z: &CScalar) -> Scalar {
    &z.re * &z.re + &z.im * &z.im
}

/// Sign-normalized content of a list of rationals: the positive rational g
/// such that dividing by g makes the entries coprime integers (first nonzero
/// positive). Used to normalize kernel vectors for reproducible output.
pub fn content(v: &[Scalar]) -> Option<Scalar> {
    use num_integer::Integer;
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    let mut first_sign = 0i8;
    for x in v {
        if x.is_zero() {
            continue;
        }
        if first_sign == 0 {
            first_sign = if x.is_positive() { 1 } else { -1 };
        }
        num_gcd = num_gcd.gcd(x.numer());
        den_lcm = den_lcm.lcm(x.denom());
    }
    if first_sign == 0 {
        return None;
    }
    let mut g = BigRational::new(num_gcd, den_lcm);
    if first_sign < 0 {
        g = -g;
    }
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["-3/2", "7", "0", "22/7"] {
            let x = parse_scalar(s).unwrap();
            assert_eq!(format_scalar(&x), s);
        }
        assert_eq!(parse_scalar("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_scalar("-1.25").unwrap(), rat(-5, 4));
        assert!(parse_scalar("1/0").is_err());
    }

    #[test]
    fn complex_field_ops_are_exact() {
        let z = crat(rat(1, 2), rat(-1, 3));
        let w = crat(rat(2, 5), rat(1, 7));
        let q = z.clone() / w.clone();
        assert_eq!(q * w, z);
        assert_eq!(conj(&conj(&z)), z);
        assert_eq!(norm_sqr(&z), rat(1, 4) + rat(1, 9));
    }

    #[test]
    fn content_normalizes() {
        let v = vec![rat(-2, 3), rat(4, 3), int(0)];
        let g = content(&v).unwrap();
        assert_eq!(g, rat(-2, 3));
        let w: Vec<Scalar> = v.iter().map(|x| x / &g).collect();
        assert_eq!(w, vec![int(1), int(-2), int(0)]);
    }
}
