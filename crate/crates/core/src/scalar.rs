//! Exact scalars: Gaussian rationals `a + bi` with `a, b ∈ ℚ` of arbitrary precision.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact element of ℚ(i). Both parts are kept in lowest terms by `BigRational`.
pub type GaussianRational = Complex<BigRational>;

/// Shorthand used throughout the crate.
pub type Gq = GaussianRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Gq {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

pub fn from_rat(r: BigRational) -> Gq {
    Complex::new(r, BigRational::zero())
}

pub fn gq(re: BigRational, im: BigRational) -> Gq {
    Complex::new(re, im)
}

/// The imaginary unit.
pub fn i() -> Gq {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn is_real(x: &Gq) -> bool {
    x.im.is_zero()
}

pub fn to_c64(x: &Gq) -> Complex64 {
    Complex64::new(
        x.re.to_f64().unwrap_or(f64::NAN),
        x.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// `x · y`, skipping the products with a vanishing real or imaginary part.
/// Most factors met in practice are real or purely imaginary, and every
/// `BigRational` product costs a gcd.
pub fn mul(x: &Gq, y: &Gq) -> Gq {
    if y.im.is_zero() && y.re.is_one() {
        return x.clone();
    }
    match (x.im.is_zero(), y.im.is_zero(), x.re.is_zero(), y.re.is_zero()) {
        (true, true, _, _) => Complex::new(&x.re * &y.re, BigRational::zero()),
        (true, false, _, true) => Complex::new(BigRational::zero(), &x.re * &y.im),
        (true, false, _, false) => Complex::new(&x.re * &y.re, &x.re * &y.im),
        (false, true, true, _) => Complex::new(BigRational::zero(), &x.im * &y.re),
        (false, true, false, _) => Complex::new(&x.re * &y.re, &x.im * &y.re),
        (false, false, true, true) => Complex::new(-(&x.im * &y.im), BigRational::zero()),
        _ => x * y,
    }
}

/// `x · n` for a machine integer `n`.
pub fn mul_int(x: &Gq, n: i64) -> Gq {
    let n = BigInt::from(n);
    let part = |r: &BigRational| if r.is_zero() { BigRational::zero() } else { r * &n };
    Complex::new(part(&x.re), part(&x.im))
}

/// `x^n` for a possibly negative exponent; `x` must be non-zero when `n < 0`.
pub fn powi(x: &Gq, n: i64) -> Gq {
    let mut base = if n < 0 { Gq::one() / x.clone() } else { x.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = Gq::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Canonical text form of a rational: always `p/q` with `q ≥ 1`, lowest terms.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`. The denominator must be non-zero.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Human-readable `a+bi` rendering used in reports.
pub fn display(x: &Gq) -> String {
    match (x.re.is_zero(), x.im.is_zero()) {
        (_, true) => x.re.to_string(),
        (true, false) => format!("{}i", x.im),
        (false, false) => {
            let sign = if x.im.is_negative() { '-' } else { '+' };
            format!("{}{}{}i", x.re, sign, x.im.abs())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_equality() {
        assert_eq!(gq(rat(2, 4), rat(-3, 6)), gq(rat(1, 2), rat(-1, 2)));
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(0, 5)), "0/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-10/4").unwrap(), rat(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&i() * &i(), int(-1));
        assert_eq!(powi(&i(), -1), -i());
        assert_eq!(powi(&int(2), 10), int(1024));
    }

    #[test]
    fn fast_products_agree() {
        let xs = [int(0), int(3), gq(rat(1, 2), rat(0, 1)), gq(rat(0, 1), rat(-2, 3)), gq(rat(5, 7), rat(1, 3))];
        for x in &xs {
            for y in &xs {
                assert_eq!(mul(x, y), x * y);
            }
            assert_eq!(mul_int(x, -6), x * &int(-6));
        }
    }

    #[test]
    fn display_parts() {
        assert_eq!(display(&gq(rat(1, 2), rat(-3, 1))), "1/2-3i");
        assert_eq!(display(&i()), "1i");
    }
}
