//! Sign claims from the `g = 4` estimates, checked in exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::spectra::{minimal_spectrum, validate_family};

/// Range over which `16s² − 304s − 1 < 0 ⟺ s ≤ 19` is checked.
const QUADRATIC_RANGE: std::ops::RangeInclusive<i64> = 8..=400;
const IDENTITY_RANGE: std::ops::RangeInclusive<i64> = 2..=100;
const CLOSED_FORM_RANGE: std::ops::RangeInclusive<u32> = 8..=60;
const CLOSED_FORM_RTOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct CertificateSet {
    /// `16s² − 304s − 1` at `s = 19`.
    pub quadratic_at_19: BigInt,
    /// `16s² − 304s − 1` at `s = 20`.
    pub quadratic_at_20: BigInt,
    /// For every integer `s` in range: negative exactly when `s ≤ 19`.
    pub quadratic_sign_pattern: bool,
    /// `5(4s+1)² − 80s(s−1)` and `120s + 5` have equal coefficients.
    pub identity_coefficients: bool,
    /// The identity evaluated at each integer `s` in range.
    pub identity_pointwise: bool,
    /// `80s(s−1)/(4s+1)² < 5` for each integer `s` in range.
    pub ratio_below_five: bool,
    /// Largest relative error of `s − 1 − a² = 2/(1+x)` over `q = 4`, `s ∈ 8..=60`.
    pub closed_form_max_rel_err: f64,
}

impl CertificateSet {
    pub fn all_hold(&self) -> bool {
        self.quadratic_at_19 == BigInt::from(-1)
            && self.quadratic_at_20 == BigInt::from(319)
            && self.quadratic_sign_pattern
            && self.identity_coefficients
            && self.identity_pointwise
            && self.ratio_below_five
            && self.closed_form_max_rel_err <= CLOSED_FORM_RTOL
    }
}

fn quadratic(s: i64) -> BigInt {
    let s = BigInt::from(s);
    BigInt::from(16) * &s * &s - BigInt::from(304) * &s - BigInt::from(1)
}

/// Dense integer polynomials, lowest degree first.
fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt], sign: i32) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            if sign >= 0 {
                x + y
            } else {
                x - y
            }
        })
        .collect()
}

fn poly(coeffs: &[i64]) -> Vec<BigInt> {
    coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// `5(4s+1)² − 80s(s−1)` expanded symbolically.
fn identity_lhs() -> Vec<BigInt> {
    let lin = poly(&[1, 4]);
    let sq = poly_mul(&lin, &lin);
    let five_sq = poly_mul(&poly(&[5]), &sq);
    let rhs = poly_mul(&poly(&[0, 80]), &poly(&[-1, 1]));
    trim(poly_add(&five_sq, &rhs, -1))
}

pub fn integer_certificates() -> CertificateSet {
    let quadratic_sign_pattern = QUADRATIC_RANGE
        .clone()
        .all(|s| quadratic(s).is_negative() == (s <= 19));

    let identity_coefficients = identity_lhs() == poly(&[5, 120]);
    let identity_pointwise = IDENTITY_RANGE.clone().all(|s| {
        let s = BigInt::from(s);
        let four_s1 = BigInt::from(4) * &s + 1;
        let lhs = BigInt::from(5) * &four_s1 * &four_s1 - BigInt::from(80) * &s * (&s - 1);
        lhs == BigInt::from(120) * &s + 5
    });

    let five = BigRational::from_integer(BigInt::from(5));
    let ratio_below_five = IDENTITY_RANGE.clone().all(|s| {
        let s = BigInt::from(s);
        let num = BigInt::from(80) * &s * (&s - 1);
        let lin: BigInt = BigInt::from(4) * &s + 1;
        let den = &lin * &lin;
        BigRational::new(num, den) < five
    });

    let closed_form_max_rel_err = CLOSED_FORM_RANGE
        .map(|s| {
            let fam = validate_family(4, 4, s - 4).expect("q = 4 family is valid");
            let sp = minimal_spectrum(&fam).expect("spectrum of a valid family");
            let sf = s as f64;
            let x = (1.0 - 4.0 / sf).sqrt();
            let expected = 2.0 / (1.0 + x);
            ((sf - 1.0 - sp.a_sq()) - expected).abs() / expected
        })
        .fold(0.0, f64::max);

    CertificateSet {
        quadratic_at_19: quadratic(19),
        quadratic_at_20: quadratic(20),
        quadratic_sign_pattern,
        identity_coefficients,
        identity_pointwise,
        ratio_below_five,
        closed_form_max_rel_err,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_values() {
        assert_eq!(quadratic(19), BigInt::from(-1));
        assert_eq!(quadratic(20), BigInt::from(319));
        assert_eq!(16 * 361 - 304 * 19 - 1, -1);
    }

    #[test]
    fn identity_at_ten() {
        assert_eq!(5 * 41 * 41 - 80 * 90, 1205);
        assert_eq!(120 * 10 + 5, 1205);
    }

    #[test]
    fn symbolic_expansion() {
        assert_eq!(identity_lhs(), poly(&[5, 120]));
    }

    #[test]
    fn all_certificates_hold() {
        let c = integer_certificates();
        assert!(c.all_hold(), "{c:?}");
    }
}
