//! Exact arithmetic: rationals, dense univariate polynomials, the rational
//! function field Q(t), square matrices over it, and truncated q-series.

mod gcd;
mod poly;
mod qseries;
mod ratfunc;
mod ratmat;

pub use poly::Poly;
pub use qseries::QSeries;
pub use ratfunc::RatFunc;
pub use ratmat::RatMat;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn rational_to_f64(x: &Rational) -> f64 {
    // Large numerators and denominators overflow f64 individually even when
    // the quotient is moderate, so scale both down first.
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let nb = x.numer().bits() as i64;
            let db = x.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Exact rational value of a finite double.
pub(crate) fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub(crate) fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
