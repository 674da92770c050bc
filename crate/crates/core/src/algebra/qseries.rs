use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{fmt_rational, Poly, Rational};
use crate::error::{Error, Result};

/// Power series in `q` known exactly up to (but excluding) `q^order`.
///
/// Binary operations truncate to the smaller operand order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Coefficients for `q^0 .. q^(order-1)`; missing ones are zero.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        QSeries { coeffs }
    }

    pub fn from_ints(cs: &[i64], order: usize) -> Self {
        QSeries::new(cs.iter().map(|&c| super::int(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        QSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        QSeries::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        QSeries::new(vec![c], order)
    }

    /// Truncation of a polynomial.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        QSeries::new(p.coeffs().iter().take(order).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        QSeries::new(self.coeffs.iter().take(order).cloned().collect(), order)
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Normalized derivation `D = q d/dq`, so `D q^n = n q^n`. Order is kept.
    pub fn derive(&self) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * Rational::from_integer(BigInt::from(n)))
                .collect(),
        }
    }

    /// Ordinary derivative in the series variable; loses one order.
    pub(crate) fn d_dvar(&self) -> QSeries {
        let order = self.order().saturating_sub(1);
        QSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * Rational::from_integer(BigInt::from(n)))
                .collect(),
            order,
        )
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<QSeries> {
        let n = self.order();
        let c0 = self.coeffs.first().filter(|c| !c.is_zero()).ok_or(Error::NonUnitSeries)?;
        let c0_inv = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
            for j in 1..=k {
                acc -= &self.coeffs[j] * &out[k - j];
            }
            out.push(acc * &c0_inv);
        }
        Ok(QSeries { coeffs: out })
    }

    /// Quotient `self / divisor`. A divisor of valuation `v` is allowed when
    /// the dividend also vanishes to order `v`; the result then loses `v`
    /// orders of precision.
    pub fn checked_div(&self, divisor: &QSeries) -> Result<QSeries> {
        let v = divisor.valuation().ok_or(Error::NonUnitSeries)?;
        if self.coeffs.iter().take(v).any(|c| !c.is_zero()) {
            return Err(Error::NonUnitSeries);
        }
        let order = self.order().min(divisor.order()) - v;
        let num = QSeries::new(self.coeffs[v..].to_vec(), order);
        let den = QSeries::new(divisor.coeffs[v..].to_vec(), order);
        Ok(&num * &den.invert()?)
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Result<QSeries> {
        let n = self.order();
        if self.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::NonNilpotentExponent);
        }
        // From E' = x'E: k e_k = Σ_{j=1}^{k} j x_j e_{k-j}.
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(Rational::one());
                continue;
            }
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j] * Rational::from_integer(BigInt::from(j));
                }
            }
            out.push(acc / Rational::from_integer(BigInt::from(k)));
        }
        Ok(QSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> QSeries {
        (0..e).fold(QSeries::one(self.order()), |acc, _| &acc * self)
    }

    /// Order of the first differing coefficient, if any, over the common order.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    /// Comma-separated coefficient list, `q^0` first.
    pub fn coeff_list(&self) -> String {
        self.coeffs.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Poly::from_coeffs(self.coeffs.clone());
        write!(f, "{} + O(q^{})", p.display_in("q"), self.order())
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
