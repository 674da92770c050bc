use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Element of Q(t) in canonical form: numerator and denominator coprime,
/// denominator monic. Zero is `0/1`.
///
/// Canonical form makes `==` decide equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::constant(super::int(c))
    }

    /// The coordinate function `t`.
    pub fn var() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value when the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        // Powers of coprime polynomials stay coprime.
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn powi(&self, e: i32) -> Result<RatFunc> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            self.inv().map(|r| r.pow(e.unsigned_abs()))
        }
    }

    /// d/dt by the quotient rule.
    pub fn derivative(&self) -> RatFunc {
        if self.den.is_constant() {
            return RatFunc {
                num: self.num.derivative(),
                den: self.den.clone(),
            };
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(num, &self.den * &self.den)
    }

    /// `k`-th derivative.
    pub fn nth_derivative(&self, k: usize) -> RatFunc {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Substitution `self ∘ inner`, i.e. `t ↦ self(inner(t))`.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatFunc> {
        if let Some(c) = inner.as_constant() {
            return self
                .eval(&c)
                .map(RatFunc::constant)
                .ok_or(Error::PoleAtConstant);
        }
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        // Homogenize: N(P/Q) = Σ n_k P^k Q^(dn-k) / Q^dn.
        let homogenize = |p: &Poly, deg: usize| -> Poly {
            let mut acc = Poly::zero();
            let mut p_pow = Poly::one();
            let q_pows: Vec<Poly> = (0..=deg).map(|k| inner.den.pow(k as u32)).collect();
            for k in 0..=deg {
                let c = p.coeff(k);
                if !c.is_zero() {
                    acc = &acc + &(&p_pow * &q_pows[deg - k]).scale(&c);
                }
                if k < deg {
                    p_pow = &p_pow * &inner.num;
                }
            }
            acc
        };
        let mut num = homogenize(&self.num, dn);
        let mut den = homogenize(&self.den, dd);
        // Balance the leftover powers of Q.
        if dn > dd {
            den = &den * &inner.den.pow((dn - dd) as u32);
        } else if dd > dn {
            num = &num * &inner.den.pow((dd - dn) as u32);
        }
        RatFunc::new(num, den)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.display_in(var);
        }
        let wrap = |p: &Poly| {
            let s = p.display_in(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc {
                num,
                den: &self.den * &rhs.den,
            };
        }
        let ld = self.den.div_exact(&g);
        let rd = rhs.den.div_exact(&g);
        let num = &(&self.num * &rd) + &(&rhs.num * &ld);
        if num.is_zero() {
            return RatFunc::zero();
        }
        // Only factors of g can cancel.
        let h = num.gcd(&g);
        let den = &self.den * &rd;
        if h.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc {
                num: num.div_exact(&h),
                den: den.div_exact(&h),
            }
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying to keep degrees low.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = rhs.den.div_exact(&g1);
        let n2 = rhs.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().expect("nonzero").recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn canonical_form_has_monic_denominator() {
        let f = rf(&[2, 2], &[4, -2]);
        // (2 + 2t)/(4 - 2t) = (-t - 1)/(t - 2)
        assert_eq!(f.den(), &Poly::from_ints(&[-2, 1]));
        assert_eq!(f.num(), &Poly::from_ints(&[-1, -1]));
        assert_eq!(RatFunc::new(Poly::zero(), Poly::from_ints(&[3, 1])).unwrap(), RatFunc::zero());
    }

    #[test]
    fn add_over_common_denominator() {
        let lhs = &rf(&[1], &[1, -1]) + &rf(&[0, 1], &[1, -1]);
        assert_eq!(lhs, rf(&[1, 1], &[1, -1]));
    }

    #[test]
    fn division_by_factor() {
        let q = rf(&[-1, 0, 1], &[1]).checked_div(&rf(&[-1, 1], &[1])).unwrap();
        assert_eq!(q, rf(&[1, 1], &[1]));
        assert_eq!(rf(&[1], &[1]).checked_div(&RatFunc::zero()), Err(Error::DivisionByZero));
        assert_eq!(RatFunc::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(RatFunc::new(Poly::one(), Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(rf(&[0, 0, 0, 1], &[1]).derivative(), rf(&[0, 0, 3], &[1]));
        let g = rf(&[1], &[1, -1]);
        assert_eq!(g.derivative(), rf(&[1], &[1, -1]).pow(2));
        // d/dt 3t^2/(2(1-t^3)) = (3t + 3/2 t^4)/(1 - t^3)^2
        let a = rf(&[0, 0, 3], &[2, 0, 0, -2]);
        let expected = RatFunc::new(
            Poly::from_coeffs(vec![int(0), int(3), int(0), int(0), rat(3, 2)]),
            Poly::from_ints(&[1, 0, 0, -1]).pow(2),
        )
        .unwrap();
        assert_eq!(a.derivative(), expected);
    }

    #[test]
    fn compose_with_mobius() {
        let (a, b, c, d) = (2, -1, 3, 5);
        let mob = rf(&[b, a], &[d, c]);
        let sq = rf(&[0, 0, 1], &[1]);
        let expected = rf(&[b, a], &[1]).pow(2).checked_div(&rf(&[d, c], &[1]).pow(2)).unwrap();
        assert_eq!(sq.compose(&mob).unwrap(), expected);
        assert_eq!(mob.compose(&RatFunc::var()).unwrap(), mob);
    }

    #[test]
    fn compose_with_constant() {
        let f = rf(&[1], &[1, -1]);
        assert_eq!(f.compose(&RatFunc::from_int(1)), Err(Error::PoleAtConstant));
        assert_eq!(f.compose(&RatFunc::from_int(3)).unwrap(), RatFunc::constant(rat(-1, 2)));
    }

    #[test]
    fn display_uses_variable_name() {
        assert_eq!(rf(&[1, 1], &[1, -1]).display_in("j"), "(-j - 1)/(j - 1)");
        assert_eq!(rf(&[0, 3], &[1]).to_string(), "3*t");
    }
}
