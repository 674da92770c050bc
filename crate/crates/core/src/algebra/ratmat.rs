use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{RatFunc, Rational};
use crate::error::{Error, Result};

/// Square matrix over Q(t), row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMat {
    n: usize,
    entries: Vec<RatFunc>,
}

impl RatMat {
    pub fn zero(n: usize) -> Self {
        RatMat {
            n,
            entries: vec![RatFunc::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, RatFunc::one())
    }

    /// `f · I`.
    pub fn scalar(n: usize, f: RatFunc) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = f.clone();
        }
        m
    }

    pub fn diag(d: Vec<RatFunc>) -> Self {
        let n = d.len();
        let mut m = Self::zero(n);
        for (i, f) in d.into_iter().enumerate() {
            m.entries[i * n + i] = f;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            entries.extend(row);
        }
        Ok(RatMat { n, entries })
    }

    /// Build from a closure over `(row, col)`.
    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut f = f;
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        RatMat { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    /// True when every entry is a constant.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(RatFunc::is_constant)
    }

    fn check_dim(&self, other: &RatMat) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &RatMat) -> Result<RatMat> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &RatMat) -> Result<RatMat> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &RatMat) -> Result<RatMat> {
        self.check_dim(other)?;
        let n = self.n;
        Ok(RatMat::from_fn(n, |i, j| {
            (0..n)
                .map(|k| (self.get(i, k), other.get(k, j)))
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        }))
    }

    fn zip_with(&self, other: &RatMat, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> RatMat {
        RatMat {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> RatMat {
        RatMat {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<RatMat> {
        Ok(RatMat {
            n: self.n,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, f: &RatFunc) -> RatMat {
        self.map(|a| a * f)
    }

    pub fn scale_rational(&self, c: &Rational) -> RatMat {
        self.map(|a| a.scale(c))
    }

    pub fn derivative(&self) -> RatMat {
        self.map(RatFunc::derivative)
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Entrywise substitution `X ∘ λ`.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatMat> {
        self.try_map(|f| f.compose(inner))
    }

    pub fn trace(&self) -> RatFunc {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn pow(&self, e: u32) -> RatMat {
        (0..e).fold(RatMat::identity(self.n), |acc, _| &acc * self)
    }

    /// Gaussian elimination over Q(t).
    pub fn det(&self) -> RatFunc {
        let n = self.n;
        let mut rows: Vec<Vec<RatFunc>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut det = RatFunc::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return RatFunc::zero();
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col][col].clone();
            det = &det * &pivot;
            let pivot_inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] * &pivot_inv;
                let (top, bottom) = rows.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<RatMat> {
        let n = self.n;
        let mut a: Vec<Vec<RatFunc>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut inv: Vec<Vec<RatFunc>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect())
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot_inv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &pivot_inv;
                inv[col][c] = &inv[col][c] * &pivot_inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let da = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &da;
                    let di = &factor * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &di;
                }
            }
        }
        RatMat::from_rows(inv)
    }

    /// Coefficients `[c_0, ..., c_n]` of `det(λI − X) = Σ c_k λ^k`, by the
    /// Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<RatFunc> {
        let n = self.n;
        let mut coeffs = vec![RatFunc::zero(); n + 1];
        coeffs[n] = RatFunc::one();
        let mut m = RatMat::zero(n);
        for k in 1..=n {
            let shifted = &m + &RatMat::scalar(n, coeffs[n + 1 - k].clone());
            m = self * &shifted;
            let c = m.trace().scale(&Rational::new((-1).into(), (k as i64).into()));
            coeffs[n - k] = c;
        }
        coeffs
    }

    pub fn display_in(&self, var: &str) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cells: Vec<String> = (0..self.n).map(|j| self.get(i, j).display_in(var)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

// Operator forms panic on dimension mismatch; use the `try_` methods for
// untrusted shapes.
impl Add for &RatMat {
    type Output = RatMat;
    fn add(self, rhs: &RatMat) -> RatMat {
        self.try_add(rhs).expect("matrix dimensions agree")
    }
}

impl Sub for &RatMat {
    type Output = RatMat;
    fn sub(self, rhs: &RatMat) -> RatMat {
        self.try_sub(rhs).expect("matrix dimensions agree")
    }
}

impl Mul for &RatMat {
    type Output = RatMat;
    fn mul(self, rhs: &RatMat) -> RatMat {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl Neg for &RatMat {
    type Output = RatMat;
    fn neg(self) -> RatMat {
        self.map(|a| -a)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatMat {
            type Output = RatMat;
            fn $m(self, rhs: RatMat) -> RatMat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatMat> for RatMat {
            type Output = RatMat;
            fn $m(self, rhs: &RatMat) -> RatMat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatMat {
    type Output = RatMat;
    fn neg(self) -> RatMat {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn t() -> RatFunc {
        RatFunc::var()
    }

    #[test]
    fn inverse_of_identity_and_diagonal() {
        assert_eq!(RatMat::identity(3).inverse().unwrap(), RatMat::identity(3));
        let d = RatMat::diag(vec![t(), RatFunc::one()]);
        let expected = RatMat::diag(vec![t().inv().unwrap(), RatFunc::one()]);
        assert_eq!(d.inverse().unwrap(), expected);
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = RatMat::from_rows(vec![vec![t(), t()], vec![RatFunc::one(), RatFunc::one()]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        assert!(m.det().is_zero());
    }

    #[test]
    fn charpoly_of_companion_matches_cofactor_expansion() {
        let p = RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[0, 1])).unwrap();
        let q = RatFunc::new(Poly::from_ints(&[3]), Poly::from_ints(&[1, 1])).unwrap();
        let m = RatMat::from_rows(vec![vec![RatFunc::zero(), RatFunc::one()], vec![-&q, -&p]]).unwrap();
        // det(λI − M) = λ(λ + p) + q by 2×2 cofactor expansion.
        assert_eq!(m.charpoly(), vec![q, p, RatFunc::one()]);
    }

    #[test]
    fn det_matches_two_by_two_formula() {
        let a = RatMat::from_rows(vec![
            vec![t(), RatFunc::from_int(2)],
            vec![t().pow(2), RatFunc::from_int(-1)],
        ])
        .unwrap();
        let expected = &(a.get(0, 0) * a.get(1, 1)) - &(a.get(0, 1) * a.get(1, 0));
        assert_eq!(a.det(), expected);
        assert_eq!(&a * &a.inverse().unwrap(), RatMat::identity(2));
    }

    #[test]
    fn mismatched_dimensions_error() {
        assert_eq!(
            RatMat::identity(2).try_mul(&RatMat::identity(3)),
            Err(Error::DimensionMismatch(2, 3))
        );
        assert!(RatMat::from_rows(vec![vec![t()], vec![t(), t()]]).is_err());
    }
}
