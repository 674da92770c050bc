use num_traits::Zero;

use super::CoordMap;
use crate::algebra::{RatMat, Rational};
use crate::error::{Error, Result};

/// Matrix connection coefficient `A` together with its eccentricity `e`.
///
/// Under `t = λ(τ)` the coefficient transforms as
/// `A ↦ λ′(A∘λ) + e(λ″/λ′)I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub a: RatMat,
    pub e: Rational,
}

impl Connection {
    pub fn new(a: RatMat, e: Rational) -> Self {
        Connection { a, e }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    fn nonzero_e(&self) -> Result<&Rational> {
        if self.e.is_zero() {
            Err(Error::ZeroEccentricity)
        } else {
            Ok(&self.e)
        }
    }
}

/// `F_A = A′ − A²/(2e)`.
pub fn curvature(c: &Connection) -> Result<RatMat> {
    let e = c.nonzero_e()?;
    let half_inv = (e * Rational::from_integer(2.into())).recip();
    Ok(&c.a.derivative() - &(&c.a * &c.a).scale_rational(&half_inv))
}

/// Coefficient of the connection in the new chart after `t = λ(τ)`.
pub fn transform_connection(c: &Connection, lambda: &CoordMap) -> Connection {
    let n = c.dim();
    let pulled = lambda.pull_mat(&c.a).scale(lambda.d1());
    let shift = RatMat::scalar(n, lambda.log_d1().scale(&c.e));
    Connection::new(&pulled + &shift, c.e.clone())
}

/// `F_{A_j} = (λ′)² (F_{A_i}∘λ) + e S(λ) I`, checked exactly.
pub fn curvature_anomaly_check(c: &Connection, lambda: &CoordMap) -> Result<bool> {
    let moved = transform_connection(c, lambda);
    let lhs = curvature(&moved)?;
    let tensor = lambda.pull_mat(&curvature(c)?).scale(&lambda.d1().pow(2));
    let anomaly = RatMat::scalar(c.dim(), lambda.schwarzian().scale(&c.e));
    Ok(lhs == &tensor + &anomaly)
}

/// `∇_A ψ = ψ′ − (m/e) A ψ` for a weight-`m` coefficient `ψ`.
pub fn covariant_derivative(c: &Connection, psi: &RatMat, m: i64) -> Result<RatMat> {
    let e = c.nonzero_e()?;
    let factor = Rational::from_integer(m.into()) / e;
    let a_psi = c.a.try_mul(psi)?;
    Ok(&psi.derivative() - &a_psi.scale_rational(&factor))
}

/// `g • A = g A g⁻¹ + g′ g⁻¹`, eccentricity unchanged.
pub fn gauge_act_connection(g: &RatMat, c: &Connection) -> Result<Connection> {
    let g_inv = g.inverse().map_err(|_| Error::SingularGauge)?;
    let conj = &(&g.try_mul(&c.a)? * &g_inv);
    let inhom = &g.derivative() * &g_inv;
    Ok(Connection::new(conj + &inhom, c.e.clone()))
}

/// `F_{g•A} − g F_A g⁻¹`; nonzero in general for noncommuting `A`.
pub fn curvature_gauge_defect(g: &RatMat, c: &Connection) -> Result<RatMat> {
    let moved = gauge_act_connection(g, c)?;
    let g_inv = g.inverse().map_err(|_| Error::SingularGauge)?;
    let conj = &(g * &curvature(c)?) * &g_inv;
    Ok(&curvature(&moved)? - &conj)
}

/// Left Maurer–Cartan connection `A = (1/m) ψ⁻¹ψ′` of eccentricity 1.
pub fn maurer_cartan(psi: &RatMat, m: &Rational) -> Result<Connection> {
    if m.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let inv = psi.inverse().map_err(|_| Error::SingularInput)?;
    let a = (&inv * &psi.derivative()).scale_rational(&m.recip());
    Ok(Connection::new(a, Rational::from_integer(1.into())))
}
