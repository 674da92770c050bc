use super::CoordMap;
use crate::algebra::{rat, RatFunc, RatMat};
use crate::error::{Error, Result};

/// `S(f) = (f″/f′)′ − ½ (f″/f′)²`.
pub fn scalar_schwarzian(f: &RatFunc) -> Result<RatFunc> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let d1 = f.derivative();
    let ratio = d1.derivative().checked_div(&d1)?;
    Ok(&ratio.derivative() - &(&ratio * &ratio).scale(&rat(1, 2)))
}

/// `S(f∘λ) = (λ′)² (S(f)∘λ) + S(λ)`, checked exactly.
pub fn schwarzian_chain_rule_check(f: &RatFunc, lambda: &CoordMap) -> Result<bool> {
    let lhs = scalar_schwarzian(&lambda.pull(f))?;
    let rhs = &(&lambda.d1().pow(2) * &lambda.pull(&scalar_schwarzian(f)?)) + &lambda.schwarzian();
    Ok(lhs == rhs)
}

/// Scalar equation `y″ = 2p y′ + q y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarODE {
    pub p: RatFunc,
    pub q: RatFunc,
}

impl ScalarODE {
    pub fn new(p: RatFunc, q: RatFunc) -> Self {
        ScalarODE { p, q }
    }

    /// Coefficients of `y″ + P y′ + Q y = 0`, i.e. `(−2p, −q)`.
    pub fn monic_form(&self) -> (RatFunc, RatFunc) {
        (-&self.p.scale(&crate::algebra::int(2)), -&self.q)
    }

    /// Build from `y″ + P y′ + Q y = 0`.
    pub fn from_monic_form(big_p: RatFunc, big_q: RatFunc) -> Self {
        ScalarODE {
            p: -&big_p.scale(&rat(1, 2)),
            q: -&big_q,
        }
    }

    /// `2(p′ − p² − q)`.
    pub fn schwarzian(&self) -> RatFunc {
        (&(&self.p.derivative() - &(&self.p * &self.p)) - &self.q).scale(&crate::algebra::int(2))
    }
}

/// Pull a scalar equation back along `t = λ(τ)`:
/// `p̃ = (p∘λ)λ′ + ½ λ″/λ′`, `q̃ = (q∘λ)(λ′)²`.
pub fn coord_change_scalar_ode(ode: &ScalarODE, lambda: &CoordMap) -> ScalarODE {
    let p = &(&lambda.pull(&ode.p) * lambda.d1()) + &lambda.log_d1().scale(&rat(1, 2));
    let q = &lambda.pull(&ode.q) * &lambda.d1().pow(2);
    ScalarODE { p, q }
}

/// Eliminate `z` from `y′ = a y + b z`, `z′ = c y + d z` and return the
/// second-order equation satisfied by `y`.
pub fn eliminate_to_scalar(m: &RatMat) -> Result<ScalarODE> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch(2, m.dim()));
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    if b.is_zero() {
        return Err(Error::DegenerateCoupling);
    }
    // z = (y′ − a y)/b, so y″ = (a + b′/b + d) y′ + (a′ + b c − a(b′/b + d)) y.
    let log_b = b.derivative().checked_div(b)?;
    let shift = &log_b + d;
    let two_p = a + &shift;
    let q = &(&a.derivative() + &(b * c)) - &(a * &shift);
    Ok(ScalarODE {
        p: two_p.scale(&rat(1, 2)),
        q,
    })
}

/// Determinant of the matrix whose row `i` is `(f_i, f_i′, …, f_i^(n−1))`.
pub fn wronskian(fs: &[RatFunc]) -> Result<RatFunc> {
    let n = fs.len();
    if n == 0 {
        return Err(Error::InvalidArgument("Wronskian of an empty tuple".into()));
    }
    let rows: Vec<Vec<RatFunc>> = fs
        .iter()
        .map(|f| {
            let mut row = Vec::with_capacity(n);
            let mut cur = f.clone();
            for k in 0..n {
                if k > 0 {
                    cur = cur.derivative();
                }
                row.push(cur.clone());
            }
            row
        })
        .collect();
    Ok(RatMat::from_rows(rows)?.det())
}

/// Weight law `W(f∘λ) = (λ′)^{n(n−1)/2} (W(f)∘λ)`.
pub fn wronskian_weight_check(fs: &[RatFunc], lambda: &CoordMap) -> Result<bool> {
    let n = fs.len() as u32;
    let pulled: Vec<RatFunc> = fs.iter().map(|f| lambda.pull(f)).collect();
    let lhs = wronskian(&pulled)?;
    let rhs = &lambda.d1().pow(n * (n.saturating_sub(1)) / 2) * &lambda.pull(&wronskian(fs)?);
    Ok(lhs == rhs)
}
