//! Schwarzians, curvature, covariant derivatives, gauge and ⋆ actions.
//!
//! Connections and differentials are represented by their coefficient
//! matrices over Q(t) (multiplication operators), which makes every
//! transformation law an exact, decidable identity.

mod connection;
mod pair;
mod scalar;

pub use connection::{
    covariant_derivative, curvature, curvature_anomaly_check, curvature_gauge_defect,
    gauge_act_connection, maurer_cartan, transform_connection, Connection,
};
pub use pair::{
    characteristic_invariants, coord_change_pair, gauge_star_compat_check, gauge_transform_pair,
    main_lemma_check, matrix_schwarzian, star_act, Pair,
};
pub use scalar::{
    coord_change_scalar_ode, eliminate_to_scalar, scalar_schwarzian, schwarzian_chain_rule_check,
    wronskian, wronskian_weight_check, ScalarODE,
};

use crate::algebra::RatFunc;
use crate::error::{Error, Result};

/// A change of coordinate `t = λ(τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordMap {
    map: RatFunc,
    d1: RatFunc,
    d2: RatFunc,
}

impl CoordMap {
    pub fn new(map: RatFunc) -> Result<Self> {
        if map.is_constant() {
            return Err(Error::ConstantInput);
        }
        let d1 = map.derivative();
        let d2 = d1.derivative();
        Ok(CoordMap { map, d1, d2 })
    }

    pub fn identity() -> Self {
        CoordMap::new(RatFunc::var()).expect("t is nonconstant")
    }

    pub fn map(&self) -> &RatFunc {
        &self.map
    }

    /// λ′
    pub fn d1(&self) -> &RatFunc {
        &self.d1
    }

    /// λ″
    pub fn d2(&self) -> &RatFunc {
        &self.d2
    }

    /// λ″/λ′
    pub fn log_d1(&self) -> RatFunc {
        self.d2.checked_div(&self.d1).expect("λ′ ≢ 0 for nonconstant λ")
    }

    pub fn schwarzian(&self) -> RatFunc {
        scalar_schwarzian(&self.map).expect("nonconstant")
    }

    /// `f ∘ λ`. Never fails because λ is nonconstant.
    pub fn pull(&self, f: &RatFunc) -> RatFunc {
        f.compose(&self.map).expect("composition with nonconstant map")
    }

    pub fn pull_mat(&self, m: &crate::algebra::RatMat) -> crate::algebra::RatMat {
        m.map(|f| self.pull(f))
    }
}
