use super::connection::{curvature, gauge_act_connection, Connection};
use super::CoordMap;
use crate::algebra::{int, rat, RatFunc, RatMat, Rational};
use crate::error::{Error, Result};

/// Coefficients `(A, q)` of `ψ″ = 2Aψ′ + qψ`. The eccentricity is fixed at ½.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub a: RatMat,
    pub q: RatMat,
}

impl Pair {
    pub fn new(a: RatMat, q: RatMat) -> Result<Self> {
        if a.dim() != q.dim() {
            return Err(Error::DimensionMismatch(a.dim(), q.dim()));
        }
        Ok(Pair { a, q })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn eccentricity() -> Rational {
        rat(1, 2)
    }

    pub fn connection(&self) -> Connection {
        Connection::new(self.a.clone(), Self::eccentricity())
    }

    /// `F_A = A′ − A²`.
    pub fn curvature(&self) -> RatMat {
        curvature(&self.connection()).expect("e = 1/2")
    }
}

/// `𝒮_{A,q} = 2(F_A − q) = 2(A′ − A² − q)`.
pub fn matrix_schwarzian(p: &Pair) -> RatMat {
    (&p.curvature() - &p.q).scale_rational(&int(2))
}

/// Gauge transform of a pair by `ψ = g ψ̃`:
/// `A^g = g⁻¹Ag − g⁻¹g′`, `q^g = g⁻¹qg + 2g⁻¹Ag′ − g⁻¹g″`.
pub fn gauge_transform_pair(g: &RatMat, p: &Pair) -> Result<Pair> {
    if g.dim() != p.dim() {
        return Err(Error::DimensionMismatch(g.dim(), p.dim()));
    }
    let g_inv = g.inverse().map_err(|_| Error::SingularGauge)?;
    let g1 = g.derivative();
    let g2 = g1.derivative();
    let a = &(&(&g_inv * &p.a) * g) - &(&g_inv * &g1);
    let a_g1 = &p.a * &g1;
    let q = &(&(&(&g_inv * &p.q) * g) + &(&g_inv * &a_g1).scale_rational(&int(2))) - &(&g_inv * &g2);
    Pair::new(a, q)
}

/// `u ⋆ (A, q) = (A + u, q − uA − Au − u² + u′)`.
pub fn star_act(u: &RatMat, p: &Pair) -> Result<Pair> {
    if u.dim() != p.dim() {
        return Err(Error::DimensionMismatch(u.dim(), p.dim()));
    }
    let a = &p.a + u;
    let q = &(&(&(&p.q - &(u * &p.a)) - &(&p.a * u)) - &(u * u)) + &u.derivative();
    Pair::new(a, q)
}

/// `(u ⋆ P)^g = (g⁻¹ug) ⋆ (P^g)`.
pub fn gauge_star_compat_check(u: &RatMat, g: &RatMat, p: &Pair) -> Result<bool> {
    let lhs = gauge_transform_pair(g, &star_act(u, p)?)?;
    let g_inv = g.inverse().map_err(|_| Error::SingularGauge)?;
    let u_g = &(&g_inv * u) * g;
    let rhs = star_act(&u_g, &gauge_transform_pair(g, p)?)?;
    Ok(lhs == rhs)
}

/// With `q := (g″ − 2Ag′)g⁻¹`, so that `g″ = 2Ag′ + qg`, check
/// `F_{g⁻¹•A} = g⁻¹(F_A − q)g`.
pub fn main_lemma_check(g: &RatMat, c: &Connection) -> Result<bool> {
    if c.e != Pair::eccentricity() {
        return Err(Error::InvalidArgument("main lemma requires eccentricity 1/2".into()));
    }
    let g_inv = g.inverse().map_err(|_| Error::SingularGauge)?;
    let g1 = g.derivative();
    let q = &(&g1.derivative() - &(&c.a * &g1).scale_rational(&int(2))) * &g_inv;
    let moved = gauge_act_connection(&g_inv, c)?;
    let lhs = curvature(&moved)?;
    let rhs = &(&g_inv * &(&curvature(c)? - &q)) * g;
    Ok(lhs == rhs)
}

/// `[tr(B), tr(B²), …, tr(B^rmax)]`.
pub fn characteristic_invariants(b: &RatMat, rmax: usize) -> Result<Vec<RatFunc>> {
    if rmax == 0 {
        return Err(Error::InvalidArgument("rmax must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(rmax);
    let mut power = b.clone();
    for r in 1..=rmax {
        if r > 1 {
            power = &power * b;
        }
        out.push(power.trace());
    }
    Ok(out)
}

/// Move a pair to a new chart `t = λ(τ)` and constant frame `T`:
/// `A_j = T(λ′(A∘λ) + ½(λ″/λ′)I)T⁻¹`, `q_j = (λ′)² T(q∘λ)T⁻¹`.
pub fn coord_change_pair(p: &Pair, lambda: &CoordMap, frame: &RatMat) -> Result<Pair> {
    if frame.dim() != p.dim() {
        return Err(Error::DimensionMismatch(frame.dim(), p.dim()));
    }
    if !frame.is_constant() {
        return Err(Error::SingularFrameChange);
    }
    let frame_inv = frame.inverse().map_err(|_| Error::SingularFrameChange)?;
    let n = p.dim();
    let a_local = &lambda.pull_mat(&p.a).scale(lambda.d1())
        + &RatMat::scalar(n, lambda.log_d1().scale(&Pair::eccentricity()));
    let q_local = lambda.pull_mat(&p.q).scale(&lambda.d1().pow(2));
    Pair::new(&(frame * &a_local) * &frame_inv, &(frame * &q_local) * &frame_inv)
}
