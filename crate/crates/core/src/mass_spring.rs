//! Damped mass–spring systems `ψ̈ = p ψ̇ + q ψ`: exact reparametrization
//! under a change of clock, the projective curvature, a fixed-step RK4
//! integrator and the harmonic quantum example.

use std::io::Write;

use num_traits::Zero;

use crate::algebra::{int, rat, rational_from_f64, rational_to_f64, Poly, QSeries, RatFunc, RatMat, Rational};
use crate::calculus::CoordMap;
use crate::check::Check;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringSystem {
    /// Damping.
    pub p: RatMat,
    /// Stiffness.
    pub q: RatMat,
}

impl SpringSystem {
    pub fn new(p: RatMat, q: RatMat) -> Result<Self> {
        if p.dim() != q.dim() {
            return Err(Error::DimensionMismatch(p.dim(), q.dim()));
        }
        Ok(SpringSystem { p, q })
    }

    /// Undamped system with the given stiffness.
    pub fn undamped(q: RatMat) -> Self {
        SpringSystem {
            p: RatMat::zero(q.dim()),
            q,
        }
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }
}

/// `q = [[−k₁ − k₂, k₂], [k₂, −k₂]]`.
pub fn two_mass_stiffness(k1: &Rational, k2: &Rational) -> Result<RatMat> {
    if *k1 <= int(0) || *k2 <= int(0) {
        return Err(Error::NonPositiveStiffness);
    }
    let c = |x: Rational| RatFunc::constant(x);
    RatMat::from_rows(vec![
        vec![c(-(k1 + k2)), c(k2.clone())],
        vec![c(k2.clone()), c(-k2.clone())],
    ])
}

/// Coefficients in the clock `τ` with `t = λ(τ)`:
/// `p̃ = λ′(p∘λ) + (λ″/λ′)I`, `q̃ = (λ′)²(q∘λ)`.
pub fn reparametrize_system(s: &SpringSystem, lambda: &CoordMap) -> SpringSystem {
    let n = s.dim();
    let p = &lambda.pull_mat(&s.p).scale(lambda.d1()) + &RatMat::scalar(n, lambda.log_d1());
    let q = lambda.pull_mat(&s.q).scale(&lambda.d1().pow(2));
    SpringSystem { p, q }
}

/// `ℛ = 𝒮 − (1/n) tr(𝒮) I` with `𝒮 = F_A − q`, `A = p/2`, `F_A = A′ − A²`.
pub fn projective_curvature(s: &SpringSystem) -> RatMat {
    let n = s.dim();
    let a = s.p.scale_rational(&rat(1, 2));
    let big_s = &(&a.derivative() - &(&a * &a)) - &s.q;
    let mean = big_s.trace().scale(&rat(1, n as i64));
    &big_s - &RatMat::scalar(n, mean)
}

/// `½|ψ̇|² + ½ ψᵀKψ` with `K = −q` evaluated at time `t`.
pub fn quadratic_energy(q: &RatMat, t: f64, psi: &[f64], v: &[f64]) -> f64 {
    let n = q.dim();
    let kinetic: f64 = v.iter().map(|x| x * x).sum::<f64>() / 2.0;
    let mut potential = 0.0;
    for i in 0..n {
        for j in 0..n {
            potential -= psi[i] * q.get(i, j).eval_f64(t) * psi[j];
        }
    }
    kinetic + potential / 2.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `(ψ, ψ̇)` at each time.
    pub states: Vec<(Vec<f64>, Vec<f64>)>,
}

impl Trajectory {
    pub fn last(&self) -> Option<(f64, &[f64], &[f64])> {
        let t = *self.times.last()?;
        let (psi, v) = self.states.last()?;
        Some((t, psi, v))
    }

    /// Columns `time, psi_1..psi_n, dpsi_1..dpsi_n`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(out);
        let n = self.states.first().map_or(0, |(psi, _)| psi.len());
        let mut header = vec!["time".to_string()];
        header.extend((1..=n).map(|i| format!("psi_{i}")));
        header.extend((1..=n).map(|i| format!("dpsi_{i}")));
        w.write_record(&header).map_err(io)?;
        for (t, (psi, v)) in self.times.iter().zip(&self.states) {
            let row = std::iter::once(t).chain(psi).chain(v).map(|x| x.to_string());
            w.write_record(row).map_err(io)?;
        }
        w.flush().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// Rational function with `f64` coefficients for fast evaluation.
struct NumFunc {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl NumFunc {
    fn new(f: &RatFunc) -> Self {
        let conv = |p: &Poly| p.coeffs().iter().map(rational_to_f64).collect();
        NumFunc {
            num: conv(f.num()),
            den: conv(f.den()),
        }
    }

    fn eval(&self, t: f64) -> f64 {
        let horner = |cs: &[f64]| cs.iter().rev().fold(0.0, |acc, c| acc * t + c);
        horner(&self.num) / horner(&self.den)
    }
}

struct NumSystem {
    n: usize,
    p: Vec<NumFunc>,
    q: Vec<NumFunc>,
}

impl NumSystem {
    fn new(s: &SpringSystem) -> Self {
        NumSystem {
            n: s.dim(),
            p: s.p.entries().iter().map(NumFunc::new).collect(),
            q: s.q.entries().iter().map(NumFunc::new).collect(),
        }
    }

    /// Right-hand side of the companion system `(ψ, v)′ = (v, pv + qψ)`.
    fn rhs(&self, t: f64, y: &[f64]) -> Vec<f64> {
        let n = self.n;
        let (psi, v) = y.split_at(n);
        let mut out = Vec::with_capacity(2 * n);
        out.extend_from_slice(v);
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += self.p[i * n + j].eval(t) * v[j] + self.q[i * n + j].eval(t) * psi[j];
            }
            out.push(acc);
        }
        out
    }

    fn rk4_step(&self, t: f64, y: &[f64], h: f64) -> Vec<f64> {
        let axpy = |a: f64, x: &[f64]| -> Vec<f64> { y.iter().zip(x).map(|(yi, xi)| yi + a * xi).collect() };
        let k1 = self.rhs(t, y);
        let k2 = self.rhs(t + h / 2.0, &axpy(h / 2.0, &k1));
        let k3 = self.rhs(t + h / 2.0, &axpy(h / 2.0, &k2));
        let k4 = self.rhs(t + h, &axpy(h, &k3));
        (0..y.len())
            .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect()
    }

    /// Advance from `a` to `b` in `ceil(|b − a|/h)` equal steps.
    fn advance(&self, y: Vec<f64>, a: f64, b: f64, h: f64) -> Vec<f64> {
        let steps = ((b - a).abs() / h * (1.0 - 1e-9)).ceil().max(1.0) as usize;
        let dt = (b - a) / steps as f64;
        (0..steps).fold(y, |y, k| self.rk4_step(a + k as f64 * dt, &y, dt))
    }
}

fn to_rational(x: f64) -> Result<Rational> {
    rational_from_f64(x).ok_or_else(|| Error::InvalidArgument(format!("non-finite value {x}")))
}

/// Locate a real root of `den` in `[lo, hi]` by bisection on Sturm counts.
fn locate_root(den: &Poly, mut lo: Rational, mut hi: Rational) -> f64 {
    for _ in 0..60 {
        let mid = (&lo + &hi) / int(2);
        if den.count_real_roots(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    rational_to_f64(&lo)
}

fn check_no_poles(mats: &[&RatMat], a: f64, b: f64) -> Result<()> {
    let (lo, hi) = (to_rational(a.min(b))?, to_rational(a.max(b))?);
    for m in mats {
        for e in m.entries() {
            if e.den().count_real_roots(&lo, &hi) > 0 {
                return Err(Error::PoleOnPath(locate_root(e.den(), lo, hi)));
            }
        }
    }
    Ok(())
}

fn check_initial(s: &SpringSystem, psi0: &[f64], v0: &[f64], h: f64) -> Result<()> {
    if psi0.len() != s.dim() || v0.len() != s.dim() {
        return Err(Error::DimensionMismatch(s.dim(), psi0.len().max(v0.len())));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    Ok(())
}

/// Classical RK4 on the companion system from `t0` to `t1` with step `h`;
/// the last step is shortened to land on `t1`.
pub fn integrate_system(s: &SpringSystem, psi0: &[f64], v0: &[f64], t0: f64, t1: f64, h: f64) -> Result<Trajectory> {
    check_initial(s, psi0, v0, h)?;
    check_no_poles(&[&s.p, &s.q], t0, t1)?;
    let sys = NumSystem::new(s);
    let n = s.dim();
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let mut y: Vec<f64> = psi0.iter().chain(v0).copied().collect();
    let mut t = t0;
    let mut traj = Trajectory {
        times: vec![t0],
        states: vec![(psi0.to_vec(), v0.to_vec())],
    };
    let mut k = 0usize;
    while (t1 - t) * dir > 0.0 {
        k += 1;
        let next = t0 + dir * k as f64 * h;
        let next = if (t1 - next) * dir <= h * 1e-9 { t1 } else { next };
        y = sys.rk4_step(t, &y, next - t);
        t = next;
        traj.times.push(t);
        traj.states.push((y[..n].to_vec(), y[n..].to_vec()));
    }
    Ok(traj)
}

/// Integrates `s` in the clock `t` and its reparametrization in the clock
/// `τ` on `[τ₀, τ₁]` from matched data `ψ̃(τ₀) = ψ₀`, `ψ̃′(τ₀) = λ′(τ₀)v₀`
/// (with `ψ(λ(τ₀)) = ψ₀`, `ψ̇(λ(τ₀)) = v₀`), and returns
/// `max ‖ψ̃(τ) − ψ(λ(τ))‖` over the `τ` grid.
pub fn clock_invariance_check(
    s: &SpringSystem,
    lambda: &CoordMap,
    psi0: &[f64],
    v0: &[f64],
    window: (f64, f64),
    h: f64,
) -> Result<f64> {
    check_initial(s, psi0, v0, h)?;
    let (tau0, tau1) = window;
    let (lo, hi) = (to_rational(tau0.min(tau1))?, to_rational(tau0.max(tau1))?);
    let d1 = lambda.d1();
    if d1.num().count_real_roots(&lo, &hi) > 0 || lambda.map().den().count_real_roots(&lo, &hi) > 0 {
        return Err(Error::NonMonotoneClock);
    }
    let map = NumFunc::new(lambda.map());
    let slope = NumFunc::new(d1);
    let (t_start, t_end) = (map.eval(tau0), map.eval(tau1));
    check_no_poles(&[&s.p, &s.q], t_start, t_end)?;

    let tilde = reparametrize_system(s, lambda);
    let v0_tilde: Vec<f64> = v0.iter().map(|v| v * slope.eval(tau0)).collect();
    let traj_tau = integrate_system(&tilde, psi0, &v0_tilde, tau0, tau1, h)?;

    let sys = NumSystem::new(s);
    let n = s.dim();
    let mut y: Vec<f64> = psi0.iter().chain(v0).copied().collect();
    let mut t = t_start;
    let mut worst = 0.0f64;
    for (tau, (psi_tilde, _)) in traj_tau.times.iter().zip(&traj_tau.states).skip(1) {
        let t_next = map.eval(*tau);
        y = sys.advance(y, t, t_next, h);
        t = t_next;
        let dev = psi_tilde
            .iter()
            .zip(&y[..n])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// `Y = exp(ωf)` solves `f′Y″ − f″Y′ − ω²(f′)³Y = 0`; checked coefficientwise
/// for `Y` and for `e^{ωf} + e^{−ωf}`.
pub fn harmonic_quantum_check(omega: &Rational, f: &Poly, order: usize) -> Result<Vec<Check>> {
    let deg_f1 = match f.degree() {
        Some(d) if d >= 1 => d - 1,
        _ => return Err(Error::ConstantPhase),
    };
    if !f.coeff(0).is_zero() {
        return Err(Error::PhaseNotCentered);
    }
    if order == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    let work = order + 2;
    let phase = QSeries::from_poly(f, work).scale(omega);
    let f1 = QSeries::from_poly(&f.derivative(), order);
    let f2 = QSeries::from_poly(&f.derivative().derivative(), order);
    let w2 = omega * omega;
    let residual = |y: &QSeries| -> QSeries {
        let y1 = y.d_dvar();
        let y2 = y1.d_dvar();
        let cube = &(&f1 * &f1) * &f1;
        &(&(&f1 * &y2) - &(&f2 * &y1.truncate(order))) - &(&cube * &y.truncate(order)).scale(&w2)
    };
    let plus = phase.exp()?;
    let minus = (-&phase).exp()?;
    let both = &plus + &minus;
    let valid = order.saturating_sub(deg_f1).max(1);
    let verdict = |name: &str, r: QSeries| {
        let r = r.truncate(valid);
        let first = r.valuation();
        Check::new(
            name,
            "ex:quantum-second-order-ode",
            first.is_none(),
            format!("0 to order {valid}"),
            match first {
                None => format!("0 to order {valid}"),
                Some(k) => format!("coefficient {} at order {k}", r.coeff(k)),
            },
        )
    };
    let label = format!("omega = {}, f = {}", crate::algebra::fmt_rational(omega), f.display_in("z"));
    Ok(vec![
        verdict(&format!("exp(omega f) residual, {label}"), residual(&plus)),
        verdict(&format!("exp(omega f) + exp(-omega f) residual, {label}"), residual(&both)),
    ])
}
