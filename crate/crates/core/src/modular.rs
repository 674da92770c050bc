//! Level-one q-expansions: Eisenstein series, the discriminant, the Serre
//! derivative, the Ramanujan identities and the Chazy equation.
//!
//! Throughout, `′` is the normalized derivation `D = q d/dq`, which keeps
//! the truncation order, so every identity is compared on all `N`
//! coefficients.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::algebra::{int, rat, QSeries, Rational};
use crate::check::Check;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 64;

/// A q-expansion tagged with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularSeries {
    pub series: QSeries,
    pub weight: i64,
    pub label: String,
}

impl ModularSeries {
    pub fn new(series: QSeries, weight: i64, label: impl Into<String>) -> Self {
        ModularSeries {
            series,
            weight,
            label: label.into(),
        }
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }
}

/// `σ_r(n) = Σ_{d | n} d^r`.
pub fn sigma(r: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(r);
            let other = n / d;
            if other != d {
                total += BigInt::from(other).pow(r);
            }
        }
        d += 1;
    }
    total
}

fn require_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::OrderTooSmall { min, got: n })
    } else {
        Ok(())
    }
}

/// `E_k = 1 + c_k Σ σ_{k−1}(n) qⁿ` with `c_2 = −24`, `c_4 = 240`, `c_6 = −504`.
pub fn eisenstein(k: u32, order: usize) -> Result<ModularSeries> {
    let factor: i64 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        other => return Err(Error::UnsupportedWeight(other)),
    };
    require_order(order, 2)?;
    let mut coeffs = Vec::with_capacity(order);
    coeffs.push(Rational::one());
    for n in 1..order {
        coeffs.push(Rational::from_integer(sigma(k - 1, n as u64) * factor));
    }
    Ok(ModularSeries::new(QSeries::new(coeffs, order), k as i64, format!("E{k}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMethod {
    /// `q ∏ (1 − qⁿ)^24`
    Product,
    /// `(E₄³ − E₆²)/1728`
    Eisenstein,
}

pub fn delta(order: usize, method: DeltaMethod) -> Result<ModularSeries> {
    require_order(order, 2)?;
    let series = match method {
        DeltaMethod::Product => {
            let mut acc = QSeries::from_ints(&[0, 1], order);
            for n in 1..order {
                let mut factor = vec![Rational::one()];
                factor.resize(n + 1, Rational::zero());
                factor[n] = int(-1);
                let factor = QSeries::new(factor, order);
                for _ in 0..24 {
                    acc = &acc * &factor;
                }
            }
            acc
        }
        DeltaMethod::Eisenstein => {
            let e4 = eisenstein(4, order)?.series;
            let e6 = eisenstein(6, order)?.series;
            (&e4.pow(3) - &e6.pow(2)).scale(&rat(1, 1728))
        }
    };
    Ok(ModularSeries::new(series, 12, "Delta"))
}

/// `∇_a ψ = ψ′ − (k/(2e)) a ψ` for a weight-`k` series and connection `a` of
/// eccentricity `e`. Output weight `k + 2`.
pub fn modular_covariant_derivative(a: &QSeries, e: &Rational, psi: &ModularSeries) -> Result<ModularSeries> {
    if e.is_zero() {
        return Err(Error::ZeroEccentricity);
    }
    let factor = Rational::from_integer(psi.weight.into()) / (e * int(2));
    let series = &psi.series.derive() - &(a * &psi.series).scale(&factor);
    Ok(ModularSeries::new(series, psi.weight + 2, format!("∇{}", psi.label)))
}

/// The Serre derivative `ψ′ − (k/12) E₂ ψ`: covariant derivative for the
/// connection `E₂/6` of eccentricity 1.
pub fn serre_derivative(f: &ModularSeries) -> ModularSeries {
    let e2 = eisenstein(2, f.order().max(2)).expect("weight 2 is supported").series;
    let a = e2.scale(&rat(1, 6));
    modular_covariant_derivative(&a, &int(1), f).expect("e = 1")
}

/// `F_A = A′ − A²/(2e)` on q-series.
pub fn series_curvature(a: &QSeries, e: &Rational) -> Result<QSeries> {
    if e.is_zero() {
        return Err(Error::ZeroEccentricity);
    }
    Ok(&a.derive() - &(a * a).scale(&(e * int(2)).recip()))
}

fn identity_check(name: &str, anchor: &str, lhs: &QSeries, rhs: &QSeries) -> Check {
    match lhs.first_mismatch(rhs) {
        None => Check::new(
            name,
            anchor,
            true,
            format!("equal to order {}", rhs.order()),
            format!("equal to order {}", lhs.order().min(rhs.order())),
        ),
        Some(n) => Check::new(
            name,
            anchor,
            false,
            format!("q^{n} coefficient {}", rhs.coeff(n)),
            format!("q^{n} coefficient {}", lhs.coeff(n)),
        ),
    }
}

fn zero_check(name: &str, anchor: &str, residual: &QSeries) -> Check {
    identity_check(name, anchor, residual, &QSeries::zero(residual.order()))
}

/// `E₂′ = (E₂² − E₄)/12`, `E₄′ = (E₂E₄ − E₆)/3`, `E₆′ = (E₂E₆ − E₄²)/2`.
pub fn ramanujan_check(order: usize) -> Result<Vec<Check>> {
    require_order(order, 8)?;
    let e2 = eisenstein(2, order)?.series;
    let e4 = eisenstein(4, order)?.series;
    let e6 = eisenstein(6, order)?.series;
    let anchor = "sec:modular-forms";
    Ok(vec![
        identity_check(
            "E2' = (E2^2 - E4)/12",
            anchor,
            &e2.derive(),
            &(&(&e2 * &e2) - &e4).scale(&rat(1, 12)),
        ),
        identity_check(
            "E4' = (E2 E4 - E6)/3",
            anchor,
            &e4.derive(),
            &(&(&e2 * &e4) - &e6).scale(&rat(1, 3)),
        ),
        identity_check(
            "E6' = (E2 E6 - E4^2)/2",
            anchor,
            &e6.derive(),
            &(&(&e2 * &e6) - &(&e4 * &e4)).scale(&rat(1, 2)),
        ),
    ])
}

/// Both discriminant constructions, and the Serre derivative images of
/// `E₄`, `E₆` and `Δ`.
pub fn serre_check(order: usize) -> Result<Vec<Check>> {
    require_order(order, 2)?;
    let e4 = eisenstein(4, order)?;
    let e6 = eisenstein(6, order)?;
    let d_prod = delta(order, DeltaMethod::Product)?;
    let d_eis = delta(order, DeltaMethod::Eisenstein)?;
    let anchor = "sec:modular-forms";
    let nabla_e4 = serre_derivative(&e4);
    let nabla_e6 = serre_derivative(&e6);
    let nabla_delta = serre_derivative(&d_prod);
    let weights = Check::new(
        "Serre derivative raises weight by 2",
        anchor,
        nabla_e4.weight == 6 && nabla_e6.weight == 8 && nabla_delta.weight == 14,
        "6, 8, 14",
        format!("{}, {}, {}", nabla_e4.weight, nabla_e6.weight, nabla_delta.weight),
    );
    Ok(vec![
        identity_check("Delta product = (E4^3 - E6^2)/1728", "sec:modular-forms", &d_prod.series, &d_eis.series),
        identity_check("serre(E4) = -E6/3", anchor, &nabla_e4.series, &e6.series.scale(&rat(-1, 3))),
        identity_check(
            "serre(E6) = -E4^2/2",
            anchor,
            &nabla_e6.series,
            &(&e4.series * &e4.series).scale(&rat(-1, 2)),
        ),
        zero_check("serre(Delta) = 0", anchor, &nabla_delta.series),
        weights,
    ])
}

/// Scalar Chazy equation for `u = E₂` and its covariant form with
/// `A = E₂/6`, `e = 1`, including the intermediate closed forms.
pub fn chazy_check(order: usize) -> Result<Vec<Check>> {
    require_order(order, 8)?;
    let e2 = eisenstein(2, order)?.series;
    let e4 = eisenstein(4, order)?.series;
    let e6 = eisenstein(6, order)?.series;
    let anchor = "sec:modular-forms";

    let u1 = e2.derive();
    let u2 = u1.derive();
    let u3 = u2.derive();
    let scalar = &(&u3.scale(&int(2)) - &(&e2 * &u2).scale(&int(2))) + &(&u1 * &u1).scale(&int(3));

    let one = int(1);
    let a = e2.scale(&rat(1, 6));
    let f = ModularSeries::new(series_curvature(&a, &one)?, 4, "F_A");
    let nabla_f = modular_covariant_derivative(&a, &one, &f)?;
    let nabla2_f = modular_covariant_derivative(&a, &one, &nabla_f)?;
    let covariant = &nabla2_f.series + &(&f.series * &f.series).scale(&int(12));

    Ok(vec![
        zero_check("2u''' - 2uu'' + 3(u')^2 = 0 for u = E2", anchor, &scalar),
        identity_check("F_A = -E4/72", "sec:modular-forms", &f.series, &e4.scale(&rat(-1, 72))),
        identity_check("nabla F_A = E6/216", "sec:modular-forms", &nabla_f.series, &e6.scale(&rat(1, 216))),
        identity_check(
            "nabla^2 F_A = -E4^2/432",
            "sec:modular-forms",
            &nabla2_f.series,
            &(&e4 * &e4).scale(&rat(-1, 432)),
        ),
        zero_check("nabla^2 F_A + 12 F_A^2 = 0", "sec:modular-forms", &covariant),
    ])
}

/// Wronskian curvature example for a tuple of weight-`2m` series.
#[derive(Clone, Debug)]
pub struct WronskianCurvature {
    pub wronskian: ModularSeries,
    /// `A = (2/N) Wr′/Wr`, known to one order less than `Wr` per leading zero.
    pub connection: QSeries,
    pub curvature: ModularSeries,
}

/// For `f = (f_1, …, f_n)` of weight `2m`, `Wr(f)` has weight
/// `N = 2mn + n(n−1)`; its Maurer–Cartan connection `A = (2/N)Wr′/Wr`
/// has eccentricity 1 and curvature `F_A = A′ − A²/2` of weight 4.
pub fn wronskian_curvature(fs: &[QSeries], m: i64) -> Result<WronskianCurvature> {
    let n = fs.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty tuple".into()));
    }
    let order = fs.iter().map(QSeries::order).min().unwrap_or(0);
    // Row i holds D^k f_i for k = 0..n.
    let rows: Vec<Vec<QSeries>> = fs
        .iter()
        .map(|f| {
            let mut row = vec![f.truncate(order)];
            for _ in 1..n {
                let next = row.last().expect("nonempty").derive();
                row.push(next);
            }
            row
        })
        .collect();
    let wr = series_det(&rows, order);
    let weight = 2 * m * n as i64 + (n as i64) * (n as i64 - 1);
    let log_d = wr.derive().checked_div(&wr)?;
    let connection = log_d.scale(&Rational::new(2.into(), weight.into()));
    let curvature = series_curvature(&connection, &int(1))?;
    Ok(WronskianCurvature {
        wronskian: ModularSeries::new(wr, weight, "Wr"),
        connection,
        curvature: ModularSeries::new(curvature, 4, "F_A"),
    })
}

/// Leibniz expansion of a small determinant of series.
fn series_det(rows: &[Vec<QSeries>], order: usize) -> QSeries {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut total = QSeries::zero(order);
    for col in 0..n {
        let minor: Vec<Vec<QSeries>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, s)| s.clone()).collect())
            .collect();
        let term = &rows[0][col] * &series_det(&minor, order);
        total = if col % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// Internal consistency of the Wronskian example for `(E₄, E₆)` with
/// `m = 2`: weight bookkeeping and `(N/2)·A·Wr = Wr′` exactly.
pub fn wronskian_curvature_check(order: usize) -> Result<Vec<Check>> {
    require_order(order, 8)?;
    let e4 = eisenstein(4, order)?.series;
    let e6 = eisenstein(6, order)?.series;
    let wc = wronskian_curvature(&[e4, e6], 2)?;
    let anchor = "sec:modular-forms";
    let half_n = Rational::new(wc.wronskian.weight.into(), 2.into());
    let v = wc.wronskian.series.valuation().unwrap_or(0);
    // Compare Wr′ against (N/2)·A·Wr after removing the common q^v factor.
    let shifted = QSeries::new(wc.wronskian.series.derive().coeffs()[v..].to_vec(), wc.connection.order());
    let recon_shifted = QSeries::new(
        {
            let wr_shift = QSeries::new(wc.wronskian.series.coeffs()[v..].to_vec(), wc.connection.order());
            (&wc.connection.scale(&half_n) * &wr_shift).coeffs().to_vec()
        },
        wc.connection.order(),
    );
    Ok(vec![
        Check::new(
            "Wr(E4, E6) has weight 10, F_A has weight 4",
            anchor,
            wc.wronskian.weight == 10 && wc.curvature.weight == 4,
            "10, 4",
            format!("{}, {}", wc.wronskian.weight, wc.curvature.weight),
        ),
        identity_check("(N/2) A Wr = Wr'", anchor, &recon_shifted, &shifted),
    ])
}
