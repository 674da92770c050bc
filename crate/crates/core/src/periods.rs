//! Period families: the Dedekind elliptic family, a genus-2 hyperelliptic
//! family and a cubic-threefold deformation. Gauss–Manin data and targets
//! are embedded constants; pipelines compare exactly and never adjust a
//! target.

use crate::algebra::{rat, Poly, RatFunc, RatMat, Rational};
use crate::calculus::{coord_change_scalar_ode, eliminate_to_scalar, matrix_schwarzian, CoordMap, Pair, ScalarODE};
use crate::check::Check;
use crate::error::Result;

/// Stored target of a pipeline step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Func(RatFunc),
    Mat(RatMat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyData {
    Gm2x2(RatMat),
    Pair(Pair),
    DiagonalPair {
        a: RatFunc,
        b: RatFunc,
        /// Number of zero diagonal slots followed by number of `(a, b)` slots.
        multiplicities: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDataset {
    pub name: String,
    pub variable: String,
    pub data: FamilyData,
    /// Targets keyed by the label of the equation they come from.
    pub expected: Vec<(String, Target)>,
}

impl FamilyDataset {
    pub fn target(&self, label: &str) -> Option<&Target> {
        self.expected.iter().find(|(l, _)| l == label).map(|(_, t)| t)
    }

    fn func(&self, label: &str) -> RatFunc {
        match self.target(label) {
            Some(Target::Func(f)) => f.clone(),
            other => panic!("dataset {} has no scalar target {label}: {other:?}", self.name),
        }
    }

    fn mat(&self, label: &str) -> RatMat {
        match self.target(label) {
            Some(Target::Mat(m)) => m.clone(),
            other => panic!("dataset {} has no matrix target {label}: {other:?}", self.name),
        }
    }

    /// Replace a stored target. Used to exercise failure reporting.
    pub fn with_target(mut self, label: &str, value: Target) -> Self {
        match self.expected.iter_mut().find(|(l, _)| l == label) {
            Some(slot) => slot.1 = value,
            None => self.expected.push((label.to_string(), value)),
        }
        self
    }
}

fn p(cs: &[i64]) -> Poly {
    Poly::from_ints(cs)
}

fn frac(num: Poly, den: Poly) -> RatFunc {
    RatFunc::new(num, den).expect("nonzero denominator")
}

fn ode_string(ode: &ScalarODE, var: &str) -> String {
    let (big_p, big_q) = ode.monic_form();
    format!("y'' + ({}) y' + ({}) y = 0", big_p.display_in(var), big_q.display_in(var))
}

// ---------------------------------------------------------------- Dedekind

pub const DEDEKIND_SCALAR_G: &str = "prop:dedekind-pf/g";
pub const DEDEKIND_PF: &str = "eq:dedekind-pf";
pub const DEDEKIND_SCHWARZIAN: &str = "eq:dedekind-schwarzian";
pub const DEDEKIND_SCHWARZIAN_SINGLE: &str = "eq:dedekind-schwarzian/single";

/// `d/dg (ω, η)ᵀ = M (ω, η)ᵀ` with `M = [[a, b], [c, −a]]`.
pub fn dedekind_gm_matrix() -> RatMat {
    let den = p(&[0, -108, 4]);
    let a = frac(p(&[18, -1]), den.clone());
    let b = frac(p(&[-3]), p(&[0, -54, 2]));
    let c = frac(p(&[1]), p(&[-216, 8]));
    let d = frac(p(&[-18, 1]), den);
    RatMat::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

/// `g = 27j/(j − 1)`.
pub fn dedekind_pullback_map() -> CoordMap {
    CoordMap::new(frac(p(&[0, 27]), p(&[-1, 1]))).expect("nonconstant")
}

pub fn dedekind_dataset() -> FamilyDataset {
    let scalar_g = ScalarODE::from_monic_form(
        frac(p(&[-27, 2]), p(&[0, -27, 1])),
        frac(p(&[12, 3]), p(&[0, 0, -432, 16])),
    );
    let pf = ScalarODE::from_monic_form(
        frac(p(&[1]), p(&[0, 1])),
        frac(p(&[-4, 31]), p(&[0, 0, 144, -288, 144])),
    );
    let three_term = &(&frac(p(&[3]), p(&[8, -16, 8])) + &frac(p(&[4]), p(&[0, 0, 9])))
        + &frac(p(&[23]), p(&[0, 72, -72]));
    let single = frac(p(&[32, -41, 36]), p(&[0, 0, 72, -144, 72]));
    FamilyDataset {
        name: "dedekind".into(),
        variable: "g".into(),
        data: FamilyData::Gm2x2(dedekind_gm_matrix()),
        expected: vec![
            (DEDEKIND_SCALAR_G.into(), Target::Mat(ode_matrix(&scalar_g))),
            (DEDEKIND_PF.into(), Target::Mat(ode_matrix(&pf))),
            (DEDEKIND_SCHWARZIAN.into(), Target::Func(three_term)),
            (DEDEKIND_SCHWARZIAN_SINGLE.into(), Target::Func(single)),
        ],
    }
}

/// Stores `y″ + P y′ + Q y = 0` as the 1×2 row `(P, Q)` padded to a 2×2 matrix.
fn ode_matrix(ode: &ScalarODE) -> RatMat {
    let (big_p, big_q) = ode.monic_form();
    RatMat::from_rows(vec![vec![big_p, big_q], vec![RatFunc::zero(), RatFunc::zero()]]).expect("2x2")
}

fn ode_from_matrix(m: &RatMat) -> ScalarODE {
    ScalarODE::from_monic_form(m.get(0, 0).clone(), m.get(0, 1).clone())
}

pub fn dedekind_pipeline() -> Result<Vec<Check>> {
    dedekind_pipeline_on(&dedekind_dataset())
}

/// Elimination in `g`, pullback to `j`, Schwarzian of the pulled-back pair.
pub fn dedekind_pipeline_on(ds: &FamilyDataset) -> Result<Vec<Check>> {
    let FamilyData::Gm2x2(gm) = &ds.data else {
        return Err(crate::error::Error::InvalidArgument("expected a Gauss-Manin matrix".into()));
    };
    let in_g = eliminate_to_scalar(gm)?;
    let want_g = ode_from_matrix(&ds.mat(DEDEKIND_SCALAR_G));
    let in_j = coord_change_scalar_ode(&in_g, &dedekind_pullback_map());
    let want_j = ode_from_matrix(&ds.mat(DEDEKIND_PF));
    let schw = in_j.schwarzian();
    let want_schw = ds.func(DEDEKIND_SCHWARZIAN);
    Ok(vec![
        Check::new(
            "elimination of the Gauss-Manin system in g",
            "lem:dedekind-gm",
            in_g == want_g,
            ode_string(&want_g, "g"),
            ode_string(&in_g, "g"),
        ),
        Check::new(
            "pullback under g = 27j/(j-1)",
            DEDEKIND_PF,
            in_j == want_j,
            ode_string(&want_j, "j"),
            ode_string(&in_j, "j"),
        ),
        Check::new(
            "2(F_A - q) = S(tau)(j)",
            DEDEKIND_SCHWARZIAN,
            schw == want_schw,
            want_schw.display_in("j"),
            schw.display_in("j"),
        ),
    ])
}

// ----------------------------------------------------------------- genus 2

pub const GENUS2_SCHWARZIAN: &str = "eq:genus2-matrix-schwarzian";

/// `D(t) = 108t⁵ + 3125`.
pub fn genus2_discriminant() -> Poly {
    p(&[3125, 0, 0, 0, 0, 108])
}

fn over(num: Poly, den: &Poly) -> RatFunc {
    frac(num, den.clone())
}

/// `(A, q)` for `ω″ = 2Aω′ + qω`.
pub fn genus2_pair() -> Pair {
    let d = genus2_discriminant();
    let mono = |c: Rational, k: usize| Poly::monomial(c, k);
    let a = RatMat::from_rows(vec![
        vec![over(p(&[0, 0, 0, 0, -108]), &d), over(p(&[0, 0, -675]), &d)],
        vec![over(p(&[0, 750]), &d), over(p(&[0, 0, 0, 0, -162]), &d)],
    ])
    .expect("2x2");
    let q = RatMat::from_rows(vec![
        vec![over(p(&[0, 0, 0, -27]), &d), over(mono(rat(-275, 2), 1), &d)],
        vec![over(mono(rat(375, 2), 0), &d), over(p(&[0, 0, 0, -33]), &d)],
    ])
    .expect("2x2");
    Pair::new(a, q).expect("equal dimensions")
}

/// The printed matrix Schwarzian over `D(t)²`.
pub fn genus2_expected_schwarzian() -> RatMat {
    let d2 = genus2_discriminant().pow(2);
    RatMat::from_rows(vec![
        vec![
            over(p(&[0, 0, 0, -1518750, 0, 0, 0, 0, 5832]), &d2),
            over(p(&[0, -7578125, 0, 0, 0, 0, 102600]), &d2),
        ],
        vec![
            over(p(&[3515625, 0, 0, 0, 0, -283500]), &d2),
            over(p(&[0, 0, 0, -2831250, 0, 0, 0, 0, -10368]), &d2),
        ],
    ])
    .expect("2x2")
}

pub fn genus2_dataset() -> FamilyDataset {
    FamilyDataset {
        name: "genus2".into(),
        variable: "t".into(),
        data: FamilyData::Pair(genus2_pair()),
        expected: vec![(GENUS2_SCHWARZIAN.into(), Target::Mat(genus2_expected_schwarzian()))],
    }
}

pub fn genus2_schwarzian_check() -> Result<Vec<Check>> {
    genus2_schwarzian_check_on(&genus2_dataset())
}

/// Matrix Schwarzian against the stored target, the shared `D²`
/// denominator, and the first two trace invariants.
pub fn genus2_schwarzian_check_on(ds: &FamilyDataset) -> Result<Vec<Check>> {
    let FamilyData::Pair(pair) = &ds.data else {
        return Err(crate::error::Error::InvalidArgument("expected a pair".into()));
    };
    let s = matrix_schwarzian(pair);
    let want = ds.mat(GENUS2_SCHWARZIAN);
    let d2 = genus2_discriminant().pow(2).monic();
    let shared = s.entries().iter().all(|e| e.den() == &d2);
    let tr = s.trace();
    let tr_printed = want.trace();
    let tr2 = s.pow(2).trace();
    Ok(vec![
        Check::new(
            "matrix Schwarzian of (A, q)",
            GENUS2_SCHWARZIAN,
            s == want,
            want.display_in("t"),
            s.display_in("t"),
        ),
        Check::new(
            "entries share denominator D(t)^2",
            GENUS2_SCHWARZIAN,
            shared,
            d2.display_in("t"),
            s.entries().iter().map(|e| e.den().display_in("t")).collect::<Vec<_>>().join("; "),
        ),
        Check::new(
            "tr(S) equals the sum of the printed diagonal",
            "rem:genus2-characteristic",
            tr == tr_printed,
            tr_printed.display_in("t"),
            tr.display_in("t"),
        ),
        Check::info(
            "tr(S^2)",
            "rem:genus2-characteristic",
            "no closed form stated",
            tr2.display_in("t"),
        ),
        Check::info(
            "family genericity",
            "def:generic-family",
            "assumed, not re-derived",
            "omega_1, omega_2, omega_1', omega_2' taken as a basis where D(t) != 0",
        ),
    ])
}

// ---------------------------------------------------------- cubic threefold

pub const CUBIC_SCHWARZIAN: &str = "eq:cubic-explicit-schwarzian";

/// `a(t) = 3t²/(2(1 − t³))`, `b(t) = t/(1 − t³)`.
pub fn cubic_coefficients() -> (RatFunc, RatFunc) {
    (frac(p(&[0, 0, 3]), p(&[2, 0, 0, -2])), frac(p(&[0, 1]), p(&[1, 0, 0, -1])))
}

pub fn cubic_dataset() -> FamilyDataset {
    let (a, b) = cubic_coefficients();
    let s = frac(p(&[0, 8, 0, 0, 1]), p(&[1, 0, 0, -1]).pow(2).scale(&rat(2, 1)));
    FamilyDataset {
        name: "cubic3fold".into(),
        variable: "t".into(),
        data: FamilyData::DiagonalPair {
            a,
            b,
            multiplicities: (3, 2),
        },
        expected: vec![(CUBIC_SCHWARZIAN.into(), Target::Func(s))],
    }
}

fn diagonal(zeros: usize, copies: usize, f: &RatFunc) -> RatMat {
    let mut d = vec![RatFunc::zero(); zeros];
    d.extend(std::iter::repeat_n(f.clone(), copies));
    RatMat::diag(d)
}

pub fn cubic_pipeline() -> Result<Vec<Check>> {
    cubic_pipeline_on(&cubic_dataset())
}

/// Scalar Schwarzian `s`, the diagonal 5×5 matrix Schwarzian and
/// `tr(𝒮ʳ) = 2sʳ` for `r = 1..5`.
pub fn cubic_pipeline_on(ds: &FamilyDataset) -> Result<Vec<Check>> {
    let FamilyData::DiagonalPair { a, b, multiplicities: (zeros, copies) } = &ds.data else {
        return Err(crate::error::Error::InvalidArgument("expected a diagonal pair".into()));
    };
    let s_want = ds.func(CUBIC_SCHWARZIAN);
    let s = ScalarODE::new(a.clone(), b.clone()).schwarzian();
    let pair = Pair::new(diagonal(*zeros, *copies, a), diagonal(*zeros, *copies, b))?;
    let big_s = matrix_schwarzian(&pair);
    let diag_want = diagonal(*zeros, *copies, &s_want);
    let mut checks = vec![
        Check::new(
            "s = 2(a' - a^2 - b)",
            CUBIC_SCHWARZIAN,
            s == s_want,
            s_want.display_in("t"),
            s.display_in("t"),
        ),
        Check::new(
            "matrix Schwarzian = diag(0,0,0,s,s)",
            "prop:cubic-explicit-diagonal",
            big_s == diag_want,
            diag_want.display_in("t"),
            big_s.display_in("t"),
        ),
    ];
    let mut power = RatMat::identity(big_s.dim());
    for r in 1..=5u32 {
        power = &power * &big_s;
        let tr = power.trace();
        let want = s_want.pow(r).scale(&Rational::from_integer((*copies as i64).into()));
        checks.push(Check::new(
            format!("tr(S^{r}) = 2 s^{r}"),
            "prop:cubic-explicit-diagonal",
            tr == want,
            want.display_in("t"),
            tr.display_in("t"),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn gm_matrix_entries() {
        let m = dedekind_gm_matrix();
        assert_eq!(m.get(0, 0).eval(&int(2)), Some(rat(-2, 25)));
        assert!(m.trace().is_zero());
        let (a, b, c) = (m.get(0, 0), m.get(0, 1), m.get(1, 0));
        assert_eq!(m.det(), &(-&(a * a)) - &(b * c));
    }

    #[test]
    fn dedekind_pipeline_passes() {
        let checks = dedekind_pipeline().unwrap();
        assert_eq!(checks.len(), 3);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }

    #[test]
    fn dedekind_first_derivative_coefficient() {
        let in_g = eliminate_to_scalar(&dedekind_gm_matrix()).unwrap();
        let in_j = coord_change_scalar_ode(&in_g, &dedekind_pullback_map());
        assert_eq!(in_j.monic_form().0, frac(p(&[1]), p(&[0, 1])));
    }

    #[test]
    fn dedekind_schwarzian_forms_agree() {
        let ds = dedekind_dataset();
        assert_eq!(ds.func(DEDEKIND_SCHWARZIAN), ds.func(DEDEKIND_SCHWARZIAN_SINGLE));
        let a = frac(p(&[-1]), p(&[0, 2]));
        let q = frac(p(&[4, -31]), p(&[0, 0, 144, -288, 144]));
        assert_eq!(ScalarODE::new(a, q).schwarzian(), ds.func(DEDEKIND_SCHWARZIAN_SINGLE));
    }

    #[test]
    fn genus2_entries() {
        let pair = genus2_pair();
        let d = genus2_discriminant();
        assert_eq!(d.eval(&int(0)), int(3125));
        assert_eq!(pair.a.get(1, 0), &over(p(&[0, 750]), &d));
        assert_eq!(pair.q.get(1, 0), &over(Poly::constant(rat(375, 2)), &d));
        let s = matrix_schwarzian(&pair);
        assert_eq!(s.get(1, 0), &over(p(&[3515625, 0, 0, 0, 0, -283500]), &d.pow(2)));
    }

    #[test]
    fn genus2_check_passes_and_reports_mismatch() {
        let checks = genus2_schwarzian_check().unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
        let tr_expected = over(p(&[0, 0, 0, -4350000, 0, 0, 0, 0, -4536]), &genus2_discriminant().pow(2));
        assert_eq!(matrix_schwarzian(&genus2_pair()).trace(), tr_expected);

        let mut bad = genus2_expected_schwarzian();
        bad = &bad + &RatMat::from_fn(2, |i, j| if (i, j) == (1, 0) { RatFunc::one() } else { RatFunc::zero() });
        let ds = genus2_dataset().with_target(GENUS2_SCHWARZIAN, Target::Mat(bad));
        let checks = genus2_schwarzian_check_on(&ds).unwrap();
        assert!(!checks[0].passed);
        assert_ne!(checks[0].expected, checks[0].actual);
    }

    #[test]
    fn cubic_values() {
        let (a, _) = cubic_coefficients();
        assert_eq!(a.derivative(), frac(Poly::from_coeffs(vec![int(0), int(3), int(0), int(0), rat(3, 2)]), p(&[1, 0, 0, -1]).pow(2)));
        let s = cubic_dataset().func(CUBIC_SCHWARZIAN);
        assert_eq!(s.eval(&rat(1, 2)), Some(rat(130, 49)));
        let checks = cubic_pipeline().unwrap();
        assert_eq!(checks.len(), 7);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }
}
