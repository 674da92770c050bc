use std::fmt;

use schwarzian_core::algebra::{int, rat, Poly, RatFunc, RatMat, Rational};
use schwarzian_core::calculus::{
    characteristic_invariants, curvature_anomaly_check, curvature_gauge_defect, gauge_star_compat_check,
    gauge_transform_pair, main_lemma_check, matrix_schwarzian, scalar_schwarzian, schwarzian_chain_rule_check,
    star_act, wronskian_weight_check, Connection, CoordMap, Pair,
};
use schwarzian_core::check::Check;
use schwarzian_core::mass_spring::{
    clock_invariance_check, harmonic_quantum_check, integrate_system, projective_curvature, quadratic_energy,
    reparametrize_system, two_mass_stiffness, SpringSystem,
};
use schwarzian_core::modular::{chazy_check, ramanujan_check, serre_check, wronskian_curvature_check};
use schwarzian_core::periods::{
    cubic_dataset, cubic_pipeline_on, dedekind_dataset, dedekind_pipeline_on, genus2_dataset,
    genus2_expected_schwarzian, genus2_schwarzian_check_on, Target, CUBIC_SCHWARZIAN, DEDEKIND_SCHWARZIAN,
    GENUS2_SCHWARZIAN,
};
use schwarzian_core::random::{InstanceGen, DEFAULT_SEED};
use schwarzian_core::{Error, Result};

use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    All,
    Core,
    Modular,
    Dedekind,
    Genus2,
    #[value(name = "cubic3fold")]
    Cubic3fold,
    Chazy,
    Gauge,
    Star,
    Wronskian,
    MassSpring,
}

impl Suite {
    /// Every concrete suite in report order.
    pub const ORDER: [Suite; 10] = [
        Suite::Core,
        Suite::Modular,
        Suite::Dedekind,
        Suite::Genus2,
        Suite::Cubic3fold,
        Suite::Chazy,
        Suite::Gauge,
        Suite::Star,
        Suite::Wronskian,
        Suite::MassSpring,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Core => "core",
            Suite::Modular => "modular",
            Suite::Dedekind => "dedekind",
            Suite::Genus2 => "genus2",
            Suite::Cubic3fold => "cubic3fold",
            Suite::Chazy => "chazy",
            Suite::Gauge => "gauge",
            Suite::Star => "star",
            Suite::Wronskian => "wronskian",
            Suite::MassSpring => "mass-spring",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::ORDER.to_vec(),
            s => vec![s],
        }
    }

    /// Suites with a built-in dataset that can be deliberately broken.
    pub fn has_fixture(self) -> bool {
        matches!(self, Suite::Dedekind | Suite::Genus2 | Suite::Cubic3fold)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    pub step: f64,
    /// Dataset-backed suite whose stored target is replaced by a wrong value.
    pub perturb: Option<Suite>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            order: 64,
            trials: 200,
            seed: DEFAULT_SEED,
            step: 1e-3,
            perturb: None,
        }
    }
}

/// Runs the suites concurrently and returns records in suite order.
pub fn run_suites(suites: &[Suite], cfg: &Config) -> Result<Vec<CheckReport>> {
    let mut list: Vec<Suite> = suites.iter().flat_map(|s| s.expand()).collect();
    list.sort();
    list.dedup();
    let results: Vec<Result<Vec<CheckReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = list.iter().map(|&s| scope.spawn(move || run_suite(s, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, cfg: &Config) -> Result<Vec<CheckReport>> {
    let broken = cfg.perturb == Some(suite);
    let checks = match suite {
        Suite::All => return run_suites(&[Suite::All], cfg),
        Suite::Core => core_suite(cfg)?,
        Suite::Modular => {
            let mut c = ramanujan_check(cfg.order)?;
            c.extend(serre_check(cfg.order)?);
            c
        }
        Suite::Dedekind => {
            let mut ds = dedekind_dataset();
            if broken {
                ds = ds.with_target(DEDEKIND_SCHWARZIAN, Target::Func(RatFunc::one()));
            }
            dedekind_pipeline_on(&ds)?
        }
        Suite::Genus2 => {
            let mut ds = genus2_dataset();
            if broken {
                let bump = RatMat::from_fn(2, |i, j| if (i, j) == (1, 0) { RatFunc::one() } else { RatFunc::zero() });
                ds = ds.with_target(GENUS2_SCHWARZIAN, Target::Mat(&genus2_expected_schwarzian() + &bump));
            }
            genus2_schwarzian_check_on(&ds)?
        }
        Suite::Cubic3fold => {
            let mut ds = cubic_dataset();
            if broken {
                ds = ds.with_target(CUBIC_SCHWARZIAN, Target::Func(RatFunc::var()));
            }
            cubic_pipeline_on(&ds)?
        }
        Suite::Chazy => chazy_check(cfg.order)?,
        Suite::Gauge => gauge_suite(cfg),
        Suite::Star => star_suite(cfg),
        Suite::Wronskian => wronskian_suite(cfg)?,
        Suite::MassSpring => mass_spring_suite(cfg)?,
    };
    Ok(checks.into_iter().map(|c| CheckReport::from_check(suite.name(), c)).collect())
}

/// Runs `trials` seeded instances of an exact law.
fn law(name: &str, anchor: &str, cfg: &Config, mut instance: impl FnMut(&mut InstanceGen) -> Result<bool>) -> Check {
    let mut gen = InstanceGen::new(cfg.seed);
    let mut passed = 0usize;
    let mut first_failure = None;
    for i in 0..cfg.trials {
        match instance(&mut gen) {
            Ok(true) => passed += 1,
            Ok(false) => {
                first_failure.get_or_insert(format!("; first failure at instance {i}"));
            }
            Err(e) => {
                first_failure.get_or_insert(format!("; instance {i} errored: {e}"));
            }
        }
    }
    let n = cfg.trials;
    Check::new(
        name,
        anchor,
        passed == n,
        format!("{n}/{n} instances, seed {}", cfg.seed),
        format!("{passed}/{n} instances, seed {}{}", cfg.seed, first_failure.unwrap_or_default()),
    )
}

fn random_pair(gen: &mut InstanceGen) -> Pair {
    Pair::new(gen.ratmat(2), gen.ratmat(2)).expect("2x2")
}

fn core_suite(cfg: &Config) -> Result<Vec<Check>> {
    let mut checks = vec![
        law("Q(t) field axioms", "infrastructure", cfg, |g| {
            let (a, b, c) = (g.ratfunc(), g.ratfunc(), g.nonzero());
            let assoc = &(&a + &b) + &c == &a + &(&b + &c) && &(&a * &b) * &c == &a * &(&b * &c);
            let distrib = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
            let inverse = &c * &c.inv()? == RatFunc::one() && &(&a + &b) - &b == a;
            Ok(assoc && distrib && inverse)
        }),
        law("matrix inverse", "infrastructure", cfg, |g| {
            let m = g.invertible(2);
            Ok(&m * &m.inverse()? == RatMat::identity(2))
        }),
        law("Schwarzian Mobius invariance S(M o f) = S(f)", "sec:classical-ode-schwarzian", cfg, |g| {
            let f = g.nonconstant();
            let m = g.mobius();
            Ok(scalar_schwarzian(&m.compose(&f)?)? == scalar_schwarzian(&f)?)
        }),
        law("Schwarzian chain rule", "sec:classical-ode-schwarzian", cfg, |g| {
            let f = g.nonconstant();
            let lambda = CoordMap::new(g.nonconstant())?;
            schwarzian_chain_rule_check(&f, &lambda)
        }),
    ];
    for (label, e) in [("1/2", rat(1, 2)), ("1", int(1)), ("2", int(2))] {
        checks.push(law(&format!("curvature anomaly law, e = {label}"), "def:quantum-curvature", cfg, |g| {
            let c = Connection::new(g.ratmat(2), e.clone());
            let lambda = CoordMap::new(g.nonconstant())?;
            curvature_anomaly_check(&c, &lambda)
        }));
    }
    checks.push(non_covariance_witness()?);
    Ok(checks)
}

/// `A = [[0, 1], [0, 0]]`, `g = diag(t, 1)`, `e = ½`: `F_A = 0` but
/// `F_{g•A} = diag(−2/t², 0)`.
fn non_covariance_witness() -> Result<Check> {
    let a = RatMat::from_rows(vec![
        vec![RatFunc::zero(), RatFunc::one()],
        vec![RatFunc::zero(), RatFunc::zero()],
    ])?;
    let g = RatMat::diag(vec![RatFunc::var(), RatFunc::one()]);
    let defect = curvature_gauge_defect(&g, &Connection::new(a, rat(1, 2)))?;
    let want = RatMat::diag(vec![RatFunc::var().powi(-2)?.scale(&int(-2)), RatFunc::zero()]);
    Ok(Check::new(
        "F_{g.A} != g F_A g^-1 for A = [[0,1],[0,0]], g = diag(t,1)",
        "rem:curvature-not-gauge-invariant",
        !defect.is_zero() && defect == want,
        want.to_string(),
        defect.to_string(),
    ))
}

fn gauge_suite(cfg: &Config) -> Vec<Check> {
    vec![
        law("conjugation law F_{A^g} - q^g = g^-1 (F_A - q) g", "lem:gauge-action-on-q", cfg, |gen| {
            let p = random_pair(gen);
            let g = gen.invertible(2);
            let moved = gauge_transform_pair(&g, &p)?;
            Ok(matrix_schwarzian(&moved) == &(&g.inverse()? * &matrix_schwarzian(&p)) * &g)
        }),
        law("gauge action law (P^g)^h = P^{gh}", "def:gauge-action", cfg, |gen| {
            let p = random_pair(gen);
            let (g, h) = (gen.invertible(2), gen.invertible(2));
            Ok(gauge_transform_pair(&h, &gauge_transform_pair(&g, &p)?)? == gauge_transform_pair(&(&g * &h), &p)?)
        }),
        law("main lemma with q = (g'' - 2Ag')g^-1", "lem:gauge-curvature-ehalf", cfg, |gen| {
            let a = gen.ratmat(2);
            let g = gen.invertible(2);
            main_lemma_check(&g, &Connection::new(a, Pair::eccentricity()))
        }),
        law("characteristic invariants tr(S^r), r = 1..3, gauge independent", "cor:charpoly-well-defined", cfg, |gen| {
            let p = random_pair(gen);
            let g = gen.invertible(2);
            let moved = gauge_transform_pair(&g, &p)?;
            Ok(characteristic_invariants(&matrix_schwarzian(&moved), 3)?
                == characteristic_invariants(&matrix_schwarzian(&p), 3)?)
        }),
    ]
}

fn star_suite(cfg: &Config) -> Vec<Check> {
    vec![
        law("star group law v*(u*P) = (u+v)*P", "lem:star-is-action", cfg, |gen| {
            let p = random_pair(gen);
            let (u, v) = (gen.ratmat(2), gen.ratmat(2));
            Ok(star_act(&v, &star_act(&u, &p)?)? == star_act(&(&u + &v), &p)?)
        }),
        law("S_{A,q} invariant under star", "lem:FA-q-invariant-star", cfg, |gen| {
            let p = random_pair(gen);
            let u = gen.ratmat(2);
            Ok(matrix_schwarzian(&star_act(&u, &p)?) == matrix_schwarzian(&p))
        }),
        law("gauge/star compatibility (u*P)^g = (g^-1 u g)*P^g", "lem:gauge-star-compatible", cfg, |gen| {
            let p = random_pair(gen);
            let u = gen.ratmat(2);
            let g = gen.invertible(2);
            gauge_star_compat_check(&u, &g, &p)
        }),
    ]
}

fn wronskian_suite(cfg: &Config) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in [2usize, 3] {
        checks.push(law(
            &format!("Wronskian weight law (lambda')^{} for n = {n}", n * (n - 1) / 2),
            "def:quantum-m-differential",
            cfg,
            |g| {
                let fs: Vec<RatFunc> = (0..n).map(|_| g.ratfunc()).collect();
                let lambda = CoordMap::new(g.mobius())?;
                wronskian_weight_check(&fs, &lambda)
            },
        ));
    }
    checks.extend(wronskian_curvature_check(cfg.order)?);
    Ok(checks)
}

fn scalar_mat(c: Rational) -> RatMat {
    RatMat::scalar(1, RatFunc::constant(c))
}

fn within(name: &str, anchor: &str, value: f64, tol: f64) -> Check {
    Check::new(name, anchor, value <= tol, format!("<= {tol:e}"), format!("{value:.3e}"))
}

fn mass_spring_suite(cfg: &Config) -> Result<Vec<Check>> {
    let h = cfg.step;
    let two_mass = SpringSystem::undamped(two_mass_stiffness(&int(1), &int(1))?);
    let damped = SpringSystem::new(scalar_mat(rat(-1, 10)), scalar_mat(int(-1)))?;
    let quadratic_clock = CoordMap::new(RatFunc::from_poly(Poly::from_coeffs(vec![int(0), int(1), rat(1, 4)])))?;
    let mobius_clock = CoordMap::new(RatFunc::new(Poly::from_ints(&[0, 4]), Poly::from_ints(&[4, -1]))?)?;
    let (psi2, v2) = ([1.0, 0.0], [0.0, 0.5]);

    let mut checks = vec![law(
        "projective curvature is traceless and tensorial under reparametrization",
        "eq:proj-curvature",
        cfg,
        |g| {
            let s = SpringSystem::new(g.ratmat(2), g.ratmat(2))?;
            let lambda = CoordMap::new(g.mobius())?;
            let r = projective_curvature(&s);
            let moved = projective_curvature(&reparametrize_system(&s, &lambda));
            Ok(r.trace().is_zero() && moved == lambda.pull_mat(&r).scale(&lambda.d1().pow(2)))
        },
    )];

    let unit = SpringSystem::undamped(scalar_mat(int(-1)));
    let traj = integrate_system(&unit, &[1.0], &[0.0], 0.0, std::f64::consts::PI, h)?;
    let (_, psi, _) = traj.last().expect("nonempty trajectory");
    checks.push(within(
        &format!("unit oscillator |psi(pi) + 1|, h = {h}"),
        "eq:mass-spring-single",
        (psi[0] + 1.0).abs(),
        1e-8,
    ));

    let traj = integrate_system(&two_mass, &psi2, &v2, 0.0, 10.0, h)?;
    let e0 = quadratic_energy(&two_mass.q, 0.0, &psi2, &v2);
    let drift = traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(t, (p, v))| (quadratic_energy(&two_mass.q, *t, p, v) - e0).abs())
        .fold(0.0, f64::max);
    checks.push(within(
        &format!("two-mass energy drift on [0, 10], h = {h}"),
        "eq:two-mass-matrix-second-order",
        drift,
        1e-6,
    ));

    type ClockCase<'a> = (&'a str, &'a SpringSystem, &'a CoordMap, &'a [f64], &'a [f64]);
    let clock_cases: [ClockCase; 2] = [
        ("two-mass, lambda = tau + tau^2/4", &two_mass, &quadratic_clock, &psi2, &v2),
        ("damped scalar, lambda = tau/(1 - tau/4)", &damped, &mobius_clock, &[1.0], &[0.0]),
    ];
    for (label, s, lambda, psi0, v0) in clock_cases {
        let dev = clock_invariance_check(s, lambda, psi0, v0, (0.0, 1.0), h)?;
        checks.push(within(&format!("clock invariance, {label}, h = {h}"), "sec:mass-spring-system", dev, 1e-6));
        let coarse = clock_invariance_check(s, lambda, psi0, v0, (0.0, 1.0), 0.2)?;
        let fine = clock_invariance_check(s, lambda, psi0, v0, (0.0, 1.0), 0.1)?;
        let factor = coarse / fine;
        checks.push(Check::new(
            format!("convergence factor under step halving, {label}, h = 0.2 -> 0.1"),
            "sec:mass-spring-system",
            factor >= 12.0,
            ">= 12",
            format!("{factor:.2}"),
        ));
    }

    checks.extend(harmonic_quantum_check(&int(1), &Poly::var(), 32)?);
    checks.extend(harmonic_quantum_check(&int(2), &Poly::from_ints(&[0, 1, 1]), 32)?);
    Ok(checks)
}

/// Parses the `--perturb` value; only dataset-backed suites qualify.
pub fn check_perturb(s: Suite) -> std::result::Result<Suite, Error> {
    if s.has_fixture() {
        Ok(s)
    } else {
        Err(Error::InvalidArgument(format!("suite {s} has no perturbable dataset")))
    }
}
