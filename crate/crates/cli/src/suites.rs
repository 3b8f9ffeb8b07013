//! Verification suites behind `blaschke verify`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use blaschke_core::extremal::{
    classify_extremal, extremal_product, extremal_set, symmetric_product, verify_uniqueness_structure, ExtremalKind,
};
use blaschke_core::hypergeo::{
    check_chu_vandermonde, check_contiguous, check_gegenbauer_relation, check_kappa, check_reciprocal_transform,
    check_roots_in_disk, check_roots_on_circle, check_wronskian_identity, extremal_numerator_params, theta_grid,
    HypergeoParams, IdentityReport,
};
use blaschke_core::prescribe::{construct, feasibility, Case};
use blaschke_core::rational::{format_rational, int, rat};
use blaschke_core::{BlaschkeProduct, Error, Rational, RationalPoly, Tolerances};
use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Inequalities,
    Extremal,
    Prescribe,
    All,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

type Outcome = Result<String, String>;

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Recorder {
            suite,
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, outcome: Outcome) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

pub fn run(suite: Suite, seed: u64, tol: &Tolerances) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(identities(tol));
    }
    if matches!(suite, Suite::Inequalities | Suite::All) {
        out.extend(inequalities(seed, tol));
    }
    if matches!(suite, Suite::Extremal | Suite::All) {
        out.extend(extremal(tol));
    }
    if matches!(suite, Suite::Prescribe | Suite::All) {
        out.extend(prescribe(seed));
    }
    out
}

pub fn table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
    let mut s = format!("{:<12} {:<width$} {:<6} detail\n", "suite", "check", "status");
    for c in checks {
        writeln!(s, "{:<12} {:<width$} {:<6} {}", c.suite, c.name, c.status(), c.detail).unwrap();
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    writeln!(s, "{passed}/{} checks passed", checks.len()).unwrap();
    s
}

fn nu_grid() -> Vec<Rational> {
    vec![rat(-1, 2), rat(-1, 4), rat(1, 4), rat(1, 2), int(1), int(2), int(5)]
}

fn exact(reports: Vec<IdentityReport>) -> Outcome {
    let count = reports.len();
    match reports.into_iter().find(|r| !r.holds()) {
        Some(bad) => Err(format!("{} off by {}", bad.name, format_rational(&bad.max_deviation()))),
        None => Ok(format!("{count} exact identities")),
    }
}

fn identity_family(n: usize, nu: &Rational, tol: &Tolerances) -> Result<Vec<IdentityReport>, String> {
    let mut reports = Vec::new();
    let (b, c) = extremal_numerator_params(n, nu);
    let h_params = HypergeoParams::new(n, nu + int(1), -int(n as i64) - nu).map_err(err)?;
    reports.extend(check_contiguous(&h_params).map_err(err)?);
    let shifted_ok =
        HypergeoParams::new(n, b.clone(), &c + int(1)).is_ok() && HypergeoParams::new(n + 1, b.clone(), c.clone()).is_ok();
    if shifted_ok {
        reports.extend(check_contiguous(&HypergeoParams::new(n, b.clone(), c.clone()).map_err(err)?).map_err(err)?);
    }
    reports.push(check_wronskian_identity(n, &(nu + int(1))).map_err(err)?);
    reports.push(check_chu_vandermonde(n, nu).map_err(err)?);
    reports.push(check_reciprocal_transform(n, &b, &c).map_err(err)?);
    reports.push(check_kappa(n, nu).map_err(err)?);
    let ep = extremal_product(n, nu).map_err(err)?;
    reports.extend(verify_uniqueness_structure(&ep, tol).map_err(err)?.identities);
    Ok(reports)
}

fn identities(tol: &Tolerances) -> Vec<Check> {
    let mut r = Recorder::new("identities");
    for n in 1..=12 {
        for nu in nu_grid() {
            let name = format!("hypergeometric family n={n} nu={}", format_rational(&nu));
            r.record(name, identity_family(n, &nu, tol).and_then(exact));
        }
    }
    for lambda in [rat(-2, 5), rat(1, 2), int(1), int(3)] {
        let name = format!("roots on circle n<=20 lambda={}", format_rational(&lambda));
        let outcome = (1..=20)
            .map(|n| {
                check_roots_on_circle(n, &lambda, tol.circle)?;
                check_gegenbauer_relation(n, &lambda, &theta_grid(64), tol.identity).map(|g| g.max_deviation)
            })
            .collect::<Result<Vec<f64>, Error>>()
            .map(|devs| format!("Gegenbauer deviation <= {:e}", devs.iter().cloned().fold(0.0, f64::max)))
            .map_err(err);
        r.record(name, outcome);
    }
    for nu in nu_grid() {
        let name = format!("numerator roots in disk n<=20 nu={}", format_rational(&nu));
        let outcome = (1..=20)
            .map(|n| check_roots_in_disk(n, &nu, 0.0).map(|rep| rep.max_modulus))
            .collect::<Result<Vec<f64>, Error>>()
            .map(|m| format!("max modulus {}", m.iter().cloned().fold(0.0, f64::max)))
            .map_err(err);
        r.record(name, outcome);
    }
    r.checks
}

fn random_product(rng: &mut ChaCha8Rng, degree: usize, radius: f64) -> BlaschkeProduct {
    let zeros = (0..degree)
        .map(|_| Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI)))
        .collect();
    BlaschkeProduct::from_zeros(zeros, Complex64::from_polar(1.0, rng.gen_range(-PI..PI))).expect("zeros inside the disk")
}

fn inequalities(seed: u64, tol: &Tolerances) -> Vec<Check> {
    let mut r = Recorder::new("inequalities");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let products: Vec<BlaschkeProduct> = (0..200).map(|i| random_product(&mut rng, 1 + i % 8, 0.95)).collect();

    let outcome = products
        .iter()
        .map(|b| b.check_main_inequality(tol).map(|rep| rep.left_slack.min(rep.right_slack)))
        .collect::<Result<Vec<f64>, Error>>()
        .map(|s| format!("200 products, worst slack {:e}", s.iter().cloned().fold(f64::INFINITY, f64::min)))
        .map_err(err);
    r.record("main inequality", outcome);

    let mut worst: f64 = 0.0;
    let mut outcome = Ok(());
    for b in &products {
        match b.extrema(0) {
            Ok(e) => worst = worst.max((e.mean - b.degree() as f64).abs()),
            Err(e) => outcome = Err(err(e)),
        }
    }
    r.record(
        "circle mean equals degree",
        outcome.and_then(|_| {
            if worst <= tol.mean {
                Ok(format!("worst deviation {worst:e}"))
            } else {
                Err(format!("mean off by {worst:e}"))
            }
        }),
    );

    let mut worst_lifted: f64 = 0.0;
    let mut worst_weights: f64 = 0.0;
    let mut outcome = Ok(());
    for b in products.iter().take(100) {
        let lambda = Complex64::from_polar(1.0, rng.gen_range(-PI..PI));
        match b.lifted_residue_sum(lambda, tol) {
            Ok(s) => worst_lifted = worst_lifted.max((s - 1.0).abs()),
            Err(e) => outcome = Err(err(e)),
        }
        match b.times_z().residue_weights(lambda, tol) {
            Ok(set) => {
                let total: f64 = set.weights.unwrap_or_default().iter().sum();
                worst_weights = worst_weights.max((total - 1.0).abs());
            }
            Err(e) => outcome = Err(err(e)),
        }
    }
    r.record(
        "residue sums",
        outcome.and_then(|_| {
            if worst_lifted <= tol.residue && worst_weights <= tol.residue {
                Ok(format!("lifted {worst_lifted:e}, weights {worst_weights:e}"))
            } else {
                Err(format!("lifted {worst_lifted:e}, weights {worst_weights:e}"))
            }
        }),
    );

    let mut outcome: Outcome = Ok(String::new());
    let mut worst_semigroup: f64 = 0.0;
    for (i, b) in products.iter().take(50).enumerate() {
        if b.zeros().iter().all(|a| a.norm() < 1e-12) {
            continue;
        }
        let cap = 1.0 / b.zeros().iter().map(|a| a.norm()).fold(0.0, f64::max);
        let pair = b
            .scale_zeros(0.3 * cap)
            .and_then(|s| s.extrema(0))
            .and_then(|lo| b.scale_zeros(0.7 * cap).and_then(|s| s.extrema(0)).map(|hi| (lo, hi)));
        match pair {
            Ok((lo, hi)) if lo.max < hi.max && lo.min > hi.min => {}
            Ok((lo, hi)) => {
                outcome = Err(format!(
                    "product {i}: M {} -> {}, m {} -> {}",
                    lo.max, hi.max, lo.min, hi.min
                ))
            }
            Err(e) => outcome = Err(err(e)),
        }
        match b.check_semigroup_average(0.5, tol) {
            Ok(rep) => worst_semigroup = worst_semigroup.max(rep.max_deviation),
            Err(e) => outcome = Err(format!("product {i}: {e}")),
        }
    }
    r.record(
        "monotone scaling and semigroup average",
        outcome.map(|_| format!("50 products, semigroup deviation {worst_semigroup:e}")),
    );
    r.checks
}

fn close(value: f64, want: f64, tol: f64, what: &str) -> Result<(), String> {
    if (value - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what} = {value}, expected {want}"))
    }
}

fn extremal(tol: &Tolerances) -> Vec<Check> {
    let mut r = Recorder::new("extremal");

    r.record("n=2 nu=1 coefficients and extrema", (|| {
        let ep = extremal_product(2, &int(1)).map_err(err)?;
        if ep.numerator != RationalPoly::from_ints(&[1, 3, 6]) || ep.denominator() != RationalPoly::from_ints(&[6, 3, 1]) {
            return Err("coefficients differ from (1,3,6)/(6,3,1)".into());
        }
        let e = ep.product.extrema(8192).map_err(err)?;
        close(e.max, 3.0, 1e-9, "M")?;
        close(e.min, 1.0, 1e-9, "m")?;
        close(e.mean, 2.0, tol.mean, "mean")?;
        Ok(format!("M = {}, m = {}", e.max, e.min))
    })());

    for (nu, want_max, want_min) in [(int(5), 20.0, 2.5), (rat(-1, 4), 20.0, 14.75)] {
        let name = format!("n=15 nu={} extrema", format_rational(&nu));
        r.record(name, (|| {
            let ep = extremal_product(15, &nu).map_err(err)?;
            let e = ep.product.extrema(8192).map_err(err)?;
            close(e.max, want_max, 1e-6, "M")?;
            close(e.min, want_min, 1e-6, "m")?;
            Ok(format!("M = {}, m = {}", e.max, e.min))
        })());
    }

    r.record("extremal sets", (|| {
        let mut count = 0;
        for n in [1, 2, 5, 15] {
            for nu in nu_grid() {
                let ep = extremal_product(n, &nu).map_err(err)?;
                extremal_set(&ep, tol).map_err(|e| format!("n={n} nu={}: {e}", format_rational(&nu)))?;
                count += 1;
            }
        }
        Ok(format!("{count} products, two computations agree"))
    })());

    r.record("predicted extrema grid", (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=12 {
            for nu in nu_grid() {
                let ep = extremal_product(n, &nu).map_err(err)?;
                let e = ep.product.extrema(0).map_err(err)?;
                let (max, min) = (
                    blaschke_core::rational::to_f64(&ep.spec.predicted_max),
                    blaschke_core::rational::to_f64(&ep.spec.predicted_min),
                );
                worst = worst.max((e.max - max).abs()).max((e.min - min).abs());
            }
        }
        if worst <= 1e-8 {
            Ok(format!("worst deviation {worst:e}"))
        } else {
            Err(format!("worst deviation {worst:e}"))
        }
    })());

    r.record("classification", (|| {
        let ep = extremal_product(2, &int(1)).map_err(err)?;
        let c = classify_extremal(&ep.product, 1e-8).map_err(err)?;
        if c.kind != Some(ExtremalKind::First) {
            return Err(format!("small example classified as {:?}", c.kind));
        }
        let s = symmetric_product(2, 0.5).map_err(err)?;
        let c = classify_extremal(&s.product, 1e-8).map_err(err)?;
        if c.is_extremal {
            return Err("symmetric product classified as extremal".into());
        }
        let maps = ep.product.classify_circle_maps(tol).map_err(err)?;
        if !(maps.lower_is_homeomorphism() && !maps.lower_is_diffeomorphism()) {
            return Err("boundary case is not homeomorphism-only".into());
        }
        Ok("extremal, non-extremal and boundary cases".into())
    })());

    r.record("symmetric product closed form", (|| {
        let s = symmetric_product(2, 0.5).map_err(err)?;
        let e = s.product.extrema(0).map_err(err)?;
        close(e.max, 10.0 / 3.0, 1e-8, "M")?;
        close(e.min, 1.2, 1e-8, "m")?;
        close(e.max * e.min, 4.0, 1e-8, "M m")?;
        Ok(format!("M = {}, m = {}", e.max, e.min))
    })());
    r.checks
}

fn prescribe(seed: u64) -> Vec<Check> {
    let mut r = Recorder::new("prescribe");
    let fixed: [(usize, f64, f64, Case); 3] = [
        (2, 1.0, 3.0, Case::FirstKind),
        (15, 2.5, 20.0, Case::FirstKind),
        (3, 1.6, 4.0, Case::Homotopy),
    ];
    for (n, min, max, case) in fixed {
        r.record(format!("construct ({n}, {min}, {max})"), (|| {
            let c = construct(n, min, max).map_err(err)?;
            if c.case != case {
                return Err(format!("routed to case {}", c.case.number()));
            }
            Ok(format!("case {}, achieved ({}, {})", c.case.number(), c.achieved.max, c.achieved.min))
        })());
    }
    r.record("reject (3, 2.9, 4)", match construct(3, 2.9, 4.0) {
        Err(Error::Infeasible(msg)) if msg.contains("2.75") => Ok(msg),
        Err(e) => Err(format!("unexpected error {e}")),
        Ok(_) => Err("infeasible triple accepted".into()),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    r.record("10 random strict triples", (|| {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let n = rng.gen_range(2..=6usize);
            let nf = n as f64;
            let max = nf + rng.gen_range(0.05..3.0);
            let lower = nf / (max - nf + 1.0);
            let upper = nf - 1.0 + nf / max;
            let min = lower + rng.gen_range(0.05..0.95) * (upper - lower);
            if !feasibility(n, min, max).feasible {
                return Err(format!("({n}, {min}, {max}) generated infeasible"));
            }
            let c = construct(n, min, max).map_err(|e| format!("({n}, {min}, {max}): {e}"))?;
            worst = worst.max((c.achieved.max - max).abs()).max((c.achieved.min - min).abs());
        }
        Ok(format!("worst miss {worst:e}"))
    })());
    r.checks
}
