//! Acceptance criteria AC1-AC11, one PASS/FAIL line each.
//!
//! Criteria are checked exactly as stated. A criterion listed in
//! `KNOWN_UNATTAINABLE` may fail; every other one must pass.

use std::f64::consts::PI;

use extfd::extbessel::*;
use extfd::exthyp::kummer_generating_check;
use extfd::fracdiff::*;
use extfd::numkernel::{gamma, log_gamma, Scaled};
use extfd::transforms::*;
use extfd::{ExactComplex, C64};
use extfd_cli::audit::{exit_code, run_audit, Status};
use extfd_cli::parse::parse_rational;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// AC7 asks the 40-term bilateral sum to match the printed closed form,
/// which carries a spurious factor z; with the factor removed the exact
/// 40-term truncation at (2,-4) still differs by 1.48e-7 relative.
const KNOWN_UNATTAINABLE: &[&str] = &["AC7"];

type Outcome = (bool, String);

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

fn example_rf() -> RationalFunction<C64> {
    RationalFunction::new(vec![c(1.0), c(2.0)], vec![(C64::new(-3.0, 1.0), 3), (C64::new(-3.0, -1.0), 3)]).unwrap()
}

fn frac_params() -> ExtFracParams {
    ExtFracParams::real(1.5, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5)
}

fn ac1() -> Outcome {
    let expect = [C64::new(0.0, 15.0 / 16.0), C64::new(15.0 / 16.0, -0.125), C64::new(-0.25, -0.625)];
    let rf = example_rf();
    let terms = complex_pfd(&rf);
    let parsed = parse_rational("(2*z+1)/(z^2+6*z+10)^3").unwrap().rf;
    let pterms = complex_pfd(&parsed);
    let mut coeff_err = 0.0f64;
    for set in [&terms, &pterms] {
        for (k, e) in expect.iter().enumerate() {
            let at = set.iter().find(|t| t.order == k + 1 && (t.pole - C64::new(-3.0, 1.0)).norm() < 1e-12);
            let conj = set.iter().find(|t| t.order == k + 1 && (t.pole - C64::new(-3.0, -1.0)).norm() < 1e-12);
            coeff_err = coeff_err.max(at.map_or(f64::INFINITY, |t| (t.coeff - e).norm()));
            coeff_err = coeff_err.max(conj.map_or(f64::INFINITY, |t| (t.coeff - e.conj()).norm()));
        }
    }
    let mut recomb = 0.0f64;
    for z in [0.0, 1.0, -1.0] {
        recomb = recomb.max(rel(eval_terms(&terms, &c(z)), rf.eval(&c(z))));
        recomb = recomb.max(rel(eval_terms(&pterms, &c(z)), rf.eval(&c(z))));
    }
    // exact arithmetic over Q(i)
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let ec = |a: (i64, i64), b: (i64, i64)| ExactComplex::new(r(a.0, a.1), r(b.0, b.1));
    let exact = RationalFunction::new(
        vec![ec((1, 1), (0, 1)), ec((2, 1), (0, 1))],
        vec![(ec((-3, 1), (1, 1)), 3), (ec((-3, 1), (-1, 1)), 3)],
    )
    .unwrap();
    let ex = complex_pfd(&exact);
    let exact_ok = ex[0].coeff == ec((0, 1), (15, 16))
        && ex[1].coeff == ec((15, 16), (-1, 8))
        && ex[2].coeff == ec((-1, 4), (-5, 8));
    (
        coeff_err <= 1e-12 && recomb <= 1e-12 && exact_ok,
        format!("coefficient error {coeff_err:.2e}, recombination {recomb:.2e}, exact rational match {exact_ok}"),
    )
}

fn ac2() -> Outcome {
    let p = BesselParams::real(0.0, 0.5);
    let (mut closed_err, mut num_err) = (0.0f64, 0.0f64);
    for s in [3.0f64, 4.0, 5.0] {
        let closed = laplace_ext_bessel_closed(p, c(s)).unwrap();
        closed_err = closed_err.max((closed - c(1.0 / (s * s - 2.0 * s).sqrt())).norm());
        num_err = num_err.max((laplace_ext_bessel_numeric(p, c(s)).unwrap().value - closed).norm());
    }
    let mut cor_err = 0.0f64;
    for s in [2.0f64, 3.0] {
        let oracle = laplace_numeric(
            |x| {
                if x > 600.0 {
                    return Ok(Scaled::zero());
                }
                Ok(Scaled::from_value(bessel_i_classical(c(0.0), c(x))?))
            },
            c(s),
            0.0,
        )
        .unwrap()
        .value;
        let closed = laplace_modified_bessel_closed(c(0.0), c(s)).unwrap();
        cor_err = cor_err
            .max((closed - c(1.0 / (s * s - 1.0).sqrt())).norm())
            .max((closed - oracle).norm());
    }
    (
        closed_err <= 1e-12 && num_err <= 1e-7 && cor_err <= 1e-7,
        format!("closed vs 1/sqrt(s^2-2s) {closed_err:.2e}, vs quadrature {num_err:.2e}, v = 0 corollary {cor_err:.2e}"),
    )
}

fn ac3() -> Outcome {
    let mut worst = 0.0f64;
    for (a, b, s) in [(2.0, 3.0, 1.0), (1.5, 2.0, 0.5), (3.0, 4.0, 1.5)] {
        let chk = mellin_1f1_check(c(a), c(b), c(s)).unwrap();
        let direct = gamma(c(a - s)).unwrap() * gamma(c(b)).unwrap() * gamma(c(s)).unwrap()
            / (gamma(c(a)).unwrap() * gamma(c(b - s)).unwrap());
        worst = worst.max(chk.abs_discrepancy).max((chk.closed_form - direct).norm());
    }
    (worst <= 1e-6, format!("max absolute difference {worst:.2e}"))
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let v = C64::new(rng.gen_range(0.0..3.0), rng.gen_range(-1.0..1.0));
        let q = c(rng.gen_range(0.0..3.0));
        let x = c(rng.gen_range(-8.0..8.0));
        let p = BesselParams::new(v, q);
        let i = ext_bessel(p, x, EvalRoute::Integral).unwrap();
        let s = ext_bessel(p, x, EvalRoute::Series).unwrap();
        let h = ext_bessel(p, x, EvalRoute::Hypergeometric).unwrap();
        for (a, b) in [(i, s), (i, h), (s, h)] {
            worst = worst.max(rel(a, b));
        }
    }
    let recs = run_audit(&["power-series".into(), "hypergeometric-relation".into()]).unwrap();
    let statuses_ok = recs.iter().all(|r| r.status == Status::VerifiedCorrected);
    (
        worst <= 1e-8 && statuses_ok,
        format!(
            "worst pairwise relative difference {worst:.2e} over 200 samples; audit statuses {:?}",
            recs.iter().map(|r| r.status.label()).collect::<Vec<_>>()
        ),
    )
}

fn ac5() -> Outcome {
    let mut worst = 0.0f64;
    for v in [0.0, 0.5, 1.0, 2.0] {
        for x in [-5.0, -1.0, 0.5, 3.0] {
            let a = ext_bessel(BesselParams::real(v, 0.5), c(x), EvalRoute::Integral).unwrap();
            let b = c(x).exp() * bessel_i_classical(c(v), c(x)).unwrap();
            worst = worst.max(rel(a, b));
        }
    }
    let mut half = 0.0f64;
    for x in [0.1f64, 1.0, 5.0] {
        let a = ext_bessel(BesselParams::real(0.5, 0.5), c(x), EvalRoute::Integral).unwrap();
        half = half.max(rel(a, c((2.0 * x).exp_m1() / (2.0 * PI * x).sqrt())));
    }
    let neg = rel(
        ext_bessel_closed_half(c(0.5), c(-1.0)).unwrap(),
        ext_bessel(BesselParams::real(0.5, 0.5), c(-1.0), EvalRoute::Integral).unwrap(),
    );
    (
        worst <= 1e-10 && half <= 1e-10 && neg <= 1e-10,
        format!("q = 1/2 reduction {worst:.2e}, closed half form {half:.2e}, principal branch at x = -1 {neg:.2e}"),
    )
}

fn ac6() -> Outcome {
    let x = 1e4;
    let mut worst = 0.0f64;
    for (v, q) in [(0.0, 0.5), (1.0, 1.0), (0.5, 1.5)] {
        let p = BesselParams::real(v, q);
        let k = (log_gamma(c(v + q)).unwrap() - log_gamma(c(v + 0.5)).unwrap()).exp().norm() / (2.0 * PI).sqrt();
        let i = ext_bessel(p, c(-x), EvalRoute::Integral).unwrap();
        worst = worst.max((i.norm() * x.powf(q) / k - 1.0).abs());
    }
    (worst <= 0.01, format!("max relative deviation {worst:.2e} at x = 1e4"))
}

fn ac7() -> Outcome {
    let (mut bil_printed, mut bil_corrected) = (0.0f64, 0.0f64);
    for (x, z) in [(1.0, 5.0), (2.0, -4.0)] {
        let s = generating_bilateral(c(x), c(z), 40).unwrap();
        let printed = c((2.0 / (PI * x)).sqrt() * z * (x * z).exp() / (z - 2.0));
        bil_printed = bil_printed.max(rel(s, printed));
        bil_corrected = bil_corrected.max(rel(s, generating_bilateral_closed(c(x), c(z), Form::Corrected).unwrap()));
    }
    let (mut gf_printed, mut gf_corrected) = (0.0f64, 0.0f64);
    for (v, q, x, t) in [(1.0, 1.0, 4.0, 0.5), (0.5, 0.5, 2.0, 0.3)] {
        let p = BesselParams::real(v, q);
        let s = generating_shift(p, c(x), c(t), 30).unwrap();
        gf_printed = gf_printed.max(rel(s, generating_shift_rhs(p, c(x), c(t), Form::Printed).unwrap()));
        gf_corrected = gf_corrected.max(rel(s, generating_shift_rhs(p, c(x), c(t), Form::Corrected).unwrap()));
    }
    let mut gfc = 0.0f64;
    for z in [-0.6, 0.3, 0.6] {
        for x in [-2.0, 0.5, 2.0] {
            let (l, r) = kummer_generating_check(c(1.5), c(2.5), c(x), c(z), 150).unwrap();
            gfc = gfc.max(rel(l, r));
        }
    }
    (
        bil_printed <= 1e-8 && gf_printed <= 1e-7 && gfc <= 1e-8,
        format!(
            "bilateral vs printed {bil_printed:.2e} (vs corrected {bil_corrected:.2e}); shift vs printed {gf_printed:.2e} (vs corrected {gf_corrected:.2e}); 1F1 generating {gfc:.2e}"
        ),
    )
}

fn ac8() -> Outcome {
    let p2 = ExtFracParams::real(2.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
    let power = rel(
        frac_deriv_power(c(2.0), c(1.0), &p2).unwrap(),
        ext_frac_deriv(|t| c(t * t), c(1.0), &p2).unwrap(),
    );
    let params = frac_params();
    let xi = C64::new(-3.0, 1.0);
    let shifted = rel(
        frac_deriv_shifted_power(c(-1.0), xi, c(0.5), &params).unwrap(),
        ext_frac_deriv(|t| (c(t) - xi).inv(), c(0.5), &params).unwrap(),
    );
    let lin = rel(
        frac_deriv_shifted_power(c(1.0), c(2.0), c(0.5), &params).unwrap(),
        frac_deriv_power(c(1.0), c(0.5), &params).unwrap() - 2.0 * frac_deriv_power(c(0.0), c(0.5), &params).unwrap(),
    );
    let d = frac_deriv_rational(&example_rf(), c(0.3), &params).unwrap().value;
    let num = ext_frac_deriv(|t| c((2.0 * t + 1.0) / (t * t + 6.0 * t + 10.0).powi(3)), c(0.3), &params).unwrap();
    let rational = rel(d, num);
    (
        power <= 1e-6 && shifted <= 1e-6 && lin <= 1e-6 && rational <= 1e-6 && d.im.abs() < 1e-10,
        format!(
            "power {power:.2e}, shifted power {shifted:.2e}, (z-2) linearity {lin:.2e}, rational {rational:.2e}, imaginary part {:.2e}",
            d.im
        ),
    )
}

fn random_poly(rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn poly_at(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * t + a)
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut rules, mut bridge) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let (a, b) = (random_poly(&mut rng), random_poly(&mut rng));
        let params = ExtFracParams::real(
            rng.gen_range(1.1..2.5),
            rng.gen_range(0.2..1.5),
            rng.gen_range(0.5..2.0),
            1.0,
            1.0,
            0.5,
            0.5,
        );
        let z = c(rng.gen_range(0.2..1.0));
        let f = |t: f64| poly_at(&a, t).exp();
        let g = |t: f64| poly_at(&b, t).exp();
        let mf = mefd(f, z, &params).unwrap();
        let mg = mefd(g, z, &params).unwrap();
        for k in [-2.0, 0.5, 3.0] {
            rules = rules.max(rel(mefd(|t| f(t).powf(k), z, &params).unwrap(), mf.powf(k)));
        }
        rules = rules.max(rel(mefd(|t| f(t) * g(t), z, &params).unwrap(), mf * mg));
        rules = rules.max(rel(mefd(|t| f(t) / g(t), z, &params).unwrap(), mf / mg));
        let d = ext_frac_deriv(|t| c(poly_at(&a, t)), z, &params).unwrap();
        bridge = bridge.max((mf.ln() - d).norm() / d.norm().max(1.0));
    }
    (rules <= 1e-8 && bridge <= 1e-8, format!("rules (a)-(c) {rules:.2e}, bridge {bridge:.2e}"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> RationalFunction<C64> {
    let mut poles = Vec::new();
    let mut deg = 0;
    while deg == 0 || (deg < 8 && rng.gen_bool(0.5)) {
        let m = rng.gen_range(1..=2usize);
        if rng.gen_bool(0.5) && deg + 2 * m <= 8 {
            let z = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.3..2.0));
            poles.push((z, m));
            poles.push((z.conj(), m));
            deg += 2 * m;
        } else if deg + m <= 8 {
            poles.push((c(rng.gen_range(-3.0..3.0)), m));
            deg += m;
        } else {
            break;
        }
    }
    let num: Vec<C64> = (0..rng.gen_range(1..=deg)).map(|_| c(rng.gen_range(-2.0..2.0))).collect();
    RationalFunction::new(num, poles).unwrap()
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut recomb, mut pairing) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let rf = random_rational(&mut rng);
        let terms = complex_pfd(&rf);
        for _ in 0..5 {
            let z = C64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-0.2..0.2) + 2.5);
            recomb = recomb.max(rel(eval_terms(&terms, &z), rf.eval(&z)));
        }
        for t in terms.iter().filter(|t| t.pole.im > 0.0) {
            let m = terms
                .iter()
                .find(|u| u.order == t.order && (u.pole - t.pole.conj()).norm() < 1e-14)
                .map_or(f64::INFINITY, |u| (u.coeff - t.coeff.conj()).norm() / t.coeff.norm().max(1e-300));
            pairing = pairing.max(m);
        }
    }
    let (mut rec, mut dup) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let z = C64::new(rng.gen_range(0.1..50.0), rng.gen_range(-20.0..20.0));
        rec = rec.max(rel((log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp(), z));
        let lhs = log_gamma(2.0 * z).unwrap();
        let rhs = (2.0 * z - 1.0) * std::f64::consts::LN_2 + log_gamma(z).unwrap() + log_gamma(z + 0.5).unwrap()
            - 0.5 * PI.ln();
        dup = dup.max(((lhs - rhs).exp() - 1.0).norm());
    }
    let params = frac_params();
    let mut lin = 0.0f64;
    for _ in 0..20 {
        let (a, b) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let z = c(rng.gen_range(0.2..1.0));
        let f = |t: f64| (2.0 * t).sin();
        let g = |t: f64| 1.0 / (1.0 + t * t);
        let lhs = ext_frac_deriv(|t| c(a * f(t) + b * g(t)), z, &params).unwrap();
        let rhs = a * ext_frac_deriv(|t| c(f(t)), z, &params).unwrap() + b * ext_frac_deriv(|t| c(g(t)), z, &params).unwrap();
        lin = lin.max((lhs - rhs).norm() / rhs.norm().max(1.0));
    }
    (
        recomb <= 1e-10 && pairing <= 1e-12 && rec <= 1e-12 && dup <= 1e-11 && lin <= 1e-9,
        format!(
            "PFD recombination {recomb:.2e}, conjugate pairing {pairing:.2e}, Gamma recurrence {rec:.2e}, duplication {dup:.2e}, linearity {lin:.2e}"
        ),
    )
}

fn ac11() -> Outcome {
    let recs = run_audit(&[]).unwrap();
    let code = exit_code(&recs);
    let required = [
        "integral-forms", "power-series", "hypergeometric-relation", "closed-half-order", "q-half-reduction",
        "order-zero-example", "asymptotic-limit", "bessel-asymptotic-remark", "bilateral-generating",
        "shift-generating", "kummer-generating", "beta-kernel-routes", "case1-chaudhry-beta", "case2-lee-beta",
        "case3-luo-beta", "case4-parmar-beta", "gauss-integral-representation", "confluent-integral-representation",
        "case1-lee-gauss", "case1-lee-confluent", "case2-ozergin-beta", "gamma-extension", "mellin-bessel",
        "mellin-1f1", "mellin-beta", "laplace-bessel", "laplace-i0", "laplace-modified-bessel", "fd-power",
        "fd-shifted-power", "reduction-ozarslan", "reduction-riemann-liouville", "reduction-luo",
        "reduction-katugampola", "complex-pfd", "pfd-coefficient-relations", "fd-rational", "fd-example",
        "multiplicative-rl-reduction", "mefd-ozarslan-remark", "mefd-bridge", "mefd-power-corollary",
        "mefd-shifted-corollary", "mefd-rules", "mefd-analytic",
    ];
    let missing: Vec<&str> = required.iter().copied().filter(|id| !recs.iter().any(|r| r.id == *id)).collect();
    let reductions = [
        "case1-chaudhry-beta", "case2-lee-beta", "case3-luo-beta", "case4-parmar-beta", "reduction-ozarslan",
        "reduction-riemann-liouville", "reduction-luo", "reduction-katugampola",
    ];
    let unfitted: Vec<&str> = reductions
        .iter()
        .copied()
        .filter(|id| recs.iter().find(|r| r.id == *id).map(|r| r.status) != Some(Status::FittedConstant))
        .collect();
    let bad: Vec<&str> = recs.iter().filter(|r| r.status == Status::Discrepancy).map(|r| r.id).collect();
    (
        code == 0 && missing.is_empty() && unfitted.is_empty(),
        format!(
            "{} identities, exit code {code}, missing {missing:?}, reductions not fitted {unfitted:?}, discrepancies {bad:?}",
            recs.len()
        ),
    )
}

// Runs without the libtest harness so the report is never captured.
fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
        ("AC11", ac11),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let (ok, detail) = f();
        println!("{name} {}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(name);
        }
    }
    let unexpected: Vec<_> = failed.iter().filter(|n| !KNOWN_UNATTAINABLE.contains(n)).collect();
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
