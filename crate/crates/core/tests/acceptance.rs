//! Acceptance run: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines always reach the test log.
//!
//! Criteria 1 and 5 are expected to print FAIL: the printed `<H,H,H>` and
//! the `z1³` coefficient of the potential have the opposite sign to the
//! fixed-point sum. The run aborts only if some other criterion fails, or if
//! 1 or 5 fail for any other reason.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use crepant_core::localization::{
    assemble_even, assembly_odd, invariant_from_series, literal_even, resummed_even, resummed_odd, WeightTable,
};
use crepant_core::pcrc::{
    bracket_sides, bracket_varset, build_cov, build_covbgp, compose, corollary_branch_constant,
    invert, residual_sides, verify_bracket_identity, verify_corollary, verify_corollary_remark,
    verify_residual_thirdderiv, Line,
};
use crepant_core::potentials::{
    classical_part, degree0_triple, g_series, quantum_part, q_slice, standard_varset, symmetry_factor, CohClass,
};
use crepant_core::verify::cubic_monomials;
use crepant_core::{rational, Cyclo, RatFun, Rational, Series, Var};
use num_complex::Complex64;

/// Relative tolerance of the numeric cross-check.
const REL_TOL: f64 = 1e-10;
/// Absolute floor for values that are exactly zero but cancel in floating
/// point (e.g. `<1,1,H>`).
const ABS_TOL: f64 = 1e-14;

const BUDGET_1: Duration = Duration::from_secs(1);
const BUDGET_2: Duration = Duration::from_secs(5);
const BUDGET_3: Duration = Duration::from_secs(10);
const BUDGET_4: Duration = Duration::from_secs(5);
const BUDGET_5: Duration = Duration::from_secs(10);
const BUDGET_6: Duration = Duration::from_secs(30);
const BUDGET_7: Duration = Duration::from_secs(5);
const BUDGET_8: Duration = Duration::from_secs(1);
const BUDGET_9: Duration = Duration::from_secs(10);

/// Evaluation point for rational functions in the cross-check.
const T1: (i64, i64) = (7, 5);
const T2: (i64, i64) = (-3, 11);

struct Outcome {
    pass: bool,
    detail: String,
}

fn q(n: i64, d: i64) -> Rational {
    rational::frac(n, d)
}

fn t1() -> RatFun {
    RatFun::t1()
}

fn t2() -> RatFun {
    RatFun::t2()
}

fn tf() -> (f64, f64) {
    (T1.0 as f64 / T1.1 as f64, T2.0 as f64 / T2.1 as f64)
}

fn eval(r: &RatFun) -> Complex64 {
    r.eval(&q(T1.0, T1.1), &q(T2.0, T2.1)).expect("no pole at the test point").embed()
}

fn close(got: Complex64, want: Complex64) -> bool {
    (got - want).norm() <= REL_TOL * want.norm() + ABS_TOL
}

fn detail(base: &str, bad: &[String]) -> String {
    if bad.is_empty() {
        base.to_string()
    } else {
        format!("{}; mismatches: {}", base, bad.join("; "))
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn printed_degree0() -> Vec<([CohClass; 3], RatFun)> {
    use CohClass::*;
    let two_t2 = &t2() * &RatFun::from_int(2);
    vec![
        ([One, One, One], RatFun::frac(1, 3).checked_div(&(&t1() * &t2())).unwrap()),
        ([One, One, H], RatFun::from_int(0)),
        ([One, H, H], RatFun::frac(-2, 3)),
        ([H, H, H], &(&t1() + &two_t2) * &RatFun::frac(-2, 3)),
        ([One, S, S], RatFun::frac(1, 2)),
        ([H, S, S], &t1() * &RatFun::frac(-1, 2)),
    ]
}

fn hhh_flipped() -> RatFun {
    &(&t1() + &(&t2() * &RatFun::from_int(2))) * &RatFun::frac(2, 3)
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    for (c, want) in printed_degree0() {
        let got = degree0_triple(c[0], c[1], c[2]);
        if got != want {
            bad.push(format!("{:?}: computed {} vs printed {}", c, got, want));
        }
    }
    Outcome { pass: bad.is_empty(), detail: detail("six printed values", &bad) }
}

/// Tangent numbers `T_k` with `tan x = Σ T_k x^k / k!`, by the
/// boustrophedon recurrence.
fn tangent_numbers(n: usize) -> Vec<Rational> {
    let mut out = vec![rational::int(0); n + 1];
    let mut row = vec![rational::int(1)];
    for k in 1..=n {
        let mut next = vec![rational::int(0)];
        for j in 0..k {
            let v = &next[j] + &row[k - 1 - j];
            next.push(v);
        }
        if k % 2 == 1 {
            out[k] = next[k].clone();
        }
        row = next;
    }
    out
}

/// `[z^{k+3}] G = T_k / (2^{k+1} (k+3)!)`.
fn g_oracle(order: u32) -> Vec<Rational> {
    let t = tangent_numbers(order as usize);
    (0..=order)
        .map(|m| {
            if m < 3 {
                return rational::int(0);
            }
            let k = m - 3;
            &t[k as usize] / (rational::powi(&rational::int(2), k as i64 + 1) * rational::factorial(m))
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let g = g_series(20);
    let oracle = g_oracle(20);
    let mut bad = Vec::new();
    for (m, want) in oracle.iter().enumerate() {
        let got = g.coeff(&[(Var::Z2, m as u32)]).unwrap();
        if got != RatFun::from_rational(want.clone()) {
            bad.push(format!("z2^{}: {} vs {}", m, got, rational::to_string(want)));
        }
    }
    let first = g.coeff(&[(Var::Z2, 4)]).unwrap() == RatFun::frac(1, 96);
    if !first {
        bad.push("z2^4 coefficient is not 1/96".into());
    }
    Outcome { pass: bad.is_empty(), detail: detail("z2^0..z2^20 against tangent numbers", &bad) }
}

/// `(2g+1)! [z^{2g+1}] (-1)^{(d-1)/2}(2/d³) sin(dz/2)` in closed form.
fn odd_oracle(d: u32, g: u32) -> Rational {
    let d_r = rational::int(d as i64);
    rational::sign((d - 1) / 2 % 2 == 1) * rational::sign(g % 2 == 1) * rational::int(2)
        / rational::powi(&d_r, 3)
        * rational::powi(&(d_r / rational::int(2)), 2 * g as i64 + 1)
}

/// `(2g+2)! [z^{2g+2}] (-1)^{d/2}(2/d³) cos(dz/2)`.
fn even_oracle(d: u32, g: i64) -> Rational {
    let d_r = rational::int(d as i64);
    rational::sign(d / 2 % 2 == 1) * rational::sign((g + 1) % 2 != 0) * rational::int(2)
        / rational::powi(&d_r, 3)
        * rational::powi(&(d_r / rational::int(2)), 2 * g + 2)
}

fn criterion_3() -> Outcome {
    let table = WeightTable::standard();
    let mut bad = Vec::new();
    let mut n = 0;
    for d in (1..=9).step_by(2) {
        let series = resummed_odd(d, 9).unwrap();
        for g in 0..=4 {
            n += 1;
            let total = assembly_odd(d, g, &table).unwrap().total();
            let want = odd_oracle(d, g);
            let from_series = invariant_from_series(&series, 2 * g + 1).unwrap();
            if total.half_power != 0 || total.coeff != want || from_series != want {
                bad.push(format!("(d,g)=({},{}) s^({}/2)", d, g, total.half_power));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: detail(&format!("{} keys, s cancelled at each", n), &bad) }
}

fn criterion_4() -> Outcome {
    let i2 = |n| invariant_from_series(&resummed_even(2, 6).unwrap(), n).unwrap();
    let i4 = invariant_from_series(&resummed_even(4, 6).unwrap(), 0).unwrap();
    let mut bad = Vec::new();
    for (name, got, want) in [("I_{2,0}", i2(0), q(-1, 4)), ("I_{2,2}", i2(2), q(1, 4)), ("I_{4,0}", i4, q(1, 32))] {
        if got != want {
            bad.push(format!("{} = {}", name, rational::to_string(&got)));
        }
    }
    for d in (2..=8).step_by(2) {
        for g in -1..=4 {
            if assemble_even(d, g).ok() != Some(even_oracle(d, g)) {
                bad.push(format!("corrected assembly (d,g)=({},{})", d, g));
            }
        }
    }
    // the literal even display is reported, not asserted
    let lit = literal_even(2, 0).unwrap();
    Outcome {
        pass: bad.is_empty(),
        detail: detail(&format!("literal even reading reported: {}", lit.note), &bad),
    }
}

fn criterion_5() -> Outcome {
    let f = classical_part(&standard_varset(0, 3)).unwrap();
    let mut bad = Vec::new();
    for (e, c) in cubic_monomials() {
        let coeff = f.coeff(&[(Var::Z0, e[0]), (Var::Z1, e[1]), (Var::Z2, e[2])]).unwrap();
        let triple = degree0_triple(c[0], c[1], c[2]);
        if coeff.scale(&symmetry_factor(&e).into()) != triple {
            bad.push(format!("z0^{} z1^{} z2^{}", e[0], e[1], e[2]));
        }
    }
    let quantum = quantum_part(&standard_varset(8, 8)).unwrap();
    for d in 1..=8 {
        let slice = q_slice(&quantum, d).unwrap();
        let lhs = slice.differentiate(Var::Z1).unwrap();
        let rhs = slice.scale(&RatFun::from_int(d as i64)).convert(lhs.varset()).unwrap();
        if lhs != rhs {
            bad.push(format!("divisor d={}", d));
        }
    }
    Outcome { pass: bad.is_empty(), detail: detail("cubic part and divisor d<=8", &bad) }
}

fn criterion_6() -> Outcome {
    let r = verify_bracket_identity(8, 10).unwrap();
    let bad: Vec<String> = r.failures().map(|c| format!("{} at {:?}", c.key, c.first_mismatch)).collect();
    Outcome { pass: r.passed(), detail: detail("d<=8, order 10", &bad) }
}

fn criterion_7() -> Outcome {
    let r = verify_residual_thirdderiv(16).unwrap();
    Outcome { pass: r.passed() && r.cases.len() == 17, detail: "theta^0..theta^16".into() }
}

fn criterion_8() -> Outcome {
    let main = verify_corollary().unwrap();
    let remark = verify_corollary_remark().unwrap();
    let b0 = corollary_branch_constant(0).unwrap();
    let phase_ok = b0.phase == Some(-2) && b0.pi_coeff == Cyclo::frac(-1, 3);
    Outcome {
        pass: main.passed() && remark.passed() && phase_ok,
        detail: format!(
            "{} lines, {} branches, branch 0 phase zeta^{}",
            main.cases.len(),
            remark.cases.len(),
            b0.phase.map_or("?".to_string(), |p| p.to_string())
        ),
    }
}

/// `<a, b, c>_0` in floating point, from the fixed-point weights written
/// out directly.
fn degree0_f64(c: [CohClass; 3]) -> Complex64 {
    let (a, b) = tf();
    let euler = [(b - a / 2.0) * (1.5 * a), (a - 2.0 * b) * (3.0 * b)];
    let h = [-a, -2.0 * b];
    let aut = [0.5, 1.0];
    let n_s = c.iter().filter(|x| **x == CohClass::S).count();
    let restrict = |p: usize| c.iter().map(|x| if *x == CohClass::H { h[p] } else { 1.0 }).product::<f64>();
    re(match n_s {
        0 => (0..2).map(|p| aut[p] * restrict(p) / euler[p]).sum(),
        2 => aut[0] * restrict(0),
        _ => 0.0,
    })
}

fn tan_f64_coeffs(n: usize) -> Vec<f64> {
    // tan' = 1 + tan²
    let mut a = vec![0.0; n + 1];
    for m in 0..n {
        let conv: f64 = (0..=m).map(|k| a[k] * a[m - k]).sum();
        a[m + 1] = (if m == 0 { 1.0 } else { 0.0 } + conv) / (m + 1) as f64;
    }
    a
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn series_at(s: &Series, point: &[(Var, f64)]) -> Complex64 {
    let p: Vec<_> = point.iter().map(|(v, x)| (*v, re(*x))).collect();
    s.eval(&q(T1.0, T1.1), &q(T2.0, T2.1), &p).unwrap()
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut check = |name: String, got: Complex64, want: Complex64| {
        checked += 1;
        if !close(got, want) {
            bad.push(format!("{}: {} vs {}", name, got, want));
        }
    };
    let (a, b) = tf();

    for (c, printed) in printed_degree0() {
        check(format!("{:?}", c), eval(&degree0_triple(c[0], c[1], c[2])), degree0_f64(c));
        if c == [CohClass::H; 3] {
            check("printed HHH".into(), eval(&printed), re(-2.0 * (a + 2.0 * b) / 3.0));
        }
    }

    let g = g_series(20);
    let tan = tan_f64_coeffs(20);
    for m in 3..=20u32 {
        let k = m - 3;
        let want = 0.5 * tan[k as usize] * 0.5f64.powi(k as i32) * factorial_f64(k) / factorial_f64(m);
        check(format!("G z2^{}", m), eval(&g.coeff(&[(Var::Z2, m)]).unwrap()), re(want));
    }

    let table = WeightTable::standard();
    for d in (1..=9u32).step_by(2) {
        for gg in 0..=4u32 {
            let v = assembly_odd(d, gg, &table).unwrap().value().unwrap();
            let want = (-1f64).powi(((d - 1) / 2 + gg) as i32) * 2.0 / (d as f64).powi(3)
                * (d as f64 / 2.0).powi(2 * gg as i32 + 1);
            check(format!("odd ({},{})", d, gg), re(rational::to_f64(&v)), re(want));
        }
    }
    for d in (2..=8u32).step_by(2) {
        for gg in -1..=4i64 {
            let v = assemble_even(d, gg).unwrap();
            let want = (-1f64).powi((d / 2) as i32 + (gg + 1) as i32) * 2.0 / (d as f64).powi(3)
                * (d as f64 / 2.0).powi(2 * gg as i32 + 2);
            check(format!("even ({},{})", d, gg), re(rational::to_f64(&v)), re(want));
        }
    }

    let classical = classical_part(&standard_varset(0, 3)).unwrap();
    let classical_want = [
        ((3, 0, 0), 1.0 / (18.0 * a * b)),
        ((1, 2, 0), -1.0 / 3.0),
        ((1, 0, 2), 0.25),
        ((0, 1, 2), -a / 4.0),
        ((0, 3, 0), -(a + 2.0 * b) / 9.0),
    ];
    for ((x, y, z), want) in classical_want {
        let c = classical.coeff(&[(Var::Z0, x), (Var::Z1, y), (Var::Z2, z)]).unwrap();
        check(format!("classical z0^{} z1^{} z2^{}", x, y, z), eval(&c), re(want));
    }
    let quantum = quantum_part(&standard_varset(8, 8)).unwrap();
    for d in 1..=8u32 {
        for (z1, z2) in [(0u32, d % 2), (2, d % 2 + 2), (1, d % 2 + 4)] {
            let c = quantum.coeff(&[(Var::Z1, z1), (Var::Z2, z2), (Var::Q, d)]).unwrap();
            let df = d as f64;
            let trig = if d % 2 == 1 { (-1f64).powi(((d - 1) / 2) as i32) } else { (-1f64).powi((d / 2) as i32) };
            let want = (a + b) * trig * 2.0 / df.powi(3) * (-1f64).powi((z2 / 2) as i32) * (df / 2.0).powi(z2 as i32)
                / factorial_f64(z2)
                * df.powi(z1 as i32)
                / factorial_f64(z1);
            check(format!("quantum d={} z1^{} z2^{}", d, z1, z2), eval(&c), re(want));
        }
    }

    let vs = bracket_varset(8, 10);
    let (z1, z2, u, qq) = (0.02, 0.02, 0.01, 0.5);
    let point = [(Var::Z1, z1), (Var::Z2, z2), (Var::U, u), (Var::Q, qq)];
    for d in 1..=8u32 {
        let s = bracket_sides(d, &vs).unwrap();
        let common = s.prefactor.mul(&s.twist).unwrap();
        let df = d as f64;
        let theta = df * (z2 + u) / 2.0;
        let trig = if d % 2 == 1 {
            (-1f64).powi(((d - 1) / 2) as i32) * theta.sin()
        } else {
            (-1f64).powi((d / 2) as i32) * theta.cos()
        };
        let want = (qq * z1.exp()).powi(d as i32) / df.powi(3) * Complex64::new(0.0, df * u / 2.0).exp() * trig;
        let lhs = series_at(&common.mul(&s.bracket).unwrap(), &point);
        let rhs = series_at(&common.mul(&s.trig).unwrap(), &point);
        check(format!("bracket lhs d={}", d), lhs, want);
        check(format!("bracket rhs d={}", d), rhs, want);
    }

    let (lhs, rhs) = residual_sides(16).unwrap();
    let th = 0.2;
    let w = Complex64::new(0.0, th).exp();
    let want = Complex64::i() * w / (1.0 + w);
    check("residual lhs".into(), series_at(&lhs, &[(Var::Theta, th)]), want);
    check("residual rhs".into(), series_at(&rhs, &[(Var::Theta, th)]), want);

    let composed = compose(&invert(&build_cov(), 0).unwrap(), &build_covbgp()).unwrap();
    let (i, s3) = (Complex64::i(), 3f64.sqrt());
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let wb = w.conj();
    let form = |v: Var| match composed.line(v) {
        Some(Line::Linear(f)) => f.clone(),
        Some(Line::PhaseExp { form, .. }) | Some(Line::AffinePi { form, .. }) => form.clone(),
        other => panic!("unexpected line {:?}", other),
    };
    let entries = [
        (Var::Z0, Var::X0, re(1.0)),
        (Var::Z1, Var::X1, i / (2.0 * s3) * (wb - 1.0)),
        (Var::Z1, Var::X2, i / (2.0 * s3) * (w - 1.0)),
        (Var::Z2, Var::X1, w / s3),
        (Var::Z2, Var::X2, wb / s3),
        (Var::Q, Var::S1, i / s3 * wb),
        (Var::Q, Var::S2, i / s3 * w),
        (Var::U, Var::S1, w / s3),
        (Var::U, Var::S2, wb / s3),
    ];
    for (line, var, want) in entries {
        check(format!("corollary {} {}", line, var), form(line).coeff(var).embed(), want);
    }
    if let Some(Line::PhaseExp { phase, .. }) = composed.line(Var::Q) {
        check("q phase".into(), Cyclo::zeta_pow(*phase).embed(), -i * w);
    }
    if let Some(Line::AffinePi { pi_coeff, .. }) = composed.line(Var::U) {
        let e = (i * PI * pi_coeff.embed()).exp();
        check("u phase".into(), e, Complex64::from_polar(1.0, -PI / 3.0));
        check("zeta^-2".into(), Cyclo::zeta_pow(-2).embed(), Complex64::from_polar(1.0, -PI / 3.0));
    }

    Outcome { pass: bad.is_empty(), detail: detail(&format!("{} values, rel tol {:e}, abs floor {:e}", checked, REL_TOL, ABS_TOL), &bad) }
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "degree-0 triple intersections", BUDGET_1, criterion_1),
        (2, "G series", BUDGET_2, criterion_2),
        (3, "odd assembly vs sine closed form", BUDGET_3, criterion_3),
        (4, "even values and cosine closed form", BUDGET_4, criterion_4),
        (5, "classical part and divisor property", BUDGET_5, criterion_5),
        (6, "bracket identity", BUDGET_6, criterion_6),
        (7, "residual identity", BUDGET_7, criterion_7),
        (8, "corollary composition and remark", BUDGET_8, criterion_8),
        (9, "numeric cross-check", BUDGET_9, criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= budget;
        println!(
            "{} criterion {}: {} ({:.3}s, budget {}s) {}",
            if pass { "PASS" } else { "FAIL" },
            n,
            name,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail.trim()
        );
        let known_red = match n {
            1 => {
                let got = degree0_triple(CohClass::H, CohClass::H, CohClass::H);
                out.detail.matches("computed").count() == 1 && got == hhh_flipped()
            }
            5 => out.detail.trim_end().ends_with("z0^0 z1^3 z2^0"),
            _ => false,
        };
        if !pass && !(known_red && elapsed <= budget) {
            unexpected.push(n);
        }
    }
    assert!(unexpected.is_empty(), "unexpected failures: criteria {:?}", unexpected);
}
