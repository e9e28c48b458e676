//! Acceptance gate: one pass/fail line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines live.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bvpdn_core::{
    bounds, kernel,
    verify::{self, fixture_extremal_step_trace},
    BihPolynomial, BoundParams, ProblemData, QuadConfig, Solver,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

struct Gate {
    failures: Vec<u32>,
}

impl Gate {
    fn record(&mut self, num: u32, desc: &str, pass: bool) {
        println!(
            "criterion {num:2}: {} - {desc}",
            if pass { "PASS" } else { "FAIL" }
        );
        if !pass {
            self.failures.push(num);
        }
    }
}

fn oracle_fixtures() -> Vec<(String, BihPolynomial)> {
    let mut fixtures = vec![
        ("z2zb2".to_string(), verify::fixture_z2zb2()),
        ("z3zb_plus_z".to_string(), verify::fixture_z3zb_plus_z()),
        ("z3zb3".to_string(), verify::fixture_z3zb3()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for i in 0..5 {
        fixtures.push((format!("random_{i}"), verify::random_polynomial(&mut rng, 6)));
    }
    fixtures
}

fn grid_points(n_r: usize, n_theta: usize, rmax: f64) -> Vec<Complex64> {
    let mut points = vec![];
    for i in 1..=n_r {
        let r = rmax * i as f64 / n_r as f64;
        for j in 0..n_theta {
            let t = std::f64::consts::TAU * j as f64 / n_theta as f64;
            points.push(Complex64::from_polar(r, t));
        }
    }
    points
}

// Criterion 1: manufactured-solution sup error <= 1e-4 on a 20x20 polar grid
// with radii <= 0.9, within 60 s per fixture.
fn criterion_1() -> bool {
    for (name, poly) in oracle_fixtures() {
        let start = Instant::now();
        let rec = match verify::check_oracle(&poly, 20, 20, 0.9, &cfg()) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("  oracle {name}: error {e}");
                return false;
            }
        };
        let elapsed = start.elapsed().as_secs_f64();
        if !rec.passed || elapsed > 60.0 {
            eprintln!(
                "  oracle {name}: slack {} elapsed {elapsed:.1}s",
                rec.worst_slack
            );
            return false;
        }
    }
    true
}

// Criterion 2: derivative sup error <= 1e-3 on the same grids, and the
// solver derivative matches finite differences of the solver value to 1e-5.
fn criterion_2() -> bool {
    let points = grid_points(20, 20, 0.9);
    for (name, poly) in oracle_fixtures() {
        let solver = Solver::new(ProblemData::from_polynomial(&poly), cfg()).unwrap();
        let mut sup = 0.0f64;
        for &z in &points {
            let err = match solver.w_dz(z) {
                Ok(v) => (v - poly.dz(z)).norm(),
                Err(e) => {
                    eprintln!("  derivative {name}: error {e}");
                    return false;
                }
            };
            sup = sup.max(err);
        }
        if sup > 1e-3 {
            eprintln!("  derivative {name}: sup error {sup:e}");
            return false;
        }
    }
    // Finite-difference consistency on one biharmonic fixture.
    let solver = Solver::new(ProblemData::from_polynomial(&verify::fixture_z2zb2()), cfg()).unwrap();
    let h = 1e-3;
    for &z in &[c(0.0, 0.0), c(0.3, 0.2), c(-0.4, 0.1), c(0.1, -0.5), c(0.55, 0.3)] {
        let w = |p: Complex64| solver.w(p).unwrap();
        let fd = 0.5
            * ((w(z + c(h, 0.0)) - w(z - c(h, 0.0))) / (2.0 * h)
                - Complex64::i() * (w(z + c(0.0, h)) - w(z - c(0.0, h))) / (2.0 * h));
        let diff = (solver.w_dz(z).unwrap() - fd).norm();
        if diff > 1e-5 {
            eprintln!("  fd consistency at {z}: {diff:e}");
            return false;
        }
    }
    true
}

// Criterion 3: the area term for a unit constant source is -3/4 at the center.
fn criterion_3() -> bool {
    let solver = Solver::new(verify::fixture_source_one(), cfg()).unwrap();
    let v = solver.g2_part(c(0.0, 0.0)).unwrap();
    (v.re + 0.75).abs() <= 1e-8 && v.im.abs() <= 1e-8
}

// Criterion 4: kernel realness, boundary vanishing, derivative vs finite
// differences over 1000 random pairs.
fn criterion_4() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let policy = kernel::SeriesPolicy::default();
    for _ in 0..1000 {
        let z = Complex64::from_polar(
            0.9 * rng.gen_range(0.0..1.0f64).sqrt(),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let mut zeta;
        loop {
            zeta = Complex64::from_polar(
                0.9 * rng.gen_range(0.0..1.0f64).sqrt(),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            if (zeta - z).norm() >= 0.05 {
                break;
            }
        }
        let terms = kernel::h2_terms(z, zeta, &policy).unwrap();
        let sum: Complex64 = terms.iter().sum();
        if sum.im.abs() > 1e-12 {
            eprintln!("  kernel imaginary part {:e} at ({z}, {zeta})", sum.im);
            return false;
        }
        let zb = Complex64::from_polar(1.0 - 1e-8, z.arg());
        if kernel::h2(zb, zeta).unwrap().abs() > 1e-6 {
            return false;
        }
        let h = 1e-4;
        let f = |p: Complex64| kernel::h2(p, zeta).unwrap();
        let fd = 0.5
            * Complex64::new(
                (f(z + c(h, 0.0)) - f(z - c(h, 0.0))) / (2.0 * h),
                -(f(z + c(0.0, h)) - f(z - c(0.0, h))) / (2.0 * h),
            );
        let diff = (kernel::h2_dz(z, zeta).unwrap() - fd).norm();
        if diff > 1e-6 {
            eprintln!("  kernel derivative mismatch {diff:e} at ({z}, {zeta})");
            return false;
        }
    }
    true
}

// Criterion 5: closed-form constants against independently recomputed
// high-precision values.
fn criterion_5() -> bool {
    let targets = [
        (bounds::n1(0.0).unwrap(), 8.972803961856776),
        (bounds::n2(0.0).unwrap(), 14.525475043281915),
        (bounds::n3(0.0).unwrap(), 6.615767075512240),
        (bounds::n4(0.0).unwrap(), 6.421500526380568),
        (bounds::m1(), 4.466951714896955),
        (bounds::m2(), 5.970508107983233),
    ];
    targets.iter().all(|&(got, want)| (got - want).abs() <= 1e-6)
}

// Criterion 6: aggregate constants and the univalence radius for unit
// parameters; the radius function strictly decreases on 1000 random sets.
fn criterion_6() -> bool {
    let p = BoundParams::new(1.0, 1.0, 1.0, 0.0).unwrap();
    let landau = bounds::landau_radius(&p).unwrap();
    if (landau.l4 - 14.310507146627971).abs() > 1e-6 {
        return false;
    }
    if (landau.l5 - 10.437459822880188).abs() > 1e-6 {
        return false;
    }
    if !(landau.r0 > 0.0015 && landau.r0 < 0.002) {
        return false;
    }
    if bounds::phi(&p, landau.r0).unwrap().abs() > 1e-12 {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let p = BoundParams::new(
            rng.gen_range(0.0..3.0),
            rng.gen_range(0.0..3.0),
            rng.gen_range(0.0..3.0),
            rng.gen_range(0.0..2.0),
        )
        .unwrap();
        if bounds::l4(&p).unwrap() == 0.0 {
            continue;
        }
        let mut prev = bounds::phi(&p, 0.0).unwrap();
        for k in 1..=20 {
            let r = 0.95 * k as f64 / 20.0;
            let v = bounds::phi(&p, r).unwrap();
            if v >= prev {
                return false;
            }
            prev = v;
        }
    }
    true
}

// Criterion 7: inequality suites over 20 seeded random normalized problems,
// 50 sample points each, zero violations beyond the allowance.
fn criterion_7() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let config = cfg();
    for i in 0..20 {
        let prob = verify::random_normalized_problem(&mut rng, 6);
        let samples = verify::sample_points(&mut rng, 50, 0.9);
        let p = verify::bound_params_of(&prob).unwrap();
        let m = prob.gamma0.sup_norm(4096).max(1e-12);
        let records = [
            verify::check_thm1(&prob, &samples, &config),
            verify::check_thm2(&prob, &samples, &config),
            verify::check_g_operator_bounds(&prob, &samples, &config),
            verify::check_lemma_derivative_bounds(&prob, &samples, &config),
            verify::check_harmonic_coefficients(&prob.gamma0, m, &samples),
            verify::check_lambda_origin(&prob, &p, &config),
        ];
        for rec in records {
            match rec {
                Ok(r) if r.passed => {}
                Ok(r) => {
                    eprintln!(
                        "  problem {i}: {} slack {} at {}",
                        r.name, r.worst_slack, r.worst_point
                    );
                    return false;
                }
                Err(e) => {
                    eprintln!("  problem {i}: error {e}");
                    return false;
                }
            }
        }
    }
    true
}

// Criterion 8: the step-trace fixture realizes the coefficient bound.
fn criterion_8() -> bool {
    let trace = fixture_extremal_step_trace(1.0, 4096);
    let rec = verify::check_harmonic_coefficients(&trace, 1.0, &[]).unwrap();
    let a1b1: f64 = rec.metadata["a1_plus_b1"].parse().unwrap();
    rec.passed && (a1b1 - 4.0 / std::f64::consts::PI).abs() <= 1e-6
}

// Criterion 9: univalence-disk injectivity on the fixtures; the identity
// fixture's minimum boundary modulus equals the radius.
fn criterion_9() -> bool {
    let config = cfg();
    let identity = ProblemData::from_polynomial(&verify::fixture_identity());
    let p = BoundParams::new(1.0, 0.0, 0.0, 0.0).unwrap();
    let rec = verify::check_landau(&identity, &p, &config).unwrap();
    if !rec.passed || rec.metadata["grid_collisions"] != "0" {
        return false;
    }
    let r0: f64 = rec.metadata["r0"].parse().unwrap();
    let min_mod: f64 = rec.metadata["min_boundary_modulus"].parse().unwrap();
    if (min_mod - r0).abs() > 1e-6 {
        return false;
    }
    // min_boundary_modulus vs the covered-disk bound is recorded.
    if !rec.metadata.contains_key("r0_image_lower") {
        return false;
    }
    let perturbed = ProblemData::from_polynomial(&verify::fixture_perturbed_identity());
    let p = verify::bound_params_of(&perturbed).unwrap();
    let rec = verify::check_landau(&perturbed, &p, &config).unwrap();
    rec.passed && rec.metadata["grid_collisions"] == "0"
}

// Criterion 10: the full verification suite is byte-identical across runs.
fn criterion_10() -> bool {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_bvpdn"))
            .args(["verify", "--suite", "all", "--seed", "7", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    if !a.status.success() || !b.status.success() {
        eprintln!(
            "  verify exit: {:?} / {:?}\n{}",
            a.status.code(),
            b.status.code(),
            String::from_utf8_lossy(&a.stderr)
        );
        return false;
    }
    if a.stdout != b.stdout {
        eprintln!("  outputs differ ({} vs {} bytes)", a.stdout.len(), b.stdout.len());
        return false;
    }
    !a.stdout.is_empty()
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate { failures: vec![] };
    gate.record(1, "manufactured-solution oracle, sup error <= 1e-4", criterion_1());
    gate.record(2, "derivative oracle and finite-difference consistency", criterion_2());
    gate.record(3, "constant-source center identity -3/4", criterion_3());
    gate.record(4, "kernel realness, boundary vanishing, derivative", criterion_4());
    gate.record(5, "closed-form coefficient constants", criterion_5());
    gate.record(6, "aggregate constants and univalence radius", criterion_6());
    gate.record(7, "inequality suites on 20 random problems", criterion_7());
    gate.record(8, "sharpness of the coefficient bound", criterion_8());
    gate.record(9, "univalence-disk injectivity fixtures", criterion_9());
    gate.record(10, "byte-identical verification reports", criterion_10());
    assert!(
        gate.failures.is_empty(),
        "failed criteria: {:?}",
        gate.failures
    );
}
