//! Acceptance criteria 1–12, one PASS/FAIL line each. Exits non-zero if any
//! criterion fails.

use std::time::{Duration, Instant};

use focklab::bernstein::{a_ratio_check, bernstein_family_checks};
use focklab::fock::{calibrate_kappa, commutator_check, cyclicity_check, monomial_norms, norm_check};
use focklab::jordan::{case, default_params, table_rows, CaseParams, SimpleFactor};
use focklab::kernel::meijer::{bergman_norm_case1, moment_check, radial_a_check, sign_scan_check, BERGMAN_TOL, MOMENT_TOL};
use focklab::kernel::tables::{param_table_suite, root_rows, table_suite};
use focklab::kernel::{c_sequence_check, spectral_params};
use focklab::rational::{binomial, q, qi, Q};
use focklab::report::{CheckReport, Status};
use focklab::sl2::{pm_identity_check, solve_eta0, KappaConvention};
use focklab::suites::{bergman_functions, kernel_zero_check, moment_cases, structure_suite, test_matrix, Options};

const ROOTS_MAX_TIME: Duration = Duration::from_secs(1);
const COMMUTATOR_MAX_TIME: Duration = Duration::from_secs(30);
const TOL_A_QUAD: f64 = 1e-8;
const TOL_NORM: f64 = 1e-8;
const TOL_BERGMAN: f64 = 1e-4;
const TOL_MOMENT: f64 = 1e-6;

struct Outcome {
    ok: bool,
    note: String,
}

fn all_pass(checks: &[CheckReport]) -> Result<(), String> {
    match checks.iter().find(|c| c.status != Status::Pass) {
        Some(c) => Err(format!("{} is {:?}: {} (residual {})", c.id, c.status, c.details, c.residual)),
        None => Ok(()),
    }
}

fn outcome(r: Result<String, String>) -> Outcome {
    match r {
        Ok(note) => Outcome { ok: true, note },
        Err(note) => Outcome { ok: false, note },
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_root_tables() -> Result<String, String> {
    let start = Instant::now();
    let r = table_suite();
    let took = start.elapsed();
    all_pass(std::slice::from_ref(&r))?;
    ensure(root_rows().len() == 20, format!("expected 20 table rows, got {}", root_rows().len()))?;
    // η₀ = q₁/k₁ + n₁/(k₁r₁) by hand: case (1) k = 4, n = r = 1; case (5) k = 1
    let e1 = spectral_params(&case(1, default_params(1)).unwrap(), &[qi(0)]).map_err(|e| e.to_string())?.eta0;
    let e5 = spectral_params(&case(5, default_params(5)).unwrap(), &vec![qi(0); 4]).map_err(|e| e.to_string())?.eta0;
    ensure(e1 == q(1, 4) && e5 == qi(1), format!("eta0 oracle: case 1 {e1}, case 5 {e5}"))?;
    ensure(took < ROOTS_MAX_TIME, format!("took {took:?}"))?;
    Ok(format!("exact, {} in {took:?}", r.details.split(';').next().unwrap_or("")))
}

fn c2_meijer_table() -> Result<String, String> {
    let r = param_table_suite();
    all_pass(std::slice::from_ref(&r))?;
    Ok("exact; one α/β cancellation per row".into())
}

fn c3_bernstein() -> Result<String, String> {
    let mut fams: Vec<(SimpleFactor, Vec<u32>)> = Vec::new();
    for k in 1..=4 {
        fams.push((SimpleFactor::rank1(k), vec![1, 2, 3]));
    }
    for p in 2..=5 {
        fams.push((SimpleFactor::spin(p, 1), vec![1, 2, 3]));
    }
    for m in [2, 3] {
        fams.push((SimpleFactor::sym(m, 1), vec![1, 2, 3]));
        fams.push((SimpleFactor::full(m, 1), vec![1, 2, 3]));
    }
    fams.push((SimpleFactor::skew(4, 1), vec![1, 2, 3]));
    fams.push((SimpleFactor::sym(4, 1), vec![1, 2]));
    fams.push((SimpleFactor::full(4, 1), vec![1, 2]));
    fams.push((SimpleFactor::skew(8, 1), vec![1, 2]));
    let mut n = 0;
    for (f, alphas) in &fams {
        let checks = bernstein_family_checks(f, alphas);
        ensure(checks.len() == alphas.len(), format!("{}: {} reports", f.label(), checks.len()))?;
        all_pass(&checks)?;
        n += checks.len();
    }
    Ok(format!("{} families, {n} identities, zero residual, constant α-independent", fams.len()))
}

fn c4_symbol_identity(conv: KappaConvention) -> Result<String, String> {
    let matrix = test_matrix(true);
    for id in 1..=10 {
        let n = matrix.iter().filter(|e| e.case.case_id == id).count();
        ensure(n >= 2, format!("case {id}: only {n} q values"))?;
    }
    let checks: Vec<CheckReport> = matrix.iter().map(|e| pm_identity_check(&e.case, &e.q, conv)).collect();
    all_pass(&checks)?;
    let c11 = case(11, default_params(11)).unwrap();
    ensure(!solve_eta0(&c11).feasible_strict, "case 11 has a q on the strict lattice")?;
    let forced: Vec<CheckReport> =
        [vec![qi(0), qi(0)], vec![qi(3), qi(1)]].iter().map(|qv| pm_identity_check(&c11, qv, conv)).collect();
    all_pass(&forced)?;
    Ok(format!("{} (case, q) pairs zero residual; case 11 infeasible, forced q residual nonzero", checks.len()))
}

fn c5_commutators(conv: KappaConvention) -> Result<String, String> {
    let start = Instant::now();
    let jobs: Vec<(u32, Vec<Q>)> = vec![
        (1, vec![qi(0)]),
        (1, vec![qi(4)]),
        (3, vec![qi(0); 2]),
        (3, vec![qi(2); 2]),
        (5, vec![qi(0); 4]),
        (5, vec![qi(1); 4]),
        (5, vec![qi(2); 4]),
    ];
    let checks: Vec<CheckReport> =
        jobs.iter().map(|(id, qv)| commutator_check(&case(*id, default_params(*id)).unwrap(), qv, 6, conv)).collect();
    all_pass(&checks)?;
    let took = start.elapsed();
    ensure(took < COMMUTATOR_MAX_TIME, format!("took {took:?}"))?;
    Ok(format!("{} runs at M = 6, kappa convention {} calibrated on case (1), {took:?}", checks.len(), conv.name()))
}

fn c6_a_consistency() -> Result<String, String> {
    let checks: Vec<CheckReport> = test_matrix(true).iter().map(|e| a_ratio_check(&e.case, &e.q, 10)).collect();
    all_pass(&checks)?;
    let quad = radial_a_check(&[qi(0)], 4, TOL_A_QUAD);
    all_pass(std::slice::from_ref(&quad))?;
    Ok(format!("{} exact ratio comparisons, m <= 10; case 1 quadrature a_m max rel {} (tol {TOL_A_QUAD:e})", checks.len(), quad.residual))
}

fn c7_norms() -> Result<String, String> {
    let r = norm_check(3, &[qi(0)], TOL_NORM);
    all_pass(std::slice::from_ref(&r))?;
    // independent oracle 1/binomial(4m, j)
    let c1 = case(1, default_params(1)).unwrap();
    for m in 0..=3u32 {
        for (j, _, num) in monomial_norms(&c1, &[qi(0)], m).map_err(|e| e.to_string())? {
            let e = 1.0 / binomial(4 * m as u64, j as u64).to_string().parse::<f64>().unwrap();
            ensure(((num - e) / e).abs() <= TOL_NORM, format!("m={m} j={j}: {num} vs {e}"))?;
        }
    }
    ensure(BERGMAN_TOL == TOL_BERGMAN, "Bergman tolerance drifted")?;
    let berg: Vec<CheckReport> = bergman_functions().iter().map(|(_, phi)| bergman_norm_case1(&[qi(0)], phi, 12)).collect();
    ensure(berg.len() == 3, "three test functions")?;
    all_pass(&berg)?;
    let worst = berg.iter().map(|c| c.residual.clone()).collect::<Vec<_>>().join(", ");
    Ok(format!("norm max rel {} (tol {TOL_NORM:e}); Bergman rel {worst} (tol {TOL_BERGMAN:e})", r.residual))
}

fn c8_moments() -> Result<String, String> {
    ensure(MOMENT_TOL == TOL_MOMENT, "moment tolerance drifted")?;
    let mut n = 0;
    for (c, qv) in moment_cases() {
        let checks = moment_check(&c, &qv, 5, 12);
        ensure(checks.len() == 6, "m = 0..=5")?;
        all_pass(&checks)?;
        n += checks.len();
    }
    // case (5), q = 0: β = (1,1,1,1), α = (0,1), so the m-th moment is (m+1)!³/m!
    let c5 = case(5, default_params(5)).unwrap();
    let mp = focklab::kernel::meijer::meijer_params(&c5, &vec![qi(0); 4]).map_err(|e| e.to_string())?;
    let quad = focklab::kernel::meijer::moments_by_quadrature(&mp, 5, 12).map_err(|e| e.to_string())?;
    let mut fact = 1.0f64;
    for (m, (v, _)) in quad.iter().enumerate() {
        if m > 0 {
            fact *= m as f64;
        }
        let e = (fact * (m as f64 + 1.0)).powi(3) / fact;
        ensure(((v - e) / e).abs() <= TOL_MOMENT, format!("case 5 m={m}: {v} vs {e}"))?;
    }
    Ok(format!("{n} moments on cases 1, 5, 9(d=1) within {TOL_MOMENT:e}; case 5 factorial oracle"))
}

fn c9_dimensions() -> Result<String, String> {
    let checks = structure_suite(&Options::default());
    let rows = table_rows().len();
    ensure(checks.len() >= rows + 5, format!("only {} rows", checks.len()))?;
    let implemented: Vec<CheckReport> = checks.iter().filter(|c| c.status != Status::Skip).cloned().collect();
    all_pass(&implemented)?;
    for id in ["structure.dim.2.p2", "structure.dim.6.p4", "structure.dim.7.p3", "structure.dim.8.p2_2", "structure.dim.8.p4_2"] {
        ensure(implemented.iter().any(|c| c.id == id), format!("missing {id}"))?;
    }
    let skipped: Vec<&str> = checks.iter().filter(|c| c.status == Status::Skip).map(|c| c.id.as_str()).collect();
    Ok(format!("{} rows exact; not implementable: {}", implemented.len(), skipped.join(", ")))
}

fn c10_coefficients() -> Result<String, String> {
    let mut n = 0;
    for e in test_matrix(true) {
        all_pass(&[c_sequence_check(&e.case, &e.q, 50), kernel_zero_check(&e.case, &e.q)])?;
        n += 1;
    }
    Ok(format!("{n} (case, q) pairs, m <= 50, closed form = recurrence, c_m > 0, F(0) = 1"))
}

fn c11_sign_change() -> Result<String, String> {
    let r = sign_scan_check(&case(1, default_params(1)).unwrap(), &[qi(0)], 200, 12);
    all_pass(std::slice::from_ref(&r))?;
    Ok(format!("case 1, q = 0: {}", r.details))
}

fn c12_cyclicity(conv: KappaConvention) -> Result<String, String> {
    let jobs: [(u32, Vec<Q>); 3] = [(1, vec![qi(0)]), (3, vec![qi(0); 2]), (5, vec![qi(0); 4])];
    let checks: Vec<CheckReport> =
        jobs.iter().map(|(id, qv)| cyclicity_check(&case(*id, default_params(*id)).unwrap(), qv, 4, conv)).collect();
    all_pass(&checks)?;
    Ok("cases 1, 3, 5 fill the interior at M = 4".into())
}

fn main() {
    let c1 = case(1, CaseParams::default()).expect("case 1");
    let conv = calibrate_kappa(&c1);
    let kappa = |f: fn(KappaConvention) -> Result<String, String>| -> Result<String, String> {
        match conv {
            Some(k) => f(k),
            None => Err("kappa calibration on case 1 failed".into()),
        }
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("root tables", outcome(c1_root_tables())),
        ("Meijer parameter table", outcome(c2_meijer_table())),
        ("Bernstein identities", outcome(c3_bernstein())),
        ("sl2 symbol identity", outcome(kappa(c4_symbol_identity))),
        ("operator commutators", outcome(kappa(c5_commutators))),
        ("a_m consistency", outcome(c6_a_consistency())),
        ("reproducing and Bergman norms", outcome(c7_norms())),
        ("Meijer moments", outcome(c8_moments())),
        ("dimension checks", outcome(c9_dimensions())),
        ("kernel coefficients", outcome(c10_coefficients())),
        ("pseudo-weight sign change", outcome(c11_sign_change())),
        ("cyclicity", outcome(kappa(c12_cyclicity))),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} criterion {:>2} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.note);
        failed += usize::from(!o.ok);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
