//! Named check suites and the (case, q) test matrix they run over.

use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bernstein::{a_ratio_check, bernstein_family_checks, case_key, roots_check};
use crate::error::Error;
use crate::fock::{calibrate_kappa, commutator_check, cyclicity_check, norm_check};
use crate::jordan::{case, default_params, table_rows, CaseDescriptor, CaseParams, SimpleFactor};
use crate::kernel::meijer::{bergman_norm_case1, moment_check, radial_a_check, sign_scan_check, Bergman};
use crate::kernel::tables::{param_table_suite, table_suite};
use crate::kernel::{c_sequence, c_sequence_check, ca_identity_check, kernel_eval};
use crate::rational::{fmt_q_list, q, qi, Q};
use crate::report::{CheckReport, Report};
use crate::sl2::{feasible_qs, factor_expansion_check, pm_identity_check, solve_eta0, KappaConvention, Lattice};
use crate::structure::{check_g_dimension_seeded, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bernstein,
    Sl2,
    Operators,
    Tables,
    Meijer,
    Bergman,
    Structure,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Bernstein, Suite::Sl2, Suite::Operators, Suite::Tables, Suite::Meijer, Suite::Bergman, Suite::Structure];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Bernstein => "bernstein",
            Suite::Sl2 => "sl2",
            Suite::Operators => "operators",
            Suite::Tables => "tables",
            Suite::Meijer => "meijer",
            Suite::Bergman => "bergman",
            Suite::Structure => "structure",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "bernstein" => Suite::Bernstein,
            "sl2" => Suite::Sl2,
            "operators" | "sl2-operators" => Suite::Operators,
            "tables" => Suite::Tables,
            "meijer" => Suite::Meijer,
            "bergman" => Suite::Bergman,
            "structure" => Suite::Structure,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Restrict to one case (with its family parameters).
    pub case: Option<(u32, CaseParams)>,
    /// Explicit q; otherwise the test matrix supplies q values.
    pub q: Option<Vec<Q>>,
    /// Strict lattice (q_i ∈ k_i N) where it has points; graded lattice otherwise.
    pub strict_integrality: bool,
    pub trunc: u32,
    pub cyclic_trunc: u32,
    pub m_max: usize,
    pub moment_m_max: usize,
    pub precision: u32,
    pub sign_points: usize,
    /// Seed for the sampled translates in the dimension count.
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            case: None,
            q: None,
            strict_integrality: true,
            trunc: 6,
            cyclic_trunc: 4,
            m_max: 50,
            moment_m_max: 5,
            precision: 12,
            sign_points: 200,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatrixEntry {
    pub case: CaseDescriptor,
    pub q: Vec<Q>,
    pub lattice: Lattice,
}

/// Cases (1)–(10) at default parameters plus the other case (9) and (10)
/// variants, each with its two smallest admissible q.
pub fn test_matrix(strict: bool) -> Vec<MatrixEntry> {
    let mut out = Vec::new();
    for c in table_rows() {
        if c.case_id == 11 {
            continue;
        }
        out.extend(entries_for(&c, strict, 2));
    }
    out
}

fn entries_for(c: &CaseDescriptor, strict: bool, count: usize) -> Vec<MatrixEntry> {
    let sol = solve_eta0(c);
    let lattice = if strict && sol.feasible_strict { Lattice::Strict } else { Lattice::Graded };
    feasible_qs(c, &sol, lattice, count).into_iter().map(|q| MatrixEntry { case: c.clone(), q, lattice }).collect()
}

fn selected_entries(o: &Options) -> Result<Vec<MatrixEntry>, Error> {
    match (&o.case, &o.q) {
        (None, _) => Ok(test_matrix(o.strict_integrality)),
        (Some((id, p)), None) => Ok(entries_for(&case(*id, *p)?, o.strict_integrality, 2)),
        (Some((id, p)), Some(qv)) => {
            Ok(vec![MatrixEntry { case: case(*id, *p)?, q: qv.clone(), lattice: Lattice::Graded }])
        }
    }
}

fn tag_lattice(mut r: CheckReport, e: &MatrixEntry, strict: bool) -> CheckReport {
    if strict && e.lattice == Lattice::Graded {
        r.details = format!("{} [graded lattice: no q on the strict lattice]", r.details);
    }
    r
}

fn selected(o: &Options, id: u32) -> bool {
    o.case.as_ref().is_none_or(|(c, _)| *c == id)
}

fn input_error(id: &str, e: Error) -> Vec<CheckReport> {
    vec![CheckReport::new(id).details(e.to_string()).pass_if(false)]
}

/// Bernstein identities per factor family, root checks, the two a_m ratio
/// expressions and the case (1) a_m quadrature.
pub fn bernstein_suite(o: &Options) -> Vec<CheckReport> {
    let mut families: Vec<(SimpleFactor, Vec<u32>)> = Vec::new();
    if o.case.is_none() {
        let small = vec![1, 2, 3];
        for k in 1..=4 {
            families.push((SimpleFactor::rank1(k), small.clone()));
        }
        for p in 2..=5 {
            families.push((SimpleFactor::spin(p, 1), small.clone()));
        }
        for m in [2, 3] {
            families.push((SimpleFactor::sym(m, 1), small.clone()));
            families.push((SimpleFactor::full(m, 1), small.clone()));
        }
        families.push((SimpleFactor::skew(4, 1), small.clone()));
        families.push((SimpleFactor::sym(4, 1), vec![1, 2]));
        families.push((SimpleFactor::full(4, 1), vec![1, 2]));
        families.push((SimpleFactor::skew(8, 1), vec![1, 2]));
    } else if let Some((id, p)) = &o.case {
        match case(*id, *p) {
            Ok(c) => {
                for f in c.factors.iter().filter(|f| f.is_symbolic()) {
                    let alphas = if f.dim >= 10 { vec![1, 2] } else { vec![1, 2, 3] };
                    families.push((f.clone(), alphas));
                }
            }
            Err(e) => return input_error("bernstein.input", e),
        }
    }
    let mut out: Vec<CheckReport> = families.par_iter().flat_map(|(f, a)| bernstein_family_checks(f, a)).collect();
    let rows: Vec<CaseDescriptor> = table_rows().into_iter().filter(|c| selected(o, c.case_id)).collect();
    out.extend(rows.iter().map(roots_check));
    match selected_entries(o) {
        Ok(entries) => out.extend(
            entries.par_iter().map(|e| tag_lattice(a_ratio_check(&e.case, &e.q, 10), e, o.strict_integrality && o.q.is_none())).collect::<Vec<_>>(),
        ),
        Err(e) => out.extend(input_error("bernstein.input", e)),
    }
    if selected(o, 1) {
        out.push(radial_a_check(&[qi(0)], 4, 1e-8));
    }
    out
}

/// κ calibrated on case (1), q = 0, reported as its own check.
pub fn kappa_check() -> (CheckReport, KappaConvention) {
    let start = Instant::now();
    let c1 = case(1, default_params(1)).expect("case 1");
    match calibrate_kappa(&c1) {
        Some(conv) => (
            CheckReport::new("sl2.kappa")
                .case(1)
                .q(&[qi(0)])
                .details(format!("case (1), q = 0 fixes kappa = {} ({})", crate::rational::fmt_q(&conv.value(&c1)), conv.name()))
                .pass_if(true)
                .timed(start),
            conv,
        ),
        None => (
            CheckReport::new("sl2.kappa")
                .case(1)
                .details("neither kappa = 1/A nor kappa = A satisfies the relations on case (1)")
                .pass_if(false)
                .timed(start),
            KappaConvention::InverseA,
        ),
    }
}

pub fn factor_expansion_checks() -> Vec<CheckReport> {
    vec![
        factor_expansion_check(&[1, 1, 1, 1], &[vec![], vec![], vec![], vec![]], &vec![qi(1), qi(1), qi(1), qi(1)], true),
        factor_expansion_check(&[4], &[vec![q(1, 3), qi(2), q(-1, 2)]], &[q(5, 2)], true),
        factor_expansion_check(&[2, 1, 1], &[vec![q(-3, 7)], vec![], vec![]], &vec![qi(3), qi(3), qi(3)], true),
        factor_expansion_check(&[2, 2], &[vec![qi(1)], vec![q(1, 2)]], &[qi(1), qi(2)], false),
    ]
}

/// Symbol identity over the matrix, case (11) infeasibility, factor expansions.
pub fn sl2_suite(o: &Options) -> Vec<CheckReport> {
    let (kr, conv) = kappa_check();
    let mut out = vec![kr];
    if o.case.as_ref().is_none_or(|(id, _)| *id != 11) {
        match selected_entries(o) {
            Ok(entries) => out.extend(
                entries
                    .par_iter()
                    .map(|e| tag_lattice(pm_identity_check(&e.case, &e.q, conv), e, o.strict_integrality && o.q.is_none()))
                    .collect::<Vec<_>>(),
            ),
            Err(e) => out.extend(input_error("sl2.input", e)),
        }
    }
    if selected(o, 11) {
        out.extend(case11_checks(o, conv));
    }
    if o.case.is_none() {
        out.extend(factor_expansion_checks());
    }
    out
}

fn case11_checks(o: &Options, conv: KappaConvention) -> Vec<CheckReport> {
    let start = Instant::now();
    let c11 = case(11, default_params(11)).expect("case 11");
    let sol = solve_eta0(&c11);
    let mut out = vec![CheckReport::new("sl2.infeasible.11")
        .case(11)
        .details(format!(
            "{}; strict lattice feasible = {}, graded lattice feasible = {}",
            sol.description, sol.feasible_strict, sol.feasible_graded
        ))
        .pass_if(!sol.feasible_strict)
        .timed(start)];
    let forced = match &o.q {
        Some(qv) => vec![qv.clone()],
        None => vec![vec![qi(0), qi(0)], vec![qi(3), qi(1)]],
    };
    out.extend(forced.iter().map(|qv| pm_identity_check(&c11, qv, conv)));
    out
}

/// Operator relations, cyclicity and monomial norms.
pub fn operators_suite(o: &Options) -> Vec<CheckReport> {
    let (mut kr, conv) = kappa_check();
    kr.id = "operators.kappa".into();
    let mut out = vec![kr];
    let default_cases: Vec<(u32, Vec<Vec<Q>>)> = vec![
        (1, vec![vec![qi(0)], vec![qi(4)]]),
        (3, vec![vec![qi(0); 2], vec![qi(2); 2]]),
        (5, vec![vec![qi(0); 4], vec![qi(1); 4], vec![qi(2); 4]]),
    ];
    let jobs: Vec<(CaseDescriptor, Vec<Q>)> = match (&o.case, &o.q) {
        (None, _) => default_cases
            .iter()
            .flat_map(|(id, qs)| {
                let c = case(*id, default_params(*id)).expect("catalog case");
                qs.iter().map(move |qv| (c.clone(), qv.clone()))
            })
            .collect(),
        _ => match selected_entries(o) {
            Ok(e) => e.into_iter().map(|e| (e.case, e.q)).collect(),
            Err(e) => return input_error("operators.input", e),
        },
    };
    out.extend(jobs.par_iter().map(|(c, qv)| commutator_check(c, qv, o.trunc, conv)).collect::<Vec<_>>());
    let cyclic: Vec<(CaseDescriptor, Vec<Q>)> = if o.case.is_none() {
        default_cases.iter().map(|(id, qs)| (case(*id, default_params(*id)).expect("catalog case"), qs[0].clone())).collect()
    } else {
        jobs.iter().take(1).cloned().collect()
    };
    out.extend(cyclic.par_iter().map(|(c, qv)| cyclicity_check(c, qv, o.cyclic_trunc, conv)).collect::<Vec<_>>());
    if selected(o, 1) {
        let qv = o.q.clone().filter(|_| o.case.is_some()).unwrap_or_else(|| vec![qi(0)]);
        out.push(norm_check(3, &qv, 1e-8));
    }
    out
}

pub fn tables_suite() -> Vec<CheckReport> {
    vec![table_suite(), param_table_suite()]
}

/// The (case, q) pairs the moment identities are checked on.
pub fn moment_cases() -> Vec<(CaseDescriptor, Vec<Q>)> {
    let c1 = case(1, default_params(1)).expect("case 1");
    let c5 = case(5, default_params(5)).expect("case 5");
    let c9 = case(9, CaseParams { d: 1, ..Default::default() }).expect("case 9");
    vec![
        (c1.clone(), vec![qi(0)]),
        (c1, vec![qi(4)]),
        (c5.clone(), vec![qi(0); 4]),
        (c5, vec![qi(1); 4]),
        (c9.clone(), vec![qi(0)]),
        (c9, vec![qi(1)]),
    ]
}

/// c_m recurrence and positivity, F(0) = 1, the (c·a) identity, Meijer
/// moments and the sign scan.
pub fn meijer_suite(o: &Options) -> Vec<CheckReport> {
    let entries = match selected_entries(o) {
        Ok(e) => e,
        Err(e) => return input_error("meijer.input", e),
    };
    let mut out: Vec<CheckReport> = entries
        .par_iter()
        .flat_map(|e| {
            vec![
                tag_lattice(c_sequence_check(&e.case, &e.q, o.m_max), e, o.strict_integrality && o.q.is_none()),
                tag_lattice(kernel_zero_check(&e.case, &e.q), e, o.strict_integrality && o.q.is_none()),
                tag_lattice(ca_identity_check(&e.case, &e.q, 10), e, o.strict_integrality && o.q.is_none()),
            ]
        })
        .collect();
    let moments: Vec<(CaseDescriptor, Vec<Q>)> = match (&o.case, &o.q) {
        (None, _) => moment_cases(),
        _ => entries.iter().map(|e| (e.case.clone(), e.q.clone())).collect(),
    };
    out.extend(moments.par_iter().flat_map(|(c, qv)| moment_check(c, qv, o.moment_m_max, o.precision)).collect::<Vec<_>>());
    let scans: Vec<(CaseDescriptor, Vec<Q>)> = match &o.case {
        None => vec![(case(1, default_params(1)).expect("case 1"), vec![qi(0)])],
        Some(_) => entries.iter().take(1).map(|e| (e.case.clone(), e.q.clone())).collect(),
    };
    out.extend(scans.iter().map(|(c, qv)| sign_scan_check(c, qv, o.sign_points, o.precision)));
    out
}

/// Σ c_m u^m at u = 0 is exactly c_0 = 1.
pub fn kernel_zero_check(c: &CaseDescriptor, qv: &[Q]) -> CheckReport {
    let start = Instant::now();
    let base = CheckReport::new(format!("kernel.eval0.{}.{}", case_key(c), fmt_q_list(qv))).case(c.case_id).q(qv);
    match c_sequence(c, qv, 0).and_then(|s| kernel_eval(&s, Complex64::new(0.0, 0.0), 4, 1e-15)) {
        Ok(v) => {
            let ok = v.value == Complex64::new(1.0, 0.0);
            base.residual(format!("{:e}", (v.value - 1.0).norm())).details(format!("F(0) = {}", v.value)).pass_if(ok).timed(start)
        }
        Err(e) => base.details(e.to_string()).pass_if(false).timed(start),
    }
}

/// The three weighted-norm test functions, in (m, j, coefficient) form for
/// φ = Σ coefficient·z^j W^m.
pub fn bergman_functions() -> Vec<(&'static str, Bergman)> {
    vec![
        ("W", vec![(1, 0, 1.0)]),
        ("1+W", vec![(0, 0, 1.0), (1, 0, 1.0)]),
        ("1+z2W+z5W2/2", vec![(0, 0, 1.0), (1, 2, 1.0), (2, 5, 0.5)]),
    ]
}

pub fn bergman_suite(o: &Options) -> Vec<CheckReport> {
    if !selected(o, 1) {
        return Vec::new();
    }
    bergman_functions()
        .par_iter()
        .map(|(name, phi)| {
            let mut r = bergman_norm_case1(&[qi(0)], phi, o.precision);
            r.id = format!("bergman.case1.{name}");
            r
        })
        .collect()
}

/// Dimension count over every table row and the parametrized rows.
pub fn structure_suite(o: &Options) -> Vec<CheckReport> {
    let mut cases: Vec<CaseDescriptor> = table_rows();
    for p in 2..=4 {
        for id in [2, 6, 7] {
            cases.push(case(id, CaseParams { p, ..Default::default() }).expect("valid p"));
        }
    }
    for (p1, p2) in [(2, 2), (4, 2)] {
        cases.push(case(8, CaseParams { p1, p2, ..Default::default() }).expect("valid p"));
    }
    if let Some((id, p)) = &o.case {
        cases = match case(*id, *p) {
            Ok(c) => vec![c],
            Err(e) => return input_error("structure.input", e),
        };
    }
    let mut seen = std::collections::BTreeSet::new();
    cases.retain(|c| seen.insert(case_key(c)));
    cases.par_iter().map(|c| check_g_dimension_seeded(c, o.seed)).collect()
}

pub fn run_suite(s: Suite, o: &Options) -> Report {
    let checks = match s {
        Suite::Bernstein => bernstein_suite(o),
        Suite::Sl2 => sl2_suite(o),
        Suite::Operators => operators_suite(o),
        Suite::Tables => tables_suite(),
        Suite::Meijer => meijer_suite(o),
        Suite::Bergman => bergman_suite(o),
        Suite::Structure => structure_suite(o),
        Suite::All => Suite::ALL.iter().flat_map(|x| run_suite(*x, o).checks).collect(),
    };
    Report::new(s.name(), checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_shape() {
        let m = test_matrix(true);
        let ids: std::collections::BTreeSet<u32> = m.iter().map(|e| e.case.case_id).collect();
        assert_eq!(ids, (1..=10).collect());
        let c4: Vec<&MatrixEntry> = m.iter().filter(|e| e.case.case_id == 4).collect();
        assert_eq!(c4[0].q, vec![qi(1), qi(0), qi(0)]);
        assert_eq!(c4[0].lattice, Lattice::Graded);
        let c1: Vec<Vec<Q>> = m.iter().filter(|e| e.case.case_id == 1).map(|e| e.q.clone()).collect();
        assert_eq!(c1, vec![vec![qi(0)], vec![qi(4)]]);
        assert_eq!("sl2-operators".parse::<Suite>().unwrap(), Suite::Operators);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn single_case_sl2() {
        let o = Options { case: Some((11, default_params(11))), ..Default::default() };
        let r = run_suite(Suite::Sl2, &o);
        assert!(!r.any_failed(), "{}", r.to_json());
        assert!(r.checks.iter().any(|c| c.id == "sl2.infeasible.11"));
    }
}
