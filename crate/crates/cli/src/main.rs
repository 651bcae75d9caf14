use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde_json::json;

use focklab::jordan::{case, catalog, default_params, CaseDescriptor, CaseParams};
use focklab::kernel::meijer::{ca_values, meijer_params, moments_by_quadrature, sign_scan, weight_profile};
use focklab::kernel::{c_sequence, spectral_params};
use focklab::rational::{fmt_q, fmt_q_list, parse_q_list, to_f64, Q};
use focklab::sl2::{feasible_qs, solve_eta0, Lattice};
use focklab::suites::{run_suite, Options, Suite};
use focklab::Error;

/// println! that stays quiet when stdout is closed early (e.g. piped to head).
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser, Debug)]
#[command(name = "focklab", version, about = "Exact and numerical checks for generalized Fock space models")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args, Debug, Clone)]
struct Common {
    /// Case number 1..=11.
    #[arg(long, global = true)]
    case: Option<u32>,
    /// q as a comma list of rationals; a single value is used for every factor.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, global = true)]
    p: Option<u32>,
    #[arg(long, global = true)]
    p1: Option<u32>,
    #[arg(long, global = true)]
    p2: Option<u32>,
    #[arg(long, global = true)]
    d: Option<u32>,
    /// Truncation degree M for operator checks.
    #[arg(long, global = true, default_value_t = 6)]
    trunc: u32,
    #[arg(short = 'm', long = "m-max", global = true)]
    m_max: Option<usize>,
    /// Decimal digits for the numerical routines (capped at 11).
    #[arg(long, global = true, env = "FOCKLAB_PRECISION", default_value_t = 12)]
    precision: u32,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Admissible q on the lattice q_i ∈ k_i N (false: q_i ∈ N).
    #[arg(long, global = true, action = ArgAction::Set, num_args = 0..=1,
          default_value_t = true, default_missing_value = "true")]
    strict_integrality: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Cases, factors and expected Lie algebras as JSON.
    Catalog,
    /// Run a check suite; exit 0 if nothing failed, 1 otherwise.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Plot-ready CSV.
    Export {
        #[arg(value_enum)]
        what: ExportKind,
        /// Grid points for weight-profile.
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 1e-3)]
        u_min: f64,
        #[arg(long, default_value_t = 1e4)]
        u_max: f64,
    },
    /// η₀ relations and the first admissible q on both lattices.
    AdmissibleQ {
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// Exact kernel coefficients c_m as CSV m,c_m_num,c_m_den.
    KernelCoeffs,
    /// Meijer G parameters, optionally with quadrature moments.
    Meijer {
        #[arg(long)]
        moments: bool,
    },
    /// Sign changes of the pseudo-weight G on a log grid.
    WeightScan {
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 1e-3)]
        u_min: f64,
        #[arg(long, default_value_t = 1e4)]
        u_max: f64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Cm,
    Moments,
    WeightProfile,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command: 0 ok, 1 a check failed, 2 usage or input error.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("focklab: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("focklab: {e}");
            ExitCode::from(2)
        }
    }
}

impl Common {
    fn params(&self, id: u32) -> CaseParams {
        let d = default_params(id);
        CaseParams {
            p: self.p.unwrap_or(d.p),
            p1: self.p1.unwrap_or(d.p1),
            p2: self.p2.unwrap_or(d.p2),
            d: self.d.unwrap_or(d.d),
        }
    }

    fn selected_case(&self) -> Result<Option<CaseDescriptor>, Error> {
        self.case.map(|id| case(id, self.params(id))).transpose()
    }

    fn require_case(&self) -> Result<CaseDescriptor, Error> {
        self.selected_case()?.ok_or_else(|| Error::Invalid("--case is required".into()))
    }

    fn q_for(&self, c: &CaseDescriptor) -> Result<Option<Vec<Q>>, Error> {
        let Some(s) = &self.q else { return Ok(None) };
        let v = parse_q_list(s)?;
        let n = c.factors.len();
        match v.len() {
            1 if n > 1 => Ok(Some(vec![v[0].clone(); n])),
            l if l == n => Ok(Some(v)),
            l => Err(Error::DimensionMismatch { expected: n, got: l }),
        }
    }

    /// Explicit q, else the smallest admissible q.
    fn require_q(&self, c: &CaseDescriptor) -> Result<Vec<Q>, Error> {
        if let Some(v) = self.q_for(c)? {
            return Ok(v);
        }
        let sol = solve_eta0(c);
        let lattice = if self.strict_integrality && sol.feasible_strict { Lattice::Strict } else { Lattice::Graded };
        feasible_qs(c, &sol, lattice, 1)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Infeasible(format!("case ({}) has no admissible q; pass --q", c.case_id)))
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.json {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display()))),
            None => Ok(()),
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let o = &cli.common;
    match &cli.cmd {
        Cmd::Catalog => {
            let cases = match o.selected_case()? {
                Some(c) => vec![c],
                None => catalog(),
            };
            let items: Vec<serde_json::Value> = cases
                .iter()
                .map(|c| {
                    let sol = solve_eta0(c);
                    json!({
                        "case": c,
                        "dim_v": c.dim_v(),
                        "eta0": sol.description,
                        "feasible_strict_lattice": sol.feasible_strict,
                        "feasible_graded_lattice": sol.feasible_graded,
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&json!({ "schema_version": 1, "cases": items }))
                .expect("catalog serializes");
            out!("{text}");
            o.emit(&text)?;
            Ok(Outcome::Ok)
        }
        Cmd::Verify { suite } => {
            let case_sel = match o.selected_case()? {
                Some(c) => Some((c.case_id, c.params)),
                None => None,
            };
            let q = match o.selected_case()? {
                Some(c) => o.q_for(&c)?,
                None if o.q.is_some() => return Err(Error::Invalid("--q needs --case".into())),
                None => None,
            };
            let mut opts = Options {
                case: case_sel,
                q,
                strict_integrality: o.strict_integrality,
                trunc: o.trunc,
                precision: o.precision,
                seed: o.seed,
                ..Default::default()
            };
            if let Some(m) = o.m_max {
                opts.m_max = m;
            }
            let report = run_suite(*suite, &opts);
            let text = report.to_json();
            if o.format == Some(Format::Json) {
                out!("{text}");
            } else {
                for c in &report.checks {
                    out!("{:<13} {}  {}", format!("{:?}", c.status).to_lowercase(), c.id, c.details);
                }
                out!("{}", report.summary_line());
            }
            o.emit(&text)?;
            Ok(if report.any_failed() { Outcome::Failed } else { Outcome::Ok })
        }
        Cmd::Export { what, grid, u_min, u_max } => {
            let c = o.require_case()?;
            let qv = o.require_q(&c)?;
            let rows = match what {
                ExportKind::Cm => export_cm(&c, &qv, o.m_max.unwrap_or(20))?,
                ExportKind::Moments => export_moments(&c, &qv, o.m_max.unwrap_or(5), o.precision)?,
                ExportKind::WeightProfile => {
                    let mp = meijer_params(&c, &qv)?;
                    let mut rows = vec!["u,G".to_string()];
                    for (u, g) in weight_profile(&mp, *u_min, *u_max, *grid, o.precision)? {
                        rows.push(format!("{u:.12e},{g:.12e}"));
                    }
                    rows
                }
            };
            print_rows(o, &rows)
        }
        Cmd::AdmissibleQ { count } => {
            let cases = match o.selected_case()? {
                Some(c) => vec![c],
                None => catalog(),
            };
            let items: Vec<serde_json::Value> = cases
                .iter()
                .map(|c| {
                    let sol = solve_eta0(c);
                    let list = |l| {
                        feasible_qs(c, &sol, l, *count)
                            .iter()
                            .map(|qv| json!({ "q": fmt_q_list(qv), "eta0": fmt_q(&sol.eta0_at(&qv[0])) }))
                            .collect::<Vec<_>>()
                    };
                    json!({
                        "case_id": c.case_id,
                        "relations": sol.description,
                        "strict_lattice": list(Lattice::Strict),
                        "graded_lattice": list(Lattice::Graded),
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&items).expect("serializes");
            if o.format == Some(Format::Json) {
                out!("{text}");
            } else {
                for (c, v) in cases.iter().zip(&items) {
                    out!("({}) {}", c.case_id, v["relations"].as_str().unwrap_or(""));
                    for lat in ["strict_lattice", "graded_lattice"] {
                        let qs: Vec<String> = v[lat]
                            .as_array()
                            .map(|a| a.iter().map(|x| format!("q={} eta0={}", x["q"], x["eta0"])).collect())
                            .unwrap_or_default();
                        out!("  {lat}: {}", if qs.is_empty() { "none".into() } else { qs.join("; ") });
                    }
                }
            }
            o.emit(&text)?;
            Ok(Outcome::Ok)
        }
        Cmd::KernelCoeffs => {
            let c = o.require_case()?;
            let qv = o.require_q(&c)?;
            let s = c_sequence(&c, &qv, o.m_max.unwrap_or(20))?;
            let mut rows = vec!["m,c_m_num,c_m_den".to_string()];
            rows.extend(s.coeffs.iter().enumerate().map(|(m, x)| format!("{m},{},{}", x.numer(), x.denom())));
            print_rows(o, &rows)
        }
        Cmd::Meijer { moments } => {
            let c = o.require_case()?;
            let qv = o.require_q(&c)?;
            let mp = meijer_params(&c, &qv)?;
            let sp = spectral_params(&c, &qv)?;
            let (ra, rb) = mp.reduced();
            let mut v = json!({
                "case_id": c.case_id,
                "q": fmt_q_list(&qv),
                "eta0": fmt_q(&mp.eta0),
                "series": format!("{:?}", sp.kind),
                "alpha": mp.alpha.iter().map(fmt_q).collect::<Vec<_>>(),
                "beta": mp.beta.iter().map(fmt_q).collect::<Vec<_>>(),
                "reduced_alpha": ra.iter().map(fmt_q).collect::<Vec<_>>(),
                "reduced_beta": rb.iter().map(fmt_q).collect::<Vec<_>>(),
            });
            if *moments {
                let m_max = o.m_max.unwrap_or(5);
                let quad = moments_by_quadrature(&mp, m_max, o.precision)?;
                v["moments"] = quad
                    .iter()
                    .enumerate()
                    .map(|(m, (val, err))| {
                        let (lv, sign) = mp.ln_mellin(m as f64 + 1.0);
                        json!({ "m": m, "quadrature": val, "error_estimate": err, "gamma_ratio": sign * lv.exp() })
                    })
                    .collect();
            }
            let text = serde_json::to_string_pretty(&v).expect("serializes");
            out!("{text}");
            o.emit(&text)?;
            Ok(Outcome::Ok)
        }
        Cmd::WeightScan { grid, u_min, u_max } => {
            let c = o.require_case()?;
            let qv = o.require_q(&c)?;
            let mp = meijer_params(&c, &qv)?;
            let iv = sign_scan(&mp, *u_min, *u_max, *grid, o.precision)?;
            let v = json!({
                "case_id": c.case_id,
                "q": fmt_q_list(&qv),
                "sign_changes": iv.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            });
            let text = serde_json::to_string_pretty(&v).expect("serializes");
            if o.format == Some(Format::Json) {
                out!("{text}");
            } else {
                out!("case ({}) q = {}: {} sign change(s) on [{u_min}, {u_max}]", c.case_id, fmt_q_list(&qv), iv.len());
                for (a, b) in &iv {
                    out!("  ({a:.6e}, {b:.6e})");
                }
            }
            o.emit(&text)?;
            Ok(Outcome::Ok)
        }
    }
}

fn export_cm(c: &CaseDescriptor, qv: &[Q], m_max: usize) -> Result<Vec<String>, Error> {
    let s = c_sequence(c, qv, m_max)?;
    let mut rows = vec!["m,c_m_num,c_m_den,c_m".to_string()];
    rows.extend(s.coeffs.iter().enumerate().map(|(m, x)| format!("{m},{},{},{:.15e}", x.numer(), x.denom(), to_f64(x))));
    Ok(rows)
}

fn export_moments(c: &CaseDescriptor, qv: &[Q], m_max: usize, precision: u32) -> Result<Vec<String>, Error> {
    let mp = meijer_params(c, qv)?;
    let quad = moments_by_quadrature(&mp, m_max, precision)?;
    let ca = ca_values(c, qv, m_max)?;
    let fitted = 1.0 / (quad[0].0 * to_f64(&ca[0]));
    let mut rows = vec!["m,quadrature,error_estimate,gamma_ratio,ca_prediction".to_string()];
    for (m, (val, err)) in quad.iter().enumerate() {
        let (lv, sign) = mp.ln_mellin(m as f64 + 1.0);
        let pred = 1.0 / (fitted * to_f64(&ca[m]));
        rows.push(format!("{m},{val:.15e},{err:.3e},{:.15e},{pred:.15e}", sign * lv.exp()));
    }
    Ok(rows)
}

/// CSV to stdout, or a JSON array of row objects with --format json.
fn print_rows(o: &Common, rows: &[String]) -> Result<Outcome, Error> {
    let header: Vec<&str> = rows[0].split(',').collect();
    let objs: Vec<serde_json::Value> = rows[1..]
        .iter()
        .map(|r| {
            let m: serde_json::Map<String, serde_json::Value> =
                header.iter().zip(r.split(',')).map(|(h, x)| (h.to_string(), json!(x))).collect();
            serde_json::Value::Object(m)
        })
        .collect();
    let text = serde_json::to_string_pretty(&objs).expect("serializes");
    if o.format == Some(Format::Json) {
        out!("{text}");
    } else {
        for r in rows {
            out!("{r}");
        }
    }
    o.emit(&text)?;
    Ok(Outcome::Ok)
}
