use std::process::{Command, Output};

use focklab::report::Report;
use serde_json::Value;

fn focklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_focklab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_lists_eleven_cases() {
    let o = focklab(&["catalog"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["cases"].as_array().unwrap().len(), 11);
}

#[test]
fn catalog_case5() {
    let v: Value = serde_json::from_str(&stdout(&focklab(&["catalog", "--case", "5"]))).unwrap();
    let c = &v["cases"][0]["case"];
    assert_eq!(c["expected_g_name"], "so(8,C)");
    assert_eq!(c["expected_g_dim"], 28);
    let f = c["factors"].as_array().unwrap();
    assert_eq!(f.len(), 4);
    assert!(f.iter().all(|x| x["family"] == "Rank1"));
}

#[test]
fn catalog_parametrized() {
    let v: Value = serde_json::from_str(&stdout(&focklab(&["catalog", "--case", "2", "--p", "6"]))).unwrap();
    let c = &v["cases"][0]["case"];
    assert_eq!(c["params"]["p"], 6);
    assert_eq!(c["factors"][0]["size"], 6);
}

#[test]
fn verify_case11_confirms_infeasibility() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = focklab(&["verify", "sl2", "--case", "11", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!r.any_failed());
    assert!(r.checks.iter().any(|c| c.id == "sl2.infeasible.11"));
}

#[test]
fn verify_tables_is_deterministic() {
    let strip = |s: String| -> Value {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c["elapsed_ms"] = Value::Null;
        }
        v
    };
    let a = focklab(&["verify", "tables", "--format", "json"]);
    let b = focklab(&["verify", "tables", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
}

#[test]
fn exit_codes() {
    assert_eq!(focklab(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(focklab(&["verify", "sl2", "--case", "12"]).status.code(), Some(2));
    assert_eq!(focklab(&["verify", "sl2", "--case", "3", "--q", "1,2,3"]).status.code(), Some(2));
    assert_eq!(focklab(&["export", "cm"]).status.code(), Some(2));
    // q = -1 puts a pole of Γ(α + s) at s = 1 and makes (c·a)_m vanish
    assert_eq!(focklab(&["verify", "meijer", "--case", "1", "--q=-1"]).status.code(), Some(1));
}

#[test]
fn export_cm_rows() {
    let o = focklab(&["export", "cm", "--case", "1", "--q", "0", "-m", "20"]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "m,c_m_num,c_m_den,c_m");
    assert_eq!(lines.len(), 22);
    assert!(lines[2].starts_with("1,10,3,"));
}

#[test]
fn kernel_coeffs_case5() {
    // (m+1)/(m!)²
    let s = stdout(&focklab(&["kernel-coeffs", "--case", "5", "--q", "0", "-m", "4"]));
    let rows: Vec<&str> = s.lines().skip(1).collect();
    assert_eq!(rows, vec!["0,1,1", "1,2,1", "2,3,4", "3,1,9", "4,5,576"]);
}

#[test]
fn export_moments_case5() {
    let s = stdout(&focklab(&["export", "moments", "--case", "5", "--q", "0", "-m", "5"]));
    let rows: Vec<Vec<f64>> =
        s.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 6);
    // ∏Γ(β+m+1)/∏Γ(α+m+1) with β = (1,1,1,1), α = (0,1): (m+1)!³/m!
    let expect = [1.0, 8.0, 108.0, 2304.0, 72000.0, 3110400.0];
    for (r, e) in rows.iter().zip(expect) {
        assert!(((r[1] - e) / e).abs() < 1e-8, "{r:?}");
        assert!(((r[3] - e) / e).abs() < 1e-10, "{r:?}");
    }
}

#[test]
fn weight_profile_changes_sign() {
    let s = stdout(&focklab(&["export", "weight-profile", "--case", "1", "--q", "0", "--grid", "200"]));
    let g: Vec<f64> = s.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(g.len(), 200);
    assert!(g.windows(2).any(|w| w[0] * w[1] < 0.0));
}

#[test]
fn admissible_q_case4_graded_only() {
    let s = stdout(&focklab(&["admissible-q", "--case", "4", "--format", "json"]));
    let v: Value = serde_json::from_str(&s).unwrap();
    assert!(v[0]["strict_lattice"].as_array().unwrap().is_empty());
    assert_eq!(v[0]["graded_lattice"][0]["q"], "1,0,0");
}

#[test]
fn meijer_params_case1() {
    let v: Value = serde_json::from_str(&stdout(&focklab(&["meijer", "--case", "1", "--q", "0"]))).unwrap();
    assert_eq!(v["alpha"], serde_json::json!(["-3/4", "1/4"]));
    assert_eq!(v["reduced_beta"], serde_json::json!(["-1/2", "-1/4", "0"]));
}
