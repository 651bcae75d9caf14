use focklab::jordan::{case, default_params, table_rows, CaseParams};
use focklab::structure::check_g_dimension;

#[test]
fn every_table_row() {
    for c in table_rows() {
        if !c.is_symbolic() {
            continue;
        }
        let r = check_g_dimension(&c);
        assert!(r.passed(), "{} {}", r.id, r.details);
    }
}

#[test]
fn parametrized_rows() {
    for p in 2..=4 {
        for id in [2, 6, 7] {
            let c = case(id, CaseParams { p, ..default_params(id) }).unwrap();
            let r = check_g_dimension(&c);
            assert!(r.passed(), "{} {}", r.id, r.details);
        }
    }
    for (p1, p2) in [(2, 2), (4, 2)] {
        let c = case(8, CaseParams { p1, p2, ..default_params(8) }).unwrap();
        let r = check_g_dimension(&c);
        assert!(r.passed(), "{} {}", r.id, r.details);
    }
}
