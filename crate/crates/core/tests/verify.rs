use baumsweet::verify::{self, Profile, Status, VerifyError};

#[test]
fn quick_profile_meets_every_expectation() {
    let report = verify::run_all(Profile::Quick);
    let unmet: Vec<_> = report
        .checks
        .iter()
        .filter(|c| !c.met())
        .map(|c| c.id.clone())
        .collect();
    assert!(unmet.is_empty(), "unmet: {unmet:?}");
    assert_eq!(report.summary.flagged, 3);
}

#[test]
fn json_schema() {
    let report = verify::run_selected(
        Profile::Quick,
        &["eq.d_eq".into(), "typo.q_recur_r.printed_form".into()],
        &[],
        1,
    )
    .unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["profile"], "quick");
    let checks = v["checks"].as_array().unwrap();
    for key in ["id", "status", "expected", "bounds", "millis"] {
        assert!(checks.iter().all(|c| c.get(key).is_some()), "{key}");
    }
    assert!(checks[0].get("counterexample").is_none());
    assert_eq!(checks[1]["counterexample"]["at"]["n"], 0);
    assert_eq!(checks[1]["counterexample"]["at"]["r"], 2);
    assert_eq!(v["summary"]["total"], 2);
}

#[test]
fn table_is_byte_stable() {
    let ids: Vec<String> = ["seq.b_prefix20", "dual.q", "kernel.exact"]
        .map(String::from)
        .to_vec();
    let a = verify::run_selected(Profile::Quick, &ids, &[], 1)
        .unwrap()
        .to_table();
    let b = verify::run_selected(Profile::Quick, &ids, &[], 2)
        .unwrap()
        .to_table();
    assert_eq!(a, b);
}

#[test]
fn expected_fail_that_passes_is_unmet() {
    // with only q_0, q_1 known the printed recurrence has nothing to contradict
    let r = verify::run_check(
        "typo.q_recur_r.printed_form",
        Profile::Quick,
        &[("n".into(), 2)],
    )
    .unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(!r.met());
}

#[test]
fn selection_errors() {
    assert_eq!(
        verify::run_selected(Profile::Quick, &["nope".into()], &[], 1).err(),
        Some(VerifyError::UnknownCheck("nope".into()))
    );
    assert!("slow".parse::<Profile>().is_err());
}
