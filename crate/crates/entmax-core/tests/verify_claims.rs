//! The scripted claims at full strength beyond the unit-test scale:
//! the theorem check holds through n = 8.

use entmax_core::verify::{check_theorem, claim_ids, RunOptions};

#[test]
fn theorem_claims_hold_through_n8() {
    for n in 7..=8 {
        let check = check_theorem(n, 32, 0).unwrap();
        assert!(check.passed, "n = {n}: {:?}", check.details);
        assert!(check.details["gap_bits"] <= 1e-4);
    }
}

#[test]
fn claim_roster_matches_run_options() {
    let opts = RunOptions::default();
    let ids = claim_ids(&opts);
    assert_eq!(ids.len(), 3 + opts.theorem_n_max);
    assert!(ids.contains(&"prop-parity".to_string()));
    assert!(ids.contains(&"thm-main-n8".to_string()));
}
