use modpic::verify::{parse_replay, replay, run, Suite, VerifyOptions};

fn opts(suite: Suite, trials: usize, seed: u64) -> VerifyOptions {
    VerifyOptions { suite, trials, seed, inject_fault: false }
}

#[test]
fn p_primary_seed_42() {
    let r = run(&opts(Suite::PPrimary, 100, 42)).unwrap();
    assert!(r.ok, "{}", r.to_text());
    assert_eq!(r.passed, 100);
}

#[test]
fn key_lem_p_seed_7() {
    let r = run(&opts(Suite::KeyLemP, 100, 7)).unwrap();
    assert!(r.ok, "{}", r.to_text());
}

#[test]
fn lang_orders_hold() {
    let r = run(&opts(Suite::LangOrders, 100, 3)).unwrap();
    assert!(r.ok, "{}", r.to_text());
}

#[test]
fn runs_are_byte_identical() {
    for suite in [Suite::TorsionIso, Suite::NormCompat, Suite::Char0Divisible] {
        let a = serde_json::to_string(&run(&opts(suite, 40, 11)).unwrap()).unwrap();
        let b = serde_json::to_string(&run(&opts(suite, 40, 11)).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn corrupted_comparison_fails_and_replays() {
    let r = run(&VerifyOptions { suite: Suite::TorsionIso, trials: 60, seed: 5, inject_fault: true }).unwrap();
    assert!(!r.ok);
    let failure = r.failures().next().unwrap();
    let payload = failure.replay.clone().expect("failures carry a replay payload");
    let text = serde_json::to_string(&payload).unwrap();
    let again = replay(&parse_replay(&text).unwrap()).unwrap();
    assert_eq!(again.trials, 1);
    assert!(!again.ok);
    assert_eq!(again.results[0].instance, failure.instance);
    assert_eq!(again.results[0].detail, failure.detail);
}

#[test]
fn replay_rejects_foreign_grids_and_junk() {
    assert_eq!(parse_replay("{").unwrap_err().exit_code(), 2);
    let p = parse_replay(r#"{"suite": "p-primary", "version": "0", "grid": "grid-v0", "index": 0, "trial_seed": 1}"#)
        .unwrap();
    assert_eq!(replay(&p).unwrap_err().exit_code(), 2);
}

#[test]
fn zero_trials_is_a_usage_error() {
    assert_eq!(run(&opts(Suite::KeyLem, 0, 0)).unwrap_err().exit_code(), 2);
}
