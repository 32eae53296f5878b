use operadcalc::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("operadcalc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = call(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")))
}

#[test]
fn div_moves_the_root_to_the_basepoint() {
    let (code, out, _) = call(&["div", "--set", "x,y", "--gens", "*:2", "--tree", "x<-*(x,*(y,y))"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1*(+<-*(+,*(y,y)))");
}

#[test]
fn prelie_and_bracket_agree_when_one_side_has_no_match() {
    let (_, p, _) = call(&["prelie", "x<-*(x,y)", "y<-*(y,y)"]);
    let (_, b, _) = call(&["bracket", "x<-*(x,y)", "y<-*(y,y)"]);
    assert_eq!(p.trim(), "1*x<-*(x,*(y,y))");
    assert_eq!(p, b);
}

#[test]
fn cocycle_suite_passes_as_json() {
    let (code, v) = json(&["suite", "cocycle", "--set", "x,y", "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "cocycle");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["per_degree"].as_array().unwrap().len(), 3);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn derpl_on_one_label_is_an_expected_failure() {
    let (code, v) = json(&["suite", "derpl", "--set", "x", "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "expected-failure");
    let d2 = &v["per_degree"][1];
    assert_eq!(d2["degree"], 2);
    assert_eq!(d2["dims"]["der"], 2);
    assert_eq!(d2["dims"]["derpl"], 1);
    assert!(v["counterexample"].is_string());
}

#[test]
fn derpl_on_two_labels_passes() {
    let (code, v) = json(&["suite", "derpl", "--set", "x,y", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
}

#[test]
fn suite_output_is_deterministic() {
    let args = ["suite", "cocycle", "--operad", "lie", "--rank", "2", "--max-degree", "2", "--seed", "7", "--format", "json"];
    assert_eq!(call(&args).1, call(&args).1);
}

#[test]
fn timing_is_opt_in() {
    let (_, v) = json(&["suite", "prelie", "--max-degree", "1", "--timing"]);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn exhausted_budget_exits_three() {
    let (code, v) = json(&["suite", "derpl", "--set", "x", "--max-degree", "2", "--budget-ms", "0"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "budget-exceeded");
}

#[test]
fn prune_splits_at_the_edge() {
    let (code, out, _) = call(&["tree", "prune", "--edge", "2", "x<-*(x,*(y,y))"]);
    assert_eq!(code, 0);
    assert_eq!(out, "lower: x<-*(x,+)\nupper: +<-*(y,y)\n");
}

#[test]
fn lie_dimensions_follow_the_witt_formula() {
    let (code, out, _) = call(&["dims", "--operad", "lie", "--max-degree", "3", "--rank", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    let der: Vec<u64> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    // Der_d has dimension rank times the number of Lyndon words of length d + 1.
    assert_eq!(der, vec![4, 2, 4, 6]);
}

#[test]
fn satoh_trace_of_an_inner_derivation_piece() {
    let (code, out, _) = call(&["classical", "satoh", "x -> [x,y]", "--rank", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-1*~y");
}

#[test]
fn malformed_input_exits_two() {
    let (code, _, err) = call(&["tree", "classify", "z<-*(x,z)"]);
    assert_eq!(code, 2);
    assert!(err.contains("label `z`"));
    assert_eq!(call(&["suite", "derpl", "--max-degree", "two"]).0, 2);
}
