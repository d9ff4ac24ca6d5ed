use std::process::Command;

fn quadweb() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quadweb"));
    c.env_remove("QUADWEB_BUDGET").env_remove("QUADWEB_MAX_DEGREE");
    c
}

fn lines(out: &[u8]) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn invariants_succeeds_with_json_lines() {
    let out = quadweb().arg("invariants").output().unwrap();
    assert!(out.status.success());
    let ls = lines(&out.stdout);
    assert_eq!(ls[0]["type"], "run");
    assert_eq!(ls.last().unwrap()["type"], "summary");
    assert_eq!(ls.last().unwrap()["status"], "pass");
    assert!(String::from_utf8_lossy(&out.stderr).contains("chain.agreement"));
}

#[test]
fn census_budget_from_environment() {
    let out = quadweb()
        .args(["census", "--case", "bezout16", "--seed", "2", "--quiet"])
        .env("QUADWEB_BUDGET", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let ls = lines(&out.stdout);
    assert_eq!(ls[0]["config"]["budget"]["max_pairs"], 1);
    assert_eq!(ls[1]["status"], "inconclusive");
}

#[test]
fn web_sample_show_and_reuse() {
    let dir = std::env::temp_dir().join(format!("quadweb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("web.json");
    let out = quadweb().args(["web", "sample", "--seed", "8", "--out"]).arg(&file).output().unwrap();
    assert!(out.status.success());
    let hash = lines(&out.stdout)[0]["hash"].clone();
    let show = quadweb().args(["web", "show", "--in"]).arg(&file).output().unwrap();
    assert!(show.status.success());
    let shown = &lines(&show.stdout)[0];
    assert_eq!(shown["hash"], hash);
    assert_eq!(shown["octic_degree"], 8);
    let report = dir.join("nodes.jsonl");
    let nodes = quadweb().args(["nodes", "--quiet", "--web"]).arg(&file).arg("--out").arg(&report).output().unwrap();
    assert!(nodes.status.success());
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(lines(text.as_bytes())[0]["web_hashes"][0], hash);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_arguments_exit_with_error() {
    let out = quadweb().args(["correspondence", "--prime", "91"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = quadweb().args(["census", "--case", "nodes11"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn correspondence_small_run() {
    let out = quadweb()
        .args(["correspondence", "--seed", "3", "--trials", "10", "--webs", "1", "--octic-trials", "2", "--disc-samples", "10", "--quiet"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let ls = lines(&out.stdout);
    assert_eq!(ls.last().unwrap()["counters"]["trials"], 22);
}
