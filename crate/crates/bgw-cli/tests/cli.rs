use std::process::{Command, Output};

fn bgw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgw")).args(args).output().expect("run bgw")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_g3() {
    let o = bgw(&["table", "--g", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "g = 3, D = 1280\n(2)\t75/256\t0.292969\t375\n(1,1)\t189/640\t0.295313\t378\n");
}

#[test]
fn compute_json() {
    let o = bgw(&["--json", "compute", "1,1,1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bracket"], "7221/2048");
    assert_eq!(v["C"], "21663/71680");
}

#[test]
fn compute_power_form() {
    let o = bgw(&["compute", "3^3", "--digits", "8"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("C(3^3) = 0."), "{s}");
    assert!(s.contains("1 - Chat = "));
}

#[test]
fn checks_and_strictness() {
    let o = bgw(&["check", "nesting", "--gmax", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("nesting [conjecture] 2 <= g <= 8"));
    // the literal factorial divisibility statement has counterexamples from g = 5
    assert!(bgw(&["check", "integrality", "--gmax", "6"]).status.success());
    assert_eq!(bgw(&["--strict-conjectures", "check", "integrality", "--gmax", "6"]).status.code(), Some(1));
    assert!(bgw(&["--strict-conjectures", "check", "monotone", "--gmax", "8"]).status.success());
    let o = bgw(&["--json", "--threads", "2", "check", "cross", "--gmax", "5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["kind"], "theorem");
    assert!(v[0]["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn intervals_csv() {
    let dir = std::env::temp_dir().join(format!("bgw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("i.csv");
    let o = bgw(&["check", "intervals", "--gmax", "6", "--csv", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("g,n,C\n6,1,"));
    assert_eq!(text.lines().count(), 8);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cache_cycle() {
    let dir = std::env::temp_dir().join(format!("bgw-cli-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("c.txt");
    let ps = p.to_str().unwrap();
    assert!(bgw(&["cache", "save", "--path", ps, "--xmax", "10"]).status.success());
    let first = std::fs::read(&p).unwrap();
    let o = bgw(&["cache", "load", "--path", ps]);
    assert!(stdout(&o).contains("x_max = 10"));
    // loading through --cache and writing back leaves the file unchanged
    assert!(bgw(&["--cache", ps, "painleve", "y", "--n", "3"]).status.success());
    assert_eq!(std::fs::read(&p).unwrap(), first);
    std::fs::write(&p, "bgw-cache version=9 x_max=1\nB 0 1/8\n").unwrap();
    assert_eq!(bgw(&["cache", "load", "--path", ps]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn series_painleve_kappa() {
    let o = bgw(&["--json", "series", "gamma", "--order", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!(["1", "-1/2", "5/8", "-11/16"]));
    let o = bgw(&["painleve", "y", "--n", "3"]);
    assert_eq!(stdout(&o), "1\t1/4\n2\t9/4\n3\t1323/16\n");
    assert!(bgw(&["painleve", "residual", "--d", "2", "--n", "4"]).status.success());
    let o = bgw(&["kappa", "table", "--g", "3"]);
    assert!(stdout(&o).starts_with("g = 3, D = 1280\n(2;)\t333/1280"));
    let o = bgw(&["kappa", "number", "--m", "2", "--d", "1"]);
    assert!(stdout(&o).starts_with("<kappa^2 tau(1)> = 106911/32768"));
    assert!(bgw(&["series", "subexp", "--n", "3", "--order", "3"]).status.success());
    assert!(bgw(&["series", "wlambda", "--lambda", "1,2", "--order", "10"]).status.success());
}
