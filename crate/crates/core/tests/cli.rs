use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hennings"))
        .args(args)
        .env_remove("HENNINGS_MAX_CROSSINGS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(line: &'a str, key: &str) -> &'a str {
    line.split(' ')
        .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {line:?}"))
}

#[test]
fn invariant_examples() {
    let o = run(&["invariant", "--algebra", "dbz", "--ell", "3", "--link", "unknot_p1.tgl"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(field(&s, "value"), "1");
    assert_eq!(field(&s, "sigma"), "1");
    assert_eq!(field(&s, "h").trim(), "1");
    assert_eq!(field(&s, "integral").trim(), "true");

    let o = run(&["invariant", "--algebra", "A", "--ell", "3", "--link", "lens5.tgl"]);
    assert_eq!(field(&stdout(&o), "value"), "-1");
    let o = run(&["invariant", "--algebra", "dbz", "--ell", "3", "--link", "unknot_0.tgl"]);
    assert_eq!(field(&stdout(&o), "value"), "0");
}

#[test]
fn json_lines_mirror_text() {
    let args = ["invariant", "--algebra", "uzeta", "--ell", "3", "--link", "trefoil.tgl"];
    let text = stdout(&run(&args));
    let mut with = args.to_vec();
    with.extend(["--format", "json-lines"]);
    let json: serde_json::Value = serde_json::from_str(stdout(&run(&with)).trim()).unwrap();
    for key in ["algebra", "ell", "sigma", "h", "order", "value", "integral"] {
        let v = &json[key];
        let as_text = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
        assert!(text.contains(&format!("{key}={as_text}")), "{key}: {text}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["invariant", "--algebra", "dbz", "--ell", "3", "--link", "hopf_0_1.tgl"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("hennings-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.tgl");
    std::fs::write(&broken, "closed\ncup 1\ncup 3\nxp 2\n").unwrap();
    let o = run(&["invariant", "--link", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["invariant", "--link", "missing.tgl"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--link", "lens5.tgl", "--ell", "4"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--link", "lens5.tgl", "--even-framing"]).status.code(), Some(2));
    assert!(run(&["invariant", "--link", "lens2.tgl", "--even-framing"]).status.success());
    assert_eq!(run(&["invariant", "--link", "lens5.tgl", "--max-crossings", "4"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_hennings"))
        .args(["invariant", "--link", "lens5.tgl"])
        .env("HENNINGS_MAX_CROSSINGS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["balance", "--type", "H4", "--ell", "5"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_suites() {
    for args in [
        vec!["verify", "lie-table", "--max-rank", "8"],
        vec!["verify", "hopf", "--algebra", "dbz", "--ell", "3"],
        vec!["verify", "gauge", "--ell", "3"],
        vec!["verify", "modularity"],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).lines().last().unwrap().ends_with("pass"));
    }
    let o = run(&["verify", "ribbon", "--algebra", "A", "--format", "json-lines"]);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn balance_reports() {
    let o = run(&["balance", "--type", "G2", "--ell", "5"]);
    let s = stdout(&o);
    assert_eq!(field(&s, "rho_tau"), "112");
    assert_eq!(field(&s, "table"), "112");
    assert_eq!(field(&s, "w"), "1");
    let o = run(&["balance", "--type", "B3", "--ell", "4"]);
    let s = stdout(&o);
    assert_eq!(field(&s, "w"), "none");
    assert!(s.contains("arithmetic only"));
    let o = run(&["balance", "--type", "A2", "--ell", "3", "--scale", "2", "--format", "json-lines"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["rho_tau"], 16);
    assert_eq!(v["clauses"].as_array().unwrap().len(), 3);
}

#[test]
fn dump_algebra() {
    let o = run(&["dump-algebra", "--algebra", "borel", "--ell", "3"]);
    let s = stdout(&o);
    assert!(s.starts_with("algebra borel\ndim 9\norder 12\n"));
    assert_eq!(s.lines().filter(|l| l.starts_with("S ")).count(), 9);
}
