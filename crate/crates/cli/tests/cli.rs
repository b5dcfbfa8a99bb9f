use std::process::{Command, Output};

fn geolift(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_geolift"));
    c.args(args).env_remove("GEOLIFT_CONFIG");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("spawn geolift")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn family_prints_word() {
    let o = geolift(&["family", "mod", "--k", "5"], &[]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x^6 y x^13 y x^19 y x^25 y x^32 y^2 x^2 y");
}

#[test]
fn exit_codes() {
    assert_eq!(geolift(&["report", "mod", "--k", "1..3"], &[]).status.code(), Some(0));
    // capacity errors in some rows
    let o = geolift(&["report", "lin"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("bits give"));
    let o = geolift(&["report", "pib", "--n", "8"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
    assert_eq!(geolift(&["report", "nope"], &[]).status.code(), Some(1));
}

#[test]
fn config_from_env() {
    let dir = std::env::temp_dir().join(format!("geolift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.toml");
    std::fs::write(&path, "bps_c = 2.5\n").unwrap();
    let p = path.to_str().unwrap();
    let o = geolift(&["report", "mod", "--k", "2"], &[("GEOLIFT_CONFIG", p)]);
    assert!(stdout(&o).contains("# bps_c=2.5"));
    let o = geolift(&["report", "mod", "--k", "2", "--bps-c", "3"], &[("GEOLIFT_CONFIG", p)]);
    assert!(stdout(&o).contains("# bps_c=3"));
    std::fs::write(&path, "bogus = 1\n").unwrap();
    assert_eq!(geolift(&["report", "mod", "--k", "2"], &[("GEOLIFT_CONFIG", p)]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn repeat_runs_identical() {
    for fmt in ["csv", "json", "svg"] {
        let a = geolift(&["report", "theorem2", "--format", fmt, "--threads", "1"], &[]);
        let b = geolift(&["report", "theorem2", "--format", fmt, "--threads", "4"], &[]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{fmt}");
    }
}

#[test]
fn analyze_word() {
    let o = geolift(&["analyze", "a t a t'"], &[]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("self_int"), "{s}");
}
