//! Outputs frozen on first run. Delete a file under `tests/golden/` to re-freeze it.

use std::fmt::Write;
use std::path::PathBuf;

use geolift::bounds;
use geolift::families;
use geolift::modular;
use geolift::report::{self, sig9, Config, Family, Format};
use geolift::words::{hnn_normalize, CyclicWord};

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    match std::fs::read_to_string(&path) {
        Ok(expected) => assert_eq!(actual, expected, "golden {name} changed"),
        Err(_) => {
            std::fs::write(&path, actual).unwrap();
            eprintln!("froze {}", path.display());
        }
    }
}

#[test]
fn mod_family_counts() {
    let mut s = String::from("k\tn_gamma\tdistinct\tword\n");
    for k in 1..=10 {
        let w = families::mod_family(k).unwrap();
        let t = modular::rewrite_to_torus(&w).unwrap();
        let seq = hnn_normalize(&CyclicWord::new(&t).unwrap()).unwrap();
        let d = bounds::double_coset_census(&seq).distinct();
        writeln!(s, "{k}\t{}\t{d}\t{w}", w.n_gamma()).unwrap();
    }
    check("mod_family.tsv", &s);
}

#[test]
fn ln_roots() {
    let s: String = (1..=10).map(|n| format!("{n}\t{}\n", sig9(bounds::solve_ln(n).unwrap()))).collect();
    check("solve_ln.tsv", &s);
}

#[test]
fn mod_report_csv() {
    let t = report::run_report(Family::Mod, (1, 5), &Config::default()).unwrap();
    check("report_mod.csv", &String::from_utf8(report::emit(&t, Format::Csv).unwrap()).unwrap());
}

#[test]
fn theorem2_report_csv() {
    let t = report::run_report(Family::Theorem2, (0, 5), &Config::default()).unwrap();
    check("report_theorem2.csv", &String::from_utf8(report::emit(&t, Format::Csv).unwrap()).unwrap());
}
