use geolift::fuchsian;
use geolift::report::{self, Config, Family, Format, ReportError};

fn table(f: Family) -> report::ReportTable {
    report::run_report(f, f.default_range(), &Config::default()).unwrap()
}

#[test]
fn csv_round_trip() {
    for f in Family::ALL {
        let t = table(f);
        let bytes = report::emit(&t, Format::Csv).unwrap();
        let back = report::parse_csv(&bytes).unwrap();
        assert_eq!(back, t, "{f}");
        assert_eq!(report::emit(&back, Format::Csv).unwrap(), bytes);
    }
}

#[test]
fn json_matches_schema() {
    let schema_path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    for f in Family::ALL {
        let bytes = report::emit(&table(f), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        let msgs: Vec<String> = match compiled.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errs) => errs.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{f}: {msgs:?}");
    }
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let cfg = Config::default();
    for f in Family::ALL {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let t = pool.install(|| report::run_report(f, f.default_range(), &cfg)).unwrap();
            [Format::Csv, Format::Json, Format::Svg { log_axes: true }].map(|fmt| report::emit(&t, fmt).ok())
        };
        assert_eq!(run(1), run(4), "{f}");
    }
}

#[test]
fn lower_bound_recomputes_from_row() {
    for f in Family::ALL {
        for r in table(f).rows {
            assert_eq!(r.lower_bound, r.recomputed_lower_bound(), "{f} {}", r.param);
            if let (Some(lb), Some(d), Some(deg)) = (r.lower_bound, r.distinct_classes, r.cover_degree) {
                let direct = fuchsian::v3() / 2.0 * d as f64 / deg as f64;
                assert!((lb - direct).abs() <= 1e-8 * direct.max(1.0));
            }
        }
    }
}

#[test]
fn guards_and_row_errors() {
    let cfg = Config::default();
    assert!(matches!(report::run_report(Family::Mod, (1, 51), &cfg), Err(ReportError::RangeTooLarge { max: 50, .. })));
    let t = report::run_report(Family::Mod, (0, 0), &cfg).unwrap();
    assert!(t.has_errors());
    assert_eq!(t.rows.len(), 1);
    let t = report::run_report(Family::Pib, (4, 4), &cfg).unwrap();
    assert_eq!(t.rows[0].distinct_classes, Some(28));
    assert!(!t.has_errors());
    let t = report::run_report(Family::Mod, (1, 5), &cfg).unwrap();
    assert_eq!(t.rows.len(), 5);
}

#[test]
fn svg_needs_points() {
    let t = report::run_report(Family::Lin, (2, 2), &Config::default()).unwrap();
    assert!(matches!(report::emit(&t, Format::Svg { log_axes: false }), Err(ReportError::EmptyTable)));
    let t = table(Family::Mod);
    let svg = String::from_utf8(report::emit(&t, Format::Svg { log_axes: false }).unwrap()).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("polyline"));
}

#[test]
fn config_file_and_env() {
    let dir = std::env::temp_dir().join(format!("geolift-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("c.toml");
    std::fs::write(&p, "bps_c = 3.0\ncutoff = 12\n").unwrap();
    let c = Config::load(Some(&p)).unwrap();
    assert_eq!((c.bps_c, c.cutoff), (3.0, Some(12)));
    let t = report::run_report(Family::Mod, (3, 3), &c).unwrap();
    assert_eq!(t.rows[0].bps_c, 3.0);
}
