use mqv_core::scalar::{Canonical, Cyclotomic, Fp, Rational};
use std::path::{Path, PathBuf};
use std::process::Command;

fn instance(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("instances")
        .join(name)
}

fn mqv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mqv"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mqv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_all_on_bundled_instance() {
    let r1 = instance("r1.toml");
    let (code, out, _) = mqv(&["verify-all", "--instance", r1.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let doc: toml::Table = toml::from_str(&out).unwrap();
    let sections = doc["instances"][0]["sections"].as_array().unwrap();
    let ext = sections
        .iter()
        .find(|s| s["name"].as_str() == Some("ext"))
        .unwrap();
    let diag = &ext["values"]["diagonal"];
    assert_eq!(diag["h_minus1"].as_integer(), Some(1));
    assert_eq!(diag["h0"].as_integer(), Some(2));
    assert_eq!(diag["h1"].as_integer(), Some(1));
    let names: Vec<&str> = sections
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "identities",
            "sample",
            "check",
            "stability",
            "ind_compat",
            "ext",
            "phi",
            "memberships"
        ]
    );
}

#[test]
fn obstruction_exits_one() {
    let p = instance("obstructed.toml");
    let (code, out, _) = mqv(&["check", "--instance", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("error = \"Obstruction\""), "{out}");
    assert!(out.contains("q_alpha = \"4/1\""), "{out}");
}

#[test]
fn malformed_file_exits_two_with_position() {
    let p = tmp("bad.toml");
    std::fs::write(&p, "alpha = [2]\ntheta = [\"0\"\nlevels = 2\n").unwrap();
    let (code, _, err) = mqv(&["validate", "--instance", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains(":3:") || err.contains(":2:"), "{err}");
}

#[test]
fn semantic_error_exits_two() {
    let text = std::fs::read_to_string(instance("r1.toml"))
        .unwrap()
        .replace("q = [\"-1\"]", "q = [\"0\"]");
    let p = tmp("zero_q.toml");
    std::fs::write(&p, text).unwrap();
    let (code, _, err) = mqv(&["validate", "--instance", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("nonzero"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mqv(&["verify-all"]).0, 2);
    assert_eq!(mqv(&["frobnicate"]).0, 2);
    let r1 = instance("r1.toml");
    assert_eq!(
        mqv(&[
            "stability",
            "--instance",
            r1.to_str().unwrap(),
            "--prime",
            "6"
        ])
        .0,
        2
    );
}

#[test]
fn resource_bound_exits_three() {
    let text = std::fs::read_to_string(instance("r1.toml"))
        .unwrap()
        .replace("max_total_dim = 9", "max_total_dim = 3");
    let p = tmp("small_bound.toml");
    std::fs::write(&p, text).unwrap();
    let (code, out, _) = mqv(&["stability", "--instance", p.to_str().unwrap()]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("TooLarge"));
}

#[test]
fn reports_are_byte_identical() {
    let two = instance("two_vertex.toml");
    let (a, b) = (tmp("a.toml"), tmp("b.toml"));
    for p in [&a, &b] {
        let (code, _, _) = mqv(&[
            "verify-all",
            "--instance",
            two.to_str().unwrap(),
            "--seed",
            "9",
            "--report",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn jobs_keep_input_order() {
    let files = [
        instance("r1.toml"),
        instance("two_vertex.toml"),
        instance("prime_loop.toml"),
    ];
    let mut args = vec!["verify-all".to_string(), "--first-order".into()];
    for f in &files {
        args.push("--instance".into());
        args.push(f.to_str().unwrap().into());
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (c1, serial, _) = mqv(&args);
    let mut par = args.clone();
    par.extend(["--jobs", "3"]);
    let (c2, parallel, _) = mqv(&par);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(serial, parallel);
}

fn strings(v: &toml::Value, out: &mut Vec<String>) {
    match v {
        toml::Value::String(s) => out.push(s.clone()),
        toml::Value::Array(a) => a.iter().for_each(|x| strings(x, out)),
        toml::Value::Table(t) => t.values().for_each(|x| strings(x, out)),
        _ => {}
    }
}

/// Every scalar in a report parses back to a value with the same canonical form.
#[test]
fn report_scalars_round_trip() {
    for (file, parse) in [
        (
            "r1.toml",
            (|s: &str| Rational::parse_canonical(s).map(|x| x.canonical())) as fn(&str) -> _,
        ),
        ("prime_loop.toml", |s: &str| {
            Fp::parse_canonical(s).map(|x| x.canonical())
        }),
        ("zeta3_two_loops.toml", |s: &str| {
            Cyclotomic::parse_canonical(s).map(|x| x.canonical())
        }),
    ] {
        let p = instance(file);
        let (_, out, _) = mqv(&["sample", "--instance", p.to_str().unwrap()]);
        let doc: toml::Value = toml::from_str(&out).unwrap();
        let mut all = Vec::new();
        strings(
            &doc["instances"][0]["sections"][0]["values"]["matrices"],
            &mut all,
        );
        assert!(!all.is_empty());
        for s in all {
            assert_eq!(parse(&s).unwrap(), s, "{file}");
        }
    }
}
