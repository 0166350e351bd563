use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use kcone::catalog;
use kcone_core::charring::{irreducible_character, TorusCharacter};
use kcone_core::ktheta::{cn_theta_character, koszul_check, SplitHypothesis};
use kcone_core::oracle::hilbert_by_degree;
use serde_json::Value;

fn kcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kcone")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = kcone(&a);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kcone-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_variant(name: &str, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let mut v: Value = serde_json::from_str(catalog::source("sl2-split").unwrap()).unwrap();
    edit(&mut v);
    let path = scratch(name).join("config.json");
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    path
}

fn split_cells(line: &str) -> Vec<String> {
    line.split("  ").map(str::trim).filter(|c| !c.is_empty()).map(String::from).collect()
}

/// Header names and data rows of a rendered table.
fn table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = split_cells(lines.next().unwrap_or_default());
    (header, lines.map(split_cells).collect())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => {
            format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

#[test]
fn catalog_listing() {
    let o = kcone(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["sl2-split", "sl2xsl2-swap", "sl3-split", "sp4-split"] {
        assert!(text.contains(name));
    }
    let v = json(&["catalog"]);
    let names: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["sl2-split", "sl2xsl2-swap", "sl3-split", "sp4-split"]);
    let with_tori: Vec<bool> = v["records"].as_array().unwrap().iter().map(|r| r["tori"].as_bool().unwrap()).collect();
    assert_eq!(with_tori, vec![true, false, false, false]);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(kcone(&["catalog", "--bogus"]).status.code(), Some(1));
    assert_eq!(kcone(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(kcone(&["cn"]).status.code(), Some(1));
    assert_eq!(kcone(&["cn", "--group", "no-such-group"]).status.code(), Some(1));
    assert_eq!(kcone(&["cn", "--group", "sl2-split", "--degree", "65"]).status.code(), Some(1));
    let big = kcone(&["cn", "--group", "sl2-split", "--degree", "65", "--allow-large-degree"]);
    assert_eq!(big.status.code(), Some(0));
    assert_eq!(kcone(&["--help"]).status.code(), Some(0));
    assert_eq!(kcone(&["--version"]).status.code(), Some(0));
}

#[test]
fn cn_examples() {
    let v = json(&["cn", "--group", "sl2-split", "--degree", "3"]);
    let rows: Vec<(u64, Vec<i64>, i64)> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["degree"].as_u64().unwrap(),
                serde_json::from_value(r["label"].clone()).unwrap(),
                r["multiplicity"].as_i64().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows, vec![(0, vec![0], 1), (1, vec![2], 1), (2, vec![4], 1), (3, vec![6], 1)]);
    let zero = json(&["cn", "--group", "sl2-split", "--degree", "0"]);
    assert_eq!(zero["records"].as_array().unwrap().len(), 1);
    let sl3 = json(&["cn", "--group", "sl3-split", "--degree", "1"]);
    let deg1: Vec<&Value> = sl3["records"].as_array().unwrap().iter().filter(|r| r["degree"] == 1).collect();
    assert_eq!(deg1.len(), 1);
    assert_eq!(deg1[0]["label"], serde_json::json!([1, 1]));
    assert_eq!(deg1[0]["multiplicity"], 1);
}

#[test]
fn cntheta_examples() {
    let v = json(&["cntheta", "--group", "sl2-split", "--degree", "0"]);
    assert_eq!(v["records"], serde_json::json!([{ "degree": 0, "weight": [0], "multiplicity": 1 }]));
    let five = json(&["cntheta", "--group", "sl2-split", "--degree", "5"]);
    assert_eq!(five["records"].as_array().unwrap().len(), 11);

    let refused = kcone(&["cntheta", "--group", "sl2xsl2-swap"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(stderr(&refused).contains("split"));
    let forced = json(&["cntheta", "--group", "sl2xsl2-swap", "--force", "--degree", "2"]);
    assert!(forced["notes"][0].as_str().unwrap().contains("waived"));

    let no_datum = write_variant("no-datum", |v| {
        v["k"].as_object_mut().unwrap().remove("datum");
    });
    let o = kcone(&["cntheta", "--group", no_datum.to_str().unwrap(), "--decompose-k"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("k.datum"));
}

#[test]
fn cntheta_masses_match_oracle_check() {
    for name in ["sl2-split", "sl3-split", "sp4-split"] {
        let theta = json(&["cntheta", "--group", name, "--degree", "2"]);
        let mut masses = [0i64; 3];
        for r in theta["records"].as_array().unwrap() {
            masses[r["degree"].as_u64().unwrap() as usize] += r["multiplicity"].as_i64().unwrap();
        }
        let oracle = json(&["oracle-check", "--group", name, "--degree", "2"]);
        let dims: Vec<i64> =
            oracle["records"].as_array().unwrap().iter().map(|r| r["oracle_dim"].as_i64().unwrap()).collect();
        assert_eq!(dims, masses.to_vec(), "{name}");
    }
}

#[test]
fn checks_exit_codes() {
    let o = kcone(&["checks", "--group", "sl2-split", "--degree", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let zero = json(&["checks", "--group", "sl2-split", "--degree", "0"]);
    assert_eq!(zero["records"][0]["check"], "koszul");
    assert_eq!(zero["records"][0]["status"], "pass");

    let wrong = write_variant("wrong-dims", |v| {
        v["dims"]["g"] = serde_json::json!(4);
    });
    let o = kcone(&["checks", "--group", wrong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));

    let perturbed = write_variant("perturbed", |v| {
        v["oracle_model"]["generators"] = serde_json::json!([[{ "num": 1, "exponents": [2, 0] }]]);
    });
    let o = kcone(&["oracle-check", "--group", perturbed.to_str().unwrap(), "--degree", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("first disagreement at degree 2"));
}

#[test]
fn branching_examples() {
    let zero = json(&["branching", "--group", "sl2-split", "--degree", "0"]);
    let rows: Vec<(i64, String, String)> = zero["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["coefficient"].as_i64().unwrap(),
                r["torus"].as_str().unwrap().to_string(),
                r["positive_system"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        rows,
        vec![
            (-1, "H_c".to_string(), "minus".to_string()),
            (-1, "H_c".to_string(), "plus".to_string()),
            (1, "H_s".to_string(), "split".to_string()),
        ]
    );
    let one = json(&["branching", "--group", "sl2-split", "--degree", "1"]);
    let q1 = one["records"].as_array().unwrap().iter().filter(|r| r["q_power"] == 1).count();
    assert_eq!(q1, 6);

    let o = kcone(&["branching", "--group", "sl3-split"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tori"));
}

#[test]
fn output_is_byte_stable_and_formats_agree() {
    let cases: [&[&str]; 5] = [
        &["cn", "--group", "sp4-split", "--degree", "3"],
        &["cntheta", "--group", "sl3-split", "--degree", "3"],
        &["cntheta", "--group", "sp4-split", "--degree", "2", "--decompose-k"],
        &["branching", "--group", "sl2-split", "--degree", "2"],
        &["checks", "--group", "sl3-split", "--degree", "3"],
    ];
    for args in cases {
        let a = stdout(&kcone(args));
        assert_eq!(a, stdout(&kcone(args)));
        let mut with_json = args.to_vec();
        with_json.push("--json");
        let j = stdout(&kcone(&with_json));
        assert_eq!(j, stdout(&kcone(&with_json)));
        let v: Value = serde_json::from_str(&j).unwrap();
        let (header, mut from_table) = table(&a);
        let mut from_json: Vec<Vec<String>> = v["records"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| header.iter().map(|h| cell(&r[h.as_str()])).collect())
            .collect();
        if args[0] == "checks" {
            // Status cells are upper-case in tables.
            let i = header.iter().position(|h| h == "status").unwrap();
            for r in &mut from_json {
                r[i] = r[i].to_uppercase().replace("SKIPPED", "SKIP");
            }
        }
        from_json.sort();
        from_table.sort();
        assert_eq!(from_json, from_table, "{args:?}");
    }
}

type Edit = Box<dyn FnOnce(&mut Value)>;

#[test]
fn config_errors_name_the_field() {
    let cases: Vec<(&str, Edit, &str)> = vec![
        ("restriction", Box::new(|v| v["k"]["restriction"] = serde_json::json!([[1, 0]])), "k.restriction"),
        ("weights", Box::new(|v| v["k"]["weights"] = serde_json::json!([[2]])), "k.weights"),
        ("theta", Box::new(|v| v["involution"]["theta"] = serde_json::json!([[2]])), "involution"),
        ("cartan", Box::new(|v| v["group"]["cartan"] = serde_json::json!([[2, 1], [-1, 2]])), "group.cartan"),
        (
            "torus",
            Box::new(|v| v["tori"][1]["positive_systems"][0]["imaginary_positive"] = serde_json::json!([[4]])),
            "tori[1]",
        ),
        (
            "model",
            Box::new(|v| {
                v["oracle_model"]["generators"] =
                    serde_json::json!([[{ "num": 1, "exponents": [2, 0] }, { "num": 1, "exponents": [1, 1] }]])
            }),
            "oracle_model",
        ),
        ("unknown", Box::new(|v| v["extra"] = serde_json::json!(1)), "malformed"),
    ];
    for (name, edit, field) in cases {
        let path = write_variant(name, edit);
        let o = kcone(&["cn", "--group", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{name}");
        assert!(stderr(&o).contains(field), "{name}: {}", stderr(&o));
    }
}

#[test]
fn cache_directory_round_trip() {
    let dir = scratch("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_kcone"))
            .args(["cn", "--group", "sl3-split", "--degree", "4"])
            .env("KCONE_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, kcone(&["cn", "--group", "sl3-split", "--degree", "4"]).stdout);
}

#[test]
fn catalog_configs_satisfy_formula_properties() {
    for name in catalog::names() {
        let cfg = catalog::load(name).unwrap().unwrap();
        let rf = &cfg.real_form;
        assert!(koszul_check(&rf.k_weights, rf.k_torus_rank, 8).holds(), "{name}");
        let theta = cn_theta_character(rf, 6, SplitHypothesis::Waive).unwrap();
        if let (Some(model), true) = (&cfg.oracle_model, rf.split_mod_center) {
            let dims: Vec<i64> = hilbert_by_degree(model, 6).into_iter().map(|x| x as i64).collect();
            assert_eq!(theta.series.masses(), dims, "{name}");
        }
        if let (Some(kd), Some(types)) = (&rf.k_datum, &theta.k_types) {
            for (d, layer) in theta.series.layers() {
                let mut rebuilt = TorusCharacter::zero(rf.k_torus_rank);
                let labels: BTreeMap<_, _> = types.layer(d).cloned().unwrap_or_default();
                for (lam, m) in labels {
                    rebuilt.add_scaled(&irreducible_character(kd, &lam).unwrap(), m);
                }
                assert_eq!(&rebuilt, layer, "{name} degree {d}");
            }
        }
    }
}
