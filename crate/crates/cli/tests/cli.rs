use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn cgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Runs with `--json`, expecting exit code `code`, and parses stdout.
fn json_with_code(args: &[&str], code: i32) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = cgt(&all);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).expect("stdout is one JSON document")
}

fn json(args: &[&str]) -> Value {
    json_with_code(args, 0)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cgt-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const S4: &str = "<a,b | a^2, b^3, (a*b)^4>";

#[test]
fn enumerate_reports_index_and_stats() {
    let v = json(&[
        "enumerate",
        "--presentation",
        S4,
        "--subgroup",
        "b",
        "--table",
    ]);
    assert_eq!(v["index"], 8);
    assert_eq!(v["strategy"], "felsch");
    assert!(v["total_defined"].as_u64().unwrap() >= 8);
    let table = v["table"].as_str().unwrap();
    assert!(table.starts_with("cosets 8 generators 2\n"));
    let hlt = json(&[
        "enumerate",
        "--presentation",
        S4,
        "--subgroup",
        "b",
        "--table",
        "--strategy",
        "hlt",
    ]);
    assert_eq!(hlt["table"], v["table"]);
    assert_eq!(hlt["strategy"], "hlt");

    let text = stdout(&cgt(&["enumerate", "--presentation", S4]));
    assert!(text.lines().any(|l| l == "index 24"));
}

#[test]
fn limits_and_bad_input_set_exit_codes() {
    let v = json_with_code(
        &["order", "--presentation", "<a,b | >", "--max-cosets", "100"],
        1,
    );
    assert_eq!(v["index"], Value::Null);
    assert_eq!(v["max_active"], 100);
    let out = cgt(&["order", "--presentation", "<a,b | a^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("presentation"));
    assert_eq!(
        cgt(&["member", "--group", "(1,2", "--perm", "(1,2)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cgt(&["enumerate", "--presentation", S4, "--strategy", "fast"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cgt(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn order_of_mennicke_subgroup_quotient() {
    let v = json(&[
        "enumerate",
        "--presentation",
        "<x,y,z | x^y*x^-3, y^z*y^-2, z^x*z^-4>",
        "--subgroup",
        "x",
    ]);
    assert_eq!(v["index"], 105);
    let v = json(&[
        "enumerate",
        "--presentation",
        "<x,y,z | x^y*x^-3, y^z*y^-2, z^x*z^-4>",
        "--subgroup",
        "x",
        "--preferred",
        "10",
    ]);
    assert_eq!(v["index"], 105);
    assert!(v["total_defined"].as_u64().unwrap() < 92_585);
}

#[test]
fn lowindex_lists_subgroups_with_probes() {
    let v = json(&["lowindex", "--presentation", "<a,b | >", "--index", "3"]);
    let subgroups = v["subgroups"].as_array().unwrap();
    assert_eq!(subgroups.len(), 1 + 3 + 13);
    let v = json(&[
        "lowindex",
        "--presentation",
        "<a,b | a^2, b^3, (a*b)^2>",
        "--index",
        "6",
        "--classes",
        "--probe",
    ]);
    let subgroups = v["subgroups"].as_array().unwrap();
    let mut indices: Vec<u64> = subgroups
        .iter()
        .map(|s| s["index"].as_u64().unwrap())
        .collect();
    indices.sort_unstable();
    assert_eq!(indices, vec![1, 2, 3, 6]);
    for s in subgroups {
        assert_eq!(s["abelian"]["free_rank"], 0);
    }
}

#[test]
fn rewrite_and_simplify() {
    let out = cgt(&[
        "rewrite",
        "--presentation",
        "<a | a^4>",
        "--subgroup",
        "a^2",
    ]);
    assert_eq!(stdout(&out), "<a_2 | a_2^2>\na_2 = a^2\n");
    let v = json(&["simplify", "--presentation", "<a,b | a*b, b^5>"]);
    assert_eq!(
        v,
        json!({"presentation": "<b | b^5>", "generators": 1, "relators": 1, "total_length": 5})
    );
}

#[test]
fn abelian_from_presentation_and_matrix() {
    let v = json(&["abelian", "--presentation", "<a,b | a^2, b^4, [a,b]>"]);
    assert_eq!(v["free_rank"], 0);
    assert_eq!(v["torsion"], json!(["2", "4"]));
    let v = json(&["abelian", "--matrix", "2 2\n2 0\n0 3"]);
    assert_eq!(v, json!({"diagonal": ["1", "6"], "rank": 2}));
    let path = temp_file("matrix.txt", "1 3\n4 6 10\n");
    let v = json(&["abelian", "--matrix", &format!("@{}", path.display())]);
    assert_eq!(v["diagonal"], json!(["2"]));
    std::fs::remove_file(path).unwrap();
    assert_eq!(
        cgt(&["abelian", "--matrix", "2 2\n1 2"]).status.code(),
        Some(2)
    );
}

#[test]
fn permutation_group_commands() {
    let s4 = "(1,2),(1,2,3,4)";
    let v = json(&["bsgs", "--group", s4]);
    assert_eq!(v["order"], "24");
    assert_eq!(v["degree"], 4);
    let r = json(&["bsgs", "--group", s4, "--random", "20", "--seed", "3"]);
    assert_eq!(r["order"], "24");
    let m11 = "(1,2,3,4,5,6,7,8,9,10,11),(3,7,11,8)(4,10,5,6)";
    assert_eq!(json(&["bsgs", "--group", m11])["order"], "7920");

    let v = json(&[
        "member",
        "--group",
        "(1,2,3,4,5),(1,2,3)",
        "--perm",
        "(1,2)",
    ]);
    assert_eq!(v["member"], false);
    let v = json(&[
        "member",
        "--group",
        "(1,2,3,4,5),(1,2,3)",
        "--perm",
        "(1,2)(3,4)",
    ]);
    assert_eq!(v["member"], true);

    assert_eq!(
        json(&["blocks", "--group", "(1,2,3,4),(1,3)"])["primitive"],
        false
    );
    let v = json(&["blocks", "--group", "(1,2,3,4),(1,3)", "--pair", "1,3"]);
    assert_eq!(v["blocks"], json!([[1, 3], [2, 4]]));

    let v = json(&["closure", "--group", s4, "--subgroup", "(1,2)(3,4)"]);
    assert_eq!(v["order"], "4");
    let v = json(&["series", "--group", s4]);
    assert_eq!(v["derived"], json!(["24", "12", "4", "1"]));
    assert_eq!(v["soluble"], true);
    assert_eq!(v["nilpotent"], false);

    assert_eq!(
        json(&["centralizer", "--group", s4, "--perm", "(1,2)"])["order"],
        "4"
    );
    assert_eq!(
        json(&["setstab", "--group", s4, "--set", "1,2"])["order"],
        "4"
    );
    let v = json(&["conjugate", "--group", s4, "--x", "(1,2)", "--y", "(3,4)"]);
    assert_eq!(v["conjugate"], true);
    assert!(v["witness"].is_string());
    let v = json(&[
        "conjugate",
        "--group",
        "(1,2,3),(2,3,4)",
        "--x",
        "(1,2,3)",
        "--y",
        "(1,3,2)",
    ]);
    assert_eq!(v["conjugate"], false);
}

#[test]
fn inputs_from_files() {
    let pres = temp_file("s4.pres", S4);
    let v = json(&["order", "--presentation", &format!("@{}", pres.display())]);
    assert_eq!(v["order"], "24");
    std::fs::remove_file(pres).unwrap();

    let group = temp_file("a5.gens", "(1,2,3,4,5),(1,2,3)\n");
    let v = json(&["bsgs", "--group", &format!("@{}", group.display())]);
    assert_eq!(v["order"], "60");
    // Group files may also be named without the @ prefix.
    let v = json(&["bsgs", "--group", group.to_str().unwrap()]);
    assert_eq!(v["order"], "60");
    std::fs::remove_file(group).unwrap();
    assert_eq!(
        cgt(&["order", "--presentation", "@/nonexistent/cgt.pres"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--json",
        "lowindex",
        "--presentation",
        S4,
        "--index",
        "6",
        "--probe",
    ];
    assert_eq!(stdout(&cgt(&args)), stdout(&cgt(&args)));
    let args = [
        "--json",
        "bsgs",
        "--group",
        "(1,2,3,4,5,6,7),(2,3)(4,7)",
        "--random",
        "10",
        "--seed",
        "5",
    ];
    assert_eq!(stdout(&cgt(&args)), stdout(&cgt(&args)));
}
