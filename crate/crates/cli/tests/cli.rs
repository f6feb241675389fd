use std::process::{Command, Output};

use serde_json::Value;

fn f2sym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f2sym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = f2sym(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

fn code(args: &[&str]) -> i32 {
    f2sym(args).status.code().expect("exit code")
}

#[test]
fn algebra_goldens() {
    assert_eq!(stdout(&["omega", "w2"]), "w1^2 + w2");
    assert_eq!(stdout(&["omega", "w1"]), "w1");
    assert_eq!(stdout(&["omega", "0"]), "0");
    assert_eq!(stdout(&["dd", "w2"]), "w1^2");
    assert_eq!(stdout(&["norm", "w1"]), "w1^2");
    assert_eq!(
        stdout(&["standard-form", "w2^2"]),
        "w2*d[w2] + d[w2]*d[w2] + d[w4]"
    );
    assert_eq!(stdout(&["mn", "3", "s[]"]), "s[3] + s[2,1] + s[1,1,1]");
    assert_eq!(stdout(&["to-schur", "w1^2"]), "s[2] + s[1,1]");
    assert_eq!(stdout(&["from-schur", "s[2] + s[1,1]"]), "w1^2");
}

#[test]
fn dims_rows() {
    let table = stdout(&["dims", "6"]);
    let rows: Vec<Vec<usize>> = table
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 7);
    // columns: degree, R, S, I, S/I, sc, p
    assert_eq!(rows[0], vec![0, 1, 1, 0, 1, 1, 1]);
    assert_eq!((rows[4][6], rows[4][2], rows[4][5]), (5, 3, 1));
    assert_eq!((rows[6][6], rows[6][2], rows[6][5]), (11, 6, 1));
}

#[test]
fn dims_json() {
    let v: Value = serde_json::from_str(&stdout(&["dims", "4", "--format", "json"])).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"][4]["p"], 5);
    assert_eq!(v["rows"][4]["s"], 3);
    assert_eq!(v["rows"][4]["sc"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(
        code(&["verify", "transversality-1", "--max-degree", "12"]),
        0
    );
    assert_eq!(code(&["verify", "presentation", "--max-degree", "10"]), 0);
    assert_eq!(code(&["verify", "conjecture-n3", "--max-degree", "10"]), 0);
    assert_eq!(code(&["verify", "no-such-check"]), 2);
    assert_eq!(code(&["omega", "w1 +"]), 2);
    assert_eq!(code(&["omega", "w0"]), 2);
    assert_eq!(code(&["omega", "w13"]), 3);
    assert_eq!(code(&["omega", "w3", "--max-degree", "2"]), 3);
    assert_eq!(code(&["verify", "ses", "--max-degree", "21"]), 3);
    assert_eq!(
        code(&[
            "verify",
            "presentation",
            "--max-degree",
            "6",
            "--presentation-degree",
            "7"
        ]),
        2
    );
    assert_eq!(code(&["dims", "13"]), 2);
    assert_eq!(code(&["mn", "0", "s[1]"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn verify_json_report() {
    let out = stdout(&[
        "verify",
        "conjecture-n3",
        "--max-degree",
        "8",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "pass");
    let report = &v["reports"][0];
    assert_eq!(report["check"], "conjecture-n3");
    assert_eq!(report["status"], "evidence");
    assert_eq!(report["degrees"].as_array().unwrap().len(), 9);
    assert!(report["degrees"][8]["dims"].is_object());
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let args = ["verify", "all", "--max-degree", "10", "--format", "json"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["status"], "pass");
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 20);
    for r in reports {
        let expected = if r["check"] == "conjecture-n3" {
            "evidence"
        } else {
            "pass"
        };
        assert_eq!(r["status"], expected, "{}", r["check"]);
    }
}

#[test]
fn jobs_flag_does_not_change_output() {
    let serial = stdout(&["verify", "ses", "--jobs", "1", "--format", "json"]);
    let parallel = stdout(&["verify", "ses", "--jobs", "4", "--format", "json"]);
    assert_eq!(serial, parallel);
}
