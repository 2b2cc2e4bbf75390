use std::process::Command;

use soergel_cli::commands::DecompositionJson;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_soergel")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn kl_values_are_monomials() {
    let (code, out, _) = run(&["kl", "--rank", "3", "--w", "1,2,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let p = v["p"].as_object().unwrap();
    assert_eq!(p.len(), 6);
    for poly in p.values() {
        let s = poly.as_str().unwrap();
        assert!(!s.contains('+') && !s.contains('-'), "{s}");
    }
}

#[test]
fn bs_decompose_example() {
    let (code, out, _) = run(&["bs", "--rank", "3", "--word", "1,2,1", "--decompose"]);
    assert_eq!(code, 0);
    let d: DecompositionJson = serde_json::from_str(&out).unwrap();
    let summands: Vec<(String, i32)> = d.summands.iter().map(|s| (s.w.clone(), s.shift)).collect();
    assert_eq!(summands, vec![("213".into(), 0), ("321".into(), 0)]);
}

#[test]
fn decomposition_json_round_trips() {
    for word in ["1,2,1", "1,1", "2,1,2,1", ""] {
        let (code, out, _) = run(&["decompose", "--rank", "3", "--word", word]);
        assert_eq!(code, 0, "{word}");
        let parsed: DecompositionJson = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed.verified, Some(true));
        let again = serde_json::to_string_pretty(&serde_json::to_value(&parsed).unwrap()).unwrap() + "\n";
        assert_eq!(again, out, "{word}");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["koszul-square", "--rank", "2", "--seed", "5", "--cases", "40"];
    assert_eq!(run(&args), run(&args));
    let args = ["tate", "--demo", "--seed", "3", "--samples", "10"];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, run(&args).1);
}

#[test]
fn ext_table_shape() {
    let (code, out, _) = run(&["ext", "--rank", "2", "--x", "e", "--y", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let row = &v["table"][1];
    assert_eq!(row["k"], 1);
    assert_eq!(row["dim"], 1);
    assert_eq!(row["graded"]["1"], 1);
}

#[test]
fn koszulity_output() {
    let (code, out, _) = run(&["koszulity", "--rank", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["koszul"], true);
    assert_eq!(v["max_k"], 2);
}

#[test]
fn csv_and_text_formats() {
    let (_, csv, _) = run(&["coinv", "--rank", "2", "--format", "csv"]);
    assert_eq!(csv, "index,element,degree\n0,1,0\n1,x1,2\n");
    let (_, text, _) = run(&["hom", "--rank", "2", "--x", "1", "--y", "1", "--format", "text"]);
    assert!(text.contains("graded: 1+v^2"));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    assert_eq!(run(&["kl", "--rank", "3", "--w", "1,2", "--nope"]).0, 2);
    assert_eq!(run(&["kl", "--rank", "3", "--w", "1,7"]).0, 2);
    assert_eq!(run(&["hom", "--rank", "2", "--x", "9z", "--y", "1"]).0, 2);
}

#[test]
fn help_documents_flags() {
    let (code, out, _) = run(&["koszul-square", "--help"]);
    assert_eq!(code, 0);
    for flag in ["--rank", "--seed", "--cases", "--format"] {
        assert!(out.contains(flag), "{flag}");
    }
}

#[test]
fn size_cap_is_a_clean_refusal() {
    let out = Command::new(env!("CARGO_BIN_EXE_soergel"))
        .args(["bs", "--rank", "4", "--word", "1,2,3,2,1"])
        .env("SOERGEL_MAX_DIM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("error"));
}
