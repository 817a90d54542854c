use std::process::{Command, Output};

use qa_core::quartic::{Certification, ClassGroupResult};
use qa_core::verifier::{LemmaTag, ProofChainReport, Verdict};

fn qa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qa")).args(args).env_remove("QA_FIXTURES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_code_contract() {
    let cases: [(&[&str], i32); 9] = [
        (&["verify", "41", "--deep"], 0),
        (&["verify", "17", "--deep"], 0),
        (&["verify", "13"], 0),
        (&["verify", "12"], 2),
        (&["unit", "8"], 2),
        (&["scan", "--from", "10", "--to", "5"], 2),
        (&["classgroup", "--poly", "-4,0,0,0,1"], 2),
        (&["classgroup"], 2),
        (&["verify"], 2),
    ];
    for (args, code) in cases {
        assert_eq!(qa(args).status.code(), Some(code), "qa {}", args.join(" "));
    }
}

#[test]
fn json_lines_round_trip() {
    let out = qa(&["scan", "--from", "1", "--to", "160", "--deep-max", "100", "--format", "json-lines"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut seen = 0;
    for line in text.lines() {
        let report: ProofChainReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&report).unwrap(), line);
        if report.p % 8 == 1 {
            assert_eq!(report.overall, Verdict::Pass);
            assert!(line.contains(&format!("\"a\":\"{}\"", report.unit.as_ref().unwrap().a)));
        }
        seen += 1;
    }
    assert_eq!(seen, 37);
    let r97 = text.lines().map(|l| serde_json::from_str::<ProofChainReport>(l).unwrap()).find(|r| r.p == 97).unwrap();
    assert_eq!(r97.deep.as_ref().unwrap().h, 2);
    assert_eq!(r97.check(LemmaTag::ClassNumberMod4Chain).unwrap().verdict, Verdict::HypothesisNotMet);
}

#[test]
fn text_has_one_line_per_check() {
    let out = qa(&["verify", "73"]);
    let text = stdout(&out);
    for tag in LemmaTag::ALL.iter().filter(|t| !matches!(t, LemmaTag::QuarticClassNumberEven | LemmaTag::QuarticClassNumberMod4)) {
        assert_eq!(text.lines().filter(|l| l.trim_start().starts_with(tag.label())).count(), 1, "{tag}");
    }
    assert!(out.stderr.is_empty());
}

#[test]
fn fixture_override_from_env() {
    let dir = std::env::temp_dir().join(format!("qa-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.csv");
    std::fs::write(&path, "# deliberately wrong\n-41,0,0,0,1,4\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qa"))
        .args(["classgroup", "--pure-quartic", "41", "--format", "json-lines"])
        .env("QA_FIXTURES", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let res: ClassGroupResult = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!((res.h, res.oracle_h, res.certified), (2, Some(4), Certification::Heuristic));

    std::fs::write(&path, "-41,0,0,0,1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qa")).args(["verify", "41"]).env("QA_FIXTURES", &path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fixture"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_csv_and_jobs() {
    let a = qa(&["scan", "--from", "1", "--to", "1000", "--format", "csv", "--jobs", "1"]);
    let b = qa(&["scan", "--from", "1", "--to", "1000", "--format", "csv", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("p,class_mod16,unit_a,unit_b,overall,Gauss-h-odd,Gauss-h-odd_witness"));
    assert_eq!(text.lines().count(), 1 + 168);
}

#[test]
fn classgroup_fields_of_the_unit_extension() {
    for poly in ["-1,0,-8,0,1", "-1,0,-64,0,1"] {
        let out = qa(&["classgroup", "--poly", poly, "--format", "json-lines"]);
        assert_eq!(out.status.code(), Some(0));
        let res: ClassGroupResult = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(res.h % 2, 1);
        assert_eq!(res.certified, Certification::OracleMatched);
    }
}
