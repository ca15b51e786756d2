use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn loopcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopcut")).args(args).output().unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn gaps_list_one_record_per_gap() {
    let o = loopcut(&["gaps", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = records(&o);
    assert_eq!(r.len(), 3);
    assert_eq!(r[0]["center"], "0/1");
    assert_eq!(r[0]["left"], "(-3+1*sqrt(5))/2");
    assert_eq!(r[2]["shortcut"], "bAB");
}

#[test]
fn classify_reports_the_gap_and_its_side() {
    let o = loopcut(&["classify", "--point", "7/3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    assert_eq!(r["class"], "gap");
    assert_eq!(r["q"], "2/1");
    assert_eq!(r["g"], "babAB");
    let o = loopcut(&["classify", "--point", "1.3"]);
    assert_eq!(records(&o)[0]["point"], "[5/4,27/20]");
}

#[test]
fn unparsable_points_exit_with_one() {
    let o = loopcut(&["classify", "--point", "one half"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot parse"));
    let o = loopcut(&["mcshane", "--depth", "3", "--surface", "/nonexistent/surface.cfg"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn expansion_transcript_goes_to_a_file() {
    let path = scratch("expand.jsonl");
    let o = loopcut(&["expand", "--point", "37/101", "--max-steps", "40", "--transcript", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let summary = &records(&o)[0];
    assert_eq!(summary["terminal"], "remaining");
    let steps = std::fs::read_to_string(&path).unwrap();
    assert_eq!(steps.lines().count() as u64, summary["steps"].as_u64().unwrap());
}

#[test]
fn non_filling_points_exit_with_two() {
    let o = loopcut(&["fill", "--point", "1/2", "--depth", "40"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(records(&o)[0]["filling"], false);
    let o = loopcut(&["wander", "--point", "0", "--depth", "40", "--mcg-bound", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn filling_points_report_a_census() {
    let o = loopcut(&["fill", "--point", "37/101", "--depth", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    assert_eq!(r["filling"], true);
    assert_eq!(r["euler"], 0);
    assert_eq!(r["arc_feet"], serde_json::json!(["0", "5"]));
}

#[test]
fn wander_writes_a_certificate() {
    let path = scratch("cert.json");
    let o = loopcut(&["wander", "--point", "37/101", "--depth", "40", "--mcg-bound", "2", "--cert", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&o)[0]["disjoint"], true);
    let text = std::fs::read_to_string(&path).unwrap();
    let record: loopcut::topology::CertificateRecord = serde_json::from_str(text.trim()).unwrap();
    record.verify(&loopcut::surface::SurfaceGroup::modular_torus()).unwrap();
    assert_eq!(record.classes.len(), records(&o)[0]["classes"].as_u64().unwrap() as usize);
}

#[test]
fn mcshane_prints_a_summary_and_classes() {
    let o = loopcut(&["mcshane", "--depth", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let r = records(&o);
    assert_eq!(r[0]["record"], "summary");
    assert!(r[1..].iter().all(|c| c["record"] == "class"));
    let systoles: Vec<&Value> = r.iter().filter(|c| c["trace"] == "3").collect();
    assert_eq!(systoles.len(), 3);
    assert!(systoles.iter().all(|c| c["width"] == "(3-1*sqrt(5))/3"));
}

#[test]
fn dimension_reports_follow_the_flags() {
    let o = loopcut(&["dim", "--set", "birman-series", "--depth", "0", "--levels", "3..6"]);
    let r = &records(&o)[0];
    assert_eq!(r["finest"], 1.0);
    assert_eq!(r["counts"][0]["count"], 8);
    let o = loopcut(&["dim", "--set", "limit-set", "--slope", "1/0", "--word-depth", "4", "--levels", "4..7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&o)[0]["set"], "limit-set 1 0");
    let o = loopcut(&["dim", "--set", "limit-set", "--word-depth", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn renders_are_byte_identical() {
    let (a, b) = (scratch("a.svg"), scratch("b.svg"));
    for p in [&a, &b] {
        assert_eq!(loopcut(&["render", "--depth", "6", "--out", p.to_str().unwrap()]).status.code(), Some(0));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let svg = loopcut(&["gaps", "--depth", "6", "--format", "svg"]).stdout;
    assert_eq!(svg, x);
    let gaps = records(&loopcut(&["gaps", "--depth", "6"])).len();
    assert_eq!(String::from_utf8(x).unwrap().matches("<rect").count(), gaps);
}
