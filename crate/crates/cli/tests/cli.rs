use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn depind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depind")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_team_on_boiling_fixture() {
    let model = data("models/boiling.sdm");
    let o = depind(&["eval", "--semantics", "team", "--fragment", "d", "--model", model.to_str().unwrap(), "D(p;q)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn eval_kripke_pointed_and_global() {
    let model = data("models/relativised.sdm");
    let m = model.to_str().unwrap();
    let at = |w: &str| {
        depind(&["eval", "--semantics", "kripke", "--fragment", "ld", "--model", m, "--world", w, "p -> D(q;r)"])
    };
    assert_eq!(at("0").status.code(), Some(0));
    assert_eq!(at("3").status.code(), Some(1));
    let global = depind(&["eval", "--semantics", "kripke", "--fragment", "ld-rel", "--model", m, "D^{p}(q; r)"]);
    assert_eq!(stdout(&global), "true\n");
}

#[test]
fn validity_prints_countermodel() {
    let o = depind(&["validity", "--fragment", "ld", "D(p;q)|D(p;q)"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("invalid\nsig p q\n"), "{out}");
    assert!(out.contains("world "));
    let team = depind(&["validity", "--fragment", "d", "D(p;q)|D(p;q)"]);
    assert_eq!((team.status.code(), stdout(&team)), (Some(0), "valid\n".into()));
}

#[test]
fn countermodels_are_stable_across_runs_and_jobs() {
    let a = depind(&["validity", "--fragment", "ld", "D(p, q; r) | C (p -> r)"]);
    let b = depind(&["--jobs", "4", "validity", "--fragment", "ld", "D(p, q; r) | C (p -> r)"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(a.status.code(), Some(1));
}

#[test]
fn sat_and_equiv() {
    assert_eq!(depind(&["sat", "--fragment", "lc", "~C p"]).status.code(), Some(0));
    assert_eq!(depind(&["sat", "--fragment", "lc", "p & ~p"]).status.code(), Some(1));
    assert_eq!(depind(&["equiv", "--fragment", "lc", "C p", "[u]p | [u]~p"]).status.code(), Some(0));
    let o = depind(&["equiv", "--fragment", "lc", "C p", "p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("inequivalent\n"));
}

#[test]
fn check_proof_corpus_and_a_broken_file() {
    for name in ["ax3u_circ", "ax1u_circ", "necc_expanded", "star_c_p"] {
        let path = data(&format!("proofs/{name}.prf"));
        let o = depind(&["check-proof", "--audit", path.to_str().unwrap()]);
        assert_eq!((o.status.code(), stdout(&o)), (Some(0), "ok\n".into()), "{name}");
    }
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "system AXC\n1: C p  ax Ax1C").unwrap();
    let o = depind(&["check-proof", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("rejected\nline 1:"));
}

#[test]
fn exit_codes_for_errors() {
    assert_eq!(depind(&["validity"]).status.code(), Some(2));
    assert_eq!(depind(&["nonsense"]).status.code(), Some(2));
    assert_eq!(depind(&["check-proof", "/no/such/file.prf"]).status.code(), Some(2));
    assert_eq!(depind(&["parse", "--fragment", "lc", "D(p;q)"]).status.code(), Some(3));
    assert_eq!(depind(&["validity", "--fragment", "lc", "C (p & q & r & s & t)"]).status.code(), Some(3));
    assert_eq!(depind(&["translate", "--from", "i", "--to", "d", "p"]).status.code(), Some(3));
}

#[test]
fn translate_and_parse_print_canonically() {
    let o = depind(&["translate", "--from", "ld", "--to", "li", "D(p;q)"]);
    assert_eq!(stdout(&o), "I(q; p; q)\n");
    let o = depind(&["parse", "--fragment", "lc", "p&q|r"]);
    assert_eq!(stdout(&o), "((p & q) | r)\n");
}

#[test]
fn charform_single_model_and_class() {
    let boiling = data("models/boiling.sdm");
    let o = depind(&["charform", "--sig", "p", boiling.to_str().unwrap()]);
    assert_eq!(stdout(&o), "((~(~p & C ~p) & ~(~~p & C ~~p)) & ((p | ~p) & C (p | ~p)))\n");
    let mut empty = tempfile::NamedTempFile::new().unwrap();
    writeln!(empty, "sig p q").unwrap();
    let o = depind(&["charform", "--class", boiling.to_str().unwrap(), empty.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = depind(&["charform", "--class", boiling.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn search_reports_none_or_the_formula() {
    let o = depind(&["search", "--inexpressible", "~C p", "--sig", "p", "--max-size", "5"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "none\n".into()));
    let o = depind(&["search", "--inexpressible", "p & C p", "--sig", "p", "--max-size", "3"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "found\np\n".into()));
}

#[test]
fn gen_is_seeded() {
    let a = depind(&["gen", "--fragment", "li", "--seed", "5", "--count", "20"]);
    let b = depind(&["gen", "--fragment", "li", "--seed", "5", "--count", "20"]);
    let c = depind(&["gen", "--fragment", "li", "--seed", "6", "--count", "20"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    assert_eq!(stdout(&a).lines().count(), 20);
}

#[test]
fn json_records() {
    let o = depind(&["--json", "validity", "--fragment", "ld", "D(p;q)|D(p;q)"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "invalid");
    assert!(v["witness"]["model"].as_str().unwrap().starts_with("sig p q"));
    assert!(v["witness"]["world"].is_u64());
    assert!(v["timings"]["elapsed_ms"].is_number());
}
