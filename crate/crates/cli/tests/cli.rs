use kolchin::doc::{self, AckermannDoc, BoundDoc, MacaulayDoc, MuDoc, PolynomialDoc, VerifyDoc};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kolchin(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kolchin"))
        .args(args)
        .env_remove("KOLCHIN_CAP_BITS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parse the emitted document and re-render it; must reproduce the bytes.
fn round_trip<T: Serialize + DeserializeOwned>(o: &Output) -> T {
    let text = stdout(o);
    let parsed: T = serde_json::from_str(&text).expect("document parses");
    assert_eq!(doc::to_json(&parsed), text, "re-rendering is byte-identical");
    parsed
}

const EXAMPLE_SET: &str = r#"{"m":2,"points":[[4,0],[0,4]]}"#;
const FAMILY: &str = r#"{"n":2,"sets":[{"m":2,"points":[[1,0],[0,1]]},{"m":2,"points":[]}]}"#;

#[test]
fn kolchin_examples() {
    let o = kolchin(&["kolchin", "-"], Some(EXAMPLE_SET));
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("constant 16; type 0; typical dim 16\n"));

    let o = kolchin(&["kolchin", "-"], Some(r#"{"m":3,"points":[]}"#));
    assert!(stdout(&o).starts_with("C(t+3,3); type 3; typical dim 1\n"));

    let o = kolchin(&["kolchin", "-"], Some(FAMILY));
    assert!(stdout(&o).starts_with("C(t+2,2) + 1; type 2;"));
}

#[test]
fn kolchin_zero_polynomial_type_is_undefined() {
    let o = kolchin(&["kolchin", "-"], Some(r#"{"m":2,"points":[[0,0]]}"#));
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("0; type undefined; typical dim undefined\n"));
    let o = kolchin(&["--format", "json", "kolchin", "-"], Some(r#"{"m":2,"points":[[0,0]]}"#));
    let d: PolynomialDoc = round_trip(&o);
    assert_eq!(d.degree, -1);
    assert_eq!(d.differential_type, None);
}

#[test]
fn kolchin_reads_files_and_sequence_documents() {
    let dir = std::env::temp_dir().join(format!("kolchin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seq.json");
    std::fs::write(&path, r#"{"m":2,"r0":3,"ordered":true,"points":[[3,0],[2,1],[1,3],[0,5]]}"#).unwrap();
    let o = kolchin(&["kolchin", path.to_str().unwrap()], None);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("constant 9;"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_documents_exit_one() {
    for bad in [r#"{"m":2,"points":[[1]]}"#, "not json", r#"{"n":3,"sets":[]}"#] {
        let o = kolchin(&["kolchin", "-"], Some(bad));
        assert_eq!(o.status.code(), Some(1), "{bad}");
        assert!(!o.stderr.is_empty());
    }
    let o = kolchin(&["kolchin", "/nonexistent/file.json"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(kolchin(&["bogus"], None).status.code(), Some(1));
    assert_eq!(kolchin(&["bound", "--r", "x"], None).status.code(), Some(1));
    assert_eq!(kolchin(&["verify", "no-such-suite"], None).status.code(), Some(1));
    assert_eq!(kolchin(&["bound", "--r", "1", "--m", "2", "--n", "1", "--tau", "3"], None).status.code(), Some(1));
    assert_eq!(kolchin(&["--help"], None).status.code(), Some(0));
}

#[test]
fn bound_examples() {
    let o = kolchin(&["bound", "--r", "3", "--m", "2", "--n", "1", "--tau", "0", "--compare"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("bound: 9\n"));
    assert!(text.contains("1764"));

    let o = kolchin(
        &["--format", "json", "bound", "--r", "3", "--m", "2", "--n", "1", "--tau", "0", "--compare"],
        None,
    );
    let d: BoundDoc = round_trip(&o);
    assert_eq!(d.value.unwrap(), 9u32.into());
    assert_eq!(d.comparison.unwrap().coefficient_sums.last().unwrap(), &1764u32.into());

    let o = kolchin(&["bound", "--r", "5", "--m", "3", "--n", "1", "--tau", "1"], None);
    assert!(stdout(&o).contains("bound: 46\n"));
}

#[test]
fn bound_cap_exits_two_with_chain() {
    let o = kolchin(&["bound", "--r", "2", "--m", "4", "--n", "3", "--tau", "1"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("C(2, 4, 2)"));

    let o = kolchin(&["--format", "json", "bound", "--r", "2", "--m", "4", "--n", "3", "--tau", "1"], None);
    assert_eq!(o.status.code(), Some(2));
    let d: BoundDoc = round_trip(&o);
    assert!(d.value.is_none() && d.exceeds_cap.is_some());
}

#[test]
fn cap_flag_beats_environment() {
    // A(3, 20) has 24 bits.
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_kolchin"));
        cmd.env_remove("KOLCHIN_CAP_BITS");
        if let Some(e) = env {
            cmd.env("KOLCHIN_CAP_BITS", e);
        }
        if let Some(f) = flag {
            cmd.args(["--cap-bits", f]);
        }
        cmd.args(["ackermann", "--x", "3", "--y", "20"]).output().unwrap().status.code()
    };
    assert_eq!(run(None, None), Some(0));
    assert_eq!(run(Some("10"), None), Some(2));
    assert_eq!(run(Some("10"), Some("100")), Some(0));
    assert_eq!(run(Some("100"), Some("10")), Some(2));
}

#[test]
fn mu_examples() {
    let o = kolchin(&["mu", "--r0", "3", "--m", "2"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("(3,0),(2,1),(1,3),(0,5)"));
    assert!(text.contains("\nVol 9\n"));

    let o = kolchin(&["--format", "json", "mu", "--r0", "1", "--m", "3"], None);
    let d: MuDoc = round_trip(&o);
    assert_eq!(d.blocks[0].sequence.points, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
    assert_eq!(d.m_frak.len(), 3);

    let o = kolchin(&["--format", "json", "mu", "--r0", "0", "--m", "3"], None);
    let d: MuDoc = round_trip(&o);
    assert_eq!(d.blocks[0].sequence.points, vec![vec![0, 0, 0]]);
    assert_eq!(d.total_volume, 0u32.into());
}

#[test]
fn mu_concatenation_totals() {
    let o = kolchin(&["--format", "json", "mu", "--r0", "3", "--m", "2", "--n", "2"], None);
    let d: MuDoc = round_trip(&o);
    assert_eq!(d.blocks.len(), 2);
    assert_eq!(d.blocks[0].variable, 2);
    assert_eq!(d.total_volume, 45u32.into());
}

#[test]
fn macaulay_and_ackermann() {
    let o = kolchin(&["--format", "json", "macaulay", "--a", "10", "--d", "3"], None);
    let d: MacaulayDoc = round_trip(&o);
    assert_eq!(d.representation, vec![(5, 3)]);
    assert_eq!(d.bracket, 15u32.into());

    let o = kolchin(&["macaulay", "--a", "0", "--d", "2"], None);
    assert!(stdout(&o).contains("0^<2> = 0"));
    assert_eq!(kolchin(&["macaulay", "--a", "3", "--d", "0"], None).status.code(), Some(1));

    let o = kolchin(&["--format", "json", "ackermann", "--x", "3", "--y", "5"], None);
    let d: AckermannDoc = round_trip(&o);
    assert_eq!(d.value.unwrap(), 253u32.into());

    let o = kolchin(&["ackermann", "--x", "4", "--y", "2"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn big_values_print_in_decimal() {
    let o = kolchin(&["--format", "json", "ackermann", "--x", "3", "--y", "200"], None);
    let text = stdout(&o);
    assert!(!text.contains("e+") && !text.contains("E+"));
    let d: AckermannDoc = round_trip(&o);
    assert_eq!(d.value.unwrap().bits(), 203);
    assert!(text.contains(&format!("\"value\": {}", (num_bigint::BigUint::from(1u32) << 203u32) - 3u32)));
}

#[test]
fn verify_single_suite_passes_and_round_trips() {
    let o = kolchin(&["--seed", "7", "verify", "lemma-rep"], None);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("lemma-rep: pass"));

    let o = kolchin(&["--format", "json", "--seed", "3", "verify", "ontheco", "--samples", "20"], None);
    assert!(o.status.success());
    let d: VerifyDoc = round_trip(&o);
    assert!(d.passed);
    assert_eq!(d.seed, 3);
}

#[test]
fn verify_mu_consistency_names_convention() {
    let o = kolchin(&["verify", "mu-consistency"], None);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).to_lowercase().contains("ackermann"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "--seed", "11", "verify", "macaulay", "--samples", "30"];
    assert_eq!(stdout(&kolchin(&args, None)), stdout(&kolchin(&args, None)));
}
