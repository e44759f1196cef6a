use std::path::PathBuf;
use std::process::{Command, Output};

use padic_opalg::json::MatrixJson;
use padic_opalg::ktheory::FinGenAbGroup;
use padic_opalg_cli::commands::algebra::{ActionGroupoidOutput, ConvolveOutput, RepOutput, RotationOutput};
use padic_opalg_cli::commands::ktheory::{KhTable, RotationTable};
use padic_opalg_cli::commands::mahler::CoeffsOutput;
use padic_opalg_cli::commands::operator::{ClassifyOutput, CstarOutput, CuntzOutput, NormOutput};
use padic_opalg_cli::commands::scalar::ScalarOutput;
use padic_opalg_cli::commands::tate::TateOutput;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-opalg")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Parses the output into `T` and checks that re-encoding gives the same JSON.
fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let value = json(args);
    let parsed: T = serde_json::from_value(value.clone()).unwrap_or_else(|e| panic!("{:?}: {}", args, e));
    assert_eq!(serde_json::to_value(&parsed).unwrap(), value, "{:?}", args);
    parsed
}

#[test]
fn quillen_table() {
    let t: KhTable = round_trip(&["ktheory", "quillen", "--p", "3", "--range", "-2..6"]);
    let groups: Vec<(i64, FinGenAbGroup)> = t.rows.iter().map(|r| (r.degree, r.group.clone().unwrap())).collect();
    let expected = [
        (-2, FinGenAbGroup::trivial()),
        (-1, FinGenAbGroup::trivial()),
        (0, FinGenAbGroup::integers()),
        (1, FinGenAbGroup::cyclic(2)),
        (2, FinGenAbGroup::trivial()),
        (3, FinGenAbGroup::cyclic(8)),
        (4, FinGenAbGroup::trivial()),
        (5, FinGenAbGroup::cyclic(26)),
        (6, FinGenAbGroup::trivial()),
    ];
    assert_eq!(groups, expected);
}

#[test]
fn cstar_check_on_all_ones() {
    let out = run(&["operator", "cstar-check", "--preset", "allones2x2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("||T||^2  = 1\n") && text.contains("||T*T||  = 1/2") && text.contains("identity_holds = false"));
    let r: CstarOutput = round_trip(&["operator", "cstar-check", "--preset", "allones2x2", "--p", "2"]);
    assert_eq!(r.display, ["1".to_string(), "1/2".to_string()]);
    assert!(!r.identity_holds);
}

#[test]
fn rose_with_three_loops_in_degree_zero() {
    let file = data("e3.json");
    let t: KhTable = round_trip(&["ktheory", "graph", "--file", &file, "--p", "2", "--degree", "0"]);
    assert_eq!(t.rows[0].group, Some(FinGenAbGroup::cyclic(2)));
    let text = String::from_utf8(run(&["ktheory", "graph", "--file", &file, "--p", "2", "--degree", "0"]).stdout).unwrap();
    assert!(text.lines().any(|l| l.trim() == "0  Z/2"), "{}", text);
    let preset: KhTable = round_trip(&["ktheory", "graph", "--preset", "e_3", "--p", "2", "--range", "-1..4"]);
    let cuntz: KhTable = round_trip(&["ktheory", "cuntz", "--n", "3", "--p", "2", "--range", "-1..4"]);
    assert_eq!(preset.rows.iter().map(|r| r.group.clone()).collect::<Vec<_>>(), cuntz.rows.iter().map(|r| r.group.clone()).collect::<Vec<_>>());
}

#[test]
fn zero_divisor_preset() {
    let a: CstarOutput = round_trip(&["operator", "cstar-check", "--preset", "zerodivisor-p5"]);
    assert_eq!(a.display[0], "1");
    assert!(!a.norm_tstar_t.is_exact());
    let square: MatrixJson = round_trip(&["operator", "compose", "--preset", "zerodivisor-p5"]);
    assert_eq!(square.prime, 5);
}

#[test]
fn matrix_outputs_feed_back_as_files() {
    let dir = std::env::temp_dir().join(format!("padic-opalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let shift: MatrixJson = round_trip(&["operator", "shift", "--window", "7", "--p", "3"]);
    let path = dir.join("shift.json");
    std::fs::write(&path, serde_json::to_string(&shift).unwrap()).unwrap();
    let path = path.display().to_string();
    let adjoint: MatrixJson = round_trip(&["operator", "adjoint", "--file", &path]);
    let back = adjoint.to_matrix().unwrap().adjoint();
    assert_eq!(MatrixJson::from_matrix(&back), shift);
    let class: ClassifyOutput = round_trip(&["operator", "classify", "--file", &path]);
    assert!(class.window.partial_isometry && !class.window.unitary);
    assert!(class.on_interior.unitary);
    let norm: NormOutput = round_trip(&["operator", "norm", "--file", &path]);
    assert_eq!(norm.display, "1");
    let tensor: MatrixJson = round_trip(&["operator", "tensor", "--file", &path, "--file", &path]);
    assert_eq!(tensor.window.len(), 49);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cuntz_and_rotation_presets() {
    let c: CuntzOutput = round_trip(&["operator", "cuntz-verify", "--preset", "cuntz-n2"]);
    assert!(c.relations.orthogonality && c.relations.cuntz_sum);
    assert_eq!((c.window, c.interior.clone()), (81, 0..40));
    let r: RotationOutput = round_trip(&["algebra", "rotation-verify", "--preset", "rotation-z2-p5"]);
    assert_eq!(r.prime, 5);
    assert!(r.report.commutation && r.report.v_unitary && r.report.u_invertible);
    assert!(!r.report.u_unitary);
    let t: RotationTable = round_trip(&["ktheory", "rotation", "--lambda", "2", "--p", "5", "--range", "0..3"]);
    assert_eq!(t.rows[0].order, 4);
}

#[test]
fn scalar_and_mahler_outputs_round_trip() {
    let s: ScalarOutput = round_trip(&["scalar", "arith", "3", "-5", "--p", "2", "--precision", "24"]);
    assert_eq!(s.results.len(), 6);
    assert_eq!(s.results[2].value, serde_json::json!({"v": 1, "u": 8388607u64, "digits": 23}));
    let _: ScalarOutput = round_trip(&["scalar", "hensel", "-1", "--p", "13"]);
    // dividing by 5! costs the digit 3 | 120
    let b: ScalarOutput = round_trip(&["scalar", "binom", "-1", "5", "--p", "3"]);
    assert_eq!(b.results[1].value, serde_json::json!({"v": 0, "u": 617673396283946u64, "digits": 31}));
    let m: CoeffsOutput = round_trip(&["mahler", "coeffs", "--values", "0,1,4,9,16", "--p", "3"]);
    assert_eq!(m.coefficients[1], serde_json::json!({"v": 0, "u": 1}));
    let _: ScalarOutput = round_trip(&["mahler", "eval", "--coeffs", "0,1,2", "--at", "-1", "--p", "3"]);
    let _: MatrixJson = round_trip(&["mahler", "eval", "--coeffs", "1,1", "--preset", "allones2x2"]);
}

#[test]
fn algebra_files() {
    let dihedral = data("dihedral.json");
    let c: ConvolveOutput = round_trip(&["algebra", "convolve", "--file", &dihedral, "--p", "7"]);
    assert!(c.representation_multiplicative);
    let r: RepOutput = round_trip(&["algebra", "rep", "--file", &dihedral, "--p", "7"]);
    assert!(r.isometric && r.star == Some(true));
    let t: RepOutput = round_trip(&["algebra", "twisted-rep", "--file", &data("heisenberg.json"), "--p", "7"]);
    assert!(t.isometric && t.multiplicative == Some(true));
    let x: RepOutput = round_trip(&["algebra", "crossed", "--file", &data("rotation3.json"), "--p", "3"]);
    assert!(x.isometric && x.star == Some(true));
    let g: ActionGroupoidOutput = round_trip(&["algebra", "action-groupoid", "--file", &data("orbit_diagonal.json"), "--p", "3"]);
    assert!(g.round_trip);
    assert_eq!(g.image.len(), 5);
}

#[test]
fn runs_are_deterministic() {
    let args = ["tate-check", "--random", "6", "--degree", "12", "--p", "3", "--seed", "11", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = run(&["tate-check", "--random", "6", "--degree", "12", "--p", "3", "--seed", "12", "--format", "json"]);
    assert_ne!(a.stdout, other.stdout);
    let t: TateOutput = round_trip(&args[..args.len() - 2]);
    assert_eq!((t.cases.len(), t.isometric), (6, 6));
}

#[test]
fn exit_codes() {
    // a relation that fails: the zero polynomial has no exact Gauss norm
    assert_eq!(run(&["tate-check", "--coeffs", "0", "--p", "3"]).status.code(), Some(1));
    assert_eq!(run(&["operator", "norm", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["operator", "norm", "--file", &data("missing.json")]).status.code(), Some(2));
    let bad = run(&["ktheory", "graph", "--file", &data("heisenberg.json"), "--degree", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("malformed JSON"));
    let bad_table = run(&["algebra", "rep", "--file", &data("bad_table.json")]);
    assert_eq!(bad_table.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_table.stderr).contains("invalid group"));
    assert_eq!(run(&["scalar", "hensel", "2", "--p", "5"]).status.code(), Some(2));
    assert_eq!(run(&["operator", "shift", "--window", "4", "--margin", "2"]).status.code(), Some(2));
    assert_eq!(run(&["scalar", "arith", "1", "2", "--precision", "0"]).status.code(), Some(2));
}
