use std::process::{Command, Output};

use supergrass::cli::{parse_state, StateDocument};
use supergrass::FockSpace;

fn supergrass(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_supergrass"));
    cmd.args(args).env_remove("SUPERGRASS_ORDER").env_remove("SUPERGRASS_CUTOFF");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn environment_sets_defaults_and_flags_win() {
    let env = [("SUPERGRASS_ORDER", "3"), ("SUPERGRASS_CUTOFF", "12")];
    let o = supergrass(&["--guard", "2", "relations"], &env);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("relations on L = 3, cutoff 12, guard 2"));
    let o = supergrass(&["--grassmann-order", "5", "--guard", "2", "relations"], &env);
    assert!(stdout(&o).starts_with("relations on L = 5, cutoff 12, guard 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(supergrass(&["relations"], &[]).status.code(), Some(0));
    assert_eq!(supergrass(&["solve", "--A-minus"], &[]).status.code(), Some(2));
    assert_eq!(supergrass(&["--fock-cutoff", "4", "--guard", "8", "relations"], &[]).status.code(), Some(2));
    let strict = supergrass(&["--tol", "0", "--grassmann-order", "4", "--fock-cutoff", "16", "solve", "--A-minus", "1", "--Z", "0.5"], &[]);
    assert_eq!(strict.status.code(), Some(1), "{}", stdout(&strict));
    let bad = supergrass(&["solve", "--Z", "0.5 +* e1"], &[]);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("column 6"));
}

#[test]
fn construct_writes_a_document() {
    let dir = std::env::temp_dir().join(format!("supergrass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("state.json");
    let o = supergrass(
        &[
            "--grassmann-order", "4", "--fock-cutoff", "20", "construct", "--family", "gen_super_cohe", "--param", "z=0.3", "--param",
            "gamma=0.2+0.1*e1", "--out", path.to_str().unwrap(),
        ],
        &[],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("residual "));
    assert!(text.contains("state written to"));
    assert!(!text.contains("\"version\""));
    let doc = StateDocument::from_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parse_state(&doc).unwrap().space(), FockSpace::new(4, 20, 8).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
