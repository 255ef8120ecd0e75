//! Runs the binary as a child process so the environment stays local.

use std::process::Command;

const Z8_Z8: &str = r#"{"group":[{"ZN":8},{"ZN":8}],"input":["0","0"],"gates":[{"fourier":[0,1]}]}"#;

fn oracle_check(cap: Option<&str>) -> (Option<i32>, String) {
    let path = std::env::temp_dir().join(format!("abelsim-cap-{}-{}.json", std::process::id(), cap.unwrap_or("default")));
    std::fs::write(&path, Z8_Z8).unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_abelsim"));
    cmd.args(["oracle-check", "--count", "2000", "--circuit"]).arg(&path);
    cmd.env_remove("ABELSIM_ORACLE_CAP");
    if let Some(c) = cap {
        cmd.env("ABELSIM_ORACLE_CAP", c);
    }
    let out = cmd.output().unwrap();
    let _ = std::fs::remove_file(&path);
    (out.status.code(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn cap_comes_from_the_environment() {
    assert_eq!(oracle_check(None).0, Some(0));
    assert_eq!(oracle_check(Some("64")).0, Some(0));
    let (code, err) = oracle_check(Some("63"));
    assert_eq!(code, Some(2));
    assert!(err.contains("cap is 63"), "{err}");
    // Unparsable values fall back to the default.
    assert_eq!(oracle_check(Some("lots")).0, Some(0));
}
