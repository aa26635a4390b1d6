//! Compiles a C program against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/realpi0.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build script");
    for name in [
        "typedef struct Rp0Group Rp0Group;",
        "typedef struct Rp0Result Rp0Result;",
        "RP0_STATUS_OK = 0",
        "rp0_compute(",
        "rp0_pi0_order(",
        "rp0_h1_order(",
        "rp0_report_json(",
        "rp0_string_free(",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("librealpi0_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("run C compiler");
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
