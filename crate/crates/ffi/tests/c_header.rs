//! The generated header declares the whole API and links against the static
//! library from plain C.

use std::path::{Path, PathBuf};
use std::process::Command;

const SYMBOLS: [&str; 22] = [
    "reflap_last_error",
    "reflap_version",
    "reflap_string_free",
    "reflap_classify",
    "reflap_poly_new",
    "reflap_poly_add_term",
    "reflap_poly_eval",
    "reflap_poly_len",
    "reflap_poly_term",
    "reflap_poly_free",
    "reflap_bounded_solution",
    "reflap_residual",
    "reflap_problem_parse",
    "reflap_problem_emit",
    "reflap_problem_forcing",
    "reflap_problem_run",
    "reflap_problem_solve_grid",
    "reflap_problem_free",
    "reflap_grid_len",
    "reflap_grid_shape",
    "reflap_grid_samples",
    "reflap_grid_free",
];

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_symbol() {
    let header = std::fs::read_to_string(crate_dir().join("include/reflap.h")).unwrap();
    for s in SYMBOLS {
        assert!(header.contains(&format!("{s}(")), "missing {s}");
    }
    for t in ["typedef struct ReflapPoly ReflapPoly;", "typedef struct ReflapProblem ReflapProblem;", "REFLAP_STATUS_RESONANCE = 2"] {
        assert!(header.contains(t), "missing {t}");
    }
}

/// `target/<profile>` holding this test binary and the crate's static library.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = profile_dir().join("libreflap_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = out_dir.join("reflap_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.contains("solution = 5.0000000000000000e-1, 0.0000000000000000e0 @ 1"), "{stdout}");
    assert!(stdout.contains("verification = pass"));
}
