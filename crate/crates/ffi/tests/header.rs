//! Compiles and links a C program against the generated header and static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "screwline.h"

int main(void) {
    ScrewlineHamiltonian *h = NULL;
    const char *w0 = "{\"A\":[\"1\",\"0\",\"-2\"],\"B\":[\"0\",\"4\"],"
                     "\"C\":[\"0\",\"-1\",\"0\",\"1\"],\"D\":[\"1\",\"0\",\"-2\"]}";
    if (screwline_factorize(w0, &h) != SCREWLINE_STATUS_OK) return 1;
    size_t n = screwline_hamiltonian_segment_count(h);
    screwline_hamiltonian_free(h);
    if (screwline_factorize("[", &h) != SCREWLINE_STATUS_INVALID_INPUT) return 2;
    if (screwline_last_error() == NULL) return 3;
    printf("%zu\n", n);
    return n == 3 ? 0 : 4;
}
"#;

fn profile_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/screwline.h");
    assert!(header.exists(), "build script did not write {}", header.display());
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["screwline_factorize", "screwline_pipeline", "screwline_string_free", "SCREWLINE_STATUS_MATH_ERROR"] {
        assert!(text.contains(f), "{f} missing from header");
    }

    let lib = profile_dir().join("libscrewline_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping link step: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(crate_dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3");
}
