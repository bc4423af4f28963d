//! Compiles a small C program against the generated header and the static
//! library. Skipped when no C compiler is available.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "nlfft.h"

int main(void) {
    NlfftComplex g[3] = {{0.3, 0.1}, {-0.2, 0.0}, {0.1, 0.2}};
    NlfftSequence *seq = NULL, *back = NULL;
    NlfftPair *pair = NULL;
    if (nlfft_sequence_new(0, g, 3, &seq) != NLFFT_STATUS_OK) return 1;
    if (nlfft_forward(seq, NLFFT_FORWARD_METHOD_FAST, &pair) != NLFFT_STATUS_OK) return 2;
    if (nlfft_invert(pair, NLFFT_INVERT_METHOD_FAST, &back) != NLFFT_STATUS_OK) return 3;
    NlfftComplex out[3];
    if (nlfft_sequence_copy_values(back, out, 3) != NLFFT_STATUS_OK) return 4;
    for (int k = 0; k < 3; k++)
        if (fabs(out[k].re - g[k].re) > 1e-13 || fabs(out[k].im - g[k].im) > 1e-13) return 5;
    if (nlfft_invert(NULL, NLFFT_INVERT_METHOD_LAYER, &back) != NLFFT_STATUS_NULL_POINTER) return 6;
    printf("%s\n", nlfft_last_error_message());
    nlfft_sequence_free(back);
    nlfft_pair_free(pair);
    nlfft_sequence_free(seq);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libnlfft_ffi.a");
    if !lib.exists() {
        eprintln!("static library not built at {}, skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("pair is null"));
}
