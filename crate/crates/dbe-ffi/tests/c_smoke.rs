//! Compiles and runs the C example against the generated header and the
//! freshly built static library, proving the committed header matches the
//! ABI.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_demo_builds_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let demo = manifest.join("examples").join("demo.c");
    // The staticlib lands next to the test binary's directory.
    let mut lib_dir = std::env::current_exe().unwrap();
    lib_dir.pop(); // test binary
    lib_dir.pop(); // deps/
    assert!(
        lib_dir.join("libdbe_ffi.a").exists(),
        "staticlib not found in {}",
        lib_dir.display()
    );

    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let out = tempfile_path("dbe-c-demo");
    let compile = Command::new(&cc)
        .arg(&demo)
        .arg(format!("-I{}", include.display()))
        .arg(format!("-L{}", lib_dir.display()))
        .args(["-ldbe_ffi", "-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .output()
        .expect("spawn C compiler");
    assert!(
        compile.status.success(),
        "compile failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&out).output().expect("run demo");
    assert!(
        run.status.success(),
        "demo failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
    let _ = std::fs::remove_file(&out);
}

fn tempfile_path(prefix: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("{prefix}-{}", std::process::id()));
    p
}
