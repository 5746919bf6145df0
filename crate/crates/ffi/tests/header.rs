use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn exported_functions() -> Vec<String> {
    let src = fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    src.lines()
        .filter_map(|l| l.split_once("extern \"C\" fn ").map(|(_, rest)| rest))
        .map(|rest| rest.split('(').next().unwrap().to_string())
        .collect()
}

#[test]
fn header_declares_every_export() {
    let header = fs::read_to_string(crate_dir().join("include/nnfopt.h")).unwrap();
    let fns = exported_functions();
    assert!(fns.len() >= 20, "{fns:?}");
    for f in &fns {
        assert!(header.contains(&format!(" {f}(")) || header.contains(&format!("*{f}(")), "{f} missing");
    }
    for ty in ["typedef struct NnfoptCircuit NnfoptCircuit;", "NNFOPT_STATUS_INTRACTABLE = 4", "NNFOPT_ALGORITHM_AUTO = 0"] {
        assert!(header.contains(ty), "{ty} missing");
    }
}

/// The header must be valid C on its own. Skipped when no C compiler is on PATH.
#[test]
fn header_compiles_as_c() {
    let Ok(probe) = Command::new("cc").arg("--version").output() else {
        eprintln!("cc not found; skipping");
        return;
    };
    assert!(probe.status.success());
    let dir = tempfile::tempdir().unwrap();
    let main = dir.path().join("main.c");
    fs::write(
        &main,
        "#include \"nnfopt.h\"\nint main(void) {\n  NnfoptCircuit *c = 0;\n  \
         NnfoptStatus s = nnfopt_circuit_parse(\"nnf 1 0 1\\nA 0\\n\", &c);\n  \
         nnfopt_circuit_free(c);\n  return s == NNFOPT_STATUS_OK ? 0 : 1;\n}\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(crate_dir().join("include"))
        .arg(&main)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
