use std::path::Path;
use std::process::Command;

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/lpsi.h")).unwrap();
    for sym in [
        "lpsi_family_parse",
        "lpsi_family_free",
        "lpsi_family_describe",
        "lpsi_family_eval",
        "lpsi_family_alpha",
        "lpsi_family_alpha_extremum",
        "lpsi_tail_sum",
        "lpsi_xi",
        "lpsi_fourier_upper",
        "lpsi_theorem_bracket",
        "lpsi_last_error_message",
        "lpsi_version",
        "typedef struct LpsiFamily LpsiFamily",
        "LPSI_STATUS_HYPOTHESIS = 4",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}

#[test]
fn header_and_example_compile_as_c() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler, skipping");
        return;
    };
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    for (lang, std) in [("c", "-std=c11"), ("c++", "-std=c++17")] {
        let o = Command::new(&cc)
            .args(["-fsyntax-only", "-Wall", "-Wextra", "-Werror", std, "-x", lang, "-I"])
            .arg(root.join("include"))
            .arg(root.join("examples/smoke.c"))
            .output()
            .unwrap();
        assert!(o.status.success(), "{lang}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
