use std::path::{Path, PathBuf};
use std::process::Command;

const FUNCTIONS: &[&str] = &[
    "vac_last_error",
    "vac_string_free",
    "vac_diagram_parse",
    "vac_diagram_to_string",
    "vac_diagram_k",
    "vac_diagram_free",
    "vac_path_parse",
    "vac_path_to_string",
    "vac_path_free",
    "vac_tableau_parse",
    "vac_tableau_to_string",
    "vac_tableau_free",
    "vac_insert_diagram",
    "vac_invert_paths",
    "vac_di_insert",
    "vac_di_invert",
    "vac_verify",
];

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/vacillating.h")
}

#[test]
fn header_declares_every_entry_point() {
    let text = std::fs::read_to_string(header()).unwrap();
    assert!(text.contains("#ifndef VACILLATING_H"));
    assert!(text.contains("VAC_STATUS_OK = 0"));
    for f in FUNCTIONS {
        assert!(text.contains(&format!("{f}(")), "{f} missing from header");
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libvacillating_ffi.a");
    lib.exists().then_some(lib)
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "vacillating.h"

int main(void) {
    VacDiagram *d = NULL;
    if (vac_diagram_parse("1 3 4' | 2 1' | 4 3' 2'", &d) != VAC_STATUS_OK) return 1;
    VacPath *p = NULL, *q = NULL;
    if (vac_insert_diagram(d, &p, &q) != VAC_STATUS_OK) return 2;
    char *s = NULL;
    vac_path_to_string(q, &s);
    if (strcmp(s, "-;-;1;1;1,1;1;2;2;2,1") != 0) return 3;
    vac_string_free(s);
    VacDiagram *back = NULL;
    if (vac_invert_paths(p, q, &back) != VAC_STATUS_OK) return 4;
    vac_diagram_to_string(back, &s);
    printf("%s\n", s);
    vac_string_free(s);
    if (vac_diagram_parse("oops", &back) != VAC_STATUS_PARSE_ERROR) return 5;
    vac_diagram_free(d);
    vac_path_free(p);
    vac_path_free(q);
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not built, skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let dir = std::env::temp_dir().join(format!("vacillating-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 3 4' | 2 1' | 4 3' 2'");
    std::fs::remove_dir_all(dir).ok();
}
