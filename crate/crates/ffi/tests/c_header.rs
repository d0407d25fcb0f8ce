use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("holonomic.h")
}

#[test]
fn header_declares_the_exported_symbols() {
    let h = std::fs::read_to_string(header()).unwrap();
    for sym in [
        "holo_last_error",
        "holo_string_free",
        "holo_sequence_parse",
        "holo_guess",
        "holo_relation_format",
        "holo_convert",
        "holo_closure_add",
        "holo_nth_term",
        "holo_operator_gcrd",
        "holo_operator_lclm",
        "typedef struct HoloRelation HoloRelation",
        "HOLO_STATUS_NO_RELATION = 2",
    ] {
        assert!(h.contains(sym), "missing {sym}");
    }
}

const PROGRAM: &str = r#"
#include "holonomic.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    HoloSequence *seq = NULL;
    HoloRelation *rel = NULL;
    char *text = NULL;
    if (holo_sequence_parse("0 1\n1 1\n2 2\n3 5\n4 14\n5 42\n", &seq) != HOLO_STATUS_OK) return 1;
    if (holo_guess(seq, HOLO_GUESS_KIND_REC, 0, &rel) != HOLO_STATUS_OK) return 2;
    if (holo_relation_format(rel, false, &text) != HOLO_STATUS_OK) return 3;
    puts(text);
    holo_string_free(text);
    if (holo_nth_term(rel, 100, &text) != HOLO_STATUS_OK) return 4;
    puts(text);
    holo_string_free(text);
    holo_relation_free(rel);
    holo_sequence_free(seq);
    if (holo_sequence_parse("1\nx\n", &seq) != HOLO_STATUS_PARSE_ERROR) return 5;
    puts(holo_last_error() ? "error reported" : "no message");
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    let deps = std::env::current_exe().unwrap();
    let target = deps.parent().unwrap().parent().unwrap();
    let lib = target.join("libholonomic_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("holo-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "(n + 2)*u(n+1) + (-4*n - 2)*u(n) = 0; u(0) = 1");
    assert_eq!(lines[1], "896519947090131496687170070074100632420837521538745909320");
    assert_eq!(lines[2], "error reported");
    let _ = std::fs::remove_dir_all(&dir);
}
