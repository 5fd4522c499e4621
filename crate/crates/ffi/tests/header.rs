//! The generated C header must exist, declare the full surface, and compile
//! as standalone C.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn header_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("transframe.h")
}

#[test]
fn header_declares_the_full_api() {
    let text = fs::read_to_string(header_path()).expect("build script wrote the header");
    for needle in [
        "typedef struct TfFrame TfFrame;",
        "TF_STATUS_OK",
        "TF_STATUS_NULL_ARGUMENT",
        "TF_STATUS_INVALID_INPUT",
        "TF_STATUS_NOT_ROOTED",
        "TF_STATUS_BUDGET_EXCEEDED",
        "TF_STATUS_INTERNAL",
        "TF_FAMILY_WID_BULLET",
        "tf_last_error",
        "tf_string_free",
        "tf_frame_free",
        "tf_frame_from_json",
        "tf_frame_to_json",
        "tf_make_h",
        "tf_frame_point_count",
        "tf_frame_rank",
        "tf_frame_width",
        "tf_frame_irr_antichain_max",
        "tf_frame_weak_width_at",
        "tf_check_formula",
        "tf_check_family",
        "tf_frame_formula",
        "tf_find_reduction",
        "tf_rt_text",
        "tf_srt_text",
        "tf_tree_embed",
        "tf_frame_dot",
    ] {
        assert!(text.contains(needle), "header lacks {needle}");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = tempfile::TempDir::new().unwrap();
    let c_file = dir.path().join("use_header.c");
    fs::write(
        &c_file,
        r#"
#include "transframe.h"
#include <stddef.h>

int probe(void) {
    TfFrame *frame = NULL;
    TfStatus status = tf_make_h(0, &frame);
    if (status != TF_STATUS_OK) {
        return 1;
    }
    uint32_t rank = 0;
    bool valid = false;
    char *text = NULL;
    tf_frame_rank(frame, &rank);
    tf_check_family(frame, TF_FAMILY_WID_PLUS, 2, 0, &valid);
    tf_frame_dot(frame, &text);
    tf_string_free(text);
    tf_frame_free(frame);
    return (int)tf_last_error()[0];
}
"#,
    )
    .unwrap();
    let include_dir = header_path().parent().unwrap().to_path_buf();
    let output = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-fsyntax-only")
        .arg("-I")
        .arg(&include_dir)
        .arg(&c_file)
        .output()
        .expect("cc is installed");
    assert!(
        output.status.success(),
        "header failed to compile as C:\n{}",
        String::from_utf8_lossy(&output.stderr)
    );
}
