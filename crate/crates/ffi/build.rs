use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("set by cargo"));
    let mut config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("TRANSFRAME_H".to_string()),
        cpp_compat: true,
        documentation: true,
        header: Some(
            "/* C interface to the transframe analysis library.\n\
             \x20* Generated by cbindgen; do not edit by hand. */"
                .to_string(),
        ),
        ..cbindgen::Config::default()
    };
    config.enumeration.rename_variants = cbindgen::RenameRule::QualifiedScreamingSnakeCase;
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("cbindgen generates the C header")
        .write_to_file(crate_dir.join("include").join("transframe.h"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=build.rs");
}
