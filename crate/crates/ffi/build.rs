use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").expect("manifest dir"));
    let header = dir.join("include/lpsi.h");
    let config = cbindgen::Config::from_file(dir.join("cbindgen.toml")).expect("cbindgen.toml");
    match cbindgen::generate_with_config(&dir, config) {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        // keep the checked-in header
        Err(e) if header.exists() => println!("cargo:warning=cbindgen failed, using existing header: {e}"),
        Err(e) => panic!("cbindgen failed and no header is present: {e}"),
    }
}
