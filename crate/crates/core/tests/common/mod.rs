#![allow(dead_code)]

pub mod listed;
pub mod oracle;
pub mod synthetic;

use std::path::PathBuf;

pub fn fixture_dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}
